"""
量子置换代数矩模型计算系统
Exact Haar moments of the quantum permutation algebra A_s(4)
"""

__version__ = "1.0.0"
__author__ = "PauliMoments Team"
