"""
代数模块
精确运算、Pauli 符号代数、非交叉划分与张量算子
"""
