"""
处理器模块
包含 Weingarten 忠实性、谱律、Cauchy 变换、密度反演、蒙特卡洛与验证套件
"""

from .weingarten import GramMatrix, MomentMatrixReport, gram, model_moment, verify_faithfulness, weingarten_matrix
from .laws import (
    VariableKind, VariableSpec, SpectralLaw, CharPoly, parse_variable, model_matrix,
    exact_moment, exact_moments, theorem51_law, law_of, charpoly
)
from .cauchy import CauchyEvaluator, cauchy_closed, cauchy_series, lemma71_series, block_law_series
from .density import DensityPoint, AtomEstimate, stieltjes_density, atom_mass, parse_grid, parse_eps, make_grid
from .montecarlo import MCLawResult, mc_law
from .classical_s4 import AtomicLaw, classical_law, closed_form_law, classical_moments, fixed_point_distribution
from .identities import IdentityCheck, check_identities
from .verification import SUITES, CheckResult, SuiteReport, run_suites

__all__ = [
    'GramMatrix', 'MomentMatrixReport', 'gram', 'model_moment', 'verify_faithfulness', 'weingarten_matrix',
    'VariableKind', 'VariableSpec', 'SpectralLaw', 'CharPoly', 'parse_variable', 'model_matrix',
    'exact_moment', 'exact_moments', 'theorem51_law', 'law_of', 'charpoly',
    'CauchyEvaluator', 'cauchy_closed', 'cauchy_series', 'lemma71_series', 'block_law_series',
    'DensityPoint', 'AtomEstimate', 'stieltjes_density', 'atom_mass', 'parse_grid', 'parse_eps', 'make_grid',
    'MCLawResult', 'mc_law',
    'AtomicLaw', 'classical_law', 'closed_form_law', 'classical_moments', 'fixed_point_distribution',
    'IdentityCheck', 'check_identities',
    'SUITES', 'CheckResult', 'SuiteReport', 'run_suites'
]
