"""
核心模块
包含配置管理、日志管理、异常定义等基础功能
"""

from .config import config, ConfigManager, PROJECT_ROOT
from .logger import log_manager, get_logger, LoggerManager
from .errors import (
    PauliMomentsError, ExactArithmeticError, DegreeCapError, LimitExceededError,
    ValidationError, SingularMatrixError, MissingParameterError, NoClosedFormError,
    BranchCutError, ConstraintError, ConsistencyError, INPUT_ERRORS
)

__all__ = [
    'config', 'ConfigManager', 'PROJECT_ROOT',
    'log_manager', 'get_logger', 'LoggerManager',
    'PauliMomentsError', 'ExactArithmeticError', 'DegreeCapError', 'LimitExceededError',
    'ValidationError', 'SingularMatrixError', 'MissingParameterError', 'NoClosedFormError',
    'BranchCutError', 'ConstraintError', 'ConsistencyError', 'INPUT_ERRORS'
]
