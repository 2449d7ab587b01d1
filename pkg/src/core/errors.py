"""
异常定义模块
统一的异常层次，库代码只抛出这些异常
"""

from typing import Optional


class PauliMomentsError(Exception):
    """所有业务异常的基类"""


class ExactArithmeticError(PauliMomentsError):
    """精确运算错误（除零、级数赋值错误）"""


class DegreeCapError(PauliMomentsError):
    """多项式次数超过配置上限"""

    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f"多项式次数超过上限 | 次数: {degree} | 上限: {cap}")


class LimitExceededError(PauliMomentsError):
    """k 或阶数超出配置范围"""

    def __init__(self, name: str, value: int, cap: int):
        self.name = name
        self.value = value
        self.cap = cap
        super().__init__(f"参数超出范围 | {name}: {value} | 上限: {cap}")


class ValidationError(PauliMomentsError):
    """输入校验失败（长度不一致、非法划分、非法下标等）"""


class SingularMatrixError(PauliMomentsError):
    """矩阵奇异，消元遇到零主元"""

    def __init__(self, size: int, column: int, detail: Optional[str] = None):
        self.size = size
        self.column = column
        message = f"矩阵不可逆 | 维数: {size} | 零主元列: {column}"
        if detail:
            message += f" | {detail}"
        super().__init__(message)


class MissingParameterError(PauliMomentsError):
    """缺少参数 t"""


class NoClosedFormError(PauliMomentsError):
    """该变量没有闭式结果"""


class BranchCutError(PauliMomentsError):
    """在支撑集或分支割线上求值"""


class ConstraintError(PauliMomentsError):
    """约束条件不满足"""


class ConsistencyError(PauliMomentsError):
    """内部交叉校验失败"""


# 由命令行参数引起的错误，命令行以退出码 2 报告
INPUT_ERRORS = (ValidationError, LimitExceededError, ConstraintError, MissingParameterError)
