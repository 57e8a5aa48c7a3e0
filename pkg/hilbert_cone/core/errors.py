"""
错误类型定义
所有领域错误都继承自 ValueError，exit_code 供命令行前端映射退出码
"""

from typing import Optional


class HilbertConeError(ValueError):
    """领域错误基类"""

    exit_code: int = 1


class DimensionError(HilbertConeError):
    """向量或矩阵维度不匹配"""


class ValidationError(HilbertConeError):
    """输入不满足类型不变量（负元素、不可容许矩阵、非随机矩阵等）"""


class DomainError(HilbertConeError):
    """点不在运算的定义域内（例如单纯形边界点）"""


class ChartRangeError(DomainError):
    """θ坐标跨度过大，逆坐标卡无法表示"""


class RatioOverflowError(DomainError):
    """数值超出 float64 范围，只能在对数空间表示"""


class UnsupportedDimensionError(HilbertConeError):
    """该运算只支持特定维度"""


class BoundInapplicableError(HilbertConeError):
    """不等式前提不成立（例如 H = ∞ 或支撑集不同）"""


class ContractionViolationError(HilbertConeError):
    """定理保证的不等式在数值上被违反"""


class InputParseError(HilbertConeError):
    """输入文本解析失败"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NegativeEntryError(ValidationError):
    """测度或矩阵中出现负元素"""

    def __init__(self, index, value: float):
        self.index = index
        self.value = value
        super().__init__(f"negative entry {value!r} at index {index}")


class RaggedArrayError(InputParseError):
    """数组不是矩形"""


class UsageError(HilbertConeError):
    """命令行用法错误"""

    exit_code = 2
