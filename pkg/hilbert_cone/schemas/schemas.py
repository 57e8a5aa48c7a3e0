import math
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

UINT64_MAX = 2**64 - 1


# 不等式报告
class BoundReport(BaseModel):
    lhs_name: str
    rhs_name: str
    lhs_value: Optional[float] = None
    rhs_value: Optional[float] = None
    slack: Optional[float] = None
    holds: Optional[bool] = None
    applicable: bool = True
    convention: str = "tv = l1 (factor-2 convention)"
    tolerance: float = 1e-10
    notes: Dict[str, float | str] = Field(default_factory=dict)

    @model_validator(mode='after')
    def validate_slack(self):
        if not self.applicable:
            if self.rhs_value is not None or self.slack is not None or self.holds is not None:
                raise ValueError("不适用的不等式不能带有右端值或判定结果")
            return self
        if self.lhs_value is None or self.rhs_value is None or self.slack is None or self.holds is None:
            raise ValueError("适用的不等式必须给出左右两端与判定结果")
        if math.isnan(self.slack):
            raise ValueError("slack 不能为 NaN")
        if self.holds != (self.slack >= -self.tolerance):
            raise ValueError("holds 必须与 slack >= -tolerance 一致")
        return self


# 收缩验证报告
class ContractionReport(BaseModel):
    tau: float = Field(ge=0.0, le=1.0)
    phi: float = Field(ge=0.0, le=1.0)
    diameter: float = Field(ge=0.0)
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, le=UINT64_MAX)
    max_violation: float
    max_h_violation: float
    tolerance: float = 1e-10
    passed: bool
    h_passed: bool

    @model_validator(mode='after')
    def validate_coefficients(self):
        root = math.sqrt(self.phi)
        if abs(self.tau - (1.0 - root) / (1.0 + root)) > 1e-12:
            raise ValueError("tau 与 phi 不满足 (1-√φ)/(1+√φ)")
        # passed 只由 T 的违反量决定，H 的检查单独记在 h_passed
        if self.passed != (self.max_violation <= self.tolerance):
            raise ValueError("passed 必须与 max_violation 和容差一致")
        if self.h_passed != (self.max_h_violation <= self.tolerance):
            raise ValueError("h_passed 必须与 max_h_violation 和容差一致")
        return self


# 马尔可夫链收敛
class MarkovStep(BaseModel):
    step: int = Field(ge=0)
    hilbert: float = Field(ge=0.0)
    t: float = Field(ge=0.0, le=1.0)
    tv: float = Field(ge=0.0)
    certified_bound: float = Field(ge=0.0)


class MarkovTrace(BaseModel):
    tau: float = Field(ge=0.0, le=1.0)
    stationary: List[float]
    steps: List[MarkovStep]
    warning: Optional[str] = None

    @field_validator('steps')
    @classmethod
    def validate_steps(cls, v):
        if [s.step for s in v] != list(range(len(v))):
            raise ValueError("步序号必须从 0 开始连续")
        return v


# 输入文档
class InputDocument(BaseModel):
    kind: Literal["vector", "matrix", "kernel_grid"]
    values: List[float] | List[List[float]]
    a_grid: Optional[List[float]] = None
    x_grid: Optional[List[float]] = None
    metadata: Dict[str, str] = Field(default_factory=dict)

    @model_validator(mode='after')
    def validate_shape(self):
        values = self.values
        if self.kind == "vector":
            if not values or isinstance(values[0], list):
                raise ValueError("向量文档必须是非空一维数组")
            rows = [values]
        else:
            if not values or not all(isinstance(r, list) for r in values):
                raise ValueError("矩阵文档必须是二维数组")
            rows = values
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("二维数组必须是矩形")
        if not all(math.isfinite(x) for r in rows for x in r):
            raise ValueError("所有元素必须是有限实数")
        if self.kind == "kernel_grid":
            if self.a_grid is None or self.x_grid is None:
                raise ValueError("网格核文档必须给出 a_grid 与 x_grid")
        elif self.a_grid is not None or self.x_grid is not None:
            raise ValueError("只有网格核文档可以带网格")
        return self


# 运行配置
class RunConfig(BaseModel):
    seed: int = Field(default=0, ge=0, le=UINT64_MAX)
    trials: int = Field(default=10_000, ge=1)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    output_path: Optional[str] = None

    @field_validator('tolerances')
    @classmethod
    def validate_tolerances(cls, v):
        allowed = {"contraction", "bound", "markov"}
        for name, value in v.items():
            if name not in allowed:
                raise ValueError(f"未知的容差名称: {name}")
            if not (value >= 0 and math.isfinite(value)):
                raise ValueError(f"容差必须是非负有限实数: {name}={value}")
        return v


# 多面体输出
class PolytopeDocument(BaseModel):
    center: List[float]
    radius: float = Field(gt=0.0)
    theta_vertices: List[List[float]]
    simplex_vertices: List[List[float]]
    halfspaces: List[Tuple[int, int, int]]

    @model_validator(mode='after')
    def validate_counts(self):
        n = len(self.center) - 1
        if len(self.theta_vertices) != 2 * (2**n - 1):
            raise ValueError("顶点个数必须为 2(2^n - 1)")
        if len(self.simplex_vertices) != len(self.theta_vertices):
            raise ValueError("两种坐标下的顶点个数必须相同")
        if len(self.halfspaces) != n * (n + 1):
            raise ValueError("半空间个数必须为 n(n+1)")
        return self

    @classmethod
    def from_polytope(cls, polytope) -> "PolytopeDocument":
        return cls(
            center=polytope.center.weights.tolist(),
            radius=polytope.radius,
            theta_vertices=polytope.theta_array().tolist(),
            simplex_vertices=polytope.simplex_array().tolist(),
            halfspaces=[tuple(h) for h in polytope.halfspaces],
        )


class TileDocument(BaseModel):
    radius: float = Field(gt=0.0)
    shells: int = Field(ge=0)
    balls: List[PolytopeDocument]
    svg_path: Optional[str] = None
