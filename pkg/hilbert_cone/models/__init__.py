from hilbert_cone.models.cones import ExtendedDistance, LogDensityVector, PositiveVector, SimplexPoint
from hilbert_cone.models.operators import GridKernel, NonnegMatrix
from hilbert_cone.models.charts import BallPolytope, Halfspace, ThetaVector

__all__ = [
    "BallPolytope",
    "ExtendedDistance",
    "GridKernel",
    "Halfspace",
    "LogDensityVector",
    "NonnegMatrix",
    "PositiveVector",
    "SimplexPoint",
    "ThetaVector",
]
