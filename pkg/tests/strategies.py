"""
测试用的随机输入
hypothesis 策略用于性质测试，Philox 抽样用于固定规模的扫描
"""

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hilbert_cone.models.cones import PositiveVector, SimplexPoint
from hilbert_cone.models.operators import NonnegMatrix

weights = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
scales = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def positive_vectors(draw, min_dim=2, max_dim=8, dim=None):
    size = dim if dim is not None else draw(st.integers(min_value=min_dim, max_value=max_dim))
    return PositiveVector(draw(arrays(np.float64, size, elements=weights)))


@st.composite
def vector_pairs(draw, min_dim=2, max_dim=8):
    size = draw(st.integers(min_value=min_dim, max_value=max_dim))
    return draw(positive_vectors(dim=size)), draw(positive_vectors(dim=size))


@st.composite
def vector_triples(draw, min_dim=2, max_dim=8):
    size = draw(st.integers(min_value=min_dim, max_value=max_dim))
    return tuple(draw(positive_vectors(dim=size)) for _ in range(3))


sparse_weights = st.one_of(st.just(0.0), weights)


@st.composite
def nonnegative_vectors(draw, min_dim=2, max_dim=8, dim=None):
    """元素可以为 0，至少一个为正"""
    size = dim if dim is not None else draw(st.integers(min_value=min_dim, max_value=max_dim))
    values = draw(arrays(np.float64, size, elements=sparse_weights).filter(lambda a: bool(np.any(a > 0))))
    return PositiveVector(values)


@st.composite
def sparse_vector_pairs(draw, min_dim=2, max_dim=8):
    """含零元素的向量对，约一半与 x 同支撑"""
    size = draw(st.integers(min_value=min_dim, max_value=max_dim))
    x = draw(nonnegative_vectors(dim=size))
    if draw(st.booleans()):
        fresh = draw(arrays(np.float64, size, elements=weights))
        return x, PositiveVector(np.where(x.support_mask, fresh, 0.0))
    return x, draw(nonnegative_vectors(dim=size))


def random_simplex(rng: np.random.Generator, dim: int) -> SimplexPoint:
    return SimplexPoint(rng.dirichlet(np.ones(dim)))


def random_positive_matrix(rng: np.random.Generator, dim: int) -> NonnegMatrix:
    return NonnegMatrix(np.exp(rng.uniform(-3.0, 3.0, size=(dim, dim))))


def random_allowable_matrix(rng: np.random.Generator, dim: int, zero_fraction: float = 0.3) -> NonnegMatrix:
    """随机置零部分元素，对角线保持为正以保证可容许"""
    entries = np.exp(rng.uniform(-3.0, 3.0, size=(dim, dim)))
    entries[rng.random((dim, dim)) < zero_fraction] = 0.0
    np.fill_diagonal(entries, np.exp(rng.uniform(-3.0, 3.0, size=dim)))
    return NonnegMatrix(entries)


def random_stochastic_matrix(rng: np.random.Generator, dim: int) -> NonnegMatrix:
    rows = rng.dirichlet(np.ones(dim), size=dim) + 0.05
    return NonnegMatrix(rows / rows.sum(axis=1, keepdims=True))
