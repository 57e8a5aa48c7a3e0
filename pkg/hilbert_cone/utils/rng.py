"""
可复现的随机数生成器
统一使用 Philox-4x64 计数器生成器，同一个 seed 在任何地方都对应同一条随机流
"""

import numpy as np

from hilbert_cone.core.errors import ValidationError

SEED_MAX = 2**64 - 1


def validate_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """由 seed 构造 numpy Generator(Philox)"""
    return np.random.Generator(np.random.Philox(validate_seed(seed)))


def random_positive_pairs(rng: np.random.Generator, trials: int, dim: int):
    """
    抽取 trials 对严格正向量，分量为 exp(U[-3, 3])

    先抽全部 x 再抽全部 y，抽样顺序是随机流定义的一部分
    """
    xs = np.exp(rng.uniform(-3.0, 3.0, size=(trials, dim)))
    ys = np.exp(rng.uniform(-3.0, 3.0, size=(trials, dim)))
    return xs, ys
