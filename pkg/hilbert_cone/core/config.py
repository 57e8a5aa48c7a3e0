import os

SEED_MAX = 2**64 - 1


class Settings:
    """运行配置，构造时从环境变量读取"""

    def __init__(self):
        # 随机数种子（64位无符号整数），在 validate() 或首次读取时解析
        self.SEED_TEXT: str = os.getenv("HILBERT_CONE_SEED", "0")

        # 日志配置
        self.LOG_LEVEL: str = os.getenv("HILBERT_CONE_LOG_LEVEL", "WARNING")
        self.LOG_DIR: str | None = os.getenv("HILBERT_CONE_LOG_DIR") or None

        # 数值容差
        self.CONTRACTION_TOLERANCE: float = 1e-10
        self.BOUND_TOLERANCE: float = 1e-10
        self.MARKOV_TOLERANCE: float = 1e-9
        self.CHART_TOLERANCE: float = 1e-12
        self.SIMPLEX_SUM_TOLERANCE: float = 1e-12
        self.STOCHASTIC_TOLERANCE: float = 1e-10

        # 平稳分布迭代
        self.STATIONARY_TOLERANCE: float = 1e-13
        self.STATIONARY_MAX_STEPS: int = 100_000

        # 坐标卡与多面体规模限制
        self.MAX_CHART_SPREAD: float = 1400.0
        self.MAX_BALL_DIMENSION: int = 16

    @property
    def DEFAULT_SEED(self) -> int:
        try:
            seed = int(self.SEED_TEXT)
        except ValueError:
            raise ValueError(f"HILBERT_CONE_SEED must be an integer, got {self.SEED_TEXT!r}") from None
        if not 0 <= seed <= SEED_MAX:
            raise ValueError(f"HILBERT_CONE_SEED must be in [0, 2**64 - 1], got {seed}")
        return seed

    def validate(self) -> None:
        """检查环境变量取值，非法时抛出 ValueError"""
        self.DEFAULT_SEED


settings = Settings()
