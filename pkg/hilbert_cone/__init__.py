"""
hilbert-cone
正锥与概率测度上的 Hilbert 射影度量、Birkhoff 收缩系数与度量不等式
"""

__version__ = "0.1.0"
