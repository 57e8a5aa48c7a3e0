"""
hilbert-cone 程序入口
等价于安装后的 hilbert-cone 命令
"""

from hilbert_cone.cli import main

if __name__ == "__main__":
    main()
