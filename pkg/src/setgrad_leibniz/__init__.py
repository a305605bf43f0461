"""set-graded Leibniz superalgebra 工具包"""

__version__ = "0.1.0"
