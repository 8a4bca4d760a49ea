"""codeglab：有限群特征标次数与余次数的计算实验台。"""

__version__ = "0.1.0"
