from .cost import cost, CostSpec
from .selection import algorithm1_report, argmin_k, KScan, OptimizationResult, ScanRow, select_k_algorithm1
