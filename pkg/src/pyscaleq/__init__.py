from . import errors, reference, variates
from .__version__ import __version__

# isort: split

from .model import BaseParams, PerformanceMetrics, StateSpace, StationaryDistribution, SystemParams

# isort: split

from .optimizer import argmin_k, cost, CostSpec, KScan, OptimizationResult, select_k_algorithm1
from .simulator import compare, SimConfig, simulate, SimulationResult
from .solver import dense_oracle, solve, SolveReport
