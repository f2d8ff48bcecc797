from .distribution import StationaryDistribution
from .metrics import PerformanceMetrics
from .params import BaseParams, SystemParams
from .state_space import build_state_space, StateSpace
