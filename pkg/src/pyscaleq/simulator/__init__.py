from .compare import compare, ComparisonReport, ComparisonRow
from .config import SimConfig
from .engine import ReplicationStats, simulate_once
from .runner import Estimate, simulate, SimulationResult
from .seq_counter import EventSequence
