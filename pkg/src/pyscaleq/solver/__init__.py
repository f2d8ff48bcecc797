from .evaluate import instance_breakdown, metrics
from .op_counter import OperationCounter
from .oracle import dense_oracle, generator_matrix
from .recursion import boundary_mass, RecursionCoefficients, solve, solve_level, solve_level0, SolveReport
from .transitions import balance_residual, transitions
