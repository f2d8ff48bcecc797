class PyScaleQError(Exception):
    pass


# -----------------------------------------------------------------------------
# Parameter Errors
# -----------------------------------------------------------------------------
class ParameterError(PyScaleQError):
    pass


class InvalidRateError(ParameterError):
    pass


class InvalidLegacyCapacityError(ParameterError):
    pass


class InvalidInstanceCountError(ParameterError):
    pass


class InvalidCapacityError(ParameterError):
    pass


class UnknownParameterError(ParameterError):
    pass


# -----------------------------------------------------------------------------
# State Space Errors
# -----------------------------------------------------------------------------
class StateNotFoundError(PyScaleQError):
    pass


class IndexOutOfRangeError(PyScaleQError):
    pass


# -----------------------------------------------------------------------------
# Solver Errors
# -----------------------------------------------------------------------------
class NumericalFaultError(PyScaleQError):
    pass


class InvalidDistributionError(PyScaleQError):
    pass


class UndefinedMetricError(PyScaleQError):
    pass


class OracleSizeError(PyScaleQError):
    pass


class SingularGeneratorError(PyScaleQError):
    pass


# -----------------------------------------------------------------------------
# Optimizer Errors
# -----------------------------------------------------------------------------
class CostSpecError(PyScaleQError):
    pass


# -----------------------------------------------------------------------------
# Simulator Errors
# -----------------------------------------------------------------------------
class SimConfigError(PyScaleQError):
    pass


class DistributionSpecError(PyScaleQError):
    pass


class ParamsMismatchError(PyScaleQError):
    pass


# -----------------------------------------------------------------------------
# CLI Errors
# -----------------------------------------------------------------------------
class SweepSpecError(PyScaleQError):
    pass


class ConfigFileError(PyScaleQError):
    pass


class OutputFileError(PyScaleQError):
    pass
