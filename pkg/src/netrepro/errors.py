"""Exception hierarchy.

Two broad families matter to callers: :class:`ValidationError` (bad inputs,
CLI exit code 2) and :class:`NumericalError` (an algorithm failed to produce
a trustworthy result, CLI exit code 3).

Community indices carried by errors are 1-based, matching the numbering used
in model files and CSV output.
"""


class NetreproError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(NetreproError):
    """Invalid model, state, series, or configuration input."""


class NumericalError(NetreproError):
    """A numerical routine failed (no convergence, unstable step, ...)."""


class NonSquareMatrix(ValidationError):
    def __init__(self, rows, cols):
        self.rows, self.cols = rows, cols
        super().__init__(f"transmission matrix must be square, got {rows}x{cols}")


class DimensionMismatch(ValidationError):
    def __init__(self, expected, got, what="vector"):
        self.expected, self.got = expected, got
        super().__init__(f"{what} has length {got}, expected {expected}")


class NegativeTransmission(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"beta[{i},{j}] = {value} is negative")


class NonpositiveRecovery(ValidationError):
    def __init__(self, i, value):
        self.i, self.value = i, value
        super().__init__(f"gamma[{i}] = {value} must be > 0")


class NotStronglyConnected(ValidationError):
    """The beta support graph is not strongly connected.

    ``source``/``target`` name one witness pair: no directed transmission
    path leads from community ``source`` to community ``target``.
    """

    def __init__(self, source, target):
        self.source, self.target = source, target
        super().__init__(
            f"community {target} is not reachable from community {source} "
            "on the transmission graph"
        )


class SimplexViolation(ValidationError):
    def __init__(self, i, total):
        self.i, self.total = i, total
        super().__init__(f"compartments of community {i} sum to {total}, expected 1")


class RangeViolation(ValidationError):
    def __init__(self, i, component, value):
        self.i, self.component, self.value = i, component, value
        super().__init__(f"{component}[{i}] = {value} outside [0, 1]")


class ZeroMatrix(ValidationError):
    def __init__(self):
        super().__init__("spectral radius of the zero matrix is trivially 0; refusing")


class NoConvergence(NumericalError):
    def __init__(self, iterations, last_residual):
        self.iterations, self.last_residual = iterations, last_residual
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last residual {last_residual:.3e})"
        )


class StepSizeUnstable(NumericalError):
    def __init__(self, step, t):
        self.step, self.t = step, t
        super().__init__(
            f"integration left [-0.01, 1.01] at step {step} (t={t:g}); reduce dt"
        )


class ZeroInfection(ValidationError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"infection ratio undefined: community {i} has x = 0")


class ScheduleGap(ValidationError):
    def __init__(self, day):
        self.day = day
        super().__init__(f"parameter schedule does not cover day {day}")


class InvalidParameters(ValidationError):
    pass


class InsufficientHistory(ValidationError):
    def __init__(self, have, need):
        self.have, self.need = have, need
        super().__init__(
            f"need at least {need} days of incidence to estimate, got {have}"
        )


class MissingAttribution(ValidationError):
    def __init__(self):
        super().__init__("incidence series carries no source attribution")


class ConfigError(ValidationError):
    pass
