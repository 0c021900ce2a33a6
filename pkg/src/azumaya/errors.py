"""Exception types raised across the package."""


class AlgebraError(ValueError):
    """Base class for every error this package raises on purpose."""


class NotPrimeError(AlgebraError):
    pass


class ReducibleModulusError(AlgebraError):
    def __init__(self, modulus, factor):
        self.modulus = tuple(modulus)
        self.factor = tuple(factor)
        super().__init__(
            f"modulus {list(self.modulus)} is reducible: it has the factor {list(self.factor)} "
            "(coefficients low to high)"
        )


class RingTooLargeError(AlgebraError):
    pass


class NotInvertibleError(AlgebraError):
    pass


class RingMismatchError(AlgebraError):
    pass


class IndexOutOfRangeError(AlgebraError):
    pass


class NotAnAutomorphismError(AlgebraError):
    pass


class CenterMismatchError(AlgebraError):
    def __init__(self, computed, expected):
        self.computed = computed
        self.expected = expected
        super().__init__(
            f"computed center has dimension {len(computed)}, configured S0 has dimension "
            f"{len(expected)}; the ring tower is probably mis-specified"
        )


class NotAssociativeError(AlgebraError):
    pass


class ConstraintViolationError(AlgebraError):
    """A parameter pair (tau, k) does not define an automorphism.

    ``failed`` lists the violated conditions by name: ``"k-not-unit-of-C"``,
    ``"tau-sigma-noncommuting"``, ``"tau-moves-S0"``, ``"norm-equation"``.
    """

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("constraint violated: " + ", ".join(self.failed))


class BadLeftInverseError(AlgebraError):
    pass


class GeneratorsDoNotGenerateError(AlgebraError):
    pass


class BudgetExceededError(AlgebraError):
    pass


class CertificationFailure(AlgebraError):
    def __init__(self, sigma_index, tau_index):
        self.sigma_index = sigma_index
        self.tau_index = tau_index
        super().__init__(
            f"no Galois witness for sigma^{sigma_index}: the equation block for "
            f"tau = sigma^{tau_index} is inconsistent"
        )


class NormNotOneError(AlgebraError):
    pass


class NotInSubringError(AlgebraError):
    pass


class NotApplicableError(AlgebraError):
    pass


class ConfigError(AlgebraError):
    def __init__(self, field, message, line=None):
        self.field = field
        self.line = line
        where = f"{field}" + (f" (line {line})" if line is not None else "")
        super().__init__(f"config error in {where}: {message}")


class TooLargeToPrintError(AlgebraError):
    pass
