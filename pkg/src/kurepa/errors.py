"""Exception types shared across the package."""


class KurepaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KurepaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(KurepaError):
    """A request exceeds a configured size ceiling."""


class NotInvertibleError(DomainError):
    def __init__(self, a: int, m: int, gcd: int):
        super().__init__(f"{a} is not invertible modulo {m} (gcd = {gcd})")
        self.a = a
        self.m = m
        self.gcd = gcd


class NonCoprimeModuliError(DomainError):
    def __init__(self, m1: int, m2: int):
        super().__init__(f"moduli {m1} and {m2} are not coprime")
        self.pair = (m1, m2)


class InconsistencyError(KurepaError):
    """Two computations that must agree did not; signals a bug."""


class CheckpointError(KurepaError):
    """A checkpoint file is unreadable or belongs to a different scan."""
