"""Exception types raised across the package."""


class TmfAdamsError(Exception):
    pass


class NotInvertible(TmfAdamsError, ArithmeticError):
    """A scalar would need a denominator outside the declared inverted primes."""


class NonIntegralCoefficient(TmfAdamsError, ArithmeticError):
    pass


class DivisionNotExact(TmfAdamsError, ArithmeticError):
    pass


class BasisMismatch(TmfAdamsError):
    """Matrix cohomology disagrees with the monomial bases."""


class WeightMismatch(TmfAdamsError, ValueError):
    pass


class UnsupportedModel(TmfAdamsError, ValueError):
    pass


class NoSelfDuality(TmfAdamsError, ValueError):
    pass


class WitnessNotScaled(TmfAdamsError):
    """F(D) is not a scalar multiple of the duality witness D."""
