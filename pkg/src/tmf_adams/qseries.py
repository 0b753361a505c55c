"""Truncated q-expansions and the Tate curve.

A :class:`QSeries` stores the coefficients of q^0, ..., q^(N-1) exactly.
Binary operations truncate to the smaller precision of the two operands,
never padding with zeros that were not actually computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionNotExact, NonIntegralCoefficient, NotInvertible
from .exactmath import InvertedSet, LocalizedScalar

__all__ = [
    "QSeries",
    "WeierstrassData",
    "WeierstrassInvariants",
    "divisor_power_sums",
    "tate_a4",
    "tate_a6",
    "tate_curve",
    "weierstrass_invariants",
    "eta_product_delta",
    "eisenstein_e4",
    "eisenstein_e6",
    "verify_tate_identities",
    "named_series",
    "SERIES_NAMES",
]


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[Fraction, ...]
    context: InvertedSet = field(default_factory=InvertedSet)

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("precision must be at least 1")
        for c in cs:
            if c.denominator != 1 and self.context.strip(c.denominator) != 1:
                raise NotInvertible(f"coefficient {c} not in {self.context.ring_name()}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_ints(cls, coeffs: Iterable[int], context: InvertedSet = InvertedSet()) -> QSeries:
        return cls(tuple(Fraction(c) for c in coeffs), context)

    @classmethod
    def constant(cls, c, precision: int, context: InvertedSet = InvertedSet()) -> QSeries:
        return cls((Fraction(c),) + (Fraction(0),) * (precision - 1), context)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, m: int) -> LocalizedScalar:
        if not 0 <= m < self.precision:
            raise IndexError(f"q^{m} is outside the stored precision {self.precision}")
        return LocalizedScalar(self.coeffs[m], self.context)

    def scalars(self) -> list[LocalizedScalar]:
        return [LocalizedScalar(c, self.context) for c in self.coeffs]

    def truncate(self, precision: int) -> QSeries:
        if precision > self.precision:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[:precision], self.context)

    def _align(self, other: QSeries) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], InvertedSet]:
        n = min(self.precision, other.precision)
        return self.coeffs[:n], other.coeffs[:n], self.context.union(other.context)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return self + QSeries.constant(other, self.precision, self.context)
        a, b, ctx = self._align(other)
        return QSeries(tuple(x + y for x, y in zip(a, b)), ctx)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(tuple(-x for x in self.coeffs), self.context)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = Fraction(other.value if isinstance(other, LocalizedScalar) else other)
            return QSeries(tuple(c * x for x in self.coeffs), self.context)
        a, b, ctx = self._align(other)
        n = len(a)
        if self.is_integral() and other.is_integral():
            ia = [int(x) for x in a]
            ib = [int(y) for y in b]
            iout = [0] * n
            for i, x in enumerate(ia):
                if x:
                    for j in range(n - i):
                        iout[i + j] += x * ib[j]
            return QSeries(tuple(Fraction(x) for x in iout), ctx)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return QSeries(tuple(out), ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.constant(1, self.precision, self.context)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> QSeries:
        c0 = self.coeffs[0]
        if c0 == 0 or not self.context.is_unit(c0.numerator):
            raise NotInvertible(f"constant term {c0} is not a unit in {self.context.ring_name()}")
        inv0 = 1 / c0
        out = [inv0]
        for m in range(1, self.precision):
            s = sum(self.coeffs[i] * out[m - i] for i in range(1, m + 1))
            out.append(-s * inv0)
        return QSeries(tuple(out), self.context)

    def exact_div(self, d: int) -> QSeries:
        """Divide by an integer that must divide every (integral) coefficient."""
        out = []
        for m, c in enumerate(self.coeffs):
            q = c / d
            if q.denominator != 1 and self.context.strip(q.denominator) != 1:
                raise DivisionNotExact(f"coefficient of q^{m} ({c}) is not divisible by {d}")
            out.append(q)
        return QSeries(tuple(out), self.context)

    def shift_down(self, k: int) -> QSeries:
        """Divide by q^k; the first k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise DivisionNotExact(f"series is not divisible by q^{k}")
        return QSeries(self.coeffs[k:], self.context)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self, name: str) -> dict:
        return {"name": name, "precision": self.precision, "coeffs": [str(c) for c in self.coeffs]}


def divisor_power_sums(k: int, n: int) -> list[int]:
    """sigma_k(m) for 0 <= m < n by sieve, with sigma_k(0) = 0."""
    sig = [0] * n
    for d in range(1, n):
        dk = d**k
        for m in range(d, n, d):
            sig[m] += dk
    return sig


def tate_a4(prec: int) -> QSeries:
    if prec < 1:
        raise ValueError("precision must be positive")
    return QSeries.from_ints(-5 * s for s in divisor_power_sums(3, prec))


def tate_a6(prec: int) -> QSeries:
    if prec < 1:
        raise ValueError("precision must be positive")
    s3 = divisor_power_sums(3, prec)
    s5 = divisor_power_sums(5, prec)
    out = []
    for m in range(prec):
        num = 5 * s3[m] + 7 * s5[m]
        if num % 12:
            raise NonIntegralCoefficient(f"a6 coefficient of q^{m} is {-num}/12")
        out.append(-(num // 12))
    return QSeries.from_ints(out)


@dataclass(frozen=True)
class WeierstrassData:
    a1: QSeries
    a2: QSeries
    a3: QSeries
    a4: QSeries
    a6: QSeries

    def __post_init__(self):
        precs = {s.precision for s in (self.a1, self.a2, self.a3, self.a4, self.a6)}
        if len(precs) != 1:
            raise ValueError("Weierstrass coefficients must share one precision")

    @property
    def precision(self) -> int:
        return self.a1.precision


def tate_curve(prec: int) -> WeierstrassData:
    """y^2 + xy = x^3 + a4(q) x + a6(q)."""
    return WeierstrassData(
        a1=QSeries.constant(1, prec),
        a2=QSeries.constant(0, prec),
        a3=QSeries.constant(0, prec),
        a4=tate_a4(prec),
        a6=tate_a6(prec),
    )


@dataclass(frozen=True)
class WeierstrassInvariants:
    b2: QSeries
    b4: QSeries
    b6: QSeries
    b8: QSeries
    c4: QSeries
    c6: QSeries
    delta: QSeries
    j: tuple[int, QSeries]  # (leading exponent, coefficients from q^leading on)

    def __iter__(self):
        return iter((self.b2, self.b4, self.b6, self.b8, self.c4, self.c6, self.delta, self.j))


def weierstrass_invariants(w: WeierstrassData) -> WeierstrassInvariants:
    a1, a2, a3, a4, a6 = w.a1, w.a2, w.a3, w.a4, w.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
    c4_cubed = c4 * c4 * c4
    delta = (c4_cubed - c6 * c6).exact_div(1728)
    j = _j_expansion(c4_cubed, delta)
    return WeierstrassInvariants(b2, b4, b6, b8, c4, c6, delta, j)


def _j_expansion(c4_cubed: QSeries, delta: QSeries) -> tuple[int, QSeries]:
    lead = next((i for i, c in enumerate(delta.coeffs) if c), None)
    if lead is None:
        raise NotInvertible("discriminant vanishes to the stored precision")
    unit = delta.shift_down(lead)
    return -lead, c4_cubed.truncate(unit.precision) * unit.inverse()


def eta_product_delta(prec: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24, truncated."""
    if prec < 1:
        raise ValueError("precision must be positive")
    # prod (1 - q^n) to precision prec - 1, then the 24th power
    m = max(prec - 1, 1)
    euler = [0] * m
    euler[0] = 1
    for n in range(1, m):
        for i in range(m - 1, n - 1, -1):
            euler[i] -= euler[i - n]
    p24 = QSeries.from_ints(euler) ** 24
    return QSeries.from_ints([0] + [int(c) for c in p24.coeffs[: prec - 1]])


def eisenstein_e4(prec: int) -> QSeries:
    s = divisor_power_sums(3, prec)
    return QSeries.from_ints([1] + [240 * x for x in s[1:]])


def eisenstein_e6(prec: int) -> QSeries:
    s = divisor_power_sums(5, prec)
    return QSeries.from_ints([1] + [-504 * x for x in s[1:]])


def verify_tate_identities(prec: int) -> dict[str, bool]:
    """Cross-check the Tate-curve discriminant against the eta product."""
    if prec < 2:
        raise ValueError("precision must be at least 2")
    inv = weierstrass_invariants(tate_curve(prec))
    return {
        "c4^3 - c6^2 == 1728*delta": (inv.c4 ** 3 - inv.c6 ** 2 - 1728 * inv.delta).is_zero(),
        "delta == eta product": inv.delta == eta_product_delta(prec),
        "delta has q-coefficient 1": inv.delta.coeffs[1] == 1,
    }


SERIES_NAMES = ("a4", "a6", "b2", "b4", "b6", "b8", "c4", "c6", "delta", "eta_delta", "j", "e4", "e6")


def named_series(name: str, prec: int) -> tuple[int, QSeries]:
    """(leading exponent, series) for a series name; only j has a nonzero exponent."""
    if name == "a4":
        return 0, tate_a4(prec)
    if name == "a6":
        return 0, tate_a6(prec)
    if name == "eta_delta":
        return 0, eta_product_delta(prec)
    if name == "e4":
        return 0, eisenstein_e4(prec)
    if name == "e6":
        return 0, eisenstein_e6(prec)
    inv = weierstrass_invariants(tate_curve(prec))
    if name == "j":
        return inv.j
    if name in ("b2", "b4", "b6", "b8", "c4", "c6", "delta"):
        return 0, getattr(inv, name)
    raise KeyError(f"unknown series {name!r}; choose from {', '.join(SERIES_NAMES)}")
