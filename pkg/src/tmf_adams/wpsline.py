"""Cohomology of the weighted projective line P(w1, w2) with its omega-grading.

H^0 in weight w has basis the monomials g1^a g2^b with w1*a + w2*b = w, and
H^1 in weight w has basis the inverse monomials 1/(g1^i g2^j) with i, j >= 1.
:func:`koszul_cohomology` recomputes both from the Cech complex

    A[1/g1] x A[1/g2] -> A[1/(g1 g2)]

by explicit integer matrices, as a check on the monomial description.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import BasisMismatch, NotInvertible, WeightMismatch
from .exactmath import FinAbGroup, IntMatrix, InvertedSet, LocalizedScalar, smith_normal_form

__all__ = [
    "WPSConfig",
    "H0Monomial",
    "H1Monomial",
    "GradedElement",
    "h0_basis",
    "h1_basis",
    "koszul_cohomology",
    "koszul_matrix",
    "serre_pairing",
    "pairing_matrix",
    "adams_scalar",
    "ELL_CURVE",
    "LEVEL_TWO",
]


@dataclass(frozen=True)
class WPSConfig:
    w1: int
    w2: int
    base: InvertedSet = field(default_factory=InvertedSet)
    names: tuple[str, str] = ("g1", "g2")

    def __post_init__(self):
        if self.w1 <= 0 or self.w2 <= 0:
            raise ValueError("weights must be positive")

    @property
    def dualizing_weight(self) -> int:
        return -self.w1 - self.w2

    def over(self, base: InvertedSet) -> WPSConfig:
        return WPSConfig(self.w1, self.w2, base, self.names)


# The moduli of elliptic curves with 6 inverted, and the Legendre family for level 2.
ELL_CURVE = WPSConfig(4, 6, InvertedSet.of(2, 3), ("c4", "c6"))
LEVEL_TWO = WPSConfig(2, 2, InvertedSet.of(2), ("l1", "l2"))


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


@dataclass(frozen=True, order=True)
class H0Monomial:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("H^0 exponents are nonnegative")

    def weight(self, cfg: WPSConfig) -> int:
        return cfg.w1 * self.a + cfg.w2 * self.b

    def label(self, cfg: WPSConfig) -> str:
        parts = [_power(n, e) for n, e in zip(cfg.names, (self.a, self.b)) if e]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True, order=True)
class H1Monomial:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ValueError("H^1 exponents are at least 1")

    def weight(self, cfg: WPSConfig) -> int:
        return -cfg.w1 * self.i - cfg.w2 * self.j

    def label(self, cfg: WPSConfig) -> str:
        return "1/(" + "*".join(_power(n, e) for n, e in zip(cfg.names, (self.i, self.j))) + ")"


Monomial = Union[H0Monomial, H1Monomial]


def h0_basis(cfg: WPSConfig, weight: int) -> list[H0Monomial]:
    if weight < 0:
        return []
    return [
        H0Monomial(a, (weight - cfg.w1 * a) // cfg.w2)
        for a in range(weight // cfg.w1 + 1)
        if (weight - cfg.w1 * a) % cfg.w2 == 0
    ]


def h1_basis(cfg: WPSConfig, weight: int) -> list[H1Monomial]:
    # 1/(g1^i g2^j) <-> g1^(i-1) g2^(j-1) in weight -weight + dualizing weight
    return [H1Monomial(m.a + 1, m.b + 1) for m in h0_basis(cfg, -weight + cfg.dualizing_weight)]


@dataclass(frozen=True)
class GradedElement:
    """A homogeneous element of H^0 or H^1 as a coefficient vector."""

    cfg: WPSConfig
    degree: int  # cohomological degree, 0 or 1
    weight: int
    coeffs: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("cohomological degree must be 0 or 1")
        kind = H0Monomial if self.degree == 0 else H1Monomial
        clean = {}
        for m, c in self.coeffs.items():
            if not isinstance(m, kind) or m.weight(self.cfg) != self.weight:
                raise WeightMismatch(f"{m} does not lie in H^{self.degree}(omega^{self.weight})")
            c = Fraction(c.value if isinstance(c, LocalizedScalar) else c)
            if c.denominator != 1 and self.cfg.base.strip(c.denominator) != 1:
                raise NotInvertible(f"coefficient {c} not in {self.cfg.base.ring_name()}")
            if c:
                clean[m] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, cfg: WPSConfig, m: Monomial, coeff=1) -> GradedElement:
        deg = 0 if isinstance(m, H0Monomial) else 1
        return cls(cfg, deg, m.weight(cfg), {m: Fraction(coeff)})

    @classmethod
    def zero(cls, cfg: WPSConfig, degree: int, weight: int) -> GradedElement:
        return cls(cfg, degree, weight, {})

    def coefficient(self, m: Monomial) -> LocalizedScalar:
        return LocalizedScalar(self.coeffs.get(m, Fraction(0)), self.cfg.base)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: GradedElement) -> GradedElement:
        if (self.degree, self.weight) != (other.degree, other.weight):
            raise WeightMismatch("cannot add elements of different weight or degree")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return GradedElement(self.cfg, self.degree, self.weight, out)

    def __neg__(self) -> GradedElement:
        return self.scale(-1)

    def __sub__(self, other: GradedElement) -> GradedElement:
        return self + (-other)

    def scale(self, c) -> GradedElement:
        c = Fraction(c.value if isinstance(c, LocalizedScalar) else c)
        return GradedElement(self.cfg, self.degree, self.weight, {m: c * v for m, v in self.coeffs.items()})

    __rmul__ = scale

    def __mul__(self, other):
        if not isinstance(other, GradedElement):
            return self.scale(other)
        if self.degree == 1 and other.degree == 1:
            raise ValueError("the product of two H^1 classes lies in H^2 = 0")
        if self.degree == 1:
            return other * self
        out: dict[Monomial, Fraction] = {}
        for m, c in self.coeffs.items():
            for n, d in other.coeffs.items():
                if other.degree == 0:
                    key = H0Monomial(m.a + n.a, m.b + n.b)
                else:
                    i, j = n.i - m.a, n.j - m.b
                    if i < 1 or j < 1:
                        continue  # lands in A[1/g1] or A[1/g2]: zero in H^1
                    key = H1Monomial(i, j)
                out[key] = out.get(key, 0) + c * d
        return GradedElement(self.cfg, other.degree, self.weight + other.weight, out)

    def __pow__(self, k: int) -> GradedElement:
        if self.degree != 0 or k < 0:
            raise ValueError("only nonnegative powers of H^0 classes")
        result = GradedElement.monomial(self.cfg, H0Monomial(0, 0))
        for _ in range(k):
            result = result * self
        return result

    def label(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for m, c in self.coeffs.items():
            lab = m.label(self.cfg)
            terms.append(lab if c == 1 else f"({c})*{lab}")
        return " + ".join(terms)


def adams_scalar(weight: int, n: int, base: InvertedSet = InvertedSet()) -> LocalizedScalar:
    """n^weight, the action of psi^n on omega^weight."""
    if n == 0:
        raise ValueError("psi^0 is not defined")
    if weight < 0 and not base.is_unit(n):
        raise NotInvertible(f"{n}^{weight} needs {n} inverted, base is {base.ring_name()}")
    return LocalizedScalar(Fraction(n) ** weight, base)


def serre_pairing(cfg: WPSConfig, f: GradedElement, g: GradedElement, sign: int = 1) -> LocalizedScalar:
    """Cup product into H^1(omega^(-w1-w2)) followed by 1/(g1 g2) -> sign."""
    if f.degree != 0 or g.degree != 1:
        raise WeightMismatch("pair an H^0 class with an H^1 class")
    if f.weight + g.weight != cfg.dualizing_weight:
        raise WeightMismatch(
            f"weights {f.weight} and {g.weight} do not sum to {cfg.dualizing_weight}"
        )
    return (f * g).coefficient(H1Monomial(1, 1)) * sign


def pairing_matrix(cfg: WPSConfig, weight: int, sign: int = 1):
    """(H^0 basis at weight, complementary H^1 basis, matrix of the pairing)."""
    rows = h0_basis(cfg, weight)
    cols = h1_basis(cfg, cfg.dualizing_weight - weight)
    mat = [
        [
            serre_pairing(cfg, GradedElement.monomial(cfg, r), GradedElement.monomial(cfg, c), sign).value
            for c in cols
        ]
        for r in rows
    ]
    return rows, cols, mat


def _laurent_window(cfg: WPSConfig, weight: int) -> list[tuple[int, int]]:
    # Laurent monomials g1^a g2^b of the given weight.  Those with a, b of
    # mixed sign are acyclic subcomplexes, so a window containing every
    # monomial with a, b both >= 0 or both < 0 computes the cohomology exactly.
    bound = abs(weight) // min(cfg.w1, cfg.w2) + 2
    out = []
    for a in range(-bound, bound + 1):
        rest = weight - cfg.w1 * a
        if rest % cfg.w2 == 0:
            b = rest // cfg.w2
            if -bound <= b <= bound:
                out.append((a, b))
    return out


def koszul_matrix(cfg: WPSConfig, weight: int):
    """The Cech differential in one weight, on a window of Laurent monomials.

    Returns (source monomials, target monomials, matrix).  The source is
    A[1/g1] x A[1/g2] (tagged 1 and 2), the target A[1/(g1 g2)], and the map
    is (x, y) -> x - y.  Rows index the target, columns the source.
    """
    window = _laurent_window(cfg, weight)
    source = [(1, a, b) for a, b in window if b >= 0] + [(2, a, b) for a, b in window if a >= 0]
    target = list(window)
    index = {m: k for k, m in enumerate(target)}
    mat = [[0] * len(source) for _ in target]
    for col, (tag, a, b) in enumerate(source):
        mat[index[(a, b)]][col] = 1 if tag == 1 else -1
    return source, target, mat


def koszul_cohomology(cfg: WPSConfig, weight: int) -> tuple[FinAbGroup, FinAbGroup]:
    """(H^0, H^1) in the given weight from the kernel and cokernel of the Cech differential.

    Raises BasisMismatch if the matrix answer differs from h0_basis/h1_basis.
    """
    source, target, mat = koszul_matrix(cfg, weight)
    if source and target:
        _, d, _ = smith_normal_form(IntMatrix.from_rows(mat, cols=len(source)), transforms=False)
        diag = [d[i, i] for i in range(min(d.rows, d.cols)) if d[i, i]]
    else:
        diag = []
    rank = len(diag)
    if any(x != 1 for x in diag):
        raise BasisMismatch(f"cokernel has torsion {diag} in weight {weight}")
    h0 = FinAbGroup(len(source) - rank)
    h1 = FinAbGroup(len(target) - rank)

    expected0 = h0_basis(cfg, weight)
    expected1 = h1_basis(cfg, weight)
    if h0.free_rank != len(expected0) or h1.free_rank != len(expected1):
        raise BasisMismatch(
            f"weight {weight}: matrix ranks ({h0.free_rank}, {h1.free_rank}) vs "
            f"bases ({len(expected0)}, {len(expected1)})"
        )
    # each g1^a g2^b in A gives the kernel vector (e_(1,a,b), e_(2,a,b))
    col = {m: k for k, m in enumerate(source)}
    row = {m: k for k, m in enumerate(target)}
    for m in expected0:
        c1, c2 = col.get((1, m.a, m.b)), col.get((2, m.a, m.b))
        if c1 is None or c2 is None or any(r[c1] + r[c2] for r in mat):
            raise BasisMismatch(f"{m.label(cfg)} is not a cocycle")
    # projecting onto the coordinates 1/(g1^i g2^j) must kill the image
    for m in expected1:
        r = row.get((-m.i, -m.j))
        if r is None or any(mat[r]):
            raise BasisMismatch(f"{m.label(cfg)} is hit by the differential")
    return h0, h1
