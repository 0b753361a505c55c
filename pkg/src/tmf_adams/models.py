"""Homotopy-group models of Tmf[1/6n], KU, KO and Tmf(2), plus duality witnesses.

Degree convention: a class in H^0(omega^w) sits in degree 2w, a class in
H^1(omega^w) in degree 2w - 1.  Free classes carry the weight w on which
psi^n acts by n^w; torsion classes carry no weight and are fixed by psi^n.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .errors import NoSelfDuality, UnsupportedModel
from .exactmath import FinAbGroup, InvertedSet, LocalizedScalar
from .wpsline import (
    ELL_CURVE,
    LEVEL_TWO,
    GradedElement,
    H0Monomial,
    H1Monomial,
    WPSConfig,
    h0_basis,
    h1_basis,
)

__all__ = [
    "TorsionLedgerEntry",
    "BUILTIN_LEDGER",
    "load_ledger",
    "default_ledger",
    "ledger_lookup",
    "BasisClass",
    "Element",
    "SpectrumModel",
    "homotopy_group",
    "DualityWitness",
    "witness",
    "TMF1_TABLE",
    "LEDGER_ENV_VAR",
]

LEDGER_ENV_VAR = "TMF_ADAMS_LEDGER"


@dataclass(frozen=True)
class TorsionLedgerEntry:
    """A family of torsion classes in degrees degree_offset + degree_period * l, l >= 0."""

    family: str
    prime: int
    degree_offset: int
    degree_period: int
    orders: tuple[int, ...]

    def __post_init__(self):
        if self.degree_period <= 0:
            raise ValueError("degree_period must be positive")
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))

    def degree(self, l: int) -> int:
        return self.degree_offset + self.degree_period * l

    def parameter(self, k: int) -> Optional[int]:
        l, r = divmod(k - self.degree_offset, self.degree_period)
        return l if r == 0 and l >= 0 else None

    def group(self) -> FinAbGroup:
        return FinAbGroup(0, self.orders)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "prime": self.prime,
            "degree_offset": self.degree_offset,
            "degree_period": self.degree_period,
            "orders": list(self.orders),
        }


# Hurewicz-image families: |alpha| = 3, |eta| = 1, |nu| = 3, |Delta| = 24.
BUILTIN_LEDGER: tuple[TorsionLedgerEntry, ...] = (
    TorsionLedgerEntry("alpha*Delta^3(l+1)", 3, 75, 72, (3,)),
    TorsionLedgerEntry("eta*Delta^8(l+1)", 2, 193, 192, (2,)),
    TorsionLedgerEntry("nu*Delta^8(l+1)", 2, 195, 192, (8,)),
)


def load_ledger(path: Union[str, Path]) -> tuple[TorsionLedgerEntry, ...]:
    with open(path) as fh:
        raw = json.load(fh)
    return tuple(
        TorsionLedgerEntry(
            family=e["family"],
            prime=int(e["prime"]),
            degree_offset=int(e["degree_offset"]),
            degree_period=int(e["degree_period"]),
            orders=tuple(e["orders"]),
        )
        for e in raw
    )


def default_ledger(path: Union[str, Path, None] = None) -> tuple[TorsionLedgerEntry, ...]:
    """Built-in families, extended by ``path`` or else by $TMF_ADAMS_LEDGER."""
    path = path or os.environ.get(LEDGER_ENV_VAR)
    if not path:
        return BUILTIN_LEDGER
    extra = tuple(e for e in load_ledger(path) if e not in BUILTIN_LEDGER)
    return BUILTIN_LEDGER + extra


def ledger_lookup(
    p: int, k: int, ledger: Iterable[TorsionLedgerEntry] = BUILTIN_LEDGER
) -> list[TorsionLedgerEntry]:
    if p not in (2, 3):
        raise ValueError("the ledger records 2- and 3-primary torsion only")
    return [e for e in ledger if e.prime == p and e.parameter(k) is not None]


@dataclass(frozen=True)
class BasisClass:
    label: str
    degree: int
    weight: Optional[int]  # psi^n multiplies by n^weight; None for torsion
    order: int = 0  # 0 for a free generator, otherwise the cyclic order
    monomial: Union[H0Monomial, H1Monomial, None] = field(default=None, compare=False)

    @property
    def is_free(self) -> bool:
        return self.order == 0


@dataclass(frozen=True, eq=False)
class Element:
    """Finite combination of basis classes; torsion coefficients live in Z/order."""

    terms: Mapping[BasisClass, Fraction]
    base: InvertedSet = field(default_factory=InvertedSet)

    def __post_init__(self):
        clean = {}
        for b, c in self.terms.items():
            s = c if isinstance(c, LocalizedScalar) else LocalizedScalar(Fraction(c), self.base)
            v = Fraction(s.reduce_mod(b.order)) if b.order else s.value
            if v:
                clean[b] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, b: BasisClass, base: InvertedSet, coeff=1) -> Element:
        return cls({b: Fraction(coeff)}, base)

    def scale(self, c) -> Element:
        c = c.value if isinstance(c, LocalizedScalar) else Fraction(c)
        return Element({b: c * v for b, v in self.terms.items()}, self.base)

    def map_terms(self, fn) -> Element:
        """Apply ``fn(basis_class) -> scalar`` termwise."""
        out = {}
        for b, v in self.terms.items():
            s = fn(b)
            s = s.value if isinstance(s, LocalizedScalar) else Fraction(s)
            out[b] = v * s
        return Element(out, self.base)

    def __add__(self, other: Element) -> Element:
        out = dict(self.terms)
        for b, v in other.terms.items():
            out[b] = out.get(b, 0) + v
        return Element(out, self.base)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def label(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(b.label if v == 1 else f"({v})*{b.label}" for b, v in self.terms.items())

    __str__ = label


def _pow_label(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _ko_class(k: int, two_inverted: bool) -> Optional[BasisClass]:
    q, r = divmod(k, 8)
    bott = _pow_label("u_R", q) if q else ""

    def lab(prefix: str) -> str:
        if prefix and bott:
            return f"{prefix}*{bott}"
        return prefix or bott or "1"

    if r == 0:
        return BasisClass(lab(""), k, 4 * q)
    if r == 4:
        return BasisClass(lab("v"), k, 4 * q + 2)
    if r in (1, 2) and not two_inverted:
        return BasisClass(lab("eta" if r == 1 else "eta^2"), k, None, 2)
    return None


MODEL_KINDS = ("TMF", "KU", "KO", "TMF2", "TMF1")

TMF1_TABLE: dict[int, int] = {2: 13, 3: 9, 4: 7, 5: 5, 6: 5, 7: 3, 8: 3, 11: 1, 14: 1, 15: 1, 23: -1}


@dataclass(frozen=True)
class SpectrumModel:
    kind: str
    base: InvertedSet = field(default_factory=InvertedSet)
    level: Optional[int] = None
    ledger: tuple[TorsionLedgerEntry, ...] = BUILTIN_LEDGER

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in MODEL_KINDS:
            raise UnsupportedModel(f"unknown model {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "TMF2" and 2 not in self.base:
            object.__setattr__(self, "base", self.base.union([2]))
        if kind == "TMF1":
            if self.level is None:
                raise ValueError("TMF1 needs a level m")
            if self.level in TMF1_TABLE:
                object.__setattr__(self, "base", self.base.union(InvertedSet.inverting(self.level)))

    @classmethod
    def tmf(cls, *primes: int, ledger=BUILTIN_LEDGER) -> SpectrumModel:
        return cls("TMF", InvertedSet(primes), ledger=ledger)

    @classmethod
    def ku(cls, *primes: int) -> SpectrumModel:
        return cls("KU", InvertedSet(primes))

    @classmethod
    def ko(cls, *primes: int) -> SpectrumModel:
        return cls("KO", InvertedSet(primes))

    @classmethod
    def tmf2(cls, *primes: int) -> SpectrumModel:
        return cls("TMF2", InvertedSet(primes))

    @classmethod
    def tmf1(cls, m: int) -> SpectrumModel:
        return cls("TMF1", InvertedSet(), level=m)

    @property
    def name(self) -> str:
        if self.kind == "TMF1":
            return f"TMF1({self.level})"
        return f"{self.kind}[{self.base.ring_name()}]"

    @property
    def wps(self) -> Optional[WPSConfig]:
        if self.kind == "TMF":
            return ELL_CURVE.over(self.base.union([2, 3]))
        if self.kind == "TMF2":
            return LEVEL_TWO.over(self.base)
        return None

    def _wps_classes(self, k: int) -> list[BasisClass]:
        cfg = self.wps
        if k % 2 == 0:
            mons = h0_basis(cfg, k // 2) if k >= 0 else []
        else:
            mons = h1_basis(cfg, (k + 1) // 2) if k < 0 else []
        return [BasisClass(m.label(cfg), k, m.weight(cfg), 0, m) for m in mons]

    def basis(self, k: int) -> list[BasisClass]:
        """Labelled generators of pi_k: free classes first, then torsion."""
        if self.kind == "TMF1":
            raise UnsupportedModel("only the duality witness of TMF1(m) is modelled")
        if self.kind == "KU":
            if k % 2:
                return []
            j = k // 2
            return [BasisClass(_pow_label("u", j) if j else "1", k, j)]
        if self.kind == "KO":
            c = _ko_class(k, 2 in self.base)
            return [c] if c else []
        classes = self._wps_classes(k)
        if self.kind == "TMF":
            for p in (2, 3):
                if p in self.base:
                    continue
                for e in ledger_lookup(p, k, self.ledger):
                    l = e.parameter(k)
                    for idx, order in enumerate(e.orders):
                        suffix = f"#{idx}" if len(e.orders) > 1 else ""
                        classes.append(BasisClass(f"{e.family}[l={l}]{suffix}", k, None, order))
        return classes

    def homotopy_group(self, k: int) -> tuple[FinAbGroup, list[BasisClass]]:
        classes = self.basis(k)
        free = sum(1 for c in classes if c.is_free)
        return FinAbGroup(free, tuple(c.order for c in classes if not c.is_free)), classes

    def element(self, x: Union[BasisClass, GradedElement, Element], degree: Optional[int] = None) -> Element:
        """Promote a basis class or a cohomology class of the WPS model to an Element."""
        if isinstance(x, Element):
            return x
        if isinstance(x, BasisClass):
            return Element.of(x, self.base)
        cfg = self.wps
        if cfg is None:
            raise UnsupportedModel(f"{self.name} has no weighted-projective model")
        deg = 2 * x.weight - x.degree
        lookup = {c.monomial: c for c in self._wps_classes(deg)}
        return Element({lookup[m]: v for m, v in x.coeffs.items()}, self.base)

    def find(self, label: str, k: int) -> BasisClass:
        for c in self.basis(k):
            if c.label == label:
                return c
        raise KeyError(f"no class {label!r} in degree {k} of {self.name}")


def homotopy_group(model: SpectrumModel, k: int) -> tuple[FinAbGroup, list[BasisClass]]:
    return model.homotopy_group(k)


@dataclass(frozen=True)
class DualityWitness:
    model: str
    shift: int
    witness_degree: int
    witness_label: str
    lambda_exponent: int  # lambda(n) = n ** lambda_exponent

    def lam(self, n: int, base: Optional[InvertedSet] = None) -> LocalizedScalar:
        base = base if base is not None else InvertedSet.inverting(n)
        return LocalizedScalar(Fraction(n) ** self.lambda_exponent, base)


def witness(model: Union[SpectrumModel, str], level: Optional[int] = None) -> DualityWitness:
    """Anderson self-duality datum (shift d, witness D in degree -d, lambda exponent)."""
    kind = model.kind if isinstance(model, SpectrumModel) else model.upper()
    if isinstance(model, SpectrumModel) and level is None:
        level = model.level
    if kind == "KU":
        return DualityWitness("KU", 0, 0, "1", 0)
    if kind == "KO":
        return DualityWitness("KO", 4, -4, "v*u_R^-1", -2)
    if kind == "TMF":
        return DualityWitness("TMF", 21, -21, "1/(c4*c6)", -10)
    if kind == "TMF2":
        return DualityWitness("TMF2", 9, -9, "1/(l1*l2)", -4)
    if kind == "TMF1":
        if level not in TMF1_TABLE:
            raise NoSelfDuality(f"Tmf_1({level}) is not Anderson self-dual")
        l = TMF1_TABLE[level]
        return DualityWitness(f"TMF1({level})", l, -l, f"D_{level}", -(l - 1) // 2)
    raise UnsupportedModel(f"unknown model {kind!r}")
