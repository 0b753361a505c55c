"""Exact scalars over Z[1/S] and finitely generated abelian groups.

Everything here is immutable.  Scalars remember which primes they are allowed
to have in their denominators; groups are kept in invariant-factor form so
that isomorphism is plain equality.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence, Union

from sympy import factorint, isprime, primefactors

from .errors import NotInvertible

__all__ = [
    "InvertedSet",
    "LocalizedScalar",
    "FinAbGroup",
    "IntMatrix",
    "smith_normal_form",
    "hom_to",
    "ext1_to",
    "ses_assemble",
    "as_fraction",
]


@dataclass(frozen=True)
class InvertedSet:
    """A finite set of primes; models the ring Z[1/p for p in primes]."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, *primes: int) -> InvertedSet:
        return cls(tuple(primes))

    @classmethod
    def inverting(cls, *ns: int) -> InvertedSet:
        """The set of primes dividing any of ``ns`` (zero and units contribute nothing)."""
        ps: set[int] = set()
        for n in ns:
            if n not in (0, 1, -1):
                ps.update(primefactors(abs(n)))
        return cls(tuple(ps))

    def union(self, other: Union[InvertedSet, Iterable[int]]) -> InvertedSet:
        others = other.primes if isinstance(other, InvertedSet) else tuple(other)
        return InvertedSet(self.primes + tuple(others))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __le__(self, other: InvertedSet) -> bool:
        return set(self.primes) <= set(other.primes)

    def strip(self, n: int) -> int:
        """Remove every factor of an inverted prime from ``n``."""
        if n == 0:
            return 0
        for p in self.primes:
            while n % p == 0:
                n //= p
        return n

    def is_unit(self, n: int) -> bool:
        return n != 0 and abs(self.strip(n)) == 1

    def ring_name(self) -> str:
        if not self.primes:
            return "Z"
        return f"Z[1/{prod(self.primes)}]"

    def __str__(self) -> str:
        return self.ring_name()


Number = Union[int, Fraction, "LocalizedScalar"]


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, LocalizedScalar):
        return x.value
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class LocalizedScalar:
    """An exact element of Z[1/S].

    Arithmetic between scalars with different contexts works in the union of
    the two contexts and sets ``widened`` on the result.
    """

    value: Fraction
    context: InvertedSet = field(default_factory=InvertedSet)
    widened: bool = False

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v)
        if self.context.strip(v.denominator) != 1:
            raise NotInvertible(
                f"{v} has denominator outside {self.context.ring_name()}"
            )

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _lift(self, other) -> tuple[Fraction, InvertedSet, bool]:
        if isinstance(other, LocalizedScalar):
            if other.context == self.context:
                return other.value, self.context, self.widened or other.widened
            return other.value, self.context.union(other.context), True
        if isinstance(other, (int, Fraction)):
            return Fraction(other), self.context, self.widened
        return NotImplemented  # type: ignore[return-value]

    def _make(self, v: Fraction, ctx: InvertedSet, widened: bool) -> LocalizedScalar:
        return LocalizedScalar(v, ctx, widened)

    def __add__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        o, ctx, w = lifted
        return self._make(self.value + o, ctx, w)

    __radd__ = __add__

    def __sub__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        o, ctx, w = lifted
        return self._make(self.value - o, ctx, w)

    def __rsub__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        o, ctx, w = lifted
        return self._make(o - self.value, ctx, w)

    def __mul__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        o, ctx, w = lifted
        return self._make(self.value * o, ctx, w)

    __rmul__ = __mul__

    def __truediv__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        o, ctx, w = lifted
        if o == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self._make(self.value / o, ctx, w)

    def __neg__(self):
        return self._make(-self.value, self.context, self.widened)

    def __pow__(self, k: int):
        if self.value == 0 and k < 0:
            raise ZeroDivisionError("0 has no negative powers")
        return self._make(self.value**k, self.context, self.widened)

    def __eq__(self, other) -> bool:
        if isinstance(other, LocalizedScalar):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def is_unit(self) -> bool:
        return self.context.is_unit(self.numerator)

    def reduce_mod(self, m: int) -> int:
        """Image in Z/m; needs the denominator to be prime to m."""
        if m == 1:
            return 0
        d = self.denominator
        if gcd(d, m) != 1:
            raise NotInvertible(f"{self.value} has no image in Z/{m}")
        return self.numerator * pow(d, -1, m) % m

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"LocalizedScalar({self.value}, {self.context.ring_name()})"


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    powers: dict[int, list[int]] = defaultdict(list)
    for d in orders:
        d = abs(int(d))
        if d == 0:
            raise ValueError("use free_rank for infinite cyclic summands")
        for p, e in factorint(d).items():
            powers[p].append(p**e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    factors = [1] * length
    for p, vals in powers.items():
        vals.sort(reverse=True)
        for i, q in enumerate(vals):
            factors[i] *= q
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_r with d_1 | d_2 | ... | d_r."""

    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion_orders", _invariant_factors(self.torsion_orders))

    @classmethod
    def zero(cls) -> FinAbGroup:
        return cls()

    @classmethod
    def free(cls, rank: int) -> FinAbGroup:
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> FinAbGroup:
        return cls(0, (order,)) if order != 0 else cls(1)

    @classmethod
    def from_presentation(cls, relations: IntMatrix) -> FinAbGroup:
        """Cokernel of ``relations``: generators are rows, relations are columns."""
        _, d, _ = smith_normal_form(relations, transforms=False)
        diag = [d[i, i] for i in range(min(d.rows, d.cols))]
        nonzero = [abs(x) for x in diag if x != 0]
        return cls(relations.rows - len(nonzero), tuple(x for x in nonzero if x != 1))

    @property
    def order(self) -> int:
        """Order of a finite group; 0 if the group is infinite."""
        return 0 if self.free_rank else prod(self.torsion_orders)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders

    def torsion(self) -> FinAbGroup:
        return FinAbGroup(0, self.torsion_orders)

    def free_part(self) -> FinAbGroup:
        return FinAbGroup(self.free_rank)

    def localize(self, s: InvertedSet) -> FinAbGroup:
        return FinAbGroup(self.free_rank, tuple(s.strip(d) for d in self.torsion_orders))

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup(self.free_rank + other.free_rank, self.torsion_orders + other.torsion_orders)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_orders)
        return " + ".join(parts) if parts else "0"


def hom_to(g: FinAbGroup, a: InvertedSet = InvertedSet()) -> FinAbGroup:
    """Hom(G, Z[1/S]).  The target is torsion-free, so only the free part survives."""
    return FinAbGroup(g.free_rank)


def ext1_to(g: FinAbGroup, a: InvertedSet = InvertedSet()) -> FinAbGroup:
    """Ext^1(G, Z[1/S]) = sum of Z/(d_i with its S-part removed)."""
    return FinAbGroup(0, tuple(a.strip(d) for d in g.torsion_orders))


def ses_assemble(ext: FinAbGroup, hom: FinAbGroup) -> FinAbGroup:
    """Middle term of 0 -> ext -> ? -> hom -> 0, realised as the split extension."""
    n = ext.free_rank + len(ext.torsion_orders) + hom.free_rank + len(hom.torsion_orders)
    diag = [0] * ext.free_rank + list(ext.torsion_orders) + [0] * hom.free_rank + list(hom.torsion_orders)
    rel = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return FinAbGroup.from_presentation(IntMatrix.from_rows(rel, cols=n))


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        ent = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        return cls(len(ent), cols, ent)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls.from_rows([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c)) for c in cols_t] for r in self.entries],
            cols=other.cols,
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


def smith_normal_form(m: IntMatrix, transforms: bool = True) -> tuple[IntMatrix | None, IntMatrix, IntMatrix | None]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal, d_i | d_{i+1}.

    With ``transforms=False`` only D is computed and U, V are None.
    """
    r, c = m.rows, m.cols
    a = m.tolist()
    u = [[int(i == j) for j in range(r)] for i in range(r)] if transforms else None
    v = [[int(i == j) for j in range(c)] for i in range(c)] if transforms else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if v is not None:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for j in range(c):
            if rs[j]:
                rd[j] += q * rs[j]
        if u is not None:
            us, ud = u[src], u[dst]
            for j in range(r):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    def find_pivot(t):
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    for t in range(min(r, c)):
        piv = find_pivot(t)
        if piv is None:
            break
        _, i0, j0 = piv
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            p = a[t][t]
            if abs(p) != 1:
                bad = next(
                    (i for i in range(t + 1, r) if any(a[i][j] % p for j in range(t + 1, c))),
                    None,
                )
                if bad is not None:
                    add_row(t, bad, 1)
                    continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]

    d = IntMatrix.from_rows(a, cols=c)
    if not transforms:
        return None, d, None
    return IntMatrix.from_rows(u, cols=r), d, IntMatrix.from_rows(v, cols=c)
