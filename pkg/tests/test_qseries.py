from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmf_adams.errors import DivisionNotExact, NotInvertible
from tmf_adams.exactmath import InvertedSet
from tmf_adams.qseries import (
    QSeries,
    eisenstein_e4,
    eisenstein_e6,
    eta_product_delta,
    named_series,
    tate_a4,
    tate_a6,
    tate_curve,
    verify_tate_identities,
    weierstrass_invariants,
)


def geometric_expansion(term, prec):
    """sum_n term(n) q^n / (1 - q^n), expanded as sum_n sum_k term(n) q^(nk)."""
    out = [Fraction(0)] * prec
    for n in range(1, prec):
        for e in range(n, prec, n):
            out[e] += term(n)
    return out


def ints(s):
    return [int(c) for c in s.coeffs]


def test_a4_examples():
    assert ints(tate_a4(4)) == [0, -5, -45, -140]
    assert tate_a4(5).coeffs[4] == -365
    assert tate_a4(30).coeffs == tuple(-5 * c for c in geometric_expansion(lambda n: n**3, 30))


def test_a6_examples():
    assert ints(tate_a6(2)) == [0, -1]
    assert tate_a6(3).coeffs[2] == -23
    oracle = geometric_expansion(lambda n: Fraction(-(5 * n**3 + 7 * n**5), 12), 40)
    assert tate_a6(40).coeffs == tuple(oracle)
    assert tate_a6(40).is_integral()


def test_c4_c6_delta_examples():
    inv = weierstrass_invariants(tate_curve(5))
    assert ints(inv.c4)[:4] == [1, 240, 2160, 6720]
    assert ints(inv.c6)[:3] == [-1, 504, 16632]
    assert ints(inv.delta) == [0, 1, -24, 252, -1472]


def test_c4_c6_against_eisenstein():
    inv = weierstrass_invariants(tate_curve(60))
    assert inv.c4 == eisenstein_e4(60)
    assert inv.c6 == -eisenstein_e6(60)


def test_j_expansion():
    lead, j = weierstrass_invariants(tate_curve(6)).j
    assert lead == -1
    assert ints(j)[:4] == [1, 744, 196884, 21493760]


def test_eta_examples():
    assert ints(eta_product_delta(3)) == [0, 1, -24]
    assert eta_product_delta(5).coeffs[4] == -1472
    assert eta_product_delta(1).coeffs == (0,)


def brute_eta(prec):
    # multiply (1 - q^n) 24 times for each n, one factor at a time
    poly = [0] * prec
    poly[1 % prec] = 1 if prec > 1 else 0
    for n in range(1, prec):
        for _ in range(24):
            for i in range(prec - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return poly


def test_eta_against_brute_force():
    assert ints(eta_product_delta(25)) == brute_eta(25)


@pytest.mark.parametrize("prec", [2, 50, 200])
def test_tate_identities(prec):
    assert all(verify_tate_identities(prec).values())


def test_tate_series_integral():
    w = tate_curve(80)
    inv = weierstrass_invariants(w)
    for s in (w.a4, w.a6, inv.b2, inv.b4, inv.b6, inv.b8, inv.c4, inv.c6, inv.delta):
        assert s.is_integral() and s.context == InvertedSet()


def test_precision_propagates_as_minimum():
    a = QSeries.from_ints([1, 2, 3, 4])
    b = QSeries.from_ints([1, 1])
    assert (a * b).precision == 2 and (a + b).precision == 2
    with pytest.raises(IndexError):
        b[2]
    with pytest.raises(ValueError):
        b.truncate(3)


def test_exact_division_and_inverse_errors():
    with pytest.raises(DivisionNotExact):
        QSeries.from_ints([1, 2]).exact_div(2)
    with pytest.raises(NotInvertible):
        QSeries.from_ints([2, 1]).inverse()
    s = QSeries.from_ints([2, 1], InvertedSet.of(2))
    assert (s * s.inverse()) == QSeries.constant(1, 2, InvertedSet.of(2))


def test_named_series_json():
    doc = named_series("delta", 4)[1].to_json("delta")
    assert doc == {"name": "delta", "precision": 4, "coeffs": ["0", "1", "-24", "252"]}
    with pytest.raises(KeyError):
        named_series("nope", 3)


series = st.lists(st.integers(-50, 50), min_size=1, max_size=12).map(QSeries.from_ints)
rational_series = st.lists(
    st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=8
).map(lambda cs: QSeries(tuple(cs), InvertedSet.of(2, 3, 5)))


@settings(max_examples=200)
@given(series, series, series)
def test_multiplication_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100)
@given(rational_series, rational_series)
def test_multiplication_commutes_rational(a, b):
    assert a * b == b * a
