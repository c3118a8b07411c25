from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.errors import FieldMismatchError
from heckelab.numfield import NumberField
from heckelab.poly import (
    Polynomial,
    QQ,
    interpolate,
    isolate_real_roots,
    poly_gcd,
    poly_mul,
    poly_xgcd,
    refine_root_interval,
    resultant,
    squarefree_decomposition,
)

T = Polynomial([0, 1])


def test_difference_of_squares():
    assert poly_mul(T + 1, T - 1) == T ** 2 - 1


def test_zero_annihilates():
    z = Polynomial([])
    assert poly_mul(z, T ** 3 + 2).is_zero()


def test_schoolbook_square():
    # (T^2+1)^2 computed by hand
    assert poly_mul(T ** 2 + 1, T ** 2 + 1) == T ** 4 + 2 * T ** 2 + 1


def test_product_degree_adds():
    a = 3 * T ** 2 + 1
    b = T ** 5 - T
    assert poly_mul(a, b).degree == 7


def test_field_mismatch_raises():
    F = NumberField(T ** 2 + 1)
    p = (T + 1).map_coefficients(F.coerce, F)
    with pytest.raises(FieldMismatchError):
        poly_mul(p, T + 1)


def test_divmod_roundtrip():
    a = T ** 5 - 3 * T ** 2 + Fraction(1, 2)
    b = 2 * T ** 2 + T - 1
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_gcd_and_xgcd():
    a = (T - 1) * (T ** 2 + 1)
    b = (T - 1) * (T + 2)
    g = poly_gcd(a, b)
    assert g == T - 1
    g2, s, t = poly_xgcd(T ** 2 + 1, T + 2)
    assert g2.degree == 0 or g2 == Polynomial([1])
    assert s * (T ** 2 + 1) + t * (T + 2) == g2


def test_squarefree_decomposition():
    lead, parts = squarefree_decomposition(2 * (T - 1) ** 3 * (T ** 2 + 1) ** 2)
    assert lead == 2
    assert sorted((p.degree, m) for p, m in parts) == [(1, 3), (2, 2)]
    product = Polynomial([lead])
    for p, m in parts:
        product = product * p ** m
    assert product == 2 * (T - 1) ** 3 * (T ** 2 + 1) ** 2


def test_resultant_quadratics():
    # Res(T^2-2, T^2-3) = (2-3)^2 = 1
    assert resultant(T ** 2 - 2, T ** 2 - 3) == 1
    # shared root makes the resultant vanish
    assert resultant((T - 1) * (T + 4), (T - 1) * (T - 5)) == 0


def test_interpolation_recovers_polynomial():
    p = T ** 3 - Fraction(7, 2) * T + 4
    pts = [(Fraction(k), p(Fraction(k))) for k in range(-2, 2)]
    assert interpolate(pts) == p


def test_real_root_isolation_mixed():
    p = (T - 1) * (T + 2) * (T ** 2 + 1)
    roots = isolate_real_roots(p)
    assert len(roots) == 2
    spans = [(lo, hi) for _, lo, hi in roots]
    assert spans[0][0] <= -2 <= spans[0][1]
    assert spans[1][0] <= 1 <= spans[1][1]


def test_isolation_exact_rational_roots():
    roots = isolate_real_roots(T * (T - Fraction(1, 2)))
    exact = [(lo, hi) for _, lo, hi in roots if lo == hi]
    assert (Fraction(0), Fraction(0)) in exact


def test_refinement_keeps_root():
    (poly, lo, hi), = isolate_real_roots(T ** 2 - 2)[1:]
    for _ in range(10):
        lo, hi = refine_root_interval(poly, lo, hi)
    assert lo <= Fraction(141421, 100000) <= hi
    assert hi - lo < Fraction(1, 100)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
)
def test_ring_axioms(a, b, c):
    pa, pb, pc = (Polynomial(x) for x in (a, b, c))
    assert pa * pb == pb * pa
    assert pa * (pb + pc) == pa * pb + pa * pc
    assert (pa * pb) * pc == pa * (pb * pc)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7))
def test_division_axiom(coeffs):
    b = Polynomial(coeffs)
    if b.is_zero():
        return
    a = b * (T ** 2 - 3) + (T - 1)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
