from fractions import Fraction
from itertools import product

import pytest

from heckelab.algnum import (
    AlgebraicNumber,
    IntervalQ,
    Rect,
    algnum_arith,
    algnum_equal,
    conjugates,
)
from heckelab.errors import DegreeCapError, MalformedInputError
from heckelab.poly import Polynomial

T = Polynomial([0, 1])


def test_additive_inverse(sqrt2, msqrt2):
    assert (sqrt2 + msqrt2).is_zero()


def test_defining_relation(sqrt2):
    assert sqrt2 * sqrt2 == 2


def test_sum_of_square_roots(sqrt2, sqrt3):
    # resultant oracle by hand: minpoly of sqrt2+sqrt3 is T^4-10T^2+1,
    # the positive root near 3.146
    s = algnum_arith(sqrt2, sqrt3, "+")
    assert s.minpoly == T ** 4 - 10 * T ** 2 + 1
    assert abs(s.approx() - 3.14626) < 1e-3


def test_equal_same_root_different_isolation(sqrt2):
    other = AlgebraicNumber(sqrt2.minpoly, sqrt2.index)
    other.refine()
    assert algnum_equal(sqrt2, other)


def test_not_equal_conjugate(sqrt2, msqrt2):
    assert not algnum_equal(sqrt2, msqrt2)


def test_canonical_minpoly_from_reducible_literal(sqrt2):
    # T^4 - 4 = (T^2-2)(T^2+2); near 1.414 the canonical minpoly is T^2-2
    r = AlgebraicNumber.from_isolating_rectangle(
        T ** 4 - 4, Rect(IntervalQ(1, 2), IntervalQ(-1, 1))
    )
    assert r.minpoly == T ** 2 - 2
    assert r == sqrt2


def test_literal_must_isolate():
    with pytest.raises(MalformedInputError):
        AlgebraicNumber.from_isolating_rectangle(
            T ** 2 - 2, Rect(IntervalQ(-2, 2), IntervalQ(-1, 1))
        )


def test_conjugates_rational():
    five = AlgebraicNumber.from_rational(5)
    assert conjugates(five) == [five]


def test_conjugates_quadratic(sqrt2, msqrt2):
    assert set(conjugates(sqrt2)) == {sqrt2, msqrt2}


def test_conjugates_cubic_count(cbrt2):
    roots = conjugates(cbrt2)
    assert len(roots) == 3
    assert len(set(roots)) == 3
    reals = [r for r in roots if abs(r.approx().imag) < 1e-9]
    assert len(reals) == 1


def test_division_and_inverse(sqrt2, sqrt3):
    assert (sqrt2 / sqrt2) == 1
    q = sqrt2 / sqrt3
    assert q.minpoly == T ** 2 - Fraction(2, 3)
    with pytest.raises(ZeroDivisionError):
        sqrt2 / AlgebraicNumber.from_rational(0)


def test_pow(zeta6):
    assert zeta6 ** 6 == 1
    assert zeta6 ** 3 == -1


def test_arith_cap():
    seven = AlgebraicNumber.roots_of(T ** 7 - 2)
    big = max(seven, key=lambda r: r.sort_key())
    from heckelab import algnum

    with pytest.raises(DegreeCapError):
        algnum._mul(big, big, cap=16)
    with pytest.raises(DegreeCapError):
        algnum._add(big, big, cap=16)


def test_field_axioms_exhaustive_sample(sqrt2, msqrt2, i_num):
    """Commutative-field identities on a fixed 6-element sample."""
    sample = [
        AlgebraicNumber.from_rational(Fraction(-3, 2)),
        AlgebraicNumber.from_rational(1),
        sqrt2,
        msqrt2,
        i_num,
        i_num * 2,
    ]
    for a, b in product(sample, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in product(sample, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
    for a in sample:
        assert a + (-a) == 0
        if not a.is_zero():
            assert a * a.inverse() == 1


def test_triple_products_associate(sqrt2, i_num, zeta6):
    for a, b, c in [(sqrt2, i_num, zeta6), (i_num, i_num, sqrt2)]:
        assert (a * b) * c == a * (b * c)


def test_refinement_is_identity_stable(sqrt2, sqrt3, i_num, zeta6):
    sample = [sqrt2, sqrt3, i_num, zeta6, AlgebraicNumber.from_rational(2)]
    before = [[x == y for y in sample] for x in sample]
    for x in sample:
        for _ in range(25):
            x.refine()
    after = [[x == y for y in sample] for x in sample]
    assert before == after


def test_sort_key_total_order(sqrt2, msqrt2, sqrt3):
    keys = [x.sort_key() for x in (sqrt2, msqrt2, sqrt3)]
    assert len(set(keys)) == 3
    assert msqrt2.sort_key() < sqrt2.sort_key()  # same minpoly, earlier root


def test_rectangle_certifies_root(sqrt2):
    box = sqrt2.isolating_rectangle()
    assert box.re.lo <= Fraction(141422, 100000)
    assert box.re.hi >= Fraction(141421, 100000)
    assert box.im.lo <= 0 <= box.im.hi
