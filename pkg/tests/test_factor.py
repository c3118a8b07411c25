from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.errors import DegreeCapError
from heckelab.poly import Polynomial
from heckelab.zfactor import factor_over_Q, factor_rational, is_irreducible_over_Q

T = Polynomial([0, 1])


def reassemble(lead, factors):
    out = Polynomial([lead])
    for f, m in factors:
        out = out * f ** m
    return out


def test_rational_roots():
    lead, factors = factor_over_Q(T ** 2 - 1)
    assert lead == 1
    assert factors == [((T - 1), 1), ((T + 1), 1)]


def test_squarefree_multiplicity():
    # squarefree decomposition by hand: T^4+2T^2+1 = (T^2+1)^2
    lead, factors = factor_over_Q(T ** 4 + 2 * T ** 2 + 1)
    assert factors == [((T ** 2 + 1), 2)]


def test_eisenstein_cubic_irreducible():
    # Eisenstein at 2
    lead, factors = factor_over_Q(T ** 3 - 2)
    assert factors == [((T ** 3 - 2), 1)]
    assert is_irreducible_over_Q(T ** 3 - 2)


def test_leading_coefficient_tracked():
    p = 6 * (T - Fraction(1, 2)) * (T + Fraction(2, 3))
    lead, factors = factor_over_Q(p)
    assert reassemble(lead, factors) == p
    assert all(f.is_monic() for f, _ in factors)


def test_cyclotomic_mix():
    p = (T ** 4 - T ** 2 + 1) * (T ** 2 - 2) * (T ** 6 + T ** 3 + 1)
    lead, factors = factor_rational(p)
    assert sorted(f.degree for f, _ in factors) == [2, 4, 6]
    assert reassemble(lead, factors) == p


def test_swinnerton_dyer_quartic():
    # minpoly of sqrt2+sqrt3 stays irreducible
    assert is_irreducible_over_Q(T ** 4 - 10 * T ** 2 + 1)


def test_degree_cap_is_typed_error():
    p = T ** 17 - 2
    with pytest.raises(DegreeCapError):
        factor_over_Q(p, cap=16)
    # internal callers may widen the budget
    lead, factors = factor_rational(p, cap=None)
    assert factors[0][0].degree == 17


def test_degree_one_input_rejected():
    with pytest.raises(ValueError):
        factor_over_Q(Polynomial([5]))


@settings(max_examples=25, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.lists(st.integers(-4, 4), min_size=1, max_size=3),
            st.integers(1, 2),
        ),
        min_size=1,
        max_size=3,
    ),
    st.integers(1, 3),
)
def test_factor_roundtrip(parts, lead_int):
    p = Polynomial([lead_int])
    for low, mult in parts:
        factor = Polynomial(low + [1])
        p = p * factor ** mult
    if p.degree < 1:
        return
    lead, factors = factor_rational(p)
    assert reassemble(lead, factors) == p
    for f, _ in factors:
        assert f.is_monic()
        assert is_irreducible_over_Q(f)
