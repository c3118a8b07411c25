import pytest

from heckelab.algnum import AlgebraicNumber
from heckelab.groups import a4, c6, d4, q8, s3, s4
from heckelab.numfield import NumberField
from heckelab.poly import Polynomial


def T():
    return Polynomial([0, 1])


def real_root(poly):
    """The unique real root, or the largest one, of a rational polynomial."""
    roots = [r for r in AlgebraicNumber.roots_of(poly) if abs(r.approx().imag) < 1e-9]
    return max(roots, key=lambda r: r.approx().real)


@pytest.fixture(scope="session")
def sqrt2():
    return real_root(T() ** 2 - 2)


@pytest.fixture(scope="session")
def msqrt2(sqrt2):
    return -sqrt2


@pytest.fixture(scope="session")
def sqrt3():
    return real_root(T() ** 2 - 3)


@pytest.fixture(scope="session")
def i_num():
    return [r for r in AlgebraicNumber.roots_of(T() ** 2 + 1) if r.approx().imag > 0][0]


@pytest.fixture(scope="session")
def zeta6():
    return [
        r for r in AlgebraicNumber.roots_of(T() ** 2 - T() + 1) if r.approx().imag > 0
    ][0]


@pytest.fixture(scope="session")
def cbrt2():
    return real_root(T() ** 3 - 2)


@pytest.fixture(scope="session")
def plastic():
    # the real root of T^3 - T - 1 (non-normal cubic)
    return real_root(T() ** 3 - T() - 1)


@pytest.fixture(scope="session")
def field_qi(i_num):
    return NumberField(T() ** 2 + 1, label="Q(i)", root=i_num)


@pytest.fixture(scope="session")
def field_q2(sqrt2):
    return NumberField(T() ** 2 - 2, label="Q(sqrt2)", root=sqrt2)


@pytest.fixture(scope="session")
def field_q3(sqrt3):
    return NumberField(T() ** 2 - 3, label="Q(sqrt3)", root=sqrt3)


@pytest.fixture(scope="session")
def field_zeta3():
    return NumberField(T() ** 2 + T() + 1, label="Q(zeta3)")


@pytest.fixture(scope="session")
def field_cyclic3():
    # cyclic cubic: its Galois closure is itself
    return NumberField(T() ** 3 - 3 * T() - 1, label="Q(2cos(2pi/9))")


@pytest.fixture(scope="session")
def field_cubic(plastic):
    return NumberField(T() ** 3 - T() - 1, label="Q(plastic)", root=plastic)


@pytest.fixture(scope="session")
def group_s3():
    return s3()


@pytest.fixture(scope="session")
def group_s4():
    return s4()


@pytest.fixture(scope="session")
def group_d4():
    return d4()


@pytest.fixture(scope="session")
def group_q8():
    return q8()


@pytest.fixture(scope="session")
def group_c6():
    return c6()


@pytest.fixture(scope="session")
def group_a4():
    return a4()
