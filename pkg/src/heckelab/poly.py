"""Dense univariate polynomials over an exact coefficient field.

The coefficient field is either the rational field ``QQ`` (elements are
``fractions.Fraction``) or a number field from :mod:`heckelab.numfield`
(elements are ``FieldElement``).  Coefficients are stored lowest degree
first; the zero polynomial has an empty coefficient tuple.  All values are
immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import FieldMismatchError


class RationalField:
    """The rational field Q; elements are ``fractions.Fraction``."""

    degree = 1
    label = "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("heckelab.QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Polynomial:
    """Immutable dense polynomial; ``coeffs[k]`` multiplies T^k."""

    __slots__ = ("coeffs", "base")

    def __init__(self, coeffs, base=QQ):
        cs = [base.coerce(c) for c in coeffs]
        while cs and cs[-1] == base.zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "base", base)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            return self.base.zero
        return self.coeffs[-1]

    def constant(self):
        return self.coeffs[0] if self.coeffs else self.base.zero

    def is_monic(self):
        return bool(self.coeffs) and self.lead == self.base.one

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.base.zero

    def _check(self, other):
        if self.base != other.base:
            raise FieldMismatchError(
                "polynomials over different coefficient fields"
            )

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + Polynomial([other], self.base)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self[k] + other[k] for k in range(n)], self.base
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.base)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return self - Polynomial([other], self.base)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.base.coerce(other)
            return Polynomial([a * c for a in self.coeffs], self.base)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([], self.base)
        out = [self.base.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == self.base.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.base)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([self.base.one], self.base)
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def __divmod__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other], self.base)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([], self.base), self
        quo = [self.base.zero] * (dq + 1)
        inv_lead = self.base.one / other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if c != self.base.zero:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quo, self.base), Polynomial(rem, self.base)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.base == other.base
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.base, self.coeffs))

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self):
        return Polynomial(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.base
        )

    def __call__(self, x):
        """Horner evaluation; x may live in any ring that mixes with coeffs."""
        if not self.coeffs:
            return self.base.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Return self(other(T))."""
        self._check(other)
        acc = Polynomial([], self.base)
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial([c], self.base)
        return acc

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        inv = self.base.one / self.lead
        return Polynomial([c * inv for c in self.coeffs], self.base)

    def map_coefficients(self, fn, new_base):
        return Polynomial([fn(c) for c in self.coeffs], new_base)

    def scale_variable(self, c):
        """Return self(c*T)."""
        c = self.base.coerce(c)
        out, power = [], self.base.one
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return Polynomial(out, self.base)

    def reverse(self):
        """Return T^deg * self(1/T)."""
        return Polynomial(list(reversed(self.coeffs)), self.base)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == self.base.zero:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append("T" if c == self.base.one else f"{c}*T")
            else:
                terms.append(f"T^{k}" if c == self.base.one else f"{c}*T^{k}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact product of two polynomials over the same coefficient field."""
    return a * b


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm.

    Remainders are renormalized to monic at every step to keep rational
    coefficient growth in check.
    """
    a._check(b)
    if not a.is_zero():
        a = a.monic()
    if not b.is_zero():
        b = b.monic()
    while not b.is_zero():
        r = a % b
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Extended gcd: returns (g, s, t) monic with s*a + t*b = g."""
    base = a.base
    one = Polynomial([base.one], base)
    zero = Polynomial([], base)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = base.one / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: Polynomial) -> Polynomial:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    return (p // g).monic()


def squarefree_decomposition(p: Polynomial):
    """Yun's algorithm (characteristic zero).

    Returns (lead, [(monic squarefree factor, multiplicity)]) with the
    product of factor^multiplicity times lead equal to p.
    """
    lead = p.lead
    p = p.monic()
    if p.degree <= 0:
        return lead, []
    out = []
    d = poly_gcd(p, p.derivative())
    if d.degree == 0:
        return lead, [(p, 1)]
    b = p // d
    c = p.derivative() // d
    i = 1
    while b.degree > 0:
        z = c - b.derivative()
        a = poly_gcd(b, z)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b // a
        c = z // a
        i += 1
    return lead, out


def _int_bareiss_det(rows) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss)."""
    n = len(rows)
    rows = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = None
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    pivot = r
                    break
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        pkk = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pkk - rik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * rows[n - 1][n - 1]


def _rational_det(rows):
    """Determinant of a Fraction matrix via integer Bareiss."""
    n = len(rows)
    scale = 1
    for row in rows:
        for x in row:
            d = x.denominator
            if d != 1:
                g = gcd(scale, d)
                scale = scale // g * d
    int_rows = [[int(x * scale) for x in row] for row in rows]
    det = _int_bareiss_det(int_rows)
    return Fraction(det, scale ** n)


def _field_det(rows, base):
    """Determinant over an arbitrary field by Gaussian elimination."""
    size = len(rows)
    rows = [list(r) for r in rows]
    det = base.one
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != base.zero:
                pivot = r
                break
        if pivot is None:
            return base.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        inv = base.one / pv
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor == base.zero:
                continue
            rows[r] = [rows[r][k] - factor * rows[col][k] for k in range(size)]
    return det


def _sylvester_rows(fc, gc, deg_f, deg_g, zero):
    size = deg_f + deg_g
    fr = list(reversed(fc))
    gr = list(reversed(gc))
    rows = []
    for i in range(deg_g):
        rows.append([zero] * i + fr + [zero] * (size - deg_f - 1 - i))
    for i in range(deg_f):
        rows.append([zero] * i + gr + [zero] * (size - deg_g - 1 - i))
    return rows


def _det(rows, base):
    if isinstance(base, RationalField):
        return _rational_det(rows)
    return _field_det(rows, base)


def resultant(f: Polynomial, g: Polynomial):
    """Resultant of f and g over their common coefficient field.

    The Sylvester determinant; integer fraction-free elimination over Q,
    plain Gaussian elimination over number fields.
    """
    f._check(g)
    base = f.base
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        return base.zero
    if n == 0:
        return f.lead ** m
    if m == 0:
        return g.lead ** n
    rows = _sylvester_rows(list(f.coeffs), list(g.coeffs), n, m, base.zero)
    return _det(rows, base)


def formal_sylvester_resultant(f: Polynomial, g: Polynomial, deg_f, deg_g):
    """Resultant with *formal* degrees, as needed under specialization.

    f and g are padded with zero leading coefficients up to deg_f/deg_g so
    that the determinant equals the specialization of the generic resultant.
    """
    base = f.base
    fc = list(f.coeffs) + [base.zero] * (deg_f + 1 - len(f.coeffs))
    gc = list(g.coeffs) + [base.zero] * (deg_g + 1 - len(g.coeffs))
    if deg_f == 0 and deg_g == 0:
        return base.one
    rows = _sylvester_rows(fc, gc, deg_f, deg_g, base.zero)
    return _det(rows, base)


def interpolate(points, base=QQ) -> Polynomial:
    """Newton interpolation through (x, y) pairs with distinct x."""
    xs = [base.coerce(x) for x, _ in points]
    coeffs = [base.coerce(y) for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    result = Polynomial([coeffs[-1]], base)
    for k in range(n - 2, -1, -1):
        result = result * Polynomial([-xs[k], base.one], base) + Polynomial(
            [coeffs[k]], base
        )
    return result


# -- real root isolation (Sturm) -------------------------------------------


def _sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _positive_scale(p: Polynomial) -> Polynomial:
    """Divide by the positive content; signs (hence Sturm counts) survive."""
    if p.is_zero():
        return p
    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs:
        num_gcd = gcd(num_gcd, c.numerator)
        den_lcm = den_lcm // gcd(den_lcm, c.denominator) * c.denominator
    scale = Fraction(den_lcm, num_gcd)
    return Polynomial([c * scale for c in p.coeffs], p.base)


def sturm_chain(p: Polynomial):
    chain = [_positive_scale(p), _positive_scale(p.derivative())]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(_positive_scale(-(chain[-2] % chain[-1])))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(chain, x) -> int:
    signs = [_sign(q(x)) for q in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_root_bound(p: Polynomial) -> Fraction:
    """Strict bound M with all complex roots in |z| < M."""
    lead = abs(p.lead)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return Fraction(1) + m / lead


class _ExactHit(Exception):
    def __init__(self, root):
        self.root = root


def _sturm_bisect(p: Polynomial):
    chain = sturm_chain(p)
    bound = cauchy_root_bound(p)
    lo, hi = -bound, bound
    out = []
    stack = [(lo, hi, _variations(chain, lo), _variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count <= 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if p(m) == 0:
            raise _ExactHit(m)
        vm = _variations(chain, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    return out


def isolate_real_roots(p: Polynomial):
    """Isolate the real roots of a rational polynomial.

    Returns a sorted list of (refinement_poly, lo, hi) with lo <= hi; for an
    exact rational root both endpoints equal the root.  Each interval
    contains exactly one real root of p, and open-interval roots sit
    strictly inside with a sign change of refinement_poly across them.
    """
    p = squarefree_part(p)
    if p.degree <= 0:
        return []
    exact = []
    work = p
    while True:
        if work.degree <= 0:
            intervals = []
            break
        try:
            intervals = _sturm_bisect(work)
            break
        except _ExactHit as hit:
            exact.append(hit.root)
            work = work // Polynomial([-hit.root, 1], p.base)
    roots = [(None, r, r) for r in exact]
    for a, b in intervals:
        # shrink away from recorded exact roots so intervals stay isolating
        # for the original polynomial
        while any(a < r < b for r in exact):
            a, b = refine_root_interval(work, a, b)
        roots.append((work, a, b))
    roots.sort(key=lambda t: (t[1], t[2]))
    return roots


def refine_root_interval(p: Polynomial, lo: Fraction, hi: Fraction):
    """Halve an isolating interval; p must change sign across (lo, hi)."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    v = p(mid)
    if v == 0:
        return mid, mid
    if _sign(v) == _sign(p(lo)):
        return mid, hi
    return lo, mid
