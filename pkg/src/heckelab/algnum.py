"""Algebraic numbers with certified complex isolating rectangles.

An algebraic number is a canonical monic irreducible minimal polynomial
over Q together with an index into the isolated-root table of that
polynomial (the "conjugate system").  Equality is therefore a structural
check, and refining a rectangle never changes identity.

Isolation strategy for a monic irreducible p of degree n: writing
p(x + iy) = u(x, y) + i*v(x, y), the real parts of the roots are among the
real roots of Res_y(u, v) and the imaginary parts among the real roots of
Res_x(u, v).  Real roots are isolated by Sturm bisection, the candidate
grid of rectangles is pruned by interval-Horner exclusion, and exactly n
rectangles survive, one root each.

Arithmetic goes through resultant-built candidate polynomials, followed by
factorization over Q and selection of the unique factor that vanishes on
an interval enclosure of the result.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .config import DEFAULT_FIELD_FACTOR_CAP
from .errors import (
    DegreeCapError,
    IsolationError,
    MalformedInputError,
)
from .poly import (
    Polynomial,
    QQ,
    interpolate,
    isolate_real_roots,
    refine_root_interval,
    resultant,
    formal_sylvester_resultant,
)
from .zfactor import factor_rational

_MAX_ROUNDS = 400

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- rational interval / rectangle arithmetic --------------------------------


class IntervalQ:
    """Closed interval with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *_):
        raise AttributeError("IntervalQ is immutable")

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        return IntervalQ(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return IntervalQ(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return IntervalQ(-self.hi, -self.lo)

    def __mul__(self, other):
        corners = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return IntervalQ(min(corners), max(corners))

    def square(self):
        if self.lo >= 0:
            return IntervalQ(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return IntervalQ(self.hi * self.hi, self.lo * self.lo)
        m = max(-self.lo, self.hi)
        return IntervalQ(_ZERO, m * m)

    def recip(self):
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return IntervalQ(1 / self.hi, 1 / self.lo)

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def contains(self, x):
        return self.lo <= x <= self.hi

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def contains_interval(self, other):
        return self.lo <= other.lo and other.hi <= self.hi


class Rect:
    """Axis-aligned rectangle in C with rational corner coordinates."""

    __slots__ = ("re", "im")

    def __init__(self, re: IntervalQ, im: IntervalQ):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *_):
        raise AttributeError("Rect is immutable")

    @classmethod
    def point(cls, re, im=0):
        return cls(IntervalQ(re), IntervalQ(im))

    def __repr__(self):
        return f"Rect({self.re} + {self.im}*i)"

    @property
    def max_width(self):
        return max(self.re.width, self.im.width)

    def __add__(self, other):
        return Rect(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Rect(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return Rect(-self.re, -self.im)

    def __mul__(self, other):
        return Rect(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def recip(self):
        d = self.re.square() + self.im.square()
        inv = d.recip()
        return Rect(self.re * inv, (-self.im) * inv)

    def contains_zero(self):
        return self.re.contains_zero() and self.im.contains_zero()

    def intersects(self, other):
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def contains_rect(self, other):
        return self.re.contains_interval(other.re) and self.im.contains_interval(
            other.im
        )

    def midpoint(self):
        return (self.re.mid, self.im.mid)


def rect_eval(p: Polynomial, z: Rect) -> Rect:
    """Interval Horner evaluation of a rational polynomial on a rectangle."""
    acc = Rect.point(_ZERO)
    for c in reversed(p.coeffs):
        acc = acc * z + Rect.point(c)
    return acc


# -- real/imaginary part decomposition and elimination ------------------------


def _real_imag_parts(p: Polynomial):
    """p(x+iy) = u + i*v as sparse bivariate dicts {(dx, dy): Fraction}."""
    u: dict = {}
    v: dict = {}
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            term = c * math.comb(k, j)
            key = (k - j, j)
            r = j % 4
            if r == 0:
                u[key] = u.get(key, _ZERO) + term
            elif r == 1:
                v[key] = v.get(key, _ZERO) + term
            elif r == 2:
                u[key] = u.get(key, _ZERO) - term
            else:
                v[key] = v.get(key, _ZERO) - term
    u = {k: c for k, c in u.items() if c != 0}
    v = {k: c for k, c in v.items() if c != 0}
    return u, v


def _bidegrees(d):
    dx = max((k[0] for k in d), default=0)
    dy = max((k[1] for k in d), default=0)
    return dx, dy


def _specialize(d, value, fix_x: bool) -> Polynomial:
    """Substitute x=value (fix_x) or y=value, returning a univariate poly."""
    out: dict = {}
    for (dx, dy), c in d.items():
        if fix_x:
            out[dy] = out.get(dy, _ZERO) + c * value ** dx
        else:
            out[dx] = out.get(dx, _ZERO) + c * value ** dy
    if not out:
        return Polynomial([], QQ)
    coeffs = [_ZERO] * (max(out) + 1)
    for k, c in out.items():
        coeffs[k] = c
    return Polynomial(coeffs, QQ)


def _eliminate(u, v, eliminate_y: bool) -> Polynomial:
    """Res over the eliminated variable, as a polynomial in the other one."""
    ux, uy = _bidegrees(u)
    vx, vy = _bidegrees(v)
    if eliminate_y:
        deg_u, deg_v = uy, vy
        bound = ux * vy + vx * uy
    else:
        deg_u, deg_v = ux, vx
        bound = uy * vx + vy * ux
    points = []
    r = 0
    while len(points) < bound + 1:
        val = Fraction(r)
        pu = _specialize(u, val, fix_x=eliminate_y)
        pv = _specialize(v, val, fix_x=eliminate_y)
        res = formal_sylvester_resultant(pu, pv, deg_u, deg_v)
        points.append((val, res))
        r = -r if r > 0 else -r + 1
    return interpolate(points, QQ)


# -- conjugate systems ---------------------------------------------------------


class _RealState:
    """Mutable isolating interval of a real root; poly None for exact roots."""

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly, lo, hi):
        self.poly = poly
        self.lo = lo
        self.hi = hi

    def refine(self):
        if self.poly is not None and self.lo != self.hi:
            self.lo, self.hi = refine_root_interval(self.poly, self.lo, self.hi)

    def interval(self):
        return IntervalQ(self.lo, self.hi)


class ConjugateSystem:
    """All roots of a monic irreducible rational polynomial, isolated."""

    def __init__(self, p: Polynomial):
        self.poly = p
        self.n = p.degree
        self._lock = threading.RLock()
        if self.n == 1:
            c = -p.constant()
            self._roots = [
                (_RealState(None, c, c), _RealState(None, _ZERO, _ZERO))
            ]
            return
        u, v = _real_imag_parts(p)
        rx = _eliminate(u, v, eliminate_y=True)
        ry = _eliminate(u, v, eliminate_y=False)
        xs = [_RealState(*t) for t in isolate_real_roots(rx)]
        ys = [_RealState(*t) for t in isolate_real_roots(ry)]
        cands = [(ix, iy) for ix in range(len(xs)) for iy in range(len(ys))]
        rounds = 0
        while True:
            alive = []
            for ix, iy in cands:
                box = Rect(xs[ix].interval(), ys[iy].interval())
                if rect_eval(p, box).contains_zero():
                    alive.append((ix, iy))
            cands = alive
            if len(cands) == self.n:
                break
            if len(cands) < self.n:
                raise IsolationError(
                    f"isolation undercount for {p!r}: {len(cands)} < {self.n}"
                )
            rounds += 1
            if rounds > _MAX_ROUNDS:
                raise IsolationError(f"isolation did not converge for {p!r}")
            for s in xs:
                s.refine()
            for s in ys:
                s.refine()
        cands.sort()
        self._roots = [(xs[ix], ys[iy]) for ix, iy in cands]

    def rect(self, i: int) -> Rect:
        with self._lock:
            x, y = self._roots[i]
            return Rect(x.interval(), y.interval())

    def refine(self, i: int):
        with self._lock:
            x, y = self._roots[i]
            x.refine()
            y.refine()

    def rect_at(self, i: int, width: Fraction) -> Rect:
        """Rectangle of root i refined until max side <= width."""
        with self._lock:
            x, y = self._roots[i]
            guard = 0
            while max(x.hi - x.lo, y.hi - y.lo) > width:
                x.refine()
                y.refine()
                guard += 1
                if guard > 4 * _MAX_ROUNDS:
                    raise IsolationError("refinement stalled")
            return Rect(x.interval(), y.interval())


_system_lock = threading.Lock()
_system_cache: dict[tuple, ConjugateSystem] = {}


def conjugate_system(p: Polynomial) -> ConjugateSystem:
    key = p.coeffs
    with _system_lock:
        hit = _system_cache.get(key)
    if hit is not None:
        return hit
    sys = ConjugateSystem(p)
    with _system_lock:
        return _system_cache.setdefault(key, sys)


# -- identification helpers ----------------------------------------------------


def _identify_root(minpoly: Polynomial, enclosure) -> int:
    """Index of the root of minpoly inside ever-tighter enclosures."""
    sys = conjugate_system(minpoly)
    if sys.n == 1:
        return 0
    level = 1
    while level < _MAX_ROUNDS:
        R = enclosure(level)
        hits = [i for i in range(sys.n) if sys.rect(i).intersects(R)]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise IsolationError("enclosure matches no root (internal)")
        for i in hits:
            sys.refine(i)
        level += 1
    raise IsolationError("root identification did not converge")


def _select_vanishing_factor(factors, enclosure) -> Polynomial:
    """The unique factor vanishing on the value described by enclosure."""
    alive = list(factors)
    level = 1
    while len(alive) > 1:
        R = enclosure(level)
        alive = [f for f in alive if rect_eval(f, R).contains_zero()]
        level += 1
        if level > _MAX_ROUNDS:
            raise IsolationError("factor selection did not converge")
    if not alive:
        raise IsolationError("no candidate factor vanishes (internal)")
    return alive[0]


# -- the numbers ----------------------------------------------------------------


class AlgebraicNumber:
    """An element of Q-bar: canonical minimal polynomial + root index."""

    __slots__ = ("minpoly", "index")

    def __init__(self, minpoly: Polynomial, index: int):
        object.__setattr__(self, "minpoly", minpoly)
        object.__setattr__(self, "index", index)

    def __setattr__(self, *_):
        raise AttributeError("AlgebraicNumber is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, c) -> "AlgebraicNumber":
        c = Fraction(c)
        return cls(Polynomial([-c, 1], QQ), 0)

    @classmethod
    def roots_of(cls, p: Polynomial, cap=None) -> "list[AlgebraicNumber]":
        """All distinct roots of a rational polynomial, canonically ordered."""
        _, factors = factor_rational(p, cap=cap)
        out = []
        for f, _mult in factors:
            out.extend(cls(f, i) for i in range(f.degree))
        out.sort(key=lambda a: a.sort_key())
        return out

    @classmethod
    def from_isolating_rectangle(
        cls, p: Polynomial, rect: Rect, cap=None
    ) -> "AlgebraicNumber":
        """Certify that rect isolates one root of p and return that root."""
        if p.degree < 1:
            raise MalformedInputError("minpoly must have degree >= 1")
        _, factors = factor_rational(p, cap=cap)
        found = []
        for f, _mult in factors:
            sys = conjugate_system(f)
            for i in range(f.degree):
                rounds = 0
                while True:
                    box = sys.rect(i)
                    if not box.intersects(rect):
                        break
                    if rect.contains_rect(box):
                        found.append(cls(f, i))
                        break
                    sys.refine(i)
                    rounds += 1
                    if rounds > _MAX_ROUNDS:
                        raise IsolationError(
                            "cannot certify isolation: root on boundary?"
                        )
        if len(found) != 1:
            raise MalformedInputError(
                f"rectangle isolates {len(found)} roots, expected exactly 1"
            )
        return found[0]

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return self.minpoly.degree

    @property
    def system(self) -> ConjugateSystem:
        return conjugate_system(self.minpoly)

    def is_zero(self):
        return self.degree == 1 and self.minpoly.constant() == 0

    def is_rational(self):
        return self.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return -self.minpoly.constant()

    def sort_key(self):
        return (self.degree, self.minpoly.coeffs, self.index)

    def conjugates(self) -> "list[AlgebraicNumber]":
        return [AlgebraicNumber(self.minpoly, i) for i in range(self.degree)]

    def isolating_rectangle(self) -> Rect:
        return self.system.rect(self.index)

    def refine(self):
        self.system.refine(self.index)

    def enclosure(self, level: int) -> Rect:
        return self.system.rect_at(self.index, Fraction(1, 2 ** level))

    def approx(self) -> complex:
        box = self.enclosure(20)
        re, im = box.midpoint()
        return complex(float(re), float(im))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.minpoly == other.minpoly and self.index == other.index

    def __hash__(self):
        return hash((self.minpoly.coeffs, self.index))

    def __repr__(self):
        z = self.approx()
        zs = f"{z.real:.4g}" if abs(z.imag) < 1e-12 else f"{z:.4g}"
        return f"AlgebraicNumber({self.minpoly!r}, #{self.index}, ~{zs})"

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, AlgebraicNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return AlgebraicNumber.from_rational(x)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        n = self.degree
        p = self.minpoly
        coeffs = [c if (n - k) % 2 == 0 else -c for k, c in enumerate(p.coeffs)]
        neg_poly = Polynomial(coeffs, QQ).monic()
        if n == 1:
            return AlgebraicNumber(neg_poly, 0)
        idx = _identify_root(neg_poly, lambda lv: -self.enclosure(lv))
        return AlgebraicNumber(neg_poly, idx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic number")
        if self.is_rational():
            return AlgebraicNumber.from_rational(1 / self.rational_value())
        inv_poly = self.minpoly.reverse().monic()

        def encl(level):
            lv = level
            while True:
                box = self.enclosure(lv)
                if not box.contains_zero():
                    return box.recip()
                lv += 1
                if lv > _MAX_ROUNDS:
                    raise IsolationError("cannot separate from zero")

        idx = _identify_root(inv_poly, encl)
        return AlgebraicNumber(inv_poly, idx)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _mul(other, self.inverse())

    def __pow__(self, n: int):
        if n == 0:
            return AlgebraicNumber.from_rational(1)
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        square = self
        while n:
            if n & 1:
                result = square if result is None else _mul(result, square)
            n >>= 1
            if n:
                square = _mul(square, square)
        return result


def _add(a: AlgebraicNumber, b: AlgebraicNumber, cap=None) -> AlgebraicNumber:
    if a.is_rational() and b.is_rational():
        return AlgebraicNumber.from_rational(a.rational_value() + b.rational_value())
    if a.is_rational():
        a, b = b, a
    if b.is_rational():
        c = b.rational_value()
        if c == 0:
            return a
        shifted = a.minpoly.compose(Polynomial([-c, 1], QQ))
        idx = _identify_root(
            shifted, lambda lv: a.enclosure(lv) + Rect.point(c)
        )
        return AlgebraicNumber(shifted, idx)
    cap = DEFAULT_FIELD_FACTOR_CAP if cap is None else cap
    n, m = a.degree, b.degree
    if n * m > cap:
        raise DegreeCapError(
            f"algebraic arithmetic candidate degree {n*m} exceeds cap {cap}"
        )
    pb = b.minpoly
    samples = []
    r = 0
    while len(samples) < n * m + 1:
        val = Fraction(r)
        composed = pb.compose(Polynomial([val, -1], QQ))
        samples.append((val, resultant(a.minpoly, composed)))
        r = -r if r > 0 else -r + 1
    candidate = interpolate(samples, QQ)
    _, factors = factor_rational(candidate)

    def encl(level):
        return a.enclosure(level) + b.enclosure(level)

    winner = _select_vanishing_factor([f for f, _ in factors], encl)
    idx = _identify_root(winner, encl)
    return AlgebraicNumber(winner, idx)


def _mul(a: AlgebraicNumber, b: AlgebraicNumber, cap=None) -> AlgebraicNumber:
    if a.is_rational() and b.is_rational():
        return AlgebraicNumber.from_rational(a.rational_value() * b.rational_value())
    if a.is_rational():
        a, b = b, a
    if b.is_rational():
        c = b.rational_value()
        if c == 0:
            return AlgebraicNumber.from_rational(0)
        if c == 1:
            return a
        scaled = a.minpoly.scale_variable(1 / Fraction(c)).monic()
        idx = _identify_root(
            scaled, lambda lv: a.enclosure(lv) * Rect.point(c)
        )
        return AlgebraicNumber(scaled, idx)
    cap = DEFAULT_FIELD_FACTOR_CAP if cap is None else cap
    n, m = a.degree, b.degree
    if n * m > cap:
        raise DegreeCapError(
            f"algebraic arithmetic candidate degree {n*m} exceeds cap {cap}"
        )
    qb = b.minpoly.coeffs
    samples = []
    r = 0
    while len(samples) < n * m + 1:
        val = Fraction(r)
        # y^m * m_b(val/y): coefficient of y^j is q_{m-j} * val^{m-j}
        coeffs = [qb[m - j] * val ** (m - j) for j in range(m + 1)]
        h = Polynomial(coeffs, QQ)
        samples.append((val, resultant(a.minpoly, h)))
        r = -r if r > 0 else -r + 1
    candidate = interpolate(samples, QQ)
    candidate = candidate.monic()
    _, factors = factor_rational(candidate)

    def encl(level):
        return a.enclosure(level) * b.enclosure(level)

    winner = _select_vanishing_factor([f for f, _ in factors], encl)
    idx = _identify_root(winner, encl)
    return AlgebraicNumber(winner, idx)


def algnum_arith(a: AlgebraicNumber, b: AlgebraicNumber, op: str) -> AlgebraicNumber:
    """Field arithmetic in Q-bar: op is one of '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def algnum_equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """True iff a and b are the same element of Q-bar."""
    return a == b


def conjugates(a: AlgebraicNumber) -> list[AlgebraicNumber]:
    """All roots of a's minimal polynomial, with certified isolation."""
    return a.conjugates()
