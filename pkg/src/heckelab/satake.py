"""The spherical algebra of a split root datum and its point classification.

The algebra is the ring of Weyl-invariant Laurent polynomials on the dual
torus, with the orbit sums of exponent vectors as distinguished basis.
Points of the torus over Q-bar are classified modulo the Weyl group and
Galois conjugation over a base field A: the evaluation of the invariant
ring at a point x generates a finite extension F(x, A), its degree t is
the size of the Galois orbit of the W-class of x, t = 1 exactly when all
generating evaluations are A-rational, and over a Galois extension B
containing F(x, A) the class of x splits into exactly t distinct
B-rational classes.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .algnum import AlgebraicNumber
from .config import (
    DEFAULT_FIELD_FACTOR_CAP,
    DEFAULT_PRIMITIVE_ELEMENT_CAP,
    DEFAULT_WEYL_ORDER_CAP,
)
from .errors import (
    CoefficientFieldError,
    InconsistentCharacterError,
    IsolationError,
    MalformedInputError,
    UnsupportedRootDatumError,
    WeylOrderCapError,
)
from .modules import FinDimAlgebra, base_change, regular_module, split_semisimple
from .numfield import (
    NumberField,
    distinguished_embedding,
    extend_field,
    factor_over_field,
    field_degree,
    is_rational_field,
    primitive_element,
    relative_minpoly,
    roots_among,
)
from .poly import Polynomial, QQ
from .zfactor import factor_rational


# -- root data -------------------------------------------------------------------


def _mat_mul_int(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity_int(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class RootDatum:
    """Split torus character lattice Z^n with a finite Weyl group."""

    def __init__(
        self,
        rank: int,
        reflections,
        simply_connected: bool = True,
        q: int = 1,
        label: str | None = None,
        order_cap: int = DEFAULT_WEYL_ORDER_CAP,
    ):
        if rank < 1:
            raise MalformedInputError("rank must be positive")
        if q < 1:
            raise MalformedInputError("q must be a positive integer")
        gens = []
        for m in reflections:
            rows = tuple(tuple(int(x) for x in row) for row in m)
            if len(rows) != rank or any(len(r) != rank for r in rows):
                raise MalformedInputError("reflection matrix of wrong shape")
            gens.append(rows)
        self.rank = rank
        self.reflections = tuple(gens)
        self.simply_connected = bool(simply_connected)
        self.q = q
        self.label = label or f"rank-{rank} datum"
        ident = _identity_int(rank)
        elements = {ident}
        frontier = [ident]
        while frontier:
            w = frontier.pop()
            for g in gens:
                nxt = _mat_mul_int(w, g)
                if nxt not in elements:
                    if len(elements) >= order_cap:
                        raise WeylOrderCapError(
                            f"Weyl group exceeds order cap {order_cap}"
                        )
                    elements.add(nxt)
                    frontier.append(nxt)
        self.weyl = tuple(sorted(elements))
        for g in gens:
            if g not in elements:
                raise MalformedInputError("generator closure failed (internal)")

    @property
    def weyl_order(self):
        return len(self.weyl)

    def apply(self, w, vec):
        return tuple(
            sum(w[i][j] * vec[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def __repr__(self):
        return f"RootDatum({self.label}, |W|={self.weyl_order})"

    def __eq__(self, other):
        return (
            isinstance(other, RootDatum)
            and self.rank == other.rank
            and self.weyl == other.weyl
            and self.simply_connected == other.simply_connected
            and self.q == other.q
        )

    def __hash__(self):
        return hash((self.rank, self.weyl, self.simply_connected, self.q))


_PRESETS = {}


def preset_datum(name: str, simply_connected=True, q=1) -> RootDatum:
    """Built-in root data: A1, A1xA1, A2, B2."""
    key = name.upper().replace("X", "x")
    if key == "A1":
        refl = [[[-1]]]
        rank = 1
    elif key == "A1xA1":
        refl = [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]]
        rank = 2
    elif key == "A2":
        refl = [[[-1, 0], [1, 1]], [[1, 1], [0, -1]]]
        rank = 2
    elif key == "B2":
        refl = [[[-1, 0], [2, 1]], [[1, 1], [0, -1]]]
        rank = 2
    else:
        raise UnsupportedRootDatumError(f"unknown preset {name!r}")
    return RootDatum(
        rank, refl, simply_connected=simply_connected, q=q, label=key
    )


# -- orbit sums and the spherical algebra -----------------------------------------


class OrbitSum:
    """A Weyl orbit of Laurent monomials; the basis of the invariant ring."""

    __slots__ = ("datum", "orbit", "label")

    def __init__(self, datum: RootDatum, orbit: frozenset, label: tuple):
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "orbit", orbit)
        object.__setattr__(self, "label", label)

    def __setattr__(self, *_):
        raise AttributeError("OrbitSum is immutable")

    def __len__(self):
        return len(self.orbit)

    def __eq__(self, other):
        return isinstance(other, OrbitSum) and self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f"OrbitSum{self.label}(size={len(self.orbit)})"


def weyl_orbit(exponent, datum: RootDatum) -> OrbitSum:
    """The full W-orbit of a Laurent monomial exponent vector."""
    exponent = tuple(int(x) for x in exponent)
    orbit = {datum.apply(w, exponent) for w in datum.weyl}
    return OrbitSum(datum, frozenset(orbit), max(orbit))


class SphericalElement:
    """Element of the invariant ring: finite combination of orbit sums."""

    def __init__(self, datum: RootDatum, field, coeffs: dict):
        self.datum = datum
        self.field = field
        clean = {}
        for label, c in coeffs.items():
            c = field.coerce(c)
            if c != field.zero:
                orbit = weyl_orbit(label, datum)
                clean[orbit.label] = clean.get(orbit.label, field.zero) + c
        self.coeffs = {k: v for k, v in clean.items() if v != field.zero}

    @classmethod
    def one(cls, datum, field=QQ):
        return cls(datum, field, {(0,) * datum.rank: field.one})

    @classmethod
    def orbit_sum(cls, datum, exponent, field=QQ):
        return cls(datum, field, {tuple(exponent): field.one})

    def monomial_expansion(self) -> dict:
        out = {}
        for label, c in self.coeffs.items():
            for m in weyl_orbit(label, self.datum).orbit:
                out[m] = out.get(m, self.field.zero) + c
        return {k: v for k, v in out.items() if v != self.field.zero}

    @classmethod
    def from_monomials(cls, datum, field, monomials: dict):
        """Collect a W-invariant monomial combination into orbit sums."""
        rest = {k: v for k, v in monomials.items() if v != field.zero}
        coeffs = {}
        while rest:
            m = max(rest)
            orbit = weyl_orbit(m, datum)
            c = rest[m]
            for member in orbit.orbit:
                got = rest.pop(member, field.zero)
                if got != c:
                    raise MalformedInputError(
                        "monomial combination is not W-invariant"
                    )
            coeffs[orbit.label] = c
        out = cls(datum, field, {})
        out.coeffs = coeffs
        return out

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, self.field.zero) + v
        out = SphericalElement(self.datum, self.field, {})
        out.coeffs = {k: v for k, v in coeffs.items() if v != self.field.zero}
        return out

    def __neg__(self):
        out = SphericalElement(self.datum, self.field, {})
        out.coeffs = {k: -v for k, v in self.coeffs.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SphericalElement):
            c = self.field.coerce(other)
            out = SphericalElement(self.datum, self.field, {})
            out.coeffs = {
                k: v * c for k, v in self.coeffs.items() if v * c != self.field.zero
            }
            return out
        self._check(other)
        left = self.monomial_expansion()
        right = other.monomial_expansion()
        prod: dict = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                prod[key] = prod.get(key, self.field.zero) + c1 * c2
        return SphericalElement.from_monomials(self.datum, self.field, prod)

    __rmul__ = __mul__

    def _check(self, other):
        if other.datum != self.datum or other.field != self.field:
            raise MalformedInputError(
                "spherical elements over different data or fields"
            )

    def is_w_invariant(self) -> bool:
        expansion = self.monomial_expansion()
        for w in self.datum.reflections:
            moved = {self.datum.apply(w, m): c for m, c in expansion.items()}
            if moved != expansion:
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, SphericalElement)
            and self.datum == other.datum
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "SphericalElement(0)"
        parts = [f"{c}*m{list(k)}" for k, c in sorted(self.coeffs.items())]
        return "SphericalElement(" + " + ".join(parts) + ")"


def spherical_mul(f: SphericalElement, g: SphericalElement) -> SphericalElement:
    return f * g


def generating_orbit_sums(datum: RootDatum, height: int = 1):
    """Orbit sums of all nonzero lattice points of sup-norm <= height."""
    seen = set()
    out = []
    points = [()]
    for _ in range(datum.rank):
        points = [p + (k,) for p in points for k in range(-height, height + 1)]
    for p in sorted(points, reverse=True):
        if all(x == 0 for x in p):
            continue
        orbit = weyl_orbit(p, datum)
        if orbit.label in seen:
            continue
        seen.add(orbit.label)
        out.append(orbit)
    return out


# -- torus points ------------------------------------------------------------------


class TorusPoint:
    """Point of the dual torus over Q-bar: nonzero algebraic coordinates."""

    def __init__(self, datum: RootDatum, coords):
        coords = tuple(
            c
            if isinstance(c, AlgebraicNumber)
            else AlgebraicNumber.from_rational(c)
            for c in coords
        )
        if len(coords) != datum.rank:
            raise MalformedInputError("coordinate count does not match rank")
        if any(c.is_zero() for c in coords):
            raise MalformedInputError("torus coordinates must be nonzero")
        self.datum = datum
        self.coords = coords
        self._lock = threading.Lock()
        self._field_data = None
        self._orbit = None

    # -- the joint coordinate field ----------------------------------------

    def _ensure_field(self):
        with self._lock:
            if self._field_data is None:
                F, exprs = primitive_element(list(self.coords), base=QQ)
                self._field_data = (F, exprs)
            return self._field_data

    @property
    def coordinate_field(self):
        return self._ensure_field()[0]

    def monomial_value(self, exponent):
        """x^m inside the joint coordinate field (FieldElement or Fraction)."""
        F, exprs = self._ensure_field()
        acc = F.one if not is_rational_field(F) else Fraction(1)
        for e, c in zip(exponent, exprs):
            if e:
                acc = acc * c ** e
        return acc

    def _value_to_algnum(self, v) -> AlgebraicNumber:
        if isinstance(v, Fraction):
            return AlgebraicNumber.from_rational(v)
        return v.algebraic()

    def orbit_points(self):
        """The W-orbit of the coordinate tuple, as algebraic-number tuples."""
        with self._lock:
            if self._orbit is not None:
                return self._orbit
        out = set()
        for w in self.datum.weyl:
            coords = tuple(
                self._value_to_algnum(
                    self.monomial_value(tuple(row[i] for row in w))
                )
                for i in range(self.datum.rank)
            )
            out.add(coords)
        ordered = sorted(out, key=lambda t: tuple(c.sort_key() for c in t))
        with self._lock:
            self._orbit = ordered
        return ordered

    def orbit_key(self):
        first = self.orbit_points()[0]
        return tuple(c.sort_key() for c in first)

    def canonical(self) -> "TorusPoint":
        return TorusPoint(self.datum, self.orbit_points()[0])

    def __repr__(self):
        vals = ", ".join(f"{c.approx():.4g}" for c in self.coords)
        return f"TorusPoint({vals})"


def evaluate(f: SphericalElement, x: TorusPoint) -> AlgebraicNumber:
    """Evaluation of an invariant function at a torus point.

    Independent of the W-translate of x used; a ring character in f.
    Rational coefficients stay inside the joint coordinate field; genuinely
    irrational coefficients fall back to Q-bar arithmetic.
    """
    if f.datum != x.datum:
        raise MalformedInputError("point and function over different data")
    acc_rat = Fraction(0)
    acc_field = None
    acc_alg = None
    for label, c in f.coeffs.items():
        total = None
        for m in weyl_orbit(label, f.datum).orbit:
            v = x.monomial_value(m)
            total = v if total is None else total + v
        if isinstance(c, Fraction):
            c_rat = c
        elif c.is_rational():
            c_rat = c.rational_value()
        else:
            c_rat = None
        if c_rat is not None:
            term = total * c_rat
            if isinstance(term, Fraction):
                acc_rat += term
            else:
                acc_field = term if acc_field is None else acc_field + term
        else:
            t = x._value_to_algnum(total) * c.algebraic()
            acc_alg = t if acc_alg is None else acc_alg + t
    if acc_field is not None:
        base_val = x._value_to_algnum(acc_field + acc_rat)
    else:
        base_val = AlgebraicNumber.from_rational(acc_rat)
    return base_val if acc_alg is None else base_val + acc_alg


# -- residue fields and classification ----------------------------------------------


def _check_field_constraint(A, datum: RootDatum):
    """Non-simply-connected data require sqrt(q) in the coefficient field."""
    import math

    if datum.simply_connected:
        return
    r = math.isqrt(datum.q)
    if r * r == datum.q:
        return
    if is_rational_field(A):
        raise CoefficientFieldError(
            f"base field must contain sqrt({datum.q}) for a "
            "non-simply-connected datum"
        )
    sq = Polynomial([Fraction(-datum.q), Fraction(0), Fraction(1)], QQ)
    lifted = sq.map_coefficients(A.coerce, A)
    _, factors = factor_over_field(lifted)
    if not any(f.degree == 1 for f, _ in factors):
        raise CoefficientFieldError(
            f"base field {A!r} does not contain sqrt({datum.q})"
        )


def _value_in_field(v: AlgebraicNumber, A) -> bool:
    if is_rational_field(A):
        return v.is_rational()
    if v.is_rational():
        return True
    return relative_minpoly(v, A).degree == 1


def _stabilized_generators(x: TorusPoint, A, datum, cap):
    height = 1
    while height <= 4:
        evals = [
            evaluate(SphericalElement.orbit_sum(datum, g.label), x)
            for g in generating_orbit_sums(datum, height)
        ]
        F, _ = primitive_element(evals, base=A, cap=cap)
        more = [
            evaluate(SphericalElement.orbit_sum(datum, g.label), x)
            for g in generating_orbit_sums(datum, height + 1)
        ]
        F2, _ = primitive_element(more, base=A, cap=cap)
        if field_degree(F) == field_degree(F2):
            return height, evals, F
        height += 1
    raise IsolationError("generating height did not stabilize")


def galois_orbit_mod_w(x: TorusPoint, A, cap=DEFAULT_FIELD_FACTOR_CAP):
    """Gal(Q-bar/A)-orbit of the W-class of x, as canonical points."""
    F = x.coordinate_field
    datum = x.datum
    if is_rational_field(F):
        return [x.canonical()]
    _, exprs = x._ensure_field()
    rel = relative_minpoly(F.root, A, cap=cap)
    all_conjugates = F.root.conjugates()
    if rel.degree == len(all_conjugates):
        conj_roots = all_conjugates
    else:
        conj_roots = roots_among(rel, all_conjugates, rel.degree)
    seen = {}
    for rho in conj_roots:
        if rho == F.root:
            sibling = F
        else:
            sibling = NumberField(
                F.modulus, label=F.label, root=rho, _trusted=True
            )
        coords = []
        for e in exprs:
            if isinstance(e, Fraction):
                coords.append(AlgebraicNumber.from_rational(e))
            else:
                img = sibling.element(list(e.rep))
                coords.append(img.algebraic())
        pt = TorusPoint(datum, coords).canonical()
        seen.setdefault(pt.orbit_key(), pt)
    return [seen[k] for k in sorted(seen)]


class UnramifiedClass:
    """A Galois orbit of W-classes: one unramified irreducible class."""

    def __init__(self, point, base, residue, degree, galois_orbit, evaluations):
        self.point = point
        self.base = base
        self.residue_field = residue
        self.degree = degree
        self.galois_orbit = galois_orbit
        self.evaluations = evaluations
        self.absolutely_irreducible = degree == 1
        self.members: list[TorusPoint] = []

    def __repr__(self):
        return (
            f"UnramifiedClass(t={self.degree}, "
            f"abs_irr={self.absolutely_irreducible})"
        )


def residue_field(
    x: TorusPoint,
    A,
    datum: RootDatum | None = None,
    cap: int = DEFAULT_PRIMITIVE_ELEMENT_CAP,
) -> UnramifiedClass:
    """F(x, A): the field generated over A by the invariant evaluations."""
    datum = datum or x.datum
    if datum != x.datum:
        raise MalformedInputError("point does not belong to the datum")
    _check_field_constraint(A, datum)
    height, evals, F = _stabilized_generators(x, A, datum, cap)
    t = field_degree(F) // field_degree(A)
    orbit = galois_orbit_mod_w(x, A)
    if len(orbit) != t:
        raise IsolationError(
            f"Galois orbit size {len(orbit)} != residue degree {t} (internal)"
        )
    labels = [g.label for g in generating_orbit_sums(datum, height)]
    evaluations = dict(zip(labels, evals))
    rational = all(_value_in_field(v, A) for v in evals)
    if rational != (t == 1):
        raise IsolationError("rationality criterion failed (internal)")
    return UnramifiedClass(x.canonical(), A, F, t, orbit, evaluations)


def same_class(x: TorusPoint, y: TorusPoint, A, datum=None) -> bool:
    """True iff y is W-equivalent to a Gal(Q-bar/A)-conjugate of x."""
    datum = datum or x.datum
    if y.datum != datum or x.datum != datum:
        raise MalformedInputError("points over different data")
    ykey = y.orbit_key()
    return any(p.orbit_key() == ykey for p in galois_orbit_mod_w(x, A))


def classify(points, A, datum: RootDatum) -> list[UnramifiedClass]:
    """Partition points into unramified classes over A."""
    _check_field_constraint(A, datum)
    classes: list[UnramifiedClass] = []
    for pt in points:
        placed = False
        for cls in classes:
            if any(
                p.orbit_key() == pt.orbit_key() for p in cls.galois_orbit
            ):
                cls.members.append(pt)
                placed = True
                break
        if not placed:
            cls = residue_field(pt, A, datum)
            cls.members.append(pt)
            classes.append(cls)
    return classes


class BaseChangeReport:
    """Decomposition data of a class after a Galois base change."""

    def __init__(self, x, base, extension, t, points, module_split_count):
        self.x = x
        self.base = base
        self.extension = extension
        self.t = t
        self.points = points
        self.module_split_count = module_split_count

    def __repr__(self):
        return f"BaseChangeReport(t={self.t}, points={len(self.points)})"


def _is_galois_over(B, A, cap=DEFAULT_FIELD_FACTOR_CAP) -> bool:
    if is_rational_field(B):
        return True
    rel = relative_minpoly(B.root, A, cap=cap)
    lifted = (
        rel.map_coefficients(B.coerce, B)
        if rel.base == QQ
        else Polynomial(
            [distinguished_embedding(A, B, cap=cap).apply(c) for c in rel.coeffs],
            B,
        )
    )
    _, factors = factor_over_field(lifted, cap=cap)
    return all(f.degree == 1 for f, _ in factors)


def _embeds_over(F, A, B, cap=DEFAULT_FIELD_FACTOR_CAP) -> bool:
    """Does F embed into B over A?"""
    if is_rational_field(F):
        return True
    rel = relative_minpoly(F.root, A, cap=cap)
    if rel.base == QQ:
        lifted = rel.map_coefficients(B.coerce, B)
    else:
        emb = distinguished_embedding(A, B, cap=cap)
        if emb is None:
            return False
        lifted = Polynomial([emb.apply(c) for c in rel.coeffs], B)
    _, factors = factor_over_field(lifted, cap=cap)
    return any(f.degree == 1 for f, _ in factors)


def base_change_table(
    x: TorusPoint, A, B, datum: RootDatum | None = None, verify_modules=True
) -> BaseChangeReport:
    """The splitting of the class of x over a Galois extension B of A."""
    datum = datum or x.datum
    cls = residue_field(x, A, datum)
    F = cls.residue_field
    if is_rational_field(B):
        if not is_rational_field(F) or not is_rational_field(A):
            raise MalformedInputError("B = Q only contains Q itself")
    else:
        if not _embeds_over(F, A, B):
            raise MalformedInputError(
                f"extension {B!r} does not contain the residue field "
                f"{F!r}; take its normal closure over the base"
            )
        if not _is_galois_over(B, A):
            raise MalformedInputError(
                f"{B!r} is not Galois over the base; replace it by a "
                "normal closure"
            )
    t = cls.degree
    points = cls.galois_orbit
    xkey = x.orbit_key()
    ordered = sorted(points, key=lambda p: (p.orbit_key() != xkey, p.orbit_key()))
    # each point must be B-rational (t = 1 over B) and pairwise distinct
    for p in ordered:
        sub = residue_field(p, B, datum)
        if sub.degree != 1:
            raise IsolationError("orbit point not rational over B (internal)")
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            if same_class(ordered[i], ordered[j], B, datum):
                raise IsolationError("orbit points coincide over B (internal)")
    split_count = None
    if verify_modules:
        if is_rational_field(F):
            split_count = 1
        else:
            alg = FinDimAlgebra.regular_of_field(F, A)
            mod = regular_module(alg)
            emb = None if is_rational_field(A) else distinguished_embedding(A, B)
            mod_b = base_change(mod, B, embedding=emb)
            split_count = len(split_semisimple(mod_b))
        if split_count != t:
            raise IsolationError(
                "module splitting disagrees with the Galois orbit (internal)"
            )
    return BaseChangeReport(x.canonical(), A, B, t, ordered, split_count)


# -- points from characters (maximal ideals) ------------------------------------------


def _one_root_of_algnum_poly(coeffs) -> AlgebraicNumber:
    """One root of sum coeffs[k] z^k with algebraic-number coefficients."""
    coeffs = [
        c if isinstance(c, AlgebraicNumber) else AlgebraicNumber.from_rational(c)
        for c in coeffs
    ]
    gens = [c for c in coeffs if not c.is_rational()]
    if not gens:
        p = Polynomial([c.rational_value() for c in coeffs], QQ)
        roots = AlgebraicNumber.roots_of(p)
        if not roots:
            raise InconsistentCharacterError("character polynomial has no roots")
        return roots[0]
    F, exprs = primitive_element(gens)
    it = iter(exprs)
    lifted = []
    for c in coeffs:
        if c.is_rational():
            lifted.append(F.coerce(c.rational_value()))
        else:
            lifted.append(next(it))
    p = Polynomial(lifted, F)
    _, factors = factor_over_field(p)
    f0, _m = factors[0]
    if f0.degree == 1:
        return (-f0.constant()).algebraic()
    _, _, root_expr = extend_field(F, f0)
    return root_expr.algebraic()


def _rank_one_fiber_roots(value: AlgebraicNumber):
    """Solutions of z + 1/z = value: roots of z^2 - value z + 1."""
    one = AlgebraicNumber.from_rational(1)
    r1 = _one_root_of_algnum_poly([one, -value, one])
    r2 = r1.inverse()
    return r1, r2


def maximal_ideal_variety(character: dict, A, datum: RootDatum):
    """The finite fiber V(m) of an evaluation character, W-reduced.

    The character maps generating orbit-sum labels to values in Q-bar; the
    result is the single Galois orbit of points (Lemma-level guarantee),
    with all supplied labels verified against exact re-evaluation.
    """
    _check_field_constraint(A, datum)
    character = {
        tuple(k): (
            v
            if isinstance(v, AlgebraicNumber)
            else AlgebraicNumber.from_rational(v)
        )
        for k, v in character.items()
    }
    candidates = _fiber_candidates(character, datum)
    chosen = None
    for cand in candidates:
        pt = TorusPoint(datum, cand)
        if _character_matches(character, pt, datum):
            chosen = pt
            break
    if chosen is None:
        raise InconsistentCharacterError(
            "no torus point realizes the given character"
        )
    return galois_orbit_mod_w(chosen, A)


def _character_matches(character, pt, datum) -> bool:
    for label, value in character.items():
        got = evaluate(SphericalElement.orbit_sum(datum, label), pt)
        if not (got == value):
            return False
    return True


def _fiber_candidates(character, datum: RootDatum):
    diag = all(
        w[i][j] == 0
        for w in datum.weyl
        for i in range(datum.rank)
        for j in range(datum.rank)
        if i != j
    )
    if datum.rank == 1 and diag:
        key = (1,)
        if key not in character:
            raise InconsistentCharacterError("character must specify label (1,)")
        r1, r2 = _rank_one_fiber_roots(character[key])
        return [(r1,), (r2,)]
    if datum.rank == 2 and diag:
        k1, k2 = (1, 0), (0, 1)
        if k1 not in character or k2 not in character:
            raise InconsistentCharacterError(
                "character must specify labels (1,0) and (0,1)"
            )
        a1, b1 = _rank_one_fiber_roots(character[k1])
        a2, b2 = _rank_one_fiber_roots(character[k2])
        return [(a1, a2), (a1, b2), (b1, a2), (b1, b2)]
    if datum.rank == 2 and datum.weyl == preset_datum("A2").weyl:
        k1, k2 = (1, 0), (0, 1)
        if k1 not in character or k2 not in character:
            raise InconsistentCharacterError(
                "character must specify labels (1,0) and (0,1)"
            )
        a = character[k1]
        b = character[k2]
        one = AlgebraicNumber.from_rational(1)
        # eigenvalue cubic z^3 - a z^2 + b z - 1
        t1 = _one_root_of_algnum_poly([-one, b, -a, one])
        # deflate: z^2 + (t1 - a) z + (t1^2 - a t1 + b)
        c1 = t1 - a
        c0 = t1 * t1 - a * t1 + b
        t2 = _one_root_of_algnum_poly([c0, c1, one])
        t3 = (t1 * t2).inverse()
        return [(t1, t1 * t2), (t1, t1 * t3)]
    raise UnsupportedRootDatumError(
        f"maximal_ideal_variety supports rank-one products and the A2 "
        f"preset, not {datum.label!r}"
    )
