"""Number fields Q[T]/(m) with a distinguished complex embedding.

Every field carries a distinguished root of its modulus (an
AlgebraicNumber), so elements can be compared inside Q-bar and fields can
be related without choosing identifications ad hoc.  Relative notions
(minimal polynomials over a subfield, embeddings over a base) are computed
by factoring over the subfield and selecting the factor that vanishes at
the distinguished root.

Factorization over a number field is Trager's reduction: shift the
argument by integer multiples of the generator until the norm (a resultant
down to Q[T]) is squarefree, factor the norm over Q, and read factors off
as gcds.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .algnum import (
    AlgebraicNumber,
    Rect,
    _identify_root,
    rect_eval,
)
from .config import (
    DEFAULT_FIELD_FACTOR_CAP,
    DEFAULT_PRIMITIVE_ELEMENT_CAP,
    DEFAULT_Q_FACTOR_CAP,
)
from .errors import (
    DegreeCapError,
    FieldMismatchError,
    IsolationError,
    MalformedInputError,
)
from .linalg import kernel, transpose
from .poly import (
    Polynomial,
    QQ,
    RationalField,
    formal_sylvester_resultant,
    interpolate,
    poly_gcd,
    poly_xgcd,
    squarefree_decomposition,
    squarefree_part,
)
from .zfactor import factor_rational, is_irreducible_over_Q

_MAX_SHIFTS = 64


def is_rational_field(F) -> bool:
    return isinstance(F, RationalField)


def field_degree(F) -> int:
    return 1 if is_rational_field(F) else F.degree


class NumberField:
    """Q[T]/(modulus) embedded in Q-bar via a distinguished root."""

    def __init__(self, modulus: Polynomial, label=None, root=None, _trusted=False):
        if modulus.base != QQ:
            raise MalformedInputError("modulus must have rational coefficients")
        modulus = modulus.monic()
        if modulus.degree < 2:
            raise MalformedInputError(
                "number field modulus must have degree >= 2; use QQ for Q"
            )
        if not _trusted and not is_irreducible_over_Q(modulus):
            raise MalformedInputError(f"modulus {modulus!r} is not irreducible")
        self.modulus = modulus
        self.degree = modulus.degree
        self.label = label or f"Q[T]/({modulus!r})"
        if root is None:
            root = AlgebraicNumber(modulus, 0)
        elif root.minpoly != modulus:
            raise MalformedInputError("distinguished root must solve the modulus")
        self.root = root

    @property
    def zero(self):
        return FieldElement(self, (Fraction(0),) * self.degree)

    @property
    def one(self):
        return FieldElement(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    @property
    def gen(self):
        rep = [Fraction(0)] * self.degree
        rep[1] = Fraction(1)
        return FieldElement(self, tuple(rep))

    def element(self, coeffs) -> "FieldElement":
        rep = [Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
        if len(rep) > self.degree:
            poly = Polynomial(rep, QQ) % self.modulus
            rep = list(poly.coeffs)
        rep = rep + [Fraction(0)] * (self.degree - len(rep))
        return FieldElement(self, tuple(rep))

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatchError(
                    f"element of {x.field!r} used in {self!r}"
                )
            return x
        if isinstance(x, (int, str, Fraction)):
            return self.element([Fraction(x)])
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def __eq__(self, other):
        if is_rational_field(other):
            return False
        return (
            isinstance(other, NumberField)
            and self.modulus == other.modulus
            and self.root.index == other.root.index
        )

    def __hash__(self):
        return hash((self.modulus.coeffs, self.root.index))

    def __repr__(self):
        return self.label


class FieldElement:
    """Element of a number field: residue of a rational polynomial."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def poly(self) -> Polynomial:
        return Polynomial(self.rep, QQ)

    def is_zero(self):
        return all(c == 0 for c in self.rep)

    def is_rational(self):
        return all(c == 0 for c in self.rep[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.rep[0]

    def _promote(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.rep, other.rep))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.rep))

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return FieldElement(
            self.field, tuple(a - b for a, b in zip(self.rep, other.rep))
        )

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        prod = (self.poly() * other.poly()) % self.field.modulus
        rep = list(prod.coeffs) + [Fraction(0)] * (
            self.field.degree - len(prod.coeffs)
        )
        return FieldElement(self.field, tuple(rep))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(self.poly(), self.field.modulus)
        if g.degree != 0:
            raise ArithmeticError("modulus not irreducible?")
        inv = (s * (QQ.one / g.constant())) % self.field.modulus
        rep = list(inv.coeffs) + [Fraction(0)] * (
            self.field.degree - len(inv.coeffs)
        )
        return FieldElement(self.field, tuple(rep))

    def __truediv__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rep[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self):
        return hash((self.field, self.rep))

    def __repr__(self):
        return f"({self.poly()!r} in {self.field.label})"

    def sort_key(self):
        return self.rep

    # -- bridge into Q-bar -------------------------------------------------

    def minpoly_q(self) -> Polynomial:
        """Minimal polynomial over Q, by linear dependence of powers."""
        vecs = [
            (Fraction(1),) + (Fraction(0),) * (self.field.degree - 1)
        ]
        power = self.field.one
        while True:
            power = power * self
            vecs.append(power.rep)
            dep = kernel(transpose([list(v) for v in vecs]), QQ)
            if dep:
                coeffs = dep[0]
                top = len(coeffs) - 1
                inv = 1 / coeffs[top]
                return Polynomial([c * inv for c in coeffs], QQ)

    def enclosure(self, level: int) -> Rect:
        return rect_eval(self.poly(), self.field.root.enclosure(level))

    def algebraic(self) -> AlgebraicNumber:
        if self.is_rational():
            return AlgebraicNumber.from_rational(self.rep[0])
        mp = self.minpoly_q()
        idx = _identify_root(mp, self.enclosure)
        return AlgebraicNumber(mp, idx)


class FieldEmbedding:
    """Field homomorphism determined by the image of the generator."""

    def __init__(self, source: NumberField, target, image):
        self.source = source
        self.target = target
        self.image = image
        check = source.modulus.map_coefficients(target.coerce, target)(image)
        if not (check == target.zero):
            raise MalformedInputError("image does not satisfy the modulus")

    def apply(self, elem):
        if isinstance(elem, (int, Fraction)):
            return self.target.coerce(elem)
        if elem.field != self.source:
            raise FieldMismatchError("embedding applied to foreign element")
        return elem.poly().map_coefficients(self.target.coerce, self.target)(
            self.image
        )

    def __repr__(self):
        return f"Embedding({self.source.label} -> {self.target.label})"


# -- factor selection against points of Q-bar ---------------------------------


def _field_poly_enclosure(p: Polynomial, z: Rect, level: int) -> Rect:
    """Interval Horner for a polynomial with number-field coefficients."""
    acc = Rect.point(0)
    for c in reversed(p.coeffs):
        if isinstance(c, Fraction):
            cbox = Rect.point(c)
        else:
            cbox = c.enclosure(level)
        acc = acc * z + cbox
    return acc


def select_vanishing_factor_over_field(factors, a: AlgebraicNumber) -> Polynomial:
    """Unique factor (coefficients in a number field or Q) with f(a) = 0."""
    alive = list(factors)
    level = 1
    while len(alive) > 1:
        box = a.enclosure(level)
        alive = [
            f
            for f in alive
            if _field_poly_enclosure(f, box, level).contains_zero()
        ]
        level += 1
        if level > 400:
            raise IsolationError("factor selection over field did not converge")
    if not alive:
        raise IsolationError("no factor vanishes at the given root (internal)")
    return alive[0]


def roots_among(p: Polynomial, candidates, expected_count: int):
    """The ``expected_count`` members of candidates at which p vanishes.

    p has coefficients in Q or a number field; exactly expected_count of
    the (pairwise distinct) candidates are roots of p.  Non-roots are
    excluded by interval refinement.
    """
    undecided = list(candidates)
    level = 1
    while len(undecided) > expected_count:
        undecided = [
            a
            for a in undecided
            if _field_poly_enclosure(p, a.enclosure(level), level).contains_zero()
        ]
        level += 1
        if level > 400:
            raise IsolationError("root-of-factor selection did not converge")
    if len(undecided) < expected_count:
        raise IsolationError("too few roots among candidates (internal)")
    return undecided


# -- relative notions ----------------------------------------------------------


def relative_minpoly(a: AlgebraicNumber, F, cap=DEFAULT_FIELD_FACTOR_CAP):
    """Minimal polynomial of a over the field F (QQ or NumberField)."""
    if is_rational_field(F):
        return a.minpoly
    lifted = a.minpoly.map_coefficients(F.coerce, F)
    _, factors = factor_over_field(lifted, cap=cap)
    return select_vanishing_factor_over_field([f for f, _ in factors], a)


# -- Trager factorization ------------------------------------------------------


def _norm_to_q(h: Polynomial, F: NumberField) -> Polynomial:
    """Res_x(modulus(x), h(T, x)) in Q[T] for h with coefficients in F."""
    d = F.degree
    deg_t = h.degree
    reps = [c.poly() for c in h.coeffs]
    bound = d * deg_t
    samples = []
    r = 0
    while len(samples) < bound + 1:
        val = Fraction(r)
        acc = Polynomial([], QQ)
        power = Fraction(1)
        for rep in reps:
            acc = acc + rep * power
            power = power * val
        res = formal_sylvester_resultant(F.modulus, acc, d, d - 1)
        samples.append((val, res))
        r = -r if r > 0 else -r + 1
    return interpolate(samples, QQ)


def _factor_squarefree_over_field(g: Polynomial, F: NumberField):
    if g.degree == 1:
        return [g.monic()]
    gen = F.gen
    for s in range(_MAX_SHIFTS):
        shift = Polynomial([gen * Fraction(-s), F.one], F)
        gs = g.compose(shift) if s else g
        norm = _norm_to_q(gs, F)
        if poly_gcd(norm, norm.derivative()).degree == 0:
            break
    else:
        raise IsolationError("no squarefree norm found (should not happen)")
    _, nfactors = factor_rational(norm)
    if len(nfactors) == 1 and nfactors[0][0].degree == norm.degree:
        return [g.monic()]
    out = []
    unshift = Polynomial([gen * Fraction(s), F.one], F)
    for H, _mult in nfactors:
        Hf = H.map_coefficients(F.coerce, F)
        d = poly_gcd(gs, Hf)
        if d.degree < 1:
            continue
        fac = d.compose(unshift) if s else d
        out.append(fac.monic())
    total = sum(f.degree for f in out)
    if total != g.degree:
        raise IsolationError("Trager factor degrees do not add up (internal)")
    return sorted(out, key=_poly_sort_key)


def _poly_sort_key(p: Polynomial):
    if p.base == QQ:
        return (p.degree, p.coeffs)
    return (p.degree, tuple(c.rep for c in p.coeffs))


_field_factor_lock = threading.Lock()
_field_factor_cache: dict = {}


def factor_over_field(p: Polynomial, cap: int = DEFAULT_FIELD_FACTOR_CAP):
    """Factor p over its coefficient field into monic irreducibles.

    Returns (lead, [(factor, multiplicity)]).  The cap bounds
    deg(p) * [F : Q].
    """
    F = p.base
    if is_rational_field(F):
        return factor_rational(p, cap=cap)
    if p.degree < 1:
        raise ValueError("factor_over_field requires degree >= 1")
    if p.degree * F.degree > cap:
        raise DegreeCapError(
            f"deg {p.degree} * [F:Q] {F.degree} exceeds cap {cap}"
        )
    key = (F, p.coeffs)
    with _field_factor_lock:
        hit = _field_factor_cache.get(key)
    if hit is not None:
        return hit
    lead, sqfree = squarefree_decomposition(p)
    out = []
    for g, mult in sqfree:
        for f in _factor_squarefree_over_field(g, F):
            out.append((f, mult))
    out.sort(key=lambda t: _poly_sort_key(t[0]))
    result = (lead, out)
    with _field_factor_lock:
        return _field_factor_cache.setdefault(key, result)


# -- building extensions -------------------------------------------------------


def _lift_to_bivariate_samples(rel: Polynomial, F: NumberField, c: int, val):
    """q_val(x) = rel(val - c*x) with the generator replaced by x."""
    shift = Polynomial([val, Fraction(-c)], QQ)
    acc = Polynomial([], QQ)
    for coeff in reversed(rel.coeffs):
        rep = (
            coeff.poly()
            if isinstance(coeff, FieldElement)
            else Polynomial([coeff], QQ)
        )
        acc = acc * shift + rep
    return acc


def extend_field(
    F,
    rel: Polynomial,
    new_root: AlgebraicNumber | None = None,
    cap: int = DEFAULT_PRIMITIVE_ELEMENT_CAP,
    label=None,
):
    """Extend F by a root of the irreducible polynomial rel over F.

    Returns (E, old_gen_expr, root_expr): the absolute field E, the image
    of F's generator in E (None when F is QQ), and the adjoined root as an
    element of E.  When new_root is given, E's distinguished embedding is
    chosen so that root_expr evaluates to new_root in Q-bar.
    """
    if rel.degree < 2:
        raise ValueError("extend_field requires an irreducible rel of degree >= 2")
    if is_rational_field(F):
        modulus = rel
        if modulus.degree > cap:
            raise DegreeCapError(
                f"extension degree {modulus.degree} exceeds cap {cap}"
            )
        root = new_root if new_root is not None else AlgebraicNumber(modulus, 0)
        E = NumberField(modulus, label=label, root=root, _trusted=True)
        return E, None, E.gen
    d = F.degree
    target_degree = d * rel.degree
    if target_degree > cap:
        raise DegreeCapError(
            f"extension degree {target_degree} exceeds cap {cap}"
        )
    for c in range(1, _MAX_SHIFTS):
        samples = []
        r = 0
        while len(samples) < target_degree + 1:
            val = Fraction(r)
            qx = _lift_to_bivariate_samples(rel, F, c, val)
            res = formal_sylvester_resultant(
                F.modulus, qx, d, (d - 1) + rel.degree
            )
            samples.append((val, res))
            r = -r if r > 0 else -r + 1
        R = interpolate(samples, QQ).monic()
        if R.degree != target_degree:
            continue
        if not is_irreducible_over_Q(R):
            continue
        if new_root is not None:
            theta_encl = lambda lv: new_root.enclosure(lv) + (
                F.root.enclosure(lv) * Rect.point(Fraction(c))
            )
            idx = _identify_root(R, theta_encl)
            candidates = [idx]
        else:
            candidates = list(range(R.degree))
        for idx in candidates:
            E = NumberField(
                R, label=label, root=AlgebraicNumber(R, idx), _trusted=True
            )
            old_expr = _express_old_generator(E, F, rel, c)
            if old_expr is None:
                continue
            if not (old_expr.algebraic() == F.root):
                continue
            root_expr = E.gen - old_expr * Fraction(c)
            return E, old_expr, root_expr
    raise IsolationError("no primitive shift produced an irreducible modulus")


def _express_old_generator(E: NumberField, F: NumberField, rel, c):
    """Solve for F's generator inside E via the linear gcd trick."""
    mF = F.modulus.map_coefficients(E.coerce, E)
    shift = Polynomial([E.gen, E.coerce(Fraction(-c))], E)
    acc = Polynomial([], E)
    for coeff in reversed(rel.coeffs):
        rep = coeff.poly() if isinstance(coeff, FieldElement) else Polynomial(
            [coeff], QQ
        )
        lifted = rep.map_coefficients(E.coerce, E)
        acc = acc * shift + lifted
    g = poly_gcd(mF, acc)
    if g.degree != 1:
        return None
    return -g.constant()


def adjoin(F, a: AlgebraicNumber, cap=DEFAULT_PRIMITIVE_ELEMENT_CAP):
    """Adjoin an algebraic number to F.

    Returns (E, transport, a_expr) where transport maps old elements of F
    into E (identity when E is F) and a_expr is a as an element of E.
    """
    identity = lambda x: x
    if a.is_rational():
        if is_rational_field(F):
            return F, identity, a.rational_value()
        return F, identity, F.coerce(a.rational_value())
    if is_rational_field(F):
        if a.minpoly.degree > cap:
            raise DegreeCapError(
                f"degree {a.minpoly.degree} exceeds cap {cap}"
            )
        E = NumberField(a.minpoly, root=a, _trusted=True)
        return E, (lambda x: E.coerce(x)), E.gen
    rel = relative_minpoly(a, F)
    if rel.degree == 1:
        return F, identity, -rel.constant()
    E, old_expr, root_expr = extend_field(F, rel, new_root=a, cap=cap)
    transport = lambda x: (
        E.coerce(x)
        if isinstance(x, (int, Fraction))
        else x.poly().map_coefficients(E.coerce, E)(old_expr)
    )
    return E, transport, root_expr


def primitive_element(
    gens: list[AlgebraicNumber],
    base=QQ,
    cap: int = DEFAULT_PRIMITIVE_ELEMENT_CAP,
    label=None,
):
    """Smallest field over ``base`` containing all gens.

    Returns (F, exprs): F is ``base`` itself or an absolute NumberField
    extending it, and exprs[i] is gens[i] as an element of F (a Fraction
    when F is QQ).
    """
    if not gens:
        raise ValueError("primitive_element requires at least one generator")
    F = base
    exprs: list = []
    for g in gens:
        E, transport, g_expr = adjoin(F, g, cap=cap)
        if E is not F:
            exprs = [transport(e) for e in exprs]
            F = E
        exprs.append(g_expr)
    if label is not None and isinstance(F, NumberField):
        F.label = label
    return F, exprs


# -- embeddings and tensor splitting ------------------------------------------


def embeddings(F: NumberField, B, cap=DEFAULT_FIELD_FACTOR_CAP):
    """All embeddings of F into B (both number fields)."""
    if is_rational_field(B):
        return []
    lifted = F.modulus.map_coefficients(B.coerce, B)
    _, factors = factor_over_field(lifted, cap=cap)
    out = []
    for f, _mult in factors:
        if f.degree == 1:
            out.append(FieldEmbedding(F, B, -f.constant()))
    out.sort(key=lambda e: e.image.sort_key())
    return out


def distinguished_embedding(F, B, cap=DEFAULT_FIELD_FACTOR_CAP):
    """The embedding F -> B matching the distinguished roots in Q-bar."""
    if is_rational_field(F):
        return None
    for emb in embeddings(F, B, cap=cap):
        if emb.image.algebraic() == F.root:
            return emb
    return None


def tensor_split(F, B, base=QQ, cap=DEFAULT_FIELD_FACTOR_CAP):
    """Factor fields of B tensor_base F, via the appendix splitting.

    F and B are extensions of ``base`` (QQ or a common NumberField with
    distinguished embeddings into both).  Returns the list of factor
    fields of B[T]/(P_i) where P = relative minpoly of F's generator over
    base, factored over B; relative degrees over B are recoverable as
    absolute degree divided by [B : Q].
    """
    if is_rational_field(F):
        return [B]
    if is_rational_field(B):
        return [F]
    if is_rational_field(base):
        P = F.modulus.map_coefficients(B.coerce, B)
    else:
        rel = relative_minpoly(F.root, base)
        emb = distinguished_embedding(base, B, cap=cap)
        if emb is None:
            raise MalformedInputError(
                f"{base.label} does not embed into {B.label}"
            )
        P = Polynomial([emb.apply(c) for c in rel.coeffs], B)
    _, factors = factor_over_field(P, cap=cap)
    out = []
    for f, _mult in factors:
        if f.degree == 1:
            out.append(B)
        else:
            E, _, _ = extend_field(B, f, cap=cap)
            out.append(E)
    out.sort(key=lambda K: (K.degree, K.modulus.coeffs))
    total = sum(f.degree for f, _ in factors)
    rel_deg = F.degree if is_rational_field(base) else F.degree // base.degree
    if total != rel_deg:
        raise IsolationError("tensor factor degrees do not sum correctly")
    return out
