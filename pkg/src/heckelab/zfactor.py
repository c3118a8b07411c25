"""Polynomial factorization over Q.

Pipeline: Yun squarefree decomposition, distinct-degree factorization at
several small odd primes (with a degree-pattern irreducibility shortcut),
deterministic equal-degree splitting, quadratic Hensel lifting to a
Landau-Mignotte bound, and Zassenhaus subset recombination with a
constant-term divisibility prefilter.

Integer and mod-p polynomials are plain coefficient lists (lowest degree
first) to keep the modular inner loops cheap.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import combinations

from .config import DEFAULT_Q_FACTOR_CAP
from .errors import DegreeCapError
from .poly import Polynomial, QQ, squarefree_decomposition

_SMALL_ODD_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
)

_cache_lock = threading.Lock()
_factor_cache: dict[tuple, tuple] = {}


# -- integer / mod-p coefficient-list helpers --------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zdivmod_monic(a, b):
    """Exact division of integer polys; b monic."""
    rem = list(a)
    dq = len(rem) - len(b)
    if dq < 0:
        return [], _trim(rem)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(b) - 1]
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return _trim(quo), _trim(rem)


def _pmod(a, p):
    return _trim([c % p for c in a])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else 0
        y = b[k] if k < len(b) else 0
        out.append((x - y) % p)
    return _trim(out)


def _padd(a, b, p):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else 0
        y = b[k] if k < len(b) else 0
        out.append((x + y) % p)
    return _trim(out)


def _pmonic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], -1, p)
    return _trim([c * inv % p for c in a])


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("mod-p polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    dq = len(rem) - len(b)
    if dq < 0:
        return [], _trim(rem)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return _trim(quo), _trim(rem)


def _pgcd(a, b, p):
    a, b = _pmod(a, p), _pmod(b, p)
    while b:
        _, r = _pdivmod(a, b, p)
        a, b = b, r
    return _pmonic(a, p)


def _pxgcd(a, b, p):
    """Extended gcd mod p; returns (g, s, t) with g monic."""
    r0, r1 = _pmod(a, p), _pmod(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    scale = lambda u: _trim([c * inv % p for c in u])
    return scale(r0), scale(s0), scale(t0)


def _ppow_mod(a, e, f, p):
    result = [1]
    base = _pdivmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), f, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), f, p)[1]
    return result


def _pderiv(a, p):
    return _trim([k * c % p for k, c in enumerate(a)][1:])


# -- modular factorization ----------------------------------------------------


def _distinct_degree(f, p):
    """f monic squarefree mod p -> list of (product, degree)."""
    out = []
    w = [0, 1]
    d = 0
    rem = list(f)
    while len(rem) - 1 > 2 * d:
        d += 1
        w = _ppow_mod(w, p, rem, p)
        g = _pgcd(_psub(w, [0, 1], p), rem, p)
        if len(g) > 1:
            out.append((g, d))
            rem, _ = _pdivmod(rem, g, p)
            w = _pdivmod(w, rem, p)[1]
    if len(rem) > 1:
        out.append((rem, len(rem) - 1))
    return out


def _equal_degree(f, d, p):
    """Split f (product of irreducibles of degree d) into its factors.

    Cantor-Zassenhaus with a deterministic trial sequence: candidate
    polynomials are enumerated by counting in base p.
    """
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p ** d - 1) // 2
    trial = 1
    while True:
        trial += 1
        digits, t = [], trial
        while t:
            t, r = divmod(t, p)
            digits.append(r)
        a = _trim(digits)
        if len(a) - 1 >= n or len(a) <= 1:
            continue
        r = _ppow_mod(a, exponent, f, p)
        r = _psub(r, [1], p)
        g = _pgcd(r, f, p)
        if 1 < len(g) < len(f):
            rest, _ = _pdivmod(f, g, p)
            return _equal_degree(g, d, p) + _equal_degree(rest, d, p)


def _factor_mod_p(f, p):
    out = []
    for prod, d in _distinct_degree(f, p):
        out.extend(_equal_degree(prod, d, p))
    out.sort(key=lambda g: (len(g), g))
    return out


# -- Hensel lifting -----------------------------------------------------------


def _hensel_step(f, g, h, s, t, m):
    """One quadratic step: mod m -> mod m^2 (all polys monic, f over Z)."""
    m2 = m * m
    mod = lambda a: _trim([c % m2 for c in a])
    e = mod(_psub(_pmod(f, m2), _pmul(g, h, m2), m2))
    q, r = _pdivmod(_pmul(s, e, m2), h, m2)
    g1 = mod(_padd(_padd(g, _pmul(t, e, m2), m2), _pmul(q, g, m2), m2))
    h1 = mod(_padd(h, r, m2))
    b = mod(
        _psub(
            _padd(_pmul(s, g1, m2), _pmul(t, h1, m2), m2), [1], m2
        )
    )
    c, d = _pdivmod(_pmul(s, b, m2), h1, m2)
    s1 = mod(_psub(s, d, m2))
    t1 = mod(_psub(_psub(t, _pmul(t, b, m2), m2), _pmul(c, g1, m2), m2))
    return g1, h1, s1, t1


def _hensel_pair(f, g0, h0, p, target):
    """Lift f = g0*h0 (mod p) to mod p^k >= target; returns (g, h, p^k)."""
    _, s, t = _pxgcd(g0, h0, p)
    g, h = list(g0), list(h0)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    return g, h, m


def _hensel_tree(f, factors, p, target):
    """Lift a full modular factorization of monic f to modulus >= target."""
    if len(factors) == 1:
        m = p
        while m < target:
            m = m * m
        return [_pmod(f, m)], m
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g0 = [1]
    for u in left:
        g0 = _pmul(g0, u, p)
    h0 = [1]
    for u in right:
        h0 = _pmul(h0, u, p)
    g, h, m = _hensel_pair(f, g0, h0, p, target)
    lifted_left, _ = _hensel_tree(g, left, p, target)
    lifted_right, _ = _hensel_tree(h, right, p, target)
    return lifted_left + lifted_right, m


# -- recombination ------------------------------------------------------------


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _mignotte_target(f):
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    n = len(f) - 1
    return 2 * (2 ** n) * norm2 + 1


def _recombine(f, lifted, m):
    """Zassenhaus subset search; f monic squarefree over Z."""
    factors = list(lifted)
    g = list(f)
    out = []
    r = 1
    while 2 * r <= len(factors):
        found = False
        g0 = g[0]
        for subset in combinations(range(len(factors)), r):
            c = 1
            for i in subset:
                c = c * factors[i][0] % m
            c = _symmetric(c, m)
            if c == 0:
                if g0 != 0:
                    continue
            elif g0 % c != 0:
                continue
            cand = [1]
            for i in subset:
                cand = [x % m for x in _zmul(cand, factors[i])]
            cand = _trim([_symmetric(x, m) for x in cand])
            if not cand or cand[-1] != 1:
                continue
            quo, rem = _zdivmod_monic(g, cand)
            if rem:
                continue
            out.append(cand)
            factors = [u for k, u in enumerate(factors) if k not in subset]
            g = quo
            found = True
            break
        if not found:
            r += 1
    if len(g) > 1:
        out.append(g)
    return out


# -- top level ----------------------------------------------------------------


def _possible_degree_sums(degree_multiset, n):
    ok = 1  # bitset over 0..n
    for d in degree_multiset:
        ok |= ok << d
    return {k for k in range(n + 1) if (ok >> k) & 1}


def _factor_monic_int_squarefree(f):
    """Factor a monic squarefree integer polynomial into monic int polys."""
    n = len(f) - 1
    if n <= 1:
        return [list(f)]
    fp_data = []
    for p in _SMALL_ODD_PRIMES:
        fp = _pmod(f, p)
        if len(fp) != len(f):
            continue
        if len(_pgcd(fp, _pderiv(fp, p), p)) != 1:
            continue
        ddf = _distinct_degree(_pmonic(fp, p), p)
        degs = []
        for prod, d in ddf:
            degs.extend([d] * ((len(prod) - 1) // d))
        fp_data.append((p, degs))
        if len(fp_data) >= 4:
            break
    if not fp_data:
        raise ArithmeticError("no usable prime found (should not happen)")
    allowed = set(range(n + 1))
    for _, degs in fp_data:
        allowed &= _possible_degree_sums(degs, n)
    if allowed <= {0, n}:
        return [list(f)]
    p, _ = min(fp_data, key=lambda t: (len(t[1]), t[0]))
    modular = _factor_mod_p(_pmonic(_pmod(f, p), p), p)
    target = _mignotte_target(f)
    lifted, m = _hensel_tree(f, modular, p, target)
    return _recombine(f, lifted, m)


def _int_content_and_primitive(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g == 0:
        return 0, []
    if coeffs[-1] < 0:
        g = -g
    return g, [c // g for c in coeffs]


def _factor_squarefree_rational(g: Polynomial):
    """Monic squarefree rational poly -> sorted monic irreducible factors."""
    if g.degree == 1:
        return [g]
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in g.coeffs]
    _, prim = _int_content_and_primitive(ints)
    lc = prim[-1]
    if lc != 1:
        # monicize: h(x) = lc^(n-1) * prim(x/lc) is monic over Z
        n = len(prim) - 1
        h = [prim[k] * lc ** (n - 1 - k) for k in range(n)] + [1]
        int_factors = _factor_monic_int_squarefree(h)
        out = []
        for fac in int_factors:
            poly = Polynomial([Fraction(c) for c in fac], QQ)
            out.append(poly.scale_variable(Fraction(lc)).monic())
        return sorted(out, key=lambda q: (q.degree, q.coeffs))
    int_factors = _factor_monic_int_squarefree(prim)
    out = [Polynomial([Fraction(c) for c in fac], QQ) for fac in int_factors]
    return sorted(out, key=lambda q: (q.degree, q.coeffs))


def factor_rational(p: Polynomial, cap: int | None = None):
    """Factor p over Q.

    Returns (lead, [(monic irreducible, multiplicity)]) with
    lead * prod(factor^mult) == p, factors sorted and pairwise distinct.
    ``cap`` bounds the input degree; None skips the check (internal use by
    operations that carry their own budget).
    """
    if p.base != QQ:
        raise TypeError("factor_rational expects a polynomial over Q")
    if cap is not None and p.degree > cap:
        raise DegreeCapError(
            f"degree {p.degree} exceeds factorization cap {cap}"
        )
    key = p.coeffs
    with _cache_lock:
        hit = _factor_cache.get(key)
    if hit is not None:
        return hit
    lead, squarefree = squarefree_decomposition(p)
    factors = []
    for g, mult in squarefree:
        for f in _factor_squarefree_rational(g):
            factors.append((f, mult))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    result = (lead, factors)
    with _cache_lock:
        _factor_cache[key] = result
    return result


def factor_over_Q(p: Polynomial, cap: int = DEFAULT_Q_FACTOR_CAP):
    """Public factorization over Q with the configured degree cap."""
    if p.degree < 1:
        raise ValueError("factor_over_Q requires degree >= 1")
    return factor_rational(p, cap=cap)


def is_irreducible_over_Q(p: Polynomial, cap: int | None = None) -> bool:
    if p.degree < 1:
        return False
    _, factors = factor_rational(p, cap=cap)
    return len(factors) == 1 and factors[0][1] == 1 and (
        factors[0][0].degree == p.degree
    )
