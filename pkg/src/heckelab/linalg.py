"""Exact dense linear algebra over the toolkit's coefficient fields.

Matrices are lists of row lists; entries are Fractions (over QQ) or
FieldElements (over a NumberField).  The ``field`` argument supplies
``zero`` and ``one``.  Everything returns fresh objects.
"""

from __future__ import annotations

from .poly import Polynomial


def zero_matrix(r, c, field):
    return [[field.zero for _ in range(c)] for _ in range(r)]


def identity_matrix(n, field):
    out = zero_matrix(n, n, field)
    for i in range(n):
        out[i][i] = field.one
    return out


def mat_mul(A, B, field):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = zero_matrix(rows, cols, field)
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a == field.zero:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(cols):
                row[j] = row[j] + a * Bk[j]
    return out

def mat_vec(A, v, field):
    out = []
    for row in A:
        acc = field.zero
        for a, x in zip(row, v):
            if a != field.zero and x != field.zero:
                acc = acc + a * x
        out.append(acc)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def rref(rows, field):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != field.zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def row_space(rows, field):
    return rref(rows, field)[0]


def rank(rows, field):
    return len(rref(rows, field)[0])


def reduce_vector(rref_rows, pivots, v, field):
    v = list(v)
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        if f != field.zero:
            v = [x - f * y for x, y in zip(v, row)]
    return v


def in_span(rref_rows, pivots, v, field):
    return all(x == field.zero for x in reduce_vector(rref_rows, pivots, v, field))


def span_equal(A, B, field):
    ra, pa = rref(A, field)
    rb, pb = rref(B, field)
    return ra == rb and pa == pb


def subspace_intersection(rows1, rows2, field):
    """Basis of the intersection of two row spaces."""
    b1, _ = rref(rows1, field)
    b2, _ = rref(rows2, field)
    if not b1 or not b2:
        return []
    k1 = len(b1)
    stacked = transpose(b1 + [[-x for x in row] for row in b2])
    out = []
    for sol in kernel(stacked, field):
        vec = [field.zero] * len(b1[0])
        for c, row in zip(sol[:k1], b1):
            if c != field.zero:
                vec = [v + c * r for v, r in zip(vec, row)]
        out.append(vec)
    return rref(out, field)[0]


def kernel(A, field):
    """Basis of the right kernel of A (solutions of A x = 0)."""
    if not A:
        return []
    ncols = len(A[0])
    R, pivots = rref(A, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(A, b, field):
    """One solution of A x = b, or None if inconsistent."""
    if not A:
        return None
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, field)
    for row, c in zip(R, pivots):
        if c == ncols:
            return None
    x = [field.zero] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    return x


def inverse(A, field):
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity_matrix(n, field))]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def is_invertible(A, field):
    return inverse(A, field) is not None


def flatten(A):
    return [x for row in A for x in row]


def unflatten(v, r, c):
    return [list(v[i * c : (i + 1) * c]) for i in range(r)]


def matrix_minpoly(M, field) -> Polynomial:
    """Minimal polynomial of a square matrix over its field."""
    n = len(M)
    power = identity_matrix(n, field)
    vecs = [flatten(power)]
    while True:
        power = mat_mul(power, M, field)
        vecs.append(flatten(power))
        dep = kernel(transpose(vecs), field)
        if dep:
            coeffs = dep[0]
            # normalize so the highest power has coefficient one
            top = len(coeffs) - 1
            while coeffs[top] == field.zero:
                top -= 1
            inv = field.one / coeffs[top]
            return Polynomial([c * inv for c in coeffs[: top + 1]], field)
