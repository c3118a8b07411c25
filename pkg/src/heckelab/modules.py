"""Finite-dimensional modules over structure-constant algebras.

Commutants (endomorphism algebras), irreducibility with certificates,
extension of scalars, and the splitting of a base-changed module into
irreducible summands via idempotents of a commutative commutant.

Genuinely non-commutative division commutants are rejected with a typed
error rather than risking a wrong answer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    FieldMismatchError,
    MalformedInputError,
    NonCommutativeCommutantError,
)
from .linalg import (
    identity_matrix,
    in_span,
    kernel,
    mat_mul,
    mat_vec,
    matrix_minpoly,
    rank,
    reduce_vector,
    rref,
    transpose,
    zero_matrix,
)
from .numfield import (
    FieldElement,
    NumberField,
    distinguished_embedding,
    factor_over_field,
    is_rational_field,
    relative_minpoly,
)
from .poly import Polynomial, QQ, poly_xgcd
from .zfactor import factor_rational

_MAX_SEARCH = 64


def factor_poly(p: Polynomial):
    """Factor over the polynomial's own coefficient field."""
    if p.base == QQ:
        return factor_rational(p)
    return factor_over_field(p)


# -- algebras and modules ------------------------------------------------------


class FinDimAlgebra:
    """Associative unital algebra given by structure constants."""

    def __init__(self, field, structure, identity, labels=None, verify=True):
        self.field = field
        self.dim = len(structure)
        self.structure = [
            [[field.coerce(c) for c in row] for row in plane]
            for plane in structure
        ]
        self.identity = [field.coerce(c) for c in identity]
        self.labels = labels or [f"e{k}" for k in range(self.dim)]
        if verify and self.dim <= 12:
            self._verify()

    def _verify(self):
        f = self.field
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    left = self.multiply(self.structure[i][j], self._unit(k))
                    right = self.multiply(self._unit(i), self.structure[j][k])
                    if left != right:
                        raise MalformedInputError(
                            "structure constants are not associative"
                        )
        for i in range(self.dim):
            u = self._unit(i)
            if self.multiply(self.identity, u) != u or self.multiply(
                u, self.identity
            ) != u:
                raise MalformedInputError("identity vector is not an identity")

    def _unit(self, k):
        v = [self.field.zero] * self.dim
        v[k] = self.field.one
        return v

    def multiply(self, u, v):
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(u):
            if a == f.zero:
                continue
            for j, b in enumerate(v):
                if b == f.zero:
                    continue
                coeff = a * b
                plane = self.structure[i][j]
                for k in range(self.dim):
                    c = plane[k]
                    if c != f.zero:
                        out[k] = out[k] + coeff * c
        return out

    def left_regular_matrices(self):
        """Matrix of left multiplication by each basis element."""
        mats = []
        for i in range(self.dim):
            rows = zero_matrix(self.dim, self.dim, self.field)
            for j in range(self.dim):
                for k in range(self.dim):
                    rows[k][j] = self.structure[i][j][k]
            mats.append(rows)
        return mats

    def __eq__(self, other):
        return (
            isinstance(other, FinDimAlgebra)
            and self.field == other.field
            and self.structure == other.structure
            and self.identity == other.identity
        )

    def __repr__(self):
        return f"FinDimAlgebra(dim={self.dim} over {self.field!r})"

    @classmethod
    def regular_of_field(cls, F: NumberField, base=QQ, label=None):
        """The field F as a structure-constant algebra over base."""
        if is_rational_field(base):
            rel = F.modulus
            r = F.degree
            coeff_field = QQ
            tpow = Polynomial([0, 1], QQ)
        else:
            rel = relative_minpoly(F.root, base)
            r = rel.degree
            coeff_field = base
            tpow = Polynomial([base.zero, base.one], base)
        structure = []
        for i in range(r):
            plane = []
            for j in range(r):
                prod = (tpow ** (i + j)) % rel
                vec = [prod[k] for k in range(r)]
                plane.append(vec)
            structure.append(plane)
        identity = [coeff_field.one] + [coeff_field.zero] * (r - 1)
        return cls(coeff_field, structure, identity, verify=False)


class HeckeModule:
    """Module over a FinDimAlgebra, given by action matrices of the basis."""

    def __init__(self, algebra: FinDimAlgebra, mats, validate=True):
        self.algebra = algebra
        self.field = algebra.field
        self.mats = [
            [[algebra.field.coerce(c) for c in row] for row in m] for m in mats
        ]
        self.dim = len(self.mats[0]) if self.mats else 0
        if validate:
            self._validate()

    def _validate(self):
        f = self.field
        alg = self.algebra
        ident = identity_matrix(self.dim, f)
        id_action = self.act_matrix(alg.identity)
        if id_action != ident:
            raise MalformedInputError("algebra identity does not act as 1")
        for i in range(alg.dim):
            for j in range(alg.dim):
                left = mat_mul(self.mats[i], self.mats[j], f)
                right = self.act_matrix(alg.structure[i][j])
                if left != right:
                    raise MalformedInputError(
                        "action does not respect structure constants"
                    )

    def act_matrix(self, coeffs):
        f = self.field
        out = zero_matrix(self.dim, self.dim, f)
        for i, c in enumerate(coeffs):
            if c == f.zero:
                continue
            m = self.mats[i]
            for a in range(self.dim):
                row = out[a]
                ma = m[a]
                for b in range(self.dim):
                    if ma[b] != f.zero:
                        row[b] = row[b] + c * ma[b]
        return out

    def act(self, coeffs, v):
        return mat_vec(self.act_matrix(coeffs), v, self.field)

    def __repr__(self):
        return f"HeckeModule(dim={self.dim} over {self.field!r})"


def regular_module(alg: FinDimAlgebra) -> HeckeModule:
    return HeckeModule(alg, alg.left_regular_matrices(), validate=False)


# -- core matrix-level machinery ----------------------------------------------


def commutant_basis(mats, field, dim):
    """Basis of all matrices commuting with every matrix in mats."""
    if dim == 0:
        return []
    rows = []
    for m in mats:
        for a in range(dim):
            for b in range(dim):
                row = [field.zero] * (dim * dim)
                for v in range(dim):
                    row[a * dim + v] = row[a * dim + v] + m[v][b]
                for u in range(dim):
                    row[u * dim + b] = row[u * dim + b] - m[a][u]
                rows.append(row)
    basis = kernel(rows, field)
    return [[vec[i * dim : (i + 1) * dim] for i in range(dim)] for vec in basis]


def hom_basis(mats_m, mats_n, dim_m, dim_n, field):
    """Basis of X with X rho_M(a) = rho_N(a) X for all a (maps M -> N)."""
    rows = []
    for mm, mn in zip(mats_m, mats_n):
        for a in range(dim_n):
            for b in range(dim_m):
                row = [field.zero] * (dim_n * dim_m)
                # (X rho_M)[a][b] = sum_v X[a][v] rho_M[v][b]
                for v in range(dim_m):
                    row[a * dim_m + v] = row[a * dim_m + v] + mm[v][b]
                # (rho_N X)[a][b] = sum_u rho_N[a][u] X[u][b]
                for u in range(dim_n):
                    row[u * dim_m + b] = row[u * dim_m + b] - mn[a][u]
                rows.append(row)
    basis = kernel(rows, field)
    return [
        [vec[i * dim_m : (i + 1) * dim_m] for i in range(dim_n)] for vec in basis
    ]


def spin(vectors, mats, field):
    """Row-space basis of the submodule generated by the given vectors."""
    current, pivots = rref([list(v) for v in vectors], field)
    queue = list(current)
    while queue:
        v = queue.pop()
        for m in mats:
            w = mat_vec(m, v, field)
            red = reduce_vector(current, pivots, w, field)
            if any(x != field.zero for x in red):
                current, pivots = rref(current + [red], field)
                queue.append(red)
    return current


def algebra_image_basis(mats, field, dim):
    flat = [[m[i][j] for i in range(dim) for j in range(dim)] for m in mats]
    basis, _ = rref(flat, field)
    return [
        [vec[i * dim : (i + 1) * dim] for i in range(dim)] for vec in basis
    ]


def trace_form_radical(image_mats, field, dim):
    """Radical of the spanned matrix algebra: kernel of (a,b) -> tr(ab).

    Valid in characteristic zero for a multiplicatively closed span acting
    faithfully, which is how it is used here.
    """
    k = len(image_mats)
    gram = zero_matrix(k, k, field)
    for a in range(k):
        A = image_mats[a]
        for b in range(a, k):
            B = image_mats[b]
            tr = field.zero
            for i in range(dim):
                Ai = A[i]
                for j in range(dim):
                    if Ai[j] != field.zero:
                        tr = tr + Ai[j] * B[j][i]
            gram[a][b] = tr
            gram[b][a] = tr
    combos = kernel(gram, field)
    rad = []
    for combo in combos:
        m = zero_matrix(dim, dim, field)
        for c, im in zip(combo, image_mats):
            if c != field.zero:
                for i in range(dim):
                    for j in range(dim):
                        m[i][j] = m[i][j] + c * im[i][j]
        rad.append(m)
    return rad


def matrices_commute(mats, field):
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mat_mul(mats[i], mats[j], field) != mat_mul(
                mats[j], mats[i], field
            ):
                return False
    return True


def _linear_combination(mats, coeffs, field, dim):
    out = zero_matrix(dim, dim, field)
    for c, m in zip(coeffs, mats):
        if c == field.zero:
            continue
        for i in range(dim):
            for j in range(dim):
                out[i][j] = out[i][j] + c * m[i][j]
    return out


def separating_element(comm_mats, field, dim):
    """Element of a commutative semisimple commutant generating it.

    Deterministic search over b_1 + c*b_2 + c^2*b_3 + ...; returns
    (matrix, its minimal polynomial of degree == len(comm_mats)).
    """
    k = len(comm_mats)
    for c in range(1, _MAX_SEARCH):
        coeffs = []
        acc = field.one
        for _ in range(k):
            coeffs.append(acc)
            acc = acc * field.coerce(c)
        e = _linear_combination(comm_mats, coeffs, field, dim)
        mu = matrix_minpoly(e, field)
        if mu.degree == k:
            return e, mu
    raise NonCommutativeCommutantError(
        "no separating element found in commutant"
    )


def matrix_poly_eval(p: Polynomial, M, field, dim):
    acc = zero_matrix(dim, dim, field)
    for c in reversed(p.coeffs):
        acc = mat_mul(acc, M, field)
        if c != field.zero:
            for i in range(dim):
                acc[i][i] = acc[i][i] + c
    return acc


def column_space_basis(M, field):
    return rref(transpose(M), field)[0]


def is_irreducible_mats(mats, field, dim):
    """Certified irreducibility of the module defined by mats.

    mats must span a multiplicatively closed space (images of an algebra
    basis, or of all elements of a group).  Returns (bool, witness): the
    witness holds a proper submodule basis when reducible, or spinning and
    commutant certificates when irreducible.
    """
    if dim == 0:
        raise MalformedInputError("zero module")
    if dim == 1:
        return True, {"certificate": "dimension one"}
    image = algebra_image_basis(mats, field, dim)
    rad = trace_form_radical(image, field, dim)
    if rad:
        vecs = []
        for r in rad:
            vecs.extend(transpose(r))
        sub, _ = rref(vecs, field)
        if 0 < len(sub) < dim:
            return False, {"submodule": sub, "certificate": "radical"}
        raise MalformedInputError("radical acts degenerately (internal)")
    comm = commutant_basis(mats, field, dim)
    if len(comm) == 1:
        return True, {
            "certificate": "scalar commutant",
            "all_basis_spin": _basis_spin_certificate(mats, field, dim),
        }
    if matrices_commute(comm, field):
        e, mu = separating_element(comm, field, dim)
        _, factors = factor_poly(mu)
        if len(factors) == 1 and factors[0][1] == 1:
            return True, {
                "certificate": "field commutant",
                "commutant_degree": len(comm),
                "all_basis_spin": _basis_spin_certificate(mats, field, dim),
            }
        f0 = factors[0][0]
        proj = _crt_idempotent(mu, f0, e, field, dim)
        sub = column_space_basis(proj, field)
        if not (0 < len(sub) < dim):
            raise MalformedInputError("idempotent image degenerate (internal)")
        return False, {"submodule": sub, "certificate": "commutant idempotent"}
    # non-commutative commutant: hunt for a singular element; its kernel is
    # a proper submodule.  If everything found is invertible this is a
    # division algebra beyond desk scale.
    for m in comm:
        mu = matrix_minpoly(m, field)
        _, factors = factor_poly(mu)
        if len(factors) > 1 or factors[0][1] > 1:
            f0 = factors[0][0]
            s = matrix_poly_eval(f0, m, field, dim)
            ker = kernel(s, field)
            if 0 < len(ker) < dim:
                sub = spin(ker, mats, field)
                if len(sub) < dim:
                    return False, {
                        "submodule": sub,
                        "certificate": "singular endomorphism kernel",
                    }
    raise NonCommutativeCommutantError(
        "commutant is a non-commutative division algebra: beyond desk scale"
    )


def _unit_vec(i, dim, field):
    v = [field.zero] * dim
    v[i] = field.one
    return v


def _basis_spin_certificate(mats, field, dim):
    # every basis vector generates; skip the (redundant) check at sizes
    # where it gets expensive
    if dim > 12:
        return None
    return all(
        len(spin([_unit_vec(i, dim, field)], mats, field)) == dim
        for i in range(dim)
    )


def _crt_idempotent(mu: Polynomial, f: Polynomial, e_matrix, field, dim):
    """Projector onto the f-isotypic part, as a polynomial in e."""
    g = mu // f
    gcd, s, _ = poly_xgcd(g, f)
    if gcd.degree != 0:
        raise MalformedInputError("minimal polynomial not squarefree")
    w = (g * s * (field.one / gcd.constant())) % mu
    return matrix_poly_eval(w, e_matrix, field, dim)


# -- public module operations ---------------------------------------------------


class Commutant:
    """Endomorphism algebra of a module, with its matrix basis."""

    def __init__(self, module, basis):
        self.module = module
        self.basis = basis
        self.dim = len(basis)
        field = module.field
        flat = [
            [m[i][j] for i in range(module.dim) for j in range(module.dim)]
            for m in basis
        ]
        span, pivots = rref(flat, field)
        ident = identity_matrix(module.dim, field)
        if not in_span(
            span, pivots, [ident[i][j] for i in range(module.dim) for j in range(module.dim)], field
        ):
            raise MalformedInputError("commutant misses the identity (internal)")
        for a in basis:
            for b in basis:
                prod = mat_mul(a, b, field)
                v = [prod[i][j] for i in range(module.dim) for j in range(module.dim)]
                if not in_span(span, pivots, v, field):
                    raise MalformedInputError(
                        "commutant not closed under multiplication (internal)"
                    )

    def is_commutative(self):
        return matrices_commute(self.basis, self.module.field)

    def __repr__(self):
        return f"Commutant(dim={self.dim})"


def commutant(module: HeckeModule) -> Commutant:
    basis = commutant_basis(module.mats, module.field, module.dim)
    return Commutant(module, basis)


def is_irreducible(module: HeckeModule):
    return is_irreducible_mats(module.mats, module.field, module.dim)


def hom_space(M: HeckeModule, N: HeckeModule):
    """Basis of intertwiners M -> N over the common algebra."""
    if M.algebra is not N.algebra and M.algebra != N.algebra:
        raise FieldMismatchError(
            "hom_space requires modules over the same algebra"
        )
    return hom_basis(M.mats, N.mats, M.dim, N.dim, M.field)


def modules_isomorphic(M: HeckeModule, N: HeckeModule) -> bool:
    if M.dim != N.dim:
        return False
    from .linalg import inverse as mat_inverse

    for h in hom_basis(M.mats, N.mats, M.dim, N.dim, M.field):
        if mat_inverse(h, M.field) is not None:
            return True
    return False


def base_change_algebra(alg: FinDimAlgebra, B, embedding=None) -> FinDimAlgebra:
    conv = _coefficient_map(alg.field, B, embedding)
    structure = [
        [[conv(c) for c in row] for row in plane] for plane in alg.structure
    ]
    identity = [conv(c) for c in alg.identity]
    return FinDimAlgebra(B, structure, identity, labels=alg.labels, verify=False)


def _coefficient_map(A, B, embedding=None):
    if is_rational_field(A):
        if is_rational_field(B):
            return lambda c: c
        return lambda c: B.coerce(c)
    if embedding is None:
        embedding = distinguished_embedding(A, B)
        if embedding is None:
            raise MalformedInputError(
                f"no distinguished embedding of {A!r} into {B!r}"
            )
    if embedding.source != A or embedding.target != B:
        raise FieldMismatchError("embedding does not match the base change")
    return embedding.apply


def base_change(module: HeckeModule, B, embedding=None, new_algebra=None):
    """Extend scalars of a module along A -> B; dimension is unchanged."""
    conv = _coefficient_map(module.field, B, embedding)
    alg_b = new_algebra or base_change_algebra(module.algebra, B, embedding)
    mats = [[[conv(c) for c in row] for row in m] for m in module.mats]
    return HeckeModule(alg_b, mats, validate=False)


class Decomposition:
    """Splitting of a module into irreducible summands."""

    def __init__(self, module, summands):
        self.module = module
        self.summands = summands  # list of (HeckeModule, embedding matrix)
        field = module.field
        cols = []
        for _, emb in summands:
            cols.extend(transpose(emb))
        from .linalg import inverse as mat_inverse

        U = transpose(cols)
        if len(cols) != module.dim or mat_inverse(U, field) is None:
            raise MalformedInputError(
                "summand embeddings do not reassemble the module"
            )
        self.change_of_basis = U
        self.iso_classes = self._group_by_iso()

    def _group_by_iso(self):
        classes: list[list[int]] = []
        for idx, (summand, _) in enumerate(self.summands):
            placed = False
            for cls in classes:
                if modules_isomorphic(self.summands[cls[0]][0], summand):
                    cls.append(idx)
                    placed = True
                    break
            if not placed:
                classes.append([idx])
        return classes

    @property
    def multiplicities(self):
        return [len(cls) for cls in self.iso_classes]

    def __len__(self):
        return len(self.summands)

    def __repr__(self):
        dims = [s.dim for s, _ in self.summands]
        return f"Decomposition(dims={dims}, multiplicities={self.multiplicities})"


def split_semisimple(module: HeckeModule, check_semisimple=True) -> Decomposition:
    """Split into irreducible summands via commutant idempotents.

    Requires the commutant to be commutative (true whenever the module is
    the base change of an irreducible whose endomorphism algebra is a
    field); raises NonCommutativeCommutantError otherwise.
    """
    field = module.field
    dim = module.dim
    if check_semisimple:
        image = algebra_image_basis(module.mats, field, dim)
        if trace_form_radical(image, field, dim):
            raise MalformedInputError("module is not semisimple")
    comm = commutant_basis(module.mats, field, dim)
    if len(comm) == 1:
        emb = identity_matrix(dim, field)
        return Decomposition(module, [(module, emb)])
    if not matrices_commute(comm, field):
        raise NonCommutativeCommutantError(
            "commutant is non-commutative: beyond desk scale"
        )
    e, mu = separating_element(comm, field, dim)
    _, factors = factor_poly(mu)
    summands = []
    for f, mult in factors:
        if mult != 1:
            raise MalformedInputError("separating minpoly not squarefree")
        proj = _crt_idempotent(mu, f, e, field, dim)
        basis = column_space_basis(proj, field)
        sub_mats, emb = submodule_action(module.mats, basis, field)
        sub = HeckeModule(module.algebra, sub_mats, validate=False)
        summands.append((sub, emb))
    summands.sort(key=lambda t: (t[0].dim, _matrix_sort_key(t[1])))
    return Decomposition(module, summands)


def _matrix_sort_key(m):
    def elem_key(x):
        return x.rep if isinstance(x, FieldElement) else x

    return tuple(tuple(elem_key(x) for x in row) for row in m)


def submodule_action(mats, basis_rows, field):
    """Action on the span of basis_rows; returns (small mats, embedding).

    The embedding matrix has the basis vectors as columns.
    """
    basis, pivots = rref(basis_rows, field)
    k = len(basis)
    small = []
    for m in mats:
        cols = []
        for b in basis:
            w = mat_vec(m, b, field)
            coords = _coords_in_rref(basis, pivots, w, field)
            if coords is None:
                raise MalformedInputError("rows do not span a submodule")
            cols.append(coords)
        small.append(transpose(cols))
    emb = transpose(basis)
    return small, emb


def _coords_in_rref(basis, pivots, w, field):
    coords = [w[c] for c in pivots]
    recon = [field.zero] * len(w)
    for x, row in zip(coords, basis):
        if x != field.zero:
            for j in range(len(w)):
                recon[j] = recon[j] + x * row[j]
    if recon != list(w):
        return None
    return coords


def quotient_action(mats, sub_rows, field, dim):
    """Action on V / span(sub_rows); returns (small mats, projection).

    The projection matrix maps old coordinates to quotient coordinates.
    """
    sub, pivots = rref(sub_rows, field)
    free = [c for c in range(dim) if c not in pivots]
    proj_rows = []
    for v_idx in range(dim):
        e = _unit_vec(v_idx, dim, field)
        red = reduce_vector(sub, pivots, e, field)
        proj_rows.append([red[c] for c in free])
    proj = transpose(proj_rows)  # len(free) x dim
    small = []
    for m in mats:
        cols = []
        for c in free:
            w = mat_vec(m, _unit_vec(c, dim, field), field)
            red = reduce_vector(sub, pivots, w, field)
            cols.append([red[fc] for fc in free])
        small.append(transpose(cols))
    return small, proj


def annihilator(module: HeckeModule, v):
    """Basis of {a in the algebra: a.v = 0} as coefficient vectors."""
    field = module.field
    cols = []
    for i in range(module.algebra.dim):
        coeffs = [field.zero] * module.algebra.dim
        coeffs[i] = field.one
        cols.append(module.act(coeffs, v))
    return kernel(transpose(cols), field)
