"""Hecke algebras of finite groups and the module constructions over them.

For a finite group G with subgroup L and a Haar measure, the bi-invariant
functions form an algebra under convolution with basis indexed by double
cosets LxL.  Structure constants come from

    1_{xL} * 1_{yL} = sum_z M(x, y, z) vol(L n yLy^-1) 1_{zL},

supported exactly where x^-1 z lies in LyL, with M = 1 on the support;
sums of these over right-coset decompositions give the double-coset
products.  A brute-force convolution over the full function space serves
as an independent oracle.

From a maximal proper left ideal I of the double-coset algebra, the
smooth-module constructions realize the induced world: W(I, L) is the
quotient of the right-L-invariant functions by the left ideal generated by
I, it has a unique maximal proper submodule (cut out by the radical of the
acting algebra), and the irreducible quotient V(I, L) has L-invariants
isomorphic to (algebra mod I).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IdealError, MalformedInputError, OracleMismatchError
from .groups import FiniteGroup, HaarMeasure, Subgroup
from .linalg import (
    identity_matrix,
    in_span,
    inverse as mat_inverse,
    kernel,
    mat_mul,
    mat_vec,
    rank,
    reduce_vector,
    rref,
    transpose,
    zero_matrix,
)
from .modules import (
    FinDimAlgebra,
    HeckeModule,
    algebra_image_basis,
    hom_basis,
    is_irreducible_mats,
    quotient_action,
    regular_module,
    submodule_action,
    trace_form_radical,
)
from .poly import QQ


# -- double cosets and convolution ----------------------------------------------


class DoubleCosetBasis:
    """The partition of G into double cosets LxL, canonical representatives."""

    def __init__(self, group: FiniteGroup, subgroup: Subgroup):
        n = group.order
        assignment = [-1] * n
        reps = []
        members = []
        for x in range(n):
            if assignment[x] >= 0:
                continue
            coset = set()
            for l1 in subgroup.elements:
                l1x = group.multiply(l1, x)
                for l2 in subgroup.elements:
                    coset.add(group.multiply(l1x, l2))
            rep = min(coset)
            idx = len(reps)
            reps.append(rep)
            members.append(tuple(sorted(coset)))
            for g in coset:
                assignment[g] = idx
        self.group = group
        self.subgroup = subgroup
        self.representatives = reps
        self.members = members
        self.assignment = assignment

    @property
    def size(self):
        return len(self.representatives)

    def coset_of(self, g: int) -> int:
        return self.assignment[g]


def double_cosets(group: FiniteGroup, subgroup: Subgroup) -> DoubleCosetBasis:
    return DoubleCosetBasis(group, subgroup)


def right_coset_reps(group: FiniteGroup, subgroup: Subgroup):
    """rep[g] = min of gL, plus the sorted list of distinct reps."""
    rep = [-1] * group.order
    reps = []
    for g in range(group.order):
        if rep[g] >= 0:
            continue
        coset = sorted(group.multiply(g, l) for l in subgroup.elements)
        r = coset[0]
        reps.append(r)
        for h in coset:
            rep[h] = r
    return rep, sorted(reps)


def subgroup_intersection_conjugate(group, subgroup, y):
    """Elements of L n yLy^-1."""
    y_inv = group.inverse(y)
    out = []
    for l in subgroup.elements:
        if group.multiply(group.multiply(y_inv, l), y) in subgroup:
            out.append(l)
    return out


def m_count(group, subgroup, x, y, z) -> int:
    """The multiplicity M(x, y, z): right cosets of L n yLy^-1 in Lx^-1z n yL."""
    x_inv = group.inverse(x)
    lset = set()
    for l in subgroup.elements:
        lset.add(group.multiply(group.multiply(l, x_inv), z))
    yl = set(group.multiply(y, l) for l in subgroup.elements)
    inter = lset & yl
    denom = len(subgroup_intersection_conjugate(group, subgroup, y))
    if len(inter) % denom != 0:
        raise OracleMismatchError("M(x,y,z) is not an integer (internal)")
    return len(inter) // denom


def convolve_cosets(x, y, subgroup: Subgroup, measure: HaarMeasure):
    """1_{xL} * 1_{yL} as {right-coset rep: coefficient}.

    The support is the set of right cosets zL inside xLyL, each with the
    same coefficient vol(L n yLy^-1).
    """
    group = subgroup.group
    vol = measure.volume(subgroup_intersection_conjugate(group, subgroup, y))
    rep, _ = right_coset_reps(group, subgroup)
    support = set()
    for l in subgroup.elements:
        xl = group.multiply(x, l)
        support.add(rep[group.multiply(xl, y)])
    return {z: vol for z in sorted(support)}


def brute_convolve(f, g, group: FiniteGroup, measure: HaarMeasure):
    """(f*g)(z) = sum_t f(z t^-1) g(t) times the point mass; full oracle."""
    n = group.order
    pm = measure.point_mass
    out = [Fraction(0)] * n
    for t in range(n):
        gt = g[t]
        if gt == 0:
            continue
        t_inv = group.inverse(t)
        for z in range(n):
            fz = f[group.multiply(z, t_inv)]
            if fz != 0:
                out[z] += fz * gt * pm
    return out


# -- the double-coset algebra ----------------------------------------------------


class HeckeElement:
    """Element of a HeckeAlgebra: coefficients over the double-coset basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(
            self, "coeffs", tuple(algebra.field.coerce(c) for c in coeffs)
        )

    def __setattr__(self, *_):
        raise AttributeError("HeckeElement is immutable")

    def __add__(self, other):
        self._check(other)
        return HeckeElement(
            self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return HeckeElement(
            self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return HeckeElement(self.algebra, [-a for a in self.coeffs])

    def __rmul__(self, scalar):
        c = self.algebra.field.coerce(scalar)
        return HeckeElement(self.algebra, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return HeckeElement(
                self.algebra,
                [a * self.algebra.field.coerce(other) for a in self.coeffs],
            )
        self._check(other)
        return HeckeElement(
            self.algebra, self.algebra.multiply(self.coeffs, other.coeffs)
        )

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise MalformedInputError("elements of different Hecke algebras")

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coeffs))

    def __repr__(self):
        alg = self.algebra
        terms = [
            f"{c} * [{alg.group.labels[alg.basis.representatives[k]]}]"
            for k, c in enumerate(self.coeffs)
            if c != alg.field.zero
        ]
        return " + ".join(terms) if terms else "0"


class HeckeAlgebra:
    """H(G, L, A): double-coset basis with convolution structure constants."""

    def __init__(self, group, subgroup, measure, field=QQ, verify=True):
        self.group = group
        self.subgroup = subgroup
        self.measure = measure
        self.field = field
        self.basis = DoubleCosetBasis(group, subgroup)
        self.dim = self.basis.size
        rep, reps = right_coset_reps(group, subgroup)
        self._rc_rep = rep
        self._rc_reps = reps
        vol_l = measure.volume(subgroup)
        # identity: eps_L = 1_L / vol(L); the double coset of e is L itself
        eps_idx = self.basis.coset_of(0)
        self.identity_coeffs = tuple(
            field.coerce(1 / vol_l) if k == eps_idx else field.zero
            for k in range(self.dim)
        )
        self.structure = self._structure_constants()
        if verify:
            self._verify()

    def _structure_constants(self):
        group, sub, field = self.group, self.subgroup, self.field
        reps_by_coset = []
        for members in self.basis.members:
            reps_by_coset.append(sorted({self._rc_rep[g] for g in members}))
        vol_cache = {}
        table = []
        for i in range(self.dim):
            plane = []
            for j in range(self.dim):
                acc: dict[int, Fraction] = {}
                for b in reps_by_coset[j]:
                    if b not in vol_cache:
                        vol_cache[b] = self.measure.volume(
                            subgroup_intersection_conjugate(group, sub, b)
                        )
                    vol = vol_cache[b]
                    for a in reps_by_coset[i]:
                        support = {
                            self._rc_rep[
                                group.multiply(group.multiply(a, l), b)
                            ]
                            for l in sub.elements
                        }
                        for z in support:
                            acc[z] = acc.get(z, Fraction(0)) + vol
                vec = [field.zero] * self.dim
                for k in range(self.dim):
                    x_k = self.basis.representatives[k]
                    val = acc.get(self._rc_rep[x_k], Fraction(0))
                    vec[k] = field.coerce(val)
                plane.append(vec)
            table.append(plane)
        return table

    def _verify(self):
        ident = self.identity_coeffs
        for k in range(self.dim):
            unit = self.unit(k).coeffs
            if self.multiply(ident, unit) != list(unit) or self.multiply(
                unit, ident
            ) != list(unit):
                raise OracleMismatchError("eps_L is not a two-sided identity")
        if self.dim <= 12:
            for i in range(self.dim):
                for j in range(self.dim):
                    ij = self.multiply(self.unit(i).coeffs, self.unit(j).coeffs)
                    for k in range(self.dim):
                        left = self.multiply(ij, self.unit(k).coeffs)
                        jk = self.multiply(
                            self.unit(j).coeffs, self.unit(k).coeffs
                        )
                        right = self.multiply(self.unit(i).coeffs, jk)
                        if left != right:
                            raise OracleMismatchError(
                                "Hecke structure constants not associative"
                            )

    def unit(self, k) -> HeckeElement:
        coeffs = [self.field.zero] * self.dim
        coeffs[k] = self.field.one
        return HeckeElement(self, coeffs)

    def eps(self) -> HeckeElement:
        return HeckeElement(self, self.identity_coeffs)

    def element(self, coeffs) -> HeckeElement:
        if len(coeffs) != self.dim:
            raise MalformedInputError("coefficient vector of wrong length")
        return HeckeElement(self, coeffs)

    def multiply(self, u, v):
        field = self.field
        out = [field.zero] * self.dim
        for i, a in enumerate(u):
            if a == field.zero:
                continue
            for j, b in enumerate(v):
                if b == field.zero:
                    continue
                coeff = a * b
                plane = self.structure[i][j]
                for k in range(self.dim):
                    if plane[k] != field.zero:
                        out[k] = out[k] + coeff * plane[k]
        return out

    def as_findim_algebra(self) -> FinDimAlgebra:
        return FinDimAlgebra(
            self.field,
            self.structure,
            list(self.identity_coeffs),
            labels=[
                f"[{self.group.labels[r]}]" for r in self.basis.representatives
            ],
            verify=False,
        )

    def function_vector(self, coeffs):
        """The function on G underlying sum_k coeffs[k] 1_{Lx_kL}."""
        out = [self.field.zero] * self.group.order
        for g in range(self.group.order):
            out[g] = coeffs[self.basis.coset_of(g)]
        return out

    def coefficients_of_function(self, values):
        """Read double-coset coefficients off a bi-invariant function."""
        coeffs = []
        for k, rep in enumerate(self.basis.representatives):
            coeffs.append(values[rep])
            for g in self.basis.members[k]:
                if values[g] != values[rep]:
                    raise MalformedInputError("function is not bi-invariant")
        return coeffs

    def __repr__(self):
        return (
            f"HeckeAlgebra({self.group.name}, L of order "
            f"{self.subgroup.order}, dim={self.dim})"
        )


def build_hecke(group, subgroup, measure=None, field=QQ, verify=True):
    """H(G, L, A) with the paper's convolution normalization.

    Default Haar measure gives the subgroup under study volume one.
    """
    measure = measure or HaarMeasure(group, subgroup)
    return HeckeAlgebra(group, subgroup, measure, field=field, verify=verify)


def brute_structure_constants(alg: HeckeAlgebra):
    """Oracle: structure constants via full function-space convolution."""
    out = []
    funcs = [
        alg.function_vector(alg.unit(i).coeffs) for i in range(alg.dim)
    ]
    for i in range(alg.dim):
        plane = []
        for j in range(alg.dim):
            conv = brute_convolve(funcs[i], funcs[j], alg.group, alg.measure)
            plane.append(
                [alg.field.coerce(c) for c in alg.coefficients_of_function(conv)]
            )
        out.append(plane)
    return out


# -- smooth (A, G)-modules --------------------------------------------------------


class GroupModule:
    """Finite-dimensional module with one action matrix per group element."""

    def __init__(self, group, field, mats, validate=False):
        self.group = group
        self.field = field
        self.mats = mats
        self.dim = len(mats[0]) if mats else 0
        if validate:
            if mats[0] != identity_matrix(self.dim, field):
                raise MalformedInputError("identity must act as 1")
            for g in range(group.order):
                for h in range(group.order):
                    if mat_mul(mats[g], mats[h], field) != mats[
                        group.multiply(g, h)
                    ]:
                        raise MalformedInputError("not a group action")

    # -- constructors -----------------------------------------------------

    @classmethod
    def trivial(cls, group, field=QQ):
        return cls(group, field, [identity_matrix(1, field)] * group.order)

    @classmethod
    def regular(cls, group, field=QQ):
        n = group.order
        mats = []
        for g in range(n):
            m = zero_matrix(n, n, field)
            for h in range(n):
                m[group.multiply(g, h)][h] = field.one
            mats.append(m)
        return cls(group, field, mats)

    @classmethod
    def permutation_on_cosets(cls, group, subgroup, field=QQ):
        """Left translation on right cosets {aL}: the module H(G,A)eps_L."""
        rep, reps = right_coset_reps(group, subgroup)
        index = {r: k for k, r in enumerate(reps)}
        n = len(reps)
        mats = []
        for g in range(group.order):
            m = zero_matrix(n, n, field)
            for k, a in enumerate(reps):
                m[index[rep[group.multiply(g, a)]]][k] = field.one
            mats.append(m)
        mod = cls(group, field, mats)
        mod.coset_reps = reps
        return mod

    @classmethod
    def from_permutation_action(cls, group, points_images, field=QQ):
        """Module from a permutation action: images[g] is a tuple of images."""
        npts = len(points_images[0])
        mats = []
        for g in range(group.order):
            m = zero_matrix(npts, npts, field)
            img = points_images[g]
            for p in range(npts):
                m[img[p]][p] = field.one
            mats.append(m)
        return cls(group, field, mats)

    # -- structure ---------------------------------------------------------

    def act(self, g, v):
        return mat_vec(self.mats[g], v, self.field)

    def character(self):
        out = []
        for m in self.mats:
            tr = self.field.zero
            for i in range(self.dim):
                tr = tr + m[i][i]
            out.append(tr)
        return out

    def direct_sum(self, other):
        if other.group is not self.group or other.field != self.field:
            raise MalformedInputError("direct sum needs matching group and field")
        f = self.field
        mats = []
        for g in range(self.group.order):
            a, b = self.mats[g], other.mats[g]
            top = [row + [f.zero] * other.dim for row in a]
            bottom = [[f.zero] * self.dim + row for row in b]
            mats.append(top + bottom)
        return GroupModule(self.group, f, mats)

    def submodule(self, rows):
        small, emb = submodule_action(self.mats, rows, self.field)
        return GroupModule(self.group, self.field, small), emb

    def quotient(self, rows):
        small, proj = quotient_action(self.mats, rows, self.field, self.dim)
        return GroupModule(self.group, self.field, small), proj

    def base_change(self, B, embedding=None):
        from .modules import _coefficient_map

        conv = _coefficient_map(self.field, B, embedding)
        mats = [[[conv(c) for c in row] for row in m] for m in self.mats]
        return GroupModule(self.group, B, mats)

    def hom(self, other):
        if other.group is not self.group:
            raise MalformedInputError("hom between modules of different groups")
        return hom_basis(self.mats, other.mats, self.dim, other.dim, self.field)

    def is_isomorphic(self, other):
        if self.dim != other.dim:
            return False
        for h in self.hom(other):
            if mat_inverse(h, self.field) is not None:
                return True
        return False

    def is_irreducible(self):
        return is_irreducible_mats(self.mats, self.field, self.dim)

    def endomorphisms(self):
        from .modules import commutant_basis

        return commutant_basis(self.mats, self.field, self.dim)

    # -- invariants and the Hecke action ------------------------------------

    def invariant_rows(self, subgroup):
        """Basis (rref rows) of the L-fixed subspace, via averaging."""
        f = self.field
        n = self.dim
        avg = zero_matrix(n, n, f)
        for l in subgroup.elements:
            m = self.mats[l]
            for i in range(n):
                for j in range(n):
                    avg[i][j] = avg[i][j] + m[i][j]
        scale = f.coerce(Fraction(1, subgroup.order))
        for i in range(n):
            for j in range(n):
                avg[i][j] = avg[i][j] * scale
        cols = transpose(avg)
        basis, _ = rref(cols, f)
        return basis

    def invariants(self, algebra: HeckeAlgebra):
        """The H(G, L, A)-module V^L; returns (HeckeModule, basis rows).

        The action of 1_{Lx_kL} on V^L is vol(L) * sum over the right
        cosets aL inside the double coset of the action of a.
        """
        sub = algebra.subgroup
        rows = self.invariant_rows(sub)
        if not rows:
            return None, []
        f = self.field
        vol_l = f.coerce(algebra.measure.volume(sub))
        big_mats = []
        for k in range(algebra.dim):
            members = algebra.basis.members[k]
            reps = sorted({algebra._rc_rep[g] for g in members})
            m = zero_matrix(self.dim, self.dim, f)
            for a in reps:
                ma = self.mats[a]
                for i in range(self.dim):
                    for j in range(self.dim):
                        m[i][j] = m[i][j] + ma[i][j]
            for i in range(self.dim):
                for j in range(self.dim):
                    m[i][j] = m[i][j] * vol_l
            big_mats.append(m)
        small, _emb = submodule_action(big_mats, rows, f)
        module = HeckeModule(algebra.as_findim_algebra(), small, validate=True)
        return module, rows


def act_function(values, v, module: GroupModule, measure: HaarMeasure):
    """f.v = vol(L) sum f(x) x.v with L = {e}: the point mass times sums."""
    f = module.field
    pm = f.coerce(measure.point_mass)
    out = [f.zero] * module.dim
    for g, val in enumerate(values):
        if val == f.zero:
            continue
        w = module.act(g, v)
        for i in range(module.dim):
            out[i] = out[i] + pm * val * w[i]
    return out


# -- left ideals and the V/W constructions ----------------------------------------


class LeftIdeal:
    """Left ideal of a HeckeAlgebra, given by a row-reduced basis."""

    def __init__(self, algebra: HeckeAlgebra, rows):
        field = algebra.field
        rows = [[field.coerce(c) for c in row] for row in rows]
        basis, pivots = rref(rows, field)
        for b in basis:
            for i in range(algebra.dim):
                prod = algebra.multiply(algebra.unit(i).coeffs, b)
                if not in_span(basis, pivots, prod, field):
                    raise IdealError("rows do not span a left ideal")
        if len(basis) >= algebra.dim:
            raise IdealError("ideal is not proper")
        self.algebra = algebra
        self.basis = basis
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    def quotient_module(self) -> HeckeModule:
        """The left module H(G,L,A)/I with its basis-element action."""
        alg = self.algebra
        reg = alg.as_findim_algebra().left_regular_matrices()
        mats, _proj = quotient_action(reg, self.basis, alg.field, alg.dim)
        return HeckeModule(alg.as_findim_algebra(), mats, validate=False)

    def is_maximal(self) -> bool:
        q = self.quotient_module()
        ok, _ = is_irreducible_mats(q.mats, q.field, q.dim)
        return ok

    def __repr__(self):
        return f"LeftIdeal(dim={self.dim} of {self.algebra!r})"


def annihilator_ideal(algebra: HeckeAlgebra, module: HeckeModule, v) -> LeftIdeal:
    """Ann_{H}(v) for v in a module over the double-coset algebra."""
    from .modules import annihilator

    rows = annihilator(module, v)
    return LeftIdeal(algebra, rows)


def character_kernel_ideal(algebra: HeckeAlgebra, values) -> LeftIdeal:
    """Kernel of a one-dimensional character given by basis values."""
    field = algebra.field
    row = [[field.coerce(v) for v in values]]
    rows = kernel(row, field)
    return LeftIdeal(algebra, rows)


def index_character(algebra: HeckeAlgebra):
    """Character of the trivial module: 1_{LxL} acts by vol(L)|LxL|/|L|."""
    vol_l = algebra.measure.volume(algebra.subgroup)
    out = []
    for members in algebra.basis.members:
        out.append(
            algebra.field.coerce(
                vol_l * Fraction(len(members), algebra.subgroup.order)
            )
        )
    return out


class SmoothConstruction:
    """Output of the V(I, L) / W(I, L) construction, with its certificates."""

    def __init__(self, ideal: LeftIdeal):
        alg = ideal.algebra
        group, sub, field = alg.group, alg.subgroup, alg.field
        if not ideal.is_maximal():
            raise IdealError("left ideal is not maximal")
        M = GroupModule.permutation_on_cosets(group, sub, field)
        reps = M.coset_reps
        rep_index = {r: k for k, r in enumerate(reps)}
        rc_rep = alg._rc_rep

        def iota(coeffs):
            vec = [field.zero] * len(reps)
            for k, c in enumerate(coeffs):
                if c == field.zero:
                    continue
                for a in sorted(
                    {rc_rep[g] for g in alg.basis.members[k]}
                ):
                    vec[rep_index[a]] = vec[rep_index[a]] + c
            return vec

        # H(G,A) I = span of left translates of the embedded ideal basis
        generated = []
        for b in ideal.basis:
            fb = iota(b)
            for g in range(group.order):
                generated.append(mat_vec(M.mats[g], fb, field))
        s_rows, _ = rref(generated, field)

        W, proj_w = M.quotient(s_rows)
        image = algebra_image_basis(W.mats, field, W.dim)
        rad = trace_form_radical(image, field, W.dim)
        rad_rows = []
        for r in rad:
            rad_rows.extend(transpose(r))
        rad_basis, _ = rref(rad_rows, field)
        V, proj_v = W.quotient(rad_basis)
        ok, witness = V.is_irreducible()
        if not ok:
            raise IdealError("V(I, L) came out reducible (ideal not maximal?)")

        self.ideal = ideal
        self.algebra = alg
        self.ambient = M
        self.iota = iota
        self.W = W
        self.V = V
        self.w_radical_rows = rad_basis
        self.projection_ambient_to_w = proj_w
        self.projection_w_to_v = proj_v
        self.irreducibility_witness = witness
        self.v_invariants, self.v_invariant_rows = V.invariants(alg)
        self.w_invariants, self.w_invariant_rows = W.invariants(alg)

    # -- certified claims --------------------------------------------------

    def j_ideal_rows(self):
        """Basis of J_{I,L} as a subspace of H(G,A)eps_L."""
        composite = mat_mul(
            self.projection_w_to_v, self.projection_ambient_to_w, self.algebra.field
        )
        return kernel(composite, self.algebra.field)

    def eps_compress(self, ambient_vec):
        """eps_L * f for a right-L-invariant function f, as coefficients."""
        alg = self.algebra
        field = alg.field
        values = [field.zero] * alg.group.order
        for k, rep in enumerate(self.ambient.coset_reps):
            c = ambient_vec[k]
            if c == field.zero:
                continue
            for l in alg.subgroup.elements:
                values[alg.group.multiply(rep, l)] = c
        eps_vals = alg.function_vector(alg.identity_coeffs)
        conv = brute_convolve(eps_vals, values, alg.group, alg.measure)
        return alg.coefficients_of_function(conv)

    def check_eps_j_equals_i(self) -> bool:
        field = self.algebra.field
        rows = [self.eps_compress(f) for f in self.j_ideal_rows()]
        got, gp = rref(rows, field)
        return got == self.ideal.basis and gp == self.ideal.pivots

    def check_invariants_match_quotient(self) -> bool:
        """V(I,L)^L is isomorphic to H(G,L,A)/I as modules over the algebra."""
        q = self.ideal.quotient_module()
        vl = self.v_invariants
        if vl is None or vl.dim != q.dim:
            return False
        for h in hom_basis(q.mats, vl.mats, q.dim, vl.dim, self.algebra.field):
            if mat_inverse(h, self.algebra.field) is not None:
                return True
        return False

    def check_w_to_v_invariants_isomorphism(self) -> bool:
        """The projection W(I,L)^L -> V(I,L)^L is an isomorphism."""
        field = self.algebra.field
        if self.w_invariants is None or self.v_invariants is None:
            return False
        if self.w_invariants.dim != self.v_invariants.dim:
            return False
        # map W^L basis down and check the images stay independent
        images = [
            mat_vec(self.projection_w_to_v, row, field)
            for row in self.w_invariant_rows
        ]
        return rank(images, field) == len(images)


def construct_V(ideal: LeftIdeal) -> SmoothConstruction:
    """Theorem-style construction of the irreducible module V(I, L)."""
    return SmoothConstruction(ideal)


construct_W = construct_V  # the construction carries both W(I, L) and V(I, L)


def end_restriction_report(construction: SmoothConstruction):
    """Compare End over the group with End of the invariants over the algebra.

    Returns a dict with both dimensions, whether restriction is bijective,
    and the matrices of the restricted endomorphisms.
    """
    from .modules import _coords_in_rref

    field = construction.algebra.field
    V = construction.V
    end_g = V.endomorphisms()
    vl_rows = construction.v_invariant_rows
    vl = construction.v_invariants
    end_h = hom_basis(vl.mats, vl.mats, vl.dim, vl.dim, field)
    # restrict each G-endomorphism to the invariant subspace
    small, pivots = rref(vl_rows, field)
    restricted = []
    for phi in end_g:
        coords = []
        for row in vl_rows:
            w = mat_vec(phi, row, field)
            c = _coords_in_rref(small, pivots, w, field)
            if c is None:
                raise OracleMismatchError(
                    "G-endomorphism does not preserve invariants"
                )
            coords.append(c)
        restricted.append(transpose(coords))
    flat = [
        [m[i][j] for i in range(vl.dim) for j in range(vl.dim)]
        for m in restricted
    ]
    inj = rank(flat, field) == len(end_g)
    surj = len(end_g) == len(end_h)
    return {
        "dim_end_group": len(end_g),
        "dim_end_hecke": len(end_h),
        "bijective": inj and surj,
        "restricted_endomorphisms": restricted,
    }
