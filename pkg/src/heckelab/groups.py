"""Finite groups as multiplication tables; subgroups and Haar measures.

Finite discrete groups are the desk-scale l-groups: every subgroup is open
and compact.  Group tables are validated exhaustively at load (identity at
index 0, inverses, associativity) up to the configured order cap.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .config import DEFAULT_GROUP_ORDER_CAP
from .errors import GroupOrderCapError, MalformedInputError


class FiniteGroup:
    """Group law as an order x order table of element indices."""

    def __init__(self, mul, labels=None, name=None, order_cap=DEFAULT_GROUP_ORDER_CAP):
        table = np.asarray(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise MalformedInputError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise MalformedInputError("empty group table")
        if n > order_cap:
            raise GroupOrderCapError(
                f"group order {n} exceeds cap {order_cap}"
            )
        if table.min() < 0 or table.max() >= n:
            raise MalformedInputError("table entries out of range")
        if not (
            np.array_equal(table[0], np.arange(n))
            and np.array_equal(table[:, 0], np.arange(n))
        ):
            raise MalformedInputError("identity must sit at index 0")
        inv = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(table[i] == 0)[0]
            if len(js) != 1 or table[js[0], i] != 0:
                raise MalformedInputError(f"element {i} has no two-sided inverse")
            inv[i] = js[0]
        # associativity, chunked over the first index
        for i in range(n):
            if not np.array_equal(table[table[i], :], table[i][table]):
                raise MalformedInputError("multiplication table not associative")
        # plain lists for the hot loops; numpy was only for bulk validation
        self.mul = table.tolist()
        self.order = n
        self.inv = inv.tolist()
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise MalformedInputError("label count does not match order")
        self.name = name or f"G{n}"

    def multiply(self, i: int, j: int) -> int:
        return self.mul[i][j]

    def inverse(self, i: int) -> int:
        return self.inv[i]

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- subgroups ---------------------------------------------------------

    def subgroup(self, generators) -> "Subgroup":
        elems = {0}
        frontier = [0]
        gens = sorted(set(int(g) for g in generators))
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.multiply(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return Subgroup(self, tuple(sorted(elems)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def all_subgroups(self) -> "list[Subgroup]":
        """Every subgroup, by closing generator sets; deterministic order."""
        found = {(0,)}
        frontier = [(0,)]
        while frontier:
            elems = frontier.pop()
            for g in range(1, self.order):
                if g in elems:
                    continue
                bigger = self.subgroup(set(elems) | {g}).elements
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
        return [Subgroup(self, e) for e in sorted(found, key=lambda e: (len(e), e))]

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_permutations(cls, generators, name=None, order_cap=DEFAULT_GROUP_ORDER_CAP):
        """Group generated by permutations given in cycle notation.

        generators: list of permutations, each a list of cycles over the
        points 1..k, e.g. [[(1, 2)], [(1, 2, 3)]] for S3.
        """
        points = 1
        for gen in generators:
            for cycle in gen:
                points = max(points, max(cycle))
        perms = [_perm_from_cycles(gen, points) for gen in generators]
        identity = tuple(range(points))
        elements = [identity]
        index = {identity: 0}
        queue = [identity]
        while queue:
            current = queue.pop(0)
            for p in perms:
                composed = tuple(p[current[i]] for i in range(points))
                if composed not in index:
                    if len(elements) >= order_cap + 1:
                        raise GroupOrderCapError(
                            f"generated group exceeds order cap {order_cap}"
                        )
                    index[composed] = len(elements)
                    elements.append(composed)
                    queue.append(composed)
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                # row i, column j: a then b acting on points: (a*b)(x) = a(b(x))
                composed = tuple(a[b[x]] for x in range(points))
                table[i, j] = index[composed]
        labels = [_cycle_label(p) for p in elements]
        return cls(table, labels=labels, name=name, order_cap=order_cap)


def _perm_from_cycles(cycles, points):
    perm = list(range(points))
    for cycle in cycles:
        cycle = [c - 1 for c in cycle]
        if len(set(cycle)) != len(cycle):
            raise MalformedInputError(f"repeated point in cycle {cycle}")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a] = b
    return tuple(perm)


def _cycle_label(perm):
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
    return "".join(parts) if parts else "e"


class Subgroup:
    """Subgroup as a sorted index set, verified closed."""

    def __init__(self, group: FiniteGroup, elements: tuple):
        elements = tuple(sorted(set(int(e) for e in elements)))
        if not elements or elements[0] != 0:
            raise MalformedInputError("subgroup must contain the identity")
        member = set(elements)
        for a in elements:
            if group.inverse(a) not in member:
                raise MalformedInputError("subgroup not closed under inverse")
            for b in elements:
                if group.multiply(a, b) not in member:
                    raise MalformedInputError("subgroup not closed under product")
        self.group = group
        self.elements = elements
        self.member = member

    @property
    def order(self):
        return len(self.elements)

    @property
    def index(self):
        return self.group.order // self.order

    def __contains__(self, i):
        return i in self.member

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def __repr__(self):
        names = ", ".join(self.group.labels[i] for i in self.elements[:6])
        more = ", ..." if self.order > 6 else ""
        return f"Subgroup(order={self.order}: {names}{more})"


class HaarMeasure:
    """Haar measure normalized so a reference subgroup has volume one."""

    def __init__(self, group: FiniteGroup, reference: Subgroup):
        if reference.group is not group:
            raise MalformedInputError("reference subgroup of a different group")
        self.group = group
        self.reference = reference
        self.point_mass = Fraction(1, reference.order)

    def volume(self, subset) -> Fraction:
        size = subset.order if isinstance(subset, Subgroup) else len(subset)
        return Fraction(size) * self.point_mass

    def __repr__(self):
        return f"HaarMeasure(point_mass={self.point_mass})"


# -- presets --------------------------------------------------------------------


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2 or n > 5:
        raise MalformedInputError("symmetric_group preset supports 2 <= n <= 5")
    gens = [[(1, 2)]]
    if n > 2:
        gens.append([tuple(range(1, n + 1))])
    return FiniteGroup.from_permutations(gens, name=f"S{n}")


def s3() -> FiniteGroup:
    return symmetric_group(3)


def s4() -> FiniteGroup:
    return symmetric_group(4)


def a4() -> FiniteGroup:
    return FiniteGroup.from_permutations(
        [[(1, 2, 3)], [(1, 2), (3, 4)]], name="A4"
    )


def d4() -> FiniteGroup:
    return FiniteGroup.from_permutations(
        [[(1, 2, 3, 4)], [(1, 3)]], name="D4"
    )


def c6() -> FiniteGroup:
    return FiniteGroup.from_permutations([[(1, 2, 3, 4, 5, 6)]], name="C6")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_permutations(
        [[tuple(range(1, n + 1))]], name=f"C{n}"
    )


def q8() -> FiniteGroup:
    """Quaternion group {+-1, +-i, +-j, +-k} as a multiplication table."""
    # elements: (sign, axis) with axes 0=1, 1=i, 2=j, 3=k
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    mult_axis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 1): (-1, 3),
        (2, 3): (1, 1), (3, 2): (-1, 1),
        (3, 1): (1, 2), (1, 3): (-1, 2),
    }
    index = {e: k for k, e in enumerate(elems)}
    table = np.empty((8, 8), dtype=np.int64)
    for i, (sa, aa) in enumerate(elems):
        for j, (sb, ab) in enumerate(elems):
            sc, ac = mult_axis[(aa, ab)]
            table[i, j] = index[(sa * sb * sc, ac)]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(table, labels=labels, name="Q8")
