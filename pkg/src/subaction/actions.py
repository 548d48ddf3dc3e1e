"""Verified group actions on finite point sets.

An action is stored as a full table ``row[g][x] = g.x`` and is checked at
construction: identity row, bijective rows, and the homomorphism law. The
law is verified exhaustively for small groups; for larger ones it is checked
for every generator against every element, which forces it for all pairs by
induction along the closure factorisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CapacityError, DomainError, InvariantError, StructuralError
from .groups import CosetDecomposition, FiniteGroup, Subgroup, affine_gl1, direct_product
from .rationals import exact_fraction as _exact_ratio


class GroupAction:
    def __init__(self, group: FiniteGroup, domain_size: int, table: np.ndarray,
                 *, name: str | None = None, point_labels: Sequence[str] | None = None,
                 _verified: bool = False):
        entries = group.order * domain_size
        limit = config.cap("MAX_ACT_TABLE_ENTRIES")
        if entries > limit:
            raise CapacityError("MAX_ACT_TABLE_ENTRIES", limit, entries)
        table = np.ascontiguousarray(table, dtype=np.int32)
        if table.shape != (group.order, domain_size):
            raise StructuralError(
                f"table shape {table.shape} != (order, domain) = "
                f"({group.order}, {domain_size})")
        self.group = group
        self.domain_size = domain_size
        self.table = table
        self.name = name or f"action<{group.name} on {domain_size}>"
        self.point_labels = list(point_labels) if point_labels is not None else None
        self._orbits: OrbitDecomposition | None = None
        if not _verified:
            self._verify()

    def _verify(self) -> None:
        n, d = self.group.order, self.domain_size
        ar = np.arange(d, dtype=np.int32)
        if not np.array_equal(self.table[0], ar):
            raise InvariantError("identity row does not fix the domain")
        if not np.all(np.sort(self.table, axis=1) == ar):
            raise InvariantError("some row is not a bijection of the domain")
        full = n <= config.cap("VERIFY_ALL_PAIRS_MAX_ORDER")
        checked = range(n) if full else self.group.generator_indices
        for g in checked:
            lhs = self.table[self.group.mul_row(g)]
            rhs = self.table[g][self.table]
            if not np.array_equal(lhs, rhs):
                h = int(np.nonzero((lhs != rhs).any(axis=1))[0][0])
                raise InvariantError(
                    f"homomorphism law fails at (g, h) = ({g}, {h})")

    # -- basic queries -------------------------------------------------------

    def act(self, g: int, x: int) -> int:
        return int(self.table[g, x])

    def act_row(self, g: int) -> np.ndarray:
        return self.table[g]

    def _point_indices(self, Y: Iterable[int]) -> np.ndarray:
        arr = np.unique(np.fromiter((int(y) for y in Y), dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= self.domain_size):
            raise DomainError(f"point index outside 0..{self.domain_size - 1}")
        return arr

    def _group_indices(self, A: Iterable[int]) -> np.ndarray:
        arr = np.unique(np.fromiter((int(a) for a in A), dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= self.group.order):
            raise DomainError(f"element index outside 0..{self.group.order - 1}")
        return arr

    def act_point_set(self, g: int, Y: Iterable[int]) -> frozenset[int]:
        return frozenset(self.table[g][self._point_indices(Y)].tolist())

    def act_set(self, A: Iterable[int], Y: Iterable[int]) -> frozenset[int]:
        """The product set A.Y of all images of Y under elements of A."""
        a, y = self._group_indices(A), self._point_indices(Y)
        if a.size == 0 or y.size == 0:
            return frozenset()
        return frozenset(np.unique(self.table[np.ix_(a, y)]).tolist())

    def image_size(self, A: Iterable[int], Y: Iterable[int]) -> int:
        return len(self.act_set(A, Y))

    def fixed_points(self, g: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(
            self.table[g] == np.arange(self.domain_size)).tolist())

    # -- orbits and stabilizers ----------------------------------------------

    def orbit_decomposition(self) -> "OrbitDecomposition":
        if self._orbits is not None:
            return self._orbits
        d = self.domain_size
        orbit_of = np.full(d, -1, dtype=np.int32)
        reps: list[int] = []
        orbits: list[frozenset[int]] = []
        gen_rows = [self.table[g] for g in self.group.generator_indices]
        for x in range(d):
            if orbit_of[x] >= 0:
                continue
            seen = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for row in gen_rows:
                        z = int(row[y])
                        if z not in seen:
                            seen.add(z)
                            nxt.append(z)
                frontier = nxt
            idx = len(reps)
            reps.append(x)
            orbits.append(frozenset(seen))
            orbit_of[np.fromiter(seen, dtype=np.int64)] = idx
        self._orbits = OrbitDecomposition(tuple(reps), orbit_of, orbits)
        return self._orbits

    def orbit_of_point(self, x: int) -> frozenset[int]:
        dec = self.orbit_decomposition()
        return dec.orbits[int(dec.orbit_of[x])]

    def is_transitive(self) -> bool:
        return len(self.orbit_decomposition().orbits) == 1

    def point_stabilizer(self, x: int) -> Subgroup:
        if not 0 <= x < self.domain_size:
            raise DomainError(f"point {x} outside domain")
        members = frozenset(np.flatnonzero(self.table[:, x] == x).tolist())
        return Subgroup(self.group, members, _verified=True)

    def set_stabilizer(self, Y: Iterable[int]) -> Subgroup:
        y = self._point_indices(Y)
        if y.size == 0:
            raise DomainError("set stabilizer needs a nonempty set")
        memb = np.zeros(self.domain_size, dtype=bool)
        memb[y] = True
        keep = memb[self.table[:, y]].all(axis=1)
        return Subgroup(self.group, frozenset(np.flatnonzero(keep).tolist()),
                        _verified=True)

    def symmetry_set(self, Y: Iterable[int], alpha) -> frozenset[int]:
        """Elements g with |g.Y meet Y| >= alpha * |Y| (alpha an exact rational)."""
        a = _exact_ratio(alpha)
        y = self._point_indices(Y)
        if y.size == 0:
            raise DomainError("symmetry set needs a nonempty set")
        memb = np.zeros(self.domain_size, dtype=bool)
        memb[y] = True
        counts = memb[self.table[:, y]].sum(axis=1)
        keep = counts * a.denominator >= a.numerator * int(y.size)
        return frozenset(np.flatnonzero(keep).tolist())

    def weak_stabilizer(self, Y: Iterable[int]) -> frozenset[int]:
        """Elements whose translate of Y meets Y."""
        y = self._point_indices(Y)
        if y.size == 0:
            raise DomainError("weak stabilizer needs a nonempty set")
        memb = np.zeros(self.domain_size, dtype=bool)
        memb[y] = True
        counts = memb[self.table[:, y]].sum(axis=1)
        return frozenset(np.flatnonzero(counts >= 1).tolist())

    def profile(self) -> "ActionProfile":
        dec = self.orbit_decomposition()
        ar = np.arange(self.domain_size)
        fixes = (self.table == ar).all(axis=1)
        kernel = frozenset(np.flatnonzero(fixes).tolist())
        has_fix = (self.table == ar).any(axis=1)
        is_free = not has_fix[1:].any() if self.group.order > 1 else True
        return ActionProfile(
            group_order=self.group.order,
            domain_size=self.domain_size,
            orbit_sizes=tuple(sorted(len(o) for o in dec.orbits)),
            transitive=len(dec.orbits) == 1,
            faithful=len(kernel) == 1,
            free=bool(is_free),
            kernel=kernel,
        )

    def __repr__(self) -> str:
        return f"GroupAction({self.name})"


@dataclass(frozen=True)
class OrbitDecomposition:
    representatives: tuple[int, ...]
    orbit_of: np.ndarray  # point -> orbit position
    orbits: list[frozenset[int]]

    @property
    def count(self) -> int:
        return len(self.orbits)


@dataclass(frozen=True)
class ActionProfile:
    group_order: int
    domain_size: int
    orbit_sizes: tuple[int, ...]
    transitive: bool
    faithful: bool
    free: bool
    kernel: frozenset[int]


@dataclass(frozen=True)
class OrbitReduction:
    """Per-orbit transporter decomposition of |A.Y| with its two-sided bound."""
    lower: Fraction
    exact: int
    upper: int
    pieces: list[dict]

    def holds(self) -> bool:
        return self.lower <= self.exact <= self.upper


def orbit_reduction_bounds(action: GroupAction, A: Iterable[int],
                           Y: Iterable[int]) -> OrbitReduction:
    """Bound |A.Y| orbit by orbit through transporter sets.

    For each orbit piece Y_i = Y meet O_i with base point x_i, the coset
    representatives B_i carrying x_i into Y_i satisfy
    |A B_i| / |Stab(x_i)| <= |A.Y_i| <= |A B_i|.
    """
    G = action.group
    a = action._group_indices(A)
    y = action._point_indices(Y)
    if a.size == 0 or y.size == 0:
        raise DomainError("need nonempty A and Y")
    dec = action.orbit_decomposition()
    pieces = []
    lower = Fraction(0)
    upper = 0
    exact = 0
    yset = set(y.tolist())
    for oi, orbit in enumerate(dec.orbits):
        part = sorted(orbit & yset)
        if not part:
            continue
        x_i = part[0]
        stab = action.point_stabilizer(x_i)
        cosets = G.left_cosets(stab)
        B_i = [r for r in cosets.representatives if action.act(r, x_i) in orbit and
               action.act(r, x_i) in yset]
        AB_i = G.product_set(a.tolist(), B_i)
        image = action.act_set(AB_i, [x_i])
        lower += Fraction(len(AB_i), stab.order)
        upper += len(AB_i)
        exact += len(image)
        pieces.append({
            "orbit_representative": dec.representatives[oi],
            "base_point": x_i,
            "piece_size": len(part),
            "transporter_size": len(B_i),
            "product_size": len(AB_i),
            "stabilizer_order": stab.order,
            "image_size": len(image),
        })
    result = OrbitReduction(lower=lower, exact=exact, upper=upper, pieces=pieces)
    if not result.holds():
        raise InvariantError("orbit reduction bounds violated")
    return result


# -- constructors -----------------------------------------------------------


def natural_action(G: FiniteGroup) -> GroupAction:
    """G acting through its defining permutation representation."""
    return GroupAction(G, G.degree, G.images, name=f"natural<{G.name}>")


def left_translation_action(G: FiniteGroup) -> GroupAction:
    rows = np.vstack([G.mul_row(g) for g in range(G.order)])
    labels = [str(p) for p in G.elements]
    return GroupAction(G, G.order, rows, name=f"left<{G.name}>",
                       point_labels=labels)


def conjugation_action(G: FiniteGroup) -> GroupAction:
    rows = np.empty((G.order, G.order), dtype=np.int32)
    inv = G.inv_table
    for g in range(G.order):
        gx = G.mul_row(g)
        rows[g] = np.fromiter((G.mul(int(t), int(inv[g])) for t in gx),
                              dtype=np.int32, count=G.order) \
            if G.mul_table is None else G.mul_table[gx, inv[g]]
    labels = [str(p) for p in G.elements]
    return GroupAction(G, G.order, rows, name=f"conj<{G.name}>",
                       point_labels=labels)


def coset_action(G: FiniteGroup, H: Subgroup) -> GroupAction:
    cd = G.left_cosets(H)
    reps = np.fromiter(cd.representatives, dtype=np.int64)
    rows = np.empty((G.order, len(reps)), dtype=np.int32)
    for g in range(G.order):
        rows[g] = cd.rep_position[G.mul_row(g)[reps]]
    labels = [f"{G.elements[r]}H" for r in cd.representatives]
    return GroupAction(G, len(reps), rows, name=f"cosets<{G.name}/{H.order}>",
                       point_labels=labels)


def affine_line_action(p: int) -> GroupAction:
    G = affine_gl1(p)
    act = natural_action(G)
    act.name = f"affine_line<{p}>"
    return act


def product_action(a1: GroupAction, a2: GroupAction) -> GroupAction:
    """Componentwise action of the direct product on the cartesian domain."""
    G1, G2 = a1.group, a2.group
    G = direct_product(G1, G2)
    d1, d2 = a1.domain_size, a2.domain_size
    deg1 = G1.degree
    rows = np.empty((G.order, d1 * d2), dtype=np.int32)
    grid1, grid2 = np.divmod(np.arange(d1 * d2, dtype=np.int32), d2)
    for g, perm in enumerate(G.elements):
        g1 = G1.element_index(type(perm)(tuple(perm.images[:deg1])))
        g2 = G2.element_index(type(perm)(
            tuple(x - deg1 for x in perm.images[deg1:])))
        rows[g] = a1.table[g1][grid1] * d2 + a2.table[g2][grid2]
    labels = None
    if a1.point_labels or a2.point_labels:
        l1 = a1.point_labels or [str(x) for x in range(d1)]
        l2 = a2.point_labels or [str(x) for x in range(d2)]
        labels = [f"({l1[i]},{l2[j]})" for i in range(d1) for j in range(d2)]
    return GroupAction(G, d1 * d2, rows, name=f"product<{a1.name},{a2.name}>",
                       point_labels=labels)


def action_from_table(group: FiniteGroup, domain_size: int,
                      table, *, name: str | None = None) -> GroupAction:
    return GroupAction(group, domain_size, np.asarray(table, dtype=np.int32),
                       name=name)
