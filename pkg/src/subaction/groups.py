"""Finite permutation groups with exact integer tables.

Elements are indexed by breadth-first closure order from the input
generators, so index 0 is always the identity and every element ``g`` has a
recorded factorisation ``g = gen * earlier_element``. Multiplication tables
are materialised only up to a size cap; larger groups compose on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CapacityError, DomainError, InvariantError, StructuralError
from .perms import Permutation, from_cycles, identity


class FiniteGroup:
    def __init__(self, generators: Sequence[Permutation], *, name: str | None = None,
                 order_cap: int | None = None):
        if not generators:
            raise StructuralError("need at least one generator")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise StructuralError("generators have inconsistent degrees")
        if order_cap is None:
            order_cap = config.cap("MAX_GROUP_ORDER")
        self.degree = degree
        self.name = name or "gen<" + ", ".join(str(g) for g in generators) + ">"

        # breadth-first closure; deterministic element order
        e = identity(degree)
        elements: list[Permutation] = [e]
        index: dict[tuple[int, ...], int] = {e.images: 0}
        gens: list[Permutation] = []
        for g in generators:
            if g.images not in {h.images for h in gens}:
                gens.append(g)
        gen_of = [-1]
        parent_of = [-1]
        frontier = [0]
        while frontier:
            nxt: list[int] = []
            for f in frontier:
                fp = elements[f]
                for si, s in enumerate(gens):
                    prod = tuple(s.images[y] for y in fp.images)
                    if prod not in index:
                        if len(elements) >= order_cap:
                            raise CapacityError("MAX_GROUP_ORDER", order_cap,
                                                len(elements) + 1,
                                                hint="closure still growing")
                        index[prod] = len(elements)
                        elements.append(Permutation(prod))
                        gen_of.append(si)
                        parent_of.append(f)
                        nxt.append(index[prod])
            frontier = nxt

        self.elements = elements
        self.order = len(elements)
        self._index = index
        self.generator_indices = tuple(index[g.images] for g in gens)
        self._gen_of = np.asarray(gen_of, dtype=np.int32)
        self._parent_of = np.asarray(parent_of, dtype=np.int32)
        self.images = np.array([p.images for p in elements], dtype=np.int32)

        inv = np.empty(self.order, dtype=np.int32)
        for i, p in enumerate(elements):
            inv[i] = index[p.inverse().images]
        self.inv_table = inv

        self.mul_table: np.ndarray | None = None
        if self.order * self.order <= config.cap("MAX_MUL_TABLE_ENTRIES"):
            self._build_mul_table()
        self._row_cache: dict[int, np.ndarray] = {}
        self._subgroups: list["Subgroup"] | None = None

    def _build_mul_table(self) -> None:
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        table[0] = np.arange(n, dtype=np.int32)
        # generator rows by direct lookup, the rest by left-translation
        # composition along the closure factorisation g = s * parent
        gen_rows: dict[int, np.ndarray] = {}
        for si, gi in enumerate(self.generator_indices):
            row = np.empty(n, dtype=np.int32)
            s_imgs = self.images[gi]
            comp = s_imgs[self.images]
            for h in range(n):
                row[h] = self._index[tuple(comp[h])]
            gen_rows[si] = row
        for g in range(1, n):
            s_row = gen_rows[self._gen_of[g]]
            table[g] = s_row[table[self._parent_of[g]]]
        self.mul_table = table

    # -- element arithmetic ------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[i, j])
        return int(self.mul_row(i)[j])

    def inv(self, i: int) -> int:
        return int(self.inv_table[i])

    def mul_row(self, g: int) -> np.ndarray:
        """Row of left translation by g: ``row[h] = index(g * h)``."""
        if self.mul_table is not None:
            return self.mul_table[g]
        row = self._row_cache.get(g)
        if row is None:
            comp = self.images[g][self.images]
            row = np.fromiter(
                (self._index[tuple(r)] for r in comp), dtype=np.int32, count=self.order
            )
            self._row_cache[g] = row
        return row

    def element_index(self, p: Permutation) -> int:
        if p.images not in self._index:
            raise DomainError(f"{p} is not an element of {self.name}")
        return self._index[p.images]

    def conjugate(self, g: int, x: int) -> int:
        return self.mul(self.mul(g, x), self.inv(g))

    @property
    def identity_index(self) -> int:
        return 0

    def is_abelian(self) -> bool:
        gi = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gi for b in gi)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order}, degree={self.degree})"

    # -- subsets -----------------------------------------------------------

    def _as_indices(self, A: Iterable[int]) -> np.ndarray:
        arr = np.unique(np.fromiter((int(a) for a in A), dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= self.order):
            raise DomainError(f"element index outside 0..{self.order - 1}")
        return arr

    def product_set(self, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
        a, b = self._as_indices(A), self._as_indices(B)
        if a.size == 0 or b.size == 0:
            return frozenset()
        if self.mul_table is not None:
            return frozenset(np.unique(self.mul_table[np.ix_(a, b)]).tolist())
        return frozenset(self.mul(int(x), int(y)) for x in a for y in b)

    def inverse_set(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.inv_table[self._as_indices(A)].tolist())

    def product_power(self, A: Iterable[int], k: int) -> frozenset[int]:
        """k-fold product set; ``k == 0`` gives the identity singleton."""
        if k < 0:
            raise DomainError("power must be nonnegative")
        out: frozenset[int] = frozenset({0})
        a = frozenset(self._as_indices(A).tolist())
        for _ in range(k):
            out = self.product_set(out, a)
        return out

    def translate_set(self, g: int, A: Iterable[int]) -> frozenset[int]:
        a = self._as_indices(A)
        return frozenset(self.mul_row(g)[a].tolist())

    def conjugate_set(self, g: int, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.conjugate(g, int(x)) for x in self._as_indices(A))

    def is_conjugation_stable(self, A: Iterable[int]) -> bool:
        a = frozenset(self._as_indices(A).tolist())
        return all(self.conjugate_set(g, a) == a for g in range(self.order))

    def generated_set(self, S: Iterable[int]) -> frozenset[int]:
        """Element set of the subgroup generated by S (empty S gives trivial)."""
        gens = self._as_indices(S)
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        if gens.size == 0:
            return frozenset({0})
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            if self.mul_table is not None:
                prods = np.unique(self.mul_table[np.ix_(frontier, gens)])
            else:
                prods = np.unique(np.fromiter(
                    (self.mul(int(f), int(s)) for f in frontier for s in gens),
                    dtype=np.int64))
            new = prods[~member[prods]]
            member[new] = True
            frontier = new
        return frozenset(np.flatnonzero(member).tolist())

    def generated_subgroup(self, S: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.generated_set(S), _verified=True)

    def subgroups(self) -> list["Subgroup"]:
        """All subgroups, sorted by (order, member tuple).

        Bottom-up lattice search: each known subgroup is extended by one
        representative of every double coset of outside elements.
        """
        limit = config.cap("MAX_SUBGROUP_ENUM_ORDER")
        if self.order > limit:
            raise CapacityError("MAX_SUBGROUP_ENUM_ORDER", limit, self.order)
        if self._subgroups is not None:
            return list(self._subgroups)
        n = self.order
        seen: set[frozenset[int]] = {frozenset({0})}
        queue: list[frozenset[int]] = [frozenset({0})]
        while queue:
            H = queue.pop()
            harr = np.fromiter(sorted(H), dtype=np.int64)
            covered = np.zeros(n, dtype=bool)
            covered[harr] = True
            for g in range(n):
                if covered[g]:
                    continue
                gH = self.mul_row(g)[harr]
                for h in harr:
                    covered[self.mul_row(int(h))[gH]] = True
                K = self.generated_set(list(H) + [g])
                if K not in seen:
                    seen.add(K)
                    queue.append(K)
        subs = [Subgroup(self, m, _verified=True) for m in seen]
        subs.sort(key=lambda s: (s.order, s.member_tuple))
        self._subgroups = subs
        return list(subs)

    def left_cosets(self, H: "Subgroup") -> "CosetDecomposition":
        if H.group is not self:
            raise StructuralError("subgroup belongs to a different group")
        n = self.order
        harr = np.fromiter(H.member_tuple, dtype=np.int64)
        rep_of = np.full(n, -1, dtype=np.int32)
        reps: list[int] = []
        cosets: list[frozenset[int]] = []
        for g in range(n):
            if rep_of[g] >= 0:
                continue
            coset = self.mul_row(g)[harr]
            rep_of[coset] = len(reps)
            reps.append(g)
            cosets.append(frozenset(coset.tolist()))
        if len(reps) * H.order != n:
            raise InvariantError("cosets do not partition the group")
        return CosetDecomposition(self, H, tuple(reps), rep_of, cosets)


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: frozenset[int]
    _verified: bool = False

    def __post_init__(self) -> None:
        if not self._verified:
            _verify_subgroup(self.group, self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def member_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def contains(self, g: int) -> bool:
        return g in self.members

    def is_normal(self) -> bool:
        return self.group.is_conjugation_stable(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.group.name})"


def _verify_subgroup(G: FiniteGroup, members: frozenset[int]) -> None:
    if 0 not in members:
        raise InvariantError("subgroup must contain the identity")
    arr = np.fromiter(sorted(members), dtype=np.int64)
    if arr.size and (arr[0] < 0 or arr[-1] >= G.order):
        raise DomainError("member index out of range")
    if not set(G.inv_table[arr].tolist()) <= members:
        raise InvariantError("set is not inverse-closed")
    if G.mul_table is not None:
        prods = set(np.unique(G.mul_table[np.ix_(arr, arr)]).tolist())
    else:
        prods = {G.mul(int(a), int(b)) for a in arr for b in arr}
    if not prods <= members:
        raise InvariantError("set is not product-closed")


@dataclass(frozen=True)
class CosetDecomposition:
    group: FiniteGroup
    subgroup: Subgroup
    representatives: tuple[int, ...]
    rep_position: np.ndarray  # element index -> position in representatives
    cosets: list[frozenset[int]]

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset_of(self, g: int) -> int:
        """Representative (element index) of the coset gH."""
        return self.representatives[int(self.rep_position[g])]


# -- constructors -----------------------------------------------------------


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("need n >= 1")
    if n == 1:
        gens = [identity(1)]
    elif n == 2:
        gens = [from_cycles(2, [(0, 1)])]
    else:
        gens = [from_cycles(n, [(0, 1)]), from_cycles(n, [tuple(range(n))])]
    return FiniteGroup(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        raise DomainError("need n >= 3")
    gens = [from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return FiniteGroup(gens, name=f"A{n}")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("need n >= 1")
    return FiniteGroup([from_cycles(n, [tuple(range(n))])], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon on n vertices, order 2n (n >= 3)."""
    if n < 3:
        raise DomainError("need n >= 3")
    rot = from_cycles(n, [tuple(range(n))])
    refl = Permutation(tuple((-i) % n for i in range(n)))
    return FiniteGroup([rot, refl], name=f"D{n}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _primitive_root(p: int) -> int:
    for r in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * r % p
            seen.add(x)
        if len(seen) == p - 1:
            return r
    raise InvariantError(f"no primitive root modulo {p}")


def affine_gl1(p: int) -> FiniteGroup:
    """Maps x -> a*x + b on the prime field of order p; group order p*(p-1)."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    shift = Permutation(tuple((x + 1) % p for x in range(p)))
    gens = [shift]
    if p > 2:
        r = _primitive_root(p)
        gens.append(Permutation(tuple(x * r % p for x in range(p))))
    G = FiniteGroup(gens, name=f"Aff({p})")
    if G.order != p * (p - 1):
        raise InvariantError("affine group has unexpected order")
    return G


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """Product acting on the disjoint union of the factors' domains."""
    d1, d2 = G1.degree, G2.degree
    gens = []
    for gi in G1.generator_indices:
        imgs = tuple(G1.elements[gi].images) + tuple(range(d1, d1 + d2))
        gens.append(Permutation(imgs))
    for gi in G2.generator_indices:
        imgs = tuple(range(d1)) + tuple(x + d1 for x in G2.elements[gi].images)
        gens.append(Permutation(imgs))
    G = FiniteGroup(gens, name=f"{G1.name}x{G2.name}")
    if G.order != G1.order * G2.order:
        raise InvariantError("direct product has unexpected order")
    return G


def from_generators(perms: Sequence[Permutation], *, name: str | None = None,
                    order_cap: int | None = None) -> FiniteGroup:
    return FiniteGroup(perms, name=name, order_cap=order_cap)
