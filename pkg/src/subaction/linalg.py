"""Linear representations over small prime fields and the subspace lattice.

Subspaces are kept in canonical reduced row echelon form, so equality is
tuple equality. The lattice analogues of the set-side quantities replace
cardinality with dimension and union with span.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import config
from .actions import GroupAction
from .errors import CapacityError, DomainError, InvariantError, StructuralError
from .groups import FiniteGroup, Subgroup
from .rationals import exact_fraction, format_fraction
from .setfuncs import Exhaustiveness, SetFunction


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise DomainError(f"{p} is not prime")


def _rref(p: int, rows: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced row echelon form over F_p, zero rows dropped."""
    mat = [list(int(x) % p for x in r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    if any(len(r) != ncols for r in mat):
        raise StructuralError("ragged matrix")
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] % p != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = pow(mat[pivot_row][col], p - 2, p) if p > 2 else mat[pivot_row][col]
        mat[pivot_row] = [(x * inv) % p for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] % p != 0:
                c = mat[r][col]
                mat[r] = [(a - c * b) % p for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    out = [tuple(r) for r in mat[:pivot_row] if any(r)]
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    p: int
    ambient_dim: int
    rows: tuple[tuple[int, ...], ...]  # canonical RREF basis

    @staticmethod
    def from_vectors(p: int, ambient_dim: int, vectors: Iterable[Sequence[int]]
                     ) -> "Subspace":
        _check_prime(p)
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise StructuralError(
                    f"vector length {len(v)} != ambient dim {ambient_dim}")
        return Subspace(p, ambient_dim, _rref(p, vecs))

    @staticmethod
    def zero(p: int, ambient_dim: int) -> "Subspace":
        _check_prime(p)
        return Subspace(p, ambient_dim, ())

    @staticmethod
    def full(p: int, ambient_dim: int) -> "Subspace":
        rows = tuple(tuple(1 if j == i else 0 for j in range(ambient_dim))
                     for i in range(ambient_dim))
        _check_prime(p)
        return Subspace(p, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def contains(self, vector: Sequence[int]) -> bool:
        v = [int(x) % self.p for x in vector]
        for row in self.rows:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead]:
                c = v[lead]
                v = [(a - c * b) % self.p for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        self._match(other)
        return all(other.contains(r) for r in self.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._match(other)
        return Subspace(self.p, self.ambient_dim,
                        _rref(self.p, [list(r) for r in self.rows + other.rows]))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: row reduce [[B1 B1],[B2 0]]; zero-left rows carry it."""
        self._match(other)
        d = self.ambient_dim
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + [0] * d for r in other.rows]
        red = _rref(self.p, block)
        inter = [list(r[d:]) for r in red if not any(r[:d])]
        return Subspace(self.p, d, _rref(self.p, inter))

    def vectors(self) -> list[tuple[int, ...]]:
        """All p^dim vectors; small subspaces only."""
        out = []
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = [0] * self.ambient_dim
            for c, row in zip(coeffs, self.rows):
                v = [(a + c * b) % self.p for a, b in zip(v, row)]
            out.append(tuple(v))
        return out

    def sort_key(self) -> tuple:
        return (self.dim, self.rows)

    def _match(self, other: "Subspace") -> None:
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise StructuralError("subspaces live in different spaces")

    def __repr__(self) -> str:
        return f"Subspace(F{self.p}^{self.ambient_dim}, dim={self.dim}, rows={self.rows})"


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    assert num % den == 0
    return num // den


def subspace_count(p: int, d: int) -> int:
    return sum(gaussian_binomial(d, k, p) for k in range(d + 1))


def grassmannian(p: int, d: int, k: int) -> list[Subspace]:
    """All k-dimensional subspaces, enumerated through canonical RREF forms."""
    _check_prime(p)
    expected = gaussian_binomial(d, k, p)
    limit = config.cap("MAX_SUBSPACE_COUNT")
    if expected > limit:
        raise CapacityError("MAX_SUBSPACE_COUNT", limit, expected)
    if k == 0:
        return [Subspace.zero(p, d)]
    out = []
    for pivots in itertools.combinations(range(d), k):
        free_pos = [(i, j) for i in range(k) for j in range(d)
                    if j > pivots[i] and j not in pivots]
        for fill in itertools.product(range(p), repeat=len(free_pos)):
            rows = [[0] * d for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), val in zip(free_pos, fill):
                rows[i][j] = val
            out.append(Subspace(p, d, tuple(tuple(r) for r in rows)))
    assert len(out) == expected
    out.sort(key=Subspace.sort_key)
    return out


def enumerate_subspaces(p: int, d: int) -> list[Subspace]:
    """Every subspace of F_p^d in (dim, basis) order, capped by total count."""
    expected = subspace_count(p, d)
    limit = config.cap("MAX_SUBSPACE_COUNT")
    if expected > limit:
        raise CapacityError("MAX_SUBSPACE_COUNT", limit, expected)
    out: list[Subspace] = []
    for k in range(d + 1):
        out.extend(grassmannian(p, d, k))
    return out


class Representation:
    """A verified homomorphism from a finite group into GL_d(F_p)."""

    def __init__(self, group: FiniteGroup, p: int, matrices: np.ndarray,
                 *, name: str | None = None, _verified: bool = False):
        _check_prime(p)
        matrices = np.ascontiguousarray(matrices, dtype=np.int64) % p
        if matrices.shape[0] != group.order or \
                matrices.shape[1] != matrices.shape[2]:
            raise StructuralError("need one square matrix per group element")
        self.group = group
        self.p = p
        self.dim = int(matrices.shape[1])
        self.mats = matrices
        self.name = name or f"rep<{group.name} in GL{self.dim}(F{p})>"
        if not _verified:
            self._verify()

    def _verify(self) -> None:
        n, d, p = self.group.order, self.dim, self.p
        if not np.array_equal(self.mats[0], np.eye(d, dtype=np.int64)):
            raise InvariantError("identity element must map to the identity matrix")
        for g in range(n):
            if len(_rref(p, self.mats[g].tolist())) != d:
                raise InvariantError(f"matrix for element {g} is singular")
        full = n <= config.cap("VERIFY_ALL_PAIRS_MAX_ORDER")
        checked = range(n) if full else self.group.generator_indices
        for g in checked:
            row = self.group.mul_row(g)
            prods = np.matmul(self.mats[g], self.mats) % p
            if not np.array_equal(prods, self.mats[row]):
                raise InvariantError(f"homomorphism law fails at generator {g}")

    def act_vector(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        arr = np.asarray([int(x) for x in v], dtype=np.int64)
        return tuple(int(x) for x in (self.mats[g] @ arr) % self.p)

    def act_subspace(self, g: int, W: Subspace) -> Subspace:
        self._match(W)
        if W.is_zero():
            return W
        rows = (np.asarray(W.rows, dtype=np.int64) @ self.mats[g].T) % self.p
        return Subspace(self.p, self.dim, _rref(self.p, rows.tolist()))

    def module_span(self, A: Iterable[int], W: Subspace) -> Subspace:
        """Span of all translates a.W for a in A."""
        self._match(W)
        a = sorted({int(x) for x in A})
        if not a:
            return Subspace.zero(self.p, self.dim)
        stacked: list[list[int]] = []
        for g in a:
            if not 0 <= g < self.group.order:
                raise DomainError("element index out of range")
            if not W.is_zero():
                rows = (np.asarray(W.rows, dtype=np.int64) @ self.mats[g].T) % self.p
                stacked.extend(rows.tolist())
        return Subspace(self.p, self.dim, _rref(self.p, stacked))

    def subspace_orbit(self, W: Subspace) -> list[Subspace]:
        seen = {}
        for g in range(self.group.order):
            img = self.act_subspace(g, W)
            seen[img.rows] = img
        return sorted(seen.values(), key=Subspace.sort_key)

    def subspace_stabilizer(self, W: Subspace) -> Subgroup:
        members = frozenset(
            g for g in range(self.group.order)
            if self.act_subspace(g, W).rows == W.rows)
        return Subgroup(self.group, members, _verified=True)

    def symmetry_set(self, W: Subspace, alpha) -> frozenset[int]:
        """Elements g with dim(g.W meet W) >= alpha * dim W."""
        a = exact_fraction(alpha)
        if W.is_zero():
            raise DomainError("symmetry set needs a nonzero subspace")
        out = []
        for g in range(self.group.order):
            inter = self.act_subspace(g, W).intersect(W)
            if inter.dim * a.denominator >= a.numerator * W.dim:
                out.append(g)
        return frozenset(out)

    def weak_stabilizer(self, W: Subspace) -> frozenset[int]:
        """Elements whose translate of W meets W nontrivially."""
        if W.is_zero():
            raise DomainError("weak stabilizer needs a nonzero subspace")
        return frozenset(
            g for g in range(self.group.order)
            if not self.act_subspace(g, W).intersect(W).is_zero())

    def _match(self, W: Subspace) -> None:
        if W.p != self.p or W.ambient_dim != self.dim:
            raise StructuralError("subspace does not match the representation")

    def __repr__(self) -> str:
        return f"Representation({self.name})"


def permutation_representation(action: GroupAction, p: int) -> Representation:
    """0/1 matrices permuting coordinates as the action permutes points."""
    _check_prime(p)
    n, d = action.group.order, action.domain_size
    mats = np.zeros((n, d, d), dtype=np.int64)
    for g in range(n):
        mats[g, action.table[g], np.arange(d)] = 1
    return Representation(action.group, p, mats,
                          name=f"perm_rep<{action.name}, F{p}>")


def representation_from_generator_matrices(
        group: FiniteGroup, p: int, gen_mats: Sequence) -> Representation:
    """Extend matrices given for the group's generators along its closure."""
    _check_prime(p)
    gens = group.generator_indices
    if len(gen_mats) != len(gens):
        raise StructuralError(
            f"need {len(gens)} generator matrices, got {len(gen_mats)}")
    d = len(np.asarray(gen_mats[0]))
    mats = np.zeros((group.order, d, d), dtype=np.int64)
    mats[0] = np.eye(d, dtype=np.int64)
    by_gen = {gi: np.asarray(m, dtype=np.int64) % p
              for gi, m in zip(gens, gen_mats)}
    for g in range(1, group.order):
        s = group.generator_indices[group._gen_of[g]]
        f = int(group._parent_of[g])
        mats[g] = (by_gen[s] @ mats[f]) % p
    return Representation(group, p, mats)


# -- growth functions on the lattice side --------------------------------------


def actor_growth_linear(rep: Representation, W: Subspace, lam) -> SetFunction:
    """On subsets A of the group: dim(span of A.W) - lam*|A|."""
    lam = exact_fraction(lam)
    rep._match(W)
    if W.is_zero():
        raise DomainError("target subspace must be nonzero")
    cache: dict[int, int] = {}

    def fn(mask: int) -> Fraction:
        if mask not in cache:
            A = [b for b in range(rep.group.order) if (mask >> b) & 1]
            cache[mask] = rep.module_span(A, W).dim
        return Fraction(cache[mask]) - lam * bin(mask).count("1")

    label = (f"actor_growth_linear[{rep.name}, dimW={W.dim}, "
             f"lam={format_fraction(lam)}]")
    return SetFunction(rep.group.order, label, kind="generic", fn=fn)


@dataclass(frozen=True)
class LatticeMinimizationResult:
    label: str
    min_value: Fraction
    fragment_count: int
    fragments: list[Subspace]
    fragments_truncated: bool
    atoms: list[Subspace]
    atom_dim: int


class LatticeFunction:
    """dim(span A.Y) - lam*dim(Y) on the lattice of subspaces of F_p^d."""

    def __init__(self, rep: Representation, A: Iterable[int], lam):
        self.rep = rep
        self.actors = sorted({int(x) for x in A})
        if not self.actors:
            raise DomainError("actor set must be nonempty")
        self.lam = exact_fraction(lam)
        self.label = (f"target_growth_linear[{rep.name}, |A|={len(self.actors)}, "
                      f"lam={format_fraction(self.lam)}]")

    def value(self, W: Subspace) -> Fraction:
        return (Fraction(self.rep.module_span(self.actors, W).dim)
                - self.lam * W.dim)


def minimize_on_lattice(fn: LatticeFunction, *, fragment_cap: int | None = None
                        ) -> LatticeMinimizationResult:
    """Exact minimum over nonzero subspaces; fragments in (dim, basis) order."""
    rep = fn.rep
    cap = config.cap("FRAGMENT_LIST_CAP") if fragment_cap is None else fragment_cap
    best: Fraction | None = None
    count = 0
    frags: list[Subspace] = []
    atoms: list[Subspace] = []
    atom_dim = rep.dim + 1
    for W in enumerate_subspaces(rep.p, rep.dim):
        if W.is_zero():
            continue
        v = fn.value(W)
        if best is None or v < best:
            best = v
            count = 1
            frags = [W]
            atoms = [W]
            atom_dim = W.dim
        elif v == best:
            count += 1
            if len(frags) < cap:
                frags.append(W)
            if W.dim < atom_dim:
                atoms = [W]
                atom_dim = W.dim
            elif W.dim == atom_dim:
                atoms.append(W)
    assert best is not None
    return LatticeMinimizationResult(
        label=fn.label, min_value=best, fragment_count=count, fragments=frags,
        fragments_truncated=count > len(frags), atoms=atoms, atom_dim=atom_dim)


@dataclass(frozen=True)
class LatticeSubmodularityReport:
    holds: bool
    checked: Exhaustiveness
    counterexample: dict | None = None


def check_lattice_submodular(fn: LatticeFunction) -> LatticeSubmodularityReport:
    """f(U meet V) + f(U join V) <= f(U) + f(V) over all subspace pairs."""
    subs = enumerate_subspaces(fn.rep.p, fn.rep.dim)
    values = {W.rows: fn.value(W) for W in subs}
    for U in subs:
        for V in subs:
            lhs = values[U.intersect(V).rows] + values[U.sum(V).rows]
            rhs = values[U.rows] + values[V.rows]
            if lhs > rhs:
                return LatticeSubmodularityReport(
                    holds=False, checked=Exhaustiveness("exhaustive"),
                    counterexample={"U": U, "V": V, "lhs": lhs, "rhs": rhs})
    return LatticeSubmodularityReport(True, Exhaustiveness("exhaustive"))


def check_lattice_invariance(fn: LatticeFunction) -> LatticeSubmodularityReport:
    """fn(g.W) == fn(W) for every g and every subspace W."""
    subs = enumerate_subspaces(fn.rep.p, fn.rep.dim)
    for g in range(fn.rep.group.order):
        for W in subs:
            if fn.value(fn.rep.act_subspace(g, W)) != fn.value(W):
                return LatticeSubmodularityReport(
                    holds=False, checked=Exhaustiveness("exhaustive"),
                    counterexample={"g": g, "W": W})
    return LatticeSubmodularityReport(True, Exhaustiveness("exhaustive"))
