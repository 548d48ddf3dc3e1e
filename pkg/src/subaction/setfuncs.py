"""Invariant set functions on subsets of a group or of its domain.

The three built-in families are the cut function of the action graph, the
growth of a fixed target set under a varying actor set, and the growth of a
varying target set under a fixed actor set. All values are exact rationals;
minimisation enumerates every nonempty subset, so ground sets are capped.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import config
from ._kernels import MAX_COEFF, MAX_N, SubsetFold
from .actions import GroupAction
from .errors import CapacityError, DomainError, InvariantError, StructuralError
from .groups import FiniteGroup, Subgroup
from .rationals import exact_fraction, format_fraction

_MASK_LIMIT = 64  # kernel masks are uint64


def _mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << int(p)
    return m


def _set_of(mask: int) -> frozenset[int]:
    out = []
    while mask:
        b = (mask & -mask).bit_length() - 1
        out.append(b)
        mask &= mask - 1
    return frozenset(out)


class SetFunction:
    """A rational-valued function on subsets of {0, ..., ground_size-1}.

    ``kind`` records evaluation structure: "union" holds per-point image
    masks with value |union| - lam*|S|, "cut" holds an integer weight
    matrix, "generic" holds an arbitrary exact callable on bitmasks.
    """

    def __init__(self, ground_size: int, label: str, *, kind: str = "generic",
                 union_masks: list[int] | None = None, lam: Fraction = Fraction(0),
                 cut_weights: np.ndarray | None = None,
                 fn: Callable[[int], Fraction] | None = None):
        if ground_size < 1:
            raise DomainError("ground set must be nonempty")
        self.ground_size = ground_size
        self.label = label
        self.kind = kind
        self.union_masks = union_masks
        self.lam = exact_fraction(lam)
        self.cut_weights = cut_weights
        self.fn = fn
        if kind == "union" and (union_masks is None or len(union_masks) != ground_size):
            raise StructuralError("union form needs one mask per ground point")
        if kind == "cut" and (cut_weights is None or
                              cut_weights.shape != (ground_size, ground_size)):
            raise StructuralError("cut form needs a square weight matrix")
        if kind == "generic" and fn is None:
            raise StructuralError("generic form needs a callable")

    def value_mask(self, mask: int) -> Fraction:
        if mask < 0 or mask >> self.ground_size:
            raise DomainError("subset mask outside the ground set")
        if self.kind == "union":
            u = 0
            card = 0
            m = mask
            while m:
                b = (m & -m).bit_length() - 1
                u |= self.union_masks[b]
                card += 1
                m &= m - 1
            return Fraction(_popcount(u)) - self.lam * card
        if self.kind == "cut":
            pts = sorted(_set_of(mask))
            if not pts:
                return Fraction(0)
            inside = np.zeros(self.ground_size, dtype=bool)
            inside[pts] = True
            w = self.cut_weights[pts]
            return Fraction(int(w[:, ~inside].sum()))
        return exact_fraction(self.fn(mask))

    def value(self, subset: Iterable[int]) -> Fraction:
        return self.value_mask(_mask_of(subset))

    def __repr__(self) -> str:
        return f"SetFunction({self.label}, ground={self.ground_size})"


def _popcount(x: int) -> int:
    return bin(x).count("1")


# -- families ----------------------------------------------------------------


def cut_function(action: GroupAction) -> SetFunction:
    """Edge boundary weight of the action multigraph: edges u -> g.u."""
    d = action.domain_size
    W = np.zeros((d, d), dtype=np.int64)
    for g in range(action.group.order):
        row = action.table[g]
        np.add.at(W, (np.arange(d), row), 1)
    return SetFunction(d, f"cut[{action.name}]", kind="cut", cut_weights=W)


def actor_growth(action: GroupAction, Y: Iterable[int], lam) -> SetFunction:
    """On subsets A of the group: |A.Y| - lam*|A|."""
    lam = exact_fraction(lam)
    y = action._point_indices(Y)
    if y.size == 0:
        raise DomainError("target set must be nonempty")
    masks = [_mask_of(action.table[g][y].tolist())
             for g in range(action.group.order)]
    label = f"actor_growth[{action.name}, |Y|={y.size}, lam={format_fraction(lam)}]"
    return SetFunction(action.group.order, label, kind="union",
                       union_masks=masks, lam=lam)


def target_growth(action: GroupAction, A: Iterable[int], lam) -> SetFunction:
    """On subsets Y of the domain: |A.Y| - lam*|Y|."""
    lam = exact_fraction(lam)
    a = action._group_indices(A)
    if a.size == 0:
        raise DomainError("actor set must be nonempty")
    masks = [_mask_of(np.unique(action.table[a, x]).tolist())
             for x in range(action.domain_size)]
    label = f"target_growth[{action.name}, |A|={a.size}, lam={format_fraction(lam)}]"
    return SetFunction(action.domain_size, label, kind="union",
                       union_masks=masks, lam=lam)


def cone_combination(parts: Sequence[tuple[object, SetFunction]]) -> SetFunction:
    """Nonnegative rational combination; preserves submodularity and invariance."""
    if not parts:
        raise DomainError("need at least one term")
    coefs = [exact_fraction(c) for c, _ in parts]
    fns = [f for _, f in parts]
    if any(c < 0 for c in coefs):
        raise DomainError("coefficients must be nonnegative")
    n = fns[0].ground_size
    if any(f.ground_size != n for f in fns):
        raise StructuralError("terms live on different ground sets")
    label = " + ".join(f"{format_fraction(c)}*{f.label}" for c, f in zip(coefs, fns))

    def fn(mask: int) -> Fraction:
        return sum((c * f.value_mask(mask) for c, f in zip(coefs, fns)),
                   Fraction(0))

    return SetFunction(n, label, kind="generic", fn=fn)


def subtract_modular(f: SetFunction, weights: Sequence, constant=0) -> SetFunction:
    """f minus the modular function S -> constant + sum of point weights."""
    w = [exact_fraction(x) for x in weights]
    c = exact_fraction(constant)
    if len(w) != f.ground_size:
        raise StructuralError("need one weight per ground point")

    def fn(mask: int) -> Fraction:
        tot = Fraction(0)
        m = mask
        while m:
            b = (m & -m).bit_length() - 1
            tot += w[b]
            m &= m - 1
        return f.value_mask(mask) - c - tot

    return SetFunction(f.ground_size, f"{f.label} - modular", kind="generic", fn=fn)


# -- exact scaled tables -------------------------------------------------------


def _scaled_table(f: SetFunction) -> tuple[np.ndarray, int]:
    """All 2^n values as (int64 array, denominator): value = table/den. Exact."""
    n = f.ground_size
    size = 1 << n
    if f.kind == "union":
        num, den = f.lam.numerator, f.lam.denominator
        if max(abs(num), den) < MAX_COEFF and n <= MAX_N and \
                max(f.union_masks, default=0) < (1 << _MASK_LIMIT):
            fold = _numpy_fold(f.union_masks)
            table = (fold.pops.astype(np.int64) * den
                     - fold.cards.astype(np.int64) * num)
            return table, den
    if f.kind == "cut":
        bits = ((np.arange(size, dtype=np.int64)[:, None] >> np.arange(n)) & 1)
        inside = bits.astype(np.int64)
        # sum_{u in S, v not in S} W[u, v]
        table = np.einsum("iu,uv,iv->i", inside, f.cut_weights, 1 - inside)
        return table, 1
    vals = [f.value_mask(m) for m in range(size)]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    if den >= MAX_COEFF:
        raise CapacityError("MAX_COEFF", MAX_COEFF, den,
                            hint="common denominator too large for int64 table")
    table = np.fromiter((int(v * den) for v in vals), dtype=np.int64, count=size)
    return table, den


def _numpy_fold(masks: list[int]):
    from ._kernels import numpy_backend
    return numpy_backend.SubsetFold(masks)


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustiveness:
    kind: str  # "exhaustive" | "sampled"
    samples: int = 0
    seed: int | None = None

    def to_json(self) -> dict:
        if self.kind == "exhaustive":
            return {"kind": "exhaustive"}
        return {"kind": "sampled", "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class SubmodularityReport:
    holds: bool
    checked: Exhaustiveness
    counterexample: dict | None = None  # keys: s, A1, A2, lhs, rhs


@dataclass(frozen=True)
class InvarianceReport:
    holds: bool
    checked: Exhaustiveness
    counterexample: dict | None = None  # keys: g, subset, value, translated_value


@dataclass(frozen=True)
class MinimizationResult:
    label: str
    ground_size: int
    min_value: Fraction
    fragment_count: int
    fragments: list[frozenset[int]]
    fragments_truncated: bool
    atoms: list[frozenset[int]]
    atom_size: int


@dataclass(frozen=True)
class CoreResult:
    atoms: list[frozenset[int]]
    union: frozenset[int]
    disjoint: bool


@dataclass(frozen=True)
class MuResult:
    mu: Fraction
    witness: frozenset[int]
    methods: dict
    agreed: bool
    dinkelbach_iterations: int


# -- submodularity -------------------------------------------------------------


def check_submodular(f: SetFunction, *, samples: int | None = None,
                     seed: int | None = None) -> SubmodularityReport:
    """Diminishing-returns check: for A1 <= A2 and s outside A2,
    f(A1+s) - f(A1) >= f(A2+s) - f(A2).

    Exhaustive (via a subset-minimum transform over the full value table)
    up to the configured ground cap, sampled above it.
    """
    n = f.ground_size
    if n <= config.cap("MAX_SUBMODULAR_EXHAUSTIVE"):
        return _check_submodular_exhaustive(f)
    rng = random.Random(config.cap("DEFAULT_SEED") if seed is None else seed)
    count = config.cap("SAMPLE_COUNT") if samples is None else samples
    for _ in range(count):
        a2 = rng.getrandbits(n)
        outside = [b for b in range(n) if not (a2 >> b) & 1]
        if not outside:
            continue
        s = rng.choice(outside)
        a1 = a2 & rng.getrandbits(n)
        lhs = f.value_mask(a1 | (1 << s)) - f.value_mask(a1)
        rhs = f.value_mask(a2 | (1 << s)) - f.value_mask(a2)
        if lhs < rhs:
            return SubmodularityReport(
                holds=False,
                checked=Exhaustiveness("sampled", count, seed),
                counterexample=_submodular_witness(f, s, a1, a2, lhs, rhs))
    return SubmodularityReport(True, Exhaustiveness("sampled", count, seed))


def _submodular_witness(f, s, a1, a2, lhs, rhs) -> dict:
    return {
        "s": int(s),
        "A1": _set_of(a1),
        "A2": _set_of(a2),
        "marginal_A1": lhs,
        "marginal_A2": rhs,
    }


def _check_submodular_exhaustive(f: SetFunction) -> SubmodularityReport:
    n = f.ground_size
    size = 1 << n
    table, _den = _scaled_table(f)
    report_ok = SubmodularityReport(True, Exhaustiveness("exhaustive"))
    for s in range(n):
        bit = 1 << s
        free = np.flatnonzero((np.arange(size) & bit) == 0)
        marg = np.full(size, np.iinfo(np.int64).max, dtype=np.int64)
        marg[free] = table[free | bit] - table[free]
        # msub[m] = min marginal over all s-free subsets of m
        msub = marg.copy()
        for b in range(n):
            if b == s:
                continue
            step = 1 << b
            has = np.flatnonzero((np.arange(size) & step) != 0)
            msub[has] = np.minimum(msub[has], msub[has ^ step])
        bad = free[marg[free] > msub[free]]
        if bad.size:
            a2 = int(bad.min())
            # smallest violating A1 inside this A2
            best_a1 = None
            sub = a2
            while True:
                if marg[sub] < marg[a2]:
                    best_a1 = sub if best_a1 is None else min(best_a1, sub)
                if sub == 0:
                    break
                sub = (sub - 1) & a2
            lhs = f.value_mask(best_a1 | bit) - f.value_mask(best_a1)
            rhs = f.value_mask(a2 | bit) - f.value_mask(a2)
            return SubmodularityReport(
                holds=False, checked=Exhaustiveness("exhaustive"),
                counterexample=_submodular_witness(f, s, best_a1, a2, lhs, rhs))
    return report_ok


# -- invariance ------------------------------------------------------------------


def check_invariance(f: SetFunction, action: GroupAction, *,
                     samples: int | None = None,
                     seed: int | None = None) -> InvarianceReport:
    """Check f(g.S) == f(S). The action's domain must be f's ground set;
    pass the left translation action to test translation invariance of a
    function on group subsets.
    """
    if action.domain_size != f.ground_size:
        raise StructuralError(
            f"action domain {action.domain_size} != ground {f.ground_size}")
    n = f.ground_size
    order = action.group.order
    if n <= config.cap("MAX_SUBMODULAR_EXHAUSTIVE"):
        size = 1 << n
        table, _den = _scaled_table(f)
        bits = ((np.arange(size, dtype=np.int64)[:, None] >> np.arange(n)) & 1)
        for g in range(order):
            weights = (np.int64(1) << action.table[g].astype(np.int64))
            remap = bits @ weights
            diff = table[remap] != table
            if diff.any():
                m = int(np.flatnonzero(diff)[0])
                return InvarianceReport(
                    holds=False, checked=Exhaustiveness("exhaustive"),
                    counterexample={
                        "g": g,
                        "subset": _set_of(m),
                        "value": f.value_mask(m),
                        "translated_value": f.value_mask(int(remap[m])),
                    })
        return InvarianceReport(True, Exhaustiveness("exhaustive"))
    rng = random.Random(config.cap("DEFAULT_SEED") if seed is None else seed)
    count = config.cap("SAMPLE_COUNT") if samples is None else samples
    for _ in range(count):
        m = rng.getrandbits(n)
        g = rng.randrange(order)
        gm = _mask_of(action.table[g][sorted(_set_of(m))].tolist()) if m else 0
        v, gv = f.value_mask(m), f.value_mask(gm)
        if v != gv:
            return InvarianceReport(
                holds=False, checked=Exhaustiveness("sampled", count, seed),
                counterexample={"g": g, "subset": _set_of(m),
                                "value": v, "translated_value": gv})
    return InvarianceReport(True, Exhaustiveness("sampled", count, seed))


# -- minimisation -----------------------------------------------------------------


def minimize_nonempty(f: SetFunction, *, fragment_cap: int | None = None
                      ) -> MinimizationResult:
    """Exact minimum of f over nonempty subsets, with every minimiser counted.

    Fragments are the nonempty minimisers (list capped, count exact);
    atoms are the minimisers of least cardinality (always complete).
    """
    n = f.ground_size
    ground_cap = config.cap("MAX_EXHAUSTIVE_GROUND")
    if n > ground_cap:
        raise CapacityError("MAX_EXHAUSTIVE_GROUND", ground_cap, n)
    cap = config.cap("FRAGMENT_LIST_CAP") if fragment_cap is None else fragment_cap
    if f.kind == "union" and n <= MAX_N and \
            max(abs(f.lam.numerator), f.lam.denominator) < MAX_COEFF and \
            max(f.union_masks, default=0) < (1 << _MASK_LIMIT):
        fold = SubsetFold(f.union_masks)
        num, den = f.lam.numerator, f.lam.denominator
        scaled, count, frags, truncated, atoms, atom_size = \
            fold.min_affine(num, den, cap)
        return MinimizationResult(
            label=f.label, ground_size=n, min_value=Fraction(scaled, den),
            fragment_count=count, fragments=[_set_of(m) for m in frags],
            fragments_truncated=truncated, atoms=[_set_of(m) for m in atoms],
            atom_size=atom_size)
    # table path: exact scaled values
    table, den = _scaled_table(f)
    vals = table[1:]
    best = int(vals.min())
    hits = np.flatnonzero(vals == best) + 1
    count = int(hits.size)
    cards = np.bitwise_count(hits.astype(np.uint64)).astype(np.int64)
    atom_size = int(cards.min())
    atoms = [int(m) for m in hits[cards == atom_size]]
    frags = [int(m) for m in hits[:cap]]
    return MinimizationResult(
        label=f.label, ground_size=n, min_value=Fraction(best, den),
        fragment_count=count, fragments=[_set_of(m) for m in frags],
        fragments_truncated=count > len(frags),
        atoms=[_set_of(m) for m in atoms], atom_size=atom_size)


def core_set(f: SetFunction, *, require_disjoint: bool = True) -> CoreResult:
    """Union of the atoms. For invariant submodular functions the atoms are
    pairwise disjoint; violation raises unless require_disjoint is False.
    """
    res = minimize_nonempty(f)
    union: set[int] = set()
    total = 0
    for a in res.atoms:
        union |= a
        total += len(a)
    disjoint = total == len(union)
    if require_disjoint and not disjoint:
        raise InvariantError(
            f"atoms of {f.label} are not pairwise disjoint")
    return CoreResult(atoms=res.atoms, union=frozenset(union), disjoint=disjoint)


def identity_atom(f: SetFunction, group: FiniteGroup) -> Subgroup:
    """The atom containing the identity, verified to be a subgroup.

    Defined for translation-invariant submodular functions on subsets of
    the group; the minimiser structure forces this atom to be a subgroup.
    """
    if f.ground_size != group.order:
        raise StructuralError("function must live on subsets of the group")
    res = minimize_nonempty(f)
    containing = [a for a in res.atoms if 0 in a]
    if not containing:
        raise InvariantError(
            "no atom contains the identity; function is not translation "
            "invariant submodular")
    return Subgroup(group, containing[0])


# -- minimal image ratio ------------------------------------------------------------


def min_image_ratio(action: GroupAction, Y: Iterable[int]) -> MuResult:
    """inf over nonempty actor sets A of |A.Y| / |A|, exact.

    Three routes: exhaustive subset enumeration (small groups), minimum
    over subgroups, and a Dinkelbach iteration on the growth function.
    All computed routes must agree; the returned witness attains the ratio.
    """
    G = action.group
    y = action._point_indices(Y)
    if y.size == 0:
        raise DomainError("target set must be nonempty")
    n = G.order
    methods: dict[str, dict] = {}

    exhaustive_ok = (n <= config.cap("MAX_EXHAUSTIVE_GROUND") and n <= MAX_N
                     and action.domain_size <= _MASK_LIMIT)
    subgroup_ok = n <= config.cap("MAX_SUBGROUP_ENUM_ORDER")
    if not exhaustive_ok and not subgroup_ok:
        raise CapacityError("MAX_SUBGROUP_ENUM_ORDER",
                            config.cap("MAX_SUBGROUP_ENUM_ORDER"), n,
                            hint="group too large for any ratio method")

    masks = None
    if exhaustive_ok:
        masks = [_mask_of(action.table[g][y].tolist()) for g in range(n)]
        p, q, witness_mask = SubsetFold(masks).min_ratio()
        methods["exhaustive"] = {
            "value": Fraction(p, q), "witness": _set_of(witness_mask)}

    sub_images = None
    if subgroup_ok:
        subs = G.subgroups()
        sub_images = [(H, len(action.act_set(H.member_tuple, y.tolist())))
                      for H in subs]
        best = None
        best_H = None
        for H, img in sub_images:
            r = Fraction(img, H.order)
            if best is None or r < best or (r == best and H.order < best_H.order):
                best, best_H = r, H
        methods["subgroups"] = {
            "value": best, "witness": frozenset(best_H.member_tuple)}

    iterations = 0
    if exhaustive_ok or subgroup_ok:
        value, witness, iterations = _dinkelbach(action, y, masks, sub_images)
        methods["dinkelbach"] = {"value": value, "witness": witness}

    values = {m["value"] for m in methods.values()}
    agreed = len(values) == 1
    if not agreed:
        raise InvariantError(
            f"ratio methods disagree: "
            f"{ {k: format_fraction(v['value']) for k, v in methods.items()} }")
    primary = methods.get("exhaustive") or methods["subgroups"]
    return MuResult(mu=primary["value"], witness=primary["witness"],
                    methods=methods, agreed=agreed,
                    dinkelbach_iterations=iterations)


def _dinkelbach(action: GroupAction, y: np.ndarray, masks, sub_images):
    """Parametric minimisation: lam converges to the minimum ratio from above."""
    G = action.group
    fold = SubsetFold(masks) if masks is not None else None

    def oracle(lam: Fraction):
        if fold is not None:
            scaled, _c, frags, _t, _a, _s = fold.min_affine(
                lam.numerator, lam.denominator, 1)
            return Fraction(scaled, lam.denominator), frags[0]
        best = None
        best_H = None
        for H, img in sub_images:
            v = img - lam * H.order
            if best is None or v < best:
                best, best_H = v, H
        return best, _mask_of(best_H.member_tuple)

    full = frozenset(range(G.order))
    lam = Fraction(len(action.act_set(full, y.tolist())), G.order)
    iterations = 0
    while True:
        iterations += 1
        if iterations > G.order * action.domain_size + 3:
            raise InvariantError("ratio iteration failed to converge")
        m, argmin_mask = oracle(lam)
        if m == 0:
            return lam, _set_of(argmin_mask), iterations
        if m > 0:
            raise InvariantError("ratio iteration produced a positive minimum")
        A = _set_of(argmin_mask)
        img = len(action.act_set(A, y.tolist()))
        lam = Fraction(img, len(A))
