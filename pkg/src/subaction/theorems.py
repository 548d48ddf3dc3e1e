"""One checker per growth statement.

Each checker validates its hypotheses on a concrete instance, evaluates the
conclusion exactly, constructs the witnesses the statement promises, and
returns a CheckReport. Statement ids double as CLI tokens: kneser, murphy,
small_growth, freiman, ruzsa, hamidoune, petridis, tao_doubling, taod,
fragment_bounds.

The kneser inequality is the one statement that is allowed to fail: finding
instances where it fails is the point. For every other statement,
hypotheses_hold=True with conclusion_holds=False is a counterexample to a
proved result and signals a bug somewhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import config
from ._kernels import MAX_N, SubsetFold, check_pair_ratio
from .actions import GroupAction, natural_action
from .errors import CapacityError, DomainError, StructuralError
from .groups import FiniteGroup, symmetric
from .linalg import Representation, Subspace, enumerate_subspaces
from .rationals import exact_fraction, format_fraction
from .setfuncs import (Exhaustiveness, _mask_of, _scaled_table, _set_of,
                       actor_growth, identity_atom, min_image_ratio,
                       minimize_nonempty, target_growth)
from .linalg import actor_growth_linear

STATEMENT_IDS = ("kneser", "murphy", "small_growth", "freiman", "ruzsa",
                 "hamidoune", "petridis", "tao_doubling", "taod",
                 "fragment_bounds")

_MASK_LIMIT = 64

_EXHAUSTIVE = Exhaustiveness(kind="exhaustive")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of checking one statement on one instance.

    conclusion_holds is None whenever hypotheses_hold is False; sampled
    exhaustiveness carries the seed so a report can be replayed.
    """
    statement_id: str
    hypotheses_hold: bool
    conclusion_holds: bool | None
    witnesses: dict
    counterexample: dict | None
    exhaustiveness: Exhaustiveness
    details: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.hypotheses_hold and self.conclusion_holds is False


# -- shared helpers -----------------------------------------------------------


def _group_subset(G: FiniteGroup, A: Iterable[int], name: str = "A"
                  ) -> tuple[int, ...]:
    items = sorted({int(a) for a in A})
    if not items:
        raise StructuralError(f"{name} must be nonempty")
    if items[0] < 0 or items[-1] >= G.order:
        raise DomainError(f"{name} contains an element index out of range")
    return tuple(items)


def _point_subset(action: GroupAction, Y: Iterable[int], name: str = "Y"
                  ) -> tuple[int, ...]:
    items = sorted({int(y) for y in Y})
    if not items:
        raise StructuralError(f"{name} must be nonempty")
    if items[0] < 0 or items[-1] >= action.domain_size:
        raise DomainError(f"{name} contains a point out of range")
    return tuple(items)


def _seeded(seed: int | None) -> tuple[int, random.Random]:
    s = config.cap("DEFAULT_SEED") if seed is None else int(seed)
    return s, random.Random(s)


def _sample_count(samples: int | None) -> int:
    return config.cap("SAMPLE_COUNT") if samples is None else int(samples)


def _random_nonempty_mask(rng: random.Random, n: int) -> int:
    m = rng.getrandbits(n)
    if m == 0:
        m = 1 << rng.randrange(n)
    return m


def _failed(statement_id: str, details: dict) -> CheckReport:
    return CheckReport(statement_id=statement_id, hypotheses_hold=False,
                       conclusion_holds=None, witnesses={},
                       counterexample=None, exhaustiveness=_EXHAUSTIVE,
                       details=details)


def is_left_translation(action: GroupAction) -> bool:
    """True when the table is exactly left multiplication on element indices."""
    G = action.group
    if action.domain_size != G.order:
        return False
    for g in range(G.order):
        if not np.array_equal(action.table[g], G.mul_row(g)):
            return False
    return True


def _unit_range(alpha: Fraction, name: str = "alpha") -> Fraction:
    if not 0 < alpha <= 1:
        raise DomainError(f"{name} must lie in (0, 1]; "
                          f"got {format_fraction(alpha)}")
    return alpha


# -- kneser -------------------------------------------------------------------


def check_kneser(action: GroupAction, A: Iterable[int], Y: Iterable[int]
                 ) -> CheckReport:
    """Evaluate |G_{A.Y}| + |A.Y| >= |A| + |Y| and its stabilised variant.

    Both inequalities can fail for general actions; a False conclusion is a
    finding, not an error.
    """
    A = _group_subset(action.group, A)
    Y = _point_subset(action, Y)
    AY = action.act_set(A, Y)
    stab = action.set_stabilizer(AY)
    lhs = stab.order + len(AY)
    holds = lhs >= len(A) + len(Y)
    HY = action.act_set(stab.member_tuple, Y)
    HA = action.group.product_set(stab.member_tuple, A)
    variant_holds = lhs >= len(HY) + len(HA)
    return CheckReport(
        statement_id="kneser", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"product_set": AY, "stabilizer": stab,
                   "stabilized_target": HY, "stabilized_actor": HA},
        counterexample=None if holds else {
            "A": A, "Y": Y, "lhs": lhs, "rhs": len(A) + len(Y)},
        exhaustiveness=_EXHAUSTIVE,
        details={"actor_size": len(A), "target_size": len(Y),
                 "product_size": len(AY), "stabilizer_order": stab.order,
                 "variant_holds": variant_holds,
                 "variant_rhs": len(HY) + len(HA)})


def kneser_example_instance(n: int, k: int, ell: int
                            ) -> tuple[GroupAction, tuple[int, ...],
                                       tuple[int, ...], dict]:
    """S_n natural action with A = every g mapping {0..k-1} into {0..ell-1}.

    Returns (action, A, Y, expected) where expected holds the closed counts
    |A| = ell!/(ell-k)! * (n-k)!, |A.Y| = ell, |G_{A.Y}| = ell! * (n-ell)!.
    The kneser inequality on these instances holds exactly when ell == k.
    """
    if not 1 <= k <= ell < n:
        raise DomainError("need 1 <= k <= ell < n")
    action = natural_action(symmetric(n))
    Y = tuple(range(k))
    inside = set(range(ell))
    A = tuple(g for g in range(action.group.order)
              if set(action.table[g][:k].tolist()) <= inside)
    expected = {
        "actor_size": math.factorial(ell) // math.factorial(ell - k)
        * math.factorial(n - k),
        "product_size": ell,
        "stabilizer_order": math.factorial(ell) * math.factorial(n - ell),
    }
    return action, A, Y, expected


# -- murphy -------------------------------------------------------------------


def check_murphy(obj: GroupAction | Representation, A: Iterable[int],
                 Y: Iterable[int] | Subspace) -> CheckReport:
    """|A.Y| = |Y| forces <A^-1 A> inside the setwise stabilizer of Y."""
    if isinstance(obj, Representation):
        return _murphy_linear(obj, A, Y)
    return _murphy_set(obj, A, Y)


def _murphy_set(action: GroupAction, A, Y) -> CheckReport:
    G = action.group
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    AY = action.act_set(A, Y)
    if len(AY) != len(Y):
        return _failed("murphy", {"product_size": len(AY),
                                  "target_size": len(Y)})
    quotient = G.product_set(G.inverse_set(A), A)
    H = G.generated_subgroup(quotient)
    GY = action.set_stabilizer(Y)
    holds = H.members <= GY.members
    orbits: list[frozenset[int]] = []
    seen: set[int] = set()
    for y in Y:
        if y in seen:
            continue
        orb = action.act_set(H.member_tuple, (y,))
        orbits.append(orb)
        seen |= orb
    outside = sorted(H.members - GY.members)
    return CheckReport(
        statement_id="murphy", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"generated_subgroup": H, "set_stabilizer": GY,
                   "orbits": tuple(orbits)},
        counterexample=None if holds else {"element": outside[0]},
        exhaustiveness=_EXHAUSTIVE,
        details={"quotient_set_size": len(quotient),
                 "subgroup_order": H.order, "orbit_count": len(orbits)})


def _murphy_linear(rep: Representation, A, W: Subspace) -> CheckReport:
    G = rep.group
    A = _group_subset(G, A)
    span = rep.module_span(A, W)
    if span.dim != W.dim:
        return _failed("murphy", {"span_dim": span.dim, "target_dim": W.dim})
    quotient = G.product_set(G.inverse_set(A), A)
    H = G.generated_subgroup(quotient)
    GW = rep.subspace_stabilizer(W)
    holds = H.members <= GW.members
    outside = sorted(H.members - GW.members)
    return CheckReport(
        statement_id="murphy", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"generated_subgroup": H, "subspace_stabilizer": GW,
                   "module_span": span},
        counterexample=None if holds else {"element": outside[0]},
        exhaustiveness=_EXHAUSTIVE,
        details={"quotient_set_size": len(quotient),
                 "subgroup_order": H.order})


# -- small growth -> symmetry sets ---------------------------------------------


def check_small_growth(obj: GroupAction | Representation, A, Y, alpha
                       ) -> CheckReport:
    """|A.Y| <= (2 - alpha)|Y| forces A^-1 A inside Sym_alpha(Y)."""
    alpha = _unit_range(exact_fraction(alpha))
    if isinstance(obj, Representation):
        return _small_growth_linear(obj, A, Y, alpha)
    action = obj
    G = action.group
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    AY = action.act_set(A, Y)
    if Fraction(len(AY)) > (2 - alpha) * len(Y):
        return _failed("small_growth",
                       {"product_size": len(AY), "target_size": len(Y),
                        "bound": (2 - alpha) * len(Y)})
    quotient = G.product_set(G.inverse_set(A), A)
    sym = action.symmetry_set(Y, alpha)
    outside = sorted(quotient - sym)
    holds = not outside
    return CheckReport(
        statement_id="small_growth", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"quotient_set": quotient, "symmetry_set": sym},
        counterexample=None if holds else {
            "element": outside[0],
            "overlap": len(action.act_point_set(outside[0], Y)
                           & frozenset(Y))},
        exhaustiveness=_EXHAUSTIVE,
        details={"product_size": len(AY),
                 "bound": (2 - alpha) * len(Y)})


def _small_growth_linear(rep: Representation, A, W: Subspace,
                         alpha: Fraction) -> CheckReport:
    G = rep.group
    A = _group_subset(G, A)
    span = rep.module_span(A, W)
    if Fraction(span.dim) > (2 - alpha) * W.dim:
        return _failed("small_growth",
                       {"span_dim": span.dim, "target_dim": W.dim,
                        "bound": (2 - alpha) * W.dim})
    quotient = G.product_set(G.inverse_set(A), A)
    sym = rep.symmetry_set(W, alpha)
    outside = sorted(quotient - sym)
    holds = not outside
    return CheckReport(
        statement_id="small_growth", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"quotient_set": quotient, "symmetry_set": sym},
        counterexample=None if holds else {"element": outside[0]},
        exhaustiveness=_EXHAUSTIVE,
        details={"span_dim": span.dim, "bound": (2 - alpha) * W.dim})


# -- freiman 3/2 ----------------------------------------------------------------


def check_freiman(obj: GroupAction | Representation, A, Y, alpha
                  ) -> CheckReport:
    """|A^-1.Y| <= ((3 - alpha)/2)|Y| puts AA^-1 and (AA^-1)^2 in Sym_alpha(Y).

    When Sym_alpha(Y) lands inside AA^-1 the corollary upgrade applies and
    AA^-1 must be a subgroup. On left translation the weak stabilizer of A
    must equal AA^-1, and |A^-1 A| < (3/2)|A| again forces a subgroup.
    """
    alpha = _unit_range(exact_fraction(alpha))
    if isinstance(obj, Representation):
        return _freiman_linear(obj, A, Y, alpha)
    action = obj
    G = action.group
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    Ainv = G.inverse_set(A)
    AinvY = action.act_set(Ainv, Y)
    if Fraction(len(AinvY)) > (3 - alpha) / 2 * len(Y):
        return _failed("freiman",
                       {"inverse_product_size": len(AinvY),
                        "target_size": len(Y),
                        "bound": (3 - alpha) / 2 * len(Y)})
    Q = G.product_set(A, Ainv)
    Q2 = G.product_set(Q, Q)
    sym = action.symmetry_set(Y, alpha)
    inc_square = Q2 <= sym
    inc_single = Q <= sym
    checks = {"square_in_symmetry": inc_square,
              "quotient_in_symmetry": inc_single}
    corollary_applies = sym <= Q
    if corollary_applies:
        checks["corollary_subgroup"] = G.generated_set(Q) == Q
    remark_applies = is_left_translation(action)
    if remark_applies:
        gamma = action.weak_stabilizer(A)
        checks["weak_stabilizer_equals_quotient"] = gamma == Q
        AinvA = G.product_set(Ainv, A)
        if 2 * len(AinvA) < 3 * len(A):
            checks["remark_subgroup"] = G.generated_set(Q) == Q
    holds = all(checks.values())
    bad = sorted(k for k, v in checks.items() if not v)
    return CheckReport(
        statement_id="freiman", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"quotient_set": Q, "quotient_square": Q2,
                   "symmetry_set": sym},
        counterexample=None if holds else {"failed_checks": bad},
        exhaustiveness=_EXHAUSTIVE,
        details={"inverse_product_size": len(AinvY),
                 "bound": (3 - alpha) / 2 * len(Y),
                 "corollary_applies": corollary_applies,
                 "remark_applies": remark_applies, "checks": checks})


def _freiman_linear(rep: Representation, A, W: Subspace, alpha: Fraction
                    ) -> CheckReport:
    G = rep.group
    A = _group_subset(G, A)
    Ainv = G.inverse_set(A)
    span = rep.module_span(Ainv, W)
    if Fraction(span.dim) > (3 - alpha) / 2 * W.dim:
        return _failed("freiman", {"span_dim": span.dim,
                                   "target_dim": W.dim,
                                   "bound": (3 - alpha) / 2 * W.dim})
    Q = G.product_set(A, Ainv)
    Q2 = G.product_set(Q, Q)
    sym = rep.symmetry_set(W, alpha)
    checks = {"square_in_symmetry": Q2 <= sym,
              "quotient_in_symmetry": Q <= sym}
    holds = all(checks.values())
    bad = sorted(k for k, v in checks.items() if not v)
    return CheckReport(
        statement_id="freiman", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"quotient_set": Q, "quotient_square": Q2,
                   "symmetry_set": sym},
        counterexample=None if holds else {"failed_checks": bad},
        exhaustiveness=_EXHAUSTIVE,
        details={"span_dim": span.dim, "checks": checks})


# -- ruzsa triple ----------------------------------------------------------------


def check_ruzsa_triple(action: GroupAction, A, B, Y) -> CheckReport:
    """|AB.Y|^2 <= |AB| |B.Y| max_b |Ab.Y|; with |A.Y| instead of the max
    when every element of A commutes with every element of B."""
    G = action.group
    A = _group_subset(G, A, "A")
    B = _group_subset(G, B, "B")
    Y = _point_subset(action, Y)
    AB = G.product_set(A, B)
    ABY = action.act_set(AB, Y)
    BY = action.act_set(B, Y)
    per_b = {b: action.image_size(G.product_set(A, (b,)), Y) for b in B}
    worst = max(per_b.values())
    main = len(ABY) ** 2 <= len(AB) * len(BY) * worst
    commuting = all(G.mul(a, b) == G.mul(b, a) for a in A for b in B)
    checks = {"triple_bound": main}
    AY_size = None
    if commuting:
        AY_size = action.image_size(A, Y)
        checks["commuting_bound"] = \
            len(ABY) ** 2 <= len(AB) * len(BY) * AY_size
    holds = all(checks.values())
    bad = sorted(k for k, v in checks.items() if not v)
    return CheckReport(
        statement_id="ruzsa", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"product_actors": AB, "product_set": ABY,
                   "b_images": per_b},
        counterexample=None if holds else {"failed_checks": bad},
        exhaustiveness=_EXHAUSTIVE,
        details={"lhs": len(ABY) ** 2,
                 "rhs": len(AB) * len(BY) * worst,
                 "max_single_image": worst, "commuting": commuting,
                 "actor_image_size": AY_size})


# -- hamidoune -------------------------------------------------------------------


def check_hamidoune(obj: GroupAction | Representation, Y, lam, A0=None,
                    *, samples: int | None = None, seed: int | None = None
                    ) -> CheckReport:
    """For lam in [0, mu] there is a subgroup H containing the stabilizer of Y
    with c_Y(A) >= c_Y(H) >= |Y| - lam|H| for every nonempty A."""
    if isinstance(obj, Representation):
        return _hamidoune_linear(obj, Y, lam, A0)
    return _hamidoune_set(obj, Y, lam, A0, samples=samples, seed=seed)


def _hamidoune_set(action: GroupAction, Y, lam, A0, *, samples, seed
                   ) -> CheckReport:
    G = action.group
    lam = exact_fraction(lam)
    Y = _point_subset(action, Y)
    mu = min_image_ratio(action, Y).mu
    if not 0 <= lam <= mu:
        raise DomainError(
            f"lambda must lie in [0, mu] = [0, {format_fraction(mu)}]; "
            f"got {format_fraction(lam)}")
    GY = action.set_stabilizer(Y)

    def growth(members: Iterable[int]) -> Fraction:
        members = tuple(members)
        return action.image_size(members, Y) - lam * len(members)

    n = G.order
    exhaustive_ok = (n <= min(config.cap("MAX_EXHAUSTIVE_GROUND"), MAX_N)
                     and action.domain_size <= _MASK_LIMIT)
    if lam == 0:
        H = GY
    elif exhaustive_ok:
        H = identity_atom(actor_growth(action, Y, lam), G)
    else:
        # the identity atom is the least-order subgroup containing G_Y
        # among those of minimal growth, so subgroup enumeration is exact
        best = None
        for sub in G.subgroups():
            if not GY.members <= sub.members:
                continue
            key = (growth(sub.member_tuple), sub.order)
            if best is None or key < best[0]:
                best = (key, sub)
        H = best[1]

    cH = growth(H.member_tuple)
    checks = {"stabilizer_in_subgroup": GY.members <= H.members,
              "floor_bound": cH >= len(Y) - lam * H.order}
    counterexample = None

    y = list(Y)
    if exhaustive_ok:
        masks = [_mask_of(action.table[g][y].tolist()) for g in range(n)]
        scaled, _cnt, frags, _t, _a, _s = SubsetFold(masks).min_affine(
            lam.numerator, lam.denominator, 1)
        min_growth = Fraction(scaled, lam.denominator)
        checks["minimum_at_subgroup"] = min_growth >= cH
        if not checks["minimum_at_subgroup"]:
            counterexample = {"A": _set_of(frags[0]),
                              "growth": min_growth, "subgroup_growth": cH}
        exh = _EXHAUSTIVE
    else:
        s, rng = _seeded(seed)
        count = _sample_count(samples)
        ok = True
        if n <= config.cap("MAX_SUBGROUP_ENUM_ORDER"):
            for sub in G.subgroups():
                if growth(sub.member_tuple) < cH:
                    ok = False
                    counterexample = {"A": frozenset(sub.members),
                                      "growth": growth(sub.member_tuple),
                                      "subgroup_growth": cH}
                    break
        if ok:
            for _ in range(count):
                m = _random_nonempty_mask(rng, n)
                A = _set_of(m)
                if growth(A) < cH:
                    ok = False
                    counterexample = {"A": A, "growth": growth(A),
                                      "subgroup_growth": cH}
                    break
        checks["minimum_at_subgroup"] = ok
        exh = Exhaustiveness(kind="sampled", samples=count, seed=s)

    details: dict = {"mu": mu, "lambda": lam, "subgroup_growth": cH,
                     "subgroup_order": H.order}
    if A0 is not None and lam > 0:
        A0 = _group_subset(G, A0, "A0")
        A0Y = action.act_set(A0, Y)
        M = frozenset(g for g in range(n)
                      if action.act_point_set(g, Y) <= A0Y)
        checks["corollary_bound"] = \
            lam * len(M) + len(Y) <= lam * H.order + len(A0Y)
        details["saturated_actor_size"] = len(M)
        details["corollary_product_size"] = len(A0Y)
    elif A0 is not None:
        details["corollary_skipped"] = "corollary requires lambda > 0"

    holds = all(checks.values())
    details["checks"] = checks
    return CheckReport(
        statement_id="hamidoune", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"subgroup": H, "set_stabilizer": GY},
        counterexample=counterexample if not holds else None,
        exhaustiveness=exh, details=details)


def _module_span_dims(rep: Representation, W: Subspace) -> list[int]:
    """dim<A.W> for every actor mask, by doubling on the lowest bit."""
    n = rep.group.order
    cap = config.cap("LINEAR_EXHAUSTIVE_MAX_ORDER")
    if n > cap:
        raise CapacityError("LINEAR_EXHAUSTIVE_MAX_ORDER", cap, n,
                            hint="linear variant enumerates all actor sets")
    images = [rep.act_subspace(g, W) for g in range(n)]
    spans = [Subspace.zero(rep.p, W.ambient_dim)] * (1 << n)
    for m in range(1, 1 << n):
        b = (m & -m).bit_length() - 1
        spans[m] = spans[m ^ (1 << b)].sum(images[b])
    return [s.dim for s in spans]


def _hamidoune_linear(rep: Representation, W: Subspace, lam, A0
                      ) -> CheckReport:
    G = rep.group
    lam = exact_fraction(lam)
    n = G.order
    dims = _module_span_dims(rep, W)
    mu = min(Fraction(dims[m], int(m).bit_count())
             for m in range(1, 1 << n))
    if not 0 <= lam <= mu:
        raise DomainError(
            f"lambda must lie in [0, mu] = [0, {format_fraction(mu)}]; "
            f"got {format_fraction(lam)}")
    GW = rep.subspace_stabilizer(W)
    if lam == 0:
        H = GW
    else:
        H = identity_atom(actor_growth_linear(rep, W, lam), G)
    hmask = _mask_of(H.member_tuple)

    def gamma(m: int) -> Fraction:
        return dims[m] - lam * int(m).bit_count()

    cH = gamma(hmask)
    min_gamma = min(gamma(m) for m in range(1, 1 << n))
    checks = {"stabilizer_in_subgroup": GW.members <= H.members,
              "floor_bound": cH >= W.dim - lam * H.order,
              "minimum_at_subgroup": min_gamma >= cH}
    holds = all(checks.values())
    return CheckReport(
        statement_id="hamidoune", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"subgroup": H, "subspace_stabilizer": GW},
        counterexample=None if holds else {"checks": checks},
        exhaustiveness=_EXHAUSTIVE,
        details={"mu": mu, "lambda": lam, "subgroup_growth": cH,
                 "checks": checks})


# -- petridis --------------------------------------------------------------------


def _lex_before(a: int, b: int) -> bool:
    """Mask order matching lexicographic order on sorted index tuples."""
    if a == b:
        return False
    low = ((a ^ b) & -(a ^ b)).bit_length() - 1
    return (a >> low) & 1 == 1


def _ratio_argmin(pairs: list[tuple[int, int]]) -> int:
    """Index of the minimal num/den pair, ties by popcount then mask order.

    pairs[i] is (value_i, size_i) for mask i+1; returns the winning mask.
    """
    best = None
    best_mask = 0
    for mask, (val, size) in enumerate(pairs, start=1):
        if best is None or val * best[1] < best[0] * size:
            best, best_mask = (val, size), mask
            continue
        if val * best[1] == best[0] * size:
            bc, cc = best_mask.bit_count(), mask.bit_count()
            if cc < bc or (cc == bc and _lex_before(mask, best_mask)):
                best, best_mask = (val, size), mask
    return best_mask


def find_petridis_witness(obj: GroupAction | Representation, A, Y, alpha,
                          *, samples: int | None = None,
                          seed: int | None = None) -> CheckReport:
    """|A.Y| <= alpha|A| yields B inside A with |CB.Y| <= alpha|CB| for all C.

    B minimises |C.Y|/|C| over nonempty C inside A (ties: smallest
    cardinality, then lexicographic).
    """
    alpha = exact_fraction(alpha)
    if alpha < 0:
        raise DomainError("alpha must be nonnegative")
    if isinstance(obj, Representation):
        return _petridis_linear(obj, A, Y, alpha)
    action = obj
    G = action.group
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    AY = action.act_set(A, Y)
    if Fraction(len(AY)) > alpha * len(A):
        return _failed("petridis", {"product_size": len(AY),
                                    "actor_size": len(A),
                                    "bound": alpha * len(A)})
    if len(A) > MAX_N or action.domain_size > _MASK_LIMIT:
        raise CapacityError("MAX_EXHAUSTIVE_GROUND", MAX_N, len(A),
                            hint="witness search enumerates subsets of A")
    y = list(Y)
    masks = [_mask_of(action.table[a][y].tolist()) for a in A]
    p, q, wmask = SubsetFold(masks).min_ratio()
    B = tuple(A[i] for i in range(len(A)) if (wmask >> i) & 1)
    ratio = Fraction(p, q)
    BY = action.act_set(B, Y)

    n = G.order
    counterexample = None
    if n <= config.cap("PETRIDIS_EXHAUSTIVE_MAX_ORDER") \
            and action.domain_size <= _MASK_LIMIT and n <= _MASK_LIMIT:
        lhs = [_mask_of(action.act_set((c,), BY)) for c in range(n)]
        rhs = [_mask_of(G.translate_set(c, B)) for c in range(n)]
        ok, viol, _checked = check_pair_ratio(
            lhs, rhs, alpha.numerator, alpha.denominator)
        if not ok:
            C = _set_of(viol)
            counterexample = {
                "C": C,
                "lhs": action.image_size(G.product_set(C, B), Y),
                "rhs": alpha * len(G.product_set(C, B))}
        exh = _EXHAUSTIVE
    else:
        s, rng = _seeded(seed)
        count = _sample_count(samples)
        ok = True
        for _ in range(count):
            C = _set_of(_random_nonempty_mask(rng, n))
            CB = G.product_set(C, B)
            if Fraction(action.image_size(CB, Y)) > alpha * len(CB):
                ok = False
                counterexample = {"C": C,
                                  "lhs": action.image_size(CB, Y),
                                  "rhs": alpha * len(CB)}
                break
        exh = Exhaustiveness(kind="sampled", samples=count, seed=s)

    holds = ok and ratio <= alpha
    return CheckReport(
        statement_id="petridis", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"B": frozenset(B), "witness_product": BY},
        counterexample=counterexample,
        exhaustiveness=exh,
        details={"witness_ratio": ratio, "alpha": alpha,
                 "witness_size": len(B)})


def _petridis_linear(rep: Representation, A, W: Subspace, alpha: Fraction
                     ) -> CheckReport:
    G = rep.group
    A = _group_subset(G, A)
    span = rep.module_span(A, W)
    if Fraction(span.dim) > alpha * len(A):
        return _failed("petridis", {"span_dim": span.dim,
                                    "actor_size": len(A),
                                    "bound": alpha * len(A)})
    k = len(A)
    cap = config.cap("LINEAR_EXHAUSTIVE_MAX_ORDER")
    if k > cap:
        raise CapacityError("LINEAR_EXHAUSTIVE_MAX_ORDER", cap, k,
                            hint="witness search enumerates subsets of A")
    images = [rep.act_subspace(a, W) for a in A]
    spans = [Subspace.zero(rep.p, W.ambient_dim)] * (1 << k)
    for m in range(1, 1 << k):
        b = (m & -m).bit_length() - 1
        spans[m] = spans[m ^ (1 << b)].sum(images[b])
    wmask = _ratio_argmin([(spans[m].dim, int(m).bit_count())
                           for m in range(1, 1 << k)])
    B = tuple(A[i] for i in range(k) if (wmask >> i) & 1)
    ratio = Fraction(spans[wmask].dim, len(B))

    n = G.order
    counterexample = None
    ok = True
    if n <= config.cap("PETRIDIS_EXHAUSTIVE_MAX_ORDER"):
        subsets = (_set_of(m) for m in range(1, 1 << n))
        exh = _EXHAUSTIVE
    else:
        s, rng = _seeded(None)
        count = _sample_count(None)
        subsets = (_set_of(_random_nonempty_mask(rng, n))
                   for _ in range(count))
        exh = Exhaustiveness(kind="sampled", samples=count, seed=s)
    for C in subsets:
        CB = G.product_set(C, B)
        d = rep.module_span(CB, W).dim
        if Fraction(d) > alpha * len(CB):
            ok = False
            counterexample = {"C": C, "lhs": d, "rhs": alpha * len(CB)}
            break

    holds = ok and ratio <= alpha
    return CheckReport(
        statement_id="petridis", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"B": frozenset(B), "witness_span": spans[wmask]},
        counterexample=counterexample,
        exhaustiveness=exh,
        details={"witness_ratio": ratio, "alpha": alpha,
                 "witness_size": len(B)})


# -- tao small doubling ------------------------------------------------------------


def check_tao_small_doubling(action: GroupAction, A, Y, eps) -> CheckReport:
    """|A| >= |Y| and |A.Y| <= (2 - eps) mu |Y| bound the subgroup H at
    lam = mu(1 - eps/2): |H| <= (2/eps - 1)|Y|, |H.Y| <= mu (2/eps - 1)|Y|,
    Y inside H.Y, and H.Y a union of H-orbits."""
    G = action.group
    eps = exact_fraction(eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    mu = min_image_ratio(action, Y).mu
    AY = action.act_set(A, Y)
    clauses = {
        "actor_at_least_target": len(A) >= len(Y),
        "mu_positive": mu > 0,
        "growth_bound": Fraction(len(AY)) <= (2 - eps) * mu * len(Y),
    }
    if not all(clauses.values()):
        return _failed("tao_doubling",
                       {"failed_clauses": sorted(k for k, v in clauses.items()
                                                 if not v),
                        "mu": mu, "product_size": len(AY),
                        "growth_bound": (2 - eps) * mu * len(Y)})
    lam = mu * (1 - eps / 2)
    H = identity_atom(actor_growth(action, Y, lam), G)
    HY = action.act_set(H.member_tuple, Y)
    budget = (Fraction(2) / eps - 1) * len(Y)
    checks = {
        "target_inside": frozenset(Y) <= HY,
        "subgroup_size": Fraction(H.order) <= budget,
        "image_size": Fraction(len(HY)) <= mu * budget,
        "orbit_union": action.act_set(H.member_tuple, HY) == HY,
    }
    holds = all(checks.values())
    bad = sorted(k for k, v in checks.items() if not v)
    return CheckReport(
        statement_id="tao_doubling", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"subgroup": H, "subgroup_image": HY},
        counterexample=None if holds else {"failed_checks": bad},
        exhaustiveness=_EXHAUSTIVE,
        details={"mu": mu, "lambda": lam, "size_budget": budget,
                 "checks": checks})


# -- taod (Abelian transfer to the target side) --------------------------------------


def find_taod_witness(obj: GroupAction | Representation, A, Y, alpha,
                      *, n_max: int = 5, samples: int | None = None,
                      seed: int | None = None) -> CheckReport:
    """Abelian G, |A.Y| <= alpha|Y|: some nonempty Z inside Y has
    |AC.Z| <= alpha|C.Z| for all C and |A^n.Z| <= alpha^n |Z|."""
    alpha = exact_fraction(alpha)
    if alpha < 0:
        raise DomainError("alpha must be nonnegative")
    if isinstance(obj, Representation):
        return _taod_linear(obj, A, Y, alpha, n_max)
    action = obj
    G = action.group
    if not G.is_abelian():
        raise DomainError(
            "G must be Abelian: the target growth d_A is only "
            "G-invariant when actors commute")
    A = _group_subset(G, A)
    Y = _point_subset(action, Y)
    AY = action.act_set(A, Y)
    if Fraction(len(AY)) > alpha * len(Y):
        return _failed("taod", {"product_size": len(AY),
                                "target_size": len(Y),
                                "bound": alpha * len(Y)})
    if len(Y) > MAX_N or action.domain_size > _MASK_LIMIT:
        raise CapacityError("MAX_EXHAUSTIVE_GROUND", MAX_N, len(Y),
                            hint="witness search enumerates subsets of Y")
    masks = [_mask_of(action.act_set(A, (pt,))) for pt in Y]
    p, q, wmask = SubsetFold(masks).min_ratio()
    Z = tuple(Y[i] for i in range(len(Y)) if (wmask >> i) & 1)
    ratio = Fraction(p, q)

    n = G.order
    counterexample = None
    if n <= config.cap("PETRIDIS_EXHAUSTIVE_MAX_ORDER") \
            and action.domain_size <= _MASK_LIMIT:
        lhs = [_mask_of(action.act_set(A, action.act_point_set(c, Z)))
               for c in range(n)]
        rhs = [_mask_of(action.act_point_set(c, Z)) for c in range(n)]
        ok, viol, _checked = check_pair_ratio(
            lhs, rhs, alpha.numerator, alpha.denominator)
        if not ok:
            C = _set_of(viol)
            CZ = action.act_set(C, Z)
            counterexample = {"C": C,
                              "lhs": action.image_size(A, CZ),
                              "rhs": alpha * len(CZ)}
        exh = _EXHAUSTIVE
    else:
        s, rng = _seeded(seed)
        count = _sample_count(samples)
        ok = True
        for _ in range(count):
            C = _set_of(_random_nonempty_mask(rng, n))
            CZ = action.act_set(C, Z)
            if Fraction(action.image_size(A, CZ)) > alpha * len(CZ):
                ok = False
                counterexample = {"C": C,
                                  "lhs": action.image_size(A, CZ),
                                  "rhs": alpha * len(CZ)}
                break
        exh = Exhaustiveness(kind="sampled", samples=count, seed=s)

    powers = {}
    for k in range(1, n_max + 1):
        Ak = G.product_power(A, k)
        powers[k] = Fraction(action.image_size(Ak, Z)) <= alpha ** k * len(Z)
    holds = ok and all(powers.values())
    if holds is False and counterexample is None:
        counterexample = {"failed_powers":
                          sorted(k for k, v in powers.items() if not v)}
    return CheckReport(
        statement_id="taod", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"Z": frozenset(Z)},
        counterexample=counterexample,
        exhaustiveness=exh,
        details={"witness_ratio": ratio, "alpha": alpha,
                 "power_checks": powers})


def _taod_linear(rep: Representation, A, W: Subspace, alpha: Fraction,
                 n_max: int) -> CheckReport:
    G = rep.group
    if not G.is_abelian():
        raise DomainError(
            "G must be Abelian: the target growth d_A is only "
            "G-invariant when actors commute")
    A = _group_subset(G, A)
    span = rep.module_span(A, W)
    if Fraction(span.dim) > alpha * W.dim:
        return _failed("taod", {"span_dim": span.dim, "target_dim": W.dim,
                                "bound": alpha * W.dim})
    candidates = [S for S in enumerate_subspaces(rep.p, W.ambient_dim)
                  if not S.is_zero() and S <= W]
    # candidates arrive in canonical (dim, rows) order, so keeping the first
    # strict improvement realises the smallest-dim-then-lex tie rule
    best = None
    Z = None
    for S in candidates:
        r = Fraction(rep.module_span(A, S).dim, S.dim)
        if best is None or r < best:
            best, Z = r, S

    n = G.order
    ok = True
    counterexample = None
    if n <= config.cap("PETRIDIS_EXHAUSTIVE_MAX_ORDER"):
        subsets = (_set_of(m) for m in range(1, 1 << n))
        exh = _EXHAUSTIVE
    else:
        s, rng = _seeded(None)
        count = _sample_count(None)
        subsets = (_set_of(_random_nonempty_mask(rng, n))
                   for _ in range(count))
        exh = Exhaustiveness(kind="sampled", samples=count, seed=s)
    for C in subsets:
        CZ = rep.module_span(C, Z)
        AC = G.product_set(A, C)
        d = rep.module_span(AC, Z).dim
        if Fraction(d) > alpha * CZ.dim:
            ok = False
            counterexample = {"C": C, "lhs": d, "rhs": alpha * CZ.dim}
            break

    powers = {}
    for k in range(1, n_max + 1):
        Ak = G.product_power(A, k)
        powers[k] = Fraction(rep.module_span(Ak, Z).dim) \
            <= alpha ** k * Z.dim
    holds = ok and all(powers.values())
    if holds is False and counterexample is None:
        counterexample = {"failed_powers":
                          sorted(k for k, v in powers.items() if not v)}
    return CheckReport(
        statement_id="taod", hypotheses_hold=True, conclusion_holds=holds,
        witnesses={"Z": Z},
        counterexample=counterexample,
        exhaustiveness=exh,
        details={"witness_ratio": best, "alpha": alpha,
                 "power_checks": powers})


# -- fragment size bounds -------------------------------------------------------


def check_fragment_bounds(action: GroupAction, A, lam, mu_param=None
                          ) -> CheckReport:
    """Size bounds on fragments of d_A(Y) = |A.Y| - lam|Y|.

    Part 1: lam < 1/|A| forces every fragment to have size at most |A|.
    Part 2: free action, |X| >= |A|, mu_param <= 1 and lam between
    (|X| - |A|)/(|X| - mu_param|A|) and 1 force size at least mu_param|A|.
    """
    G = action.group
    lam = exact_fraction(lam)
    A = _group_subset(G, A)
    size = len(A)
    domain = action.domain_size
    part1 = lam < Fraction(1, size)
    part2 = False
    threshold = None
    if mu_param is not None:
        mu_param = exact_fraction(mu_param)
        denom = domain - mu_param * size
        if action.profile().free and domain >= size and mu_param <= 1 \
                and denom > 0:
            threshold = Fraction(domain - size) / denom
            part2 = threshold <= lam <= 1
    if not (part1 or part2):
        return _failed("fragment_bounds",
                       {"part1_applies": part1, "part2_applies": part2,
                        "lambda": lam, "part2_threshold": threshold})
    res = minimize_nonempty(target_growth(action, A, lam))
    if res.fragments_truncated:
        lo, hi = _fragment_size_range(target_growth(action, A, lam))
    else:
        sizes = [len(f) for f in res.fragments]
        lo, hi = min(sizes), max(sizes)
    checks = {}
    if part1:
        checks["upper_bound"] = hi <= size
    if part2:
        checks["lower_bound"] = Fraction(lo) >= mu_param * size
    holds = all(checks.values())
    bad = sorted(k for k, v in checks.items() if not v)
    return CheckReport(
        statement_id="fragment_bounds", hypotheses_hold=True,
        conclusion_holds=holds,
        witnesses={"atoms": tuple(res.atoms),
                   "fragments": tuple(res.fragments)},
        counterexample=None if holds else {
            "failed_checks": bad, "smallest_fragment": lo,
            "largest_fragment": hi},
        exhaustiveness=_EXHAUSTIVE,
        details={"part1_applies": part1, "part2_applies": part2,
                 "part2_threshold": threshold, "minimum": res.min_value,
                 "fragment_count": res.fragment_count,
                 "smallest_fragment": lo, "largest_fragment": hi})


def _fragment_size_range(f) -> tuple[int, int]:
    table, _den = _scaled_table(f)
    vals = table[1:]
    hits = np.flatnonzero(vals == vals.min()).astype(np.uint64) + 1
    cards = np.bitwise_count(hits)
    return int(cards.min()), int(cards.max())
