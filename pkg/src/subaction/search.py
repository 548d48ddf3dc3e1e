"""Instance builders and counterexample search.

Holds the constructors that turn scenario spec dicts into live objects
(shared with the CLI runner) and the seeded instance families the search
subcommand streams through. Search is resumable: instance i is drawn from
a generator seeded with (seed, i) alone, so a (seed, cursor) pair pins
down the whole stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import theorems
from .actions import (GroupAction, conjugation_action, coset_action,
                      left_translation_action, natural_action)
from .errors import DomainError, StructuralError
from .groups import (FiniteGroup, affine_gl1, alternating, cyclic, dihedral,
                     direct_product, symmetric)
from .linalg import Representation, permutation_representation, \
    representation_from_generator_matrices
from .rationals import exact_fraction

# -- builders ------------------------------------------------------------------


def build_group(spec: dict) -> FiniteGroup:
    kind = spec.get("kind")
    if kind == "symmetric":
        return symmetric(int(spec["n"]))
    if kind == "alternating":
        return alternating(int(spec["n"]))
    if kind == "cyclic":
        return cyclic(int(spec["n"]))
    if kind == "dihedral":
        return dihedral(int(spec["n"]))
    if kind == "affine_gl1":
        return affine_gl1(int(spec["p"]))
    if kind == "direct_product":
        return direct_product(build_group(spec["left"]),
                              build_group(spec["right"]))
    raise StructuralError(f"unknown group kind {kind!r}")


def build_action(group: FiniteGroup, spec: dict) -> GroupAction:
    kind = spec.get("kind")
    if kind == "natural":
        return natural_action(group)
    if kind == "left_translation":
        return left_translation_action(group)
    if kind == "conjugation":
        return conjugation_action(group)
    if kind == "coset":
        H = group.generated_subgroup([int(g) for g in spec["subgroup"]])
        return coset_action(group, H)
    raise StructuralError(f"unknown action kind {kind!r}")


def build_representation(group: FiniteGroup, action: GroupAction | None,
                         spec: dict) -> Representation:
    kind = spec.get("kind")
    if kind == "permutation":
        if action is None:
            raise StructuralError("permutation representation needs an action")
        return permutation_representation(action, int(spec["p"]))
    if kind == "matrices":
        return representation_from_generator_matrices(
            group, int(spec["p"]),
            [[[int(x) for x in row] for row in mat]
             for mat in spec["generators"]])
    if kind == "swap":
        if group.order != 2:
            raise StructuralError("swap representation needs a group of order 2")
        return representation_from_generator_matrices(
            group, int(spec["p"]), [[[0, 1], [1, 0]]])
    raise StructuralError(f"unknown representation kind {kind!r}")


# -- families ------------------------------------------------------------------

# name -> list of (group spec, action spec); instances draw a pool entry
FAMILIES: dict[str, list[tuple[dict, dict]]] = {
    "symmetric_natural": [
        ({"kind": "symmetric", "n": n}, {"kind": "natural"})
        for n in range(2, 6)],
    "alternating_natural": [
        ({"kind": "alternating", "n": n}, {"kind": "natural"})
        for n in range(3, 6)],
    "dihedral_natural": [
        ({"kind": "dihedral", "n": n}, {"kind": "natural"})
        for n in range(3, 9)],
    "affine_natural": [
        ({"kind": "affine_gl1", "p": p}, {"kind": "natural"})
        for p in (5, 7)],
    "cyclic_translation": [
        ({"kind": "cyclic", "n": n}, {"kind": "left_translation"})
        for n in range(2, 13)],
    "abelian_translation": [
        ({"kind": "cyclic", "n": n}, {"kind": "left_translation"})
        for n in range(2, 11)] + [
        ({"kind": "direct_product",
          "left": {"kind": "cyclic", "n": m},
          "right": {"kind": "cyclic", "n": n}},
         {"kind": "left_translation"})
        for m in range(2, 5) for n in range(2, 5)],
    "symmetric_conjugation": [
        ({"kind": "symmetric", "n": n}, {"kind": "conjugation"})
        for n in (3, 4)],
}

PREDICATES = tuple(theorems.STATEMENT_IDS) + ("kneser_trivial_stabilizer",)

_ALPHA_GRID = ("1/4", "1/2", "3/4", "1")
_EPS_GRID = ("1/4", "1/2", "1", "3/2")
_LAM_FACTORS = ("0", "1/4", "1/2", "3/4", "1")


@dataclass
class SearchRecord:
    cursor: int
    kind: str  # "finding" | "violation"
    scenario: dict
    report: theorems.CheckReport


@dataclass
class SearchResult:
    family: str
    predicate: str
    seed: int
    start_cursor: int
    next_cursor: int
    instances: int
    hypotheses_held: int
    findings: list[SearchRecord] = field(default_factory=list)
    violations: list[SearchRecord] = field(default_factory=list)


class _Pool:
    """Built actions for a family, constructed once per search."""

    def __init__(self, family: str):
        if family not in FAMILIES:
            raise StructuralError(f"unknown family {family!r}")
        self.entries = []
        for gspec, aspec in FAMILIES[family]:
            G = build_group(gspec)
            self.entries.append((build_action(G, aspec), gspec, aspec))


def _subset(rng: random.Random, n: int, max_size: int) -> tuple[int, ...]:
    size = rng.randint(1, max(1, min(n, max_size)))
    return tuple(sorted(rng.sample(range(n), size)))


def _biased_actor(rng: random.Random, action: GroupAction) -> tuple[int, ...]:
    """Half the draws sit inside a subgroup with the identity adjoined,
    which keeps equality-style hypotheses reachable."""
    G = action.group
    if rng.random() < 0.5:
        gens = _subset(rng, G.order, 2)
        members = sorted(G.generated_set(gens))
        size = rng.randint(1, min(len(members), 8))
        picked = set(rng.sample(members, size))
        picked.add(0)
        return tuple(sorted(picked))
    return _subset(rng, G.order, 8)


def _orbit_union(rng: random.Random, action: GroupAction,
                 A: tuple[int, ...]) -> tuple[int, ...]:
    """Union of orbits of the subgroup generated by A, for equality cases."""
    members = action.group.generated_set(A)
    seen: set[int] = set()
    blocks: list[frozenset[int]] = []
    for x in range(action.domain_size):
        if x not in seen:
            orb = action.act_set(members, (x,))
            blocks.append(orb)
            seen |= orb
    count = rng.randint(1, len(blocks))
    chosen: set[int] = set()
    for blk in rng.sample(blocks, count):
        chosen |= blk
    return tuple(sorted(chosen))


def _draw(rng: random.Random, pool: _Pool, predicate: str
          ) -> tuple[GroupAction, dict, dict]:
    """One instance: the action plus the checker arguments, replayable."""
    action, gspec, aspec = pool.entries[rng.randrange(len(pool.entries))]
    G = action.group
    args: dict = {}
    if predicate in ("kneser", "kneser_trivial_stabilizer"):
        args = {"A": _subset(rng, G.order, 8),
                "Y": _subset(rng, action.domain_size, 6)}
    elif predicate == "murphy":
        A = _biased_actor(rng, action)
        Y = _orbit_union(rng, action, A) if rng.random() < 0.5 \
            else _subset(rng, action.domain_size, 6)
        args = {"A": A, "Y": Y}
    elif predicate in ("small_growth", "freiman", "petridis"):
        args = {"A": _biased_actor(rng, action),
                "Y": _subset(rng, action.domain_size, 6),
                "alpha": rng.choice(_ALPHA_GRID)}
    elif predicate == "taod":
        args = {"A": _biased_actor(rng, action),
                "Y": _subset(rng, action.domain_size, 6),
                "alpha": rng.choice(("1", "3/2", "2"))}
    elif predicate == "ruzsa":
        args = {"A": _subset(rng, G.order, 6),
                "B": _subset(rng, G.order, 6),
                "Y": _subset(rng, action.domain_size, 6)}
    elif predicate == "hamidoune":
        from .setfuncs import min_image_ratio
        Y = _subset(rng, action.domain_size, 6)
        mu = min_image_ratio(action, Y).mu
        lam = mu * exact_fraction(rng.choice(_LAM_FACTORS))
        args = {"Y": Y, "lam": lam}
        if rng.random() < 0.5:
            args["A0"] = _subset(rng, G.order, 6)
    elif predicate == "tao_doubling":
        A = _biased_actor(rng, action)
        Y = _orbit_union(rng, action, A) if rng.random() < 0.5 \
            else _subset(rng, action.domain_size, 4)
        args = {"A": A, "Y": Y, "eps": rng.choice(_EPS_GRID)}
    elif predicate == "fragment_bounds":
        args = {"A": _subset(rng, G.order, 6),
                "lam": rng.choice(("0", "1/8", "1/4", "1/2", "3/4", "1")),
                "mu_param": rng.choice(("1/2", "3/4", "1"))}
    else:
        raise StructuralError(f"unknown predicate {predicate!r}")
    scenario = _replay_scenario(gspec, aspec, predicate, args)
    return action, args, scenario


def _replay_scenario(gspec: dict, aspec: dict, predicate: str, args: dict
                     ) -> dict:
    """A scenario dict that reruns exactly this instance via `run`."""
    sets = {}
    task: dict = {"task": "kneser" if predicate == "kneser_trivial_stabilizer"
                  else predicate}
    for key in ("A", "B", "Y", "A0"):
        if key in args:
            sets[key] = list(args[key])
            task[key] = key
    for key, alias in (("alpha", "alpha"), ("eps", "epsilon"),
                       ("lam", "lambda"), ("mu_param", "mu_param")):
        if key in args:
            v = args[key]
            task[alias] = str(v) if isinstance(v, Fraction) else v
    return {"group": gspec, "action": aspec, "sets": sets, "tasks": [task]}


def _run_predicate(action: GroupAction, predicate: str, args: dict
                   ) -> theorems.CheckReport:
    if predicate in ("kneser", "kneser_trivial_stabilizer"):
        return theorems.check_kneser(action, args["A"], args["Y"])
    if predicate == "murphy":
        return theorems.check_murphy(action, args["A"], args["Y"])
    if predicate == "small_growth":
        return theorems.check_small_growth(action, args["A"], args["Y"],
                                           args["alpha"])
    if predicate == "freiman":
        return theorems.check_freiman(action, args["A"], args["Y"],
                                      args["alpha"])
    if predicate == "petridis":
        return theorems.find_petridis_witness(action, args["A"], args["Y"],
                                              args["alpha"])
    if predicate == "taod":
        return theorems.find_taod_witness(action, args["A"], args["Y"],
                                          args["alpha"])
    if predicate == "ruzsa":
        return theorems.check_ruzsa_triple(action, args["A"], args["B"],
                                           args["Y"])
    if predicate == "hamidoune":
        return theorems.check_hamidoune(action, args["Y"], args["lam"],
                                        args.get("A0"))
    if predicate == "tao_doubling":
        return theorems.check_tao_small_doubling(action, args["A"],
                                                 args["Y"], args["eps"])
    if predicate == "fragment_bounds":
        return theorems.check_fragment_bounds(action, args["A"], args["lam"],
                                              args["mu_param"])
    raise StructuralError(f"unknown predicate {predicate!r}")


def search(family: str, predicate: str, budget: int, seed: int,
           start_cursor: int = 0) -> SearchResult:
    """Stream `budget` seeded instances, recording findings and violations.

    A finding satisfies the search predicate (for the kneser predicates:
    the inequality fails, optionally with trivial stabilizer). A violation
    is a hypotheses-true/conclusion-false outcome on any proved statement;
    those should never occur.
    """
    if predicate not in PREDICATES:
        raise StructuralError(f"unknown predicate {predicate!r}")
    if budget < 1:
        raise DomainError("budget must be positive")
    pool = _Pool(family)
    result = SearchResult(family=family, predicate=predicate, seed=seed,
                          start_cursor=start_cursor,
                          next_cursor=start_cursor + budget,
                          instances=0, hypotheses_held=0)
    for cursor in range(start_cursor, start_cursor + budget):
        rng = random.Random(f"{seed}:{cursor}")
        action, args, scenario = _draw(rng, pool, predicate)
        if predicate == "taod" and not action.group.is_abelian():
            continue
        result.instances += 1
        report = _run_predicate(action, predicate, args)
        if not report.hypotheses_hold:
            continue
        result.hypotheses_held += 1
        if report.conclusion_holds:
            continue
        record = SearchRecord(cursor=cursor, kind="finding",
                              scenario=scenario, report=report)
        if predicate == "kneser":
            result.findings.append(record)
        elif predicate == "kneser_trivial_stabilizer":
            if report.details["stabilizer_order"] == 1:
                result.findings.append(record)
        else:
            record.kind = "violation"
            result.violations.append(record)
    return result
