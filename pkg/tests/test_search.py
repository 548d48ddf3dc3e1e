"""Seeded instance streams: determinism, resumability, classification."""

import pytest

from subaction.cli import parse_scenario, run_scenario
from subaction.errors import StructuralError
from subaction.search import (FAMILIES, PREDICATES, build_action, build_group,
                              build_representation, search)


def test_families_and_predicates_declared():
    assert set(PREDICATES) >= set(
        ("kneser", "murphy", "ruzsa", "hamidoune", "taod",
         "kneser_trivial_stabilizer"))
    for family, pool in FAMILIES.items():
        assert pool, family


def test_build_group_kinds():
    assert build_group({"kind": "symmetric", "n": 3}).order == 6
    assert build_group({"kind": "alternating", "n": 4}).order == 12
    assert build_group({"kind": "cyclic", "n": 5}).order == 5
    assert build_group({"kind": "dihedral", "n": 4}).order == 8
    assert build_group({"kind": "affine_gl1", "p": 5}).order == 20
    G = build_group({"kind": "direct_product",
                     "left": {"kind": "cyclic", "n": 2},
                     "right": {"kind": "cyclic", "n": 3}})
    assert G.order == 6
    with pytest.raises(StructuralError):
        build_group({"kind": "sporadic"})


def test_build_action_kinds():
    G = build_group({"kind": "symmetric", "n": 3})
    assert build_action(G, {"kind": "natural"}).domain_size == 3
    assert build_action(G, {"kind": "left_translation"}).domain_size == 6
    assert build_action(G, {"kind": "conjugation"}).domain_size == 6
    coset = build_action(G, {"kind": "coset", "subgroup": [0, 1]})
    assert coset.domain_size == G.order // len(
        G.generated_subgroup([0, 1]).members)
    with pytest.raises(StructuralError):
        build_action(G, {"kind": "mystery"})


def test_build_representation_swap():
    G = build_group({"kind": "cyclic", "n": 2})
    rep = build_representation(G, None, {"kind": "swap", "p": 3})
    assert rep.dim == 2 and rep.p == 3


def test_every_family_builds():
    for family, pool in FAMILIES.items():
        gspec, aspec = pool[0]
        G = build_group(gspec)
        action = build_action(G, aspec)
        assert action.group.order == G.order


def test_search_deterministic():
    a = search("symmetric_natural", "kneser", 40, seed=7)
    b = search("symmetric_natural", "kneser", 40, seed=7)
    assert a.instances == b.instances
    assert [r.cursor for r in a.findings] == [r.cursor for r in b.findings]
    assert [r.scenario for r in a.findings] == [r.scenario for r in b.findings]


def test_search_seed_changes_stream():
    import random

    from subaction.search import _draw, _Pool

    def stream(seed):
        pool = _Pool("symmetric_natural")
        out = []
        for cursor in range(10):
            rng = random.Random(f"{seed}:{cursor}")
            _action, _args, scenario = _draw(rng, pool, "kneser")
            out.append(scenario)
        return out

    assert stream(1) != stream(2)
    assert stream(1) == stream(1)


def test_search_resume_exact():
    full = search("symmetric_natural", "kneser", 60, seed=7)
    head = search("symmetric_natural", "kneser", 30, seed=7)
    tail = search("symmetric_natural", "kneser", 30, seed=7,
                  start_cursor=head.next_cursor)
    assert head.next_cursor == 30
    assert tail.next_cursor == full.next_cursor == 60
    joined = [(r.cursor, r.scenario) for r in head.findings + tail.findings]
    assert joined == [(r.cursor, r.scenario) for r in full.findings]


def test_kneser_failures_are_findings_not_violations():
    res = search("symmetric_natural", "kneser", 150, seed=7)
    assert res.findings  # the stream does hit failing instances
    assert not res.violations
    for rec in res.findings:
        assert rec.kind == "finding"
        assert rec.report.conclusion_holds is False


def test_proved_statements_never_violated():
    for family, predicate, budget in (
            ("symmetric_natural", "ruzsa", 60),
            ("dihedral_natural", "murphy", 60),
            ("cyclic_translation", "small_growth", 60),
            ("abelian_translation", "taod", 40),
            ("affine_natural", "hamidoune", 30),
            ("symmetric_conjugation", "freiman", 40),
            ("cyclic_translation", "fragment_bounds", 40),
            ("dihedral_natural", "petridis", 30),
            ("cyclic_translation", "tao_doubling", 40),
    ):
        res = search(family, predicate, budget, seed=11)
        assert not res.violations, (family, predicate)
        assert res.instances == budget


def test_trivial_stabilizer_filter_empty_on_affine():
    # every proper nonempty subset of the affine line has a nontrivial
    # setwise stabilizer, so this search is provably empty
    res = search("affine_natural", "kneser_trivial_stabilizer", 80, seed=3)
    assert res.findings == []
    assert res.violations == []


def test_findings_replay_through_cli():
    res = search("symmetric_natural", "kneser", 150, seed=7)
    assert res.findings
    import json
    for rec in res.findings[:3]:
        sc = parse_scenario(json.dumps(rec.scenario))
        report = run_scenario(sc)
        inner = report["results"][0]["report"]
        assert inner["statement_id"] == rec.report.statement_id
        assert inner["conclusion_holds"] == rec.report.conclusion_holds


def test_unknown_family_and_predicate():
    with pytest.raises(StructuralError):
        search("no_such_family", "kneser", 5, seed=0)
    with pytest.raises(StructuralError):
        search("symmetric_natural", "no_such_predicate", 5, seed=0)
