"""One test block per growth statement checker, set and linear variants."""

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from subaction import theorems
from subaction.actions import (conjugation_action, left_translation_action,
                               natural_action)
from subaction.errors import CapacityError, DomainError, StructuralError
from subaction.groups import (cyclic, dihedral, direct_product, symmetric)
from subaction.linalg import (Subspace,
                              representation_from_generator_matrices)
from subaction.theorems import (STATEMENT_IDS, check_fragment_bounds,
                                check_freiman, check_hamidoune, check_kneser,
                                check_murphy, check_ruzsa_triple,
                                check_small_growth, check_tao_small_doubling,
                                find_petridis_witness, find_taod_witness,
                                kneser_example_instance)


def _swap_rep():
    return representation_from_generator_matrices(
        cyclic(2), 3, [np.array([[0, 1], [1, 0]])])


def test_statement_ids_complete():
    assert STATEMENT_IDS == (
        "kneser", "murphy", "small_growth", "freiman", "ruzsa",
        "hamidoune", "petridis", "tao_doubling", "taod", "fragment_bounds")


def test_empty_sets_rejected():
    action = natural_action(symmetric(3))
    with pytest.raises(StructuralError):
        check_kneser(action, (), (0,))
    with pytest.raises(StructuralError):
        check_kneser(action, (0,), ())
    with pytest.raises(DomainError):
        check_kneser(action, (99,), (0,))


# -- kneser ----------------------------------------------------------------------


def test_kneser_failing_instance():
    action, A, Y, expected = kneser_example_instance(4, 1, 2)
    rep = check_kneser(action, A, Y)
    assert rep.hypotheses_hold
    assert rep.conclusion_holds is False
    assert rep.violated  # permitted: this statement may fail
    assert rep.counterexample == {"A": A, "Y": Y, "lhs": 6, "rhs": 13}
    assert rep.details["stabilizer_order"] == expected["stabilizer_order"] == 4
    assert rep.details["variant_holds"] is False


def test_kneser_equality_at_k_equals_ell():
    action, A, Y, expected = kneser_example_instance(5, 2, 2)
    rep = check_kneser(action, A, Y)
    assert rep.conclusion_holds
    lhs = rep.details["stabilizer_order"] + rep.details["product_size"]
    assert lhs == rep.details["actor_size"] + rep.details["target_size"]


def test_kneser_formula_grid():
    for n in range(2, 6):
        for ell in range(1, n):
            for k in range(1, ell + 1):
                action, A, Y, expected = kneser_example_instance(n, k, ell)
                rep = check_kneser(action, A, Y)
                assert rep.details["actor_size"] == expected["actor_size"]
                assert rep.details["product_size"] == expected["product_size"]
                assert rep.details["stabilizer_order"] == \
                    expected["stabilizer_order"]
                assert rep.conclusion_holds == (ell == k)


def test_kneser_example_domain():
    with pytest.raises(DomainError):
        kneser_example_instance(4, 0, 2)
    with pytest.raises(DomainError):
        kneser_example_instance(4, 3, 2)
    with pytest.raises(DomainError):
        kneser_example_instance(4, 2, 4)


def test_kneser_holds_on_translation_actions():
    # classical Kneser inequality for finite groups
    G = cyclic(12)
    action = left_translation_action(G)
    rng = random.Random(3)
    for _ in range(60):
        A = rng.sample(range(12), rng.randint(1, 5))
        Y = rng.sample(range(12), rng.randint(1, 5))
        assert check_kneser(action, A, Y).conclusion_holds


# -- murphy ----------------------------------------------------------------------


def test_murphy_positive():
    G = symmetric(3)
    action = natural_action(G)
    A = (0, 1)  # identity and a transposition: A.Y = Y for its fixed pair
    # pick Y = fixed points union structure: use the orbit {0,1} of (0 1)
    # first find the transposition swapping 0,1
    from subaction.perms import from_cycles
    t = G.element_index(from_cycles(3, [(0, 1)]))
    rep = check_murphy(action, (0, t), (0, 1))
    assert rep.hypotheses_hold and rep.conclusion_holds
    H = rep.witnesses["generated_subgroup"]
    assert H.order == 2
    orbits = rep.witnesses["orbits"]
    assert sorted(map(sorted, orbits)) == [[0, 1]]


def test_murphy_hypothesis_fails():
    action = natural_action(symmetric(3))
    rep = check_murphy(action, tuple(range(6)), (0,))
    assert not rep.hypotheses_hold
    assert rep.conclusion_holds is None
    assert not rep.violated


def test_murphy_orbit_partition():
    G = cyclic(6)
    action = left_translation_action(G)
    A = (0, 2, 4)  # the even subgroup: A.Y = Y for Y a union of cosets
    Y = (0, 2, 4)
    rep = check_murphy(action, A, Y)
    assert rep.hypotheses_hold and rep.conclusion_holds
    orbits = rep.witnesses["orbits"]
    assert frozenset().union(*orbits) == frozenset(Y)
    for o1, o2 in itertools.combinations(orbits, 2):
        assert not (o1 & o2)


def test_murphy_linear():
    rep_obj = _swap_rep()
    D = Subspace.from_vectors(3, 2, [[1, 1]])
    rep = check_murphy(rep_obj, (0, 1), D)
    assert rep.hypotheses_hold and rep.conclusion_holds


# -- small growth ----------------------------------------------------------------


def test_small_growth_positive():
    G = cyclic(6)
    action = left_translation_action(G)
    A, Y = (0, 1), (0, 1, 2, 3)
    # |A.Y| = 5 <= (2 - 1/4)*4 = 7: conclusion A^-1 A in Sym_1/4(Y)
    rep = check_small_growth(action, A, Y, "1/4")
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_small_growth_alpha_range():
    action = natural_action(symmetric(3))
    for bad in ("0", "-1/2", "3/2"):
        with pytest.raises(DomainError):
            check_small_growth(action, (0,), (0,), bad)
    # alpha = 1 allowed
    rep = check_small_growth(action, (0,), (0,), "1")
    assert rep.hypotheses_hold


def test_small_growth_conclusion_matches_definition():
    G = cyclic(8)
    action = left_translation_action(G)
    rng = random.Random(9)
    for _ in range(40):
        A = tuple(rng.sample(range(8), rng.randint(1, 3)))
        Y = tuple(rng.sample(range(8), rng.randint(1, 6)))
        alpha = Fraction(rng.randint(1, 4), 4)
        rep = check_small_growth(action, A, Y, alpha)
        if not rep.hypotheses_hold:
            continue
        sym = action.symmetry_set(Y, alpha)
        quot = G.product_set(G.inverse_set(A), A)
        assert rep.conclusion_holds == (quot <= sym)
        assert rep.conclusion_holds  # proved statement: must never fail


def test_small_growth_linear():
    rep_obj = _swap_rep()
    D = Subspace.from_vectors(3, 2, [[1, 1]])
    rep = check_small_growth(rep_obj, (0, 1), D, "1")
    assert rep.hypotheses_hold and rep.conclusion_holds


# -- freiman ---------------------------------------------------------------------


def test_freiman_positive_and_checks():
    G = cyclic(6)
    action = left_translation_action(G)
    A = (0, 1)
    Y = (0, 1, 2, 3)
    rep = check_freiman(action, A, Y, "1/2")
    assert rep.hypotheses_hold
    assert rep.conclusion_holds
    checks = rep.details["checks"]
    assert checks["square_in_symmetry"] and checks["quotient_in_symmetry"]


def test_freiman_translation_remark():
    G = cyclic(12)
    action = left_translation_action(G)
    # Gamma_A = AA^-1 holds on any translation instance with the hypothesis
    rep = check_freiman(action, (0, 1), (0, 1, 2, 3), "1/2")
    assert rep.hypotheses_hold
    checks = rep.details["checks"]
    assert rep.details["remark_applies"]
    assert checks["weak_stabilizer_equals_quotient"]
    assert "remark_subgroup" not in checks  # 2|A^-1 A| = 6 is not < 3|A| = 6
    # A a subgroup: 2|A^-1 A| = 6 < 9 and AA^-1 = A is a subgroup
    rep2 = check_freiman(action, (0, 4, 8), (0, 4, 8), "1")
    assert rep2.hypotheses_hold
    assert rep2.details["checks"]["remark_subgroup"]
    assert rep2.conclusion_holds


def test_freiman_corollary_subgroup():
    # Y = a subgroup, A inside it: Sym_alpha(Y) lands inside AA^-1 = Y
    G = cyclic(8)
    action = left_translation_action(G)
    A = (0, 2, 4, 6)
    Y = (0, 2, 4, 6)
    rep = check_freiman(action, A, Y, "1")
    assert rep.hypotheses_hold
    checks = rep.details["checks"]
    if "corollary_subgroup" in checks:
        assert checks["corollary_subgroup"]


def test_freiman_linear():
    rep_obj = _swap_rep()
    D = Subspace.from_vectors(3, 2, [[1, 1]])
    rep = check_freiman(rep_obj, (0, 1), D, "1")
    assert rep.hypotheses_hold and rep.conclusion_holds


# -- ruzsa -----------------------------------------------------------------------


def test_ruzsa_random_instances():
    action = natural_action(symmetric(4))
    rng = random.Random(17)
    for _ in range(200):
        A = rng.sample(range(24), rng.randint(1, 6))
        B = rng.sample(range(24), rng.randint(1, 6))
        Y = rng.sample(range(4), rng.randint(1, 3))
        rep = check_ruzsa_triple(action, A, B, Y)
        assert rep.hypotheses_hold
        assert rep.conclusion_holds
        assert rep.details["lhs"] <= rep.details["rhs"]


def test_ruzsa_commuting_variant():
    G = cyclic(9)
    action = left_translation_action(G)
    rng = random.Random(5)
    for _ in range(100):
        A = rng.sample(range(9), rng.randint(1, 4))
        B = rng.sample(range(9), rng.randint(1, 4))
        Y = rng.sample(range(9), rng.randint(1, 4))
        rep = check_ruzsa_triple(action, A, B, Y)
        assert rep.conclusion_holds
        assert rep.details["commuting"] is True


def test_ruzsa_witness_values():
    action = natural_action(symmetric(3))
    A, B, Y = (0, 1), (2, 3), (0,)
    rep = check_ruzsa_triple(action, A, B, Y)
    AB = action.group.product_set(A, B)
    lhs = action.image_size(sorted(AB), Y) ** 2
    max_b = max(action.image_size(
        sorted(action.group.product_set(A, (b,))), Y) for b in B)
    rhs = len(AB) * action.image_size(B, Y) * max_b
    assert rep.details["lhs"] == lhs
    assert rep.details["rhs"] == rhs
    assert lhs <= rhs
    assert rep.witnesses["product_actors"] == AB
    per_b = rep.witnesses["b_images"]
    assert set(per_b) == set(B)
    assert max(per_b.values()) == max_b


# -- hamidoune -------------------------------------------------------------------


def test_hamidoune_lambda_grid():
    action = natural_action(symmetric(4))
    Y = (0,)
    for lam in ("0", "1/12", "1/6"):
        rep = check_hamidoune(action, Y, lam)
        assert rep.hypotheses_hold and rep.conclusion_holds
        checks = rep.details["checks"]
        assert checks["stabilizer_in_subgroup"]
        assert checks["floor_bound"]
        assert checks["minimum_at_subgroup"]
        assert rep.exhaustiveness.kind == "exhaustive"


def test_hamidoune_lambda_out_of_range():
    action = natural_action(symmetric(4))
    with pytest.raises(DomainError) as ei:
        check_hamidoune(action, (0,), "1/2")
    assert "[0, 1/6]" in str(ei.value)
    assert "1/2" in str(ei.value)


def test_hamidoune_zero_lambda_uses_stabilizer():
    action = natural_action(symmetric(4))
    rep = check_hamidoune(action, (0, 1), "0")
    H = rep.witnesses["subgroup"]
    assert H.members == action.set_stabilizer((0, 1)).members


def test_hamidoune_corollary():
    action = natural_action(symmetric(4))
    rep = check_hamidoune(action, (0,), "1/6", (0, 1))
    checks = rep.details["checks"]
    assert "corollary_bound" in checks and checks["corollary_bound"]
    assert rep.details["saturated_actor_size"] >= 1
    rep0 = check_hamidoune(action, (0,), "0", (0, 1))
    assert "corollary_skipped" in rep0.details
    assert "corollary_bound" not in rep0.details["checks"]


def test_hamidoune_linear():
    rep_obj = _swap_rep()
    D = Subspace.from_vectors(3, 2, [[1, 1]])
    rep = check_hamidoune(rep_obj, D, "1/2")
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_hamidoune_sampled_on_larger_group():
    G = symmetric(5)
    action = natural_action(G)  # order 120 > exhaustive caps
    rep = check_hamidoune(action, (0,), "1/24", samples=50, seed=1)
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert rep.exhaustiveness.kind == "sampled"
    assert rep.exhaustiveness.samples == 50


# -- petridis --------------------------------------------------------------------


def test_petridis_witness_properties():
    G = symmetric(3)
    action = natural_action(G)
    A = tuple(range(6))
    Y = (0,)
    rep = find_petridis_witness(action, A, Y, "1/2")
    assert rep.hypotheses_hold and rep.conclusion_holds
    B = rep.witnesses["B"]
    assert set(B) <= set(A)
    ratio = rep.details["witness_ratio"]
    assert ratio == Fraction(action.image_size(sorted(B), Y), len(B))
    assert ratio <= Fraction(1, 2)
    assert rep.details["witness_size"] == len(B)
    assert rep.exhaustiveness.kind == "exhaustive"


def test_petridis_tie_break_smallest_then_lex():
    # translation with Y a point: every C has |C.Y| = |C|, so all 31
    # subsets tie at ratio 1; the tie rule picks the least singleton
    G = cyclic(5)
    action = left_translation_action(G)
    A = tuple(range(5))
    rep = find_petridis_witness(action, A, (0,), "1")
    B = rep.witnesses["B"]
    assert B == frozenset({0})


def test_petridis_hypothesis_fails():
    action = natural_action(symmetric(3))
    rep = find_petridis_witness(action, (1,), (0,), "1/100")
    assert not rep.hypotheses_hold
    assert rep.conclusion_holds is None


def test_petridis_alpha_nonnegative():
    action = natural_action(symmetric(3))
    with pytest.raises(DomainError):
        find_petridis_witness(action, (0,), (0,), "-1")


def test_petridis_sampled_above_order_cap():
    G = dihedral(8)  # order 16 > 14
    action = left_translation_action(G)
    A = tuple(range(16))
    rep = find_petridis_witness(action, A, (0,), "1", samples=60, seed=2)
    assert rep.conclusion_holds
    assert rep.exhaustiveness.kind == "sampled"


def test_petridis_linear():
    rep_obj = _swap_rep()
    W = Subspace.from_vectors(3, 2, [[1, 0]])
    rep = find_petridis_witness(rep_obj, (0, 1), W, "2")
    assert rep.hypotheses_hold and rep.conclusion_holds


# -- tao doubling ----------------------------------------------------------------


def test_tao_doubling_positive():
    G = cyclic(6)
    action = left_translation_action(G)
    A = (0, 3)
    rep = check_tao_small_doubling(action, A, A, "1")
    assert rep.hypotheses_hold and rep.conclusion_holds
    checks = rep.details["checks"]
    for key in ("target_inside", "subgroup_size", "image_size",
                "orbit_union"):
        assert checks[key], key
    H = rep.witnesses["subgroup"]
    assert H.order <= (2 - 1) * 2  # (2/eps - 1)|Y|


def test_tao_doubling_clause_reporting():
    G = cyclic(6)
    action = left_translation_action(G)
    rep = check_tao_small_doubling(action, (1,), (0, 1), "1/2")
    assert not rep.hypotheses_hold
    assert "failed_clauses" in rep.details
    assert "actor_at_least_target" in rep.details["failed_clauses"]


def test_tao_doubling_epsilon_positive():
    action = left_translation_action(cyclic(4))
    with pytest.raises(DomainError):
        check_tao_small_doubling(action, (0,), (0,), "0")


# -- taod ------------------------------------------------------------------------


def test_taod_requires_abelian():
    action = natural_action(symmetric(3))
    with pytest.raises(DomainError) as ei:
        find_taod_witness(action, (0,), (0,), "1")
    assert "Abelian" in str(ei.value)


def test_taod_witness_and_powers():
    G = cyclic(6)
    action = left_translation_action(G)
    A = (0, 3)
    Y = (0, 1, 3, 4)
    rep = find_taod_witness(action, A, Y, "1", n_max=5)
    assert rep.hypotheses_hold and rep.conclusion_holds
    Z = rep.witnesses["Z"]
    assert set(Z) <= set(Y)
    powers = rep.details["power_checks"]
    assert set(powers) == {1, 2, 3, 4, 5}
    assert all(powers.values())
    for k in (1, 2, 5):
        Ak = sorted(G.product_power(A, k))
        assert action.image_size(Ak, sorted(Z)) <= 1 * len(Z)


def test_taod_product_group():
    G = direct_product(cyclic(2), cyclic(4))
    action = left_translation_action(G)
    A = (0, 1)
    Y = tuple(range(8))
    rep = find_taod_witness(action, A, Y, "2", n_max=3)
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_taod_linear():
    rep_obj = _swap_rep()
    D = Subspace.from_vectors(3, 2, [[1, 1]])
    rep = find_taod_witness(rep_obj, (0, 1), D, "1", n_max=3)
    assert rep.hypotheses_hold and rep.conclusion_holds
    Z = rep.witnesses["Z"]
    assert Z.dim >= 1 and Z <= D


# -- fragment bounds -------------------------------------------------------------


def test_fragment_bounds_small_lambda():
    action = natural_action(symmetric(3))
    A = (0, 1, 3)
    rep = check_fragment_bounds(action, A, "1/4")  # 1/4 < 1/3
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert rep.details["part1_applies"]
    assert rep.details["largest_fragment"] <= len(A)


def test_fragment_bounds_free_regime():
    G = cyclic(5)
    action = left_translation_action(G)
    A = (0, 1)
    rep = check_fragment_bounds(action, A, "1", mu_param="1")
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert rep.details["part2_applies"]
    assert rep.details["smallest_fragment"] >= 2


def test_fragment_bounds_neither_regime():
    action = natural_action(symmetric(3))
    rep = check_fragment_bounds(action, (0, 1), "3/4")
    assert not rep.hypotheses_hold
    assert rep.conclusion_holds is None


def test_violated_property():
    action, A, Y, _ = kneser_example_instance(4, 1, 2)
    assert check_kneser(action, A, Y).violated
    ok = check_kneser(action, (0,), (0,))
    assert not ok.violated
