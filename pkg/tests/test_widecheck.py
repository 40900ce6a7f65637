import pytest

from liewide.errors import InvalidInputError, MathematicalRejection
from liewide.services.closedset import closed_subset, is_parabolic
from liewide.services.presets import get_preset
from liewide.services.regsub import GENERATED_BY_TR, build_regular_subalgebra, has_ad_nilpotent_radical
from liewide.services.rootsys import Weight, build_root_system, fundamental_weight
from liewide.services.widecheck import (
    Decision,
    closed_subsets_with_decisions,
    decide_cyclic_wide,
    default_grid,
    direct_sum_subalgebra,
    empirical_cyclic_wide,
    evaluate_weight,
    is_wide,
    positive_root_ij,
    preset_tk_subalgebra,
    verify_theorems,
)


def test_example1_is_wide_but_not_cyclic_wide(example1):
    decision = decide_cyclic_wide(example1)
    assert decision.wide
    assert decision.cyclic_wide == "no"
    assert decision.witnesses["uncovered"] == [[0, -1, -1], [0, -1, 0], [0, 1, 0], [0, 1, 1]]
    assert "weight" in decision.witnesses
    assert "normal_form_word" in decision.witnesses


def test_example1_witness_weight_breaks_cyclic_indecomposability(example1):
    decision = decide_cyclic_wide(example1)
    verdict = evaluate_weight(example1, Weight(tuple(decision.witnesses["weight"])))
    assert verdict.indecomposable
    assert not verdict.cyclic_indecomposable


def test_example1_standard_dual_module(example1):
    verdict = evaluate_weight(example1, Weight((0, 0, 1)))
    assert verdict.dim == 4
    assert verdict.radical_dim == 1
    assert verdict.quotient_singular_dim == 2
    assert verdict.indecomposable
    assert not verdict.quotient_simple
    assert verdict.dichotomy is None


def test_example1_variant_is_undecided(example1_variant):
    decision = decide_cyclic_wide(example1_variant)
    assert decision.wide
    assert decision.cyclic_wide == "unknown"
    verdict = evaluate_weight(example1_variant, Weight((0, 0, 1)))
    assert verdict.radical_dim == 4
    assert verdict.cyclic_indecomposable


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_tk_family_is_cyclic_wide(n, k):
    s = preset_tk_subalgebra(n, k)
    assert is_parabolic(s.T)
    assert len(s.special) == sum(n - i + 1 for i in range(1, k + 1))
    decision = decide_cyclic_wide(s)
    assert decision == Decision(wide=True, cyclic_wide="yes", reason=decision.reason)


@pytest.mark.parametrize("n,k", [(1, 1), (3, 0), (3, 3)])
def test_tk_rejects_bad_parameters(n, k):
    with pytest.raises(InvalidInputError):
        preset_tk_subalgebra(n, k)


def test_positive_root_ij(a3):
    assert positive_root_ij(a3, 1, 3).coeffs == (1, 1, 1)
    assert positive_root_ij(a3, 2, 2).coeffs == (0, 1, 0)


def test_decision_requires_levi_decomposable(a3):
    s = build_regular_subalgebra((a3, [[1, 0, 0], [-1, 0, 0]]), GENERATED_BY_TR)
    with pytest.raises(MathematicalRejection):
        decide_cyclic_wide(s)


def test_decision_invariant():
    with pytest.raises(AssertionError):
        Decision(wide=False, cyclic_wide="yes", reason="")


def test_not_wide_decides_no(a3):
    # Tʳ = {±α1}, Tᵘ = {−α3}: the symmetric hull only reaches A1 × A1
    s = build_regular_subalgebra((a3, [[1, 0, 0], [-1, 0, 0], [0, 0, -1]]), GENERATED_BY_TR)
    decision = decide_cyclic_wide(s)
    assert not is_wide(s)
    assert not decision.wide
    assert decision.cyclic_wide == "no"
    assert [0, 1, 0] in decision.witnesses["missing"]


def test_every_ad_nilpotent_subalgebra_is_decided():
    system = build_root_system("B2")
    for T, decision in closed_subsets_with_decisions(system):
        if decision is None:
            continue
        s = build_regular_subalgebra(T, GENERATED_BY_TR)
        assert has_ad_nilpotent_radical(s)
        assert decision.cyclic_wide != "unknown"
        assert (decision.cyclic_wide == "yes") == is_parabolic(T)


def test_closed_subsets_with_decisions_a1():
    rows = list(closed_subsets_with_decisions(build_root_system("A1")))
    assert len(rows) == 4
    assert all(decision is None for _, decision in rows)


def test_direct_sum_subalgebra():
    s = get_preset("sum-demo")
    assert s.ambient.name == "A2+A1"
    assert {r.coeffs for r in s.special} == {(1, 0, 0), (1, 1, 0), (0, 0, -1)}
    assert {r.coeffs for r in s.symmetric} == {(0, 1, 0), (0, -1, 0)}
    assert s.dim == 1 + 5
    assert decide_cyclic_wide(s).cyclic_wide == "yes"


def test_direct_sum_ambient_mismatch():
    part = preset_tk_subalgebra(2, 1)
    with pytest.raises(MathematicalRejection):
        direct_sum_subalgebra([part], build_root_system("A3"))
    with pytest.raises(InvalidInputError):
        direct_sum_subalgebra([])


def test_default_grid_order():
    grid = default_grid(build_root_system("A2"), 8)
    assert [w.marks for w in grid] == [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1)]


def test_default_grid_respects_bound():
    system = build_root_system("G2")
    grid = default_grid(system, 14)
    assert [w.marks for w in grid] == [(0, 0), (1, 0), (0, 1)]


def test_oversized_weights_are_skipped(example1):
    verdict = evaluate_weight(example1, Weight((1, 1, 1)), cap=10)
    assert verdict.skipped is not None
    assert verdict.dim == 64
    assert verdict.cyclic_indecomposable is None


def test_empirical_report_finds_witness(example1):
    grid = [Weight((0, 0, 0)), Weight((0, 0, 1)), Weight((1, 0, 0))]
    report = empirical_cyclic_wide(example1, grid)
    assert len(report.checked) == 3
    assert report.all_indecomposable
    assert not report.all_cyclic_indecomposable
    assert report.witness == (0, 0, 1)


def test_parabolic_weights_split_or_absorb():
    s = preset_tk_subalgebra(3, 1)
    for weight in default_grid(s.ambient, 20):
        verdict = evaluate_weight(s, weight)
        assert verdict.dichotomy in ("split", "absorbed")
        assert verdict.cyclic_indecomposable


def test_verify_a2_small_grid():
    system = build_root_system("A2")
    grid = [Weight((0, 0)), Weight((1, 0)), Weight((0, 1))]
    result = verify_theorems(system, grid)
    assert result.subalgebras == 6
    assert len(result.cells) == 18
    assert [c.index for c in result.cells] == list(range(18))
    assert result.discrepancies == []
    assert all(c.predicted_cyclic == "yes" for c in result.cells)


def test_verify_a1_has_no_levi_decomposable_subalgebras():
    result = verify_theorems(build_root_system("A1"), [Weight((0,)), Weight((1,))])
    assert result.subalgebras == 0
    assert result.cells == []


def test_verify_bound():
    with pytest.raises(InvalidInputError):
        verify_theorems(build_root_system("A3"), [Weight((0, 0, 0))], bound=10)


def test_parallel_run_matches_serial():
    system = build_root_system("A2")
    grid = default_grid(system, 6)
    serial = verify_theorems(system, grid, jobs=1)
    parallel = verify_theorems(system, grid, jobs=2)
    assert [(c.T, c.weight, c.verdict) for c in serial.cells] == [
        (c.T, c.weight, c.verdict) for c in parallel.cells
    ]


@pytest.mark.slow
@pytest.mark.parametrize("spec,max_dim", [("A2", 300), ("B2", 100), ("G2", 100)])
def test_rank_two_sweep(spec, max_dim):
    result = verify_theorems(build_root_system(spec), max_dim=max_dim)
    assert result.discrepancies == []


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3])
def test_tk_sweep(n):
    s = preset_tk_subalgebra(n, 1)
    report = empirical_cyclic_wide(s, default_grid(s.ambient, 300))
    assert report.all_cyclic_indecomposable
    assert report.checked
    assert all(v.dichotomy in ("split", "absorbed") for v in report.checked)


@pytest.mark.slow
def test_tk_a4_fundamental_weights():
    s = preset_tk_subalgebra(4, 1)
    grid = [fundamental_weight(s.ambient, i) for i in range(1, 5)]
    assert empirical_cyclic_wide(s, grid).all_cyclic_indecomposable


@pytest.mark.slow
def test_a4_fundamental_weights_on_example_like_subalgebras():
    system = build_root_system("A4")
    # Tʳ = {±α4}, Tᵘ = {−α1,j}: wide, ad-nilpotent radical, not parabolic
    members = [[0, 0, 0, 1], [0, 0, 0, -1], [-1, 0, 0, 0], [-1, -1, 0, 0], [-1, -1, -1, 0], [-1, -1, -1, -1]]
    s = build_regular_subalgebra(closed_subset(system, members), GENERATED_BY_TR)
    decision = decide_cyclic_wide(s)
    assert decision.cyclic_wide == "no"
    verdict = evaluate_weight(s, Weight(tuple(decision.witnesses["weight"])))
    assert not verdict.cyclic_indecomposable
