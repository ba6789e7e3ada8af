"""Parameterized solvers: budgets, threshold choice, and agreement."""
import math

import pytest

from paritykit import (
    BudgetExceeded,
    FptConfig,
    ParityGame,
    choose_j,
    generate,
    new_win1,
    new_win2,
    old_win1,
    old_win2,
    solve,
    solve_brute,
)
from paritykit import fpt
from paritykit.fpt import _degree_budget, _ell_from_k

from conftest import scale, seeded_games


def test_config_validation():
    with pytest.raises(ValueError):
        FptConfig(base_case_k=1)
    with pytest.raises(ValueError):
        FptConfig(base_case_degree=0)


def test_odd_count_budget_formula():
    for k, expected in ((0, 0), (1, 1), (2, 2), (4, 2), (5, 3), (8, 4), (50, 10)):
        assert _ell_from_k(k) == expected


def test_degree_budget_formula():
    b = _degree_budget(n=20, s_j=12, j=3)
    assert b.ell == math.ceil(math.sqrt(16))
    assert b.s == math.ceil(math.sqrt(12 * math.log(12) / math.log(3)))
    assert b.j == 3
    # Degenerate low side: no low-degree allowance at all.
    assert _degree_budget(n=5, s_j=0, j=2).s == 0
    assert _degree_budget(n=5, s_j=1, j=2).s == 0
    # The allowance never exceeds the population it draws from.
    assert _degree_budget(n=4, s_j=2, j=2).s <= 2


def test_choose_j_prefers_smallest_on_ties():
    # Complete graph: s_j = 0 for all j < n, s_n = n; the score is flat
    # until j = n, and the tie at the flat part resolves to j = 2.
    n = 5
    g = ParityGame([0] * n, [0] * n, [list(range(n))] * n)
    j, score = choose_j(g)
    assert j == 2
    assert score == pytest.approx(math.sqrt(n))


def test_choose_j_follows_degree_profile():
    # Nine out-degree-2 nodes and one hub: j = 2 already covers the low
    # side, and larger j only inflates the log factor.
    n = 10
    edges = [[(v + 1) % n, (v + 2) % n] for v in range(n - 1)]
    edges.append(list(range(n)))
    g = ParityGame([0] * n, [0] * n, edges)
    j, _ = choose_j(g)
    assert j == 2
    with pytest.raises(ValueError):
        choose_j(ParityGame([0], [0], [[0]]))


def test_all_solvers_agree_on_families():
    for family, kw in (
        ("general", {}),
        ("bipartite", {}),
        ("bounded_outdegree", {"j": 2}),
        ("unbalanced", {"k": 2}),
    ):
        for seed in range(scale(40, 8)):
            g = generate(family, 8, 5, seed, **kw)
            expected = solve_brute(g).w0
            assert new_win1(g).w0 == expected
            assert old_win1(g).w0 == expected
            for j in (2, 3):
                assert new_win2(g, j).w0 == expected
                assert old_win2(g, j).w0 == expected


def test_agreement_without_kernelization():
    cfg = FptConfig(kernelize=False)
    for g in seeded_games(scale(120, 30), n_range=(2, 8), seed=61):
        assert new_win1(g, cfg).w0 == solve_brute(g).w0


def test_small_base_case_forces_recursion():
    # base_case_k=2 pushes new_win1 through the dominion search and the
    # two-call recursion instead of solving by brute force immediately.
    cfg = FptConfig(base_case_k=2)
    for g in seeded_games(scale(80, 20), n_range=(4, 8), seed=67):
        assert new_win1(g, cfg).w0 == solve_brute(g).w0


def test_new_win2_rejects_unit_threshold():
    g = ParityGame([0, 1], [0, 1], [[1], [0]])
    with pytest.raises(ValueError):
        new_win2(g, 1)


def test_metrics_track_depth_and_hits():
    fpt.metrics.reset()
    assert (fpt.metrics.depth, fpt.metrics.max_depth) == (0, 0)
    g = generate("general", 8, 4, 3)
    new_win1(g, FptConfig(base_case_k=2))
    assert fpt.metrics.depth == 0  # balanced enter/exit
    assert fpt.metrics.max_depth >= 1


def test_solve_dispatch():
    g = generate("general", 7, 4, 5)
    expected = solve_brute(g).w0
    for algo in ("zielonka", "brute", "fpt_k", "fpt_degree"):
        res = solve(g, algo)
        assert res.w0 == expected
        assert res.w0 | res.w1 == frozenset(g.nodes())
        assert not res.w0 & res.w1
    assert solve(g, "fpt_degree", FptConfig(sub_j=2)).w0 == expected
    with pytest.raises(ValueError):
        solve(g, "nosuch")


def test_brute_budget_propagates():
    g = generate("general", 12, 4, 0)
    with pytest.raises(BudgetExceeded):
        solve(g, "brute", FptConfig(brute_budget=1))


def test_empty_and_single_node_games():
    empty = ParityGame([], [], [])
    assert new_win1(empty).w0 == frozenset()
    assert new_win2(empty, 2).w0 == frozenset()
    one = ParityGame([1], [1], [[0]])
    assert new_win1(one).w1 == frozenset({0})
    assert new_win2(one, 2).w1 == frozenset({0})
