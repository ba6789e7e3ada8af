"""Dominion-accelerated recursive solvers.

new_win1/old_win1 parameterize by the number of odd nodes and kernelize
aggressively; new_win2/old_win2 parameterize by an out-degree threshold
j. Both alternate cheap dominion searches with the classic two-call
recursion and fall back to brute force on small bases. Results along
these paths are partition-only (no witness strategies).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .game import ParityGame, stats, subgame, swap_roles
from .kernel import kernelize_auto, lift_solution
from .oracle import SolveResult, empty_result, solve_brute
from .reach import attractor
from .dominion import DegreeBudget, find_dominion_by_degree, find_dominion_by_odd_nodes
from .util import ceil_sqrt
from . import zielonka


class Metrics:
    """Run counters for reporting; reset before a timed solve."""

    __slots__ = ("depth", "max_depth", "dominion_hits")

    def __init__(self):
        self.reset()

    def reset(self):
        self.depth = 0
        self.max_depth = 0
        self.dominion_hits = 0


metrics = Metrics()


@dataclass(frozen=True)
class FptConfig:
    base_case_k: int = 4
    base_case_degree: int = 3
    brute_budget: int = 10**6
    kernelize: bool = True
    sub_j: int | None = None

    def __post_init__(self):
        # For k <= 2 the dominion budget floor(sqrt(2k)) equals k, so the
        # odd-node search would recurse on the unchanged game; those sizes
        # must fall through to the brute-force base case.
        if self.base_case_k < 2:
            raise ValueError("base_case_k must be >= 2")
        if self.base_case_degree < 1:
            raise ValueError("base_case_degree must be >= 1")


def _ell_from_k(k: int) -> int:
    ell = math.isqrt(2 * k)
    # guard against drift between the integer and analytic formulas
    assert ell == math.floor(math.sqrt(2 * k))
    return ell


def _degree_budget(n: int, s_j: int, j: int) -> DegreeBudget:
    ell = ceil_sqrt(2 * (n - s_j))
    assert ell == math.ceil(math.sqrt(2 * (n - s_j)))
    if s_j <= 1:
        s = 0
    else:
        s = min(s_j, math.ceil(math.sqrt(s_j * math.log(s_j) / math.log(j))))
    return DegreeBudget(ell=ell, s=s, j=j)


def _partition(game: ParityGame, w0) -> SolveResult:
    w0 = frozenset(w0)
    return SolveResult(w0, frozenset(game.nodes()) - w0)


def new_win1(game: ParityGame, cfg: FptConfig | None = None) -> SolveResult:
    """Exact partition via odd-node-count parameterization."""
    cfg = cfg or FptConfig()
    if game.n == 0:
        return empty_result()
    n1 = sum(game.owner)
    if n1 > game.n - n1:
        return new_win1(swap_roles(game), cfg).flipped()
    k = n1
    ell = _ell_from_k(k)
    metrics.depth += 1
    metrics.max_depth = max(metrics.max_depth, metrics.depth)
    try:
        if cfg.kernelize:
            kernel, trace = kernelize_auto(game)
            return lift_solution(trace, _new_win1_core(kernel, k, ell, cfg))
        return _new_win1_core(game, k, ell, cfg)
    finally:
        metrics.depth -= 1


def _new_win1_core(game: ParityGame, k, ell, cfg) -> SolveResult:
    if game.n == 0:
        return empty_result()
    if k <= cfg.base_case_k:
        res = solve_brute(game, cfg.brute_budget)
        return _partition(game, res.w0)
    dom = find_dominion_by_odd_nodes(
        game, ell, lambda sub: new_win1(sub, cfg)
    )
    if dom is None:
        return old_win1(game, cfg)
    metrics.dominion_hits += 1
    removed = attractor(game, dom.set, dom.owner).set
    sub, smap = subgame(game, removed)
    assert sub.n < game.n
    res = new_win1(sub, cfg)
    w_opp = smap.set_to_orig(res.winners(1 - dom.owner))
    w_own = frozenset(game.nodes()) - w_opp
    return _partition(game, w_own if dom.owner == 0 else w_opp)


def old_win1(game: ParityGame, cfg: FptConfig | None = None) -> SolveResult:
    """The two-call recursion with new_win1 underneath."""
    cfg = cfg or FptConfig()
    if game.n == 0:
        return empty_result()
    n1 = sum(game.owner)
    if n1 > game.n - n1:
        return old_win1(swap_roles(game), cfg).flipped()
    if cfg.kernelize:
        kernel, trace = kernelize_auto(game)
        return lift_solution(trace, _old_win1_core(kernel, cfg))
    return _old_win1_core(game, cfg)


def _old_win1_core(game: ParityGame, cfg) -> SolveResult:
    return _two_call_recursion(game, lambda sub: new_win1(sub, cfg))


def _two_call_recursion(game: ParityGame, recurse) -> SolveResult:
    if game.n == 0:
        return empty_result()
    p_max = max(game.priority)
    i = p_max % 2
    top = [v for v in game.nodes() if game.priority[v] == p_max]
    removed = attractor(game, top, i).set
    sub1, map1 = subgame(game, removed)
    assert sub1.n < game.n
    res1 = recurse(sub1)
    w_opp = map1.set_to_orig(res1.winners(1 - i))
    if not w_opp:
        return _partition(game, frozenset(game.nodes()) if i == 0 else frozenset())
    removed2 = attractor(game, w_opp, 1 - i).set
    sub2, map2 = subgame(game, removed2)
    assert sub2.n < game.n
    res2 = recurse(sub2)
    w_i = map2.set_to_orig(res2.winners(i))
    return _partition(game, w_i if i == 0 else frozenset(game.nodes()) - w_i)


def choose_j(game: ParityGame):
    """Degree threshold minimizing sqrt(n - s_j) + sqrt(s_j / log_j s_j).

    Evaluated over j in {2..n} (the formula is undefined at j = 1);
    smallest j wins ties. Returns (j, score).
    """
    n = game.n
    if n < 2:
        raise ValueError("need at least two nodes")
    st = stats(game)
    best = None
    for j in range(2, n + 1):
        s_j = st.s_of(j)
        score = math.sqrt(n - s_j)
        if s_j > 1:
            score += math.sqrt(s_j * math.log(j) / math.log(s_j))
        if best is None or score < best[1]:
            best = (j, score)
    return best


def new_win2(game: ParityGame, j: int, cfg: FptConfig | None = None) -> SolveResult:
    """Exact partition via out-degree parameterization at threshold j."""
    cfg = cfg or FptConfig()
    if j < 2:
        raise ValueError("need j >= 2")
    if game.n == 0:
        return empty_result()
    s_j = stats(game).s_of(j)
    n = game.n
    metrics.depth += 1
    metrics.max_depth = max(metrics.max_depth, metrics.depth)
    try:
        if s_j <= cfg.base_case_degree and n - s_j <= cfg.base_case_degree:
            res = solve_brute(game, cfg.brute_budget)
            return _partition(game, res.w0)
        dom = find_dominion_by_degree(game, _degree_budget(n, s_j, j))
        if dom is None:
            return old_win2(game, j, cfg)
        metrics.dominion_hits += 1
        removed = attractor(game, dom.set, dom.owner).set
        sub, smap = subgame(game, removed)
        assert sub.n < game.n
        res = new_win2(sub, j, cfg)
        w_opp = smap.set_to_orig(res.winners(1 - dom.owner))
        w_own = frozenset(game.nodes()) - w_opp
        return _partition(game, w_own if dom.owner == 0 else w_opp)
    finally:
        metrics.depth -= 1


def old_win2(game: ParityGame, j: int, cfg: FptConfig | None = None) -> SolveResult:
    cfg = cfg or FptConfig()
    return _two_call_recursion(game, lambda sub: new_win2(sub, j, cfg))


ALGORITHMS = ("zielonka", "brute", "fpt_k", "fpt_degree")


def solve(game: ParityGame, algorithm: str, cfg: FptConfig | None = None) -> SolveResult:
    """Dispatch to one backend and check determinacy of the result."""
    cfg = cfg or FptConfig()
    if algorithm == "zielonka":
        res = zielonka.win(game)
    elif algorithm == "brute":
        res = solve_brute(game, cfg.brute_budget)
    elif algorithm == "fpt_k":
        res = new_win1(game, cfg)
    elif algorithm == "fpt_degree":
        if cfg.sub_j is not None:
            j = cfg.sub_j
        elif game.n >= 2:
            j = choose_j(game)[0]
        else:
            j = 2
        res = new_win2(game, j, cfg)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    assert not (set(res.w0) & set(res.w1))
    assert set(res.w0) | set(res.w1) == set(game.nodes())
    return res
