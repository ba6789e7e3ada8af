"""Ground-truth solvers and certification checks.

solve_solitary handles games where one player has no real choices,
solve_brute enumerates positional strategies against it, and the verify
functions certify candidate sets, strategies, and full partitions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import prod

from .errors import BudgetExceeded, MissingStrategies, PreconditionViolated
from .game import ParityGame, subgame
from .reach import is_closed
from .util import tarjan_sccs


@dataclass(frozen=True)
class Strategy:
    owner: int
    choice: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SolveResult:
    w0: frozenset
    w1: frozenset
    strategy0: Strategy | None = None
    strategy1: Strategy | None = None

    def winners(self, player: int) -> frozenset:
        return self.w0 if player == 0 else self.w1

    def strategy(self, player: int):
        return self.strategy0 if player == 0 else self.strategy1

    def flipped(self) -> "SolveResult":
        """Result of the role-swapped game mapped back to original roles."""
        s0 = Strategy(0, dict(self.strategy1.choice)) if self.strategy1 else None
        s1 = Strategy(1, dict(self.strategy0.choice)) if self.strategy0 else None
        return SolveResult(w0=self.w1, w1=self.w0, strategy0=s0, strategy1=s1)


def empty_result() -> SolveResult:
    return SolveResult(frozenset(), frozenset(), Strategy(0), Strategy(1))


def solve_solitary(game: ParityGame, mover: int) -> SolveResult:
    """Solve a game in which only `mover` has choices.

    The mover wins exactly the nodes from which some cycle with a
    mover-parity maximum priority is reachable. Runs in O(p * m): for
    each mover-parity priority d (descending), cyclic SCCs of the
    priority-<=-d subgraph that contain a priority-d node are winning
    structures; everything that reaches one wins.
    """
    opp = 1 - mover
    for v in game.nodes():
        if game.owner[v] == opp and len(game.succ[v]) != 1:
            raise PreconditionViolated(
                f"opponent node {v} has out-degree {len(game.succ[v])} != 1"
            )
    n = game.n
    assigned = [False] * n
    strategy = {}
    good_priorities = sorted(
        {p for p in game.priority if p % 2 == mover % 2}, reverse=True
    )
    for d in good_priorities:
        nodes_le = [v for v in range(n) if game.priority[v] <= d]
        for scc in tarjan_sccs(nodes_le, lambda v: game.succ[v]):
            if assigned[scc[0]]:
                continue  # nested inside a structure found at a higher d
            if not any(game.priority[v] == d for v in scc):
                continue
            if len(scc) == 1 and scc[0] not in game.succ[scc[0]]:
                continue
            scc_set = set(scc)
            x = min(v for v in scc if game.priority[v] == d)
            # BFS on reversed edges: dist[v] = steps from v to x inside the SCC.
            dist = {x: 0}
            queue = deque([x])
            while queue:
                w = queue.popleft()
                for u in game.pred[w]:
                    if u in scc_set and u not in dist:
                        dist[u] = dist[w] + 1
                        queue.append(u)
            for v in scc:
                assigned[v] = True
                if game.owner[v] == mover:
                    strategy[v] = min(
                        (w for w in game.succ[v] if w in scc_set),
                        key=lambda w: (dist[w], w),
                    )
    win = assigned[:]
    queue = deque(v for v in range(n) if win[v])
    while queue:
        w = queue.popleft()
        for u in game.pred[w]:
            if not win[u]:
                win[u] = True
                if game.owner[u] == mover:
                    strategy[u] = w
                queue.append(u)
    w_mover = frozenset(v for v in range(n) if win[v])
    w_opp = frozenset(v for v in range(n) if not win[v])
    opp_strategy = Strategy(
        opp, {v: game.succ[v][0] for v in w_opp if game.owner[v] == opp}
    )
    mover_strategy = Strategy(mover, strategy)
    if mover == 0:
        return SolveResult(w_mover, w_opp, mover_strategy, opp_strategy)
    return SolveResult(w_opp, w_mover, opp_strategy, mover_strategy)


def _strategy_space(game: ParityGame, player: int):
    nodes = [v for v in game.nodes() if game.owner[v] == player]
    return nodes, prod(len(game.succ[v]) for v in nodes)


def _enumerate_strategies(game: ParityGame, nodes):
    """All positional strategies of `nodes`, as dicts, in lexicographic order."""

    def rec(i, current):
        if i == len(nodes):
            yield dict(current)
            return
        v = nodes[i]
        for w in game.succ[v]:
            current[v] = w
            yield from rec(i + 1, current)

    yield from rec(0, {})


def _fix_strategy(game: ParityGame, choice: dict) -> ParityGame:
    edges = [
        (choice[v],) if v in choice else game.succ[v] for v in game.nodes()
    ]
    return ParityGame(game.owner, game.priority, edges)


def solve_brute(game: ParityGame, budget: int = 10**6, enum_player=None) -> SolveResult:
    """Exact solve by enumerating one player's positional strategies.

    The player with fewer strategy combinations is enumerated; each fixed
    strategy leaves a solitary game for the opponent. A node is won by
    the enumerated player iff some strategy survives the opponent's best
    response. Positional determinacy guarantees a uniform witness among
    the enumerated strategies: it is the one winning the most nodes.
    """
    if game.n == 0:
        return empty_result()
    nodes0, count0 = _strategy_space(game, 0)
    nodes1, count1 = _strategy_space(game, 1)
    if enum_player is None:
        enum_player = 0 if count0 <= count1 else 1
    nodes, count = (nodes0, count0) if enum_player == 0 else (nodes1, count1)
    if count > budget:
        raise BudgetExceeded(f"{count} strategies exceed budget {budget}")
    opp = 1 - enum_player

    all_nodes = set(game.nodes())
    won_total = set()
    uniform = {}
    best_size = -1
    for choice in _enumerate_strategies(game, nodes):
        res = solve_solitary(_fix_strategy(game, choice), mover=opp)
        won = all_nodes - res.winners(opp)
        won_total |= won
        if len(won) > best_size:
            best_size = len(won)
            uniform = choice
    assert best_size == len(won_total)  # uniform positional determinacy

    w_enum = frozenset(won_total)
    w_opp = frozenset(all_nodes) - w_enum
    enum_strategy = Strategy(
        enum_player, {v: uniform[v] for v in uniform if v in w_enum}
    )
    opp_strategy = Strategy(opp)
    if w_opp:
        # The loser's region is closed for the opponent, who wins all of
        # it; synthesize the witness on the induced sub-game. Enumerating
        # the opponent here could explode, so use the recursive solver.
        from .zielonka import win as _zielonka_win

        sub, smap = subgame(game, all_nodes - w_opp)
        res = _zielonka_win(sub)
        assert res.winners(opp) == frozenset(sub.nodes())
        opp_strategy = Strategy(opp, smap.map_to_orig(res.strategy(opp).choice))
    if enum_player == 0:
        return SolveResult(w_enum, w_opp, enum_strategy, opp_strategy)
    return SolveResult(w_opp, w_enum, opp_strategy, enum_strategy)


def verify_strategy(game: ParityGame, nodes, strat: Strategy) -> bool:
    """Check that `strat` wins from every node of `nodes` without leaving.

    Fixes the strategy, restricts the game to `nodes`, and solves the
    remaining solitary game for the opponent; true iff the opponent wins
    nowhere.
    """
    node_set = set(nodes)
    owner = strat.owner
    for v in node_set:
        if game.owner[v] == owner:
            w = strat.choice.get(v)
            if w is None:
                raise PreconditionViolated(f"strategy undefined on node {v}")
            if w not in game.succ[v]:
                raise PreconditionViolated(f"strategy uses missing edge {v}->{w}")
            if w not in node_set:
                raise PreconditionViolated(f"strategy leaves the set at {v}->{w}")
        else:
            for w in game.succ[v]:
                if w not in node_set:
                    raise PreconditionViolated(
                        f"set is not closed: opponent escapes via {v}->{w}"
                    )
    if not node_set:
        return True
    ids = sorted(node_set)
    to_sub = {v: i for i, v in enumerate(ids)}
    edges = []
    for v in ids:
        if game.owner[v] == owner:
            edges.append([to_sub[strat.choice[v]]])
        else:
            edges.append([to_sub[w] for w in game.succ[v]])
    sub = ParityGame(
        [game.owner[v] for v in ids], [game.priority[v] for v in ids], edges
    )
    res = solve_solitary(sub, mover=1 - owner)
    return not res.winners(1 - owner)


def verify_partition_report(game: ParityGame, result: SolveResult):
    """(ok, reason): certify a full result with both witness strategies."""
    if result.strategy0 is None or result.strategy1 is None:
        raise MissingStrategies("both witness strategies are required")
    w0, w1 = set(result.w0), set(result.w1)
    if w0 & w1 or w0 | w1 != set(game.nodes()):
        return False, "w0/w1 is not a partition of the nodes"
    for player, region in ((0, w0), (1, w1)):
        for v in sorted(region):
            if game.owner[v] == player:
                if not any(w in region for w in game.succ[v]):
                    return False, f"closedness violated at node {v}"
            elif not all(w in region for w in game.succ[v]):
                return False, f"closedness violated at node {v}"
    for player, region in ((0, w0), (1, w1)):
        if not region:
            continue
        strat = result.strategy(player)
        try:
            ok = verify_strategy(game, region, strat)
        except PreconditionViolated as exc:
            return False, f"strategy not winning on W{player} ({exc})"
        if not ok:
            return False, f"strategy not winning on W{player}"
    return True, "ok"


def verify_partition(game: ParityGame, result: SolveResult) -> bool:
    ok, _ = verify_partition_report(game, result)
    return ok
