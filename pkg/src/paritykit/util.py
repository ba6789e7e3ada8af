"""Small graph helpers shared by the solvers."""
from __future__ import annotations


def tarjan_sccs(nodes, succ):
    """Iterative Tarjan over the subgraph induced by `nodes`.

    `succ(v)` yields successors; edges leaving `nodes` are ignored.
    Returns SCCs as lists, in reverse topological order.
    """
    node_set = set(nodes)
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([w for w in succ(root) if w in node_set]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([x for x in succ(w) if x in node_set])))
                    advanced = True
                    break
                if w in on_stack:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == v:
                        break
                sccs.append(scc)
    return sccs


def ceil_sqrt(x: int) -> int:
    """Smallest integer s with s*s >= x, for x >= 0."""
    if x <= 0:
        return 0
    from math import isqrt

    return isqrt(x - 1) + 1
