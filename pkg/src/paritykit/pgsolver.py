"""PGSolver text format reader and writer.

Reading tolerates a missing header and optional node names; ids may be
sparse and are remapped to dense ids in ascending order. Writing is
canonical: header present, nodes ascending, successors ascending, no
names.
"""
from __future__ import annotations

import re

from .errors import ParseError
from .game import ParityGame

_NODE_RE = re.compile(
    r"^(\d+)\s+(\d+)\s+([01])\s+([0-9,\s]+?)\s*(?:\"([^\"]*)\")?\s*;$"
)


def loads(text: str):
    """Parse PGSolver text; returns (game, ids) where ids[dense] = file id."""
    records = {}
    lines = text.splitlines()
    start = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("parity"):
            if records:
                raise ParseError("header after node lines", lineno)
            if not re.fullmatch(r"parity\s+\d+\s*;", line):
                raise ParseError("malformed header", lineno)
            start = lineno
            continue
        m = _NODE_RE.match(line)
        if not m:
            raise ParseError(f"malformed node line {line!r}", lineno)
        node = int(m.group(1))
        if node in records:
            raise ParseError(f"duplicate node id {node}", lineno)
        succs = [int(s) for s in m.group(4).replace(",", " ").split()]
        if not succs:
            raise ParseError(f"node {node} has no successors", lineno)
        records[node] = (int(m.group(2)), int(m.group(3)), succs)
    if not records:
        raise ParseError("no node lines found", start or 1)
    ids = sorted(records)
    dense = {v: i for i, v in enumerate(ids)}
    owners, priorities, edges = [], [], []
    for v in ids:
        prio, owner, succs = records[v]
        for w in succs:
            if w not in dense:
                raise ParseError(f"node {v} points to undefined node {w}")
        owners.append(owner)
        priorities.append(prio)
        edges.append([dense[w] for w in succs])
    return ParityGame(owners, priorities, edges), tuple(ids)


def dumps(game: ParityGame, ids=None) -> str:
    """Serialize canonically; `ids` optionally maps dense ids to file ids."""
    if ids is None:
        ids = tuple(range(game.n))
    out = [f"parity {max(ids) if ids else 0};"]
    for v in game.nodes():
        succs = ",".join(str(ids[w]) for w in game.succ[v])
        out.append(f"{ids[v]} {game.priority[v]} {game.owner[v]} {succs};")
    return "\n".join(out) + "\n"


def read_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def write_file(path, game: ParityGame, ids=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(game, ids))
