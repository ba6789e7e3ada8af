"""Command-line interface: solve, kernelize, gen, verify, bench.

Exit codes: 0 ok, 2 parse error, 3 validation/mode error, 4 budget
exceeded, 5 verification failure, 6 benchmark agreement failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import subprocess
import sys
import tempfile
import threading
import time
from pathlib import Path

from . import fpt, pgsolver, zielonka
from .errors import (
    BudgetExceeded,
    InvalidFamilyParams,
    MissingStrategies,
    NotBipartite,
    NotSmallerSide,
    ParseError,
)
from .fpt import FptConfig, choose_j, solve
from .game import ParityGame, is_bipartite, stats, swap_roles, validate
from .generate import FAMILIES, generate
from .kernel import (
    ReductionTrace,
    kernelize_auto,
    kernelize_bipartite,
    kernelize_general,
    lift_solution,
    trace_lines,
)
from .oracle import SolveResult, Strategy, verify_partition_report

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5
EXIT_AGREEMENT = 6

_STACK_BYTES = 256 * 1024 * 1024


def _run_big_stack(fn):
    """Run fn in a thread with a large stack; recursion-depth friendly."""
    result = {}

    def target():
        sys.setrecursionlimit(1_000_000)
        try:
            result["value"] = fn()
        except BaseException as exc:  # re-raised in the caller
            result["error"] = exc

    old = threading.stack_size(_STACK_BYTES)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old)
    if "error" in result:
        raise result["error"]
    return result["value"]


def _load(path):
    try:
        return pgsolver.read_file(path)
    except ParseError as exc:
        where = f" (line {exc.line})" if exc.line is not None else ""
        print(f"parse error: {exc}{where}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _check_valid(game):
    report = validate(game)
    if not report.ok:
        print(f"invalid game: {report.violations[0]}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


_ALGO_NAMES = {
    "zielonka": "zielonka",
    "brute": "brute",
    "fpt-k": "fpt_k",
    "fpt-degree": "fpt_degree",
}


def cmd_solve(args) -> int:
    game, ids = _load(args.input)
    _check_valid(game)
    cfg = FptConfig(
        kernelize=not args.no_kernel,
        sub_j=args.j,
        brute_budget=args.budget,
    )
    fpt.metrics.reset()
    start = time.perf_counter_ns()
    try:
        res = _run_big_stack(lambda: solve(game, _ALGO_NAMES[args.algo], cfg))
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter_ns() - start
    print("W0: " + " ".join(str(ids[v]) for v in sorted(res.w0)))
    print("W1: " + " ".join(str(ids[v]) for v in sorted(res.w1)))
    if args.emit_strategy:
        if args.algo not in ("zielonka", "brute"):
            print("strategies are only available for zielonka and brute",
                  file=sys.stderr)
            return EXIT_VALIDATION
        for player in (0, 1):
            strat = res.strategy(player)
            pairs = " ".join(
                f"{ids[v]}->{ids[w]}" for v, w in sorted(strat.choice.items())
            )
            print(f"S{player}: {pairs}")
    if args.report_metrics:
        print(f"ns: {elapsed}")
        print(f"depth: {fpt.metrics.max_depth}")
        print(f"dominion_hits: {fpt.metrics.dominion_hits}")
        if args.algo == "fpt-degree":
            j = args.j if args.j is not None else (
                choose_j(game)[0] if game.n >= 2 else 2
            )
            print(f"j: {j}")
    return EXIT_OK


def _general_with_swap(game):
    n1 = sum(game.owner)
    if n1 <= game.n - n1:
        return kernelize_general(game)
    kernel, trace = kernelize_general(swap_roles(game))
    return kernel, ReductionTrace(
        trace.events, trace.n_original, trace.kernel_ids, swapped=True
    )


def cmd_kernelize(args) -> int:
    game, _ = _load(args.input)
    _check_valid(game)
    st = stats(game)
    if args.mode == "bipartite":
        try:
            kernel, trace = kernelize_bipartite(game)
        except NotBipartite as exc:
            print(f"not bipartite: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    elif args.mode == "general":
        kernel, trace = _general_with_swap(game)
    else:
        kernel, trace = kernelize_auto(game)
    k, p = st.k, st.priority_count
    bipartite_pipeline = args.mode == "bipartite" or (
        args.mode == "auto" and is_bipartite(game)
    )
    if bipartite_pipeline:
        bound = k + 2**k * min(k, p)
    else:
        bound = (p + 1) ** k + (p + 1) * k
    print(f"nodes: {game.n} -> {kernel.n}")
    verdict = "PASS" if kernel.n <= bound else "FAIL"
    print(f"bound: {bound} {verdict}")
    if args.out:
        pgsolver.write_file(args.out, kernel)
    if args.trace_out:
        Path(args.trace_out).write_text(
            "".join(line + "\n" for line in trace_lines(trace)),
            encoding="utf-8",
        )
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        game = generate(
            args.family, args.n, args.priorities, args.seed, j=args.j, k=args.k
        )
    except InvalidFamilyParams as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    st = stats(game)
    print(f"stats: n={st.n} m={st.m} k={st.k} p={st.priority_count}")
    if args.out:
        pgsolver.write_file(args.out, game)
    else:
        sys.stdout.write(pgsolver.dumps(game))
    return EXIT_OK


def _parse_result_file(path, game, ids):
    file_to_dense = {fid: v for v, fid in enumerate(ids)}
    sets = {}
    strategies = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        tag, _, rest = line.partition(":")
        fields = rest.split()
        if tag in ("W0", "W1"):
            try:
                sets[tag] = frozenset(file_to_dense[int(x)] for x in fields)
            except (KeyError, ValueError):
                raise ParseError(f"bad node id in {tag} line")
        elif tag in ("S0", "S1"):
            choice = {}
            for pair in fields:
                v, _, w = pair.partition("->")
                try:
                    choice[file_to_dense[int(v)]] = file_to_dense[int(w)]
                except (KeyError, ValueError):
                    raise ParseError(f"bad edge in {tag} line")
            strategies[tag] = choice
    if "W0" not in sets or "W1" not in sets:
        raise ParseError("result file is missing W0/W1 lines")
    if "S0" not in strategies or "S1" not in strategies:
        raise MissingStrategies("result file is missing S0/S1 lines")
    return SolveResult(
        sets["W0"],
        sets["W1"],
        Strategy(0, strategies["S0"]),
        Strategy(1, strategies["S1"]),
    )


def cmd_verify(args) -> int:
    game, ids = _load(args.game)
    _check_valid(game)
    try:
        result = _parse_result_file(args.result, game, ids)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MissingStrategies as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    ok, reason = verify_partition_report(game, result)
    if not ok:
        print(f"verification failed: {reason}", file=sys.stderr)
        return EXIT_VERIFY
    print("ok")
    return EXIT_OK


def _result_hash(w0_ids, w1_ids) -> str:
    digest = hashlib.sha256()
    digest.update(("W0:" + ",".join(map(str, sorted(w0_ids)))).encode())
    digest.update(("|W1:" + ",".join(map(str, sorted(w1_ids)))).encode())
    return digest.hexdigest()[:16]


def _bench_one(path, algo, timeout):
    """Solve one instance in a subprocess; returns a row fragment dict."""
    cmd = [
        sys.executable, "-m", "paritykit", "solve", str(path),
        "--algo", algo, "--report-metrics",
    ]
    try:
        proc = subprocess.run(
            cmd, capture_output=True, text=True, timeout=timeout
        )
    except subprocess.TimeoutExpired:
        return {"ns": "timeout", "depth": "", "dominion_hits": "", "j": "",
                "hash": ""}
    if proc.returncode != 0:
        return {"ns": f"error({proc.returncode})", "depth": "",
                "dominion_hits": "", "j": "", "hash": ""}
    fields = {}
    for line in proc.stdout.splitlines():
        tag, _, rest = line.partition(":")
        fields[tag] = rest.strip()
    w0 = fields.get("W0", "").split()
    w1 = fields.get("W1", "").split()
    return {
        "ns": fields.get("ns", ""),
        "depth": fields.get("depth", ""),
        "dominion_hits": fields.get("dominion_hits", ""),
        "j": fields.get("j", ""),
        "hash": _result_hash(w0, w1),
    }


def cmd_bench(args) -> int:
    header = [
        "instance", "family", "n", "m", "k", "p", "j",
        "algo", "ns", "depth", "dominion_hits", "hash",
    ]
    rows = []
    agreement_ok = True
    with tempfile.TemporaryDirectory(prefix="bench") as tmp:
        for family in args.families:
            for n in args.sizes:
                for k in args.k_values if family == "unbalanced" else [None]:
                    for seed in args.seeds:
                        j = 3 if family == "bounded_outdegree" else None
                        try:
                            game = generate(
                                family, n, args.priorities, seed, j=j, k=k
                            )
                        except InvalidFamilyParams as exc:
                            print(f"skipping {family} n={n}: {exc}",
                                  file=sys.stderr)
                            continue
                        st = stats(game)
                        instance = f"{family}-n{n}-k{k}-s{seed}"
                        path = Path(tmp) / (instance + ".gm")
                        pgsolver.write_file(path, game)
                        hashes = set()
                        for algo in args.algos:
                            frag = _bench_one(path, algo, args.timeout)
                            if frag["hash"]:
                                hashes.add(frag["hash"])
                            rows.append({
                                "instance": instance,
                                "family": family,
                                "n": st.n,
                                "m": st.m,
                                "k": st.k,
                                "p": st.priority_count,
                                "j": frag["j"],
                                "algo": algo,
                                "ns": frag["ns"],
                                "depth": frag["depth"],
                                "dominion_hits": frag["dominion_hits"],
                                "hash": frag["hash"],
                            })
                        if len(hashes) > 1:
                            agreement_ok = False
                            print(f"agreement failure on {instance}",
                                  file=sys.stderr)
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=header)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.csv:
            out.close()
    return EXIT_OK if agreement_ok else EXIT_AGREEMENT


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="paritykit", description="parity game toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game file")
    p.add_argument("input")
    p.add_argument("--algo", choices=sorted(_ALGO_NAMES), default="zielonka")
    p.add_argument("--j", type=int, default=None,
                   help="fixed degree threshold for fpt-degree")
    p.add_argument("--no-kernel", action="store_true")
    p.add_argument("--emit-strategy", action="store_true")
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--report-metrics", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="reduce a game file")
    p.add_argument("input")
    p.add_argument("--mode", choices=("general", "bipartite", "auto"),
                   default="auto")
    p.add_argument("--out")
    p.add_argument("--trace-out")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("gen", help="generate a seeded game")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("n", type=int)
    p.add_argument("--priorities", type=int, default=4,
                   help="priorities are drawn from 0..priorities-1")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="certify a solve result")
    p.add_argument("game")
    p.add_argument("result")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark solvers on seeded games")
    p.add_argument("--families", nargs="*", default=[], choices=FAMILIES)
    p.add_argument("--sizes", nargs="*", type=int, default=[8])
    p.add_argument("--k-values", nargs="*", type=int, default=[2])
    p.add_argument("--algos", nargs="*", default=["zielonka", "brute"],
                   choices=sorted(_ALGO_NAMES))
    p.add_argument("--seeds", nargs="*", type=int, default=[0])
    p.add_argument("--priorities", type=int, default=4)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_VALIDATION
    except NotSmallerSide as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
