"""Batch command-line front-end.

Subcommands: solve, verify (random sweep against the brute-force oracle),
genhard (CNF -> hard Steiner instance files), decompose, bench.  Exit codes
for solve: 0 = YES, 1 = UNKNOWN, 2 = usage error.

Vertex ids in flags follow the input file: 1-based for PACE ``.gr``,
0-based for the JSON edge-list format.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import _dp, oracle
from .compression import cfvs_3k, cvc_2k, fvs_3k
from .decomposition import (
    heuristic_decompose,
    make_nice,
    nice_from_graph,
    parse_td,
    serialize_td,
    validate,
)
from .edge_solvers import (
    longest_path,
    solve_full_degree_st,
    solve_gmtsp,
    solve_hamiltonian_cycle,
    solve_kleaf_outbranching,
    solve_kleaf_spanning_tree,
    solve_longest_cycle,
    solve_min_cycle_cover,
    solve_pcc,
)
from .graphs import DirectedGraph, UndirectedGraph, parse_graph, serialize_graph
from .hardgen import brute_force_sat, gen_steiner, parse_dimacs, sidecar_json
from .vertex_solvers import (
    solve_cds,
    solve_cfvs,
    solve_coct,
    solve_cvc,
    solve_fvs,
    solve_steiner,
)

REPORT_SCHEMA = {
    "type": "object",
    "required": ["problem", "verdict", "seed", "repetitions", "width", "wall_time_s"],
    "properties": {
        "problem": {"type": "string"},
        "verdict": {"enum": ["YES", "UNKNOWN"]},
        "seed": {"type": "integer"},
        "repetitions": {"type": "integer"},
        "width": {"type": ["integer", "null"]},
        "wall_time_s": {"type": "number"},
        "witness": {"type": ["array", "null"]},
        "params": {"type": "object"},
    },
}

PROBLEMS = (
    "steiner",
    "cvc",
    "cds",
    "coct",
    "fvs",
    "cfvs",
    "pcc",
    "mincyclecover",
    "hamcycle",
    "longestpath",
    "longestcycle",
    "gmtsp",
    "kleafst",
    "kleafob",
    "mfdst",
    "fvs3k",
    "cvc2k",
    "cfvs3k",
)


class UsageError(Exception):
    pass


def _load_graph(path: str):
    text = Path(path).read_text()
    g = parse_graph(text)
    one_based = not text.lstrip().startswith("{")
    return g, one_based


def _ids(arg: str | None, one_based: bool) -> list[int]:
    if not arg:
        return []
    out = [int(x) for x in arg.split(",") if x.strip()]
    return [x - 1 for x in out] if one_based else out


def _needs(args, name):
    val = getattr(args, name, None)
    if val is None:
        raise UsageError(f"--{name} is required for problem {args.problem!r}")
    return val


def _dispatch_solve(args, g, one_based, ntd, reps, seed):
    p = args.problem
    if p == "steiner":
        return solve_steiner(g, _ids(_needs(args, "terminals"), one_based), _needs(args, "k"), ntd, reps, seed)
    req = _ids(args.required, one_based)
    if p == "cvc":
        return solve_cvc(g, _needs(args, "k"), req, ntd, reps, seed)
    if p == "cds":
        return solve_cds(g, _needs(args, "k"), req, ntd, reps, seed)
    if p == "coct":
        return solve_coct(g, _needs(args, "k"), req, ntd, reps, seed)
    if p == "fvs":
        return solve_fvs(g, _needs(args, "k"), req, ntd, reps, seed)
    if p == "cfvs":
        return solve_cfvs(g, _needs(args, "k"), req, ntd, reps, seed)
    if p == "pcc":
        return solve_pcc(g, _needs(args, "k"), _needs(args, "l"), ntd, reps, seed)
    if p == "mincyclecover":
        return solve_min_cycle_cover(g, _needs(args, "k"), ntd, reps, seed)
    if p == "hamcycle":
        return solve_hamiltonian_cycle(g, ntd, reps, seed)
    if p == "longestpath":
        return longest_path(g, _needs(args, "k"), None, reps, seed)
    if p == "longestcycle":
        return solve_longest_cycle(g, _needs(args, "k"), ntd, reps, seed)
    if p == "gmtsp":
        return solve_gmtsp(g, _needs(args, "k"), ntd, reps, seed)
    if p == "kleafst":
        return solve_kleaf_spanning_tree(g, _needs(args, "k"), ntd, reps, seed)
    if p == "kleafob":
        root = _ids(str(_needs(args, "root")), one_based)[0]
        return solve_kleaf_outbranching(g, root, _needs(args, "k"), ntd, reps, seed)
    if p == "mfdst":
        return solve_full_degree_st(g, _needs(args, "k"), ntd, reps, seed)
    if p == "fvs3k":
        return fvs_3k(g, _needs(args, "k"), reps, seed)
    if p == "cvc2k":
        return cvc_2k(g, _needs(args, "k"), reps, seed)
    if p == "cfvs3k":
        return cfvs_3k(g, _needs(args, "k"), reps, seed)
    raise UsageError(f"unsupported problem {p!r}")


def cmd_solve(args) -> int:
    g, one_based = _load_graph(args.graph)
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(1 << 30)
    start = time.perf_counter()
    ntd = None
    width = None
    if args.problem not in ("fvs3k", "cvc2k", "cfvs3k", "longestpath"):
        if args.td:
            td = parse_td(Path(args.td).read_text())
            bad = validate(td, g)
            if bad:
                raise UsageError("invalid decomposition: " + bad[0])
            ntd = make_nice(td, g)
        else:
            ntd = nice_from_graph(g)
        width = ntd.width
    ans = _dispatch_solve(args, g, one_based, ntd, args.reps, seed)
    elapsed = time.perf_counter() - start
    verdict = "YES" if ans.is_yes else "UNKNOWN"
    witness = sorted(ans.witness) if isinstance(ans.witness, (set, frozenset)) else None
    if witness is not None and one_based:
        witness = [v + 1 for v in witness]
    report = {
        "problem": args.problem,
        "verdict": verdict,
        "seed": seed,
        "repetitions": ans.repetitions,
        "width": width,
        "wall_time_s": round(elapsed, 4),
        "witness": witness,
        "params": {
            k: getattr(args, k)
            for k in ("k", "l", "terminals", "required", "root")
            if getattr(args, k, None) is not None
        },
    }
    if args.json:
        print(json.dumps(report))
    else:
        print(f"verdict   {verdict}")
        print(f"seed      {seed}")
        print(f"reps      {ans.repetitions}")
        print(f"width     {width if width is not None else '-'}")
        print(f"time      {elapsed:.3f}s")
        if witness is not None:
            print(f"witness   {witness}")
    return 0 if ans.is_yes else 1


def _random_verify_instance(problem, rng):
    from .oracle import oracle_solve

    while True:
        n = rng.randint(3, 8)
        p = rng.uniform(0.3, 0.6)
        directed = problem in ("kleafob",)
        if directed:
            arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p / 2]
            g = DirectedGraph(n, arcs)
            if g.m == 0 or g.m > 14:
                continue
        else:
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
            g = UndirectedGraph(n, edges)
            if g.m > 14:
                continue
        if problem in ("cvc2k", "cfvs3k", "gmtsp", "kleafst", "mfdst") and not (
            isinstance(g, UndirectedGraph) and g.is_connected()
        ):
            continue
        if problem in ("kleafst", "mfdst") and g.n < 3:
            continue
        inst = {"graph": g}
        if problem == "steiner":
            inst["terminals"] = sorted(rng.sample(range(n), rng.randint(1, 3)))
            inst["k"] = rng.randint(1, n)
            key = "steiner"
        elif problem in ("cvc", "cds", "coct", "fvs", "cfvs", "fvs3k", "cvc2k", "cfvs3k"):
            inst["k"] = rng.randint(0, min(4, n))
            key = {"fvs3k": "fvs", "cvc2k": "cvc", "cfvs3k": "cfvs"}.get(problem, problem)
        elif problem == "pcc":
            inst["k"] = rng.randint(1, 2)
            inst["l"] = rng.randint(inst["k"], n)
            key = "pcc"
        elif problem == "hamcycle":
            key = "hamcycle"
        elif problem == "mincyclecover":
            inst["k"] = rng.randint(1, 3)
            key = "min_cycle_cover"
        elif problem == "longestpath":
            inst["k"] = rng.randint(1, n - 1)
            key = "longest_path"
        elif problem == "longestcycle":
            inst["k"] = rng.randint(3, n)
            key = "longest_cycle"
        elif problem == "gmtsp":
            inst["k"] = rng.randint(2, 2 * n)
            key = "gmtsp"
        elif problem == "kleafst":
            inst["k"] = rng.randint(1, n - 1)
            key = "kleaf_st"
        elif problem == "kleafob":
            inst["root"] = rng.randrange(n)
            inst["k"] = rng.randint(1, n - 1)
            key = "kleaf_ob"
        elif problem == "mfdst":
            inst["k"] = rng.randint(0, n)
            key = "mfdst"
        else:
            raise UsageError(f"verify does not support {problem!r}")
        try:
            truth, _ = oracle_solve(key, inst)
        except ValueError:
            continue
        return inst, truth


def _solve_instance(problem, inst, reps, seed):
    g = inst["graph"]
    if problem == "steiner":
        return solve_steiner(g, inst["terminals"], inst["k"], None, reps, seed)
    if problem == "cvc":
        return solve_cvc(g, inst["k"], (), None, reps, seed)
    if problem == "cds":
        return solve_cds(g, inst["k"], (), None, reps, seed)
    if problem == "coct":
        return solve_coct(g, inst["k"], (), None, reps, seed)
    if problem == "fvs":
        return solve_fvs(g, inst["k"], (), None, reps, seed)
    if problem == "cfvs":
        return solve_cfvs(g, inst["k"], (), None, reps, seed)
    if problem == "pcc":
        return solve_pcc(g, inst["k"], inst["l"], None, reps, seed)
    if problem == "hamcycle":
        return solve_hamiltonian_cycle(g, None, reps, seed)
    if problem == "mincyclecover":
        return solve_min_cycle_cover(g, inst["k"], None, reps, seed)
    if problem == "longestpath":
        return longest_path(g, inst["k"], None, reps, seed)
    if problem == "longestcycle":
        return solve_longest_cycle(g, inst["k"], None, reps, seed)
    if problem == "gmtsp":
        return solve_gmtsp(g, inst["k"], None, reps, seed)
    if problem == "kleafst":
        return solve_kleaf_spanning_tree(g, inst["k"], None, reps, seed)
    if problem == "kleafob":
        return solve_kleaf_outbranching(g, inst["root"], inst["k"], None, reps, seed)
    if problem == "mfdst":
        return solve_full_degree_st(g, inst["k"], None, reps, seed)
    if problem == "fvs3k":
        return fvs_3k(g, inst["k"], reps, seed)
    if problem == "cvc2k":
        return cvc_2k(g, inst["k"], reps, seed)
    if problem == "cfvs3k":
        return cfvs_3k(g, inst["k"], reps, seed)
    raise UsageError(f"unsupported problem {problem!r}")


def cmd_verify(args) -> int:
    rng = random.Random(args.seed if args.seed is not None else 0)
    false_neg = 0
    yes_count = 0
    for i in range(args.count):
        inst, truth = _random_verify_instance(args.problem, rng)
        ans = _solve_instance(args.problem, inst, args.reps, rng.randrange(1 << 30))
        if ans.is_yes and not truth:
            print(f"FALSE POSITIVE on instance {i}: {inst}")
            return 3
        if truth:
            yes_count += 1
            if not ans.is_yes:
                false_neg += 1
    print(
        f"verified {args.count} instances: 0 false positives, "
        f"{false_neg}/{yes_count} missed YES instances"
    )
    return 0


def cmd_genhard(args) -> int:
    formula = parse_dimacs(Path(args.cnf).read_text())
    assignment = brute_force_sat(formula) if formula.num_vars <= 20 else None
    inst = gen_steiner(formula, args.beta, assignment=assignment)
    prefix = Path(args.out)
    gr = prefix.with_suffix(".gr")
    gr.write_text(serialize_graph(inst.graph, "pace_gr"))
    td = prefix.with_suffix(".td")
    td.write_text(serialize_td(inst.path_decomposition.as_tree(), inst.graph.n))
    side = prefix.with_suffix(".json")
    side.write_text(sidecar_json(inst))
    print(f"wrote {gr} {td} {side}")
    print(f"N={inst.params.N} K={inst.K} width={inst.path_decomposition.width}")
    return 0


def cmd_decompose(args) -> int:
    g, _ = _load_graph(args.graph)
    td = heuristic_decompose(g)
    text = serialize_td(td, g.n)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} (width {td.width})")
    else:
        sys.stdout.write(text)
    return 0


_BENCH_RADIX = {
    "steiner": 3,
    "cvc": 3,
    "fvs": 3,
    "cds": 4,
    "coct": 4,
    "cfvs": 4,
    "pcc": 4,
    "gmtsp": 4,
    "kleafst": 4,
    "mfdst": 4,
    "kleafob": 6,
}


def cmd_bench(args) -> int:
    lo, hi = (int(x) for x in args.widths.split(":"))
    radix = _BENCH_RADIX.get(args.problem)
    if radix is None:
        raise UsageError(f"bench does not support {args.problem!r}")
    print(f"{'width':>5} {'colour-axis':>12} {'peak-cells':>12} {'time':>8}")
    for w in range(lo, hi + 1):
        n = w + 1
        g = UndirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        audit: list = []
        _dp.structure_audit = audit
        start = time.perf_counter()
        try:
            ans = _bench_run(args.problem, g, args.seed or 1)
        finally:
            _dp.structure_audit = None
        elapsed = time.perf_counter() - start
        peak = max((rec[3] for rec in audit), default=0)
        print(f"{w:>5} {radix ** w:>12} {peak:>12} {elapsed:>7.3f}s")
    return 0


def _bench_run(problem, g, seed):
    reps = 2
    if problem == "steiner":
        return solve_steiner(g, [0, g.n - 1], g.n, None, reps, seed)
    if problem == "cvc":
        return solve_cvc(g, g.n, (), None, reps, seed)
    if problem == "cds":
        return solve_cds(g, g.n, (), None, reps, seed)
    if problem == "coct":
        return solve_coct(g, g.n, (), None, reps, seed)
    if problem == "fvs":
        return solve_fvs(g, g.n, (), None, reps, seed)
    if problem == "cfvs":
        return solve_cfvs(g, g.n, (), None, reps, seed)
    if problem == "pcc":
        return solve_pcc(g, 1, g.n, None, reps, seed)
    if problem == "gmtsp":
        return solve_gmtsp(g, 2 * (g.n - 1), None, reps, seed)
    if problem == "kleafst":
        return solve_kleaf_spanning_tree(g, g.n - 1, None, reps, seed)
    if problem == "mfdst":
        return solve_full_degree_st(g, 0, None, reps, seed)
    if problem == "kleafob":
        d = DirectedGraph(g.n, [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges])
        return solve_kleaf_outbranching(d, 0, g.n - 1, None, reps, seed)
    raise UsageError(f"unsupported bench problem {problem!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cutcount", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sv = sub.add_parser("solve", help="solve one instance")
    sv.add_argument("problem", choices=PROBLEMS)
    sv.add_argument("--graph", required=True)
    sv.add_argument("--td")
    sv.add_argument("--k", type=int)
    sv.add_argument("--l", type=int)
    sv.add_argument("--terminals")
    sv.add_argument("--required")
    sv.add_argument("--root", type=int)
    sv.add_argument("--reps", type=int, default=20)
    sv.add_argument("--seed", type=int)
    sv.add_argument("--json", action="store_true")
    sv.set_defaults(fn=cmd_solve)

    vf = sub.add_parser("verify", help="random sweep against the oracle")
    vf.add_argument("problem", choices=PROBLEMS)
    vf.add_argument("--count", type=int, default=50)
    vf.add_argument("--reps", type=int, default=16)
    vf.add_argument("--seed", type=int)
    vf.set_defaults(fn=cmd_verify)

    gh = sub.add_parser("genhard", help="CNF -> hard Steiner instance")
    gh.add_argument("--cnf", required=True)
    gh.add_argument("--beta", type=int, default=1)
    gh.add_argument("--out", required=True)
    gh.set_defaults(fn=cmd_genhard)

    dc = sub.add_parser("decompose", help="heuristic tree decomposition")
    dc.add_argument("--graph", required=True)
    dc.add_argument("--out")
    dc.set_defaults(fn=cmd_decompose)

    bc = sub.add_parser("bench", help="table growth per width")
    bc.add_argument("problem")
    bc.add_argument("--widths", default="3:5")
    bc.add_argument("--seed", type=int)
    bc.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
