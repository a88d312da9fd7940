"""Command-line front end: solve, verify, analyze, bench, gen.

Exit codes: 0 success or PASS, 1 FAIL, 2 usage, parse or constraint error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import generators
from .analysis import AnalysisError, analyze, optimize_weights
from .formats import ParseError, read_instance, to_dimacs
from .graph import Graph, GraphError
from .solver import BRUTE_FORCE_LIMIT, SolverOptions, SolveTimeout, brute_force_mis, solve
from .weights import BOUND_SLACK, REFERENCE_BOUNDS, WeightError, WeightVector

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load(path: str) -> Graph:
    try:
        return read_instance(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# solve


def run_report(name: str, g: Graph, timeout_s: float | None = None, check_measure: bool = False) -> dict:
    t0 = time.perf_counter()
    sol = solve(g, SolverOptions(timeout_s=timeout_s, check_measure=check_measure))
    ms = (time.perf_counter() - t0) * 1000
    return {
        "instance": name,
        "alpha": sol.size,
        "witness": sorted(v + 1 for v in sol.witness),
        "branch_nodes": sol.stats.branch_nodes,
        "time_ms": round(ms, 3),
        "reductions": dict(sorted(sol.stats.reductions.items())),
        "stats": sol.stats.as_dict(),
    }


def cmd_solve(args: argparse.Namespace) -> int:
    g = _load(args.path)
    try:
        rep = run_report(Path(args.path).name, g, args.timeout_s, args.check_measure)
    except SolveTimeout:
        _err(f"time limit of {args.timeout_s}s reached")
        return EXIT_FAIL
    if args.json:
        out = {k: rep[k] for k in ("instance", "alpha", "witness", "branch_nodes", "time_ms", "reductions")}
        if args.stats:
            out["stats"] = rep["stats"]
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print(f"alpha {rep['alpha']}")
    if args.witness:
        print("witness " + " ".join(map(str, rep["witness"])))
    if args.stats:
        st = rep["stats"]
        print(f"branch_nodes {st['branch_nodes']}")
        print(f"nodes {st['nodes']}")
        print(f"max_depth {st['max_depth']}")
        print(f"time_ms {rep['time_ms']}")
        for rule, count in rep["reductions"].items():
            print(f"reduction {rule} {count}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def verify_one(name: str, g: Graph, certificate_only: bool, inject_fault: bool) -> tuple[str, bool, str]:
    sol = solve(g)
    size = sol.size + (1 if inject_fault else 0)
    witness = set(sol.witness)
    if len(witness) != size:
        return name, False, f"witness has {len(witness)} vertices, claimed {size}"
    if not g.is_independent(witness):
        return name, False, "witness is not independent"
    if certificate_only:
        return name, True, f"alpha>={size} certified"
    ref, _ = brute_force_mis(g)
    if ref != size:
        return name, False, f"solver {size} != oracle {ref}"
    return name, True, f"alpha={size}"


def _verify_task(task: tuple) -> tuple[str, bool, str]:
    return verify_one(*task)


def cmd_verify(args: argparse.Namespace) -> int:
    tasks = []
    for p in args.paths:
        tasks.append((Path(p).name, _load(p)))
    for i in range(args.random):
        seed = args.seed + i
        tasks.append((f"gnp-{args.n}-{args.p}-{seed}", generators.gnp(args.n, args.p, seed)))
    if not tasks:
        raise UsageError("nothing to verify: give instance paths or --random N")
    if not args.certificate_only:
        big = [name for name, g in tasks if len(g) > BRUTE_FORCE_LIMIT]
        if big:
            raise UsageError(
                f"{big[0]} has more than {BRUTE_FORCE_LIMIT} vertices; use --certificate-only"
            )
    jobs = [(name, g, args.certificate_only, args.inject_fault) for name, g in tasks]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_task, jobs))
    else:
        results = [_verify_task(j) for j in jobs]
    failed = 0
    for name, ok, msg in results:
        failed += not ok
        if args.verbose or not ok:
            print(f"{'PASS' if ok else 'FAIL'} {name} {msg}")
    verdict = "PASS" if not failed else "FAIL"
    print(f"{verdict} {len(results) - failed}/{len(results)} instances")
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------------------
# analyze


def read_weights(path: str, theta: int) -> tuple[WeightVector, float | None]:
    """Free weights w_3..w_{theta-1}, optionally followed by sigma for theta 6."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ")
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                raise UsageError(f"{path}: line {lineno}: not a number: {tok!r}") from None
    need = theta - 3
    sigma = None
    if theta == 6 and len(values) == need + 1:
        sigma = values.pop()
    if len(values) != need:
        raise UsageError(f"{path}: theta={theta} needs {need} weights (w_3..w_{theta - 1}), got {len(values)}")
    try:
        return WeightVector.from_values(theta, values), sigma
    except WeightError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(header)
        wr.writerows(rows)


def cmd_analyze(args: argparse.Namespace) -> int:
    theta = args.theta
    w, sigma = (None, None)
    if args.weights:
        w, sigma = read_weights(args.weights, theta)
    if args.sigma is not None:
        sigma = args.sigma
    target = args.target if args.target is not None else REFERENCE_BOUNDS[theta] + BOUND_SLACK
    rep = analyze(theta, w, sigma, target)
    opt = None
    if args.optimize and not rep.violations:
        opt = optimize_weights(theta, rep.weights, sigma_mode="free" if theta == 6 else "zero", sigma=rep.sigma, rounds=args.rounds)
        rep = analyze(theta, opt.weights, opt.sigma, target)
    ok = rep.ok
    if args.csv:
        _write_csv(
            args.csv,
            ["label", "decreases", "factor"],
            [[r.label, " ".join(f"{d:.6f}" for d in r.decreases), f"{f:.9f}"] for r, f in zip(rep.recurrences, rep.factors)],
        )
    if args.plot:
        from .plotting import plot_factors, plot_history

        plot_factors(rep, args.plot)
        if opt is not None:
            plot_history(opt.history, Path(args.plot).with_suffix(".history.png"))
    if args.json:
        doc = {
            "theta": theta,
            "weights": list(rep.weights.w),
            "sigma": rep.sigma,
            "recurrences": [
                {"label": r.label, "decreases": list(r.decreases), "factor": f}
                for r, f in zip(rep.recurrences, rep.factors)
            ],
            "summary": {
                "max_factor": rep.max_factor,
                "worst_label": rep.worst_label,
                "target": target,
                "violations": rep.violations,
                "cross_level": [
                    {"degree": c.degree, "value": c.value, "ok": c.ok} for c in rep.cross_level
                ],
                "pass": ok,
            },
        }
        if opt is not None:
            doc["summary"]["optimized_from"] = opt.start_factor
        print(json.dumps(doc, indent=2))
    else:
        print(f"theta {theta}")
        print("weights " + " ".join(f"{x:.5f}" for x in rep.weights.w[3:]))
        if theta == 6:
            print(f"sigma {rep.sigma:.5f}")
        if opt is not None:
            print(f"optimized {opt.start_factor:.6f} -> {opt.max_factor:.6f}")
        print(f"recurrences {len(rep.recurrences)}")
        for label, f in rep.top(args.top):
            print(f"  {f:.6f}  {label}")
        print(f"max_factor {rep.max_factor:.6f}")
        print(f"worst {rep.worst_label}")
        for c in rep.cross_level:
            print(f"cross_level j={c.degree} {c.value:.6f} {'ok' if c.ok else 'FAIL'}")
        for v in rep.violations:
            print(f"violation {v}")
        print(f"target {target:.6f} {'PASS' if ok else 'FAIL'}")
    if rep.violations:
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# bench


def _bench_instance(family: str, n: int, seed: int, p: float, k: int) -> Graph:
    if family == "gnp":
        return generators.gnp(n, p, seed)
    if family == "regular":
        return generators.random_regular(n + (n * k) % 2, k, seed)
    raise UsageError(f"unknown bench family {family!r}")


def _bench_task(task: tuple) -> dict:
    family, n, seed, p, k, timeout = task
    g = _bench_instance(family, n, seed, p, k)
    t0 = time.perf_counter()
    try:
        sol = solve(g, SolverOptions(timeout_s=timeout))
        status, alpha, nodes, bnodes = "ok", sol.size, sol.stats.nodes, sol.stats.branch_nodes
    except SolveTimeout:
        status, alpha, nodes, bnodes = "timeout", -1, 0, 0
    return {
        "family": f"{family}-{k}" if family == "regular" else f"{family}-{p}",
        "n": len(g),
        "seed": seed,
        "alpha": alpha,
        "nodes": nodes,
        "branch_nodes": bnodes,
        "time_ms": round((time.perf_counter() - t0) * 1000, 3),
        "status": status,
    }


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    tasks = [
        (args.family, n, args.seed + i, args.p, args.k, args.timeout_s)
        for n in sizes
        for i in range(args.count)
    ]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                rows = list(pool.map(_bench_task, tasks))
        else:
            rows = [_bench_task(t) for t in tasks]
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    header = ["family", "n", "seed", "alpha", "nodes", "branch_nodes", "time_ms", "status"]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print("\t".join(header))
        for r in rows:
            print("\t".join(str(r[h]) for h in header))
    if args.csv:
        _write_csv(args.csv, header, [[r[h] for h in header] for r in rows])
    if args.plot:
        from .plotting import plot_bench

        plot_bench([r for r in rows if r["status"] == "ok"], args.plot)
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------
# gen


def make_instance(kind: str, n: int, seed: int, p: float) -> Graph:
    if kind == "gnp":
        return generators.gnp(n, p, seed)
    if kind.startswith("regular-"):
        try:
            k = int(kind.split("-", 1)[1])
        except ValueError:
            raise UsageError(f"bad regular kind {kind!r}, expected regular-K") from None
        return generators.random_regular(n, k, seed)
    if kind == "cycle":
        return generators.cycle(n)
    if kind == "line-of-complete":
        return generators.line_of_complete(n)
    if kind == "complete":
        return generators.complete(n)
    if kind == "hypercube":
        return generators.hypercube(n)
    if kind == "petersen":
        return generators.petersen()
    if kind == "dodecahedron":
        return generators.dodecahedron()
    raise UsageError(f"unknown kind {kind!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        g = make_instance(args.kind, args.n, args.seed, args.p)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    text = to_dimacs(g, f"{args.kind} n={args.n} seed={args.seed}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exactmis", description="Exact maximum independent set solver and analyzer.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("path")
    p.add_argument("--witness", action="store_true", help="print the independent set (1-based ids)")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timeout-s", type=float, default=None)
    p.add_argument("--check-measure", action="store_true", help="record measure monotonicity checks")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="compare the solver against the brute-force oracle")
    p.add_argument("paths", nargs="*")
    p.add_argument("--random", type=int, default=0, metavar="N", help="also verify N seeded G(n,p) graphs")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--certificate-only", action="store_true", help="only check witness independence and size")
    p.add_argument("--inject-fault", action="store_true", help="misreport alpha by one (self-test)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="branching-factor report for one level")
    p.add_argument("theta", type=int, choices=(6, 7, 8))
    p.add_argument("--weights", help="file with w_3..w_{theta-1} (theta 6: optional trailing sigma)")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--rounds", type=int, default=6)
    p.add_argument("--target", type=float, default=None)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", help="write one row per recurrence")
    p.add_argument("--plot", help="write a PNG of the factor distribution")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bench", help="search-tree size over random instances")
    p.add_argument("--family", choices=("gnp", "regular"), default="gnp")
    p.add_argument("--sizes", default="20,30,40")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--p", type=float, default=0.2)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout-s", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a DIMACS instance")
    p.add_argument("kind", help="gnp, regular-K, cycle, line-of-complete, complete, hypercube, petersen, dodecahedron")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        return args.func(args)
    except (UsageError, AnalysisError, GraphError, WeightError) as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
