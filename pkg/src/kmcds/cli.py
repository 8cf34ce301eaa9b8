"""Command-line front end.

Exit codes: 0 success (solution verified), 2 usage error, 3 I/O or
parse error, 4 infeasible instance, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import harness
from .connectivity import connectivity_level, is_k_connected
from .dominating import is_m_dominating
from .errors import (
    BudgetExceeded,
    Infeasible,
    InfeasibleInstance,
    InternalCheckError,
    KmcdsError,
    ParseError,
    PreconditionViolation,
    ValidationError,
)
from .graph import block_cut_tree, build_unit_disk
from .instances import (
    random_instance,
    read_instance,
    read_node_set,
    write_instance,
    write_node_set,
)
from .oracle import exact_min_kmcds
from .simple_augment import augment_simple, iteration_bound, run_unweighted

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4
EXIT_INTERNAL = 5


def _parse_region(text: str) -> tuple[float, float]:
    try:
        w, h = text.lower().split("x")
        return (float(w), float(h))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad region {text!r}, expected WxH") from None


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmcds",
                                description="k-connected m-dominating sets on unit disk graphs")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random instance file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--region", type=_parse_region, default=(100.0, 100.0))
    gen.add_argument("--radius", type=float, default=20.0)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--weights", default="unit")
    gen.add_argument("--k", type=int, default=1,
                     help="report connectivity of the derived graph up to this level")
    gen.add_argument("--out", required=True)

    sol = sub.add_parser("solve", help="solve one instance")
    sol.add_argument("--in", dest="infile", required=True)
    sol.add_argument("--k", type=int, required=True)
    sol.add_argument("--m", type=int, required=True)
    sol.add_argument("--alg", choices=("simple", "pd", "both"), default="simple")
    sol.add_argument("--out", help="solution file base (node indices, one per line)")
    sol.add_argument("--trace", help="write the covering-iteration log here")
    sol.add_argument("--dual", help="write the dual event log here")
    sol.add_argument("--csv", help="append the result row to this CSV file")

    exp = sub.add_parser("experiment", help="run a seeded grid and write CSV")
    exp.add_argument("--n", type=_int_list, required=True)
    exp.add_argument("--k", type=_int_list, required=True)
    exp.add_argument("--m", required=True,
                     help="comma list of values; the token 'k' means m = k per grid point")
    exp.add_argument("--regions", default="100x100",
                     help="comma list of WxH regions")
    exp.add_argument("--radius", type=float, default=20.0)
    exp.add_argument("--seeds", type=_int_list, required=True)
    exp.add_argument("--alg", choices=("simple", "pd", "both"), default="both")
    exp.add_argument("--weights", default="unit")
    exp.add_argument("--csv", required=True)

    diag = sub.add_parser("diagnose-2cds", help="block-level accounting of one 2-connectivity run")
    diag.add_argument("--in", dest="infile", required=True)
    diag.add_argument("--m", type=int, required=True)
    diag.add_argument("--t-file", help="use this node set as the backbone instead of building one")
    diag.add_argument("--oracle", action="store_true",
                      help="also compare iterations against the exact optimum bound")

    orc = sub.add_parser("oracle", help="exact optimum for a tiny instance")
    orc.add_argument("--in", dest="infile", required=True)
    orc.add_argument("--k", type=int, required=True)
    orc.add_argument("--m", type=int, required=True)
    orc.add_argument("--weighted", action="store_true")
    return p


def _cmd_generate(args) -> int:
    inst = random_instance(args.n, args.region, args.radius, args.seed,
                           weight_mode=args.weights)
    write_instance(inst, args.out)
    g = build_unit_disk(inst)
    level = connectivity_level(g, range(g.n), max(1, args.k))
    print(f"n={inst.n} edges={g.edge_count()} connectivity_checked_to={max(1, args.k)} "
          f"connectivity_level={level}")
    return 0


def _cmd_solve(args) -> int:
    inst = read_instance(args.infile)
    g = build_unit_disk(inst)
    algs = ("simple", "pd") if args.alg == "both" else (args.alg,)
    print(harness.CSV_HEADER)
    rows = []
    for alg in algs:
        row = harness.solve_instance(inst, g, args.k, args.m, alg)
        rows.append(row)
        print(row.csv())
        if not row.valid:
            raise InternalCheckError("emitted solution failed revalidation")
        if args.out:
            suffix = f".{alg}" if len(algs) > 1 else ""
            write_node_set(row.solution, args.out + suffix)
        if args.trace and alg == "simple":
            run = run_unweighted(g, args.k, args.m, check=False, weights=inst.weights)
            with open(args.trace, "w") as fh:
                for trace in run.stage_traces:
                    for line in trace.log_lines():
                        fh.write(line + "\n")
        if args.dual and alg == "pd":
            from .dominating import connector, layered_mis, prune_minimal
            from .primal_dual import run_weighted

            lm = layered_mis(g, args.m)
            base = prune_minimal(
                g, frozenset(set().union(*lm.layers, connector(g, lm.layers[0]))),
                args.m, w=inst.weights)
            run = run_weighted(g, args.k, args.m, inst.weights, check=False,
                               base=base, start_k=2)
            with open(args.dual, "w") as fh:
                for stage in run.stages:
                    for rec in stage.records:
                        for line in rec.dual.log_lines():
                            fh.write(line + "\n")
                        for line in rec.dual.dual_lines():
                            fh.write(line + "\n")
    if args.csv:
        harness.write_csv(rows, args.csv, append=True)
    return 0


def _cmd_experiment(args) -> int:
    ms = tuple("k" if tok == "k" else int(tok) for tok in args.m.split(",") if tok)
    regions = tuple(_parse_region(tok) for tok in args.regions.split(",") if tok)
    config = harness.ExperimentConfig(
        ns=args.n, ks=args.k, ms=ms, regions=regions, radius=args.radius,
        seeds=args.seeds, weight_mode=args.weights,
        algorithms=("simple", "pd") if args.alg == "both" else (args.alg,),
    )
    rows = harness.run_experiment(config)
    harness.write_csv(rows, args.csv)
    for line in harness.summarize(rows):
        print(line)
    bad = [r for r in rows if not r.valid]
    print(f"rows={len(rows)} invalid={len(bad)} csv={args.csv}")
    return 0 if not bad else EXIT_INFEASIBLE


def _cmd_diagnose(args) -> int:
    inst = read_instance(args.infile)
    g = build_unit_disk(inst)
    m = args.m
    if m < 2:
        raise ValidationError("diagnosis needs m >= 2")
    if args.t_file:
        t = read_node_set(args.t_file)
    else:
        from .dominating import connector, layered_mis, prune_minimal

        lm = layered_mis(g, m)
        t = prune_minimal(
            g, frozenset(set().union(*lm.layers, connector(g, lm.layers[0]))), m)
    bct = block_cut_tree(g, within=sum(1 << v for v in t))
    blocks = bct.block_count()
    cuts = len(bct.cut_nodes)
    s, trace = augment_simple(g, t, 2, m)
    iters = trace.iterations
    print(f"backbone={len(t)} blocks={blocks} cut_nodes={cuts} iterations={iters} "
          f"added={len(s)}")
    if iters > blocks:
        raise InternalCheckError("iterations exceeded the block count")
    if args.oracle:
        res = exact_min_kmcds(g, 2, m)
        bound = 3 * max(5 / m, 1) * res.optimum - 1
        print(f"optimum={res.optimum} iteration_bound={bound:.1f} within={iters <= bound}")
        if iters > bound:
            raise InternalCheckError("iterations exceeded the optimum-based bound")
    return 0


def _cmd_oracle(args) -> int:
    inst = read_instance(args.infile)
    g = build_unit_disk(inst)
    w = inst.weights if args.weighted else None
    res = exact_min_kmcds(g, args.k, args.m, w=w)
    opt = res.optimum
    opt_txt = str(opt) if isinstance(opt, int) else f"{float(opt):.6f}"
    print(f"optimum={opt_txt} witness={','.join(map(str, sorted(res.witness)))} "
          f"explored={res.explored}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
        if args.command == "diagnose-2cds":
            return _cmd_diagnose(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        return EXIT_USAGE
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InfeasibleInstance, Infeasible, PreconditionViolation, BudgetExceeded) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (AssertionError, InternalCheckError, KmcdsError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
