"""Experiment harness: grids of solves with CSV emission.

One row per (grid point, seed, algorithm). Solutions are re-validated
by the independent connectivity and domination checkers before a row
counts as valid; identical configurations produce identical rows except
for the wall-clock column.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .connectivity import is_k_connected
from .dominating import connector, is_m_dominating, layered_mis, prune_minimal
from .errors import InfeasibleInstance, KmcdsError
from .graph import Graph, build_unit_disk
from .instances import UnitDiskInstance, random_instance
from .primal_dual import run_weighted
from .simple_augment import run_unweighted

CSV_HEADER = "seed,n,k,m,region,alg,t_pre,t_post,size,weight,iters,ms,valid"


@dataclass(frozen=True)
class ExperimentConfig:
    ns: tuple[int, ...]
    ks: tuple[int, ...]
    ms: tuple[int | str, ...]  # ints, or "k" meaning m = k at each grid point
    regions: tuple[tuple[float, float], ...] = ((100.0, 100.0),)
    radius: float = 20.0
    seeds: tuple[int, ...] = ()
    algorithms: tuple[str, ...] = ("simple",)
    weight_mode: str = "unit"

    def grid(self):
        for n in self.ns:
            for region in self.regions:
                for k in self.ks:
                    ms_here = sorted(
                        {k if m == "k" else int(m) for m in self.ms}
                    )
                    for m in ms_here:
                        if m < k:
                            continue
                        yield (n, region, k, m)


@dataclass
class ResultRow:
    seed: int | None
    n: int
    k: int
    m: int
    region: str
    alg: str
    t_pre: int
    t_post: int
    size: int
    weight: Fraction
    iterations: int
    millis: int
    valid: bool
    solution: frozenset[int] = field(default_factory=frozenset, repr=False)

    def csv(self) -> str:
        w = self.weight
        wtxt = str(w.numerator) if w.denominator == 1 else f"{float(w):.6f}"
        return (
            f"{'-' if self.seed is None else self.seed},{self.n},{self.k},{self.m},"
            f"{self.region},{self.alg},{self.t_pre},{self.t_post},{self.size},"
            f"{wtxt},{self.iterations},{self.millis},{str(self.valid).lower()}"
        )


def solve_instance(inst: UnitDiskInstance, g: Graph, k: int, m: int,
                   alg: str, *, check: bool = True) -> ResultRow:
    """One solve with independent revalidation of the output.

    Both algorithms start from the pruned layered-independent-set
    backbone and then raise connectivity stage by stage; `pd` buys nodes
    through the dual-growing coverage passes, `simple` through shortest
    covering paths.
    """
    start = time.monotonic()
    weights = inst.weights
    if check and not is_k_connected(g, range(g.n), k):
        raise InfeasibleInstance(f"graph is not {k}-connected")
    if alg == "simple":
        run = run_unweighted(g, k, m, check=False, weights=weights)
        pre, post = run.backbone_pre_prune, run.backbone_post_prune
        solution = run.solution
        iterations = run.iterations
    elif alg == "pd":
        lm = layered_mis(g, m)
        pre = frozenset(set().union(*lm.layers, connector(g, lm.layers[0])))
        post = prune_minimal(g, pre, m, w=weights)
        run = run_weighted(g, k, m, weights, check=False, base=post, start_k=2)
        solution = run.solution
        iterations = run.events
    else:
        raise KmcdsError(f"unknown algorithm {alg!r}")
    millis = int((time.monotonic() - start) * 1000)
    valid = is_k_connected(g, solution, k) and is_m_dominating(g, solution, m)
    weight = sum((Fraction(weights[v]) for v in solution), start=Fraction(0))
    return ResultRow(
        seed=inst.seed, n=inst.n, k=k, m=m, region=inst.region_label(), alg=alg,
        t_pre=len(pre), t_post=len(post), size=len(solution), weight=weight,
        iterations=iterations, millis=millis, valid=valid, solution=solution,
    )


def run_experiment(config: ExperimentConfig):
    """All grid points x seeds x algorithms; failures become invalid rows."""
    rows: list[ResultRow] = []
    for (n, region, k, m) in config.grid():
        for seed in config.seeds:
            inst = random_instance(n, region, config.radius, seed,
                                   weight_mode=config.weight_mode)
            g = build_unit_disk(inst)
            for alg in config.algorithms:
                try:
                    rows.append(solve_instance(inst, g, k, m, alg))
                except KmcdsError:
                    rows.append(ResultRow(
                        seed=seed, n=n, k=k, m=m,
                        region=f"{region[0]:g}x{region[1]:g}", alg=alg,
                        t_pre=0, t_post=0, size=0, weight=Fraction(0),
                        iterations=0, millis=0, valid=False,
                    ))
    return rows


def summarize(rows):
    """Min/max/mean of solution size per grid point, over valid rows."""
    groups: dict[tuple, list[int]] = {}
    for row in rows:
        if row.valid:
            groups.setdefault((row.n, row.k, row.m, row.region, row.alg), []).append(row.size)
    lines = []
    for key in sorted(groups, key=str):
        sizes = groups[key]
        n, k, m, region, alg = key
        lines.append(
            f"summary n={n} k={k} m={m} region={region} alg={alg} "
            f"min={min(sizes)} max={max(sizes)} mean={sum(sizes) / len(sizes):.1f}"
        )
    return lines


def write_csv(rows, path: str, *, append: bool = False) -> None:
    mode = "a" if append else "w"
    need_header = True
    if append:
        try:
            with open(path) as fh:
                need_header = not fh.readline().strip()
        except FileNotFoundError:
            need_header = True
    with open(path, mode) as fh:
        if need_header:
            fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv() + "\n")
