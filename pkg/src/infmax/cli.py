"""Command-line experiment harness.

Examples::

    python -m infmax run --builtin fig1 --exhaustive --p 0.9 --k 2 --algo dcg-subwarmup,greedy
    python -m infmax run --dataset CA-HepTh.txt --undirected --scenarios 10 --k 2 --algo greedy
    python -m infmax table1 --format json
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import cuts as cutlib
from .dcg import DcgOptions, brute_force_opt, k1_exact, run_dcg
from .fixtures import BUILTINS
from .graph import EdgeListError, load_edge_list
from .greedy import run_greedy
from .influence import expected_spread
from .scenarios import enumerate_ic, lt_default_weights, sample_ic, sample_lt

ALGORITHMS = ("greedy", "dcg-subineqs", "dcg-subwarmup", "dcg-comb", "dcg-lshaped", "brute", "k1")
FIELDS = ("dataset", "model", "k", "num_scenarios", "algorithm", "objective", "bound", "gap",
          "cuts_total", "cuts_by_family", "iterations", "time_ms", "seeds", "rng_seed")
TABLE1_P = (1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    dataset: str | None = None
    builtin: str | None = None
    undirected: bool = False
    model: str = "ic"
    p: float = 0.1
    scenarios: int | None = 10
    exhaustive: bool = False
    ks: list = field(default_factory=lambda: [2])
    algorithms: list = field(default_factory=lambda: ["greedy", "dcg-subwarmup"])
    seed: int = 0
    epsilon: float = 0.0
    master_gap: float = 0.01
    warm_start: bool = False
    singlecut: bool = False
    time_limit: float | None = None
    workers: int = 1
    omit_timing: bool = False

    def validate(self):
        if (self.dataset is None) == (self.builtin is None):
            raise ConfigError("give exactly one of --dataset or --builtin")
        if self.builtin is not None and self.builtin not in BUILTINS:
            raise ConfigError(f"unknown builtin {self.builtin!r}; choose from {sorted(BUILTINS)}")
        if self.model not in ("ic", "lt"):
            raise ConfigError("--model must be ic or lt")
        if self.exhaustive and self.model != "ic":
            raise ConfigError("--exhaustive is only available for the ic model")
        if not self.exhaustive and (self.scenarios is None or self.scenarios < 1):
            raise ConfigError("--scenarios must be a positive integer")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError("--p must lie in [0, 1]")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
        if not self.ks or any(k < 1 for k in self.ks):
            raise ConfigError("--k values must be positive")


def parse_k(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out += list(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def build_scenarios(cfg: RunConfig):
    if cfg.builtin is not None:
        graph, name = BUILTINS[cfg.builtin](), cfg.builtin
    else:
        graph = load_edge_list(cfg.dataset, "undirected" if cfg.undirected else "directed")
        name = cfg.dataset
    if cfg.exhaustive:
        try:
            sset = enumerate_ic(graph, cfg.p)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    elif cfg.model == "ic":
        sset = sample_ic(graph, cfg.p, cfg.scenarios, cfg.seed, workers=cfg.workers)
    else:
        sset = sample_lt(graph, lt_default_weights(graph), cfg.scenarios, cfg.seed, workers=cfg.workers)
    return name, sset


def _solve(algo: str, sset, k: int, cfg: RunConfig):
    if algo == "greedy":
        return run_greedy(sset, k)
    if algo == "brute":
        return brute_force_opt(sset, k)
    if algo == "k1":
        if k != 1:
            raise ConfigError("the k1 algorithm only applies to k = 1")
        return k1_exact(sset)
    family = {"dcg-subineqs": cutlib.SUBMODULAR, "dcg-subwarmup": cutlib.SUBMODULAR,
              "dcg-comb": cutlib.COMBINATORIAL, "dcg-lshaped": cutlib.LSHAPED_STRENGTHENED}[algo]
    opts = DcgOptions(
        cut_family=family,
        warm_start_empty_set=cfg.warm_start or algo == "dcg-subwarmup",
        aggregation="singlecut" if cfg.singlecut else "multicut",
        epsilon=cfg.epsilon,
        master_rel_gap=cfg.master_gap,
        time_limit=cfg.time_limit,
        workers=cfg.workers,
    )
    rep = run_dcg(sset, k, opts)
    rep.algorithm = algo
    return rep


def _fmt(x: float) -> str:
    return repr(round(x, 12))


def run(cfg: RunConfig) -> list[dict]:
    """Run every (k, algorithm) pair of ``cfg`` and return one report row per pair."""
    cfg.validate()
    name, sset = build_scenarios(cfg)
    rows = []
    for k in cfg.ks:
        for algo in cfg.algorithms:
            rep = _solve(algo, sset, k, cfg)
            check = expected_spread(sset, rep.seeds)
            if not math.isclose(check, rep.objective, rel_tol=1e-12, abs_tol=1e-12):
                raise RuntimeError(f"{algo}: reported objective {rep.objective} != {check}")
            rows.append({
                "dataset": name,
                "model": cfg.model + ("-exhaustive" if cfg.exhaustive else ""),
                "k": k,
                "num_scenarios": len(sset),
                "algorithm": rep.algorithm,
                "objective": _fmt(rep.objective),
                "bound": _fmt(rep.bound),
                "gap": _fmt(rep.gap),
                "cuts_total": rep.cuts_total,
                "cuts_by_family": ";".join(f"{f}:{c}" for f, c in sorted(rep.cuts_by_family.items())),
                "iterations": rep.iterations,
                "time_ms": "" if cfg.omit_timing else f"{rep.wall_time * 1000:.1f}",
                "seeds": " ".join(str(v) for v in rep.labels),
                "rng_seed": "" if cfg.exhaustive else cfg.seed,
            })
    return rows


def format_rows(rows: list[dict], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else list(FIELDS), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def table1(master_gap: float = 0.0) -> list[dict]:
    """Exhaustive-scenario comparison of DCG and greedy on the nine-node network, k = 2."""
    rows = {"DCG": {"algorithm": "DCG"}, "Greedy": {"algorithm": "Greedy"}}
    g = BUILTINS["fig1"]()
    for p in TABLE1_P:
        sset = enumerate_ic(g, p)
        dcg = run_dcg(sset, 2, warm_start_empty_set=True, master_rel_gap=master_gap)
        rows["DCG"][f"p={p}"] = _fmt(dcg.objective)
        rows["Greedy"][f"p={p}"] = _fmt(run_greedy(sset, 2).objective)
    return [rows["DCG"], rows["Greedy"]]


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="infmax", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run algorithms on one scenario set")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", help="edge-list file")
    src.add_argument("--builtin", choices=sorted(BUILTINS))
    r.add_argument("--undirected", action="store_true", help="treat dataset lines as undirected edges")
    r.add_argument("--model", choices=("ic", "lt"), default="ic")
    r.add_argument("--p", type=float, default=0.1, help="uniform arc probability (ic)")
    n = r.add_mutually_exclusive_group()
    n.add_argument("--scenarios", type=int, default=10)
    n.add_argument("--exhaustive", action="store_true")
    r.add_argument("--k", default="2", help="seed budget: 2, 1-5 or 1,3")
    r.add_argument("--algo", default="greedy,dcg-subwarmup",
                   help=f"comma-separated list from {', '.join(ALGORITHMS)}")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--epsilon", type=float, default=0.0)
    r.add_argument("--master-gap", type=float, default=0.01)
    r.add_argument("--warm-start", action="store_true")
    r.add_argument("--singlecut", action="store_true")
    r.add_argument("--time-limit", type=float, default=None, help="seconds per DCG run")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--omit-timing", action="store_true", help="leave time_ms empty")
    r.add_argument("--out")
    r.add_argument("--format", choices=("csv", "json"), default="csv")

    t = sub.add_parser("table1", help="reproduce the nine-node exhaustive comparison")
    t.add_argument("--master-gap", type=float, default=0.0)
    t.add_argument("--out")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "table1":
            rows = table1(args.master_gap)
        else:
            cfg = RunConfig(
                dataset=args.dataset, builtin=args.builtin, undirected=args.undirected,
                model=args.model, p=args.p, scenarios=None if args.exhaustive else args.scenarios,
                exhaustive=args.exhaustive, ks=parse_k(args.k),
                algorithms=[a.strip() for a in args.algo.split(",") if a.strip()],
                seed=args.seed, epsilon=args.epsilon, master_gap=args.master_gap,
                warm_start=args.warm_start, singlecut=args.singlecut, time_limit=args.time_limit,
                workers=args.workers, omit_timing=args.omit_timing,
            )
            rows = run(cfg)
    except (ConfigError, EdgeListError, OSError, ValueError) as exc:
        print(f"infmax: error: {exc}", file=sys.stderr)
        return 2
    text = format_rows(rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
