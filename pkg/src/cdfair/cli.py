"""Command-line pipeline: generate, evaluate, sweep, report.

Exit codes: 0 success (possibly with per-detector warnings), 1 config or
parse error, 2 I/O error. All randomness flows from the run seed through the
documented derivations in `derive_cell_seed` / `perturb.derive_seed`, so any
command re-run with the same config produces byte-identical outputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bias import ib_all_fast, ib_all_naive
from .detectors import DetectorSpec, run_detector
from .graph import EdgeListError, Graph, load_edge_list, write_edge_list
from .groupfair import PROPERTIES, SCORES, phi
from .partition import Partition, PartitionError, load_partition, write_partition
from .perturb import SCENARIOS, TARGETS, SweepConfig, run_sweep
from .quality import NMI_NORMS, ari, modularity, nf1, nmi
from .report import PHI_METRICS, QUALITY_METRICS, REPORT_SCHEMA_VERSION, write_report_outputs
from .synthgen import AbcdParams, generate_abcd_lite, generate_two_community

ALL_METRICS = ("ib", "modularity", "nmi", "ari", "nf1", "phi")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    graphs: list[tuple[str, str]]  # (edge-list path, ground-truth path) pairs
    detectors: list[DetectorSpec]
    out_dir: str
    metrics: tuple[str, ...] = ALL_METRICS
    nmi_norm: str = "arithmetic"
    seed: int = 0
    oracle: bool = False  # use the O(n^2) verification path for bias
    graph_group: str = "run"


def derive_cell_seed(base: int, detector_index: int, graph_index: int) -> int:
    """Per-(detector, graph) seed so evaluation cells are order-independent."""
    return base + 1009 * detector_index + graph_index


def _fmt(x) -> str:
    return "" if x is None else repr(x)


def _phi_flat(phi_result) -> dict[str, float | None]:
    return {
        f"phi_{prop}_{score}": phi_result.phi[prop][score]
        for prop in PROPERTIES
        for score in SCORES
    }


def evaluate_cell(cfg: RunConfig, g: Graph, gt: Partition, spec: DetectorSpec, seed: int) -> dict:
    """All requested metrics for one (graph, detector) pair."""
    params = dict(spec.params)
    if spec.name in ("louvain", "label_propagation") and "seed" not in params:
        params["seed"] = seed
    pred = run_detector(DetectorSpec(spec.name, params), g)
    row: dict = {"error": None, "k_pred": pred.k}
    if "ib" in cfg.metrics:
        report = (ib_all_naive if cfg.oracle else ib_all_fast)(gt, pred)
        row["ib_g"] = report.ib_g
        row["mean_ib"] = report.mean_ib
        row["_bias_report"] = report
    if "modularity" in cfg.metrics:
        row["modularity"] = modularity(g, pred)
    if "nmi" in cfg.metrics:
        row["nmi"] = nmi(gt, pred, norm=cfg.nmi_norm)
    if "ari" in cfg.metrics:
        row["ari"] = ari(gt, pred)
    if "nf1" in cfg.metrics:
        row["nf1"] = nf1(gt, pred)
    if "phi" in cfg.metrics:
        row.update(_phi_flat(phi(g, gt, pred)))
    return row


_AGG_KEYS = ("ib_g", "mean_ib") + QUALITY_METRICS + PHI_METRICS


def _aggregate(rows: list[dict]) -> dict:
    agg = {}
    for key in _AGG_KEYS:
        vals = [r[key] for r in rows if r.get("error") is None and r.get(key) is not None]
        if not vals:
            agg[key] = None
        else:
            mean = sum(vals) / len(vals)
            std = math.sqrt(sum((v - mean) ** 2 for v in vals) / len(vals))
            agg[key] = {"mean": mean, "std": std}
    return agg


def evaluate_run(cfg: RunConfig) -> dict:
    """Run every detector on every graph; failures are isolated per cell."""
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    loaded = []
    for graph_path, gt_path in cfg.graphs:
        with open(graph_path, "r", encoding="utf-8") as fh:
            g = load_edge_list(fh, id_mode="raw").graph
        with open(gt_path, "r", encoding="utf-8") as fh:
            gt = load_partition(fh, g.n)
        loaded.append((graph_path, g, gt))

    detectors_block: dict = {}
    warnings = []
    for di, spec in enumerate(cfg.detectors):
        label = spec.label()
        per_graph = []
        for gi, (graph_path, g, gt) in enumerate(loaded):
            try:
                row = evaluate_cell(cfg, g, gt, spec, derive_cell_seed(cfg.seed, di, gi))
            except Exception as exc:  # failure of one cell must not abort the run
                row = {"error": f"{type(exc).__name__}: {exc}"}
                warnings.append(f"{label} on {graph_path}: {row['error']}")
            report = row.pop("_bias_report", None)
            if report is not None:
                bias_dir = out_dir / "bias"
                bias_dir.mkdir(exist_ok=True)
                stem = Path(graph_path).stem
                with open(bias_dir / f"{label}_{stem}.csv", "w", encoding="utf-8") as fh:
                    report.write_csv(fh)
            per_graph.append({"graph": str(graph_path), **row})
        ok_rows = [r for r in per_graph if r["error"] is None]
        detectors_block[label] = {
            "per_graph": per_graph,
            "aggregate": _aggregate(ok_rows) if ok_rows else None,
        }

    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "graph_group": cfg.graph_group,
        "provenance": {
            "package_version": __version__,
            "config": {
                "graphs": [list(p) for p in cfg.graphs],
                "detectors": [{"name": s.name, "params": s.params} for s in cfg.detectors],
                "metrics": list(cfg.metrics),
                "nmi_norm": cfg.nmi_norm,
                "seed": cfg.seed,
                "oracle": cfg.oracle,
            },
        },
        "warnings": warnings,
        "detectors": detectors_block,
    }
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    _write_results_csv(doc, out_dir / "results.csv")
    return doc


def _write_results_csv(doc: dict, path: Path) -> None:
    cols = ["graph", "detector", "stat", "error"] + list(_AGG_KEYS)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for det, entry in sorted(doc["detectors"].items()):
            for row in entry["per_graph"]:
                cells = [row["graph"], det, "value", row["error"] or ""]
                cells += [_fmt(row.get(k)) for k in _AGG_KEYS]
                fh.write(",".join(cells) + "\n")
            agg = entry["aggregate"]
            if agg is not None and len(entry["per_graph"]) > 1:
                for stat in ("mean", "std"):
                    cells = ["ALL", det, stat, ""]
                    cells += [_fmt(agg[k][stat] if agg[k] is not None else None) for k in _AGG_KEYS]
                    fh.write(",".join(cells) + "\n")


# ---------------------------------------------------------------- generate


def _write_provenance(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def cmd_generate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    prefix = args.prefix
    if args.model == "abcd":
        params = AbcdParams(
            n=args.n, gamma=args.gamma, d_min=args.d_min, d_max=args.d_max,
            beta=args.beta, c_min=args.c_min, c_max=args.c_max, xi=args.xi,
            d_max_iter=args.d_max_iter, c_max_iter=args.c_max_iter, seed=args.seed,
        )
        g, p, info = generate_abcd_lite(params)
        provenance = {"model": "abcd_lite", "params": params.to_dict(), "realized": info,
                      "package_version": __version__}
    else:
        g, p = generate_two_community(
            n=args.n, minority_frac=args.minority, intra_p=args.intra_p,
            inter_p=args.inter_p, seed=args.seed,
        )
        provenance = {
            "model": "two_community",
            "params": {"n": args.n, "minority_frac": args.minority,
                       "intra_p": args.intra_p, "inter_p": args.inter_p, "seed": args.seed},
            "realized": {"num_edges": g.num_edges},
            "package_version": __version__,
        }
    with open(out / f"{prefix}.edges", "w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    with open(out / f"{prefix}.gt", "w", encoding="utf-8") as fh:
        write_partition(p, fh)
    _write_provenance(out / f"{prefix}.json", provenance)
    print(f"wrote {out / prefix}.edges / .gt / .json  (n={g.n}, |E|={g.num_edges})")
    return 0


# ---------------------------------------------------------------- evaluate


def _parse_detector(text: str) -> DetectorSpec:
    name, _, rest = text.partition(":")
    params: dict = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not _:
                raise ConfigError(f"bad detector parameter {item!r} (expected key=value)")
            params[key] = value
    return DetectorSpec(name, params)


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
    graphs = [tuple(pair) for pair in file_cfg.get("graphs", [])]
    if args.graph or args.gt:
        if len(args.graph or []) != len(args.gt or []):
            raise ConfigError("--graph and --gt must be given the same number of times")
        graphs = list(zip(args.graph, args.gt))
    if not graphs:
        raise ConfigError("no input graphs: pass --graph/--gt or a config file")
    detectors = [DetectorSpec(d["name"], d.get("params", {})) for d in file_cfg.get("detectors", [])]
    if args.detector:
        detectors = [_parse_detector(d) for d in args.detector]
    if not detectors:
        raise ConfigError("no detectors requested")
    metrics = tuple(file_cfg.get("metrics", ALL_METRICS))
    if args.metrics:
        metrics = tuple(args.metrics.split(","))
    for mname in metrics:
        if mname not in ALL_METRICS:
            raise ConfigError(f"unknown metric {mname!r}")
    out_dir = args.out or file_cfg.get("out") or os.environ.get("CDFAIR_OUT_DIR")
    if not out_dir:
        raise ConfigError("no output directory: pass --out (or CDFAIR_OUT_DIR)")
    return RunConfig(
        graphs=graphs,
        detectors=detectors,
        out_dir=out_dir,
        metrics=metrics,
        nmi_norm=args.nmi_norm or file_cfg.get("nmi_norm", "arithmetic"),
        seed=args.seed if args.seed is not None else int(file_cfg.get("seed", 0)),
        oracle=bool(args.oracle or file_cfg.get("oracle", False)),
        graph_group=args.group or file_cfg.get("graph_group", "run"),
    )


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _load_run_config(args)
    doc = evaluate_run(cfg)
    for w in doc["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    print(f"wrote {Path(cfg.out_dir) / 'report.json'} and results.csv")
    return 0


# ---------------------------------------------------------------- sweep


def cmd_sweep(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ratios = tuple(float(r) for r in args.ratios.split(","))
    scenarios = SCENARIOS if args.scenario == "all" else (args.scenario,)
    targets = TARGETS if args.target == "both" else (args.target,)
    for scenario in scenarios:
        for target in targets:
            cfg = SweepConfig(
                scenario=scenario, target=target, ratios=ratios, runs=args.runs,
                n=args.n, minority_frac=args.minority, seed=args.seed,
            )
            result = run_sweep(cfg)
            path = out / f"sweep_{scenario}_{target}.csv"
            with open(path, "w", encoding="utf-8") as fh:
                result.write_csv(fh)
            if args.per_run:
                with open(out / f"sweep_{scenario}_{target}_runs.csv", "w", encoding="utf-8") as fh:
                    result.write_runs_csv(fh)
            print(f"wrote {path}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    written = write_report_outputs(args.reports, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdfair", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a synthetic benchmark graph")
    gen_sub = gen.add_subparsers(dest="model", required=True)
    abcd = gen_sub.add_parser("abcd", help="power-law planted-partition graph")
    abcd.add_argument("--n", type=int, required=True)
    abcd.add_argument("--gamma", type=float, default=2.5)
    abcd.add_argument("--d-min", type=int, default=5)
    abcd.add_argument("--d-max", type=int, default=50)
    abcd.add_argument("--beta", type=float, default=1.5)
    abcd.add_argument("--c-min", type=int, default=100)
    abcd.add_argument("--c-max", type=int, default=1000)
    abcd.add_argument("--xi", type=float, default=0.2)
    abcd.add_argument("--d-max-iter", type=int, default=1000)
    abcd.add_argument("--c-max-iter", type=int, default=1000)
    abcd.add_argument("--seed", type=int, default=0)
    abcd.add_argument("--out", default=os.environ.get("CDFAIR_OUT_DIR", "."))
    abcd.add_argument("--prefix", default="graph")
    abcd.set_defaults(func=cmd_generate)
    two = gen_sub.add_parser("two-community", help="minority/majority two-block graph")
    two.add_argument("--n", type=int, required=True)
    two.add_argument("--minority", type=float, default=0.2)
    two.add_argument("--intra-p", type=float, default=0.3)
    two.add_argument("--inter-p", type=float, default=0.05)
    two.add_argument("--seed", type=int, default=0)
    two.add_argument("--out", default=os.environ.get("CDFAIR_OUT_DIR", "."))
    two.add_argument("--prefix", default="graph")
    two.set_defaults(func=cmd_generate)

    ev = sub.add_parser("evaluate", help="run detectors and compute all measures")
    ev.add_argument("--config", help="JSON config mirroring the flags; flags override")
    ev.add_argument("--graph", action="append", help="edge-list path (repeatable)")
    ev.add_argument("--gt", action="append", help="ground-truth partition path (repeatable)")
    ev.add_argument("--detector", action="append",
                    help="name[:k=v,...], e.g. louvain:seed=1 or external:path=p.gt")
    ev.add_argument("--metrics", help=f"comma list from {','.join(ALL_METRICS)}")
    ev.add_argument("--nmi-norm", choices=NMI_NORMS)
    ev.add_argument("--seed", type=int)
    ev.add_argument("--oracle", action="store_true",
                    help="use the O(n^2) bias oracle instead of the fast path")
    ev.add_argument("--group", help="graph group label used in reports")
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_evaluate)

    sw = sub.add_parser("sweep", help="perturbation-response sweeps")
    sw.add_argument("--scenario", choices=SCENARIOS + ("all",), default="all")
    sw.add_argument("--target", choices=TARGETS + ("both",), default="both")
    sw.add_argument("--n", type=int, default=1000)
    sw.add_argument("--minority", type=float, default=0.2)
    sw.add_argument("--ratios", default=",".join(str(r / 10) for r in range(11)))
    sw.add_argument("--runs", type=int, default=100)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--per-run", action="store_true", help="also write long-format per-run CSVs")
    sw.add_argument("--out", default=os.environ.get("CDFAIR_OUT_DIR", "."))
    sw.set_defaults(func=cmd_sweep)

    rep = sub.add_parser("report", help="plot-data CSV and SVG scatters from run reports")
    rep.add_argument("reports", nargs="+", help="report.json paths")
    rep.add_argument("--out", default=os.environ.get("CDFAIR_OUT_DIR", "."))
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, EdgeListError, PartitionError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
