"""Command-line front end: cluster files, benchmark, sweep k, emit plots.

Datasets are file paths or registry names; reports are flat key-value text
with timings quarantined in their own section.  Exit status 0 means all
requested work succeeded, 2 means a usage or input problem.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

import numpy as np

from . import baseline, core, metrics, plots, registry, report
from .dataset import Dataset, ParseError, load, normalize


def _resolve_dataset(name_or_path: str, label_col: int | None, seed: int) -> Dataset:
    if os.path.exists(name_or_path):
        return load(name_or_path, label_column=label_col)
    if name_or_path in registry.REGISTRY or name_or_path in registry.GENERATED:
        return registry.load_named(name_or_path, seed=seed)
    raise FileNotFoundError(f"no such file or registry dataset: {name_or_path}")


def _normalize_mode(flag: str) -> str:
    return "min-max" if flag == "on" else "none"


def _run_algorithm(d: Dataset, args) -> core.ClusteringResult:
    if args.algorithm == "sktdpc":
        if args.k is None:
            raise ValueError("--k is required for the sktdpc algorithm")
        return core.run_sktdpc(d, args.k, n_centers=args.n_centers)
    if args.algorithm == "reference":
        if args.k is None:
            raise ValueError("--k is required for the reference algorithm")
        return baseline.sktdpc_reference(d, args.k, n_centers=args.n_centers)
    if args.algorithm == "dpc":
        if args.dc is None or args.n_centers is None:
            raise ValueError("--dc and --n-centers are required for the dpc algorithm")
        return baseline.dpc_original(d, args.dc, args.n_centers, kernel=args.kernel)
    raise ValueError(f"unknown algorithm {args.algorithm!r}")


def cmd_cluster(args) -> int:
    raw = _resolve_dataset(args.input, args.label_col, args.seed)
    mode = _normalize_mode(args.normalize)
    d = normalize(raw, mode)
    result = _run_algorithm(d, args)
    rep = report.from_result(result, raw.labels, mode, raw.n, raw.dim)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(str(int(v)) for v in result.labels) + "\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_text(rep))
    scores = f" acc={rep.metrics['acc']:.3f}" if rep.metrics else ""
    print(
        f"{raw.name or args.input}: {len(result.centers)} clusters, "
        f"{result.distance_evaluations} distance evaluations "
        f"({result.distance_ratio:.1%} of full matrix){scores}"
    )
    return 0


BUILTIN_SUITES = {
    "synthetic": [
        {"dataset": name, "algorithm": "sktdpc", "k": registry.REGISTRY[name].default_k,
         "n_centers": registry.REGISTRY[name].clusters}
        for name in ("flame", "spiral", "aggregation", "r15")
    ],
    "real": [
        {"dataset": name, "algorithm": "sktdpc", "k": registry.REGISTRY[name].default_k,
         "n_centers": registry.REGISTRY[name].clusters}
        for name in ("iris", "seeds", "wine")
    ],
    "efficiency": [
        {"dataset": "blobs15-5000", "algorithm": "sktdpc", "k": 7},
        {"dataset": "blobs15-5000", "algorithm": "reference", "k": 7},
    ],
}


def _load_suite(name_or_path: str) -> list[dict]:
    if name_or_path in BUILTIN_SUITES:
        return BUILTIN_SUITES[name_or_path]
    with open(name_or_path, "r", encoding="utf-8") as fh:
        cells = json.load(fh)
    if not isinstance(cells, list):
        raise ValueError("suite file must hold a JSON list of run cells")
    return cells


def _run_cell(cell: dict, repeats: int, seed: int) -> report.RunReport:
    name = cell["dataset"]
    raw = _resolve_dataset(name, cell.get("label_col"), seed)
    mode = cell.get("normalize", "min-max")
    d = normalize(raw, mode)
    algorithm = cell.get("algorithm", "sktdpc")
    times = []
    result = None
    labels_first = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        if algorithm == "sktdpc":
            result = core.run_sktdpc(d, cell["k"], n_centers=cell.get("n_centers"))
        elif algorithm == "reference":
            result = baseline.sktdpc_reference(d, cell["k"], n_centers=cell.get("n_centers"))
        elif algorithm == "dpc":
            result = baseline.dpc_original(
                d, cell["dc"], cell["n_centers"], kernel=cell.get("kernel", "cutoff")
            )
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        times.append(time.perf_counter() - t0)
        if labels_first is None:
            labels_first = result.labels
        elif not np.array_equal(labels_first, result.labels):
            raise RuntimeError(f"nondeterministic labels for cell {cell}")
    rep = report.from_result(result, raw.labels, mode, raw.n, raw.dim, tuple(times))
    timings = dict(rep.timings)
    timings["mean_run"] = sum(times) / len(times)
    return dataclasses.replace(rep, timings=timings, repeat_times=tuple(times))


def cmd_bench(args) -> int:
    cells = _load_suite(args.suite)
    reports = []
    failures = 0
    for cell in cells:
        try:
            reports.append(_run_cell(cell, args.repeats, args.seed))
        except Exception as exc:  # record and continue with the rest of the suite
            failures += 1
            reports.append(
                report.RunReport(
                    dataset=str(cell.get("dataset", "?")),
                    algorithm=str(cell.get("algorithm", "?")),
                    params={}, n=0, dim=0, normalize="",
                    centers=(), mutation_point=None, candidates=0,
                    distance_evaluations=0, distance_ratio=1.0, flags=(),
                    metrics=None, timings={}, error=f"{type(exc).__name__}: {exc}",
                )
            )
    text = "".join(report.to_text(r) for r in reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        if r.error:
            print(f"FAILED {r.dataset}/{r.algorithm}: {r.error}", file=sys.stderr)
    return 1 if failures else 0


def cmd_sweep(args) -> int:
    raw = _resolve_dataset(args.input, args.label_col, args.seed)
    mode = _normalize_mode(args.normalize)
    d = normalize(raw, mode)
    if args.k_min < 1 or args.k_max < args.k_min:
        raise ValueError("need 1 <= k-min <= k-max")
    header = ["k", "centers", "mutation_point", "evaluation_ratio"]
    has_truth = raw.labels is not None
    if has_truth:
        header += ["acc", "ami", "ari", "nmi", "fmi"]
    rows = ["\t".join(header)]
    for k in range(args.k_min, args.k_max + 1):
        result = core.run_sktdpc(d, k, n_centers=args.n_centers)
        row = [str(k), str(len(result.centers)), str(result.mutation_point),
               f"{result.distance_ratio:.6f}"]
        if has_truth:
            scores = metrics.score_all(raw.labels, result.labels)
            row += [f"{scores[m]:.6f}" for m in ("acc", "ami", "ari", "nmi", "fmi")]
        rows.append("\t".join(row))
    text = "\n".join(rows) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_plot(args) -> int:
    raw = _resolve_dataset(args.input, args.label_col, args.seed)
    mode = _normalize_mode(args.normalize)
    d = normalize(raw, mode)
    if args.kind == "scatter" and d.dim != 2:
        raise ValueError(f"scatter plots need 2-D data, got {d.dim} features")
    if args.k is None:
        raise ValueError("--k is required to compute the clustering profile")
    result = core.run_sktdpc(d, args.k, n_centers=args.n_centers)
    title = raw.name or os.path.basename(args.input)
    if args.kind == "scatter":
        svg = plots.scatter_svg(d.points, result.labels, result.centers, title=title)
    elif args.kind == "decision-graph":
        svg = plots.decision_graph_svg(
            result.profile.density, result.profile.separation, result.centers,
            title=f"{title} decision graph",
        )
    else:
        ranked = result.profile.decision[result.profile.decision_order]
        svg = plots.decision_series_svg(
            ranked, result.mutation_point, len(result.centers),
            title=f"{title} decision values",
        )
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def cmd_fetch(args) -> int:
    dest = registry.fetch(args.name, args.dest)
    print(f"fetched {args.name} -> {dest}")
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sktdpc",
        description="Density peaks clustering with k-d tree and sparse separation search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_algorithm=True):
        p.add_argument("--k", type=_positive_int, default=None,
                       help="number of nearest neighbors")
        p.add_argument("--n-centers", type=_positive_int, default=None,
                       help="fix the number of cluster centers (default: adaptive)")
        p.add_argument("--normalize", choices=["on", "off"], default="on",
                       help="min-max feature scaling (default on)")
        p.add_argument("--label-col", type=int, default=None,
                       help="ground-truth column index in input files (negative = from end)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for generated registry datasets")
        if with_algorithm:
            p.add_argument("--algorithm", choices=["sktdpc", "reference", "dpc"],
                           default="sktdpc")
            p.add_argument("--dc", type=float, default=None,
                           help="cut-off distance for the dpc algorithm")
            p.add_argument("--kernel", choices=["cutoff", "gaussian"], default="cutoff",
                           help="density kernel for the dpc algorithm")

    p = sub.add_parser("cluster", help="cluster one dataset and write labels")
    p.add_argument("input", help="dataset file or registry name")
    add_common(p)
    p.add_argument("--output", default=None, help="labels file (one id per line)")
    p.add_argument("--report", default=None, help="structured report file")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True,
                   help=f"suite JSON file or builtin: {', '.join(BUILTIN_SUITES)}")
    p.add_argument("--repeats", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="report file (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="cluster across a range of k")
    p.add_argument("input", help="dataset file or registry name")
    add_common(p, with_algorithm=False)
    p.add_argument("--k-min", type=_positive_int, default=2)
    p.add_argument("--k-max", type=_positive_int, default=10)
    p.add_argument("--output", default=None, help="delimited table file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="write an SVG diagnostic plot")
    p.add_argument("kind", choices=["decision-graph", "gamma", "scatter"])
    p.add_argument("input", help="dataset file or registry name")
    add_common(p, with_algorithm=False)
    p.add_argument("--output", required=True, help="output .svg path")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("fetch", help="download a non-bundled registry dataset")
    p.add_argument("name")
    p.add_argument("--dest", default=None, help="destination directory")
    p.set_defaults(func=cmd_fetch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, ParseError, ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
