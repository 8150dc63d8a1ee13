"""Command-line interface.

Subcommands:

  census         1-WL / 2-FWL equivalent-pair counts for a dataset
  lambda-census  equal lambda-max pairs inside 1-WL buckets
  distinguish    random-weight distinguishability run (Table-1 style)
  golden         built-in appendix pair suite
  eval           evaluate a sentence on a graph
  wl             pairwise WL tests on two graphs
  supports       spectral convolution supports of one graph
  count          graphlet counts for a graph
  embed          model embeddings of a graph over several runs

Exit codes: 0 success, 1 golden/acceptance failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys


from matgraph.graphcore import Graph, GraphFormatError, load_dataset
from matgraph.graphlets import CLOSED_FORMS, PATTERN_KINDS, enumerate_pattern
from matgraph.harness import (
    ExperimentConfig,
    PairReport,
    distinguishability_run,
    golden_pairs_suite,
    golden_report,
    lambda_census,
    report_render,
    wl_census,
)
from matgraph.matlang import (
    OpSet,
    eval_sentence,
    fragment_check,
    parse,
    shape_check,
)
from matgraph.models import MODEL_KINDS, ModelSpec, embed, run_seeds
from matgraph.spectral import SupportSpec, build_supports
from matgraph.wl import fwl2_equivalent, wl1_equivalent, wl2_equivalent


def _load_graph(path_spec: str, format: str) -> Graph:
    """Load `file` or `file:index` (0-based index into the dataset)."""
    path, _, idx = path_spec.partition(":")
    graphs = load_dataset(path, format=format)
    i = int(idx) if idx else 0
    if not 0 <= i < len(graphs):
        raise GraphFormatError(f"graph index {i} out of range (0..{len(graphs)-1})")
    return graphs[i]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _report(args, report: PairReport) -> None:
    _emit(args, report_render(report, args.format))


def cmd_census(args) -> int:
    graphs = load_dataset(args.dataset, format=args.dataset_format)
    _report(args, wl_census(graphs))
    return 0


def cmd_lambda_census(args) -> int:
    graphs = load_dataset(args.dataset, format=args.dataset_format)
    _report(args, lambda_census(graphs))
    return 0


def cmd_distinguish(args) -> int:
    overrides = dict(
        dataset=args.dataset,
        format=args.dataset_format,
        runs=args.runs,
        threshold=args.threshold,
        base_seed=args.seed,
    )
    if args.models:
        overrides["models"] = tuple(args.models.split(","))
    if args.config:
        config = ExperimentConfig.from_file(args.config, **overrides)
    else:
        config = ExperimentConfig(**overrides)
    _report(args, distinguishability_run(config))
    return 0


def cmd_golden(args) -> int:
    checks = golden_pairs_suite()
    _report(args, golden_report(checks))
    return 0 if all(c.passed for c in checks) else 1


def cmd_eval(args) -> int:
    G = _load_graph(args.graph, args.dataset_format)
    expr = parse(args.sentence)
    shape = shape_check(expr, G.n)
    result = {
        "sentence": args.sentence,
        "shape": list(shape),
        "fragments": {
            name: fragment_check(expr, OpSet.named(name))
            for name in ("L1", "L2", "L3", "L1+", "L2+", "L3+")
        },
    }
    if shape == (1, 1):
        result["value"] = eval_sentence(expr, G.adjacency)
    _emit(args, json.dumps(result, indent=2) + "\n")
    return 0


def cmd_wl(args) -> int:
    G = _load_graph(args.graph, args.dataset_format)
    H = _load_graph(args.other, args.dataset_format)
    verdicts = {
        "1-WL": wl1_equivalent(G, H),
        "2-WL": wl2_equivalent(G, H),
        "2-FWL": fwl2_equivalent(G, H),
    }
    result = {
        name: {
            "equivalent": v.equivalent,
            "separating_iteration": v.separating_iteration,
        }
        for name, v in verdicts.items()
    }
    _emit(args, json.dumps(result, indent=2) + "\n")
    return 0


def cmd_supports(args) -> int:
    G = _load_graph(args.graph, args.dataset_format)
    basis = "normalized-laplacian" if args.basis == "nlap" else "adjacency"
    ss = build_supports(G, SupportSpec(basis_kind=basis, b=args.b, S=args.count))
    result = {
        "mask_index": [list(p) for p in ss.mask_index],
        "band_centers": list(ss.centers),
        "features": ss.features.tolist(),
    }
    _emit(args, json.dumps(result, indent=2) + "\n")
    return 0


def cmd_count(args) -> int:
    G = _load_graph(args.graph, args.dataset_format)
    kinds = PATTERN_KINDS if args.pattern == "all" else (args.pattern,)
    lines = []
    for kind in kinds:
        value = CLOSED_FORMS[kind](G)
        row = f"{kind:16s} {value}"
        if args.oracle:
            row += f"  (oracle {enumerate_pattern(G, kind)})"
        lines.append(row)
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_embed(args) -> int:
    G = _load_graph(args.graph, args.dataset_format)
    spec = ModelSpec(args.model)
    result = {
        "model": args.model,
        "width": spec.resolved_width(),
        "embeddings": [
            embed(spec, G, s).tolist() for s in run_seeds(args.seed, args.seeds)
        ],
    }
    _emit(args, json.dumps(result, indent=2) + "\n")
    return 0


_PATTERN_ALIASES = {
    "3star": "three_star",
    "tri": "triangle",
    "tailedtri": "tailed_triangle",
    "4cycle": "four_cycle",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matgraph", description="Graph expressiveness testbench"
    )
    parser.add_argument("--config", help="key-value config file")
    parser.add_argument("--threads", type=int, default=1, help="worker threads")
    parser.add_argument("--seed", type=int, default=0, help="base random seed")
    parser.add_argument("--out", help="write output to file instead of stdout")
    parser.add_argument(
        "--format", choices=("text", "json", "csv"), default="text",
        help="report output format",
    )
    parser.add_argument(
        "--dataset-format", choices=("graph6", "edgelist-json"), default="graph6"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="1-WL / 2-FWL pair census")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("lambda-census", help="equal lambda-max pair census")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_lambda_census)

    p = sub.add_parser("distinguish", help="random-weight distinguishability")
    p.add_argument("dataset")
    p.add_argument("--models", help="comma-separated model kinds")
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--threshold", type=float, default=1e-3)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("golden", help="built-in appendix pair suite")
    p.set_defaults(func=cmd_golden)

    p = sub.add_parser("eval", help="evaluate a sentence on a graph")
    p.add_argument("--graph", required=True, help="file or file:index")
    p.add_argument("--sentence", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("wl", help="pairwise WL tests")
    p.add_argument("--graph", required=True, help="file or file:index")
    p.add_argument("--other", required=True, help="file or file:index")
    p.set_defaults(func=cmd_wl)

    p = sub.add_parser("supports", help="spectral convolution supports")
    p.add_argument("--graph", required=True, help="file or file:index")
    p.add_argument("--basis", choices=("nlap", "adj"), default="nlap")
    p.add_argument("--b", type=float, default=5.0)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_supports)

    p = sub.add_parser("count", help="graphlet counts")
    p.add_argument("--graph", required=True, help="file or file:index")
    p.add_argument(
        "--pattern",
        choices=("all",) + PATTERN_KINDS + tuple(_PATTERN_ALIASES),
        default="all",
    )
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("embed", help="model embeddings over several runs")
    p.add_argument("--graph", required=True, help="file or file:index")
    p.add_argument("--model", choices=MODEL_KINDS, required=True)
    p.add_argument("--seeds", type=int, default=1, help="number of runs")
    p.set_defaults(func=cmd_embed)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "pattern", None) in _PATTERN_ALIASES:
        args.pattern = _PATTERN_ALIASES[args.pattern]
    try:
        return args.func(args)
    except (GraphFormatError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
