"""Dataset-scale experiments: WL censuses, lambda-max census, random-weight
distinguishability runs, and the golden pair suite.

The distinguishability engine avoids the full O(N^2) distance pass: in
the first run, candidate near-duplicate pairs are found by sorting the
embeddings on one coordinate and scanning a window (an L1 ball of radius
t projects to an interval of width t on every axis); later runs only
re-check the surviving candidates, so work shrinks monotonically. A pair
counts as undistinguished iff its Manhattan distance stays at or below
the threshold in every run.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from matgraph import appendix_data
from matgraph.graphcore import Graph, degree_vector, laplacian, load_dataset
from matgraph.graphlets import custom_sentence
from matgraph.matlang import eval_sentence, parse
from matgraph.models import (
    DatasetBatch,
    ModelSpec,
    embed_prepared,
    prepare,
    run_seeds,
    static_supports,
)
from matgraph.spectral import eig_sym
from matgraph.wl import (
    fwl2_equivalent,
    fwl3_tensor_statistic,
    wl1_canonical,
    wl1_equivalent,
    wl2_equivalent,
)

DEFAULT_MODELS = (
    "mlp",
    "gcn",
    "graphsage",
    "gin",
    "gat",
    "chebnet",
    "gnnml1",
    "gnnml3",
)


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    format: str = "graph6"
    models: tuple[str, ...] = DEFAULT_MODELS
    runs: int = 100
    threshold: float = 1e-3
    base_seed: int = 0
    output_format: str = "text"

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.threshold <= 0:
            raise ValueError("threshold must be > 0")

    @classmethod
    def from_file(cls, path: str, **overrides) -> "ExperimentConfig":
        """Key-value text config: one `key = value` per line, # comments."""
        values: dict = {}
        with open(path) as f:
            for line in f:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, raw = line.partition("=")
                key, raw = key.strip(), raw.strip()
                if key in ("runs", "base_seed"):
                    values[key] = int(raw)
                elif key == "threshold":
                    values[key] = float(raw)
                elif key == "models":
                    values[key] = tuple(m.strip() for m in raw.split(",") if m.strip())
                else:
                    values[key] = raw
        values.update(overrides)
        return cls(**values)


@dataclass
class PairReport:
    kind: str
    graph_count: int
    pair_count: int
    counts: dict[str, int] = field(default_factory=dict)
    pairs: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    PAIR_LIST_CAP = 1000

    def record(self, method: str, pairs: list[tuple[int, int]]):
        if len(pairs) > self.pair_count:
            raise ValueError("more pairs than C(graph_count, 2)")
        self.counts[method] = len(pairs)
        self.pairs[method] = sorted(pairs)[: self.PAIR_LIST_CAP]


def wl1_signatures(graphs: list[Graph]) -> list[str]:
    """Canonical 1-WL signature per graph; shared registry makes the
    signatures comparable across independently refined graphs."""
    return [wl1_canonical(G).signature for G in graphs]


def _bucket_pairs(keys: list) -> list[tuple[int, int]]:
    groups: dict = defaultdict(list)
    for i, k in enumerate(keys):
        groups[k].append(i)
    return [p for members in groups.values() for p in combinations(members, 2)]


def wl_census(graphs: list[Graph]) -> PairReport:
    """1-WL and 2-FWL equivalent pair counts for a dataset.

    2-FWL refines 1-WL, so the exact pairwise 2-FWL test only runs
    inside 1-WL buckets.
    """
    n = len(graphs)
    report = PairReport(kind="wl-census", graph_count=n, pair_count=n * (n - 1) // 2)
    wl1_pairs = _bucket_pairs(wl1_signatures(graphs))
    report.record("1-WL", wl1_pairs)
    fwl2_pairs = [
        (i, j) for i, j in wl1_pairs if fwl2_equivalent(graphs[i], graphs[j]).equivalent
    ]
    report.record("2-FWL", fwl2_pairs)
    return report


def lambda_census(graphs: list[Graph]) -> PairReport:
    """1-WL-equivalent pairs whose normalized-Laplacian lambda-max agree
    within 1e-6 (the pairs Chebnet's lambda-max term cannot help with)."""
    n = len(graphs)
    report = PairReport(
        kind="lambda-census", graph_count=n, pair_count=n * (n - 1) // 2
    )
    wl1_pairs = _bucket_pairs(wl1_signatures(graphs))
    lam = [float(eig_sym(laplacian(G)).lam[-1]) for G in graphs]
    equal = [(i, j) for i, j in wl1_pairs if abs(lam[i] - lam[j]) <= 1e-6]
    report.record("1-WL", wl1_pairs)
    report.record("equal-lambda-max", equal)
    return report


def _candidate_pairs(emb: np.ndarray, threshold: float) -> list[tuple[int, int]]:
    """All unordered pairs with Manhattan distance <= threshold.

    Sort-window scan on coordinate 0: a pair within L1 distance t is
    within t on every single coordinate, so only pairs inside the sorted
    window need exact distances.
    """
    order = np.argsort(emb[:, 0], kind="stable")
    sorted_emb = emb[order]
    N = len(emb)
    out = []
    j = 0
    for i in range(N):
        while sorted_emb[i, 0] - sorted_emb[j, 0] > threshold:
            j += 1
        if i > j:
            d = np.abs(sorted_emb[j:i] - sorted_emb[i]).sum(axis=1)
            for k in np.flatnonzero(d <= threshold):
                a, b = int(order[j + k]), int(order[i])
                out.append((a, b) if a < b else (b, a))
    return out


def undistinguished_pairs(
    spec: ModelSpec,
    graphs: list[Graph],
    seeds: list[int],
    threshold: float,
    prepared=None,
) -> list[tuple[int, int]]:
    """Pairs whose embeddings stay within threshold in every run.

    Run 0 scans the whole dataset for candidates; afterwards only graphs
    appearing in surviving pairs are re-embedded, shrinking the batch
    whenever the active set halves.
    """
    if prepared is None:
        prepared = [prepare(spec, G) for G in graphs]
    batch = DatasetBatch(spec, prepared)
    emb = batch.embed_all(seeds[0])
    pairs = np.array(_candidate_pairs(emb, threshold), dtype=np.int64).reshape(-1, 2)
    local = np.arange(len(prepared))  # dataset index -> position in batch
    for seed in seeds[1:]:
        if len(pairs) == 0:
            break
        active = np.unique(pairs)  # dataset indices, always a subset of batch
        if len(active) <= batch.size // 2:
            batch = batch.subset(local[active].tolist())
            remap = np.full(len(prepared), -1)
            remap[active] = np.arange(len(active))
            local = remap
        emb = batch.embed_all(seed)
        d = np.abs(emb[local[pairs[:, 0]]] - emb[local[pairs[:, 1]]]).sum(axis=1)
        pairs = pairs[d <= threshold]
    return sorted((int(i), int(j)) for i, j in pairs)


def naive_undistinguished_pairs(
    spec: ModelSpec, graphs: list[Graph], seeds: list[int], threshold: float
) -> list[tuple[int, int]]:
    """All-pairs oracle for the bucketed engine (small datasets only)."""
    if len(graphs) > 500:
        raise ValueError("naive oracle limited to 500 graphs")
    prepared = [prepare(spec, G) for G in graphs]
    n = len(graphs)
    alive = {(i, j) for i in range(n) for j in range(i + 1, n)}
    for seed in seeds:
        emb = embed_prepared(spec, prepared, seed)
        alive = {
            (i, j)
            for i, j in alive
            if float(np.abs(emb[i] - emb[j]).sum()) <= threshold
        }
    return sorted(alive)


def degree_multiset_pairs(graphs: list[Graph]) -> list[tuple[int, int]]:
    """Exact oracle for the MLP row: pairs with equal sorted degrees."""
    keys = [tuple(sorted(degree_vector(G).ravel().tolist())) for G in graphs]
    return _bucket_pairs(keys)


def distinguishability_run(
    config: ExperimentConfig, graphs: list[Graph] | None = None
) -> PairReport:
    if graphs is None:
        graphs = load_dataset(config.dataset, format=config.format)
    n = len(graphs)
    report = PairReport(
        kind="distinguishability", graph_count=n, pair_count=n * (n - 1) // 2
    )
    seeds = run_seeds(config.base_seed, config.runs)
    report.extras["runs"] = config.runs
    report.extras["threshold"] = config.threshold
    report.extras["degree-multiset-oracle"] = len(degree_multiset_pairs(graphs))
    for kind in config.models:
        spec = ModelSpec(kind)
        try:
            pairs = undistinguished_pairs(spec, graphs, seeds, config.threshold)
        except Exception as exc:  # report per model without aborting others
            report.extras[f"error:{kind}"] = str(exc)
            continue
        report.record(kind, pairs)
        report.extras[f"width:{kind}"] = spec.resolved_width()
    return report


# --- golden suite -----------------------------------------------------------


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    expected: object
    actual: object
    passed: bool


def _check(name, expected, actual, tol=0.0) -> GoldenCheck:
    if tol == 0.0:
        ok = expected == actual
    else:
        ok = abs(float(expected) - float(actual)) <= tol
    return GoldenCheck(name=name, expected=expected, actual=actual, passed=bool(ok))


def golden_pairs_suite(data=None) -> list[GoldenCheck]:
    """Every paper-anchored numeric on the built-in appendix pairs."""
    graphs = data if data is not None else appendix_data.GRAPHS
    dec, bic = graphs["decalin"], graphs["bicyclopentyl"]
    cg, ch = graphs["cospectral10_a"], graphs["cospectral10_b"]
    rook, shri = graphs["rook4x4"], graphs["shrikhande"]
    checks = []

    def tr_power(G, k):
        return float(np.trace(np.linalg.matrix_power(G.adjacency, k)))

    checks.append(_check("decalin tr(A^5)", 0.0, tr_power(dec, 5)))
    checks.append(_check("bicyclopentyl tr(A^5)", 20.0, tr_power(bic, 5)))
    checks.append(
        _check("decalin/bicyclopentyl 1-WL equivalent", True,
               wl1_equivalent(dec, bic).equivalent)
    )
    lam_d = float(eig_sym(laplacian(dec)).lam[-1])
    lam_b = float(eig_sym(laplacian(bic)).lam[-1])
    checks.append(_check("decalin lambda-max", 2.0, lam_d, tol=1e-3))
    checks.append(_check("bicyclopentyl lambda-max", 1.8418, lam_b, tol=1e-3))
    ones = np.ones(10)
    for name, G, want in (("decalin", dec, -9.9327), ("bicyclopentyl", bic, -9.9269)):
        C2 = static_supports(ModelSpec("chebnet"), G)[1]
        checks.append(
            _check(f"{name} chebnet 1'C2 1", want, float(ones @ C2 @ ones), tol=1e-3)
        )

    for k, want in ((2, 40.0), (3, 48.0), (4, 360.0), (5, 920.0)):
        checks.append(_check(f"cospectral tr(A^{k}) G", want, tr_power(cg, k)))
        checks.append(_check(f"cospectral tr(A^{k}) H", want, tr_power(ch, k)))
    sentence = parse("ones' * f:square( had(A, A^2)^2 * ones )")
    checks.append(
        _check("cospectral sentence G", 6032.0, eval_sentence(sentence, cg.adjacency))
    )
    checks.append(
        _check("cospectral sentence H", 5872.0, eval_sentence(sentence, ch.adjacency))
    )
    checks.append(
        _check("cospectral pair 1-WL equivalent", True,
               wl1_equivalent(cg, ch).equivalent)
    )
    checks.append(
        _check("cospectral pair 2-FWL inequivalent", False,
               fwl2_equivalent(cg, ch).equivalent)
    )

    for name, G in (("rook", rook), ("shrikhande", shri)):
        checks.append(
            _check(f"{name} L3 sentence", 331776.0, eval_sentence(sentence, G.adjacency))
        )
        lam = eig_sym(laplacian(G)).lam
        hist = Counter(round(float(v), 2) for v in lam)
        checks.append(
            _check(f"{name} spectrum multiplicities", {0.0: 1, 0.67: 6, 1.33: 9},
                   dict(sorted(hist.items())))
        )
    checks.append(
        _check("rook/shrikhande 2-WL equivalent", True,
               wl2_equivalent(rook, shri).equivalent)
    )
    checks.append(
        _check("rook/shrikhande 2-FWL equivalent", True,
               fwl2_equivalent(rook, shri).equivalent)
    )
    checks.append(_check("rook 3-FWL statistic", 205632.0, fwl3_tensor_statistic(rook)))
    checks.append(
        _check("shrikhande 3-FWL statistic", 208704.0, fwl3_tensor_statistic(shri))
    )
    checks.append(
        _check("custom sentence equal on 1-WL pair", True,
               abs(custom_sentence(dec) - custom_sentence(bic)) <= 1e-9)
    )
    return checks


def golden_report(checks: list[GoldenCheck]) -> PairReport:
    report = PairReport(kind="golden", graph_count=6, pair_count=3)
    report.counts["passed"] = sum(c.passed for c in checks)
    report.counts["failed"] = sum(not c.passed for c in checks)
    report.extras["checks"] = [
        {
            "name": c.name,
            "expected": repr(c.expected),
            "actual": repr(c.actual),
            "passed": c.passed,
        }
        for c in checks
    ]
    return report


# --- rendering ---------------------------------------------------------------


def report_render(report: PairReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(
            {
                "kind": report.kind,
                "graph_count": report.graph_count,
                "pair_count": report.pair_count,
                "counts": report.counts,
                "extras": report.extras,
            },
            indent=2,
            sort_keys=True,
        )
    if format == "csv":
        lines = ["method,undistinguished_pairs"]
        lines += [f"{k},{v}" for k, v in report.counts.items()]
        return "\n".join(lines) + "\n"
    if format == "text":
        lines = [
            f"{report.kind}: {report.graph_count} graphs, "
            f"{report.pair_count} pairs"
        ]
        width = max((len(k) for k in report.counts), default=0)
        lines += [f"  {k.ljust(width)}  {v}" for k, v in report.counts.items()]
        for key, value in report.extras.items():
            if key == "checks":
                for c in value:
                    status = "pass" if c["passed"] else "FAIL"
                    lines.append(
                        f"  [{status}] {c['name']}: expected {c['expected']}, "
                        f"got {c['actual']}"
                    )
            else:
                lines.append(f"  {key} = {value}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")
