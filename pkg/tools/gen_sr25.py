"""Generate sr25.g6: the 15 strongly regular graphs with parameters (25,12,5,6).

Every SRG(25,12,5,6) is a descendant of a regular two-graph on 26 points
(k = 2*mu), and the regular two-graphs on 26 points are the switching
classes of the symmetric conference matrices of order 26. Seeds cover
all of those classes:

  * the Paley graph on GF(25),
  * the L3 graphs of the order-5 Latin squares,
  * descendants of the block graphs of the two Steiner triple systems
    STS(13) (blocks adjacent iff they share a point, an SRG(26,15,8,9)
    whose Seidel matrix is a conference matrix); the cyclic system is
    developed from base blocks {0,1,4}, {0,2,7} mod 13 and the
    non-cyclic one is reached by a Pasch trade.

Exploration closes the seed set under

  * complementation (the parameter set is self-complementary),
  * two-graph descendants: add an isolated point, Seidel-switch any of
    the 26 points to isolation, delete it.

Classes are separated by a fingerprint (sorted multiset over vertices of
the WL hash of the graph with that vertex individualized); fingerprint
ties fall back to exact VF2 isomorphism checks. Expected class count: 15.
"""

import sys
from itertools import permutations

import networkx as nx
import numpy as np

N = 25


def paley25() -> np.ndarray:
    # GF(25) = GF(5)[x]/(x^2 - 2); elements (a, b) = a + b*x.
    elems = [(a, b) for a in range(5) for b in range(5)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(p, q):
        a, b = p
        c, d = q
        return ((a * c + 2 * b * d) % 5, (a * d + b * c) % 5)

    squares = {mul(e, e) for e in elems if e != (0, 0)}
    A = np.zeros((N, N), dtype=np.int64)
    for p in elems:
        for q in elems:
            if p != q and ((p[0] - q[0]) % 5, (p[1] - q[1]) % 5) in squares:
                A[idx[p], idx[q]] = 1
    return A


def latin_square_graphs() -> list[np.ndarray]:
    """L3 graphs of all reduced order-5 Latin squares (2 main classes)."""
    graphs = []
    first_row = list(range(5))

    def complete(rows):
        if len(rows) == 5:
            graphs.append(rows_to_graph(rows))
            return
        r = len(rows)
        for perm in permutations(range(5)):
            if perm[0] != r:  # reduced: first column is 0..4
                continue
            if any(perm[c] == rows[i][c] for i in range(r) for c in range(5)):
                continue
            complete(rows + [list(perm)])

    def rows_to_graph(rows):
        A = np.zeros((N, N), dtype=np.int64)
        cells = [(i, j) for i in range(5) for j in range(5)]
        for x, (i1, j1) in enumerate(cells):
            for y, (i2, j2) in enumerate(cells):
                if x == y:
                    continue
                if i1 == i2 or j1 == j2 or rows[i1][j1] == rows[i2][j2]:
                    A[x, y] = 1
        return A

    complete([first_row])
    return graphs


def is_srg(A: np.ndarray) -> bool:
    A2 = A @ A
    J = np.ones((N, N), dtype=np.int64)
    I = np.eye(N, dtype=np.int64)
    return bool(np.array_equal(A2, 12 * I + 5 * A + 6 * (J - I - A)))


def descendants(A: np.ndarray) -> list[np.ndarray]:
    """All 26 descendants of the regular two-graph extending A."""
    S = np.ones((N + 1, N + 1), dtype=np.int64)
    S[:N, :N] -= 2 * A
    np.fill_diagonal(S, 0)
    out = []
    for p in range(N + 1):
        Sp = S.copy()
        U = Sp[p] == -1
        V = ~U
        V[p] = True
        Sp[np.ix_(U, V)] *= -1
        Sp[np.ix_(V, U)] *= -1
        keep = [q for q in range(N + 1) if q != p]
        Sq = Sp[np.ix_(keep, keep)]
        B = (1 - Sq) // 2
        np.fill_diagonal(B, 0)
        out.append(B.astype(np.int64))
    return out


def seidel_descendants(S: np.ndarray) -> list[np.ndarray]:
    """Descendants of the two-graph of a (k+1)-point Seidel matrix."""
    m = S.shape[0]
    out = []
    for p in range(m):
        Sp = S.copy()
        U = Sp[p] == -1
        V = ~U
        V[p] = True
        Sp[np.ix_(U, V)] *= -1
        Sp[np.ix_(V, U)] *= -1
        keep = [q for q in range(m) if q != p]
        Sq = Sp[np.ix_(keep, keep)]
        B = (1 - Sq) // 2
        np.fill_diagonal(B, 0)
        out.append(B.astype(np.int64))
    return out


def sts13_cyclic() -> list[frozenset]:
    blocks = []
    for base in [(0, 1, 4), (0, 2, 7)]:
        for t in range(13):
            blocks.append(frozenset((x + t) % 13 for x in base))
    return blocks


def pasch_trades(blocks: list[frozenset]) -> list[list[frozenset]]:
    """All systems obtained by switching one Pasch configuration.

    A Pasch configuration is four blocks of shape {a,b,c}, {a,d,e},
    {f,b,e}, {f,d,c}; the trade replaces them with {a,b,e}, {a,d,c},
    {f,b,c}, {f,d,e}, giving another Steiner triple system.
    """
    out = []
    bs = set(blocks)
    from itertools import combinations as comb

    for B1, B2 in comb(blocks, 2):
        inter = B1 & B2
        if len(inter) != 1:
            continue
        (a,) = inter
        b, c = sorted(B1 - inter)
        for d, e in [tuple(sorted(B2 - inter)), tuple(sorted(B2 - inter))[::-1]]:
            for f in range(13):
                if f == a or f in B1 or f in B2:
                    continue
                old = [B1, B2, frozenset({f, b, e}), frozenset({f, d, c})]
                if all(blk in bs for blk in old):
                    new = [
                        frozenset({a, b, e}),
                        frozenset({a, d, c}),
                        frozenset({f, b, c}),
                        frozenset({f, d, e}),
                    ]
                    out.append([blk for blk in blocks if blk not in old] + new)
    return out


def block_graph(blocks: list[frozenset]) -> np.ndarray:
    m = len(blocks)
    A = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            if blocks[i] & blocks[j]:
                A[i, j] = A[j, i] = 1
    return A


def sts_seeds() -> list[np.ndarray]:
    """SRG(25,12,5,6) descendants of the two STS(13) two-graphs."""
    systems = [sts13_cyclic()]
    base_bg = nx.from_numpy_array(block_graph(systems[0]))
    for sys26 in pasch_trades(systems[0]):
        if not nx.is_isomorphic(nx.from_numpy_array(block_graph(sys26)), base_bg):
            systems.append(sys26)
            break
    out = []
    for blocks in systems:
        A26 = block_graph(blocks)
        S = np.ones((26, 26), dtype=np.int64) - np.eye(26, dtype=np.int64) - 2 * A26
        for B in seidel_descendants(S):
            if is_srg(B):
                out.append(B)
            else:
                comp = np.ones((N, N), dtype=np.int64) - np.eye(N, dtype=np.int64) - B
                if is_srg(comp):
                    out.append(comp)
    return out


def fingerprint(A: np.ndarray) -> tuple[str, ...]:
    G = nx.from_numpy_array(A)
    hashes = []
    for v in range(N):
        nx.set_node_attributes(G, {w: int(w == v) for w in G}, "mark")
        hashes.append(
            nx.weisfeiler_lehman_graph_hash(G, node_attr="mark", iterations=3)
        )
    return tuple(sorted(hashes))


def main(out_path: str) -> None:
    seeds = [paley25()] + latin_square_graphs()
    buckets: dict[tuple, list[np.ndarray]] = {}
    frontier: list[np.ndarray] = []

    def n_classes() -> int:
        return sum(len(b) for b in buckets.values())

    def add(A: np.ndarray) -> bool:
        if not is_srg(A):
            return False
        bucket = buckets.setdefault(fingerprint(A), [])
        GA = nx.from_numpy_array(A)
        if any(nx.is_isomorphic(GA, nx.from_numpy_array(C)) for C in bucket):
            return False
        bucket.append(A)
        frontier.append(A)
        print(f"class {n_classes()}")
        return True

    for A in seeds:
        add(A)
        if n_classes() >= 3:  # Paley + Latin squares cover 3 classes
            break
    for A in sts_seeds():
        if n_classes() >= 15:
            break
        add(A)
    J = np.ones((N, N), dtype=np.int64)
    I = np.eye(N, dtype=np.int64)
    seen_exact: set[bytes] = set()
    while frontier and n_classes() < 15:
        A = frontier.pop()
        candidates = [J - I - A]
        for B in descendants(A):
            candidates.extend([B, J - I - B])
        for B in candidates:
            if n_classes() >= 15:
                break
            key = B.tobytes()
            if key in seen_exact:
                continue
            seen_exact.add(key)
            add(B)

    print(f"{n_classes()} isomorphism classes found")
    lines = sorted(
        nx.to_graph6_bytes(nx.from_numpy_array(A), header=False).decode().strip()
        for b in buckets.values()
        for A in b
    )
    with open(out_path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/sr25.g6")
