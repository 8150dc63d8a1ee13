"""Generate graph8c.g6: all connected non-isomorphic simple graphs on 8 nodes.

Every connected 8-node graph contains a vertex whose removal leaves a
7-node graph (possibly disconnected), so augmenting every 7-node graph
from the networkx atlas with one extra vertex covers all of them.
Candidates are deduplicated by WL-hash bucketing followed by exact VF2
isomorphism checks inside each bucket.

Writes data/graph8c.g6 (one graph6 line per graph). Expected count: 11117.
"""

import sys
from itertools import combinations

import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def graph6_line(G: nx.Graph) -> str:
    return nx.to_graph6_bytes(G, header=False).decode().strip()


def main(out_path: str) -> None:
    parents = [g for g in graph_atlas_g() if g.number_of_nodes() == 7]
    print(f"{len(parents)} parent graphs on 7 nodes")

    buckets: dict[str, list[nx.Graph]] = {}
    n_candidates = 0
    for parent in parents:
        for k in range(1, 8):
            for subset in combinations(range(7), k):
                G = parent.copy()
                G.add_node(7)
                G.add_edges_from((7, u) for u in subset)
                if not nx.is_connected(G):
                    continue
                n_candidates += 1
                key = nx.weisfeiler_lehman_graph_hash(G, iterations=4)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(G, H) for H in bucket):
                    bucket.append(G)
    total = sum(len(b) for b in buckets.values())
    print(f"{n_candidates} connected candidates, {total} isomorphism classes")

    lines = sorted(graph6_line(G) for b in buckets.values() for G in b)
    with open(out_path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/graph8c.g6")
