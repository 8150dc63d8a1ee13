"""Built-in benchmark graph pairs.

Three classic pairs of non-isomorphic graphs ordered by the strength of
the test needed to separate them:

  * ``decalin``/``bicyclopentyl``: 1-WL equivalent, separated by spectra
    (e.g. tr(A^5)).
  * ``cospectral10_a``/``cospectral10_b``: cospectral 4-regular graphs on
    10 vertices, separated by Hadamard-product sentences (3-WL power).
  * ``rook4x4``/``shrikhande``: strongly regular SRG(16,6,2,2) pair,
    3-WL equivalent, separated only by 3-FWL-level statistics.
"""

from __future__ import annotations

import numpy as np

from matgraph.graphcore import Graph


def _graph(rows: str) -> Graph:
    A = np.array(
        [[int(c) for c in line.split()] for line in rows.strip().splitlines()],
        dtype=np.float64,
    )
    return Graph(adjacency=A)


DECALIN = _graph(
    """
    0 1 1 0 0 0 1 0 0 0
    1 0 0 0 0 1 0 0 0 1
    1 0 0 1 0 0 0 0 0 0
    0 0 1 0 1 0 0 0 0 0
    0 0 0 1 0 1 0 0 0 0
    0 1 0 0 1 0 0 0 0 0
    1 0 0 0 0 0 0 1 0 0
    0 0 0 0 0 0 1 0 1 0
    0 0 0 0 0 0 0 1 0 1
    0 1 0 0 0 0 0 0 1 0
    """
)

BICYCLOPENTYL = _graph(
    """
    0 1 1 0 0 1 0 0 0 0
    1 0 0 0 0 0 1 0 0 1
    1 0 0 1 0 0 0 0 0 0
    0 0 1 0 1 0 0 0 0 0
    0 0 0 1 0 1 0 0 0 0
    1 0 0 0 1 0 0 0 0 0
    0 1 0 0 0 0 0 1 0 0
    0 0 0 0 0 0 1 0 1 0
    0 0 0 0 0 0 0 1 0 1
    0 1 0 0 0 0 0 0 1 0
    """
)

COSPECTRAL10_A = _graph(
    """
    0 1 0 1 0 1 0 1 0 0
    1 0 1 1 1 0 0 0 0 0
    0 1 0 0 1 0 1 0 0 1
    1 1 0 0 0 1 0 1 0 0
    0 1 1 0 0 0 1 0 0 1
    1 0 0 1 0 0 0 0 1 1
    0 0 1 0 1 0 0 1 1 0
    1 0 0 1 0 0 1 0 1 0
    0 0 0 0 0 1 1 1 0 1
    0 0 1 0 1 1 0 0 1 0
    """
)

COSPECTRAL10_B = _graph(
    """
    0 1 0 1 0 0 1 1 0 0
    1 0 1 1 1 0 0 0 0 0
    0 1 0 0 1 1 0 0 0 1
    1 1 0 0 0 1 0 1 0 0
    0 1 1 0 0 0 1 0 0 1
    0 0 1 1 0 0 0 1 1 0
    1 0 0 0 1 0 0 0 1 1
    1 0 0 1 0 1 0 0 1 0
    0 0 0 0 0 1 1 1 0 1
    0 0 1 0 1 0 1 0 1 0
    """
)

ROOK4X4 = _graph(
    """
    0 1 1 1 1 0 0 0 1 0 0 0 1 0 0 0
    1 0 1 1 0 1 0 0 0 1 0 0 0 1 0 0
    1 1 0 1 0 0 1 0 0 0 1 0 0 0 1 0
    1 1 1 0 0 0 0 1 0 0 0 1 0 0 0 1
    1 0 0 0 0 1 1 1 1 0 0 0 1 0 0 0
    0 1 0 0 1 0 1 1 0 1 0 0 0 1 0 0
    0 0 1 0 1 1 0 1 0 0 1 0 0 0 1 0
    0 0 0 1 1 1 1 0 0 0 0 1 0 0 0 1
    1 0 0 0 1 0 0 0 0 1 1 1 1 0 0 0
    0 1 0 0 0 1 0 0 1 0 1 1 0 1 0 0
    0 0 1 0 0 0 1 0 1 1 0 1 0 0 1 0
    0 0 0 1 0 0 0 1 1 1 1 0 0 0 0 1
    1 0 0 0 1 0 0 0 1 0 0 0 0 1 1 1
    0 1 0 0 0 1 0 0 0 1 0 0 1 0 1 1
    0 0 1 0 0 0 1 0 0 0 1 0 1 1 0 1
    0 0 0 1 0 0 0 1 0 0 0 1 1 1 1 0
    """
)

SHRIKHANDE = _graph(
    """
    0 1 0 1 1 1 0 0 0 0 0 0 1 0 0 1
    1 0 1 0 0 1 1 0 0 0 0 0 1 1 0 0
    0 1 0 1 0 0 1 1 0 0 0 0 0 1 1 0
    1 0 1 0 1 0 0 1 0 0 0 0 0 0 1 1
    1 0 0 1 0 1 0 1 1 1 0 0 0 0 0 0
    1 1 0 0 1 0 1 0 0 1 1 0 0 0 0 0
    0 1 1 0 0 1 0 1 0 0 1 1 0 0 0 0
    0 0 1 1 1 0 1 0 1 0 0 1 0 0 0 0
    0 0 0 0 1 0 0 1 0 1 0 1 1 1 0 0
    0 0 0 0 1 1 0 0 1 0 1 0 0 1 1 0
    0 0 0 0 0 1 1 0 0 1 0 1 0 0 1 1
    0 0 0 0 0 0 1 1 1 0 1 0 1 0 0 1
    1 1 0 0 0 0 0 0 1 0 0 1 0 1 0 1
    0 1 1 0 0 0 0 0 1 1 0 0 1 0 1 0
    0 0 1 1 0 0 0 0 0 1 1 0 0 1 0 1
    1 0 0 1 0 0 0 0 0 0 1 1 1 0 1 0
    """
)

PAIRS: dict[str, tuple[Graph, Graph]] = {
    "decalin-bicyclopentyl": (DECALIN, BICYCLOPENTYL),
    "cospectral10": (COSPECTRAL10_A, COSPECTRAL10_B),
    "rook-shrikhande": (ROOK4X4, SHRIKHANDE),
}

GRAPHS: dict[str, Graph] = {
    "decalin": DECALIN,
    "bicyclopentyl": BICYCLOPENTYL,
    "cospectral10_a": COSPECTRAL10_A,
    "cospectral10_b": COSPECTRAL10_B,
    "rook4x4": ROOK4X4,
    "shrikhande": SHRIKHANDE,
}
