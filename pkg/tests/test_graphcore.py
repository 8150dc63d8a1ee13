import numpy as np
import pytest
from hypothesis import given, settings

from matgraph.graphcore import (
    Graph,
    GraphFormatError,
    degree_vector,
    encode_graph6,
    laplacian,
    parse_graph6,
)
from matgraph.spectral import eig_sym

from .conftest import graphs


class TestGraph:
    def test_from_edges(self):
        G = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert G.n == 3
        assert G.num_edges == 2
        assert G.adjacency[0, 1] == 1.0
        assert G.adjacency[0, 2] == 0.0

    def test_rejects_asymmetric(self):
        A = np.zeros((2, 2))
        A[0, 1] = 1.0
        with pytest.raises(ValueError):
            Graph(A)

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(np.eye(2))

    def test_rejects_nonbinary(self):
        A = np.array([[0.0, 0.5], [0.5, 0.0]])
        with pytest.raises(ValueError):
            Graph(A)

    def test_adjacency_is_readonly(self):
        G = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(ValueError):
            G.adjacency[0, 1] = 0.0


class TestGraph6:
    def test_known_strings(self):
        # "D?{" is a known 5-vertex graph6 string
        G = parse_graph6("DQc")
        assert G.n == 5

    def test_path_graph(self):
        # P3: edges 01, 12
        G = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert parse_graph6(encode_graph6(G)).adjacency.tolist() == (
            G.adjacency.tolist()
        )

    def test_rejects_garbage(self):
        with pytest.raises(GraphFormatError):
            parse_graph6("\x01\x02")

    @settings(max_examples=150, deadline=None)
    @given(graphs(min_n=1, max_n=12))
    def test_roundtrip(self, G):
        H = parse_graph6(encode_graph6(G))
        assert np.array_equal(G.adjacency, H.adjacency)


class TestLaplacian:
    def test_degree_vector(self):
        G = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert degree_vector(G).ravel().tolist() == [1.0, 2.0, 1.0]

    @settings(max_examples=120, deadline=None)
    @given(graphs(min_n=2, max_n=10))
    def test_normalized_spectrum_in_0_2(self, G):
        lam = eig_sym(laplacian(G)).lam
        assert lam.min() >= -1e-10
        assert lam.max() <= 2.0 + 1e-10

    def test_combinatorial(self):
        G = Graph.from_edges(2, [(0, 1)])
        L = laplacian(G, kind="combinatorial")
        assert np.array_equal(L, np.array([[1.0, -1.0], [-1.0, 1.0]]))
