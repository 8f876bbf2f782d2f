import random
from collections import Counter
from itertools import combinations

import networkx as nx
import pytest

from errors import GraphInputError, UnknownVertexError
from triangles import (
    QueryGraph,
    TripartiteForm,
    all_triangles,
    enumerate_triangles_oracle,
    graph_from_edges,
    read_edge_list,
    vertex_triangles,
    vertex_triangles_bounded,
)

K3 = graph_from_edges([(0, 1), (1, 2), (0, 2)])
K4 = graph_from_edges(list(combinations(range(4), 2)))
STAR = graph_from_edges([(0, k) for k in range(1, 6)])
C5 = graph_from_edges([(k, (k + 1) % 5) for k in range(5)])
FIXTURES = [K3, K4, STAR, C5]


def _random_graphs(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(3, 14)
        pairs = list(combinations(range(n), 2))
        yield graph_from_edges(rng.sample(pairs, min(len(pairs), rng.randint(0, 50))), n=n)


def test_fixture_queries():
    assert vertex_triangles(K3, 0) == [(0, 1, 2)]
    assert vertex_triangles(STAR, 0) == []
    assert vertex_triangles(K4, 2) == [(0, 1, 2), (0, 2, 3), (1, 2, 3)]
    assert vertex_triangles(C5, 3) == []


def test_bounded_fixture_queries():
    assert vertex_triangles_bounded(K3, 0, alpha=1) == [(0, 1, 2)]
    assert vertex_triangles_bounded(STAR, 0, alpha=3) == []
    assert vertex_triangles_bounded(K4, 1, alpha=0) == vertex_triangles(K4, 1)


def test_enumeration_oracle():
    assert len(enumerate_triangles_oracle(K4)) == 4
    assert enumerate_triangles_oracle(C5) == []


def test_oracle_matches_networkx_cliques():
    g = nx.gnp_random_graph(12, 0.4, seed=4)
    graph = QueryGraph.from_networkx(g)
    cliques = sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(g) if len(c) == 3)
    assert enumerate_triangles_oracle(graph) == cliques


def test_random_graphs_against_oracle():
    for graph in _random_graphs(100, seed=12):
        expected = enumerate_triangles_oracle(graph)
        assert all_triangles(graph) == expected
        for u in range(graph.n):
            through_u = [t for t in expected if u in t]
            assert vertex_triangles(graph, u) == through_u
            for alpha in (0, 1, 5):
                assert vertex_triangles_bounded(graph, u, alpha) == through_u


@pytest.mark.parametrize("graph", FIXTURES)
def test_each_triangle_found_from_all_three_corners(graph):
    counts = Counter(t for u in range(graph.n) for t in vertex_triangles(graph, u))
    assert set(counts) == set(enumerate_triangles_oracle(graph))
    assert all(c == 3 for c in counts.values())


def test_bounded_all_triangles():
    assert all_triangles(K4, bounded=True, alpha=2) == enumerate_triangles_oracle(K4)


def test_tripartite_form():
    form = TripartiteForm.of(K3)
    assert form.dummy == 9
    assert len(form.arcs) == 6 * 3
    assert form.original(2 * 3 + 1) == 1
    assert form.dict_graph().left_count == 10


def test_bad_graphs():
    with pytest.raises(GraphInputError):
        graph_from_edges([(1, 1)])
    with pytest.raises(GraphInputError):
        QueryGraph(n=2, edges=[(0, 2)])
    with pytest.raises(UnknownVertexError):
        vertex_triangles(K3, 7)
    with pytest.raises(ValueError):
        vertex_triangles_bounded(K3, 0, alpha=-1)


def test_duplicate_edges_collapse():
    g = graph_from_edges([(0, 1), (1, 0), (1, 2), (0, 2)])
    assert g.edges == [(0, 1), (1, 2), (0, 2)]
    assert vertex_triangles(g, 1) == [(0, 1, 2)]


def test_read_edge_list(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text("# K4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert all_triangles(read_edge_list(path)) == enumerate_triangles_oracle(K4)
    loop = tmp_path / "loop.txt"
    loop.write_text("0 0\n")
    with pytest.raises(GraphInputError):
        read_edge_list(loop)


@pytest.mark.parametrize("content", ["0 1\n1 x\n", "0 1\n1\n", "0 1 2\n", "0 -1\n"])
def test_read_edge_list_rejects_malformed_lines(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(GraphInputError):
        read_edge_list(path)
