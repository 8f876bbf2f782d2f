"""
Triangle queries answered by the ISG engines.

vertex_triangles(g, u) streams the neighbors of u through an unbounded ISG over both
directions of every edge: each reported arc (a, b) closes the triangle {u, a, b}.

vertex_triangles_bounded(g, u, alpha) uses the tripartite form (copies V1, V2, V3 plus a
degree-0 dummy): the V2 copies of u's neighbors, then `alpha` dummies, then their V3 copies,
through a uniform ISG with bounds [alpha, alpha + 2 deg(u)]. Only V2 -> V3 arcs can fall in
that window.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, List, Optional, Set, Tuple, Union

import networkx as nx

from entity.occurrence import ReportMode
from errors import GraphInputError, UnknownVertexError
from graph_core import DictGraph, graph_from_arcs
from isg import UnboundedISG, UniformISG

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]


@dataclass
class QueryGraph:
    """Undirected simple graph on vertices 0..n-1."""
    n: int
    edges: List[Tuple[int, int]]
    adjacency: List[Set[int]] = field(init=False)
    _isg: Optional[UnboundedISG] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.adjacency = [set() for _ in range(self.n)]
        simple = []
        for a, b in self.edges:
            if a == b:
                raise GraphInputError(f"self loop at vertex {a}")
            if a < 0 or b < 0 or a >= self.n or b >= self.n:
                raise GraphInputError(f"edge ({a}, {b}) leaves the vertex range 0..{self.n - 1}")
            if b not in self.adjacency[a]:
                self.adjacency[a].add(b)
                self.adjacency[b].add(a)
                simple.append((min(a, b), max(a, b)))
        self.edges = simple

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "QueryGraph":
        n = max(g.nodes, default=-1) + 1
        return cls(n=n, edges=list(g.edges()))

    def neighbors(self, u: int) -> List[int]:
        if not 0 <= u < self.n:
            raise UnknownVertexError(f"vertex {u} is not in the graph")
        return sorted(self.adjacency[u])

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def arcs(self) -> List[Tuple[int, int]]:
        return [arc for a, b in self.edges for arc in ((a, b), (b, a))]

    def isg_form(self) -> DictGraph:
        return graph_from_arcs(self.n, self.arcs())

    @property
    def isg(self) -> UnboundedISG:
        if self._isg is None:
            self._isg = UnboundedISG(self.isg_form(), mode=ReportMode.DEDUP)
        return self._isg


@dataclass
class TripartiteForm:
    """
    Copies V1 = 0..n-1, V2 = n..2n-1, V3 = 2n..3n-1 and the dummy 3n. Each edge {a, b} gives
    the six arcs V1->V2, V1->V3 and V2->V3 in both orientations.
    """
    n: int
    arcs: List[Tuple[int, int]]

    @classmethod
    def of(cls, graph: QueryGraph) -> "TripartiteForm":
        n = graph.n
        arcs = []
        for a, b in graph.edges:
            for x, y in ((a, b), (b, a)):
                arcs.append((x, n + y))
                arcs.append((x, 2 * n + y))
                arcs.append((n + x, 2 * n + y))
        return cls(n=n, arcs=arcs)

    @property
    def dummy(self) -> int:
        return 3 * self.n

    @property
    def vertex_count(self) -> int:
        return 3 * self.n + 1

    def original(self, x: int) -> int:
        return x % self.n

    def dict_graph(self) -> DictGraph:
        return graph_from_arcs(self.vertex_count, self.arcs)


def _triangle(u: int, a: int, b: int) -> Triangle:
    return tuple(sorted((u, a, b)))


def vertex_triangles(graph: QueryGraph, u: int) -> List[Triangle]:
    neighbors = graph.neighbors(u)
    engine = graph.isg
    engine.reset()
    arcs = engine.graph.edges
    found = []
    for x in neighbors:
        for hit in engine.step(x):
            e = arcs[hit.edge]
            found.append(_triangle(u, e.u, e.v))
    engine.reset()
    return sorted(found)


def vertex_triangles_bounded(
    graph: QueryGraph,
    u: int,
    alpha: int,
    form: Optional[TripartiteForm] = None,
) -> List[Triangle]:
    """The engine is rebuilt for every query: its beta depends on deg(u)."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    neighbors = graph.neighbors(u)
    form = form or TripartiteForm.of(graph)
    engine = UniformISG(form.dict_graph(), alpha=alpha, beta=alpha + 2 * len(neighbors), mode=ReportMode.DEDUP)
    stream = [form.n + x for x in neighbors] + [form.dummy] * alpha + [2 * form.n + x for x in neighbors]
    arcs = engine.graph.edges
    found = set()
    for x in stream:
        for hit in engine.step(x):
            e = arcs[hit.edge]
            found.add(_triangle(u, form.original(e.u), form.original(e.v)))
    return sorted(found)


def all_triangles(graph: QueryGraph, bounded: bool = False, alpha: int = 0) -> List[Triangle]:
    """Every triangle once, from the union of the per-vertex queries."""
    form = TripartiteForm.of(graph) if bounded else None
    found = set()
    for u in range(graph.n):
        if bounded:
            found.update(vertex_triangles_bounded(graph, u, alpha, form))
        else:
            found.update(vertex_triangles(graph, u))
    return sorted(found)


def enumerate_triangles_oracle(graph: QueryGraph) -> List[Triangle]:
    return sorted(
        (a, b, c)
        for a, b, c in combinations(range(graph.n), 3)
        if b in graph.adjacency[a] and c in graph.adjacency[a] and c in graph.adjacency[b]
    )


def read_edge_list(path: Union[str, Path]) -> QueryGraph:
    """Edge list with one `u v` pair of 0-based ids per line; `#` comments allowed."""
    g = nx.Graph()
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            tokens = line.split("#", 1)[0].split()
            if not tokens:
                continue
            if len(tokens) != 2:
                raise GraphInputError(f"line {line_no}: expected 'u v', got {line.strip()!r}")
            try:
                a, b = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphInputError(f"line {line_no}: vertex ids must be integers, got {line.strip()!r}")
            if a < 0 or b < 0:
                raise GraphInputError(f"line {line_no}: vertex ids must be non-negative")
            if a == b:
                raise GraphInputError(f"line {line_no}: self loop at vertex {a}")
            g.add_edge(a, b)
    graph = QueryGraph.from_networkx(g)
    logger.info("Read graph with %d vertices and %d edges from %s", graph.n, len(graph.edges), path)
    return graph


def graph_from_edges(edges: Iterable[Tuple[int, int]], n: Optional[int] = None) -> QueryGraph:
    edges = list(edges)
    if n is None:
        n = max((max(a, b) for a, b in edges), default=-1) + 1
    return QueryGraph(n=n, edges=edges)
