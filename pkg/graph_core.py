"""
The dictionary graph G_D and its orientations.

L-vertices are the distinct first subpatterns, R-vertices the distinct second subpatterns
and every gapped pattern is one L-R edge (parallel edges allowed). Orientations decide,
edge by edge, which endpoint is responsible for it:

* OWNER_LEFT: the L-endpoint u is responsible; on activation u registers itself in the
  reporting list of its assigned-neighbor v.
* OWNER_RIGHT: the R-endpoint v is responsible; on arrival v scans the timestamps of u.
* UNORIENTED: heavy-heavy edges under a threshold orientation, handled by the tree mechanism.
"""
import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from math import isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from dictionary import gapped, vertex_labels
from entity.pattern import Gap, GappedPattern

logger = logging.getLogger(__name__)

OWNER_LEFT = 0
OWNER_RIGHT = 1
UNORIENTED = -1


@dataclass(frozen=True)
class GraphEdge:
    id: int
    u: int
    v: int
    pattern_id: int
    gap: Optional[Gap] = None

    @property
    def alpha(self) -> int:
        return self.gap.alpha if self.gap is not None else 0

    @property
    def beta(self) -> Optional[int]:
        return self.gap.beta if self.gap is not None else None


@dataclass
class DictGraph:
    """Bipartite multigraph with L ids 0..|L|-1 and R ids 0..|R|-1 (separate id spaces)."""
    left_count: int
    right_count: int
    edges: List[GraphEdge]
    left_labels: List[bytes] = field(default_factory=list)
    right_labels: List[bytes] = field(default_factory=list)
    left_adj: List[List[int]] = field(init=False)
    right_adj: List[List[int]] = field(init=False)

    def __post_init__(self):
        self.left_adj = [[] for _ in range(self.left_count)]
        self.right_adj = [[] for _ in range(self.right_count)]
        for e in self.edges:
            self.left_adj[e.u].append(e.id)
            self.right_adj[e.v].append(e.id)

    @property
    def d(self) -> int:
        return len(self.edges)

    def left_degree(self, u: int) -> int:
        return len(self.left_adj[u])

    def right_degree(self, v: int) -> int:
        return len(self.right_adj[v])

    def edge_pairs(self) -> List[Tuple[int, int]]:
        """Edges as pairs of global ids (L first, then R)."""
        return [(e.u, self.left_count + e.v) for e in self.edges]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.left_count + self.right_count))
        g.add_edges_from(self.edge_pairs())
        return g


def build_graph(patterns: Sequence[GappedPattern]) -> DictGraph:
    """G_D of a dictionary; gapless patterns are not edges."""
    left, right = vertex_labels(patterns)
    edges = [
        GraphEdge(id=k, u=left[p.p1], v=right[p.p2], pattern_id=p.id, gap=p.gap)
        for k, p in enumerate(gapped(patterns))
    ]
    graph = DictGraph(
        left_count=len(left),
        right_count=len(right),
        edges=edges,
        left_labels=list(left),
        right_labels=list(right),
    )
    logger.info("Built G_D: |L|=%d |R|=%d d=%d", graph.left_count, graph.right_count, graph.d)
    return graph


def graph_from_arcs(n: int, arcs: Iterable[Tuple[int, int]], gaps: Optional[Sequence[Optional[Gap]]] = None) -> DictGraph:
    """
    Bipartite form of a directed graph on vertices 0..n-1: arc (a, b) becomes the edge
    (a in L, b in R). The edge id is the arc index; `pattern_id` repeats it.
    """
    arcs = list(arcs)
    edges = []
    for k, (a, b) in enumerate(arcs):
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"arc ({a}, {b}) has an endpoint outside 0..{n - 1}")
        edges.append(GraphEdge(id=k, u=a, v=b, pattern_id=k, gap=gaps[k] if gaps is not None else None))
    return DictGraph(left_count=n, right_count=n, edges=edges)


def greedy_peel(n: int, edges: Sequence[Tuple[int, int]]) -> Tuple[List[int], int]:
    """
    Removes a minimum-degree vertex until none is left (smallest id first on ties) and
    returns the removal order and the largest degree seen at removal time. Parallel
    edges count toward the degree; self loops count twice. Buckets are heaps so ties
    pop the smallest id, which costs a log factor over a plain bucket queue.
    """
    adj: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    degree = [len(a) for a in adj]
    buckets: Dict[int, List[int]] = defaultdict(list)
    for x in range(n):
        heapq.heappush(buckets[degree[x]], x)

    removed = [False] * n
    order: List[int] = []
    delta = 0
    low = 0
    while len(order) < n:
        while not buckets.get(low):
            low += 1
        x = heapq.heappop(buckets[low])
        if removed[x] or degree[x] != low:
            continue
        removed[x] = True
        order.append(x)
        delta = max(delta, low)
        for y in adj[x]:
            if removed[y]:
                continue
            degree[y] -= 1
            heapq.heappush(buckets[degree[y]], y)
            # parallel edges can drop a neighbour several buckets at once
            low = min(low, degree[y])
    return order, delta


@dataclass
class Orientation:
    """Per-edge owner plus the out-lists it induces."""
    owner: List[int]
    left_out: List[List[int]]
    right_out: List[List[int]]
    bound: int
    heavy_heavy: List[int] = field(default_factory=list)

    @property
    def oriented(self) -> int:
        return sum(1 for o in self.owner if o != UNORIENTED)

    @property
    def max_out_degree(self) -> int:
        return max((len(x) for x in self.left_out + self.right_out), default=0)


def orientation_from_owner(graph: DictGraph, owner: List[int], bound: int) -> Orientation:
    left_out: List[List[int]] = [[] for _ in range(graph.left_count)]
    right_out: List[List[int]] = [[] for _ in range(graph.right_count)]
    heavy_heavy = []
    for e in graph.edges:
        if owner[e.id] == OWNER_LEFT:
            left_out[e.u].append(e.id)
        elif owner[e.id] == OWNER_RIGHT:
            right_out[e.v].append(e.id)
        else:
            heavy_heavy.append(e.id)
    return Orientation(owner=owner, left_out=left_out, right_out=right_out, bound=bound, heavy_heavy=heavy_heavy)


def degeneracy_orient(graph: DictGraph) -> Tuple[Orientation, int]:
    """Orients every edge out of the endpoint that the greedy peel removes first."""
    order, delta = greedy_peel(graph.left_count + graph.right_count, graph.edge_pairs())
    rank = [0] * len(order)
    for k, x in enumerate(order):
        rank[x] = k
    owner = [
        OWNER_LEFT if rank[e.u] < rank[graph.left_count + e.v] else OWNER_RIGHT
        for e in graph.edges
    ]
    logger.info("Degeneracy orientation: delta=%d", delta)
    return orientation_from_owner(graph, owner, delta), delta


@dataclass
class HeavyLightSplit:
    theta: int
    heavy_left: List[bool]
    heavy_right: List[bool]

    @property
    def heavy_left_count(self) -> int:
        return sum(self.heavy_left)

    @property
    def heavy_right_count(self) -> int:
        return sum(self.heavy_right)


def heavy_threshold(d: int, lsc: int) -> int:
    """ceil(sqrt(ceil(d / lsc))), which equals ceil(sqrt(d / lsc)) for integers."""
    if d <= 0:
        return 0
    t = -(-d // max(1, lsc))
    theta = isqrt(t)
    return theta if theta * theta == t else theta + 1


def classify_heavy(graph: DictGraph, lsc: int) -> HeavyLightSplit:
    theta = heavy_threshold(graph.d, lsc)
    split = HeavyLightSplit(
        theta=theta,
        heavy_left=[graph.left_degree(u) > theta for u in range(graph.left_count)],
        heavy_right=[graph.right_degree(v) > theta for v in range(graph.right_count)],
    )
    logger.info(
        "Heavy split: theta=%d heavy L=%d heavy R=%d",
        theta, split.heavy_left_count, split.heavy_right_count,
    )
    return split


def threshold_orient(graph: DictGraph, split: HeavyLightSplit) -> Orientation:
    owner = []
    for e in graph.edges:
        if not split.heavy_left[e.u]:
            owner.append(OWNER_LEFT)
        elif not split.heavy_right[e.v]:
            owner.append(OWNER_RIGHT)
        else:
            owner.append(UNORIENTED)
    return orientation_from_owner(graph, owner, split.theta)
