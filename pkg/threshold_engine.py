"""
Threshold-orientation DMOG engine for dense dictionaries.

A vertex of G_D is heavy when its degree exceeds theta = ceil(sqrt(d / lsc)). Edges touching a
light vertex are oriented out of it and handled by the reporting core; heavy-heavy edges are
handled through the suffix tree T of first subpatterns:

* uniform / unbounded gaps: for every heavy R-vertex v_i, the edges (w, v_i) along a root path
  of T are chained by next(e), deepest first. The arrival of u splices the chain heads
  A_u[i] into the reporting list of each v_i; an R-arrival walks the spliced chains.
* non-uniform bounded gaps: chains are kept per gap offset j (next_e[j]); the arrival of u
  drops the heads W_u[(i, j)] into the cyclic active window of v_i at the bucket of the time
  the match would complete; an R-arrival drains its current bucket.

Arrays are precomputed for special vertices of T only; any other vertex builds its array on
the fly from the nearest special ancestor.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass
from math import isqrt
from typing import Dict, List, Optional, Sequence, Set, Tuple

from automaton import SuffixTreeT
from counters import WorkCounter
from entity.occurrence import EngineKind, EngineSummary, ReportMode
from entity.pattern import Regime
from graph_core import (
    OWNER_LEFT,
    UNORIENTED,
    GraphEdge,
    HeavyLightSplit,
    Orientation,
    classify_heavy,
    orientation_from_owner,
    threshold_orient,
)
from isg import ArrivalWindow, Hit, Reporter
from dmog_engine import DmogEngine

logger = logging.getLogger(__name__)


def ceil_sqrt(n: int) -> int:
    r = isqrt(max(0, n))
    return r if r * r >= n else r + 1


@dataclass
class SpecialVertexSet:
    specials: Set[int]
    nearest: List[Optional[int]]
    weights: Sequence[int]
    threshold: int

    def anchor(self, u: int) -> int:
        return u if u in self.specials else self.nearest[u]

    def path_weight(self, tree: SuffixTreeT, u: int) -> int:
        """Weight from u up to, not including, its anchor."""
        total, stop = 0, self.anchor(u)
        while u != stop:
            total += self.weights[u]
            u = tree.parent[u]
        return total


def partition_tree(tree: SuffixTreeT, weights: Sequence[int], threshold: int) -> SpecialVertexSet:
    """
    Bottom-up greedy peeling: a node whose residual subtree weight reaches `threshold` becomes
    special and its residual subtree is cut off. The root is always special.
    """
    residual = [0] * tree.size
    specials: Set[int] = set()
    for node in tree.postorder():
        r = weights[node] + sum(residual[c] for c in tree.children[node])
        if r >= threshold or node == tree.root:
            specials.add(node)
            r = 0
        residual[node] = r

    nearest: List[Optional[int]] = [None] * tree.size
    for node in tree.preorder():
        if node == tree.root:
            continue
        parent = tree.parent[node]
        nearest[node] = parent if parent in specials else nearest[parent]
    return SpecialVertexSet(specials=specials, nearest=nearest, weights=weights, threshold=threshold)


def construct_on_path(
    u: int,
    anchor: int,
    anchor_array: Optional[List[Optional[int]]],
    tree: SuffixTreeT,
    node_heads: Dict[int, List[Tuple[int, int]]],
    k: int,
    counter: Optional[WorkCounter] = None,
) -> List[Optional[int]]:
    """A_u from the nodes strictly between u (included) and its anchor, then A_anchor."""
    array: List[Optional[int]] = [None] * k
    work = k
    w = u
    while w != anchor:
        for idx, head in node_heads.get(w, ()):
            if array[idx] is None:
                array[idx] = head
            work += 1
        w = tree.parent[w]
    if anchor_array is not None:
        for idx in range(k):
            if array[idx] is None:
                array[idx] = anchor_array[idx]
    if counter is not None:
        counter.charge(work)
    return array


def build_special_arrays(
    tree: SuffixTreeT,
    specials: SpecialVertexSet,
    node_heads: Dict[int, List[Tuple[int, int]]],
    k: int,
) -> Dict[int, List[Optional[int]]]:
    """A_s for every special s, parents first."""
    arrays: Dict[int, List[Optional[int]]] = {}
    for node in tree.preorder():
        if node not in specials.specials:
            continue
        if node == tree.root:
            arrays[node] = [None] * k
            continue
        anchor = specials.nearest[node]
        arrays[node] = construct_on_path(node, anchor, arrays[anchor], tree, node_heads, k)
    return arrays


def _edges_by_node(edges: Sequence[GraphEdge], edge_ids: Sequence[int]) -> Dict[int, List[int]]:
    by_node: Dict[int, List[int]] = {}
    for eid in edge_ids:
        by_node.setdefault(edges[eid].u, []).append(eid)
    return by_node


class SplicedTree(Reporter):
    """
    Heavy-heavy edges under one (alpha, beta) window, or unbounded when beta is None.

    The reporting list of v_i maps a chain head to the latest time it was spliced. A head
    spliced at t is unspliced when t expires, unless it was spliced again since.
    """

    def __init__(
        self,
        window: ArrivalWindow,
        edges: Sequence[GraphEdge],
        edge_ids: Sequence[int],
        tree: SuffixTreeT,
        weights: Sequence[int],
        threshold: int,
        shift: Sequence[int],
        mode: ReportMode,
        alpha: Optional[int] = None,
        beta: Optional[int] = None,
    ):
        super().__init__(window, edges, shift, mode)
        self.tree = tree
        self.alpha = alpha
        self.beta = beta
        self.alpha_floor = min((edges[e].alpha for e in edge_ids), default=0) if alpha is None else alpha
        self.right = sorted({edges[e].v for e in edge_ids})
        self.index = {v: k for k, v in enumerate(self.right)}
        self.k = len(self.right)

        self.next_edge: Dict[int, Optional[int]] = {}
        self.node_heads: Dict[int, List[Tuple[int, int]]] = {}
        self._link_chains(_edges_by_node(edges, edge_ids))
        self.specials = partition_tree(tree, weights, threshold)
        self.arrays = build_special_arrays(tree, self.specials, self.node_heads, self.k)
        self.counter.resident_arrays += len(self.arrays)
        self.lists: Dict[int, "OrderedDict[int, int]"] = {}
        self.entries = 0

    def _link_chains(self, by_node: Dict[int, List[int]]) -> None:
        current: Dict[int, int] = {}
        undo: Dict[int, List[Tuple[int, Optional[int]]]] = {}
        stack = [(self.tree.root, False)]
        while stack:
            node, leaving = stack.pop()
            if leaving:
                for v, prev in reversed(undo.pop(node, [])):
                    if prev is None:
                        del current[v]
                    else:
                        current[v] = prev
                continue
            changes = []
            for eid in by_node.get(node, ()):
                v = self.edges[eid].v
                prev = current.get(v)
                self.next_edge[eid] = prev
                changes.append((v, prev))
                current[v] = eid
            if changes:
                undo[node] = changes
                self.node_heads[node] = [(self.index[v], current[v]) for v in dict.fromkeys(v for v, _ in changes)]
            stack.append((node, True))
            for child in reversed(self.tree.children[node]):
                stack.append((child, False))

    def bounds(self, eid: int) -> Tuple[int, Optional[int]]:
        if self.alpha is None:
            return self.edges[eid].alpha, None
        return self.alpha, self.beta

    def array_for(self, u: int) -> List[Optional[int]]:
        if u in self.arrays:
            self.counter.charge(self.k)
            return self.arrays[u]
        self.counter.transient_arrays += 1
        anchor = self.specials.nearest[u]
        return construct_on_path(u, anchor, self.arrays[anchor], self.tree, self.node_heads, self.k, self.counter)

    def chain(self, head: Optional[int]) -> List[int]:
        out = []
        while head is not None:
            out.append(head)
            head = self.next_edge[head]
        return out

    def activate(self, t, deepest, vertices, fresh):
        if not self.k:
            return
        for idx, head in enumerate(self.array_for(deepest)):
            if head is None:
                continue
            spliced = self.lists.setdefault(self.right[idx], OrderedDict())
            if head not in spliced:
                self.entries += 1
            spliced[head] = t
            spliced.move_to_end(head)
            self.counter.charge()

    def expire(self, t, deepest, vertices, emptied):
        if not self.k:
            return
        for idx, head in enumerate(self.array_for(deepest)):
            if head is None:
                continue
            spliced = self.lists.get(self.right[idx])
            if spliced is not None and spliced.get(head) == t:
                del spliced[head]
                self.entries -= 1
            self.counter.charge()

    def report(self, v: int, i: int, out: List[Hit]) -> None:
        spliced = self.lists.get(v)
        if not spliced:
            return
        s = self.shift[v]
        lo = None if self.beta is None else i - s - self.beta
        hi = i - s - self.alpha_floor
        visited: Set[int] = set()
        truncate = False
        for head, spliced_at in reversed(spliced.items()):
            self.counter.charge()
            if lo is not None and spliced_at < lo:
                truncate = True
                break
            owner = self.window.times(self.edges[head].u)
            if owner is None or not owner.any_between(lo, hi):
                continue
            e = head
            while e is not None and e not in visited:
                visited.add(e)
                alpha, beta = self.bounds(e)
                times = self.window.times(self.edges[e].u)
                if times is not None:
                    self._emit_times(e, times, None if beta is None else i - s - beta, i - s - alpha, out)
                e = self.next_edge[e]
        if truncate:
            while spliced:
                oldest = next(iter(spliced))
                if spliced[oldest] >= lo:
                    break
                del spliced[oldest]
                self.entries -= 1
                self.counter.charge()

    def reset(self) -> None:
        self.lists.clear()
        self.entries = 0

    def live_space(self) -> int:
        return self.entries


class ActiveWindowTree(Reporter):
    """
    Heavy-heavy edges with per-edge bounded gaps. Buckets of the cyclic window of v_i are
    stamped with the absolute time they are due; a bucket with a stale stamp is empty.
    """

    def __init__(
        self,
        window: ArrivalWindow,
        edges: Sequence[GraphEdge],
        edge_ids: Sequence[int],
        tree: SuffixTreeT,
        base_threshold: int,
        shift: Sequence[int],
        mode: ReportMode,
        alpha_star: int,
        beta_star: int,
        max_shift: int,
    ):
        super().__init__(window, edges, shift, mode)
        self.tree = tree
        self.size = beta_star - alpha_star + max_shift + 1
        self.next_slot: Dict[Tuple[int, int], Optional[int]] = {}
        self.node_heads: Dict[int, List[Tuple[Tuple[int, int], int]]] = {}
        self._link_chains(_edges_by_node(edges, edge_ids))

        weights = [1] * tree.size
        for node, heads in self.node_heads.items():
            weights[node] = max(1, len(heads))
        self.specials = partition_tree(tree, weights, base_threshold * (beta_star - alpha_star + 1))
        self.arrays: Dict[int, Dict[Tuple[int, int], int]] = {}
        for node in tree.preorder():
            if node in self.specials.specials:
                anchor = self.specials.nearest[node]
                self.arrays[node] = {} if anchor is None else self._construct(node, anchor, self.arrays[anchor])
        self.counter.resident_arrays += len(self.arrays)

        self.stamps: Dict[int, List[int]] = {}
        self.buckets: Dict[int, List[List[Tuple[int, int]]]] = {}
        self.entries = 0

    def _link_chains(self, by_node: Dict[int, List[int]]) -> None:
        current: Dict[Tuple[int, int], int] = {}
        undo: Dict[int, List[Tuple[Tuple[int, int], Optional[int]]]] = {}
        stack = [(self.tree.root, False)]
        while stack:
            node, leaving = stack.pop()
            if leaving:
                for key, prev in reversed(undo.pop(node, [])):
                    if prev is None:
                        del current[key]
                    else:
                        current[key] = prev
                continue
            changes = []
            for eid in by_node.get(node, ()):
                e = self.edges[eid]
                for j in range(e.alpha, e.beta + 1):
                    key = (e.v, j)
                    prev = current.get(key)
                    self.next_slot[(eid, j)] = prev
                    changes.append((key, prev))
                    current[key] = eid
            if changes:
                undo[node] = changes
                self.node_heads[node] = [(key, current[key]) for key in dict.fromkeys(k for k, _ in changes)]
            stack.append((node, True))
            for child in reversed(self.tree.children[node]):
                stack.append((child, False))

    def _construct(self, u: int, anchor: int, anchor_heads: Dict[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
        heads: Dict[Tuple[int, int], int] = {}
        w = u
        while w != anchor:
            for key, head in self.node_heads.get(w, ()):
                heads.setdefault(key, head)
            self.counter.charge(len(self.node_heads.get(w, ())) + 1)
            w = self.tree.parent[w]
        for key, head in anchor_heads.items():
            heads.setdefault(key, head)
        self.counter.charge(len(anchor_heads))
        return heads

    def heads_for(self, u: int) -> Dict[Tuple[int, int], int]:
        if u in self.arrays:
            return self.arrays[u]
        self.counter.transient_arrays += 1
        anchor = self.specials.nearest[u]
        return self._construct(u, anchor, self.arrays[anchor])

    def activate(self, t, deepest, vertices, fresh):
        if not self.node_heads:
            return
        for (v, j), head in self.heads_for(deepest).items():
            due = t + j + self.shift[v]
            stamps = self.stamps.get(v)
            if stamps is None:
                stamps = self.stamps[v] = [-1] * self.size
                self.buckets[v] = [[] for _ in range(self.size)]
            slot = due % self.size
            if stamps[slot] != due:
                stamps[slot] = due
                self.entries -= len(self.buckets[v][slot])
                self.buckets[v][slot] = []
            self.buckets[v][slot].append((t, head))
            self.entries += 1
            self.counter.charge()

    def report(self, v: int, i: int, out: List[Hit]) -> None:
        stamps = self.stamps.get(v)
        if stamps is None:
            return
        slot = i % self.size
        self.counter.charge()
        if stamps[slot] != i:
            return
        s = self.shift[v]
        dedup = self.mode == ReportMode.DEDUP
        walked: Set[Tuple[int, int]] = set()
        reported: Set[int] = set()
        for t, head in self.buckets[v][slot]:
            j = i - s - t
            e = head
            while e is not None and (e, j) not in walked:
                walked.add((e, j))
                self.counter.charge()
                if not dedup:
                    out.append((e, t))
                elif e not in reported:
                    reported.add(e)
                    out.append((e, None))
                e = self.next_slot[(e, j)]

    def reset(self) -> None:
        self.stamps.clear()
        self.buckets.clear()
        self.entries = 0

    def live_space(self) -> int:
        return self.entries


class ThresholdEngine(DmogEngine):
    kind = EngineKind.THRESHOLD

    def _orient(self) -> Orientation:
        lsc = max(1, self.stats.lsc)
        self.split: HeavyLightSplit = classify_heavy(self.graph, lsc)
        orientation = threshold_orient(self.graph, self.split)
        self.window_cap_bound = False
        bounded_heavy = [e for e in orientation.heavy_heavy if self.graph.edges[e].beta is not None]
        span = self.stats.beta_star - self.stats.alpha_star
        if self.config.regime == Regime.NON_UNIFORM and bounded_heavy and span > self.config.max_window_span:
            logger.warning(
                "Gap span %d exceeds the window cap %d; %d heavy-heavy edges fall back to interval stabbing",
                span, self.config.max_window_span, len(bounded_heavy),
            )
            owner = list(orientation.owner)
            for eid in bounded_heavy:
                owner[eid] = OWNER_LEFT
            orientation = orientation_from_owner(self.graph, owner, orientation.bound)
            self.window_cap_bound = True
        return orientation

    def _attach_heavy(self) -> None:
        self.heavy: List[Reporter] = []
        heavy = self.orientation.heavy_heavy
        if not heavy:
            return
        edges = self.graph.edges
        lsc = max(1, self.stats.lsc)
        base = ceil_sqrt(lsc * self.graph.d)
        weights = [1] * self.tree.size
        for u in range(self.graph.left_count):
            weights[u] = max(1, self.graph.left_degree(u))

        if self.config.regime == Regime.UNIFORM:
            reporter = SplicedTree(
                self.core.bounded_window, edges, heavy, self.tree, weights, base,
                self.shift, self.mode, self.config.alpha, self.config.beta,
            )
            self._add(reporter)
            return

        unbounded = [e for e in heavy if edges[e].beta is None]
        bounded = [e for e in heavy if edges[e].beta is not None]
        if unbounded:
            self._add(SplicedTree(
                self.core.unbounded_window, edges, unbounded, self.tree, weights, base, self.shift, self.mode,
            ))
        if bounded:
            self._add(ActiveWindowTree(
                self.core.bounded_window, edges, bounded, self.tree, base, self.shift, self.mode,
                self.core.alpha_star, self.core.beta_star, self.stats.M,
            ))

    def _add(self, reporter: Reporter) -> None:
        self.heavy.append(reporter)
        self.core.add_reporter(reporter)
        logger.info(
            "%s over %d heavy-heavy edges: %d special vertices",
            type(reporter).__name__, len(self.orientation.heavy_heavy), len(reporter.specials.specials),
        )

    def summary(self) -> EngineSummary:
        base = super().summary()
        return base.model_copy(update={
            "theta": self.split.theta,
            "heavy_left": self.split.heavy_left_count,
            "heavy_right": self.split.heavy_right_count,
            "heavy_heavy_edges": sum(1 for o in self.orientation.owner if o == UNORIENTED),
            "specials": sum(len(r.specials.specials) for r in self.heavy),
            "window_cap_bound": self.window_cap_bound,
        })


def threshold_step(engine: ThresholdEngine, character: int):
    return engine.step(character)
