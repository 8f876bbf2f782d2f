"""
Induced Subgraph (ISG) machinery and engines.

Vertices arrive one per step. An L-arrival at time t is kept pending until its activation
step and its timestamp is retained until its expiry step; R-arrivals report the edges (u, v)
whose L-endpoint u has a live timestamp inside v's window:

    j in [i - shift(v) - beta_e, i - shift(v) - alpha_e]

Each step runs: expire -> activate -> report R-arrival -> push L-arrival. An arrival is
activated at the following step at the earliest, so an R-vertex never pairs with the
L-arrival of its own step.

The same machinery drives the DMOG engines (shift(v) = |P2| and one activation per
position for the deepest L-subpattern, its suffix-tree ancestors arriving with it) and the
ISG engines below (shift 0, every vertex its own path).
"""
import logging
from bisect import bisect_left, bisect_right
from collections import OrderedDict, deque
from typing import Callable, Deque, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from counters import WorkCounter
from entity.occurrence import ReportMode
from entity.pattern import Regime
from errors import EngineConfigError, UnknownVertexError
from graph_core import OWNER_LEFT, OWNER_RIGHT, DictGraph, GraphEdge, Orientation, degeneracy_orient
from stabbing import IntervalSet

logger = logging.getLogger(__name__)

PathFn = Callable[[int], Sequence[int]]


def _single(u: int) -> Tuple[int]:
    return (u,)


class TimestampList:
    """Strictly increasing arrival times of one L-vertex; appends at the back, expiry at the front."""
    __slots__ = ["_times", "_start"]

    def __init__(self):
        self._times: List[int] = []
        self._start = 0

    def __len__(self) -> int:
        return len(self._times) - self._start

    def __bool__(self) -> bool:
        return len(self._times) > self._start

    def append(self, t: int) -> None:
        self._times.append(t)

    def pop_front(self) -> int:
        t = self._times[self._start]
        self._start += 1
        if self._start > 32 and 2 * self._start > len(self._times):
            del self._times[:self._start]
            self._start = 0
        return t

    @property
    def first(self) -> int:
        return self._times[self._start]

    @property
    def last(self) -> int:
        return self._times[-1]

    def between(self, lo: Optional[int], hi: int) -> List[int]:
        start = self._start if lo is None else bisect_left(self._times, lo, self._start)
        return self._times[start:bisect_right(self._times, hi, self._start)]

    def any_between(self, lo: Optional[int], hi: int) -> bool:
        if lo is None:
            return bool(self) and self.first <= hi
        k = bisect_left(self._times, lo, self._start)
        return k < len(self._times) and self._times[k] <= hi

    def __iter__(self):
        return iter(self._times[self._start:])


class ArrivalWindow:
    """
    Pending, active and expiring L-arrivals of one mechanism family.

    An arrival (t, deepest) is activated at step max(t + 1, t + delay) and expired at
    step t + horizon (never when horizon is None). Listeners receive the whole path of
    the deepest vertex and the vertices whose timestamp list became non-empty / empty.
    """

    def __init__(self, delay: int, horizon: Optional[int], path: PathFn, counter: WorkCounter):
        if horizon is not None and horizon <= delay:
            raise EngineConfigError(f"expiry horizon {horizon} must exceed the activation delay {delay}")
        self.delay = delay
        self.horizon = horizon
        self.path = path
        self.counter = counter
        self.tau: Dict[int, TimestampList] = {}
        self.pending: Deque[Tuple[int, int]] = deque()
        self.active: Deque[Tuple[int, int]] = deque()
        self.listeners: List["Reporter"] = []
        self.live_timestamps = 0

    def advance(self, i: int) -> None:
        if self.horizon is not None:
            while self.active and self.active[0][0] + self.horizon <= i:
                self._expire(*self.active.popleft())
        while self.pending and self.pending[0][0] <= i - self.delay:
            self._activate(*self.pending.popleft())

    def push(self, t: int, deepest: Optional[int]) -> None:
        if deepest is not None:
            self.pending.append((t, deepest))

    def _activate(self, t: int, deepest: int) -> None:
        vertices = self.path(deepest)
        fresh = []
        for u in vertices:
            times = self.tau.get(u)
            if times is None:
                times = self.tau[u] = TimestampList()
                fresh.append(u)
            times.append(t)
        self.live_timestamps += len(vertices)
        self.counter.charge(len(vertices))
        if self.horizon is not None:
            self.active.append((t, deepest))
        for listener in self.listeners:
            listener.activate(t, deepest, vertices, fresh)

    def _expire(self, t: int, deepest: int) -> None:
        vertices = self.path(deepest)
        emptied = []
        for u in vertices:
            times = self.tau[u]
            times.pop_front()
            if not times:
                del self.tau[u]
                emptied.append(u)
        self.live_timestamps -= len(vertices)
        self.counter.charge(len(vertices))
        for listener in self.listeners:
            listener.expire(t, deepest, vertices, emptied)

    def times(self, u: int) -> Optional[TimestampList]:
        return self.tau.get(u)

    def reset(self) -> None:
        self.tau.clear()
        self.pending.clear()
        self.active.clear()
        self.live_timestamps = 0
        for listener in self.listeners:
            listener.reset()

    def live_space(self) -> int:
        return self.live_timestamps + len(self.pending) + len(self.active)


class ReportingList:
    """
    Reporting list of one R-vertex: responsible L-vertices without repetition, kept in
    refresh order (most recent at the tail).
    """
    __slots__ = ["_entries"]

    def __init__(self):
        self._entries: "OrderedDict[int, List[int]]" = OrderedDict()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, u: int) -> bool:
        return u in self._entries

    def link(self, u: int, edge_ids: List[int], refresh: bool) -> bool:
        """Adds u (or moves it to the head when `refresh`); True when u was not listed."""
        if u in self._entries:
            if refresh:
                self._entries.move_to_end(u)
            return False
        self._entries[u] = edge_ids
        return True

    def unlink(self, u: int) -> bool:
        return self._entries.pop(u, None) is not None

    def recent_first(self):
        return reversed(self._entries.items())

    def oldest(self) -> Optional[int]:
        return next(iter(self._entries), None)


Hit = Tuple[int, Optional[int]]


class Reporter:
    """One reporting mechanism listening on an ArrivalWindow."""

    def __init__(self, window: ArrivalWindow, edges: Sequence[GraphEdge], shift: Sequence[int], mode: ReportMode):
        self.window = window
        self.edges = edges
        self.shift = shift
        self.mode = mode
        self.counter = window.counter
        window.listeners.append(self)

    def activate(self, t: int, deepest: int, vertices: Sequence[int], fresh: Sequence[int]) -> None:
        pass

    def expire(self, t: int, deepest: int, vertices: Sequence[int], emptied: Sequence[int]) -> None:
        pass

    def report(self, v: int, i: int, out: List[Hit]) -> None:
        raise NotImplementedError

    def reset(self) -> None:
        pass

    def live_space(self) -> int:
        return 0

    def _emit_times(self, eid: int, times: TimestampList, lo: Optional[int], hi: int, out: List[Hit]) -> bool:
        """Reports edge `eid` for the live times of its L-endpoint in [lo, hi]."""
        self.counter.charge()
        if self.mode == ReportMode.DEDUP:
            if times.any_between(lo, hi):
                out.append((eid, None))
                self.counter.charge()
                return True
            return False
        found = times.between(lo, hi)
        for j in found:
            out.append((eid, j))
        self.counter.charge(len(found))
        return bool(found)


class OrientedReporter(Reporter):
    """Base for the list-based mechanisms: splits its edges by owner."""

    def __init__(self, window, edges, edge_ids: Iterable[int], orientation: Orientation, shift, mode):
        super().__init__(window, edges, shift, mode)
        grouped: Dict[int, Dict[int, List[int]]] = {}
        self.scans: Dict[int, List[int]] = {}
        for eid in edge_ids:
            e = edges[eid]
            owner = orientation.owner[eid]
            if owner == OWNER_LEFT:
                grouped.setdefault(e.u, {}).setdefault(e.v, []).append(eid)
            elif owner == OWNER_RIGHT:
                self.scans.setdefault(e.v, []).append(eid)
        self.targets: Dict[int, List[Tuple[int, List[int]]]] = {
            u: list(by_v.items()) for u, by_v in grouped.items()
        }
        self.lists: Dict[int, ReportingList] = {}
        self.entries = 0

    def bounds(self, eid: int) -> Tuple[int, Optional[int]]:
        e = self.edges[eid]
        return e.alpha, e.beta

    def _scan_assigned(self, v: int, i: int, out: List[Hit]) -> None:
        s = self.shift[v]
        for eid in self.scans.get(v, ()):
            times = self.window.times(self.edges[eid].u)
            self.counter.charge()
            if times is None:
                continue
            alpha, beta = self.bounds(eid)
            lo = None if beta is None else i - s - beta
            self._emit_times(eid, times, lo, i - s - alpha, out)

    def _unlink_everywhere(self, u: int) -> None:
        for v, _ in self.targets.get(u, ()):
            reporting = self.lists.get(v)
            if reporting is not None and reporting.unlink(u):
                self.entries -= 1
            self.counter.charge()

    def reset(self) -> None:
        self.lists.clear()
        self.entries = 0

    def live_space(self) -> int:
        return self.entries


class UnboundedReporter(OrientedReporter):
    """
    Unbounded gaps: u registers once, at its first activation. Timestamps never expire,
    so every listed u whose first arrival fits the window is an output.
    """

    def activate(self, t, deepest, vertices, fresh):
        for u in fresh:
            for v, eids in self.targets.get(u, ()):
                if self.lists.setdefault(v, ReportingList()).link(u, eids, refresh=False):
                    self.entries += 1
                self.counter.charge()

    def report(self, v, i, out):
        s = self.shift[v]
        reporting = self.lists.get(v)
        if reporting is not None:
            for u, eids in reporting.recent_first():
                times = self.window.tau[u]
                for eid in eids:
                    hi = i - s - self.edges[eid].alpha
                    self.counter.charge()
                    if times.first <= hi:
                        self._emit_times(eid, times, None, hi, out)
        self._scan_assigned(v, i, out)


class UniformReporter(OrientedReporter):
    """
    One (alpha, beta) for every edge. Entries move to the head on every activation, so a
    list is ordered by latest arrival: once an entry's latest time falls below the window,
    it and every older entry are stale for this R-vertex and are dropped.
    """

    def __init__(self, window, edges, edge_ids, orientation, shift, mode, alpha: int, beta: int):
        super().__init__(window, edges, edge_ids, orientation, shift, mode)
        self.alpha = alpha
        self.beta = beta

    def bounds(self, eid):
        return self.alpha, self.beta

    def activate(self, t, deepest, vertices, fresh):
        for u in vertices:
            for v, eids in self.targets.get(u, ()):
                if self.lists.setdefault(v, ReportingList()).link(u, eids, refresh=True):
                    self.entries += 1
                self.counter.charge()

    def expire(self, t, deepest, vertices, emptied):
        for u in emptied:
            self._unlink_everywhere(u)

    def report(self, v, i, out):
        s = self.shift[v]
        lo, hi = i - s - self.beta, i - s - self.alpha
        reporting = self.lists.get(v)
        if reporting is not None:
            stale = False
            for u, eids in reporting.recent_first():
                times = self.window.tau[u]
                self.counter.charge()
                if times.last < lo:
                    stale = True
                    break
                if not times.any_between(lo, hi):
                    continue
                for eid in eids:
                    self._emit_times(eid, times, lo, hi, out)
            if stale:
                self._drop_stale(reporting, lo)
        self._scan_assigned(v, i, out)

    def _drop_stale(self, reporting: ReportingList, lo: int) -> None:
        while True:
            u = reporting.oldest()
            if u is None or self.window.tau[u].last >= lo:
                return
            reporting.unlink(u)
            self.entries -= 1
            self.counter.charge()


class NonUniformReporter(OrientedReporter):
    """
    Per-edge bounds. An activated arrival of u at time t inserts, for each edge e = (u, v)
    it is responsible for, the interval [t + alpha_e + shift(v), t + beta_e + shift(v)] into
    S_v; an R-arrival at i stabs S_v at i. Intervals are deleted when t expires.
    """

    def __init__(self, window, edges, edge_ids, orientation, shift, mode, seed: int = 0):
        super().__init__(window, edges, edge_ids, orientation, shift, mode)
        self.seed = seed
        self.sets: Dict[int, IntervalSet] = {}
        self.keys: Dict[int, List[Tuple[int, int]]] = {}
        self.intervals = 0

    def _set(self, v: int) -> IntervalSet:
        s = self.sets.get(v)
        if s is None:
            s = self.sets[v] = IntervalSet(seed=self.seed + v)
        return s

    def activate(self, t, deepest, vertices, fresh):
        keys = []
        for u in vertices:
            for v, eids in self.targets.get(u, ()):
                s = self.shift[v]
                target = self._set(v)
                for eid in eids:
                    e = self.edges[eid]
                    keys.append((v, target.insert(t + e.alpha + s, t + e.beta + s, (eid, t))))
                    self.counter.charge()
        if keys:
            self.keys[t] = keys
            self.intervals += len(keys)

    def expire(self, t, deepest, vertices, emptied):
        for v, key in self.keys.pop(t, ()):
            self.sets[v].delete(key)
            self.intervals -= 1
            self.counter.charge()

    def report(self, v, i, out):
        target = self.sets.get(v)
        if target is not None:
            before = target.comparisons
            stabbed = target.stab(i)
            self.counter.charge(target.comparisons - before)
            if self.mode == ReportMode.DEDUP:
                for eid in sorted({eid for eid, _ in stabbed}):
                    out.append((eid, None))
            else:
                out.extend(stabbed)
            self.counter.charge(len(stabbed))
        self._scan_assigned(v, i, out)

    def reset(self) -> None:
        super().reset()
        self.sets.clear()
        self.keys.clear()
        self.intervals = 0

    def live_space(self) -> int:
        return self.intervals


class ReportingCore:
    """
    The windows and reporters serving one graph under one gap regime.

    `shift[v]` offsets every R-vertex window; `path(u)` lists the L-vertices that arrive
    together with u (u first). Edges with owner UNORIENTED are left for extra reporters
    registered by the caller on `bounded_window` / `unbounded_window`.
    """

    def __init__(
        self,
        graph: DictGraph,
        orientation: Orientation,
        regime: Regime,
        mode: ReportMode,
        shift: Sequence[int],
        counter: WorkCounter,
        path: PathFn = _single,
        alpha: Optional[int] = None,
        beta: Optional[int] = None,
        max_shift: int = 0,
    ):
        self.graph = graph
        self.mode = mode
        self.shift = shift
        self.counter = counter
        self.reporters: List[Reporter] = []
        self.windows: List[ArrivalWindow] = []
        self.bounded_window: Optional[ArrivalWindow] = None
        self.unbounded_window: Optional[ArrivalWindow] = None

        edges = graph.edges
        if regime == Regime.UNIFORM:
            bounded_ids, unbounded_ids = [e.id for e in edges], []
        else:
            bounded_ids = [e.id for e in edges if e.beta is not None]
            unbounded_ids = [e.id for e in edges if e.beta is None]

        if regime == Regime.UNIFORM:
            if alpha is None or beta is None:
                raise EngineConfigError("a uniform regime needs alpha and beta")
            self.alpha_star, self.beta_star = alpha, beta
            self.bounded_window = self._window(alpha, beta + max_shift + 1, path)
            self.reporters.append(
                UniformReporter(self.bounded_window, edges, bounded_ids, orientation, shift, mode, alpha, beta)
            )
        elif regime == Regime.NON_UNIFORM:
            self.alpha_star = min((edges[k].alpha for k in bounded_ids), default=0)
            self.beta_star = max((edges[k].beta for k in bounded_ids), default=0)
            if bounded_ids:
                self.bounded_window = self._window(self.alpha_star, self.beta_star + max_shift + 1, path)
                self.reporters.append(
                    NonUniformReporter(self.bounded_window, edges, bounded_ids, orientation, shift, mode)
                )
        else:
            if bounded_ids:
                raise EngineConfigError("an unbounded regime cannot hold bounded edges")
            self.alpha_star = self.beta_star = 0

        if regime != Regime.UNIFORM and (unbounded_ids or regime == Regime.UNBOUNDED):
            delay = min((edges[k].alpha for k in unbounded_ids), default=0)
            self.unbounded_window = self._window(delay, None, path)
            self.reporters.append(
                UnboundedReporter(self.unbounded_window, edges, unbounded_ids, orientation, shift, mode)
            )

    def _window(self, delay: int, horizon: Optional[int], path: PathFn) -> ArrivalWindow:
        window = ArrivalWindow(delay, horizon, path, self.counter)
        self.windows.append(window)
        return window

    def add_reporter(self, reporter: Reporter) -> None:
        self.reporters.append(reporter)

    def advance(self, i: int) -> None:
        for window in self.windows:
            window.advance(i)

    def report(self, v: int, i: int) -> List[Hit]:
        out: List[Hit] = []
        for reporter in self.reporters:
            reporter.report(v, i, out)
        return out

    def push(self, t: int, deepest: Optional[int]) -> None:
        for window in self.windows:
            window.push(t, deepest)

    def reset(self) -> None:
        for window in self.windows:
            window.reset()

    def live_space(self) -> int:
        return sum(w.live_space() for w in self.windows) + sum(r.live_space() for r in self.reporters)


class IsgHit(NamedTuple):
    edge: int
    j: Optional[int]
    i: int


class IsgEngine:
    """
    Online ISG over a directed graph in bipartite form (`graph_core.graph_from_arcs`).
    `step(x)` feeds vertex x: its R-copy reports, then its L-copy arrives.
    """
    regime: Regime = Regime.UNBOUNDED

    def __init__(self, graph: DictGraph, mode: ReportMode, alpha: Optional[int] = None, beta: Optional[int] = None):
        self.graph = graph
        self.mode = mode
        self.counter = WorkCounter()
        self.orientation, self.degeneracy = degeneracy_orient(graph)
        self.core = ReportingCore(
            graph, self.orientation, self.regime, mode,
            shift=[0] * graph.right_count, counter=self.counter, alpha=alpha, beta=beta,
        )
        self.position = 0

    def step(self, vertex: int) -> List[IsgHit]:
        if not 0 <= vertex < max(self.graph.left_count, self.graph.right_count):
            raise UnknownVertexError(f"vertex {vertex} is not in the graph")
        self.position += 1
        i = self.position
        self.core.advance(i)
        hits = []
        if vertex < self.graph.right_count:
            hits = [IsgHit(eid, j, i) for eid, j in self.core.report(vertex, i)]
        if vertex < self.graph.left_count:
            self.core.push(i, vertex)
        self.counter.close_step(len(hits))
        self.counter.observe_space(self.core.live_space())
        return hits

    def run(self, sequence: Iterable[int]) -> List[IsgHit]:
        out = []
        for x in sequence:
            out.extend(self.step(x))
        return out

    def reset(self) -> None:
        """Forgets the stream; costs time proportional to what the stream touched."""
        self.core.reset()
        self.position = 0


class UnboundedISG(IsgEngine):
    regime = Regime.UNBOUNDED

    def __init__(self, graph: DictGraph, mode: ReportMode = ReportMode.DEDUP):
        super().__init__(graph, mode)


class UniformISG(IsgEngine):
    regime = Regime.UNIFORM

    def __init__(self, graph: DictGraph, alpha: int, beta: int, mode: ReportMode = ReportMode.WITNESS):
        if alpha > beta:
            raise EngineConfigError(f"alpha={alpha} exceeds beta={beta}")
        self.alpha, self.beta = alpha, beta
        super().__init__(graph, mode, alpha, beta)


class NonUniformISG(IsgEngine):
    """Per-arc bounds from each edge's gap; arcs without bounds are unbounded."""
    regime = Regime.NON_UNIFORM

    def __init__(self, graph: DictGraph, mode: ReportMode = ReportMode.WITNESS):
        super().__init__(graph, mode)


def isg_unbounded_step(engine: UnboundedISG, vertex: int) -> List[IsgHit]:
    return engine.step(vertex)


def isg_uniform_step(engine: UniformISG, vertex: int) -> List[IsgHit]:
    return engine.step(vertex)


def isg_nonuniform_step(engine: NonUniformISG, vertex: int) -> List[IsgHit]:
    return engine.step(vertex)
