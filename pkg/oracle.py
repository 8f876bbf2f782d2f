"""Brute-force reference implementations used as ground truth by the test-suite and `bench`."""
from itertools import combinations
from typing import List, Optional, Sequence, Set, Tuple, Union

from entity.occurrence import Occurrence, ReportMode
from entity.pattern import GappedPattern
from graph_core import DictGraph


def _ends(needle: bytes, text: bytes) -> List[int]:
    """1-based end positions of every (possibly overlapping) occurrence."""
    out = []
    k = text.find(needle)
    while k >= 0:
        out.append(k + len(needle))
        k = text.find(needle, k + 1)
    return out


def oracle_dmog(
    patterns: Sequence[GappedPattern],
    text: Union[bytes, str],
    mode: ReportMode = ReportMode.DEDUP,
) -> List[Occurrence]:
    if isinstance(text, str):
        text = text.encode("utf-8")
    found = set()
    for p in patterns:
        first = _ends(p.p1, text)
        if p.gapless:
            found.update((i, p.id, None) for i in first)
            continue
        m = len(p.p2)
        for i in _ends(p.p2, text):
            for j in first:
                if p.gap.admits(i - m - j):
                    found.add((i, p.id, j if mode == ReportMode.WITNESS else None))
    return [Occurrence(pattern_id=pid, end_pos=i, witness_j=j) for i, pid, j in sorted(found, key=lambda x: (x[0], x[1], x[2] or 0))]


def oracle_isg(
    graph: DictGraph,
    sequence: Sequence[int],
    bounds: Optional[Tuple[int, int]] = None,
) -> Set[Tuple[int, int, int]]:
    """
    Every (edge, j, i) with j < i, sequence[j] the edge's tail and sequence[i] its head
    (1-based positions). `bounds` applies one window to all edges; otherwise each edge's
    own gap is used and a missing gap means unbounded.
    """
    out = set()
    by_pair = {}
    for e in graph.edges:
        by_pair.setdefault((e.u, e.v), []).append(e)
    for i in range(1, len(sequence) + 1):
        for j in range(1, i):
            for e in by_pair.get((sequence[j - 1], sequence[i - 1]), ()):
                lo, hi = bounds if bounds is not None else (e.alpha, e.beta)
                if i - j >= lo and (hi is None or i - j <= hi):
                    out.add((e.id, j, i))
    return out


def oracle_degeneracy(n: int, edges: Sequence[Tuple[int, int]]) -> int:
    """Largest minimum degree over all non-empty induced subgraphs (exhaustive, n <= 12)."""
    if n > 16:
        raise ValueError("exhaustive degeneracy is limited to 16 vertices")
    best = 0
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            inside = set(subset)
            degree = dict.fromkeys(subset, 0)
            for a, b in edges:
                if a in inside and b in inside:
                    degree[a] += 1
                    degree[b] += 1
            best = max(best, min(degree.values()))
    return best
