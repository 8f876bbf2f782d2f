"""
Aho-Corasick automaton over the distinct subpatterns of a dictionary.

Each text byte moves the automaton one step and yields an ArrivalEvent: every subpattern
that is a suffix of the text read so far, split by role (second subpatterns are R-vertices,
first subpatterns are L-vertices, gapless patterns are reported as they are). The outputs
of a state are found through dictionary suffix links, so an event costs O(lsc).

The suffix-chain tree T over first subpatterns is derived from the same links: the parent
of an L-subpattern is its longest proper suffix that is also an L-subpattern.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import settings
from dictionary import gapped, vertex_labels
from entity.pattern import GappedPattern

logger = logging.getLogger(__name__)

ROOT = 0


@dataclass(frozen=True)
class ArrivalEvent:
    """Subpattern vertices ending at `position`, each list in strictly decreasing length."""
    position: int
    r_arrivals: Tuple[Tuple[int, int], ...] = ()
    l_arrivals: Tuple[Tuple[int, int], ...] = ()
    gapless: Tuple[int, ...] = ()

    @property
    def deepest_left(self) -> Optional[int]:
        return self.l_arrivals[0][0] if self.l_arrivals else None

    @property
    def empty(self) -> bool:
        return not (self.r_arrivals or self.l_arrivals or self.gapless)


@dataclass(frozen=True)
class SubpatternRole:
    text: bytes
    left: Optional[int]
    right: Optional[int]
    gapless: Tuple[int, ...]


@dataclass
class SuffixTreeT:
    """
    Tree over L-vertices ordered by the proper-suffix relation. Node ids are L-vertex
    ids; `root` (== number of L-vertices) stands for the empty string.
    """
    parent: List[int]
    depth: List[int]
    children: List[List[int]] = field(default_factory=list)

    @property
    def root(self) -> int:
        return len(self.parent) - 1

    @property
    def size(self) -> int:
        return len(self.parent)

    def path(self, u: int) -> List[int]:
        """u and its ancestors, deepest first, without the root."""
        out = []
        while u != self.root:
            out.append(u)
            u = self.parent[u]
        return out

    def postorder(self) -> List[int]:
        order, stack = [], [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            stack.append((node, True))
            for child in reversed(self.children[node]):
                stack.append((child, False))
        return order

    def preorder(self) -> List[int]:
        order, stack = [], [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(reversed(self.children[node]))
        return order


class Automaton:
    """
    Goto/fail/output automaton. Immutable after construction; the stepping cursor
    (state, position) belongs to the caller.
    """

    def __init__(self, patterns: Sequence[GappedPattern], dense_max_states: Optional[int] = None):
        if dense_max_states is None:
            dense_max_states = settings.DENSE_GOTO_MAX_STATES
        left, right = vertex_labels(patterns)
        self.left_count = len(left)
        self.right_count = len(right)

        roles: Dict[bytes, Dict] = {}
        for p in patterns:
            roles.setdefault(p.p1, {"gapless": []})
            if p.gapless:
                roles[p.p1]["gapless"].append(p.id)
        for p in gapped(patterns):
            roles.setdefault(p.p2, {"gapless": []})
        self.roles: List[SubpatternRole] = [
            SubpatternRole(text, left.get(text), right.get(text), tuple(info["gapless"]))
            for text, info in roles.items()
        ]

        self._children: List[Dict[int, int]] = [{}]
        self._terminal: List[int] = [-1]
        self._depth: List[int] = [0]
        self.terminal_state: List[int] = []
        for sid, role in enumerate(self.roles):
            self.terminal_state.append(self._insert(role.text, sid))

        self._fail: List[int] = [ROOT] * len(self._children)
        self._out: List[int] = [-1] * len(self._children)
        self._bfs_order: List[int] = []
        self._link()

        self.dense = len(self._children) <= dense_max_states
        self._delta: Optional[List[List[int]]] = self._dense_rows() if self.dense else None
        logger.info(
            "Built automaton: %d subpatterns, %d states, %s goto",
            len(self.roles), self.states, "dense" if self.dense else "sparse",
        )

    def _insert(self, text: bytes, sid: int) -> int:
        state = ROOT
        for b in text:
            nxt = self._children[state].get(b)
            if nxt is None:
                nxt = len(self._children)
                self._children[state][b] = nxt
                self._children.append({})
                self._terminal.append(-1)
                self._depth.append(self._depth[state] + 1)
            state = nxt
        self._terminal[state] = sid
        return state

    def _link(self) -> None:
        queue = deque(self._children[ROOT].values())
        while queue:
            state = queue.popleft()
            self._bfs_order.append(state)
            for b, child in self._children[state].items():
                fallback = self._fail[state]
                while fallback != ROOT and b not in self._children[fallback]:
                    fallback = self._fail[fallback]
                target = self._children[fallback].get(b, ROOT)
                self._fail[child] = target if target != child else ROOT
                queue.append(child)
            fail = self._fail[state]
            self._out[state] = fail if self._terminal[fail] >= 0 else self._out[fail]
        self._out[ROOT] = -1

    def _dense_rows(self) -> List[List[int]]:
        delta = [[ROOT] * 256 for _ in self._children]
        for b, child in self._children[ROOT].items():
            delta[ROOT][b] = child
        for state in self._bfs_order:
            row, fail_row = delta[state], delta[self._fail[state]]
            children = self._children[state]
            for b in range(256):
                row[b] = children.get(b, fail_row[b])
        return delta

    @property
    def states(self) -> int:
        return len(self._children)

    def next_state(self, state: int, symbol: int) -> int:
        if self._delta is not None:
            return self._delta[state][symbol]
        while state != ROOT and symbol not in self._children[state]:
            state = self._fail[state]
        return self._children[state].get(symbol, ROOT)

    def output_chain(self, state: int) -> List[int]:
        """Subpattern ids ending at `state`, longest first."""
        out = []
        if self._terminal[state] >= 0:
            out.append(self._terminal[state])
        link = self._out[state]
        while link >= 0:
            out.append(self._terminal[link])
            link = self._out[link]
        return out

    def step(self, state: int, symbol: int, position: int) -> Tuple[int, ArrivalEvent]:
        state = self.next_state(state, symbol)
        if self._terminal[state] < 0 and self._out[state] < 0:
            return state, ArrivalEvent(position)
        r_arrivals, l_arrivals, whole = [], [], []
        for sid in self.output_chain(state):
            role = self.roles[sid]
            if role.right is not None:
                r_arrivals.append((role.right, len(role.text)))
            if role.left is not None:
                l_arrivals.append((role.left, len(role.text)))
            whole.extend(role.gapless)
        return state, ArrivalEvent(position, tuple(r_arrivals), tuple(l_arrivals), tuple(whole))

    def longest_output_chain(self) -> int:
        return max((len(self.output_chain(s)) for s in range(self.states)), default=0)

    def suffix_tree(self) -> SuffixTreeT:
        root = self.left_count
        parent = [root] * (self.left_count + 1)
        for sid, role in enumerate(self.roles):
            if role.left is None:
                continue
            link = self._out[self.terminal_state[sid]]
            while link >= 0 and self.roles[self._terminal[link]].left is None:
                link = self._out[link]
            if link >= 0:
                parent[role.left] = self.roles[self._terminal[link]].left
        parent[root] = root

        children: List[List[int]] = [[] for _ in parent]
        for u in range(self.left_count):
            children[parent[u]].append(u)
        depth = [0] * len(parent)
        order, stack = [], [root]
        while stack:
            node = stack.pop()
            order.append(node)
            for c in children[node]:
                depth[c] = depth[node] + 1
                stack.append(c)
        return SuffixTreeT(parent=parent, depth=depth, children=children)


def build_automaton(patterns: Sequence[GappedPattern], dense_max_states: Optional[int] = None) -> Automaton:
    return Automaton(patterns, dense_max_states)


def build_suffix_tree(automaton: Automaton) -> SuffixTreeT:
    return automaton.suffix_tree()
