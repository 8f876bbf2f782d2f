"""Dynamic interval set with stabbing queries: a treap ordered by `lo`, augmented with subtree max `hi`."""
import random
from typing import Any, Dict, List, Optional, Tuple

from errors import IntervalKeyError, InvalidIntervalError


class _Node:
    __slots__ = ["lo", "hi", "key", "payload", "priority", "left", "right", "max_hi"]

    def __init__(self, lo: int, hi: int, key: int, payload: Any, priority: float):
        self.lo = lo
        self.hi = hi
        self.key = key
        self.payload = payload
        self.priority = priority
        self.left: Optional["_Node"] = None
        self.right: Optional["_Node"] = None
        self.max_hi = hi

    def order(self) -> Tuple[int, int]:
        return self.lo, self.key


def _update(node: _Node) -> _Node:
    m = node.hi
    if node.left is not None and node.left.max_hi > m:
        m = node.left.max_hi
    if node.right is not None and node.right.max_hi > m:
        m = node.right.max_hi
    node.max_hi = m
    return node


def _split(node: Optional[_Node], at: Tuple[int, int]) -> Tuple[Optional[_Node], Optional[_Node]]:
    """(nodes ordered before `at`, nodes at or after `at`)"""
    if node is None:
        return None, None
    if node.order() < at:
        node.right, right = _split(node.right, at)
        return _update(node), right
    left, node.left = _split(node.left, at)
    return left, _update(node)


def _merge(a: Optional[_Node], b: Optional[_Node]) -> Optional[_Node]:
    if a is None:
        return b
    if b is None:
        return a
    if a.priority > b.priority:
        a.right = _merge(a.right, b)
        return _update(a)
    b.left = _merge(a, b.left)
    return _update(b)


def _remove(node: Optional[_Node], at: Tuple[int, int]) -> Optional[_Node]:
    if node is None:
        return None
    if node.order() == at:
        return _merge(node.left, node.right)
    if at < node.order():
        node.left = _remove(node.left, at)
    else:
        node.right = _remove(node.right, at)
    return _update(node)


class IntervalSet:
    """
    Multiset of closed integer intervals [lo, hi] with payloads. Keys returned by insert
    identify one stored element; identical intervals are distinct elements.

    `comparisons` counts the nodes examined by stab queries.
    """

    def __init__(self, seed: int = 0):
        self._root: Optional[_Node] = None
        self._live: Dict[int, _Node] = {}
        self._next_key = 0
        self._rng = random.Random(seed)
        self.comparisons = 0

    def __len__(self) -> int:
        return len(self._live)

    def insert(self, lo: int, hi: int, payload: Any = None) -> int:
        if lo > hi:
            raise InvalidIntervalError(f"interval [{lo}, {hi}] has lo > hi")
        key = self._next_key
        self._next_key += 1
        node = _Node(lo, hi, key, payload, self._rng.random())
        left, right = _split(self._root, node.order())
        self._root = _merge(_merge(left, node), right)
        self._live[key] = node
        return key

    def delete(self, key: int) -> None:
        node = self._live.pop(key, None)
        if node is None:
            raise IntervalKeyError(f"interval key {key} is not live")
        self._root = _remove(self._root, node.order())

    def stab(self, q: int) -> List[Any]:
        """Payloads of every interval with lo <= q <= hi."""
        out = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node is None:
                continue
            self.comparisons += 1
            if node.max_hi < q:
                continue
            stack.append(node.left)
            if node.lo <= q:
                if node.hi >= q:
                    out.append(node.payload)
                stack.append(node.right)
        return out
