"""A height-balanced (AVL) binary search tree used as an ordered map."""

from __future__ import annotations

from typing import Any, Iterator, Optional, Sequence


class _Node:
    __slots__ = ("key", "value", "left", "right", "height")

    def __init__(self, key, value):
        self.key = key
        self.value = value
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None
        self.height = 1


def _h(node: Optional[_Node]) -> int:
    return node.height if node is not None else 0


def _fix(node: _Node) -> None:
    hl = node.left.height if node.left is not None else 0
    hr = node.right.height if node.right is not None else 0
    node.height = (hl if hl > hr else hr) + 1


def _rotate_right(node: _Node) -> _Node:
    top = node.left
    node.left = top.right
    top.right = node
    _fix(node)
    _fix(top)
    return top


def _rotate_left(node: _Node) -> _Node:
    top = node.right
    node.right = top.left
    top.left = node
    _fix(node)
    _fix(top)
    return top


def _rebalance(node: _Node) -> _Node:
    balance = _h(node.left) - _h(node.right)
    if balance > 1:
        if _h(node.left.left) < _h(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if balance < -1:
        if _h(node.right.right) < _h(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


class SortTree:
    """Ordered map with O(log n) lookup and insertion. Keys are never removed."""

    def __init__(self):
        self._root: Optional[_Node] = None
        self._size = 0

    @classmethod
    def from_sorted(cls, items: Sequence[tuple[Any, Any]]) -> "SortTree":
        """Build a balanced tree in linear time from strictly increasing keys."""

        def build(lo: int, hi: int) -> Optional[_Node]:
            if lo >= hi:
                return None
            mid = (lo + hi) // 2
            node = _Node(*items[mid])
            node.left = build(lo, mid)
            node.right = build(mid + 1, hi)
            _fix(node)
            return node

        for (a, _), (b, _) in zip(items, items[1:]):
            if not a < b:
                raise ValueError("keys must be strictly increasing")
        tree = cls()
        tree._root = build(0, len(items))
        tree._size = len(items)
        return tree

    def __len__(self) -> int:
        return self._size

    def _find(self, key) -> Optional[_Node]:
        node = self._root
        while node is not None:
            if key < node.key:
                node = node.left
            elif node.key < key:
                node = node.right
            else:
                return node
        return None

    def __contains__(self, key) -> bool:
        return self._find(key) is not None

    def get(self, key, default=None) -> Any:
        node = self._find(key)
        return default if node is None else node.value

    def insert(self, key, value=None) -> bool:
        """Add ``key`` unless present. Returns whether it was added."""
        if self._root is None:
            self._root = _Node(key, value)
            self._size = 1
            return True
        path = []
        node = self._root
        while node is not None:
            path.append(node)
            if key < node.key:
                node = node.left
            elif node.key < key:
                node = node.right
            else:
                return False
        parent = path[-1]
        if key < parent.key:
            parent.left = _Node(key, value)
        else:
            parent.right = _Node(key, value)
        self._size += 1

        for depth in range(len(path) - 1, -1, -1):
            node = path[depth]
            hl = node.left.height if node.left is not None else 0
            hr = node.right.height if node.right is not None else 0
            if hl - hr > 1 or hr - hl > 1:
                top = _rebalance(node)
                if depth == 0:
                    self._root = top
                elif path[depth - 1].left is node:
                    path[depth - 1].left = top
                else:
                    path[depth - 1].right = top
                break  # one rotation restores the subtree height after an insert
            height = (hl if hl > hr else hr) + 1
            if height == node.height:
                break
            node.height = height
        return True

    def set_value(self, key, value) -> None:
        node = self._find(key)
        if node is None:
            raise KeyError(key)
        node.value = value

    def items(self) -> Iterator[tuple[Any, Any]]:
        stack: list[_Node] = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.key, node.value
            node = node.right

    def __iter__(self) -> Iterator[Any]:
        return (key for key, _ in self.items())

    @property
    def height(self) -> int:
        return _h(self._root)

    def check(self) -> None:
        """Assert ordering, stored heights and the AVL balance condition."""

        def walk(node, lo, hi) -> int:
            if node is None:
                return 0
            assert lo is None or lo < node.key, "order violated"
            assert hi is None or node.key < hi, "order violated"
            hl = walk(node.left, lo, node.key)
            hr = walk(node.right, node.key, hi)
            assert abs(hl - hr) <= 1, "unbalanced"
            assert node.height == max(hl, hr) + 1, "stale height"
            return node.height

        walk(self._root, None, None)
