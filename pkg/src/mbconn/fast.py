"""The improved reconstruction, seeded from block-edge nodes.

Pipeline: edge nodes H, candidates C, seeds F = H & C held in a balanced
search tree, pair completion of F to a fixpoint, then class merging with
circular doubly linked membership rings. Total work is O(N log M) for N
candidates and M edge nodes.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .grid import Grid, NodeRef, SingularityReport, edge_nodes_of_block, is_edge_node
from .naive import candidate_set
from .pairs import NodePair, PairBuckets, bucketize
from .sorttree import SortTree


def edge_node_set(grid: Grid) -> list[NodeRef]:
    """Nodes on the twelve edges of every block, in node order."""
    out: list[NodeRef] = []
    for dims in grid.blocks:
        out.extend(edge_nodes_of_block(dims))
    return out


def _add(seeds: SortTree, node: NodeRef) -> bool:
    # the value is a dense handle used later as the node's ring slot
    return seeds.insert(node, len(seeds))


def seed_set(edge_nodes: Iterable[NodeRef], candidates: frozenset[NodeRef]) -> SortTree:
    """Edge nodes that are also candidates, in the search tree.

    ``edge_nodes`` in node order take the linear bulk build; otherwise the
    nodes are inserted one at a time.
    """
    kept = [node for node in edge_nodes if node in candidates]
    if all(a < b for a, b in zip(kept, kept[1:])):
        return SortTree.from_sorted([(node, h) for h, node in enumerate(kept)])
    seeds = SortTree()
    for node in kept:
        _add(seeds, node)
    return seeds


def addback_missing(seeds: SortTree, buckets: PairBuckets) -> SortTree:
    """Grow ``seeds`` until no pair has exactly one endpoint inside it.

    One sweep over the pairs catches direct partners of seeds; nodes added
    during the sweep then have their own partners pulled in through bucket
    lookups, which reaches chains of non-edge copies.
    """
    pending = []
    for p, q in buckets.pairs():
        if p in seeds:
            if _add(seeds, q):
                pending.append(q)
        elif q in seeds:
            _add(seeds, p)
            pending.append(p)
    while pending:
        node = pending.pop()
        for other in buckets.partners(node):
            if _add(seeds, other):
                pending.append(other)
    return seeds


class ClassForest:
    """Disjoint classes over slots ``0..n-1``.

    Each class is a circular doubly linked ring (``next``/``prev``), so two
    classes splice in constant time and a ring walk lists one class. The
    ``parent`` array (union by size, path halving) answers "same class?".
    """

    def __init__(self, n: int):
        self.next = list(range(n))
        self.prev = list(range(n))
        self.parent = list(range(n))
        self.size = [1] * n
        self.splices = 0

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def merge(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        nxt, prv = self.next, self.prev
        an, bn = nxt[a], nxt[b]
        nxt[a], prv[bn] = bn, a
        nxt[b], prv[an] = an, b
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.splices += 1
        return True

    def ring(self, x: int) -> list[int]:
        out = [x]
        y = self.next[x]
        while y != x:
            out.append(y)
            y = self.next[y]
        return out

    def classes(self) -> Iterator[list[int]]:
        for x in range(len(self.parent)):
            if self.parent[x] == x:
                yield self.ring(x)


def build_forest(seeds: SortTree, buckets: PairBuckets) -> tuple[ClassForest, list[NodeRef]]:
    nodes: list[NodeRef] = [None] * len(seeds)  # type: ignore[list-item]
    for node, handle in seeds.items():
        nodes[handle] = node
    forest = ClassForest(len(nodes))
    for p, q in buckets.pairs():
        hp = seeds.get(p)
        if hp is None:
            continue
        hq = seeds.get(q)
        if hq is not None:
            forest.merge(hp, hq)
    return forest, nodes


def merge_classes(seeds: SortTree, buckets: PairBuckets) -> SingularityReport:
    forest, nodes = build_forest(seeds, buckets)
    return SingularityReport.from_classes(
        [nodes[h] for h in ring] for ring in forest.classes() if len(ring) > 2
    )


def reconstruct_fast(grid: Grid, pairs: Iterable[NodePair], indexed: bool = False) -> SingularityReport:
    pairs = list(pairs)
    for p, q in pairs:
        grid.check_node(p)
        grid.check_node(q)
    seeds = seed_set(edge_node_set(grid), candidate_set(pairs))
    buckets = bucketize(grid, pairs, indexed=indexed)
    addback_missing(seeds, buckets)
    return merge_classes(seeds, buckets)


def edge_seed_violations(grid: Grid, report: SingularityReport) -> list[tuple[NodeRef, ...]]:
    """Classes with no member on a block edge; the fast engine cannot see these."""
    return [c for c in report.classes if not any(is_edge_node(grid, m) for m in c)]
