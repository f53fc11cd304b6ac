"""Expansion of interface patches into node-equivalence pairs, and per-block buckets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .grid import Grid, InterfacePatch, NodeRef, validate_patch

NodePair = tuple[NodeRef, NodeRef]


def canonical_pair(p: NodeRef, q: NodeRef) -> NodePair:
    return (p, q) if p < q else (q, p)


def enumerate_pairs(grid: Grid, patch: InterfacePatch) -> list[NodePair]:
    """One pair per position of ``range_a``, sorted and deduplicated.

    Identity pairs, which only a self-interface can produce, are dropped.
    """
    validate_patch(grid, patch)
    a, b = patch.block_a, patch.block_b
    out = set()
    for pos in patch.range_a.positions():
        x = NodeRef(a, *pos)
        y = NodeRef(b, *patch.partner(pos))
        if x != y:
            out.add(canonical_pair(x, y))
    return sorted(out)


def enumerate_all(grid: Grid, patches: Iterable[InterfacePatch]) -> set[NodePair]:
    pairs: set[NodePair] = set()
    for patch in patches:
        pairs.update(enumerate_pairs(grid, patch))
    return pairs


@dataclass
class PairBuckets:
    """The pair set split by block: bucket ``l`` holds every pair touching block ``l``.

    Partner lookups scan a single bucket. Setting ``indexed`` builds a flat
    node -> partners map instead; that is only for comparison runs.
    """

    per_block: list[list[NodePair]]
    pair_count: int
    indexed: bool = False
    _index: Optional[dict[NodeRef, list[NodeRef]]] = field(default=None, repr=False)

    def bucket(self, block: int) -> list[NodePair]:
        return self.per_block[block - 1]

    def partners(self, node: NodeRef) -> list[NodeRef]:
        if self._index is not None:
            return self._index.get(node, [])
        found = []
        for p, q in self.per_block[node.block - 1]:
            if p == node:
                found.append(q)
            elif q == node:
                found.append(p)
        return found

    def pairs(self) -> Iterator[NodePair]:
        """Every pair exactly once, bucket by bucket."""
        for l, bucket in enumerate(self.per_block, start=1):
            for pair in bucket:
                # p < q, so the lower block always owns the first visit
                if pair[0].block == l:
                    yield pair


def bucketize(grid: Grid, pairs: Iterable[NodePair], indexed: bool = False) -> PairBuckets:
    per_block: list[list[NodePair]] = [[] for _ in range(grid.n_blocks)]
    count = 0
    for pair in pairs:
        p, q = pair
        per_block[p.block - 1].append(pair)
        if q.block != p.block:
            per_block[q.block - 1].append(pair)
        count += 1
    buckets = PairBuckets(per_block, count, indexed)
    if indexed:
        index: dict[NodeRef, list[NodeRef]] = {}
        for p, q in buckets.pairs():
            index.setdefault(p, []).append(q)
            index.setdefault(q, []).append(p)
        buckets._index = index
    return buckets


def format_pairs(pairs: Iterable[NodePair]) -> str:
    def node(n: NodeRef) -> str:
        return f"({n.block} {n.i} {n.j} {n.k})"

    return "".join(f"{node(p)} {node(q)}\n" for p, q in sorted(pairs))
