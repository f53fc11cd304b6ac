"""The original reconstruction: grow classes candidate by candidate with linear search.

This engine is the quadratic baseline. Classes live in two flat parallel
arrays (member, class label) and every lookup is a front-to-back scan, so
keep it that way: faster structures here would void the speedup comparison.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .grid import Grid, NodeRef, SingularityReport
from .pairs import NodePair


def candidate_set(pairs: Iterable[NodePair]) -> frozenset[NodeRef]:
    """Every node that appears in at least one pair."""
    nodes = set()
    for p, q in pairs:
        nodes.add(p)
        nodes.add(q)
    return frozenset(nodes)


def _scan_partners(left: list[NodeRef], right: list[NodeRef], p: NodeRef) -> Iterator[NodeRef]:
    for mine, other in ((left, right), (right, left)):
        pos = -1
        while True:
            try:
                pos = mine.index(p, pos + 1)
            except ValueError:
                break
            yield other[pos]


def reconstruct_naive(grid: Grid, pairs: Iterable[NodePair]) -> SingularityReport:
    pairs = list(pairs)
    for p, q in pairs:
        grid.check_node(p)
        grid.check_node(q)
    left = [p for p, _ in pairs]
    right = [q for _, q in pairs]

    members: list[NodeRef] = []
    owner: list[int] = []
    labels = 0
    for p in sorted(candidate_set(pairs)):
        try:
            label = owner[members.index(p)]
        except ValueError:
            label = labels
            labels += 1
            members.append(p)
            owner.append(label)

        for q in _scan_partners(left, right, p):
            try:
                other = owner[members.index(q)]
            except ValueError:
                members.append(q)
                owner.append(label)
                continue
            if other != label:
                # q already sits in another class: absorb all of it
                owner = [label if o == other else o for o in owner]

    # size-2 classes are dropped once, after every candidate has been absorbed
    grouped: dict[int, list[NodeRef]] = {}
    for node, label in zip(members, owner):
        grouped.setdefault(label, []).append(node)
    return SingularityReport.from_classes(grouped.values())
