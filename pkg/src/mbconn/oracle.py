"""Brute-force ground truth: connected components of the pair graph by BFS.

Deliberately shares nothing with the two engines beyond the node type.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .grid import NodeRef, SingularityReport, format_report
from .pairs import NodePair


@dataclass(frozen=True)
class ClosureResult:
    all_classes: tuple[tuple[NodeRef, ...], ...]


def closure_classes(pairs: Iterable[NodePair]) -> ClosureResult:
    adjacency: dict[NodeRef, list[NodeRef]] = {}
    for p, q in pairs:
        adjacency.setdefault(p, []).append(q)
        adjacency.setdefault(q, []).append(p)

    seen: set[NodeRef] = set()
    classes = []
    for start in adjacency:
        if start in seen:
            continue
        seen.add(start)
        component = [start]
        queue = deque([start])
        while queue:
            for nb in adjacency[queue.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    component.append(nb)
                    queue.append(nb)
        classes.append(tuple(sorted(component)))
    classes.sort()
    return ClosureResult(tuple(classes))


def filter_singular(closure: ClosureResult) -> SingularityReport:
    return SingularityReport.from_classes(closure.all_classes, min_size=3)


def reconstruct_oracle(pairs: Iterable[NodePair]) -> SingularityReport:
    return filter_singular(closure_classes(pairs))


def reports_equal(a: SingularityReport, b: SingularityReport) -> bool:
    return format_report(a) == format_report(b)
