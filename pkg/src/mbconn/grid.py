"""Computational-space model of a 1-to-1 multi-block structured grid.

Everything here is immutable. Indices are 1-based, as in the grid files.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    BadTransform,
    ExtentMismatch,
    InvalidNode,
    RangeOutOfBounds,
    UnknownBlockId,
)

AXES = (0, 1, 2)


class BlockDims(NamedTuple):
    id: int
    ni: int
    nj: int
    nk: int

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.ni, self.nj, self.nk)

    @property
    def node_count(self) -> int:
        return self.ni * self.nj * self.nk


class NodeRef(NamedTuple):
    """A grid node, ``(block; i, j, k)``. Tuple ordering is the node order."""

    block: int
    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"({self.block},{self.i},{self.j},{self.k})"


@dataclass(frozen=True)
class Grid:
    blocks: tuple[BlockDims, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for pos, b in enumerate(self.blocks, start=1):
            if b.id != pos:
                raise UnknownBlockId(f"block ids must be 1..n in order; got {b.id} at position {pos}")
            if min(b.shape) < 2:
                raise RangeOutOfBounds(f"block {b.id} has dims {b.shape}; each axis needs at least 2 nodes")

    @classmethod
    def from_shapes(cls, shapes: Iterable[Sequence[int]]) -> "Grid":
        return cls(tuple(BlockDims(l, *s) for l, s in enumerate(shapes, start=1)))

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def node_count(self) -> int:
        return sum(b.node_count for b in self.blocks)

    def dims(self, block: int) -> BlockDims:
        if not 1 <= block <= len(self.blocks):
            raise UnknownBlockId(f"unknown block id {block}")
        return self.blocks[block - 1]

    def contains(self, node: NodeRef) -> bool:
        if not 1 <= node.block <= len(self.blocks):
            return False
        b = self.blocks[node.block - 1]
        return 1 <= node.i <= b.ni and 1 <= node.j <= b.nj and 1 <= node.k <= b.nk

    def check_node(self, node: NodeRef) -> None:
        if not self.contains(node):
            raise InvalidNode(f"node {node} is outside the grid")

    def nodes(self, block: int) -> Iterator[NodeRef]:
        b = self.dims(block)
        for i, j, k in product(range(1, b.ni + 1), range(1, b.nj + 1), range(1, b.nk + 1)):
            yield NodeRef(block, i, j, k)


def is_edge_node(grid: Grid, node: NodeRef) -> bool:
    """True when at least two of the node's indices sit on a block extreme."""
    grid.check_node(node)
    b = grid.blocks[node.block - 1]
    extremes = (node.i in (1, b.ni)) + (node.j in (1, b.nj)) + (node.k in (1, b.nk))
    return extremes >= 2


def edge_nodes_of_block(dims: BlockDims) -> list[NodeRef]:
    """All nodes on the twelve edges of one block, sorted, corners once."""
    l, ni, nj, nk = dims
    found = set()
    for j, k in product((1, nj), (1, nk)):
        found.update(NodeRef(l, i, j, k) for i in range(1, ni + 1))
    for i, k in product((1, ni), (1, nk)):
        found.update(NodeRef(l, i, j, k) for j in range(1, nj + 1))
    for i, j in product((1, ni), (1, nj)):
        found.update(NodeRef(l, i, j, k) for k in range(1, nk + 1))
    return sorted(found)


class IndexRange(NamedTuple):
    """Inclusive index box; ``lo[a] <= hi[a]`` on each axis."""

    lo: tuple[int, int, int]
    hi: tuple[int, int, int]

    @classmethod
    def from_bounds(cls, ilo, ihi, jlo, jhi, klo, khi) -> "IndexRange":
        return cls((ilo, jlo, klo), (ihi, jhi, khi))

    def bounds(self) -> tuple[int, int, int, int, int, int]:
        return (self.lo[0], self.hi[0], self.lo[1], self.hi[1], self.lo[2], self.hi[2])

    def extent(self, axis: int) -> int:
        return self.hi[axis] - self.lo[axis]

    def size(self) -> int:
        return (self.extent(0) + 1) * (self.extent(1) + 1) * (self.extent(2) + 1)

    def positions(self) -> Iterator[tuple[int, int, int]]:
        return product(*(range(self.lo[a], self.hi[a] + 1) for a in AXES))


Transform = tuple[int, int, int]

IDENTITY: Transform = (1, 2, 3)

ALL_TRANSFORMS: tuple[Transform, ...] = tuple(
    tuple(s * (a + 1) for s, a in zip(signs, perm))
    for perm in permutations(AXES)
    for signs in product((1, -1), repeat=3)
)


def is_signed_permutation(t: Sequence[int]) -> bool:
    return len(t) == 3 and sorted(abs(x) for x in t) == [1, 2, 3]


def invert_transform(t: Transform) -> Transform:
    inv = [0, 0, 0]
    for a, ta in enumerate(t, start=1):
        inv[abs(ta) - 1] = a if ta > 0 else -a
    return tuple(inv)


def compose_transforms(first: Transform, second: Transform) -> Transform:
    """Transform equivalent to applying ``first`` then ``second``."""
    out = []
    for ta in first:
        tb = second[abs(ta) - 1]
        out.append(abs(tb) if (ta > 0) == (tb > 0) else -abs(tb))
    return tuple(out)


@dataclass(frozen=True)
class InterfacePatch:
    """One exported 1-to-1 connection between two index ranges."""

    block_a: int
    range_a: IndexRange
    block_b: int
    range_b: IndexRange
    transform: Transform

    def partner(self, pos: Sequence[int]) -> tuple[int, int, int]:
        """Map an (i, j, k) inside ``range_a`` to its coincident position in ``range_b``."""
        lo_a = self.range_a.lo
        lo_b, hi_b = self.range_b.lo, self.range_b.hi
        y = [0, 0, 0]
        for a, ta in enumerate(self.transform):
            b = abs(ta) - 1
            delta = pos[a] - lo_a[a]
            y[b] = lo_b[b] + delta if ta > 0 else hi_b[b] - delta
        return (y[0], y[1], y[2])

    def swapped(self) -> "InterfacePatch":
        return InterfacePatch(
            self.block_b, self.range_b, self.block_a, self.range_a, invert_transform(self.transform)
        )


def validate_range(grid: Grid, block: int, rng: IndexRange) -> None:
    dims = grid.dims(block)
    for a in AXES:
        if rng.lo[a] > rng.hi[a]:
            raise RangeOutOfBounds(f"block {block}: range {rng.bounds()} is not ascending on axis {a + 1}")
        if rng.lo[a] < 1 or rng.hi[a] > dims.shape[a]:
            raise RangeOutOfBounds(f"block {block}: range {rng.bounds()} exceeds dims {dims.shape}")
    if all(rng.extent(a) > 0 for a in AXES):
        raise RangeOutOfBounds(f"block {block}: range {rng.bounds()} is a volume, not a face, edge or point")


def validate_patch(grid: Grid, patch: InterfacePatch) -> None:
    """Raise the matching error class if ``patch`` is not a valid 1-to-1 record for ``grid``."""
    validate_range(grid, patch.block_a, patch.range_a)
    validate_range(grid, patch.block_b, patch.range_b)
    if not is_signed_permutation(patch.transform):
        raise BadTransform(f"transform {patch.transform} is not a signed permutation of (1, 2, 3)")
    for a, ta in enumerate(patch.transform):
        b = abs(ta) - 1
        if patch.range_a.extent(a) != patch.range_b.extent(b):
            raise ExtentMismatch(
                f"axis {a + 1} of block {patch.block_a} spans {patch.range_a.extent(a)} "
                f"but axis {b + 1} of block {patch.block_b} spans {patch.range_b.extent(b)}"
            )


EquivClass = tuple[NodeRef, ...]


@dataclass(frozen=True)
class SingularityReport:
    """Equivalence classes with more than two members, in canonical order."""

    classes: tuple[EquivClass, ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[NodeRef]], min_size: int = 3) -> "SingularityReport":
        kept = []
        for members in classes:
            members = tuple(sorted(set(members)))
            if len(members) >= min_size:
                kept.append(members)
        kept.sort()
        return cls(tuple(kept))

    @property
    def singular_node_count(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def singular_class_count(self) -> int:
        return len(self.classes)

    def size_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for c in self.classes:
            census[len(c)] = census.get(len(c), 0) + 1
        return census


def format_report(report: SingularityReport) -> str:
    lines = [f"class {len(c)}: " + " ".join(str(m) for m in c) for c in report.classes]
    return "".join(line + "\n" for line in lines)
