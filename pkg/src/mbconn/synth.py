"""Synthetic multi-block grids with analytically known singular classes.

A global node box is split along axis-aligned cut planes. A cut at index
``c`` makes node plane ``c`` shared by the two adjacent blocks, so a global
point lying on cut planes of ``d`` distinct axes has ``2**d`` copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from .errors import InvalidSpec
from .grid import (
    IDENTITY,
    Grid,
    IndexRange,
    InterfacePatch,
    NodeRef,
    Transform,
    compose_transforms,
    invert_transform,
)

_AXIS_NAMES = "ijk"


@dataclass(frozen=True)
class SynthSpec:
    global_ni: int
    global_nj: int
    global_nk: int
    cuts_i: tuple[int, ...] = ()
    cuts_j: tuple[int, ...] = ()
    cuts_k: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("cuts_i", "cuts_j", "cuts_k"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.global_ni, self.global_nj, self.global_nk)

    @property
    def cuts(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.cuts_i, self.cuts_j, self.cuts_k)

    @property
    def point_count(self) -> int:
        return self.global_ni * self.global_nj * self.global_nk

    def validate(self) -> None:
        for axis, (n, cuts) in enumerate(zip(self.dims, self.cuts)):
            name = _AXIS_NAMES[axis]
            if n < 2:
                raise InvalidSpec(f"global n{name} = {n}; need at least 2 nodes")
            for c in cuts:
                if not 2 <= c <= n - 1:
                    raise InvalidSpec(f"cut {c} on axis {name} is not interior to 1..{n}")
            if any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise InvalidSpec(f"cuts on axis {name} are not strictly increasing: {cuts}")

    def segments(self, axis: int) -> list[tuple[int, int]]:
        """(first, last) global node index of each block slab along ``axis``."""
        bounds = [1, *self.cuts[axis], self.dims[axis]]
        return list(zip(bounds, bounds[1:]))


@dataclass(frozen=True)
class GroundTruth:
    spec: SynthSpec
    origins: tuple[tuple[int, int, int], ...]
    n_size4: int
    n_size8: int

    @property
    def singular_node_count(self) -> int:
        return 4 * self.n_size4 + 8 * self.n_size8

    @property
    def singular_class_count(self) -> int:
        return self.n_size4 + self.n_size8

    def global_index(self, node: NodeRef) -> tuple[int, int, int]:
        oi, oj, ok = self.origins[node.block - 1]
        return (oi + node.i - 1, oj + node.j - 1, ok + node.k - 1)

    def gid(self, node: NodeRef) -> int:
        gi, gj, gk = self.global_index(node)
        _, nj, nk = self.spec.dims
        return ((gi - 1) * nj + (gj - 1)) * nk + (gk - 1)

    def copies(self, gi: int, gj: int, gk: int) -> int:
        count = 1
        for g, cuts in zip((gi, gj, gk), self.spec.cuts):
            if g in cuts:
                count *= 2
        return count

    def singular_points(self) -> Iterator[tuple[int, int]]:
        """(gid, copy count) for every point with more than two copies, by gid."""
        ni, nj, nk = self.spec.dims
        ci, cj, ck = self.spec.cuts
        found = set()
        found.update(product(ci, cj, range(1, nk + 1)))
        found.update(product(ci, range(1, nj + 1), ck))
        found.update(product(range(1, ni + 1), cj, ck))
        for gi, gj, gk in sorted(found):
            yield ((gi - 1) * nj + (gj - 1)) * nk + (gk - 1), self.copies(gi, gj, gk)


def expected_census(spec: SynthSpec) -> tuple[int, int]:
    """(classes of size 4, classes of size 8) for a split of ``spec``."""
    spec.validate()
    ci, cj, ck = (len(c) for c in spec.cuts)
    ni, nj, nk = spec.dims
    size8 = ci * cj * ck
    size4 = ci * cj * (nk - ck) + ci * ck * (nj - cj) + cj * ck * (ni - ci)
    return size4, size8


def generate_split(spec: SynthSpec) -> tuple[Grid, list[InterfacePatch], GroundTruth]:
    spec.validate()
    seg = [spec.segments(a) for a in range(3)]
    counts = [len(s) for s in seg]

    def block_id(bi: int, bj: int, bk: int) -> int:
        return (bi * counts[1] + bj) * counts[2] + bk + 1

    shapes = []
    origins = []
    for (ai, bi_), (aj, bj_), (ak, bk_) in product(*seg):
        shapes.append((bi_ - ai + 1, bj_ - aj + 1, bk_ - ak + 1))
        origins.append((ai, aj, ak))
    grid = Grid.from_shapes(shapes)

    patches = []
    for idx in product(*(range(c) for c in counts)):
        a = block_id(*idx)
        shape = shapes[a - 1]
        for axis in range(3):
            if idx[axis] + 1 == counts[axis]:
                continue
            nb = list(idx)
            nb[axis] += 1
            b = block_id(*nb)
            lo_a = [1, 1, 1]
            lo_a[axis] = shape[axis]
            hi = list(shape)
            lo_b = [1, 1, 1]
            hi_b = list(shape)
            hi_b[axis] = 1
            patches.append(
                InterfacePatch(a, IndexRange(tuple(lo_a), tuple(hi)), b, IndexRange(tuple(lo_b), tuple(hi_b)), IDENTITY)
            )

    size4, size8 = expected_census(spec)
    return grid, patches, GroundTruth(spec, tuple(origins), size4, size8)


def even_cuts(n: int, count: int) -> tuple[int, ...]:
    """``count`` interior cuts splitting ``1..n`` into near-equal slabs."""
    if count == 0:
        return ()
    if n - 1 < count + 1:
        raise InvalidSpec(f"{count} cuts do not fit on an axis of {n} nodes")
    return tuple(1 + (m * (n - 1)) // (count + 1) for m in range(1, count + 1))


def scaling_series(base: SynthSpec, steps: int, axes: str = "ijk") -> list[SynthSpec]:
    """Specs with ``2**s - 1`` even cuts on each axis in ``axes``, for s = 1..steps.

    Global dims stay fixed; axes not listed keep the base spec's cuts.
    """
    base.validate()
    if steps < 1:
        raise InvalidSpec("a series needs at least one step")
    if not axes or any(a not in _AXIS_NAMES for a in axes):
        raise InvalidSpec(f"axes must be drawn from 'ijk', got {axes!r}")
    series = []
    for s in range(1, steps + 1):
        cuts = list(base.cuts)
        for name in axes:
            axis = _AXIS_NAMES.index(name)
            cuts[axis] = even_cuts(base.dims[axis], 2**s - 1)
        spec = SynthSpec(*base.dims, *cuts)
        spec.validate()
        series.append(spec)
    return series


def format_ground_truth(truth: GroundTruth, grid: Grid, full_map: bool = False) -> str:
    spec = truth.spec
    lines = [
        "GT 1",
        "dims {} {} {}".format(*spec.dims),
        f"census size4 {truth.n_size4} size8 {truth.n_size8} "
        f"singular_nodes {truth.singular_node_count} singular_classes {truth.singular_class_count}",
    ]
    lines += [f"point {g} {n}" for g, n in truth.singular_points()]
    if full_map:
        for block in range(1, grid.n_blocks + 1):
            for node in grid.nodes(block):
                lines.append(f"map {node.block} {node.i} {node.j} {node.k} {truth.gid(node)}")
    return "\n".join(lines) + "\n"


@dataclass
class GroundTruthFile:
    """What ``verify`` needs back from a ground-truth sidecar."""

    n_size4: int
    n_size8: int
    singular_nodes: int
    singular_classes: int
    points: dict[int, int]
    mapping: dict[NodeRef, int]


def parse_ground_truth(text: str) -> GroundTruthFile:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["GT", "1"]:
        raise ValueError("ground-truth file must start with 'GT 1'")
    census = None
    points: dict[int, int] = {}
    mapping: dict[NodeRef, int] = {}
    for fields in lines[1:]:
        tag = fields[0]
        if tag == "census":
            kv = dict(zip(fields[1::2], (int(v) for v in fields[2::2])))
            census = kv
        elif tag == "point":
            points[int(fields[1])] = int(fields[2])
        elif tag == "map":
            l, i, j, k, g = (int(v) for v in fields[1:6])
            mapping[NodeRef(l, i, j, k)] = g
        elif tag != "dims":
            raise ValueError(f"unknown ground-truth record {tag!r}")
    if census is None:
        raise ValueError("ground-truth file has no census line")
    return GroundTruthFile(
        census["size4"], census["size8"], census["singular_nodes"], census["singular_classes"], points, mapping
    )


def reorient(
    grid: Grid, patches: Sequence[InterfacePatch], orientations: Sequence[Transform]
) -> tuple[Grid, list[InterfacePatch], Callable[[NodeRef], NodeRef]]:
    """Relabel each block's local axes by a signed permutation.

    Old axis ``a`` of block ``l`` becomes new axis ``|o[a]|``, reversed when
    ``o[a] < 0``. Patches are rewritten to describe the same coincidences,
    so the singular classes map one-to-one. Returns the new grid, the new
    patches and the old-to-new node map.
    """
    shapes = []
    for dims, o in zip(grid.blocks, orientations):
        new = [0, 0, 0]
        for a, oa in enumerate(o):
            new[abs(oa) - 1] = dims.shape[a]
        shapes.append(tuple(new))

    def move(block: int, pos: Sequence[int]) -> tuple[int, int, int]:
        o = orientations[block - 1]
        shape = grid.blocks[block - 1].shape
        out = [0, 0, 0]
        for a, oa in enumerate(o):
            out[abs(oa) - 1] = pos[a] if oa > 0 else shape[a] + 1 - pos[a]
        return tuple(out)

    def move_range(block: int, rng: IndexRange) -> IndexRange:
        x, y = move(block, rng.lo), move(block, rng.hi)
        return IndexRange(tuple(map(min, x, y)), tuple(map(max, x, y)))

    new_patches = []
    for p in patches:
        oa, ob = orientations[p.block_a - 1], orientations[p.block_b - 1]
        t = compose_transforms(compose_transforms(invert_transform(oa), p.transform), ob)
        new_patches.append(
            InterfacePatch(p.block_a, move_range(p.block_a, p.range_a), p.block_b, move_range(p.block_b, p.range_b), t)
        )

    def node_map(node: NodeRef) -> NodeRef:
        return NodeRef(node.block, *move(node.block, node[1:]))

    return Grid.from_shapes(shapes), new_patches, node_map
