"""Regenerate the MBC fixtures in this directory.

    python tests/fixtures/make_fixtures.py

The orientation fixtures are box splits with edge and point contacts added,
every block relabelled by a signed axis permutation and some patches
written from the other side. The seed is chosen so that the patch
transforms of ``orient_*.mbc`` together cover all 48 orientations.
"""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

from mbconn.grid import ALL_TRANSFORMS, IDENTITY, Grid, IndexRange, InterfacePatch
from mbconn.mbc import write_mbc
from mbconn.synth import SynthSpec, generate_split, reorient

HERE = Path(__file__).parent


def contact_patches(grid: Grid, origins) -> list[InterfacePatch]:
    """Edge and point contacts between blocks of a box split."""
    out = []
    boxes = []
    for dims, origin in zip(grid.blocks, origins):
        boxes.append((origin, tuple(o + n - 1 for o, n in zip(origin, dims.shape))))
    for a, b in combinations(range(len(boxes)), 2):
        lo = tuple(map(max, boxes[a][0], boxes[b][0]))
        hi = tuple(map(min, boxes[a][1], boxes[b][1]))
        if any(l > h for l, h in zip(lo, hi)):
            continue
        degenerate = sum(l == h for l, h in zip(lo, hi))
        if degenerate < 2:
            continue  # face contacts already have a patch

        def local(box, origin):
            return IndexRange(tuple(x - o + 1 for x, o in zip(box[0], origin)), tuple(x - o + 1 for x, o in zip(box[1], origin)))

        out.append(InterfacePatch(a + 1, local((lo, hi), origins[a]), b + 1, local((lo, hi), origins[b]), IDENTITY))
    return out


def oriented_fixture(rng: random.Random, spec: SynthSpec):
    grid, patches, truth = generate_split(spec)
    patches = patches + contact_patches(grid, truth.origins)
    orientations = [rng.choice(ALL_TRANSFORMS) for _ in grid.blocks]
    grid, patches, _ = reorient(grid, patches, orientations)
    patches = [p.swapped() if rng.random() < 0.5 else p for p in patches]
    rng.shuffle(patches)
    return grid, patches


def tjunction():
    # block 1's i=3 face is split between blocks 2 and 3, which meet at j=3 of block 1
    grid = Grid.from_shapes([(3, 5, 3), (3, 3, 3), (3, 3, 3)])
    patches = [
        InterfacePatch(1, IndexRange((3, 1, 1), (3, 3, 3)), 2, IndexRange((1, 1, 1), (1, 3, 3)), IDENTITY),
        InterfacePatch(1, IndexRange((3, 3, 1), (3, 5, 3)), 3, IndexRange((1, 1, 1), (1, 3, 3)), IDENTITY),
        InterfacePatch(2, IndexRange((1, 3, 1), (3, 3, 3)), 3, IndexRange((1, 1, 1), (3, 1, 3)), IDENTITY),
    ]
    return grid, patches


def ogrid():
    # two blocks, each wrapped onto itself in i, stacked in j
    grid = Grid.from_shapes([(5, 3, 3), (5, 3, 3)])
    patches = [
        InterfacePatch(1, IndexRange((1, 1, 1), (1, 3, 3)), 1, IndexRange((5, 1, 1), (5, 3, 3)), IDENTITY),
        InterfacePatch(2, IndexRange((1, 1, 1), (1, 3, 3)), 2, IndexRange((5, 1, 1), (5, 3, 3)), IDENTITY),
        InterfacePatch(1, IndexRange((1, 3, 1), (5, 3, 3)), 2, IndexRange((1, 1, 1), (5, 1, 3)), IDENTITY),
    ]
    return grid, patches


def faceless_class():
    """Three blocks glued through face interiors only: a singular class with no edge copy.

    Not a valid 1-to-1 geometry; the fast engine misses the class and
    ``verify`` must say so.
    """
    grid = Grid.from_shapes([(5, 5, 5), (5, 5, 5), (5, 5, 5)])
    inner = IndexRange((5, 3, 3), (5, 3, 3))
    patches = [
        InterfacePatch(1, inner, 2, IndexRange((1, 3, 3), (1, 3, 3)), IDENTITY),
        InterfacePatch(1, inner, 3, IndexRange((1, 3, 3), (1, 3, 3)), IDENTITY),
    ]
    return grid, patches


ORIENT_SPECS = [
    SynthSpec(7, 5, 5, (4,), (3,), (3,)),
    SynthSpec(5, 7, 5, (3,), (3, 5), (3,)),
    SynthSpec(6, 5, 4, (3, 4), (3,), (2,)),
    SynthSpec(5, 5, 7, (3,), (3,), (3, 5)),
    SynthSpec(7, 6, 5, (4,), (2, 4), (3,)),
    SynthSpec(5, 5, 5, (3,), (3,), (3,)),
]


def main() -> None:
    for seed in range(1000):
        rng = random.Random(seed)
        built = [oriented_fixture(rng, spec) for spec in ORIENT_SPECS]
        seen = {p.transform for _, patches in built for p in patches}
        if len(seen) == 48:
            break
    else:
        raise SystemExit("no seed covers all 48 transforms")
    for n, (grid, patches) in enumerate(built, start=1):
        (HERE / f"orient_{n}.mbc").write_text(
            f"# box split with contacts, blocks reoriented (seed {seed})\n" + write_mbc(grid, patches)
        )
    for name, (grid, patches) in (("tjunction", tjunction()), ("ogrid", ogrid()), ("contacts", contacts())):
        (HERE / f"{name}.mbc").write_text(write_mbc(grid, patches))
    grid, patches = faceless_class()
    (HERE / "pathological" / "faceless_class.mbc").write_text(write_mbc(grid, patches))


def contacts():
    grid, patches, truth = generate_split(SynthSpec(5, 5, 5, (3,), (3,), (3,)))
    return grid, patches + contact_patches(grid, truth.origins)


if __name__ == "__main__":
    main()
