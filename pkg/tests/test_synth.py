import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbconn.errors import InvalidSpec
from mbconn.grid import ALL_TRANSFORMS, format_report
from mbconn.oracle import reconstruct_oracle
from mbconn.pairs import enumerate_all
from mbconn.synth import (
    SynthSpec,
    even_cuts,
    expected_census,
    format_ground_truth,
    generate_split,
    parse_ground_truth,
    reorient,
    scaling_series,
)

from oracles import brute_singular_classes, copies_by_point
from strategies import orientations, synth_specs


@pytest.mark.parametrize(
    "spec, census",
    [
        (SynthSpec(5, 5, 3, (3,), (3,)), (3, 0)),
        (SynthSpec(5, 5, 5, (3,), (3,), (3,)), (12, 1)),
        (SynthSpec(9, 9, 9, (3, 6), (5,), ()), (18, 0)),
        (SynthSpec(4, 4, 4), (0, 0)),
        (SynthSpec(7, 4, 4, (2, 4, 6)), (0, 0)),
    ],
)
def test_census_examples(spec, census):
    assert expected_census(spec) == census
    classes = brute_singular_classes(spec)
    assert sum(len(c) == 4 for c in classes) == census[0]
    assert sum(len(c) == 8 for c in classes) == census[1]


@settings(max_examples=80, deadline=None)
@given(synth_specs(max_dim=10))
def test_census_formula_against_copies(spec):
    size4, size8 = expected_census(spec)
    sizes = [len(c) for c in copies_by_point(spec).values()]
    assert sizes.count(4) == size4 and sizes.count(8) == size8
    assert set(sizes) <= {1, 2, 4, 8}


@settings(max_examples=60, deadline=None)
@given(synth_specs(max_dim=10))
def test_generated_split_layout(spec):
    grid, patches, truth = generate_split(spec)
    assert grid.n_blocks == (len(spec.cuts_i) + 1) * (len(spec.cuts_j) + 1) * (len(spec.cuts_k) + 1)
    # every block node maps back to a global point; copies multiply by two per cut plane
    seen = {}
    for l in range(1, grid.n_blocks + 1):
        for node in grid.nodes(l):
            g = truth.global_index(node)
            seen.setdefault(g, 0)
            seen[g] += 1
    assert len(seen) == spec.point_count
    assert all(truth.copies(*g) == n for g, n in seen.items())
    assert grid.node_count == sum(seen.values())
    size4, size8 = expected_census(spec)
    assert (truth.n_size4, truth.n_size8) == (size4, size8)
    assert dict(truth.singular_points()) == {
        truth.gid(c[0]): len(c) for c in brute_singular_classes(spec)
    }


def test_gid_row_major():
    grid, _, truth = generate_split(SynthSpec(4, 3, 2, (2,)))
    assert [truth.gid(n) for n in grid.nodes(1)][:3] == [0, 1, 2]
    last = max(truth.gid(n) for l in (1, 2) for n in grid.nodes(l))
    assert last == 4 * 3 * 2 - 1


@pytest.mark.parametrize(
    "spec",
    [
        SynthSpec(1, 3, 3),
        SynthSpec(5, 5, 5, (1,)),
        SynthSpec(5, 5, 5, (5,)),
        SynthSpec(5, 5, 5, (), (3, 3)),
        SynthSpec(5, 5, 5, (), (), (4, 2)),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate_split(spec)


def test_even_cuts():
    assert even_cuts(65, 1) == (33,)
    assert even_cuts(65, 3) == (17, 33, 49)
    assert even_cuts(5, 0) == ()
    with pytest.raises(InvalidSpec):
        even_cuts(4, 3)


def test_cubic_series_block_counts():
    series = scaling_series(SynthSpec(65, 65, 65), 5)
    counts = [(len(s.cuts_i) + 1) * (len(s.cuts_j) + 1) * (len(s.cuts_k) + 1) for s in series]
    assert counts == [8, 64, 512, 4096, 32768]
    assert all(s.dims == (65, 65, 65) for s in series)


def test_single_axis_series_keeps_base_cuts():
    series = scaling_series(SynthSpec(257, 5, 65, (129,)), 5, axes="k")
    assert all(s.cuts_i == (129,) and s.cuts_j == () for s in series)
    assert [len(s.cuts_k) for s in series] == [1, 3, 7, 15, 31]
    with pytest.raises(InvalidSpec):
        scaling_series(SynthSpec(5, 5, 5), 2, axes="x")
    with pytest.raises(InvalidSpec):
        scaling_series(SynthSpec(5, 5, 5), 0)


def test_ground_truth_round_trip():
    grid, _, truth = generate_split(SynthSpec(5, 5, 5, (3,), (3,), (3,)))
    gt = parse_ground_truth(format_ground_truth(truth, grid, full_map=True))
    assert (gt.n_size4, gt.n_size8, gt.singular_nodes, gt.singular_classes) == (12, 1, 56, 13)
    assert gt.points == dict(truth.singular_points())
    assert len(gt.mapping) == grid.node_count
    short = parse_ground_truth(format_ground_truth(truth, grid))
    assert short.mapping == {}


@pytest.mark.parametrize("text", ["", "GT 2\n", "GT 1\ndims 2 2 2\n", "GT 1\nbogus 1\n"])
def test_ground_truth_rejects(text):
    with pytest.raises(ValueError):
        parse_ground_truth(text)


@settings(max_examples=60, deadline=None)
@given(synth_specs(max_dim=7), st.data())
def test_reorient_preserves_classes(spec, data):
    grid, patches, _ = generate_split(spec)
    orient = data.draw(orientations(grid.n_blocks))
    grid2, patches2, node_map = reorient(grid, patches, orient)
    before = reconstruct_oracle(enumerate_all(grid, patches))
    after = reconstruct_oracle(enumerate_all(grid2, patches2))
    mapped = sorted(tuple(sorted(node_map(n) for n in c)) for c in before.classes)
    assert list(after.classes) == mapped
    for l in range(1, grid.n_blocks + 1):
        assert sorted(node_map(n) for n in grid.nodes(l)) == sorted(grid2.nodes(l))


def test_reorient_identity_is_noop():
    grid, patches, _ = generate_split(SynthSpec(5, 5, 5, (3,), (3,)))
    grid2, patches2, node_map = reorient(grid, patches, [ALL_TRANSFORMS[0]] * grid.n_blocks)
    assert ALL_TRANSFORMS[0] == (1, 2, 3)
    assert (grid2, patches2) == (grid, patches)
    assert format_report(reconstruct_oracle(enumerate_all(grid, patches))) == format_report(
        reconstruct_oracle(enumerate_all(grid2, patches2))
    )
