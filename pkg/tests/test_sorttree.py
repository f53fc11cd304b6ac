from hypothesis import given
from hypothesis import strategies as st

from mbconn.grid import NodeRef
from mbconn.sorttree import SortTree

nodes = st.builds(NodeRef, st.integers(1, 4), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))


@given(st.lists(st.integers(-1000, 1000)))
def test_insert_matches_builtin_set(keys):
    tree = SortTree()
    seen = set()
    for k in keys:
        assert tree.insert(k, -k) == (k not in seen)
        seen.add(k)
    tree.check()
    assert len(tree) == len(seen)
    assert list(tree) == sorted(seen)
    for k in range(-5, 6):
        assert (k in tree) == (k in seen)
        assert tree.get(k) == (-k if k in seen else None)


@given(st.lists(nodes, unique=True))
def test_node_keys_sorted(keys):
    tree = SortTree()
    for h, k in enumerate(keys):
        tree.insert(k, h)
    tree.check()
    assert list(tree) == sorted(keys)
    assert all(tree.get(k) == h for h, k in enumerate(keys))


@given(st.lists(st.integers(0, 10**6), unique=True), st.lists(st.integers(0, 10**6)))
def test_bulk_build_then_insert(initial, extra):
    initial.sort()
    tree = SortTree.from_sorted([(k, None) for k in initial])
    tree.check()
    for k in extra:
        tree.insert(k)
    tree.check()
    assert list(tree) == sorted(set(initial) | set(extra))


def test_height_is_logarithmic():
    tree = SortTree()
    for k in range(4096):
        tree.insert(k)
    tree.check()
    # AVL bound: height < 1.45 log2(n + 2)
    assert tree.height <= 17


def test_set_value():
    tree = SortTree()
    tree.insert("b", 1)
    tree.set_value("b", 2)
    assert tree.get("b") == 2
