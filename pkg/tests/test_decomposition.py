import pytest
from hypothesis import given, strategies as st

from strategies import trees
from tabmatch.decomposition import (build_decomposition, check_decomposition, check_partition, cluster,
                                    shape_edges_from_tree)
from tabmatch.nfa import build_nfa
from tabmatch.regex_ast import parse
from tabmatch.tables import decode_shape, shape_key


def test_example_tree_clusters():
    tree = parse("ac|a*b")
    part = cluster(tree, 3)
    check_partition(tree, part)
    assert len(part) == 3
    # 8 tree nodes, so three clusters of at most 3
    assert sorted(map(len, part.clusters)) == [2, 3, 3]


def test_cluster_of_whole_tree_when_it_fits():
    tree = parse("ab")
    part = cluster(tree, 5)
    assert len(part) == 1 and part.macro_parent == [None]


def test_capacity_must_be_positive():
    with pytest.raises(ValueError):
        cluster(parse("a"), 0)


def test_subautomaton_layout_example():
    tree = parse("ac|a*b")
    deco = build_decomposition(build_nfa(tree), tree, 3)
    check_decomposition(deco)
    root = deco.subautomata[deco.root]
    assert root.parent is None and root.start == deco.nfa.start and root.accept == deco.nfa.accept
    assert "sub" in deco.to_text()


@given(trees(max_size=120), st.sampled_from([1, 2, 3, 5, 8]))
def test_partition_properties(tree, x):
    check_partition(tree, cluster(tree, x))


@given(trees(max_size=120), st.sampled_from([1, 2, 3, 5, 8]))
def test_decomposition_properties(tree, x):
    deco = build_decomposition(build_nfa(tree), tree, x)
    check_decomposition(deco)
    assert sorted(deco.preorder) == list(range(len(deco.subautomata)))


@given(trees(max_size=80), st.sampled_from([2, 3, 5]))
def test_shape_key_matches_tree_shape(tree, x):
    deco = build_decomposition(build_nfa(tree), tree, x)
    for a in deco.subautomata:
        assert decode_shape(shape_key(a)) == shape_edges_from_tree(tree, deco.partition, a.id)


def test_shape_key_erases_labels():
    ka = [shape_key(a) for a in build_decomposition(build_nfa(parse("ab*|c")), parse("ab*|c"), 4).subautomata]
    kb = [shape_key(a) for a in build_decomposition(build_nfa(parse("xy*|z")), parse("xy*|z"), 4).subautomata]
    assert ka == kb
