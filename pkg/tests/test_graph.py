import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hamsym.autgrp import automorphism_group, are_isomorphic
from hamsym.graph import (
    ColoredDigraph, Graph, Graph6Error, colored_digraph_reduce, complete_graph, cycle_graph,
    decode_graph6, disjoint_union, empty_graph, encode_graph6, path_graph,
)
from oracles import all_perms


def naive_graph6(n, edges):
    """Straight transcription of the format: header byte(s), then column-major bits."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    bits = [1 if (i, j) in es else 0 for j in range(n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    if n <= 62:
        head = [n]
    else:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(63 + x) for x in head + body)


@st.composite
def graphs(draw, max_n=50):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    if not pairs:
        return Graph(n, ())
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, m in zip(pairs, mask) if m])


# -- Graph -------------------------------------------------------------------

def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(2, [], colors=[0, 2])
    assert Graph(3, [(1, 0), (0, 1)]).edges == Graph(3, [(0, 1)]).edges


def test_graph_helpers():
    assert len(complete_graph(5).edges) == 10
    assert len(cycle_graph(6).edges) == 6
    assert path_graph(4).degrees().tolist() == [1, 2, 2, 1]
    assert empty_graph(3).complement().edges == complete_graph(3).edges
    g = disjoint_union(path_graph(3), cycle_graph(4))
    assert sorted(len(c) for c in g.components()) == [3, 4]
    assert g.is_forest_component(0) and not g.is_forest_component(4)


# -- graph6 --------------------------------------------------------------------

def test_graph6_examples():
    assert encode_graph6(complete_graph(2)) == "A_"
    assert decode_graph6("A_").edges == complete_graph(2).edges
    assert encode_graph6(empty_graph(1)) == "@"
    assert decode_graph6("@").n == 1
    assert encode_graph6(empty_graph(0)) == "?"


def test_graph6_long_header():
    g = path_graph(100)
    text = encode_graph6(g)
    assert text == naive_graph6(100, g.edges)
    assert text[0] == "~" and decode_graph6(text) == g


@pytest.mark.parametrize("text", ["", "A", "A__", "B~", "A`", "~??", "~?@?", "A\x1f"])
def test_graph6_errors(text):
    with pytest.raises(Graph6Error):
        decode_graph6(text)


def test_graph6_rejects_colours():
    with pytest.raises(Graph6Error):
        encode_graph6(Graph(2, [(0, 1)], colors=[0, 1]))


@settings(max_examples=120, deadline=None)
@given(graphs())
def test_graph6_round_trip(g):
    text = encode_graph6(g)
    assert text == naive_graph6(g.n, g.edges)
    assert decode_graph6(text) == g
    assert encode_graph6(decode_graph6(text)) == text


def test_random_12_vertex_round_trip():
    rng = np.random.default_rng(12)
    for _ in range(20):
        a = np.triu(rng.integers(0, 2, (12, 12)), 1)
        g = Graph.from_adjacency(a + a.T)
        assert decode_graph6(encode_graph6(g)) == g


# -- disjoint union ------------------------------------------------------------

def test_disjoint_union_examples():
    k2 = complete_graph(2)
    u = disjoint_union(k2, k2)
    assert u.n == 4 and len(u.edges) == 2
    g = cycle_graph(5)
    assert disjoint_union(g, empty_graph(0)) == g
    assert disjoint_union(Graph(16, [(i, i + 1) for i in range(15)]), k2).n == 18


def test_disjoint_union_product_of_automorphism_groups():
    # non-isomorphic connected pieces: Aut of the union is the direct product
    pieces = [cycle_graph(5), path_graph(4), complete_graph(4), Graph(4, [(0, 1), (0, 2), (0, 3)])]
    for a, b in itertools.combinations(pieces, 2):
        assert not are_isomorphic(a, b)
        u = disjoint_union(a, b)
        assert automorphism_group(u).order == automorphism_group(a).order * automorphism_group(b).order
    # isomorphic pieces can be swapped
    c = cycle_graph(4)
    assert automorphism_group(disjoint_union(c, c)).order == 8 * 8 * 2


# -- coloured digraphs -----------------------------------------------------------

def brute_digraph_automorphisms(cd):
    m = cd.code_matrix()
    perms = all_perms(cd.n)
    ok = (m[perms[:, :, None], perms[:, None, :]] == m).all(axis=(1, 2))
    return {tuple(int(x) for x in p) for p in perms[ok]}


def reduced_restricted(cd):
    g = colored_digraph_reduce(cd)
    group = automorphism_group(g)
    restricted = {tuple(int(x) for x in row[:cd.n]) for row in group.element_array()}
    return group.order, restricted


def test_colored_digraph_validation():
    with pytest.raises(ValueError):
        ColoredDigraph(2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        ColoredDigraph(2, [(0, 1, 1)])
    with pytest.raises(ValueError):
        colored_digraph_reduce(ColoredDigraph(2, [(0, 1, c) for c in range(17)]))


def test_reduce_single_arc_is_rigid():
    g = colored_digraph_reduce(ColoredDigraph(2, [(0, 1, 0)]))
    assert automorphism_group(g).order == 1


def test_reduce_directed_three_cycle():
    cd = ColoredDigraph(3, [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    order, restricted = reduced_restricted(cd)
    assert order == 3
    assert restricted == brute_digraph_automorphisms(cd)


@pytest.mark.parametrize("seed", range(12))
def test_reduce_preserves_automorphisms_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    k = int(rng.integers(1, 3))
    arcs = [(s, t, int(rng.integers(k))) for s in range(n) for t in range(n)
            if s != t and rng.random() < 0.4]
    used = sorted({c for _, _, c in arcs})
    arcs = [(s, t, used.index(c)) for s, t, c in arcs]
    cd = ColoredDigraph(n, arcs)
    order, restricted = reduced_restricted(cd)
    brute = brute_digraph_automorphisms(cd)
    # isolated original vertices are the only non-gadget freedom
    assert restricted == brute
    assert order == len(brute)


def test_dot_output():
    text = cycle_graph(3).to_dot()
    assert text.startswith("graph G {") and "0 -- 1" in text
    cd = ColoredDigraph(2, [(0, 1, 1), (1, 0, 0)])
    dot = cd.to_dot()
    assert "0 -> 1" in dot and 'color="red"' in dot
