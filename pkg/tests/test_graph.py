import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eic.errors import SizeError
from eic.graph import (
    EdgeKind,
    ViewMode,
    build_problem_graph,
    check_separation_condition,
    chromatic_number,
    clique_cover,
    clique_number,
    from_edges,
    is_proper_coloring,
    maximal_cliques,
    sender_neighborhood,
    undirected_view,
)
from eic.instances import FIG2A_BLOCKS, FIG2A_NODES, clique3, cycle3, fig2a, swap2
from eic.problem import EicProblem, from_side_info_digraph
from eic.gf2 import bits

from oracles import brute_chromatic, brute_max_clique, brute_maximal_cliques
from strategies import digraphs, problems


def _pairs(h):
    return {(v, w) for v in range(h.n) for w in bits(h.adj[v])}


def test_swap2_graph():
    g = build_problem_graph(swap2())
    assert g.size == 2
    assert g.edge_kind(0, 1) is EdgeKind.HAS and g.edge_kind(1, 0) is EdgeKind.HAS


def test_cycle3_follows_has_edges():
    g = build_problem_graph(cycle3())
    # node i holds block i+1, so v_i -> v_(i+1)
    assert sorted((v, w) for v, w, _ in g.edges()) == [(0, 1), (1, 2), (2, 0)]


def test_fig2a_edges():
    g = build_problem_graph(fig2a())
    y_d4, u_d2, w_d1, x_d3 = (g.index(p) for p in [(3, 3), (0, 1), (1, 0), (2, 2)])
    for target in (u_d2, w_d1, x_d3):
        assert g.has_edge(y_d4, target)
    assert g.has_edge(u_d2, y_d4)


def test_fig2a_sender_neighborhoods():
    p = fig2a()
    g = build_problem_graph(p)
    as_pairs = lambda s: {tuple(g.vertices[v]) for v in bits(s)}  # noqa: E731
    assert as_pairs(sender_neighborhood(g, p, 3)) == {(0, 1), (1, 0), (2, 2)}
    # u holds D1 and D4, so it can serve w's request for D1 as well as y's for D4
    assert as_pairs(sender_neighborhood(g, p, 0)) == {(1, 0), (3, 3)}
    g2 = build_problem_graph(swap2())
    assert [tuple(g2.vertices[v]) for v in bits(sender_neighborhood(g2, swap2(), 0))] == [(1, 1)]


def test_sender_neighborhood_inside_out_neighbourhoods():
    p = fig2a()
    g = build_problem_graph(p)
    for u in range(p.n):
        hood = sender_neighborhood(g, p, u)
        for v, pair in enumerate(g.vertices):
            if pair.node == u:
                assert hood & ~g.out(v) == 0


def test_same_block_edges_are_symmetric():
    p = EicProblem.from_strings(has=["001", "001", "110"], needs=["100", "110", "001"])
    g = build_problem_graph(p)
    same = [(v, w) for v, w, k in g.edges() if k is EdgeKind.SAME_BLOCK]
    assert same and all((w, v) in same for v, w in same)
    assert all(k is not EdgeKind.BOTH for _, _, k in g.edges())


def test_views():
    assert undirected_view(build_problem_graph(swap2()), ViewMode.MUTUAL).edge_count() == 1
    g3 = build_problem_graph(cycle3())
    assert undirected_view(g3, ViewMode.MUTUAL).edge_count() == 0
    assert undirected_view(g3, ViewMode.ANY).edge_count() == 3


def test_maximal_cliques_examples():
    assert maximal_cliques(from_edges(3, [(0, 1), (1, 2), (0, 2)])) == [frozenset({0, 1, 2})]
    assert maximal_cliques(from_edges(3, [(0, 1), (1, 2)])) == [frozenset({0, 1}), frozenset({1, 2})]
    h = from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert maximal_cliques(h) == [frozenset({0, 1, 2}), frozenset({3, 4})]
    assert maximal_cliques(from_edges(2, [])) == [frozenset({0}), frozenset({1})]


def test_chromatic_examples():
    assert chromatic_number(from_edges(3, [(0, 1), (1, 2), (0, 2)]))[0] == 3
    assert chromatic_number(from_edges(4, []))[0] == 1
    assert chromatic_number(from_edges(5, [(i, (i + 1) % 5) for i in range(5)]))[0] == 3


def test_clique_number_examples():
    assert clique_number(from_edges(3, [(0, 1), (1, 2), (0, 2)])) == 3
    assert clique_number(from_edges(3, [])) == 1
    assert clique_number(from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])) == 3


def test_size_limits():
    big = from_edges(25, [])
    with pytest.raises(SizeError):
        clique_number(big)
    with pytest.raises(SizeError):
        chromatic_number(from_edges(21, []))
    assert chromatic_number(big, "greedy")[0] == 1


def test_separation_condition_examples():
    c = check_separation_condition(build_problem_graph(clique3()))
    assert (c.holds, c.chi_any, c.chi_bar_mutual) == (True, 3, 1)
    c = check_separation_condition(build_problem_graph(cycle3()))
    assert (c.holds, c.chi_any, c.chi_bar_mutual) == (False, 3, 3)
    single = EicProblem.from_strings(has=["0", "1"], needs=["1", "0"])
    assert check_separation_condition(build_problem_graph(single)).holds


def test_dot_export():
    dot = build_problem_graph(fig2a()).to_dot(FIG2A_NODES, FIG2A_BLOCKS)
    assert dot.startswith("digraph problem {")
    assert 'label="u:D2"' in dot and 'label="y:D4"' in dot
    shared = EicProblem.from_strings(has=["01", "01", "10"], needs=["10", "10", "01"])
    dot = build_problem_graph(shared).to_dot()
    assert dot.count("style=dashed") == 1


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return from_edges(n, sorted(chosen))


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_cliques_and_colorings_against_brute_force(h):
    adj = _pairs(h)
    cliques = maximal_cliques(h)
    assert set(cliques) == brute_maximal_cliques(h.n, adj)
    assert clique_number(h) == brute_max_clique(h.n, adj)
    k, col = chromatic_number(h)
    assert is_proper_coloring(h, col) and max(col, default=-1) + 1 == k
    assert k == brute_chromatic(h.n, adj)
    kg, colg = chromatic_number(h, "greedy")
    assert is_proper_coloring(h, colg) and kg >= k
    assert clique_number(h) <= k
    cover = clique_cover(h)
    assert sorted(v for c in cover for v in c) == list(range(h.n))


@settings(max_examples=150, deadline=None)
@given(digraphs(max_k=6))
def test_single_unicast_graph_is_the_digraph(g):
    k, edges = g
    pg = build_problem_graph(from_side_info_digraph(k, edges))
    assert [tuple(v) for v in pg.vertices] == [(i, i) for i in range(k)]
    assert sorted((v, w) for v, w, _ in pg.edges()) == sorted(edges)
    assert all(kind is EdgeKind.HAS for _, _, kind in pg.edges())


@settings(max_examples=150, deadline=None)
@given(problems(max_n=4, max_m=4))
def test_edges_follow_the_definition(p):
    g = build_problem_graph(p)
    for v, (u, a) in enumerate(g.vertices):
        assert not g.has_edge(v, v)
        for w, (x, b) in enumerate(g.vertices):
            if v != w:
                assert g.has_edge(v, w) == (bool((p.has.rows[u] >> b) & 1) or a == b)
