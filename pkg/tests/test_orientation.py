import itertools

import pytest
from hypothesis import given, settings

from galvin.constructions import construct_clique
from galvin.errors import ScaleLimitError
from galvin.graph import EdgeColouring, Side, VertexPartition, build_graph, complete_graph, cycle_graph, path_graph
from galvin.orientation import (
    Digraph,
    check_clique_kernels,
    check_odd_cycles,
    check_outdegree,
    clique_has_kernels,
    find_kernel,
    first_kernelless_subset,
    galvin_orient,
    is_kernel_perfect_bruteforce,
    line_cliques,
    odd_cycle_search,
    swap_transform,
    verify_orientation,
    verify_proper,
)

from strategies import coloured_graphs


def _sides(s: str) -> VertexPartition:
    return VertexPartition.from_sides(s)


def test_orientation_rule_at_d_and_u():
    g = path_graph(3)  # e0 = 0-1, e1 = 1-2
    c = EdgeColouring(2, (1, 2))
    assert galvin_orient(g, _sides("DDD"), c).arc_set() == [(1, 0, 1)]
    assert galvin_orient(g, _sides("DUD"), c).arc_set() == [(0, 1, 1)]


def test_parallel_edges_give_one_arc_per_shared_vertex():
    g = build_graph(2, [(0, 1), (0, 1)])
    c = EdgeColouring(2, (1, 2))
    digon = galvin_orient(g, _sides("DU"), c)
    assert sorted((a.tail, a.head) for a in digon.arcs) == [(0, 1), (1, 0)]
    assert digon.oneway_mask == (0, 0)
    double = galvin_orient(g, _sides("DD"), c)
    assert sorted(double.arcs) == [(1, 0, 0), (1, 0, 1)]
    assert double.outdegree == (0, 2)


def test_outdegree_check():
    g = complete_graph(4)
    w = construct_clique(4)
    o = galvin_orient(g, w.partition, w.colouring)
    assert check_outdegree(o, 4) == []
    assert check_outdegree(o, 1) == [(e, d) for e, d in enumerate(o.outdegree) if d > 0]


def test_find_kernel_basic():
    path = Digraph.from_pairs(3, [(0, 1), (1, 2)])
    assert find_kernel(range(3), path) == frozenset({0, 2})
    tri = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    assert find_kernel(range(3), tri) is None
    assert find_kernel([0, 1], tri) == frozenset({1})
    assert find_kernel([], tri) == frozenset()
    # a digon has two kernels; the least is returned
    digon = Digraph.from_pairs(2, [(0, 1), (1, 0)])
    assert find_kernel(range(2), digon) == frozenset({0})


def test_kernel_search_scale_limit():
    big = Digraph.from_pairs(30, [])
    with pytest.raises(ScaleLimitError):
        find_kernel(range(30), big)
    with pytest.raises(ScaleLimitError):
        is_kernel_perfect_bruteforce(Digraph.from_pairs(17, []))


def test_bruteforce_on_directed_cycles():
    c3 = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    c4 = Digraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    c5 = Digraph.from_pairs(5, [(i, (i + 1) % 5) for i in range(5)])
    assert not is_kernel_perfect_bruteforce(c3)
    assert is_kernel_perfect_bruteforce(c4)
    assert first_kernelless_subset(c5) == frozenset(range(5))
    # a chord rescues the 5-cycle's own kernel but the triangle it closes has none
    chorded = Digraph.from_pairs(5, [(i, (i + 1) % 5) for i in range(5)] + [(0, 2)])
    assert check_odd_cycles(c5) == [(0, 1, 2, 3, 4)]
    assert check_odd_cycles(chorded) == []


def test_pseudochord_makes_odd_cycle_harmless():
    # 0->1->2->0 with 1->0 added: the digon is a pseudochord
    d = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
    assert check_odd_cycles(d) == []
    assert is_kernel_perfect_bruteforce(d)


def test_line_cliques_cover_stars_and_triangles():
    cl = line_cliques(complete_graph(4))
    assert len(cl) == 4 + 4
    assert all(len(c) == 3 for c in cl)
    assert line_cliques(path_graph(2)) == []


def test_directed_triangle_from_some_side_assignment():
    g = cycle_graph(3)
    c = EdgeColouring(3, (1, 2, 3))
    bad = []
    for sides in itertools.product((Side.D, Side.U), repeat=3):
        o = galvin_orient(g, VertexPartition(sides), c)
        has_bad = bool(check_clique_kernels(g, o))
        assert has_bad == (not is_kernel_perfect_bruteforce(o))
        if has_bad:
            bad.append(sides)
    assert bad, "some side assignment must orient the triangle cyclically"
    o = galvin_orient(g, VertexPartition(bad[0]), c)
    (cyc,) = check_clique_kernels(g, o)
    assert sorted(cyc) == [0, 1, 2]
    assert not clique_has_kernels(range(3), o)


def test_odd_cycle_budget_marks_report_unverified():
    w = construct_clique(6)
    g = complete_graph(6)
    full = verify_proper(g, w.partition, w.colouring)
    assert full.complete and full.verdict is True
    assert full.cycle_steps > 1
    report = verify_proper(g, w.partition, w.colouring, budget=1)
    assert not report.complete
    assert report.verdict is None
    assert report.to_json()["verdict"] is None


def test_report_lists_outdegree_violations():
    w = construct_clique(5)
    rep = verify_proper(complete_graph(5), w.partition, w.colouring, k=3)
    assert rep.outdegree_violations and rep.verdict is False


@settings(max_examples=300, deadline=None)
@given(coloured_graphs(max_vertices=6, max_edges=8))
def test_structural_check_matches_bruteforce(data):
    g, p, c = data
    o = galvin_orient(g, p, c)
    assert verify_orientation(g, o, c.k).kernel_perfect == is_kernel_perfect_bruteforce(o)


@settings(max_examples=200, deadline=None)
@given(coloured_graphs(max_vertices=7, max_edges=12))
def test_swap_gives_identical_orientation(data):
    g, p, c = data
    sp, sc = swap_transform(p, c)
    assert galvin_orient(g, p, c).arc_set() == galvin_orient(g, sp, sc).arc_set()


@settings(max_examples=200, deadline=None)
@given(coloured_graphs(max_vertices=7, max_edges=12))
def test_outdegree_matches_rule(data):
    g, p, c = data
    o = galvin_orient(g, p, c)
    for e, (a, b) in enumerate(g.edges):
        expect = 0
        for v in (a, b):
            for f in g.incident[v]:
                if f == e:
                    continue
                lower = c[f] < c[e]
                expect += lower if p[v] is Side.D else not lower
        assert o.outdegree[e] == expect


@settings(max_examples=200, deadline=None)
@given(coloured_graphs(max_vertices=7, max_edges=12))
def test_reported_odd_cycles_are_genuinely_bad(data):
    g, p, c = data
    o = galvin_orient(g, p, c)
    arcs = {(a.tail, a.head) for a in o.arcs}
    cycles, _ = odd_cycle_search(o, budget=None)
    for cyc in cycles:
        n = len(cyc)
        assert n % 2 == 1 and n >= 3
        for i in range(n):
            u, v = cyc[i], cyc[(i + 1) % n]
            assert (u, v) in arcs and (v, u) not in arcs
        # no arc at all between non-consecutive nodes
        for i, j in itertools.combinations(range(n), 2):
            if (j - i) % n not in (1, n - 1):
                assert (cyc[i], cyc[j]) not in arcs and (cyc[j], cyc[i]) not in arcs


@settings(max_examples=200, deadline=None)
@given(coloured_graphs(max_vertices=6, max_edges=10))
def test_find_kernel_returns_a_kernel(data):
    g, p, c = data
    o = galvin_orient(g, p, c)
    nodes = set(range(0, g.edge_count, 2)) | {g.edge_count - 1} if g.edge_count else set()
    ker = find_kernel(nodes, o)
    arcs = {(a.tail, a.head) for a in o.arcs}
    if ker is None:
        # a brute force over subsets of ``nodes`` agrees
        for r in range(len(nodes) + 1):
            for cand in itertools.combinations(sorted(nodes), r):
                s = set(cand)
                indep = not any((x, y) in arcs for x in s for y in s)
                absorbing = all(any((v, x) in arcs for x in s) for v in nodes - s)
                assert not (indep and absorbing)
        return
    assert ker <= nodes
    assert not any((x, y) in arcs for x in ker for y in ker)
    assert all(any((v, x) in arcs for x in ker) for v in nodes - ker)
