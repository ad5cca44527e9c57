import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galvin.constructions import construct_bipartite, construct_clique
from galvin.errors import KernelNotFound, PreconditionError
from galvin.generators import random_bipartite
from galvin.graph import EdgeColouring, Side, VertexPartition, complete_graph, cycle_graph
from galvin.listcolour import list_edge_colour, verify_list_colouring
from galvin.orientation import check_clique_kernels, galvin_orient


def _cyclic_triangle():
    g = cycle_graph(3)
    c = EdgeColouring(3, (1, 2, 3))
    for sides in itertools.product((Side.D, Side.U), repeat=3):
        o = galvin_orient(g, VertexPartition(sides), c)
        if check_clique_kernels(g, o):
            return g, o
    raise AssertionError("no cyclic orientation of the triangle")


def test_clique_witness_colours_from_lists():
    g = complete_graph(5)
    w = construct_clique(5)
    o = galvin_orient(g, w.partition, w.colouring)
    rng = random.Random(1)
    for _ in range(50):
        lists = [rng.sample(range(1, 15), w.k) for _ in range(g.edge_count)]
        got = list_edge_colour(g, o, lists)
        assert verify_list_colouring(g, lists, got)


def test_identical_lists_reproduce_a_proper_colouring():
    g = complete_graph(4)
    w = construct_clique(4)
    o = galvin_orient(g, w.partition, w.colouring)
    got = list_edge_colour(g, o, [range(1, 5)] * g.edge_count)
    assert verify_list_colouring(g, [range(1, 5)] * g.edge_count, got)


def test_mapping_lists_accepted():
    g = cycle_graph(4)
    w = construct_bipartite(g)
    o = galvin_orient(g, w.partition, w.colouring)
    lists = {e: {10, 20} for e in range(4)}
    got = list_edge_colour(g, o, lists)
    assert verify_list_colouring(g, lists, got)


def test_preconditions():
    g = cycle_graph(4)
    w = construct_bipartite(g)
    o = galvin_orient(g, w.partition, w.colouring)
    with pytest.raises(PreconditionError):
        list_edge_colour(g, o, [[1, 2]] * 3)
    with pytest.raises(PreconditionError):
        list_edge_colour(g, o, [[1]] * 4)
    with pytest.raises(PreconditionError):
        list_edge_colour(g, o, [[1, 2]] * 4, k=1)
    with pytest.raises(PreconditionError):
        list_edge_colour(g, o, [[0, 1]] * 4)


def test_missing_kernel_is_reported():
    g, o = _cyclic_triangle()
    with pytest.raises(KernelNotFound) as info:
        list_edge_colour(g, o, [[1, 2, 3]] * 3, k=3)
    assert info.value.nodes == frozenset({0, 1, 2})


def test_verify_list_colouring_rejects():
    g = cycle_graph(3)
    lists = [[1, 2, 3]] * 3
    assert verify_list_colouring(g, lists, [1, 2, 3])
    assert not verify_list_colouring(g, lists, [1, 1, 2])
    assert not verify_list_colouring(g, lists, [1, 2, 4])
    assert not verify_list_colouring(g, lists, [1, 2])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 16), st.integers(0, 10**6))
def test_bipartite_lists_of_size_delta(a, b, m, seed):
    rng = random.Random(seed)
    g = random_bipartite(rng, a, b, min(m, a * b))
    w = construct_bipartite(g)
    o = galvin_orient(g, w.partition, w.colouring)
    lists = [rng.sample(range(1, 3 * w.k + 1), w.k) for _ in range(g.edge_count)]
    got = list_edge_colour(g, o, lists, k=w.k)
    assert verify_list_colouring(g, lists, got)
