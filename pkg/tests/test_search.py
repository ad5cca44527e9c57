import itertools
import random
from pathlib import Path

import pytest

from galvin.blocks import BlockKind, classify_blocks
from galvin.constructions import petersen
from galvin.errors import PreconditionError
from galvin.formats import graph_from_json, load_json
from galvin.generators import random_multigraph
from galvin.graph import (
    Side,
    VertexPartition,
    build_graph,
    chromatic_index,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    has_long_odd_cycle,
    max_degree,
    path_graph,
    proper_colourings,
    star_graph,
)
from galvin.orientation import (
    check_outdegree,
    find_kernel,
    galvin_orient,
    is_kernel_perfect_bruteforce,
    verify_orientation,
)
from galvin.search import Status, min_k, partition_at, partition_count, refute_delta_witness, search_proper


def naive_exists(g, k) -> bool:
    """All partitions times all colourings, judged by outdegree plus brute-force kernels."""
    for sides in itertools.product((Side.D, Side.U), repeat=g.vertex_count):
        p = VertexPartition(sides)
        for c in proper_colourings(g, k):
            o = galvin_orient(g, p, c)
            if not check_outdegree(o, k) and is_kernel_perfect_bruteforce(o):
                return True
    return False


DIAMOND = build_graph(4, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)])
SMALL = [
    ("P3", path_graph(3), 2),
    ("K3", cycle_graph(3), 3),
    ("C4", cycle_graph(4), 2),
    ("C5", cycle_graph(5), 3),
    ("star3", star_graph(3), 3),
    ("K4", complete_graph(4), 3),
    ("K4", complete_graph(4), 4),
    ("diamond", DIAMOND, 3),
    ("diamond", DIAMOND, 4),
    ("digon+tail", build_graph(3, [(0, 1), (0, 1), (1, 2)]), 3),
    ("triple", build_graph(3, [(0, 1), (0, 1), (1, 2), (2, 0)]), 4),
]


@pytest.mark.parametrize("name, g, k", SMALL, ids=[f"{n}@{k}" for n, _, k in SMALL])
def test_search_matches_naive_enumeration(name, g, k):
    expected = naive_exists(g, k)
    for sym in (True, False):
        res = search_proper(g, k, use_symmetry=sym)
        assert res.found == expected
        if res.found:
            assert res.witness.verify(g).verdict is True


def test_symmetry_reduction_is_sound():
    rng = random.Random(4)
    for _ in range(40):
        g = random_multigraph(rng, rng.randint(2, 5), rng.randint(1, 7))
        k = max(chromatic_index(g)[0], 1)
        for kk in (k, k + 1):
            a = search_proper(g, kk, use_symmetry=True)
            b = search_proper(g, kk, use_symmetry=False)
            assert a.status == b.status
            assert b.examined_partitions <= 2 * partition_count(g)


def test_trivial_refutations_do_no_work():
    for g, k in ((complete_graph(4), 2), (cycle_graph(3), 2)):
        res = search_proper(g, k)
        assert res.status is Status.REFUTED
        assert res.examined_partitions == res.examined_colourings == 0


def test_budget_exhaustion():
    res = search_proper(petersen(), 4, budget=1000)
    assert res.status is Status.BUDGET_EXHAUSTED
    assert res.witness is None
    assert res.to_json()["status"] == "budget_exhausted"


def test_parallel_search_returns_same_witness():
    g = complete_graph(4)
    one = search_proper(g, 4, jobs=1)
    two = search_proper(g, 4, jobs=2)
    assert one.status is two.status is Status.FOUND
    assert one.partition_index == two.partition_index
    assert one.witness.to_json() == two.witness.to_json()


def test_partition_indexing():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])  # endpoints 0 and 3 are irrelevant
    assert partition_count(g) == 2
    assert partition_count(g, use_symmetry=False) == 4
    assert partition_at(g, 0) == (Side.D,) * 4
    assert partition_at(g, 1) == (Side.D, Side.D, Side.U, Side.D)
    assert partition_count(path_graph(2)) == 1


def test_min_k():
    res = min_k(complete_bipartite(2, 3), 5)
    assert res.status is Status.FOUND and res.k == 3
    res = min_k(complete_graph(4), 3)
    assert res.status is Status.REFUTED and res.refuted_below == 4
    with pytest.raises(PreconditionError):
        min_k(complete_graph(4), 2)


def test_refute_delta_witness_preconditions():
    with pytest.raises(PreconditionError):
        refute_delta_witness(complete_graph(4))
    with pytest.raises(PreconditionError):
        refute_delta_witness(build_graph(3, [(0, 1), (0, 1), (0, 2), (0, 2)]))
    # K5 has maximum degree 4 and no proper orientation at k = 4
    assert refute_delta_witness(complete_graph(5)).status is Status.REFUTED


def test_monotonicity_probe(capsys):
    # reported, not asserted: whether Found at k implies Found at k + 1
    rows = []
    for name, g in (("K3", cycle_graph(3)), ("C5", cycle_graph(5)), ("K4", complete_graph(4)),
                    ("K2,3", complete_bipartite(2, 3)), ("diamond", DIAMOND)):
        chi = chromatic_index(g)[0]
        found = [search_proper(g, k).found for k in range(chi, chi + 3)]
        monotone = all(a <= b for a, b in zip(found, found[1:]))
        rows.append(f"{name}: chi'={chi} found={found} monotone={monotone}")
    with capsys.disabled():
        print("\nmonotonicity probe:\n  " + "\n  ".join(rows))


def test_k5_refutation_covers_all_partitions():
    g = complete_graph(5)
    res = search_proper(g, 5)
    assert res.status is Status.REFUTED
    assert res.examined_partitions == partition_count(g) == 16
    assert max_degree(g) == 4


FIXTURES = Path(__file__).parent / "fixtures"


def test_frozen_delta4_refutation_graph():
    # two type-T blocks with three spikes each, glued at a spike
    g = graph_from_json(load_json(FIXTURES / "delta4_refutation.json"))
    dec = classify_blocks(g)
    assert [b.kind for b in dec] == [BlockKind.TYPE_T, BlockKind.TYPE_T]
    assert g.is_simple and max_degree(g) == 4 and not has_long_odd_cycle(g)
    assert refute_delta_witness(g).status is Status.REFUTED
    assert search_proper(g, 4, use_symmetry=False).status is Status.REFUTED
    assert search_proper(g, 5).status is Status.FOUND

    # independent of the search's pruning: every outdegree-feasible pair has a
    # clique or odd cycle without a kernel, confirmed by a direct kernel search
    colourings = list(proper_colourings(g, 4))
    feasible = 0
    for sides in itertools.product((Side.D, Side.U), repeat=g.vertex_count):
        p = VertexPartition(sides)
        for c in colourings:
            o = galvin_orient(g, p, c)
            if check_outdegree(o, 4):
                continue
            feasible += 1
            report = verify_orientation(g, o, 4, first_only=True)
            assert report.verdict is False
            cert = (report.kernelless_cliques or report.bad_odd_cycles)[0]
            assert find_kernel(cert, o) is None
    assert feasible > 0
