"""Explicit witnesses ``(partition, colouring, k)`` for proper Galvin orientations.

* bipartite graphs, with respect to the maximum degree;
* a bipartite graph plus one (multi-)edge, with respect to its chromatic index;
* complete graphs ``K_n``, with respect to :func:`f_clique` colours;
* simple graphs without odd cycles of length 5 or more, with respect to
  ``Delta + 1``, built one block at a time.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .blocks import Block, BlockDecomposition, BlockKind, classify_blocks
from .errors import CaseExhaustion, ConstructionInvariantError, PreconditionError
from .graph import (
    EdgeColouring,
    MultiGraph,
    Side,
    VertexPartition,
    bipartite_edge_colouring,
    bipartition,
    build_graph,
    chromatic_index,
    complete_graph,
    has_long_odd_cycle,
    max_degree,
)
from .orientation import PropernessReport, verify_proper

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    partition: VertexPartition
    colouring: EdgeColouring
    k: int

    def verify(self, g: MultiGraph, **kwargs) -> PropernessReport:
        return verify_proper(g, self.partition, self.colouring, self.k, **kwargs)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "sides": [s.value for s in self.partition.sides],
            "colours": list(self.colouring.colours),
        }


def is_low(c: int, k: int) -> bool:
    return c <= (k + 1) // 2


def is_high(c: int, k: int) -> bool:
    return c >= (k + 2) // 2


# --- bipartite and bipartite plus an edge ------------------------------------


def construct_bipartite(g: MultiGraph) -> Witness:
    sides = bipartition(g)
    if sides is None:
        raise PreconditionError("graph is not bipartite")
    delta = max_degree(g)
    first, _ = sides
    p = VertexPartition(tuple(Side.D if v in first else Side.U for v in g.vertices()))
    return Witness(p, bipartite_edge_colouring(g, delta), delta)


def _parallel_classes(g: MultiGraph) -> list[list[int]]:
    classes: dict[tuple[int, int], list[int]] = {}
    for e, (a, b) in enumerate(g.edges):
        classes.setdefault((min(a, b), max(a, b)), []).append(e)
    return [classes[key] for key in sorted(classes)]


def _two_colour(g: MultiGraph, skip: set[int]) -> list[int] | None:
    col = [-1] * g.vertex_count
    for root in g.vertices():
        if col[root] != -1:
            continue
        col[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for e in g.incident[v]:
                if e in skip:
                    continue
                w = g.other_end(e, v)
                if col[w] == -1:
                    col[w] = 1 - col[v]
                    stack.append(w)
                elif col[w] == col[v]:
                    return None
    return col


def construct_bip_plus_edge(g: MultiGraph) -> Witness:
    """Witness at ``k = chi'(g)`` for a bipartite graph plus one parallel class.

    ``D`` is the side holding the added class, so ``G[U]`` is independent and
    ``G[D]`` holds only that class, which takes colours ``1..multiplicity``.
    """
    if bipartition(g) is not None:
        return construct_bipartite(g)
    for cls in _parallel_classes(g):
        col = _two_colour(g, set(cls))
        if col is None:
            continue
        a, b = g.edges[cls[0]]
        if col[a] != col[b]:  # cannot happen for a non-bipartite g
            continue
        break
    else:
        raise PreconditionError("no parallel class whose removal leaves a bipartite graph")
    k, base = chromatic_index(g)
    mult = len(cls)
    if mult > (k + 1) // 2:
        raise PreconditionError(f"multiplicity {mult} exceeds floor((chi'+1)/2) = {(k + 1) // 2}")
    perm: dict[int, int] = {}
    for i, e in enumerate(sorted(cls)):
        perm[base[e]] = i + 1
    rest = iter(c for c in range(1, k + 1) if c not in perm.values())
    for c in range(1, k + 1):
        if c not in perm:
            perm[c] = next(rest)
    colouring = EdgeColouring(k, tuple(perm[c] for c in base.colours))
    d_side = col[a]
    p = VertexPartition(tuple(Side.D if col[v] == d_side else Side.U for v in g.vertices()))
    return Witness(p, colouring, k)


# --- cliques -----------------------------------------------------------------


def f_clique(n: int) -> int:
    """Colour count of the three-band clique construction for ``K_n``."""
    if n < 2:
        raise PreconditionError("f_clique needs n >= 2")
    return 3 * (n - 1) // 2 + (0, 1, 2, 1)[n % 4]


def clique_chromatic_index(n: int) -> int:
    if n <= 1:
        return 0
    return n - 1 if n % 2 == 0 else n


def circle_colouring(vertices: list[int]) -> dict[frozenset[int], int]:
    """Round-robin edge colouring of the clique on ``vertices`` (colours from 1).

    An odd clique gets a dummy vertex; each round is one colour.
    """
    n = len(vertices)
    if n <= 1:
        return {}
    players = list(vertices) + ([None] if n % 2 else [])
    size = len(players)
    fixed = players[-1]
    ring = players[:-1]
    out: dict[frozenset[int], int] = {}
    for r in range(size - 1):
        pairs = [(ring[r], fixed)]
        for i in range(1, size // 2):
            pairs.append((ring[(r + i) % (size - 1)], ring[(r - i) % (size - 1)]))
        for a, b in pairs:
            if a is not None and b is not None:
                out[frozenset((a, b))] = r + 1
    return out


def construct_clique(n: int) -> Witness:
    """Three colour bands on ``complete_graph(n)``: ``G[D]`` low, ``G[D,U]``, ``G[U]`` high.

    ``D`` is the first ``n // 2`` vertices.  The top band is placed so that it
    ends at ``k = f_clique(n)``; for ``n >= 4`` the bands are contiguous.
    """
    k = f_clique(n)
    g = complete_graph(n)
    d_verts = list(range(n // 2))
    u_verts = list(range(n // 2, n))
    low_band = circle_colouring(d_verts)
    high_band = circle_colouring(u_verts)
    mid_offset = clique_chromatic_index(len(d_verts))
    top_offset = k - clique_chromatic_index(len(u_verts))
    colours = []
    for a, b in g.edges:
        key = frozenset((a, b))
        if key in low_band:
            colours.append(low_band[key])
        elif key in high_band:
            colours.append(top_offset + high_band[key])
        else:
            i, j = (a, b) if a < b else (b, a)
            colours.append(mid_offset + (i + (j - len(d_verts))) % len(u_verts) + 1)
    sides = tuple(Side.D if v < n // 2 else Side.U for v in range(n))
    return Witness(VertexPartition(sides), EdgeColouring(k, tuple(colours)), k)


def petersen() -> MultiGraph:
    """Outer 5-cycle ``0..4``, inner pentagram ``5..9``, spokes ``i -- i+5``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


# --- graphs without long odd cycles -------------------------------------------


class _State:
    """Mutable colouring/partition state, optionally viewed colour-reversed.

    Block cases are written for an anchor in ``D``; an anchor in ``U`` is the
    same case under swapping ``U``/``D`` and reversing colours, so the view
    flips colours and sides on the way in and out.
    """

    def __init__(self, g: MultiGraph, k: int) -> None:
        self.g = g
        self.k = k
        self.colour = [0] * g.edge_count
        self.side: dict[int, Side] = {}
        self.flip = False

    def _c(self, c: int) -> int:
        return self.k + 1 - c if self.flip else c

    def _s(self, s: Side) -> Side:
        return s.swapped() if self.flip else s

    def set_colour(self, e: int, c: int) -> None:
        if self.colour[e]:
            raise ConstructionInvariantError(f"edge {e} coloured twice")
        self.colour[e] = self._c(c)

    def get_colour(self, e: int) -> int:
        c = self.colour[e]
        return self._c(c) if c else 0

    def set_side(self, v: int, s: Side) -> None:
        self.side[v] = self._s(s)

    def get_side(self, v: int) -> Side:
        return self._s(self.side[v])

    def used_at(self, v: int) -> set[int]:
        return {self.get_colour(e) for e in self.g.incident[v] if self.colour[e]}

    def free_at(self, v: int) -> list[int]:
        used = self.used_at(v)
        return [c for c in range(1, self.k + 1) if c not in used]


def _fill(state: _State, edge_ids: Iterable[int]) -> None:
    """Properly colour the still-uncoloured edges among ``edge_ids``, lowest colours first."""
    g, k = state.g, state.k
    todo = [e for e in sorted(edge_ids) if not state.colour[e]]
    at = {v: state.used_at(v) for e in todo for v in g.edges[e]}
    chosen: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == len(todo):
            return True
        e = todo[i]
        a, b = g.edges[e]
        for c in range(1, k + 1):
            if c in at[a] or c in at[b]:
                continue
            chosen[e] = c
            at[a].add(c)
            at[b].add(c)
            if rec(i + 1):
                return True
            at[a].discard(c)
            at[b].discard(c)
        return False

    if not rec(0):
        raise CaseExhaustion(f"cannot complete colouring on edges {todo}")
    for e, c in chosen.items():
        state.set_colour(e, c)


def _k4_case(state: _State, block: Block, b: int) -> str:
    g, k = state.g, state.k
    free = state.free_at(b)
    low = [c for c in free if is_low(c, k)]
    high = [c for c in free if is_high(c, k)]
    x1, x2, x3 = sorted(block.vertices - {b})
    e = g.edge_id
    if len(low) >= 3:
        a1, a2, a3 = low[:3]
        for edge, c in ((e(b, x1), a1), (e(x2, x3), a1), (e(b, x2), a2), (e(x1, x3), a2),
                        (e(b, x3), a3), (e(x1, x2), a3)):
            state.set_colour(edge, c)
        for x in (x1, x2, x3):
            state.set_side(x, Side.D)
        return "K4-low"
    if len(high) >= 4:
        alpha, beta, gamma, tau = high[:4]
        xa, xb, xg = x1, x2, x3
        for edge, c in ((e(b, xa), alpha), (e(b, xb), beta), (e(b, xg), gamma),
                        (e(xa, xg), tau), (e(xa, xb), gamma), (e(xb, xg), alpha)):
            state.set_colour(edge, c)
        for x in (x1, x2, x3):
            state.set_side(x, Side.U)
        return "K4-high"
    if len(free) < 4:
        raise CaseExhaustion(f"K4 block at {b}: only {len(free)} free colours")
    alpha, beta, gamma, tau = free[0], free[1], free[-2], free[-1]
    if not (is_low(alpha, k) and is_high(gamma, k) and is_high(tau, k)):
        raise CaseExhaustion(f"K4 block at {b}: free colours {free} fit no case")
    xa, xb, xg = x1, x2, x3
    for edge, c in ((e(b, xa), alpha), (e(b, xb), beta), (e(b, xg), gamma),
                    (e(xb, xg), tau), (e(xa, xb), gamma), (e(xa, xg), beta)):
        state.set_colour(edge, c)
    state.set_side(xb, Side.U)
    state.set_side(xg, Side.U)
    state.set_side(xa, Side.D)
    return "K4-mixed"


def _type_t_case(state: _State, block: Block, b: int) -> str:
    g, k = state.g, state.k
    assert block.spine is not None
    v, w = sorted(g.edges[block.spine])
    spikes = sorted(block.spikes)
    free = state.free_at(b)
    e = g.edge_id
    if b in block.spikes:
        if len(free) < 3:
            raise CaseExhaustion(f"type T block at spike {b}: only {len(free)} free colours")
        alpha, beta = free[0], free[1]
        state.set_colour(e(b, v), alpha)
        state.set_colour(e(b, w), beta)
        state.set_colour(block.spine, k)
        state.set_side(v, Side.U)
        state.set_side(w, Side.U)
        for x in spikes:
            if x != b:
                state.set_side(x, Side.D)
        _fill(state, block.edges)
        return "T-spike"
    other = w if b == v else v
    p = len(spikes)
    if len(free) < p + 2:
        raise CaseExhaustion(f"type T block at spine end {b}: only {len(free)} free colours")
    if is_low(free[0], k):
        spine_colour = free[0]
        rest = free[1:]
        at_b = rest[:p]
        state.set_colour(block.spine, spine_colour)
        state.set_side(other, Side.D)
        for x, c in zip(spikes, at_b):
            state.set_colour(e(b, x), c)
            state.set_side(x, Side.U)
        if p == 1:
            state.set_colour(e(spikes[0], other), rest[1])
        else:
            _permute_far_edges(state, block, b, other, spikes, at_b)
        return "T-spine-low"
    alphas = free[: p + 2]
    state.set_colour(block.spine, alphas[-1])
    state.set_side(other, Side.U)
    for i, x in enumerate(spikes):
        state.set_colour(e(b, x), alphas[i + 1])
        state.set_colour(e(x, other), alphas[i])
        state.set_side(x, Side.U)
    return "T-spine-high"


def _permute_far_edges(
    state: _State, block: Block, b: int, other: int, spikes: list[int], at_b: list[int]
) -> None:
    """Colour each spike--``other`` edge with another spike's colour at ``b``.

    The cyclic shift is a derangement, so it is always proper; the exhaustive
    fallback only runs if the block check rejects it.
    """
    g = state.g
    p = len(spikes)
    far = [g.edge_id(x, other) for x in spikes]
    shifts = [tuple(at_b[(i + 1) % p] for i in range(p))]
    shifts += [perm for perm in itertools.permutations(at_b) if perm != shifts[0]]
    for attempt, perm in enumerate(shifts):
        if any(perm[i] == at_b[i] for i in range(p)):
            continue
        for f, c in zip(far, perm):
            state.colour[f] = 0
            state.set_colour(f, c)
        if not _block_problems(state, block):
            if attempt:
                log.warning("type T block at %d: cyclic shift rejected, used permutation %s", b, perm)
            return
    raise CaseExhaustion(f"type T block at {b}: no permutation of {at_b} works")


def _bipartite_case(state: _State, block: Block, b: int) -> str:
    g, k = state.g, state.k
    sub = g.subgraph(block.edges)
    col = _two_colour(sub, set())
    assert col is not None
    mine = col[b]
    for x in block.vertices:
        if x != b:
            state.set_side(x, Side.D if col[x] == mine else Side.U)
    colouring = bipartite_edge_colouring(sub, k, {b: state.used_at(b)})
    for local, edge in enumerate(sorted(block.edges)):
        state.set_colour(edge, colouring[local])
    return "bipartite"


def _block_problems(state: _State, block: Block) -> list[str]:
    """Local properness conditions of a finished block, in real colours and sides."""
    g, k = state.g, state.k
    problems = []
    for edge in block.edges:
        a, b = g.edges[edge]
        c = state.colour[edge]
        if not c:
            problems.append(f"edge {edge} uncoloured")
            continue
        sa, sb = state.side.get(a), state.side.get(b)
        if sa is Side.D and sb is Side.D and not is_low(c, k):
            problems.append(f"edge {edge} joins two D vertices with high colour {c}")
        if sa is Side.U and sb is Side.U and not is_high(c, k):
            problems.append(f"edge {edge} joins two U vertices with low colour {c}")
    for v in block.vertices:
        cols = [state.colour[e] for e in g.incident[v] if state.colour[e]]
        if len(cols) != len(set(cols)):
            problems.append(f"colour repeated at vertex {v}")
    verts = sorted(block.vertices)
    nb = g.neighbours
    for a, b, c in itertools.combinations(verts, 3):
        if b in nb[a] and c in nb[a] and c in nb[b]:
            tri = sorted((state.colour[g.edge_id(x, y)], x, y) for x, y in ((a, b), (a, c), (b, c)))
            mono = [state.side.get(x) is state.side.get(y) for _, x, y in tri]
            if not (mono[0] or mono[2]):
                problems.append(f"triangle {a},{b},{c} is directed in the line graph")
    return problems


_CASES = {
    BlockKind.BIPARTITE: _bipartite_case,
    BlockKind.FOUR_CLIQUE: _k4_case,
    BlockKind.TYPE_T: _type_t_case,
}


def construct_no_long_odd(
    g: MultiGraph,
    blocks: BlockDecomposition | None = None,
    trace: list[tuple[int, str]] | None = None,
) -> Witness:
    """Witness at ``k = Delta + 1`` for a simple graph with no odd cycle of length >= 5.

    Blocks are taken along the block-cut tree from the block holding the lowest
    vertex of each component, so each new block meets the processed part in a
    single anchor vertex whose side is already fixed.  ``trace`` receives the
    ``(anchor, case)`` label of every block processed.
    """
    if not g.is_simple:
        raise PreconditionError("graph must be simple")
    if has_long_odd_cycle(g):
        raise PreconditionError("graph has an odd cycle of length 5 or more")
    if blocks is None:
        blocks = classify_blocks(g)
    if blocks.unclassified:
        raise PreconditionError(f"unclassified block {sorted(blocks.unclassified[0].vertices)}")
    k = max_degree(g) + 1
    state = _State(g, k)
    blocks_at: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for i, blk in enumerate(blocks.blocks):
        for v in blk.vertices:
            blocks_at[v].append(i)
    done = [False] * len(blocks.blocks)

    for root in g.vertices():
        if root in state.side:
            continue
        state.side[root] = Side.D
        queue = deque([root])
        while queue:
            b = queue.popleft()
            for i in blocks_at[b]:
                if done[i]:
                    continue
                blk = blocks.blocks[i]
                state.flip = state.side[b] is Side.U
                label = _CASES[blk.kind](state, blk, b)
                state.flip = False
                done[i] = True
                problems = _block_problems(state, blk)
                if problems:
                    raise ConstructionInvariantError(f"block {sorted(blk.vertices)}: {problems}")
                if trace is not None:
                    trace.append((b, label + ("-mirror" if state.side[b] is Side.U else "")))
                queue.extend(sorted(blk.vertices - {b}))
    if not all(done):
        raise CaseExhaustion("some blocks were never reached")
    sides = tuple(state.side[v] for v in g.vertices())
    return Witness(VertexPartition(sides), EdgeColouring(k, tuple(state.colour)), k)
