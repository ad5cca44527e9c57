"""Loopless multigraphs, edge colourings, vertex partitions and line-graph incidences.

Vertices and edges are 0-based integers; edge ids follow input order.  Colours
are 1-based so that low/high thresholds read the same as in the arithmetic
``{1, ..., floor((k+1)/2)}``.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import ColouringError, GraphError, PartitionError, PreconditionError, ScaleLimitError

#: Largest edge count accepted by the exact chromatic-index backtracking.
MAX_EXACT_EDGES = 24


class Side(str, enum.Enum):
    """Which half of a Galvin partition a vertex lies in."""

    D = "D"
    U = "U"

    def swapped(self) -> Side:
        return Side.U if self is Side.D else Side.D


@dataclass(frozen=True)
class MultiGraph:
    """Loopless multigraph; ``edges[i]`` is the endpoint pair of edge ``i``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.vertex_count)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids at each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e, (a, b) in enumerate(self.edges):
            inc[a].append(e)
            inc[b].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incident)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return tuple(frozenset(x) for x in nb)

    @cached_property
    def is_simple(self) -> bool:
        keys = [frozenset(e) for e in self.edges]
        return len(set(keys)) == len(keys)

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self.incident[u] if v in self.edges[e]]

    def edge_id(self, u: int, v: int) -> int:
        """Id of the lowest edge joining ``u`` and ``v``."""
        for e in self.incident[u]:
            if v in self.edges[e]:
                return e
        raise KeyError((u, v))

    def subgraph(self, edge_ids: Iterable[int]) -> MultiGraph:
        """Spanning subgraph on the given edges (ids renumbered densely, in order)."""
        return MultiGraph(self.vertex_count, tuple(self.edges[e] for e in sorted(edge_ids)))


def build_graph(vertex_count: int, endpoint_pairs: Iterable[Sequence[int]]) -> MultiGraph:
    if vertex_count < 0:
        raise GraphError(f"negative vertex count {vertex_count}")
    edges = []
    for i, pair in enumerate(endpoint_pairs):
        if len(pair) != 2:
            raise GraphError(f"edge {i}: expected a pair, got {pair!r}")
        a, b = int(pair[0]), int(pair[1])
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise GraphError(f"edge {i}: vertex out of range in ({a}, {b})")
        if a == b:
            raise GraphError(f"edge {i}: loop at vertex {a}")
        edges.append((a, b))
    return MultiGraph(vertex_count, tuple(edges))


def complete_graph(n: int) -> MultiGraph:
    return build_graph(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> MultiGraph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@dataclass(frozen=True)
class EdgeColouring:
    """Colour ``colours[e]`` in ``1..k`` for each edge ``e``."""

    k: int
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ColouringError(f"negative colour count {self.k}")
        for e, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ColouringError(f"edge {e}: colour {c} outside 1..{self.k}")

    def __getitem__(self, e: int) -> int:
        return self.colours[e]

    def __len__(self) -> int:
        return len(self.colours)

    def reversed(self) -> EdgeColouring:
        """Colour ``c`` becomes ``k + 1 - c``."""
        return EdgeColouring(self.k, tuple(self.k + 1 - c for c in self.colours))

    def used(self) -> set[int]:
        return set(self.colours)


@dataclass(frozen=True)
class VertexPartition:
    sides: tuple[Side, ...]

    def __getitem__(self, v: int) -> Side:
        return self.sides[v]

    def __len__(self) -> int:
        return len(self.sides)

    def swapped(self) -> VertexPartition:
        return VertexPartition(tuple(s.swapped() for s in self.sides))

    @classmethod
    def from_sides(cls, sides: Iterable[str | Side]) -> VertexPartition:
        try:
            return cls(tuple(Side(s) for s in sides))
        except ValueError as exc:
            raise PartitionError(str(exc)) from None

    @classmethod
    def uniform(cls, n: int, side: Side = Side.D) -> VertexPartition:
        return cls((side,) * n)

    def members(self, side: Side) -> list[int]:
        return [v for v, s in enumerate(self.sides) if s is side]


class LineIncidence(NamedTuple):
    """One edge of L(G): edges ``edge_e < edge_f`` meeting at ``shared_vertex``."""

    edge_e: int
    edge_f: int
    shared_vertex: int


def max_degree(g: MultiGraph) -> int:
    return max(g.degrees, default=0)


def line_incidences(g: MultiGraph) -> list[LineIncidence]:
    """One record per (unordered edge pair, common endpoint); parallel pairs give two."""
    out = []
    for v in g.vertices():
        for e, f in itertools.combinations(g.incident[v], 2):
            out.append(LineIncidence(e, f, v))
    out.sort()
    return out


def check_colouring(g: MultiGraph, c: EdgeColouring) -> None:
    """Raise :class:`ColouringError` unless ``c`` is a total proper colouring of ``g``."""
    if len(c) != g.edge_count:
        raise ColouringError(f"colouring has {len(c)} entries for {g.edge_count} edges")
    for v in g.vertices():
        seen: dict[int, int] = {}
        for e in g.incident[v]:
            col = c[e]
            if col in seen:
                raise ColouringError(f"edges {seen[col]} and {e} both coloured {col} at vertex {v}")
            seen[col] = e


def is_proper_colouring(g: MultiGraph, c: EdgeColouring) -> bool:
    if len(c) != g.edge_count:
        raise ColouringError(f"colouring has {len(c)} entries for {g.edge_count} edges")
    try:
        check_colouring(g, c)
    except ColouringError:
        return False
    return True


def check_partition(g: MultiGraph, p: VertexPartition) -> None:
    if len(p) != g.vertex_count:
        raise PartitionError(f"partition covers {len(p)} of {g.vertex_count} vertices")


def _colouring_order(g: MultiGraph) -> list[int]:
    deg = g.degrees
    return sorted(range(g.edge_count), key=lambda e: (-(deg[g.edges[e][0]] + deg[g.edges[e][1]]), e))


def _colour_backtrack(g: MultiGraph, k: int, order: Sequence[int], canonical: bool) -> Iterator[list[int]]:
    """Yield proper colourings (as mutable lists; copy before keeping)."""
    m = g.edge_count
    colours = [0] * m
    used_at = [0] * g.vertex_count  # bitmask of colours present at each vertex
    full = (1 << (k + 1)) - 2

    def rec(i: int, top: int) -> Iterator[list[int]]:
        if i == m:
            yield colours
            return
        e = order[i]
        a, b = g.edges[e]
        free = full & ~(used_at[a] | used_at[b])
        limit = min(k, top + 1) if canonical else k
        for col in range(1, limit + 1):
            bit = 1 << col
            if not free & bit:
                continue
            colours[e] = col
            used_at[a] |= bit
            used_at[b] |= bit
            yield from rec(i + 1, max(top, col))
            used_at[a] &= ~bit
            used_at[b] &= ~bit
        colours[e] = 0

    yield from rec(0, 0)


def proper_colourings(g: MultiGraph, k: int) -> Iterator[EdgeColouring]:
    """Every proper colouring with colours in ``1..k``."""
    for cols in _colour_backtrack(g, k, range(g.edge_count), canonical=False):
        yield EdgeColouring(k, tuple(cols))


def canonical_colourings(g: MultiGraph, k: int) -> Iterator[EdgeColouring]:
    """Proper ``k``-colourings up to relabelling of colour classes.

    Colours are first used in ascending order along ascending edge id, so each
    partition of ``E(g)`` into at most ``k`` matchings appears exactly once.
    """
    for cols in _colour_backtrack(g, k, range(g.edge_count), canonical=True):
        yield EdgeColouring(k, tuple(cols))


def chromatic_index(g: MultiGraph) -> tuple[int, EdgeColouring]:
    """Exact chromatic index with a witness colouring, by backtracking.

    Raises :class:`ScaleLimitError` above :data:`MAX_EXACT_EDGES` edges.
    """
    if g.edge_count > MAX_EXACT_EDGES:
        raise ScaleLimitError("chromatic_index", g.edge_count, MAX_EXACT_EDGES)
    if g.edge_count == 0:
        return 0, EdgeColouring(0, ())
    order = _colouring_order(g)
    k = max_degree(g)
    while True:
        for cols in _colour_backtrack(g, k, order, canonical=True):
            return k, EdgeColouring(k, tuple(cols))
        k += 1


def bipartition(g: MultiGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-colour each component (its lowest vertex on the first side), or ``None``."""
    side = [-1] * g.vertex_count
    for root in g.vertices():
        if side[root] != -1:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbours[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return (
        frozenset(v for v in g.vertices() if side[v] == 0),
        frozenset(v for v in g.vertices() if side[v] == 1),
    )


def has_long_odd_cycle(g: MultiGraph) -> bool:
    """Whether the underlying simple graph has an odd cycle of length at least 5.

    Plain DFS over simple paths rooted at the cycle's lowest vertex; exponential,
    meant for small graphs.
    """
    nb = [sorted(x) for x in g.neighbours]

    for s in g.vertices():
        on_path = [False] * g.vertex_count
        on_path[s] = True

        def dfs(v: int, length: int) -> bool:
            for w in nb[v]:
                if w == s and length >= 4 and length % 2 == 0:
                    return True
                if w > s and not on_path[w]:
                    on_path[w] = True
                    if dfs(w, length + 1):
                        return True
                    on_path[w] = False
            return False

        # length counts edges on the path so far; closing adds one
        if dfs(s, 0):
            return True
    return False


def _konig(g: MultiGraph, delta: int) -> list[int]:
    """Delta-edge-colour a bipartite multigraph by alternating-path recolouring."""
    colours = [0] * g.edge_count
    at: list[dict[int, int]] = [dict() for _ in g.vertices()]

    def lowest_free(v: int) -> int:
        c = 1
        while c in at[v]:
            c += 1
        return c

    for e, (u, v) in enumerate(g.edges):
        a = lowest_free(u)
        b = lowest_free(v)
        if a != b and a in at[v]:
            # swap the a/b alternating path starting at v; it cannot reach u
            path = []
            x, want = v, a
            while want in at[x]:
                f = at[x][want]
                path.append(f)
                x = g.other_end(f, x)
                want = b if want == a else a
            for f in path:
                for y in g.edges[f]:
                    if at[y].get(colours[f]) == f:
                        del at[y][colours[f]]
            for f in path:
                colours[f] = b if colours[f] == a else a
                for y in g.edges[f]:
                    at[y][colours[f]] = f
        colours[e] = a
        at[u][a] = e
        at[v][a] = e
    assert max(colours, default=0) <= delta
    return colours


def bipartite_edge_colouring(
    g: MultiGraph,
    k: int,
    forbidden_at: Mapping[int, Iterable[int]] | None = None,
) -> EdgeColouring:
    """Proper ``k``-edge-colouring of a bipartite multigraph avoiding forbidden colours.

    Colours with Delta colours first, then permutes colour classes so that each
    constrained vertex only sees allowed colours.
    """
    if bipartition(g) is None:
        raise PreconditionError("graph is not bipartite")
    delta = max_degree(g)
    if k < delta:
        raise PreconditionError(f"k={k} is below the maximum degree {delta}")
    forbidden = {v: set(cs) for v, cs in (forbidden_at or {}).items() if cs}
    for v, cs in forbidden.items():
        allowed = set(range(1, k + 1)) - cs
        if g.degrees[v] > len(allowed):
            raise PreconditionError(
                f"vertex {v}: degree {g.degrees[v]} exceeds {len(allowed)} allowed colours"
            )
    base = _konig(g, delta)
    perm = _relabel(g, base, k, forbidden)
    if perm is None:
        cols = _constrained_backtrack(g, k, forbidden)
        if cols is None:
            raise PreconditionError("no colouring satisfies the forbidden-colour constraints")
        return EdgeColouring(k, tuple(cols))
    return EdgeColouring(k, tuple(perm[c] for c in base))


def _relabel(g: MultiGraph, base: list[int], k: int, forbidden: dict[int, set[int]]) -> dict[int, int] | None:
    """Injective map of used colours into ``1..k`` respecting forbidden sets, or ``None``."""
    used = sorted(set(base))
    classes_at = {v: {base[e] for e in g.incident[v]} for v in forbidden}
    bad = {c: set().union(*(forbidden[v] for v in forbidden if c in classes_at[v])) for c in used}
    perm: dict[int, int] = {}
    taken: set[int] = set()
    # most constrained classes first
    order = sorted(used, key=lambda c: (-len(bad[c]), c))

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        c = order[i]
        for t in range(1, k + 1):
            if t in taken or t in bad[c]:
                continue
            perm[c] = t
            taken.add(t)
            if rec(i + 1):
                return True
            taken.discard(t)
            del perm[c]
        return False

    return perm if rec(0) else None


def _constrained_backtrack(g: MultiGraph, k: int, forbidden: dict[int, set[int]]) -> list[int] | None:
    cols = [0] * g.edge_count
    at: list[set[int]] = [set(forbidden.get(v, ())) for v in g.vertices()]

    def rec(e: int) -> bool:
        if e == g.edge_count:
            return True
        a, b = g.edges[e]
        for c in range(1, k + 1):
            if c in at[a] or c in at[b]:
                continue
            cols[e] = c
            at[a].add(c)
            at[b].add(c)
            if rec(e + 1):
                return True
            at[a].discard(c)
            at[b].discard(c)
        return False

    return cols if rec(0) else None
