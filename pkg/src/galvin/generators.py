"""Random graph and colouring generators for tests and experiments."""

from __future__ import annotations

import random

from .graph import EdgeColouring, MultiGraph, Side, VertexPartition, build_graph, max_degree


def random_multigraph(rng: random.Random, n: int, m: int, parallel: bool = True) -> MultiGraph:
    """``m`` random edges on ``n >= 2`` vertices; parallel edges only when allowed."""
    pairs: list[tuple[int, int]] = []
    seen: set[frozenset[int]] = set()
    limit = n * (n - 1) // 2
    while len(pairs) < m:
        a, b = rng.sample(range(n), 2)
        key = frozenset((a, b))
        if not parallel:
            if len(seen) == limit:
                break
            if key in seen:
                continue
        seen.add(key)
        pairs.append((a, b))
    return build_graph(n, pairs)


def random_simple_graph(rng: random.Random, n: int, p: float) -> MultiGraph:
    return build_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def random_bipartite(rng: random.Random, a: int, b: int, m: int, connected: bool = False) -> MultiGraph:
    """Simple bipartite graph with sides ``0..a-1`` and ``a..a+b-1``."""
    all_pairs = [(i, a + j) for i in range(a) for j in range(b)]
    if connected:
        # random spanning tree first, alternating sides
        order = list(range(a + b))
        rng.shuffle(order)
        left = [v for v in order if v < a]
        right = [v for v in order if v >= a]
        chosen = {(left[0], right[0])}
        placed = [left[0], right[0]]
        for v in left[1:] + right[1:]:
            cands = [u for u in placed if (u < a) != (v < a)]
            u = rng.choice(cands)
            chosen.add((min(u, v), max(u, v)))
            placed.append(v)
        rest = [pr for pr in all_pairs if pr not in chosen]
        rng.shuffle(rest)
        extra = max(0, m - len(chosen))
        pairs = sorted(chosen) + rest[:extra]
    else:
        rng.shuffle(all_pairs)
        pairs = all_pairs[:m]
    return build_graph(a + b, pairs)


def random_partition(rng: random.Random, n: int) -> VertexPartition:
    return VertexPartition(tuple(rng.choice((Side.D, Side.U)) for _ in range(n)))


def random_colouring(rng: random.Random, g: MultiGraph, k: int | None = None) -> EdgeColouring:
    """Random greedy proper colouring from ``1..k`` (default ``2 * Delta``; always enough)."""
    if k is None:
        k = max(1, 2 * max_degree(g))
    order = list(range(g.edge_count))
    rng.shuffle(order)
    colours = [0] * g.edge_count
    for e in order:
        a, b = g.edges[e]
        busy = {colours[f] for f in g.incident[a] + g.incident[b]}
        free = [c for c in range(1, k + 1) if c not in busy]
        if not free:
            raise ValueError(f"k={k} too small for greedy colouring")
        colours[e] = rng.choice(free)
    return EdgeColouring(k, tuple(colours))


def _glue(
    rng: random.Random, n: int, edges: list[tuple[int, int]], block: MultiGraph
) -> tuple[int, list[tuple[int, int]]]:
    """Attach ``block`` so its vertex 0 is identified with a random existing vertex."""
    anchor = rng.randrange(n) if n else None
    mapping = {}
    for v in block.vertices():
        if v == 0 and anchor is not None:
            mapping[v] = anchor
        else:
            mapping[v] = n
            n += 1
    edges = edges + [(mapping[a], mapping[b]) for a, b in block.edges]
    return n, edges


def type_t_block(p: int, spike_first: bool = False) -> MultiGraph:
    """Spine ``0-1`` with spikes ``2..p+1``; with ``spike_first`` vertex 0 is a spike."""
    pairs = [(0, 1)] + [(x, s) for x in range(2, p + 2) for s in (0, 1)]
    g = build_graph(p + 2, pairs)
    if spike_first:
        relabel = {0: 2, 2: 0}
        g = build_graph(p + 2, [(relabel.get(a, a), relabel.get(b, b)) for a, b in pairs])
    return g


def random_maffray_graph(
    rng: random.Random,
    blocks: int,
    max_bipartite: int = 8,
    max_spikes: int = 4,
) -> MultiGraph:
    """Connected simple graph glued at cut vertices from bipartite, K4 and type-T pieces."""
    n = 0
    edges: list[tuple[int, int]] = []
    for _ in range(blocks):
        kind = rng.choice(("bipartite", "K4", "T"))
        if kind == "bipartite":
            size = rng.randint(2, max_bipartite)
            a = rng.randint(1, size - 1)
            b = size - a
            m = rng.randint(size - 1, a * b)
            piece = random_bipartite(rng, a, b, m, connected=True)
        elif kind == "K4":
            piece = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        else:
            piece = type_t_block(rng.randint(1, max_spikes), spike_first=rng.random() < 0.5)
        # random relabelling so the glued vertex plays a random role
        perm = list(piece.vertices())
        rng.shuffle(perm)
        piece = build_graph(piece.vertex_count, [(perm[a], perm[b]) for a, b in piece.edges])
        n, edges = _glue(rng, n, edges, piece)
    return build_graph(n, edges)
