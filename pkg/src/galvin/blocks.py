"""Block decomposition and the Maffray classification of blocks.

A simple graph has no odd cycle of length 5 or more exactly when every block
is bipartite, a K4, or of *type T*: a spine edge ``vw`` plus independent spike
vertices each adjacent to both ``v`` and ``w``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import networkx as nx

from .errors import PreconditionError
from .graph import MultiGraph, bipartition


class BlockKind(str, enum.Enum):
    BIPARTITE = "bipartite"
    FOUR_CLIQUE = "K4"
    TYPE_T = "T"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    edges: tuple[int, ...]
    kind: BlockKind
    spine: int | None = None
    spikes: frozenset[int] = field(default_factory=frozenset)

    def degree(self, g: MultiGraph, v: int) -> int:
        return sum(1 for e in self.edges if v in g.edges[e])


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def unclassified(self) -> list[Block]:
        return [b for b in self.blocks if b.kind is BlockKind.UNCLASSIFIED]


def _nx_graph(g: MultiGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    for e, (a, b) in enumerate(g.edges):
        h.add_edge(a, b, id=e)
    return h


def block_edge_sets(g: MultiGraph) -> list[tuple[int, ...]]:
    """Edge ids of each block (bridges are single-edge blocks), in a stable order."""
    if not g.is_simple:
        raise PreconditionError("block decomposition is defined here for simple graphs only")
    h = _nx_graph(g)
    out = []
    for comp in nx.biconnected_component_edges(h):
        out.append(tuple(sorted(h.edges[a, b]["id"] for a, b in comp)))
    out.sort()
    return out


def classify_block(g: MultiGraph, edge_ids: tuple[int, ...]) -> Block:
    verts = frozenset(v for e in edge_ids for v in g.edges[e])
    sub = g.subgraph(edge_ids)
    if len(edge_ids) == 1 or bipartition(sub) is not None:
        return Block(verts, edge_ids, BlockKind.BIPARTITE)
    n = len(verts)
    if n == 4 and len(edge_ids) == 6:
        return Block(verts, edge_ids, BlockKind.FOUR_CLIQUE)
    deg = {v: 0 for v in verts}
    for e in edge_ids:
        for v in g.edges[e]:
            deg[v] += 1
    p = n - 2
    if p >= 1 and len(edge_ids) == 2 * p + 1:
        hubs = sorted(v for v in verts if deg[v] == n - 1)
        candidates = sorted(
            (min(g.edges[e]), max(g.edges[e]), e)
            for e in edge_ids
            if g.edges[e][0] in hubs and g.edges[e][1] in hubs
        )
        for a, b, e in candidates:
            spikes = verts - {a, b}
            nb = g.neighbours
            if all(a in nb[x] and b in nb[x] for x in spikes) and all(
                not (nb[x] & spikes) for x in spikes
            ):
                return Block(verts, edge_ids, BlockKind.TYPE_T, spine=e, spikes=frozenset(spikes))
    return Block(verts, edge_ids, BlockKind.UNCLASSIFIED)


def classify_blocks(g: MultiGraph) -> BlockDecomposition:
    return BlockDecomposition(tuple(classify_block(g, es) for es in block_edge_sets(g)))
