"""List-edge-colouring from a kernel-perfect orientation of the line graph.

If the orientation is kernel-perfect with every outdegree at most ``k - 1``,
lists of size ``k`` always admit a proper colouring.  Colours are processed in
ascending order: the uncoloured edges whose list contains the colour induce
a subdigraph, a kernel of it takes the colour, and the rest drop it.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import ColouringError, KernelNotFound, PreconditionError, RoundInvariantError
from .graph import MultiGraph
from .orientation import Digraph, find_kernel

ListAssignment = Sequence[Iterable[int]]


def _lists(lists: ListAssignment | Mapping[int, Iterable[int]], m: int) -> list[set[int]]:
    if isinstance(lists, Mapping):
        out = [set(lists.get(e, ())) for e in range(m)]
    else:
        out = [set(x) for x in lists]
    if len(out) != m:
        raise PreconditionError(f"{len(out)} lists for {m} edges")
    for e, s in enumerate(out):
        if any(not isinstance(c, int) or c < 1 for c in s):
            raise PreconditionError(f"edge {e}: list entries must be positive integers")
    return out


def list_edge_colour(
    g: MultiGraph,
    o: Digraph,
    lists: ListAssignment | Mapping[int, Iterable[int]],
    k: int | None = None,
) -> list[int]:
    """Choose a colour from each edge's list so that adjacent edges differ.

    ``k`` defaults to the orientation's own ``k`` (or ``max outdegree + 1``).
    Raises :class:`KernelNotFound` if some induced subdigraph has no kernel.
    """
    m = g.edge_count
    if o.node_count != m:
        raise PreconditionError(f"orientation has {o.node_count} nodes for {m} edges")
    remaining = _lists(lists, m)
    if k is None:
        k = getattr(o, "k", 0) or (max(o.outdegree, default=0) + 1)
    worst = max(o.outdegree, default=0)
    if worst > k - 1:
        raise PreconditionError(f"outdegree {worst} exceeds k-1 = {k - 1}")
    for e, s in enumerate(remaining):
        if len(s) < k:
            raise PreconditionError(f"edge {e}: list of size {len(s)} < k = {k}")

    out_to = [[a.head for a in o.arcs if a.tail == v] for v in range(m)]
    uncoloured = set(range(m))
    result = [0] * m

    def outdeg_within(v: int) -> int:
        return sum(1 for w in out_to[v] if w in uncoloured)

    for c in sorted(set().union(*remaining)) if remaining else []:
        holders = {e for e in uncoloured if c in remaining[e]}
        if not holders:
            continue
        kernel = find_kernel(holders, o)
        if kernel is None:
            raise KernelNotFound(frozenset(holders))
        for e in kernel:
            result[e] = c
        uncoloured -= kernel
        for e in holders - kernel:
            remaining[e].discard(c)
        for e in uncoloured:
            remaining[e] = {x for x in remaining[e] if x > c}
            if len(remaining[e]) <= outdeg_within(e):
                raise RoundInvariantError(
                    f"after colour {c}: edge {e} keeps {len(remaining[e])} colours "
                    f"but has outdegree {outdeg_within(e)}"
                )
    if uncoloured:
        raise ColouringError(f"edges {sorted(uncoloured)} left uncoloured")
    return result


def verify_list_colouring(
    g: MultiGraph,
    lists: ListAssignment | Mapping[int, Iterable[int]],
    assignment: Sequence[int],
) -> bool:
    if len(assignment) != g.edge_count:
        return False
    ls = _lists(lists, g.edge_count)
    if any(assignment[e] not in ls[e] for e in range(g.edge_count)):
        return False
    for v in g.vertices():
        cols = [assignment[e] for e in g.incident[v]]
        if len(cols) != len(set(cols)):
            return False
    return True
