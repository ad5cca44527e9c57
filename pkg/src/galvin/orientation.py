"""Galvin orientations of line graphs and their properness checks.

Given a partition ``(U, D)`` and a proper colouring, every incidence shared by
two edges becomes an arc: at a ``D`` vertex it points from the higher colour to
the lower one, at a ``U`` vertex from the lower colour to the higher one.

Kernel-perfectness of a line-graph orientation is decided through the
clique/odd-cycle characterisation: every clique has a kernel, and every
directed odd cycle has a chord or a pseudochord (a reversed cycle arc).  The
brute-force oracle :func:`is_kernel_perfect_bruteforce` checks the definition
directly on small digraphs.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import BudgetExceeded, ColouringError, ScaleLimitError
from .graph import (
    EdgeColouring,
    MultiGraph,
    Side,
    VertexPartition,
    check_colouring,
    check_partition,
    line_incidences,
)

MAX_KERNEL_NODES = 25
MAX_BRUTEFORCE_NODES = 16
MAX_CYCLE_NODES = 128
DEFAULT_CYCLE_BUDGET = 10_000_000


class Arc(NamedTuple):
    tail: int
    head: int
    witness: int = -1


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on nodes ``0..node_count-1``; arcs may repeat."""

    node_count: int
    arcs: tuple[Arc, ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Digraph:
        return cls(n, tuple(Arc(a, b) for a, b in pairs))

    @cached_property
    def outdegree(self) -> tuple[int, ...]:
        d = [0] * self.node_count
        for a in self.arcs:
            d[a.tail] += 1
        return tuple(d)

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        m = [0] * self.node_count
        for a in self.arcs:
            m[a.tail] |= 1 << a.head
        return tuple(m)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        """Neighbours in the underlying undirected graph."""
        m = list(self.out_mask)
        for a in self.arcs:
            m[a.head] |= 1 << a.tail
        return tuple(m)

    @cached_property
    def oneway_mask(self) -> tuple[int, ...]:
        """Out-neighbours ``w`` of ``v`` such that there is no arc ``w -> v``."""
        out = self.out_mask
        res = []
        for v in range(self.node_count):
            bit = 1 << v
            strict = 0
            rest = out[v]
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                if not out[w] & bit:
                    strict |= low
                rest ^= low
            res.append(strict)
        return tuple(res)

    def arc_set(self) -> list[Arc]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class GalvinOrientation(Digraph):
    k: int = 0
    colours: tuple[int, ...] = ()


@dataclass
class PropernessReport:
    outdegree_violations: list[tuple[int, int]] = field(default_factory=list)
    kernelless_cliques: list[tuple[int, ...]] = field(default_factory=list)
    bad_odd_cycles: list[tuple[int, ...]] = field(default_factory=list)
    complete: bool = True
    cycle_steps: int = 0

    @property
    def kernel_perfect(self) -> bool | None:
        if self.kernelless_cliques or self.bad_odd_cycles:
            return False
        return True if self.complete else None

    @property
    def verdict(self) -> bool | None:
        """``True``/``False``, or ``None`` when the cycle budget ran out first."""
        if self.outdegree_violations:
            return False
        return self.kernel_perfect

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "complete": self.complete,
            "outdegree_violations": [list(x) for x in self.outdegree_violations],
            "kernelless_cliques": [list(x) for x in self.kernelless_cliques],
            "bad_odd_cycles": [list(x) for x in self.bad_odd_cycles],
            "cycle_steps": self.cycle_steps,
        }


def galvin_orient(g: MultiGraph, p: VertexPartition, c: EdgeColouring) -> GalvinOrientation:
    check_colouring(g, c)
    check_partition(g, p)
    arcs = []
    for e, f, v in line_incidences(g):
        ce, cf = c[e], c[f]
        if ce == cf:  # excluded by check_colouring; kept as a hard stop
            raise ColouringError(f"edges {e} and {f} share colour {ce} at {v}")
        lo, hi = (e, f) if ce < cf else (f, e)
        if p[v] is Side.D:
            arcs.append(Arc(hi, lo, v))
        else:
            arcs.append(Arc(lo, hi, v))
    return GalvinOrientation(g.edge_count, tuple(arcs), c.k, c.colours)


def check_outdegree(o: Digraph, k: int) -> list[tuple[int, int]]:
    return [(e, d) for e, d in enumerate(o.outdegree) if d > k - 1]


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def find_kernel(nodes: Iterable[int], o: Digraph) -> frozenset[int] | None:
    """Lexicographically least kernel of the subdigraph induced on ``nodes``.

    Independent sets are visited in lexicographic order of their sorted member
    lists, so the first kernel met is the least one.
    """
    order = sorted(set(nodes))
    if len(order) > MAX_KERNEL_NODES:
        raise ScaleLimitError("find_kernel", len(order), MAX_KERNEL_NODES)
    if not order:
        return frozenset()
    s_mask = _mask(order)
    out = [o.out_mask[v] & s_mask for v in range(o.node_count)]
    adj = [o.adj_mask[v] & s_mask for v in range(o.node_count)]
    # nodes with no out-arc inside S must belong to every kernel
    forced = _mask(v for v in order if not out[v])
    n = len(order)

    def is_kernel(k_mask: int) -> bool:
        rest = s_mask & ~k_mask
        for v in _members(rest):
            if not out[v] & k_mask:
                return False
        return True

    def rec(start: int, k_mask: int, blocked: int) -> int | None:
        for i in range(start, n):
            v = order[i]
            bit = 1 << v
            if blocked & bit:
                if forced & bit:
                    return None
                continue
            new = k_mask | bit
            if is_kernel(new):
                return new
            found = rec(i + 1, new, blocked | adj[v] | bit)
            if found is not None:
                return found
            if forced & bit:
                # every later set omits a forced node
                return None
        return None

    found = rec(0, 0, 0)
    return None if found is None else frozenset(_members(found))


def _has_kernel_mask(s_mask: int, out: list[int], adj: list[int]) -> bool:
    if not s_mask:
        return True
    order = _members(s_mask)
    forced = 0
    for v in order:
        if not out[v] & s_mask:
            forced |= 1 << v
    if forced & _union(adj[v] for v in _members(forced)):
        return False
    n = len(order)

    def rec(i: int, k_mask: int, blocked: int) -> bool:
        if i == n:
            rest = s_mask & ~k_mask
            return all(out[v] & k_mask for v in _members(rest))
        v = order[i]
        bit = 1 << v
        if not blocked & bit:
            if rec(i + 1, k_mask | bit, blocked | adj[v]):
                return True
        if forced & bit:
            return False
        return rec(i + 1, k_mask, blocked)

    return rec(0, 0, 0)


def _union(masks: Iterable[int]) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def first_kernelless_subset(o: Digraph) -> frozenset[int] | None:
    n = o.node_count
    if n > MAX_BRUTEFORCE_NODES:
        raise ScaleLimitError("is_kernel_perfect_bruteforce", n, MAX_BRUTEFORCE_NODES)
    out = list(o.out_mask)
    adj = [o.adj_mask[v] & ~(1 << v) for v in range(n)]
    for s_mask in range(1, 1 << n):
        if not _has_kernel_mask(s_mask, out, adj):
            return frozenset(_members(s_mask))
    return None


def is_kernel_perfect_bruteforce(o: Digraph) -> bool:
    """Every induced subdigraph has a kernel (checked on all ``2^n`` subsets)."""
    return first_kernelless_subset(o) is None


def line_cliques(g: MultiGraph) -> list[frozenset[int]]:
    """Star cliques (edges at a vertex of degree >= 2) and triangle cliques of L(G).

    Every clique of L(G) is contained in one of these.
    """
    seen: set[frozenset[int]] = set()
    out = []
    for v in g.vertices():
        if g.degrees[v] >= 2:
            s = frozenset(g.incident[v])
            if s not in seen:
                seen.add(s)
                out.append(s)
    nb = g.neighbours
    for a in g.vertices():
        for b in sorted(nb[a]):
            if b <= a:
                continue
            for c in sorted(nb[a] & nb[b]):
                if c <= b:
                    continue
                s = frozenset(e for e in g.incident[a] if g.other_end(e, a) in (b, c)) | frozenset(
                    g.edges_between(b, c)
                )
                if s not in seen:
                    seen.add(s)
                    out.append(s)
    return out


def _strict_cycle(nodes: Iterable[int], o: Digraph) -> tuple[int, ...] | None:
    """A directed cycle of one-way arcs inside ``nodes``, if any."""
    s_mask = _mask(nodes)
    strict = o.oneway_mask
    state: dict[int, int] = {}
    stack_pos: dict[int, int] = {}
    path: list[int] = []

    for root in sorted(nodes):
        if root in state:
            continue
        # iterative DFS with explicit successor iterators
        work = [(root, iter(_members(strict[root] & s_mask)))]
        state[root] = 1
        stack_pos[root] = 0
        path.append(root)
        while work:
            v, it = work[-1]
            nxt = next(it, None)
            if nxt is None:
                work.pop()
                state[v] = 2
                path.pop()
                del stack_pos[v]
                continue
            st = state.get(nxt, 0)
            if st == 1:
                return tuple(path[stack_pos[nxt]:])
            if st == 0:
                state[nxt] = 1
                stack_pos[nxt] = len(path)
                path.append(nxt)
                work.append((nxt, iter(_members(strict[nxt] & s_mask))))
    return None


def clique_has_kernels(nodes: Iterable[int], o: Digraph) -> bool:
    """Whether every subset of a clique has a kernel (a node all others point at).

    A subset lacks such a node exactly when each member has a one-way arc out
    to another member, i.e. when the one-way arcs inside it contain a cycle.
    """
    return _strict_cycle(nodes, o) is None


def check_clique_kernels(g: MultiGraph, o: Digraph, first_only: bool = False) -> list[tuple[int, ...]]:
    """Kernel-less cliques of the orientation (as node tuples, in cycle order)."""
    bad = []
    for clique in line_cliques(g):
        cyc = _strict_cycle(clique, o)
        if cyc is not None:
            bad.append(cyc)
            if first_only:
                break
    return bad


def _reach(start: int, succ: list[int], allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _members(frontier):
            nxt |= succ[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def check_odd_cycles(
    o: Digraph,
    budget: int | None = DEFAULT_CYCLE_BUDGET,
    first_only: bool = False,
) -> list[tuple[int, ...]]:
    """Directed odd cycles having neither a chord nor a pseudochord.

    Raises :class:`BudgetExceeded` (carrying the cycles found so far) once
    ``budget`` extension steps are spent.
    """
    return odd_cycle_search(o, budget, first_only)[0]


def odd_cycle_search(
    o: Digraph,
    budget: int | None = DEFAULT_CYCLE_BUDGET,
    first_only: bool = False,
) -> tuple[list[tuple[int, ...]], int]:
    """Bad odd cycles plus the number of extension steps used.

    Such a cycle is an induced cycle of the underlying graph whose arcs are all
    one-way, so the search extends induced paths along one-way arcs only, from
    the lowest node of the cycle and within its strong component.  Each cycle is
    reported once, starting at its lowest node.
    """
    n = o.node_count
    if n > MAX_CYCLE_NODES:
        raise ScaleLimitError("check_odd_cycles", n, MAX_CYCLE_NODES)
    succ = list(o.oneway_mask)
    pred = [0] * n
    for v in range(n):
        for w in _members(succ[v]):
            pred[w] |= 1 << v
    adj = [o.adj_mask[v] & ~(1 << v) for v in range(n)]
    found: list[tuple[int, ...]] = []
    steps = 0
    limit = budget if budget is not None else -1

    for s in range(n):
        above = ~((1 << s) - 1) & ((1 << n) - 1)
        comp = _reach(s, succ, above) & _reach(s, pred, above)
        if comp == 1 << s:
            continue
        close = pred[s]
        near_s = adj[s]
        path = [s]

        # forbid: neighbours of interior path nodes (excludes the start node)
        def extend(v: int, on_path: int, forbid: int) -> bool:
            nonlocal steps
            cand = succ[v] & comp & ~on_path & ~forbid
            for x in _members(cand):
                steps += 1
                if limit >= 0 and steps > limit:
                    raise BudgetExceeded(steps, found)
                bit = 1 << x
                if len(path) >= 2 and near_s & bit:
                    if close & bit and (len(path) + 1) % 2 == 1:
                        found.append(tuple(path) + (x,))
                        if first_only:
                            return True
                    continue
                path.append(x)
                nf = forbid | adj[v] if len(path) >= 3 else forbid
                if extend(x, on_path | bit, nf):
                    return True
                path.pop()
            return False

        if extend(s, 1 << s, 0) and first_only:
            break
    return found, steps


def verify_orientation(
    g: MultiGraph,
    o: Digraph,
    k: int,
    budget: int | None = DEFAULT_CYCLE_BUDGET,
    first_only: bool = False,
) -> PropernessReport:
    report = PropernessReport()
    report.outdegree_violations = check_outdegree(o, k)
    if first_only and report.outdegree_violations:
        return report
    report.kernelless_cliques = check_clique_kernels(g, o, first_only=first_only)
    if first_only and report.kernelless_cliques:
        return report
    try:
        report.bad_odd_cycles, report.cycle_steps = odd_cycle_search(o, budget, first_only)
    except BudgetExceeded as exc:
        report.bad_odd_cycles = list(exc.partial or [])
        report.cycle_steps = exc.steps
        report.complete = False
    return report


def verify_proper(
    g: MultiGraph,
    p: VertexPartition,
    c: EdgeColouring,
    k: int | None = None,
    budget: int | None = DEFAULT_CYCLE_BUDGET,
    first_only: bool = False,
) -> PropernessReport:
    """Outdegree bound ``k - 1`` plus kernel-perfectness of the Galvin orientation."""
    o = galvin_orient(g, p, c)
    return verify_orientation(g, o, c.k if k is None else k, budget=budget, first_only=first_only)


def swap_transform(p: VertexPartition, c: EdgeColouring) -> tuple[VertexPartition, EdgeColouring]:
    """Exchange U and D and reverse the colour order; the orientation is unchanged."""
    return p.swapped(), c.reversed()
