"""Exhaustive search for proper Galvin orientations of small graphs.

The outer loop runs over vertex partitions, the inner loop over proper
``k``-edge-colourings built edge by edge.  With the partition fixed, each
partial colouring gives a lower bound on every coloured edge's final
outdegree, and a fully coloured triangle of ``G`` can be checked for being a
directed triangle of ``L(G)``; either failure prunes the branch.  Complete
candidates get the clique and odd-cycle checks.

Two reductions keep the partition loop small, both exact: the sides of
vertices of degree at most one never affect the orientation, and exchanging
``U``/``D`` while reversing colours leaves the orientation unchanged, so the
lowest relevant vertex can be fixed in ``D``.  Colour relabelling is *not* a
symmetry here, since the orientation depends on the order of the colours.
"""

from __future__ import annotations

import enum
import logging
import multiprocessing
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructions import Witness
from .errors import BudgetExceeded, PreconditionError, ScaleLimitError
from .graph import (
    EdgeColouring,
    MultiGraph,
    Side,
    VertexPartition,
    chromatic_index,
    max_degree,
)
from .orientation import check_clique_kernels, galvin_orient, odd_cycle_search

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000_000


class Status(str, enum.Enum):
    FOUND = "found"
    REFUTED = "refuted"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class SearchOutcome:
    status: Status
    k: int
    witness: Witness | None = None
    examined_partitions: int = 0
    examined_colourings: int = 0
    steps: int = 0
    partition_index: int | None = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def to_json(self) -> dict:
        out = {
            "status": self.status.value,
            "k": self.k,
            "examined_partitions": self.examined_partitions,
            "examined_colourings": self.examined_colourings,
            "steps": self.steps,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["partition_index"] = self.partition_index
        return out


@dataclass
class MinKOutcome:
    status: Status
    k: int | None
    witness: Witness | None
    refuted_below: int
    outcomes: list[SearchOutcome] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "k": self.k,
            "refuted_below": self.refuted_below,
            "witness": None if self.witness is None else self.witness.to_json(),
            "per_k": [o.to_json() for o in self.outcomes],
        }


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _PartitionSearch:
    """Colouring backtracking for fixed sides, with shared step accounting."""

    def __init__(self, g: MultiGraph, k: int, cycle_budget_cap: int | None = None) -> None:
        self.g = g
        self.k = k
        self.m = g.edge_count
        self.order = self._edge_order(g)
        pos = {e: i for i, e in enumerate(self.order)}
        self.tri_at: list[list[tuple[tuple[int, int, int], tuple[int, int, int]]]] = [[] for _ in range(self.m)]
        for tri, wit in self._triangles(g):
            last = max(tri, key=pos.__getitem__)
            self.tri_at[last].append((tri, wit))
        self.steps = 0
        self.limit = -1
        self.leaves = 0
        self.cycle_budget_cap = cycle_budget_cap

    @staticmethod
    def _edge_order(g: MultiGraph) -> list[int]:
        order: list[int] = []
        seen_e = [False] * g.edge_count
        seen_v = [False] * g.vertex_count
        for root in sorted(g.vertices(), key=lambda v: (-g.degrees[v], v)):
            if seen_v[root]:
                continue
            seen_v[root] = True
            queue = [root]
            while queue:
                v = queue.pop(0)
                for e in g.incident[v]:
                    if not seen_e[e]:
                        seen_e[e] = True
                        order.append(e)
                        w = g.other_end(e, v)
                        if not seen_v[w]:
                            seen_v[w] = True
                            queue.append(w)
        return order

    @staticmethod
    def _triangles(g: MultiGraph):
        """Edge triples on vertex triangles ``a<b<c``: edges (ab, bc, ca), witnesses (b, c, a)."""
        nb = g.neighbours
        for a in g.vertices():
            for b in sorted(x for x in nb[a] if x > a):
                for c in sorted(x for x in nb[a] & nb[b] if x > b):
                    for e1 in g.edges_between(a, b):
                        for e2 in g.edges_between(b, c):
                            for e3 in g.edges_between(c, a):
                                yield (e1, e2, e3), (b, c, a)

    def _tick(self) -> None:
        self.steps += 1
        if self.limit >= 0 and self.steps > self.limit:
            raise BudgetExceeded(self.steps)

    def run(self, sides: tuple[Side, ...], limit: int) -> list[int] | None:
        """First colouring (in search order) giving a proper orientation, else ``None``."""
        g, k = self.g, self.k
        self.limit = limit
        is_d = [s is Side.D for s in sides]
        colour = [0] * self.m
        used = [0] * g.vertex_count
        deg = g.degrees
        edges = g.edges
        incident = g.incident
        order = self.order
        kmax = k - 1

        def contrib(f: int, y: int) -> int:
            cf = colour[f]
            u = used[y]
            below = _popcount(u & ((1 << cf) - 1))
            above = _popcount(u >> (cf + 1))
            r = deg[y] - _popcount(u)
            if is_d[y]:
                return below + max(0, r - ((k - cf) - above))
            return above + max(0, r - ((cf - 1) - below))

        def ok_at(x: int) -> bool:
            for f in incident[x]:
                if colour[f]:
                    a, b = edges[f]
                    if contrib(f, a) + contrib(f, b) > kmax:
                        return False
            return True

        def tri_ok(e: int) -> bool:
            for (e1, e2, e3), (w12, w23, w31) in self.tri_at[e]:
                # arcs e1-e2 at w12, e2-e3 at w23, e3-e1 at w31: directed iff all agree in rotation
                f12 = (colour[e1] > colour[e2]) == is_d[w12]  # True: e1 -> e2
                f23 = (colour[e2] > colour[e3]) == is_d[w23]
                f31 = (colour[e3] > colour[e1]) == is_d[w31]
                if f12 == f23 == f31:
                    return False
            return True

        def rec(i: int) -> bool:
            if i == self.m:
                self.leaves += 1
                return self._leaf_ok(sides, colour)
            e = order[i]
            a, b = edges[e]
            busy = used[a] | used[b]
            for c in range(1, k + 1):
                bit = 1 << c
                if busy & bit:
                    continue
                self._tick()
                colour[e] = c
                used[a] |= bit
                used[b] |= bit
                if ok_at(a) and ok_at(b) and tri_ok(e):
                    if rec(i + 1):
                        return True
                used[a] &= ~bit
                used[b] &= ~bit
                colour[e] = 0
            return False

        if rec(0):
            return list(colour)
        return None

    def _leaf_ok(self, sides: tuple[Side, ...], colour: list[int]) -> bool:
        g = self.g
        c = EdgeColouring(self.k, tuple(colour))
        o = galvin_orient(g, VertexPartition(sides), c)
        if check_clique_kernels(g, o, first_only=True):
            return False
        remaining = None if self.limit < 0 else max(0, self.limit - self.steps)
        if self.cycle_budget_cap is not None:
            remaining = self.cycle_budget_cap if remaining is None else min(remaining, self.cycle_budget_cap)
        try:
            bad, used = odd_cycle_search(o, budget=remaining, first_only=True)
        except BudgetExceeded as exc:
            self.steps += exc.steps
            raise BudgetExceeded(self.steps) from None
        self.steps += used
        return not bad


def _relevant_vertices(g: MultiGraph) -> list[int]:
    return [v for v in g.vertices() if g.degrees[v] >= 2]


def partition_count(g: MultiGraph, use_symmetry: bool = True) -> int:
    r = len(_relevant_vertices(g))
    if r == 0:
        return 1
    return 1 << (r - 1 if use_symmetry else r)


def partition_at(g: MultiGraph, index: int, use_symmetry: bool = True) -> tuple[Side, ...]:
    """Sides for the ``index``-th partition: bit ``j`` puts the ``j``-th free vertex in U."""
    rel = _relevant_vertices(g)
    free = rel[1:] if use_symmetry else rel
    sides = [Side.D] * g.vertex_count
    for j, v in enumerate(free):
        if index >> j & 1:
            sides[v] = Side.U
    return tuple(sides)


@dataclass
class _Chunk:
    found_index: int | None = None
    colours: list[int] | None = None
    partitions: int = 0
    leaves: int = 0
    steps: int = 0
    exhausted: bool = False


# lowest partition index with a witness so far, shared by worker processes
_best = None


def _init_worker(best) -> None:
    global _best
    _best = best


def _run_chunk(
    g: MultiGraph,
    k: int,
    start: int,
    stride: int,
    budget: int | None,
    use_symmetry: bool,
    progress: Callable[[int, int, int, int], None] | None = None,
) -> _Chunk:
    total = partition_count(g, use_symmetry)
    searcher = _PartitionSearch(g, k)
    out = _Chunk()
    limit = -1 if budget is None else budget
    for index in range(start, total, stride):
        if _best is not None and _best.value <= index:
            break
        sides = partition_at(g, index, use_symmetry)
        out.partitions += 1
        try:
            found = searcher.run(sides, limit)
        except BudgetExceeded:
            out.exhausted = True
            break
        finally:
            out.leaves = searcher.leaves
            out.steps = searcher.steps
        if progress is not None:
            progress(index, total, searcher.leaves, searcher.steps)
        if found is not None:
            out.found_index = index
            out.colours = found
            if _best is not None:
                with _best.get_lock():
                    _best.value = min(_best.value, index)
            break
    return out


def search_proper(
    g: MultiGraph,
    k: int,
    budget: int | None = DEFAULT_BUDGET,
    jobs: int = 1,
    use_symmetry: bool = True,
    progress: Callable[[int, int, int, int], None] | None = None,
) -> SearchOutcome:
    """Find a ``(partition, colouring)`` pair giving a proper orientation w.r.t. ``k``.

    The witness returned is the first one in search order, independent of
    ``jobs`` as long as the budget is not hit.
    """
    if k < max_degree(g):
        return SearchOutcome(Status.REFUTED, k)
    try:
        if k < chromatic_index(g)[0]:
            return SearchOutcome(Status.REFUTED, k)
    except ScaleLimitError:
        pass
    if jobs <= 1:
        chunks = [_run_chunk(g, k, 0, 1, budget, use_symmetry, progress)]
    else:
        share = None if budget is None else max(1, budget // jobs)
        best = multiprocessing.Value("q", partition_count(g, use_symmetry))
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(best,)) as pool:
            futures = [
                pool.submit(_run_chunk, g, k, j, jobs, share, use_symmetry)
                for j in range(jobs)
            ]
            chunks = [f.result() for f in futures]
    out = SearchOutcome(
        Status.REFUTED,
        k,
        examined_partitions=sum(c.partitions for c in chunks),
        examined_colourings=sum(c.leaves for c in chunks),
        steps=sum(c.steps for c in chunks),
    )
    hits = [c for c in chunks if c.found_index is not None]
    if hits:
        best = min(hits, key=lambda c: c.found_index)
        sides = partition_at(g, best.found_index, use_symmetry)
        out.status = Status.FOUND
        out.partition_index = best.found_index
        out.witness = Witness(VertexPartition(sides), EdgeColouring(k, tuple(best.colours)), k)
    elif any(c.exhausted for c in chunks):
        out.status = Status.BUDGET_EXHAUSTED
    return out


def min_k(
    g: MultiGraph,
    k_max: int,
    budget: int | None = DEFAULT_BUDGET,
    jobs: int = 1,
) -> MinKOutcome:
    """Smallest ``k`` in ``[chi'(g), k_max]`` admitting a proper Galvin orientation."""
    try:
        lower = chromatic_index(g)[0]
    except ScaleLimitError:
        lower = max_degree(g)
    if k_max < lower:
        raise PreconditionError(f"k_max={k_max} is below the lower bound {lower}")
    outcomes = []
    for k in range(lower, k_max + 1):
        res = search_proper(g, k, budget=budget, jobs=jobs)
        outcomes.append(res)
        if res.status is Status.FOUND:
            return MinKOutcome(Status.FOUND, k, res.witness, k, outcomes)
        if res.status is Status.BUDGET_EXHAUSTED:
            return MinKOutcome(Status.BUDGET_EXHAUSTED, None, None, k, outcomes)
    return MinKOutcome(Status.REFUTED, None, None, k_max + 1, outcomes)


def refute_delta_witness(g: MultiGraph, budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> SearchOutcome:
    """Exhaustive check that ``L(g)`` has no proper Galvin orientation w.r.t. ``Delta = 4``."""
    if not g.is_simple:
        raise PreconditionError("graph must be simple")
    if max_degree(g) != 4:
        raise PreconditionError(f"maximum degree is {max_degree(g)}, expected 4")
    return search_proper(g, 4, budget=budget, jobs=jobs)


class ProgressLogger:
    """Progress callback logging partitions/s and the current partition index."""

    def __init__(self, every: float = 5.0) -> None:
        self.every = every
        self.t0 = time.monotonic()
        self.last = self.t0

    def __call__(self, index: int, total: int, leaves: int, steps: int) -> None:
        now = time.monotonic()
        if now - self.last < self.every:
            return
        self.last = now
        rate = steps / max(now - self.t0, 1e-9)
        log.info("partition %d/%d, %d complete colourings, %.0f steps/s", index, total, leaves, rate)
