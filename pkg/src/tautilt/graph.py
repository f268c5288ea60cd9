"""The support tau-tilting quiver, its Hasse-diagram cross-check, the tilting subquiver and saturation."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .indec import IndecPool, PoolError, pool_direct_sum
from .rep import is_faithful
from .tilting import (
    EngineError, Pair, enumerate_support_tau_tilting, generated_by, group_by_almost, mutate_at,
    positions, regular_pair, sort_pairs, torsion_mask, _bits,
)

log = logging.getLogger(__name__)

Item = tuple[str, int]


@dataclass(frozen=True, order=True)
class Edge:
    source: int
    target: int
    removed: Item  # summand of the source that is exchanged
    added: Item  # its replacement in the target


@dataclass(eq=False)
class MutationQuiver:
    pool: IndecPool
    vertices: list[Pair]
    edges: list[Edge]
    exhaustive: bool
    frontier: frozenset[int] = frozenset()  # vertices whose neighbourhood was not fully explored
    tilting: list[bool] = field(default_factory=list)
    depth: int | None = None

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.vertices)}
        if not self.tilting:
            self.tilting = [is_tilting(self.pool, p) for p in self.vertices]

    def __len__(self) -> int:
        return len(self.vertices)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from((e.source, e.target) for e in self.edges)
        return g

    def out_degree(self, i: int) -> int:
        return sum(1 for e in self.edges if e.source == i)

    def in_degree(self, i: int) -> int:
        return sum(1 for e in self.edges if e.target == i)

    def degrees(self) -> list[tuple[int, int]]:
        out = [[0, 0] for _ in self.vertices]
        for e in self.edges:
            out[e.source][0] += 1
            out[e.target][1] += 1
        return [tuple(d) for d in out]

    def sources(self) -> list[int]:
        return [i for i, (o, e) in enumerate(self.degrees()) if e == 0]

    def sinks(self) -> list[int]:
        return [i for i, (o, e) in enumerate(self.degrees()) if o == 0]

    def labeled_edges(self) -> set[tuple[Pair, Pair]]:
        return {(self.vertices[e.source], self.vertices[e.target]) for e in self.edges}


def is_tilting(pool: IndecPool, pair: Pair) -> bool:
    """``P = 0``, ``n`` summands and faithful."""
    if pair.support or len(pair.modules) != pool.n:
        return False
    return is_faithful(pool_direct_sum(pool, pair.modules))


# -- exhaustive construction -----------------------------------------------------------

def _orient(pool: IndecPool, rest: tuple, a: tuple[int, Item], b: tuple[int, Item]) -> Edge:
    """Arrow ``T -> U`` when U is the left mutation of T, i.e. the removed summand of T is not in Fac(rest)."""
    rest_modules = list(rest[0])
    left = {}
    for idx, (kind, i) in (a, b):
        if kind == "module":
            left[idx] = not generated_by(pool, rest_modules, i)
    (ia, item_a), (ib, item_b) = a, b
    if len(left) == 2:
        if left[ia] == left[ib]:
            raise EngineError("both or neither completion is a left mutation of the other")
        src = ia if left[ia] else ib
    elif len(left) == 1:
        (src, is_left), = left.items()
        if not is_left:
            raise EngineError("mutation towards a support vertex must be a left mutation")
    else:
        raise EngineError("two pairs differ only in their support parts")
    if src == ia:
        return Edge(ia, ib, item_a, item_b)
    return Edge(ib, ia, item_b, item_a)


def _exhaustive(pool: IndecPool, verify_exchange: bool) -> MutationQuiver:
    pairs = enumerate_support_tau_tilting(pool)
    groups = group_by_almost(pairs)
    edges = []
    for rest in sorted(groups):
        members = groups[rest]
        if len(members) != 2:
            raise EngineError(f"almost complete pair {rest} has {len(members)} completions")
        edges.append(_orient(pool, rest, members[0], members[1]))
    edges.sort()
    mq = MutationQuiver(pool, pairs, edges, exhaustive=True)
    masks = [torsion_mask(pool, p) for p in pairs]
    for e in edges:
        a, b = masks[e.source], masks[e.target]
        if a == b or b & ~a:
            raise EngineError(f"arrow {e} does not shrink the torsion class")
    if verify_exchange:
        verify_mutations(mq)
    return mq


def verify_mutations(mq: MutationQuiver) -> None:
    """Recompute every arrow by an explicit mutation (approximation and cokernel)."""
    by_end = {(e.source, e.removed): e for e in mq.edges}
    by_end.update({(e.target, e.added): e for e in mq.edges})
    for i, p in enumerate(mq.vertices):
        for item in positions(p):
            new, rec = mutate_at(mq.pool, p, item)
            e = by_end[(i, item)]
            other = e.target if e.source == i else e.source
            want = "left" if e.source == i else "right"
            if mq.vertices[other] != new or rec.direction != want or not rec.is_exact():
                raise EngineError(f"mutation of {p.label(mq.pool)} at {item} disagrees with the quiver")


# -- bounded exploration --------------------------------------------------------------------

def explore(pool: IndecPool, start: Pair, depth: int) -> MutationQuiver:
    """Breadth-first mutation from ``start`` to distance ``depth``.

    Vertices at the last layer, or where a mutation leaves the pool, form the frontier.
    """
    dist = {start: 0}
    queue = deque([start])
    found: set[tuple[Pair, Pair, Item, Item]] = set()
    frontier = set()
    while queue:
        p = queue.popleft()
        if dist[p] >= depth:
            frontier.add(p)
            continue
        for item in positions(p):
            try:
                new, rec = mutate_at(pool, p, item)
            except PoolError as exc:
                log.debug("boundary at %s: %s", p.label(pool), exc)
                frontier.add(p)
                continue
            if new not in dist:
                dist[new] = dist[p] + 1
                queue.append(new)
            if rec.direction == "left":
                found.add((p, new, item, rec.added))
            else:
                found.add((new, p, rec.added, item))
    vertices = sort_pairs(pool, dist)
    index = {p: i for i, p in enumerate(vertices)}
    edges = sorted(Edge(index[a], index[b], r, s) for a, b, r, s in found)
    return MutationQuiver(pool, vertices, edges, exhaustive=False,
                          frontier=frozenset(index[p] for p in frontier), depth=depth)


def build_mutation_quiver(pool: IndecPool, start: Pair | None = None, depth: int | None = None,
                          verify_exchange: bool = False) -> MutationQuiver:
    """Whole quiver for an exhaustive pool, otherwise a BFS ball around ``start`` (default: A)."""
    if pool.exhaustive and depth is None:
        return _exhaustive(pool, verify_exchange)
    if depth is None:
        raise ValueError("a depth bound is required for a non-exhaustive pool")
    return explore(pool, start if start is not None else regular_pair(pool), depth)


# -- Hasse diagram ---------------------------------------------------------------------------

def hasse_diagram(masks: list[int]) -> set[tuple[int, int]]:
    """Covering pairs ``(i, j)`` with ``masks[j]`` a maximal proper subset of ``masks[i]``."""
    n = len(masks)
    if len(set(masks)) != n:
        raise EngineError("two vertices share a torsion class")
    order = sorted(range(n), key=lambda i: (-masks[i].bit_count(), i))
    width = max((m.bit_length() for m in masks), default=0)
    contain = [0] * width  # contain[z]: positions whose set holds z
    for k, i in enumerate(order):
        for z in _bits(masks[i]):
            contain[z] |= 1 << k
    full = (1 << n) - 1
    below = []
    for k, i in enumerate(order):
        d = full & ~(1 << k)
        m = masks[i]
        for z in range(width):
            if not (m >> z) & 1:
                d &= ~contain[z]
        below.append(d)
    covers = set()
    for k in range(n):
        rest = below[k]
        while rest:
            u = (rest & -rest).bit_length() - 1
            covers.add((order[k], order[u]))
            rest &= ~(below[u] | (1 << u))
    return covers


def fac_hasse(mq: MutationQuiver, subset: list[int] | None = None) -> set[tuple[Pair, Pair]]:
    ids = list(range(len(mq.vertices))) if subset is None else subset
    masks = [torsion_mask(mq.pool, mq.vertices[i]) for i in ids]
    return {(mq.vertices[ids[a]], mq.vertices[ids[b]]) for a, b in hasse_diagram(masks)}


# -- tilting subquiver and saturation ------------------------------------------------------------

def tilting_subquiver(mq: MutationQuiver) -> MutationQuiver:
    keep = [i for i, t in enumerate(mq.tilting) if t]
    new_index = {old: k for k, old in enumerate(keep)}
    edges = [Edge(new_index[e.source], new_index[e.target], e.removed, e.added)
             for e in mq.edges if e.source in new_index and e.target in new_index]
    frontier = frozenset(new_index[i] for i in mq.frontier if i in new_index)
    return MutationQuiver(mq.pool, [mq.vertices[i] for i in keep], edges, mq.exhaustive,
                          frontier, [True] * len(keep), mq.depth)


@dataclass(frozen=True)
class SaturationEntry:
    vertex: int
    pair: Pair
    dim: tuple[int, ...]
    starting: int  # arrows starting at T in the tilting quiver
    ending: int
    saturated: bool | None  # None when the vertex lies on the explored frontier
    dim_criterion: bool  # every coordinate of dim T is at least 2

    @property
    def agrees(self) -> bool | None:
        return None if self.saturated is None else self.saturated == self.dim_criterion


def saturation_report(tq: MutationQuiver) -> list[SaturationEntry]:
    n = tq.pool.n
    out = []
    for i, (o, e) in enumerate(tq.degrees()):
        p = tq.vertices[i]
        dim = p.total_dim(tq.pool)
        sat = None if i in tq.frontier else o + e == n
        out.append(SaturationEntry(i, p, dim, o, e, sat, all(d >= 2 for d in dim)))
    return out


@dataclass(frozen=True)
class ComponentSummary:
    vertices: tuple[int, ...]
    non_saturated: int
    indeterminate: int

    @property
    def size(self) -> int:
        return len(self.vertices)


def component_analysis(tq: MutationQuiver, report: list[SaturationEntry] | None = None) -> list[ComponentSummary]:
    report = report if report is not None else saturation_report(tq)
    g = tq.digraph().to_undirected()
    comps = sorted(tuple(sorted(c)) for c in nx.connected_components(g))
    out = []
    for c in comps:
        non_sat = sum(1 for i in c if report[i].saturated is False)
        unknown = sum(1 for i in c if report[i].saturated is None)
        out.append(ComponentSummary(c, non_sat, unknown))
    return out


def is_directed_path(tq: MutationQuiver, component: tuple[int, ...]) -> bool:
    sub = tq.digraph().subgraph(component)
    if len(component) == 1:
        return True
    return (nx.is_directed_acyclic_graph(sub) and sub.number_of_edges() == len(component) - 1
            and all(sub.in_degree(v) <= 1 and sub.out_degree(v) <= 1 for v in sub))
