"""Support tau-tilting pairs: rigidity, enumeration, completions, mutation and exchange sequences."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .indec import IndecPool, PoolError, decompose, pool_direct_sum
from .linalg import Matrix, hstack, kernel_basis, rank
from .rep import (
    Morphism, Representation, ShortExactSequence, cokernel, compose, direct_sum, direct_sum_maps,
    hom_basis, is_faithful, morphism_into_sum, regular_module, span_rank,
    universal_extension_middle,
)


class EngineError(RuntimeError):
    """An internal consistency check failed."""


@dataclass(frozen=True, order=True)
class SupportTauTiltingPair:
    modules: tuple[int, ...]  # pool indices, sorted
    support: tuple[int, ...] = ()  # vertices v with P_v in the projective part, sorted

    @staticmethod
    def of(modules: Iterable[int], support: Iterable[int] = ()) -> "SupportTauTiltingPair":
        ms, ps = tuple(sorted(set(modules))), tuple(sorted(set(support)))
        return SupportTauTiltingPair(ms, ps)

    def size(self) -> int:
        return len(self.modules) + len(self.support)

    def key(self, pool: IndecPool) -> tuple:
        return (len(self.support), self.support, tuple(sorted(pool[i].dim for i in self.modules)))

    def dims(self, pool: IndecPool) -> list[tuple[int, ...]]:
        return sorted(pool[i].dim for i in self.modules)

    def total_dim(self, pool: IndecPool) -> tuple[int, ...]:
        return tuple(sum(pool[i].dim[v] for i in self.modules) for v in range(pool.n))

    def label(self, pool: IndecPool) -> str:
        mods = "+".join("(" + ",".join(map(str, d)) + ")" for d in self.dims(pool)) or "0"
        if self.support:
            names = pool.quiver.vertices
            return f"{mods} | P{{{','.join(names[v] for v in self.support)}}}"
        return mods


Pair = SupportTauTiltingPair


def sort_pairs(pool: IndecPool, pairs: Iterable[Pair]) -> list[Pair]:
    return sorted(pairs, key=lambda p: p.key(pool))


def regular_pair(pool: IndecPool) -> Pair:
    return Pair.of(pool.projective_index(v) for v in range(pool.n))


def zero_pair(pool: IndecPool) -> Pair:
    return Pair.of((), range(pool.n))


def _check_ids(pool: IndecPool, modules: Iterable[int], support: Iterable[int] = ()) -> None:
    for i in modules:
        if not 0 <= i < len(pool):
            raise PoolError(f"unknown module id {i}")
    for v in support:
        if not 0 <= v < pool.n:
            raise PoolError(f"unknown vertex {v}")


# -- rigidity ----------------------------------------------------------------------------

def compatible(pool: IndecPool, x: int, y: int) -> bool:
    return pool.hom_to_tau(x, y) == 0 and pool.hom_to_tau(y, x) == 0


def is_tau_rigid(pool: IndecPool, modules: Iterable[int]) -> bool:
    ms = list(modules)
    _check_ids(pool, ms)
    return all(pool.hom_to_tau(x, y) == 0 for x in ms for y in ms)


def is_tau_rigid_pair(pool: IndecPool, modules: Iterable[int], support: Iterable[int] = ()) -> bool:
    ms, ps = list(modules), list(support)
    _check_ids(pool, ms, ps)
    if not is_tau_rigid(pool, ms):
        return False
    return all(pool[x].dim[v] == 0 for x in ms for v in ps)


def is_support_tau_tilting(pool: IndecPool, pair: Pair) -> bool:
    return pair.size() == pool.n and is_tau_rigid_pair(pool, pair.modules, pair.support)


def is_partial_tilting(pool: IndecPool, modules: Iterable[int]) -> bool:
    """Ext^1(M, M) = 0 (projective dimension at most one is automatic over a path algebra)."""
    ms = list(modules)
    _check_ids(pool, ms)
    return all(pool.ext[x][y] == 0 for x in ms for y in ms)


# -- enumeration ------------------------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def maximal_cliques(adj: Sequence[int], nodes: int) -> Iterator[int]:
    """Bron-Kerbosch with pivoting over bitmask adjacency; yields cliques as bitmasks."""

    def expand(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        pivot = max(_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            yield from expand(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            cand &= ~low

    yield from expand(0, nodes, 0)


def all_cliques(adj: Sequence[int], nodes: int) -> Iterator[int]:
    """Every clique (including the empty one), each exactly once."""

    def grow(r: int, p: int) -> Iterator[int]:
        yield r
        while p:
            low = p & -p
            v = low.bit_length() - 1
            p &= ~low
            yield from grow(r | low, p & adj[v])

    yield from grow(0, nodes)


def compatibility_graph(pool: IndecPool) -> tuple[list[int], int]:
    """Adjacency over pool modules followed by the shifted projectives ``P_v[1]``."""
    size = len(pool)
    n = pool.n
    adj = [0] * (size + n)
    nodes = 0
    rigid = [pool.hom_to_tau(i, i) == 0 for i in range(size)]
    for i in range(size):
        if not rigid[i]:
            continue
        nodes |= 1 << i
        for j in range(i + 1, size):
            if rigid[j] and compatible(pool, i, j):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        for v in range(n):
            if pool[i].dim[v] == 0:
                adj[i] |= 1 << (size + v)
                adj[size + v] |= 1 << i
    for v in range(n):
        nodes |= 1 << (size + v)
        for w in range(n):
            if w != v:
                adj[size + v] |= 1 << (size + w)
    return adj, nodes


def _pair_from_mask(pool: IndecPool, mask: int) -> Pair:
    size = len(pool)
    items = list(_bits(mask))
    return Pair.of([i for i in items if i < size], [i - size for i in items if i >= size])


def enumerate_support_tau_tilting(pool: IndecPool) -> list[Pair]:
    """All support tau-tilting pairs over the pool, in canonical order.

    Maximal cliques of the compatibility graph; on a bounded pool only those
    reaching size n are kept and the list is partial.
    """
    adj, nodes = compatibility_graph(pool)
    out = []
    for clique in maximal_cliques(adj, nodes):
        if clique.bit_count() == pool.n:
            out.append(_pair_from_mask(pool, clique))
        elif pool.exhaustive:
            raise EngineError(f"maximal tau-rigid pair of size {clique.bit_count()} != n")
    return sort_pairs(pool, out)


def tau_tilting_modules(pairs: Iterable[Pair]) -> list[Pair]:
    return [p for p in pairs if not p.support]


def partial_tilting_sets(pool: IndecPool, size: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every basic partial tilting module (as sorted pool ids), optionally of a fixed size."""
    n = len(pool)
    rigid = [pool.ext[i][i] == 0 for i in range(n)]
    adj = [0] * n
    nodes = 0
    for i in range(n):
        if not rigid[i]:
            continue
        nodes |= 1 << i
        for j in range(n):
            if j != i and rigid[j] and pool.ext[i][j] == 0 and pool.ext[j][i] == 0:
                adj[i] |= 1 << j
    for clique in all_cliques(adj, nodes):
        if size is None or clique.bit_count() == size:
            yield tuple(_bits(clique))


# -- torsion classes -------------------------------------------------------------------------

def torsion_mask(pool: IndecPool, pair: Pair) -> int:
    """``Fac M`` within the pool as a bitmask, via Fac M = {X : Hom(X, tau M) = 0, Hom(P, X) = 0}."""
    mask = 0
    for z in range(len(pool)):
        if any(pool[z].dim[v] for v in pair.support):
            continue
        if all(pool.hom_to_tau(z, m) == 0 for m in pair.modules):
            mask |= 1 << z
    return mask


def generated_by(pool: IndecPool, modules: Sequence[int], z: int) -> bool:
    """Trace test: the images of all maps from ``modules`` to ``z`` fill ``z``."""
    dims = pool[z].dim
    for v in range(pool.n):
        if dims[v] == 0:
            continue
        blocks = [c for m in modules if pool.hom[m][z] for c in [pool.trace(m, z)[v]] if c.cols]
        if not blocks or rank(hstack(blocks, rows=dims[v])) < dims[v]:
            return False
    return True


def fac_mask(pool: IndecPool, modules: Sequence[int]) -> int:
    """``Fac M`` within the pool by trace tests."""
    mask = 0
    for z in range(len(pool)):
        if generated_by(pool, modules, z):
            mask |= 1 << z
    return mask


def ext_projectives(pool: IndecPool, mask: int) -> list[int]:
    members = list(_bits(mask))
    return [e for e in members if all(pool.ext[e][w] == 0 for w in members)]


def ext_projectives_of_fac(pool: IndecPool, modules: Sequence[int]) -> list[int]:
    """Ext-projective indecomposables of ``Fac T`` (pool members, by trace tests)."""
    return ext_projectives(pool, fac_mask(pool, modules))


# -- Bongartz completions ---------------------------------------------------------------------

def bongartz_completion_torsion(pool: IndecPool, modules: Iterable[int]) -> Pair:
    """Ext-projectives of the torsion class ``{X : Hom(X, tau M) = 0}``."""
    ms = sorted(set(modules))
    if not is_tau_rigid(pool, ms):
        raise ValueError("input is not tau-rigid")
    mask = 0
    for z in range(len(pool)):
        if all(pool.hom_to_tau(z, m) == 0 for m in ms):
            mask |= 1 << z
    result = Pair.of(ext_projectives(pool, mask))
    if pool.exhaustive:
        if result.size() != pool.n or not set(ms) <= set(result.modules):
            raise EngineError(f"torsion completion of {ms} is not a tau-tilting module containing it")
    return result


def bongartz_completion_extension(pool: IndecPool, modules: Iterable[int]) -> Pair:
    """``M`` plus the summands of ``E`` in the universal sequence ``0 -> A -> E -> M^s -> 0``."""
    ms = sorted(set(modules))
    if not is_partial_tilting(pool, ms):
        raise ValueError("input is not partial tilting")
    a = regular_module(pool.quiver)
    if not ms:
        return Pair.of(decompose(a, pool))
    ue = universal_extension_middle(pool_direct_sum(pool, ms), a)
    if not ue.sequence.is_exact():
        raise EngineError("universal extension sequence is not exact")
    return Pair.of(set(ms) | set(decompose(ue.middle, pool)))


# -- approximations ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Approximation:
    source: Representation
    components: tuple[tuple[int, Morphism], ...]  # (pool id j, map X -> U_j) per summand copy
    middle: Representation
    map: Morphism

    @property
    def multiplicities(self) -> Counter:
        return Counter(j for j, _ in self.components)


def _covers(pool: IndecPool, x: Representation, comps, targets: Sequence[int], need: dict[int, int]) -> bool:
    for j in targets:
        if need[j] == 0:
            continue
        maps = [compose(t, phi) for k, phi in comps for t in pool.hom_basis(k, j)]
        if span_rank(maps) < need[j]:
            return False
    return True


def minimal_left_approximation(pool: IndecPool, x: int, targets: Iterable[int]) -> Approximation:
    """Minimal left add(U)-approximation of pool module ``x``.

    Starts from the universal map into ``U_j^(dim Hom(X, U_j))`` and deletes
    codomain copies while the approximation property survives.
    """
    targets = sorted(set(targets))
    xr = pool[x].rep
    need = {j: pool.hom[x][j] for j in targets}
    comps = [(j, phi) for j in targets for phi in pool.hom_basis(x, j)]
    k = len(comps) - 1
    while k >= 0:
        trial = comps[:k] + comps[k + 1:]
        if _covers(pool, xr, trial, targets, need):
            comps = trial
        k -= 1
    middle = direct_sum([pool[j].rep for j, _ in comps], pool.quiver)
    f = morphism_into_sum(xr, [phi for _, phi in comps], middle)
    return Approximation(xr, tuple(comps), middle, f)


def _end_basis(pool: IndecPool, ids: Sequence[int]):
    """Basis of End(U_{ids[0]} + ...) as (a, b, h) with h: U_a -> U_b; flags scalar entries."""
    basis, scalar = [], []
    for a, ja in enumerate(ids):
        for b, jb in enumerate(ids):
            for h in pool.hom_basis(ja, jb):
                if ja == jb:
                    scalar.append(len(basis))
                basis.append((a, b, h))
    return basis, scalar


def is_left_minimal(pool: IndecPool, approx: Approximation) -> bool:
    """Every ``t`` in End(U') with ``t f = 0`` is radical (no scalar blocks between equal summands)."""
    ids = [j for j, _ in approx.components]
    phis = [phi for _, phi in approx.components]
    basis, scalar = _end_basis(pool, ids)
    lengths = [len(phi.flat()) for phi in phis]
    offsets = [sum(lengths[:b]) for b in range(len(ids))]
    total = sum(lengths)
    cols = []
    for a, b, h in basis:
        col = [0] * total
        col[offsets[b]:offsets[b] + lengths[b]] = compose(h, phis[a]).flat()
        cols.append(col)
    return _kernel_avoids(cols, scalar, total)


def is_right_minimal(pool: IndecPool, ids: Sequence[int], g: Morphism) -> bool:
    """Every ``t`` in End(M') with ``g t = 0`` is radical."""
    _, incl, _ = direct_sum_maps([pool[j].rep for j in ids])
    gb = [compose(g, i) for i in incl]
    basis, scalar = _end_basis(pool, ids)
    lengths = [len(x.flat()) for x in gb]
    offsets = [sum(lengths[:a]) for a in range(len(ids))]
    total = sum(lengths)
    cols = []
    for a, b, h in basis:
        col = [0] * total
        col[offsets[a]:offsets[a] + lengths[a]] = compose(gb[b], h).flat()
        cols.append(col)
    return _kernel_avoids(cols, scalar, total)


def _kernel_avoids(cols: list[list], scalar: list[int], total: int) -> bool:
    if not cols or not scalar:
        return True
    if total == 0:
        return False
    ker = kernel_basis(Matrix.from_columns(cols, total))
    return all(all(x == 0 for x in ker.row(c)) for c in scalar)


def is_left_approximation(pool: IndecPool, approx: Approximation, x: int, targets: Iterable[int]) -> bool:
    targets = sorted(set(targets))
    need = {j: pool.hom[x][j] for j in targets}
    return _covers(pool, approx.source, list(approx.components), targets, need)


def is_right_approximation(pool: IndecPool, ids: Sequence[int], g: Morphism, targets: Iterable[int]) -> bool:
    """Every map ``U_j -> Y`` (j in targets) factors through ``g``."""
    _, incl, _ = direct_sum_maps([pool[j].rep for j in ids]) if ids else (None, [], [])
    gb = [compose(g, i) for i in incl]
    for j in sorted(set(targets)):
        want = hom_basis(pool[j].rep, g.target)
        if not want:
            continue
        got = [compose(gb[b], h) for b, jb in enumerate(ids) for h in pool.hom_basis(j, jb)]
        if span_rank(got) < len(want) or span_rank(got + want) != span_rank(got):
            return False
    return True


# -- mutation -------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExchangeSequenceRecord:
    """Left-mutation data ``X -> U' -> Y -> 0`` behind one mutation.

    For a left mutation ``X`` is the removed summand; for a right mutation the
    record is that of the inverse left mutation, so ``X`` is the added summand.
    """
    direction: str  # "left" or "right"
    removed: tuple[str, int]  # ("module", pool id) or ("vertex", v)
    added: tuple[str, int]
    x: int | None
    approximation: Approximation | None
    cokernel_map: Morphism | None
    cokernel: Counter = field(default_factory=Counter)
    source: Pair | None = None
    result: Pair | None = None

    @property
    def middle(self) -> Counter:
        return self.approximation.multiplicities if self.approximation else Counter()

    def is_exact(self) -> bool:
        """Exact at U' and Y: g surjective and im f = ker g."""
        if self.approximation is None:
            return True
        f, g = self.approximation.map, self.cokernel_map
        for fb, gb in zip(f.blocks, g.blocks):
            if rank(gb) != gb.rows or not (gb @ fb).is_zero():
                return False
            if rank(fb) != gb.cols - rank(gb):
                return False
        return True


def _left_mutation(pool: IndecPool, pair: Pair, x: int) -> ExchangeSequenceRecord:
    rest = [m for m in pair.modules if m != x]
    approx = minimal_left_approximation(pool, x, rest)
    y, g = cokernel(approx.map)
    if y.is_zero():
        u_dim = tuple(sum(pool[m].dim[v] for m in rest) for v in range(pool.n))
        free = [v for v in range(pool.n) if v not in pair.support and u_dim[v] == 0]
        if len(free) != 1:
            raise EngineError(f"zero cokernel but {len(free)} candidate support vertices")
        new = Pair.of(rest, set(pair.support) | {free[0]})
        added = ("vertex", free[0])
        parts: Counter = Counter()
    else:
        parts = decompose(y, pool)
        if len(parts) != 1:
            raise EngineError(f"cokernel has {len(parts)} distinct summands")
        y1 = next(iter(parts))
        new = Pair.of(set(rest) | {y1}, pair.support)
        added = ("module", y1)
    return ExchangeSequenceRecord("left", ("module", x), added, x, approx, g, parts, pair, new)


def _completions(pool: IndecPool, modules: Sequence[int], support: Sequence[int]) -> list[tuple[str, int]]:
    """Items completing the almost complete pair ``(modules, support)`` (inverse search)."""
    out = []
    mods = set(modules)
    for z in range(len(pool)):
        if z in mods or pool.hom_to_tau(z, z):
            continue
        if any(pool[z].dim[v] for v in support):
            continue
        if all(compatible(pool, z, m) for m in modules):
            out.append(("module", z))
    for v in range(pool.n):
        if v not in support and all(pool[m].dim[v] == 0 for m in modules):
            out.append(("vertex", v))
    return out


def _apply(pair_modules, pair_support, item) -> Pair:
    kind, idx = item
    if kind == "module":
        return Pair.of(set(pair_modules) | {idx}, pair_support)
    return Pair.of(pair_modules, set(pair_support) | {idx})


def mutate(pool: IndecPool, pair: Pair, module: int | None = None,
           vertex: int | None = None) -> tuple[Pair, ExchangeSequenceRecord]:
    """Mutation of a support tau-tilting pair at a summand or a support vertex."""
    if (module is None) == (vertex is None):
        raise ValueError("give exactly one of module or vertex")
    if module is not None and module not in pair.modules:
        raise ValueError(f"module {module} is not a summand of the pair")
    if vertex is not None and vertex not in pair.support:
        raise ValueError(f"vertex {vertex} is not in the support part of the pair")
    if module is not None:
        rest = [m for m in pair.modules if m != module]
        if not generated_by(pool, rest, module):
            rec = _left_mutation(pool, pair, module)
            _check_direction(pool, pair, rec.result, "left")
            return rec.result, rec
        removed = ("module", module)
        base_m, base_p = rest, list(pair.support)
    else:
        removed = ("vertex", vertex)
        base_m, base_p = list(pair.modules), [v for v in pair.support if v != vertex]
    others = [it for it in _completions(pool, base_m, base_p) if it != removed]
    if not others:
        raise PoolError(f"no other completion of {pair.label(pool)} inside the pool")
    if len(others) > 1:
        raise EngineError(f"{len(others)} alternative completions; expected exactly one")
    added = others[0]
    new = _apply(base_m, base_p, added)
    if added[0] != "module":
        raise EngineError("right mutation cannot add a support vertex")
    back = _left_mutation(pool, new, added[1])
    if back.result != pair:
        raise EngineError("inverse left mutation does not return to the original pair")
    _check_direction(pool, pair, new, "right")
    rec = ExchangeSequenceRecord("right", removed, added, added[1], back.approximation, back.cokernel_map,
                                 back.cokernel, pair, new)
    return new, rec


def _check_direction(pool: IndecPool, old: Pair, new: Pair, direction: str) -> None:
    a, b = torsion_mask(pool, old), torsion_mask(pool, new)
    smaller, larger = (b, a) if direction == "left" else (a, b)
    if smaller == larger or smaller & ~larger:
        raise EngineError(f"{direction} mutation does not shrink/grow Fac as expected")


def positions(pair: Pair) -> list[tuple[str, int]]:
    return [("module", m) for m in pair.modules] + [("vertex", v) for v in pair.support]


def mutate_at(pool: IndecPool, pair: Pair, item: tuple[str, int]) -> tuple[Pair, ExchangeSequenceRecord]:
    kind, idx = item
    return mutate(pool, pair, module=idx) if kind == "module" else mutate(pool, pair, vertex=idx)


# -- almost complete tilting modules --------------------------------------------------------

@dataclass(frozen=True)
class Complements:
    almost: tuple[int, ...]
    complements: tuple[int, ...]
    faithful: bool
    bongartz: int | None


def complements_of_almost_complete(pool: IndecPool, modules: Iterable[int]) -> Complements:
    ms = tuple(sorted(set(modules)))
    if len(ms) != pool.n - 1 or not is_partial_tilting(pool, ms):
        raise ValueError("input is not an almost complete tilting module")
    cands = tuple(z for z in range(len(pool))
                  if z not in ms and pool.ext[z][z] == 0
                  and all(pool.ext[z][m] == 0 and pool.ext[m][z] == 0 for m in ms))
    faithful = is_faithful(pool_direct_sum(pool, ms))
    bong = bongartz_completion_torsion(pool, ms)
    b = [z for z in cands if Pair.of(ms + (z,)) == bong]
    return Complements(ms, cands, faithful, b[0] if b else None)


@dataclass(frozen=True, eq=False)
class ExchangeSequence:
    x: int
    y: int
    almost: tuple[int, ...]
    middle_ids: tuple[int, ...]
    sequence: ShortExactSequence
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def middle(self) -> Counter:
        return Counter(self.middle_ids)


class ExchangeError(EngineError):
    pass


def exchange_sequence(pool: IndecPool, x: int, y: int, modules: Iterable[int]) -> ExchangeSequence:
    """Nonsplit ``0 -> X -> M' -> Y -> 0`` with ``M'`` in add M, built from a left approximation.

    The two complements are swapped if the extension only exists the other way.
    """
    ms = sorted(set(modules))
    if pool.ext[y][x] == 0:
        if pool.ext[x][y] == 0:
            raise ExchangeError("no extension between the two complements in either order")
        x, y = y, x
    approx = minimal_left_approximation(pool, x, ms)
    ids = tuple(j for j, _ in approx.components)
    c, g = cokernel(approx.map)
    seq = ShortExactSequence(approx.map, g)
    parts = decompose(c, pool) if not c.is_zero() else Counter()
    mid = Counter(ids)
    checks = {
        "exact": seq.is_exact(),
        "cokernel_is_y": parts == Counter({y: 1}),
        "nonsplit": mid != Counter({x: 1, y: 1}),
        "left_approximation": is_left_approximation(pool, approx, x, ms),
        "left_minimal": is_left_minimal(pool, approx),
        "right_approximation": is_right_approximation(pool, list(ids), g, ms),
        "right_minimal": is_right_minimal(pool, list(ids), g),
        "disjoint_from_ends": x not in mid and y not in mid,
    }
    return ExchangeSequence(x, y, tuple(ms), ids, seq, checks)


def almost_complete_tilting_sets(pool: IndecPool) -> list[tuple[int, ...]]:
    return sorted(partial_tilting_sets(pool, pool.n - 1))


def group_by_almost(pairs: Sequence[Pair]) -> dict:
    groups = defaultdict(list)
    for idx, p in enumerate(pairs):
        for item in positions(p):
            kind, i = item
            rest = (tuple(m for m in p.modules if not (kind == "module" and m == i)),
                    tuple(v for v in p.support if not (kind == "vertex" and v == i)))
            groups[rest].append((idx, item))
    return groups
