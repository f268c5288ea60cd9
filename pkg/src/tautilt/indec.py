"""Indecomposable modules: enumeration, pool tables, and Krull-Schmidt decomposition."""

from __future__ import annotations

import heapq
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import Matrix, cokernel_projection, vstack
from .quiver import DimVector, Quiver, euler_form, representation_type
from .rep import (
    Morphism, Representation, direct_sum, ext1_via_presentation, hom_basis, hom_dim,
    injective, min_projective_presentation, projective, simple, tau, tau_inverse, trace_columns,
)

log = logging.getLogger(__name__)


class PoolError(ValueError):
    """A module or computation falls outside the supported pool."""


class UnsupportedAlgebra(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IndecModule:
    index: int
    dim: DimVector
    rep: Representation
    component: str  # "finite", "preprojective" or "preinjective"
    is_projective: bool
    is_injective: bool

    @property
    def key(self) -> DimVector:
        return self.dim

    def label(self) -> str:
        return "(" + ",".join(map(str, self.dim)) + ")"


@dataclass(eq=False)
class IndecPool:
    quiver: Quiver
    modules: list[IndecModule]
    hom: list[list[int]]
    ext: list[list[int]]
    tau: list[int | None]  # index of tau X, None when X is projective
    tau_inv: list[int | None]
    exhaustive: bool
    depth: int | None = None
    _by_dim: dict = field(default_factory=dict, repr=False)
    _hom_bases: dict = field(default_factory=dict, repr=False)
    _traces: dict = field(default_factory=dict, repr=False)
    _tau_hom: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_dim = {m.dim: m.index for m in self.modules}

    def __len__(self) -> int:
        return len(self.modules)

    def __getitem__(self, i: int) -> IndecModule:
        return self.modules[i]

    @property
    def n(self) -> int:
        return self.quiver.n

    def find(self, dim: Sequence[int]) -> int:
        try:
            return self._by_dim[tuple(dim)]
        except KeyError:
            raise PoolError(f"no pool module with dimension vector {tuple(dim)}") from None

    def projective_index(self, v: int) -> int:
        return self.find(projective(self.quiver, v).dims)

    def injective_index(self, v: int) -> int:
        return self.find(injective(self.quiver, v).dims)

    def hom_basis(self, i: int, j: int) -> list[Morphism]:
        key = (i, j)
        if key not in self._hom_bases:
            self._hom_bases[key] = hom_basis(self.modules[i].rep, self.modules[j].rep)
        return self._hom_bases[key]

    def trace(self, i: int, j: int) -> list[Matrix]:
        """Per-vertex spanning columns of the trace of module i in module j."""
        key = (i, j)
        if key not in self._traces:
            self._traces[key] = trace_columns(self.modules[i].rep, self.modules[j].rep,
                                              self.hom_basis(i, j) if self.hom[i][j] else [])
        return self._traces[key]

    def hom_to_tau(self, x: int, y: int) -> int:
        """``dim Hom(X, tau Y)`` from the pool tables; matrix-level when tau Y left the pool."""
        t = self.tau[y]
        if self.modules[y].is_projective:
            return 0
        if t is not None:
            return self.hom[x][t]
        key = (x, y)
        if key not in self._tau_hom:
            self._tau_hom[key] = hom_dim(self.modules[x].rep, tau(self.modules[y].rep))
        return self._tau_hom[key]

    def to_json(self) -> dict:
        return {
            "algebra": self.quiver.name,
            "exhaustive": self.exhaustive,
            "modules": [{"id": m.index, "dim": list(m.dim), "component": m.component,
                         "projective": m.is_projective, "injective": m.is_injective}
                        for m in self.modules],
            "hom": self.hom,
            "ext": self.ext,
            "tau": self.tau,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# -- reflection functors -----------------------------------------------------------

def reflect_at_source(rep: Representation, k: int, target_quiver: Quiver) -> Representation:
    """BGP functor S_k^- for a source ``k``; ``target_quiver`` is the quiver with arrows at k reversed."""
    q = rep.quiver
    outs = q.outgoing[k]
    h = vstack([rep.maps[a] for a in outs], cols=rep.dims[k]) if outs else Matrix.zeros(0, rep.dims[k])
    proj = cokernel_projection(h)
    dims = list(rep.dims)
    dims[k] = proj.rows
    maps = list(rep.maps)
    offset = 0
    for a in outs:
        t = q.arrow_ends[a][1]
        d = rep.dims[t]
        maps[a] = proj.select_columns(range(offset, offset + d))
        offset += d
    return Representation(target_quiver, tuple(dims), tuple(maps))


def reflection_indecomposables(q: Quiver) -> list[Representation]:
    """All indecomposables of a Dynkin quiver as S^-_{k1} ... S^-_{k(m-1)} (S_{km}).

    The vertex sequence repeats an admissible sink ordering of ``q``; the run
    stops once a full round produces only zero representations.
    """
    order = list(q.sink_first_order)
    n = q.n
    # quivers[t] = sigma_{k_t} ... sigma_{k_1} q, period n
    quivers = [q]
    for t in range(n):
        quivers.append(quivers[-1].reflect(order[t]))
    out: list[Representation] = []
    zeros_in_row = 0
    m = 0
    while zeros_in_row < n:
        k_m = order[m % n]
        rep = simple(quivers[m % n], k_m)
        for t in range(m - 1, -1, -1):
            k_t = order[t % n]
            rep = reflect_at_source(rep, k_t, quivers[t % n])
            if rep.is_zero():
                break
        m += 1
        if rep.is_zero():
            zeros_in_row += 1
            continue
        zeros_in_row = 0
        out.append(rep)
    return out


def tau_orbits(q: Quiver, depth: int) -> tuple[list[Representation], list[Representation]]:
    """``tau^-k P_i`` and ``tau^k I_i`` for ``0 <= k < depth`` (stops early at zero)."""
    pre, post = [], []
    for i in range(q.n):
        x = projective(q, i)
        for _ in range(depth):
            if x.is_zero():
                break
            pre.append(x)
            x = tau_inverse(x)
        y = injective(q, i)
        for _ in range(depth):
            if y.is_zero():
                break
            post.append(y)
            y = tau(y)
    return pre, post


# -- pool construction ---------------------------------------------------------------

def _hom_row(args):
    reps, i = args
    return [hom_dim(reps[i], r) for r in reps]


def _ext_row(args):
    reps, i = args
    pres = min_projective_presentation(reps[i])
    return [ext1_via_presentation(reps[i], r, pres) for r in reps]


def _tables(reps: list[Representation], workers: int) -> tuple[list[list[int]], list[list[int]]]:
    jobs = [(reps, i) for i in range(len(reps))]
    if workers > 1 and len(reps) > 8:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hom = list(ex.map(_hom_row, jobs))
            ext = list(ex.map(_ext_row, jobs))
    else:
        hom = [_hom_row(j) for j in jobs]
        ext = [_ext_row(j) for j in jobs]
    return hom, ext


def _hom_order(reps: list[Representation], hom: list[list[int]]) -> list[int]:
    """Topological order of the relation 'nonzero Hom' (ties keep construction order)."""
    n = len(reps)
    indeg = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and hom[i][j]:
                indeg[j] += 1
    order, ready = [], [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in range(n):
            if i != j and hom[i][j]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(ready, j)
    if len(order) != n:
        raise PoolError("Hom relation on the pool has a cycle; pool is not directed")
    return order


def build_pool(q: Quiver, reps: list[Representation], components: list[str], exhaustive: bool,
               depth: int | None = None, workers: int = 1) -> IndecPool:
    dims = [r.dims for r in reps]
    if len(set(dims)) != len(dims):
        raise PoolError("two pool modules share a dimension vector")
    hom, ext = _tables(reps, workers)
    order = _hom_order(reps, hom)
    reps = [reps[i] for i in order]
    components = [components[i] for i in order]
    hom = [[hom[i][j] for j in order] for i in order]
    ext = [[ext[i][j] for j in order] for i in order]
    proj_dims = {projective(q, v).dims for v in range(q.n)}
    inj_dims = {injective(q, v).dims for v in range(q.n)}
    modules = []
    for idx, r in enumerate(reps):
        if hom[idx][idx] != 1:
            raise PoolError(f"module {r.dims} has End of dimension {hom[idx][idx]}")
        modules.append(IndecModule(idx, r.dims, r, components[idx], r.dims in proj_dims, r.dims in inj_dims))
    by_dim = {m.dim: m.index for m in modules}
    tau_tab: list[int | None] = []
    tau_inv_tab: list[int | None] = []
    for m in modules:
        if m.is_projective:
            tau_tab.append(None)
        else:
            tau_tab.append(by_dim.get(tau(m.rep).dims))
        if m.is_injective:
            tau_inv_tab.append(None)
        else:
            tau_inv_tab.append(by_dim.get(tau_inverse(m.rep).dims))
    return IndecPool(q, modules, hom, ext, tau_tab, tau_inv_tab, exhaustive, depth)


def enumerate_indecomposables(q: Quiver, depth: int | None = None, workers: int = 1) -> IndecPool:
    """Pool of indecomposables.

    Representation-finite quivers: every indecomposable, via reflection
    functors.  Otherwise the preprojective and preinjective tau-orbits of
    length ``depth`` (required); the pool is then flagged non-exhaustive.
    """
    kind = representation_type(q)
    if kind == "finite":
        reps = reflection_indecomposables(q)
        return build_pool(q, reps, ["finite"] * len(reps), exhaustive=True, workers=workers)
    if depth is None:
        raise UnsupportedAlgebra(f"{q.name} is representation-infinite; a depth bound is required")
    if depth < 1:
        raise ValueError("depth must be positive")
    if kind == "wild" and not (q.name == "W4" or q.name.startswith("W2")):
        raise UnsupportedAlgebra(f"{q.name} is wild; only the W presets are supported")
    pre, post = tau_orbits(q, depth)
    reps = pre + post
    comps = ["preprojective"] * len(pre) + ["preinjective"] * len(post)
    return build_pool(q, reps, comps, exhaustive=False, depth=depth, workers=workers)


# -- decomposition ----------------------------------------------------------------------

def decompose(m: Representation, pool: IndecPool) -> Counter:
    """Multiplicities of pool modules in ``m`` (Krull-Schmidt), keyed by pool index.

    Solves ``dim Hom(X_i, M) = sum_j m_j dim Hom(X_i, X_j)``, which is
    unitriangular in pool order, then checks dimensions and the dual system
    ``dim Hom(M, X_i)``.  Only modules whose dimension vector fits inside
    ``dim M`` can be summands, so the others are skipped.
    """
    if m.is_zero():
        return Counter()
    fits = [i for i, x in enumerate(pool.modules) if all(a <= b for a, b in zip(x.dim, m.dims))]
    mult: dict[int, int] = {}
    for i in reversed(fits):
        rest = hom_dim(pool[i].rep, m) - sum(c * pool.hom[i][j] for j, c in mult.items())
        if rest < 0:
            raise PoolError(f"{m.dims} is outside the supported pool")
        if rest:
            mult[i] = rest
    dim = tuple(sum(c * pool[j].dim[v] for j, c in mult.items()) for v in range(pool.n))
    if dim != m.dims:
        raise PoolError(f"{m.dims} is outside the supported pool")
    for i in fits:
        if hom_dim(m, pool[i].rep) != sum(c * pool.hom[j][i] for j, c in mult.items()):
            raise PoolError(f"{m.dims} is outside the supported pool")
    return Counter(mult)


def pool_direct_sum(pool: IndecPool, multiset: dict[int, int] | Iterable[int]) -> Representation:
    items = multiset.items() if isinstance(multiset, dict) else Counter(multiset).items()
    reps = [pool[i].rep for i, c in sorted(items) for _ in range(c)]
    return direct_sum(reps, pool.quiver)


def euler_matches(pool: IndecPool) -> bool:
    q = pool.quiver
    return all(pool.hom[i][j] - pool.ext[i][j] == euler_form(q, a.dim, b.dim)
               for i, a in enumerate(pool.modules) for j, b in enumerate(pool.modules))
