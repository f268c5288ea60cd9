"""Quiver representations and the homological toolkit over a path algebra.

Convention: a representation assigns to an arrow ``a: i -> j`` a matrix of
shape ``dim_j x dim_i`` (it maps the space at ``i`` to the space at ``j``).
The projective ``P_i`` is spanned by the paths starting at ``i`` and the
injective ``I_i`` by the duals of the paths ending at ``i``, so
``dim Hom(P_i, M) = dim M_i`` and ``dim Hom(M, I_i) = dim M_i``.  Right
``kQ``-modules correspond to these representations by ``M e_i = M_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    Matrix, block_diag, cokernel_projection, complement_basis, hstack, kernel_basis,
    left_inverse, rank, right_inverse, span_contains, sparse_rank, vstack,
)
from .quiver import DimVector, Quiver, euler_form

_ZERO = Fraction(0)
_ONE = Fraction(1)

Path = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dims: DimVector
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.n or any(d < 0 for d in self.dims):
            raise ValueError("bad dimension vector for this quiver")
        if len(self.maps) != len(q.arrows):
            raise ValueError("one matrix per arrow is required")
        for (s, t), m in zip(q.arrow_ends, self.maps):
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow matrix has shape {m.shape}, expected "
                                 f"{(self.dims[t], self.dims[s])}")

    @property
    def dim_vector(self) -> DimVector:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def path_map(self, start: int, path: Path) -> Matrix:
        """Matrix of ``path`` (arrow indices, first arrow first) from vertex ``start``."""
        m = Matrix.identity(self.dims[start])
        for k in path:
            m = self.maps[k] @ m
        return m

    def __repr__(self) -> str:
        return f"Representation({self.quiver.name}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    blocks: tuple[Matrix, ...]

    def __post_init__(self):
        for v, b in enumerate(self.blocks):
            if b.shape != (self.target.dims[v], self.source.dims[v]):
                raise ValueError("morphism block has the wrong shape")

    def commutes(self) -> bool:
        q = self.source.quiver
        for k, (s, t) in enumerate(q.arrow_ends):
            if self.target.maps[k] @ self.blocks[s] != self.blocks[t] @ self.source.maps[k]:
                return False
        return True

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_injective(self) -> bool:
        return all(rank(b) == b.cols for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks)

    def flat(self) -> list[Fraction]:
        return [x for b in self.blocks for x in b.flat()]

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, tuple(b.scale(c) for b in self.blocks))


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    f: Morphism  # X -> E
    g: Morphism  # E -> Y

    def is_exact(self) -> bool:
        if not (self.f.is_injective() and self.g.is_surjective()):
            return False
        for fb, gb in zip(self.f.blocks, self.g.blocks):
            if not (gb @ fb).is_zero():
                return False
            if rank(fb) != gb.cols - rank(gb):
                return False
        return True


# -- constructions -------------------------------------------------------------

def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``."""
    return Morphism(f.source, g.target, tuple(gb @ fb for gb, fb in zip(g.blocks, f.blocks)))


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, tuple(Matrix.identity(d) for d in m.dims))


def zero_morphism(m: Representation, n: Representation) -> Morphism:
    return Morphism(m, n, tuple(Matrix.zeros(b, a) for a, b in zip(m.dims, n.dims)))


def zero_rep(q: Quiver) -> Representation:
    return Representation(q, (0,) * q.n, tuple(Matrix.zeros(0, 0) for _ in q.arrows))


def from_matrices(q: Quiver, dims: Sequence[int], maps: dict[str, Sequence[Sequence]] | Sequence) -> Representation:
    """Build a representation from plain nested lists, keyed by arrow label or in arrow order."""
    dims = tuple(int(d) for d in dims)
    if isinstance(maps, dict):
        ordered = [maps.get(a.label) for a in q.arrows]
    else:
        ordered = list(maps)
    mats = []
    for (s, t), m in zip(q.arrow_ends, ordered):
        if m is None or dims[s] == 0 or dims[t] == 0:
            mats.append(Matrix.zeros(dims[t], dims[s]))
        else:
            mats.append(Matrix(dims[t], dims[s], m))
    return Representation(q, dims, tuple(mats))


def simple(q: Quiver, i: int) -> Representation:
    dims = tuple(1 if v == i else 0 for v in range(q.n))
    return Representation(q, dims, tuple(Matrix.zeros(dims[t], dims[s]) for s, t in q.arrow_ends))


def projective(q: Quiver, i: int) -> Representation:
    """``P_i``: basis at ``k`` is the list of paths ``i -> k``."""
    dims = tuple(len(q.paths(i, k)) for k in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrow_ends):
        src, tgt = q.paths(i, s), q.paths(i, t)
        pos = {p: r for r, p in enumerate(tgt)}
        rows = [[_ZERO] * len(src) for _ in tgt]
        for c, p in enumerate(src):
            rows[pos[p + (a,)]][c] = _ONE
        maps.append(Matrix(len(tgt), len(src), rows))
    return Representation(q, dims, tuple(maps))


def injective(q: Quiver, i: int) -> Representation:
    """``I_i``: basis at ``k`` is dual to the list of paths ``k -> i``."""
    dims = tuple(len(q.paths(k, i)) for k in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrow_ends):
        src, tgt = q.paths(s, i), q.paths(t, i)
        pos = {p: c for c, p in enumerate(src)}
        rows = [[_ZERO] * len(src) for _ in tgt]
        for r, p in enumerate(tgt):
            rows[r][pos[(a,) + p]] = _ONE
        maps.append(Matrix(len(tgt), len(src), rows))
    return Representation(q, dims, tuple(maps))


def regular_module(q: Quiver) -> Representation:
    return direct_sum([projective(q, i) for i in range(q.n)], q)


def dual_module(q: Quiver) -> Representation:
    return direct_sum([injective(q, i) for i in range(q.n)], q)


def direct_sum(reps: Sequence[Representation], quiver: Quiver | None = None) -> Representation:
    if not reps:
        if quiver is None:
            raise ValueError("empty direct sum needs a quiver")
        return zero_rep(quiver)
    q = reps[0].quiver
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.n))
    maps = tuple(block_diag([r.maps[k] for r in reps]) for k in range(len(q.arrows)))
    return Representation(q, dims, maps)


def direct_sum_maps(reps: Sequence[Representation]) -> tuple[Representation, list[Morphism], list[Morphism]]:
    """Direct sum with its canonical inclusions and projections."""
    s = direct_sum(reps)
    incl, proj = [], []
    offsets = [[0] * s.quiver.n]
    for r in reps:
        offsets.append([o + d for o, d in zip(offsets[-1], r.dims)])
    for idx, r in enumerate(reps):
        ib, pb = [], []
        for v in range(s.quiver.n):
            lo = offsets[idx][v]
            cols = [[_ONE if row == lo + c else _ZERO for c in range(r.dims[v])] for row in range(s.dims[v])]
            m = Matrix(s.dims[v], r.dims[v], cols)
            ib.append(m)
            pb.append(m.T)
        incl.append(Morphism(r, s, tuple(ib)))
        proj.append(Morphism(s, r, tuple(pb)))
    return s, incl, proj


def morphism_sum_from(source: Representation, parts: Sequence[Morphism], target: Representation) -> Morphism:
    """The map ``source -> target`` whose restriction to the i-th summand is ``parts[i]``.

    ``source`` must be the direct sum of the sources of ``parts`` in order.
    """
    blocks = []
    for v in range(source.quiver.n):
        blocks.append(hstack([p.blocks[v] for p in parts], rows=target.dims[v]) if parts
                      else Matrix.zeros(target.dims[v], 0))
    return Morphism(source, target, tuple(blocks))


def morphism_into_sum(source: Representation, parts: Sequence[Morphism], target: Representation) -> Morphism:
    """The map ``source -> target`` with components ``parts`` into the summands of ``target``."""
    blocks = []
    for v in range(source.quiver.n):
        blocks.append(vstack([p.blocks[v] for p in parts], cols=source.dims[v]) if parts
                      else Matrix.zeros(0, source.dims[v]))
    return Morphism(source, target, tuple(blocks))


def morphism_direct_sum(maps: Sequence[Morphism], source: Representation, target: Representation) -> Morphism:
    return Morphism(source, target, tuple(block_diag([m.blocks[v] for m in maps])
                                          for v in range(source.quiver.n)))


def dual(m: Representation, quiver: Quiver | None = None) -> Representation:
    """``D M``, a representation of the opposite quiver (transposed matrices)."""
    q = quiver if quiver is not None else m.quiver.opposite()
    return Representation(q, m.dims, tuple(x.T for x in m.maps))


# -- Hom ------------------------------------------------------------------------

def _hom_rows(m: Representation, n: Representation) -> tuple[list[dict[int, Fraction]], list[int], int]:
    """Sparse rows ``{column: value}`` of the commutativity system for Hom(M, N)."""
    q = m.quiver
    offsets = []
    total = 0
    for v in range(q.n):
        offsets.append(total)
        total += n.dims[v] * m.dims[v]
    rows = []
    for k, (s, t) in enumerate(q.arrow_ends):
        na, ma = n.maps[k], m.maps[k]
        dms, dmt, dns = m.dims[s], m.dims[t], n.dims[s]
        ma_rows = [ma.row(kk) for kk in range(dmt)]
        for r in range(n.dims[t]):
            na_row = na.row(r)
            for c in range(dms):
                row: dict[int, Fraction] = {}
                # (N_a phi_s)[r, c]
                for kk in range(dns):
                    x = na_row[kk]
                    if x:
                        row[offsets[s] + kk * dms + c] = x
                # -(phi_t M_a)[r, c]
                for kk in range(dmt):
                    x = ma_rows[kk][c]
                    if x:
                        j = offsets[t] + r * dmt + kk
                        y = row.get(j, 0) - x
                        if y:
                            row[j] = y
                        else:
                            row.pop(j, None)
                if row:
                    rows.append(row)
    return rows, offsets, total


def hom_system(m: Representation, n: Representation) -> tuple[Matrix, list[int]]:
    """Linear system whose kernel is Hom(M, N); also returns per-vertex offsets."""
    rows, offsets, total = _hom_rows(m, n)
    dense = []
    for row in rows:
        d = [_ZERO] * total
        for j, x in row.items():
            d[j] = x
        dense.append(d)
    return Matrix(len(dense), total, dense), offsets


def _vector_to_morphism(m, n, vec, offsets) -> Morphism:
    blocks = []
    for v in range(m.quiver.n):
        dm, dn = m.dims[v], n.dims[v]
        o = offsets[v]
        blocks.append(Matrix(dn, dm, [vec[o + r * dm:o + (r + 1) * dm] for r in range(dn)]))
    return Morphism(m, n, tuple(blocks))


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """Basis of Hom(M, N) as commuting families of matrices."""
    if m.quiver != n.quiver:
        raise ValueError("representations of different quivers")
    system, offsets = hom_system(m, n)
    if system.cols == 0:
        return []
    ker = kernel_basis(system)
    return [_vector_to_morphism(m, n, ker.col(j), offsets) for j in range(ker.cols)]


def hom_dim(m: Representation, n: Representation) -> int:
    rows, _, total = _hom_rows(m, n)
    return total - sparse_rank(rows)


def hom_space_contains(basis: Sequence[Morphism], maps: Sequence[Morphism]) -> bool:
    """Whether every map in ``maps`` lies in the span of ``basis``."""
    if not maps:
        return True
    length = len(maps[0].flat())
    return span_contains([b.flat() for b in basis], [x.flat() for x in maps], length)


def span_rank(maps: Sequence[Morphism]) -> int:
    if not maps:
        return 0
    vecs = [x.flat() for x in maps]
    return rank(Matrix(len(vecs), len(vecs[0]), vecs))


# -- kernels, cokernels, pushouts --------------------------------------------------

def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    q = f.source.quiver
    bases = [kernel_basis(b) for b in f.blocks]
    maps = []
    for k, (s, t) in enumerate(q.arrow_ends):
        maps.append(left_inverse(bases[t]) @ f.source.maps[k] @ bases[s])
    kr = Representation(q, tuple(b.cols for b in bases), tuple(maps))
    return kr, Morphism(kr, f.source, tuple(bases))


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    q = f.source.quiver
    projs = [cokernel_projection(b) for b in f.blocks]
    maps = []
    for k, (s, t) in enumerate(q.arrow_ends):
        maps.append(projs[t] @ f.target.maps[k] @ right_inverse(projs[s]))
    c = Representation(q, tuple(p.rows for p in projs), tuple(maps))
    return c, Morphism(f.target, c, tuple(projs))


def induced_from_cokernel(proj: Morphism, psi: Morphism) -> Morphism:
    """The unique ``C -> Z`` with ``(C -> Z) o proj = psi`` (``psi`` must kill ker proj)."""
    return Morphism(proj.target, psi.target,
                    tuple(pb @ right_inverse(qb) for pb, qb in zip(psi.blocks, proj.blocks)))


def pushout(f: Morphism, g: Morphism) -> tuple[Representation, Morphism, Morphism]:
    """Pushout of ``X <-f- Z -g-> Y``; returns ``(P, X -> P, Y -> P)``."""
    x, y = f.target, g.target
    s, incl, _ = direct_sum_maps([x, y])
    neg_g = g.scale(-1)
    diff = morphism_into_sum(f.source, [f, neg_g], s)
    p, proj = cokernel(diff)
    return p, compose(proj, incl[0]), compose(proj, incl[1])


# -- tops and presentations ---------------------------------------------------------

def radical_basis(m: Representation, v: int) -> Matrix:
    ins = [m.maps[k] for k in m.quiver.incoming[v]]
    return hstack(ins, rows=m.dims[v]) if ins else Matrix.zeros(m.dims[v], 0)


def radical_top(m: Representation) -> DimVector:
    """Dimension vector of ``M / rad M``."""
    return tuple(m.dims[v] - rank(radical_basis(m, v)) for v in range(m.quiver.n))


def top_generators(m: Representation) -> list[tuple[int, list[Fraction]]]:
    """Vectors whose classes form a basis of the top, as ``(vertex, vector)`` pairs."""
    gens = []
    for v in range(m.quiver.n):
        for k in complement_basis(radical_basis(m, v), m.dims[v]):
            gens.append((v, [_ONE if i == k else _ZERO for i in range(m.dims[v])]))
    return gens


def free_module(q: Quiver, gens: Sequence[int]) -> Representation:
    return direct_sum([projective(q, g) for g in gens], q)


def free_injective(q: Quiver, gens: Sequence[int]) -> Representation:
    return direct_sum([injective(q, g) for g in gens], q)


def free_basis(q: Quiver, gens: Sequence[int], k: int) -> list[tuple[int, Path]]:
    return [(r, p) for r, g in enumerate(gens) for p in q.paths(g, k)]


def map_from_free(q: Quiver, gens: Sequence[int], images: Sequence[Sequence], target: Representation,
                  source: Representation | None = None) -> Morphism:
    """``F(gens) -> M`` sending the r-th generator to ``images[r]`` in ``M_{gens[r]}``."""
    source = source if source is not None else free_module(q, gens)
    blocks = []
    for k in range(q.n):
        cols = []
        for r, p in free_basis(q, gens, k):
            cols.append(target.path_map(gens[r], p).apply(images[r]))
        blocks.append(Matrix.from_columns(cols, target.dims[k]) if cols else Matrix.zeros(target.dims[k], 0))
    return Morphism(source, target, tuple(blocks))


def free_map(q: Quiver, src: Sequence[int], tgt: Sequence[int], elements: Sequence[dict[tuple[int, Path], Fraction]],
             source: Representation | None = None, target: Representation | None = None) -> Morphism:
    """Map between free modules; ``elements[r]`` is the image of the r-th source generator.

    An element of ``F(tgt)`` at vertex ``g`` is a dict ``{(s, path): coeff}``
    with ``path`` running from ``tgt[s]`` to ``g``.
    """
    source = source if source is not None else free_module(q, src)
    target = target if target is not None else free_module(q, tgt)
    blocks = []
    for k in range(q.n):
        tb = {key: i for i, key in enumerate(free_basis(q, tgt, k))}
        sb = free_basis(q, src, k)
        rows = [[_ZERO] * len(sb) for _ in tb]
        for c, (r, p) in enumerate(sb):
            for (s, path), coeff in elements[r].items():
                rows[tb[(s, path + p)]][c] += coeff
        blocks.append(Matrix(len(tb), len(sb), rows))
    return Morphism(source, target, tuple(blocks))


def nakayama_free_map(q: Quiver, src: Sequence[int], tgt: Sequence[int],
                      elements: Sequence[dict[tuple[int, Path], Fraction]]) -> Morphism:
    """Image under the Nakayama functor of :func:`free_map` ``F(src) -> F(tgt)``.

    The path ``q: h -> g`` (a map ``P_g -> P_h``) goes to ``I_g -> I_h``,
    dual to precomposition ``paths(k, h) -> paths(k, g), p |-> p q``.
    """
    source = free_injective(q, src)
    target = free_injective(q, tgt)
    blocks = []
    for k in range(q.n):
        sb = {(r, p): i for i, (r, p) in enumerate((r, p) for r, g in enumerate(src) for p in q.paths(k, g))}
        tb = [(s, p) for s, h in enumerate(tgt) for p in q.paths(k, h)]
        rows = [[_ZERO] * len(sb) for _ in tb]
        for row, (s, p) in enumerate(tb):
            for r, elem in enumerate(elements):
                for (s2, path), coeff in elem.items():
                    if s2 == s:
                        rows[row][sb[(r, p + path)]] += coeff
        blocks.append(Matrix(len(tb), len(sb), rows))
    return Morphism(source, target, tuple(blocks))


@dataclass(frozen=True, eq=False)
class Presentation:
    """Minimal projective presentation ``0 -> P1 -f-> P0 -pi-> M -> 0``."""

    gens1: tuple[int, ...]
    gens0: tuple[int, ...]
    relations: tuple[dict, ...]
    p1: Representation
    p0: Representation
    f: Morphism
    pi: Morphism


def min_projective_presentation(m: Representation) -> Presentation:
    q = m.quiver
    tops = top_generators(m)
    gens0 = tuple(v for v, _ in tops)
    p0 = free_module(q, gens0)
    pi = map_from_free(q, gens0, [vec for _, vec in tops], m, source=p0)
    k, incl = kernel(pi)
    ktops = top_generators(k)
    gens1 = tuple(v for v, _ in ktops)
    relations = []
    for v, vec in ktops:
        coords = incl.blocks[v].apply(vec)
        basis = free_basis(q, gens0, v)
        relations.append({key: c for key, c in zip(basis, coords) if c})
    p1 = free_module(q, gens1)
    f = free_map(q, gens1, gens0, relations, source=p1, target=p0)
    return Presentation(gens1, gens0, tuple(relations), p1, p0, f, pi)


# -- AR translate ------------------------------------------------------------------------

def tau(m: Representation) -> Representation:
    """``tau M = D Tr M``: kernel of the Nakayama functor applied to the presentation."""
    if m.is_zero():
        return m
    pres = min_projective_presentation(m)
    nu_f = nakayama_free_map(m.quiver, pres.gens1, pres.gens0, pres.relations)
    return kernel(nu_f)[0]


def tau_inverse(m: Representation) -> Representation:
    """``tau^- M = D tau_{op} D M``."""
    if m.is_zero():
        return m
    q = m.quiver
    return dual(tau(dual(m, q.opposite())), q)


# -- Ext ---------------------------------------------------------------------------------

def _restriction_matrix(pres: Presentation, n: Representation) -> Matrix:
    """Matrix of ``Hom(P0, N) -> Hom(P1, N)``, both identified with sums of N at generators."""
    cols_total = sum(n.dims[h] for h in pres.gens0)
    rows_total = sum(n.dims[g] for g in pres.gens1)
    col_off = [0]
    for h in pres.gens0:
        col_off.append(col_off[-1] + n.dims[h])
    rows = [[_ZERO] * cols_total for _ in range(rows_total)]
    r0 = 0
    for r, g in enumerate(pres.gens1):
        for (s, path), coeff in pres.relations[r].items():
            block = n.path_map(pres.gens0[s], path)  # N_h -> N_g
            for i in range(block.rows):
                for j in range(block.cols):
                    x = block[i, j]
                    if x:
                        rows[r0 + i][col_off[s] + j] += coeff * x
        r0 += n.dims[g]
    return Matrix(rows_total, cols_total, rows)


def ext1_via_presentation(m: Representation, n: Representation, pres: Presentation | None = None) -> int:
    pres = pres if pres is not None else min_projective_presentation(m)
    mat = _restriction_matrix(pres, n)
    return mat.rows - rank(mat)


def ext1_dim(m: Representation, n: Representation) -> int:
    """``dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>`` (hereditary)."""
    return hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)


def extension_basis(m: Representation, n: Representation, pres: Presentation | None = None) -> tuple[Presentation, list[list[list[Fraction]]]]:
    """Maps ``P1 -> N`` (as generator images) whose classes form a basis of Ext^1(M, N)."""
    pres = pres if pres is not None else min_projective_presentation(m)
    mat = _restriction_matrix(pres, n)
    chosen = complement_basis(mat, mat.rows)
    offs = [0]
    for g in pres.gens1:
        offs.append(offs[-1] + n.dims[g])
    classes = []
    for k in chosen:
        images = []
        for r, g in enumerate(pres.gens1):
            images.append([_ONE if offs[r] + i == k else _ZERO for i in range(n.dims[g])])
        classes.append(images)
    return pres, classes


@dataclass(frozen=True, eq=False)
class UniversalExtension:
    middle: Representation
    sequence: ShortExactSequence  # 0 -> N -> E -> M^s -> 0
    s: int


def universal_extension_middle(m: Representation, n: Representation, s: int | None = None) -> UniversalExtension:
    """Middle term of ``0 -> N -> E -> M^s -> 0`` realising a basis of Ext^1(M, N)."""
    q = m.quiver
    pres, classes = extension_basis(m, n)
    if s is not None and s != len(classes):
        raise ValueError(f"s = {s} but dim Ext^1(M, N) = {len(classes)}")
    s = len(classes)
    if s == 0:
        e = n
        seq = ShortExactSequence(identity_morphism(n), zero_morphism(n, zero_rep(q)))
        return UniversalExtension(e, seq, 0)
    p1s = direct_sum([pres.p1] * s)
    p0s = direct_sum([pres.p0] * s)
    fs = morphism_direct_sum([pres.f] * s, p1s, p0s)
    hs = [map_from_free(q, pres.gens1, images, n, source=pres.p1) for images in classes]
    h = morphism_sum_from(p1s, hs, n)
    # E = pushout of P0^s <- P1^s -> N, as a quotient of P0^s + N
    summ, incl, _ = direct_sum_maps([p0s, n])
    e, proj = cokernel(morphism_into_sum(p1s, [fs, h.scale(-1)], summ))
    from_n = compose(proj, incl[1])
    ms = direct_sum([m] * s)
    pis = morphism_direct_sum([pres.pi] * s, p0s, ms)
    to_ms = induced_from_cokernel(proj, morphism_sum_from(summ, [pis, zero_morphism(n, ms)], ms))
    return UniversalExtension(e, ShortExactSequence(from_n, to_ms), s)


# -- Fac, faithfulness -------------------------------------------------------------------

def trace_columns(t: Representation, x: Representation, basis: Sequence[Morphism] | None = None) -> list[Matrix]:
    """Per vertex, columns spanning the trace of T in X (sum of images of all T -> X)."""
    basis = hom_basis(t, x) if basis is None else basis
    out = []
    for v in range(x.quiver.n):
        blocks = [phi.blocks[v] for phi in basis if phi.blocks[v].cols]
        out.append(hstack(blocks, rows=x.dims[v]) if blocks else Matrix.zeros(x.dims[v], 0))
    return out


def fac_contains(t: Representation, x: Representation) -> bool:
    """True iff X is a quotient of some T^m, i.e. the trace of T in X is all of X."""
    cols = trace_columns(t, x)
    return all(rank(c) == x.dims[v] for v, c in enumerate(cols))


def is_sincere(m: Representation) -> bool:
    return all(d > 0 for d in m.dims)


def annihilator_dim(m: Representation) -> int:
    """Dimension of ``{a in kQ : M a = 0}`` computed over the path basis."""
    q = m.quiver
    total = 0
    for i in range(q.n):
        for j in range(q.n):
            ps = q.paths(i, j)
            if not ps:
                continue
            vecs = [m.path_map(i, p).flat() for p in ps]
            width = m.dims[i] * m.dims[j]
            r = rank(Matrix(len(vecs), width, vecs)) if width else 0
            total += len(ps) - r
    return total


def is_faithful(m: Representation) -> bool:
    return annihilator_dim(m) == 0
