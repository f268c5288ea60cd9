"""Finite acyclic quivers, their DSL, presets, and integral bilinear data."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import Matrix, inverse

DimVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


class QuiverError(ValueError):
    pass


class QuiverSyntaxError(QuiverError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleError(QuiverError):
    def __init__(self, cycle: Sequence[str]):
        super().__init__("quiver has a directed cycle: " + " -> ".join(cycle))
        self.cycle = list(cycle)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True, eq=True)
class Quiver:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    # (type, rank) when built from a Dynkin preset; informational only
    dynkin: tuple[str, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise QuiverError("duplicate arrow label")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.label} uses an unknown vertex")
        cycle = _find_cycle(self.vertices, self.arrows)
        if cycle:
            raise CycleError(cycle)

    def __hash__(self):
        return hash((self.name, self.vertices, self.arrows))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self._index[v]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_ends(self) -> tuple[tuple[int, int], ...]:
        """``(source index, target index)`` per arrow."""
        return tuple((self._index[a.source], self._index[a.target]) for a in self.arrows)

    @cached_property
    def incoming(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for k, (_, t) in enumerate(self.arrow_ends):
            out[t].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def outgoing(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for k, (s, _) in enumerate(self.arrow_ends):
            out[s].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def sink_first_order(self) -> tuple[int, ...]:
        """Vertex indices ordered so every arrow points to an earlier vertex."""
        remaining = set(range(self.n))
        order: list[int] = []
        while remaining:
            sinks = [v for v in sorted(remaining)
                     if all(self.arrow_ends[k][1] not in remaining for k in self.outgoing[v])]
            order.extend(sinks)
            remaining.difference_update(sinks)
        return tuple(order)

    @cached_property
    def _paths(self) -> dict[tuple[int, int], tuple[tuple[int, ...], ...]]:
        # paths as tuples of arrow indices, trivial path = ()
        table: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for i in range(self.n):
            frontier = [((), i)]
            while frontier:
                p, end = frontier.pop()
                table.setdefault((i, end), []).append(p)
                for k in self.outgoing[end]:
                    frontier.append((p + (k,), self.arrow_ends[k][1]))
        return {key: tuple(sorted(ps, key=lambda p: (len(p), p))) for key, ps in table.items()}

    def paths(self, i: int, j: int) -> tuple[tuple[int, ...], ...]:
        """All paths from vertex index ``i`` to ``j`` (arrow-index tuples, shortest first)."""
        return self._paths.get((i, j), ())

    def opposite(self) -> "Quiver":
        return Quiver(self.name + "^op", self.vertices,
                      tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))

    def reflect(self, k: int) -> "Quiver":
        """Reverse every arrow incident to vertex index ``k``."""
        v = self.vertices[k]
        arrows = tuple(Arrow(a.label, a.target, a.source) if v in (a.source, a.target) else a
                       for a in self.arrows)
        return Quiver(self.name, self.vertices, arrows)

    def to_dsl(self) -> str:
        lines = [f"quiver {self.name}", "vertex " + " ".join(self.vertices)]
        lines += [f"arrow {a.label} {a.source} {a.target}" for a in self.arrows]
        return "\n".join(lines) + "\n"


def _find_cycle(vertices: Sequence[str], arrows: Sequence[Arrow]) -> list[str] | None:
    succ: dict[str, list[str]] = {v: [] for v in vertices}
    for a in arrows:
        succ[a.source].append(a.target)
    color = {v: 0 for v in vertices}
    parent: dict[str, str] = {}
    for root in vertices:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
            elif color[w] == 1:
                cyc = [w]
                x = v
                while x != w:
                    cyc.append(x)
                    x = parent[x]
                cyc.append(w)
                return cyc[::-1]
            elif color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(succ[w])))
    return None


# -- DSL ----------------------------------------------------------------------

def parse_quiver(text: str) -> Quiver:
    """Parse the line-based quiver DSL.

    Lines are ``quiver <name>``, ``vertex <id>+`` (may repeat) and
    ``arrow <label> <source> <target>``; ``#`` starts a comment.
    """
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "quiver":
            if len(rest) != 1:
                raise QuiverSyntaxError(lineno, "expected 'quiver <name>'")
            if name is not None:
                raise QuiverSyntaxError(lineno, "quiver name given twice")
            name = rest[0]
        elif head == "vertex":
            if not rest:
                raise QuiverSyntaxError(lineno, "expected at least one vertex id")
            for v in rest:
                if v in vertices:
                    raise QuiverSyntaxError(lineno, f"duplicate vertex {v!r}")
                vertices.append(v)
        elif head == "arrow":
            if len(rest) != 3:
                raise QuiverSyntaxError(lineno, "expected 'arrow <label> <source> <target>'")
            label, src, dst = rest
            for v in (src, dst):
                if v not in vertices:
                    raise QuiverSyntaxError(lineno, f"unknown vertex {v!r}")
            if any(a.label == label for a in arrows):
                raise QuiverSyntaxError(lineno, f"duplicate arrow label {label!r}")
            arrows.append(Arrow(label, src, dst))
        else:
            raise QuiverSyntaxError(lineno, f"unknown directive {head!r}")
    if name is None:
        raise QuiverSyntaxError(1, "missing 'quiver <name>' line")
    if not vertices:
        raise QuiverSyntaxError(1, "quiver has no vertices")
    return Quiver(name, tuple(vertices), tuple(arrows))


# -- presets --------------------------------------------------------------------

def _linear(name: str, n: int, extra: Iterable[tuple[int, int]] = (), dynkin=None) -> Quiver:
    vs = tuple(str(i) for i in range(1, n + 1))
    arrows = [Arrow(f"a{i}", str(i + 1), str(i)) for i in range(1, n)]
    arrows += [Arrow(f"b{s}", str(s), str(t)) for s, t in extra]
    return Quiver(name, vs, tuple(arrows), dynkin)


def dynkin_quiver(kind: str, n: int) -> Quiver:
    """Preset Dynkin quiver with arrows pointing towards lower vertex numbers.

    A_n is 1 <- 2 <- ... <- n.  D_n is the chain 1 <- ... <- n-2 with
    n-1 -> n-2 and n -> n-2 (fork at n-2).  E_n is the chain 1 <- ... <- n-1
    with n -> 3.
    """
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return _linear(f"A{n}", n, dynkin=("A", n))
    if kind == "D" and n >= 4:
        vs = tuple(str(i) for i in range(1, n + 1))
        arrows = [Arrow(f"a{i}", str(i + 1), str(i)) for i in range(1, n - 2)]
        arrows += [Arrow(f"a{n - 2}", str(n - 1), str(n - 2)), Arrow(f"a{n - 1}", str(n), str(n - 2))]
        return Quiver(f"D{n}", vs, tuple(arrows), ("D", n))
    if kind == "E" and n in (6, 7, 8):
        vs = tuple(str(i) for i in range(1, n + 1))
        arrows = [Arrow(f"a{i}", str(i + 1), str(i)) for i in range(1, n - 1)]
        arrows.append(Arrow(f"a{n - 1}", str(n), "3"))
        return Quiver(f"E{n}", vs, tuple(arrows), ("E", n))
    raise QuiverError(f"unsupported Dynkin type {kind}{n}")


def kronecker_quiver(m: int = 2) -> Quiver:
    """1 <= 2 with ``m`` parallel arrows (m = 2 is the Kronecker quiver)."""
    name = "K2" if m == 2 else f"W2{m}"
    arrows = tuple(Arrow(chr(ord("a") + k) if m <= 26 else f"a{k}", "2", "1") for k in range(m))
    return Quiver(name, ("1", "2"), arrows)


W4_DSL = """\
quiver W4
vertex 1 2 3 4
arrow a 2 1
arrow b 2 1
arrow c 3 2
arrow d 3 4
"""


def preset(name: str) -> Quiver:
    """Look up a named preset: A<n>, D<n>, E6-E8, K2, W4, W2<m> (m >= 3)."""
    key = name.strip()
    if key == "K2":
        return kronecker_quiver(2)
    if key == "W4":
        return parse_quiver(W4_DSL)
    m = re.fullmatch(r"W2_?(\d+)", key)
    if m:
        arrows = int(m.group(1))
        if arrows < 3:
            raise QuiverError("W2m presets need m >= 3 parallel arrows")
        return kronecker_quiver(arrows)
    m = re.fullmatch(r"([ADE])(\d+)", key.upper())
    if m:
        return dynkin_quiver(m.group(1), int(m.group(2)))
    raise QuiverError(f"unknown preset {name!r}")


PRESET_NAMES = tuple([f"A{n}" for n in range(2, 9)] + ["D4", "D5", "D6", "E6", "E7", "E8", "K2", "W4", "W2m"])


# -- bilinear data ---------------------------------------------------------------

def cartan_matrix(q: Quiver) -> IntMatrix:
    """Entry ``(i, j)`` is the number of paths from i to j; row i is dim P_i."""
    return tuple(tuple(len(q.paths(i, j)) for j in range(q.n)) for i in range(q.n))


def projective_dim(q: Quiver, i: int) -> DimVector:
    return tuple(len(q.paths(i, j)) for j in range(q.n))


def injective_dim(q: Quiver, i: int) -> DimVector:
    return tuple(len(q.paths(j, i)) for j in range(q.n))


def coxeter_matrix(q: Quiver) -> IntMatrix:
    """The integral matrix sending dim P_i to -dim I_i for every vertex i."""
    n = q.n
    p_cols = Matrix.from_columns([projective_dim(q, i) for i in range(n)], n)
    i_cols = Matrix.from_columns([injective_dim(q, i) for i in range(n)], n)
    phi = -(i_cols @ inverse(p_cols))
    return tuple(tuple(int(x) for x in phi.row(r)) for r in range(n))


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    if len(d) != q.n or len(e) != q.n:
        raise ValueError("dimension vector size does not match the quiver")
    val = sum(x * y for x, y in zip(d, e))
    for s, t in q.arrow_ends:
        val -= d[s] * e[t]
    return val


def mat_vec(m: IntMatrix, v: Sequence[int]) -> DimVector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def symmetric_form_matrix(q: Quiver) -> IntMatrix:
    """Symmetrised Euler form ``(d, e) = <d, e> + <e, d>``."""
    n = q.n
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for s, t in q.arrow_ends:
        m[s][t] -= 1
        m[t][s] -= 1
    return tuple(tuple(r) for r in m)


def representation_type(q: Quiver) -> str:
    """'finite', 'tame' or 'wild' from the definiteness of the Tits form."""
    sym = Matrix.from_rows(symmetric_form_matrix(q)) if q.n else Matrix.zeros(0, 0)
    kinds = []
    for comp in _components(q):
        sub = sym.submatrix(comp, comp)
        leading = [_det(sub.submatrix(range(k), range(k))) for k in range(1, len(comp) + 1)]
        if all(x > 0 for x in leading):
            kinds.append("finite")
        elif _is_semidefinite(sub):
            kinds.append("tame")
        else:
            kinds.append("wild")
    if "wild" in kinds:
        return "wild"
    return "tame" if "tame" in kinds else "finite"


def _components(q: Quiver) -> list[list[int]]:
    adj = {i: set() for i in range(q.n)}
    for s, t in q.arrow_ends:
        adj[s].add(t)
        adj[t].add(s)
    seen: set[int] = set()
    comps = []
    for v in range(q.n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _det(m: Matrix) -> int:
    if m.rows == 0:
        return 1
    rows = m.to_lists()
    n = m.rows
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return int(det)


def _is_semidefinite(m: Matrix) -> bool:
    # all principal minors non-negative
    n = m.rows
    return all(_det(m.submatrix(s, s)) >= 0 for k in range(1, n + 1) for s in combinations(range(n), k))


def dynkin_type(q: Quiver) -> tuple[str, int] | None:
    """Identify a connected simply-laced Dynkin diagram from the underlying graph."""
    if representation_type(q) != "finite" or len(_components(q)) != 1:
        return None
    n = q.n
    deg = [0] * n
    for s, t in q.arrow_ends:
        deg[s] += 1
        deg[t] += 1
    branch = [v for v in range(n) if deg[v] == 3]
    if not branch:
        return ("A", n)
    # arm lengths from the branch vertex
    adj = {i: [] for i in range(n)}
    for s, t in q.arrow_ends:
        adj[s].append(t)
        adj[t].append(s)
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    return None


def positive_roots(kind: str, n: int) -> list[DimVector]:
    """Positive roots of the Dynkin type, in the preset vertex numbering.

    Computed as the orbit of the simple roots under simple reflections, keeping
    positive vectors only; the count is checked against the known total.
    """
    q = dynkin_quiver(kind, n)
    sym = symmetric_form_matrix(q)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(n):
                c = sum(sym[i][j] * root[j] for j in range(n))
                if c == 0:
                    continue
                new = tuple(root[j] - (c if j == i else 0) for j in range(n))
                if all(x >= 0 for x in new) and any(new) and new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    roots = sorted(seen, key=lambda r: (sum(r), r))
    expected = root_count(kind, n)
    if len(roots) != expected:
        raise AssertionError(f"{kind}{n}: found {len(roots)} roots, expected {expected}")
    return roots


def root_count(kind: str, n: int) -> int:
    kind = kind.upper()
    if kind == "A":
        return n * (n + 1) // 2
    if kind == "D":
        return n * (n - 1)
    if kind == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    raise QuiverError(f"unsupported Dynkin type {kind}{n}")


def quiver_from_source(preset_name: str | None = None, text: str | None = None) -> Quiver:
    if (preset_name is None) == (text is None):
        raise ValueError("give exactly one of a preset name or DSL text")
    return preset(preset_name) if preset_name is not None else parse_quiver(text)


__all__ = [
    "Arrow", "Quiver", "DimVector", "QuiverError", "QuiverSyntaxError", "CycleError",
    "parse_quiver", "preset", "dynkin_quiver", "kronecker_quiver", "cartan_matrix",
    "coxeter_matrix", "euler_form", "positive_roots", "root_count", "representation_type",
    "dynkin_type", "projective_dim", "injective_dim", "mat_vec",
]
