"""Extended Dynkin (McKay) quivers, their doubles, Cartan data and the defect.

Vertex 0 is always the extending vertex. Canonical orientations: type A_n
is the cycle 0 -> 1 -> ... -> n -> 0, types D and E are trees oriented away
from vertex 0.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .linalg import nullspace, primitive_integer_vector

__all__ = [
    "QuiverError",
    "Arrow",
    "QuiverSpec",
    "CartanData",
    "ADMISSIBLE_LABELS",
    "build_extended_dynkin",
    "double",
    "cartan",
    "delta",
    "defect",
    "dot",
    "tits_form_arrows",
]

ADMISSIBLE_LABELS = "A_n (n >= 1), D_n (n >= 4), E6, E7, E8"


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    tail: int
    head: int
    dual: bool = False

    def reversed(self) -> "Arrow":
        return Arrow(self.head, self.tail, not self.dual)


@dataclass(frozen=True)
class QuiverSpec:
    type_label: str
    num_vertices: int
    arrows: tuple[Arrow, ...]

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @property
    def is_doubled(self) -> bool:
        return any(a.dual for a in self.arrows)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edge multiset of the underlying graph (original arrows only)."""
        return sorted(
            (min(a.tail, a.head), max(a.tail, a.head)) for a in self.arrows if not a.dual
        )

    def adjacency(self) -> list[list[int]]:
        n = self.num_vertices
        adj = [[0] * n for _ in range(n)]
        for i, j in self.edges():
            adj[i][j] += 1
            adj[j][i] += 1
        return adj

    def to_dict(self) -> dict:
        return {
            "type": self.type_label,
            "vertices": list(self.vertices),
            "extending": 0,
            "arrows": [{"tail": a.tail, "head": a.head, "dual": a.dual} for a in self.arrows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QuiverSpec":
        if d.get("extending", 0) != 0:
            raise QuiverError("the extending vertex must be 0")
        arrows = tuple(Arrow(a["tail"], a["head"], bool(a["dual"])) for a in d["arrows"])
        return cls(d["type"], len(d["vertices"]), arrows)

    # cached derived data; the dataclass is frozen so caching is safe

    @cached_property
    def cartan_data(self) -> "CartanData":
        return cartan(self)

    @cached_property
    def delta(self) -> tuple[int, ...]:
        return delta(self)


def _parse_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", label)
    if not m:
        raise QuiverError(f"invalid quiver type {label!r}; admissible: {ADMISSIBLE_LABELS}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if (kind == "A" and n < 1) or (kind == "D" and n < 4) or (kind == "E" and n not in (6, 7, 8)):
        raise QuiverError(f"invalid quiver type {label!r}; admissible: {ADMISSIBLE_LABELS}")
    return kind, n


def _tree_edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "D":
        # leaves 0,1 hang off vertex 4, leaves 2,3 off vertex n; chain 4..n
        return [(0, 4), (1, 4), (2, n), (3, n)] + [(k, k + 1) for k in range(4, n)]
    if n == 6:
        return [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
    if n == 7:
        return [(k, k + 1) for k in range(6)] + [(3, 7)]
    return [(k, k + 1) for k in range(7)] + [(5, 8)]


def _orient_away_from_zero(num_vertices: int, edges: list[tuple[int, int]]) -> tuple[Arrow, ...]:
    nbrs: dict[int, list[int]] = {v: [] for v in range(num_vertices)}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    depth = {0: 0}
    todo = deque([0])
    while todo:
        v = todo.popleft()
        for w in nbrs[v]:
            if w not in depth:
                depth[w] = depth[v] + 1
                todo.append(w)
    if len(depth) != num_vertices:
        raise QuiverError("graph is not connected")
    arrows = []
    for i, j in edges:
        arrows.append(Arrow(i, j) if depth[i] < depth[j] else Arrow(j, i))
    return tuple(arrows)


def build_extended_dynkin(type_label: str) -> QuiverSpec:
    """Canonical extended Dynkin quiver for an affine ADE label such as ``"D4"``."""
    kind, n = _parse_label(type_label)
    label = f"{kind}{n}"
    if kind == "A":
        arrows = tuple(Arrow(i, (i + 1) % (n + 1)) for i in range(n + 1))
        return QuiverSpec(label, n + 1, arrows)
    return QuiverSpec(label, n + 1, _orient_away_from_zero(n + 1, _tree_edges(kind, n)))


def double(q: QuiverSpec) -> QuiverSpec:
    if q.is_doubled:
        raise QuiverError("quiver is already doubled")
    return QuiverSpec(q.type_label, q.num_vertices, q.arrows + tuple(a.reversed() for a in q.arrows))


@dataclass(frozen=True)
class CartanData:
    matrix: tuple[tuple[int, ...], ...]

    def tits_form(self, alpha) -> int:
        """q(alpha) = alpha^T C alpha / 2, always an integer."""
        n = len(self.matrix)
        s = sum(alpha[i] * self.matrix[i][j] * alpha[j] for i in range(n) for j in range(n))
        return s // 2

    def apply(self, alpha) -> tuple[int, ...]:
        return tuple(sum(r[j] * alpha[j] for j in range(len(r))) for r in self.matrix)


def cartan(q: QuiverSpec) -> CartanData:
    if q.is_doubled:
        raise QuiverError("cartan() expects an undoubled quiver")
    adj = q.adjacency()
    n = q.num_vertices
    return CartanData(tuple(tuple(2 * (i == j) - adj[i][j] for j in range(n)) for i in range(n)))


def tits_form_arrows(q: QuiverSpec, alpha) -> int:
    """Tits form evaluated from the arrow list, independently of the Cartan matrix."""
    return sum(x * x for x in alpha) - sum(alpha[a.tail] * alpha[a.head] for a in q.arrows if not a.dual)


def delta(q: QuiverSpec) -> tuple[int, ...]:
    """Minimal positive imaginary root: primitive positive generator of ker C."""
    c = q.cartan_data.matrix
    ker = nullspace(c, q.num_vertices)
    if len(ker) != 1:
        raise QuiverError(f"Cartan kernel has dimension {len(ker)}, expected 1")
    d = primitive_integer_vector(ker[0])
    if min(d) <= 0 or d[0] != 1:
        raise QuiverError(f"malformed quiver: kernel generator {d}")
    return d


def defect(q: QuiverSpec) -> tuple[int, ...]:
    """d_i = -delta_i + sum of delta over heads of arrows leaving i (orientation dependent)."""
    if q.is_doubled:
        raise QuiverError("defect() expects an undoubled quiver")
    d = q.delta
    out = [-x for x in d]
    for a in q.arrows:
        out[a.tail] += d[a.head]
    return tuple(out)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))
