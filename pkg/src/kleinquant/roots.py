"""Roots of affine ADE root systems, the weight cones and root annihilators."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .quiver import QuiverSpec, dot
from .rational import ParamVector

__all__ = [
    "Root",
    "WeightClass",
    "RootError",
    "BOX_CEILING",
    "make_root",
    "enumerate_roots",
    "box_vectors",
    "positive_dynkin_roots",
    "positive_dynkin_roots_by_reflection",
    "dynkin_roots",
    "classify_weight",
    "classify_weight_by_coordinates",
    "roots_annihilated_by",
    "shift_bijection",
    "dynkin_part",
]

# largest coordinate box enumerate_roots will scan
BOX_CEILING = 50_000_000


class RootError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    coords: tuple[int, ...]
    is_real: bool
    is_dynkin: bool
    is_positive: bool

    def to_dict(self) -> dict:
        return {
            "coords": list(self.coords),
            "real": self.is_real,
            "dynkin": self.is_dynkin,
            "positive": self.is_positive,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Root":
        return cls(tuple(d["coords"]), d["real"], d["dynkin"], d["positive"])


class WeightClass(enum.Enum):
    NotInLambda = "NotInLambda"
    LambdaOnly = "LambdaOnly"
    LambdaPlus = "LambdaPlus"
    LambdaPlusPlus = "LambdaPlusPlus"


def make_root(q: QuiverSpec, coords) -> Root:
    coords = tuple(int(x) for x in coords)
    val = q.cartan_data.tits_form(coords)
    if val > 1 or not any(coords):
        raise RootError(f"{coords} is not a root (q = {val})")
    if all(x >= 0 for x in coords):
        positive = True
    elif all(x <= 0 for x in coords):
        positive = False
    else:
        raise RootError(f"root {coords} is neither positive nor negative")
    return Root(coords, val == 1, coords[0] == 0, positive)


def box_vectors(lows, highs, chunk: int = 1 << 20):
    """Yield int64 arrays whose rows run over the integer box prod [lows_i, highs_i].

    Rows come out in lexicographic order.
    """
    ranges = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(lows, highs)]
    sizes = [len(r) for r in ranges]
    # split into an outer python loop and an inner meshgrid block
    split = len(ranges)
    block = 1
    while split > 0 and block * sizes[split - 1] <= chunk:
        split -= 1
        block *= sizes[split]
    inner = ranges[split:]
    if inner:
        grid = np.stack(np.meshgrid(*inner, indexing="ij"), axis=-1).reshape(-1, len(inner))
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    for prefix in itertools.product(*ranges[:split]):
        if prefix:
            head = np.broadcast_to(np.array(prefix, dtype=np.int64), (grid.shape[0], len(prefix)))
            yield np.concatenate([head, grid], axis=1)
        else:
            yield grid


def _tits_values(q: QuiverSpec, block: np.ndarray) -> np.ndarray:
    c = np.array(q.cartan_data.matrix, dtype=np.int64)
    return np.einsum("ij,jk,ik->i", block, c, block) // 2


def enumerate_roots(q: QuiverSpec, bound: int) -> list[Root]:
    """All roots with every coordinate in [-bound, bound], lexicographically sorted."""
    if bound < 1:
        raise RootError("bound must be >= 1")
    n = q.num_vertices
    if (2 * bound + 1) ** n > BOX_CEILING:
        raise RootError(f"box of size {(2 * bound + 1) ** n} exceeds ceiling {BOX_CEILING}")
    out = []
    for block in box_vectors([-bound] * n, [bound] * n):
        vals = _tits_values(q, block)
        hit = block[(vals <= 1) & block.any(axis=1)]
        out.extend(make_root(q, row) for row in hit.tolist())
    return out


@lru_cache(maxsize=None)
def positive_dynkin_roots(q: QuiverSpec) -> tuple[tuple[int, ...], ...]:
    """Positive Dynkin roots by box scan.

    Every positive Dynkin root is dominated coordinatewise by delta - e_0 (the
    highest root), so the box prod_{i != 0} [0, delta_i] is exhaustive.
    """
    d = q.delta
    lows = [0] * q.num_vertices
    highs = [0] + list(d[1:])
    out = []
    for block in box_vectors(lows, highs):
        vals = _tits_values(q, block)
        out.extend(tuple(r) for r in block[(vals == 1) & block.any(axis=1)].tolist())
    return tuple(out)


def positive_dynkin_roots_by_reflection(q: QuiverSpec) -> tuple[tuple[int, ...], ...]:
    """Independent route: close the simple roots e_i (i != 0) under the finite Weyl group."""
    n = q.num_vertices
    c = q.cartan_data
    simple = [tuple(int(k == i) for k in range(n)) for i in range(1, n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        a = todo.pop()
        ca = c.apply(a)
        for i in range(1, n):
            b = list(a)
            b[i] -= ca[i]
            b = tuple(b)
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return tuple(sorted(r for r in seen if all(x >= 0 for x in r)))


def dynkin_roots(q: QuiverSpec) -> tuple[tuple[int, ...], ...]:
    pos = positive_dynkin_roots(q)
    return tuple(sorted(pos + tuple(tuple(-x for x in r) for r in pos)))


def classify_weight(q: QuiverSpec, xi) -> WeightClass:
    if dot(xi, q.delta) != 0:
        return WeightClass.NotInLambda
    pairings = [dot(xi, a) for a in positive_dynkin_roots(q)]
    if all(p > 0 for p in pairings):
        return WeightClass.LambdaPlusPlus
    if all(p >= 0 for p in pairings):
        return WeightClass.LambdaPlus
    return WeightClass.LambdaOnly


def classify_weight_by_coordinates(q: QuiverSpec, xi) -> WeightClass:
    """Shortcut via the simple roots: sign conditions on xi_i for i != 0."""
    if dot(xi, q.delta) != 0:
        return WeightClass.NotInLambda
    rest = xi[1:]
    if all(x > 0 for x in rest):
        return WeightClass.LambdaPlusPlus
    if all(x >= 0 for x in rest):
        return WeightClass.LambdaPlus
    return WeightClass.LambdaOnly


def require_unit_level(q: QuiverSpec, lam: ParamVector) -> None:
    if len(lam) != q.num_vertices:
        raise RootError(f"parameter has length {len(lam)}, quiver has {q.num_vertices} vertices")
    if lam.dot(q.delta) != (1, 0):
        raise RootError(f"parameter must satisfy lambda.delta = 1, got {lam.dot(q.delta)}")


def roots_annihilated_by(q: QuiverSpec, lam: ParamVector) -> list[Root]:
    """The finite set of roots alpha with lambda.alpha = 0, for lambda.delta = 1.

    Every such root is real, hence alpha' + k delta for a Dynkin root alpha';
    the pairing forces k = -lambda.alpha', which must be an integer.
    """
    require_unit_level(q, lam)
    d = q.delta
    out = []
    for a in dynkin_roots(q):
        pairing = lam.dot(a)
        if not pairing_is_integral(pairing):
            continue
        k = -int(pairing[0])
        out.append(make_root(q, tuple(x + k * y for x, y in zip(a, d))))
    return sorted(out)


def dynkin_part(q: QuiverSpec, alpha) -> tuple[int, ...]:
    """alpha - (e_0 . alpha) delta."""
    return tuple(x - alpha[0] * y for x, y in zip(alpha, q.delta))


def shift_bijection(q: QuiverSpec, xi, roots: list[Root]) -> list[Root]:
    """alpha -> alpha - (xi.alpha) delta, for xi in Lambda."""
    d = q.delta
    if dot(xi, d) != 0:
        raise RootError(f"xi = {tuple(xi)} is not in Lambda (xi.delta = {dot(xi, d)})")
    out = []
    for r in roots:
        s = dot(xi, r.coords)
        out.append(make_root(q, tuple(x - s * y for x, y in zip(r.coords, d))))
    return out


def pairing_is_integral(value: tuple[Fraction, Fraction]) -> bool:
    return value[1] == 0 and value[0].denominator == 1
