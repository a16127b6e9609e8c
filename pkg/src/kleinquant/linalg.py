"""Exact linear algebra over the rationals.

Dense reduced row echelon form for small matrices (kernels of Cartan
matrices) and an incremental sparse echelon basis for the large, very
sparse spanning sets produced by path and monomial enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Iterable, Mapping, Sequence

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "primitive_integer_vector",
    "SparseEchelon",
    "sparse_rank",
]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


class SparseEchelon:
    """Incrementally built echelon basis of sparse rational vectors.

    Vectors are mappings column -> coefficient. Columns are ordered by
    ``key`` (smallest key leads). Each stored row is normalised so that its
    leading coefficient is 1 and no other stored row leads at that column.
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None):
        self._key = key if key is not None else (lambda c: c)
        self.rows: dict[Hashable, dict[Hashable, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _lead(self, vec: Mapping) -> Hashable:
        return min(vec, key=self._key)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; True if it was independent of the current span."""
        v = {c: Fraction(x) for c, x in vec.items() if x != 0}
        while v:
            lead = self._lead(v)
            row = self.rows.get(lead)
            if row is None:
                inv = 1 / v[lead]
                self.rows[lead] = {c: x * inv for c, x in v.items()}
                return True
            f = v[lead]
            for c, x in row.items():
                y = v.get(c, 0) - f * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return False

    def contains(self, vec: Mapping) -> bool:
        v = {c: Fraction(x) for c, x in vec.items() if x != 0}
        while v:
            lead = self._lead(v)
            row = self.rows.get(lead)
            if row is None:
                return False
            f = v[lead]
            for c, x in row.items():
                y = v.get(c, 0) - f * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return True

    def pivots(self) -> list[Hashable]:
        return sorted(self.rows, key=self._key)


def sparse_rank(vectors: Iterable[Mapping]) -> int:
    ech = SparseEchelon(key=repr)
    for v in vectors:
        ech.add(v)
    return len(ech)
