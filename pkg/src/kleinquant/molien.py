"""Finite subgroups of SL_2 over exact cyclotomic integers, and Molien series.

Group elements are 2x2 matrices over Z[zeta_M], stored as coefficient
tuples reduced modulo the cyclotomic polynomial Phi_M.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

__all__ = [
    "Cyclotomic",
    "GroupType",
    "MolienError",
    "cyclic_group",
    "binary_dihedral_group",
    "parse_group",
    "group_for_quiver",
    "molien_dims",
    "molien_cumulative",
]


class MolienError(ValueError):
    pass


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c:
            q[k] = c
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, low degree first."""
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, rem = _poly_divmod(p, list(cyclotomic_poly(d)))
            if any(rem):
                raise AssertionError("cyclotomic division left a remainder")
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


class Cyclotomic:
    """The ring Z[zeta_M] with zeta_M a primitive M-th root of unity."""

    def __init__(self, order: int):
        self.order = order
        self.phi = cyclotomic_poly(order)
        self.degree = len(self.phi) - 1

    def reduce(self, coeffs) -> tuple[int, ...]:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            _, coeffs = _poly_divmod(coeffs, list(self.phi))
        coeffs = coeffs + [0] * (self.degree - len(coeffs))
        return tuple(coeffs)

    def const(self, c: int) -> tuple[int, ...]:
        return self.reduce([c])

    def zeta(self, k: int) -> tuple[int, ...]:
        k %= self.order
        return self.reduce([0] * k + [1])

    def add(self, a, b) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        return tuple(-x for x in a)

    def mul(self, a, b) -> tuple[int, ...]:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def as_integer(self, a) -> int | None:
        return a[0] if not any(a[1:]) else None


Matrix = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class GroupType:
    label: str
    root_order: int
    generators: tuple[Matrix, ...]

    @cached_property
    def ring(self) -> Cyclotomic:
        return Cyclotomic(self.root_order)

    def matmul(self, x: Matrix, y: Matrix) -> Matrix:
        r = self.ring
        return tuple(
            tuple(r.add(r.mul(x[i][0], y[0][j]), r.mul(x[i][1], y[1][j])) for j in range(2))
            for i in range(2)
        )

    def det(self, x: Matrix):
        r = self.ring
        return r.add(r.mul(x[0][0], x[1][1]), r.neg(r.mul(x[0][1], x[1][0])))

    def trace(self, x: Matrix):
        return self.ring.add(x[0][0], x[1][1])

    @cached_property
    def elements(self) -> tuple[Matrix, ...]:
        """Closure of the generators under multiplication."""
        r = self.ring
        one = r.const(1)
        zero = r.const(0)
        ident = ((one, zero), (zero, one))
        seen = {ident}
        todo = [ident]
        while todo:
            x = todo.pop()
            for g in self.generators:
                y = self.matmul(x, g)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
            if len(seen) > 100_000:
                raise MolienError("group closure does not terminate")
        return tuple(sorted(seen))

    @property
    def order(self) -> int:
        return len(self.elements)


def _diag(r: Cyclotomic, k: int) -> Matrix:
    return ((r.zeta(k), r.const(0)), (r.const(0), r.zeta(-k)))


def cyclic_group(n: int) -> GroupType:
    if n < 1:
        raise MolienError("cyclic group order must be >= 1")
    r = Cyclotomic(n)
    return GroupType(f"Z{n}", n, (_diag(r, 1),))


def binary_dihedral_group(order: int) -> GroupType:
    """Binary dihedral group of the given order 4m (m >= 2), McKay type D_{m+2}."""
    if order % 4 or order < 8:
        raise MolienError("binary dihedral order must be a multiple of 4 and >= 8")
    m = order // 4
    r = Cyclotomic(2 * m)
    tau = ((r.const(0), r.const(1)), (r.const(-1), r.const(0)))
    return GroupType(f"BD{order}", 2 * m, (_diag(r, 1), tau))


def parse_group(label: str) -> GroupType:
    s = label.strip().upper().replace("/", "").replace("_", "")
    m = re.fullmatch(r"Z(\d+)", s)
    if m:
        return cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"BD(\d+)", s)
    if m:
        return binary_dihedral_group(int(m.group(1)))
    raise MolienError(f"unknown group {label!r}; use Z<n> or BD<4m>")


def group_for_quiver(type_label: str) -> GroupType:
    """McKay correspondence for the implemented families: A_n <-> Z/(n+1), D_n <-> BD_{4(n-2)}."""
    m = re.fullmatch(r"([AD])_?(\d+)", type_label.strip().upper())
    if not m:
        raise MolienError(f"no group implemented for type {type_label!r}")
    n = int(m.group(2))
    return cyclic_group(n + 1) if m.group(1) == "A" else binary_dihedral_group(4 * (n - 2))


def molien_dims(g: GroupType, d_max: int) -> list[int]:
    """dim C[x,y]^G_d for d = 0..d_max by averaging 1/det(1 - t g) over the group.

    For g in SL_2, 1/(1 - tr(g) t + t^2) = sum c_d t^d with
    c_d = tr(g) c_{d-1} - c_{d-2}; the group average is computed in Z[zeta].
    """
    if d_max < 0:
        raise MolienError("d_max must be >= 0")
    r = g.ring
    one = r.const(1)
    totals = [r.const(0) for _ in range(d_max + 1)]
    for x in g.elements:
        if g.det(x) != one:
            raise MolienError(f"{g.label}: element with determinant != 1")
        s = g.trace(x)
        prev, cur = r.const(0), one
        for d in range(d_max + 1):
            totals[d] = r.add(totals[d], cur)
            prev, cur = cur, r.add(r.mul(s, cur), r.neg(prev))
    out = []
    for d, t in enumerate(totals):
        v = r.as_integer(t)
        if v is None or v % g.order:
            raise AssertionError(f"{g.label}: non-integral Molien coefficient at degree {d}")
        out.append(v // g.order)
    return out


def molien_cumulative(g: GroupType, d_max: int) -> list[int]:
    out, acc = [], 0
    for v in molien_dims(g, d_max):
        acc += v
        out.append(acc)
    return out
