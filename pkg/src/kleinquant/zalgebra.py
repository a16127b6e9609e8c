"""Finite truncations of lower-triangular Z-algebras.

A truncation keeps components B_ij for M >= i >= j >= 0, each with a basis
of keys carrying an internal degree, and multiplication tables
B_ij x B_jk -> B_ik on basis pairs whose degrees add up to at most ``cap``.
Only finitely checkable statements are implemented: associativity,
unitality, and surjectivity of far-range multiplication maps. Injectivity of
B_ij (x)_{B_j} B_jk -> B_ik is never decided here.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

from .fiber import FiberRing, _check_chi, slice_
from .linalg import SparseEchelon

__all__ = [
    "ZAlgebraError",
    "GradedRingTruncation",
    "ZAlgebraTruncation",
    "ZModuleTruncation",
    "semi_invariant_truncation",
    "polynomial_truncation",
    "hat",
    "check_associativity",
    "morita_condition_ii",
    "perturb_product",
    "lowest_products",
    "drop_products_onto",
    "column_module",
    "decompose_sum",
]

Table = dict  # (x, y) -> {z: coefficient}


class ZAlgebraError(ValueError):
    pass


@dataclass
class GradedRingTruncation:
    """A_0..A_M, each a basis {key: internal degree}, with tables A_a x A_b -> A_{a+b}."""

    M: int
    cap: int
    pieces: list[dict[Hashable, int]]
    mult: dict[tuple[int, int], Table]
    unit: Hashable
    label: str = ""


@dataclass
class ZAlgebraTruncation:
    M: int
    cap: int
    components: dict[tuple[int, int], dict[Hashable, int]]
    identity: dict[int, Hashable]
    mult: dict[tuple[int, int, int], Table]
    label: str = ""

    def multiply(self, i: int, j: int, k: int, x: dict, y: dict) -> dict:
        """Product of linear combinations x in B_ij, y in B_jk (None if beyond the cap)."""
        table = self.mult.get((i, j, k))
        if table is None:
            raise ZAlgebraError(f"no multiplication data for ({i},{j},{k})")
        bx, by = self.components[(i, j)], self.components[(j, k)]
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if bx[a] + by[b] > self.cap:
                    return None
                prod = table.get((a, b))
                if prod is None:
                    raise ZAlgebraError(f"missing product of {a!r} and {b!r} at ({i},{j},{k})")
                for z, cz in prod.items():
                    v = out.get(z, 0) + ca * cb * cz
                    if v:
                        out[z] = v
                    else:
                        out.pop(z, None)
        return out


@dataclass
class ZModuleTruncation:
    """Graded module: components M_i (0 <= i <= M) and actions B_ij x M_j -> M_i."""

    algebra: ZAlgebraTruncation
    components: dict[int, dict[Hashable, int]]
    action: dict[tuple[int, int], Table] = field(default_factory=dict)

    def act(self, i: int, j: int, b: dict, m: dict) -> dict | None:
        table = self.action[(i, j)]
        bb, mm = self.algebra.components[(i, j)], self.components[j]
        out: dict = {}
        for x, cx in b.items():
            for y, cy in m.items():
                if bb[x] + mm[y] > self.algebra.cap:
                    return None
                for z, cz in table[(x, y)].items():
                    v = out.get(z, 0) + cx * cy * cz
                    if v:
                        out[z] = v
                    else:
                        out.pop(z, None)
        return out

    def check(self) -> dict:
        """Identity acts as identity and b (b' m) = (b b') m throughout the truncation."""
        Z = self.algebra
        for i, basis in self.components.items():
            e = {Z.identity[i]: 1}
            for m in basis:
                if self.act(i, i, e, {m: 1}) not in (None, {m: 1}):
                    return {"ok": False, "witness": {"unit": i, "element": repr(m)}}
        for i in range(Z.M + 1):
            for j in range(i + 1):
                for k in range(j + 1):
                    for x in Z.components[(i, j)]:
                        for y in Z.components[(j, k)]:
                            for m in self.components[k]:
                                xy = Z.multiply(i, j, k, {x: 1}, {y: 1})
                                ym = self.act(j, k, {y: 1}, {m: 1})
                                if xy is None or ym is None:
                                    continue
                                lhs = self.act(i, k, xy, {m: 1})
                                rhs = self.act(i, j, {x: 1}, ym)
                                if lhs != rhs:
                                    return {"ok": False, "witness": {"indices": [i, j, k], "elements": [repr(x), repr(y), repr(m)]}}
        return {"ok": True, "witness": None}

    def is_bounded_above(self, k: int) -> bool:
        """Zero in every component of index > k within the truncation."""
        return all(not basis for i, basis in self.components.items() if i > k)


def semi_invariant_truncation(ring: FiberRing, chi, M: int, cap: int) -> GradedRingTruncation:
    """The ring S = sum_m S_m truncated at m <= M and polynomial degree <= cap."""
    chi = _check_chi(ring, chi)
    pieces = []
    for m in range(M + 1):
        piece = {}
        for d in range(cap + 1):
            for b in slice_(ring, chi, m, d).basis:
                piece[b] = d
        pieces.append(piece)
    mult = {}
    for a in range(M + 1):
        for b in range(M + 1 - a):
            table = {}
            for x, dx in pieces[a].items():
                for y, dy in pieces[b].items():
                    if dx + dy <= cap:
                        table[(x, y)] = {ring.mul(x, y): Fraction(1)}
            mult[(a, b)] = table
    unit = (0,) * ring.num_vars
    return GradedRingTruncation(M, cap, pieces, mult, unit, f"S(n={ring.n}, chi={list(chi)})")


def polynomial_truncation(M: int, cap: int) -> GradedRingTruncation:
    """C[z] graded by degree: A_m = C z^m with internal degree m."""
    pieces = [({m: m} if m <= cap else {}) for m in range(M + 1)]
    mult = {}
    for a in range(M + 1):
        for b in range(M + 1 - a):
            mult[(a, b)] = {(a, b): {a + b: Fraction(1)}} if a + b <= cap and pieces[a] and pieces[b] else {}
    return GradedRingTruncation(M, cap, pieces, mult, 0, "C[z]")


def hat(A: GradedRingTruncation) -> ZAlgebraTruncation:
    """B_ij = A_{i-j}; the multiplication B_ij x B_jk -> B_ik is that of A."""
    for a in range(A.M + 1):
        for b in range(A.M + 1 - a):
            if (a, b) not in A.mult:
                raise ZAlgebraError(f"missing multiplication data for degrees ({a},{b})")
    components = {(i, j): A.pieces[i - j] for i in range(A.M + 1) for j in range(i + 1)}
    mult = {
        (i, j, k): A.mult[(i - j, j - k)]
        for i in range(A.M + 1)
        for j in range(i + 1)
        for k in range(j + 1)
    }
    identity = {i: A.unit for i in range(A.M + 1)}
    return ZAlgebraTruncation(A.M, A.cap, components, identity, mult, f"hat({A.label})")


def _by_degree(basis: dict) -> dict[int, list]:
    out: dict[int, list] = {}
    for key, d in basis.items():
        out.setdefault(d, []).append(key)
    return out


def check_associativity(Z: ZAlgebraTruncation) -> dict:
    """(xy)z == x(yz) on all basis triples within the truncation; identities act as 1."""
    checked = 0
    for i in range(Z.M + 1):
        e = {Z.identity[i]: 1}
        for j in range(i + 1):
            for x in Z.components[(i, j)]:
                if Z.multiply(i, i, j, e, {x: 1}) not in (None, {x: 1}):
                    return {"associative": False, "unital": False, "checked": checked,
                            "witness": {"identity_of": i, "element": repr(x), "indices": [i, j]}}
                ej = {Z.identity[j]: 1}
                if Z.multiply(i, j, j, {x: 1}, ej) not in (None, {x: 1}):
                    return {"associative": False, "unital": False, "checked": checked,
                            "witness": {"identity_of": j, "element": repr(x), "indices": [i, j]}}
    for i in range(Z.M + 1):
        for j in range(i + 1):
            bx = _by_degree(Z.components[(i, j)])
            for k in range(j + 1):
                by = _by_degree(Z.components[(j, k)])
                for l in range(k + 1):
                    bz = _by_degree(Z.components[(k, l)])
                    for dx, xs in bx.items():
                        for dy, ys in by.items():
                            if dx + dy > Z.cap:
                                continue
                            for dz, zs in bz.items():
                                if dx + dy + dz > Z.cap:
                                    continue
                                for x in xs:
                                    for y in ys:
                                        xy = Z.multiply(i, j, k, {x: 1}, {y: 1})
                                        for z in zs:
                                            yz = Z.multiply(j, k, l, {y: 1}, {z: 1})
                                            lhs = Z.multiply(i, k, l, xy, {z: 1})
                                            rhs = Z.multiply(i, j, l, {x: 1}, yz)
                                            checked += 1
                                            if lhs != rhs:
                                                return {
                                                    "associative": False,
                                                    "unital": True,
                                                    "checked": checked,
                                                    "witness": {
                                                        "indices": [i, j, k, l],
                                                        "elements": [repr(x), repr(y), repr(z)],
                                                        "degrees": [dx, dy, dz],
                                                    },
                                                }
    return {"associative": True, "unital": True, "checked": checked, "witness": None}


def morita_condition_ii(Z: ZAlgebraTruncation, N: int, cap: int | None = None) -> dict:
    """Surjectivity of B_ij x B_jk -> B_ik for i-j, j-k >= N, degree by degree up to cap."""
    if N < 1:
        raise ZAlgebraError("N must be >= 1")
    cap = Z.cap if cap is None else min(cap, Z.cap)
    witnesses = []
    triples = 0
    for i in range(Z.M + 1):
        for j in range(i - N + 1):
            for k in range(j - N + 1):
                triples += 1
                left = _by_degree(Z.components[(i, j)])
                right = _by_degree(Z.components[(j, k)])
                target = _by_degree(Z.components[(i, k)])
                for d in range(cap + 1):
                    want = len(target.get(d, []))
                    ech = SparseEchelon(key=repr)
                    for d1, xs in left.items():
                        for y in right.get(d - d1, []):
                            for x in xs:
                                ech.add(Z.multiply(i, j, k, {x: 1}, {y: 1}))
                    if len(ech) < want:
                        witnesses.append({"i": i, "j": j, "k": k, "d": d,
                                          "target_dim": want, "span_dim": len(ech)})
    status = "surjective (isomorphism not refuted)" if not witnesses else "not surjective"
    return {
        "N": N,
        "cap": cap,
        "morita_ii": status,
        "surjective": not witnesses,
        "vacuous": triples == 0,
        "checked_triples": triples,
        "witnesses": witnesses,
    }


def perturb_product(Z: ZAlgebraTruncation, ijk: tuple[int, int, int], pair, scale=2) -> ZAlgebraTruncation:
    """Copy of Z with one basis product at index triple ``ijk`` multiplied by ``scale``."""
    out = copy.copy(Z)
    out.mult = dict(Z.mult)
    table = dict(Z.mult[ijk])
    table[pair] = {z: c * scale for z, c in table[pair].items()}
    out.mult[ijk] = table
    return out


def lowest_products(Z: ZAlgebraTruncation) -> list[tuple[tuple[int, int, int], tuple, int]]:
    """Nonzero products of two non-identity basis elements, lowest total degree first.

    A product of degree equal to the cap can only meet identities in a
    triple, so corrupting it is invisible to associativity at this
    truncation; negative controls should take the head of this list.
    """
    out = []
    for (i, j, k), table in Z.mult.items():
        for (x, y), prod in table.items():
            if not prod or (i == j and x == Z.identity[i]) or (j == k and y == Z.identity[j]):
                continue
            deg = Z.components[(i, j)][x] + Z.components[(j, k)][y]
            out.append(((i, j, k), (x, y), deg))
    out.sort(key=lambda t: (t[2], t[0], repr(t[1])))
    return out


def drop_products_onto(Z: ZAlgebraTruncation, ijk: tuple[int, int, int], target) -> ZAlgebraTruncation:
    """Copy of Z where every basis product at ``ijk`` that hits ``target`` is set to zero."""
    out = copy.copy(Z)
    out.mult = dict(Z.mult)
    out.mult[ijk] = {p: ({} if target in v else v) for p, v in Z.mult[ijk].items()}
    return out


def column_module(Z: ZAlgebraTruncation, j: int = 0) -> ZModuleTruncation:
    """M_i = B_ij for i >= j (zero below), acted on by left multiplication."""
    comps = {i: (Z.components[(i, j)] if i >= j else {}) for i in range(Z.M + 1)}
    action = {}
    for i in range(Z.M + 1):
        for k in range(i + 1):
            action[(i, k)] = Z.mult[(i, k, j)] if k >= j else {}
    return ZModuleTruncation(Z, comps, action)


def decompose_sum(m: int, N: int) -> list[int]:
    """Write m as a sum of parts in [N, 2N-1]: parts equal to N until < 2N remains."""
    if N < 1:
        raise ZAlgebraError("N must be >= 1")
    if m < N:
        raise ZAlgebraError(f"cannot decompose {m} into parts >= {N}")
    parts = []
    rest = m
    while rest >= 2 * N:
        parts.append(N)
        rest -= N
    parts.append(rest)
    if not all(N <= p <= 2 * N - 1 for p in parts) or sum(parts) != m:
        raise AssertionError(f"bad decomposition {parts} of {m}")
    return parts
