"""Independent reference computations used by the tests.

Nothing here imports the library's algorithms: each oracle starts from an
edge list or from first principles and recomputes the quantity by brute
force or by a closed formula.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def cartan_from_edges(n: int, edges) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for t, h in edges:
        c[t][h] -= 1
        c[h][t] -= 1
    return c


def tits_by_edges(edges, alpha) -> int:
    return sum(a * a for a in alpha) - sum(alpha[t] * alpha[h] for t, h in edges)


def brute_roots(n: int, edges, bound: int) -> list[tuple[int, ...]]:
    out = []
    for a in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(a) and tits_by_edges(edges, a) <= 1:
            out.append(a)
    return out


def smallest_imaginary(n: int, edges, box: int) -> tuple[int, ...] | None:
    """Positive vector with q = 0, minimal in coordinate sum, within [0, box]^n."""
    best = None
    for a in itertools.product(range(box + 1), repeat=n):
        if any(a) and tits_by_edges(edges, a) == 0:
            if best is None or sum(a) < sum(best):
                best = a
    return best


def positive_dynkin_brute(n: int, edges, box: int) -> set[tuple[int, ...]]:
    out = set()
    for tail in itertools.product(range(box + 1), repeat=n - 1):
        a = (0,) + tail
        if any(a) and tits_by_edges(edges, a) == 1:
            out.add(a)
    return out


def reflect_oracle(n: int, edges, i: int, lam) -> tuple[Fraction, ...]:
    c = cartan_from_edges(n, edges)
    return tuple(Fraction(lam[j]) - c[j][i] * Fraction(lam[i]) for j in range(n))


# cyclic quiver 0 -> 1 -> ... -> n-1 -> 0; variable k < n is the arrow k -> k+1,
# variable n + k its reverse

def cyclic_var_weight(n: int, k: int) -> tuple[int, ...]:
    i = k % n
    t, h = (i, (i + 1) % n) if k < n else ((i + 1) % n, i)
    w = [0] * n
    w[h] += 1
    w[t] -= 1
    return tuple(w)


def cyclic_weight(n: int, mono) -> tuple[int, ...]:
    w = [0] * n
    for k, e in enumerate(mono):
        for j, x in enumerate(cyclic_var_weight(n, k)):
            w[j] += e * x
    return tuple(w)


def cyclic_normal(n: int, mono) -> tuple[int, ...]:
    m = list(mono)
    for i in range(1, n):
        t = min(m[i], m[n + i])
        m[i] -= t
        m[n + i] -= t
        m[0] += t
        m[n] += t
    return tuple(m)


def compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def normal_monomials(n: int, d: int, weight) -> set[tuple[int, ...]]:
    weight = tuple(weight)
    out = set()
    for mono in compositions(d, 2 * n):
        if all(min(mono[i], mono[n + i]) == 0 for i in range(1, n)) and cyclic_weight(n, mono) == weight:
            out.add(mono)
    return out


def molien_cyclic(n: int, d_max: int) -> list[int]:
    """dim C[x,y]^{Z/n}_d: monomials x^a y^b with a + b = d and a = b mod n."""
    return [sum(1 for a in range(d + 1) if (2 * a - d) % n == 0) for d in range(d_max + 1)]


def molien_binary_dihedral(order: int, d_max: int) -> list[int]:
    """Binary dihedral group of order 4m: the 2m diagonal elements average to a
    monomial count, and each of the 2m anti-diagonal elements has trace 0,
    contributing the coefficients of 1/(1 + t^2)."""
    m = order // 4
    out = []
    for d in range(d_max + 1):
        diag = 2 * m * sum(1 for a in range(d + 1) if (2 * a - d) % (2 * m) == 0)
        anti = 2 * m * ((-1) ** (d // 2) if d % 2 == 0 else 0)
        total = diag + anti
        assert total % order == 0
        out.append(total // order)
    return out


def cumulative(seq) -> list[int]:
    return list(itertools.accumulate(seq))
