"""Affine Weyl group action on E = {lambda : lambda.delta = 1}.

Simple reflections act by r_i(lambda)_j = lambda_j - C_ji lambda_i; a graph
automorphism sigma acts by moving coordinates, (sigma lambda)_{sigma(i)} =
lambda_i. A ``WeylWord`` (sigma, [i_1, ..., i_k]) denotes the map
r_{i_1} o r_{i_2} o ... o r_{i_k} o sigma: the automorphism is applied first,
then the reflections from right to left.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .quiver import QuiverSpec, dot
from .rational import ParamVector
from .roots import RootError

__all__ = [
    "WeylWord",
    "reflect",
    "apply_automorphism",
    "graph_automorphisms",
    "apply_word",
    "decompose_translation",
    "random_point_on_E",
]


@dataclass(frozen=True)
class WeylWord:
    automorphism: tuple[int, ...]
    reflections: tuple[int, ...]
    verified: bool = False

    def to_dict(self) -> dict:
        return {
            "automorphism": list(self.automorphism),
            "reflections": list(self.reflections),
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WeylWord":
        return cls(tuple(d["automorphism"]), tuple(d["reflections"]), bool(d.get("verified", False)))


def _reflect_vec(c, i: int, vec: tuple) -> tuple:
    li = vec[i]
    if not li:
        return tuple(vec)
    return tuple(x - c[j][i] * li for j, x in enumerate(vec))


def reflect(q: QuiverSpec, i: int, lam: ParamVector) -> ParamVector:
    if not 0 <= i < q.num_vertices:
        raise RootError(f"vertex {i} out of range")
    c = q.cartan_data.matrix
    return ParamVector(_reflect_vec(c, i, lam.re), _reflect_vec(c, i, lam.im))


def _permute(sigma, vec) -> tuple:
    out = [None] * len(vec)
    for i, x in enumerate(vec):
        out[sigma[i]] = x
    return tuple(out)


def apply_automorphism(sigma, lam: ParamVector) -> ParamVector:
    return ParamVector(_permute(sigma, lam.re), _permute(sigma, lam.im))


@lru_cache(maxsize=None)
def graph_automorphisms(q: QuiverSpec) -> tuple[tuple[int, ...], ...]:
    """All vertex permutations preserving the undirected edge multiset."""
    adj = q.adjacency()
    n = q.num_vertices
    degree = [sum(row) for row in adj]
    found = []

    def extend(partial: list[int], used: set[int]) -> None:
        k = len(partial)
        if k == n:
            found.append(tuple(partial))
            return
        for v in range(n):
            if v in used or degree[v] != degree[k] or adj[v][v] != adj[k][k]:
                continue
            if all(adj[k][j] == adj[v][partial[j]] for j in range(k)):
                partial.append(v)
                used.add(v)
                extend(partial, used)
                partial.pop()
                used.discard(v)

    extend([], set())
    return tuple(sorted(found))


def apply_word(q: QuiverSpec, w: WeylWord, lam: ParamVector) -> ParamVector:
    out = apply_automorphism(w.automorphism, lam) if w.automorphism else lam
    for i in reversed(w.reflections):
        out = reflect(q, i, out)
    return out


def random_point_on_E(q: QuiverSpec, rng: random.Random, spread: int = 5, den: int = 97) -> ParamVector:
    """A random rational (real) lambda with lambda.delta = 1."""
    rest = [Fraction(rng.randint(-spread * den, spread * den), den) for _ in range(q.num_vertices - 1)]
    lam0 = 1 - sum(x * y for x, y in zip(rest, q.delta[1:]))
    return ParamVector.real([lam0] + rest)


def _alcove_point(q: QuiverSpec, rng: random.Random) -> tuple[Fraction, ...]:
    """Rational point with all coordinates > 0 and lambda.delta = 1, randomly perturbed."""
    d = q.delta
    weights = [Fraction(rng.randint(1000, 2000)) for _ in d]
    total = sum(w * x for w, x in zip(weights, d))
    return tuple(w / total for w in weights)


def decompose_translation(
    q: QuiverSpec, xi, seed: int = 0, max_attempts: int = 8
) -> WeylWord:
    """Write lambda -> lambda + xi as reflections composed with a graph automorphism.

    Alcove walk from mu = lambda* + xi for a generic lambda* in the open
    fundamental alcove: reflect in the smallest index with mu_i < 0 until mu
    is in the closed alcove, then match the residual map against the graph
    automorphisms. The result is checked exactly on five random points of E.
    """
    xi = tuple(int(x) for x in xi)
    if len(xi) != q.num_vertices or dot(xi, q.delta) != 0:
        raise RootError(f"xi = {xi} is not in Lambda")
    if not any(xi):
        return WeylWord(tuple(range(q.num_vertices)), (), True)
    c = q.cartan_data.matrix
    rng = random.Random(seed)
    limit = 10 * sum(abs(x) for x in xi) * q.num_vertices
    for _ in range(max_attempts):
        base = _alcove_point(q, rng)
        mu = tuple(b + x for b, x in zip(base, xi))
        steps: list[int] = []
        generic = True
        while True:
            neg = [i for i, x in enumerate(mu) if x < 0]
            if not neg:
                break
            if len(steps) > limit:
                raise AssertionError(f"alcove walk exceeded {limit} steps for xi={xi}")
            i = neg[0]
            mu = _reflect_vec(c, i, mu)
            steps.append(i)
            if any(x == 0 for x in mu):
                generic = False
                break
        if not generic:
            continue
        # w(base + xi) = mu with w = r_{steps[-1]} ... r_{steps[0]}; so
        # t_xi = r_{steps[0]} ... r_{steps[-1]} o sigma with sigma(base) = mu
        matches = [s for s in graph_automorphisms(q) if _permute(s, base) == mu]
        if len(matches) != 1:
            continue
        word = WeylWord(matches[0], tuple(steps))
        for _ in range(5):
            lam = random_point_on_E(q, rng)
            if apply_word(q, word, lam) != lam.shift(xi):
                raise AssertionError(f"decomposition of xi={xi} failed verification")
        return WeylWord(word.automorphism, word.reflections, True)
    raise AssertionError(f"no generic base point found for xi={xi} after {max_attempts} attempts")
