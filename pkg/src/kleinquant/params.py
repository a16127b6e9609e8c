"""Parameter conditions for the spherical subalgebras O^lambda.

Regularity, absence of finite-dimensional modules, dominance, candidate
dimensions of simple finite-dimensional modules, and the construction of a
shift xi that removes all simple modules of small dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import QuiverSpec, dot
from .rational import ParamVector
from .roots import (
    Root,
    RootError,
    WeightClass,
    require_unit_level,
    classify_weight,
    dynkin_roots,
    positive_dynkin_roots,
    roots_annihilated_by,
)

__all__ = [
    "ParamReport",
    "is_regular",
    "has_no_findim",
    "is_dominant",
    "simple_module_dims",
    "choose_xi",
    "search_smaller_xi",
    "analyze",
    "dominance_scan",
    "lies_in_lambda_plus",
]


@dataclass(frozen=True)
class ParamReport:
    regular: bool
    no_findim: bool
    dominant: bool
    simple_dims: frozenset[int]
    annihilated_roots: tuple[Root, ...]
    lam: ParamVector = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam.to_strings() if self.lam is not None else None,
            "regular": self.regular,
            "no_findim": self.no_findim,
            "dominant": self.dominant,
            "candidate_dimensions": sorted(self.simple_dims),
            "annihilated_roots": [r.to_dict() for r in self.annihilated_roots],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParamReport":
        lam = ParamVector.parse(",".join(d["lambda"])) if d.get("lambda") else None
        return cls(
            d["regular"],
            d["no_findim"],
            d["dominant"],
            frozenset(d["candidate_dimensions"]),
            tuple(Root.from_dict(r) for r in d["annihilated_roots"]),
            lam,
        )


def is_regular(q: QuiverSpec, lam: ParamVector) -> bool:
    """No Dynkin root pairs to zero with lambda."""
    require_unit_level(q, lam)
    return all(lam.dot(a) != (0, 0) for a in dynkin_roots(q))


def has_no_findim(q: QuiverSpec, lam: ParamVector) -> bool:
    return not any(not r.is_dynkin for r in roots_annihilated_by(q, lam))


def is_dominant(q: QuiverSpec, lam: ParamVector) -> bool:
    require_unit_level(q, lam)
    return all(lam.dot(a)[0] > 0 for a in positive_dynkin_roots(q))


def simple_module_dims(q: QuiverSpec, lam: ParamVector) -> set[int]:
    """{e_0 . beta : beta a positive root with lambda.beta = 0}.

    Only an upper bound: the dimensions of simple finite-dimensional
    modules lie among these integers.
    """
    return {r.coords[0] for r in roots_annihilated_by(q, lam) if r.is_positive}


def _annihilator_bound(q: QuiverSpec, lam: ParamVector) -> int:
    return max((abs(r.coords[0]) for r in roots_annihilated_by(q, lam)), default=0)


def _xi_from_tail(q: QuiverSpec, tail) -> tuple[int, ...]:
    d = q.delta
    return (-sum(x * y for x, y in zip(tail, d[1:])),) + tuple(tail)


def _xi_is_valid(q: QuiverSpec, lam: ParamVector, xi, d: int) -> bool:
    shifted = lam.shift(xi)
    if not is_regular(q, shifted):
        return False
    return not any(1 <= k <= d for k in simple_module_dims(q, shifted))


def choose_xi(q: QuiverSpec, lam: ParamVector, d: int) -> tuple[int, ...]:
    """A shift xi in Lambda_+ after which no simple module has dimension in [1, d].

    Uses the uniform vector xi_i = N + d + 1 for i != 0, where N bounds
    |e_0 . alpha| over the roots annihilated by lambda; then
    xi . psi > N + d for every positive Dynkin root psi.
    """
    if d < 1:
        raise RootError("d must be a positive integer")
    if not is_regular(q, lam):
        raise RootError("choose_xi requires a regular parameter")
    big = _annihilator_bound(q, lam) + d + 1
    xi = _xi_from_tail(q, [big] * (q.num_vertices - 1))
    if not _xi_is_valid(q, lam, xi, d):
        raise AssertionError(f"constructed shift {xi} failed verification for lambda={lam}")
    return xi


def search_smaller_xi(q: QuiverSpec, lam: ParamVector, d: int) -> tuple[int, ...]:
    """Exhaustive scan below the uniform bound for a valid xi in Lambda_+.

    Candidates are ordered by coordinate sum, then lexicographically; the
    first valid one is returned. Falls back to the uniform choice.
    """
    uniform = choose_xi(q, lam, d)
    big = uniform[1]
    r = q.num_vertices - 1
    tails = sorted(itertools.product(range(big + 1), repeat=r), key=lambda t: (sum(t), t))
    for tail in tails:
        xi = _xi_from_tail(q, tail)
        if _xi_is_valid(q, lam, xi, d):
            return xi
    return uniform


def analyze(q: QuiverSpec, lam: ParamVector) -> ParamReport:
    ann = roots_annihilated_by(q, lam)
    return ParamReport(
        regular=is_regular(q, lam),
        no_findim=not any(not r.is_dynkin for r in ann),
        dominant=is_dominant(q, lam),
        simple_dims=frozenset(r.coords[0] for r in ann if r.is_positive),
        annihilated_roots=tuple(ann),
        lam=lam,
    )


def dominance_scan(q: QuiverSpec, denominator: int, span: int, d: int) -> dict:
    """Scan real lambda on a grid and look at dominant ones with small candidate dims.

    lambda_i = k_i / denominator for i != 0 with |k_i| <= span * denominator,
    lambda_0 fixed by lambda.delta = 1. Reports how often a dominant lambda
    still has a candidate simple-module dimension in [1, d]; this is a proxy
    experiment, not a test of any Morita statement.
    """
    dl = q.delta
    r = q.num_vertices - 1
    rng = range(-span * denominator, span * denominator + 1)
    scanned = dominant = hits = 0
    witnesses = []
    for ks in itertools.product(rng, repeat=r):
        rest = [Fraction(k, denominator) for k in ks]
        lam0 = 1 - sum(x * y for x, y in zip(rest, dl[1:]))
        lam = ParamVector.real([lam0] + rest)
        scanned += 1
        if not is_dominant(q, lam):
            continue
        dominant += 1
        dims = sorted(k for k in simple_module_dims(q, lam) if 1 <= k <= d)
        if dims:
            hits += 1
            if len(witnesses) < 5:
                witnesses.append({"lambda": lam.to_strings(), "dims": dims})
    return {
        "type": q.type_label,
        "scanned": scanned,
        "dominant": dominant,
        "dominant_with_small_candidates": hits,
        "witnesses": witnesses,
        "d": d,
    }


def lies_in_lambda_plus(q: QuiverSpec, xi) -> bool:
    return classify_weight(q, xi) in (WeightClass.LambdaPlus, WeightClass.LambdaPlusPlus)

