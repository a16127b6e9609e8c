"""Acceptance suite: nine criteria, one pass/fail line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kleinquant.cli import run  # noqa: E402
from kleinquant.fiber import (  # noqa: E402
    build_fiber_ring,
    check_power_stabilization,
    invariant_hilbert,
    surjectivity_threshold,
    uniform_chi,
    verify_kleinian_presentation,
)
from kleinquant.molien import cyclic_group, molien_cumulative, molien_dims  # noqa: E402
from kleinquant.params import choose_xi, is_regular  # noqa: E402
from kleinquant.preproj import buffer_stabilization, spherical_dims  # noqa: E402
from kleinquant.quiver import build_extended_dynkin, dot  # noqa: E402
from kleinquant.rational import ParamVector  # noqa: E402
from kleinquant.roots import positive_dynkin_roots, positive_dynkin_roots_by_reflection  # noqa: E402
from kleinquant.weyl import apply_word, decompose_translation, random_point_on_E  # noqa: E402
from kleinquant.zalgebra import (  # noqa: E402
    check_associativity,
    decompose_sum,
    drop_products_onto,
    hat,
    lowest_products,
    morita_condition_ii,
    perturb_product,
    semi_invariant_truncation,
)

from cli_cases import CASES, golden_path  # noqa: E402
from oracles import (  # noqa: E402
    cumulative,
    cyclic_normal,
    molien_cyclic,
    normal_monomials,
    positive_dynkin_brute,
    reflect_oracle,
    smallest_imaginary,
)


def _edges(q):
    return [(a.tail, a.head) for a in q.arrows if not a.dual]


def criterion_1():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for label in ("A1", "A2", "A3", "A4", "D4", "D5", "E6"):
        q = build_extended_dynkin(label)
        d = q.delta
        minimal = smallest_imaginary(q.num_vertices, _edges(q), max(d))
        box = positive_dynkin_roots(q)
        refl = positive_dynkin_roots_by_reflection(q)
        brute = positive_dynkin_brute(q.num_vertices, _edges(q), max(d))
        good = minimal == d and sorted(box) == sorted(refl) and set(box) == brute
        ok &= good
        notes.append(f"{label}:{len(box)}")
    dt = time.perf_counter() - t0
    ok &= dt < 60
    return ok, f"delta minimal, positive Dynkin roots {' '.join(notes)}, {dt:.1f}s"


def _random_xi(q, rng):
    r = q.num_vertices - 1
    while True:
        tail = [rng.randint(-10, 10) for _ in range(r)]
        x0 = -dot(tail, q.delta[1:])
        if abs(x0) <= 10:
            return (x0,) + tuple(tail)


def criterion_2():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    failures = 0
    for _ in range(100):
        q = build_extended_dynkin(rng.choice(["A1", "A2", "A3", "D4"]))
        xi = _random_xi(q, rng)
        w = decompose_translation(q, xi, seed=rng.randrange(10**6))
        edges = [(a.tail, a.head) for a in q.arrows]
        for _ in range(5):
            lam = random_point_on_E(q, rng)
            out = [None] * q.num_vertices
            for i, x in enumerate(lam.re):
                out[w.automorphism[i]] = x
            for i in reversed(w.reflections):
                out = reflect_oracle(q.num_vertices, edges, i, out)
            want = tuple(x + v for x, v in zip(lam.re, xi))
            if tuple(out) != want or apply_word(q, w, lam).re != want:
                failures += 1
    dt = time.perf_counter() - t0
    return failures == 0 and dt < 120, f"100 instances x 5 points, {failures} failures, {dt:.1f}s"


def _random_regular(q, rng):
    while True:
        den = rng.choice([1, 2, 3, 4, 5])
        rest = [Fraction(rng.randint(-3 * den, 3 * den), den) for _ in range(q.num_vertices - 1)]
        lam = ParamVector.real([1 - dot(rest, q.delta[1:])] + rest)
        if is_regular(q, lam):
            return lam


def _oracle_simple_dims(q, lam):
    """Annihilated positive roots alpha' + k delta, from a brute-force Dynkin root list."""
    pos = positive_dynkin_brute(q.num_vertices, _edges(q), max(q.delta))
    dims = set()
    for a in pos | {tuple(-x for x in r) for r in pos}:
        s = sum(x * y for x, y in zip(lam.re, a))
        if s.denominator == 1:
            k = -int(s)
            alpha = tuple(x + k * y for x, y in zip(a, q.delta))
            if all(x >= 0 for x in alpha):
                dims.add(alpha[0])
    return dims


def criterion_3():
    rng = random.Random(62)
    failures = 0
    count = 0
    for _ in range(50):
        q = build_extended_dynkin(rng.choice(["A1", "A2", "A3"]))
        lam = _random_regular(q, rng)
        pos = positive_dynkin_brute(q.num_vertices, _edges(q), max(q.delta))
        for d in (1, 2, 3):
            count += 1
            xi = choose_xi(q, lam, d)
            in_plus = dot(xi, q.delta) == 0 and all(dot(xi, a) >= 0 for a in pos)
            bad = {k for k in _oracle_simple_dims(q, lam.shift(xi)) if 1 <= k <= d}
            if not in_plus or bad:
                failures += 1
    return failures == 0, f"{count} (lambda, d) cases, {failures} failures"


def criterion_4():
    t0 = time.perf_counter()
    a1 = build_extended_dynkin("A1")
    rep = buffer_stabilization(a1, ParamVector.parse("1/2,1/2"), 8, (0, 1, 2))
    want = [1, 1, 4, 4, 9, 9, 16, 16, 25]
    ok_a1 = rep["stable"] and all(v == want for v in rep["runs"].values())
    a2 = build_extended_dynkin("A2")
    got = spherical_dims(a2, ParamVector.parse("1/3,1/5,7/15"), 6)
    ok_a2 = got == molien_cumulative(cyclic_group(3), 6) == cumulative(molien_cyclic(3, 6))
    dt = time.perf_counter() - t0
    return ok_a1 and ok_a2 and dt < 300, f"A1 buffers 0-2 -> {want}; A2 -> {got}; {dt:.1f}s"


def _oracle_products_surjective(n, chi, m, k, d_max):
    for d in range(d_max + 1):
        target = normal_monomials(n, d, tuple((m + k) * c for c in chi))
        got = set()
        for d1 in range(d + 1):
            for u in normal_monomials(n, d1, tuple(m * c for c in chi)):
                for v in normal_monomials(n, d - d1, tuple(k * c for c in chi)):
                    got.add(cyclic_normal(n, tuple(a + b for a, b in zip(u, v))))
        if not target <= got:
            return False
    return True


_MINIMAL_N = {}


def criterion_5():
    notes = []
    ok = True
    for n in (2, 3, 4):
        ring = build_fiber_ring(n)
        chi = uniform_chi(n)
        rep = surjectivity_threshold(ring, chi, 3, 8)
        all_pairs = all(p["surjective"] for p in rep["pairs"])
        oracle = all(_oracle_products_surjective(n, chi, m, k, 8) for m in range(1, 4) for k in range(1, 4))
        _MINIMAL_N[n] = rep["minimal_N"]
        ok &= rep["minimal_N"] is not None and rep["minimal_N"] <= 3 and all_pairs == oracle
        notes.append(f"n={n}: minimal N={rep['minimal_N']}, all pairs onto={all_pairs}")
    return ok, "; ".join(notes)


def criterion_6():
    notes = []
    ok = True
    for n in (2, 3):
        ring = build_fiber_ring(n)
        chi = uniform_chi(n)
        if n not in _MINIMAL_N:
            _MINIMAL_N[n] = surjectivity_threshold(ring, chi, 3, 8)["minimal_N"]
        N = _MINIMAL_N[n]
        holds = N is not None and check_power_stabilization(ring, chi, N, 4, 8)["holds"]
        ok &= holds
        notes.append(f"n={n}, N={N}: {holds}")
    return ok, "; ".join(notes)


def criterion_7():
    notes = []
    ok = True
    for n in (2, 3, 4):
        ring = build_fiber_ring(n)
        rep = verify_kleinian_presentation(ring, 8)
        hilbert = invariant_hilbert(ring, 12)
        match = hilbert == molien_dims(cyclic_group(n), 12) == molien_cyclic(n, 12)
        ok &= rep["passed"] and match
        notes.append(f"n={n}: AB={rep['AB']}, spans={rep['spanned']}, hilbert=molien {match}")
    return ok, "; ".join(notes)


def criterion_8():
    notes = []
    ok = True
    for n in (3, 4):
        ring = build_fiber_ring(n)
        Z = hat(semi_invariant_truncation(ring, uniform_chi(n), 4, 8))
        assoc = check_associativity(Z)
        mor = morita_condition_ii(Z, 1)
        ok &= assoc["associative"] and mor["morita_ii"].startswith("surjective") and not mor["vacuous"]
        ijk, low, _ = lowest_products(Z)[0]
        scaled = check_associativity(perturb_product(Z, ijk, low, scale=3))
        table = Z.mult[(2, 1, 0)]
        pair = sorted(p for p, v in table.items() if v)[0]
        dropped = morita_condition_ii(drop_products_onto(Z, (2, 1, 0), min(table[pair])), 1)
        ok &= not scaled["associative"] and scaled["witness"] is not None
        ok &= not dropped["surjective"] and bool(dropped["witnesses"])
        notes.append(f"n={n}: {assoc['checked']} triples, {mor['morita_ii']}")
    sums = all(
        sum(p) == m and all(N <= x <= 2 * N - 1 for x in p)
        for N in range(1, 11)
        for m in range(N, 201)
        for p in [decompose_sum(m, N)]
    )
    ok &= sums
    notes.append(f"decompose_sum N<=10, m<=200: {sums}")
    return ok, "; ".join(notes)


def criterion_9():
    mismatches = []
    for name, argv in CASES.items():
        first = run(argv)
        second = run(argv)
        proc = subprocess.run([sys.executable, "-m", "kleinquant", *argv], capture_output=True, text=True)
        golden = golden_path(name).read_text()
        if first != second or first[0] != 0 or first[1] != golden or proc.stdout != golden:
            mismatches.append(name)
    return not mismatches, f"{len(CASES)} invocations, mismatches: {mismatches or 'none'}"


CRITERIA = [
    (1, "root system: delta minimality and positive Dynkin root counts", criterion_1),
    (2, "Weyl decomposition of translations", criterion_2),
    (3, "shift xi removes small simple modules", criterion_3),
    (4, "preprojective truncation meets Molien series", criterion_4),
    (5, "S_m x S_n -> S_{m+n} surjective", criterion_5),
    (6, "S_{jN} = (S_N)^j", criterion_6),
    (7, "Kleinian presentation and invariant Hilbert series", criterion_7),
    (8, "Z-algebra associativity, far-range surjectivity, decompose_sum", criterion_8),
    (9, "CLI golden outputs byte-identical", criterion_9),
]


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} -- {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
