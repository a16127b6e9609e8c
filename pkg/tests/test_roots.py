import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kleinquant.quiver import build_extended_dynkin, dot
from kleinquant.rational import ParamVector
from kleinquant.roots import (
    Root,
    RootError,
    WeightClass,
    classify_weight,
    classify_weight_by_coordinates,
    dynkin_part,
    enumerate_roots,
    make_root,
    positive_dynkin_roots,
    positive_dynkin_roots_by_reflection,
    roots_annihilated_by,
    shift_bijection,
)

from oracles import brute_roots, positive_dynkin_brute

A1 = build_extended_dynkin("A1")


def undirected(q):
    return [(a.tail, a.head) for a in q.arrows if not a.dual]


def test_a1_bound1_dynkin_roots():
    dyn = [r.coords for r in enumerate_roots(A1, 1) if r.is_dynkin]
    assert sorted(dyn) == [(0, -1), (0, 1)]


def test_a1_bound3_imaginary_roots():
    imag = {r.coords for r in enumerate_roots(A1, 3) if not r.is_real}
    assert imag == {(k, k) for k in (-3, -2, -1, 1, 2, 3)}


def test_a1_bound3_total_count():
    # 12 real roots (+-(k, k+1), +-(k+1, k) within the box) and 6 imaginary ones
    roots = enumerate_roots(A1, 3)
    assert len(roots) == len(brute_roots(2, undirected(A1), 3)) == 18


def test_a1_real_non_dynkin_root():
    r = make_root(A1, (1, 2))
    assert r.is_real and not r.is_dynkin and r.is_positive


@pytest.mark.parametrize("label,bound", [("A1", 4), ("A2", 3), ("A3", 2), ("D4", 2)])
def test_enumeration_matches_brute_force(label, bound):
    q = build_extended_dynkin(label)
    got = [r.coords for r in enumerate_roots(q, bound)]
    assert got == sorted(brute_roots(q.num_vertices, undirected(q), bound))


def test_enumerate_rejects_bad_bound():
    with pytest.raises(RootError):
        enumerate_roots(A1, 0)


def test_make_root_rejects_non_roots():
    with pytest.raises(RootError):
        make_root(A1, (0, 0))
    with pytest.raises(RootError):
        make_root(A1, (2, 0))


@pytest.mark.parametrize(
    "label,count",
    [("A1", 1), ("A2", 3), ("A3", 6), ("A4", 10), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120)],
)
def test_positive_dynkin_counts(label, count):
    q = build_extended_dynkin(label)
    box = positive_dynkin_roots(q)
    assert len(box) == count
    assert sorted(box) == sorted(positive_dynkin_roots_by_reflection(q))


@pytest.mark.parametrize("label", ["A2", "A3", "D4", "D5", "E6"])
def test_positive_dynkin_roots_match_wide_brute_box(label):
    q = build_extended_dynkin(label)
    wide = positive_dynkin_brute(q.num_vertices, undirected(q), max(q.delta))
    assert set(positive_dynkin_roots(q)) == wide


def test_classify_examples():
    assert classify_weight(A1, (-1, 1)) is WeightClass.LambdaPlusPlus
    assert classify_weight(A1, (0, 0)) is WeightClass.LambdaPlus
    assert classify_weight(A1, (1, 0)) is WeightClass.NotInLambda
    assert classify_weight(A1, (1, -1)) is WeightClass.LambdaOnly


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4"])
def test_coordinate_shortcut_agrees_exhaustively(label):
    q = build_extended_dynkin(label)
    d = q.delta
    for tail in itertools.product(range(-3, 4), repeat=q.num_vertices - 1):
        for x0 in range(-3, 4):
            xi = (x0,) + tail
            assert classify_weight(q, xi) is classify_weight_by_coordinates(q, xi)
        xi = (-dot(tail, d[1:]),) + tail
        assert classify_weight(q, xi) is not WeightClass.NotInLambda


def test_annihilated_examples():
    assert roots_annihilated_by(A1, ParamVector.parse("1/2,1/2")) == []
    got = [r.coords for r in roots_annihilated_by(A1, ParamVector.parse("1,0"))]
    assert got == [(0, -1), (0, 1)]
    got = [r.coords for r in roots_annihilated_by(A1, ParamVector.parse("2,-1"))]
    assert got == [(-1, -2), (1, 2)]


def test_annihilated_requires_unit_level():
    with pytest.raises(RootError):
        roots_annihilated_by(A1, ParamVector.parse("1,1"))


def _random_lambda(q, rng, den):
    rest = [Fraction(rng.randint(-4 * den, 4 * den), den) for _ in range(q.num_vertices - 1)]
    return ParamVector.real([1 - dot(rest, q.delta[1:])] + rest)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4"])
def test_annihilated_roots_agree_with_box_scan(label):
    q = build_extended_dynkin(label)
    rng = random.Random(7)
    for _ in range(10):
        lam = _random_lambda(q, rng, rng.choice([1, 2, 3]))
        fast = {r.coords for r in roots_annihilated_by(q, lam)}
        # every annihilated root is alpha' + k delta with |k| <= 4 * sum(delta) + 1
        bound = 4 * sum(q.delta) * max(q.delta) + 2
        slow = {
            tuple(a + k * b for a, b in zip(alpha, q.delta))
            for alpha in [r for r in positive_dynkin_roots(q)] + [tuple(-x for x in r) for r in positive_dynkin_roots(q)]
            for k in range(-bound, bound + 1)
            if lam.dot(tuple(a + k * b for a, b in zip(alpha, q.delta))) == (0, 0)
        }
        assert fast == slow


@settings(max_examples=60, deadline=None)
@given(label=st.sampled_from(["A1", "A2", "A3", "D4"]), seed=st.integers(0, 10**6))
def test_annihilated_closed_under_negation(label, seed):
    q = build_extended_dynkin(label)
    lam = _random_lambda(q, random.Random(seed), random.choice([1, 2]))
    found = {r.coords for r in roots_annihilated_by(q, lam)}
    assert found == {tuple(-x for x in r) for r in found}
    assert all(lam.dot(r) == (0, 0) for r in found)


def test_shift_bijection_example():
    out = shift_bijection(A1, (-1, 1), [make_root(A1, (0, 1))])
    assert out[0].coords == (-1, 0)


@settings(max_examples=60, deadline=None)
@given(label=st.sampled_from(["A1", "A2", "D4"]), data=st.data())
def test_shift_bijection_inverts(label, data):
    q = build_extended_dynkin(label)
    tail = data.draw(st.lists(st.integers(-5, 5), min_size=q.num_vertices - 1, max_size=q.num_vertices - 1))
    xi = (-dot(tail, q.delta[1:]),) + tuple(tail)
    roots = [r for r in enumerate_roots(q, 2) if r.is_real]
    there = shift_bijection(q, xi, roots)
    back = shift_bijection(q, tuple(-x for x in xi), there)
    assert back == roots
    assert shift_bijection(q, (0,) * q.num_vertices, roots) == roots


@settings(max_examples=60, deadline=None)
@given(label=st.sampled_from(["A1", "A2", "A3", "D4"]), data=st.data())
def test_pairing_with_dynkin_part(label, data):
    q = build_extended_dynkin(label)
    tail = data.draw(st.lists(st.integers(-5, 5), min_size=q.num_vertices - 1, max_size=q.num_vertices - 1))
    xi = (-dot(tail, q.delta[1:]),) + tuple(tail)
    for r in enumerate_roots(q, 2):
        if r.is_real:
            part = dynkin_part(q, r.coords)
            assert part[0] == 0
            assert dot(xi, r.coords) == dot(xi, part)


def test_root_round_trip():
    for r in enumerate_roots(A1, 2):
        assert Root.from_dict(r.to_dict()) == r
