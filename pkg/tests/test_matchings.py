"""Matching enumeration, classification and the group action."""

import random

import pytest

from ramsey_cube.matchings import (
    CubeAutomorphism,
    PerfectMatching,
    apply_automorphism,
    canonical_form,
    classify_matchings,
    count_classes,
    cube_automorphisms,
    enumerate_matchings,
    exact_covers,
    identity_automorphism,
    is_inductively_decomposable,
    read_matching,
    write_matching,
)
from ramsey_cube.patterns import is_decomposition, parse_pattern

P = parse_pattern


def brute_force_matchings(k: int) -> set[frozenset]:
    """Oracle: pair up cube vertices directly, no pattern machinery."""
    verts = list(range(1 << k))

    def rec(uncovered: frozenset) -> set[frozenset]:
        if not uncovered:
            return {frozenset()}
        v = min(uncovered)
        out = set()
        for i in range(k):
            w = v ^ (1 << i)
            if w in uncovered:
                for rest in rec(uncovered - {v, w}):
                    out.add(rest | {(v, w)})
        return out

    return rec(frozenset(verts))


def as_vertex_pairs(m: PerfectMatching) -> frozenset:
    """Each weight-1 pattern as its two cube vertices, encoded as integers."""
    from ramsey_cube.patterns import subcube_vertices

    out = []
    for p in m:
        a, b = sorted(
            sum(bit << i for i, bit in enumerate(v)) for v in subcube_vertices(p)
        )
        out.append((a, b))
    return frozenset(out)


@pytest.mark.parametrize("k,count", [(1, 1), (2, 2), (3, 9), (4, 272)])
def test_census_matches_brute_force(k, count):
    ms = enumerate_matchings(k)
    assert len(ms) == count
    assert {as_vertex_pairs(m) for m in ms} == {
        frozenset((min(a, b), max(a, b)) for a, b in m) for m in brute_force_matchings(k)
    }


@pytest.mark.parametrize("k", [2, 3, 4])
def test_two_enumeration_orders_agree(k):
    low = {frozenset(c) for c in exact_covers(k, (1,), pick_low=True)}
    high = {frozenset(c) for c in exact_covers(k, (1,), pick_low=False)}
    assert low == high


def test_enumeration_is_sorted_and_valid():
    for k in (2, 3, 4):
        ms = enumerate_matchings(k)
        assert ms == sorted(ms)
        for m in ms:
            assert len(m) == 2 ** (k - 1)
            assert all(p.weight == 1 for p in m)
            assert is_decomposition(m.edges)


def test_k5_guard():
    with pytest.raises(ValueError):
        enumerate_matchings(5)
    with pytest.raises(ValueError):
        enumerate_matchings(6, allow_large=True)
    with pytest.raises(ValueError):
        classify_matchings(5)


def test_k2_matchings_explicit():
    assert [m.strings() for m in enumerate_matchings(2)] == [
        ("*0", "*1"),
        ("0*", "1*"),
    ]


def test_automorphism_action_examples():
    m = enumerate_matchings(2)[0]  # {*0, *1}
    assert apply_automorphism(identity_automorphism(2), m) == m
    flip1 = CubeAutomorphism((0, 1), 0b01)
    assert apply_automorphism(flip1, m) == m  # free coordinate unaffected
    swap = CubeAutomorphism((1, 0), 0)
    assert apply_automorphism(swap, m).strings() == ("0*", "1*")


def test_group_action_properties():
    rng = random.Random(5)
    for k in (2, 3):
        ms = enumerate_matchings(k)
        group = list(cube_automorphisms(k))
        assert len(group) == math_factorial(k) * 2**k
        ident = identity_automorphism(k)
        for _ in range(30):
            g, h = rng.choice(group), rng.choice(group)
            m = rng.choice(ms)
            assert apply_automorphism(ident, m) == m
            assert apply_automorphism(g.compose(h), m) == apply_automorphism(
                g, apply_automorphism(h, m)
            )
            # vertex action composes the same way
            v = rng.randrange(1 << k)
            assert g.compose(h).apply_vertex(v) == g.apply_vertex(h.apply_vertex(v))


def math_factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@pytest.mark.parametrize("k,f", [(2, 1), (3, 2), (4, 8)])
def test_class_counts(k, f):
    assert count_classes(k) == f


def test_orbit_sizes_divide_group_and_sum_to_census():
    for k, total in ((3, 9), (4, 272)):
        classes = classify_matchings(k)
        group_size = math_factorial(k) * 2**k
        assert sum(c.orbit_size for c in classes) == total
        for c in classes:
            assert group_size % c.orbit_size == 0


def test_canonical_form_constant_on_orbits():
    rng = random.Random(11)
    for k in (3, 4):
        ms = enumerate_matchings(k)
        group = list(cube_automorphisms(k))
        for _ in range(50):
            m = rng.choice(ms)
            g = rng.choice(group)
            assert canonical_form(apply_automorphism(g, m)) == canonical_form(m)


def test_inductively_decomposable_examples():
    m = enumerate_matchings(2)[0]  # {*0, *1}
    ok, j = is_inductively_decomposable(m)
    assert ok and j == 2
    for m in enumerate_matchings(3):
        ok, j = is_inductively_decomposable(m)
        assert ok  # every Q3 matching splits across some coordinate
        assert all(p.trit(j) != "*" for p in m)
    # for k=4 genuinely new matchings appear
    non_split = [m for m in enumerate_matchings(4) if not is_inductively_decomposable(m)[0]]
    assert len(non_split) == 40


def test_matching_file_round_trip():
    for m in enumerate_matchings(3):
        assert read_matching(write_matching(m)) == m


def test_invalid_matchings_rejected():
    with pytest.raises(ValueError):
        PerfectMatching(2, [P("*0"), P("*0")])
    with pytest.raises(ValueError):
        PerfectMatching(2, [P("*0"), P("0*")])
    with pytest.raises(ValueError):
        PerfectMatching(2, [P("**"), P("00")])
