"""Perfect matchings of the cube graph and their symmetry classes.

A perfect matching of the k-cube is a set of 2^(k-1) weight-1 patterns whose
subcubes (cube edges) partition the vertex set.  This module enumerates them
by backtracking, classifies them under the cube's automorphism group of size
k!*2^k, and tests whether a matching splits across a coordinate into two
matchings of complementary half-cubes.

Enumeration is supported up to k=5; classification only up to k=4, where the
group is small enough to canonicalise by brute force.  k=5 enumeration sits
behind an explicit opt-in because the output has 589185 matchings.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .patterns import Pattern, is_decomposition, parse_pattern

MAX_ENUMERATION_K = 5
MAX_CLASSIFY_K = 4


class PerfectMatching:
    """An immutable perfect matching of the k-cube, edges sorted."""

    __slots__ = ("k", "edges", "_hash")

    def __init__(self, k: int, edges: Iterable[Pattern]):
        es = tuple(sorted(edges))
        if len(es) != 1 << (k - 1):
            raise ValueError(f"expected {1 << (k - 1)} edges, got {len(es)}")
        if any(p.weight != 1 or p.k != k for p in es):
            raise ValueError("matching edges must be weight-1 patterns of dimension k")
        if not is_decomposition(es):
            raise ValueError("edges do not partition the cube")
        self.k = k
        self.edges = es
        self._hash = hash((k, es))

    def strings(self) -> tuple[str, ...]:
        return tuple(str(p) for p in self.edges)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PerfectMatching)
            and self.k == other.k
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "PerfectMatching") -> bool:
        return self.strings() < other.strings()

    def __repr__(self) -> str:
        return f"PerfectMatching(k={self.k}, {('|'.join(self.strings()))})"


def _edge_pattern(k: int, vertex: int, direction: int) -> Pattern:
    """Weight-1 pattern of the cube edge at `vertex` along `direction` (0-based)."""
    full = (1 << k) - 1
    fixed = full ^ (1 << direction)
    ones = vertex & fixed
    zeros = fixed ^ ones
    return Pattern(k, zeros, ones)


def exact_covers(
    k: int,
    weights: Sequence[int],
    pick_low: bool = True,
) -> Iterator[tuple[Pattern, ...]]:
    """Enumerate partitions of the cube's vertex set into subcubes.

    Yields every set of patterns with weights drawn from `weights` whose
    subcubes partition {0,1}^k, each exactly once.  `pick_low` selects which
    uncovered vertex the backtracking branches on (lowest or highest); both
    orders produce the same family, which the tests exploit as a cross-check.
    """
    from .patterns import all_patterns, subcube_mask

    full = (1 << (1 << k)) - 1
    wanted = set(weights)
    by_vertex: list[list[tuple[int, Pattern]]] = [[] for _ in range(1 << k)]
    for p in all_patterns(k):
        if p.weight in wanted:
            m = subcube_mask(p)
            mm = m
            while mm:
                v = (mm & -mm).bit_length() - 1
                by_vertex[v].append((m, p))
                mm &= mm - 1

    def rec(covered: int, chosen: list[Pattern]) -> Iterator[tuple[Pattern, ...]]:
        if covered == full:
            yield tuple(chosen)
            return
        rest = full ^ covered
        if pick_low:
            v = (rest & -rest).bit_length() - 1
        else:
            v = rest.bit_length() - 1
        for mask, p in by_vertex[v]:
            if mask & covered:
                continue
            chosen.append(p)
            yield from rec(covered | mask, chosen)
            chosen.pop()

    yield from rec(0, [])


def enumerate_matchings(k: int, allow_large: bool = False) -> list[PerfectMatching]:
    """All perfect matchings of the k-cube, sorted deterministically.

    k=5 already has 589185 matchings and must be requested explicitly via
    allow_large; larger k is refused outright.
    """
    if not 1 <= k <= MAX_ENUMERATION_K:
        raise ValueError(f"matching enumeration supports 1 <= k <= {MAX_ENUMERATION_K}")
    if k == MAX_ENUMERATION_K and not allow_large:
        raise ValueError("k=5 enumeration is expensive; pass allow_large=True")
    out = [PerfectMatching(k, cover) for cover in exact_covers(k, (1,))]
    out.sort()
    return out


@dataclass(frozen=True)
class CubeAutomorphism:
    """Coordinate permutation plus bit flips; together they generate the group.

    perm is 0-based: coordinate i maps to perm[i].  flips is a k-bit mask
    applied after permuting.  A vertex x maps to y with y[perm[i]] = x[i] XOR
    flips[perm[i]].
    """

    perm: tuple[int, ...]
    flips: int

    def apply_vertex(self, vertex: int) -> int:
        out = 0
        for i, j in enumerate(self.perm):
            if vertex >> i & 1:
                out |= 1 << j
        return out ^ self.flips

    def apply_pattern(self, p: Pattern) -> Pattern:
        zeros = ones = 0
        for i, j in enumerate(self.perm):
            bit = 1 << i
            if p.zeros & bit:
                if self.flips >> j & 1:
                    ones |= 1 << j
                else:
                    zeros |= 1 << j
            elif p.ones & bit:
                if self.flips >> j & 1:
                    zeros |= 1 << j
                else:
                    ones |= 1 << j
        return Pattern(p.k, zeros, ones)

    def compose(self, other: "CubeAutomorphism") -> "CubeAutomorphism":
        """self after other: (self.compose(other)).apply == self.apply(other.apply)."""
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        flips = self.flips
        for i in range(len(self.perm)):
            if other.flips >> i & 1:
                flips ^= 1 << self.perm[i]
        return CubeAutomorphism(perm, flips)


def identity_automorphism(k: int) -> CubeAutomorphism:
    return CubeAutomorphism(tuple(range(k)), 0)


def cube_automorphisms(k: int) -> Iterator[CubeAutomorphism]:
    """The full group, all k! * 2^k elements."""
    for perm in itertools.permutations(range(k)):
        for flips in range(1 << k):
            yield CubeAutomorphism(perm, flips)


def apply_automorphism(g: CubeAutomorphism, m: PerfectMatching) -> PerfectMatching:
    if len(g.perm) != m.k:
        raise ValueError("automorphism dimension does not match matching")
    return PerfectMatching(m.k, (g.apply_pattern(p) for p in m.edges))


def canonical_form(m: PerfectMatching) -> PerfectMatching:
    """Orbit representative: the image minimising the sorted string tuple.

    Brute force over the whole group; fine for k <= 4 (384 elements).
    Images are compared as raw pattern tuples and only the winner is
    revalidated as a matching.
    """
    if m.k > MAX_CLASSIFY_K:
        raise ValueError(f"classification supports k <= {MAX_CLASSIFY_K}")
    best = None
    for g in cube_automorphisms(m.k):
        img = tuple(sorted(g.apply_pattern(p).key() for p in m.edges))
        if best is None or img < best[0]:
            best = (img, g)
    return apply_automorphism(best[1], m)


@dataclass(frozen=True)
class MatchingClass:
    representative: PerfectMatching
    orbit_size: int


@functools.lru_cache(maxsize=None)
def classify_matchings(k: int) -> tuple[MatchingClass, ...]:
    """Equivalence classes of matchings under the automorphism group."""
    if not 1 <= k <= MAX_CLASSIFY_K:
        raise ValueError(f"classification supports 1 <= k <= {MAX_CLASSIFY_K}")
    orbits: dict[PerfectMatching, int] = {}
    for m in enumerate_matchings(k):
        canon = canonical_form(m)
        orbits[canon] = orbits.get(canon, 0) + 1
    return tuple(MatchingClass(rep, size) for rep, size in sorted(orbits.items()))


def count_classes(k: int) -> int:
    return len(classify_matchings(k))


def is_inductively_decomposable(m: PerfectMatching) -> tuple[bool, int | None]:
    """Does some coordinate split m into matchings of the two half-cubes?

    Returns (answer, witness coordinate 1-based or None).  Coordinate j works
    exactly when no edge of m is free at j; the least witness is reported.
    """
    for j in range(1, m.k + 1):
        if all(p.trit(j) != "*" for p in m.edges):
            return True, j
    return False, None


def write_matching(m: PerfectMatching) -> str:
    """File form: k on line 1, then one pattern string per line."""
    return "\n".join([str(m.k), *m.strings()]) + "\n"


def read_matching(text: str) -> PerfectMatching:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matching file")
    k = int(lines[0])
    return PerfectMatching(k, (parse_pattern(ln) for ln in lines[1:]))
