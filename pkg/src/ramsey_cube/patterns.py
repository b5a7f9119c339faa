"""Patterns over {0,1,*}^k and their subcube semantics.

A pattern fixes some coordinates of the k-dimensional binary cube to 0 or 1
and leaves the rest free ('*', a missing bit).  Each pattern corresponds to
the subcube of binary vectors agreeing with it on the fixed coordinates; the
number of free coordinates is the pattern's weight and the dimension of that
subcube.  Weight-1 patterns are exactly the edges of the cube graph.

Two patterns are *distinguishable* when some coordinate carries a 0 on one
and a 1 on the other (their subcubes are disjoint), and *compatible* when
they are distinguishable or share a free coordinate (their subcubes are
disjoint or meet in at least two vertices).  These predicates dominate the
inner loops of every enumeration downstream, so a pattern stores a bitmask
of its 0-coordinates and a bitmask of its 1-coordinates and the predicates
are O(1) word operations.

Coordinates are 1-based in the public API, aligned with the 1-based colour
indices used in graph files: the free coordinate of a weight-1 pattern *is*
a colour.  Text form: a string over '0', '1', '*' of length k, e.g. "0**".
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

AST = "*"

_TRIT_ORDER = {"0": 0, "1": 1, AST: 2}


class Pattern:
    """An element of {0,1,*}^k, immutable and hashable."""

    __slots__ = ("k", "zeros", "ones", "_hash")

    def __init__(self, k: int, zeros: int, ones: int):
        if k < 1:
            raise ValueError("pattern dimension must be >= 1")
        full = (1 << k) - 1
        if zeros & ones or zeros & ~full or ones & ~full:
            raise ValueError("invalid pattern masks")
        self.k = k
        self.zeros = zeros
        self.ones = ones
        self._hash = hash((k, zeros, ones))

    @classmethod
    def from_trits(cls, trits: Iterable[str | int]) -> "Pattern":
        """Build from a sequence of 0, 1 and '*' (ints or characters)."""
        zeros = ones = 0
        k = 0
        for i, t in enumerate(trits):
            s = str(t)
            if s == "0":
                zeros |= 1 << i
            elif s == "1":
                ones |= 1 << i
            elif s != AST:
                raise ValueError(f"bad coordinate {t!r}")
            k = i + 1
        return cls(k, zeros, ones)

    @property
    def ast_mask(self) -> int:
        return ((1 << self.k) - 1) ^ (self.zeros | self.ones)

    @property
    def weight(self) -> int:
        """Number of free coordinates; the dimension of the subcube."""
        return bin(self.ast_mask).count("1")

    def trit(self, j: int) -> str:
        """Coordinate j (1-based) as '0', '1' or '*'."""
        bit = 1 << (j - 1)
        if self.zeros & bit:
            return "0"
        if self.ones & bit:
            return "1"
        return AST

    def ast_coords(self) -> tuple[int, ...]:
        """1-based free coordinates, ascending."""
        return tuple(j for j in range(1, self.k + 1) if self.ast_mask >> (j - 1) & 1)

    def fixed_colour(self) -> int:
        """The unique free coordinate of a weight-1 pattern (its colour)."""
        if self.weight != 1:
            raise ValueError(f"{self} does not have weight 1")
        return self.ast_mask.bit_length()

    def flip(self, j: int) -> "Pattern":
        """The pattern with coordinate j (1-based, fixed) flipped 0 <-> 1."""
        bit = 1 << (j - 1)
        if not 1 <= j <= self.k:
            raise ValueError(f"coordinate {j} out of range for k={self.k}")
        if self.ast_mask & bit:
            raise ValueError(f"coordinate {j} of {self} is free and cannot flip")
        return Pattern(self.k, self.zeros ^ bit, self.ones ^ bit)

    def key(self) -> tuple[int, ...]:
        """Sort key giving lexicographic order with 0 < 1 < '*'."""
        return tuple(_TRIT_ORDER[self.trit(j)] for j in range(1, self.k + 1))

    def __str__(self) -> str:
        return "".join(self.trit(j) for j in range(1, self.k + 1))

    def __repr__(self) -> str:
        return f"Pattern({str(self)!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Pattern)
            and self.k == other.k
            and self.zeros == other.zeros
            and self.ones == other.ones
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Pattern") -> bool:
        if self.k != other.k:
            return self.k < other.k
        return self.key() < other.key()


def parse_pattern(text: str) -> Pattern:
    """Parse the text form, a string over '0','1','*'."""
    text = text.strip()
    if not text or any(c not in "01*" for c in text):
        raise ValueError(f"not a pattern string: {text!r}")
    return Pattern.from_trits(text)


def all_patterns(k: int) -> Iterator[Pattern]:
    """All 3^k patterns in lexicographic order (0 < 1 < '*')."""
    for trits in product("01*", repeat=k):
        yield Pattern.from_trits(trits)


def _check_same_dimension(a: Pattern, b: Pattern) -> None:
    if a.k != b.k:
        raise ValueError(f"dimension mismatch: {a.k} vs {b.k}")


def distinguishable(a: Pattern, b: Pattern) -> bool:
    """True iff some coordinate is 0 on one pattern and 1 on the other.

    Equivalent to the two subcubes being disjoint.
    """
    _check_same_dimension(a, b)
    return bool((a.zeros & b.ones) | (a.ones & b.zeros))


def compatible(a: Pattern, b: Pattern) -> bool:
    """True iff distinguishable or sharing a free coordinate.

    Incompatible pairs are exactly those whose subcubes meet in one vertex;
    a weight-0 pattern is incompatible with itself.
    """
    _check_same_dimension(a, b)
    if (a.zeros & b.ones) | (a.ones & b.zeros):
        return True
    return bool(a.ast_mask & b.ast_mask)


def delta_set(a: Pattern, b: Pattern) -> frozenset[int]:
    """The set of 1-based coordinates where {a_j, b_j} = {0, 1}."""
    _check_same_dimension(a, b)
    mask = (a.zeros & b.ones) | (a.ones & b.zeros)
    return frozenset(j for j in range(1, a.k + 1) if mask >> (j - 1) & 1)


def distance(a: Pattern, b: Pattern) -> int:
    """Size of delta_set(a, b)."""
    _check_same_dimension(a, b)
    return bin((a.zeros & b.ones) | (a.ones & b.zeros)).count("1")


def subcube_vertices(p: Pattern) -> frozenset[tuple[int, ...]]:
    """The binary vectors agreeing with p on its fixed coordinates."""
    free = [j - 1 for j in p.ast_coords()]
    base = [0] * p.k
    for j in range(p.k):
        if p.ones >> j & 1:
            base[j] = 1
    out = []
    for bits in range(1 << len(free)):
        v = base[:]
        for idx, j in enumerate(free):
            v[j] = bits >> idx & 1
        out.append(tuple(v))
    return frozenset(out)


def subcube_mask(p: Pattern) -> int:
    """Subcube as a bitmap over cube vertices encoded as k-bit integers."""
    free = [j - 1 for j in p.ast_coords()]
    base = p.ones
    mask = 0
    for bits in range(1 << len(free)):
        v = base
        for idx, j in enumerate(free):
            if bits >> idx & 1:
                v |= 1 << j
        mask |= 1 << v
    return mask


def vertex_pattern(k: int, vertex: int) -> Pattern:
    """The weight-0 pattern of a cube vertex encoded as a k-bit integer."""
    full = (1 << k) - 1
    return Pattern(k, full ^ (vertex & full), vertex & full)


def is_distinguishable_set(patterns: Iterable[Pattern]) -> bool:
    """Pairwise distinguishable and every member of weight >= 1."""
    ps = list(patterns)
    if any(p.weight < 1 for p in ps):
        return False
    for i, a in enumerate(ps):
        for b in ps[i + 1 :]:
            if not distinguishable(a, b):
                return False
    return True


def is_decomposition(patterns: Iterable[Pattern]) -> bool:
    """A distinguishable set whose subcubes cover the whole cube.

    Disjointness makes the size count exact: the subcubes cover {0,1}^k
    iff their sizes sum to 2^k.
    """
    ps = list(patterns)
    if not ps:
        return False
    if not is_distinguishable_set(ps):
        return False
    k = ps[0].k
    return sum(1 << p.weight for p in ps) == 1 << k


def parallel_subcubes(p: Pattern, keep_free: Iterable[int]) -> frozenset[Pattern]:
    """Split p's subcube into parallel subcubes free exactly on keep_free.

    keep_free must be a subset of p's free coordinates (1-based).  The other
    free coordinates are filled in all 2^(weight - |keep_free|) ways; the
    results are pairwise distinguishable and partition p's subcube.
    """
    keep = frozenset(keep_free)
    free = frozenset(p.ast_coords())
    if not keep <= free:
        raise ValueError(f"{sorted(keep - free)} are not free coordinates of {p}")
    fill = sorted(free - keep)
    out = []
    for bits in range(1 << len(fill)):
        zeros, ones = p.zeros, p.ones
        for idx, j in enumerate(fill):
            if bits >> idx & 1:
                ones |= 1 << (j - 1)
            else:
                zeros |= 1 << (j - 1)
        out.append(Pattern(p.k, zeros, ones))
    return frozenset(out)
