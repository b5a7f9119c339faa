"""Edge-coloured graphs, hypercube colourings and profile partitions.

A k-coloured graph is a vertex count plus a map from unordered vertex pairs
to colours in 1..k; absent pairs are non-edges, so incomplete graphs are
first class.  The profile partition classifies each vertex by, per colour,
which side of the bipartite part of that colour class it sits on (0/1) or
whether it sits in a non-bipartite component ('*'); the profile counts the
class sizes.

Hypercube colourings are the extremal constructions: given a perfect
matching of the k-cube and a clique size q, each matching edge hosts a
monochromatic q-clique in the colour of its free coordinate, and edges
between two cliques take a colour in which the two matching edges lie in
opposite half-cubes.  Every colour class is then a union of q-cliques plus
a bipartite graph, so for odd n > q there is no monochromatic n-cycle.

Graph file format: line 1 "k N", then lines "u v c" with 0-based vertices
and 1-based colours.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .matchings import PerfectMatching
from .patterns import AST, Pattern, delta_set

EdgeColour = Mapping[tuple[int, int], int]


def _normalise_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class KColouredGraph:
    n: int
    k: int
    colours: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("need n >= 1 and k >= 1")
        for (u, v), c in self.colours.items():
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u},{v})")
            if not (1 <= c <= self.k):
                raise ValueError(f"colour {c} out of range at ({u},{v})")

    def colour_of(self, u: int, v: int) -> int | None:
        return self.colours.get(_normalise_edge(u, v))

    def edge_count(self) -> int:
        return len(self.colours)

    def density(self) -> float:
        possible = self.n * (self.n - 1) // 2
        return len(self.colours) / possible if possible else 1.0

    def colour_class_edges(self, colour: int) -> list[tuple[int, int]]:
        return sorted(e for e, c in self.colours.items() if c == colour)

    def adjacency(self, colour: int | None = None) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (u, v), c in self.colours.items():
            if colour is None or c == colour:
                adj[u].append(v)
                adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj


def from_edges(n: int, k: int, edges: Iterable[tuple[int, int, int]]) -> KColouredGraph:
    colours: dict[tuple[int, int], int] = {}
    for u, v, c in edges:
        e = _normalise_edge(u, v)
        if e in colours:
            raise ValueError(f"duplicate edge {e}")
        colours[e] = c
    return KColouredGraph(n, k, colours)


def write_graph(g: KColouredGraph) -> str:
    lines = [f"{g.k} {g.n}"]
    for (u, v), c in sorted(g.colours.items()):
        lines.append(f"{u} {v} {c}")
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> KColouredGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'k N'")
    k, n = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
    return from_edges(n, k, edges)


# ---------------------------------------------------------------------------
# hypercube colourings


CrossRule = Callable[[Pattern, Pattern, frozenset[int]], int]


def least_colour_rule(sigma: Pattern, tau: Pattern, allowed: frozenset[int]) -> int:
    return min(allowed)


def seeded_random_rule(seed: int) -> CrossRule:
    """Independent per-edge colour choice, reproducible from the seed."""
    rng = random.Random(seed)

    def rule(sigma: Pattern, tau: Pattern, allowed: frozenset[int]) -> int:
        return rng.choice(sorted(allowed))

    return rule


@dataclass(frozen=True)
class HypercubeColouring:
    graph: KColouredGraph
    matching: PerfectMatching
    clique_size: int
    classes: dict[Pattern, tuple[int, ...]]

    def class_of(self) -> dict[int, Pattern]:
        out: dict[int, Pattern] = {}
        for p, vs in self.classes.items():
            for v in vs:
                out[v] = p
        return out


def build_hypercube_colouring(
    matching: PerfectMatching,
    clique_size: int,
    cross_rule: CrossRule = least_colour_rule,
) -> HypercubeColouring:
    """Complete graph on 2^(k-1) * clique_size vertices, coloured extremally.

    Vertices are blocks of clique_size consecutive integers, one block per
    matching edge in sorted order.  Interior edges take the block's colour;
    an edge between blocks sigma and tau takes cross_rule's pick from the
    coordinates where sigma and tau carry opposite bits.  The rule's pick is
    validated against that set.
    """
    if clique_size < 1:
        raise ValueError("clique_size must be >= 1")
    k = matching.k
    blocks = list(matching.edges)
    classes: dict[Pattern, tuple[int, ...]] = {}
    colours: dict[tuple[int, int], int] = {}
    for b, p in enumerate(blocks):
        lo = b * clique_size
        classes[p] = tuple(range(lo, lo + clique_size))
        colour = p.fixed_colour()
        for i in range(lo, lo + clique_size):
            for j in range(i + 1, lo + clique_size):
                colours[(i, j)] = colour
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            sigma, tau = blocks[a], blocks[b]
            allowed = frozenset(delta_set(sigma, tau))
            for u in classes[sigma]:
                for v in classes[tau]:
                    c = cross_rule(sigma, tau, allowed)
                    if c not in allowed:
                        raise ValueError(
                            f"cross rule chose colour {c} outside {sorted(allowed)} "
                            f"for {sigma}/{tau}"
                        )
                    colours[_normalise_edge(u, v)] = c
    n = len(blocks) * clique_size
    return HypercubeColouring(KColouredGraph(n, k, colours), matching, clique_size, classes)


# ---------------------------------------------------------------------------
# colour class decomposition and profiles


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    bipartite: bool
    # sides are normalised so the least vertex sits in sides[0]; None when
    # the component is non-bipartite
    sides: tuple[tuple[int, ...], tuple[int, ...]] | None


def colour_class_split(g: KColouredGraph, colour: int) -> tuple[list[Component], list[Component]]:
    """Components of the colour class, separated into (bipartite, other).

    Every vertex of g belongs to the colour class; vertices not incident to
    an edge of this colour are isolated single-vertex bipartite components.
    """
    adj = g.adjacency(colour)
    class_edges = g.colour_class_edges(colour)
    seen = [False] * g.n
    bip: list[Component] = []
    nonbip: list[Component] = []
    for start in range(g.n):
        if seen[start]:
            continue
        colouring = {start: 0}
        seen[start] = True
        queue = [start]
        verts = [start]
        is_bip = True
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if v not in colouring:
                    colouring[v] = colouring[u] ^ 1
                    seen[v] = True
                    verts.append(v)
                    queue.append(v)
                elif colouring[v] == colouring[u]:
                    is_bip = False
        verts.sort()
        edges = tuple((u, v) for (u, v) in class_edges if u in colouring)
        if is_bip:
            s0 = tuple(v for v in verts if colouring[v] == 0)
            s1 = tuple(v for v in verts if colouring[v] == 1)
            if s0 and s1 and min(s0) > min(s1):
                s0, s1 = s1, s0
            bip.append(Component(tuple(verts), edges, True, (s0, s1)))
        else:
            nonbip.append(Component(tuple(verts), edges, False, None))
    return bip, nonbip


# a side choice maps (colour, component vertex tuple) -> True to swap sides
SideChoice = Callable[[int, tuple[int, ...]], bool]


def default_side_choice(colour: int, component: tuple[int, ...]) -> bool:
    return False


@dataclass(frozen=True)
class ProfilePartition:
    k: int
    vertex_class: tuple[Pattern, ...]

    def classes(self) -> dict[Pattern, tuple[int, ...]]:
        out: dict[Pattern, list[int]] = {}
        for v, p in enumerate(self.vertex_class):
            out.setdefault(p, []).append(v)
        return {p: tuple(vs) for p, vs in out.items()}


def profile_partition(g: KColouredGraph, choice: SideChoice = default_side_choice) -> ProfilePartition:
    """Assign every vertex its pattern class.

    For each colour, vertices of non-bipartite components get '*'; vertices
    of bipartite components get the side index, where `choice` may swap the
    two sides of any individual component.  The structural facts that every
    same-colour bipartite edge crosses sides and every non-bipartite edge
    joins two '*' classes hold for any choice.
    """
    trits: list[list[str]] = [["0"] * g.k for _ in range(g.n)]
    for colour in range(1, g.k + 1):
        bip, nonbip = colour_class_split(g, colour)
        for comp in nonbip:
            for v in comp.vertices:
                trits[v][colour - 1] = AST
        for comp in bip:
            swap = bool(choice(colour, comp.vertices))
            s0, s1 = comp.sides
            if swap:
                s0, s1 = s1, s0
            for v in s0:
                trits[v][colour - 1] = "0"
            for v in s1:
                trits[v][colour - 1] = "1"
    return ProfilePartition(g.k, tuple(Pattern.from_trits(t) for t in trits))


def profile(partition: ProfilePartition) -> dict[Pattern, int]:
    """Class sizes, sparsely (absent patterns have size 0)."""
    out: dict[Pattern, int] = {}
    for p in partition.vertex_class:
        out[p] = out.get(p, 0) + 1
    return out


# ---------------------------------------------------------------------------
# edit distance


def edit_distance(g: KColouredGraph, h: KColouredGraph) -> dict[int, int]:
    """Per-colour size of the symmetric difference of the edge sets.

    h's vertex set must be contained in g's; both graphs carry k colours.
    """
    if h.n > g.n:
        raise ValueError("V(H) must be a subset of V(G)")
    if h.k != g.k:
        raise ValueError("colour counts differ")
    out: dict[int, int] = {c: 0 for c in range(1, g.k + 1)}
    for e, c in g.colours.items():
        if h.colours.get(e) != c:
            out[c] += 1
    for e, c in h.colours.items():
        if g.colours.get(e) != c:
            out[c] += 1
    return out


def is_eps_close(g: KColouredGraph, h: KColouredGraph, eps: float) -> bool:
    bound = eps * g.n * g.n
    return all(d <= bound for d in edit_distance(g, h).values())


# ---------------------------------------------------------------------------
# structural verification of a hypercube colouring


@dataclass(frozen=True)
class ColourStructure:
    colour: int
    clique_components: int
    bipartite_components: int
    ok: bool
    failure: str | None


def verify_colouring_structure(hc: HypercubeColouring) -> list[ColourStructure]:
    """Check each colour class is clique blocks of the right size plus a
    bipartite rest; this is the structural certificate that no odd cycle
    longer than the clique size can be monochromatic."""
    g = hc.graph
    q = hc.clique_size
    own_blocks = {
        colour: {hc.classes[p] for p in hc.matching if p.fixed_colour() == colour}
        for colour in range(1, g.k + 1)
    }
    reports = []
    for colour in range(1, g.k + 1):
        bip, nonbip = colour_class_split(g, colour)
        cliques = 0
        failure = None
        expected = set(own_blocks[colour])
        for comp in list(nonbip) + [c for c in bip if len(c.vertices) == q and q <= 2]:
            if comp.vertices not in expected:
                failure = f"component {comp.vertices} is not a clique block"
                break
            want = q * (q - 1) // 2
            if len(comp.edges) != want:
                failure = f"block {comp.vertices} has {len(comp.edges)} edges, not {want}"
                break
            cliques += 1
        bipartite_rest = sum(
            1 for c in bip if not (len(c.vertices) == q and q <= 2 and c.vertices in expected)
        )
        if failure is None and cliques != len(expected):
            failure = f"found {cliques} clique blocks, expected {len(expected)}"
        reports.append(
            ColourStructure(colour, cliques, bipartite_rest, failure is None, failure)
        )
    return reports
