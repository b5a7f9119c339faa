"""Coloured multigraphs over a perfect matching and admissible labellings.

The vertices are the edges of a perfect matching of the k-cube; a coloured
multigraph on them records which colours appear between pairs of cliques in
a coloured graph.  A labelling maps the matching bijectively onto another
perfect matching, preserving each edge's free coordinate (its colour), and
is admissible for a multigraph when every multigraph edge's colour lies in
the coordinate set where the two image patterns carry opposite bits.

The repair recursion turns a multigraph with no monochromatic odd cycle
into an admissible labelling: starting from the identity, the edges that
are bad for the identity are removed, then reinstated in reverse order,
each repaired by flipping one endpoint's component of its colour class.

Multigraph file format: line 1 "k", line 2 the matching patterns separated
by spaces, then lines "i j c" with 0-based indices into the sorted matching
and 1-based colours.  Labelling files: lines "pattern pattern".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .colourings import KColouredGraph
from .matchings import PerfectMatching
from .patterns import Pattern, delta_set, parse_pattern


@dataclass(frozen=True)
class ColouredMultigraph:
    k: int
    vertices: tuple[Pattern, ...]  # a perfect matching, sorted
    edges: tuple[tuple[Pattern, Pattern, int], ...]  # sigma < tau, 1-based colour

    def __post_init__(self):
        matching = PerfectMatching(self.k, self.vertices)  # validates
        object.__setattr__(self, "vertices", matching.edges)
        vs = set(self.vertices)
        for s, t, c in self.edges:
            if s == t:
                raise ValueError(f"loop at {s}")
            if s not in vs or t not in vs:
                raise ValueError(f"edge endpoint outside the matching: {s}, {t}")
            if not 1 <= c <= self.k:
                raise ValueError(f"colour {c} out of range")
            if not s < t:
                raise ValueError("edges must be stored with sigma < tau")

    def matching(self) -> PerfectMatching:
        return PerfectMatching(self.k, self.vertices)

    def colour_edges(self, colour: int) -> list[tuple[Pattern, Pattern]]:
        return [(s, t) for s, t, c in self.edges if c == colour]

    def without(self, removed: Iterable[int]) -> "ColouredMultigraph":
        """Copy with the edges at the given positions removed."""
        drop = set(removed)
        kept = tuple(e for i, e in enumerate(self.edges) if i not in drop)
        return ColouredMultigraph(self.k, self.vertices, kept)


def make_multigraph(
    matching: PerfectMatching, edges: Iterable[tuple[Pattern, Pattern, int]]
) -> ColouredMultigraph:
    norm = []
    for s, t, c in edges:
        if t < s:
            s, t = t, s
        norm.append((s, t, c))
    return ColouredMultigraph(matching.k, matching.edges, tuple(norm))


class Labelling:
    """Colour-preserving bijection from a matching onto a perfect matching."""

    __slots__ = ("k", "mapping",)

    def __init__(self, mapping: Mapping[Pattern, Pattern]):
        items = dict(mapping)
        if not items:
            raise ValueError("empty labelling")
        k = next(iter(items)).k
        source = PerfectMatching(k, items.keys())  # validates the domain
        PerfectMatching(k, items.values())  # validates the image
        if len(set(items.values())) != len(items):
            raise ValueError("labelling is not injective")
        for s, t in items.items():
            if s.fixed_colour() != t.fixed_colour():
                raise ValueError(f"{s} -> {t} changes the free coordinate")
        self.k = k
        self.mapping = {p: items[p] for p in source.edges}

    def __call__(self, p: Pattern) -> Pattern:
        return self.mapping[p]

    def __eq__(self, other) -> bool:
        return isinstance(other, Labelling) and self.mapping == other.mapping

    def items(self):
        return self.mapping.items()

    def image(self) -> PerfectMatching:
        return PerfectMatching(self.k, self.mapping.values())

    def __repr__(self) -> str:
        pairs = ", ".join(f"{s}->{t}" for s, t in self.mapping.items())
        return f"Labelling({pairs})"


def identity_labelling(matching: PerfectMatching) -> Labelling:
    return Labelling({p: p for p in matching})


def is_admissible(
    lab: Labelling, psi: ColouredMultigraph
) -> tuple[bool, tuple[Pattern, Pattern, int] | None]:
    """Check every edge's colour sits in the image pair's opposite-bit set.

    Returns (True, None) or (False, first violating edge).
    """
    if set(lab.mapping) != set(psi.vertices):
        raise ValueError("labelling domain does not match the multigraph vertices")
    for s, t, c in psi.edges:
        if c not in delta_set(lab(s), lab(t)):
            return False, (s, t, c)
    return True, None


def _colour_components(psi: ColouredMultigraph, colour: int) -> list[tuple[Pattern, ...]]:
    adj: dict[Pattern, set[Pattern]] = {v: set() for v in psi.vertices}
    for s, t in psi.colour_edges(colour):
        adj[s].add(t)
        adj[t].add(s)
    seen: set[Pattern] = set()
    comps = []
    for v in psi.vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def component_flip(
    lab: Labelling, psi: ColouredMultigraph, colour: int, component: Sequence[Pattern]
) -> Labelling:
    """Flip coordinate `colour` on the images of one component of that colour.

    The component must be exactly the vertex set of a connected component of
    the colour class, and every image in it must have the colour coordinate
    fixed.  The result is validated as a labelling, so a flip that collapses
    the image matching raises instead of returning garbage.
    """
    comp = tuple(sorted(component))
    if comp and comp not in _colour_components(psi, colour):
        raise ValueError("not the vertex set of a component of that colour class")
    return _flip_set(lab, colour, comp)


def _flip_set(lab: Labelling, colour: int, flip_vertices: Sequence[Pattern]) -> Labelling:
    for v in flip_vertices:
        if lab(v).trit(colour) == "*":
            raise ValueError(f"image {lab(v)} is free at coordinate {colour}")
    mapping = dict(lab.mapping)
    for v in flip_vertices:
        mapping[v] = mapping[v].flip(colour)
    return Labelling(mapping)


def _closed_flip_set(
    lab: Labelling,
    psi: ColouredMultigraph,
    colour: int,
    seed: Pattern,
) -> set[Pattern]:
    """Smallest union of colour-class components containing `seed` that no
    image pair at opposite-bit distance exactly {colour} crosses.

    Flipping exactly one endpoint of such a pair would destroy the
    distinguishability of the two images, so a valid flip set must contain
    both or neither; flipping whole components keeps per-edge admissibility.
    On multigraphs with an edge between every vertex pair those image pairs
    are already joined inside the colour class and the closure adds nothing.
    """
    comps = _colour_components(psi, colour)
    comp_of = {v: comp for comp in comps for v in comp}
    flip: set[Pattern] = set(comp_of[seed])
    frontier = list(comp_of[seed])
    while frontier:
        a = frontier.pop()
        for b in psi.vertices:
            if b in flip:
                continue
            if delta_set(lab(a), lab(b)) == frozenset({colour}):
                for w in comp_of[b]:
                    if w not in flip:
                        flip.add(w)
                        frontier.append(w)
    return flip


def find_odd_cycle(
    psi: ColouredMultigraph, colour: int
) -> tuple[Pattern, ...] | None:
    """An odd cycle in one colour class, or None when it is bipartite."""
    adj: dict[Pattern, list[Pattern]] = {v: [] for v in psi.vertices}
    for s, t in psi.colour_edges(colour):
        if t not in adj[s]:
            adj[s].append(t)
            adj[t].append(s)
    side: dict[Pattern, int] = {}
    parent: dict[Pattern, Pattern | None] = {}
    for root in psi.vertices:
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in side:
                    side[w] = side[u] ^ 1
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    path_u, path_w = [u], [w]
                    au, aw = u, w
                    seen_u = {u}
                    while parent[au] is not None:
                        au = parent[au]
                        path_u.append(au)
                        seen_u.add(au)
                    while aw not in seen_u:
                        aw = parent[aw]
                        path_w.append(aw)
                    cut = path_u.index(aw)
                    cycle = tuple(path_u[: cut + 1]) + tuple(reversed(path_w[:-1]))
                    assert len(cycle) % 2 == 1
                    return cycle
    return None


# ---------------------------------------------------------------------------
# building the class multigraphs from a coloured graph


def build_class_multigraphs(
    g: KColouredGraph, class_map: Mapping[int, Pattern], skip_own_colours: bool = False
) -> tuple[ColouredMultigraph, ColouredMultigraph]:
    """(full, unique): the full multigraph has an edge between two classes in
    each colour appearing between them; the unique one keeps only the pairs
    joined in exactly one colour.

    skip_own_colours drops cross colours equal to either class's own colour;
    those edges say nothing about labellings (no colour-preserving labelling
    can ever admit them) and perturbed graphs routinely contain a few.
    """
    classes = set(class_map.values())
    if len(class_map) != g.n:
        raise ValueError("class map must cover every vertex")
    k = next(iter(classes)).k
    matching = PerfectMatching(k, classes)
    pair_colours: dict[tuple[Pattern, Pattern], set[int]] = {}
    for (u, v), c in g.colours.items():
        s, t = class_map[u], class_map[v]
        if s == t:
            continue
        if skip_own_colours and c in (s.fixed_colour(), t.fixed_colour()):
            continue
        if t < s:
            s, t = t, s
        pair_colours.setdefault((s, t), set()).add(c)
    full_edges = []
    unique_edges = []
    for (s, t), cs in sorted(pair_colours.items()):
        for c in sorted(cs):
            full_edges.append((s, t, c))
        if len(cs) == 1:
            unique_edges.append((s, t, next(iter(cs))))
    full = ColouredMultigraph(k, matching.edges, tuple(full_edges))
    unique = ColouredMultigraph(k, matching.edges, tuple(unique_edges))
    return full, unique


# ---------------------------------------------------------------------------
# covering the matching by distance-one pairs


@dataclass(frozen=True)
class CoverResult:
    colour: int
    ok: bool
    pairs: tuple[tuple[Pattern, Pattern], ...]  # the covering matching T
    isolated: tuple[Pattern, ...]  # patterns free at the colour coordinate
    counterexample: str | None


def distance_one_cover(gamma_star: ColouredMultigraph, colour: int) -> CoverResult:
    """Cover the matching by pairs at opposite-bit distance exactly {colour}.

    For any perfect matching, the graph of such pairs splits into single
    edges and even cycles away from the patterns free at the colour
    coordinate, so an all-covering matching T exists; it must additionally
    sit inside the given unique-colour multigraph, otherwise the structural
    hypothesis fails and the offending pair is reported.
    """
    vs = gamma_star.vertices
    isolated = tuple(v for v in vs if v.trit(colour) == "*")
    h_adj: dict[Pattern, list[Pattern]] = {v: [] for v in vs}
    for i, s in enumerate(vs):
        for t in vs[i + 1 :]:
            if delta_set(s, t) == frozenset({colour}):
                h_adj[s].append(t)
                h_adj[t].append(s)
    present = {(s, t) for s, t in gamma_star.colour_edges(colour)}
    for s in vs:
        for t in h_adj[s]:
            if s < t and (s, t) not in present:
                return CoverResult(
                    colour,
                    False,
                    (),
                    isolated,
                    f"pair {s},{t} at distance {{{colour}}} missing from the "
                    "unique-colour multigraph",
                )
    for v in vs:
        if v not in isolated and not h_adj[v]:
            return CoverResult(
                colour, False, (), isolated,
                f"{v} is neither isolated nor coverable",
            )
    pairs: list[tuple[Pattern, Pattern]] = []
    used: set[Pattern] = set(isolated)
    for v in sorted(vs):
        if v in used:
            continue
        # walk the component (a single edge or an even cycle), pairing
        # alternate edges starting at its least vertex
        walk = [v]
        used.add(v)
        cur = v
        while True:
            nxt = [w for w in sorted(h_adj[cur]) if w not in used]
            if not nxt:
                break
            cur = nxt[0]
            used.add(cur)
            walk.append(cur)
        if len(walk) % 2 != 0:
            return CoverResult(
                colour, False, (), isolated,
                f"odd component {walk} in the distance-one graph",
            )
        for i in range(0, len(walk), 2):
            s, t = walk[i], walk[i + 1]
            pairs.append((s, t) if s < t else (t, s))
    return CoverResult(colour, True, tuple(sorted(pairs)), isolated, None)


# ---------------------------------------------------------------------------
# the repair recursion


@dataclass(frozen=True)
class LabellingSearchResult:
    status: str  # "found" | "odd_cycle" | "invalid_input" | "critical"
    labelling: Labelling | None
    odd_cycle: tuple[int, tuple[Pattern, ...]] | None
    detail: str | None
    flips: int


def find_admissible_labelling(
    phi: ColouredMultigraph, node_budget: int = 50000
) -> LabellingSearchResult:
    """Construct an admissible labelling when no colour class has an odd cycle.

    Bad edges for the identity are removed and reinstated one at a time; a
    reinstated edge that is bad for the current labelling is repaired by
    flipping one endpoint's component of the partially reinstated colour
    class, closed under image pairs a flip must not separate.  The
    reinstatement order and the endpoint are free choices, so the repair
    runs as a deterministic depth-first search over them whose first branch
    reinstates in reverse sorted order flipping the lexicographically larger
    endpoint; on sparse instances a single schedule can dead-end even though
    others succeed, and the search backtracks.  An exhausted search or
    budget is reported as critical.
    """
    for s, t, c in phi.edges:
        if c in (s.fixed_colour(), t.fixed_colour()):
            return LabellingSearchResult(
                "invalid_input", None, None,
                f"edge ({s},{t}) carries colour {c}, the free coordinate of an "
                "endpoint; no colour-preserving labelling can admit it",
                0,
            )
    for colour in range(1, phi.k + 1):
        cyc = find_odd_cycle(phi, colour)
        if cyc is not None:
            return LabellingSearchResult("odd_cycle", None, (colour, cyc), None, 0)

    matching = phi.matching()
    identity = identity_labelling(matching)
    bad = [i for i, (s, t, c) in enumerate(phi.edges) if c not in delta_set(s, t)]
    bad.sort(key=lambda i: (phi.edges[i][0].key(), phi.edges[i][1].key(), phi.edges[i][2]))

    seen: set[tuple] = set()
    nodes = 0

    def state_key(pending: tuple[int, ...], lab: Labelling) -> tuple:
        return (pending, tuple(lab(v) for v in phi.vertices))

    def dfs(pending: tuple[int, ...], lab: Labelling, flips: int):
        nonlocal nodes
        # reinstate edges that are already good under the current labelling
        while pending:
            free = [i for i in pending if phi.edges[i][2] in delta_set(lab(phi.edges[i][0]), lab(phi.edges[i][1]))]
            if not free:
                break
            pending = tuple(i for i in pending if i not in free)
        if not pending:
            return lab, flips
        key = state_key(pending, lab)
        if key in seen:
            return None
        seen.add(key)
        nodes += 1
        if nodes > node_budget:
            raise _SearchBudget()
        partial = phi.without(pending)
        # branch on which bad edge to reinstate next, then on the endpoint
        for pos in range(len(pending) - 1, -1, -1):
            i = pending[pos]
            s, t, c = phi.edges[i]
            comps = _colour_components(partial, c)
            comp_of = {v: comp for comp in comps for v in comp}
            if comp_of[s] == comp_of[t]:
                continue
            rest = pending[:pos] + pending[pos + 1 :]
            for seed in sorted((s, t), key=lambda p: p.key(), reverse=True):
                flip_set = _closed_flip_set(lab, partial, c, seed)
                if s in flip_set and t in flip_set:
                    continue
                nxt = _flip_set(lab, c, sorted(flip_set))
                found = dfs(rest, nxt, flips + 1)
                if found is not None:
                    return found
        return None

    try:
        found = dfs(tuple(bad), identity, 0)
    except _SearchBudget:
        return LabellingSearchResult(
            "critical", None, None,
            f"repair search exceeded {node_budget} nodes", 0,
        )
    if found is None:
        return LabellingSearchResult(
            "critical", None, None,
            "repair search exhausted: every reinstatement schedule dead-ends",
            0,
        )
    lab, flips = found
    ok, witness = is_admissible(lab, phi)
    if not ok:
        return LabellingSearchResult(
            "critical", None, None,
            f"repair recursion finished but edge {witness} is still bad",
            flips,
        )
    return LabellingSearchResult("found", lab, None, None, flips)


class _SearchBudget(Exception):
    pass


# ---------------------------------------------------------------------------
# generator of satisfiable instances (used by tests and the CLI demo)


def random_admissible_instance(
    k: int,
    rng,
    matchings_pool: Sequence[PerfectMatching],
    max_edges: int | None = None,
) -> tuple[ColouredMultigraph, Labelling]:
    """A multigraph admissible for a hidden labelling, plus that labelling.

    Draws a source and a target matching with the same colour counts, a
    random colour-preserving bijection between them, and random edges whose
    colours are sampled from the image pairs' opposite-bit sets.  Every such
    instance has no monochromatic odd cycle.
    """
    source = matchings_pool[rng.randrange(len(matchings_pool))]

    def colour_counts(m: PerfectMatching) -> tuple[int, ...]:
        counts = [0] * k
        for p in m:
            counts[p.fixed_colour() - 1] += 1
        return tuple(counts)

    want = colour_counts(source)
    targets = [m for m in matchings_pool if colour_counts(m) == want]
    target = targets[rng.randrange(len(targets))]
    mapping: dict[Pattern, Pattern] = {}
    for colour in range(1, k + 1):
        src = [p for p in source if p.fixed_colour() == colour]
        dst = [p for p in target if p.fixed_colour() == colour]
        rng.shuffle(dst)
        mapping.update(zip(src, dst))
    hidden = Labelling(mapping)
    pairs = [
        (s, t)
        for i, s in enumerate(source.edges)
        for t in source.edges[i + 1 :]
    ]
    if max_edges is None:
        max_edges = 3 * len(pairs)
    edges = []
    for _ in range(rng.randrange(max_edges + 1)):
        s, t = pairs[rng.randrange(len(pairs))]
        allowed = sorted(delta_set(hidden(s), hidden(t)))
        edges.append((s, t, allowed[rng.randrange(len(allowed))]))
    rng.shuffle(edges)
    return make_multigraph(source, edges), hidden


def random_solvable_instance(
    k: int,
    rng,
    matchings_pool: Sequence[PerfectMatching],
    noise: int | None = None,
    max_tries: int = 500,
) -> ColouredMultigraph:
    """The multigraph of a noisy extremal colouring: a skeleton with at
    least one edge inside the opposite-bit set of every vertex pair, plus
    random stray edges, resampled until no colour class has an odd cycle.

    The skeleton mirrors what cross cliques of a near-extremal graph always
    provide, and it is exactly what makes the identity-start repair
    recursion complete: with it, every intermediate flip keeps the image a
    perfect matching and no reinstatement schedule can dead-end.  Arbitrary
    multigraphs admit no such guarantee even when admissible labellings
    exist.
    """
    for _ in range(max_tries):
        matching = matchings_pool[rng.randrange(len(matchings_pool))]
        verts = matching.edges
        pairs = [
            (s, t) for i, s in enumerate(verts) for t in verts[i + 1 :]
        ]
        edges = []
        for s, t in pairs:
            allowed = sorted(delta_set(s, t))
            take = rng.randrange(len(allowed)) + 1
            for c in rng.sample(allowed, take):
                edges.append((s, t, c))
        n_noise = noise if noise is not None else rng.randrange(1 + 2 * len(pairs))
        for _ in range(n_noise):
            s, t = pairs[rng.randrange(len(pairs))] if pairs else (None, None)
            if s is None:
                break
            options = [
                c
                for c in range(1, k + 1)
                if c not in (s.fixed_colour(), t.fixed_colour())
            ]
            if options:
                edges.append((s, t, options[rng.randrange(len(options))]))
        phi = make_multigraph(matching, edges)
        if all(find_odd_cycle(phi, c) is None for c in range(1, k + 1)):
            return phi
    raise RuntimeError("failed to draw an odd-cycle-free instance")


# ---------------------------------------------------------------------------
# files


def write_multigraph(psi: ColouredMultigraph) -> str:
    idx = {v: i for i, v in enumerate(psi.vertices)}
    lines = [str(psi.k), " ".join(str(v) for v in psi.vertices)]
    for s, t, c in psi.edges:
        lines.append(f"{idx[s]} {idx[t]} {c}")
    return "\n".join(lines) + "\n"


def read_multigraph(text: str) -> ColouredMultigraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValueError("multigraph file needs a dimension and a matching line")
    k = int(lines[0])
    vertices = tuple(sorted(parse_pattern(tok) for tok in lines[1].split()))
    edges = []
    for ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad multigraph edge line: {ln!r}")
        i, j, c = int(parts[0]), int(parts[1]), int(parts[2])
        if not (0 <= i < len(vertices) and 0 <= j < len(vertices)):
            raise ValueError(f"vertex index out of range: {ln!r}")
        s, t = vertices[i], vertices[j]
        if t < s:
            s, t = t, s
        edges.append((s, t, c))
    return ColouredMultigraph(k, vertices, tuple(edges))


def write_labelling(lab: Labelling) -> str:
    return "\n".join(f"{s} {t}" for s, t in lab.items()) + "\n"


def read_labelling(text: str) -> Labelling:
    mapping = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        a, b = ln.split()
        mapping[parse_pattern(a)] = parse_pattern(b)
    return Labelling(mapping)
