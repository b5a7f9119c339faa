"""Combinatorial oracles: cycle search, connected matchings, cycle bounds.

These are the independent checkers used to certify constructions and graph
hypotheses: exhaustive search for a monochromatic cycle of a given length,
maximum matchings per component (blossom contraction, so non-bipartite
components are handled correctly), and the classical bound relating
circumference to edge count.

Searches carry an explicit expansion budget and return a definitive
found/absent answer only when the search actually completed; a truncated
search reports "indefinite" instead of silently claiming absence.  The
default budget can be overridden with the RAMSEY_CUBE_BUDGET environment
variable.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .colourings import KColouredGraph, colour_class_split

DEFAULT_BUDGET = 10**8


def search_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("RAMSEY_CUBE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# exact-length cycle search


@dataclass(frozen=True)
class CycleSearchResult:
    status: str  # "found" | "absent" | "indefinite"
    witness: tuple[int, ...] | None
    expansions: int
    budget: int

    @property
    def definitive(self) -> bool:
        return self.status != "indefinite"


def _adjacency_masks(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _bfs_distances(adj: Sequence[int], start: int, n: int) -> list[int]:
    dist = [n + 1] * n
    dist[start] = 0
    q = deque([start])
    while q:
        u = q.popleft()
        m = adj[u]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if dist[v] > dist[u] + 1:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def find_cycle_in_edges(
    n: int,
    edges: Iterable[tuple[int, int]],
    length: int,
    budget: int | None = None,
) -> CycleSearchResult:
    """Search for a cycle of exactly `length` vertices.

    Exhaustive depth-first search over paths whose start is the least vertex
    of the cycle, pruned by breadth-first distance back to the start.  The
    budget counts node expansions; exceeding it yields an indefinite result.
    """
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    limit = search_budget(budget)
    adj = _adjacency_masks(n, edges)
    expansions = 0
    for start in range(n):
        if not adj[start]:
            continue
        dist = _bfs_distances(adj, start, n)
        allowed_mask = 0
        for v in range(start, n):
            allowed_mask |= 1 << v
        # stack entries: (vertex, visited mask, path)
        stack = [(start, 1 << start, (start,))]
        while stack:
            u, visited, path = stack.pop()
            expansions += 1
            if expansions > limit:
                return CycleSearchResult("indefinite", None, expansions, limit)
            steps_left = length - len(path)
            if steps_left == 0:
                if adj[u] >> start & 1:
                    return CycleSearchResult("found", path, expansions, limit)
                continue
            cand = adj[u] & allowed_mask & ~visited
            while cand:
                v = (cand & -cand).bit_length() - 1
                cand &= cand - 1
                if dist[v] <= steps_left:
                    stack.append((v, visited | 1 << v, path + (v,)))
    return CycleSearchResult("absent", None, expansions, limit)


def find_cycle(
    g: KColouredGraph,
    colour: int,
    length: int,
    budget: int | None = None,
) -> CycleSearchResult:
    """Monochromatic cycle of exactly `length` vertices in one colour class."""
    return find_cycle_in_edges(g.n, g.colour_class_edges(colour), length, budget)


# ---------------------------------------------------------------------------
# maximum matching with blossom contraction


def max_matching(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Maximum matching in a general graph; returns the mate array (-1 free).

    Standard augmenting-path search with blossom contraction via base
    pointers, O(V^3); fine for the component sizes seen here.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = [False] * n
        x = a
        while True:
            x = base[x]
            used[x] = True
            if match[x] == -1:
                break
            x = parent[match[x]]
        y = b
        while True:
            y = base[y]
            if used[y]:
                return y
            y = parent[match[y]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting(root: int) -> int:
        used = [False] * n
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, in_blossom)
                    mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    for v in range(n):
        if match[v] != -1:
            continue
        finish = find_augmenting(v)
        if finish == -1:
            continue
        u = finish
        while u != -1:
            pv = parent[u]
            ppv = match[pv]
            match[u] = pv
            match[pv] = u
            u = ppv
    return match


def matching_size(mate: Sequence[int]) -> int:
    return sum(1 for v, m in enumerate(mate) if m > v)


# ---------------------------------------------------------------------------
# connected matchings


@dataclass(frozen=True)
class ComponentMatching:
    vertices: tuple[int, ...]
    bipartite: bool
    matching_size: int

    @property
    def order(self) -> int:
        """Vertices saturated by a maximum matching."""
        return 2 * self.matching_size


@dataclass(frozen=True)
class ConnectedMatchingReport:
    colour: int
    components: tuple[ComponentMatching, ...]
    max_odd_order: int
    witness: ComponentMatching | None


def largest_odd_connected_matching(g: KColouredGraph, colour: int) -> ConnectedMatchingReport:
    """Largest order of a non-bipartite component's maximum matching.

    Isolated vertices and bipartite components contribute only to the
    per-component listing; the reported order comes from non-bipartite
    components alone, matching how odd cycles can only live there.
    """
    bip, nonbip = colour_class_split(g, colour)
    comps: list[ComponentMatching] = []
    best: ComponentMatching | None = None
    for comp in bip + nonbip:
        index = {v: i for i, v in enumerate(comp.vertices)}
        local = [(index[u], index[v]) for u, v in comp.edges]
        mate = max_matching(len(comp.vertices), local)
        cm = ComponentMatching(comp.vertices, comp.bipartite, matching_size(mate))
        comps.append(cm)
        if not cm.bipartite and (best is None or cm.order > best.order):
            best = cm
    comps.sort(key=lambda c: c.vertices)
    return ConnectedMatchingReport(
        colour, tuple(comps), best.order if best else 0, best
    )


def max_odd_connected_matching_order(g: KColouredGraph) -> tuple[int, int]:
    """(largest order over all colours, a colour attaining it)."""
    best, arg = 0, 1
    for colour in range(1, g.k + 1):
        rep = largest_odd_connected_matching(g, colour)
        if rep.max_odd_order > best:
            best, arg = rep.max_odd_order, colour
    return best, arg


# ---------------------------------------------------------------------------
# circumference and the cycle-count edge bound


@dataclass(frozen=True)
class CircumferenceResult:
    circumference: int  # 0 when acyclic
    witness: tuple[int, ...] | None
    expansions: int


def circumference(
    n: int, edges: Iterable[tuple[int, int]], budget: int | None = None
) -> CircumferenceResult:
    """Length of a longest cycle by exhaustive path search (small graphs)."""
    limit = search_budget(budget)
    adj = _adjacency_masks(n, edges)
    best = 0
    witness: tuple[int, ...] | None = None
    expansions = 0
    for start in range(n):
        if not adj[start]:
            continue
        allowed = 0
        for v in range(start, n):
            allowed |= 1 << v
        stack = [(start, 1 << start, (start,))]
        while stack:
            u, visited, path = stack.pop()
            expansions += 1
            if expansions > limit:
                raise BudgetExceeded(f"circumference search exceeded {limit} expansions")
            if len(path) >= 3 and adj[u] >> start & 1 and len(path) > best:
                best = len(path)
                witness = path
            cand = adj[u] & allowed & ~visited
            while cand:
                v = (cand & -cand).bit_length() - 1
                cand &= cand - 1
                stack.append((v, visited | 1 << v, path + (v,)))
    return CircumferenceResult(best, witness, expansions)


@dataclass(frozen=True)
class EdgeBoundReport:
    m: int
    n: int
    edge_count: int
    circumference: int
    longest_cycle: tuple[int, ...] | None
    applicable: bool  # circumference <= m
    bound: float  # m (n - 1) / 2
    holds: bool | None  # None when not applicable


def erdos_gallai_check(
    n: int, edges: Iterable[tuple[int, int]], m: int, budget: int | None = None
) -> EdgeBoundReport:
    """If no cycle longer than m exists, the edge count is at most m(n-1)/2.

    Computes the circumference exhaustively; when it exceeds m the bound is
    reported as not applicable rather than evaluated.
    """
    if m < 3:
        raise ValueError("m must be >= 3")
    es = list(edges)
    circ = circumference(n, es, budget)
    applicable = circ.circumference <= m
    bound = m * (n - 1) / 2
    holds = (len(es) <= bound) if applicable else None
    return EdgeBoundReport(
        m, n, len(es), circ.circumference, circ.witness, applicable, bound, holds
    )
