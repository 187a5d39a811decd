"""Fixed forbidden patterns, induced-embedding search, and two-part witnesses.

The catalog holds the fifteen small named graphs used by the recognizers.
Adjacency is transcribed from their structural definitions:

* butterfly: two triangles sharing one vertex.
* extended butterfly: two disjoint triangles joined by a single edge.
* extended co-P: a five-vertex path whose first edge carries an extra
  common neighbor.
* chair: a four-vertex path with a pendant on its third vertex.
* extended chair: a chair whose first path edge carries an extra common
  neighbor.
* gem: a four-vertex path plus a vertex adjacent to all of it.
* double-gem: a gem with an extra common neighbor of the path's middle edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, bits_of, build_graph, components, mask_of


@dataclass(frozen=True)
class Pattern:
    """A named fixed graph with its full adjacency."""

    name: str
    n: int
    edges: tuple[tuple[int, int], ...]

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    def degree_sequence(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(sorted(deg))


def _cycle(k: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, (i + 1) % k) for i in range(k))


_CATALOG = (
    Pattern("2K2", 4, ((0, 1), (2, 3))),
    Pattern("C4", 4, _cycle(4)),
    Pattern("C5", 5, _cycle(5)),
    Pattern("C6", 6, _cycle(6)),
    Pattern("C7", 7, _cycle(7)),
    Pattern("2P3", 6, ((0, 1), (1, 2), (3, 4), (4, 5))),
    Pattern("K3+P3", 6, ((0, 1), (0, 2), (1, 2), (3, 4), (4, 5))),
    Pattern("2K3", 6, ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5))),
    Pattern("butterfly", 5, ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4))),
    Pattern(
        "extended-butterfly",
        6,
        ((0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)),
    ),
    Pattern("extended-co-P", 6, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 5))),
    Pattern("chair", 5, ((0, 1), (1, 2), (2, 3), (2, 4))),
    Pattern("extended-chair", 6, ((0, 1), (1, 2), (2, 3), (2, 4), (0, 5), (1, 5))),
    Pattern("gem", 5, ((0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4))),
    Pattern(
        "double-gem",
        6,
        ((0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4), (2, 5), (3, 5)),
    ),
)

_BY_NAME = {p.name: p for p in _CATALOG}


def catalog() -> tuple[Pattern, ...]:
    """The fifteen fixed patterns, in stable search order."""
    return _CATALOG


def pattern_by_name(name: str) -> Pattern:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown pattern {name!r}; known: {sorted(_BY_NAME)}") from None


@dataclass(frozen=True)
class Embedding:
    """An induced occurrence of a pattern: mapping[i] hosts pattern vertex i."""

    pattern: str
    mapping: tuple[int, ...]

    def is_induced_in(self, g: Graph) -> bool:
        p = pattern_by_name(self.pattern)
        if len(self.mapping) != p.n or len(set(self.mapping)) != p.n:
            return False
        if any(not 0 <= v < g.n for v in self.mapping):
            return False
        pat_adj = _pattern_bits(p)
        for i in range(p.n):
            for j in range(i + 1, p.n):
                want = bool(pat_adj[i] >> j & 1)
                if g.has_edge(self.mapping[i], self.mapping[j]) != want:
                    return False
        return True


def _pattern_bits(p: Pattern) -> list[int]:
    bits = [0] * p.n
    for u, v in p.edges:
        bits[u] |= 1 << v
        bits[v] |= 1 << u
    return bits


def find_induced(g: Graph, p: Pattern) -> Embedding | None:
    """First induced embedding of ``p`` in ``g`` (lexicographic image order).

    Backtracking over pattern vertices 0..k-1 with host candidates tried in
    increasing order; a candidate must match the adjacency of all placed
    vertices exactly (bitmask comparison) and have enough degree.
    """
    k = p.n
    if k > g.n:
        return None
    pat = _pattern_bits(p)
    pat_deg = [b.bit_count() for b in pat]
    host = g.adjacency_bits
    image = [0] * k
    placed_mask = 0

    def extend(depth: int, placed_mask: int) -> bool:
        if depth == k:
            return True
        required = 0
        for i in bits_of(pat[depth] & ((1 << depth) - 1)):
            required |= 1 << image[i]
        for w in range(g.n):
            wbit = 1 << w
            if placed_mask & wbit:
                continue
            if host[w].bit_count() < pat_deg[depth]:
                continue
            if host[w] & placed_mask != required:
                continue
            image[depth] = w
            if extend(depth + 1, placed_mask | wbit):
                return True
        return False

    if extend(0, placed_mask):
        return Embedding(p.name, tuple(image))
    return None


@dataclass(frozen=True)
class APairWitness:
    """Two connected h-vertex sets with no vertex or edge in common."""

    x: frozenset[int]
    y: frozenset[int]
    h: int

    def is_valid_in(self, g: Graph) -> bool:
        if len(self.x) != self.h or len(self.y) != self.h or self.x & self.y:
            return False
        for part in (self.x, self.y):
            decomp = components(g, part)
            if len(decomp) != 1:
                return False
        sets = g.adjacency_sets
        return all(not (sets[u] & self.y) for u in self.x)


def connected_subsets(g: Graph, h: int) -> list[tuple[int, int]]:
    """All connected h-vertex subsets as (member_mask, closed_neighborhood_mask).

    Enumerated once each: a set is grown from its smallest member, adding
    only larger vertices, with an exclusion set preventing duplicates.
    Discovery order is deterministic.
    """
    n = g.n
    bits = g.adjacency_bits
    out: list[tuple[int, int]] = []
    if h < 1 or h > n:
        return out

    def grow(members: int, closed: int, size: int, ext: int, forbidden: int) -> None:
        if size == h:
            out.append((members, closed))
            return
        while ext:
            low = ext & -ext
            u = low.bit_length() - 1
            ext ^= low
            grow(
                members | low,
                closed | low | bits[u],
                size + 1,
                (ext | (bits[u] & upper)) & ~forbidden & ~(members | low),
                forbidden,
            )
            forbidden |= low

    for r in range(n):
        upper = ~((1 << (r + 1)) - 1)
        grow(1 << r, 1 << r | bits[r], 1, bits[r] & upper, 0)
    return out


def find_a_pair(g: Graph, h: int) -> APairWitness | None:
    """A pair of disjoint, mutually non-adjacent connected h-sets, if any.

    The defining condition is checked directly: X must avoid the closed
    neighborhood of Y.  Returns the first pair in discovery order.
    """
    if h < 1:
        raise ValueError(f"set size must be at least 1, got {h}")
    if 2 * h > g.n:
        return None
    seen: list[tuple[int, int]] = []
    for members, closed in connected_subsets(g, h):
        for earlier_members, _ in seen:
            if earlier_members & closed == 0:
                return APairWitness(
                    frozenset(bits_of(earlier_members)),
                    frozenset(bits_of(members)),
                    h,
                )
        seen.append((members, closed))
    return None


def him_check(g: Graph, subset: Iterable[int]) -> frozenset[int] | None:
    """Hereditary-induced-matching test for g[subset].

    Returns None when every component of the induced subgraph has at most
    two vertices, else the first offending component.
    """
    decomp = components(g, subset)
    for comp in decomp.components:
        if len(comp) > 2:
            return comp
    return None


def fixture_graph(name: str) -> Graph:
    """Named example graphs for the CLI generator and tests.

    Every catalog pattern is available under its lowercased name, plus
    "c4-three-pendants": a four-cycle v0..v3 with pendant neighbors attached
    to v0, v1 and v2 (the smallest graph whose every clique leaves a
    component of three or more vertices behind).
    """
    if name == "c4-three-pendants":
        return build_graph(
            7, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 5), (2, 6)]
        )
    lowered = {p.name.lower(): p for p in _CATALOG}
    if name in lowered:
        return lowered[name].graph()
    known = sorted(lowered) + ["c4-three-pendants"]
    raise KeyError(f"unknown fixture {name!r}; known: {known}")


def fixture_names() -> tuple[str, ...]:
    return tuple(p.name.lower() for p in _CATALOG) + ("c4-three-pendants",)
