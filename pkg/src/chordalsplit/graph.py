"""Immutable simple undirected graphs with bitset and neighbor-list access.

Vertices are dense integers 0..n-1.  Adjacency is kept in two forms because
two access patterns dominate: integer bitmasks (one per vertex) for the
set-algebra-heavy searches, and sorted neighbor tuples for ordered BFS-style
traversal.  Whichever form a graph was built from, the other is derived
lazily on first use, so very large sparse graphs never pay for n-bit rows.

Two text formats are supported:

* graph6, bit-exact per the nauty format description: an N(n) size prefix
  (one byte for n <= 62, "~" + 3 bytes up to 258047, "~~" + 6 bytes beyond),
  followed by the upper triangle in column-major order, packed into 6-bit
  groups biased by 63.
* edge list: an optional first line "n m" followed by one "u v" pair per
  line (0-based).  The first line is treated as a header exactly when its
  second number equals the count of remaining non-blank lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Iterable, Iterator


class GraphInputError(ValueError):
    """Raised for malformed graph construction or parsing input."""


# ---------------------------------------------------------------------------
# bitmask helpers


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph, immutable after construction.

    Do not call the constructor directly; use :func:`build_graph`,
    :meth:`Graph.from_bits`, or one of the parsers.
    """

    __slots__ = ("n", "m", "_nbrs", "_bits", "_sets", "_cache")

    def __init__(self, n: int, nbrs=None, bits=None, m: int = -1):
        self.n = n
        self._nbrs = nbrs
        self._bits = bits
        self._sets = None
        self._cache = None  # memo for derived structures (see fastscan)
        if m >= 0:
            self.m = m
        elif bits is not None:
            self.m = sum(row.bit_count() for row in bits) // 2
        elif nbrs is not None:
            self.m = sum(len(row) for row in nbrs) // 2
        else:
            raise ValueError("graph needs adjacency in at least one form")

    @classmethod
    def from_bits(cls, n: int, bits: list[int]) -> "Graph":
        """Wrap a prebuilt bitmask adjacency (no validation beyond symmetry debt)."""
        return cls(n, bits=list(bits))

    # -- adjacency views ----------------------------------------------------

    @property
    def adjacency_bits(self) -> list[int]:
        if self._bits is None:
            bits = [0] * self.n
            for v, row in enumerate(self._nbrs):
                bits[v] = mask_of(row)
            self._bits = bits
        return self._bits

    @property
    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(bits_of(row)) for row in self._bits)
        return self._nbrs

    @property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(row) for row in self.adjacency_lists)
        return self._sets

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency_lists[v]

    def adj_bits(self, v: int) -> int:
        return self.adjacency_bits[v]

    def degree(self, v: int) -> int:
        if self._nbrs is not None:
            return len(self._nbrs[v])
        return self._bits[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if self._bits is not None:
            return bool(self._bits[u] >> v & 1)
        return v in self.adjacency_sets[u]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    out.append((u, v))
        return out

    def derived_cache(self) -> dict:
        """Mutable memo dict for expensive derived structures."""
        if self._cache is None:
            self._cache = {}
        return self._cache

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency_bits == other.adjacency_bits

    def __hash__(self):
        return hash((self.n, tuple(self.adjacency_bits)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, deduplicating reversed and repeated pairs.

    Raises :class:`GraphInputError` for endpoints outside 0..n-1 and for
    self-loops.
    """
    if n < 0:
        raise GraphInputError(f"vertex count must be nonnegative, got {n}")
    bits = [0] * n
    m = 0
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"self-loop ({u},{v}) is not allowed")
        if not bits[u] >> v & 1:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
            m += 1
    return Graph(n, bits=bits, m=m)


# ---------------------------------------------------------------------------
# connected components and shortest paths


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of an induced subgraph.

    Components are listed in increasing order of their smallest vertex and
    partition ``source``.
    """

    source: frozenset[int]
    components: tuple[frozenset[int], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def __len__(self) -> int:
        return len(self.components)


def component_masks(g: Graph, submask: int) -> list[int]:
    """Connected components of g[submask] as bitmasks, ordered by lowest member."""
    bits = g.adjacency_bits
    comps = []
    todo = submask
    while todo:
        low = todo & -todo
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= bits[v]
            frontier = nxt & todo & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


# For graphs beyond this size bigint mask rows get expensive; fall back to
# neighbor-list BFS for component queries.
_MASK_COMPONENT_LIMIT = 4096


def components(g: Graph, subset: Iterable[int]) -> ComponentDecomposition:
    """Connected components of the subgraph induced by ``subset``."""
    sub = frozenset(subset)
    for v in sub:
        if not (0 <= v < g.n):
            raise GraphInputError(f"vertex {v} outside 0..{g.n - 1}")
    if g.n <= _MASK_COMPONENT_LIMIT:
        masks = component_masks(g, mask_of(sub))
        return ComponentDecomposition(sub, tuple(frozenset(bits_of(m)) for m in masks))
    comps = []
    seen: set[int] = set()
    for s in sorted(sub):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w in sub and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return ComponentDecomposition(sub, tuple(comps))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``vertices``, relabeled 0..k-1 in sorted order.

    Returns the subgraph and the tuple mapping new labels back to the
    original vertex identifiers.
    """
    old_ids = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(old_ids)}
    edges = []
    for v in old_ids:
        for w in g.neighbors(v):
            if w in index and v < w:
                edges.append((index[v], index[w]))
    return build_graph(len(old_ids), edges), old_ids


def shortest_path(
    g: Graph, within: Iterable[int], s: int, t: int
) -> tuple[int, ...] | None:
    """Minimum-hop path from s to t inside g[within], or None if disconnected.

    Ties are broken toward smaller vertex identifiers, so the result is
    deterministic.  Raises if s or t is not in ``within``.
    """
    sub = within if isinstance(within, (set, frozenset)) else frozenset(within)
    if s not in sub or t not in sub:
        raise GraphInputError(f"path endpoints {s},{t} must lie inside the subset")
    if s == t:
        return (s,)
    parent = {s: -1}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w in sub and w not in parent:
                parent[w] = v
                if w == t:
                    path = [t]
                    while path[-1] != s:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return tuple(path)
                queue.append(w)
    return None


# ---------------------------------------------------------------------------
# graph6


def write_graph6(g: Graph) -> str:
    """Canonical graph6 record for the labeled adjacency of g."""
    n = g.n
    chunks = [_graph6_size(n)]
    bits = g.adjacency_bits
    acc = 0
    filled = 0
    for j in range(1, n):
        col = bits[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                chunks.append(chr(acc + 63))
                acc = 0
                filled = 0
    if filled:
        acc <<= 6 - filled
        chunks.append(chr(acc + 63))
    return "".join(chunks)


def _graph6_size(n: int) -> str:
    if n < 0:
        raise GraphInputError("graph6 cannot encode negative sizes")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphInputError(f"graph6 size {n} exceeds the format limit")


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record.  The optional ">>graph6<<" header is stripped."""
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<") :]
    if not text:
        raise GraphInputError("empty graph6 record")
    data = [ord(c) - 63 for c in text]
    for c, val in zip(text, data):
        if not 0 <= val <= 63:
            raise GraphInputError(f"character {c!r} outside the graph6 range 63..126")
    n, pos = _graph6_read_size(data)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise GraphInputError(
            f"graph6 record too short: n={n} needs {need} data bytes, got {len(body)}"
        )
    if len(body) > need:
        raise GraphInputError(f"trailing garbage after graph6 record for n={n}")
    bits = [0] * n
    idx = 0
    pairs = n * (n - 1) // 2
    for val in body:
        for shift in (5, 4, 3, 2, 1, 0):
            if idx >= pairs:
                if val >> shift & 1:
                    raise GraphInputError("nonzero padding bits in graph6 record")
                continue
            if val >> shift & 1:
                i, j = _graph6_pair(idx)
                bits[i] |= 1 << j
                bits[j] |= 1 << i
            idx += 1
    return Graph(n, bits=bits)


def _graph6_read_size(data: list[int]) -> tuple[int, int]:
    if data[0] != 63:
        return data[0], 1
    if len(data) < 2:
        raise GraphInputError("malformed graph6 length field")
    if data[1] != 63:
        if len(data) < 4:
            raise GraphInputError("malformed graph6 length field")
        return data[1] << 12 | data[2] << 6 | data[3], 4
    if len(data) < 8:
        raise GraphInputError("malformed graph6 length field")
    n = 0
    for val in data[2:8]:
        n = n << 6 | val
    return n, 8


# Column-major upper-triangle position -> (row, column) pair.  The k-th bit
# describes pair (i, j) with j minimal such that j(j-1)/2 > k.
def _graph6_pair(k: int) -> tuple[int, int]:
    j = int((1 + (1 + 8 * k) ** 0.5) / 2)
    while j * (j - 1) // 2 > k:
        j -= 1
    while (j + 1) * j // 2 <= k:
        j += 1
    return k - j * (j - 1) // 2, j


def parse_graph6_stream(text: str) -> list[Graph]:
    """Decode every non-blank line of ``text`` as a graph6 record."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# ---------------------------------------------------------------------------
# edge-list text format


def parse_edgelist(text: str) -> Graph:
    """Parse the edge-list format: optional "n m" header, one edge per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphInputError(f"line {lineno}: expected two integers, got {line!r}")
    if not rows:
        return Graph(0, bits=[])
    first_a, first_b = rows[0]
    if first_b == len(rows) - 1 and first_a >= 0:
        return build_graph(first_a, rows[1:])
    n = max(max(u, v) for u, v in rows) + 1
    return build_graph(n, rows)
