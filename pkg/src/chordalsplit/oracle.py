"""Brute-force ground truth, exhaustive small-graph corpora, and generators.

Everything here answers the same questions as the recognizers by raw
enumeration and shares nothing with them beyond the graph primitives, so
agreement between the two is meaningful evidence.  All exhaustive searches
carry explicit size guards.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .chordal import is_chordal, HoleWitness
from .graph import (
    Graph,
    bits_of,
    component_masks,
    components,
    mask_of,
    parse_graph6,
    write_graph6,
)
from .patterns import APairWitness, Pattern, find_a_pair, find_induced, pattern_by_name
from .recognizers import (
    GoodCliqueCertificate,
    SmePartition,
    SplitPartition,
    find_k_good_certified,
    sme_recognize,
    sme_recognize_linear,
    split_partition,
)


class SizeGuardError(ValueError):
    """An exhaustive operation was asked to exceed its configured bound."""


EXHAUSTIVE_VERTEX_LIMIT = 7  # 2^21 labeled graphs
PER_GRAPH_VERTEX_LIMIT = 16


@dataclass(frozen=True)
class CorpusSpec:
    """A corpus: all labeled graphs up to max_n, or a graph6 stream file."""

    max_n: int | None = None
    graph6_path: str | None = None
    connected_only: bool = False
    chordal_only: bool = False
    exhaustive_bound: int = EXHAUSTIVE_VERTEX_LIMIT

    def __post_init__(self):
        if (self.max_n is None) == (self.graph6_path is None):
            raise ValueError("exactly one of max_n and graph6_path must be set")
        if self.max_n is not None and self.max_n > self.exhaustive_bound:
            raise SizeGuardError(
                f"max_n={self.max_n} exceeds the exhaustive bound {self.exhaustive_bound}"
            )


def pair_order(n: int) -> list[tuple[int, int]]:
    """Fixed lexicographic vertex-pair order used for labeled-graph masks."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def labeled_graph(n: int, mask: int) -> Graph:
    """The labeled graph on n vertices whose edge set is given by ``mask``."""
    bits = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if mask >> k & 1:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
            k += 1
    return Graph(n, bits=bits)


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices, once, in edge-mask order."""
    if n > EXHAUSTIVE_VERTEX_LIMIT:
        raise SizeGuardError(
            f"n={n} labeled graphs would be 2^{n * (n - 1) // 2}; limit is {EXHAUSTIVE_VERTEX_LIMIT}"
        )
    for mask in range(1 << (n * (n - 1) // 2)):
        yield labeled_graph(n, mask)


# ---------------------------------------------------------------------------
# exhaustive oracles


def _guard(g: Graph, limit: int = PER_GRAPH_VERTEX_LIMIT) -> None:
    if g.n > limit:
        raise SizeGuardError(f"graph with n={g.n} exceeds the per-graph limit {limit}")


def all_clique_masks(g: Graph) -> Iterator[int]:
    """Every clique of g (including the empty one) as a bitmask, DFS order."""
    bits = g.adjacency_bits

    def rec(base: int, cand: int) -> Iterator[int]:
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            cur = base | low
            yield cur
            yield from rec(cur, cand & bits[v])

    yield 0
    yield from rec(0, (1 << g.n) - 1)


def oracle_k_good_exhaustive(g: Graph, k: int) -> GoodCliqueCertificate | None:
    """Definitive bounded-component clique search over every clique of g."""
    _guard(g)
    if k < 0:
        raise ValueError(f"component bound must be nonnegative, got {k}")
    full = (1 << g.n) - 1
    for cmask in all_clique_masks(g):
        rest = full & ~cmask
        comps = component_masks(g, rest)
        if all(c.bit_count() <= k for c in comps):
            clique = frozenset(bits_of(cmask))
            return GoodCliqueCertificate(k, clique, components(g, set(bits_of(rest))))
    return None


def oracle_a_free_exhaustive(g: Graph, h: int) -> APairWitness | None:
    """Two disjoint non-adjacent connected h-sets, by plain pair enumeration."""
    _guard(g)
    if h < 1:
        raise ValueError(f"set size must be at least 1, got {h}")
    if 2 * h > g.n:
        return None
    bits = g.adjacency_bits
    entries = []
    for combo in itertools.combinations(range(g.n), h):
        cmask = mask_of(combo)
        if len(component_masks(g, cmask)) != 1:
            continue
        closed = cmask
        for v in combo:
            closed |= bits[v]
        entries.append((cmask, closed))
    for i, (mask_i, _) in enumerate(entries):
        for mask_j, closed_j in entries[i + 1 :]:
            if mask_i & closed_j == 0:
                return APairWitness(
                    frozenset(bits_of(mask_i)), frozenset(bits_of(mask_j)), h
                )
    return None


def oracle_sme_exhaustive(g: Graph) -> SmePartition | None:
    """Definitive matching-extended partition search over every clique of g."""
    _guard(g)
    bits = g.adjacency_bits
    full = (1 << g.n) - 1
    for cmask in all_clique_masks(g):
        rest = full & ~cmask
        comps = component_masks(g, rest)
        singles = []
        pairs = []
        good = True
        for comp in comps:
            size = comp.bit_count()
            if size == 1:
                singles.append(comp.bit_length() - 1)
            elif size == 2:
                x, y = bits_of(comp)
                if bits[x] & cmask and bits[y] & cmask:
                    good = False
                    break
                pairs.append((x, y))
            else:
                good = False
                break
        if good:
            return SmePartition(
                frozenset(bits_of(cmask)), frozenset(singles), tuple(sorted(pairs))
            )
    return None


def oracle_hole_exhaustive(g: Graph) -> bool:
    """True iff some vertex subset induces a cycle of length >= 4."""
    _guard(g)
    bits = g.adjacency_bits
    for size in range(4, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            cmask = mask_of(combo)
            if all((bits[v] & cmask).bit_count() == 2 for v in combo) and (
                len(component_masks(g, cmask)) == 1
            ):
                return True
    return False


_PATTERN_CLOSURES: dict[str, frozenset[int]] = {}


def _pattern_closure(p: Pattern) -> frozenset[int]:
    """Edge masks of every labeling of p on 0..k-1 (all injective images)."""
    if p.name not in _PATTERN_CLOSURES:
        pairs = pair_order(p.n)
        index = {pair: b for b, pair in enumerate(pairs)}
        masks = set()
        for perm in itertools.permutations(range(p.n)):
            mask = 0
            for u, v in p.edges:
                a, b = perm[u], perm[v]
                mask |= 1 << index[(a, b) if a < b else (b, a)]
            masks.add(mask)
        _PATTERN_CLOSURES[p.name] = frozenset(masks)
    return _PATTERN_CLOSURES[p.name]


def oracle_induced_contains(g: Graph, p: Pattern) -> bool:
    """Exhaustive induced-occurrence test: every injective placement of p.

    Equivalent to trying all injective maps: each k-subset of the host is
    compared against the edge masks of all k! labelings of the pattern.
    """
    _guard(g)
    if p.n > g.n:
        return False
    closure = _pattern_closure(p)
    bits = g.adjacency_bits
    for combo in itertools.combinations(range(g.n), p.n):
        mask = 0
        b = 0
        for ii in range(p.n):
            for jj in range(ii + 1, p.n):
                if bits[combo[ii]] >> combo[jj] & 1:
                    mask |= 1 << b
                b += 1
        if mask in closure:
            return True
    return False


# ---------------------------------------------------------------------------
# random chordal generation


def random_chordal(n: int, density: float = 0.1, seed: int = 0) -> Graph:
    """Random chordal graph by incremental simplicial attachment.

    Each new vertex picks a maximal clique of the current graph and attaches
    to a nonempty random subset of it, so it is simplicial at insertion
    time; the graph is chordal by construction and (n-1, ..., 1, 0) is a
    perfect elimination ordering.  ``density`` drives the attachment subset
    size.  Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    cliques: list[tuple[int, ...]] = [(0,)]
    for v in range(1, n):
        pick = rng.randrange(len(cliques))
        base = cliques[pick]
        size = 1 + sum(rng.random() < density for _ in range(len(base) - 1))
        attach = sorted(rng.sample(base, size))
        edges.extend((u, v) for u in attach)
        new_clique = tuple(attach) + (v,)
        if size == len(base):
            cliques[pick] = new_clique  # the old clique is no longer maximal
        else:
            cliques.append(new_clique)
    return Graph(n, nbrs=_neighbor_lists(n, edges))


def _neighbor_lists(n: int, edges) -> tuple[tuple[int, ...], ...]:
    rows: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        rows[u].append(v)
        rows[v].append(u)
    return tuple(tuple(sorted(r)) for r in rows)


# ---------------------------------------------------------------------------
# theorem equivalence harness


THEOREMS = ("T1", "T2", "T3", "T4")


@dataclass
class HarnessReport:
    """Outcome of one equivalence sweep.

    ``sides`` are the per-graph boolean views that must coincide; any graph
    on which they do not is listed in ``discrepancies`` with its graph6
    record and the offending values.
    """

    theorem: str
    h: int | None
    graphs: int = 0
    accepts: int = 0
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _t1_sides(g: Graph) -> dict[str, bool]:
    chordal = not isinstance(is_chordal(g), HoleWitness)
    pattern_free = chordal and find_induced(g, pattern_by_name("2K2")) is None
    return {
        "structure-free": pattern_free,
        "oracle-partition": oracle_k_good_exhaustive(g, 1) is not None,
        "recognizer": isinstance(split_partition(g), SplitPartition),
    }


def _t2_sides(g: Graph) -> dict[str, bool]:
    free = all(
        find_induced(g, pattern_by_name(name)) is None
        for name in ("2P3", "K3+P3", "2K3")
    )
    return {
        "structure-free": free,
        "oracle-partition": oracle_k_good_exhaustive(g, 2) is not None,
        "recognizer": isinstance(find_k_good_certified(g, 2), GoodCliqueCertificate),
    }


def _t3_sides(g: Graph, h: int) -> dict[str, bool]:
    return {
        "structure-free": find_a_pair(g, h + 1) is None,
        "oracle-structure-free": oracle_a_free_exhaustive(g, h + 1) is None,
        "oracle-partition": oracle_k_good_exhaustive(g, h) is not None,
        "recognizer": isinstance(find_k_good_certified(g, h), GoodCliqueCertificate),
    }


def _t4_sides(g: Graph) -> dict[str, bool]:
    chordal = not isinstance(is_chordal(g), HoleWitness)
    free = chordal and all(
        find_induced(g, pattern_by_name(name)) is None
        for name in (
            "2P3",
            "K3+P3",
            "2K3",
            "butterfly",
            "extended-butterfly",
            "extended-co-P",
            "extended-chair",
            "double-gem",
        )
    )
    linear = sme_recognize_linear(g)
    return {
        "structure-free": free,
        "oracle-partition": oracle_sme_exhaustive(g) is not None,
        "recognizer": isinstance(sme_recognize(g), SmePartition),
        "recognizer-linear": linear is not None,
    }


def evaluate_theorem(g: Graph, theorem: str, h: int | None = None) -> dict[str, bool]:
    if theorem == "T1":
        return _t1_sides(g)
    if theorem == "T2":
        return _t2_sides(g)
    if theorem == "T3":
        if h is None:
            raise ValueError("T3 needs the component bound h")
        return _t3_sides(g, h)
    if theorem == "T4":
        return _t4_sides(g)
    raise ValueError(f"unknown theorem {theorem!r}; known: {THEOREMS}")


def _wants_chordal_filter(spec: CorpusSpec, theorem: str) -> bool:
    return spec.chordal_only or theorem in ("T2", "T3")


def _harness_chunk(args) -> tuple[int, int, list[tuple[int, int, dict]]]:
    theorem, h, n, lo, hi, chordal_only, connected_only = args
    graphs = 0
    accepts = 0
    bad: list[tuple[int, int, dict]] = []
    for mask in range(lo, hi):
        g = labeled_graph(n, mask)
        if connected_only and len(component_masks(g, (1 << n) - 1)) > 1:
            continue
        if chordal_only and isinstance(is_chordal(g), HoleWitness):
            continue
        sides = evaluate_theorem(g, theorem, h)
        graphs += 1
        values = set(sides.values())
        if len(values) > 1:
            bad.append((n, mask, sides))
        elif values == {True}:
            accepts += 1
    return graphs, accepts, bad


def equivalence_harness(
    spec: CorpusSpec, theorem: str, h: int | None = None, jobs: int = 1
) -> HarnessReport:
    """Evaluate one equivalence over a corpus and report any disagreement.

    For each graph the forbidden-structure view, the exhaustive-partition
    view and the recognizer view are computed independently; the report
    counts graphs and accepts and lists every graph where the views differ
    (expected: none).  Enumerated corpora can be partitioned across
    processes; the merged report is deterministic.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; known: {THEOREMS}")
    report = HarnessReport(theorem, h)
    chordal_only = _wants_chordal_filter(spec, theorem)
    raw: list[tuple[int, int, dict]] = []
    if spec.graph6_path is not None:
        with open(spec.graph6_path, "r", encoding="ascii") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                g = parse_graph6(line)
                if spec.connected_only and len(components(g, range(g.n))) > 1:
                    continue
                if chordal_only and isinstance(is_chordal(g), HoleWitness):
                    continue
                sides = evaluate_theorem(g, theorem, h)
                report.graphs += 1
                values = set(sides.values())
                if len(values) > 1:
                    raw.append((g.n, lineno, sides))
                elif values == {True}:
                    report.accepts += 1
    else:
        chunks = []
        for n in range(spec.max_n + 1):
            total = 1 << (n * (n - 1) // 2)
            step = max(1, total // max(1, jobs * 4))
            for lo in range(0, total, step):
                chunks.append(
                    (theorem, h, n, lo, min(lo + step, total), chordal_only, spec.connected_only)
                )
        if jobs > 1:
            import multiprocessing

            with multiprocessing.Pool(jobs) as pool:
                results = pool.map(_harness_chunk, chunks)
        else:
            results = [_harness_chunk(c) for c in chunks]
        for graphs, accepts, bad in results:
            report.graphs += graphs
            report.accepts += accepts
            raw.extend(bad)
    for n, mask, sides in sorted(raw):
        g = labeled_graph(n, mask) if spec.graph6_path is None else None
        report.discrepancies.append(
            {
                "n": n,
                "mask": mask,
                "graph6": write_graph6(g) if g is not None else f"line {mask}",
                "sides": sides,
            }
        )
    return report
