"""Certified recognizers for split-like partitions of chordal graphs.

Every recognizer returns a value that can be re-checked from scratch:
either an accepting partition certificate or a rejection witness (an
induced hole, a fixed named pattern, or two disjoint non-adjacent connected
sets).  :func:`verify_certificate` performs those re-checks along a code
path independent of the producers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chordal import (
    EliminationResult,
    HoleWitness,
    hole_is_valid,
    is_chordal,
    maximal_cliques_chordal,
)
from .graph import (
    ComponentDecomposition,
    Graph,
    components,
    mask_of,
    shortest_path,
)
from .patterns import APairWitness, Embedding, pattern_by_name


class NotChordalError(ValueError):
    """Raised when an operation that requires a chordal graph gets holes."""

    def __init__(self, hole: HoleWitness):
        super().__init__(f"graph is not chordal: induced cycle {hole.cycle}")
        self.hole = hole


class UniversalVertexError(ValueError):
    """Scan for a clique-dominating vertex failed; a precondition is broken."""

    def __init__(self, reason: str, hole: HoleWitness | None = None):
        super().__init__(reason)
        self.reason = reason
        self.hole = hole


class CharacterizationError(RuntimeError):
    """No certificate and no witness exist; this must never happen."""


# ---------------------------------------------------------------------------
# certificate types


@dataclass(frozen=True)
class GoodCliqueCertificate:
    """A clique whose removal leaves only components of at most k vertices."""

    k: int
    clique: frozenset[int]
    decomposition: ComponentDecomposition


@dataclass(frozen=True)
class SplitPartition:
    """A partition of the vertices into a clique and an independent set."""

    clique: frozenset[int]
    independent: frozenset[int]


@dataclass(frozen=True)
class SmePartition:
    """Clique + independent set + induced matching partition.

    The independent set has no edges to the matching, and each matching
    edge reaches the clique through at most one endpoint.
    """

    clique: frozenset[int]
    independent: frozenset[int]
    matching: tuple[tuple[int, int], ...]

    def matched_vertices(self) -> frozenset[int]:
        return frozenset(v for edge in self.matching for v in edge)


RejectionWitness = HoleWitness | Embedding | APairWitness

AcceptCertificate = (
    GoodCliqueCertificate | SplitPartition | SmePartition | EliminationResult
)


@dataclass
class TraceStep:
    clique: frozenset[int]
    component_sizes: tuple[int, ...]
    action: str  # "accept" | "pair" | "descend"
    focus_size: int | None = None
    universal_vertex: int | None = None


@dataclass
class CertifiedTrace:
    """Iteration log of the certified recognizer, for progress assertions."""

    steps: list[TraceStep] = field(default_factory=list)
    diagnostic_activations: int = 0

    def focus_sizes(self) -> list[int]:
        return [s.focus_size for s in self.steps if s.action == "descend"]


# ---------------------------------------------------------------------------
# universal vertex (with diagnostic replay)


def find_universal_vertex(g: Graph, clique, component) -> int:
    """Smallest vertex of ``component`` adjacent to every clique vertex.

    For a chordal graph, a clique Q, and a connected component Z of the
    graph minus Q in which every clique vertex has a neighbor, such a
    vertex always exists.  When the scan fails, a diagnostic pass replays
    the inductive argument behind that guarantee to name the violated
    precondition (attaching an induced hole when chordality is the culprit)
    and raises :class:`UniversalVertexError`.
    """
    q = frozenset(clique)
    comp = frozenset(component)
    sets = g.adjacency_sets
    for z in sorted(comp):
        if q <= sets[z]:
            return z
    raise _diagnose_scan_failure(g, q, comp)


def _diagnose_scan_failure(g: Graph, q, comp) -> UniversalVertexError:
    if not comp:
        return UniversalVertexError("component is empty")
    sets = g.adjacency_sets
    for u in sorted(q):
        for v in sorted(q):
            if u < v and v not in sets[u]:
                return UniversalVertexError(f"clique contains non-adjacent pair ({u},{v})")
    if q & comp:
        return UniversalVertexError("clique and component overlap")
    decomp = components(g, comp)
    if len(decomp) != 1:
        return UniversalVertexError("component set is not connected")
    outside = set(range(g.n)) - q - comp
    for v in sorted(comp):
        spill = sets[v] & outside
        if spill:
            return UniversalVertexError(
                f"component is not closed: vertex {v} reaches {min(spill)} outside it"
            )
    missing = sorted(u for u in q if not (sets[u] & comp))
    if missing:
        return UniversalVertexError(
            f"clique vertex {missing[0]} has no neighbor in the component"
        )
    hole = _replay_induction(g, sorted(q), comp)
    return UniversalVertexError("graph is not chordal", hole=hole)


def _replay_induction(g: Graph, q_order: list[int], comp) -> HoleWitness:
    """Re-run the inductive existence argument to localize an induced hole.

    Walk the clique vertices in order, maintaining a component vertex x
    adjacent to all of the prefix.  When x misses the next clique vertex,
    move to its closest component neighbor y along a shortest path; if y
    misses some prefix vertex, the path closes into an induced cycle.
    """
    sets = g.adjacency_sets
    first = q_order[0]
    x = min(sets[first] & comp)
    for idx in range(1, len(q_order)):
        qi = q_order[idx]
        if qi in sets[x]:
            continue
        # BFS distances inside the component from x, then the closest
        # neighbor y of qi; interior path vertices therefore miss qi.
        dist = {x: 0}
        frontier = [x]
        while frontier:
            nxt = []
            for v in frontier:
                for w in sorted(sets[v] & comp):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        candidates = sorted(sets[qi] & comp, key=lambda w: (dist.get(w, g.n + 1), w))
        y = candidates[0]
        path = shortest_path(g, comp, x, y)
        missed = [qj for qj in q_order[:idx] if qj not in sets[y]]
        if not missed:
            x = y
            continue
        qj = missed[0]
        # cycle qj - path... - y - qi - qj; drop any qj chords into the path
        start = 0
        for t in range(len(path) - 2, 0, -1):
            if path[t] in sets[qj]:
                start = t
                break
        cycle = (qj, *path[start:], qi)
        if not hole_is_valid(g, cycle):
            raise AssertionError(f"induction replay built an invalid cycle {cycle}")
        return HoleWitness(cycle)
    raise AssertionError("induction replay found a universal vertex after scan failure")


# ---------------------------------------------------------------------------
# k-good clique recognizers


def _empty_certificate(g: Graph, k: int) -> GoodCliqueCertificate:
    return GoodCliqueCertificate(k, frozenset(), ComponentDecomposition(frozenset(), ()))


def find_k_good_scan(
    g: Graph, k: int, peo=None, *, cliques=None
) -> GoodCliqueCertificate | None:
    """Scan the maximal cliques of a chordal graph for one whose removal
    leaves only components of at most k vertices.

    At most n maximal cliques exist and each is checked with one linear
    component pass, so the scan runs in O(n*m) overall.  Restricting to
    maximal cliques is sound: enlarging a clique only shrinks the leftover
    components.  Returns the certificate of the first passing clique in
    clique order, or None.  Raises :class:`NotChordalError` for non-chordal
    input when no elimination ordering is supplied.
    """
    if k < 0:
        raise ValueError(f"component bound must be nonnegative, got {k}")
    if g.n == 0:
        return _empty_certificate(g, k)
    if cliques is None:
        if peo is None:
            res = is_chordal(g)
            if isinstance(res, HoleWitness):
                raise NotChordalError(res)
            peo = res.ordering
        cliques = maximal_cliques_chordal(g, peo)
    index = _scan_cliques(g, cliques, k)
    if index is None:
        return None
    clique = cliques[index]
    decomp = components(g, set(range(g.n)) - clique)
    return GoodCliqueCertificate(k, clique, decomp)


# Above this size the clique scan runs through the compiled kernel.
_FAST_SCAN_MIN_N = 800


def _scan_cliques(g: Graph, cliques, k: int) -> int | None:
    if g.n >= _FAST_SCAN_MIN_N:
        try:
            from . import fastscan

            return fastscan.first_good_clique(g, cliques, k)
        except ImportError:
            pass
    full = (1 << g.n) - 1
    from .graph import component_masks

    for index, clique in enumerate(cliques):
        rest = full & ~mask_of(clique)
        sizes = [m.bit_count() for m in component_masks(g, rest)]
        if all(size <= k for size in sizes):
            return index
    return None


def find_k_good_certified(
    g: Graph, k: int, trace: CertifiedTrace | None = None
) -> GoodCliqueCertificate | HoleWitness | APairWitness:
    """Total certified search for a clique with small leftover components.

    Non-chordal input yields a hole.  Otherwise the search starts from a
    largest maximal clique and walks: while some component Z of the graph
    minus the current clique Q exceeds k vertices, replace Q by the part of
    Q touching Z plus a vertex of Z adjacent to all of that part.  The
    oversized component shrinks strictly at every step.  If two oversized
    components ever coexist, or an oversized component appears that is
    disjoint from the shrinking one, the two sets are non-adjacent and a
    two-part witness comes out.  Terminates within n iterations.
    """
    if k < 0:
        raise ValueError(f"component bound must be nonnegative, got {k}")
    if g.n == 0:
        return _empty_certificate(g, k)
    chord = is_chordal(g)
    if isinstance(chord, HoleWitness):
        return chord
    cliques = maximal_cliques_chordal(g, chord.ordering)
    clique = max(cliques, key=len)
    sets = g.adjacency_sets
    all_vertices = frozenset(range(g.n))
    focus: frozenset[int] | None = None
    for _ in range(g.n + 1):
        decomp = components(g, all_vertices - clique)
        sizes = decomp.sizes()
        bigs = [c for c in decomp.components if len(c) > k]
        if not bigs:
            cert = GoodCliqueCertificate(k, clique, decomp)
            if trace is not None:
                trace.steps.append(TraceStep(clique, sizes, "accept"))
            _assert_verified(g, cert)
            return cert
        if len(bigs) >= 2:
            witness = APairWitness(
                _connected_slice(g, bigs[0], k + 1),
                _connected_slice(g, bigs[1], k + 1),
                k + 1,
            )
            if trace is not None:
                trace.steps.append(TraceStep(clique, sizes, "pair"))
            _assert_verified(g, witness)
            return witness
        big = bigs[0]
        if focus is not None and not (big & focus):
            # Vertices dropped from earlier cliques coalesced into their own
            # oversized component; nothing in it touches the shrinking one.
            witness = APairWitness(
                _connected_slice(g, big, k + 1),
                _connected_slice(g, focus, k + 1),
                k + 1,
            )
            if trace is not None:
                trace.steps.append(TraceStep(clique, sizes, "pair"))
            _assert_verified(g, witness)
            return witness
        touching = frozenset(v for v in clique if sets[v] & big)
        try:
            z = find_universal_vertex(g, touching, big)
        except UniversalVertexError:
            if trace is not None:
                trace.diagnostic_activations += 1
            raise
        if trace is not None:
            trace.steps.append(
                TraceStep(clique, sizes, "descend", focus_size=len(big), universal_vertex=z)
            )
        clique = touching | {z}
        focus = big
    raise AssertionError("certified search exceeded its iteration bound")


def _connected_slice(g: Graph, vertices: frozenset[int], size: int) -> frozenset[int]:
    """First ``size`` vertices of a breadth-first walk of a connected set."""
    root = min(vertices)
    picked = [root]
    seen = {root}
    queue = [root]
    while queue and len(picked) < size:
        v = queue.pop(0)
        for w in sorted(g.adjacency_sets[v] & vertices):
            if w not in seen:
                seen.add(w)
                picked.append(w)
                queue.append(w)
                if len(picked) == size:
                    break
    if len(picked) != size:
        raise AssertionError("connected set smaller than the requested slice")
    return frozenset(picked)


def _assert_verified(g: Graph, cert) -> None:
    verdict = verify_certificate(g, cert)
    if not verdict.ok:
        raise AssertionError(f"produced certificate failed verification: {verdict.reason}")


def split_partition(g: Graph) -> SplitPartition | HoleWitness | APairWitness:
    """Split-graph recognition with a certificate either way.

    Acceptance reshapes a 1-good clique certificate: the leftover singleton
    components form the independent side.  Rejection yields a hole or a
    non-adjacent pair of edges (the two-part witness with sets of size 2).
    """
    result = find_k_good_certified(g, 1)
    if isinstance(result, GoodCliqueCertificate):
        rest = frozenset().union(*result.decomposition.components) if result.decomposition.components else frozenset()
        return SplitPartition(result.clique, rest)
    return result


# ---------------------------------------------------------------------------
# split-matching-extended recognition


_SME_PATTERN_NAMES = (
    "2P3",
    "K3+P3",
    "2K3",
    "butterfly",
    "extended-butterfly",
    "extended-co-P",
    "extended-chair",
    "double-gem",
)


def sme_recognize(g: Graph) -> SmePartition | RejectionWitness:
    """Recognize clique + independent set + induced matching partitions.

    Scans the maximal cliques of a chordal graph; a clique qualifies when
    every leftover component has at most two vertices and no two-vertex
    component touches the clique with both endpoints.  If no maximal clique
    qualifies, the graph must contain a hole or one of the eight fixed
    patterns, searched in a fixed order (holes first); finding neither
    would contradict the characterization and raises loudly.
    """
    if g.n == 0:
        return SmePartition(frozenset(), frozenset(), ())
    chord = is_chordal(g)
    if isinstance(chord, HoleWitness):
        return chord
    bits = g.adjacency_bits
    cliques = maximal_cliques_chordal(g, chord.ordering)
    all_vertices = frozenset(range(g.n))
    for clique in cliques:
        qmask = mask_of(clique)
        decomp = components(g, all_vertices - clique)
        partition = _sme_partition_from(decomp, bits, qmask, clique)
        if partition is not None:
            _assert_verified(g, partition)
            return partition
    for name in _SME_PATTERN_NAMES:
        from .patterns import find_induced

        embedding = find_induced(g, pattern_by_name(name))
        if embedding is not None:
            _assert_verified(g, embedding)
            return embedding
    raise CharacterizationError(
        "graph admits no partition and contains no forbidden structure; "
        "this contradicts the characterization and indicates a bug"
    )


def _sme_partition_from(decomp, bits, qmask, clique) -> SmePartition | None:
    singles = []
    pairs = []
    for comp in decomp.components:
        if len(comp) == 1:
            singles.extend(comp)
        elif len(comp) == 2:
            x, y = sorted(comp)
            if bits[x] & qmask and bits[y] & qmask:
                return None
            pairs.append((x, y))
        else:
            return None
    return SmePartition(clique, frozenset(singles), tuple(sorted(pairs)))


def sme_recognize_linear(g: Graph) -> SmePartition | None:
    """Fast-path recognition through degree-1 deletion.

    In any qualifying partition each matching edge has an endpoint of
    degree one, so deleting degree-1 vertices (keeping the smaller end of a
    bare edge) must leave a split graph; if it does not, reject outright.
    Otherwise the deleted vertices are folded back into a full partition
    which is verified before being returned; any reassembly mismatch defers
    to the full recognizer, so an unverified partition is never returned.
    """
    n = g.n
    if n == 0:
        return SmePartition(frozenset(), frozenset(), ())
    drop = []
    for v in range(n):
        if g.degree(v) != 1:
            continue
        partner = g.neighbors(v)[0]
        if g.degree(partner) == 1 and partner > v:
            continue  # bare edge: keep the smaller endpoint
        drop.append(v)
    keep = sorted(set(range(n)) - set(drop))
    from .graph import induced_subgraph

    sub, old_ids = induced_subgraph(g, keep)
    result = split_partition(sub)
    if not isinstance(result, SplitPartition):
        return None
    clique = frozenset(old_ids[v] for v in result.clique)
    independent = set(old_ids[v] for v in result.independent)
    matching = []
    matched: set[int] = set()
    ok = True
    for v in drop:
        partner = g.neighbors(v)[0]
        if partner in clique:
            independent.add(v)
        elif partner in independent and partner not in matched:
            independent.discard(partner)
            matched.add(partner)
            matching.append((min(v, partner), max(v, partner)))
        else:
            ok = False
            break
    if ok:
        partition = SmePartition(clique, frozenset(independent), tuple(sorted(matching)))
        if verify_certificate(g, partition).ok:
            return partition
    fallback = sme_recognize(g)
    return fallback if isinstance(fallback, SmePartition) else None


# ---------------------------------------------------------------------------
# certificate verification (independent re-checks)


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str | None = None


def _fail(reason: str) -> Verification:
    return Verification(False, reason)


def verify_certificate(g: Graph, cert) -> Verification:
    """Re-check every invariant of a certificate or witness against g.

    Pure and independent of the producing code: connectivity, adjacency and
    partition facts are all re-derived here from the graph alone.
    """
    if isinstance(cert, GoodCliqueCertificate):
        return _verify_good_clique(g, cert)
    if isinstance(cert, SplitPartition):
        return _verify_split(g, cert)
    if isinstance(cert, SmePartition):
        return _verify_sme(g, cert)
    if isinstance(cert, HoleWitness):
        if hole_is_valid(g, cert.cycle):
            return Verification(True)
        return _fail(f"cycle {cert.cycle} is not an induced cycle of length >= 4")
    if isinstance(cert, Embedding):
        if cert.is_induced_in(g):
            return Verification(True)
        return _fail(f"mapping {cert.mapping} is not an induced {cert.pattern}")
    if isinstance(cert, APairWitness):
        if cert.is_valid_in(g):
            return Verification(True)
        return _fail("sets are not two disjoint non-adjacent connected parts")
    if isinstance(cert, EliminationResult):
        return _verify_elimination(g, cert)
    return _fail(f"unknown certificate type {type(cert).__name__}")


def _is_clique(g: Graph, vertices) -> bool:
    vs = sorted(vertices)
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def _is_independent(g: Graph, vertices) -> bool:
    vs = sorted(vertices)
    return not any(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def _connected_within(g: Graph, comp: frozenset[int]) -> bool:
    start = min(comp)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adjacency_sets[v] & comp:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == comp


def _verify_good_clique(g: Graph, cert: GoodCliqueCertificate) -> Verification:
    if cert.k < 0:
        return _fail("negative component bound")
    if any(not 0 <= v < g.n for v in cert.clique):
        return _fail("clique vertex out of range")
    if not _is_clique(g, cert.clique):
        return _fail("clique vertices are not pairwise adjacent")
    rest = frozenset(range(g.n)) - cert.clique
    if cert.decomposition.source != rest:
        return _fail("decomposition does not cover the graph minus the clique")
    seen: set[int] = set()
    for comp in cert.decomposition.components:
        if not comp:
            return _fail("empty component listed")
        if comp & seen:
            return _fail("components overlap")
        seen |= comp
        if len(comp) > cert.k:
            return _fail(f"component {sorted(comp)} exceeds the bound {cert.k}")
        if not _connected_within(g, comp):
            return _fail(f"component {sorted(comp)} is not connected")
        spill = set()
        for v in comp:
            spill |= g.adjacency_sets[v]
        if (spill - comp) & rest:
            return _fail(f"component {sorted(comp)} touches another component")
    if seen != rest:
        return _fail("components do not cover the graph minus the clique")
    return Verification(True)


def _verify_split(g: Graph, cert: SplitPartition) -> Verification:
    if cert.clique & cert.independent:
        return _fail("clique and independent set overlap")
    if cert.clique | cert.independent != frozenset(range(g.n)):
        return _fail("partition does not cover the vertices")
    if not _is_clique(g, cert.clique):
        return _fail("clique vertices are not pairwise adjacent")
    if not _is_independent(g, cert.independent):
        return _fail("independent set contains an edge")
    return Verification(True)


def _verify_sme(g: Graph, cert: SmePartition) -> Verification:
    matched = [v for edge in cert.matching for v in edge]
    mset = frozenset(matched)
    if len(matched) != len(mset):
        return _fail("matching edges share endpoints")
    parts = (cert.clique, cert.independent, mset)
    total = 0
    for part in parts:
        total += len(part)
    if total != g.n or cert.clique | cert.independent | mset != frozenset(range(g.n)):
        return _fail("clique, independent set and matching do not partition the vertices")
    if not _is_clique(g, cert.clique):
        return _fail("clique vertices are not pairwise adjacent")
    if not _is_independent(g, cert.independent):
        return _fail("independent set contains an edge")
    for x, y in cert.matching:
        if not g.has_edge(x, y):
            return _fail(f"matching pair ({x},{y}) is not an edge")
    for i, (x1, y1) in enumerate(cert.matching):
        for x2, y2 in cert.matching[i + 1 :]:
            for a in (x1, y1):
                for b in (x2, y2):
                    if g.has_edge(a, b):
                        return _fail(f"matching is not induced: edge ({a},{b})")
    for s in cert.independent:
        if g.adjacency_sets[s] & mset:
            return _fail(f"independent vertex {s} touches the matching")
    for x, y in cert.matching:
        x_hits = bool(g.adjacency_sets[x] & cert.clique)
        y_hits = bool(g.adjacency_sets[y] & cert.clique)
        if x_hits and y_hits:
            return _fail(f"both ends of matching edge ({x},{y}) reach the clique")
    return Verification(True)


def _verify_elimination(g: Graph, res: EliminationResult) -> Verification:
    if sorted(res.ordering) != list(range(g.n)):
        return _fail("ordering is not a permutation")
    if not res.is_peo:
        v, x, y = res.failure
        pos = {u: i for i, u in enumerate(res.ordering)}
        if not (
            g.has_edge(v, x)
            and g.has_edge(v, y)
            and not g.has_edge(x, y)
            and pos[x] > pos[v]
            and pos[y] > pos[v]
        ):
            return _fail("failure locus does not describe a real violation")
        return Verification(True)
    pos = {u: i for i, u in enumerate(res.ordering)}
    for v in range(g.n):
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1 :]:
                if not g.has_edge(a, b):
                    return _fail(f"later neighbors {a},{b} of {v} are non-adjacent")
    return Verification(True)
