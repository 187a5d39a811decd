"""Graph construction, formats, components, and shortest paths."""

from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordalsplit import (
    GraphInputError,
    build_graph,
    components,
    induced_subgraph,
    parse_edgelist,
    parse_graph6,
    shortest_path,
    write_graph6,
)
from chordalsplit.graph import bits_of, component_masks, mask_of
from chordalsplit.oracle import enumerate_labeled_graphs, labeled_graph


def graphs(draw, max_n=10, p=0.4):
    n = draw(st.integers(min_value=0, max_value=max_n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.append((i, j))
    return build_graph(n, edges)


random_graphs = st.composite(graphs)()


class TestBuildGraph:
    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
        assert g.m == 3
        assert all(g.degree(v) == 2 for v in g.vertices())

    def test_reversed_duplicate_edges_collapse(self):
        g = build_graph(2, [(0, 1), (1, 0)])
        assert g.m == 1

    def test_butterfly_edge_count(self):
        g = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert g.m == 6

    def test_out_of_range_endpoint(self):
        with pytest.raises(GraphInputError):
            build_graph(3, [(0, 3)])

    def test_self_loop_rejected(self):
        with pytest.raises(GraphInputError, match="self-loop"):
            build_graph(3, [(1, 1)])

    @given(random_graphs)
    @settings(max_examples=60, deadline=None)
    def test_degree_sum_is_twice_edge_count(self, g):
        assert sum(g.degree(v) for v in g.vertices()) == 2 * g.m


class TestGraph6:
    def test_known_record_roundtrip(self):
        assert write_graph6(parse_graph6("D?{")) == "D?{"

    def test_star_decoding(self):
        g = parse_graph6("D?{")
        assert g.n == 5
        assert g.edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]

    def test_single_vertex(self):
        g = parse_graph6("@")
        assert (g.n, g.m) == (1, 0)
        assert write_graph6(g) == "@"

    def test_empty_graph_shortest_record(self):
        assert write_graph6(build_graph(0, [])) == "?"

    def test_c4_against_independent_encoder(self):
        record = nx.to_graph6_bytes(nx.cycle_graph(4), header=False).decode().strip()
        g = parse_graph6(record)
        assert g.n == 4 and g.m == 4
        assert all(g.degree(v) == 2 for v in g.vertices())

    def test_p4_against_independent_encoder(self):
        record = nx.to_graph6_bytes(nx.path_graph(4), header=False).decode().strip()
        g = parse_graph6(record)
        assert sorted(g.degree(v) for v in g.vertices()) == [1, 1, 2, 2]

    def test_header_prefix_stripped(self):
        assert parse_graph6(">>graph6<<D?{").n == 5

    def test_matches_networkx_on_random_graphs(self):
        rng = random.Random(7)
        for _ in range(150):
            n = rng.randrange(0, 14)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.35
            ]
            g = build_graph(n, edges)
            ref = nx.empty_graph(n)
            ref.add_edges_from(edges)
            expected = nx.to_graph6_bytes(ref, header=False).decode().strip()
            assert write_graph6(g) == expected
            assert parse_graph6(expected) == g

    def test_large_size_prefix(self):
        ref = nx.path_graph(70)
        expected = nx.to_graph6_bytes(ref, header=False).decode().strip()
        g = build_graph(70, list(ref.edges()))
        assert write_graph6(g) == expected
        assert parse_graph6(expected) == g

    def test_roundtrip_identity_exhaustive_small(self):
        for n in range(0, 5):
            for g in enumerate_labeled_graphs(n):
                assert parse_graph6(write_graph6(g)) == g

    def test_bad_characters(self):
        with pytest.raises(GraphInputError, match="range"):
            parse_graph6("D?\x20")

    def test_truncated_record(self):
        with pytest.raises(GraphInputError, match="too short"):
            parse_graph6("D?")

    def test_trailing_garbage(self):
        with pytest.raises(GraphInputError, match="trailing"):
            parse_graph6("D?{?")

    def test_malformed_length_field(self):
        with pytest.raises(GraphInputError, match="length"):
            parse_graph6("~?")


class TestEdgeList:
    def test_with_header(self):
        g = parse_edgelist("4 2\n0 1\n2 3\n")
        assert (g.n, g.m) == (4, 2)

    def test_without_header(self):
        g = parse_edgelist("0 1\n1 2\n")
        assert (g.n, g.m) == (3, 2)

    def test_header_allows_isolated_vertices(self):
        g = parse_edgelist("6 1\n0 1\n")
        assert (g.n, g.m) == (6, 1)

    def test_empty_input(self):
        assert parse_edgelist("").n == 0

    def test_comments_and_blanks_skipped(self):
        g = parse_edgelist("# a graph\n\n0 1\n")
        assert (g.n, g.m) == (2, 1)

    def test_garbage_line(self):
        with pytest.raises(GraphInputError, match="line 1"):
            parse_edgelist("zero one\n")


BUTTERFLY = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


class TestComponents:
    def test_butterfly_minus_center(self):
        decomp = components(BUTTERFLY, {0, 1, 3, 4})
        assert decomp.components == (frozenset({0, 1}), frozenset({3, 4}))

    def test_empty_subset(self):
        assert components(BUTTERFLY, ()).components == ()

    def test_disjoint_paths(self):
        g = build_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        decomp = components(g, range(6))
        assert decomp.sizes() == (3, 3)

    def test_subset_out_of_range(self):
        with pytest.raises(GraphInputError):
            components(BUTTERFLY, {9})

    @given(random_graphs)
    @settings(max_examples=60, deadline=None)
    def test_components_partition_source(self, g):
        sub = frozenset(v for v in g.vertices() if v % 2 == 0)
        decomp = components(g, sub)
        seen = set()
        for comp in decomp.components:
            assert comp, "components are nonempty"
            assert not (comp & seen)
            seen |= comp
        assert seen == sub

    @given(random_graphs)
    @settings(max_examples=40, deadline=None)
    def test_listed_components_are_pairwise_nonadjacent(self, g):
        decomp = components(g, g.vertices())
        for i, a in enumerate(decomp.components):
            for b in decomp.components[i + 1 :]:
                assert not any(g.has_edge(u, v) for u in a for v in b)

    def test_mask_and_set_paths_agree(self):
        rng = random.Random(3)
        for _ in range(30):
            n = rng.randrange(1, 15)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.25
            ]
            g = build_graph(n, edges)
            sub = frozenset(v for v in range(n) if rng.random() < 0.8)
            via_masks = [
                frozenset(bits_of(m)) for m in component_masks(g, mask_of(sub))
            ]
            assert tuple(via_masks) == components(g, sub).components


class TestShortestPath:
    def test_path_graph_endpoints(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        assert shortest_path(g, range(4), 0, 3) == (0, 1, 2, 3)

    def test_trivial_endpoint(self):
        g = build_graph(2, [(0, 1)])
        assert shortest_path(g, {0, 1}, 0, 0) == (0,)

    def test_disconnected_gives_none(self):
        g = build_graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
        assert shortest_path(g, range(6), 0, 4) is None

    def test_endpoint_outside_subset(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        with pytest.raises(GraphInputError):
            shortest_path(g, {0, 1}, 0, 2)

    def test_respects_subset(self):
        g = build_graph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        assert shortest_path(g, {0, 2, 3}, 0, 3) == (0, 2, 3)

    @given(random_graphs)
    @settings(max_examples=40, deadline=None)
    def test_length_matches_bfs_distance(self, g):
        if g.n == 0:
            return
        dist = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for w in g.neighbors(v):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        for t in g.vertices():
            path = shortest_path(g, g.vertices(), 0, t)
            if t in dist:
                assert path is not None
                assert len(path) == dist[t] + 1
                assert len(set(path)) == len(path)
                for a, b in zip(path, path[1:]):
                    assert g.has_edge(a, b)
            else:
                assert path is None


class TestInducedSubgraph:
    def test_relabeling(self):
        g = build_graph(5, [(0, 2), (2, 4), (1, 3)])
        sub, old = induced_subgraph(g, [0, 2, 4])
        assert old == (0, 2, 4)
        assert sub.edges() == [(0, 1), (1, 2)]

    def test_labeled_graph_mask_roundtrip(self):
        for n in range(0, 5):
            count = 0
            for g in enumerate_labeled_graphs(n):
                count += 1
            assert count == 1 << (n * (n - 1) // 2)
        assert labeled_graph(3, 0b111).m == 3
