"""Forest partition, rooting/orientation, and the relation sets."""

from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings

from icgame.graph import (
    GraphError,
    arboricity_oracle,
    build_graph,
    complete,
    cycle,
    path,
    random_tree,
    star,
)
from icgame.forests import (
    DOWN,
    TOP,
    decompose,
    decompose_into_forests,
    relations,
    root_and_orient,
)

from .conftest import graphs


class TestPartition:
    def test_tree_single_forest(self):
        g = random_tree(8, seed=2)
        part = decompose_into_forests(g)
        assert part.forest_count == 1
        assert set(part.forest_of) == {0}

    def test_c5_two_forests(self):
        part = decompose_into_forests(cycle(5))
        assert part.forest_count == 2 == arboricity_oracle(cycle(5))

    def test_k4_two_spanning_trees(self):
        part = decompose_into_forests(complete(4))
        assert part.forest_count == 2
        sizes = Counter(part.forest_of)
        assert sorted(sizes.values()) == [3, 3]

    def test_requires_an_edge(self):
        with pytest.raises(GraphError):
            decompose_into_forests(build_graph(3, []))

    @given(graphs(max_vertices=9, min_edges=1))
    @settings(max_examples=80, deadline=None)
    def test_count_matches_oracle_and_verifies(self, g):
        part = decompose_into_forests(g)
        part.verify()
        assert part.forest_count == arboricity_oracle(g)


class TestOrientation:
    def test_path_rooted_at_first_vertex(self):
        dec = decompose(path(3))
        assert dec.orientation == ((0, 1), (1, 2))
        assert dec.roots == ((0, 0),)

    def test_star_rooted_at_center(self):
        g = star(3)
        dec = decompose(g)  # vertex 0 is the center and the lowest id
        assert all(tail == 0 for tail, _ in dec.orientation)

    def test_star_rooted_at_leaf(self):
        # leaf 0, center 1: edge 0->1, the others 1->leaf
        g = build_graph(4, [(0, 1), (1, 2), (1, 3)])
        dec = decompose(g)
        assert dec.orientation[0] == (0, 1)
        assert dec.orientation[1] == (1, 2)
        assert dec.orientation[2] == (1, 3)

    def test_max_degree_policy(self):
        g = build_graph(4, [(0, 1), (1, 2), (1, 3)])
        dec = decompose(g, "max_degree")
        assert dec.roots == ((0, 1),)

    def test_random_policy_deterministic_per_seed(self):
        g = cycle(6)
        a = decompose(g, "random", seed=5)
        b = decompose(g, "random", seed=5)
        assert a.orientation == b.orientation and a.roots == b.roots

    @given(graphs(max_vertices=8, min_edges=1))
    @settings(max_examples=60, deadline=None)
    def test_every_vertex_at_most_one_parent_per_forest(self, g):
        dec = decompose(g)
        incoming: Counter = Counter()
        for e in range(g.m):
            head = dec.head(e)
            incoming[(dec.forest_of[e], head)] += 1
        assert all(c == 1 for c in incoming.values())
        total_in: Counter = Counter(dec.head(e) for e in range(g.m))
        assert all(c <= dec.forest_count for c in total_in.values())

    @given(graphs(max_vertices=8, min_edges=1))
    @settings(max_examples=40, deadline=None)
    def test_tails_are_closer_to_roots(self, g):
        from collections import deque

        dec = decompose(g)
        for forest, root in dec.roots:
            dist = {root: 0}
            queue = deque([root])
            nbr: dict[int, list[tuple[int, int]]] = {}
            for e in dec.partition.forest_edges(forest):
                u, v = g.edges[e]
                nbr.setdefault(u, []).append((v, e))
                nbr.setdefault(v, []).append((u, e))
            while queue:
                x = queue.popleft()
                for y, _ in nbr.get(x, ()):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            for e in dec.partition.forest_edges(forest):
                tail, head = dec.orientation[e]
                if tail in dist:
                    assert dist[tail] < dist[head]

    def test_dump_format(self):
        dec = decompose(path(3))
        assert dec.dump() == "0 1 0 0\n1 2 0 1\n"


class TestRelations:
    def test_two_edge_path_sets(self):
        # path a->b->c: for i = top of bc, fathers come from ab and the
        # only brother is i's own down incidence
        g = path(3)
        rel = relations(decompose(g))
        i = rel.top_of_edge[1]
        s = rel.of(i)
        assert s.top_fathers == (rel.top_of_edge[0],)
        assert s.down_fathers == (rel.down_of_edge[0],)
        assert s.down_brothers == (rel.down_of_edge[1],)
        for name in ("top_sons", "down_sons", "top_brothers",
                     "top_uncles", "down_uncles"):
            assert getattr(s, name) == ()

    def test_star_sets(self):
        # center r -> leaves x, y, z: i = (r, rx) has only brothers; the
        # down-brothers include i's own down incidence (x, rx)
        g = star(3)
        rel = relations(decompose(g))
        i = rel.top_of_edge[0]
        s = rel.of(i)
        assert set(s.top_brothers) == {rel.top_of_edge[1], rel.top_of_edge[2]}
        assert set(s.down_brothers) == {
            rel.down_of_edge[0], rel.down_of_edge[1], rel.down_of_edge[2],
        }
        assert s.fathers == () and s.top_sons == () and s.uncles == ()

    def test_classification_and_sibling(self):
        g = path(3)
        rel = relations(decompose(g))
        for e in range(g.m):
            t, d = rel.top_of_edge[e], rel.down_of_edge[e]
            assert rel.classification(t) == TOP
            assert rel.classification(d) == DOWN
            assert rel.sibling(t) == d and rel.sibling(d) == t

    @given(graphs(max_vertices=7, min_edges=1))
    @settings(max_examples=100, deadline=None)
    def test_partition_equals_conflict_neighborhood(self, g):
        rel = relations(decompose(g))
        for i in range(g.num_incidences):
            part = sorted(rel.conflict_partition(i))
            scan = sorted(
                j for j in range(g.num_incidences) if g.incidences_adjacent(i, j)
            )
            assert part == scan
            # and the partition never repeats an incidence
            assert len(part) == len(set(part))

    @given(graphs(max_vertices=8, min_edges=1))
    @settings(max_examples=60, deadline=None)
    def test_cardinality_bounds(self, g):
        rel = relations(decompose(g))
        a = rel.forest_count
        d = g.max_degree
        for i in range(g.num_incidences):
            s = rel.of(i)
            assert len(s.top_fathers) <= a
            assert len(s.down_fathers) <= a
            assert len(s.top_uncles) <= a - 1
            assert len(s.down_uncles) <= a - 1
            assert len(s.top_sons) <= d - 1
            assert len(s.down_sons) <= d - 1
            assert len(s.down_uncles) + len(s.top_sons) <= d - 1
            tf = len(s.top_fathers)
            if rel.is_top[i]:
                assert len(s.top_brothers) <= d - tf - 1
                assert len(s.down_brothers) <= d - tf
            else:
                assert len(s.top_brothers) <= d - tf
                assert len(s.down_brothers) <= d - tf - 1

    @given(graphs(max_vertices=8, min_edges=1))
    @settings(max_examples=60, deadline=None)
    def test_brothers_share_fathers_and_down_cap(self, g):
        rel = relations(decompose(g))
        for i in range(g.num_incidences):
            s = rel.of(i)
            for b in s.brothers:
                assert set(rel.of(b).fathers) == set(s.fathers)
        per_vertex = Counter(
            g.incidence(i).vertex
            for i in range(g.num_incidences)
            if not rel.is_top[i]
        )
        assert all(c <= rel.forest_count for c in per_vertex.values())

    def test_relations_independent_of_game_state(self):
        g = cycle(4)
        dec = decompose(g)
        r1, r2 = relations(dec), relations(dec)
        assert r1.sets == r2.sets
