"""Edge partition into a minimum number of forests, rooting/orientation,
and the per-incidence relation sets the activation strategy consumes.

The partition is computed by matroid-union augmentation: edges are
inserted one at a time; when every forest would close a cycle, a
breadth-first exchange search moves edges between forests to make room.
Only when no exchange chain exists is a new forest opened, which is
forced, so the final forest count equals the arboricity exactly.

Orienting every tree away from its root splits each edge uv (u nearer
the root) into a *top* incidence (u, uv) and a *down* incidence (v, uv),
and sorts the conflict neighborhood of each incidence of uv into eight
relation sets: fathers come from edges oriented into u, brothers from
other edges oriented out of u, sons from edges oriented out of v, and
uncles from other edges oriented into v; each splits into a top and a
down half.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError


class DecompositionError(RuntimeError):
    """Internal invariant failure while building or checking a partition."""


class ForestPartition:
    """Assignment of every edge to one of ``forest_count`` acyclic classes."""

    def __init__(self, graph: Graph, forest_of: list[int], forest_count: int):
        self.graph = graph
        self.forest_of = tuple(forest_of)
        self.forest_count = forest_count

    def forest_edges(self, forest: int) -> list[int]:
        return [e for e, f in enumerate(self.forest_of) if f == forest]

    def verify(self) -> None:
        """Raise unless every class is a forest and every edge is placed."""
        g = self.graph
        if len(self.forest_of) != g.m:
            raise DecompositionError("not every edge was assigned a forest")
        for forest in range(self.forest_count):
            parent: dict[int, int] = {}

            def find(x: int) -> int:
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x

            for e in self.forest_edges(forest):
                u, v = g.edges[e]
                ru, rv = find(u), find(v)
                if ru == rv:
                    raise DecompositionError(
                        f"forest {forest} contains a cycle through edge {e}"
                    )
                parent[ru] = rv


def decompose_into_forests(g: Graph) -> ForestPartition:
    """Partition E(G) into arboricity-many forests (exact, polynomial)."""
    if g.m == 0:
        raise GraphError("decomposition needs at least one edge")
    forest_of: dict[int, int] = {}
    adj: list[list[list[tuple[int, int]]]] = []  # [forest][vertex] -> (nbr, edge)

    def forest_path(forest: int, src: int, dst: int) -> list[int] | None:
        """Edge ids on the unique path src..dst inside ``forest``, or None."""
        if src == dst:
            return []
        prev: dict[int, tuple[int, int]] = {}
        queue = deque([src])
        seen = {src}
        while queue:
            x = queue.popleft()
            for y, e in adj[forest][x]:
                if y in seen:
                    continue
                seen.add(y)
                prev[y] = (x, e)
                if y == dst:
                    out = []
                    while y != src:
                        x2, e2 = prev[y]
                        out.append(e2)
                        y = x2
                    return out
                queue.append(y)
        return None

    def place(edge: int, forest: int) -> None:
        forest_of[edge] = forest
        u, v = g.edges[edge]
        adj[forest][u].append((v, edge))
        adj[forest][v].append((u, edge))

    def remove(edge: int, forest: int) -> None:
        u, v = g.edges[edge]
        adj[forest][u].remove((v, edge))
        adj[forest][v].remove((u, edge))

    def try_insert(e0: int) -> bool:
        """Insert e0 via breadth-first exchange chains; False if impossible."""
        k = len(adj)
        pred: dict[int, tuple[int, int]] = {}  # labeled edge -> (parent edge, forest)
        labeled = {e0}
        queue = deque([e0])
        while queue:
            f = queue.popleft()
            fu, fv = g.edges[f]
            for forest in range(k):
                path = forest_path(forest, fu, fv)
                if path is None:
                    # room in this forest: place f, unwind the swap chain
                    cur, dest = f, forest
                    while True:
                        if cur != e0:
                            par, pforest = pred[cur]
                            remove(cur, pforest)
                            place(cur, dest)
                            cur, dest = par, pforest
                        else:
                            place(cur, dest)
                            break
                    return True
                for ce in path:
                    if ce not in labeled:
                        labeled.add(ce)
                        pred[ce] = (f, forest)
                        queue.append(ce)
        return False

    for e in range(g.m):
        if adj and try_insert(e):
            continue
        adj.append([[] for _ in range(g.n)])
        place(e, len(adj) - 1)

    out = [forest_of[e] for e in range(g.m)]
    part = ForestPartition(g, out, len(adj))
    part.verify()
    return part


ROOT_POLICIES = ("first_vertex", "max_degree", "random")


class OrientedDecomposition:
    """A forest partition with one root per tree and all edges oriented
    from the root toward the leaves (tail strictly nearer the root)."""

    def __init__(
        self,
        partition: ForestPartition,
        orientation: list[tuple[int, int]],
        roots: list[tuple[int, int]],
        parent: dict[tuple[int, int], int],
        root_policy: str,
        seed: int | None,
    ):
        self.graph = partition.graph
        self.partition = partition
        self.orientation = tuple(orientation)  # edge -> (tail, head)
        self.roots = tuple(sorted(roots))  # (forest, root vertex)
        self.parent = dict(parent)  # (forest, vertex) -> parent vertex
        self.root_policy = root_policy
        self.seed = seed

    @property
    def forest_count(self) -> int:
        return self.partition.forest_count

    @property
    def forest_of(self) -> tuple[int, ...]:
        return self.partition.forest_of

    def tail(self, edge: int) -> int:
        return self.orientation[edge][0]

    def head(self, edge: int) -> int:
        return self.orientation[edge][1]

    def dump(self) -> str:
        """Debug/UI text: one line per edge, 'u v forest tail'."""
        lines = [
            f"{u} {v} {self.forest_of[e]} {self.orientation[e][0]}"
            for e, (u, v) in enumerate(self.graph.edges)
        ]
        return "\n".join(lines) + "\n"


def root_and_orient(
    part: ForestPartition, root_policy: str = "first_vertex", seed: int | None = None
) -> OrientedDecomposition:
    """Pick one root per tree (per the policy) and orient every edge with
    its tail nearer the root of its tree."""
    if root_policy not in ROOT_POLICIES:
        raise GraphError(f"unknown root policy {root_policy!r}")
    g = part.graph
    rng = random.Random(seed)
    orientation: list[tuple[int, int]] = [(-1, -1)] * g.m
    roots: list[tuple[int, int]] = []
    parent: dict[tuple[int, int], int] = {}
    for forest in range(part.forest_count):
        nbr: dict[int, list[tuple[int, int]]] = {}
        for e in part.forest_edges(forest):
            u, v = g.edges[e]
            nbr.setdefault(u, []).append((v, e))
            nbr.setdefault(v, []).append((u, e))
        unvisited = set(nbr)
        while unvisited:
            comp_seed = min(unvisited)
            comp = [comp_seed]
            seen = {comp_seed}
            queue = deque([comp_seed])
            while queue:
                x = queue.popleft()
                for y, _ in nbr[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comp.sort()
            if root_policy == "first_vertex":
                root = comp[0]
            elif root_policy == "max_degree":
                root = max(comp, key=lambda x: (g.degree(x), -x))
            else:
                root = rng.choice(comp)
            roots.append((forest, root))
            queue = deque([root])
            done = {root}
            while queue:
                x = queue.popleft()
                for y, e in nbr[x]:
                    if y in done:
                        continue
                    done.add(y)
                    orientation[e] = (x, y)
                    parent[(forest, y)] = x
                    queue.append(y)
            unvisited -= seen
    return OrientedDecomposition(part, orientation, roots, parent, root_policy, seed)


def decompose(
    g: Graph, root_policy: str = "first_vertex", seed: int | None = None
) -> OrientedDecomposition:
    return root_and_orient(decompose_into_forests(g), root_policy, seed)


TOP = "top"
DOWN = "down"


@dataclass(frozen=True)
class RelationSets:
    """The eight relation sets around one incidence (tuples of indices)."""

    top_fathers: tuple[int, ...]
    down_fathers: tuple[int, ...]
    top_sons: tuple[int, ...]
    down_sons: tuple[int, ...]
    top_brothers: tuple[int, ...]
    down_brothers: tuple[int, ...]
    top_uncles: tuple[int, ...]
    down_uncles: tuple[int, ...]

    @property
    def fathers(self) -> tuple[int, ...]:
        return self.top_fathers + self.down_fathers

    @property
    def sons(self) -> tuple[int, ...]:
        return self.top_sons + self.down_sons

    @property
    def brothers(self) -> tuple[int, ...]:
        return self.top_brothers + self.down_brothers

    @property
    def uncles(self) -> tuple[int, ...]:
        return self.top_uncles + self.down_uncles


class IncidenceRelations:
    """Precomputed classification and relation sets for every incidence.

    Both incidences of an edge oriented u->v share the same construction:
    fathers from edges oriented into u, brothers from other edges out of
    u, sons from edges out of v, uncles from other edges into v.  The
    relation sets of an incidence i partition its conflict neighborhood:
    a top incidence conflicts with exactly fathers + brothers + top-sons
    + down-uncles, a down incidence with exactly down-fathers +
    top-brothers + sons + uncles.
    """

    def __init__(self, dec: OrientedDecomposition):
        g = dec.graph
        self.graph = g
        self.decomposition = dec
        self.forest_count = dec.forest_count
        n_inc = g.num_incidences
        out_edges: list[list[int]] = [[] for _ in range(g.n)]
        in_edges: list[list[int]] = [[] for _ in range(g.n)]
        for e in range(g.m):
            t, h = dec.orientation[e]
            out_edges[t].append(e)
            in_edges[h].append(e)
        top_of = [0] * g.m
        down_of = [0] * g.m
        for e in range(g.m):
            t, h = dec.orientation[e]
            top_of[e] = g.incidence_index(t, e)
            down_of[e] = g.incidence_index(h, e)
        self.top_of_edge = tuple(top_of)
        self.down_of_edge = tuple(down_of)
        is_top = [False] * n_inc
        for e in range(g.m):
            is_top[top_of[e]] = True
        self.is_top = tuple(is_top)
        sets: list[RelationSets] = [None] * n_inc  # type: ignore[list-item]
        for e in range(g.m):
            tail, head = dec.orientation[e]
            tf = tuple(top_of[f] for f in in_edges[tail])
            df = tuple(down_of[f] for f in in_edges[tail])
            ts = tuple(top_of[f] for f in out_edges[head])
            ds = tuple(down_of[f] for f in out_edges[head])
            tu = tuple(top_of[f] for f in in_edges[head] if f != e)
            du = tuple(down_of[f] for f in in_edges[head] if f != e)
            for i in (top_of[e], down_of[e]):
                tb = tuple(
                    top_of[f] for f in out_edges[tail] if top_of[f] != i
                )
                db = tuple(
                    down_of[f] for f in out_edges[tail] if down_of[f] != i
                )
                sets[i] = RelationSets(tf, df, ts, ds, tb, db, tu, du)
        self.sets = tuple(sets)
        # strategy ordering: edge id, then top before down
        order = []
        for e in range(g.m):
            order.append(top_of[e])
            order.append(down_of[e])
        self.strategy_order = tuple(order)
        rank = [0] * n_inc
        for pos, i in enumerate(order):
            rank[i] = pos
        self.strategy_rank = tuple(rank)

    def classification(self, i: int) -> str:
        return TOP if self.is_top[i] else DOWN

    def sibling(self, i: int) -> int:
        """The other incidence of the same edge."""
        e = self.graph.incidence(i).edge
        return self.down_of_edge[e] if self.is_top[i] else self.top_of_edge[e]

    def of(self, i: int) -> RelationSets:
        return self.sets[i]

    def conflict_partition(self, i: int) -> tuple[int, ...]:
        """The relation sets that are exactly the conflict neighborhood."""
        s = self.sets[i]
        if self.is_top[i]:
            return s.fathers + s.brothers + s.top_sons + s.down_uncles
        return s.down_fathers + s.top_brothers + s.sons + s.uncles


def relations(dec: OrientedDecomposition) -> IncidenceRelations:
    return IncidenceRelations(dec)
