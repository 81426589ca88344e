"""Simple undirected graphs, incidences, and brute-force certificates.

A graph keeps its vertices and edges in stable 0-based id order so that
every downstream artifact (decompositions, game transcripts, solver
goldens) replays bit-identically.  An *incidence* is a pair (vertex,
edge) with the vertex an endpoint of the edge; each edge contributes two
incidences.  Two incidences (v, e) and (w, f) conflict when they share
the vertex, share the edge, or the edge joining v and w is e or f.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Malformed construction or an out-of-contract query."""


@dataclass(frozen=True)
class Incidence:
    """One endpoint slot of an edge.  ``index`` is 2*edge + side."""

    vertex: int
    edge: int
    index: int


class Graph:
    """Immutable simple graph with deterministic vertex/edge ids.

    Vertices are 0..n-1.  Edges get ids 0..m-1 in input order; endpoint
    order within an edge is preserved, which fixes incidence ids.
    """

    def __init__(self, vertex_count: int, edge_list: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise GraphError("vertex count must be nonnegative")
        self.n = vertex_count
        edges: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in edge_list:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) has an endpoint out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add(key)
            eid = len(edges)
            edges.append((u, v))
            adj[u].append(eid)
            adj[v].append(eid)
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        self._edge_by_pair = {
            (min(u, v), max(u, v)): e for e, (u, v) in enumerate(self.edges)
        }
        self._incidences = tuple(
            Incidence(self.edges[e][side], e, 2 * e + side)
            for e in range(len(self.edges))
            for side in (0, 1)
        )
        self._incidence_neighbors: tuple[tuple[int, ...], ...] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edge_between(self, u: int, v: int) -> int | None:
        """Edge id joining u and v, or None."""
        if u == v:
            return None
        return self._edge_by_pair.get((min(u, v), max(u, v)))

    def incidences(self) -> tuple[Incidence, ...]:
        """All incidences, ordered by edge id then declared endpoint order."""
        return self._incidences

    @property
    def num_incidences(self) -> int:
        return 2 * len(self.edges)

    def incidence(self, index: int) -> Incidence:
        return self._incidences[index]

    def incidence_index(self, vertex: int, edge: int) -> int:
        u, v = self.edges[edge]
        if vertex == u:
            return 2 * edge
        if vertex == v:
            return 2 * edge + 1
        raise GraphError(f"vertex {vertex} is not an endpoint of edge {edge}")

    def incidences_adjacent(self, i: Incidence | int, j: Incidence | int) -> bool:
        """Conflict test: shared vertex, shared edge, or the edge joining
        the two vertices equals either incidence's edge.  Irreflexive."""
        a = self._incidences[i] if isinstance(i, int) else i
        b = self._incidences[j] if isinstance(j, int) else j
        if a.index == b.index:
            return False
        if a.vertex == b.vertex or a.edge == b.edge:
            return True
        joining = self.edge_between(a.vertex, b.vertex)
        return joining is not None and joining in (a.edge, b.edge)

    def incidence_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Per-incidence tuple of conflicting incidence indices (cached)."""
        if self._incidence_neighbors is None:
            incs = self._incidences
            nb: list[list[int]] = [[] for _ in incs]
            # conflicts of (x, e=xy): all other incidences at x, all other
            # incidences of e's far endpoint y, and the far incidence of
            # every other edge at x
            at_vertex: list[list[int]] = [[] for _ in range(self.n)]
            for inc in incs:
                at_vertex[inc.vertex].append(inc.index)
            for inc in incs:
                x = inc.vertex
                u, v = self.edges[inc.edge]
                y = v if x == u else u
                s = set(at_vertex[x]) | set(at_vertex[y])
                for e in self.adjacency[x]:
                    a, b = self.edges[e]
                    far = b if a == x else a
                    s.add(self.incidence_index(far, e))
                s.discard(inc.index)
                nb[inc.index] = sorted(s)
            self._incidence_neighbors = tuple(tuple(x) for x in nb)
        return self._incidence_neighbors

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(vertex_count: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validating constructor; rejects loops, duplicates, bad endpoints."""
    return Graph(vertex_count, edge_list)


# ---------------------------------------------------------------------------
# text format: header "n m" then one "u v" line per edge, 0-based


def format_graph_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("expected header line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"unparsable graph text: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# full subdivision and the strong edge coloring correspondence


def full_subdivision(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Subdivide every edge once.

    Returns the subdivided graph together with the bijection from
    incidence index of ``g`` to edge id of the subdivision: incidence
    (u, uv) maps to the new edge {u, x_uv} where x_uv is the midpoint
    vertex inserted on uv.
    """
    sub_edges: list[tuple[int, int]] = []
    mapping: dict[int, int] = {}
    for e, (u, v) in enumerate(g.edges):
        mid = g.n + e
        mapping[2 * e] = len(sub_edges)
        sub_edges.append((u, mid))
        mapping[2 * e + 1] = len(sub_edges)
        sub_edges.append((v, mid))
    return Graph(g.n + g.m, sub_edges), mapping


def is_strong_edge_coloring(h: Graph, coloring: Mapping[int, int]) -> bool:
    """True iff no two equal-colored distinct edges are within line-graph
    distance 2 (share an endpoint, or some edge touches both)."""
    if set(coloring.keys()) != set(range(h.m)):
        raise GraphError("strong edge coloring check requires a total coloring")
    for e in range(h.m):
        for f in range(e + 1, h.m):
            if coloring[e] != coloring[f]:
                continue
            a, b = h.edges[e]
            c, d = h.edges[f]
            if {a, b} & {c, d}:
                return False
            hit = False
            for w in (a, b):
                for x in (c, d):
                    if h.edge_between(w, x) is not None:
                        hit = True
            if hit:
                return False
    return True


def incidence_coloring_to_subdivision(
    g: Graph, coloring: Mapping[int, int]
) -> dict[int, int]:
    """Translate a total incidence coloring into an edge coloring of the
    full subdivision via the incidence->edge bijection."""
    if set(coloring.keys()) != set(range(g.num_incidences)):
        raise GraphError("translation requires a total incidence coloring")
    _, mapping = full_subdivision(g)
    return {mapping[i]: coloring[i] for i in coloring}


def is_valid_incidence_coloring(g: Graph, coloring: Mapping[int, int]) -> bool:
    """Properness of a (possibly partial) incidence coloring: checks every
    colored pair under the conflict relation."""
    items = sorted(coloring.items())
    for a in range(len(items)):
        i, ci = items[a]
        for b in range(a + 1, len(items)):
            j, cj = items[b]
            if ci == cj and g.incidences_adjacent(i, j):
                return False
    return True


# ---------------------------------------------------------------------------
# brute-force certificates


def arboricity_oracle(g: Graph, max_vertices: int = 12) -> int:
    """Minimum number of forests covering E(G), by exhaustive evaluation of
    the density formula max over connected vertex subsets S (|S| >= 2) of
    ceil(m_S / (|S| - 1)).  Exponential; refuses beyond ``max_vertices``.
    """
    if g.m == 0:
        return 0
    if g.n > max_vertices:
        raise GraphError(
            f"arboricity oracle capped at {max_vertices} vertices, got {g.n}"
        )
    edge_bits = [(1 << u) | (1 << v) for u, v in g.edges]
    adj_bits = [0] * g.n
    for u, v in g.edges:
        adj_bits[u] |= 1 << v
        adj_bits[v] |= 1 << u
    best = 1
    for mask in range(3, 1 << g.n):
        size = mask.bit_count()
        if size < 2:
            continue
        # connectivity of the induced subgraph
        start = (mask & -mask).bit_length() - 1
        reach = 1 << start
        frontier = reach
        while frontier:
            nxt = 0
            f = frontier
            while f:
                w = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= adj_bits[w] & mask
            frontier = nxt & ~reach
            reach |= nxt
        if reach != mask:
            continue
        m_s = sum(1 for eb in edge_bits if eb & mask == eb)
        if m_s == 0:
            continue
        dens = -(-m_s // (size - 1))
        if dens > best:
            best = dens
    return best


def degeneracy(g: Graph) -> int:
    """Smallest k such that repeatedly deleting a minimum-degree vertex
    never meets degree greater than k."""
    if g.n == 0:
        return 0
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    neigh = [set() for _ in range(g.n)]
    for u, v in g.edges:
        neigh[u].add(v)
        neigh[v].add(u)
    k = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        alive.remove(v)
        for w in neigh[v]:
            if w in alive:
                deg[w] -= 1
    return k


def degeneracy_by_subgraphs(g: Graph, max_vertices: int = 10) -> int:
    """Independent degeneracy evaluation: max over nonempty vertex subsets
    of the induced minimum degree.  Test oracle only."""
    if g.n > max_vertices:
        raise GraphError("subgraph degeneracy oracle capped")
    if g.n == 0:
        return 0
    adj_bits = [0] * g.n
    for u, v in g.edges:
        adj_bits[u] |= 1 << v
        adj_bits[v] |= 1 << u
    best = 0
    for mask in range(1, 1 << g.n):
        mindeg = min(
            (adj_bits[v] & mask).bit_count()
            for v in range(g.n)
            if mask >> v & 1
        )
        best = max(best, mindeg)
    return best


# ---------------------------------------------------------------------------
# graph families


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    if leaves < 0:
        raise GraphError("star needs a nonnegative leaf count")
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def wheel(rim: int) -> Graph:
    if rim < 3:
        raise GraphError("wheel needs a rim of at least three vertices")
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges.extend((i, rim) for i in range(rim))
    return Graph(rim + 1, edges)


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least one vertex")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def random_tree(n: int, seed: int, max_degree: int | None = None) -> Graph:
    """Uniform-ish random labeled tree: shuffled insertion order, each new
    vertex attaches to a random earlier one (respecting the degree cap)."""
    if n < 1:
        raise GraphError("tree needs at least one vertex")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    deg = [0] * n
    edges = []
    for idx in range(1, n):
        v = order[idx]
        cands = [u for u in order[:idx] if max_degree is None or deg[u] < max_degree]
        if not cands:
            cands = order[:idx]
        u = rng.choice(cands)
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph(n, edges)


def random_forest_union(
    k: int, n: int, max_degree: int, seed: int, density: float = 0.8
) -> Graph:
    """Union of k random forests on n vertices, so the arboricity is at
    most k by construction.  Degree-capped; duplicate edges are skipped."""
    if k < 1 or n < 2:
        raise GraphError("forest union needs k >= 1 and n >= 2")
    rng = random.Random(seed)
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for _ in range(k):
        order = list(range(n))
        rng.shuffle(order)
        for idx in range(1, n):
            if rng.random() > density:
                continue  # leave this vertex a root: forests need not span
            v = order[idx]
            cands = [
                u
                for u in order[:idx]
                if deg[u] < max_degree
                and deg[v] < max_degree
                and (min(u, v), max(u, v)) not in seen
            ]
            if not cands:
                continue
            u = rng.choice(cands)
            seen.add((min(u, v), max(u, v)))
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise GraphError("gnp needs n >= 0 and p in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


FAMILIES = {
    "path": lambda params, seed: path(int(params["n"])),
    "cycle": lambda params, seed: cycle(int(params["n"])),
    "star": lambda params, seed: star(int(params["n"])),
    "wheel": lambda params, seed: wheel(int(params["n"])),
    "complete": lambda params, seed: complete(int(params["n"])),
    "random_tree": lambda params, seed: random_tree(
        int(params["n"]), seed, params.get("max_degree")
    ),
    "random_forest_union": lambda params, seed: random_forest_union(
        int(params["k"]), int(params["n"]), int(params.get("max_degree", 8)), seed
    ),
    "gnp": lambda params, seed: gnp(int(params["n"]), float(params["p"]), seed),
}


def generate(family: str, params: Mapping[str, object], seed: int = 0) -> Graph:
    """Family dispatcher used by the CLI, campaigns and the service."""
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; know {sorted(FAMILIES)}")
    try:
        return FAMILIES[family](dict(params), seed)
    except KeyError as exc:
        raise GraphError(f"family {family!r} is missing parameter {exc}") from None
