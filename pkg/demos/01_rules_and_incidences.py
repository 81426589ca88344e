"""Incidences, their conflict rule, and the subdivision correspondence.

An incidence is a (vertex, edge) pair with the vertex an endpoint of the
edge; each edge contributes two.  Two incidences conflict when they share
the vertex, share the edge, or the edge joining their vertices is one of
their edges.  Properly coloring incidences of a graph is the same problem
as strongly edge-coloring its full subdivision, which this script checks
on a random graph.
"""

import random

from icgame.graph import (
    full_subdivision,
    gnp,
    incidence_coloring_to_subdivision,
    is_strong_edge_coloring,
    is_valid_incidence_coloring,
    path,
)

g = path(3)
print(f"path on 3 vertices: {g.n} vertices, {g.m} edges")
for inc in g.incidences():
    print(f"  incidence {inc.index}: vertex {inc.vertex} on edge {inc.edge}")

print("\nconflicts of incidence 0:")
for j in g.incidence_neighbors()[0]:
    other = g.incidence(j)
    print(f"  vs incidence {j} = (vertex {other.vertex}, edge {other.edge})")

g = gnp(7, 0.4, seed=3)
sub, mapping = full_subdivision(g)
print(f"\nrandom graph: n={g.n} m={g.m}; subdivision: n={sub.n} m={sub.m}")

rng = random.Random(0)
agree = 0
for _ in range(2000):
    coloring = {i: rng.randint(1, 6) for i in range(g.num_incidences)}
    valid = is_valid_incidence_coloring(g, coloring)
    strong = is_strong_edge_coloring(
        sub, incidence_coloring_to_subdivision(g, coloring)
    )
    assert valid == strong
    agree += 1
print(f"incidence-coloring validity matched subdivision strength on {agree} colorings")
