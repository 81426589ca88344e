"""Minimum forest partitions and the oriented relation sets.

The edge set of any graph splits into arboricity-many forests; rooting
every tree and orienting edges root-to-leaf classifies each edge's two
incidences as top (at the tail) and down (at the head), and sorts every
incidence's conflict neighborhood into fathers, brothers, sons and
uncles.  The strategy player consumes exactly this structure.
"""

from icgame.forests import decompose, relations
from icgame.graph import arboricity_oracle, complete, wheel

for g, name in ((complete(4), "K4"), (wheel(5), "wheel-5")):
    dec = decompose(g)
    print(f"{name}: m={g.m}, arboricity={dec.forest_count} "
          f"(oracle agrees: {arboricity_oracle(g) == dec.forest_count})")
    print("  edge  forest  orientation")
    for e, (u, v) in enumerate(g.edges):
        tail, head = dec.orientation[e]
        print(f"  {u}-{v}    {dec.forest_of[e]}       {tail}->{head}")

g = wheel(5)
rel = relations(decompose(g))
i = rel.top_of_edge[0]
s = rel.of(i)
inc = g.incidence(i)
print(f"\nrelation sets around incidence {i} = (vertex {inc.vertex}, edge {inc.edge}):")
for field in ("top_fathers", "down_fathers", "top_sons", "down_sons",
              "top_brothers", "down_brothers", "top_uncles", "down_uncles"):
    print(f"  {field:14s} {getattr(s, field)}")
conflicts = rel.conflict_partition(i)
print(f"their union covers all {len(conflicts)} conflicts of {i} exactly")
