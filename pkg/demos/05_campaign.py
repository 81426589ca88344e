"""A seeded verification campaign with deterministic report files.

Runs strategy games across several families and spoiling opponents at
the guaranteed palette, aggregates the invariant monitors, and writes
summary/invariants/winrates/improvement CSVs plus a JSON meta file.
Rerunning with the same seed reproduces the files byte for byte.
"""

from pathlib import Path
from tempfile import mkdtemp

from icgame.campaign import (
    ExperimentConfig,
    InstanceSpec,
    run_campaign,
    write_outputs,
)

config = ExperimentConfig(
    name="demo",
    seed=31,
    instances=[
        InstanceSpec("random_tree", {"n": 14, "max_degree": 7}, count=5),
        InstanceSpec("random_forest_union", {"k": 2, "n": 12, "max_degree": 7}, count=5),
        InstanceSpec("cycle", {"n": 8}),
        InstanceSpec("star", {"n": 7}),
        InstanceSpec("wheel", {"n": 6}),
        InstanceSpec("gnp", {"n": 14, "p": 0.2}, count=5),
    ],
    bobs=["random", "spoiler", "minimax"],
    repetitions=2,
    max_degree_cap=8,
    record_transcripts=True,
)

result = run_campaign(config)
print(f"games: {len(result.rows)}, wins by the strategy: {result.alice_wins}, "
      f"monitor violations: {result.report.total_violations}")

print("\nwin rates:")
for row in result.win_rate_table():
    print(f"  {row['family']:22s} vs {row['bob']:8s} "
          f"{row['alice_wins']}/{row['games']}")

print("\npalette bound vs the degeneracy-based bound (first rows):")
for row in result.improvement_table()[:6]:
    print(f"  {row['family']:22s} n={row['n']:2d} max_degree={row['max_degree']} "
          f"strategy={row['strategy_bound']:3d} degenerate={row['degenerate_bound']:3d}")

out = Path(mkdtemp(prefix="icgame-demo-"))
paths = write_outputs(result, out)
print(f"\nreports written to {out}:")
for name, p in sorted(paths.items()):
    print(f"  {name}: {p.name} ({p.stat().st_size} bytes)")
