"""One monitored game: the activation strategy against the spoiler.

The strategy player activates incidences and climbs father chains so
that, with a palette of floor((3*maxdeg - arboricity)/2) + 8*arboricity - 1
colors, no incidence can ever run out of colors.  The trace shows which
rule produced every move; the monitors verify the quantitative
guarantees behind that claim as the game runs.
"""

from icgame.alice import StrategyAlice
from icgame.bounds import arboricity_palette_bound
from icgame.engine import play
from icgame.forests import decompose, relations
from icgame.graph import generate
from icgame.monitors import MonitorSuite
from icgame.opponents import SpoilerBob

g = generate("random_forest_union", {"k": 2, "n": 12, "max_degree": 6}, seed=11)
dec = decompose(g)
rel = relations(dec)
palette = arboricity_palette_bound(g.max_degree, rel.forest_count)
print(f"graph: n={g.n} m={g.m} max_degree={g.max_degree} "
      f"arboricity={rel.forest_count} palette={palette}")

suite = MonitorSuite(rel, palette, strategy_alice=True)
transcript = play(g, palette, StrategyAlice(rel), SpoilerBob(rel),
                  observers=[suite])

print(f"result: {transcript.result} after {len(transcript.moves())} moves\n")
print("the strategy's reasoning, move by move:")
traces = {e["move_index"]: e for e in transcript.events if e["type"] == "trace"}
for ev in transcript.moves():
    line = (f"  #{ev['index']:2d} {ev['mover']:5s} colors "
            f"(v{ev['vertex']}, e{ev['edge']}) with {ev['color']}")
    t = traces.get(ev["index"])
    if t:
        line += f"  [{t['rule']}"
        if t.get("climb_path"):
            line += f", climbed {t['climb_path']}"
        if t.get("loop"):
            line += f", loop {t['loop']}"
        line += "]"
    print(line)

print("\nmonitor summary (zero violations expected):")
for row in suite.report.rows():
    print(f"  {row['check']:16s} evaluations={row['evaluations']:6d} "
          f"violations={row['violations']} worst_slack={row['worst_slack']}")
