"""Inline invariant monitors for strategy games.

Each monitor is a pure function of the transcript prefix and the oriented
relation sets; monitoring never feeds back into play.  The checks mirror
the quantitative guarantees the activation strategy is built on:

* ``sons_bound`` - at the moment any incidence is colored, the colored
  part of its surroundings is small: for a down incidence, colored sons
  plus colored uncles number at most 4a-2; for a top incidence, colored
  top-sons plus colored down-uncles number at most 5a-1.
* ``brother_palette`` - at every position, the distinct colors on the
  down-brothers of any incidence number at most floor(|dB|/2) + 2a.
* ``availability`` - no uncolored incidence is ever dead: all of them at
  a full strategy palette, the down incidences already at palette
  max_degree + 5a - 2; additionally, a down incidence whose down-brothers
  show at least 4a-1 distinct colors can always be colored from that set.
* ``climb_limit`` - no incidence is climbed more than twice.
* ``discipline`` - every incidence Alice colors is neutral or active at
  that moment, except inside a neutral-loop move and except the
  down-brother reply (which restores neutrality only when the top-fathers
  happen to be colored too; the non-neutral replies are tallied
  separately, not flagged).

The strategy-dependent checks are asserted only for games where Alice
plays the activation strategy at a palette at least the strategy bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import arboricity_palette_bound, down_safe_palette
from .engine import ALICE, AvailabilityIndex, GameState, MoveRecord, Transcript
from .forests import IncidenceRelations

ALL_CHECKS = (
    "sons_bound",
    "brother_palette",
    "availability",
    "climb_limit",
    "discipline",
)


@dataclass
class CheckStat:
    evaluations: int = 0
    violations: int = 0
    worst_slack: int | None = None
    first_violation: dict | None = None

    def record(self, slack: int, context: dict | None = None) -> bool:
        self.evaluations += 1
        if self.worst_slack is None or slack < self.worst_slack:
            self.worst_slack = slack
        if slack < 0:
            self.violations += 1
            if self.first_violation is None:
                self.first_violation = context or {}
            return True
        return False

    def merge(self, other: "CheckStat") -> None:
        self.evaluations += other.evaluations
        self.violations += other.violations
        if other.worst_slack is not None and (
            self.worst_slack is None or other.worst_slack < self.worst_slack
        ):
            self.worst_slack = other.worst_slack
        if self.first_violation is None:
            self.first_violation = other.first_violation


@dataclass
class InvariantReport:
    checks: dict[str, CheckStat] = field(default_factory=dict)
    brother_reply_nonneutral: int = 0

    def stat(self, name: str) -> CheckStat:
        return self.checks.setdefault(name, CheckStat())

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.checks.values())

    def merge(self, other: "InvariantReport") -> None:
        for name, stat in other.checks.items():
            self.stat(name).merge(stat)
        self.brother_reply_nonneutral += other.brother_reply_nonneutral

    def rows(self) -> list[dict]:
        out = []
        for name in sorted(self.checks):
            c = self.checks[name]
            out.append(
                {
                    "check": name,
                    "evaluations": c.evaluations,
                    "violations": c.violations,
                    "worst_slack": "" if c.worst_slack is None else c.worst_slack,
                }
            )
        return out


class MonitorSuite:
    """Observer attached to one game; aggregates a per-game report."""

    def __init__(
        self,
        rel: IncidenceRelations,
        palette: int,
        strategy_alice: bool = True,
        game_id: str = "",
        checks: tuple[str, ...] = ALL_CHECKS,
    ):
        self.rel = rel
        self.palette = palette
        self.strategy_alice = strategy_alice
        self.game_id = game_id
        self.report = InvariantReport()
        graph = rel.graph
        self.arboricity = rel.forest_count
        self.strategy_palette = arboricity_palette_bound(
            graph.max_degree, self.arboricity
        )
        self.down_safe = down_safe_palette(graph.max_degree, self.arboricity)
        gated = strategy_alice and palette >= self.strategy_palette
        self.enabled = {c for c in checks if gated or c == "availability"}
        if "availability" in checks and not gated:
            # without the strategy guarantee only raw dead-incidence
            # detection below the down-safe palette would be noise
            if not (strategy_alice and palette >= self.down_safe):
                self.enabled.discard("availability")
        # activation state reconstructed from trace events, so a player
        # cannot self-certify discipline
        self._active: set[int] = set()
        self._climbs: dict[int, int] = {}
        self._pending: list[dict] = []

    # -- helpers -----------------------------------------------------------

    def _colored_count(self, state: GameState, indices) -> int:
        return sum(1 for j in indices if state.coloring[j] != 0)

    def _context(self, move: MoveRecord, **extra) -> dict:
        return {"game": self.game_id, "move_index": move.index, **extra}

    def _record(self, name: str, slack: int, context: dict | None) -> None:
        if self.report.stat(name).record(slack, context):
            self._pending.append(
                {"type": "invariant", "check": name, "slack": slack,
                 **(context or {})}
            )

    def drain_events(self) -> list[dict]:
        out, self._pending = self._pending, []
        return out

    # -- observer protocol ---------------------------------------------------

    def on_move(
        self,
        state: GameState,
        move: MoveRecord,
        index: AvailabilityIndex,
        trace: dict | None,
    ) -> None:
        rel = self.rel
        i = move.incidence
        a = self.arboricity
        neutral_before = all(
            state.coloring[j] != 0 for j in rel.sets[i].fathers
        )
        if trace:
            # a climb may activate an incidence and then color it on the
            # same move, so fold activations in before the discipline check
            for x in trace.get("activated", ()):
                self._active.add(x)
            for x in trace.get("loop", ()):
                self._active.add(x)
            for x in trace.get("climb_path", ()):
                self._climbs[x] = self._climbs.get(x, 0) + 1
            for x in trace.get("loop", ()):
                self._climbs[x] = self._climbs.get(x, 0) + 1
        was_active = i in self._active
        self._active.discard(i)

        if "sons_bound" in self.enabled:
            s = rel.sets[i]
            if rel.is_top[i]:
                value = self._colored_count(state, s.top_sons) + self._colored_count(
                    state, s.down_uncles
                )
                bound = 5 * a - 1
            else:
                value = self._colored_count(state, s.sons) + self._colored_count(
                    state, s.uncles
                )
                bound = 4 * a - 2
            self._record(
                "sons_bound", bound - value,
                self._context(move, incidence=i, value=value),
            )

        if "brother_palette" in self.enabled and not rel.is_top[i]:
            # only incidences with i among their down-brothers changed
            s = rel.sets[i]
            affected = set(s.top_brothers) | set(s.down_brothers)
            for j in affected:
                db = rel.sets[j].down_brothers
                shown = {
                    state.coloring[x] for x in db if state.coloring[x] != 0
                }
                bound = len(db) // 2 + 2 * a
                self._record(
                    "brother_palette", bound - len(shown),
                    self._context(move, incidence=j, value=len(shown)),
                )

        if "availability" in self.enabled:
            full = self.palette >= self.strategy_palette
            for j, c in enumerate(state.coloring):
                if c != 0:
                    continue
                if not full and rel.is_top[j]:
                    continue
                self._record(
                    "availability", index.avail_count[j] - 1,
                    self._context(move, incidence=j, dead=True),
                )
            if not rel.is_top[i]:
                db_colors = {
                    state.coloring[x]
                    for x in rel.sets[i].down_brothers
                    if state.coloring[x] != 0
                }
                if len(db_colors) >= 4 * a - 1:
                    hits = index.color_hits[i]
                    reusable = [c for c in db_colors if hits[c] == 0]
                    # the mover's own color never blocks i's availability
                    self._record(
                        "availability", len(reusable) - 1,
                        self._context(move, incidence=i, reuse_pool=True),
                    )

        if "climb_limit" in self.enabled and trace:
            for x in set(trace.get("climb_path", ())) | set(trace.get("loop", ())):
                self._record(
                    "climb_limit", 2 - self._climbs.get(x, 0),
                    self._context(move, incidence=x),
                )

        if "discipline" in self.enabled and move.mover == ALICE:
            tag = (trace or {}).get("discipline")
            if tag == "loop":
                pass  # neutral-loop colorings are exempt by definition
            elif tag == "brother_reply":
                self.report.stat("discipline").record(0, None)
                if not neutral_before:
                    self.report.brother_reply_nonneutral += 1
            else:
                ok = neutral_before or was_active
                self._record(
                    "discipline", 0 if ok else -1,
                    self._context(move, incidence=i, tag=tag),
                )

    def on_end(self, transcript: Transcript) -> None:
        transcript.events.append(
            {
                "type": "invariant_summary",
                "checks": {
                    name: {
                        "evaluations": stat.evaluations,
                        "violations": stat.violations,
                        "worst_slack": stat.worst_slack,
                    }
                    for name, stat in sorted(self.report.checks.items())
                },
            }
        )
