"""Alice's activation strategy over an oriented forest decomposition.

Alice keeps a set of *active* incidences and marks how often each one was
climbed.  An uncolored incidence is *neutral* when all of its fathers are
colored.  Her move selection:

* opening move: color a neutral incidence if one exists, else make a
  neutral-loop move;
* when Bob has just colored a down incidence whose down-fathers are all
  colored: color one of its uncolored down-brothers; failing that, color
  a neutral or active incidence, or fall back to a neutral-loop move;
* after any other Bob move: climb the incidence Bob colored.

Climbing an incidence colors it if it is active; otherwise it activates
it and continues to an uncolored down-father (or, when the down-fathers
are exhausted, an uncolored top-father).  When an incidence with fully
colored fathers is reached, a neutral or active incidence is colored, or
a neutral-loop move is made.  A neutral-loop move chases uncolored
fathers from the lowest uncolored incidence until the chain revisits
itself, activates the whole loop, and colors its lowest member.

Color choice: a down incidence whose colored down-brothers already show
at least 4a-1 distinct colors is recolored from that palette (lowest
available member); every other incidence gets the lowest available
color.  Ties everywhere are broken by (edge id, top-before-down) order.
"""

from __future__ import annotations

from .engine import ALICE, AvailabilityIndex, GameState
from .forests import IncidenceRelations


class StrategyFailure(RuntimeError):
    """Alice has no legal color for the incidence her rules selected."""


class BrotherColorMiss(StrategyFailure):
    """A down incidence showed >= 4a-1 brother colors but none of them was
    available; the strategy's color-reuse guarantee failed."""


class StrategyAlice:
    """Deterministic activation-strategy player for the coloring side."""

    name = "strategy"

    def __init__(self, rel: IncidenceRelations, strict_color_rule: bool = False):
        self.rel = rel
        self.strict_color_rule = strict_color_rule
        self.active: set[int] = set()
        self.climb_count: dict[int, int] = {}
        n = rel.graph.num_incidences
        self.uncolored_father_count = [len(rel.sets[i].fathers) for i in range(n)]
        self._synced = 0
        self.last_trace: dict | None = None

    # -- bookkeeping -------------------------------------------------------

    def _sync(self, state: GameState) -> None:
        """Fold unseen moves (both players') into the activation state."""
        while self._synced < len(state.history):
            move = state.history[self._synced]
            self._synced += 1
            self.active.discard(move.incidence)
            s = self.rel.sets[move.incidence]
            for son in s.sons:
                self.uncolored_father_count[son] -= 1

    def neutral_set(self, state: GameState) -> list[int]:
        """Uncolored incidences with every father colored, strategy order."""
        return [
            i
            for i in self.rel.strategy_order
            if state.coloring[i] == 0 and self.uncolored_father_count[i] == 0
        ]

    def _first(self, state: GameState, candidates) -> int | None:
        """Lowest uncolored candidate in (edge, top-before-down) order."""
        rank = self.rel.strategy_rank
        best = None
        for i in candidates:
            if state.coloring[i] == 0 and (best is None or rank[i] < rank[best]):
                best = i
        return best

    def _neutral_or_active(self, state: GameState) -> tuple[int, str] | None:
        for i in self.neutral_set(state):
            return i, "neutral"
        act = self._first(state, self.active)
        if act is not None:
            return act, "active"
        return None

    # -- move selection ----------------------------------------------------

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        self._sync(state)
        assert state.turn == ALICE, "strategy player moves on Alice's turn only"
        if not state.history:
            return self._opening(state, index)
        last = state.history[-1]
        rel = self.rel
        if not rel.is_top[last.incidence] and all(
            state.coloring[j] != 0 for j in rel.sets[last.incidence].down_fathers
        ):
            return self._brother_reply(state, index, last.incidence)
        return self._climb(state, index, last.incidence)

    def _opening(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        neutral = self.neutral_set(state)
        if neutral:
            target = neutral[0]
            color, pool = self._choose_color(state, index, target)
            self.last_trace = {
                "rule": "opening",
                "target": target,
                "discipline": "neutral",
                "color_pool": pool,
            }
            return target, color
        return self._neutral_loop(state, index, rule="opening")

    def _brother_reply(
        self, state: GameState, index: AvailabilityIndex, bob_inc: int
    ) -> tuple[int, int]:
        target = self._first(state, self.rel.sets[bob_inc].down_brothers)
        if target is not None:
            color, pool = self._choose_color(state, index, target)
            self.last_trace = {
                "rule": "brother_reply",
                "target": target,
                "discipline": "brother_reply",
                "neutral": self.uncolored_father_count[target] == 0,
                "color_pool": pool,
            }
            return target, color
        found = self._neutral_or_active(state)
        if found is not None:
            target, discipline = found
            color, pool = self._choose_color(state, index, target)
            self.last_trace = {
                "rule": "fallback",
                "target": target,
                "discipline": discipline,
                "color_pool": pool,
            }
            return target, color
        return self._neutral_loop(state, index, rule="fallback")

    def _climb(
        self, state: GameState, index: AvailabilityIndex, start: int
    ) -> tuple[int, int]:
        rel = self.rel
        path = [start]
        activated: list[int] = []
        j = start
        while True:
            self.climb_count[j] = self.climb_count.get(j, 0) + 1
            if state.coloring[j] == 0:
                if j in self.active:
                    color, pool = self._choose_color(state, index, j)
                    self.last_trace = {
                        "rule": "climb",
                        "target": j,
                        "discipline": "active",
                        "climb_path": path,
                        "activated": activated,
                        "color_pool": pool,
                    }
                    return j, color
                self.active.add(j)
                activated.append(j)
            s = rel.sets[j]
            nxt = self._first(state, s.down_fathers)
            if nxt is None:
                nxt = self._first(state, s.top_fathers)
            if nxt is None:
                # fathers exhausted: color a neutral or active incidence
                found = self._neutral_or_active(state)
                if found is not None:
                    target, discipline = found
                    color, pool = self._choose_color(state, index, target)
                    self.last_trace = {
                        "rule": "climb",
                        "target": target,
                        "discipline": discipline,
                        "climb_path": path,
                        "activated": activated,
                        "color_pool": pool,
                    }
                    return target, color
                return self._neutral_loop(
                    state, index, rule="climb", climb_path=path, activated=activated
                )
            j = nxt
            path.append(j)

    def _neutral_loop(
        self,
        state: GameState,
        index: AvailabilityIndex,
        rule: str,
        climb_path: list[int] | None = None,
        activated: list[int] | None = None,
    ) -> tuple[int, int]:
        """Father-chasing loop move; requires no neutral and no active
        uncolored incidence.  Always finds a loop by finiteness."""
        rel = self.rel
        start = self._first(state, range(state.graph.num_incidences))
        assert start is not None, "neutral loop needs an uncolored incidence"
        pos: dict[int, int] = {}
        chain: list[int] = []
        j = start
        while j not in pos:
            pos[j] = len(chain)
            chain.append(j)
            s = rel.sets[j]
            nxt = self._first(state, s.down_fathers)
            if nxt is None:
                nxt = self._first(state, s.top_fathers)
            assert nxt is not None, (
                "chain stuck: an uncolored incidence with colored fathers "
                "contradicts the no-neutral precondition"
            )
            j = nxt
        loop = chain[pos[j]:]
        for x in loop:
            self.climb_count[x] = self.climb_count.get(x, 0) + 1
            self.active.add(x)
        rank = rel.strategy_rank
        target = min(loop, key=lambda x: rank[x])
        color, pool = self._choose_color(state, index, target)
        self.last_trace = {
            "rule": rule,
            "loop": loop,
            "target": target,
            "discipline": "loop",
            "color_pool": pool,
        }
        if climb_path:
            self.last_trace["climb_path"] = climb_path
        if activated:
            self.last_trace["activated"] = activated
        return target, color

    # -- color choice ------------------------------------------------------

    def _choose_color(
        self, state: GameState, index: AvailabilityIndex, i: int
    ) -> tuple[int, str]:
        avail = index.available(i)
        if not avail:
            raise StrategyFailure(
                f"no color available for incidence {i} (palette {state.k})"
            )
        rel = self.rel
        if not rel.is_top[i]:
            brother_colors = {
                state.coloring[j]
                for j in rel.sets[i].down_brothers
                if state.coloring[j] != 0
            }
            if len(brother_colors) >= 4 * rel.forest_count - 1:
                pool = [c for c in avail if c in brother_colors]
                if pool:
                    return pool[0], "brothers"
                if self.strict_color_rule:
                    raise BrotherColorMiss(
                        f"incidence {i}: {len(brother_colors)} brother colors, "
                        "none available"
                    )
                return avail[0], "brothers_missed"
        return avail[0], "lowest"


def neutral_set(state: GameState, rel: IncidenceRelations) -> list[int]:
    """Stateless view of the neutral incidences of a position."""
    out = []
    for i in rel.strategy_order:
        if state.coloring[i] != 0:
            continue
        if all(state.coloring[j] != 0 for j in rel.sets[i].fathers):
            out.append(i)
    return out
