"""Deliberately broken Alice players used to prove the monitors are live.

These never ship in the library; they exist so the mutation tests can
demonstrate that every monitor is able to fire.
"""

from __future__ import annotations

from icgame.alice import StrategyAlice
from icgame.engine import AvailabilityIndex, GameState


class GreedyImpostor:
    """Claims to be the strategy but colors the lowest uncolored incidence
    with the lowest color; never climbs, never activates."""

    name = "greedy_impostor"
    last_trace = None

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        for i in range(state.graph.num_incidences):
            if state.coloring[i] == 0:
                avail = index.available(i)
                if avail:
                    return i, avail[0]
        raise RuntimeError("no legal move")


class HighestFirstImpostor:
    """Colors the highest uncolored incidence; used to keep the mutant away
    from a scripted attack zone."""

    name = "highest_impostor"
    last_trace = None

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        for i in reversed(range(state.graph.num_incidences)):
            if state.coloring[i] == 0:
                avail = index.available(i)
                if avail:
                    return i, avail[0]
        raise RuntimeError("no legal move")


class ForgetfulClimber(StrategyAlice):
    """Follows the strategy but forgets all activations between moves, so
    the same incidences get climbed over and over."""

    name = "forgetful_climber"

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        self._sync(state)
        self.active.clear()
        return super().choose(state, index)
