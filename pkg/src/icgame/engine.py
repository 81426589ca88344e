"""Rules of the incidence coloring game.

Alice and Bob alternately color incidences (Alice first) so that
conflicting incidences never share a color, drawing from a fixed palette
1..k.  Alice wins when every incidence is colored; Bob wins the moment
some uncolored incidence has no color left (checked eagerly after every
move, whoever made it).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, format_graph_text, parse_graph_text
from .forests import IncidenceRelations

ALICE = "alice"
BOB = "bob"

ONGOING = "ongoing"
ALICE_WINS = "alice_wins"
BOB_WINS = "bob_wins"

TRANSCRIPT_SCHEMA = 1


class IllegalMove(ValueError):
    """A move rejected by the rules; ``reason`` is machine-readable."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}{': ' + detail if detail else ''}")
        self.reason = reason


@dataclass(frozen=True)
class MoveRecord:
    index: int
    mover: str
    incidence: int
    color: int


class GameState:
    """Mutable per-game board: partial coloring plus move history.

    Each game owns its state; nothing is shared between games, so games
    parallelize freely.  ``coloring[i]`` is 0 while incidence i is
    uncolored.
    """

    def __init__(self, graph: Graph, palette_size: int):
        if palette_size < 0:
            raise ValueError("palette size must be nonnegative")
        self.graph = graph
        self.k = palette_size
        self.coloring: list[int] = [0] * graph.num_incidences
        self.history: list[MoveRecord] = []

    @property
    def turn(self) -> str:
        return ALICE if len(self.history) % 2 == 0 else BOB

    def colored_count(self) -> int:
        return len(self.history)

    def uncolored(self) -> list[int]:
        return [i for i, c in enumerate(self.coloring) if c == 0]

    def copy(self) -> "GameState":
        dup = GameState(self.graph, self.k)
        dup.coloring = list(self.coloring)
        dup.history = list(self.history)
        return dup


def forbidden_colors_scan(state: GameState, i: int) -> set[int]:
    """Colors on incidences conflicting with i, by direct adjacency scan."""
    if state.coloring[i] != 0:
        raise IllegalMove("occupied", f"incidence {i} is already colored")
    nbrs = state.graph.incidence_neighbors()[i]
    return {state.coloring[j] for j in nbrs if state.coloring[j] != 0}


def forbidden_colors(
    state: GameState, i: int, rel: IncidenceRelations
) -> set[int]:
    """Colors forbidden for i via the oriented relation sets: fathers +
    brothers + top-sons + down-uncles for a top incidence; down-fathers +
    top-brothers + sons + uncles for a down incidence.  Must equal the
    direct adjacency scan."""
    if state.coloring[i] != 0:
        raise IllegalMove("occupied", f"incidence {i} is already colored")
    return {
        state.coloring[j]
        for j in rel.conflict_partition(i)
        if state.coloring[j] != 0
    }


def available_colors(state: GameState, i: int) -> set[int]:
    return set(range(1, state.k + 1)) - forbidden_colors_scan(state, i)


def apply_move(state: GameState, i: int, color: int, mover: str | None = None) -> GameState:
    """Validate and apply one coloring; mutates and returns the state."""
    if mover is not None and mover != state.turn:
        raise IllegalMove("wrong_turn", f"it is {state.turn}'s turn")
    if not 0 <= i < state.graph.num_incidences:
        raise IllegalMove("unknown_incidence", str(i))
    if state.coloring[i] != 0:
        raise IllegalMove("occupied", f"incidence {i} is already colored")
    if not 1 <= color <= state.k:
        raise IllegalMove("color_out_of_range", f"{color} not in 1..{state.k}")
    if color in forbidden_colors_scan(state, i):
        raise IllegalMove("color_unavailable", f"{color} conflicts at incidence {i}")
    state.coloring[i] = color
    state.history.append(
        MoveRecord(len(state.history) + 1, mover or state.turn, i, color)
    )
    return state


def status(state: GameState) -> str:
    if all(c != 0 for c in state.coloring):
        return ALICE_WINS
    for i, c in enumerate(state.coloring):
        if c == 0 and not available_colors(state, i):
            return BOB_WINS
    return ONGOING


class AvailabilityIndex:
    """Incrementally maintained availability counters for one game.

    Tracks, per incidence, how many conflicting neighbors carry each
    color and how many palette colors remain available.  Players and
    monitors consult this instead of rescanning the board.
    """

    def __init__(self, state: GameState):
        self.state = state
        g = state.graph
        self.neighbors = g.incidence_neighbors()
        self.k = state.k
        n = g.num_incidences
        self.color_hits = [[0] * (state.k + 1) for _ in range(n)]
        self.avail_count = [state.k] * n
        self.synced = 0
        self.sync()

    def sync(self) -> None:
        """Fold any unseen history into the counters."""
        hist = self.state.history
        while self.synced < len(hist):
            move = hist[self.synced]
            self.synced += 1
            for j in self.neighbors[move.incidence]:
                hits = self.color_hits[j]
                hits[move.color] += 1
                if hits[move.color] == 1:
                    self.avail_count[j] -= 1

    def available(self, i: int) -> list[int]:
        hits = self.color_hits[i]
        return [c for c in range(1, self.k + 1) if hits[c] == 0]

    def is_available(self, i: int, color: int) -> bool:
        return self.color_hits[i][color] == 0

    def dead_incidence(self) -> int | None:
        """An uncolored incidence with empty availability, if any."""
        coloring = self.state.coloring
        for i, cnt in enumerate(self.avail_count):
            if coloring[i] == 0 and cnt == 0:
                return i
        return None


@dataclass
class Transcript:
    """Replayable record of one game: header, events, outcome."""

    graph_text: str
    palette: int
    alice_name: str
    bob_name: str
    seed: int | None = None
    decomposition_dump: str | None = None
    root_policy: str | None = None
    events: list[dict] = field(default_factory=list)
    result: str = ONGOING
    final_coloring: list[int] = field(default_factory=list)

    def moves(self) -> list[dict]:
        return [e for e in self.events if e["type"] == "move"]

    def add_move(self, move: MoveRecord, graph: Graph) -> None:
        inc = graph.incidence(move.incidence)
        self.events.append(
            {
                "type": "move",
                "index": move.index,
                "mover": move.mover,
                "vertex": inc.vertex,
                "edge": inc.edge,
                "color": move.color,
            }
        )

    def to_jsonl(self) -> str:
        header = {
            "type": "header",
            "schema": TRANSCRIPT_SCHEMA,
            "graph": self.graph_text,
            "palette": self.palette,
            "alice": self.alice_name,
            "bob": self.bob_name,
            "seed": self.seed,
            "root_policy": self.root_policy,
            "decomposition": self.decomposition_dump,
        }
        tail = {
            "type": "result",
            "status": self.result,
            "moves": len(self.moves()),
            "coloring": self.final_coloring,
        }
        rows = [header, *self.events, tail]
        return "\n".join(json.dumps(r, sort_keys=True) for r in rows) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "Transcript":
        rows = [json.loads(line) for line in text.strip().splitlines()]
        if not rows or rows[0].get("type") != "header":
            raise ValueError("transcript must start with a header event")
        head = rows[0]
        t = cls(
            graph_text=head["graph"],
            palette=head["palette"],
            alice_name=head["alice"],
            bob_name=head["bob"],
            seed=head.get("seed"),
            decomposition_dump=head.get("decomposition"),
            root_policy=head.get("root_policy"),
        )
        for row in rows[1:]:
            if row["type"] == "result":
                t.result = row["status"]
                t.final_coloring = row["coloring"]
            else:
                t.events.append(row)
        return t


def replay(transcript: Transcript) -> GameState:
    """Re-apply the recorded moves; verifies legality and the recorded
    final coloring."""
    graph = parse_graph_text(transcript.graph_text)
    state = GameState(graph, transcript.palette)
    for ev in transcript.moves():
        i = graph.incidence_index(ev["vertex"], ev["edge"])
        apply_move(state, i, ev["color"], ev["mover"])
    if transcript.final_coloring and state.coloring != transcript.final_coloring:
        raise ValueError("replayed coloring does not match the recorded one")
    return state


class PlayerError(RuntimeError):
    """A player produced an illegal move; carries the culprit's name."""

    def __init__(self, culprit: str, cause: Exception):
        super().__init__(f"{culprit} played an illegal move: {cause}")
        self.culprit = culprit


def play(
    graph: Graph,
    palette: int,
    alice,
    bob,
    seed: int | None = None,
    decomposition_dump: str | None = None,
    root_policy: str | None = None,
    observers: Iterable = (),
) -> Transcript:
    """Run one full game, Alice moving first, until a terminal status.

    Players expose ``choose(state, index) -> (incidence, color)`` and may
    expose ``last_trace`` (a dict describing the reasoning behind the
    move) which is appended to the transcript.  Observers expose
    ``on_move(state, move, index, trace)`` and ``on_end(transcript)``.
    """
    state = GameState(graph, palette)
    index = AvailabilityIndex(state)
    transcript = Transcript(
        graph_text=format_graph_text(graph),
        palette=palette,
        alice_name=getattr(alice, "name", alice.__class__.__name__),
        bob_name=getattr(bob, "name", bob.__class__.__name__),
        seed=seed,
        decomposition_dump=decomposition_dump,
        root_policy=root_policy,
    )
    current = status(state)
    while current == ONGOING:
        player = alice if state.turn == ALICE else bob
        mover = state.turn
        try:
            inc, color = player.choose(state, index)
            apply_move(state, inc, color, mover)
        except IllegalMove as exc:
            raise PlayerError(mover, exc) from exc
        index.sync()
        move = state.history[-1]
        transcript.add_move(move, graph)
        trace = getattr(player, "last_trace", None)
        if trace:
            transcript.events.append(
                {"type": "trace", "move_index": move.index, **trace}
            )
        for obs in observers:
            obs.on_move(state, move, index, trace)
            drain = getattr(obs, "drain_events", None)
            if drain:
                transcript.events.extend(drain())
        if index.dead_incidence() is not None:
            current = BOB_WINS
        elif state.colored_count() == graph.num_incidences:
            current = ALICE_WINS
    transcript.result = current
    transcript.final_coloring = list(state.coloring)
    for obs in observers:
        obs.on_end(transcript)
    return transcript
