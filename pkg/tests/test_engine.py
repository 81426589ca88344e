"""Game rules: legality, forbidden sets, status, play loop, transcripts."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icgame.engine import (
    ALICE,
    ALICE_WINS,
    BOB,
    BOB_WINS,
    ONGOING,
    AvailabilityIndex,
    GameState,
    IllegalMove,
    PlayerError,
    Transcript,
    apply_move,
    available_colors,
    forbidden_colors,
    forbidden_colors_scan,
    play,
    replay,
    status,
)
from icgame.forests import decompose, relations
from icgame.graph import Graph, build_graph, path, star
from icgame.opponents import RandomBob, ScriptedPlayer
from icgame.alice import StrategyAlice

from .conftest import graphs, random_partial_state


class TestForbiddenAndAvailable:
    def test_empty_coloring_nothing_forbidden(self):
        g = path(3)
        state = GameState(g, 5)
        rel = relations(decompose(g))
        for i in range(g.num_incidences):
            assert forbidden_colors(state, i, rel) == set()
            assert available_colors(state, i) == {1, 2, 3, 4, 5}

    def test_same_edge_forbidden(self):
        g = path(2)
        state = GameState(g, 2)
        apply_move(state, 0, 1)
        assert forbidden_colors_scan(state, 1) == {1}
        assert available_colors(state, 1) == {2}

    def test_forbidden_rejects_colored_incidence(self):
        g = path(2)
        state = GameState(g, 2)
        apply_move(state, 0, 1)
        with pytest.raises(IllegalMove, match="occupied"):
            forbidden_colors_scan(state, 0)

    @given(graphs(max_vertices=8, min_edges=1), st.integers(0, 10**6))
    @settings(max_examples=120, deadline=None)
    def test_relation_formula_equals_scan(self, g, seed):
        rng = random.Random(seed)
        rel = relations(decompose(g))
        state = random_partial_state(g, rng)
        for i in range(g.num_incidences):
            if state.coloring[i] == 0:
                assert forbidden_colors(state, i, rel) == forbidden_colors_scan(
                    state, i
                )


class TestApplyMove:
    def test_legal_move_flips_turn(self):
        state = GameState(path(2), 2)
        assert state.turn == ALICE
        apply_move(state, 0, 1, ALICE)
        assert state.turn == BOB
        assert state.coloring[0] == 1

    def test_occupied_rejected(self):
        state = GameState(path(2), 2)
        apply_move(state, 0, 1)
        with pytest.raises(IllegalMove, match="occupied"):
            apply_move(state, 0, 2)

    def test_conflicting_color_rejected(self):
        state = GameState(path(2), 2)
        apply_move(state, 0, 1)
        with pytest.raises(IllegalMove, match="color_unavailable"):
            apply_move(state, 1, 1)

    def test_out_of_range_color_rejected(self):
        state = GameState(path(2), 2)
        with pytest.raises(IllegalMove, match="color_out_of_range"):
            apply_move(state, 0, 3)

    def test_wrong_turn_rejected(self):
        state = GameState(path(2), 2)
        with pytest.raises(IllegalMove, match="wrong_turn"):
            apply_move(state, 0, 1, BOB)

    @given(graphs(max_vertices=7, min_edges=1), st.integers(0, 10**6))
    @settings(max_examples=100, deadline=None)
    def test_properness_preserved_by_random_legal_play(self, g, seed):
        from icgame.graph import is_valid_incidence_coloring

        rng = random.Random(seed)
        state = GameState(g, rng.randint(1, 8))
        while True:
            moves = [
                (i, c)
                for i in range(g.num_incidences)
                if state.coloring[i] == 0
                for c in available_colors(state, i)
            ]
            if not moves:
                break
            apply_move(state, *rng.choice(moves))
            colored = {
                i: c for i, c in enumerate(state.coloring) if c != 0
            }
            assert is_valid_incidence_coloring(g, colored)


class TestStatus:
    def test_total_coloring_alice_wins(self):
        state = GameState(path(2), 2)
        apply_move(state, 0, 1)
        apply_move(state, 1, 2)
        assert status(state) == ALICE_WINS

    def test_dead_incidence_bob_wins(self):
        state = GameState(path(2), 1)
        apply_move(state, 0, 1)
        assert status(state) == BOB_WINS

    def test_edgeless_is_immediate_alice_win(self):
        assert status(GameState(Graph(4, []), 3)) == ALICE_WINS

    def test_ongoing(self):
        assert status(GameState(path(2), 2)) == ONGOING


class TestAvailabilityIndex:
    @given(graphs(max_vertices=7, min_edges=1), st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_counts_match_scan(self, g, seed):
        rng = random.Random(seed)
        state = GameState(g, 6)
        index = AvailabilityIndex(state)
        for _ in range(g.num_incidences):
            moves = [
                (i, c)
                for i in range(g.num_incidences)
                if state.coloring[i] == 0
                for c in available_colors(state, i)
            ]
            if not moves:
                break
            apply_move(state, *rng.choice(moves))
            index.sync()
            for i in range(g.num_incidences):
                if state.coloring[i] == 0:
                    expected = sorted(available_colors(state, i))
                    assert index.available(i) == expected
                    assert index.avail_count[i] == len(expected)


class TestPlay:
    def test_p2_any_legal_players_alice_wins(self):
        g = path(2)
        rel = relations(decompose(g))
        t = play(g, 2, StrategyAlice(rel), RandomBob(1))
        assert t.result == ALICE_WINS
        assert len(t.moves()) == 2

    def test_p2_single_color_bob_wins_after_first_move(self):
        g = path(2)
        rel = relations(decompose(g))
        t = play(g, 1, StrategyAlice(rel), RandomBob(1))
        assert t.result == BOB_WINS
        assert len(t.moves()) == 1

    def test_alice_win_uses_all_incidences(self):
        g = star(3)
        rel = relations(decompose(g))
        t = play(g, 12, StrategyAlice(rel), RandomBob(3))
        assert t.result == ALICE_WINS
        assert len(t.moves()) == g.num_incidences

    def test_illegal_player_move_identifies_culprit(self):
        g = path(2)
        bad_bob = ScriptedPlayer([(0, 1)], name="bad")  # occupied after Alice
        rel = relations(decompose(g))
        with pytest.raises(PlayerError) as err:
            play(g, 3, StrategyAlice(rel), bad_bob)
        assert err.value.culprit == BOB

    def test_transcript_round_trip_and_replay(self):
        g = star(4)
        rel = relations(decompose(g))
        t = play(g, 12, StrategyAlice(rel), RandomBob(9), seed=9)
        text = t.to_jsonl()
        back = Transcript.from_jsonl(text)
        assert back.to_jsonl() == text
        final = replay(back)
        assert final.coloring == t.final_coloring

    def test_replay_detects_tampering(self):
        g = path(2)
        rel = relations(decompose(g))
        t = play(g, 2, StrategyAlice(rel), RandomBob(0))
        t.final_coloring[0] = 99
        with pytest.raises(ValueError, match="does not match"):
            replay(t)
