"""Opponents and exact solvers for the incidence coloring game.

Bob players of increasing strength (uniform random, a most-constraining
spoiler, and a depth-limited adversarial search), a greedy baseline for
the Alice side, a memoized minimax solver for the exact game value, and
an exact solver for the static incidence chromatic number.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .engine import ALICE, BOB, AvailabilityIndex, GameState
from .graph import Graph, GraphError
from .forests import IncidenceRelations


class RandomBob:
    """Uniform over all legal (incidence, color) pairs."""

    name = "random"
    last_trace = None

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        pairs = [
            (i, c)
            for i in range(state.graph.num_incidences)
            if state.coloring[i] == 0
            for c in index.available(i)
        ]
        return self.rng.choice(pairs)


class GreedyAlice:
    """Control strategy: lowest uncolored incidence, lowest legal color."""

    name = "greedy"
    last_trace = None

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        for i in range(state.graph.num_incidences):
            if state.coloring[i] == 0:
                avail = index.available(i)
                if avail:
                    return i, avail[0]
        raise RuntimeError("greedy player called with no legal move")


INF = 1 << 30


def _scored_moves(
    state: GameState, index: AvailabilityIndex, rel: IncidenceRelations | None
) -> list[tuple[tuple, int, int]]:
    """All uncolored incidences with their best spoiling color.

    Score is the minimum availability over uncolored incidences after the
    hypothetical move; returns (sort_key, incidence, color) triples where
    lower keys are more constraining.  Exploits that one move lowers a
    neighbor's count by at most one, so the post-move minimum is either
    the minimum away from the neighborhood or (local minimum - 0/1).
    """
    coloring = state.coloring
    counts = index.avail_count
    neighbors = index.neighbors
    uncolored = [i for i, c in enumerate(coloring) if c == 0]
    by_count = sorted(uncolored, key=lambda i: counts[i])
    out = []
    for i in uncolored:
        avail = index.available(i)
        if not avail:
            continue
        excluded = set(neighbors[i])
        excluded.add(i)
        base = INF
        for j in by_count:
            if j not in excluded:
                base = counts[j]
                break
        local = [j for j in neighbors[i] if coloring[j] == 0]
        if local:
            m_local = min(counts[j] for j in local)
            reducers = {
                c
                for j in local
                if counts[j] == m_local
                for c in avail
                if index.color_hits[j][c] == 0
            }
            pool = sorted(reducers)
            if pool and m_local - 1 < base:
                value, color = m_local - 1, pool[0]
            else:
                value, color = min(base, m_local - (1 if pool else 0)), avail[0]
        else:
            value, color = base, avail[0]
        down_ready = 0
        if rel is not None and not rel.is_top[i]:
            if all(coloring[j] != 0 for j in rel.sets[i].down_fathers):
                down_ready = -1  # prefer replies that exercise the down rules
        out.append(((value, down_ready, i, color), i, color))
    out.sort(key=lambda t: t[0])
    return out


class SpoilerBob:
    """Most-constraining heuristic: minimizes the post-move minimum
    availability; ties prefer down incidences with colored down-fathers,
    then the lowest incidence id."""

    name = "spoiler"
    last_trace = None

    def __init__(self, rel: IncidenceRelations | None = None):
        self.rel = rel

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        scored = _scored_moves(state, index, self.rel)
        if not scored:
            raise RuntimeError("spoiler called with no legal move")
        _, i, c = scored[0]
        return i, c


def _min_availability(graph: Graph, coloring: list[int], k: int) -> int:
    neighbors = graph.incidence_neighbors()
    best = INF
    for i, col in enumerate(coloring):
        if col != 0:
            continue
        used = {coloring[j] for j in neighbors[i] if coloring[j] != 0}
        best = min(best, k - len(used))
        if best == 0:
            return 0
    return best


class MinimaxBob:
    """Depth-limited adversarial search over the spoiler's shortlist with
    a greedy rescue model for the opponent; evaluates positions by the
    minimum availability (lower is better for this player)."""

    name = "minimax"
    last_trace = None

    def __init__(self, rel: IncidenceRelations | None = None, depth: int = 2, width: int = 6):
        self.rel = rel
        self.depth = depth
        self.width = width

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        scored = _scored_moves(state, index, self.rel)
        if not scored:
            raise RuntimeError("minimax bob called with no legal move")
        graph, k = state.graph, state.k
        best_val, best_move = None, None
        for _, i, c in scored[: self.width]:
            coloring = list(state.coloring)
            coloring[i] = c
            val = self._rescue_then_eval(graph, coloring, k, self.depth - 1)
            if best_val is None or val < best_val:
                best_val, best_move = val, (i, c)
        assert best_move is not None
        return best_move

    def _rescue_then_eval(
        self, graph: Graph, coloring: list[int], k: int, depth: int
    ) -> int:
        current = _min_availability(graph, coloring, k)
        if depth <= 0 or current == 0 or current == INF:
            return current
        # opponent model: color the tightest incidence with its lowest color
        neighbors = graph.incidence_neighbors()
        target, target_avail = None, None
        for i, col in enumerate(coloring):
            if col != 0:
                continue
            used = {coloring[j] for j in neighbors[i] if coloring[j] != 0}
            avail = [c for c in range(1, k + 1) if c not in used]
            if target is None or len(avail) < len(target_avail):
                target, target_avail = i, avail
        if target is None or not target_avail:
            return current
        coloring[target] = target_avail[0]
        value = self._rescue_then_eval(graph, coloring, k, depth - 1)
        coloring[target] = 0
        return value


class ScriptedPlayer:
    """Plays a fixed move list; test and replay helper.  Once the script
    is exhausted it falls back to greedy play unless ``strict``."""

    last_trace = None

    def __init__(
        self,
        moves: list[tuple[int, int]],
        name: str = "scripted",
        strict: bool = False,
    ):
        self.moves = list(moves)
        self.name = name
        self.strict = strict
        self._pos = 0

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        if self._pos < len(self.moves):
            move = self.moves[self._pos]
            self._pos += 1
            return move
        if self.strict:
            raise RuntimeError("scripted player ran out of moves")
        for i in range(state.graph.num_incidences):
            if state.coloring[i] == 0:
                avail = index.available(i)
                if avail:
                    return i, avail[0]
        raise RuntimeError("no legal move")


# ---------------------------------------------------------------------------
# exact game solver


@dataclass
class SolveResult:
    """Winner per palette size plus the minimal winning palette."""

    winners: dict[int, str]
    minimal_winning_k: int | None
    node_count: int
    elapsed: float
    non_monotone: tuple[int, ...] = ()

    def __post_init__(self):
        if self.minimal_winning_k is not None:
            assert self.winners[self.minimal_winning_k] == ALICE


class MinimaxSolver:
    """Exact winner of the incidence coloring game under optimal play.

    Positions are memoized on the coloring canonicalized by relabeling
    colors in order of first appearance along the fixed incidence order;
    the game is symmetric under color permutation, so at most one fresh
    color per incidence needs exploring.  Whose turn it is follows from
    the number of colored incidences (Alice moves first).
    """

    def __init__(self, graph: Graph, k: int, max_incidences: int = 12, max_k: int = 8):
        if graph.num_incidences > max_incidences:
            raise GraphError(
                f"solver capped at {max_incidences} incidences, "
                f"got {graph.num_incidences}"
            )
        if k > max_k:
            raise GraphError(f"solver capped at {max_k} colors, got {k}")
        self.graph = graph
        self.k = k
        self.neighbors = graph.incidence_neighbors()
        self.memo: dict[tuple[int, ...], str] = {}
        self.nodes = 0

    @staticmethod
    def canonical(coloring: tuple[int, ...]) -> tuple[int, ...]:
        relabel: dict[int, int] = {}
        out = []
        for c in coloring:
            if c == 0:
                out.append(0)
            else:
                if c not in relabel:
                    relabel[c] = len(relabel) + 1
                out.append(relabel[c])
        return tuple(out)

    def winner_from(self, coloring: tuple[int, ...]) -> str:
        key = self.canonical(coloring)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self.nodes += 1
        n = len(coloring)
        colored = sum(1 for c in coloring if c != 0)
        result: str | None = None
        if colored == n:
            result = ALICE
        else:
            for i in range(n):
                if coloring[i] != 0:
                    continue
                used = {coloring[j] for j in self.neighbors[i]} - {0}
                if len(used) >= self.k:
                    result = BOB
                    break
        if result is None:
            mover = ALICE if colored % 2 == 0 else BOB
            other = BOB if mover == ALICE else ALICE
            used_anywhere = sorted(set(coloring) - {0})
            fresh = next(
                (c for c in range(1, self.k + 1) if c not in used_anywhere), None
            )
            result = other
            for i in range(n):
                if coloring[i] != 0:
                    continue
                nbr_used = {coloring[j] for j in self.neighbors[i]} - {0}
                candidates = [c for c in used_anywhere if c not in nbr_used]
                if fresh is not None:
                    candidates.append(fresh)
                found = False
                for c in candidates:
                    child = list(coloring)
                    child[i] = c
                    if self.winner_from(tuple(child)) == mover:
                        result = mover
                        found = True
                        break
                if found:
                    break
        self.memo[key] = result
        return result

    def winner(self) -> str:
        return self.winner_from(tuple([0] * self.graph.num_incidences))

    def optimal_move(self, coloring: tuple[int, ...]) -> tuple[int, int]:
        """A move preserving the mover's win if one exists, else the first
        legal move (the position is lost anyway)."""
        colored = sum(1 for c in coloring if c != 0)
        mover = ALICE if colored % 2 == 0 else BOB
        fallback = None
        used_anywhere = sorted(set(coloring) - {0})
        fresh = next((c for c in range(1, self.k + 1) if c not in used_anywhere), None)
        for i in range(len(coloring)):
            if coloring[i] != 0:
                continue
            nbr_used = {coloring[j] for j in self.neighbors[i]} - {0}
            candidates = [c for c in used_anywhere if c not in nbr_used]
            if fresh is not None:
                candidates.append(fresh)
            for c in candidates:
                if fallback is None:
                    fallback = (i, c)
                child = list(coloring)
                child[i] = c
                if self.winner_from(tuple(child)) == mover:
                    return i, c
        if fallback is None:
            raise RuntimeError("no legal move in a non-terminal position")
        return fallback


class OptimalPlayer:
    """Plays the solver's optimal strategy for either role."""

    last_trace = None

    def __init__(self, solver: MinimaxSolver, role: str):
        self.solver = solver
        self.role = role
        self.name = f"optimal_{role}"

    def choose(self, state: GameState, index: AvailabilityIndex) -> tuple[int, int]:
        return self.solver.optimal_move(tuple(state.coloring))


def minimax_wins(
    graph: Graph, k: int, max_incidences: int = 12, max_k: int = 8
) -> str:
    """Exact winner with palette size k under optimal play by both sides."""
    return MinimaxSolver(graph, k, max_incidences, max_k).winner()


def exact_ig(
    graph: Graph,
    k_range: tuple[int, int] | None = None,
    max_incidences: int = 12,
    max_k: int | None = None,
) -> SolveResult:
    """Win vector over a palette range plus the minimal winning palette.

    The default range brackets the known envelope ceil(3D/2)..3D-1 with
    one extra palette on each side so bracket violations surface as
    defects rather than silently truncated ranges.  Monotonicity in k is
    *not* assumed; the full vector is reported and any palette where a
    win is followed by a loss is flagged.
    """
    d = graph.max_degree
    if k_range is None:
        lo = max(1, -(-3 * d // 2) - 1)
        hi = 3 * d
    else:
        lo, hi = k_range
    if max_k is None:
        max_k = max(8, hi)
    winners: dict[int, str] = {}
    nodes = 0
    started = time.perf_counter()
    for k in range(lo, hi + 1):
        solver = MinimaxSolver(graph, k, max_incidences, max_k)
        winners[k] = solver.winner()
        nodes += solver.nodes
    minimal = next((k for k in sorted(winners) if winners[k] == ALICE), None)
    non_monotone = tuple(
        k
        for k in sorted(winners)
        if k - 1 in winners and winners[k - 1] == ALICE and winners[k] == BOB
    )
    return SolveResult(
        winners=winners,
        minimal_winning_k=minimal,
        node_count=nodes,
        elapsed=time.perf_counter() - started,
        non_monotone=non_monotone,
    )


# ---------------------------------------------------------------------------
# static incidence chromatic number


def _feasible_incidence_coloring(graph: Graph, k: int) -> bool:
    """Backtracking feasibility of a k-incidence-coloring.  Incidences are
    ordered densest-conflicts-first and a fresh color is only ever tried
    once per position (color-symmetry pruning)."""
    n = graph.num_incidences
    neighbors = graph.incidence_neighbors()
    order = sorted(range(n), key=lambda i: -len(neighbors[i]))
    pos_of = {inc: p for p, inc in enumerate(order)}
    assigned = [0] * n

    def backtrack(pos: int, used: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        nbr_used = {assigned[j] for j in neighbors[i] if pos_of[j] < pos}
        limit = min(k, used + 1)
        for c in range(1, limit + 1):
            if c in nbr_used:
                continue
            assigned[i] = c
            if backtrack(pos + 1, max(used, c)):
                return True
        assigned[i] = 0
        return False

    return backtrack(0, 0)


def static_chi_i(graph: Graph, max_incidences: int = 24) -> int:
    """Exact incidence chromatic number by iterative-deepening
    backtracking; the failed search at the returned value minus one is the
    infeasibility certificate."""
    if graph.num_incidences > max_incidences:
        raise GraphError(
            f"chromatic solver capped at {max_incidences} incidences, "
            f"got {graph.num_incidences}"
        )
    if graph.m == 0:
        return 0
    k = graph.max_degree + 1  # the incidences around a max-degree vertex
    while not _feasible_incidence_coloring(graph, k):
        k += 1
    return k
