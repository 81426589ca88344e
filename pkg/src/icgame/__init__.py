"""Incidence coloring game: engine, activation strategy, exact solvers,
invariant monitors, campaign verifier, and an interactive session service.
"""

from .graph import (
    Graph,
    GraphError,
    Incidence,
    arboricity_oracle,
    build_graph,
    degeneracy,
    full_subdivision,
    generate,
    incidence_coloring_to_subdivision,
    is_strong_edge_coloring,
    is_valid_incidence_coloring,
    parse_graph_text,
    format_graph_text,
)
from .forests import (
    IncidenceRelations,
    OrientedDecomposition,
    decompose,
    decompose_into_forests,
    relations,
    root_and_orient,
)
from .engine import (
    ALICE,
    ALICE_WINS,
    BOB,
    BOB_WINS,
    ONGOING,
    GameState,
    IllegalMove,
    Transcript,
    apply_move,
    available_colors,
    forbidden_colors,
    forbidden_colors_scan,
    play,
    replay,
    status,
)
from .alice import StrategyAlice, StrategyFailure, neutral_set
from .opponents import (
    GreedyAlice,
    MinimaxBob,
    MinimaxSolver,
    OptimalPlayer,
    RandomBob,
    SolveResult,
    SpoilerBob,
    exact_ig,
    minimax_wins,
    static_chi_i,
)
from .bounds import andres_bounds, arboricity_palette_bound, down_safe_palette
from .monitors import InvariantReport, MonitorSuite
from .campaign import ExperimentConfig, InstanceSpec, run_campaign, write_outputs

__version__ = "0.1.0"
