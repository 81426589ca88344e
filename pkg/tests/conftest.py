"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from icgame.engine import GameState, available_colors
from icgame.graph import Graph, build_graph


@st.composite
def graphs(draw, max_vertices: int = 8, min_edges: int = 0):
    """Random simple graphs with at least ``min_edges`` edges."""
    n = draw(st.integers(min_value=max(2, 1 + min_edges), max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, min_size=min_edges,
                 max_size=len(pairs))
    )
    return build_graph(n, chosen)


def random_partial_state(
    g: Graph, rng: random.Random, palette: int | None = None
) -> GameState:
    """A legal partial position reached by random proper colorings."""
    from icgame.engine import apply_move

    k = palette if palette is not None else rng.randint(1, 2 * max(1, g.max_degree) + 2)
    state = GameState(g, k)
    order = list(range(g.num_incidences))
    rng.shuffle(order)
    for i in order[: rng.randint(0, g.num_incidences)]:
        legal = sorted(available_colors(state, i))
        if legal:
            apply_move(state, i, rng.choice(legal))
    return state


@pytest.fixture(scope="session")
def atlas_connected():
    """All connected graphs on 2..7 vertices (exhaustive up to isomorphism)."""
    nx = pytest.importorskip("networkx")
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for ag in graph_atlas_g():
        n = ag.number_of_nodes()
        if n < 2 or n > 7 or ag.number_of_edges() == 0 or not nx.is_connected(ag):
            continue
        mapping = {v: i for i, v in enumerate(sorted(ag.nodes()))}
        out.append(
            build_graph(n, [(mapping[u], mapping[v]) for u, v in ag.edges()])
        )
    return out
