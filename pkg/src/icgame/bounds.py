"""Closed-form palette bounds for the incidence coloring game."""

from __future__ import annotations

from dataclasses import dataclass


class BoundError(ValueError):
    pass


def arboricity_palette_bound(max_degree: int, arboricity: int) -> int:
    """Palette size at which the activation strategy is guaranteed to win:
    floor((3*max_degree - arboricity) / 2) + 8*arboricity - 1.

    An edgeless graph (arboricity 0) needs no colors at all.
    """
    if max_degree < 0 or arboricity < 0:
        raise BoundError("max degree and arboricity must be nonnegative")
    if arboricity == 0:
        if max_degree > 0:
            raise BoundError("a graph with an edge has arboricity at least 1")
        return 0
    if max_degree == 0:
        raise BoundError("positive arboricity requires at least one edge")
    if arboricity > max_degree:
        raise BoundError("arboricity cannot exceed the maximum degree")
    return (3 * max_degree - arboricity) // 2 + 8 * arboricity - 1


@dataclass(frozen=True)
class DegenerateBounds:
    """The three degeneracy-based palette bounds with applicability flags.

    ``general`` always applies; ``high_degree`` applies when the maximum
    degree is at least 5k-1; ``low_degree`` when it is at most 5k-1.
    """

    general: int
    high_degree: int
    high_degree_applies: bool
    low_degree: int
    low_degree_applies: bool


def andres_bounds(max_degree: int, k: int) -> DegenerateBounds:
    """Andres' palette bounds for k-degenerate graphs."""
    if k < 1:
        raise BoundError("degeneracy parameter must be positive")
    return DegenerateBounds(
        general=2 * max_degree + 4 * k - 2,
        high_degree=2 * max_degree + 3 * k - 1,
        high_degree_applies=max_degree >= 5 * k - 1,
        low_degree=max_degree + 8 * k - 2,
        low_degree_applies=max_degree <= 5 * k - 1,
    )


def down_safe_palette(max_degree: int, arboricity: int) -> int:
    """Palette size above which every down incidence always has a color
    available under the activation strategy: max_degree + 5a - 2."""
    return max_degree + 5 * arboricity - 2
