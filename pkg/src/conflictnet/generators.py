"""Built-in example networks.

Two canonical semi-symmetric layouts:

* ``triangle``: three players, three bilateral battles around the cycle plus
  one battle among all three.  Sizes {2, 3} with two size-2 battles and one
  size-3 battle per player.
* ``simplex``: four players on a tetrahedron, four bilateral edge battles
  (the 4-cycle, so each player sits in exactly two), the four triangular
  faces, and one battle among all four.  Sizes {2, 3, 4} with per-player
  counts (2, 3, 1).
"""

from __future__ import annotations

from .errors import UnknownExample
from .functions import CostFunction, PowerCost, PowerProduction, ProductionFunction
from .network import Battle, ConflictNetwork

__all__ = ["generate_triangle", "generate_simplex", "generate_example", "EXAMPLE_NAMES"]

EXAMPLE_NAMES = ("triangle", "simplex")

_DEFAULT_PRODUCTION = PowerProduction(A=1.0, r=1.0)


def _per_size(
    sizes: tuple[int, ...],
    production: ProductionFunction | None,
    productions: dict[int, ProductionFunction] | None,
) -> dict[int, ProductionFunction]:
    if productions is not None:
        missing = [k for k in sizes if k not in productions]
        if missing:
            raise ValueError(f"missing production functions for sizes {missing}")
        return dict(productions)
    common = production if production is not None else _DEFAULT_PRODUCTION
    return {k: common for k in sizes}


def generate_triangle(
    v2: float = 5.0,
    v3: float = 72.0,
    production: ProductionFunction | None = None,
    productions: dict[int, ProductionFunction] | None = None,
    cost: CostFunction | None = None,
) -> ConflictNetwork:
    """Three players, battles a=(1,2), b=(2,3), c=(3,1), d=(1,2,3)."""
    per_size = _per_size((2, 3), production, productions)
    cost = cost if cost is not None else PowerCost(1.0, 2.0)
    battles = [
        Battle("a", (1, 2), v2, per_size[2]),
        Battle("b", (2, 3), v2, per_size[2]),
        Battle("c", (3, 1), v2, per_size[2]),
        Battle("d", (1, 2, 3), v3, per_size[3]),
    ]
    return ConflictNetwork(players=(1, 2, 3), battles=tuple(battles), cost=cost)


def generate_simplex(
    v2: float = 5.0,
    v3: float = 72.0,
    v4: float = 100.0,
    production: ProductionFunction | None = None,
    productions: dict[int, ProductionFunction] | None = None,
    cost: CostFunction | None = None,
) -> ConflictNetwork:
    """Four players, nine battles: 4 edges, 4 faces, 1 all-player battle."""
    per_size = _per_size((2, 3, 4), production, productions)
    cost = cost if cost is not None else PowerCost(1.0, 2.0)
    battles = [
        Battle("a1", (1, 2), v2, per_size[2]),
        Battle("a2", (2, 3), v2, per_size[2]),
        Battle("a3", (3, 4), v2, per_size[2]),
        Battle("a4", (4, 1), v2, per_size[2]),
        Battle("b1", (2, 3, 4), v3, per_size[3]),
        Battle("b2", (1, 3, 4), v3, per_size[3]),
        Battle("b3", (1, 2, 4), v3, per_size[3]),
        Battle("b4", (1, 2, 3), v3, per_size[3]),
        Battle("g", (1, 2, 3, 4), v4, per_size[4]),
    ]
    return ConflictNetwork(players=(1, 2, 3, 4), battles=tuple(battles), cost=cost)


def generate_example(name: str, **overrides) -> ConflictNetwork:
    """Build a built-in example network by name with keyword overrides.

    Raises:
        UnknownExample: the name is not one of :data:`EXAMPLE_NAMES`.
    """
    if name == "triangle":
        return generate_triangle(**overrides)
    if name == "simplex":
        return generate_simplex(**overrides)
    raise UnknownExample(f"unknown example {name!r}; known: {', '.join(EXAMPLE_NAMES)}")
