"""Conflict network domain types and the payoff machinery.

A network is a set of players, a set of multi-participant battles with prizes
and per-battle production functions, and one shared cost function on each
player's total effort.  Winning probabilities follow the logit form
``p_i = f(x_i) / sum_j f(x_j)`` with the uniform convention ``1/n`` when every
participant exerts zero effort.  All types are immutable after construction
and every operation is a pure function, so concurrent use needs no locking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import UnknownPlayer
from .functions import CostFunction, ProductionFunction

PlayerId = Hashable

__all__ = [
    "Battle",
    "ConflictNetwork",
    "EffortProfile",
    "SemiSymmetricStructure",
    "SemiSymmetryViolation",
    "SemiSymmetryViolations",
    "winning_probabilities",
    "payoff",
    "check_semi_symmetry",
]


@dataclass(frozen=True)
class Battle:
    """A single contest over one prize among two or more players."""

    id: str
    participants: tuple[PlayerId, ...]
    prize: float
    production: ProductionFunction

    def __post_init__(self):
        object.__setattr__(self, "participants", tuple(self.participants))
        if len(set(self.participants)) < 2:
            raise ValueError(
                f"battle {self.id!r} needs at least 2 distinct participants"
            )
        if len(set(self.participants)) != len(self.participants):
            raise ValueError(f"battle {self.id!r} lists a participant twice")
        if not self.prize > 0:
            raise ValueError(f"battle {self.id!r} prize must be positive")

    @property
    def size(self) -> int:
        return len(self.participants)


@dataclass(frozen=True)
class ConflictNetwork:
    """Players, battles, and one shared cost function.

    Incidence data (which battles a player attends) is derived once at
    construction time.
    """

    players: tuple[PlayerId, ...]
    battles: tuple[Battle, ...]
    cost: CostFunction
    _battles_by_player: dict = field(init=False, repr=False, compare=False)
    _battle_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "battles", tuple(self.battles))
        if len(set(self.players)) != len(self.players):
            raise ValueError("duplicate player ids")
        ids = [b.id for b in self.battles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate battle ids")
        player_set = set(self.players)
        by_player: dict[PlayerId, list[Battle]] = {p: [] for p in self.players}
        for battle in self.battles:
            for p in battle.participants:
                if p not in player_set:
                    raise ValueError(
                        f"battle {battle.id!r} references unknown player {p!r}"
                    )
                by_player[p].append(battle)
        idle = [p for p, bs in by_player.items() if not bs]
        if idle:
            raise ValueError(f"players in no battle: {idle}")
        object.__setattr__(
            self, "_battles_by_player", {p: tuple(bs) for p, bs in by_player.items()}
        )
        object.__setattr__(self, "_battle_index", {b.id: b for b in self.battles})

    def battles_of(self, player: PlayerId) -> tuple[Battle, ...]:
        try:
            return self._battles_by_player[player]
        except KeyError:
            raise UnknownPlayer(f"unknown player {player!r}") from None

    def battle(self, battle_id: str) -> Battle:
        return self._battle_index[battle_id]

    @property
    def max_prize(self) -> float:
        return max(b.prize for b in self.battles)


@dataclass(frozen=True)
class EffortProfile:
    """Strategy profile: nonnegative effort for every (player, battle) slot."""

    efforts: Mapping[tuple[PlayerId, str], float]

    def __post_init__(self):
        object.__setattr__(self, "efforts", dict(self.efforts))
        for key, x in self.efforts.items():
            if x < 0:
                raise ValueError(f"negative effort {x} at {key}")

    @classmethod
    def constant(cls, network: ConflictNetwork, value: float) -> "EffortProfile":
        return cls(
            {
                (p, b.id): value
                for p in network.players
                for b in network.battles_of(p)
            }
        )

    def validate_for(self, network: ConflictNetwork) -> None:
        """Require entries for exactly the incidence pairs of the network."""
        expected = {
            (p, b.id) for p in network.players for b in network.battles_of(p)
        }
        got = set(self.efforts)
        if got != expected:
            missing = expected - got
            extra = got - expected
            raise ValueError(
                f"profile does not match network incidence; "
                f"missing={sorted(map(str, missing))}, extra={sorted(map(str, extra))}"
            )

    def effort(self, player: PlayerId, battle_id: str) -> float:
        return self.efforts[(player, battle_id)]

    def total(self, player: PlayerId) -> float:
        return sum(x for (p, _), x in self.efforts.items() if p == player)

    def battle_efforts(self, battle: Battle) -> list[float]:
        return [self.efforts[(p, battle.id)] for p in battle.participants]

    def max_norm_distance(self, other: "EffortProfile") -> float:
        keys = set(self.efforts) | set(other.efforts)
        return max(
            abs(self.efforts.get(k, 0.0) - other.efforts.get(k, 0.0)) for k in keys
        )


def winning_probabilities(battle: Battle, efforts: Iterable[float]) -> np.ndarray:
    """Per-participant winning probabilities of one battle.

    Probabilities are ``f(x_i) / sum_j f(x_j)``; if every effort is zero the
    battle is a fair lottery at ``1/n``.
    """
    efforts = np.asarray(list(efforts), dtype=float)
    if efforts.shape != (battle.size,):
        raise ValueError(
            f"expected {battle.size} efforts for battle {battle.id!r}, "
            f"got {efforts.shape}"
        )
    if np.any(efforts < 0):
        raise ValueError("efforts must be nonnegative")
    scores = np.array([battle.production.f(float(x)) for x in efforts])
    total = scores.sum()
    if total == 0.0:
        return np.full(battle.size, 1.0 / battle.size)
    return scores / total


def payoff(network: ConflictNetwork, profile: EffortProfile, player: PlayerId) -> float:
    """Expected payoff: prize-weighted winning probabilities minus cost."""
    if player not in network._battles_by_player:
        raise UnknownPlayer(f"unknown player {player!r}")
    value = 0.0
    total_effort = 0.0
    for battle in network.battles_of(player):
        own = profile.effort(player, battle.id)
        total_effort += own
        own_score = battle.production.f(own)
        score_sum = sum(
            battle.production.f(profile.effort(p, battle.id))
            for p in battle.participants
        )
        if score_sum == 0.0:
            value += battle.prize / battle.size
        else:
            value += battle.prize * own_score / score_sum
    return value - network.cost.c(total_effort)


# ---------------------------------------------------------------------------
# Semi-symmetry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemiSymmetricStructure:
    """Size-indexed summary of a semi-symmetric conflict network.

    Holds the battle sizes present, the per-player count ``d_k`` of size-k
    battles, and the size-determined prizes and production functions, plus the
    shared cost function.  This is all the structured solvers need; the
    underlying network layout is irrelevant to them.
    """

    sizes: tuple[int, ...]
    degrees: dict[int, int]
    prizes: dict[int, float]
    productions: dict[int, ProductionFunction]
    cost: CostFunction

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(sorted(self.sizes)))
        if not self.sizes:
            raise ValueError("structure needs at least one battle size")
        for k in self.sizes:
            if k < 2:
                raise ValueError(f"battle size must be >= 2, got {k}")
            if self.degrees.get(k, 0) < 1:
                raise ValueError(f"degree d_{k} must be >= 1")
            if not self.prizes.get(k, 0.0) > 0:
                raise ValueError(f"prize v_{k} must be positive")
            if k not in self.productions:
                raise ValueError(f"missing production function for size {k}")

    @property
    def total_degree(self) -> int:
        """Number of battles each player participates in."""
        return sum(self.degrees[k] for k in self.sizes)

    def common_production(self) -> ProductionFunction | None:
        """The shared production function, or None if sizes differ."""
        functions = [self.productions[k] for k in self.sizes]
        first = functions[0]
        return first if all(g == first for g in functions[1:]) else None

    def with_prizes(self, prizes: Mapping[int, float]) -> "SemiSymmetricStructure":
        """Copy of this structure with replaced per-size prizes."""
        return SemiSymmetricStructure(
            sizes=self.sizes,
            degrees=dict(self.degrees),
            prizes={k: float(prizes[k]) for k in self.sizes},
            productions=dict(self.productions),
            cost=self.cost,
        )


@dataclass(frozen=True)
class SemiSymmetryViolation:
    kind: str  # "degree" | "prize" | "production"
    size: int
    message: str


@dataclass(frozen=True)
class SemiSymmetryViolations:
    """Every way a network fails to be semi-symmetric; data, not an error."""

    violations: tuple[SemiSymmetryViolation, ...]

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


def check_semi_symmetry(
    network: ConflictNetwork,
) -> SemiSymmetricStructure | SemiSymmetryViolations:
    """Classify a network as semi-symmetric or list every violated condition.

    Semi-symmetry requires that every player participates in the same number
    of size-k battles for each size k, and that prize and production function
    are constant within each size class.
    """
    sizes = sorted({b.size for b in network.battles})
    violations: list[SemiSymmetryViolation] = []

    degrees: dict[int, int] = {}
    for k in sizes:
        counts = {
            p: sum(1 for b in network.battles_of(p) if b.size == k)
            for p in network.players
        }
        reference = counts[network.players[0]]
        mismatched = {p: c for p, c in counts.items() if c != reference}
        if mismatched:
            for p, c in mismatched.items():
                violations.append(
                    SemiSymmetryViolation(
                        kind="degree",
                        size=k,
                        message=(
                            f"player {p!r} attends {c} size-{k} battles, "
                            f"player {network.players[0]!r} attends {reference}"
                        ),
                    )
                )
        degrees[k] = reference

    prizes: dict[int, float] = {}
    productions: dict[int, ProductionFunction] = {}
    for k in sizes:
        class_battles = [b for b in network.battles if b.size == k]
        distinct_prizes = sorted({b.prize for b in class_battles})
        if len(distinct_prizes) > 1:
            violations.append(
                SemiSymmetryViolation(
                    kind="prize",
                    size=k,
                    message=f"size-{k} prizes not constant: {distinct_prizes}",
                )
            )
        prizes[k] = class_battles[0].prize
        distinct_productions = []
        for b in class_battles:
            if b.production not in distinct_productions:
                distinct_productions.append(b.production)
        if len(distinct_productions) > 1:
            violations.append(
                SemiSymmetryViolation(
                    kind="production",
                    size=k,
                    message=(
                        f"size-{k} production functions not constant: "
                        f"{distinct_productions}"
                    ),
                )
            )
        productions[k] = class_battles[0].production

    if violations:
        return SemiSymmetryViolations(tuple(violations))
    if any(d < 1 for d in degrees.values()):
        # Unreachable for a valid network (each size occurs in some battle),
        # kept as a guard for the structure invariant.
        return SemiSymmetryViolations(
            tuple(
                SemiSymmetryViolation("degree", k, f"zero degree for size {k}")
                for k, d in degrees.items()
                if d < 1
            )
        )
    return SemiSymmetricStructure(
        sizes=tuple(sizes),
        degrees=degrees,
        prizes=prizes,
        productions=productions,
        cost=network.cost,
    )
