"""Equilibrium solvers for semi-symmetric conflict networks.

Both regimes reduce to one monotone scalar fixed point in the per-player
total effort mu.  Under discriminatory effort (DE), for a candidate mu each
size class k has a unique battle effort ``x_k = h_k^{-1}(v_k (k-1) / (k^2
C'(mu)))``; mu must then equal ``sum_k d_k x_k``, and the left side minus the
right side of that equation is strictly increasing, so bracketed bisection
finds the unique root.  Under uniform effort (UE) the same scheme runs with a
single effort level in all battles and the marginal cost scaled by the number
of battles per player.  At either equilibrium every participant of a size-k
battle wins with probability exactly 1/k, which the payoff computation uses
directly instead of re-evaluating the contest success function.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import SemiSymmetricStructure
from .rootfind import BracketingConfig, DEFAULT_CONFIG, invert_h, solve_increasing

__all__ = ["DEResult", "UEResult", "solve_de", "solve_ue", "reverse_valuations"]


def _size_weight(k: int) -> float:
    """Marginal-benefit weight (k-1)/k^2 of a size-k battle at symmetry."""
    return (k - 1) / k**2


@dataclass(frozen=True)
class DEResult:
    """Discriminatory-effort equilibrium of a semi-symmetric structure.

    ``efforts[k]`` is the effort each player exerts in every size-k battle;
    ``total`` is the per-player total effort (also the fixed-point scalar),
    ``marginal_cost`` its C', and ``payoff`` the common per-player payoff.
    ``residuals[k]`` is the absolute first-order-condition residual of size k.
    """

    efforts: dict[int, float]
    marginal_cost: float
    total: float
    payoff: float
    residuals: dict[int, float]

    @property
    def mu(self) -> float:
        return self.total


@dataclass(frozen=True)
class UEResult:
    """Uniform-effort equilibrium of a semi-symmetric structure."""

    effort: float
    marginal_cost: float
    total: float
    payoff: float
    residual: float


def _symmetric_payoff(ss: SemiSymmetricStructure, total: float) -> float:
    value = sum(
        ss.degrees[k] * ss.prizes[k] / k for k in ss.sizes
    )
    return value - ss.cost.c(total)


def solve_de(
    ss: SemiSymmetricStructure, cfg: BracketingConfig = DEFAULT_CONFIG
) -> DEResult:
    """Solve the discriminatory-effort equilibrium.

    Construction: for a candidate total mu, each size-k effort solves
    ``h_k(x) = v_k (k-1) / (k^2 C'(mu))``; the consistency gap
    ``mu - sum_k d_k x_k(mu)`` is strictly increasing in mu and crosses zero
    exactly once, so it is bracketed from mu = 1 and bisected.
    """
    targets = {k: ss.prizes[k] * _size_weight(k) for k in ss.sizes}

    def efforts_at(mu: float) -> dict[int, float]:
        lam = ss.cost.c_prime(mu)
        return {
            k: invert_h(ss.productions[k], targets[k] / lam, cfg) for k in ss.sizes
        }

    def gap(mu: float) -> float:
        xs = efforts_at(mu)
        return mu - sum(ss.degrees[k] * xs[k] for k in ss.sizes)

    mu_root = solve_increasing(gap, 0.0, cfg)
    efforts = efforts_at(mu_root)
    # Re-anchor the reported total on the final efforts so the accounting
    # identity total = sum_k d_k x_k holds to float precision.
    total = sum(ss.degrees[k] * efforts[k] for k in ss.sizes)
    lam = ss.cost.c_prime(total)
    residuals = {
        k: abs(
            targets[k]
            * ss.productions[k].f_prime(efforts[k])
            / ss.productions[k].f(efforts[k])
            - lam
        )
        for k in ss.sizes
    }
    return DEResult(
        efforts=efforts,
        marginal_cost=lam,
        total=total,
        payoff=_symmetric_payoff(ss, total),
        residuals=residuals,
    )


def solve_ue(
    ss: SemiSymmetricStructure, cfg: BracketingConfig = DEFAULT_CONFIG
) -> UEResult:
    """Solve the uniform-effort equilibrium.

    With a single effort level x in all battles, the first-order condition
    aggregates the marginal benefits of all battle sizes:
    ``sum_k d_k v_k (k-1)/k^2 * f_k'(x)/f_k(x) = C'(mu) * D`` with
    ``mu = D x`` and ``D`` the number of battles per player.  The aggregate
    marginal benefit is strictly decreasing from +inf to 0, so its reciprocal
    is inverted by the same bracketed monotone scheme; the outer fixed point
    on mu mirrors the discriminatory case.  When production functions differ
    across sizes this size-indexed aggregate is the defining condition.
    """
    weights = {k: ss.degrees[k] * ss.prizes[k] * _size_weight(k) for k in ss.sizes}
    D = ss.total_degree
    common = ss.common_production()

    if common is not None:
        total_weight = sum(weights.values())

        def effort_at(mu: float) -> float:
            lam = ss.cost.c_prime(mu) * D
            return invert_h(common, total_weight / lam, cfg)

    else:
        def inverse_aggregate(x: float) -> float:
            benefit = sum(
                weights[k]
                * ss.productions[k].f_prime(x)
                / ss.productions[k].f(x)
                for k in ss.sizes
            )
            return 1.0 / benefit

        def effort_at(mu: float) -> float:
            lam = ss.cost.c_prime(mu) * D
            return solve_increasing(inverse_aggregate, 1.0 / lam, cfg)

    def gap(mu: float) -> float:
        return mu - D * effort_at(mu)

    mu_root = solve_increasing(gap, 0.0, cfg)
    effort = effort_at(mu_root)
    total = D * effort
    lam = ss.cost.c_prime(total) * D
    benefit = sum(
        weights[k] * ss.productions[k].f_prime(effort) / ss.productions[k].f(effort)
        for k in ss.sizes
    )
    return UEResult(
        effort=effort,
        marginal_cost=lam,
        total=total,
        payoff=_symmetric_payoff(ss, total),
        residual=abs(benefit - lam),
    )


def reverse_valuations(
    structure: SemiSymmetricStructure,
    targets: dict[int, float],
) -> dict[int, float]:
    """Prizes that make a given interior semi-symmetric profile the equilibrium.

    For target efforts ``x_k > 0`` the discriminatory first-order conditions
    pin down the prizes uniquely:

        v_k = k^2/(k-1) * h_k(x_k) * C'(sum_l d_l x_l)

    The prizes already attached to ``structure`` are ignored.

    Args:
        structure: sizes, degrees, production functions, and cost to use.
        targets: strictly positive per-size efforts keyed by battle size.

    Returns:
        Per-size prizes, all strictly positive.
    """
    missing = [k for k in structure.sizes if k not in targets]
    if missing:
        raise ValueError(f"missing target efforts for sizes {missing}")
    for k, x in targets.items():
        if not x > 0:
            raise ValueError(f"target effort for size {k} must be positive, got {x}")
    total = sum(structure.degrees[k] * targets[k] for k in structure.sizes)
    lam = structure.cost.c_prime(total)
    return {
        k: (k**2 / (k - 1)) * structure.productions[k].h(targets[k]) * lam
        for k in structure.sizes
    }
