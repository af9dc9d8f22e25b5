"""Curvature classification and regime comparison.

The curvature of the inverse semi-elasticity ``h = f / f'`` decides how the
two effort regimes compare: convex h means discriminatory effort (DE) yields
at most the uniform-effort (UE) total and at least the UE payoff, concave h
the reverse, and linear h (exactly the power families) makes the regimes
equivalent.  Classification is analytic per family, cross-checked by sampled
midpoint-convexity defects of h and the sign of

    2 f f'' f'' - f' f' f'' - f f' f'''

which is h'' times the positive quantity f'^3.  Numerical third derivatives
are never used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionViolation
from .equilibrium import DEResult, UEResult, solve_de, solve_ue
from .functions import PowerCost, PowerProduction, ProductionFunction
from .network import SemiSymmetricStructure
from .rootfind import BracketingConfig, DEFAULT_CONFIG

__all__ = [
    "CurvatureVerdict",
    "ComparisonReport",
    "NeutralityReport",
    "classify_h",
    "compare_regimes",
    "neutrality_check",
    "tullock_closed_form_total",
    "NEUTRALITY_TOL",
]

# Relative total-effort gap below which the two regimes count as equal; one
# order above the solver residual tolerance to avoid false verdicts from
# root-finding error.
NEUTRALITY_TOL = 1e-6


@dataclass(frozen=True)
class CurvatureVerdict:
    """Curvature of h with the evidence that produced it.

    ``verdict`` is one of ``"convex"``, ``"concave"``, ``"linear"`` or
    ``"indeterminate"``.  ``max_signed_defect`` is the extreme sampled
    midpoint defect ``h(m) - (h(a) + h(b))/2`` (negative for convex h);
    ``third_derivative_sign`` is the sign pattern of the analytic criterion
    over the sample grid.
    """

    verdict: str
    max_signed_defect: float
    third_derivative_sign: str

    @property
    def is_convex(self) -> bool:
        return self.verdict == "convex"

    @property
    def is_concave(self) -> bool:
        return self.verdict == "concave"

    @property
    def is_linear(self) -> bool:
        return self.verdict == "linear"


def _third_derivative_pattern(pf: ProductionFunction, xs: np.ndarray, tol: float) -> str:
    """Sign pattern of 2 f f''^2 - f'^2 f'' - f f' f''' away from kinks."""
    kinks = pf.kinks()
    signs = set()
    for x in xs:
        x = float(x)
        if any(math.isclose(x, k, rel_tol=1e-9) for k in kinks):
            continue
        f = pf.f(x)
        fp = pf.f_prime(x)
        fpp = pf.f_double_prime(x)
        fppp = pf.f_triple_prime(x)
        terms = (2.0 * f * fpp * fpp, -fp * fp * fpp, -f * fp * fppp)
        value = sum(terms)
        scale = sum(abs(t) for t in terms)
        if scale == 0.0 or abs(value) <= tol * scale:
            signs.add("0")
        elif value > 0:
            signs.add("+")
        else:
            signs.add("-")
    if signs <= {"0"}:
        return "zero"
    if signs <= {"+", "0"}:
        return "nonnegative"
    if signs <= {"-", "0"}:
        return "nonpositive"
    return "mixed"


def classify_h(
    pf: ProductionFunction,
    domain: tuple[float, float] = (1e-2, 1e1),
    samples: int = 128,
    tol: float = 1e-9,
) -> CurvatureVerdict:
    """Classify the curvature of h on a positive interval.

    Midpoint-convexity defects ``h((a+b)/2) - (h(a)+h(b))/2`` are sampled
    over all pairs of a log-spaced grid and combined with the family's
    analytic verdict and the analytic third-derivative criterion.  The
    sampled defects act as a cross-check: they can only veto the analytic
    verdict (yielding ``indeterminate``), never overrule it, and a defect-free
    sample from a family that is not analytically linear is also
    indeterminate rather than linear.

    Args:
        pf: production function (validated).
        domain: positive interval to sample.
        samples: number of grid points, at least 64.
        tol: relative defect tolerance.
    """
    lo, hi = domain
    if not 0 < lo < hi:
        raise ValueError(f"domain must be a positive interval, got {domain}")
    if samples < 64:
        raise ValueError(f"need at least 64 samples, got {samples}")

    xs = np.geomspace(lo, hi, samples)
    h_vals = np.array([pf.h(float(x)) for x in xs])
    a = xs[:, None]
    b = xs[None, :]
    mids = (a + b) / 2.0
    upper = np.triu_indices(samples, k=1)
    mid_vals = np.array([pf.h(float(m)) for m in mids[upper]])
    defects = mid_vals - (h_vals[:, None] + h_vals[None, :])[upper] / 2.0
    scales = np.maximum(np.abs(h_vals[:, None] + h_vals[None, :])[upper] / 2.0, 1e-300)
    rel = defects / scales

    max_signed = float(defects[np.argmax(np.abs(rel))]) if rel.size else 0.0
    has_pos = bool(np.any(rel > tol))
    has_neg = bool(np.any(rel < -tol))
    if has_pos and has_neg:
        sampled = "mixed"
    elif has_pos:
        sampled = "concave"
    elif has_neg:
        sampled = "convex"
    else:
        sampled = "flat"

    pattern = _third_derivative_pattern(pf, xs, tol=1e-9)

    analytic = pf.h_curvature()
    compatible = {
        "linear": {"flat"},
        "convex": {"convex", "flat"},
        "concave": {"concave", "flat"},
    }[analytic]
    verdict = analytic if sampled in compatible else "indeterminate"
    return CurvatureVerdict(
        verdict=verdict,
        max_signed_defect=max_signed,
        third_derivative_sign=pattern,
    )


# ---------------------------------------------------------------------------
# Regime comparison
# ---------------------------------------------------------------------------

_RECOMMENDATION = {"convex": "ue", "concave": "de", "linear": "indifferent"}

# Effort ordering each curvature class predicts, as a set of admissible
# comparison outcomes for the DE total against the UE total.
_PREDICTED_ORDERINGS = {
    "convex": {"<", "="},
    "concave": {">", "="},
    "linear": {"="},
}


@dataclass(frozen=True)
class ComparisonReport:
    """Side-by-side DE and UE solution of one semi-symmetric structure."""

    structure: SemiSymmetricStructure
    curvature: CurvatureVerdict | None
    de: DEResult
    ue: UEResult
    ordering: str  # "<", "=", ">" comparing the DE total with the UE total
    effort_gap: float  # relative |X_de - X_ue| / X_ue
    payoff_gap: float  # relative |payoff_de - payoff_ue|, same normalization
    theorem_consistent: bool | None
    recommendation: str | None

    @property
    def total_de(self) -> float:
        return self.de.total

    @property
    def total_ue(self) -> float:
        return self.ue.total

    def to_dict(self) -> dict:
        """JSON-ready summary with deterministic key order when dumped."""
        summary = {
            "sizes": list(self.structure.sizes),
            "degrees": {str(k): self.structure.degrees[k] for k in self.structure.sizes},
            "prizes": {str(k): self.structure.prizes[k] for k in self.structure.sizes},
            "productions": {
                str(k): self.structure.productions[k].to_spec()
                for k in self.structure.sizes
            },
            "cost": self.structure.cost.to_spec(),
        }
        return {
            "structure": summary,
            "verdict": self.curvature.verdict if self.curvature else "heterogeneous",
            "X_de": self.de.total,
            "X_ue": self.ue.total,
            "payoffs_de": self.de.payoff,
            "payoffs_ue": self.ue.payoff,
            "ordering": self.ordering,
            "consistent": self.theorem_consistent,
            "recommendation": self.recommendation,
            "gaps": [self.effort_gap, self.payoff_gap],
        }


def compare_regimes(
    ss: SemiSymmetricStructure, cfg: BracketingConfig = DEFAULT_CONFIG
) -> ComparisonReport:
    """Solve both regimes and check the ordering the curvature of h predicts.

    A curvature-based prediction needs one shared production function across
    battle sizes; with heterogeneous functions the report abstains unless all
    of them are power functions, in which case the regimes are equivalent and
    equality is the prediction.  Payoff orderings are checked alongside
    effort orderings (they are mirror images, the prize terms being equal at
    symmetric profiles).
    """
    de = solve_de(ss, cfg)
    ue = solve_ue(ss, cfg)

    effort_gap = abs(de.total - ue.total) / abs(ue.total)
    payoff_gap = abs(de.payoff - ue.payoff) / abs(ue.total)
    if effort_gap <= NEUTRALITY_TOL:
        ordering = "="
    elif de.total < ue.total:
        ordering = "<"
    else:
        ordering = ">"

    common = ss.common_production()
    all_power = all(
        isinstance(ss.productions[k], PowerProduction) for k in ss.sizes
    )
    curvature = None
    predicted: set[str] | None = None
    if common is not None:
        span = [de.efforts[k] for k in ss.sizes] + [ue.effort]
        lo = min(span) / 2.0
        hi = max(span) * 2.0
        if hi / lo < 1e2:
            center = math.sqrt(lo * hi)
            lo, hi = center / 10.0, center * 10.0
        curvature = classify_h(common, domain=(lo, hi))
        predicted = _PREDICTED_ORDERINGS.get(curvature.verdict)
    elif all_power:
        predicted = {"="}

    if predicted is None:
        consistent = None
    else:
        payoff_ok = {
            "<": de.payoff >= ue.payoff - NEUTRALITY_TOL * abs(ue.total),
            ">": de.payoff <= ue.payoff + NEUTRALITY_TOL * abs(ue.total),
            "=": payoff_gap <= NEUTRALITY_TOL,
        }[ordering]
        consistent = ordering in predicted and payoff_ok

    recommendation = (
        _RECOMMENDATION.get(curvature.verdict) if curvature is not None
        else ("indifferent" if all_power else None)
    )
    return ComparisonReport(
        structure=ss,
        curvature=curvature,
        de=de,
        ue=ue,
        ordering=ordering,
        effort_gap=effort_gap,
        payoff_gap=payoff_gap,
        theorem_consistent=consistent,
        recommendation=recommendation,
    )


# ---------------------------------------------------------------------------
# Neutrality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NeutralityReport:
    """Worst relative DE/UE total-effort gap over a grid of prize vectors."""

    neutral: bool
    max_gap: float
    worst_prizes: dict[int, float] | None
    worst_de_total: float | None
    worst_ue_total: float | None
    grid_size: int

    def to_dict(self) -> dict:
        return {
            "neutral": self.neutral,
            "max_gap": self.max_gap,
            "worst": None
            if self.worst_prizes is None
            else {
                "prizes": {str(k): v for k, v in sorted(self.worst_prizes.items())},
                "X_de": self.worst_de_total,
                "X_ue": self.worst_ue_total,
            },
            "grid_size": self.grid_size,
        }


def neutrality_check(
    structure: SemiSymmetricStructure,
    valuation_grid,
    cfg: BracketingConfig = DEFAULT_CONFIG,
) -> NeutralityReport:
    """Test whether DE and UE totals coincide across a grid of prize vectors.

    Each grid entry assigns one prize per battle size (a mapping keyed by
    size, or a sequence ordered by ascending size).  The structure's own
    prizes are irrelevant; only sizes, degrees, production functions, and
    cost matter.  Neutral means every relative gap is at most
    ``NEUTRALITY_TOL``; power production functions achieve this for every
    grid, and for any other family some prize vector breaks it.
    """
    grid = list(valuation_grid)
    if not grid:
        raise ValueError("valuation grid must not be empty")

    max_gap = -1.0
    worst = None
    for entry in grid:
        if isinstance(entry, dict):
            prizes = {int(k): float(v) for k, v in entry.items()}
        else:
            values = list(entry)
            if len(values) != len(structure.sizes):
                raise ValueError(
                    f"prize vector {values} does not match sizes {structure.sizes}"
                )
            prizes = dict(zip(structure.sizes, map(float, values)))
        candidate = structure.with_prizes(prizes)
        de = solve_de(candidate, cfg)
        ue = solve_ue(candidate, cfg)
        gap = abs(de.total - ue.total) / abs(ue.total)
        if gap > max_gap:
            max_gap = gap
            worst = (prizes, de.total, ue.total)

    prizes, de_total, ue_total = worst
    return NeutralityReport(
        neutral=max_gap <= NEUTRALITY_TOL,
        max_gap=max_gap,
        worst_prizes=prizes,
        worst_de_total=de_total,
        worst_ue_total=ue_total,
        grid_size=len(grid),
    )


# ---------------------------------------------------------------------------
# Power-family closed form
# ---------------------------------------------------------------------------

def tullock_closed_form_total(ss: SemiSymmetricStructure) -> float:
    """Per-player total effort in closed form for power families.

    With ``f_k(x) = A_k x^{r_k}`` and quadratic unit cost the DE and UE
    totals coincide at

        sqrt( sum_k d_k v_k (k-1)/k^2 r_k ).

    Raises:
        PreconditionViolation: cost is not ``X^2/2`` or a production function
            is not a power function.
    """
    cost = ss.cost
    if not (isinstance(cost, PowerCost) and cost.is_unit_quadratic):
        raise PreconditionViolation(
            "closed form requires the quadratic unit cost X^2/2"
        )
    acc = 0.0
    for k in ss.sizes:
        pf = ss.productions[k]
        if not isinstance(pf, PowerProduction):
            raise PreconditionViolation(
                f"closed form requires power production functions, "
                f"size {k} has {pf.family!r}"
            )
        acc += ss.degrees[k] * ss.prizes[k] * ((k - 1) / k**2) * pf.r
    return math.sqrt(acc)
