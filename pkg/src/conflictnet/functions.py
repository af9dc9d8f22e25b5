"""Contest production functions and effort cost functions.

Every production family ships analytic first, second, and third derivatives;
derived quantities such as the inverse semi-elasticity ``h = f / f'`` are
implemented in closed form per family rather than as generic quotients, since
solver accuracy depends on an exact ``h``.  All families satisfy ``f(0) = 0``,
``f' > 0`` and ``f'' <= 0`` on the positive axis (away from a declared kink),
which makes ``h`` strictly increasing with ``h(0+) = 0`` and ``h -> +inf``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteEvaluation

__all__ = [
    "ProductionFunction",
    "PowerProduction",
    "RatioProduction",
    "CaraProduction",
    "PiecewisePowerAffineProduction",
    "CostFunction",
    "PowerCost",
    "ValidityReport",
    "validate_production",
    "default_validation_grid",
    "production_from_spec",
    "cost_from_spec",
]


# ---------------------------------------------------------------------------
# Production families
# ---------------------------------------------------------------------------

class ProductionFunction(ABC):
    """Common interface of contest production functions.

    Scalar methods operate on plain floats; they are the hot path of every
    solver, so implementations stick to ``math`` rather than numpy.
    """

    family: str

    @abstractmethod
    def f(self, x: float) -> float:
        """Production value at effort ``x >= 0``."""

    @abstractmethod
    def f_prime(self, x: float) -> float:
        """First derivative; may be ``inf`` at ``x = 0``."""

    @abstractmethod
    def f_double_prime(self, x: float) -> float:
        """Second derivative (undefined at a kink; see :meth:`kinks`)."""

    @abstractmethod
    def f_triple_prime(self, x: float) -> float:
        """Third derivative, used by the curvature criterion."""

    @abstractmethod
    def h(self, x: float) -> float:
        """Inverse semi-elasticity ``f(x) / f'(x)`` in closed form."""

    def kinks(self) -> tuple[float, ...]:
        """Points where the second derivative does not exist."""
        return ()

    def h_curvature(self) -> str:
        """Analytic curvature of ``h``: 'convex', 'concave' or 'linear'."""
        raise NotImplementedError

    @abstractmethod
    def to_spec(self) -> dict:
        """JSON-serializable ``{"family", "params"}`` description."""


@dataclass(frozen=True)
class PowerProduction(ProductionFunction):
    """Tullock family ``f(x) = A * x**r`` with ``A > 0`` and ``r in (0, 1]``.

    The inverse semi-elasticity is exactly linear, ``h(x) = x / r``,
    independent of the scale ``A``.
    """

    A: float
    r: float
    family: str = field(default="power", init=False, repr=False)

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"scale A must be positive, got {self.A}")
        if not 0 < self.r <= 1:
            raise ValueError(f"exponent r must lie in (0, 1], got {self.r}")

    def f(self, x):
        return self.A * x**self.r

    def f_prime(self, x):
        if x == 0.0:
            return self.A if self.r == 1.0 else math.inf
        return self.A * self.r * x ** (self.r - 1.0)

    def f_double_prime(self, x):
        if self.r == 1.0:
            return 0.0
        if x == 0.0:
            return -math.inf
        return self.A * self.r * (self.r - 1.0) * x ** (self.r - 2.0)

    def f_triple_prime(self, x):
        if self.r == 1.0:
            return 0.0
        if x == 0.0:
            return math.inf
        return self.A * self.r * (self.r - 1.0) * (self.r - 2.0) * x ** (self.r - 3.0)

    def h(self, x):
        return x / self.r

    def h_curvature(self):
        return "linear"

    def to_spec(self):
        return {"family": "power", "params": {"A": self.A, "r": self.r}}


@dataclass(frozen=True)
class RatioProduction(ProductionFunction):
    """Saturating family ``f(x) = x / (x + c)`` with shift ``c > 0``.

    ``h(x) = x (x + c) / c`` is strictly convex.
    """

    c: float
    family: str = field(default="ratio", init=False, repr=False)

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"shift c must be positive, got {self.c}")

    def f(self, x):
        return x / (x + self.c)

    def f_prime(self, x):
        return self.c / (x + self.c) ** 2

    def f_double_prime(self, x):
        return -2.0 * self.c / (x + self.c) ** 3

    def f_triple_prime(self, x):
        return 6.0 * self.c / (x + self.c) ** 4

    def h(self, x):
        return x * (x + self.c) / self.c

    def h_curvature(self):
        return "convex"

    def to_spec(self):
        return {"family": "ratio", "params": {"c": self.c}}


@dataclass(frozen=True)
class CaraProduction(ProductionFunction):
    """Bounded exponential family ``f(x) = 1 - exp(-alpha * x)``.

    ``h(x) = (exp(alpha x) - 1) / alpha`` is strictly convex.
    """

    alpha: float
    family: str = field(default="cara", init=False, repr=False)

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"rate alpha must be positive, got {self.alpha}")

    def f(self, x):
        return -math.expm1(-self.alpha * x)

    def f_prime(self, x):
        return self.alpha * math.exp(-self.alpha * x)

    def f_double_prime(self, x):
        return -self.alpha**2 * math.exp(-self.alpha * x)

    def f_triple_prime(self, x):
        return self.alpha**3 * math.exp(-self.alpha * x)

    def h(self, x):
        # expm1 keeps h accurate near zero; overflows to inf for huge x,
        # which bracketing code treats as "above any finite target".
        try:
            return math.expm1(self.alpha * x) / self.alpha
        except OverflowError:
            return math.inf

    def h_curvature(self):
        return "convex"

    def to_spec(self):
        return {"family": "cara", "params": {"alpha": self.alpha}}


@dataclass(frozen=True)
class PiecewisePowerAffineProduction(ProductionFunction):
    """Power branch glued to an affine branch, C1 at the breakpoint.

    ``f(x) = A x**r`` for ``x <= s`` and ``f(x) = a x + b`` for ``x > s``,
    where ``a = A r s**(r-1)`` and ``b = A s**r (1 - r)`` are derived from the
    value and slope matching conditions at ``s``.  The function is concave and
    C1 but not C2 at ``s``; ``h`` is continuous, piecewise linear with slopes
    ``1/r`` then ``1``, hence concave (linear when ``r = 1``).
    """

    A: float
    r: float
    s: float
    family: str = field(default="piecewise_power_affine", init=False, repr=False)

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"scale A must be positive, got {self.A}")
        if not 0 < self.r <= 1:
            raise ValueError(f"exponent r must lie in (0, 1], got {self.r}")
        if not self.s > 0:
            raise ValueError(f"breakpoint s must be positive, got {self.s}")

    @property
    def slope(self) -> float:
        """Affine-branch slope ``a``."""
        return self.A * self.r * self.s ** (self.r - 1.0)

    @property
    def intercept(self) -> float:
        """Affine-branch intercept ``b`` (nonnegative since ``r <= 1``)."""
        return self.A * self.s**self.r * (1.0 - self.r)

    def f(self, x):
        if x <= self.s:
            return self.A * x**self.r
        return self.slope * x + self.intercept

    def f_prime(self, x):
        if x > self.s:
            return self.slope
        if x == 0.0:
            return self.A if self.r == 1.0 else math.inf
        return self.A * self.r * x ** (self.r - 1.0)

    def f_double_prime(self, x):
        if x > self.s or self.r == 1.0:
            return 0.0
        if x == 0.0:
            return -math.inf
        return self.A * self.r * (self.r - 1.0) * x ** (self.r - 2.0)

    def f_triple_prime(self, x):
        if x > self.s or self.r == 1.0:
            return 0.0
        if x == 0.0:
            return math.inf
        return self.A * self.r * (self.r - 1.0) * (self.r - 2.0) * x ** (self.r - 3.0)

    def h(self, x):
        if x <= self.s:
            return x / self.r
        return x + self.intercept / self.slope

    def kinks(self):
        return () if self.r == 1.0 else (self.s,)

    def h_curvature(self):
        return "linear" if self.r == 1.0 else "concave"

    def to_spec(self):
        return {
            "family": "piecewise_power_affine",
            "params": {"A": self.A, "r": self.r, "s": self.s},
        }


# ---------------------------------------------------------------------------
# Cost families
# ---------------------------------------------------------------------------

class CostFunction(ABC):
    """Convex, strictly increasing effort cost on total effort."""

    family: str

    @abstractmethod
    def c(self, total: float) -> float:
        """Cost of a total effort level."""

    @abstractmethod
    def c_prime(self, total: float) -> float:
        """Marginal cost."""

    @abstractmethod
    def c_double_prime(self, total: float) -> float:
        """Second derivative."""

    @abstractmethod
    def to_spec(self) -> dict:
        """JSON-serializable ``{"family", "params"}`` description."""


@dataclass(frozen=True)
class PowerCost(CostFunction):
    """``C(X) = kappa * X**p / p`` with ``kappa > 0`` and ``p >= 1``.

    The default ``kappa = 1, p = 2`` is the quadratic cost ``X**2 / 2``.
    """

    kappa: float = 1.0
    p: float = 2.0
    family: str = field(default="power", init=False, repr=False)

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"scale kappa must be positive, got {self.kappa}")
        if not self.p >= 1:
            raise ValueError(f"exponent p must be >= 1, got {self.p}")

    def c(self, total):
        return self.kappa * total**self.p / self.p

    def c_prime(self, total):
        if self.p == 1.0:
            return self.kappa
        if self.p == 2.0:
            return self.kappa * total
        return self.kappa * total ** (self.p - 1.0)

    def c_double_prime(self, total):
        if self.p == 1.0:
            return 0.0
        if self.p == 2.0:
            return self.kappa
        if total == 0.0 and self.p < 2.0:
            return math.inf
        return self.kappa * (self.p - 1.0) * total ** (self.p - 2.0)

    @property
    def is_unit_quadratic(self) -> bool:
        return self.kappa == 1.0 and self.p == 2.0

    def to_spec(self):
        return {"family": "power", "params": {"kappa": self.kappa, "p": self.p}}


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def default_validation_grid(lo: float = 1e-3, hi: float = 1e2, n: int = 64) -> np.ndarray:
    """Log-spaced positive grid spanning five decades by default."""
    return np.geomspace(lo, hi, n)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the sampled production-function checks.

    ``checks`` maps check name to pass/fail; ``details`` carries the worst
    observed violation magnitude (or witness value) per check.
    """

    checks: dict
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def validate_production(pf: ProductionFunction, grid=None) -> ValidityReport:
    """Check the maintained assumptions of a production function on a grid.

    The grid must contain at least 32 strictly positive points spanning at
    least four decades.  Checks: ``f(0) = 0``, ``f' > 0`` on the grid,
    ``f'' <= 0`` away from declared kinks, strict monotonicity of ``h``, and
    ``h`` at the smallest grid point being negligible relative to ``h`` at the
    largest (a finite stand-in for ``h(0+) = 0``).

    Raises:
        NonFiniteEvaluation: if ``f`` or ``f'`` is NaN or infinite at a grid
            point (an infinite ``h`` from float overflow at the top of the
            grid is tolerated and excluded from the monotonicity comparison).
    """
    if grid is None:
        grid = default_validation_grid()
    grid = np.asarray(grid, dtype=float)
    if grid.size < 32:
        raise ValueError("validation grid needs at least 32 points")
    if np.any(grid <= 0):
        raise ValueError("validation grid must be strictly positive")
    grid = np.sort(grid)
    if grid[-1] / grid[0] < 1e4:
        raise ValueError("validation grid must span at least four decades")

    kinks = pf.kinks()

    f_vals = np.array([pf.f(float(x)) for x in grid])
    fp_vals = np.array([pf.f_prime(float(x)) for x in grid])
    for x, fv, fpv in zip(grid, f_vals, fp_vals):
        if not math.isfinite(fv) or not math.isfinite(fpv):
            raise NonFiniteEvaluation(
                f"{pf.family}: non-finite f or f' at grid point {x!r}"
            )

    checks: dict = {}
    details: dict = {}

    f0 = pf.f(0.0)
    checks["f0_zero"] = f0 == 0.0
    details["f0_zero"] = f0

    checks["f_prime_positive"] = bool(np.all(fp_vals > 0))
    details["f_prime_positive"] = float(fp_vals.min())

    away_from_kink = np.array(
        [all(not math.isclose(x, k, rel_tol=1e-9) for k in kinks) for x in grid]
    )
    fpp_vals = np.array(
        [pf.f_double_prime(float(x)) for x in grid[away_from_kink]]
    )
    checks["f_double_prime_nonpositive"] = bool(np.all(fpp_vals <= 0))
    details["f_double_prime_nonpositive"] = float(fpp_vals.max())

    h_vals = np.array([pf.h(float(x)) for x in grid])
    finite = np.isfinite(h_vals)
    if np.any(np.isnan(h_vals)):
        raise NonFiniteEvaluation(f"{pf.family}: NaN h value on grid")
    diffs = np.diff(h_vals[finite])
    checks["h_strictly_increasing"] = bool(np.all(diffs > 0))
    details["h_strictly_increasing"] = float(diffs.min()) if diffs.size else 0.0

    h_lo, h_hi = h_vals[0], h_vals[finite][-1]
    checks["h_vanishes_at_zero"] = bool(h_lo <= 1e-3 * h_hi)
    details["h_vanishes_at_zero"] = float(h_lo)

    return ValidityReport(checks=checks, details=details)


# ---------------------------------------------------------------------------
# Spec parsing
# ---------------------------------------------------------------------------

_PRODUCTION_FAMILIES = {
    "power": (PowerProduction, ("A", "r")),
    "ratio": (RatioProduction, ("c",)),
    "cara": (CaraProduction, ("alpha",)),
    "piecewise_power_affine": (PiecewisePowerAffineProduction, ("A", "r", "s")),
}


def production_from_spec(spec: dict) -> ProductionFunction:
    """Build a production function from a ``{"family", "params"}`` mapping."""
    family = spec.get("family")
    if family not in _PRODUCTION_FAMILIES:
        known = sorted(_PRODUCTION_FAMILIES)
        raise ValueError(f"unknown production family {family!r}; expected one of {known}")
    cls, names = _PRODUCTION_FAMILIES[family]
    params = spec.get("params", {})
    missing = [n for n in names if n not in params]
    if missing:
        raise ValueError(f"production family {family!r} missing params {missing}")
    extra = [n for n in params if n not in names]
    if extra:
        raise ValueError(f"production family {family!r} got unknown params {extra}")
    return cls(**{n: float(params[n]) for n in names})


def cost_from_spec(spec: dict) -> CostFunction:
    """Build a cost function from a ``{"family", "params"}`` mapping."""
    family = spec.get("family")
    if family != "power":
        raise ValueError(f"unknown cost family {family!r}; expected 'power'")
    params = spec.get("params", {})
    extra = [n for n in params if n not in ("kappa", "p")]
    if extra:
        raise ValueError(f"cost family 'power' got unknown params {extra}")
    return PowerCost(
        kappa=float(params.get("kappa", 1.0)), p=float(params.get("p", 2.0))
    )
