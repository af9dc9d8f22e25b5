"""Command-line front end.

Subcommands: ``solve``, ``compare``, ``neutrality``, ``sweep``, ``validate``,
``examples``.  Networks come from a JSON file (``--input``) or a built-in
example (``--example``), optionally overridden by ``--f`` (common production
function), ``--tullock`` (per-size power exponents), and ``--v`` (per-size
prizes in ascending size order).  Reports are JSON with sorted keys and full
float precision; markdown and CSV renderings round to 6 significant figures.

Exit codes: 0 success, 1 input error, 2 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .analysis import ComparisonReport, compare_regimes, neutrality_check
from .equilibrium import DEResult, UEResult, solve_de, solve_ue
from .errors import ConflictNetError
from .functions import (
    CaraProduction,
    PiecewisePowerAffineProduction,
    PowerProduction,
    ProductionFunction,
    RatioProduction,
    validate_production,
)
from .general_solver import IterationConfig, SolveOutcome, solve_nash_iterative, solve_nash_ue_iterative
from .generators import EXAMPLE_NAMES, generate_example
from .io import (
    SchemaViolation,
    dump_network,
    dumps_sorted,
    load_network,
    network_to_dict,
)
from .network import (
    Battle,
    ConflictNetwork,
    SemiSymmetricStructure,
    SemiSymmetryViolations,
    check_semi_symmetry,
)
from .rootfind import BracketingConfig
from .sweep import SweepAxis, SweepSpec, run_sweep

__all__ = ["main", "parse_production_flag"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOCONVERGE = 2

# Shorthand for the concave piecewise benchmark production (power branch
# 2*sqrt(x) glued to x+1 at the breakpoint 1).
_NAMED_PRODUCTIONS = {"piecewise-f3": "piecewise:2,0.5,1"}


class InputError(Exception):
    """User input problem; rendered to stderr with exit code 1."""


def parse_production_flag(text: str) -> ProductionFunction:
    """Parse ``family:params`` flags such as ``power:2,0.5`` or ``ratio:1``."""
    text = _NAMED_PRODUCTIONS.get(text, text)
    family, _, raw = text.partition(":")
    try:
        params = [float(p) for p in raw.split(",")] if raw else []
    except ValueError:
        raise InputError(f"bad production parameters in {text!r}") from None
    try:
        if family == "power":
            return PowerProduction(*params)
        if family == "ratio":
            return RatioProduction(*params)
        if family == "cara":
            return CaraProduction(*params)
        if family in ("piecewise", "piecewise_power_affine"):
            return PiecewisePowerAffineProduction(*params)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad production spec {text!r}: {exc}") from None
    raise InputError(
        f"unknown production family {family!r} "
        "(power, ratio, cara, piecewise, piecewise-f3)"
    )


def _parse_tullock_flag(text: str) -> dict[int, ProductionFunction]:
    productions = {}
    for piece in text.split(","):
        name, _, value = piece.partition("=")
        if not (name.startswith("r") and name[1:].isdigit() and value):
            raise InputError(f"bad --tullock entry {piece!r}; expected like r2=0.5")
        try:
            productions[int(name[1:])] = PowerProduction(A=1.0, r=float(value))
        except ValueError as exc:
            raise InputError(f"bad --tullock entry {piece!r}: {exc}") from None
    return productions


def _parse_prizes_flag(text: str) -> list[float]:
    try:
        prizes = [float(p) for p in text.split(",")]
    except ValueError:
        raise InputError(f"bad --v list {text!r}") from None
    if not all(p > 0 for p in prizes):
        raise InputError("--v prizes must all be positive")
    return prizes


def _override_network(
    network: ConflictNetwork,
    production: ProductionFunction | None,
    per_size: dict[int, ProductionFunction] | None,
    prizes: list[float] | None,
) -> ConflictNetwork:
    sizes = sorted({b.size for b in network.battles})
    prize_by_size = {}
    if prizes is not None:
        if len(prizes) != len(sizes):
            raise InputError(
                f"--v gives {len(prizes)} prizes but the network has "
                f"battle sizes {sizes}"
            )
        prize_by_size = dict(zip(sizes, prizes))
    battles = []
    for b in network.battles:
        pf = b.production
        if per_size is not None:
            if b.size not in per_size:
                raise InputError(f"--tullock misses size {b.size}")
            pf = per_size[b.size]
        elif production is not None:
            pf = production
        battles.append(
            Battle(b.id, b.participants, prize_by_size.get(b.size, b.prize), pf)
        )
    return ConflictNetwork(network.players, tuple(battles), network.cost)


def _network_from_args(args) -> ConflictNetwork:
    if getattr(args, "input", None):
        try:
            network = load_network(args.input)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read network {args.input}: {exc}") from None
    elif getattr(args, "example", None):
        network = generate_example(args.example)
    else:
        raise InputError("need --input PATH or --example NAME")
    production = (
        parse_production_flag(args.production) if getattr(args, "production", None) else None
    )
    per_size = (
        _parse_tullock_flag(args.tullock) if getattr(args, "tullock", None) else None
    )
    prizes = _parse_prizes_flag(args.prizes) if getattr(args, "prizes", None) else None
    if production or per_size or prizes:
        network = _override_network(network, production, per_size, prizes)
    return network


def _structure_from_args(args) -> SemiSymmetricStructure:
    network = _network_from_args(args)
    result = check_semi_symmetry(network)
    if isinstance(result, SemiSymmetryViolations):
        lines = "; ".join(v.message for v in result)
        raise InputError(f"network is not semi-symmetric: {lines}")
    return result


def _bracketing_config(args) -> BracketingConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        return BracketingConfig()
    return BracketingConfig(abs_tol=min(tol, 1e-12), rel_tol=tol)


def _write_report(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Report rendering
# ---------------------------------------------------------------------------

def _de_dict(de: DEResult) -> dict:
    return {
        "efforts": {str(k): v for k, v in sorted(de.efforts.items())},
        "total": de.total,
        "marginal_cost": de.marginal_cost,
        "payoff": de.payoff,
        "residuals": {str(k): v for k, v in sorted(de.residuals.items())},
    }


def _ue_dict(ue: UEResult) -> dict:
    return {
        "effort": ue.effort,
        "total": ue.total,
        "marginal_cost": ue.marginal_cost,
        "payoff": ue.payoff,
        "residual": ue.residual,
    }


def _outcome_dict(outcome: SolveOutcome, network: ConflictNetwork) -> dict:
    return {
        "converged": outcome.converged,
        "iterations": outcome.iterations,
        "deviation_gain": outcome.deviation_gain,
        "degenerate_battles": list(outcome.degenerate_battles),
        "totals": {str(p): outcome.profile.total(p) for p in network.players},
        "efforts": {
            str(p): {
                b.id: outcome.profile.effort(p, b.id) for b in network.battles_of(p)
            }
            for p in network.players
        },
    }


def _production_label(pf: ProductionFunction) -> str:
    spec = pf.to_spec()
    params = ",".join(f"{v:.6g}" for v in spec["params"].values())
    return f"{spec['family']}({params})"


def _ue_side_relation(ordering: str) -> str:
    # The table puts the UE total left of the DE total, so the stored
    # DE-versus-UE ordering flips.
    return {"<": ">", ">": "<", "=": "="}[ordering]


def _compare_markdown(report: ComparisonReport) -> str:
    common = report.structure.common_production()
    label = _production_label(common) if common is not None else "per-size"
    verdict = report.curvature.verdict if report.curvature else "heterogeneous"
    lines = [
        "| f | h curvature | UE total | | DE total |",
        "|---|---|---|---|---|",
        f"| {label} | {verdict} | {report.total_ue:.6g} "
        f"| {_ue_side_relation(report.ordering)} | {report.total_de:.6g} |",
    ]
    return "\n".join(lines) + "\n"


def _compare_csv(report: ComparisonReport) -> str:
    common = report.structure.common_production()
    label = _production_label(common) if common is not None else "per-size"
    verdict = report.curvature.verdict if report.curvature else "heterogeneous"
    head = "f,curvature,X_ue,ordering,X_de,payoff_ue,payoff_de,consistent,recommendation"
    row = ",".join(
        [
            label,
            verdict,
            f"{report.total_ue:.6g}",
            report.ordering,
            f"{report.total_de:.6g}",
            f"{report.ue.payoff:.6g}",
            f"{report.de.payoff:.6g}",
            str(report.theorem_consistent),
            str(report.recommendation),
        ]
    )
    return head + "\n" + row + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_solve(args) -> int:
    network = _network_from_args(args)
    cfg = _bracketing_config(args)
    regimes = ("de", "ue") if args.regime == "both" else (args.regime,)

    method = args.method
    structure = None
    if method in ("auto", "semisymmetric"):
        result = check_semi_symmetry(network)
        if isinstance(result, SemiSymmetryViolations):
            if method == "semisymmetric":
                lines = "; ".join(v.message for v in result)
                raise InputError(f"network is not semi-symmetric: {lines}")
            method = "iterative"
        else:
            structure = result
            method = "semisymmetric"

    report: dict = {"method": method, "regime": args.regime}
    exit_code = EXIT_OK
    if method == "semisymmetric":
        if "de" in regimes:
            report["de"] = _de_dict(solve_de(structure, cfg))
        if "ue" in regimes:
            report["ue"] = _ue_dict(solve_ue(structure, cfg))
    else:
        iter_cfg = IterationConfig(
            tolerance=args.tol if args.tol else 1e-10,
            initial="random" if args.seed is not None else "constant",
            seed=args.seed,
        )
        if "de" in regimes:
            outcome = solve_nash_iterative(network, iter_cfg)
            report["de"] = _outcome_dict(outcome, network)
            if not outcome.converged:
                exit_code = EXIT_NOCONVERGE
        if "ue" in regimes:
            outcome = solve_nash_ue_iterative(network, iter_cfg)
            report["ue"] = _outcome_dict(outcome, network)
            if not outcome.converged:
                exit_code = EXIT_NOCONVERGE

    _write_report(dumps_sorted(report), args.output)
    return exit_code


def _cmd_compare(args) -> int:
    structure = _structure_from_args(args)
    report = compare_regimes(structure, _bracketing_config(args))
    if args.format == "md":
        text = _compare_markdown(report)
    elif args.format == "csv":
        text = _compare_csv(report)
    else:
        text = dumps_sorted(report.to_dict())
    _write_report(text, args.output)
    return EXIT_OK


def _parse_grid_flag(text: str, sizes: tuple[int, ...]):
    kind, _, rest = text.partition(":")
    if kind == "explicit":
        grid = []
        for chunk in rest.split(";"):
            if not chunk:
                continue
            values = [float(v) for v in chunk.split(",")]
            if len(values) != len(sizes):
                raise InputError(
                    f"grid point {chunk!r} needs {len(sizes)} prizes for sizes {sizes}"
                )
            if any(v <= 0 for v in values):
                raise InputError(f"grid point {chunk!r} has a non-positive prize")
            grid.append(dict(zip(sizes, values)))
        if not grid:
            raise InputError("explicit grid is empty")
        return grid
    if kind == "random":
        count_text, _, seed_text = rest.partition(":")
        try:
            count = int(count_text)
        except ValueError:
            raise InputError(f"bad random grid count in {text!r}") from None
        if count < 1:
            raise InputError("random grid needs a positive count")
        seed = None
        if seed_text:
            label, _, value = seed_text.partition("=")
            if label != "seed" or not value:
                raise InputError(f"bad random grid seed in {text!r}")
            seed = int(value)
        rng = np.random.default_rng(seed)
        lo, hi = np.log(0.1), np.log(100.0)
        return [
            {k: float(np.exp(rng.uniform(lo, hi))) for k in sizes}
            for _ in range(count)
        ]
    raise InputError(f"unknown grid spec {text!r}; use explicit:... or random:N[:seed=S]")


def _cmd_neutrality(args) -> int:
    structure = _structure_from_args(args)
    grid = _parse_grid_flag(args.grid, structure.sizes)
    report = neutrality_check(structure, grid, _bracketing_config(args))
    _write_report(dumps_sorted(report.to_dict()), args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read sweep spec {args.spec}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("sweep spec must be a JSON object")

    base_args = argparse.Namespace(
        input=doc.get("network"),
        example=doc.get("example"),
        production=doc.get("f"),
        tullock=doc.get("tullock"),
        prizes=",".join(str(v) for v in doc["v"]) if "v" in doc else None,
    )
    base = _structure_from_args(base_args)

    axes = []
    for i, axis in enumerate(doc.get("axes", [])):
        try:
            axes.append(
                SweepAxis(
                    param=axis["param"],
                    minimum=float(axis["min"]),
                    maximum=float(axis["max"]),
                    steps=int(axis["steps"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad sweep axis #{i}: {exc}") from None

    output = args.output or doc.get("output")
    if not output:
        raise InputError("sweep needs an output path (spec 'output' or --output)")
    try:
        spec = SweepSpec(
            base=base, axes=tuple(axes), parallelism=int(doc.get("parallelism", 1))
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    written = run_sweep(spec, output)
    print(f"{written} rows written to {output} ({spec.grid_size} grid points)")
    return EXIT_OK


def _cmd_validate(args) -> int:
    path = args.input or args.path
    if not path:
        raise InputError("validate needs a network JSON path")
    report: dict = {"valid": True, "errors": []}
    try:
        network = load_network(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read network {path}: {exc}") from None
    except SchemaViolation as exc:
        report["valid"] = False
        report["errors"].append(str(exc))
        _write_report(dumps_sorted(report), args.output)
        return EXIT_INPUT

    for b in network.battles:
        outcome = validate_production(b.production)
        if not outcome.passed:
            report["valid"] = False
            report["errors"].append(
                f"battle {b.id!r} production fails checks: {outcome.failures()}"
            )

    result = check_semi_symmetry(network)
    if isinstance(result, SemiSymmetryViolations):
        report["semi_symmetric"] = False
        report["violations"] = [v.message for v in result]
    else:
        report["semi_symmetric"] = True
        report["sizes"] = list(result.sizes)
        report["degrees"] = {str(k): result.degrees[k] for k in result.sizes}
    _write_report(dumps_sorted(report), args.output)
    return EXIT_OK if report["valid"] else EXIT_INPUT


def _cmd_examples(args) -> int:
    if not args.name:
        _write_report("\n".join(EXAMPLE_NAMES) + "\n", args.output)
        return EXIT_OK
    network = generate_example(args.name)
    if args.output:
        dump_network(network, args.output)
    else:
        sys.stdout.write(dumps_sorted(network_to_dict(network)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_network_flags(sub) -> None:
    sub.add_argument("--input", help="network JSON path")
    sub.add_argument("--example", choices=EXAMPLE_NAMES, help="built-in example")
    sub.add_argument(
        "--f", dest="production",
        help="common production function, e.g. power:2,0.5 ratio:1 cara:1 piecewise-f3",
    )
    sub.add_argument(
        "--tullock",
        help="per-size power exponents, e.g. r2=1,r3=0.5 (A fixed at 1)",
    )
    sub.add_argument(
        "--v", dest="prizes", help="per-size prizes in ascending size order, e.g. 5,72"
    )
    sub.add_argument("--tol", type=float, help="solver tolerance override")
    sub.add_argument("--seed", type=int, help="seed for randomized starting points")
    sub.add_argument("--output", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflictnet",
        description="Equilibria of multi-battle conflict networks under "
        "discriminatory and uniform effort regimes.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="solve one network")
    _add_network_flags(solve)
    solve.add_argument("--regime", choices=("de", "ue", "both"), default="both")
    solve.add_argument(
        "--method", choices=("auto", "semisymmetric", "iterative"), default="auto"
    )

    compare = subs.add_parser("compare", help="compare the two regimes")
    _add_network_flags(compare)
    compare.add_argument("--format", choices=("json", "md", "csv"), default="json")

    neutrality = subs.add_parser("neutrality", help="test regime neutrality on a prize grid")
    _add_network_flags(neutrality)
    neutrality.add_argument(
        "--grid", required=True,
        help="prize grid: explicit:5,72[;10,20] or random:100[:seed=7]",
    )

    sweep = subs.add_parser("sweep", help="run a parameter sweep to CSV")
    sweep.add_argument("spec", help="sweep spec JSON path")
    sweep.add_argument("--output", help="CSV output path (overrides the spec)")

    validate = subs.add_parser("validate", help="validate a network JSON file")
    validate.add_argument("path", nargs="?", help="network JSON path")
    validate.add_argument("--input", help="network JSON path")
    validate.add_argument("--output", help="write the report here instead of stdout")

    examples = subs.add_parser("examples", help="list or emit built-in examples")
    examples.add_argument("--name", choices=EXAMPLE_NAMES, help="emit this example's JSON")
    examples.add_argument("--output", help="write the network here instead of stdout")

    return parser


_COMMANDS = {
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "neutrality": _cmd_neutrality,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "examples": _cmd_examples,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SchemaViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConflictNetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
