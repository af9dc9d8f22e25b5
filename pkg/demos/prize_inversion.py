"""Reverse-engineering prizes from a desired equilibrium.

Any strictly positive size-indexed effort profile is the unique
discriminatory-effort equilibrium of some prize vector: the first-order
conditions can simply be read backwards.  We pick target efforts, compute
the prizes that induce them, and confirm by solving forward.
"""

import numpy as np

from conflictnet import (
    CaraProduction,
    PowerProduction,
    check_semi_symmetry,
    generate_simplex,
    reverse_valuations,
    solve_de,
)

structure = check_semi_symmetry(generate_simplex(production=CaraProduction(0.8)))

targets = {2: 0.25, 3: 0.6, 4: 1.4}
prizes = reverse_valuations(structure, targets)

print("target per-battle efforts by size:", targets)
print("prizes that induce them:")
for k, v in sorted(prizes.items()):
    print(f"  size {k}: prize {v:.6f}")

solved = solve_de(structure.with_prizes(prizes))
print("forward solve recovers:")
for k in structure.sizes:
    print(
        f"  size {k}: effort {solved.efforts[k]:.10f} "
        f"(error {abs(solved.efforts[k] - targets[k]):.1e})"
    )

print()
print("For power production the map is homogeneous: doubling every target")
print("effort under quadratic cost multiplies every prize by exactly four.")
power_structure = check_semi_symmetry(
    generate_simplex(production=PowerProduction(1.0, 0.5))
)
base = reverse_valuations(power_structure, targets)
doubled = reverse_valuations(power_structure, {k: 2 * x for k, x in targets.items()})
ratios = {k: doubled[k] / base[k] for k in base}
print("prize ratios after doubling efforts:", {k: round(r, 6) for k, r in ratios.items()})

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(25):
    draw = {k: float(np.exp(rng.uniform(np.log(0.05), np.log(5.0)))) for k in (2, 3, 4)}
    forward = solve_de(structure.with_prizes(reverse_valuations(structure, draw)))
    worst = max(worst, max(abs(forward.efforts[k] - draw[k]) / draw[k] for k in draw))
print(f"worst relative error over 25 random target profiles: {worst:.2e}")
