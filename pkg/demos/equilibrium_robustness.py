"""Equilibria from closed-form parametrizations, and a robustness scan.

Draws random rate constants, evaluates the closed-form equilibrium of
each model, and confirms the rate equations vanish there.  Then scans the
fal model for species whose equilibrium value ignores the free parameters
entirely -- one species turns out to be pinned to a rate-constant ratio.

    python3 demos/equilibrium_robustness.py
"""

import random

from crnkit import fixtures
from crnkit.kinetics import acr_scan, equilibrium_residual, free_parameters, parametrization

rng = random.Random(2024)


def draw_rates(net):
    return {r.label: 10.0 ** rng.uniform(-1.0, 1.0) for r in net.reactions}


def main():
    for name in ("schmitz", "fal", "maclean"):
        net = fixtures.load(name)
        k = draw_rates(net)
        free = {p: 10.0 ** rng.uniform(-2.0, 2.0) for p in free_parameters(name)}
        point = parametrization(name, k, free)
        residual = equilibrium_residual(net, k, point)
        print(f"{name}: equilibrium residual {residual:.2e} "
              f"with free parameters {', '.join(free)}")

    print()
    fal = fixtures.load("fal")
    k = draw_rates(fal)
    report = acr_scan("fal", k, sample_count=200, seed=5)
    for species, spread in sorted(report.items()):
        if spread.constant:
            print(f"fal equilibrium holds {species} constant at {spread.value:.6g}")
            print(f"  compare R47/R48 rate ratio: {k['R47'] / k['R48']:.6g}")


if __name__ == "__main__":
    main()
