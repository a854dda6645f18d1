"""The first two solutions: preconditioned descent on the one-sided energies.

No box constraints are imposed anywhere; the truncation alone forces the
converged minimizers into [0, a+] and [a-, 0].  The demo prints the
iteration trail and then verifies the bounds that emerged.

Run with:  python demos/04_minimizers.py
"""

import numpy as np

from trisol import (DescentOptions, DomainSpec, EnergyModel, TruncationMode,
                    cubic_nonlinearity, eigenpairs, initial_guess, minimize,
                    positivity_profile)

spec = DomainSpec.interval(1.0, 127)
nl = cubic_nonlinearity(spec)
phi1 = eigenpairs(spec, 1)[0]


def trail(info):
    if info["iteration"] % 20 == 0:
        print(f"  iter {info['iteration']:4d}   residual {info['residual']:.3e}")


for mode in (TruncationMode.PLUS, TruncationMode.MINUS):
    model = EnergyModel(spec, nl, mode)
    guess = initial_guess(model, phi1)
    print(f"\n{mode.value} mode, starting energy {model.phi(guess):+.4f}")
    point = minimize(model, guess, DescentOptions(callback=trail))
    values = point.u.values
    print(f"  converged: {point.converged} after {point.iterations} iterations")
    print(f"  energy {point.energy:+.4f}   residual {point.residual:.2e}")
    print(f"  range [{values.min():+.6f}, {values.max():+.6f}]"
          f"   (roots at {nl.a_minus:+.4f}, {nl.a_plus:+.4f})")
    if mode is TruncationMode.PLUS:
        profile = positivity_profile(point.u)
        print(f"  strictly positive: {profile.strictly_positive_interior}, "
              f"boundary slope {profile.min_boundary_slope:.3f}")
