"""Truncating the nonlinearity and the energy landscape it produces.

The cubic g(t) = 60 t - t^3 grows the wrong way for the energy to be
bounded below, so g is cut off outside its root interval.  The truncated
energy is coercive, and scaled first-eigenfunction directions descend
below zero, which is what hands the minimizers to the descent stage.

Run with:  python demos/03_truncation_and_energy.py
"""

import numpy as np

from trisol import (DomainSpec, EnergyModel, Field, TruncationMode,
                    antiderivative, cubic_nonlinearity, eigenpairs,
                    quadrature, truncate)

spec = DomainSpec.interval(1.0, 63)
nl = cubic_nonlinearity(spec)
print(f"roots a- = {nl.a_minus:.4f}, a+ = {nl.a_plus:.4f}, "
      f"delta = {nl.delta}, k = {nl.k}")

print("\ntruncations at sample points (plus / minus / full):")
for t in (-9.0, -1.0, 0.5, 2.0, nl.a_plus, 9.0):
    row = [truncate(nl, mode, t) for mode in
           (TruncationMode.PLUS, TruncationMode.MINUS, TruncationMode.FULL)]
    print(f"  t = {t:7.3f}:  {row[0]:10.4f}  {row[1]:10.4f}  {row[2]:10.4f}")

print("\nantiderivative of the plus truncation saturates at G(a+) = 900:")
for t in (1.0, 4.0, nl.a_plus, 12.0, 100.0):
    print(f"  G_plus({t:7.2f}) = {antiderivative(nl, TruncationMode.PLUS, t):10.4f}")

model = EnergyModel(spec, nl, TruncationMode.PLUS)
phi1 = eigenpairs(spec, 1)[0].phi
s = 0.5 * nl.delta / quadrature(spec, phi1, "sup_norm")
print(f"\nphi(s phi_1) with s = {s:.4f}: {model.phi(s * phi1):+.6f}  (< 0)")

# coercivity: phi grows with the H1 seminorm no matter the amplitude
rng = np.random.default_rng(5)
print("\ncoercivity samples (amplitude, 0.5 |u|_H1^2, phi):")
for amp in (0.01, 1.0, 10.0, 100.0):
    u = Field(spec, amp * rng.standard_normal(spec.size))
    h1 = quadrature(spec, u, "h1_seminorm")
    print(f"  {amp:8.2f}  {0.5 * h1**2:14.2f}  {model.phi(u):14.2f}")
