"""Closed-form Dirichlet spectra and the eigenvalue sandwich index.

Run with:  python demos/02_spectrum.py
"""

import numpy as np

from trisol import DomainSpec, eigenpairs, sandwich_index

interval = DomainSpec.interval(1.0, 63)
square = DomainSpec.rectangle(1.0, 1.0, 31, 31)

print("interval of length 1:")
for pair in eigenpairs(interval, 5):
    print(f"  rank {pair.rank}: lambda = {pair.lam:10.4f}   mode {pair.mode}")

print("\nunit square (note the double eigenvalue at ranks 2 and 3):")
for pair in eigenpairs(square, 6):
    print(f"  rank {pair.rank}: lambda = {pair.lam:10.4f}   mode {pair.mode}")

print("\nsandwich index of mu = 60 (largest k with lambda_k <= mu):")
print(f"  interval: k = {sandwich_index(interval, 60.0)}"
      f"   (4 pi^2 = {4 * np.pi**2:.2f} <= 60 <= 9 pi^2 = {9 * np.pi**2:.2f})")
print(f"  square:   k = {sandwich_index(square, 60.0)}"
      f"   (5 pi^2 = {5 * np.pi**2:.2f} counted twice)")
