"""
A field mode coupled to information
===================================

The Hamiltonian is a harmonic oscillator shifted by the information
content and displaced by the coupling. Its ground level has a closed form,
which makes a convenient check on the truncated numerics.
"""

import numpy as np

from infoquanta import FockSpace, build_hamiltonian, eigen_spectrum, evolve, ground_energy_analytic

omega, zeta, lam = 1.0, 1.0, 0.4

# ground energy against the truncation size
for D in (4, 8, 16, 32, 64):
    E0 = eigen_spectrum(build_hamiltonian(FockSpace(D, omega), zeta, lam))[0]
    print(f"D = {D:3d}   E0 = {E0:.15f}")
print("closed form       ", ground_energy_analytic(omega, zeta, lam))

# the displaced spectrum stays evenly spaced
levels = eigen_spectrum(build_hamiltonian(FockSpace(64, omega), zeta, lam))
print("\nlowest level gaps:", np.diff(levels[:6]))

# start in the vacuum and let the displacement pull it around
model = build_hamiltonian(FockSpace(32, omega), zeta, lam)
result = evolve(np.eye(32)[0], model, 2 * np.pi, 8)
print("\n   t      <n>        <H>")
for t, n, e in zip(result.times, result.number, result.energy):
    print(f"{t:6.3f}  {n:.6f}  {e:.12f}")
