"""
Information quanta and words
============================

Each quantum doubles the one before it. A word is a probability-weighted
mixture of quanta, and a temperature turns that content into an energy.
"""

import numpy as np

from infoquanta import (PhysicalConstants, information_energy, mode_energy_quantum,
                        pair_production_allowed, word_information, zeta)

nat = PhysicalConstants.natural()

# the first few quanta, each exactly twice the previous one
for n in range(6):
    print(f"zeta_{n} = {zeta(n):.10f}")

# a fair coin over the two smallest quanta
word = word_information({0: 0.5, 1: 0.5})
print("\nword over {0, 1}:", word.value)
for n, c in word.contributions.items():
    print(f"  quantum {n} contributes {c:.6f}")

# a broader word: geometric weights over ten quanta
p = 0.5 ** np.arange(1, 11)
p[-1] += 1.0 - p.sum()
wide = word_information(list(p))
print("geometric word over 10 quanta:", wide.value)

# energy carried by that word at a few temperatures
for T in (0.1, 1.0, 10.0):
    print(f"T = {T:5.1f}   E = {information_energy(wide.value, T, nat):.6f}")

# a field mode quantum can create an electron pair only above 2 m_e c^2
for omega in (0.5, 2.0, 8.0):
    E = mode_energy_quantum(omega, nat)
    print(f"omega = {omega:4.1f}   E = {E:.3f}   pair production: {pair_production_allowed(E, nat.m_e, nat)}")

# the same word in SI units, with CODATA constants
si = PhysicalConstants.si()
print("\nSI energy at 300 K:", information_energy(wide.value, 300.0, si), "J")
