"""
Entropy, classical and quantum
==============================

Shannon entropy of a joint distribution and its marginals, then Von
Neumann entropy of mixed and entangled states. Everything is in nats;
``to_bits`` converts for display.
"""

import math

import numpy as np

from infoquanta import (DensityMatrix, JointDistribution, PureState, density_from_mixture,
                        entanglement_entropy, joint_shannon_entropy, marginals,
                        mutual_information, partial_trace, von_neumann_entropy)
from infoquanta.entropy import to_bits

# correlated bits: they agree 80% of the time
joint = JointDistribution([[0.4, 0.1], [0.1, 0.4]])
mx, my = marginals(joint)
print("H(X,Y) =", to_bits(joint_shannon_entropy(joint)), "bits")
print("marginals:", mx.probabilities, my.probabilities)
print("I(X;Y) =", to_bits(mutual_information(joint)), "bits")

# a qubit slowly losing its purity
for p in (1.0, 0.9, 0.75, 0.5):
    rho = DensityMatrix(np.diag([p, 1 - p]))
    print(f"diag({p}, {1 - p:.2f}) -> S = {von_neumann_entropy(rho):.6f}")

# mixing two states that overlap gives less than ln 2
plus = PureState.normalized([1, 1])
rho = density_from_mixture([PureState.basis(2, 0), plus], [0.5, 0.5])
print("\nmixture of |0> and |+>:", von_neumann_entropy(rho), "vs ln 2 =", math.log(2))

# entanglement grows as the state rotates towards a Bell pair
for theta in np.linspace(0, math.pi / 4, 5):
    psi = [math.cos(theta), 0, 0, math.sin(theta)]
    print(f"theta = {theta:.3f}   S_A = {entanglement_entropy(psi, 2, 2):.6f}")

# the reduced state of a Bell pair is maximally mixed
bell = PureState.normalized([1, 0, 0, 1])
print("\nreduced Bell state:\n", partial_trace(bell.projector(), 2, 2).entries.real)
