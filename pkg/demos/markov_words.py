"""
Words drawn from a Markov chain
===============================

A chain hops between information words. Each visited word maps to a
quantum state; mixing the recent visits gives a density matrix whose
entropy is traced through time.
"""

import numpy as np

from infoquanta import (MarkovChain, PureState, RandomSource, entropy_trajectory,
                        sample_word_sequence, simulate_wiener, stationary_distribution)

chain = MarkovChain((0, 1, 2), [[0.8, 0.15, 0.05],
                                [0.2, 0.6, 0.2],
                                [0.1, 0.3, 0.6]])
pi = stationary_distribution(chain)
print("stationary distribution:", dict(pi))

source = RandomSource(11)
seq = sample_word_sequence(chain, 50_000, source.spawn(0))
print("empirical visit frequencies:", np.bincount(seq) / seq.size)

# words 0 and 2 are orthogonal, word 1 sits between them
states = [PureState.basis(2, 0), PureState.normalized([1, 1]), PureState.basis(2, 1)]
t = np.linspace(0, 10, 200)
for window in (5, 50, 500):
    traj = entropy_trajectory(chain, states, t, source.spawn(window), window)
    print(f"window {window:4d}: mean entropy {traj.mean:.4f}, spread {traj.entropies.std():.4f}")

# a Wiener path for comparison: the continuous-time limit of the same noise
w = simulate_wiener(np.linspace(0, 1, 1001), source.spawn(99))
print("\nW(1) =", w.values[-1], " quadratic variation =", np.sum(np.diff(w.values) ** 2))
