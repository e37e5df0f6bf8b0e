"""Numerical toolkit for information quanta coupled to a single field mode.

Submodules
----------
infocore    constants, information quanta, words, energy mapping
entropy     Shannon / Von Neumann entropies, density matrices, partial trace
dynamics    truncated Fock space, field-information Hamiltonian, evolution
stochastic  seeded sources, Wiener paths, Markov chains, entropy trajectories
signal      noise spectra, signal power, synthesis, Welch PSD, detection
io          CSV / JSON formats
cli         ``infoquanta`` command
"""

__version__ = "0.1.0"

from .errors import (ConvergenceError, DomainError, InfoQuantaError, PositivityError,
                     ShapeError, ValidationError)
from .infocore import (InformationQuantum, InformationWord, PhysicalConstants, ProbabilityWeights,
                       information_energy, mode_energy_quantum, pair_production_allowed,
                       word_information, zeta)
from .entropy import (DensityMatrix, JointDistribution, PureState, density_from_mixture,
                      entanglement_entropy, joint_shannon_entropy, marginals, mutual_information,
                      partial_trace, von_neumann_entropy)
from .dynamics import (FockSpace, HamiltonianModel, build_hamiltonian, build_ladder,
                       eigen_spectrum, evolve, expectation, ground_energy_analytic)
from .stochastic import (MarkovChain, RandomSource, entropy_trajectory, sample_word_sequence,
                         simulate_wiener, stationary_distribution)
from .signal import (NoiseModel, SignalModel, TimeSeries, detect_excess_power, information_matrix_Z,
                     inject_tones, invert_information, measured_power, noise_psd, signal_power_rate,
                     synthesize_noise, welch_psd)

__all__ = [
    "ConvergenceError", "DomainError", "InfoQuantaError", "PositivityError", "ShapeError",
    "ValidationError", "InformationQuantum", "InformationWord", "PhysicalConstants",
    "ProbabilityWeights", "information_energy", "mode_energy_quantum", "pair_production_allowed",
    "word_information", "zeta", "DensityMatrix", "JointDistribution", "PureState",
    "density_from_mixture", "entanglement_entropy", "joint_shannon_entropy", "marginals",
    "mutual_information", "partial_trace", "von_neumann_entropy", "FockSpace", "HamiltonianModel",
    "build_hamiltonian", "build_ladder", "eigen_spectrum", "evolve", "expectation",
    "ground_energy_analytic", "MarkovChain", "RandomSource", "entropy_trajectory",
    "sample_word_sequence", "simulate_wiener", "stationary_distribution", "NoiseModel",
    "SignalModel", "TimeSeries", "detect_excess_power", "information_matrix_Z", "inject_tones",
    "invert_information", "measured_power", "noise_psd", "signal_power_rate", "synthesize_noise",
    "welch_psd",
]
