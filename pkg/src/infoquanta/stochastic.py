"""Seeded randomness, Wiener paths, Markov chains over words, entropy trajectories.

Random streams come from numpy's PCG64 bit generator seeded through
``SeedSequence``; Gaussian variates use numpy's ziggurat sampler. A
:class:`RandomSource` belongs to one task at a time. Parallel work calls
:meth:`RandomSource.spawn` with the task index, which seeds the child from
``SeedSequence(seed, spawn_key=(index,))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import PureState, von_neumann_entropy
from .errors import ConvergenceError, DomainError, ShapeError, ValidationError
from .infocore import ProbabilityWeights

__all__ = [
    "ALGORITHM",
    "RandomSource",
    "WienerPath",
    "MarkovChain",
    "EntropyTrajectory",
    "simulate_wiener",
    "simulate_wiener_paths",
    "stationary_distribution",
    "sample_word_sequence",
    "entropy_trajectory",
]

ALGORITHM = "numpy-PCG64/ziggurat"
STATIONARY_TOL = 1e-12
STATIONARY_MAX_ITER = 10**6


class RandomSource:
    """Deterministic random stream identified by ``(seed, spawn_key)``."""

    algorithm = ALGORITHM

    def __init__(self, seed: int = 0, spawn_key: tuple = ()):
        if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < 2**64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        self.generator = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)))

    def spawn(self, index: int) -> "RandomSource":
        """Independent child stream for parallel task ``index``."""
        return RandomSource(self.seed, self.spawn_key + (int(index),))

    def normal(self, size=None) -> np.ndarray:
        return self.generator.standard_normal(size)

    def uniform(self, size=None) -> np.ndarray:
        return self.generator.random(size)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, spawn_key={self.spawn_key})"


def _check_grid(t_grid) -> np.ndarray:
    t = np.asarray(t_grid, dtype=float).ravel()
    if t.size < 1 or t[0] != 0.0:
        raise ValidationError("time grid must start at 0")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise ValidationError("time grid must be strictly increasing")
    return t


@dataclass(frozen=True, eq=False)
class WienerPath:
    times: np.ndarray
    values: np.ndarray


def simulate_wiener_paths(t_grid, n_paths: int, source: RandomSource) -> np.ndarray:
    """``n_paths`` Wiener paths on a shared grid, shape ``(n_paths, len(t_grid))``."""
    t = _check_grid(t_grid)
    if n_paths < 1:
        raise DomainError("need at least one path")
    dW = source.normal((int(n_paths), t.size - 1)) * np.sqrt(np.diff(t))
    W = np.zeros((int(n_paths), t.size))
    np.cumsum(dW, axis=1, out=W[:, 1:])
    return W


def simulate_wiener(t_grid, source: RandomSource) -> WienerPath:
    t = _check_grid(t_grid)
    return WienerPath(t, simulate_wiener_paths(t, 1, source)[0])


@dataclass(frozen=True, eq=False)
class MarkovChain:
    """Row-stochastic chain whose states are word indices."""

    states: tuple
    transition: np.ndarray

    def __post_init__(self):
        states = tuple(int(s) for s in self.states)
        P = np.array(self.transition, dtype=float)
        if len(set(states)) != len(states) or any(s < 0 for s in states):
            raise ValidationError("chain states must be distinct non-negative word indices")
        if P.shape != (len(states), len(states)):
            raise ShapeError(f"transition matrix shape {P.shape} does not match {len(states)} states")
        if not np.all(np.isfinite(P)) or np.any(P < 0) or np.any(P > 1):
            raise ValidationError("transition probabilities must lie in [0, 1]")
        if np.any(np.abs(P.sum(axis=1) - 1.0) > 1e-12):
            raise ValidationError("transition matrix rows must sum to 1")
        P.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transition", P)

    @property
    def size(self) -> int:
        return len(self.states)


def stationary_distribution(chain: MarkovChain, tol: float = STATIONARY_TOL,
                            max_iter: int = STATIONARY_MAX_ITER) -> ProbabilityWeights:
    """Equilibrium weights ``pi = pi P`` by power iteration.

    Iteration starts from the first state and stops once successive
    iterates differ by at most ``tol`` in the max norm.

    Raises
    ------
    ConvergenceError
        No convergence within ``max_iter`` steps, which is what a periodic
        chain produces.
    """
    P = chain.transition
    pi = np.zeros(chain.size)
    pi[0] = 1.0
    for _ in range(int(max_iter)):
        nxt = pi @ P
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - pi)) <= tol:
            pi = nxt
            break
        pi = nxt
    else:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} steps; "
                               "chain may be periodic or reducible")
    residual = np.max(np.abs(pi @ P - pi))
    if residual > 1e-10:
        raise ConvergenceError(f"stationary residual {residual:.3g} exceeds 1e-10")
    return ProbabilityWeights(dict(zip(chain.states, pi.tolist())))


def _sample_positions(chain: MarkovChain, steps: int, source: RandomSource, start) -> np.ndarray:
    if int(steps) != steps or steps < 1:
        raise DomainError(f"steps must be a positive integer, got {steps!r}")
    if start is None:
        pos = 0
    else:
        try:
            pos = chain.states.index(int(start))
        except ValueError:
            raise ValidationError(f"start state {start!r} is not a chain state") from None
    cum = np.cumsum(chain.transition, axis=1)
    cum[:, -1] = 1.0
    u = source.uniform(int(steps) - 1)
    out = np.empty(int(steps), dtype=np.int64)
    out[0] = pos
    last = chain.size - 1
    for j, x in enumerate(u, start=1):
        pos = min(int(np.searchsorted(cum[pos], x, side="right")), last)
        out[j] = pos
    return out


def sample_word_sequence(chain: MarkovChain, steps: int, source: RandomSource,
                         start: int | None = None) -> np.ndarray:
    """Word indices visited by ``steps`` consecutive chain states.

    The first entry is ``start`` (default: the chain's first state).
    """
    positions = _sample_positions(chain, steps, source, start)
    return np.asarray(chain.states, dtype=np.int64)[positions]


@dataclass(frozen=True, eq=False)
class EntropyTrajectory:
    times: np.ndarray
    entropies: np.ndarray
    mean: float
    histogram: np.ndarray
    bin_edges: np.ndarray


def entropy_trajectory(chain: MarkovChain, states: Sequence, t_grid, source: RandomSource,
                       window: int, bins: int = 20, start: int | None = None) -> EntropyTrajectory:
    """Von Neumann entropy of a chain-driven mixture of fixed pure states.

    Chain state ``i`` is paired with ``states[i]``. The chain takes one step
    per grid point; at grid point ``j`` the occupation frequencies over the
    trailing ``window`` steps weight the projectors. ``len(t_grid) + window - 1``
    steps are simulated so every window is full.
    """
    t = np.asarray(t_grid, dtype=float).ravel()
    if t.size < 1 or (t.size > 1 and not np.all(np.diff(t) > 0)):
        raise ValidationError("time grid must be non-empty and strictly increasing")
    if int(window) != window or window < 1:
        raise DomainError(f"window must be a positive integer, got {window!r}")
    window = int(window)
    psis = [s if isinstance(s, PureState) else PureState(s) for s in states]
    if len(psis) != chain.size:
        raise ShapeError(f"{len(psis)} states supplied for a {chain.size}-state chain")
    dim = psis[0].dim
    if any(p.dim != dim for p in psis):
        raise ShapeError("all states must share one dimension")

    positions = _sample_positions(chain, t.size + window - 1, source, start)
    onehot = np.zeros((positions.size + 1, chain.size))
    onehot[np.arange(1, positions.size + 1), positions] = 1.0
    counts = np.cumsum(onehot, axis=0)
    freqs = (counts[window:] - counts[:-window]) / window

    projectors = np.stack([np.outer(p.amplitudes, p.amplitudes.conj()) for p in psis])
    entropies = np.empty(t.size)
    for j, f in enumerate(freqs):
        rho = np.tensordot(f, projectors, axes=1)
        entropies[j] = von_neumann_entropy(0.5 * (rho + rho.conj().T))
    hist, edges = np.histogram(entropies, bins=bins, range=(0.0, max(np.log(dim), 1e-300)))
    return EntropyTrajectory(t, entropies, float(entropies.mean()), hist, edges)
