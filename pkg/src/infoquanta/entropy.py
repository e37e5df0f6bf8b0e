"""Shannon and Von Neumann entropies, density matrices and partial traces.

All entropies are in nats. Composite indices of a bipartite system are
row-major, ``i = a * dimB + b``, so subsystem A is the slow index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PositivityError, ShapeError, ValidationError
from .infocore import NORMALIZATION_TOL, ProbabilityWeights

__all__ = [
    "JointDistribution",
    "DensityMatrix",
    "PureState",
    "HERMITIAN_TOL",
    "TRACE_TOL",
    "EIGEN_CLAMP",
    "to_bits",
    "binary_entropy",
    "shannon_entropy",
    "joint_shannon_entropy",
    "marginals",
    "mutual_information",
    "von_neumann_entropy",
    "partial_trace",
    "entanglement_entropy",
    "density_from_mixture",
]

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
EIGEN_CLAMP = 1e-10


def to_bits(nats):
    """Convert an entropy in nats to bits."""
    return nats / math.log(2.0)


def _xlogx_sum(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    nz = p[p > 0]
    # adding 0.0 turns the -0.0 of an empty or certain distribution into +0.0
    return float(-np.sum(nz * np.log(nz))) + 0.0


def binary_entropy(p: float) -> float:
    """Entropy of a two-outcome distribution ``(p, 1 - p)``."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"probability outside [0, 1]: {p!r}")
    return _xlogx_sum(np.array([p, 1.0 - p]))


def shannon_entropy(p) -> float:
    """Entropy of a one-dimensional distribution, with 0 ln 0 = 0."""
    if isinstance(p, ProbabilityWeights):
        p = p.probabilities
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > NORMALIZATION_TOL:
        raise ValidationError("not a probability vector")
    return _xlogx_sum(p)


class JointDistribution:
    """Joint probability table ``Pi(n, k)``: rows are words, columns are modes."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if isinstance(matrix, JointDistribution):
            self.matrix = matrix.matrix
            return
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.size == 0:
            raise ValidationError(f"joint distribution must be a non-empty 2-D table, got shape {m.shape}")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValidationError("joint distribution has negative or non-finite entries")
        total = math.fsum(m.ravel().tolist())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(f"joint distribution sums to {total!r}, not 1")
        m.setflags(write=False)
        self.matrix = m

    @property
    def shape(self):
        return self.matrix.shape

    def __repr__(self):
        return f"JointDistribution({self.matrix.tolist()!r})"


def joint_shannon_entropy(dist) -> float:
    """Bi-dimensional Shannon entropy ``-sum_xy Pi(x,y) ln Pi(x,y)``."""
    return _xlogx_sum(JointDistribution(dist).matrix)


def marginals(dist) -> tuple[ProbabilityWeights, ProbabilityWeights]:
    m = JointDistribution(dist).matrix
    rows = m.sum(axis=1)
    cols = m.sum(axis=0)
    # fsum of the full table already passed; renormalise against summation-order drift
    return (ProbabilityWeights(rows / math.fsum(rows.tolist())),
            ProbabilityWeights(cols / math.fsum(cols.tolist())))


def mutual_information(dist) -> float:
    """``S(x) + S(y) - S(x, y)``; round-off negatives above -1e-12 become 0."""
    dist = JointDistribution(dist)
    px, py = marginals(dist)
    mi = _xlogx_sum(px.probabilities) + _xlogx_sum(py.probabilities) - _xlogx_sum(dist.matrix)
    if -1e-12 < mi < 0:
        mi = 0.0
    return mi


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.array(self.amplitudes, dtype=complex).ravel()
        if psi.size == 0:
            raise ValidationError("state vector is empty")
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"state norm is {norm!r}, not 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        psi = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("cannot normalise the zero vector")
        return cls(psi / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        psi = np.zeros(dim, dtype=complex)
        psi[index] = 1.0
        return cls(psi)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are tolerated as round-off; anything more
    negative raises :class:`PositivityError`.
    """

    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
            raise ShapeError(f"density matrix must be square, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(rho)
        if abs(tr.real - 1.0) > TRACE_TOL or abs(tr.imag) > 1e-12:
            raise ValidationError(f"density matrix trace is {tr!r}, not 1")
        lo = np.linalg.eigvalsh(rho).min()
        if lo < -EIGEN_CLAMP:
            raise PositivityError(f"density matrix has eigenvalue {lo!r} < -{EIGEN_CLAMP:g}")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)


def _as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def _as_state(psi) -> PureState:
    return psi if isinstance(psi, PureState) else PureState(psi)


def von_neumann_entropy(rho) -> float:
    """``-tr(rho ln rho)`` from the eigenvalues of ``rho``.

    Eigenvalues in ``[-1e-10, 0]`` count as zero.
    """
    rho = _as_density(rho)
    evals = np.linalg.eigvalsh(rho.entries)
    if evals.min() < -EIGEN_CLAMP:
        raise PositivityError(f"eigenvalue {evals.min()!r} below clamping window")
    evals = np.clip(evals, 0.0, None)
    s = _xlogx_sum(evals)
    return min(max(s, 0.0), math.log(rho.dim))


def partial_trace(rho, dimA: int, dimB: int, keep: str = "A") -> DensityMatrix:
    """Reduced density matrix of one half of a bipartite system.

    Parameters
    ----------
    rho : DensityMatrix or array_like
        State on the composite space of dimension ``dimA * dimB``.
    dimA, dimB : int
        Subsystem dimensions.
    keep : {"A", "B"}
        Which subsystem survives.
    """
    rho = _as_density(rho)
    if dimA < 1 or dimB < 1 or rho.dim != dimA * dimB:
        raise ShapeError(f"density matrix of dim {rho.dim} does not split as {dimA} x {dimB}")
    t = rho.entries.reshape(dimA, dimB, dimA, dimB)
    if keep in ("A", "a", 0):
        reduced = np.einsum("ijkj->ik", t)
    elif keep in ("B", "b", 1):
        reduced = np.einsum("ijil->jl", t)
    else:
        raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")
    # symmetrise away round-off so the result passes the Hermitian check
    return DensityMatrix(0.5 * (reduced + reduced.conj().T))


def entanglement_entropy(psi, dimA: int, dimB: int) -> float:
    psi = _as_state(psi)
    if psi.dim != dimA * dimB:
        raise ShapeError(f"state of dim {psi.dim} does not split as {dimA} x {dimB}")
    return von_neumann_entropy(partial_trace(psi.projector(), dimA, dimB, keep="A"))


def density_from_mixture(states: Sequence, probs) -> DensityMatrix:
    """``sum_i p_i |psi_i><psi_i|`` for pure states ``psi_i``.

    ``probs`` is indexed by position in ``states``.
    """
    states = [_as_state(s) for s in states]
    if not states:
        raise ValidationError("mixture needs at least one state")
    probs = ProbabilityWeights(probs)
    dim = states[0].dim
    if any(s.dim != dim for s in states):
        raise ShapeError("all states in a mixture must share one dimension")
    if max(probs) >= len(states):
        raise ShapeError(f"probability index {max(probs)} has no matching state")
    rho = np.zeros((dim, dim), dtype=complex)
    for i, p in probs.items():
        if p:
            v = states[i].amplitudes
            rho += p * np.outer(v, v.conj())
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho)
