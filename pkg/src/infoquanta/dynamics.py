"""Single-mode field coupled to a scalar information quantum.

The Hamiltonian on a Fock space truncated at ``D`` levels is

    H = hbar w a^dag a + hbar w zeta + (lambda zeta / 2) hbar w (a^dag + a)

Completing the square in ``a^dag + a`` gives the exact (untruncated) levels
``hbar w (m + zeta - (lambda zeta / 2)**2)``, which serve as the oracle for
the numerical spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .entropy import PureState
from .errors import ConvergenceError, DomainError, ShapeError, ValidationError
from .infocore import PhysicalConstants

__all__ = [
    "DEFAULT_DIM",
    "DEFAULT_COUPLING",
    "FockSpace",
    "LadderOperators",
    "HamiltonianModel",
    "EvolutionResult",
    "build_ladder",
    "build_hamiltonian",
    "eigen_spectrum",
    "ground_energy_analytic",
    "evolve",
    "expectation",
]

DEFAULT_DIM = 64
DEFAULT_COUPLING = 0.1


@dataclass(frozen=True)
class FockSpace:
    dim: int = DEFAULT_DIM
    omega: float = 1.0

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"Fock truncation must be an integer >= 2, got {self.dim!r}")
        if not self.omega > 0:
            raise DomainError(f"mode frequency must be positive, got {self.omega!r}")


@dataclass(frozen=True, eq=False)
class LadderOperators:
    lowering: np.ndarray
    raising: np.ndarray

    @property
    def number(self) -> np.ndarray:
        return self.raising @ self.lowering

    def commutator(self) -> np.ndarray:
        return self.lowering @ self.raising - self.raising @ self.lowering


def build_ladder(D: int) -> LadderOperators:
    """Truncated annihilation/creation matrices with ``a[m-1, m] = sqrt(m)``."""
    if int(D) != D or D < 2:
        raise DomainError(f"Fock truncation must be an integer >= 2, got {D!r}")
    D = int(D)
    a = np.diag(np.sqrt(np.arange(1, D, dtype=float)), k=1)
    adag = a.T.copy()
    a.setflags(write=False)
    adag.setflags(write=False)
    return LadderOperators(a, adag)


@dataclass(frozen=True, eq=False)
class HamiltonianModel:
    space: FockSpace
    zeta: float
    coupling: float = DEFAULT_COUPLING
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def __post_init__(self):
        if not self.zeta >= 0:
            raise DomainError(f"information quantum must be non-negative, got {self.zeta!r}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def ladder(self) -> LadderOperators:
        return build_ladder(self.space.dim)

    @cached_property
    def matrix(self) -> np.ndarray:
        hw = self.constants.hbar * self.space.omega
        ops = self.ladder
        H = hw * np.diag(np.arange(self.dim, dtype=float))
        H += hw * self.zeta * np.eye(self.dim)
        H += 0.5 * self.coupling * self.zeta * hw * (ops.raising + ops.lowering)
        H.setflags(write=False)
        return H

    @cached_property
    def _eigh(self):
        try:
            evals, evecs = np.linalg.eigh(self.matrix)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"eigensolver failed: {exc}") from exc
        return evals, evecs


def build_hamiltonian(space: FockSpace, zeta: float, coupling: float = DEFAULT_COUPLING,
                      constants: PhysicalConstants | None = None) -> HamiltonianModel:
    constants = constants if constants is not None else PhysicalConstants.natural()
    return HamiltonianModel(space, float(zeta), float(coupling), constants)


def eigen_spectrum(model: HamiltonianModel) -> np.ndarray:
    """Ascending eigenvalues of the model, checked by reconstruction.

    Raises
    ------
    ConvergenceError
        If LAPACK fails or ``V diag(E) V^T`` misses ``H`` by more than
        ``1e-9 * max|H|``.
    """
    evals, evecs = model._eigh
    H = model.matrix
    scale = np.max(np.abs(H))
    err = np.max(np.abs(H - (evecs * evals) @ evecs.conj().T))
    if scale > 0 and err > 1e-9 * scale:
        raise ConvergenceError(f"eigendecomposition residual {err:.3g} exceeds tolerance")
    return evals.copy()


def ground_energy_analytic(omega: float, zeta: float, coupling: float,
                           constants: PhysicalConstants | None = None) -> float:
    constants = constants if constants is not None else PhysicalConstants.natural()
    g = 0.5 * coupling * zeta
    return constants.hbar * omega * (zeta - g * g)


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    times: np.ndarray
    states: list
    number: np.ndarray
    energy: np.ndarray

    @property
    def observables(self) -> dict:
        return {"number": self.number, "energy": self.energy}


def expectation(state, operator) -> float:
    """``<psi|O|psi>`` for a Hermitian operator ``O``; the imaginary part is dropped."""
    psi = state.amplitudes if isinstance(state, PureState) else np.asarray(state, dtype=complex)
    O = np.asarray(operator)
    if O.shape != (psi.size, psi.size):
        raise ShapeError(f"operator shape {O.shape} does not match state dim {psi.size}")
    if np.max(np.abs(O - O.conj().T)) > 1e-12:
        raise ValidationError("operator is not Hermitian")
    value = np.vdot(psi, O @ psi)
    return float(value.real)


def evolve(state, model: HamiltonianModel, t: float, steps: int) -> EvolutionResult:
    """Exact unitary evolution ``exp(-i H t / hbar) psi`` on a uniform grid.

    The grid has ``steps + 1`` points from 0 to ``t`` inclusive. Propagation
    goes through the eigenbasis of ``H``, so there is no integrator error.
    """
    psi0 = state if isinstance(state, PureState) else PureState(state)
    if psi0.dim != model.dim:
        raise ShapeError(f"state dim {psi0.dim} does not match model dim {model.dim}")
    if t < 0:
        raise DomainError(f"evolution time must be non-negative, got {t!r}")
    if int(steps) != steps or steps < 1:
        raise DomainError(f"steps must be a positive integer, got {steps!r}")
    evals, evecs = model._eigh
    times = np.linspace(0.0, float(t), int(steps) + 1)
    coeffs = evecs.conj().T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(times, evals) / model.constants.hbar)
    amps = (phases * coeffs) @ evecs.T
    amps[0] = psi0.amplitudes
    # unit-modulus phases keep the norm to round-off; renormalise to pin it at 1
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    populations = np.abs(amps) ** 2
    number = populations @ np.arange(model.dim, dtype=float)
    energy = np.einsum("ti,ti->t", amps.conj(), amps @ model.matrix.T).real
    states = [PureState(a) for a in amps]
    return EvolutionResult(times, states, number, energy)
