"""Physical constants, information quanta and probability-weighted words.

The quantum of information for word index ``n`` is

    zeta_n = 2**n * ln 2 / (2 pi)

and a word is the probability-weighted sum ``Z = sum_n Pi(n) * zeta_n``.
Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence, Union

import numpy as np
from scipy import constants as _codata

from .errors import DomainError, ValidationError

__all__ = [
    "PhysicalConstants",
    "InformationQuantum",
    "ProbabilityWeights",
    "InformationWord",
    "MAX_WORD_INDEX",
    "NORMALIZATION_TOL",
    "zeta",
    "information_quantum",
    "word_information",
    "mode_energy_quantum",
    "information_energy",
    "pair_production_allowed",
]

MAX_WORD_INDEX = 1023
NORMALIZATION_TOL = 1e-12

# ln 2 / (2 pi); scaled by powers of two with ldexp so doubling is exact.
_ZETA0 = math.log(2.0) / (2.0 * math.pi)


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants used across the package.

    Use :meth:`natural` (hbar = kB = c = 1) or :meth:`si` (CODATA) rather
    than building one by hand; a hand-built instance is still checked for
    ``hbar == h / 2pi``.
    """

    h: float
    hbar: float
    kB: float
    c: float
    m_e: float
    units: str = "custom"

    def __post_init__(self):
        for name in ("h", "hbar", "kB", "c", "m_e"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"constant {name} must be positive, got {value!r}")
        if abs(self.hbar - self.h / (2.0 * math.pi)) > 1e-15 * self.hbar:
            raise ValidationError("hbar must equal h / (2 pi)")

    @classmethod
    def natural(cls, m_e: float = 1.0) -> "PhysicalConstants":
        return cls(h=2.0 * math.pi, hbar=1.0, kB=1.0, c=1.0, m_e=m_e, units="natural")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        return cls(
            h=_codata.h,
            hbar=_codata.h / (2.0 * math.pi),
            kB=_codata.k,
            c=_codata.c,
            m_e=_codata.m_e,
            units="si",
        )

    @classmethod
    def from_units(cls, units: str) -> "PhysicalConstants":
        if units == "natural":
            return cls.natural()
        if units == "si":
            return cls.si()
        raise DomainError(f"unknown units mode {units!r}; expected 'natural' or 'si'")

    def to_dict(self) -> dict:
        return {"h": self.h, "hbar": self.hbar, "kB": self.kB, "c": self.c,
                "m_e": self.m_e, "units": self.units}

    @classmethod
    def from_dict(cls, data: Mapping) -> "PhysicalConstants":
        data = dict(data)
        unknown = set(data) - {"h", "hbar", "kB", "c", "m_e", "units"}
        if unknown:
            raise ValidationError(f"unknown constant keys: {sorted(unknown)}")
        if "h" in data and "hbar" not in data:
            data["hbar"] = data["h"] / (2.0 * math.pi)
        elif "hbar" in data and "h" not in data:
            data["h"] = 2.0 * math.pi * data["hbar"]
        return cls(**data)


def zeta(n: int) -> float:
    """Information quantum ``2**n ln2 / (2 pi)`` for word index ``n``.

    >>> round(zeta(0), 8)
    0.11031782
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"word index must be an integer, got {n!r}")
    n = int(n)
    if n < 0 or n > MAX_WORD_INDEX:
        raise DomainError(f"word index {n} outside [0, {MAX_WORD_INDEX}]")
    return math.ldexp(_ZETA0, n)


@dataclass(frozen=True)
class InformationQuantum:
    n: int
    value: float

    @classmethod
    def of(cls, n: int) -> "InformationQuantum":
        return cls(int(n), zeta(n))


def information_quantum(n: int) -> InformationQuantum:
    return InformationQuantum.of(n)


WeightsLike = Union["ProbabilityWeights", Mapping[int, float], Sequence[float], np.ndarray]


class ProbabilityWeights(Mapping):
    """Immutable map from word index to probability.

    Accepts a mapping ``{n: p}`` or a sequence, in which case positions are
    the indices. Entries must lie in [0, 1] and sum to 1 within 1e-12.
    String keys (as they arrive from JSON) are converted to integers.
    """

    __slots__ = ("_data",)

    def __init__(self, weights, tol: float = NORMALIZATION_TOL):
        if isinstance(weights, ProbabilityWeights):
            self._data = weights._data
            return
        if isinstance(weights, Mapping):
            items = []
            for key, value in weights.items():
                try:
                    index = int(key)
                except (TypeError, ValueError):
                    raise ValidationError(f"weight key {key!r} is not an integer") from None
                if isinstance(key, float) and key != index:
                    raise ValidationError(f"weight key {key!r} is not an integer")
                items.append((index, value))
        else:
            items = list(enumerate(np.asarray(weights, dtype=float).ravel().tolist()))
        if not items:
            raise ValidationError("probability weights are empty")
        data = {}
        for index, value in items:
            if index < 0:
                raise ValidationError(f"weight index {index} is negative")
            if index in data:
                raise ValidationError(f"duplicate weight index {index}")
            try:
                p = float(value)
            except (TypeError, ValueError):
                raise ValidationError(f"weight for {index} is not a number: {value!r}") from None
            if not (0.0 <= p <= 1.0):
                raise ValidationError(f"weight for {index} outside [0, 1]: {p!r}")
            data[index] = p
        total = math.fsum(data.values())
        if abs(total - 1.0) > tol:
            raise ValidationError(f"weights sum to {total!r}, not 1 (tolerance {tol:g})")
        self._data = MappingProxyType(dict(sorted(data.items())))

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __repr__(self):
        return f"ProbabilityWeights({dict(self._data)!r})"

    def __eq__(self, other):
        if isinstance(other, ProbabilityWeights):
            return dict(self._data) == dict(other._data)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._data.items()))

    @property
    def indices(self) -> np.ndarray:
        return np.fromiter(self._data.keys(), dtype=int, count=len(self._data))

    @property
    def probabilities(self) -> np.ndarray:
        return np.fromiter(self._data.values(), dtype=float, count=len(self._data))


@dataclass(frozen=True)
class InformationWord:
    weights: ProbabilityWeights
    value: float
    contributions: Mapping[int, float] = field(default_factory=dict, compare=False)


def word_information(weights: WeightsLike) -> InformationWord:
    """Probability-weighted sum of information quanta over a weight map.

    Parameters
    ----------
    weights : ProbabilityWeights or mapping or sequence
        ``Pi(n)`` for each word index ``n``.

    Returns
    -------
    InformationWord
        ``value`` holds ``Z``; ``contributions`` holds each ``Pi(n) zeta_n``.
    """
    weights = ProbabilityWeights(weights)
    contributions = {n: p * zeta(n) for n, p in weights.items()}
    value = math.fsum(contributions.values())
    return InformationWord(weights, value, MappingProxyType(contributions))


def mode_energy_quantum(omega: float, constants: PhysicalConstants,
                        zero_point_half: bool = False) -> float:
    """Energy ``h omega / (2 pi)`` of one field mode.

    With ``zero_point_half=True`` the conventional oscillator ground energy
    ``hbar omega / 2`` is returned instead.
    """
    if not omega > 0:
        raise DomainError(f"angular frequency must be positive, got {omega!r}")
    energy = constants.h * omega / (2.0 * math.pi)
    return 0.5 * energy if zero_point_half else energy


def information_energy(Z: float, T: float, constants: PhysicalConstants) -> float:
    """Energy carried by information content ``Z`` at temperature ``T``: ``Z kB T``."""
    if T < 0:
        raise DomainError(f"temperature must be non-negative, got {T!r}")
    return Z * constants.kB * T


def pair_production_allowed(E: float, m0: float, constants: PhysicalConstants) -> bool:
    """True iff ``E >= 2 m0 c**2``; the threshold itself is allowed."""
    if E < 0:
        raise DomainError(f"energy must be non-negative, got {E!r}")
    if not m0 > 0:
        raise DomainError(f"rest mass must be positive, got {m0!r}")
    return bool(E >= 2.0 * m0 * constants.c ** 2)
