"""Gibbs thermal states over a list of level energies (k_B = 1, micro-eV)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .spectrum import Spectrum


class NonPositiveTemperature(ValueError):
    pass


@dataclass(frozen=True)
class ThermalState:
    """Occupations of each level at bath temperature ``temperature``.

    ``z`` is the plain partition function sum(exp(-E/T)) when it fits in a
    float. Otherwise ``z`` holds sum(exp(-(E - shift)/T)) and ``shift`` is the
    energy that was subtracted; ``shift == 0.0`` means ``z`` is unshifted.
    """

    temperature: float
    z: float
    probs: tuple[float, ...]
    shift: float = 0.0

    @property
    def log_z(self) -> float:
        return math.log(self.z) - self.shift / self.temperature


def gibbs_state(energies: Sequence[float], t: float) -> ThermalState:
    t = float(t)
    if not t > 0.0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {t!r}")
    energies = [float(e) for e in energies]
    if len(energies) < 2:
        raise ValueError("need at least two levels")
    if not all(math.isfinite(e) for e in energies):
        raise ValueError("energies must be finite")

    e_min = min(energies)
    weights = [math.exp(-(e - e_min) / t) for e in energies]
    z_shifted = math.fsum(weights)
    probs = tuple(w / z_shifted for w in weights)

    try:
        z = z_shifted * math.exp(-e_min / t)
    except OverflowError:
        z = math.inf
    if math.isfinite(z) and z > 0.0:
        return ThermalState(t, z, probs)
    return ThermalState(t, z_shifted, probs, shift=e_min)


def two_level_truncation(s: Spectrum) -> tuple[float, float]:
    """The ground state and first excited level of ``s``."""
    return s.e_sorted[0], s.e_sorted[1]
