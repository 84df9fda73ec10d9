"""Quasi-static quantum Otto cycle between two coupling endpoints.

Sign convention: a heat is positive when the working substance absorbs it
from the bath; ``work`` is the net work delivered by the machine.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .spectrum import DqdParams, eigenenergies
from .thermo import gibbs_state


class InvalidSpec(ValueError):
    pass


class UnclassifiablePattern(ValueError):
    """Sign pattern of (Q_h, Q_c, W) that no operating regime produces."""


class Levels(enum.Enum):
    TWO = 2
    FOUR = 4

    @classmethod
    def parse(cls, value) -> "Levels":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        aliases = {"2": cls.TWO, "two": cls.TWO, "twolevel": cls.TWO,
                   "4": cls.FOUR, "four": cls.FOUR, "fourlevel": cls.FOUR}
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"levels must be 2 or 4, got {value!r}") from None


class Regime(enum.Enum):
    ENGINE = "Engine"
    REFRIGERATOR = "Refrigerator"
    HEATER_I = "HeaterI"
    HEATER_II = "HeaterII"
    IDLE = "Idle"

    def __str__(self):
        return self.value


# (sign Q_h, sign Q_c, sign W) after snapping |x| <= tol to zero
_PATTERNS = {
    (1, -1, 1): Regime.ENGINE,
    (-1, 1, -1): Regime.REFRIGERATOR,
    (1, -1, -1): Regime.HEATER_I,
    (-1, -1, -1): Regime.HEATER_II,
    (0, 0, 0): Regime.IDLE,
    # zero-work conduction, the r = 1 boundary between HeaterI and Engine
    (1, -1, 0): Regime.HEATER_I,
    # edges of the heater-II window, where one bath stops exchanging heat
    (0, -1, -1): Regime.HEATER_II,
    (-1, 0, -1): Regime.HEATER_II,
}


@dataclass(frozen=True)
class OttoCycleSpec:
    hot: DqdParams
    cold: DqdParams
    t_hot: float
    t_cold: float
    levels: Levels = Levels.TWO

    def __post_init__(self):
        t_hot, t_cold = float(self.t_hot), float(self.t_cold)
        if not (math.isfinite(t_hot) and math.isfinite(t_cold)):
            raise InvalidSpec("bath temperatures must be finite")
        if not t_cold > 0.0:
            raise InvalidSpec(f"t_cold must be > 0, got {t_cold!r}")
        if not t_hot > t_cold:
            raise InvalidSpec(f"need t_hot > t_cold, got t_hot={t_hot!r}, t_cold={t_cold!r}")
        object.__setattr__(self, "t_hot", t_hot)
        object.__setattr__(self, "t_cold", t_cold)
        object.__setattr__(self, "levels", Levels.parse(self.levels))

    @property
    def r(self) -> float:
        """Compression ratio V_c / V_h."""
        return _ratio(self.cold.v, self.hot.v)

    @property
    def delta1_ratio(self) -> float:
        return _ratio(self.cold.delta1, self.hot.delta1)

    @property
    def delta2_ratio(self) -> float:
        return _ratio(self.cold.delta2, self.hot.delta2)


def _ratio(num: float, den: float) -> float:
    if den == 0.0:
        return math.nan if num == 0.0 else math.inf
    return num / den


@dataclass(frozen=True)
class CycleResult:
    q_hot: float
    q_cold: float
    work: float
    regime: Regime
    eta_carnot: float
    cop_carnot: float
    efficiency: float | None = None
    cop: float | None = None
    # sum_n (E_n^h - E_n^c)(p_n^h - p_n^c); equals ``work`` up to rounding
    work_pairwise: float = 0.0

    @property
    def eta_raw(self) -> float:
        """W / Q_h regardless of regime; may be infinite or nan."""
        if self.q_hot == 0.0:
            if self.work == 0.0:
                return math.nan
            return math.copysign(math.inf, self.work)
        return self.work / self.q_hot


def carnot_bounds(t_hot: float, t_cold: float) -> tuple[float, float]:
    if not (t_hot > t_cold > 0.0):
        raise InvalidSpec(f"need t_hot > t_cold > 0, got ({t_hot!r}, {t_cold!r})")
    return 1.0 - t_cold / t_hot, t_cold / (t_hot - t_cold)


def classical_otto_efficiency(r: float, gamma: float) -> float:
    """Ideal-gas Otto efficiency 1 - r**(1 - gamma)."""
    if not r > 0.0:
        raise ValueError(f"compression ratio must be > 0, got {r!r}")
    if not gamma > 1.0:
        raise ValueError(f"gamma must be > 1, got {gamma!r}")
    return 1.0 - r ** (1.0 - gamma)


def default_tolerance(q_hot: float, q_cold: float) -> float:
    return 1e-12 * max(1.0, abs(q_hot), abs(q_cold))


def _snap_sign(x: float, tol: float) -> int:
    if abs(x) <= tol:
        return 0
    return 1 if x > 0 else -1


def classify_regime(q_hot: float, q_cold: float, work: float, tol: float | None = None) -> Regime:
    if tol is None:
        tol = default_tolerance(q_hot, q_cold)
    pattern = tuple(_snap_sign(x, tol) for x in (q_hot, q_cold, work))
    try:
        return _PATTERNS[pattern]
    except KeyError:
        raise UnclassifiablePattern(
            f"no regime has sign pattern {pattern} for "
            f"q_hot={q_hot!r}, q_cold={q_cold!r}, work={work!r}"
        ) from None


def cycle_levels(spec: OttoCycleSpec) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Level energies at the hot and cold endpoints, paired by sorted order."""
    e_hot = eigenenergies(spec.hot).e_sorted
    e_cold = eigenenergies(spec.cold).e_sorted
    if spec.levels is Levels.TWO:
        return e_hot[:2], e_cold[:2]
    return e_hot, e_cold


def cycle_heats(spec: OttoCycleSpec) -> tuple[float, float, float, float]:
    """``(q_hot, q_cold, work, work_pairwise)`` without regime classification."""
    e_hot, e_cold = cycle_levels(spec)
    p_hot = gibbs_state(e_hot, spec.t_hot).probs
    p_cold = gibbs_state(e_cold, spec.t_cold).probs

    q_hot = math.fsum(e * (ph - pc) for e, ph, pc in zip(e_hot, p_hot, p_cold))
    q_cold = math.fsum(e * (pc - ph) for e, ph, pc in zip(e_cold, p_hot, p_cold))
    work = q_hot + q_cold
    work_pairwise = math.fsum(
        (eh - ec) * (ph - pc) for eh, ec, ph, pc in zip(e_hot, e_cold, p_hot, p_cold)
    )
    return q_hot, q_cold, work, work_pairwise


def run_cycle(spec: OttoCycleSpec, tol: float | None = None) -> CycleResult:
    q_hot, q_cold, work, work_pairwise = cycle_heats(spec)
    regime = classify_regime(q_hot, q_cold, work, tol)
    eta_c, cop_c = carnot_bounds(spec.t_hot, spec.t_cold)
    return CycleResult(
        q_hot=q_hot,
        q_cold=q_cold,
        work=work,
        regime=regime,
        eta_carnot=eta_c,
        cop_carnot=cop_c,
        efficiency=work / q_hot if regime is Regime.ENGINE else None,
        cop=abs(q_cold / work) if regime is Regime.REFRIGERATOR else None,
        work_pairwise=work_pairwise,
    )
