"""One-dimensional parameter sweeps, regime-boundary search and work optimization."""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cycle import CycleResult, Levels, OttoCycleSpec, Regime, cycle_heats, run_cycle
from .search import bisect_sign_change, golden_section_max
from .spectrum import DqdParams, eigenenergies
from .thermo import gibbs_state

QUANTITIES = ("q_hot", "q_cold", "work")

BASELINE_HOT = DqdParams(delta1=10.0, delta2=3.0, v=10.0)
BASELINE_T_HOT = 2.0
BASELINE_T_COLD = 1.0

# cold-endpoint tunneling overrides (delta1_cold, delta2_cold) against BASELINE_HOT
FIG8_SCENARIOS = {
    "classical": (10.0, 3.0),
    "delta2_up": (10.0, 4.0),
    "delta2_down": (10.0, 2.0),
    "stretched": (18.0, 2.0),
    "squeezed": (7.0, 4.0),
}


class Axis(enum.Enum):
    R = "r"
    DELTA2_COLD = "delta2_cold"
    TEMPERATURE = "temperature"
    DELTA2_SHARED = "delta2_shared"


class NoPositiveWork(ValueError):
    pass


def baseline_spec(r: float = 1.0, levels: Levels = Levels.TWO) -> OttoCycleSpec:
    cold = dataclasses.replace(BASELINE_HOT, v=r * BASELINE_HOT.v)
    return OttoCycleSpec(BASELINE_HOT, cold, BASELINE_T_HOT, BASELINE_T_COLD, levels)


@dataclass(frozen=True)
class SweepPlan:
    base: OttoCycleSpec
    axis: Axis
    lo: float
    hi: float
    steps: int
    refine: bool = False

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got ({self.lo!r}, {self.hi!r})")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if self.axis is Axis.R and self.base.hot.v <= 0.0:
            raise ValueError("an r sweep needs a positive hot-endpoint V")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def spec_at(self, x: float) -> OttoCycleSpec:
        """Copy of ``base`` with the swept variable set to ``x``.

        r scales the cold-endpoint Coulomb coupling; temperature sets ``t_hot``
        and keeps ``t_hot / t_cold`` fixed.
        """
        base = self.base
        x = float(x)
        if self.axis is Axis.R:
            return dataclasses.replace(base, cold=dataclasses.replace(base.cold, v=x * base.hot.v))
        if self.axis is Axis.DELTA2_COLD:
            return dataclasses.replace(base, cold=dataclasses.replace(base.cold, delta2=x))
        if self.axis is Axis.DELTA2_SHARED:
            return dataclasses.replace(
                base,
                hot=dataclasses.replace(base.hot, delta2=x),
                cold=dataclasses.replace(base.cold, delta2=x),
            )
        ratio = base.t_cold / base.t_hot
        return dataclasses.replace(base, t_hot=x, t_cold=x * ratio)


@dataclass(frozen=True)
class SweepRow:
    x: float
    spec: OttoCycleSpec | None
    result: CycleResult | None
    error: str | None = None


def evaluate(plan: SweepPlan, x: float) -> SweepRow:
    try:
        spec = plan.spec_at(x)
        return SweepRow(float(x), spec, run_cycle(spec))
    except (ValueError, ArithmeticError) as exc:
        return SweepRow(float(x), None, None, f"{type(exc).__name__}: {exc}")


def sweep(plan: SweepPlan) -> list[SweepRow]:
    return [evaluate(plan, x) for x in plan.grid()]


@dataclass(frozen=True)
class CrossingReport:
    quantity: str
    location: float
    bracket: tuple[float, float]
    regimes: tuple[Regime | None, Regime | None]


def _quantity(plan: SweepPlan, name: str) -> Callable[[float], float]:
    index = QUANTITIES.index(name)

    def f(x: float) -> float:
        return cycle_heats(plan.spec_at(x))[index]

    return f


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _regime_at(plan: SweepPlan, x: float) -> Regime | None:
    try:
        res = run_cycle(plan.spec_at(x), tol=0.0)
    except (ValueError, ArithmeticError):
        return None
    return res.regime


def find_crossings(plan: SweepPlan, rows: list[SweepRow] | None = None,
                   xtol: float = 1e-12) -> list[CrossingReport]:
    """Zero crossings of q_hot, q_cold and work, refined on the continuous model.

    Each adjacent pair of grid rows whose values have strictly opposite signs
    is bisected down to ``xtol``; a grid row where a quantity is exactly zero
    between rows of opposite sign is reported as an exact crossing.
    """
    if rows is None:
        rows = sweep(plan)
    rows = [row for row in rows if row.result is not None]
    reports = []
    for name in QUANTITIES:
        f = _quantity(plan, name)
        values = [getattr(row.result, name) for row in rows]
        signs = [_sign(v) for v in values]
        for k in range(len(rows) - 1):
            a, b = rows[k], rows[k + 1]
            if signs[k] * signs[k + 1] < 0:
                br = bisect_sign_change(f, a.x, b.x, xtol=xtol)
                if br.width == 0.0:
                    before, after = _regime_at(plan, a.x), _regime_at(plan, b.x)
                else:
                    before, after = _regime_at(plan, br.lo), _regime_at(plan, br.hi)
                reports.append(CrossingReport(name, br.midpoint, (br.lo, br.hi), (before, after)))
            elif signs[k + 1] == 0 and signs[k] != 0 and k + 2 < len(rows) and signs[k + 2] == -signs[k]:
                reports.append(CrossingReport(
                    name, b.x, (b.x, b.x), (_regime_at(plan, a.x), _regime_at(plan, rows[k + 2].x))
                ))
    reports.sort(key=lambda rep: (rep.location, QUANTITIES.index(rep.quantity)))
    return reports


def heater_ii_window(crossings: list[CrossingReport]) -> tuple[float, float] | None:
    """Interval between a q_hot root and the next q_cold root, if HeaterII lies between."""
    for rep in crossings:
        if rep.quantity != "q_hot" or rep.regimes[1] is not Regime.HEATER_II:
            continue
        for other in crossings:
            if other.quantity == "q_cold" and other.location > rep.location:
                return rep.location, other.location
    return None


@dataclass(frozen=True)
class WorkOptimum:
    delta2_star: float
    w_star: float
    grid_best: float


def optimize_work_over_delta2(
    hot_v: float,
    cold_v: float,
    delta1: float,
    t_hot: float,
    t_cold: float,
    lo: float | None = None,
    hi: float | None = None,
    levels: Levels = Levels.TWO,
    grid_points: int = 200,
    xtol: float = 1e-4,
) -> WorkOptimum:
    """Maximize net work over a tunneling coupling shared by both endpoints."""
    lo = 0.01 * delta1 if lo is None else float(lo)
    hi = float(delta1) if hi is None else float(hi)
    if not 0.0 < lo < hi <= delta1:
        raise ValueError(f"search range must satisfy 0 < lo < hi <= delta1, got ({lo!r}, {hi!r})")

    base = OttoCycleSpec(DqdParams(delta1, lo, hot_v), DqdParams(delta1, lo, cold_v),
                         t_hot, t_cold, levels)
    plan = SweepPlan(base, Axis.DELTA2_SHARED, lo, hi, grid_points)

    def work(d2: float) -> float:
        return cycle_heats(plan.spec_at(d2))[2]

    grid = plan.grid()
    values = np.array([work(x) for x in grid])
    k = int(np.argmax(values))
    grid_best = float(values[k])
    if grid_best <= 0.0:
        raise NoPositiveWork(f"work is never positive for delta2 in [{lo!r}, {hi!r}] (max {grid_best!r})")

    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    x_star, w_refined = golden_section_max(work, a, b, tol=xtol)
    if w_refined < grid_best:
        x_star, w_refined = float(grid[k]), grid_best
    return WorkOptimum(float(x_star), float(w_refined), grid_best)


def occupations_vs_r(plan: SweepPlan) -> tuple[tuple[str, ...], list[tuple[float, ...]]]:
    """Hot- and cold-bath occupations of each cycle level along an r sweep."""
    if plan.axis is not Axis.R:
        raise ValueError("occupations_vs_r needs an r sweep")
    n = 2 if plan.base.levels is Levels.TWO else 4
    columns = ("r",) + tuple(f"p{i}_hot" for i in range(1, n + 1)) + tuple(
        f"p{i}_cold" for i in range(1, n + 1)
    )
    rows = []
    for x in plan.grid():
        p_hot, p_cold = level_occupations(plan.spec_at(x))
        rows.append((float(x),) + p_hot + p_cold)
    return columns, rows


def level_occupations(spec: OttoCycleSpec) -> tuple[tuple[float, ...], tuple[float, ...]]:
    e_hot = eigenenergies(spec.hot).e_sorted
    e_cold = eigenenergies(spec.cold).e_sorted
    if spec.levels is Levels.TWO:
        e_hot, e_cold = e_hot[:2], e_cold[:2]
    return gibbs_state(e_hot, spec.t_hot).probs, gibbs_state(e_cold, spec.t_cold).probs


def occupations_vs_temperature(params: DqdParams, temperatures,
                               levels: Levels = Levels.FOUR) -> tuple[tuple[str, ...], list[tuple[float, ...]]]:
    energies = eigenenergies(params).e_sorted
    if Levels.parse(levels) is Levels.TWO:
        energies = energies[:2]
    columns = ("temperature",) + tuple(f"p{i}" for i in range(1, len(energies) + 1))
    rows = [(float(t),) + gibbs_state(energies, t).probs for t in temperatures]
    return columns, rows


def occupations_vs_axis(plan: SweepPlan):
    """Occupation table for an r sweep or a temperature sweep of ``plan.base.hot``."""
    if plan.axis is Axis.R:
        return occupations_vs_r(plan)
    if plan.axis is Axis.TEMPERATURE:
        return occupations_vs_temperature(plan.base.hot, plan.grid(), plan.base.levels)
    raise ValueError(f"occupation tables support axis r or temperature, not {plan.axis.value}")


def ground_occupation_crossing(plan: SweepPlan, lo: float, hi: float, xtol: float = 1e-12) -> float:
    """r where the hot- and cold-bath ground-state occupations coincide."""

    def diff(x: float) -> float:
        p_hot, p_cold = level_occupations(plan.spec_at(x))
        return p_hot[0] - p_cold[0]

    return bisect_sign_change(diff, lo, hi, xtol=xtol).midpoint


@dataclass(frozen=True)
class NormalizedRow:
    r: float
    eta_n: float | None
    cop_n: float | None
    regime: Regime | None
    result: CycleResult | None


def normalized_performance_sweep(plan: SweepPlan, delta1_cold: float | None = None,
                                 delta2_cold: float | None = None) -> list[NormalizedRow]:
    """Efficiency and COP relative to their Carnot bounds along an r sweep.

    ``delta1_cold`` and ``delta2_cold`` are absolute cold-endpoint tunnelings.
    """
    if plan.axis is not Axis.R:
        raise ValueError("normalized performance sweeps run along r")
    cold = plan.base.cold
    if delta1_cold is not None:
        cold = dataclasses.replace(cold, delta1=delta1_cold)
    if delta2_cold is not None:
        cold = dataclasses.replace(cold, delta2=delta2_cold)
    plan = dataclasses.replace(plan, base=dataclasses.replace(plan.base, cold=cold))

    out = []
    for row in sweep(plan):
        res = row.result
        if res is None:
            out.append(NormalizedRow(row.x, None, None, None, None))
            continue
        eta_n = res.efficiency / res.eta_carnot if res.efficiency is not None else None
        cop_n = res.cop / res.cop_carnot if res.cop is not None else None
        out.append(NormalizedRow(row.x, eta_n, cop_n, res.regime, res))
    return out


def engine_to_refrigerator_boundary(plan: SweepPlan, **overrides) -> float:
    """First r where q_hot turns negative after an Engine or HeaterI stretch."""
    cold = plan.base.cold
    if overrides.get("delta1_cold") is not None:
        cold = dataclasses.replace(cold, delta1=overrides["delta1_cold"])
    if overrides.get("delta2_cold") is not None:
        cold = dataclasses.replace(cold, delta2=overrides["delta2_cold"])
    plan = dataclasses.replace(plan, base=dataclasses.replace(plan.base, cold=cold))
    for rep in find_crossings(plan):
        if rep.quantity == "q_hot" and rep.regimes[1] in (Regime.REFRIGERATOR, Regime.HEATER_II):
            return rep.location
    return math.nan
