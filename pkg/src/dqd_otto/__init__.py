"""Quasi-static quantum Otto machine whose working substance is a pair of
capacitively coupled double quantum dots."""

from .cycle import (
    CycleResult,
    InvalidSpec,
    Levels,
    OttoCycleSpec,
    Regime,
    UnclassifiablePattern,
    carnot_bounds,
    classical_otto_efficiency,
    classify_regime,
    run_cycle,
)
from .spectrum import (
    DegenerateConstruction,
    DqdParams,
    InvalidParams,
    NoConvergence,
    NonSymmetric,
    Spectrum,
    diagonalize_oracle,
    eigenenergies,
    eigenstates,
    hamiltonian_matrix,
)
from .sweep import (
    Axis,
    CrossingReport,
    NoPositiveWork,
    SweepPlan,
    find_crossings,
    normalized_performance_sweep,
    occupations_vs_axis,
    optimize_work_over_delta2,
    sweep,
)
from .thermo import NonPositiveTemperature, ThermalState, gibbs_state, two_level_truncation

__version__ = "0.1.0"
