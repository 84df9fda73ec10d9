"""Command-line front end: ``dqd-otto <subcommand> [options]``.

Exit status is 0 on success, 1 on runtime or I/O failure and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .cycle import Levels, OttoCycleSpec, run_cycle
from .spectrum import DqdParams, diagonalize_oracle, eigenenergies, hamiltonian_matrix
from .sweep import (
    FIG8_SCENARIOS,
    Axis,
    NoPositiveWork,
    SweepPlan,
    find_crossings,
    normalized_performance_sweep,
    occupations_vs_axis,
    optimize_work_over_delta2,
    sweep,
)
from .tables import Table, crossing_table, cycle_table, emit, sweep_table

log = logging.getLogger(__name__)

SUBCOMMANDS = ("spectrum", "probs", "cycle", "sweep", "crossings", "optimize")
FORMATS = ("csv", "json")
FIGURES = ("4", "5", "6", "7", "8a", "8b", "8c", "8d", "9", "10", "11")

FLOAT_KEYS = ("delta1_hot", "delta2_hot", "v_hot", "delta1_cold", "delta2_cold", "v_cold",
              "r", "t_hot", "t_cold", "lo", "hi", "gamma", "tol")
PARAM_KEYS = FLOAT_KEYS + ("levels", "axis", "steps")
META_KEYS = ("subcommand", "output", "format", "figure")

DEFAULTS = {
    "delta1_hot": 10.0,
    "delta2_hot": 3.0,
    "v_hot": 10.0,
    "t_hot": 2.0,
    "t_cold": 1.0,
    "levels": 2,
}

_R_SWEEP = {"axis": "r", "lo": 0.2, "hi": 6.0, "steps": 600}
FIGURE_PRESETS = {
    "4": ("sweep", {**_R_SWEEP, "levels": 2}),
    "5": ("probs", {**_R_SWEEP, "levels": 2}),
    "6": ("crossings", {**_R_SWEEP, "levels": 4}),
    "7": ("sweep", {**_R_SWEEP, "lo": 2.5, "levels": 2}),
    "8a": ("sweep", {**_R_SWEEP, "levels": 2}),
    "8b": ("sweep", {**_R_SWEEP, "levels": 2}),
    "8c": ("sweep", {**_R_SWEEP, "levels": 2}),
    "8d": ("sweep", {**_R_SWEEP, "levels": 2}),
    "9": ("sweep", {"axis": "delta2_shared", "lo": 0.1, "hi": 10.0, "steps": 200, "levels": 2}),
    "10": ("sweep", {**_R_SWEEP, "levels": 4, "t_hot": 20.0, "t_cold": 10.0}),
    "11": ("probs", {"axis": "temperature", "lo": 0.1, "hi": 30.0, "steps": 300, "levels": 4}),
}
FIG8_SETS = {
    "8a": ("eta_n", ("classical", "delta2_up", "delta2_down")),
    "8b": ("cop_n", ("classical", "delta2_up", "delta2_down")),
    "8c": ("eta_n", ("classical", "stretched", "squeezed")),
    "8d": ("cop_n", ("classical", "stretched", "squeezed")),
}
FIG9_V_COLD = (5.0, 15.0, 20.0, 25.0)

SUBCOMMAND_RANGES = {
    "sweep": ("r", 0.2, 6.0, 600),
    "crossings": ("r", 0.2, 6.0, 600),
    "probs": ("temperature", 0.1, 30.0, 300),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    output: str = "-"
    format: str = "csv"
    figure: str | None = None

    def hot(self) -> DqdParams:
        p = self.params
        return DqdParams(p["delta1_hot"], p["delta2_hot"], p["v_hot"])

    def cold(self) -> DqdParams:
        p = self.params
        return DqdParams(p["delta1_cold"], p["delta2_cold"], p["v_cold"])

    def cycle_spec(self) -> OttoCycleSpec:
        p = self.params
        return OttoCycleSpec(self.hot(), self.cold(), p["t_hot"], p["t_cold"], Levels.parse(p["levels"]))

    def sweep_plan(self) -> SweepPlan:
        p = self.params
        axis, lo, hi, steps = SUBCOMMAND_RANGES.get(self.subcommand, SUBCOMMAND_RANGES["sweep"])
        return SweepPlan(
            self.cycle_spec(),
            Axis(p["axis"] or axis),
            lo if p["lo"] is None else p["lo"],
            hi if p["hi"] is None else p["hi"],
            steps if p["steps"] is None else p["steps"],
        )


def _parse_value(key: str, text) -> object:
    if text is None:
        return None
    if key in FLOAT_KEYS:
        try:
            value = float(text)
        except (TypeError, ValueError):
            raise UsageError(f"{key}: expected a decimal number, got {text!r}") from None
        if not math.isfinite(value):
            raise UsageError(f"{key}: value must be finite, got {text!r}")
        return value
    if key == "steps":
        try:
            return int(str(text))
        except ValueError:
            raise UsageError(f"steps: expected an integer, got {text!r}") from None
    if key == "levels":
        try:
            return Levels.parse(text).value
        except ValueError:
            raise UsageError(f"levels: expected 2 or 4, got {text!r}") from None
    if key == "axis":
        try:
            return Axis(str(text)).value
        except ValueError:
            choices = ", ".join(a.value for a in Axis)
            raise UsageError(f"axis: expected one of {choices}, got {text!r}") from None
    return str(text)


def read_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in PARAM_KEYS and key not in META_KEYS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        entries[key] = value
    return entries


def render_config(cfg: RunConfig) -> str:
    lines = [f"subcommand = {cfg.subcommand}", f"format = {cfg.format}", f"output = {cfg.output}"]
    if cfg.figure is not None:
        lines.append(f"figure = {cfg.figure}")
    for key in PARAM_KEYS:
        value = cfg.params.get(key)
        if value is not None:
            lines.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqd-otto",
        description="Quasi-static quantum Otto machine with two coupled double quantum dots "
                    "(energies and temperatures in micro-eV, k_B = 1).",
    )
    parser.add_argument("subcommand", nargs="?", choices=SUBCOMMANDS)
    parser.add_argument("--figure", choices=FIGURES,
                        help="expand to the parameter set of one of the reproduced figures")
    parser.add_argument("--config", help="plain-text file of 'key = value' lines")
    parser.add_argument("--output", "-o", help="output path, '-' for standard output")
    parser.add_argument("--format", choices=FORMATS)
    for key in FLOAT_KEYS:
        parser.add_argument("--" + key.replace("_", "-"), dest=key, metavar="X")
    parser.add_argument("--levels", dest="levels", metavar="{2,4}")
    parser.add_argument("--axis", dest="axis", metavar="{" + ",".join(a.value for a in Axis) + "}")
    parser.add_argument("--steps", dest="steps", metavar="N")
    return parser


def parse_config(argv: list[str] | None = None, config_text: str | None = None) -> RunConfig:
    """Merge defaults, a figure preset, a config file and flags (in rising priority)."""
    ns = build_parser().parse_args(argv)
    file_entries = {}
    if ns.config is not None:
        try:
            file_entries = read_config_text(Path(ns.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read config file {ns.config!r}: {exc}") from None
    if config_text is not None:
        file_entries.update(read_config_text(config_text))

    flags = {k: getattr(ns, k) for k in PARAM_KEYS if getattr(ns, k) is not None}
    figure = ns.figure or file_entries.get("figure")
    if figure is not None and figure not in FIGURES:
        raise UsageError(f"figure: expected one of {', '.join(FIGURES)}, got {figure!r}")

    raw = dict.fromkeys(PARAM_KEYS)
    raw.update(DEFAULTS)
    subcommand = None
    if figure is not None:
        subcommand, preset = FIGURE_PRESETS[figure]
        raw.update(preset)
    for source in (file_entries, flags):
        for key in PARAM_KEYS:
            if key in source:
                raw[key] = source[key]
    params = {key: _parse_value(key, value) for key, value in raw.items()}

    subcommand = ns.subcommand or file_entries.get("subcommand") or subcommand
    if subcommand is None:
        raise UsageError("a subcommand or --figure is required")
    if subcommand not in SUBCOMMANDS:
        raise UsageError(f"subcommand: expected one of {', '.join(SUBCOMMANDS)}, got {subcommand!r}")
    if figure is not None and FIGURE_PRESETS[figure][0] != subcommand:
        raise UsageError(f"figure {figure} runs the {FIGURE_PRESETS[figure][0]!r} subcommand, not {subcommand!r}")
    fmt = ns.format or file_entries.get("format") or "csv"
    if fmt not in FORMATS:
        raise UsageError(f"format: expected csv or json, got {fmt!r}")
    output = ns.output or file_entries.get("output") or "-"

    _resolve_cold(params)
    cfg = RunConfig(subcommand, params, output, fmt, figure)
    _validate(cfg)
    return cfg


def _resolve_cold(params: dict) -> None:
    r = params.pop("r")
    if r is not None:
        if params["v_cold"] is not None:
            raise UsageError("give either r or v_cold, not both")
        params["v_cold"] = r * params["v_hot"]
    for name in ("delta1", "delta2", "v"):
        if params[name + "_cold"] is None:
            params[name + "_cold"] = params[name + "_hot"]


def _validate(cfg: RunConfig) -> None:
    try:
        cfg.cycle_spec()
        if cfg.subcommand in ("probs", "sweep", "crossings"):
            cfg.sweep_plan()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p = cfg.params
    if p["tol"] is not None and p["tol"] < 0:
        raise UsageError(f"tol: must be >= 0, got {p['tol']!r}")
    if p["gamma"] is not None and not p["gamma"] > 1:
        raise UsageError(f"gamma: must be > 1, got {p['gamma']!r}")


def run(cfg: RunConfig) -> Table:
    if cfg.figure in FIG8_SETS:
        return _figure8_table(cfg)
    if cfg.figure == "9":
        return _figure9_table(cfg)
    return COMMANDS[cfg.subcommand](cfg)


def _spectrum(cfg: RunConfig) -> Table:
    params = cfg.hot()
    spec = eigenenergies(params)
    oracle, _ = diagonalize_oracle(hamiltonian_matrix(params))
    table = Table(("level", "e_paper", "e_sorted", "e_oracle"))
    for k in range(4):
        table.append(level=k + 1, e_paper=spec.e_paper[k], e_sorted=spec.e_sorted[k], e_oracle=float(oracle[k]))
    return table


def _probs(cfg: RunConfig) -> Table:
    columns, rows = occupations_vs_axis(cfg.sweep_plan())
    return Table(columns, rows)


def _cycle(cfg: RunConfig) -> Table:
    spec = cfg.cycle_spec()
    return cycle_table(spec, run_cycle(spec, tol=cfg.params["tol"]), gamma=cfg.params["gamma"])


def _sweep(cfg: RunConfig) -> Table:
    plan = cfg.sweep_plan()
    return sweep_table(plan, sweep(plan), gamma=cfg.params["gamma"])


def _crossings(cfg: RunConfig) -> Table:
    plan = cfg.sweep_plan()
    return crossing_table(find_crossings(plan))


def _optimize(cfg: RunConfig) -> Table:
    p = cfg.params
    opt = optimize_work_over_delta2(
        p["v_hot"], p["v_cold"], p["delta1_hot"], p["t_hot"], p["t_cold"],
        lo=p["lo"], hi=p["hi"], levels=Levels.parse(p["levels"]),
    )
    table = Table(("v_hot", "v_cold", "delta1", "delta2_star", "w_star"), single=True)
    table.append(v_hot=p["v_hot"], v_cold=p["v_cold"], delta1=p["delta1_hot"],
                 delta2_star=opt.delta2_star, w_star=opt.w_star)
    return table


def _figure8_table(cfg: RunConfig) -> Table:
    column, names = FIG8_SETS[cfg.figure]
    plan = cfg.sweep_plan()
    table = Table(("scenario", "delta1_cold", "delta2_cold", "r", column, "regime"))
    for name in names:
        d1, d2 = FIG8_SCENARIOS[name]
        for row in normalized_performance_sweep(plan, delta1_cold=d1, delta2_cold=d2):
            table.append(scenario=name, delta1_cold=d1, delta2_cold=d2, r=row.r,
                         regime=row.regime, **{column: getattr(row, column)})
    return table


def _figure9_table(cfg: RunConfig) -> Table:
    base_plan = cfg.sweep_plan()
    table = Table(("v_cold", "delta2", "work", "regime", "error"))
    for v_cold in FIG9_V_COLD:
        base = dataclasses.replace(base_plan.base, cold=dataclasses.replace(base_plan.base.cold, v=v_cold))
        plan = dataclasses.replace(base_plan, base=base)
        for row in sweep(plan):
            res = row.result
            table.append(v_cold=v_cold, delta2=row.x, work=res.work if res else None,
                         regime=res.regime if res else None, error=row.error)
    return table


COMMANDS = {
    "spectrum": _spectrum,
    "probs": _probs,
    "cycle": _cycle,
    "sweep": _sweep,
    "crossings": _crossings,
    "optimize": _optimize,
}


def write_output(data: bytes, output: str) -> None:
    if output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        Path(output).write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {output!r}: {exc.strerror or exc}") from exc


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"dqd-otto: usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data = emit(run(cfg), cfg.format)
        write_output(data, cfg.output)
    except NoPositiveWork as exc:
        print(f"dqd-otto: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dqd-otto: io error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"dqd-otto: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
