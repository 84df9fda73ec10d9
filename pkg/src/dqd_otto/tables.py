"""Row tables and their deterministic CSV / JSON rendering."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field

from .cycle import CycleResult, OttoCycleSpec, classical_otto_efficiency
from .sweep import CrossingReport, SweepPlan, SweepRow

CYCLE_COLUMNS = (
    "r", "delta1_ratio", "delta2_ratio", "q_hot", "q_cold", "work",
    "eta_raw", "eta", "cop", "regime", "eta_carnot", "cop_carnot",
)
CROSSING_COLUMNS = ("quantity", "location", "bracket_lo", "bracket_hi", "regime_before", "regime_after")


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    # render as a single JSON object instead of an array
    single: bool = False

    def append(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)}")
        self.rows.append(tuple(values.get(c) for c in self.columns))

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _nonfinite_text(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return "inf" if x > 0 else "-inf"


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return str(value.value) if not isinstance(value.value, int) else value.name
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, "__float__"):
        x = float(value)
        return repr(x) if math.isfinite(x) else _nonfinite_text(x)
    return str(value)


def _json_value(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, enum.Enum):
        return format_cell(value)
    if isinstance(value, int):
        return value
    x = float(value)
    return x if math.isfinite(x) else _nonfinite_text(x)


def emit(table: Table, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        records = [{k: _json_value(v) for k, v in rec.items()} for rec in table.records()]
        payload = records[0] if table.single and len(records) == 1 else records
        return (json.dumps(payload, allow_nan=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def cycle_record(spec: OttoCycleSpec, res: CycleResult) -> dict:
    return {
        "r": spec.r,
        "delta1_ratio": spec.delta1_ratio,
        "delta2_ratio": spec.delta2_ratio,
        "q_hot": res.q_hot,
        "q_cold": res.q_cold,
        "work": res.work,
        "eta_raw": res.eta_raw,
        "eta": res.efficiency,
        "cop": res.cop,
        "regime": res.regime,
        "eta_carnot": res.eta_carnot,
        "cop_carnot": res.cop_carnot,
    }


def cycle_table(spec: OttoCycleSpec, res: CycleResult, gamma: float | None = None) -> Table:
    columns = CYCLE_COLUMNS + (("eta_otto",) if gamma is not None else ())
    table = Table(columns, single=True)
    record = cycle_record(spec, res)
    if gamma is not None:
        record["eta_otto"] = _otto_or_none(spec.r, gamma)
    table.append(**record)
    return table


def _otto_or_none(r: float, gamma: float) -> float | None:
    try:
        return classical_otto_efficiency(r, gamma)
    except ValueError:
        return None


def sweep_table(plan: SweepPlan, rows: list[SweepRow], gamma: float | None = None) -> Table:
    axis = plan.axis.value
    lead = () if axis == "r" else (axis,)
    extra = ("eta_otto",) if gamma is not None else ()
    table = Table(lead + CYCLE_COLUMNS + extra + ("error",))
    for row in rows:
        record = {axis: row.x} if lead else {}
        if row.result is None:
            if not lead:
                record["r"] = row.x
            record["error"] = row.error
        else:
            record.update(cycle_record(row.spec, row.result))
            if gamma is not None:
                record["eta_otto"] = _otto_or_none(row.spec.r, gamma)
        table.append(**record)
    return table


def crossing_table(reports: list[CrossingReport]) -> Table:
    table = Table(CROSSING_COLUMNS)
    for rep in reports:
        table.append(
            quantity=rep.quantity,
            location=rep.location,
            bracket_lo=rep.bracket[0],
            bracket_hi=rep.bracket[1],
            regime_before=rep.regimes[0],
            regime_after=rep.regimes[1],
        )
    return table
