"""CSV / JSON serialization of sweep results and simple SVG line plots.

One row per (grid point, pair). Floats are written with ``repr`` (shortest
round-trip form). Unstable points keep their coordinates, ``stable=false``,
``regime=unstable`` and empty (CSV) or null (JSON) measure fields.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import ContractError
from .sweep import SweepResult

__all__ = ["CSV_COLUMNS", "MEASURE_COLUMNS", "result_rows", "to_csv", "to_json",
           "read_csv", "read_json", "emit_results", "write_plot"]

CSV_COLUMNS = (
    "axis1", "axis2", "stable", "pair", "E_N", "G_fwd", "G_bwd",
    "regime", "n_first", "n_second", "abs_corr",
)
MEASURE_COLUMNS = ("E_N", "G_fwd", "G_bwd", "n_first", "n_second", "abs_corr")


def result_rows(result: SweepResult) -> list[dict]:
    rows = []
    for point in result.points:
        for pair in result.spec.pairs:
            row = {"axis1": point.axis1, "axis2": point.axis2, "stable": point.stable, "pair": pair}
            rep = point.reports.get(pair)
            if rep is None:
                row.update({c: None for c in MEASURE_COLUMNS})
                row["regime"] = "unstable"
            else:
                row.update(
                    E_N=rep.e_n, G_fwd=rep.g_fwd, G_bwd=rep.g_bwd, regime=rep.regime,
                    n_first=rep.moments.n_first, n_second=rep.moments.n_second,
                    abs_corr=rep.moments.abs_corr,
                )
            rows.append({c: _plain(row[c]) for c in CSV_COLUMNS})
    return rows


def _plain(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result_rows(result):
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def _meta(result: SweepResult) -> dict:
    spec = result.spec
    return {
        "base": spec.base.as_dict(),
        "axis1": spec.axis1[0],
        "axis2": spec.axis2[0] if spec.axis2 is not None else None,
        "pairs": list(spec.pairs),
    }


def to_json(result: SweepResult) -> str:
    doc = {"columns": list(CSV_COLUMNS), "meta": _meta(result), "rows": result_rows(result)}
    return json.dumps(doc, indent=1, allow_nan=False)


def _parse_cell(column: str, text: str):
    if column == "stable":
        return text == "true"
    if column in ("pair", "regime"):
        return text
    return float(text) if text != "" else None


def read_csv(source) -> list[dict]:
    """Read rows written by :func:`to_csv` from a path or a CSV string."""
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ContractError(f"unexpected CSV header {header!r}")
    return [{c: _parse_cell(c, cell) for c, cell in zip(header, line)} for line in reader]


def read_json(source) -> list[dict]:
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    return json.loads(text)["rows"]


def write_plot(result: SweepResult, path, columns=("E_N", "G_fwd", "G_bwd"), title=None) -> Path:
    """Static SVG line chart of ``columns`` against axis1, one series per pair and column."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    unknown = [c for c in columns if c not in MEASURE_COLUMNS]
    if unknown:
        raise ContractError(f"cannot plot unknown columns {unknown}")
    rows = [r for r in result_rows(result) if r["axis2"] == result.points[0].axis2]
    fig, ax = plt.subplots(figsize=(6, 4))
    for pair in result.spec.pairs:
        sel = [r for r in rows if r["pair"] == pair]
        xs = [r["axis1"] for r in sel]
        for col in columns:
            ys = [math.nan if r[col] is None else r[col] for r in sel]
            ax.plot(xs, ys, label=f"{col} ({pair})")
    ax.set_xlabel(result.spec.axis1[0])
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def emit_results(result: SweepResult, out_dir, fmt: str = "csv", stem: str = "sweep",
                 plot: bool = False, plot_columns=("E_N", "G_fwd", "G_bwd")) -> list[Path]:
    """Write CSV and/or JSON (and optionally an SVG plot) into ``out_dir``."""
    if fmt not in ("csv", "json", "both"):
        raise ContractError(f"format must be csv, json or both, got {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("csv", "both"):
        p = out / f"{stem}.csv"
        p.write_text(to_csv(result), encoding="utf-8")
        written.append(p)
    if fmt in ("json", "both"):
        p = out / f"{stem}.json"
        p.write_text(to_json(result), encoding="utf-8")
        written.append(p)
    if plot:
        written.append(write_plot(result, out / f"{stem}.svg", plot_columns, title=stem))
    return written
