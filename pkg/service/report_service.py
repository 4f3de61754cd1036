"""
Report emitters: CSV with every field, an aligned S_f / T_f text table per
tightness block, and plot-data series per coefficient.
"""

from models.experiment import ExperimentReport, ProblemKind, ReportRow
from service.file_storage_service import FileStorageService
from typing import Dict, List
import csv
import io
import math

CSV_FIELDS = [
    "problem",
    "n",
    "d",
    "tightness",
    "oracle",
    "trials",
    "base_seed",
    "s_f_mean",
    "s_f_variance",
    "s_f_ci_low",
    "s_f_ci_high",
    "t_f_mean",
    "t_f_variance",
    "t_f_ci_low",
    "t_f_ci_high",
]

NUMERIC_FIELDS = CSV_FIELDS[7:]


def _cell_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _row_fields(report: ExperimentReport, row: ReportRow) -> Dict[str, object]:
    return {
        "problem": report.problem.value,
        "n": row.cell.n,
        "d": row.cell.d,
        "tightness": row.cell.tightness,
        "oracle": row.cell.oracle,
        "trials": row.trials,
        "base_seed": row.base_seed,
        "s_f_mean": row.s_f.mean,
        "s_f_variance": row.s_f.variance,
        "s_f_ci_low": row.s_f.ci_low,
        "s_f_ci_high": row.s_f.ci_high,
        "t_f_mean": row.t_f.mean,
        "t_f_variance": row.t_f.variance,
        "t_f_ci_low": row.t_f.ci_low,
        "t_f_ci_high": row.t_f.ci_high,
    }


def render_csv(report: ExperimentReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows:
        writer.writerow({k: _cell_value(v) for k, v in _row_fields(report, row).items()})
    return buffer.getvalue()


def parse_csv(text: str) -> List[Dict[str, object]]:
    """Inverse of render_csv for the numeric columns."""
    rows = []
    for record in csv.DictReader(io.StringIO(text)):
        parsed: Dict[str, object] = dict(record)
        for key in NUMERIC_FIELDS:
            parsed[key] = float(record[key])
        for key in ("n", "trials", "base_seed"):
            parsed[key] = int(record[key])
        parsed["d"] = int(record["d"]) if record["d"] else None
        parsed["tightness"] = float(record["tightness"]) if record["tightness"] else None
        rows.append(parsed)
    return rows


def _column_key(report: ExperimentReport, row: ReportRow) -> str:
    if report.problem == ProblemKind.DKP:
        if len({r.cell.oracle for r in report.rows}) > 1:
            return f"D={row.cell.d} {row.cell.oracle}"
        return f"D={row.cell.d}"
    if report.problem.is_tsp:
        return f"{report.problem.case.upper()} {row.cell.oracle}"
    return row.cell.oracle.upper()


def render_table(report: ExperimentReport) -> str:
    """
    One line per N; column pairs (S_f, T_f) per D for d-KP, per algorithm for
    BPP and per case/oracle for TSP. d-KP reports get one block per tightness.
    """
    blocks: Dict[object, List[ReportRow]] = {}
    for row in report.rows:
        blocks.setdefault(row.cell.tightness, []).append(row)

    out: List[str] = []
    for tightness, rows in blocks.items():
        columns: List[str] = []
        by_n: Dict[int, Dict[str, ReportRow]] = {}
        for row in rows:
            key = _column_key(report, row)
            if key not in columns:
                columns.append(key)
            by_n.setdefault(row.cell.n, {})[key] = row

        title = f"{report.problem.value}  k={report.trials}  seed={report.base_seed}"
        if tightness is not None:
            title += f"  t={tightness}"
        out.append(title)

        header_1 = f"{'':>8}" + "".join(f"{c:^20}" for c in columns)
        header_2 = f"{'N':>8}" + "".join(f"{'S_f':>10}{'T_f':>10}" for _ in columns)
        out.extend([header_1, header_2, "-" * len(header_2)])
        for n in sorted(by_n):
            line = f"{n:>8}"
            for c in columns:
                row = by_n[n].get(c)
                line += f"{row.s_f.mean:>10.2f}{row.t_f.mean:>10.2f}" if row else f"{'':>20}"
            out.append(line)
        out.append("")
    if report.pilot_variance is not None:
        out.append(f"pilot variance {report.pilot_variance:.6g} -> recommended k = {report.recommended_trials}")
    return "\n".join(out).rstrip("\n") + "\n"


def render_plotdata(report: ExperimentReport) -> str:
    """
    `#`-headed series blocks, one per coefficient and column. d-KP and BPP
    rows carry n, log10(n), value; TSP rows carry n, value on a linear axis.
    """
    log_axis = not report.problem.is_tsp
    series: Dict[str, List[ReportRow]] = {}
    for row in report.rows:
        label = _column_key(report, row)
        if row.cell.tightness is not None:
            label = f"t={row.cell.tightness} {label}"
        series.setdefault(label, []).append(row)

    out: List[str] = []
    for coefficient in ("s_f", "t_f"):
        for label, rows in series.items():
            out.append(f"# {coefficient} {label}")
            out.append("# n log10_n value" if log_axis else "# n value")
            for row in sorted(rows, key=lambda r: r.cell.n):
                value = getattr(row, coefficient).mean
                if log_axis:
                    out.append(f"{row.cell.n} {math.log10(row.cell.n):.6f} {value!r}")
                else:
                    out.append(f"{row.cell.n} {value!r}")
            out.append("")
    return "\n".join(out)


class ReportService:
    def __init__(self, storage: FileStorageService):
        self.storage = storage

    def emit_csv(self, report: ExperimentReport, path: str) -> str:
        return self.storage.save_text(render_csv(report), path)

    def emit_table(self, report: ExperimentReport, path: str) -> str:
        return self.storage.save_text(render_table(report), path)

    def emit_plotdata(self, report: ExperimentReport, path: str) -> str:
        return self.storage.save_text(render_plotdata(report), path)

    def read_csv(self, path: str) -> List[Dict[str, object]]:
        return parse_csv(self.storage.get_text(path))

    def emit_all(self, report: ExperimentReport) -> List[str]:
        return [
            self.emit_csv(report, "report.csv"),
            self.emit_table(report, "report.txt"),
            self.emit_plotdata(report, "report.plot"),
        ]
