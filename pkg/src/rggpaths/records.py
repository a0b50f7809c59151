"""CSV and JSON encodings of distributions, histograms and comparison reports.

CSV files open with ``# key: <json value>`` metadata lines followed by a
header row.  Rationals are always carried as numerator/denominator strings;
the ``decimal`` column is a convenience copy.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .algebra import QPolynomial
from .compare import ComparisonReport
from .distribution import ExactDistribution
from .sim import Histogram

EXACT_COLUMNS = ("n", "numerator", "denominator", "decimal")
HIST_COLUMNS = ("n", "count", "frequency")
PLOT_COLUMNS = ("n", "exact", "empirical")


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(meta: dict, columns, rows) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {json.dumps(value)}\n")
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _read_csv(text: str) -> tuple[dict, list[dict]]:
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = json.loads(value)
        elif line.strip():
            body.append(line)
    return meta, list(csv.DictReader(body))


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def rational_rows(masses: list[Fraction]) -> list[dict]:
    return [{"n": n, "numerator": str(p.numerator), "denominator": str(p.denominator),
             "decimal": float(p)} for n, p in enumerate(masses)]


# -- exact distributions and p.g.f. coefficient lists -----------------------

def render_exact(dist: ExactDistribution | QPolynomial, meta: dict, fmt: str = "csv") -> str:
    masses = [Fraction(c) for c in dist.coeffs] if isinstance(dist, QPolynomial) else dist.as_list()
    rows = rational_rows(masses)
    if fmt == "json":
        return _json({**meta, "rows": rows})
    return _csv(meta, EXACT_COLUMNS, rows)


def parse_exact(text: str, fmt: str = "csv") -> tuple[ExactDistribution, dict]:
    if fmt == "json":
        doc = json.loads(text)
        rows = doc.pop("rows")
        meta = doc
    else:
        meta, rows = _read_csv(text)
    probs = {int(r["n"]): Fraction(int(r["numerator"]), int(r["denominator"])) for r in rows}
    return ExactDistribution(probs), meta


# -- simulation histograms ---------------------------------------------------

def histogram_rows(hist: Histogram) -> list[dict]:
    return [{"n": n, "count": c, "frequency": c / hist.total} for n, c in hist.counts.items()]


def render_histogram(hist: Histogram, meta: dict, fmt: str = "csv") -> str:
    meta = {**meta, "trials": hist.total}
    rows = histogram_rows(hist)
    if fmt == "json":
        return _json({**meta, "rows": rows})
    return _csv(meta, HIST_COLUMNS, rows)


def parse_histogram(text: str, fmt: str = "csv") -> tuple[Histogram, dict]:
    if fmt == "json":
        doc = json.loads(text)
        rows = doc.pop("rows")
        meta = doc
    else:
        meta, rows = _read_csv(text)
    hist = Histogram({int(r["n"]): int(r["count"]) for r in rows}, int(meta["trials"]))
    return hist, meta


# -- validation output --------------------------------------------------------

def render_report(report: ComparisonReport, meta: dict, fmt: str = "csv") -> str:
    doc = report.to_dict()
    table = doc.pop("table")
    if fmt == "json":
        return _json({**meta, **doc, "table": table})
    columns = ("n", "exact", "empirical", "exact_numerator", "exact_denominator")
    return _csv({**meta, **doc}, columns, table)


def render_plot(report: ComparisonReport, fmt: str = "csv") -> str:
    rows = [{c: r[c] for c in PLOT_COLUMNS} for r in report.table]
    if fmt == "json":
        return _json({"series": ["exact", "empirical"], "rows": rows})
    return _csv({}, PLOT_COLUMNS, rows)
