"""CSV and JSON files for samples, expansions and reports.

Floats are written with 17 significant digits, which round-trips IEEE
doubles exactly.
"""
from __future__ import annotations

import csv
import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .legendre import LegendreExpansion
from .regularize import InversionReport
from .spectral import SampleSet

SAMPLE_COLUMNS = ("t", "x", "g")


def fmt(value):
    value = float(value)
    if math.isinf(value) or math.isnan(value):
        return repr(value)
    return format(value, ".17g")


@contextmanager
def _text_out(path):
    """Open `path` for writing; None or "-" means standard output."""
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_samples(path, samples, meta=None):
    """Write a `SampleSet` as ``t,x,g`` rows preceded by ``# key: value`` lines."""
    meta = {"grid_kind": samples.grid_kind, **(meta or {})}
    with _text_out(path) as fh:
        for key, value in meta.items():
            fh.write(f"# {key}: {fmt(value) if isinstance(value, float) else value}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SAMPLE_COLUMNS)
        for t, x, g in zip(samples.t_nodes, samples.x_nodes, samples.g_values):
            writer.writerow([fmt(t), fmt(x), fmt(g)])


def read_samples(path):
    """Read a sample file; returns ``(SampleSet, meta)``.

    Raises
    ------
    ValueError
        On an empty file, a missing header or malformed rows.
    """
    meta = {}
    rows = []
    with open(path, newline="") as fh:
        lines = [line for line in fh if line.strip()]
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
        else:
            body.append(line)
    if not body:
        raise ValueError(f"{path}: no sample data")
    reader = csv.reader(body)
    header = [h.strip() for h in next(reader)]
    if "t" not in header or "g" not in header:
        raise ValueError(f"{path}: header must name columns 't' and 'g', got {header}")
    it, ig = header.index("t"), header.index("g")
    for lineno, row in enumerate(reader, start=2):
        try:
            rows.append((float(row[it]), float(row[ig])))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"{path}: bad sample row {lineno}: {row}") from exc
    if not rows:
        raise ValueError(f"{path}: no sample data")
    t, g = np.array(rows).T
    for key in ("epsilon", "snr_db"):
        if key in meta:
            meta[key] = float(meta[key])
    return SampleSet(t, g, meta.get("grid_kind", "uniform")), meta


def write_series(path, header, rows):
    with _text_out(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])


def read_series(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [[float(v) for v in row] for row in reader]


def expansion_to_dict(exp):
    return {
        "n_max": exp.n_max,
        "coeffs": [float(c) for c in exp.coeffs],
        "imag_residual": float(exp.imag_residual),
    }


def expansion_from_dict(data):
    return LegendreExpansion(np.array(data["coeffs"], dtype=float), data.get("imag_residual", 0.0))


def _dump(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def write_expansion(path, exp):
    _dump(path, expansion_to_dict(exp))


def read_expansion(path):
    return expansion_from_dict(json.loads(Path(path).read_text()))


def write_report(path, report):
    _dump(path, report.to_dict())


def read_report(path):
    return InversionReport.from_dict(json.loads(Path(path).read_text()))
