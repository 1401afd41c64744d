"""Stable on-disk format for maps: a CSV matrix plus a JSON sidecar.

CSV layout (RFC 4180 dialect, CRLF line endings): the first header cell names
the two axes as "axis1/axis2", the remaining header cells are the axis2
coordinates; every following row starts with its axis1 coordinate followed by
the value row.  Floats are written with repr, which round-trips exactly.

The sidecar (same basename, .json) carries the axis definitions, the grid
metadata (parameter snapshot, provenance, and for Monte Carlo maps the seed,
sample count and raw counts), and a format version tag.  Writers are
deterministic: the same grid always produces the same bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from biphoton.position import AmplitudeGrid

__all__ = ["FORMAT_TAG", "sidecar_path", "write_grid", "read_grid"]

FORMAT_TAG = "biphoton-grid/1"
_AXIS_UNIT = "m"


def sidecar_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".json")


def _axis_entry(name: str, arr: np.ndarray) -> dict:
    return {
        "name": name,
        "unit": _AXIS_UNIT,
        "start": float(arr[0]),
        "step": float(arr[1] - arr[0]),
        "n": int(arr.size),
    }


def write_grid(grid: AmplitudeGrid, csv_path, extra: dict | None = None) -> Path:
    """Write the CSV matrix and its JSON sidecar; returns the sidecar path.

    `extra` is merged into the sidecar top level (config hash, counts, ...).
    """
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = [f"{grid.axis1_name}/{grid.axis2_name}"]
        header.extend(repr(float(v)) for v in grid.axis2)
        writer.writerow(header)
        for i, a1 in enumerate(grid.axis1):
            row = [repr(float(a1))]
            row.extend(repr(float(v)) for v in grid.values[i])
            writer.writerow(row)

    sidecar = {
        "format": FORMAT_TAG,
        "axis1": _axis_entry(grid.axis1_name, grid.axis1),
        "axis2": _axis_entry(grid.axis2_name, grid.axis2),
        "metadata": dict(grid.metadata),
    }
    if extra:
        sidecar.update(extra)
    out = sidecar_path(csv_path)
    with open(out, "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return out


def read_grid(csv_path) -> AmplitudeGrid:
    """Read a grid back from its CSV, merging sidecar metadata when present."""
    csv_path = Path(csv_path)
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2:
        raise ValueError(f"{csv_path} is not a grid CSV")
    names = rows[0][0].split("/")
    if len(names) != 2:
        raise ValueError(f"malformed axis header {rows[0][0]!r} in {csv_path}")
    axis2 = np.array([float(v) for v in rows[0][1:]])
    axis1 = np.array([float(r[0]) for r in rows[1:]])
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])

    metadata = {}
    sidecar = sidecar_path(csv_path)
    if sidecar.exists():
        with open(sidecar) as fh:
            payload = json.load(fh)
        metadata = payload.get("metadata", {})
    return AmplitudeGrid(
        axis1=axis1,
        axis2=axis2,
        values=values,
        axis1_name=names[0],
        axis2_name=names[1],
        metadata=metadata,
    )
