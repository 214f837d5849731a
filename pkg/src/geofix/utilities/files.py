"""
Deterministic report, trace and manifest writers.

JSON is written with sorted keys, two-space indentation and a trailing newline;
the CSV trace uses '.' decimals and `repr` floats, so equal runs give equal bytes.
"""

import csv
import json
from pathlib import Path
from typing import Any, Sequence

from pydantic import BaseModel

from geofix.schemas.reports import Manifest

TRACE_HEADER = ("n", "residual", "bound_phi", "epsilon")


def dumps(payload: BaseModel | dict[str, Any]) -> str:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Path, payload: BaseModel | dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload), encoding="utf-8")
    return path


def write_manifest(directory: Path, manifest: Manifest) -> Path:
    return write_json(directory / "manifest.json", manifest)


def write_trace(
    path: Path,
    residuals: Sequence[Any],
    bounds: Sequence[tuple[float, int]],
) -> Path:
    """
    One row per iterate: n, d(xₙ, Txₙ) and the tightest guarantee in force at n,
    i.e. the smallest ε among `bounds` (pairs of ε and Φ) with Φ ≤ n, with that Φ.
    The bound columns stay empty until the first Φ is reached.
    """
    ordered = sorted(bounds, key=lambda bound: (bound[0], bound[1]))
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for n, residual in enumerate(residuals):
            active = next(((eps, phi) for eps, phi in ordered if phi <= n), None)
            if active is None:
                writer.writerow((n, repr(float(residual)), "", ""))
            else:
                eps, phi = active
                writer.writerow((n, repr(float(residual)), phi, repr(float(eps))))
    return path
