"""Parameter-grid engine for the figure-reproduction sweeps.

Each metric evaluates one comparison between the coherent superposition
of two channels and its classical baseline, over a rectangular
(r1, r2) grid or a 1-D squeezing scan:

* ``neg_pct_diff_mixture``: percentage negativity gain over the equal
  classical mixture of the two channels,
* ``neg_pct_diff_convex``: percentage gain over the convex average of
  the single-channel negativities,
* ``coherent_info_diff``: raw coherent-information gain (ensemble
  average over measurement branches) over the classical mixture,
* ``phase_curve``: average negativity |cos r|/2 of the opposite-phase
  superposition as a function of r.

Percentage differences use 100 * (quantum - classical) / classical, so
quantum advantage is positive.  Grids are emitted in a deterministic
row order (r1 outer, r2 inner, ascending): identical specs produce
byte-identical CSV and JSON.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from typing import IO, Optional, Union

import numpy as np

from . import metrics
from .channel import ChannelParams
from .protocol import ProtocolConfig, classical_mixture, measure_control

TWO_D_METRICS = ("neg_pct_diff_mixture", "neg_pct_diff_convex", "coherent_info_diff")
ONE_D_METRICS = ("phase_curve",)
METRICS = TWO_D_METRICS + ONE_D_METRICS

# 2-D sweeps cover the geometry-reachable squeezing range [0, pi/4];
# the 1-D phase scan extends over the channel's full domain [0, pi/2).
MAX_R_2D = math.pi / 4
MAX_R_1D = math.pi / 2
# A percentage baseline below this is treated as zero (flagged cell).
BASELINE_TOL = 1e-12

Destination = Union[str, "IO[str]", None]


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: metric name, axis ranges, and resolution.

    1-D metrics scan ``r1_range`` and ignore ``r2_range``.
    """

    metric: str
    r1_range: tuple[float, float] = (0.0, MAX_R_2D)
    r2_range: tuple[float, float] = (0.0, MAX_R_2D)
    resolution: int = 101

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; choose from {METRICS}")
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")
        r_max = MAX_R_1D if self.is_one_dimensional else MAX_R_2D
        ranges = [self.r1_range] if self.is_one_dimensional else [self.r1_range, self.r2_range]
        for label, (lo, hi) in zip(("r1_range", "r2_range"), ranges):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"{label} must be finite, got ({lo}, {hi})")
            if lo > hi:
                raise ValueError(f"{label} is empty: ({lo}, {hi})")
            if lo < 0.0 or hi > r_max or (self.is_one_dimensional and hi >= r_max):
                raise ValueError(
                    f"{label} ({lo}, {hi}) outside the metric domain [0, {r_max:.6g}"
                    + (")" if self.is_one_dimensional else "]")
                )

    @property
    def is_one_dimensional(self) -> bool:
        return self.metric in ONE_D_METRICS


@dataclass(eq=False)
class SweepGrid:
    """Evaluated sweep: axis samples plus row-major metric values.

    ``flags`` marks cells whose percentage baseline vanished; those
    cells hold the absolute difference instead.  It is ``None`` when no
    cell was flagged (always, on the allowed domain).
    """

    spec: SweepSpec
    axes: list[np.ndarray]
    values: np.ndarray
    flags: Optional[np.ndarray] = None


def _pct_difference(quantum: float, classical: float) -> tuple[float, bool]:
    """Percentage difference, falling back to the absolute gap on a zero baseline."""
    if classical < BASELINE_TOL:
        return quantum - classical, True
    return 100.0 * (quantum - classical) / classical, False


def _coherent_info_diff(r1: float, r2: float) -> float:
    cfg = ProtocolConfig(ChannelParams(r1), ChannelParams(r2))
    stats = measure_control(cfg)
    ensemble = metrics.ensemble_coherent_information(
        [(stats.p_plus, stats.rho_plus), (stats.p_minus, stats.rho_minus)]
    )
    return ensemble - metrics.coherent_information(classical_mixture(cfg))


def run_sweep(spec: SweepSpec) -> SweepGrid:
    """Evaluate the metric on the grid described by ``spec``.

    2-D grids are row-major with r1 as the outer (slow) axis.  Cells
    are independent, and the output ordering is deterministic.
    """
    if spec.is_one_dimensional:
        rs = np.linspace(spec.r1_range[0], spec.r1_range[1], spec.resolution)
        values = np.array([metrics.phase_avg_negativity(r) for r in rs])
        return SweepGrid(spec, [rs], values)

    r1s = np.linspace(spec.r1_range[0], spec.r1_range[1], spec.resolution)
    r2s = np.linspace(spec.r2_range[0], spec.r2_range[1], spec.resolution)
    values = np.empty((spec.resolution, spec.resolution))
    flags = np.zeros((spec.resolution, spec.resolution), dtype=bool)
    for i, r1 in enumerate(r1s):
        for j, r2 in enumerate(r2s):
            if spec.metric == "neg_pct_diff_mixture":
                values[i, j], flags[i, j] = _pct_difference(
                    metrics.negativity_avg_closed(r1, r2),
                    metrics.negativity_mixture_closed(r1, r2),
                )
            elif spec.metric == "neg_pct_diff_convex":
                values[i, j], flags[i, j] = _pct_difference(
                    metrics.negativity_avg_closed(r1, r2),
                    metrics.negativity_convex_avg(r1, r2),
                )
            else:
                values[i, j] = _coherent_info_diff(r1, r2)
    if not np.all(np.isfinite(values)):
        raise ValueError("sweep produced non-finite values")
    return SweepGrid(spec, [r1s, r2s], values, flags if flags.any() else None)


def _format(x: float) -> str:
    """12 significant digits, enough for 1e-11 round-trip on these scales."""
    return format(float(x), ".12g")


def _open_destination(destination: Destination):
    if destination is None:
        return sys.stdout, False
    if hasattr(destination, "write"):
        return destination, False
    try:
        return open(destination, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {destination!r}: {exc}") from exc


def emit_csv(grid: SweepGrid, destination: Destination = None) -> None:
    """Write the grid as CSV to a path, a text stream, or stdout.

    2-D grids use the header ``r1,r2,value`` (plus ``flag`` when any
    cell was flagged); the 1-D phase curve uses ``r,value``.  Rows are
    ordered r1 outer, r2 inner, ascending.
    """
    stream, owned = _open_destination(destination)
    try:
        flagged = grid.flags is not None
        if grid.spec.is_one_dimensional:
            stream.write("r,value\n")
            for r, v in zip(grid.axes[0], grid.values):
                stream.write(f"{_format(r)},{_format(v)}\n")
        else:
            stream.write("r1,r2,value,flag\n" if flagged else "r1,r2,value\n")
            for i, r1 in enumerate(grid.axes[0]):
                for j, r2 in enumerate(grid.axes[1]):
                    row = f"{_format(r1)},{_format(r2)},{_format(grid.values[i, j])}"
                    if flagged:
                        row += f",{int(grid.flags[i, j])}"
                    stream.write(row + "\n")
    finally:
        if owned:
            stream.close()


def emit_json(grid: SweepGrid, destination: Destination = None) -> None:
    """Write the grid as a JSON object with keys {spec, axes, values}."""
    document = {
        "spec": {
            "metric": grid.spec.metric,
            "r1_range": list(grid.spec.r1_range),
            "r2_range": list(grid.spec.r2_range),
            "resolution": grid.spec.resolution,
        },
        "axes": [axis.tolist() for axis in grid.axes],
        "values": grid.values.tolist(),
    }
    stream, owned = _open_destination(destination)
    try:
        json.dump(document, stream, sort_keys=True, separators=(",", ":"))
        stream.write("\n")
    finally:
        if owned:
            stream.close()
