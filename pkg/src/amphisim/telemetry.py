"""Trajectory post-processing: low-pass filtering, average speed, CSV ingest/emit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError

CSV_HEADER = ["t_s", "value_cm"]


@dataclass(frozen=True)
class TimeSeries:
    t_s: np.ndarray
    value_cm: np.ndarray
    rate_hz: float = 30.0  # nominal camera rate

    def __post_init__(self):
        t = np.asarray(self.t_s, dtype=float)
        v = np.asarray(self.value_cm, dtype=float)
        object.__setattr__(self, "t_s", t)
        object.__setattr__(self, "value_cm", v)
        if t.shape != v.shape or t.ndim != 1:
            raise DomainError("t and value must be 1-D arrays of equal length")
        if len(t) and (not np.all(np.isfinite(t)) or not np.all(np.isfinite(v))):
            raise DomainError("series values must be finite")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise DomainError("timestamps must be strictly increasing")

    def __len__(self):
        return len(self.t_s)


def lowpass_filter(series: TimeSeries, alpha: float) -> TimeSeries:
    """Single-pole recursive smoothing y[i] = a*x[i] + (1-a)*y[i-1], seeded at x[0]."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must be in (0, 1]")
    if len(series) == 0:
        return series
    x = series.value_cm
    y = np.empty_like(x)
    y[0] = x[0]
    for i in range(1, len(x)):
        y[i] = alpha * x[i] + (1.0 - alpha) * y[i - 1]
    return TimeSeries(series.t_s.copy(), y, series.rate_hz)


def average_speed(series: TimeSeries, window: tuple[float, float]) -> float:
    """Endpoint secant speed in cm/s over [t0, t1] (interpolated at the endpoints)."""
    t0, t1 = window
    if t1 <= t0:
        raise DomainError("window must have positive length")
    if len(series) < 2 or t0 < series.t_s[0] - 1e-12 or t1 > series.t_s[-1] + 1e-12:
        raise DomainError("window must lie within the series time span")
    v0 = float(np.interp(t0, series.t_s, series.value_cm))
    v1 = float(np.interp(t1, series.t_s, series.value_cm))
    return (v1 - v0) / (t1 - t0)


def read_series(path, rate_hz: float = 30.0) -> TimeSeries:
    times, values = [], []
    with open(path) as f:
        header = f.readline().strip()
        if header.split(",") != CSV_HEADER:
            raise ParseError(f"expected header '{','.join(CSV_HEADER)}', got '{header}'", line_no=1)
        for line_no, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != 2:
                raise ParseError(f"expected 2 cells at line {line_no}", line_no=line_no)
            try:
                t, v = float(cells[0]), float(cells[1])
            except ValueError:
                raise ParseError(f"non-numeric cell at line {line_no}", line_no=line_no)
            if times and t <= times[-1]:
                raise ParseError(f"non-increasing timestamp at line {line_no}", line_no=line_no)
            times.append(t)
            values.append(v)
    return TimeSeries(np.array(times), np.array(values), rate_hz)


def write_series(path, series: TimeSeries):
    with open(path, "w", newline="") as f:
        f.write(",".join(CSV_HEADER) + "\n")
        for t, v in zip(series.t_s, series.value_cm):
            f.write(f"{t:.9f},{v:.9f}\n")
