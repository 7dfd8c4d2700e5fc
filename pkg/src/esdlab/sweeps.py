"""ESD-time detection and parameter sweeps over channel families."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import ChannelFamily
from .errors import DomainError, EsdlabError

ZERO_TOL = 1e-9          # concurrence below this counts as zero
POSITIVE_FLOOR = 1e-12   # "no ESD" needs the scan to stay above this


@dataclass
class ConcurrenceTrace:
    times: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape:
            raise DomainError("times and values must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise DomainError("times must be strictly ascending")
        if self.values.min() < -1e-9 or self.values.max() > 1.0 + 1e-9:
            raise DomainError("concurrence values outside [0, 1] tolerance band")


@dataclass
class EsdResult:
    status: str                    # "found" | "none" | "beyond-horizon"
    t_esd: float | None = None
    bracket: tuple | None = None   # (t_lo, t_hi) straddling the first zero
    tolerance: float = ZERO_TOL


@dataclass
class SweepResult:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)   # (grid value, message)


def trace_concurrence(family, grid):
    """Choi-state concurrence of family at each grid time."""
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise DomainError("time grid must be strictly ascending")
    values = np.empty_like(grid)
    for k, t in enumerate(grid):
        try:
            values[k] = family.concurrence_at(t)
        except EsdlabError as exc:
            raise type(exc)(f"{exc} (at t={t})") from exc
    return ConcurrenceTrace(times=grid, values=values,
                            metadata={"model": family.name, **family.params})


def find_tesd(family, horizon, scan_points=256, zero_tol=ZERO_TOL):
    """First time the Choi concurrence reaches zero, or why it does not.

    Coarse scan to bracket the first crossing of ``zero_tol``, then
    bisection to |t_hi - t_lo| <= 1e-6 * horizon.  Families with an
    analytic positive floor (QND dephasing) report "none" when the scan
    stays above the floor; otherwise a crossing-free scan reports
    "beyond-horizon".  Non-monotone traces resolve to the FIRST zero.
    """
    if horizon <= 0:
        raise DomainError("horizon must be positive")
    ts = np.linspace(0.0, horizon, scan_points + 1)
    values = np.array([family.concurrence_at(t) for t in ts])
    below = values <= zero_tol
    below[0] = False  # t=0 is the identity channel; never an ESD point
    if not below.any():
        if family.positive_floor and values.min() > POSITIVE_FLOOR:
            return EsdResult(status="none")
        return EsdResult(status="beyond-horizon")
    k = int(np.argmax(below))
    lo, hi = float(ts[k - 1]), float(ts[k])
    tol = 1e-6 * horizon
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if family.concurrence_at(mid) <= zero_tol:
            hi = mid
        else:
            lo = mid
    return EsdResult(status="found", t_esd=0.5 * (lo + hi), bracket=(lo, hi),
                     tolerance=zero_tol)


def sweep(make_family, grid, horizon, what="tesd", time_grid=None, workers=1):
    """Evaluate find_tesd and/or trace_concurrence over a parameter grid.

    ``make_family(value) -> ChannelFamily``.  Rows come back in grid order
    regardless of execution order; per-point failures are recorded in
    ``failures`` and emit NaN rows, and the sweep continues.
    """
    grid = list(grid)
    if not grid:
        raise DomainError("parameter grid must be nonempty")
    if what not in ("tesd", "trace"):
        raise ValueError(f"unknown sweep mode {what!r}")
    if what == "trace" and time_grid is None:
        raise DomainError("trace sweeps need a time_grid")

    def evaluate(value):
        family = make_family(value)
        if what == "tesd":
            return find_tesd(family, horizon)
        return trace_concurrence(family, time_grid)

    results = [None] * len(grid)
    errors = [None] * len(grid)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(evaluate, v): k for k, v in enumerate(grid)}
            for fut, k in futures.items():
                try:
                    results[k] = fut.result()
                except EsdlabError as exc:
                    errors[k] = str(exc)
    else:
        for k, value in enumerate(grid):
            try:
                results[k] = evaluate(value)
            except EsdlabError as exc:
                errors[k] = str(exc)

    rows = []
    failures = [(grid[k], msg) for k, msg in enumerate(errors) if msg is not None]
    if what == "tesd":
        columns = ["param", "t_esd", "status"]
        for value, res in zip(grid, results):
            if res is None:
                rows.append((value, float("nan"), "failed"))
            else:
                rows.append((value, res.t_esd if res.t_esd is not None else float("nan"),
                             res.status))
    else:
        columns = ["t", "concurrence", "param"]
        for value, res in zip(grid, results):
            if res is None:
                continue
            rows.extend((float(t), float(c), value)
                        for t, c in zip(res.times, res.values))
    return SweepResult(columns=columns, rows=rows, failures=failures)
