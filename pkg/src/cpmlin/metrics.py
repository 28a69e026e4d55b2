"""Error metrics and phase-trajectory extraction.

Scores candidate envelopes against the reference nonlinear signal:
mean square error in dB at the full sample rate and decimated to the
symbol rate, plus unwrapped phase traces for plot-style comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_window
from .signal_core import BasebandSignal, ModulationParams

__all__ = [
    "FLOOR_DB",
    "MseReport",
    "PhaseTrace",
    "default_guard",
    "mse_db",
    "phase_trace",
    "mean_abs_phase_error",
]

# errors below this are reported as a floor marker, not a number that
# pretends eighteen significant digits of log mean anything
FLOOR_DB = -300.0


def default_guard(params: ModulationParams) -> int:
    """Samples excluded at each edge: twice the c_0 span, 2 (L+1) osf."""
    return 2 * (params.L + 1) * params.osf


@dataclass(frozen=True)
class MseReport:
    """MSE of a candidate against a reference, both rates at once.

    ``sample_phase`` is the decimation offset (in Tc units) used for
    the symbol-rate figure. ``floored_*`` mark values pinned at the
    FLOOR_DB marker instead of a measured number.
    """

    mse_oversampled_db: float
    mse_symbol_rate_db: float
    guard_samples: int
    sample_phase: int
    signal_ids: tuple
    floored_oversampled: bool = False
    floored_symbol_rate: bool = False


@dataclass(frozen=True)
class PhaseTrace:
    """Unwrapped phase of one or more signals over a common window."""

    times: np.ndarray
    phases: tuple
    labels: tuple
    window: tuple


def _power_db(err: np.ndarray) -> tuple[float, bool]:
    p = float(np.mean(np.abs(err) ** 2))
    if p == 0.0:
        return FLOOR_DB, True
    v = 10.0 * math.log10(p)
    if v < FLOOR_DB:
        return FLOOR_DB, True
    return v, False


def mse_db(
    reference: BasebandSignal,
    candidate: BasebandSignal,
    guard: int,
    osf: int,
    sample_phase: int = 0,
) -> MseReport:
    """Mean square error in dB over the guarded overlap region.

    Signals must share the sample period and start time (the analytic
    t0 = 0 alignment; nothing here cross-correlates to find a lag).
    The error is the complex difference, so I and Q enter jointly.
    The symbol-rate figure decimates the same guarded error by ``osf``
    at absolute sample indices congruent to ``sample_phase``.
    """
    if not math.isclose(reference.sample_period, candidate.sample_period, rel_tol=1e-12):
        raise ValueError(
            f"sample periods differ: {reference.sample_period} vs {candidate.sample_period}"
        )
    if not math.isclose(reference.t0, candidate.t0, rel_tol=0.0, abs_tol=1e-12):
        raise ValueError(f"signals are misaligned: t0 {reference.t0} vs {candidate.t0}")
    if guard < 0:
        raise ValueError(f"guard must be >= 0, got {guard}")
    if osf < 1:
        raise ValueError(f"osf must be >= 1, got {osf}")
    if not (0 <= sample_phase < osf):
        raise ValueError(f"sample_phase must be in [0, {osf}), got {sample_phase}")

    n = min(len(reference), len(candidate))
    lo, hi = guard, n - guard
    if hi - lo < 1000:
        raise ValueError(
            f"only {max(hi - lo, 0)} samples overlap after guards; need >= 1000"
        )
    err = reference.samples[lo:hi] - candidate.samples[lo:hi]
    over_db, over_floor = _power_db(err)

    # absolute index n = m * osf + sample_phase, restricted to the guarded span
    first = lo + ((sample_phase - lo) % osf)
    sym_err = err[first - lo :: osf]
    sym_db, sym_floor = _power_db(sym_err)

    return MseReport(
        mse_oversampled_db=over_db,
        mse_symbol_rate_db=sym_db,
        guard_samples=guard,
        sample_phase=sample_phase,
        signal_ids=(reference.label, candidate.label),
        floored_oversampled=over_floor,
        floored_symbol_rate=sym_floor,
    )


def phase_trace(signals: list[BasebandSignal], window: tuple) -> PhaseTrace:
    """Unwrapped phase of each signal over ``window`` (start, stop).

    All signals must share the sample grid and contain the window.
    Successive differences of each returned trace are below pi in
    magnitude by construction of the unwrap.
    """
    if not signals:
        raise ValueError("no signals given")
    period = signals[0].sample_period
    t0 = signals[0].t0
    for s in signals[1:]:
        if not math.isclose(s.sample_period, period, rel_tol=1e-12):
            raise ValueError("signals disagree on sample period")
        if not math.isclose(s.t0, t0, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError("signals disagree on start time")
    start, stop = check_window(window, min(len(s) for s in signals))
    times = t0 + np.arange(start, stop) * period
    phases = tuple(np.unwrap(np.angle(s.samples[start:stop])) for s in signals)
    labels = tuple(s.label for s in signals)
    return PhaseTrace(times=times, phases=phases, labels=labels, window=(start, stop))


def mean_abs_phase_error(
    reference: BasebandSignal, candidate: BasebandSignal, window: tuple
) -> float:
    """Mean |angle(candidate * conj(reference))| over a sample window.

    Wrap-free by construction, so it does not depend on an unwrap
    starting point.
    """
    start, stop = check_window(window, min(len(reference), len(candidate)))
    rot = candidate.samples[start:stop] * np.conj(reference.samples[start:stop])
    return float(np.mean(np.abs(np.angle(rot))))
