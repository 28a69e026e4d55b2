"""Reference CPM signal generation.

This module owns the modulation parameterization, the raised-cosine
frequency pulse and its integrated phase response, the seeded symbol
source, and the nonlinear CPM modulator that every linearized
transmitter in this package is scored against.

The complex envelope is s(t) = exp(j * psi(t)) with

    psi(t) = 2 * pi * h * sum_i alpha_i * q(t - i * T),

where q is the running integral of the frequency pulse f, saturating
at 1/2 once a symbol's pulse has fully played out. All phase history
older than L symbol intervals therefore collapses into a cumulative
term of pi * h per symbol, which is what makes both the O(L)-per-sample
modulator below and the exact PAM decomposition in ``laurent`` work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_bits

__all__ = [
    "ModulationParams",
    "SymbolStream",
    "BasebandSignal",
    "PhasePulse",
    "generate_bits",
    "rc_frequency_pulse",
    "phase_response",
    "cpm_modulate",
]


@dataclass(frozen=True)
class ModulationParams:
    """CPM parameter set; the single source of truth for an experiment.

    Parameters
    ----------
    h : float
        Modulation index. Each symbol contributes ``h * pi`` of terminal
        phase. Must be positive; the Laurent machinery additionally
        requires a non-integer value.
    L : int
        Frequency-pulse duration in symbol intervals. ``L >= 2`` gives
        partial-response signaling (adjacent symbols overlap in phase).
    T : float
        Symbol period in seconds, normalized to 1.0 in all experiments.
    osf : int
        Oversampling factor ``T / Tc``.
    pulse : str
        Frequency-pulse family. Only ``"rc"`` (raised cosine) is
        implemented.

    Defaults are the binary PCM/FM telemetry setup (h = 0.7, L = 2,
    8 samples per symbol).
    """

    h: float = 0.7
    L: int = 2
    T: float = 1.0
    osf: int = 8
    pulse: str = "rc"

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"modulation index h must be positive, got {self.h}")
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"pulse length L must be a positive integer, got {self.L}")
        if int(self.osf) != self.osf or self.osf < 1:
            raise ValueError(f"oversampling factor must be a positive integer, got {self.osf}")
        if not self.T > 0:
            raise ValueError(f"symbol period T must be positive, got {self.T}")
        if self.pulse != "rc":
            raise ValueError(f"unsupported pulse family {self.pulse!r} (only 'rc')")

    @property
    def Tc(self) -> float:
        """Sample period."""
        return self.T / self.osf

    @property
    def Q(self) -> int:
        """Number of PAM components in the exact decomposition, 2**(L-1)."""
        return 2 ** (self.L - 1)


@dataclass(frozen=True)
class SymbolStream:
    """Antipodal data symbols plus the seed that generated them.

    ``seed`` is None when the data came from outside the seeded source.
    """

    symbols: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "symbols", check_bits(self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class BasebandSignal:
    """Uniformly sampled complex envelope.

    ``t0`` is the time of the first sample. All modulators in this
    package emit t0 = 0 with the first filter tap anchored at t = 0,
    so signals from different modulators line up index by index and
    no correlation-based alignment is ever needed.
    """

    samples: np.ndarray
    sample_period: float
    t0: float = 0.0
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))
        if self.sample_period <= 0:
            raise ValueError(f"sample period must be positive, got {self.sample_period}")

    def __len__(self) -> int:
        return len(self.samples)


def _q_rc(t, params: ModulationParams) -> np.ndarray:
    """Closed-form phase response of the raised-cosine pulse.

    q(t) = (1/(2LT)) * (t - (LT / 2 pi) * sin(2 pi t / LT)) on [0, LT],
    clamped to 0 below the support and to exactly 1/2 above it.
    """
    LT = params.L * params.T
    t = np.asarray(t, dtype=float)
    out = np.where(t >= LT, 0.5, 0.0)
    inside = (t > 0.0) & (t < LT)
    ti = t[inside]
    out[inside] = (ti - (LT / (2.0 * np.pi)) * np.sin(2.0 * np.pi * ti / LT)) / (2.0 * LT)
    return out


@dataclass(frozen=True)
class PhasePulse:
    """Frequency pulse and phase response sampled on the [0, LT] grid.

    The tap arrays are the grid view used for inspection and export.
    Consumers evaluate the closed forms through ``f_at`` / ``q_at``,
    which accept arbitrary times; ``q_at`` clamps to 1/2 beyond the
    pulse so saturated symbols cost nothing to evaluate.
    """

    f_taps: np.ndarray
    q_taps: np.ndarray
    params: ModulationParams

    def f_at(self, t):
        return rc_frequency_pulse(t, self.params)

    def q_at(self, t):
        scalar = np.ndim(t) == 0
        out = _q_rc(np.atleast_1d(t), self.params)
        return float(out[0]) if scalar else out


def generate_bits(count: int, seed: int) -> SymbolStream:
    """Draw ``count`` antipodal symbols from a seeded generator.

    Deterministic for a fixed seed; rejects count < 1.
    """
    if count < 1:
        raise ValueError(f"bit count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    symbols = rng.integers(0, 2, size=int(count)).astype(float) * 2.0 - 1.0
    return SymbolStream(symbols=symbols, seed=int(seed))


def rc_frequency_pulse(t, params: ModulationParams):
    """Raised-cosine frequency pulse.

    f(t) = (1/(2LT)) * (1 - cos(2 pi t / LT)) for 0 <= t <= LT, zero
    outside. Integrates to 1/2 and is symmetric about LT/2. Accepts a
    scalar or an array of times.
    """
    LT = params.L * params.T
    scalar = np.ndim(t) == 0
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros_like(t_arr)
    inside = (t_arr >= 0.0) & (t_arr <= LT)
    out[inside] = (1.0 - np.cos(2.0 * np.pi * t_arr[inside] / LT)) / (2.0 * LT)
    return float(out[0]) if scalar else out


def phase_response(params: ModulationParams) -> PhasePulse:
    """Build the sampled PhasePulse for ``params``.

    The frequency-pulse taps are evaluated on the first half of the
    grid and mirrored, so f(n Tc) == f(LT - n Tc) holds exactly, not
    just to rounding. q comes from the closed-form integral, which
    pins q(LT) = 1/2 to machine precision; the normalization check
    below only fires if someone swaps in a pulse family whose integral
    is off.
    """
    if params.osf < 2:
        raise ValueError(
            f"phase response needs osf >= 2, got {params.osf} "
            "(fewer than 2 points per symbol cannot represent the pulse)"
        )
    M = params.L * params.osf  # grid points minus one; t = 0 .. LT
    t = np.arange(M + 1) * params.Tc
    f_taps = np.empty(M + 1)
    half = M // 2
    f_taps[: half + 1] = rc_frequency_pulse(t[: half + 1], params)
    f_taps[half + 1 :] = f_taps[: M - half][::-1]  # mirror: exact symmetry
    q_taps = _q_rc(t, params)
    if abs(q_taps[-1] - 0.5) > 1e-9:
        raise ValueError(
            f"phase response normalization error {abs(q_taps[-1] - 0.5):.3e}; "
            "grid too coarse for this pulse"
        )
    return PhasePulse(f_taps=f_taps, q_taps=q_taps, params=params)


def cpm_modulate(bits: SymbolStream, params: ModulationParams) -> BasebandSignal:
    """Reference nonlinear CPM modulator.

    Emits ``len(bits) * osf`` samples of exp(j * psi(n Tc)) at period
    Tc, starting at t = 0. The phase accumulator starts from zero
    before the first symbol; symbols beyond the end of the stream
    contribute nothing, so the phase freezes after the last pulse
    rings out.

    Only the L most recent symbols have a live pulse at any sample;
    everything older enters through the saturated cumulative term.
    """
    alpha = bits.symbols
    p = params
    K = len(alpha)
    n = np.arange(K * p.osf)
    m = n // p.osf  # symbol slot of each sample
    frac = n % p.osf
    cum = np.concatenate([[0.0], np.cumsum(alpha)])
    fully_ramped = np.clip(m - p.L + 1, 0, K)
    phase = np.pi * p.h * cum[fully_ramped]
    # live-pulse contributions: q on an L x osf table of grid offsets
    alpha_pad = np.concatenate([np.zeros(p.L), alpha])
    qtab = _q_rc(
        np.arange(p.L)[:, None] * p.T + np.arange(p.osf)[None, :] * p.Tc, p
    )
    for d in range(p.L):
        phase += 2.0 * np.pi * p.h * alpha_pad[m - d + p.L] * qtab[d, frac]
    return BasebandSignal(
        samples=np.exp(1j * phase), sample_period=p.Tc, t0=0.0, label="cpm"
    )
