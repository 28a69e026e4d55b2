"""Exact PAM decomposition of binary CPM and the linear modulator.

A binary CPM envelope factors exactly into Q = 2**(L-1) linearly
modulated components,

    s(n Tc) = sum_{k=0}^{Q-1} sum_m b_{k,m} c_k(n Tc - m T),

where the component filters c_k are products of time-shifted copies of
a single kernel u(t) and the pseudo-symbols b_{k,m} are unit-modulus
rotations derived from the running symbol phase. Component 0 carries
almost all of the energy, which is what makes a one-filter linear
transmitter a usable approximation; the full bank reproduces the
nonlinear signal to floating-point accuracy and serves as the
equivalence oracle in the tests.

All filters here are anchored with their first tap at t = 0, matching
the t0 = 0 convention of ``signal_core.cpm_modulate``, so outputs of
the two modulators compare index by index with no realignment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_core import (
    BasebandSignal,
    ModulationParams,
    PhasePulse,
    SymbolStream,
    phase_response,
)

__all__ = [
    "BetaMatrix",
    "LaurentBank",
    "PseudoSymbolStream",
    "laurent_u",
    "build_beta",
    "build_laurent_bank",
    "pseudo_symbols",
    "upsample_zero_stuff",
    "apply_transmit_filter",
    "linear_modulate",
]

# taps at the analytic support boundary must vanish; used as a sanity bound
_BOUNDARY_EPS = 1e-15


@dataclass(frozen=True)
class BetaMatrix:
    """Q x L bit matrix indexing the component filters.

    Row k holds the binary expansion of k shifted up by one position:
    column 0 is always 0 and column i (i >= 1) is bit (i-1) of k, so
    decoding sum_i 2**(i-1) * beta[k, i] recovers k.
    """

    rows: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rows", np.asarray(self.rows, dtype=int))

    @property
    def Q(self) -> int:
        return self.rows.shape[0]

    @property
    def L(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class LaurentBank:
    """The Q component filters as sampled tap vectors, plus their index matrix."""

    filters: tuple
    beta: BetaMatrix
    params: ModulationParams

    @property
    def Q(self) -> int:
        return len(self.filters)


@dataclass(frozen=True)
class PseudoSymbolStream:
    """Unit-modulus symbol-rate drive sequence for component k."""

    values: np.ndarray
    k: int
    params: ModulationParams | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    def __len__(self) -> int:
        return len(self.values)


def _check_non_integer_h(h: float):
    if float(h).is_integer():
        raise ValueError(
            f"modulation index h={h} is an integer; the kernel u(t) divides by sin(pi h)"
        )


def laurent_u(t, phase_pulse: PhasePulse, params: ModulationParams):
    """Kernel u(t) on [0, 2LT], zero outside.

    sin(2 pi h q(t)) / sin(pi h)              for 0 <= t <= LT
    sin(pi h - 2 pi h q(t - LT)) / sin(pi h)  for LT < t <= 2LT

    Both branches meet at u(LT) = 1 and the function is symmetric
    about LT. Accepts a scalar or an array of times.
    """
    _check_non_integer_h(params.h)
    scalar = np.ndim(t) == 0
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    LT = params.L * params.T
    sin_h = np.sin(np.pi * params.h)
    out = np.zeros_like(t_arr)
    rising = (t_arr >= 0.0) & (t_arr <= LT)
    falling = (t_arr > LT) & (t_arr <= 2.0 * LT)
    out[rising] = np.sin(2.0 * np.pi * params.h * phase_pulse.q_at(t_arr[rising])) / sin_h
    out[falling] = (
        np.sin(np.pi * params.h - 2.0 * np.pi * params.h * phase_pulse.q_at(t_arr[falling] - LT))
        / sin_h
    )
    return float(out[0]) if scalar else out


def build_beta(L: int) -> BetaMatrix:
    """Index matrix for Q = 2**(L-1) components."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    Q = 2 ** (L - 1)
    rows = np.zeros((Q, L), dtype=int)
    for k in range(Q):
        for i in range(1, L):
            rows[k, i] = (k >> (i - 1)) & 1
    return BetaMatrix(rows=rows)


def build_laurent_bank(
    params: ModulationParams, phase_pulse: PhasePulse | None = None
) -> LaurentBank:
    """Sample the Q component filters at period Tc.

    Filter k is the product prod_{i=0}^{L-1} u(t + i T + beta[k,i] * L T).
    Each shifted kernel lives on an interval of length 2LT, so the
    product is nonzero only up to 2LT minus the largest shift; the tap
    vector covers exactly that support, both endpoints included. c_0
    spans [0, (L+1) T]; every other component is strictly shorter.

    Taps are real and nonnegative for the raised-cosine pulse with
    0 < h < 1.
    """
    _check_non_integer_h(params.h)
    if phase_pulse is None:
        phase_pulse = phase_response(params)
    beta = build_beta(params.L)
    LT = params.L * params.T
    filters = []
    for k in range(beta.Q):
        shifts = np.arange(params.L) * params.T + beta.rows[k] * LT
        support_end = 2.0 * LT - shifts.max()
        n_taps = int(round(support_end / params.Tc)) + 1
        t = np.arange(n_taps) * params.Tc
        taps = np.ones(n_taps)
        for i in range(params.L):
            taps = taps * laurent_u(t + shifts[i], phase_pulse, params)
        # the analytic support ends in zeros; anything else means the
        # support arithmetic above is wrong for these params
        if abs(taps[0]) > _BOUNDARY_EPS or abs(taps[-1]) > _BOUNDARY_EPS:
            raise AssertionError(f"component {k} taps do not vanish at the support boundary")
        filters.append(taps)
    return LaurentBank(filters=tuple(filters), beta=beta, params=params)


def pseudo_symbols(
    bits: SymbolStream, beta: BetaMatrix, params: ModulationParams
) -> list[PseudoSymbolStream]:
    """Drive sequences b_{k,n} for every component.

    b_{k,n} = exp(j pi h * (sum_{m<=n} alpha_m - sum_{i>=1} beta[k,i] * alpha_{n-i}))

    with symbols at negative indices absent (contributing zero), the
    same empty-past convention the reference modulator uses. Row 0 of
    beta is all zeros, so b_{0,n} is the plain cumulative phase and
    obeys b_{0,n} = b_{0,n-1} * exp(j pi h alpha_n).
    """
    alpha = bits.symbols
    K = len(alpha)
    cum = np.cumsum(alpha)
    streams = []
    for k in range(beta.Q):
        correction = np.zeros(K)
        for i in range(1, beta.L):
            if beta.rows[k, i]:
                correction[i:] += alpha[: K - i]
        values = np.exp(1j * np.pi * params.h * (cum - correction))
        streams.append(PseudoSymbolStream(values=values, k=k, params=params))
    return streams


def upsample_zero_stuff(values: np.ndarray, osf: int) -> np.ndarray:
    """Insert osf-1 zeros after each entry; output length len(values) * osf."""
    values = np.asarray(values)
    out = np.zeros(len(values) * osf, dtype=complex)
    out[::osf] = values
    return out


def apply_transmit_filter(
    stream: PseudoSymbolStream,
    taps: np.ndarray,
    params: ModulationParams,
    label: str = "",
) -> BasebandSignal:
    """Run one PAM branch: zero-stuff the symbols and FIR filter them.

    This is the shared datapath primitive: component filters and the
    MMSE replacement filter go through the exact same code, which is
    what makes them interchangeable. Output covers the full
    convolution (symbol span plus filter ring-out), first tap at t = 0.
    """
    d = upsample_zero_stuff(stream.values, params.osf)
    y = np.convolve(d, np.asarray(taps))
    return BasebandSignal(samples=y, sample_period=params.Tc, t0=0.0, label=label)


def linear_modulate(
    streams: list[PseudoSymbolStream],
    bank: LaurentBank,
    components=None,
) -> BasebandSignal:
    """Superpose the selected PAM components.

    ``components`` is an iterable of component indices; None selects
    the full bank. Components are summed in ascending index order so
    results are bit-reproducible.
    """
    Q = bank.Q
    selected = sorted(set(range(Q) if components is None else components))
    if not selected:
        raise ValueError("component selector is empty")
    if any(k < 0 or k >= Q for k in selected):
        raise ValueError(f"component selector {selected} out of range for Q={Q}")
    if len(streams) < max(selected) + 1:
        raise ValueError(
            f"need streams for components up to {max(selected)}, got {len(streams)}"
        )
    lengths = {len(s) for s in streams}
    if len(lengths) != 1:
        raise ValueError(f"pseudo-symbol streams disagree on length: {sorted(lengths)}")
    for s in streams:
        if s.params is not None and s.params != bank.params:
            raise ValueError(f"stream {s.k} was built with different params than the bank")

    K = lengths.pop()
    p = bank.params
    out_len = K * p.osf + max(len(bank.filters[k]) for k in selected) - 1
    out = np.zeros(out_len, dtype=complex)
    for k in selected:
        y = apply_transmit_filter(streams[k], bank.filters[k], p).samples
        out[: len(y)] += y
    label = "laurent_full" if len(selected) == Q else "laurent[" + ",".join(map(str, selected)) + "]"
    return BasebandSignal(samples=out, sample_period=p.Tc, t0=0.0, label=label)
