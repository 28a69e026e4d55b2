"""Bit-true fixed-point model of the transmit datapath.

Integer-only arithmetic mirroring a hardware FIR: I/Q samples live in
``signal_bits``-wide words, filter taps and multiply operands in
``internal_bits``-wide words, products accumulate in a double-width
register, and the result is rounded back to the signal width exactly
once. Round-to-nearest-even and saturation everywhere. Outputs are a
pure function of the integer inputs, so runs are identical bit for bit
across platforms, and the exported code streams can be diffed directly
against hardware-simulation dumps.

Conventions, all of which the numbers in the experiment tables depend
on:
  * signal quantization maps [-scale, +scale] onto the two's-complement
    range, so +scale itself saturates to the max code (2^(b-1) - 1);
  * tap quantization normalizes the largest tap magnitude to one half
    of internal full scale, leaving accumulator headroom for the tap
    counts used here;
  * the accumulator is 2 * internal_bits wide; saturation is applied to
    the accumulated value at write-back, and overflow events are
    counted, not silently wrapped;
  * one rounding at requantization to the output width; the signal
    scale cancels there, so only the tap scale enters the gain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_core import BasebandSignal

__all__ = [
    "FixedPointConfig",
    "QuantizedSignal",
    "QuantizedTaps",
    "quantize_signal",
    "quantize_taps",
    "quantize_tap_bank",
    "fir_fixed",
    "fir_fixed_bank",
    "dequantize",
    "write_iq_text",
    "read_iq_text",
    "write_iq_int16",
    "read_iq_int16",
]


@dataclass(frozen=True)
class FixedPointConfig:
    """Word lengths and numeric conventions for the integer datapath."""

    signal_bits: int = 12
    internal_bits: int = 16
    rounding: str = "nearest-even"
    overflow: str = "saturate"
    scale: float = 1.0

    def __post_init__(self):
        if not (2 <= self.signal_bits <= self.internal_bits <= 32):
            raise ValueError(
                f"need 2 <= signal_bits <= internal_bits <= 32, "
                f"got {self.signal_bits}/{self.internal_bits}"
            )
        if self.rounding != "nearest-even":
            raise ValueError(f"unsupported rounding mode {self.rounding!r}")
        if self.overflow != "saturate":
            raise ValueError(f"unsupported overflow mode {self.overflow!r}")
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class QuantizedSignal:
    """Integer I/Q code streams plus the config that defines their meaning.

    ``sat_count`` counts saturated output codes; ``acc_overflow_count``
    counts accumulator saturations inside the FIR that produced this
    signal (zero for directly quantized signals).
    """

    i_codes: np.ndarray
    q_codes: np.ndarray
    config: FixedPointConfig
    sample_period: float
    t0: float = 0.0
    label: str = ""
    sat_count: int = 0
    acc_overflow_count: int = 0

    def __post_init__(self):
        i_codes = np.asarray(self.i_codes, dtype=np.int64)
        q_codes = np.asarray(self.q_codes, dtype=np.int64)
        if i_codes.shape != q_codes.shape:
            raise ValueError("I and Q code streams differ in shape")
        lo, hi = _code_range(self.config.signal_bits)
        for name, codes in (("I", i_codes), ("Q", q_codes)):
            if codes.size and (codes.min() < lo or codes.max() > hi):
                raise ValueError(f"{name} codes outside [{lo}, {hi}]")
        object.__setattr__(self, "i_codes", i_codes)
        object.__setattr__(self, "q_codes", q_codes)

    def __len__(self) -> int:
        return len(self.i_codes)


@dataclass(frozen=True)
class QuantizedTaps:
    """Filter taps as internal-width integer codes with their shared scale.

    Real value of tap n is ``(i_codes[n] + 1j q_codes[n]) * scale / 2^(internal_bits - 2)``;
    the largest tap magnitude maps to half of internal full scale.
    """

    i_codes: np.ndarray
    q_codes: np.ndarray
    scale: float
    internal_bits: int


def _code_range(bits: int) -> tuple[int, int]:
    return -(2 ** (bits - 1)), 2 ** (bits - 1) - 1


def _quantize_array(x: np.ndarray, bits: int, scale: float) -> tuple[np.ndarray, int]:
    # round-to-nearest-even via rint, then saturate
    raw = np.rint(np.asarray(x, dtype=float) / scale * 2 ** (bits - 1))
    lo, hi = _code_range(bits)
    sat = int(np.count_nonzero((raw < lo) | (raw > hi)))
    return np.clip(raw, lo, hi).astype(np.int64), sat


def quantize_signal(signal: BasebandSignal, config: FixedPointConfig) -> QuantizedSignal:
    """Quantize a complex envelope to signal_bits-wide I/Q codes.

    code = clamp(round_even(x / scale * 2^(bits-1))). Values at +scale
    land on 2^(bits-1) and saturate to the maximum code; -scale is
    exactly representable.
    """
    i_codes, sat_i = _quantize_array(signal.samples.real, config.signal_bits, config.scale)
    q_codes, sat_q = _quantize_array(signal.samples.imag, config.signal_bits, config.scale)
    return QuantizedSignal(
        i_codes=i_codes,
        q_codes=q_codes,
        config=config,
        sample_period=signal.sample_period,
        t0=signal.t0,
        label=signal.label,
        sat_count=sat_i + sat_q,
    )


def quantize_taps(taps: np.ndarray, config: FixedPointConfig) -> QuantizedTaps:
    """Quantize one filter with its own scale (largest tap -> half full scale)."""
    return quantize_tap_bank([taps], config)[0]


def quantize_tap_bank(taps_list, config: FixedPointConfig) -> list[QuantizedTaps]:
    """Quantize several filters with one shared scale.

    The shared scale is what lets their outputs be summed in the
    accumulator domain without any rescaling shifts.
    """
    arrays = [np.asarray(t, dtype=complex) for t in taps_list]
    peak = max(
        (max(np.max(np.abs(a.real)), np.max(np.abs(a.imag))) for a in arrays if a.size),
        default=0.0,
    )
    scale = peak if peak > 0 else 1.0
    unit = 2 ** (config.internal_bits - 2)
    out = []
    for a in arrays:
        out.append(
            QuantizedTaps(
                i_codes=np.rint(a.real / scale * unit).astype(np.int64),
                q_codes=np.rint(a.imag / scale * unit).astype(np.int64),
                scale=scale,
                internal_bits=config.internal_bits,
            )
        )
    return out


def _check_exact_headroom(x: QuantizedSignal, t: QuantizedTaps, config: FixedPointConfig):
    # the model computes the exact accumulated value in int64 and
    # saturates at write-back; refuse word lengths where the exact
    # value itself could exceed int64
    worst = 2 * len(t.i_codes) * 2 ** (config.signal_bits - 1) * 2 ** (config.internal_bits - 2)
    if worst >= 2**62:
        raise ValueError(
            f"word lengths {config.signal_bits}/{config.internal_bits} with "
            f"{len(t.i_codes)} taps overflow the exact integer model"
        )


def _accumulate(x: QuantizedSignal, t: QuantizedTaps, out_len: int):
    # complex MAC as four integer convolutions; int64 holds every
    # partial exactly once _check_exact_headroom has passed
    acc_i = np.zeros(out_len, dtype=np.int64)
    acc_q = np.zeros(out_len, dtype=np.int64)
    n = len(x) + len(t.i_codes) - 1
    acc_i[:n] += np.convolve(x.i_codes, t.i_codes) - np.convolve(x.q_codes, t.q_codes)
    acc_q[:n] += np.convolve(x.i_codes, t.q_codes) + np.convolve(x.q_codes, t.i_codes)
    return acc_i, acc_q


def _finish(acc_i, acc_q, scale: float, config: FixedPointConfig, sample_period, t0, label):
    # saturate the double-width accumulator, then one rounding to the
    # output width; the signal scale cancels, only the tap scale remains
    acc_lo, acc_hi = _code_range(2 * config.internal_bits)
    overflow = int(np.count_nonzero((acc_i < acc_lo) | (acc_i > acc_hi)))
    overflow += int(np.count_nonzero((acc_q < acc_lo) | (acc_q > acc_hi)))
    acc_i = np.clip(acc_i, acc_lo, acc_hi)
    acc_q = np.clip(acc_q, acc_lo, acc_hi)

    gain = scale / 2 ** (config.internal_bits - 2)
    lo, hi = _code_range(config.signal_bits)
    out_i = np.rint(acc_i * gain)
    out_q = np.rint(acc_q * gain)
    sat = int(np.count_nonzero((out_i < lo) | (out_i > hi)))
    sat += int(np.count_nonzero((out_q < lo) | (out_q > hi)))
    return QuantizedSignal(
        i_codes=np.clip(out_i, lo, hi).astype(np.int64),
        q_codes=np.clip(out_q, lo, hi).astype(np.int64),
        config=config,
        sample_period=sample_period,
        t0=t0,
        label=label,
        sat_count=sat,
        acc_overflow_count=overflow,
    )


def fir_fixed(
    input: QuantizedSignal, taps: QuantizedTaps, config: FixedPointConfig
) -> QuantizedSignal:
    """Bit-exact FIR: integer convolution, one output rounding.

    ``taps`` must already be quantized (see ``quantize_taps``); the
    output is at signal width on the same time base, first tap at the
    input's t0.
    """
    if taps.internal_bits != config.internal_bits:
        raise ValueError(
            f"taps quantized at {taps.internal_bits} bits, config says {config.internal_bits}"
        )
    _check_exact_headroom(input, taps, config)
    out_len = len(input) + len(taps.i_codes) - 1
    acc_i, acc_q = _accumulate(input, taps, out_len)
    return _finish(
        acc_i, acc_q, taps.scale, config, input.sample_period, input.t0,
        label=input.label + "|fir",
    )


def fir_fixed_bank(
    inputs: list[QuantizedSignal],
    taps_list: list[QuantizedTaps],
    config: FixedPointConfig,
) -> QuantizedSignal:
    """Sum several FIR branches in the accumulator domain.

    All taps must share one scale (use ``quantize_tap_bank``), since
    branch outputs are added before the single output rounding, the
    way a hardware adder tree would.
    """
    if len(inputs) != len(taps_list) or not inputs:
        raise ValueError("need one taps vector per input, at least one branch")
    scales = {t.scale for t in taps_list}
    if len(scales) != 1:
        raise ValueError(f"branch tap scales differ: {sorted(scales)}; quantize as a bank")
    for t in taps_list:
        if t.internal_bits != config.internal_bits:
            raise ValueError("tap width disagrees with config")
    periods = {x.sample_period for x in inputs}
    if len(periods) != 1:
        raise ValueError("branch inputs disagree on sample period")

    out_len = max(len(x) + len(t.i_codes) - 1 for x, t in zip(inputs, taps_list))
    acc_i = np.zeros(out_len, dtype=np.int64)
    acc_q = np.zeros(out_len, dtype=np.int64)
    for x, t in zip(inputs, taps_list):
        _check_exact_headroom(x, t, config)
        bi, bq = _accumulate(x, t, out_len)
        acc_i += bi
        acc_q += bq
    return _finish(
        acc_i, acc_q, taps_list[0].scale, config,
        inputs[0].sample_period, inputs[0].t0, label="bank|fir",
    )


def dequantize(q: QuantizedSignal) -> BasebandSignal:
    """Map codes back to the complex envelope: sample = code * scale / 2^(bits-1)."""
    unit = q.config.scale / 2 ** (q.config.signal_bits - 1)
    samples = q.i_codes * unit + 1j * (q.q_codes * unit)
    return BasebandSignal(
        samples=samples, sample_period=q.sample_period, t0=q.t0, label=q.label
    )


def write_iq_text(path, q: QuantizedSignal) -> None:
    """Interleaved I/Q codes as decimal text, one integer per line."""
    inter = np.empty(2 * len(q), dtype=np.int64)
    inter[0::2] = q.i_codes
    inter[1::2] = q.q_codes
    with open(path, "w") as fh:
        fh.write("\n".join(str(v) for v in inter))
        fh.write("\n")


def read_iq_text(path, config: FixedPointConfig, sample_period: float) -> QuantizedSignal:
    with open(path) as fh:
        inter = np.array([int(line) for line in fh if line.strip()], dtype=np.int64)
    if len(inter) % 2:
        raise ValueError(f"{path}: odd number of interleaved values")
    return QuantizedSignal(
        i_codes=inter[0::2], q_codes=inter[1::2], config=config, sample_period=sample_period
    )


def write_iq_int16(path, q: QuantizedSignal) -> None:
    """Interleaved I/Q codes as little-endian int16 records, sign extended."""
    if q.config.signal_bits > 16:
        raise ValueError("int16 export needs signal_bits <= 16")
    inter = np.empty(2 * len(q), dtype="<i2")
    inter[0::2] = q.i_codes.astype("<i2")
    inter[1::2] = q.q_codes.astype("<i2")
    inter.tofile(path)


def read_iq_int16(path, config: FixedPointConfig, sample_period: float) -> QuantizedSignal:
    inter = np.fromfile(path, dtype="<i2").astype(np.int64)
    if len(inter) % 2:
        raise ValueError(f"{path}: odd record count")
    return QuantizedSignal(
        i_codes=inter[0::2], q_codes=inter[1::2], config=config, sample_period=sample_period
    )
