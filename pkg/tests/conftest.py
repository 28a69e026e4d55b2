"""Shared fixtures: the default experiment computed once per session.

The acceptance module records one line per criterion; the summary hook
at the bottom replays those lines after the normal pytest output so a
run ends with a compact scoreboard.
"""

import sys
from types import SimpleNamespace

import numpy as np
import pytest

from cpmlin import (
    BasebandSignal,
    FixedPointConfig,
    ModulationParams,
    apply_transmit_filter,
    build_laurent_bank,
    cpm_modulate,
    default_guard,
    dequantize,
    design_mmse_filter,
    fir_fixed,
    fir_fixed_bank,
    generate_bits,
    linear_modulate,
    pseudo_symbols,
    quantize_signal,
    quantize_tap_bank,
    quantize_taps,
    upsample_zero_stuff,
)

EVAL_SEED = 42
TRAIN_SEED = 1042
EVAL_BITS = 10_000


@pytest.fixture(scope="session")
def params():
    return ModulationParams()


@pytest.fixture(scope="session")
def eval_setup(params):
    """Reference signal, component bank, and drive streams for seed 42."""
    bits = generate_bits(EVAL_BITS, EVAL_SEED)
    s_ref = cpm_modulate(bits, params)
    bank = build_laurent_bank(params)
    streams = pseudo_symbols(bits, bank.beta, params)
    return SimpleNamespace(bits=bits, s_ref=s_ref, bank=bank, streams=streams)


@pytest.fixture(scope="session")
def wf_default(params):
    """MMSE filter at the default tap count, trained on held-out bits."""
    return design_mmse_filter(params, TRAIN_SEED)


@pytest.fixture(scope="session")
def wf_25(params):
    """MMSE filter matched to the c_0 tap count, for the optimality check."""
    return design_mmse_filter(params, TRAIN_SEED, n_taps=25)


@pytest.fixture(scope="session")
def float_outputs(params, eval_setup, wf_default):
    y_full = linear_modulate(eval_setup.streams, eval_setup.bank, None)
    y_c0 = linear_modulate(eval_setup.streams, eval_setup.bank, [0])
    y_cw = apply_transmit_filter(eval_setup.streams[0], wf_default.taps, params, label="c_w")
    return SimpleNamespace(full=y_full, c0=y_c0, cw=y_cw, guard=default_guard(params))


@pytest.fixture(scope="session")
def fixed_outputs(params, eval_setup, wf_default):
    """The three integer datapaths at the default word lengths."""
    fc = FixedPointConfig()
    stuffed = [
        BasebandSignal(
            samples=upsample_zero_stuff(st.values, params.osf),
            sample_period=params.Tc,
            label=f"b{st.k}_stuffed",
        )
        for st in eval_setup.streams
    ]
    quantized = [quantize_signal(sig, fc) for sig in stuffed]
    bank_taps = quantize_tap_bank(list(eval_setup.bank.filters), fc)
    out_full = fir_fixed_bank(quantized, bank_taps, fc)
    out_c0 = fir_fixed(quantized[0], quantize_taps(eval_setup.bank.filters[0], fc), fc)
    out_cw = fir_fixed(quantized[0], quantize_taps(wf_default.taps, fc), fc)
    return SimpleNamespace(
        config=fc,
        inputs=quantized,
        full=out_full,
        c0=out_c0,
        cw=out_cw,
        full_f=dequantize(out_full),
        c0_f=dequantize(out_c0),
        cw_f=dequantize(out_cw),
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
