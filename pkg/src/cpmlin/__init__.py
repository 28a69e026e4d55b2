"""Linearized CPM waveform synthesis.

Exact PAM decomposition of binary partial-response CPM, an MMSE-designed
single-filter approximation, and a bit-true fixed-point datapath, with an
experiment CLI (``cpmlin --help``).
"""

__version__ = "0.1.0"

from .signal_core import (
    BasebandSignal,
    ModulationParams,
    PhasePulse,
    SymbolStream,
    cpm_modulate,
    generate_bits,
    phase_response,
    rc_frequency_pulse,
)
from .laurent import (
    BetaMatrix,
    LaurentBank,
    PseudoSymbolStream,
    apply_transmit_filter,
    build_beta,
    build_laurent_bank,
    laurent_u,
    linear_modulate,
    pseudo_symbols,
    upsample_zero_stuff,
)
from .wiener import (
    CorrelationEstimate,
    WienerFilter,
    default_tap_count,
    design_filter_from_bits,
    design_mmse_filter,
    estimate_correlations,
    solve_wiener_hopf,
)
from .quantize import (
    FixedPointConfig,
    QuantizedSignal,
    QuantizedTaps,
    dequantize,
    fir_fixed,
    fir_fixed_bank,
    quantize_signal,
    quantize_tap_bank,
    quantize_taps,
    read_iq_int16,
    read_iq_text,
    write_iq_int16,
    write_iq_text,
)
from .metrics import (
    FLOOR_DB,
    MseReport,
    PhaseTrace,
    default_guard,
    mean_abs_phase_error,
    mse_db,
    phase_trace,
)
from .estimators import (
    CpmModulator,
    FixedPointQuantizer,
    LaurentModulator,
    MmseFilterDesigner,
)

__all__ = [
    "__version__",
    "BasebandSignal",
    "ModulationParams",
    "PhasePulse",
    "SymbolStream",
    "cpm_modulate",
    "generate_bits",
    "phase_response",
    "rc_frequency_pulse",
    "BetaMatrix",
    "LaurentBank",
    "PseudoSymbolStream",
    "apply_transmit_filter",
    "build_beta",
    "build_laurent_bank",
    "laurent_u",
    "linear_modulate",
    "pseudo_symbols",
    "upsample_zero_stuff",
    "CorrelationEstimate",
    "WienerFilter",
    "default_tap_count",
    "design_filter_from_bits",
    "design_mmse_filter",
    "estimate_correlations",
    "solve_wiener_hopf",
    "FixedPointConfig",
    "QuantizedSignal",
    "QuantizedTaps",
    "dequantize",
    "fir_fixed",
    "fir_fixed_bank",
    "quantize_signal",
    "quantize_tap_bank",
    "quantize_taps",
    "read_iq_int16",
    "read_iq_text",
    "write_iq_int16",
    "write_iq_text",
    "FLOOR_DB",
    "MseReport",
    "PhaseTrace",
    "default_guard",
    "mean_abs_phase_error",
    "mse_db",
    "phase_trace",
    "CpmModulator",
    "FixedPointQuantizer",
    "LaurentModulator",
    "MmseFilterDesigner",
]
