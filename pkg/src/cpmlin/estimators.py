"""Estimator-style wrappers around the functional core.

Thin fit/transform adapters so the modulators and the MMSE designer
compose with scikit-learn tooling (get_params, set_params, clone,
pipelines). X is always a 1-D array of antipodal symbols; transforms
return 1-D complex sample arrays. The functional modules remain the
source of truth; these classes hold no logic of their own beyond
parameter bookkeeping.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_bits
from .laurent import (
    apply_transmit_filter,
    build_beta,
    build_laurent_bank,
    linear_modulate,
    pseudo_symbols,
)
from .quantize import FixedPointConfig, dequantize, quantize_signal
from .signal_core import BasebandSignal, ModulationParams, SymbolStream, cpm_modulate
from .wiener import MIN_ESTIMATION_SAMPLES, design_filter_from_bits

__all__ = [
    "CpmModulator",
    "LaurentModulator",
    "MmseFilterDesigner",
    "FixedPointQuantizer",
]


class _ParamsMixin:
    def _modulation_params(self) -> ModulationParams:
        return ModulationParams(h=self.h, L=self.L, T=self.T, osf=self.osf, pulse=self.pulse)


class CpmModulator(_ParamsMixin, TransformerMixin, BaseEstimator):
    """Reference nonlinear modulator as a stateless transformer."""

    def __init__(self, h=0.7, L=2, T=1.0, osf=8, pulse="rc"):
        self.h = h
        self.L = L
        self.T = T
        self.osf = osf
        self.pulse = pulse

    def fit(self, X=None, y=None):
        self.params_ = self._modulation_params()
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "params_"):
            self.fit()
        bits = SymbolStream(symbols=check_bits(X))
        return cpm_modulate(bits, self.params_).samples


class LaurentModulator(_ParamsMixin, TransformerMixin, BaseEstimator):
    """Linear PAM modulator; ``components=None`` runs the full bank.

    After ``fit``, the sampled filters are available as ``bank_``.
    """

    def __init__(self, h=0.7, L=2, T=1.0, osf=8, pulse="rc", components=None):
        self.h = h
        self.L = L
        self.T = T
        self.osf = osf
        self.pulse = pulse
        self.components = components

    def fit(self, X=None, y=None):
        self.params_ = self._modulation_params()
        self.bank_ = build_laurent_bank(self.params_)
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "bank_"):
            self.fit()
        bits = SymbolStream(symbols=check_bits(X))
        streams = pseudo_symbols(bits, self.bank_.beta, self.params_)
        return linear_modulate(streams, self.bank_, self.components).samples


class MmseFilterDesigner(_ParamsMixin, TransformerMixin, BaseEstimator):
    """Fits the MMSE transmit filter to training symbols.

    ``fit(X)`` estimates correlations from the symbols in X and solves
    for the taps; ``transform(X2)`` (or ``predict``) then synthesizes
    the approximate envelope for new symbols through the fitted filter.

    Attributes set by fit: ``taps_``, ``n_taps_``, ``achieved_mse_db_``,
    ``sample_count_``, ``low_sample_warning_``.
    """

    def __init__(
        self, h=0.7, L=2, T=1.0, osf=8, pulse="rc",
        n_taps=None, min_samples=MIN_ESTIMATION_SAMPLES,
    ):
        self.h = h
        self.L = L
        self.T = T
        self.osf = osf
        self.pulse = pulse
        self.n_taps = n_taps
        self.min_samples = min_samples

    def fit(self, X, y=None):
        self.params_ = self._modulation_params()
        bits = SymbolStream(symbols=check_bits(X))
        wf = design_filter_from_bits(
            self.params_, bits, n_taps=self.n_taps, min_samples=self.min_samples
        )
        self.taps_ = wf.taps
        self.n_taps_ = wf.n_taps
        self.achieved_mse_db_ = wf.achieved_mse_db
        self.sample_count_ = wf.sample_count
        self.low_sample_warning_ = wf.low_sample_warning
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "taps_"):
            raise RuntimeError("MmseFilterDesigner must be fitted before transform")
        bits = SymbolStream(symbols=check_bits(X))
        b0 = pseudo_symbols(bits, build_beta(self.params_.L), self.params_)[0]
        return apply_transmit_filter(b0, self.taps_, self.params_, label="c_w").samples

    predict = transform


class FixedPointQuantizer(TransformerMixin, BaseEstimator):
    """Round-trips complex samples through the integer signal format.

    ``transform`` returns the dequantized view, i.e. what the rest of
    the chain would actually see after the converter.
    """

    def __init__(self, signal_bits=12, internal_bits=16, scale=1.0):
        self.signal_bits = signal_bits
        self.internal_bits = internal_bits
        self.scale = scale

    def fit(self, X=None, y=None):
        self.config_ = FixedPointConfig(
            signal_bits=self.signal_bits,
            internal_bits=self.internal_bits,
            scale=self.scale,
        )
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "config_"):
            self.fit()
        arr = np.asarray(X, dtype=complex)
        if arr.ndim != 1:
            raise ValueError(f"expected a 1-D sample array, got shape {arr.shape}")
        sig = BasebandSignal(samples=arr, sample_period=1.0)
        return dequantize(quantize_signal(sig, self.config_)).samples
