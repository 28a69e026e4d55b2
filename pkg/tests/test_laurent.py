"""Exact PAM decomposition: kernel, banks, pseudo-symbols, equivalence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpmlin import (
    ModulationParams,
    build_beta,
    build_laurent_bank,
    cpm_modulate,
    default_guard,
    generate_bits,
    laurent_u,
    linear_modulate,
    mse_db,
    phase_response,
    pseudo_symbols,
    upsample_zero_stuff,
)

# sin(0.35 pi) / sin(0.7 pi), the kernel peak for h = 0.7; checked
# against a 50-digit computation
U_PEAK_H07 = 1.1013446322926333


def test_beta_matrix_shape_and_decode():
    for L in (1, 2, 3, 4):
        beta = build_beta(L)
        assert beta.Q == 2 ** (L - 1)
        assert beta.L == L
        assert np.all(beta.rows[:, 0] == 0)
        # row k encodes k in its upper columns
        for k in range(beta.Q):
            decoded = sum(int(beta.rows[k, i]) << (i - 1) for i in range(1, L))
            assert decoded == k


def test_beta_rejects_bad_length():
    with pytest.raises(ValueError):
        build_beta(0)


def test_kernel_branch_values(params):
    pp = phase_response(params)
    LT = params.L * params.T
    assert laurent_u(-0.5, pp, params) == 0.0
    assert laurent_u(2 * LT + 0.5, pp, params) == 0.0
    assert laurent_u(0.0, pp, params) == 0.0
    # both branches meet at u(LT) = 1
    assert abs(laurent_u(LT, pp, params) - 1.0) < 1e-15
    assert abs(laurent_u(LT / 2.0, pp, params) - U_PEAK_H07) < 1e-15


def test_kernel_continuity_and_symmetry(params):
    pp = phase_response(params)
    LT = params.L * params.T
    eps = 1e-9
    left = laurent_u(LT - eps, pp, params)
    right = laurent_u(LT + eps, pp, params)
    assert abs(left - right) < 1e-6  # continuous across the branch seam
    t = np.linspace(0.0, 2.0 * LT, 1601)
    u = laurent_u(t, pp, params)
    assert np.max(np.abs(u - u[::-1])) < 1e-12  # symmetric about LT


def test_kernel_rejects_integer_h():
    p = ModulationParams(h=1.0)
    pp = phase_response(p)
    with pytest.raises(ValueError):
        laurent_u(0.5, pp, p)


def test_bank_tap_counts(params):
    bank = build_laurent_bank(params)
    assert [len(f) for f in bank.filters] == [25, 9]
    assert bank.Q == 2


@pytest.mark.parametrize("L,expected", [(1, [17]), (3, [33, 17, 9, 9])])
def test_bank_tap_counts_other_lengths(L, expected):
    bank = build_laurent_bank(ModulationParams(L=L))
    assert [len(f) for f in bank.filters] == expected


def test_bank_boundary_taps_vanish(params):
    bank = build_laurent_bank(params)
    for taps in bank.filters:
        assert abs(taps[0]) < 1e-15
        assert abs(taps[-1]) < 1e-15


def test_bank_c0_symmetric_nonnegative(params):
    c0 = build_laurent_bank(params).filters[0]
    assert np.max(np.abs(c0 - c0[::-1])) < 1e-12
    assert np.all(c0 >= 0.0)
    # at t = T the second kernel factor is u(2T) = 1, so the tap is the
    # kernel peak itself; the filter tops out in twin peaks around
    # 1.5 T with a shallow dip exactly at the midpoint
    assert abs(c0[params.osf] - U_PEAK_H07) < 1e-15
    assert int(np.argmax(c0)) in (11, 13)
    assert c0[12] < c0[13]


def test_pseudo_symbols_unit_modulus(params):
    bits = generate_bits(500, 13)
    beta = build_beta(params.L)
    streams = pseudo_symbols(bits, beta, params)
    assert len(streams) == beta.Q
    for k, st_k in enumerate(streams):
        assert st_k.k == k
        assert np.max(np.abs(np.abs(st_k.values) - 1.0)) < 1e-12


def test_pseudo_symbol_recursion(params):
    # component 0 accumulates one symbol of phase per step
    bits = generate_bits(300, 21)
    beta = build_beta(params.L)
    b0 = pseudo_symbols(bits, beta, params)[0].values
    step = np.exp(1j * np.pi * params.h * bits.symbols[1:])
    assert np.max(np.abs(b0[1:] - b0[:-1] * step)) < 1e-12
    assert abs(b0[0] - np.exp(1j * np.pi * params.h * bits.symbols[0])) < 1e-15


def test_pseudo_symbols_empty_past(params):
    # the first b_1 value carries no correction because alpha_{-1} is absent
    bits = generate_bits(10, 2)
    beta = build_beta(params.L)
    b1 = pseudo_symbols(bits, beta, params)[1].values
    assert abs(b1[0] - np.exp(1j * np.pi * params.h * bits.symbols[0])) < 1e-15


def test_upsample_zero_stuff():
    out = upsample_zero_stuff(np.array([1.0 + 1j, 2.0]), 4)
    assert len(out) == 8
    assert out[0] == 1.0 + 1j and out[4] == 2.0
    assert np.all(out[[1, 2, 3, 5, 6, 7]] == 0.0)


def test_decomposition_is_exact(params, eval_setup):
    rep = mse_db(
        eval_setup.s_ref,
        linear_modulate(eval_setup.streams, eval_setup.bank, None),
        default_guard(params),
        params.osf,
    )
    assert rep.mse_oversampled_db <= -250.0


def test_component_zero_dominates(params, eval_setup):
    rep = mse_db(
        eval_setup.s_ref,
        linear_modulate(eval_setup.streams, eval_setup.bank, [0]),
        default_guard(params),
        params.osf,
    )
    # c_0 alone already sits below -27 dB; the remaining components are small
    assert rep.mse_oversampled_db < -27.0


@settings(max_examples=10, deadline=None)
@given(
    L=st.integers(1, 3),
    h=st.sampled_from([0.5, 0.7, 0.25, 1.5]),
    seed=st.integers(0, 10_000),
)
def test_decomposition_exact_property(L, h, seed):
    # the PAM representation reproduces the nonlinear modulator for any
    # pulse length and non-integer index, not just the default setup
    p = ModulationParams(h=h, L=L)
    bits = generate_bits(300, seed)
    s_ref = cpm_modulate(bits, p)
    bank = build_laurent_bank(p)
    streams = pseudo_symbols(bits, bank.beta, p)
    rep = mse_db(s_ref, linear_modulate(streams, bank, None), default_guard(p), p.osf)
    assert rep.mse_oversampled_db <= -250.0


def test_linear_modulate_selector_errors(params, eval_setup):
    bank, streams = eval_setup.bank, eval_setup.streams
    with pytest.raises(ValueError):
        linear_modulate(streams, bank, [])
    with pytest.raises(ValueError):
        linear_modulate(streams, bank, [5])
    with pytest.raises(ValueError):
        linear_modulate(streams[:1], bank, [1])


def test_linear_modulate_rejects_params_mismatch(params, eval_setup):
    other = ModulationParams(h=0.5)
    other_bank = build_laurent_bank(other)
    with pytest.raises(ValueError):
        linear_modulate(eval_setup.streams, other_bank, [0])


def test_linear_modulate_duplicate_selection(params, eval_setup):
    # duplicates collapse; [0, 0] is the same signal as [0]
    a = linear_modulate(eval_setup.streams, eval_setup.bank, [0, 0])
    b = linear_modulate(eval_setup.streams, eval_setup.bank, [0])
    assert np.array_equal(a.samples, b.samples)
