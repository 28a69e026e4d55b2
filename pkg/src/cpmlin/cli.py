"""Experiment runner and file plumbing.

Verbs: table1 (floating-point error table), table2 (fixed-point error
table), phase (phase-trajectory traces), taps (filter export), sweep
(error vs designed tap count). Each run writes one directory named
experiment_seed<seed>_<confighash> containing deterministic result
files plus a manifest.json with the resolved config, library version,
result records, wall-clock timings, and warnings. Result files are
bit-identical across reruns of the same config; the manifest is not,
because it carries timings.

Config is a JSON object; every key has a default, and command-line
flags override file values. Schema (defaults in parentheses):

    h (0.7)              modulation index
    L (2)                pulse length in symbols
    T (1.0)              symbol period, seconds
    osf (8)              samples per symbol
    pulse ("rc")         frequency-pulse family
    seed (42)            evaluation bit seed
    eval_bits (10000)    evaluation symbol count
    train_seed (null)    training bit seed; null means seed + 1000
    train_bits (120000)  training symbol count
    n_taps (null)        designed filter length; null means (L+1)*osf
    min_samples (800000) minimum training samples after guards
    signal_bits (12)     I/Q word length
    internal_bits (16)   multiply/accumulate operand word length
    sample_phase (0)     symbol-rate decimation offset, in Tc units
    phase_window (null)  [start, stop) for phase traces; null means [1600, 1800)
    out_dir ("runs")     parent directory for run outputs
    experiment (null)    informational; the CLI verb decides what runs
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .laurent import (
    apply_transmit_filter,
    build_laurent_bank,
    linear_modulate,
    pseudo_symbols,
    upsample_zero_stuff,
)
from .metrics import default_guard, mean_abs_phase_error, mse_db, phase_trace
from .quantize import (
    FixedPointConfig,
    dequantize,
    fir_fixed,
    fir_fixed_bank,
    quantize_signal,
    quantize_tap_bank,
    quantize_taps,
    write_iq_int16,
    write_iq_text,
)
from .signal_core import BasebandSignal, ModulationParams, cpm_modulate, generate_bits
from .wiener import MIN_ESTIMATION_SAMPLES, design_mmse_filter

__all__ = [
    "ExperimentConfig",
    "RunManifest",
    "load_config",
    "run_table1",
    "run_table2",
    "export_taps",
    "run_phase",
    "run_sweep",
    "parse_tap_file",
    "main",
]

_CONFIG_KEYS = {
    "h", "L", "T", "osf", "pulse",
    "seed", "eval_bits", "train_seed", "train_bits",
    "n_taps", "min_samples", "signal_bits", "internal_bits",
    "sample_phase", "phase_window", "out_dir", "experiment",
}

_DB_FMT = "{:+.4f}"


@dataclass(frozen=True)
class ExperimentConfig:
    h: float = 0.7
    L: int = 2
    T: float = 1.0
    osf: int = 8
    pulse: str = "rc"
    seed: int = 42
    eval_bits: int = 10000
    train_seed: int | None = None
    train_bits: int = 120000
    n_taps: int | None = None
    min_samples: int = MIN_ESTIMATION_SAMPLES
    signal_bits: int = 12
    internal_bits: int = 16
    sample_phase: int = 0
    phase_window: tuple | None = None
    out_dir: str = "runs"
    experiment: str | None = None

    def __post_init__(self):
        for name in ("eval_bits", "train_bits", "min_samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.n_taps is not None and self.n_taps < 1:
            raise ValueError("n_taps must be positive")
        self.params()  # modulation invariants
        self.fixed_config()  # word-length invariants

    def params(self) -> ModulationParams:
        return ModulationParams(h=self.h, L=self.L, T=self.T, osf=self.osf, pulse=self.pulse)

    def fixed_config(self) -> FixedPointConfig:
        return FixedPointConfig(signal_bits=self.signal_bits, internal_bits=self.internal_bits)

    def resolved_train_seed(self) -> int:
        return self.seed + 1000 if self.train_seed is None else self.train_seed

    def resolved_n_taps(self) -> int:
        return (self.L + 1) * self.osf if self.n_taps is None else self.n_taps

    def resolved_phase_window(self) -> tuple:
        if self.phase_window is None:
            return (1600, 1800)
        start, stop = self.phase_window
        return (int(start), int(stop))

    def to_dict(self) -> dict:
        """Fully resolved, canonical form; this is what gets hashed and echoed."""
        return {
            "h": self.h, "L": self.L, "T": self.T, "osf": self.osf, "pulse": self.pulse,
            "seed": self.seed, "eval_bits": self.eval_bits,
            "train_seed": self.resolved_train_seed(), "train_bits": self.train_bits,
            "n_taps": self.resolved_n_taps(), "min_samples": self.min_samples,
            "signal_bits": self.signal_bits, "internal_bits": self.internal_bits,
            "sample_phase": self.sample_phase,
            "phase_window": list(self.resolved_phase_window()),
            "out_dir": self.out_dir,
        }

    def content_hash(self) -> str:
        hashed = self.to_dict()
        del hashed["out_dir"]  # same experiment, different destination: same name
        blob = json.dumps(hashed, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:8]


@dataclass
class RunManifest:
    config: dict
    version: str
    experiment: str
    results: dict
    timings: dict
    warnings: list

    def write(self, path: Path):
        payload = {
            "config": self.config,
            "version": self.version,
            "experiment": self.experiment,
            "results": self.results,
            "timings": self.timings,
            "warnings": self.warnings,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_config(path=None, overrides: dict | None = None) -> ExperimentConfig:
    """Build a config from an optional JSON file plus flag overrides."""
    data: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text())
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ValueError(
                f"{path}: unknown config keys {sorted(unknown)}; allowed: {sorted(_CONFIG_KEYS)}"
            )
        data.update(raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    if isinstance(data.get("phase_window"), list):
        data["phase_window"] = tuple(data["phase_window"])
    return ExperimentConfig(**data)


def _make_run_dir(cfg: ExperimentConfig, experiment: str) -> Path:
    run_dir = Path(cfg.out_dir) / f"{experiment}_seed{cfg.seed}_{cfg.content_hash()}"
    run_dir.mkdir(parents=True, exist_ok=True)
    return run_dir


def _evaluation_setup(cfg: ExperimentConfig):
    params = cfg.params()
    bits = generate_bits(cfg.eval_bits, cfg.seed)
    s_ref = cpm_modulate(bits, params)
    bank = build_laurent_bank(params)
    streams = pseudo_symbols(bits, bank.beta, params)
    return params, s_ref, bank, streams


def _design(cfg: ExperimentConfig, params: ModulationParams):
    return design_mmse_filter(
        params,
        cfg.resolved_train_seed(),
        n_taps=cfg.resolved_n_taps(),
        training_bits=cfg.train_bits,
        min_samples=cfg.min_samples,
    )


def _phase_sweep(s_ref, candidate, guard, osf):
    return [
        mse_db(s_ref, candidate, guard, osf, sample_phase=p).mse_symbol_rate_db
        for p in range(osf)
    ]


def _write_csv(path: Path, header: list, rows: list):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def _row_record(name, n_taps, report):
    return {
        "signal": name,
        "n_taps": n_taps,
        "mse_oversampled_db": round(report.mse_oversampled_db, 4),
        "mse_symbol_rate_db": round(report.mse_symbol_rate_db, 4),
        "sample_phase": report.sample_phase,
        "floored_oversampled": report.floored_oversampled,
        "floored_symbol_rate": report.floored_symbol_rate,
    }


def _emit_mse_table(run_dir: Path, stem: str, records: list, phase_rows: dict, osf: int,
                    title: str, extra_lines: list):
    csv_header = [
        "signal", "n_taps", "mse_oversampled_db", "mse_symbol_rate_db",
        "sample_phase", "floored_oversampled", "floored_symbol_rate",
    ]
    csv_rows = [
        [
            r["signal"], str(r["n_taps"]),
            _DB_FMT.format(r["mse_oversampled_db"]),
            _DB_FMT.format(r["mse_symbol_rate_db"]),
            str(r["sample_phase"]),
            str(int(r["floored_oversampled"])),
            str(int(r["floored_symbol_rate"])),
        ]
        for r in records
    ]
    _write_csv(run_dir / f"{stem}.csv", csv_header, csv_rows)

    width = max(len(r["signal"]) for r in records)
    lines = [title, ""]
    lines.append(f"{'signal':<{width}}  taps  oversampled dB  symbol-rate dB")
    for r in records:
        over = _DB_FMT.format(r["mse_oversampled_db"]) + (" *" if r["floored_oversampled"] else "  ")
        sym = _DB_FMT.format(r["mse_symbol_rate_db"]) + (" *" if r["floored_symbol_rate"] else "  ")
        lines.append(f"{r['signal']:<{width}}  {r['n_taps']:>4}  {over:>14}  {sym:>14}")
    lines.append("")
    lines.append("* at the reporting floor (-300 dB)")
    lines.extend(extra_lines)
    (run_dir / f"{stem}.txt").write_text("\n".join(lines) + "\n")

    sweep_header = ["signal"] + [f"phase{p}" for p in range(osf)]
    sweep_rows = [
        [name] + [_DB_FMT.format(v) for v in values] for name, values in phase_rows.items()
    ]
    _write_csv(run_dir / "sym_rate_by_phase.csv", sweep_header, sweep_rows)


def run_table1(cfg: ExperimentConfig) -> tuple[RunManifest, Path]:
    """Floating-point MSE table: full bank, component 0 only, designed filter."""
    t0 = time.perf_counter()
    params, s_ref, bank, streams = _evaluation_setup(cfg)
    guard = default_guard(params)
    y_full = linear_modulate(streams, bank, None)
    y_c0 = linear_modulate(streams, bank, [0])
    t1 = time.perf_counter()
    wf = _design(cfg, params)
    t2 = time.perf_counter()
    y_cw = apply_transmit_filter(streams[0], wf.taps, params, label="c_w")

    named = [
        ("full_bank", len(bank.filters[0]), y_full),
        ("c0_only", len(bank.filters[0]), y_c0),
        ("c_w", wf.n_taps, y_cw),
    ]
    records, phase_rows = [], {}
    reports = {}
    for name, n_taps, y in named:
        rep = mse_db(s_ref, y, guard, params.osf, sample_phase=cfg.sample_phase)
        reports[name] = rep
        records.append(_row_record(name, n_taps, rep))
        phase_rows[name] = _phase_sweep(s_ref, y, guard, params.osf)
    gain = reports["c0_only"].mse_oversampled_db - reports["c_w"].mse_oversampled_db

    run_dir = _make_run_dir(cfg, "table1")
    train_label = "held-out" if cfg.resolved_train_seed() != cfg.seed else "same-seed"
    extra = [
        "",
        f"gain of c_w over c0 (oversampled): {gain:+.4f} dB with N = {wf.n_taps} taps",
        f"training: {train_label}, seed {cfg.resolved_train_seed()}, "
        f"{cfg.train_bits} bits, achieved {wf.achieved_mse_db:+.4f} dB",
        f"guard: {guard} samples each end; symbol-rate column at phase {cfg.sample_phase}",
    ]
    _emit_mse_table(run_dir, "table1", records, phase_rows, params.osf,
                    "MSE vs reference CPM signal (floating point)", extra)

    warnings = []
    if wf.low_sample_warning:
        warnings.append(
            f"correlation estimate averaged over {wf.sample_count} samples, "
            f"below the {MIN_ESTIMATION_SAMPLES} default"
        )
    manifest = RunManifest(
        config=cfg.to_dict(),
        version=__version__,
        experiment="table1",
        results={
            "rows": records,
            "symbol_rate_by_phase": {k: [round(v, 4) for v in vals] for k, vals in phase_rows.items()},
            "gain_db": round(gain, 4),
            "n_taps": wf.n_taps,
            "train": {
                "label": train_label,
                "seed": cfg.resolved_train_seed(),
                "bits": cfg.train_bits,
                "achieved_mse_db": round(wf.achieved_mse_db, 4),
            },
        },
        timings={
            "modulate_s": round(t1 - t0, 3),
            "design_s": round(t2 - t1, 3),
            "total_s": round(time.perf_counter() - t0, 3),
        },
        warnings=warnings,
    )
    manifest.write(run_dir / "manifest.json")
    return manifest, run_dir


def _fixed_datapath(cfg: ExperimentConfig, params, bank, streams, wf):
    """Quantize drive streams and taps, run the three integer datapaths."""
    fc = cfg.fixed_config()
    stuffed = [
        BasebandSignal(
            samples=upsample_zero_stuff(st.values, params.osf),
            sample_period=params.Tc,
            label=f"b{st.k}_stuffed",
        )
        for st in streams
    ]
    quantized = [quantize_signal(sig, fc) for sig in stuffed]
    bank_taps = quantize_tap_bank(list(bank.filters), fc)
    out_full = fir_fixed_bank(quantized, bank_taps, fc)
    out_c0 = fir_fixed(quantized[0], quantize_taps(bank.filters[0], fc), fc)
    out_cw = fir_fixed(quantized[0], quantize_taps(wf.taps, fc), fc)
    return fc, {"full_bank": out_full, "c0_only": out_c0, "c_w": out_cw}


def run_table2(cfg: ExperimentConfig) -> tuple[RunManifest, Path]:
    """Fixed-point MSE table plus exported I/Q code streams."""
    t0 = time.perf_counter()
    params, s_ref, bank, streams = _evaluation_setup(cfg)
    guard = default_guard(params)
    wf = _design(cfg, params)
    t1 = time.perf_counter()
    fc, outputs = _fixed_datapath(cfg, params, bank, streams, wf)

    run_dir = _make_run_dir(cfg, "table2")
    records, phase_rows, counts = [], {}, {}
    reports = {}
    for name, qsig in outputs.items():
        y = dequantize(qsig)
        rep = mse_db(s_ref, y, guard, params.osf, sample_phase=cfg.sample_phase)
        reports[name] = rep
        n_taps = wf.n_taps if name == "c_w" else len(bank.filters[0])
        records.append(_row_record(name, n_taps, rep))
        phase_rows[name] = _phase_sweep(s_ref, y, guard, params.osf)
        counts[name] = {
            "output_saturations": qsig.sat_count,
            "accumulator_overflows": qsig.acc_overflow_count,
        }
        write_iq_text(run_dir / f"iq_{name}.txt", qsig)
        write_iq_int16(run_dir / f"iq_{name}.bin", qsig)
    gain = reports["c0_only"].mse_oversampled_db - reports["c_w"].mse_oversampled_db

    extra = [
        "",
        f"gain of c_w over c0 (oversampled): {gain:+.4f} dB with N = {wf.n_taps} taps",
        f"word lengths: {fc.signal_bits}-bit signals, {fc.internal_bits}-bit operands",
    ]
    _emit_mse_table(run_dir, "table2", records, phase_rows, params.osf,
                    "MSE vs reference CPM signal (bit-true fixed point)", extra)

    warnings = []
    if wf.low_sample_warning:
        warnings.append("correlation estimate below the default sample minimum")
    for name, c in counts.items():
        if c["accumulator_overflows"]:
            warnings.append(f"{name}: {c['accumulator_overflows']} accumulator saturations")
    manifest = RunManifest(
        config=cfg.to_dict(),
        version=__version__,
        experiment="table2",
        results={
            "rows": records,
            "symbol_rate_by_phase": {k: [round(v, 4) for v in vals] for k, vals in phase_rows.items()},
            "gain_db": round(gain, 4),
            "n_taps": wf.n_taps,
            "fixed_point_counts": counts,
        },
        timings={
            "design_s": round(t1 - t0, 3),
            "total_s": round(time.perf_counter() - t0, 3),
        },
        warnings=warnings,
    )
    manifest.write(run_dir / "manifest.json")
    return manifest, run_dir


def _tap_header(name: str, cfg: ExperimentConfig, seed_line: str) -> list:
    return [
        f"# cpmlin tap export: {name}",
        f"# h={cfg.h!r} L={cfg.L} T={cfg.T!r} osf={cfg.osf} pulse={cfg.pulse}",
        f"# {seed_line}",
        "# columns: real imag",
    ]


def parse_tap_file(path) -> tuple[dict, np.ndarray]:
    """Read a float tap export back: header metadata plus complex taps."""
    meta: dict = {}
    taps = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            for token in body.split():
                if "=" in token:
                    key, _, value = token.partition("=")
                    try:
                        meta[key] = json.loads(value.replace("'", '"'))
                    except json.JSONDecodeError:
                        meta[key] = value
            continue
        if line.strip():
            re_s, im_s = line.split()
            taps.append(complex(float(re_s), float(im_s)))
    return meta, np.asarray(taps, dtype=complex)


def export_taps(cfg: ExperimentConfig) -> tuple[RunManifest, Path]:
    """Write every component filter and the designed filter, float and integer."""
    t0 = time.perf_counter()
    params = cfg.params()
    bank = build_laurent_bank(params)
    wf = _design(cfg, params)
    fc = cfg.fixed_config()
    run_dir = _make_run_dir(cfg, "taps")

    named = [(f"c_{k}", np.asarray(bank.filters[k], dtype=complex)) for k in range(bank.Q)]
    named.append(("c_w", wf.taps))
    files = {}
    for name, taps in named:
        seed_line = (
            f"seed={cfg.seed} train_seed={cfg.resolved_train_seed()}"
            if name == "c_w"
            else f"seed={cfg.seed}"
        )
        lines = _tap_header(name, cfg, seed_line)
        for v in taps:
            lines.append(f"{v.real:+.17e} {v.imag:+.17e}")
        fname = f"taps_{name}.txt"
        (run_dir / fname).write_text("\n".join(lines) + "\n")
        files[name] = {"float": fname, "count": len(taps)}

    # integer taps: the bank shares one scale (its datapath sums branches),
    # the designed filter is scaled on its own
    bank_q = quantize_tap_bank(list(bank.filters), fc)
    cw_q = quantize_taps(wf.taps, fc)
    for name, qt in [(f"c_{k}", bank_q[k]) for k in range(bank.Q)] + [("c_w", cw_q)]:
        lines = [
            f"# cpmlin quantized taps: {name}",
            f"# internal_bits={fc.internal_bits} scale={qt.scale:.17e}",
            "# columns: i_code q_code",
        ]
        for ic, qc in zip(qt.i_codes, qt.q_codes):
            lines.append(f"{ic} {qc}")
        fname = f"taps_q_{name}.txt"
        (run_dir / fname).write_text("\n".join(lines) + "\n")
        files[name]["quantized"] = fname

    manifest = RunManifest(
        config=cfg.to_dict(),
        version=__version__,
        experiment="taps",
        results={"files": files, "n_taps": wf.n_taps},
        timings={"total_s": round(time.perf_counter() - t0, 3)},
        warnings=[],
    )
    manifest.write(run_dir / "manifest.json")
    return manifest, run_dir


def run_phase(cfg: ExperimentConfig) -> tuple[RunManifest, Path]:
    """Phase-trajectory columns for the float and fixed datapaths."""
    t0 = time.perf_counter()
    params, s_ref, bank, streams = _evaluation_setup(cfg)
    window = cfg.resolved_phase_window()
    wf = _design(cfg, params)
    y_c0 = linear_modulate(streams, bank, [0])
    y_cw = apply_transmit_filter(streams[0], wf.taps, params, label="c_w")
    _, outputs = _fixed_datapath(cfg, params, bank, streams, wf)
    y_c0_fx = dequantize(outputs["c0_only"])
    y_cw_fx = dequantize(outputs["c_w"])

    run_dir = _make_run_dir(cfg, "phase")
    results = {}
    for stem, c0_sig, cw_sig, tag in [
        ("phase_float", y_c0, y_cw, ""),
        ("phase_fixed", y_c0_fx, y_cw_fx, "_fixed"),
    ]:
        trace = phase_trace([s_ref, c0_sig, cw_sig], window)
        header = ["time_s", "phase_ref_rad", f"phase_c0{tag}_rad", f"phase_cw{tag}_rad"]
        rows = [
            [f"{t:.9f}"] + [f"{ph[i]:+.9f}" for ph in trace.phases]
            for i, t in enumerate(trace.times)
        ]
        _write_csv(run_dir / f"{stem}.csv", header, rows)
        results[stem] = {
            "mean_abs_phase_error_c0_rad": round(mean_abs_phase_error(s_ref, c0_sig, window), 6),
            "mean_abs_phase_error_cw_rad": round(mean_abs_phase_error(s_ref, cw_sig, window), 6),
        }

    manifest = RunManifest(
        config=cfg.to_dict(),
        version=__version__,
        experiment="phase",
        results={"window": list(window), **results},
        timings={"total_s": round(time.perf_counter() - t0, 3)},
        warnings=[],
    )
    manifest.write(run_dir / "manifest.json")
    return manifest, run_dir


def _parse_taps_spec(spec: str | None) -> list:
    """Tap counts for sweep: 'a:b:c' range (inclusive), 'a,b,c' list, or single int."""
    if spec is None:
        spec = "9:33:4"
    if ":" in spec:
        parts = [int(p) for p in spec.split(":")]
        if len(parts) == 2:
            start, stop, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ValueError(f"bad tap range {spec!r}; use start:stop[:step]")
        if step < 1 or stop < start:
            raise ValueError(f"bad tap range {spec!r}")
        return list(range(start, stop + 1, step))
    values = [int(p) for p in spec.split(",") if p.strip()]
    if not values:
        raise ValueError(f"no tap counts in {spec!r}")
    return values


def run_sweep(cfg: ExperimentConfig, taps_spec: str | None = None) -> tuple[RunManifest, Path]:
    """Design and evaluate the MMSE filter across a range of tap counts."""
    t0 = time.perf_counter()
    tap_counts = _parse_taps_spec(taps_spec)
    params, s_ref, bank, streams = _evaluation_setup(cfg)
    guard = default_guard(params)
    rep_c0 = mse_db(s_ref, linear_modulate(streams, bank, [0]), guard, params.osf)

    rows, records = [], []
    for n in tap_counts:
        wf = design_mmse_filter(
            params,
            cfg.resolved_train_seed(),
            n_taps=n,
            training_bits=cfg.train_bits,
            min_samples=cfg.min_samples,
        )
        y = apply_transmit_filter(streams[0], wf.taps, params, label=f"c_w[{n}]")
        rep = mse_db(s_ref, y, guard, params.osf, sample_phase=cfg.sample_phase)
        gain = rep_c0.mse_oversampled_db - rep.mse_oversampled_db
        rows.append([
            str(n),
            _DB_FMT.format(wf.achieved_mse_db),
            _DB_FMT.format(rep.mse_oversampled_db),
            _DB_FMT.format(gain),
        ])
        records.append({
            "n_taps": n,
            "train_mse_db": round(wf.achieved_mse_db, 4),
            "eval_mse_db": round(rep.mse_oversampled_db, 4),
            "gain_vs_c0_db": round(gain, 4),
        })

    run_dir = _make_run_dir(cfg, "sweep")
    _write_csv(
        run_dir / "sweep.csv",
        ["n_taps", "train_mse_db", "eval_mse_db", "gain_vs_c0_db"],
        rows,
    )
    manifest = RunManifest(
        config=cfg.to_dict(),
        version=__version__,
        experiment="sweep",
        results={
            "tap_counts": tap_counts,
            "rows": records,
            "c0_eval_mse_db": round(rep_c0.mse_oversampled_db, 4),
        },
        timings={"total_s": round(time.perf_counter() - t0, 3)},
        warnings=[],
    )
    manifest.write(run_dir / "manifest.json")
    return manifest, run_dir


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpmlin",
        description="CPM linearization experiments: exact PAM decomposition, "
        "MMSE transmit filter, fixed-point datapath.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verbs = {
        "table1": "floating-point MSE table (full bank, c0 only, designed filter)",
        "table2": "fixed-point MSE table and I/Q code dumps",
        "phase": "phase-trajectory traces for both datapaths",
        "taps": "export component and designed filters, float and integer",
        "sweep": "evaluate the designed filter across tap counts",
    }
    for verb, help_text in verbs.items():
        sp = sub.add_parser(verb, help=help_text)
        sp.add_argument("--config", metavar="PATH", help="JSON config file")
        sp.add_argument("--seed", type=int, help="evaluation bit seed")
        sp.add_argument("--bits", type=int, help="evaluation symbol count")
        sp.add_argument(
            "--taps",
            help="designed filter length; for sweep, a list '9,17,25' or range '9:33:4'",
        )
        sp.add_argument("--signal-bits", type=int, dest="signal_bits")
        sp.add_argument("--internal-bits", type=int, dest="internal_bits")
        sp.add_argument("--out", help="parent directory for run outputs")
        sp.add_argument("--sample-phase", type=int, dest="sample_phase")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        overrides = {
            "seed": args.seed,
            "eval_bits": args.bits,
            "signal_bits": args.signal_bits,
            "internal_bits": args.internal_bits,
            "out_dir": args.out,
            "sample_phase": args.sample_phase,
            "experiment": args.command,
        }
        if args.command != "sweep" and args.taps is not None:
            try:
                overrides["n_taps"] = int(args.taps)
            except ValueError:
                raise ValueError(
                    f"--taps must be a single integer for {args.command}, got {args.taps!r}"
                ) from None
        cfg = load_config(args.config, overrides)

        if args.command == "table1":
            manifest, run_dir = run_table1(cfg)
        elif args.command == "table2":
            manifest, run_dir = run_table2(cfg)
        elif args.command == "phase":
            manifest, run_dir = run_phase(cfg)
        elif args.command == "taps":
            manifest, run_dir = export_taps(cfg)
        else:
            manifest, run_dir = run_sweep(cfg, args.taps)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(f"wrote {run_dir}")
    if "rows" in manifest.results and args.command in ("table1", "table2"):
        for row in manifest.results["rows"]:
            print(
                f"  {row['signal']:<10} {row['mse_oversampled_db']:+9.4f} dB oversampled, "
                f"{row['mse_symbol_rate_db']:+9.4f} dB at symbol rate (phase {row['sample_phase']})"
            )
        print(f"  gain of c_w over c0: {manifest.results['gain_db']:+.4f} dB "
              f"(N = {manifest.results['n_taps']})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
