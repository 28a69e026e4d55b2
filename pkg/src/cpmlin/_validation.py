"""Small input-validation helpers shared across the package."""

import numpy as np


def check_bits(x) -> np.ndarray:
    """Validate an antipodal symbol sequence and return it as float64.

    Every element must be exactly -1 or +1; anything else (0, 0.99,
    bools, NaN) is rejected rather than coerced.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"symbol stream must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("symbol stream is empty")
    if not np.all(np.abs(arr) == 1.0):
        bad = arr[np.abs(arr) != 1.0]
        raise ValueError(
            f"symbols must be exactly -1 or +1; first offending value is {bad.flat[0]!r}"
        )
    return arr


def check_positive_int(value, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return int(value)


def check_window(window, length: int) -> tuple:
    """Validate a (start, stop) sample range against a signal length."""
    try:
        start, stop = window
    except (TypeError, ValueError):
        raise ValueError(f"window must be a (start, stop) pair, got {window!r}")
    start, stop = int(start), int(stop)
    if not (0 <= start < stop <= length):
        raise ValueError(
            f"window [{start}, {stop}) out of range for signal of {length} samples"
        )
    return start, stop
