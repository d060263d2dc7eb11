"""Counter-based random number derivation for reproducible parallel simulation.

Every random decision in the benchmark simulator is a pure function of
(seed, counters), so results cannot depend on evaluation order, chunking,
or worker count. The derivation rule is bit-exact and documented here:

    split(seed, i)  = mix64((seed + (i + 1) * GOLDEN) mod 2^64)
    unit(value)     = (value >> 11) * 2^-53          # float64 in [0, 1)

where ``mix64`` is the splitmix64 output (avalanche) function and GOLDEN is
the splitmix64 increment 0x9E3779B97F4A7C15. ``split(seed, i)`` is exactly
the (i+1)-th output of a splitmix64 generator seeded with ``seed``, which
makes sub-streams randomly accessible by index.

Nested derivations address hierarchical work units, e.g. the uniform
variate for slot k of shot j of circuit i is

    unit(split(split(split(seed, 2*i + 1), j), k))

The numpy variants compute the identical integers on uint64 arrays.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 avalanche of a 64-bit integer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MUL1) & MASK64
    x ^= x >> 27
    x = (x * _MUL2) & MASK64
    return x ^ (x >> 31)


def split(seed: int, index: int) -> int:
    """Derive the ``index``-th independent 64-bit sub-seed of ``seed``."""
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


def unit(value: int) -> float:
    """Map a 64-bit integer to a float64 uniform in [0, 1)."""
    return (value >> 11) * 2.0**-53


def uniform_at(seed: int, index: int) -> float:
    """Uniform variate for counter ``index`` of stream ``seed``."""
    return unit(split(seed, index))


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MUL1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MUL2)
    x ^= x >> np.uint64(31)
    return x


def split_np(seed: int | np.ndarray, index: np.ndarray) -> np.ndarray:
    """Vectorized ``split``; broadcasts seed against an index array."""
    seed_arr = np.asarray(seed, dtype=np.uint64)
    idx = np.asarray(index, dtype=np.uint64)
    return _mix64_np(seed_arr + (idx + np.uint64(1)) * np.uint64(GOLDEN))


def uniform_np(seed: int | np.ndarray, index: np.ndarray) -> np.ndarray:
    """Vectorized ``uniform_at``; bit-identical to the scalar path."""
    v = split_np(seed, index)
    return (v >> np.uint64(11)).astype(np.float64) * 2.0**-53


def bounded(value: int, n: int) -> int:
    """Map a 64-bit value to an integer in [0, n) (multiply-shift)."""
    return (value * n) >> 64
