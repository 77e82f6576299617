"""Counter-based uniforms for compiled loops.

``uniform(key, counter)`` is a stateless hash (SplitMix64 finalizer), so the
value drawn for a given ``(seed, stream, counter)`` never depends on
evaluation order. Streams are typically vertex ids.
"""
import numba as nb
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0


@nb.njit(cache=True, inline="always")
def mix64(z):
    z = np.uint64(z)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@nb.njit(cache=True)
def stream_key(seed, stream):
    """Key of stream ``stream`` under master ``seed``."""
    return mix64(mix64(np.uint64(seed) * _GOLDEN + np.uint64(0x632BE59BD9B4E019))
                 ^ (np.uint64(stream) * _M2 + _GOLDEN))


@nb.njit(cache=True, inline="always")
def uniform(key, counter):
    """Uniform double in the open interval (0, 1)."""
    z = mix64(key + (np.uint64(counter) + np.uint64(1)) * _GOLDEN)
    return (np.float64(z >> np.uint64(11)) + 0.5) * _INV53


@nb.njit(cache=True)
def uniforms(seed, stream, count):
    """Vector of ``count`` uniforms from one stream (used in tests)."""
    key = stream_key(seed, stream)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        out[i] = uniform(key, i)
    return out
