"""Deterministic random streams shared by the channel and the initializers.

A counter-based SplitMix64 generator plus the Box-Muller transform. The n'th
draw is a pure function of (seed, n), so vectorised draws, one-at-a-time
draws, and reimplementations in other environments all produce bit-identical
streams.
"""

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = 0xFFFFFFFFFFFFFFFF


def _mix(z: np.ndarray) -> np.ndarray:
    # SplitMix64 finalizer; uint64 arithmetic wraps mod 2**64.
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, stream: int) -> int:
    """Decorrelated child seed for an auxiliary stream (splits, restarts)."""
    a = np.uint64(seed & _MASK64)
    b = _mix(np.uint64(stream & _MASK64) + _GAMMA)
    return int(_mix(a ^ b))


class Rng:
    """Counter-based SplitMix64 stream with uniform, bit and normal draws."""

    def __init__(self, seed: int):
        self._seed = np.uint64(seed & _MASK64)
        self._count = 0

    def uint64(self, n: int) -> np.ndarray:
        """Next n raw 64-bit words."""
        idx = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        return _mix(self._seed + idx * _GAMMA)

    def uniform(self, n: int) -> np.ndarray:
        """n floats uniform on [0, 1) with 53-bit resolution."""
        return (self.uint64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def bits(self, n: int) -> np.ndarray:
        """n equiprobable bits (top bit of each word)."""
        return (self.uint64(n) >> np.uint64(63)).astype(np.uint8)

    def normal(self, n: int) -> np.ndarray:
        """n standard normal draws, Box-Muller on consecutive uniform pairs."""
        pairs = (n + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))  # 1-u in (0,1], log finite
        theta = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(theta)
        z[1::2] = radius * np.sin(theta)
        return z[:n]
