"""Random bit/symbol streams through an additive white Gaussian noise channel.

The noise variance convention is total complex variance: a channel with
variance sigma2 adds independent N(0, sigma2/2) noise to each of the real and
imaginary parts, so E|received - sent|^2 = sigma2.
"""

from dataclasses import dataclass

import numpy as np

from .constellation import Constellation
from .rng import Rng


@dataclass(frozen=True)
class ChannelConfig:
    """Noise variance (total complex, linear) and stream seed."""

    sigma2: float
    seed: int = 0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")


@dataclass(frozen=True, eq=False)
class SymbolBatch:
    sent_bits: np.ndarray      # (count, M) uint8
    sent_symbols: np.ndarray   # (count,) complex128
    received: np.ndarray       # (count,) complex128


def snr_db_to_sigma2(snr_db: float) -> float:
    """Noise variance for a target SNR in dB; symbol energy is 1 by construction."""
    return 10.0 ** (-snr_db / 10.0)


def generate_batch(constellation: Constellation, count: int, config: ChannelConfig) -> SymbolBatch:
    """Uniform random symbols plus complex Gaussian noise, reproducible from the seed.

    The stream draws all count*M label bits first, then count noise samples,
    so the batch is a pure function of (seed, count, constellation, sigma2).
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    m = constellation.bits_per_symbol
    rng = Rng(config.seed)
    bits = rng.bits(count * m).reshape(count, m)
    weights = (1 << np.arange(m - 1, -1, -1)).astype(np.int64)
    sent = constellation.points[bits @ weights]
    z = rng.normal(2 * count)
    noise = np.sqrt(config.sigma2 / 2.0) * (z[0::2] + 1j * z[1::2])
    return SymbolBatch(bits, sent, sent + noise)
