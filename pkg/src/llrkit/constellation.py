"""Gray-coded QAM and PSK constellations with per-bit point subsets.

Labeling convention
-------------------
Point ``points[n]`` carries the label given by the M-bit big-endian binary
expansion of ``n`` (label bit 0 is the most significant). For square QAM the
even-indexed label bits (0, 2, ...) select the real-axis amplitude and the
odd-indexed bits (1, 3, ...) the imaginary-axis amplitude, each axis using a
binary-reflected Gray code whose leading bit is the sign bit. This is the
interleaved-axis mapping used by modern cellular standards. PSK points sit at
angles 2*pi*k/2^M and the point at angular index k carries the Gray code of k.

All built-in constellations are normalized to unit average symbol energy.
"""

from dataclasses import dataclass, field

import numpy as np

QAM = "qam"
PSK = "psk"

#: CLI name -> (builder, bits per symbol)
TOKENS = {
    "qam16": (QAM, 4),
    "qam64": (QAM, 6),
    "qam256": (QAM, 8),
    "qam1024": (QAM, 10),
    "psk2": (PSK, 1),
    "psk4": (PSK, 2),
    "psk8": (PSK, 3),
}


@dataclass(frozen=True, eq=False)
class BitSubset:
    """Indices of the constellation points whose label bit ``bit_index`` equals ``bit_value``."""

    bit_index: int
    bit_value: int
    point_indices: np.ndarray


@dataclass(frozen=True, eq=False)
class Constellation:
    """Immutable ordered point set with bit labels and cached bit subsets."""

    points: np.ndarray        # (2**M,) complex128, unit average energy
    labels: np.ndarray        # (2**M, M) uint8, row n = binary expansion of n
    bits_per_symbol: int
    kind: str                 # QAM or PSK
    dimension: int = 1
    _subsets: tuple = field(init=False, repr=False)

    def __post_init__(self):
        subs = []
        for i in range(self.bits_per_symbol):
            bit = self.labels[:, i]
            subs.append((
                BitSubset(i, 0, np.flatnonzero(bit == 0)),
                BitSubset(i, 1, np.flatnonzero(bit == 1)),
            ))
        object.__setattr__(self, "_subsets", tuple(subs))

    @property
    def size(self) -> int:
        return self.points.shape[0]


def _all_labels(bits_per_symbol: int) -> np.ndarray:
    n = 2 ** bits_per_symbol
    idx = np.arange(n, dtype=np.uint32)[:, None]
    shifts = np.arange(bits_per_symbol - 1, -1, -1, dtype=np.uint32)[None, :]
    return ((idx >> shifts) & 1).astype(np.uint8)


def _pam_gray_level(bits) -> int:
    """Gray-labelled PAM amplitude for one axis, before normalization.

    bits[0] is the sign bit; each further bit halves the remaining fold, so
    adjacent amplitudes out of {+-1, +-3, ..., +-(2^k - 1)} differ in one bit.
    """
    level = 1 - 2 * int(bits[-1])
    for depth, b in enumerate(bits[-2::-1], start=1):
        level = (1 - 2 * int(b)) * (2 ** depth - level)
    return level


def build_qam(bits_per_symbol: int) -> Constellation:
    """Gray-coded square QAM with unit average energy.

    Args:
        bits_per_symbol: even integer in {4, 6, 8, 10} (16 to 1024 points).
    """
    if bits_per_symbol % 2 != 0 or not 4 <= bits_per_symbol <= 10:
        raise ValueError(
            f"QAM needs an even number of bits per symbol in [4, 10], got {bits_per_symbol}"
        )
    labels = _all_labels(bits_per_symbol)
    re = np.array([_pam_gray_level(lab[0::2]) for lab in labels], dtype=float)
    im = np.array([_pam_gray_level(lab[1::2]) for lab in labels], dtype=float)
    # mean energy of the unnormalized grid is (2/3)(2^M - 1)
    scale = np.sqrt(2.0 / 3.0 * (2 ** bits_per_symbol - 1))
    return Constellation((re + 1j * im) / scale, labels, bits_per_symbol, QAM)


def build_psk(bits_per_symbol: int) -> Constellation:
    """Gray-coded PSK on the unit circle.

    Args:
        bits_per_symbol: integer in {1, 2, 3, 4} (BPSK to 16-PSK).
    """
    if not 1 <= bits_per_symbol <= 4:
        raise ValueError(
            f"PSK needs between 1 and 4 bits per symbol, got {bits_per_symbol}"
        )
    n = 2 ** bits_per_symbol
    points = np.zeros(n, dtype=complex)
    for k in range(n):
        gray = k ^ (k >> 1)  # label integer of the point at angular index k
        quarter, rem = divmod(4 * k, n)
        if rem == 0:
            points[gray] = (1.0, 1.0j, -1.0, -1.0j)[quarter]
        else:
            points[gray] = np.exp(2j * np.pi * k / n)
    return Constellation(points, _all_labels(bits_per_symbol), bits_per_symbol, PSK)


def from_token(token: str) -> Constellation:
    """Constellation for a CLI name such as ``qam16`` or ``psk8``."""
    try:
        kind, m = TOKENS[token]
    except KeyError:
        raise ValueError(
            f"unknown constellation {token!r}; expected one of {', '.join(TOKENS)}"
        ) from None
    return build_qam(m) if kind == QAM else build_psk(m)


def modulate(bits, constellation: Constellation) -> complex:
    """Symbol whose label equals the given bit vector."""
    bits = np.asarray(bits)
    m = constellation.bits_per_symbol
    if bits.shape != (m,):
        raise ValueError(f"label must have exactly {m} bits, got shape {bits.shape}")
    index = 0
    for b in bits:
        index = (index << 1) | int(b)
    return complex(constellation.points[index])


def bit_subset(constellation: Constellation, bit_index: int, bit_value: int) -> BitSubset:
    """Cached subset of points whose label bit ``bit_index`` equals ``bit_value``."""
    if not 0 <= bit_index < constellation.bits_per_symbol:
        raise ValueError(
            f"bit index {bit_index} out of range for {constellation.bits_per_symbol} bits"
        )
    if bit_value not in (0, 1):
        raise ValueError(f"bit value must be 0 or 1, got {bit_value}")
    return constellation._subsets[bit_index][bit_value]
