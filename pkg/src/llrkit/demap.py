"""Reference soft demappers producing per-bit log-likelihood ratios.

Positive LLR favours bit value 0. The exact demapper evaluates, for each bit,
the log of the ratio of summed Gaussian likelihoods over the two label-split
point subsets; the max-log approximation keeps only the dominant term, which
reduces to a difference of minimum squared distances scaled by 1/sigma2.
"""

import numpy as np

from . import llrnet as _llrnet
from .constellation import Constellation, bit_subset

#: Clip magnitude for all emitted LLRs (natural-log units). Beyond exp(+-60)
#: the bit posterior is saturated at double precision.
LLR_MAX = 60.0

LOG_MAP = "log-map"
MAX_LOG_MAP = "max-log-map"
LLRNET = "llrnet"
ALGORITHMS = (LOG_MAP, MAX_LOG_MAP, LLRNET)


def log_sum_exp(xs) -> float:
    """log(sum(exp(xs))) computed without overflow or underflow."""
    xs = np.asarray(xs, dtype=float)
    if xs.size == 0:
        raise ValueError("log_sum_exp of an empty sequence")
    m = xs.max()
    return float(m + np.log(np.exp(xs - m).sum()))


def _subset_indices(constellation):
    m = constellation.bits_per_symbol
    idx0 = np.stack([bit_subset(constellation, i, 0).point_indices for i in range(m)])
    idx1 = np.stack([bit_subset(constellation, i, 1).point_indices for i in range(m)])
    return idx0, idx1


def _lse_rows(a):
    m = a.max(axis=1)
    return m + np.log(np.exp(a - m[:, None]).sum(axis=1))


def _logmap_block(received, constellation, inv_sigma2, idx0, idx1):
    diff = received[:, None] - constellation.points[None, :]
    metric = -(diff.real ** 2 + diff.imag ** 2) * inv_sigma2
    out = np.empty((received.shape[0], constellation.bits_per_symbol))
    for i in range(constellation.bits_per_symbol):
        out[:, i] = _lse_rows(metric[:, idx0[i]]) - _lse_rows(metric[:, idx1[i]])
    return np.clip(out, -LLR_MAX, LLR_MAX)


def _maxlog_block(received, constellation, inv_sigma2, idx0, idx1):
    diff = received[:, None] - constellation.points[None, :]
    dist2 = diff.real ** 2 + diff.imag ** 2
    out = np.empty((received.shape[0], constellation.bits_per_symbol))
    for i in range(constellation.bits_per_symbol):
        out[:, i] = (dist2[:, idx1[i]].min(axis=1) - dist2[:, idx0[i]].min(axis=1)) * inv_sigma2
    return np.clip(out, -LLR_MAX, LLR_MAX)


def log_map(received: complex, constellation: Constellation, sigma2: float) -> np.ndarray:
    """Exact bit LLRs for one received symbol, clipped to +-LLR_MAX.

    Stabilised with log-sum-exp; agrees with direct summation of the
    likelihood exponentials wherever that naive form is representable.
    """
    if not sigma2 > 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    idx0, idx1 = _subset_indices(constellation)
    block = _logmap_block(np.asarray([received], dtype=complex), constellation, 1.0 / sigma2, idx0, idx1)
    return block[0]


def max_log_map(received: complex, constellation: Constellation, sigma2: float) -> np.ndarray:
    """Max-log approximate bit LLRs for one received symbol, clipped to +-LLR_MAX."""
    if not sigma2 > 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    idx0, idx1 = _subset_indices(constellation)
    block = _maxlog_block(np.asarray([received], dtype=complex), constellation, 1.0 / sigma2, idx0, idx1)
    return block[0]


def demap_batch(received, constellation: Constellation, sigma2: float, algorithm: str,
                params=None, chunk_size: int = 4096) -> np.ndarray:
    """Element-wise demapping of a symbol batch; returns an (count, M) LLR array.

    The result is independent of chunk_size: every row is computed by the
    same per-symbol arithmetic regardless of how the batch is partitioned.
    """
    received = np.asarray(received, dtype=complex).ravel()
    if received.size == 0:
        raise ValueError("empty batch")
    if algorithm == LLRNET:
        if params is None:
            raise ValueError("llrnet demapping needs trained parameters")
        return np.clip(_llrnet.forward_batch(params, received), -LLR_MAX, LLR_MAX)
    if algorithm not in (LOG_MAP, MAX_LOG_MAP):
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if not sigma2 > 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    inv_sigma2 = 1.0 / sigma2  # shared across the whole batch
    idx0, idx1 = _subset_indices(constellation)
    block_fn = _logmap_block if algorithm == LOG_MAP else _maxlog_block
    out = np.empty((received.size, constellation.bits_per_symbol))
    for start in range(0, received.size, chunk_size):
        stop = min(start + chunk_size, received.size)
        out[start:stop] = block_fn(received[start:stop], constellation, inv_sigma2, idx0, idx1)
    return out
