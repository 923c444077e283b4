"""Reciprocity-preserving matrix algebra: geometric-mean aggregation,
opposite (full reversal), rational entrywise powers, and relabelling."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import (
    PCM,
    DimensionMismatch,
    EmptyList,
    Permutation,
    RationalExponent,
)


def aggregate(matrices: Sequence[PCM]) -> PCM:
    """Entrywise geometric mean of the given matrices.

    Computed as exp of the arithmetic mean of logs, which keeps the result
    independent of operand order and safe from overflow.  A single matrix
    is returned unchanged (bit for bit).
    """
    if len(matrices) == 0:
        raise EmptyList("nothing to aggregate")
    n = matrices[0].n
    for m in matrices[1:]:
        if m.n != n:
            raise DimensionMismatch(f"mixed sizes {n} and {m.n}")
    if len(matrices) == 1:
        return matrices[0]
    mean_logs = np.mean([np.log(m.entries) for m in matrices], axis=0)
    return PCM.from_upper(np.exp(mean_logs))


def opposite(a: PCM) -> PCM:
    """Transpose: every preference reversed.  Entries move bit for bit, so
    opposite(opposite(a)) == a exactly."""
    return PCM(a.entries.T)


def power(a: PCM, kappa: RationalExponent) -> PCM:
    """Raise every entry to kappa = p/q.  Exponent 1 returns the input
    unchanged; otherwise the upper triangle is recomputed as
    exp((p/q) * ln a_ij) and mirrored."""
    if kappa.p == kappa.q:  # lowest terms, so this is exactly 1
        return a
    return PCM.from_upper(np.exp(kappa.value * np.log(a.entries)))


def permute(a: PCM, sigma: Permutation) -> PCM:
    """Relabel alternatives: the data of alternative i moves to label
    sigma(i), i.e. result[sigma(i)][sigma(j)] == a[i][j] bit for bit."""
    if sigma.n != a.n:
        raise DimensionMismatch(f"permutation on {sigma.n} labels, matrix has {a.n}")
    inv = np.argsort(sigma.map)
    return PCM(a.entries[np.ix_(inv, inv)])
