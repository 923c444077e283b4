"""Domain types shared by the whole package: comparison matrices, weight
vectors, rankings, permutations, rational exponents, and the matrix CSV
format.

Alternatives are 0-indexed everywhere in the library; the command line
renumbers them 1-based for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

SUM_TOL = 1e-12  # absolute tolerance on sum(w) == 1
DEFAULT_TIE_TOL = 1e-9
DEFAULT_RECIPROCITY_TOL = 1e-6


# ---------------------------------------------------------------------------
# errors


class PcmError(Exception):
    """Base class for every error raised by this package."""


class NonSquare(PcmError, ValueError):
    """Input grid is not n-by-n."""


class NonPositive(PcmError, ValueError):
    """An entry is not a positive finite real (or failed to parse)."""


class ReciprocityViolation(PcmError, ValueError):
    """a_ij * a_ji strays from 1 beyond the allowed tolerance."""


class TooSmall(PcmError, ValueError):
    """Fewer than two alternatives."""


class IndexOutOfRange(PcmError, IndexError):
    """Alternative index outside 0..n-1, or a degenerate pair."""


class DimensionMismatch(PcmError, ValueError):
    """Operands do not agree on the number of alternatives."""


class EmptyList(PcmError, ValueError):
    """An aggregation of zero matrices was requested."""


class DimensionTooSmall(PcmError, ValueError):
    """The operation needs more alternatives than the matrix has."""


class NoConvergence(PcmError, RuntimeError):
    """Eigenvector iteration exhausted its budget before reaching tolerance."""


class NoWeightForm(PcmError, ValueError):
    """The ranking method does not define a weight vector."""


class OverlappingIndices(PcmError, ValueError):
    """The modified cell must be disjoint from the observed pair."""


class NotAnIncrease(PcmError, ValueError):
    """The replacement value does not exceed the current entry."""


class UnknownCase(PcmError, KeyError):
    """No registry case under that identifier."""


class UnequalRowProducts(PcmError, ValueError):
    """Rows expected to share a product do not."""


# ---------------------------------------------------------------------------
# pairwise comparison matrix


@dataclass(frozen=True)
class PCM:
    """Positive reciprocal comparison matrix over n >= 2 alternatives.

    ``entries[i][j]`` answers "how many times is alternative i preferred
    to j".  The diagonal is exactly 1 and every off-diagonal pair holds a
    float and its exact float reciprocal.  Value-producing constructors
    derive the lower triangle from the upper; entry-moving transforms
    (transpose, relabelling) keep the pairs bit for bit, which is why the
    reciprocal may sit in either orientation.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NonSquare(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        if n < 2:
            raise TooSmall("need at least two alternatives")
        if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
            raise NonPositive("entries must be finite and strictly positive")
        if np.any(np.diagonal(a) != 1.0):
            raise ReciprocityViolation("diagonal entries must equal 1 exactly")
        iu, ju = np.triu_indices(n, k=1)
        up, lo = a[iu, ju], a[ju, iu]
        if not np.all((lo == 1.0 / up) | (up == 1.0 / lo)):
            raise ReciprocityViolation(
                "every off-diagonal pair must be an exact float reciprocal pair"
            )
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_upper(cls, grid) -> "PCM":
        """Canonical PCM from the strict upper triangle of ``grid``.

        The lower triangle is overwritten with exact reciprocals and the
        diagonal is forced to 1, so whatever ``grid`` carried there is
        ignored.
        """
        g = np.asarray(grid, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise NonSquare(f"expected a square matrix, got shape {g.shape}")
        n = g.shape[0]
        if n < 2:
            raise TooSmall("need at least two alternatives")
        iu, ju = np.triu_indices(n, k=1)
        up = g[iu, ju]
        if not np.all(np.isfinite(up)) or np.any(up <= 0.0):
            raise NonPositive("entries must be finite and strictly positive")
        a = np.ones((n, n))
        a[iu, ju] = up
        a[ju, iu] = 1.0 / up
        return cls(a)

    @classmethod
    def ones(cls, n: int) -> "PCM":
        """The all-ones matrix: total indifference among n alternatives."""
        if n < 2:
            raise TooSmall("need at least two alternatives")
        return cls(np.ones((n, n)))

    def with_entry(self, i: int, j: int, value: float) -> "PCM":
        """Copy with (i, j) set to ``value`` and (j, i) to its reciprocal."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise IndexOutOfRange(f"cell ({i}, {j}) invalid for n={n}")
        if not np.isfinite(value) or value <= 0.0:
            raise NonPositive("replacement entry must be finite and positive")
        a = self.entries.copy()
        a[i, j] = value
        a[j, i] = 1.0 / value
        return PCM(a)


def pcm_parse(text: str, reciprocity_tol: float = DEFAULT_RECIPROCITY_TOL) -> PCM:
    """Parse the matrix CSV format into a canonical PCM.

    Each of the n lines holds n comma-separated fields; a field is a
    decimal literal or a rational "p/q" with integer p, q > 0.  The raw
    grid must satisfy |a_ij * a_ji - 1| <= reciprocity_tol for all i < j,
    after which the lower triangle is replaced with exact reciprocals and
    the diagonal forced to 1.
    """
    if reciprocity_tol <= 0.0:
        raise ValueError("reciprocity_tol must be positive")
    rows = [line for line in (raw.strip() for raw in text.splitlines()) if line]
    n = len(rows)
    if n < 2:
        raise TooSmall(f"matrix needs at least 2 rows, got {n}")
    grid = []
    for line in rows:
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != n:
            raise NonSquare(f"{n} rows but a row with {len(fields)} fields")
        grid.append([_parse_entry(f) for f in fields])
    a = np.array(grid, dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(a[i, j] * a[j, i] - 1.0) > reciprocity_tol:
                raise ReciprocityViolation(
                    f"a[{i + 1}][{j + 1}] * a[{j + 1}][{i + 1}] = "
                    f"{a[i, j] * a[j, i]:.9g} is off 1 by more than {reciprocity_tol:g}"
                )
    return PCM.from_upper(a)


def _parse_entry(field: str) -> float:
    if "/" in field:
        num, _, den = field.partition("/")
        try:
            p, q = int(num.strip()), int(den.strip())
        except ValueError:
            raise NonPositive(f"bad rational literal {field!r}") from None
        if p <= 0 or q <= 0:
            raise NonPositive(f"rational literal {field!r} must have p, q > 0")
        return p / q  # int division is correctly rounded
    try:
        value = float(field)
    except ValueError:
        raise NonPositive(f"bad entry {field!r}") from None
    if not np.isfinite(value) or value <= 0.0:
        raise NonPositive(f"entry {field!r} is not a positive real")
    return value


def pcm_to_csv(a: PCM) -> str:
    """Matrix CSV with 17-significant-digit decimals (round-trip exact)."""
    return "\n".join(",".join(f"{v:.17g}" for v in row) for row in a.entries) + "\n"


def is_consistent(a: PCM, tol: float) -> bool:
    """Multiplicative transitivity: |a_ik - a_ij * a_jk| <= tol * a_ik for
    every triple (i, j, k)."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    e = a.entries
    chained = np.einsum("ij,jk->ijk", e, e)  # chained[i, j, k] = a_ij * a_jk
    target = e[:, None, :]
    return bool(np.all(np.abs(target - chained) <= tol * target))


# ---------------------------------------------------------------------------
# weight vectors and rankings


@dataclass(frozen=True)
class WeightVector:
    """Positive priorities summing to one."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 1 or len(w) < 1:
            raise NonSquare("weights must form a non-empty vector")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise NonPositive("weights must be finite and strictly positive")
        if abs(w.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    @classmethod
    def from_scores(cls, scores) -> "WeightVector":
        """Normalize positive scores to sum one."""
        s = np.asarray(scores, dtype=float)
        if not np.all(np.isfinite(s)) or np.any(s <= 0.0):
            raise NonPositive("scores must be finite and strictly positive")
        return cls(s / s.sum())


@dataclass(frozen=True)
class Ranking:
    """Weak order as dense rank labels: 0 = best, ties share a label,
    labels are consecutive integers."""

    rank: np.ndarray

    def __post_init__(self):
        r = np.array(self.rank, dtype=int)
        if r.ndim != 1 or len(r) < 1:
            raise NonSquare("ranks must form a non-empty vector")
        labels = set(int(x) for x in r)
        if labels != set(range(max(labels) + 1)):
            raise ValueError(f"rank labels {sorted(labels)} are not dense from 0")
        r.flags.writeable = False
        object.__setattr__(self, "rank", r)

    @property
    def n(self) -> int:
        return len(self.rank)

    def groups(self) -> list[list[int]]:
        """Alternative indices grouped by label, best group first."""
        out: list[list[int]] = [[] for _ in range(int(self.rank.max()) + 1)]
        for i, label in enumerate(self.rank):
            out[int(label)].append(i)
        return out


class PairRelation(Enum):
    STRICTLY_ABOVE = "strictly_above"
    TIED = "tied"
    STRICTLY_BELOW = "strictly_below"

    def reverse(self) -> "PairRelation":
        if self is PairRelation.STRICTLY_ABOVE:
            return PairRelation.STRICTLY_BELOW
        if self is PairRelation.STRICTLY_BELOW:
            return PairRelation.STRICTLY_ABOVE
        return PairRelation.TIED


def ranking_from_weights(w: WeightVector, tie_tol: float = DEFAULT_TIE_TOL) -> Ranking:
    """Dense ranks from weights, larger weight first.

    i and j share a label when |w_i - w_j| <= tie_tol * max(w_i, w_j); the
    near-equality relation is closed transitively (union-find) before
    labelling so the result stays a weak order even across chains of
    near-ties.
    """
    if tie_tol < 0.0:
        raise ValueError("tie_tol must be non-negative")
    v = w.w
    n = len(v)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if abs(v[i] - v[j]) <= tie_tol * max(v[i], v[j]):
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    ordered = sorted(groups.values(), key=lambda g: -max(v[i] for i in g))
    labels = np.empty(n, dtype=int)
    for label, members in enumerate(ordered):
        for i in members:
            labels[i] = label
    return Ranking(labels)


def pair_relation(r: Ranking, i: int, j: int) -> PairRelation:
    """How alternative i stands against j in ranking ``r``."""
    if i == j or not (0 <= i < r.n and 0 <= j < r.n):
        raise IndexOutOfRange(f"pair ({i}, {j}) invalid for n={r.n}")
    if r.rank[i] < r.rank[j]:
        return PairRelation.STRICTLY_ABOVE
    if r.rank[i] > r.rank[j]:
        return PairRelation.STRICTLY_BELOW
    return PairRelation.TIED


def ranking_json_dict(r: Ranking) -> dict:
    """JSON fragment: {"rank": [...], "groups": [[...], ...]} (0-based)."""
    return {"rank": [int(x) for x in r.rank], "groups": r.groups()}


# ---------------------------------------------------------------------------
# permutations and rational exponents


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}; ``map[i]`` is the image of i."""

    map: np.ndarray

    def __post_init__(self):
        m = np.array(self.map, dtype=int)
        if m.ndim != 1 or len(m) < 1:
            raise NonSquare("permutation must be a non-empty vector")
        if sorted(int(x) for x in m) != list(range(len(m))):
            raise ValueError(f"{m.tolist()} is not a permutation of 0..{len(m) - 1}")
        m.flags.writeable = False
        object.__setattr__(self, "map", m)

    @property
    def n(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        m = np.arange(n)
        m[i], m[j] = m[j], m[i]
        return cls(m)

    def inverse(self) -> "Permutation":
        return Permutation(np.argsort(self.map))


@dataclass(frozen=True)
class RationalExponent:
    """Positive rational p/q, reduced to lowest terms on construction."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"exponent {self.p}/{self.q} must have p, q >= 1")
        g = gcd(self.p, self.q)
        object.__setattr__(self, "p", self.p // g)
        object.__setattr__(self, "q", self.q // g)

    @classmethod
    def parse(cls, text: str) -> "RationalExponent":
        """Accepts "p/q" or a bare positive integer."""
        num, _, den = text.partition("/")
        try:
            p = int(num.strip())
            q = int(den.strip()) if den else 1
        except ValueError:
            raise ValueError(f"bad exponent {text!r}") from None
        return cls(p, q)

    @property
    def value(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"
