"""Constructive chain behind the row-geometric-mean characterization.

Starting from a matrix whose first two rows share their product, the
chain flattens all comparisons among the remaining alternatives (B),
averages B over the cyclic relabellings of those alternatives (C),
rebalances with a matrix built from the first two row products (D), and
lands on E = C (+) D, whose rows all have geometric mean one and whose
shape depends on the single number alpha = sqrt(a_12).  The module also
verifies the algebraic identities E satisfies and offers the row-product
rebalancing step used to reach the equal-product case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TIE_TOL,
    PCM,
    DimensionTooSmall,
    IndexOutOfRange,
    PairRelation,
    PcmError,
    Permutation,
    RationalExponent,
    UnequalRowProducts,
    pair_relation,
)
from .transforms import aggregate, opposite, permute, power
from .weighting import MethodId, method_rank

ROW_PRODUCT_TOL = 1e-9  # on log row products; looser than the identity tol
CHAIN_TOL = 1e-12


@dataclass(frozen=True)
class ProofChain:
    """The A -> B -> C -> D -> E construction for one input matrix.

    Invariants (checked on construction, each within 1e-12 where numeric):
    B keeps rows/columns 1 and 2 of A and flattens the rest to 1; C keeps
    a_12 and spreads each of the first two rows' tail products evenly;
    E = C (+) D has e_12 = alpha = sqrt(a_12), e_1k = (1/alpha)^(1/(n-2)),
    e_2k = alpha^(1/(n-2)), ones elsewhere, and unit row geometric means.
    """

    a: PCM
    b: PCM
    c: PCM
    d: PCM
    e: PCM
    alpha: float


def _log_row_sums(a: PCM) -> np.ndarray:
    return np.log(a.entries).sum(axis=1)


def equalize_pair(a: PCM, i: int, j: int) -> PCM:
    """Rescale the single comparison (i, j) so rows i and j end up with
    equal products: a_ij is multiplied by sqrt(rowprod_j / rowprod_i)."""
    if i == j or not (0 <= i < a.n and 0 <= j < a.n):
        raise IndexOutOfRange(f"pair ({i}, {j}) invalid for n={a.n}")
    log_rows = _log_row_sums(a)
    correction = math.exp((log_rows[j] - log_rows[i]) / 2.0)
    return a.with_entry(i, j, float(a.entries[i, j] * correction))


def _cycle_tail(n: int, m: int) -> Permutation:
    """Fix alternatives 0 and 1, rotate the tail 2..n-1 forward by m."""
    image = np.arange(n)
    image[2:] = 2 + (np.arange(n - 2) + m) % (n - 2)
    return Permutation(image)


def build_proof_chain(a: PCM) -> ProofChain:
    """Run the B, C, D, E construction for ``a``.

    Requires n >= 3 and equal products of rows 1 and 2 (use
    ``equalize_pair`` first); every ProofChain invariant is verified
    before returning.
    """
    n = a.n
    if n < 3:
        raise DimensionTooSmall("the construction needs at least 3 alternatives")
    log_rows = _log_row_sums(a)
    if abs(log_rows[0] - log_rows[1]) > ROW_PRODUCT_TOL:
        raise UnequalRowProducts(
            f"log row products differ by {abs(log_rows[0] - log_rows[1]):.3g}"
        )

    flattened = a.entries.copy()
    flattened[2:, 2:] = 1.0
    b = PCM(flattened)

    c = aggregate([permute(b, _cycle_tail(n, m)) for m in range(n - 2)])

    d_grid = np.ones((n, n))
    d_grid[0, 2:] = math.exp(-log_rows[0] / (n - 2))
    d_grid[1, 2:] = math.exp(-log_rows[1] / (n - 2))
    d = PCM.from_upper(d_grid)

    e = aggregate([c, d])
    alpha = math.sqrt(a.entries[0, 1])
    chain = ProofChain(a=a, b=b, c=c, d=d, e=e, alpha=alpha)
    _validate_chain(chain)
    return chain


def _close(x, y, tol: float = CHAIN_TOL) -> bool:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return bool(np.all(np.abs(x - y) <= tol * np.maximum(np.abs(x), np.abs(y))))


def _validate_chain(chain: ProofChain) -> None:
    a, b, c, d, e = chain.a.entries, chain.b.entries, chain.c.entries, chain.d.entries, chain.e.entries
    n = chain.a.n
    alpha = chain.alpha
    checks = [
        ("b keeps rows 1 and 2", np.array_equal(b[:2, :], a[:2, :]) and np.array_equal(b[:, :2], a[:, :2])),
        ("b inner block is flat", np.all(b[2:, 2:] == 1.0)),
        ("c keeps a_12", _close(c[0, 1], a[0, 1])),
        ("c spreads row-1 tail", _close(c[0, 2:], math.exp(np.log(a[0, 2:]).mean()))),
        ("c spreads row-2 tail", _close(c[1, 2:], math.exp(np.log(a[1, 2:]).mean()))),
        ("c inner block is flat", np.all(c[2:, 2:] == 1.0)),
        ("e_12 is alpha", _close(e[0, 1], alpha)),
        ("e row 1 tail", _close(e[0, 2:], (1.0 / alpha) ** (1.0 / (n - 2)))),
        ("e row 2 tail", _close(e[1, 2:], alpha ** (1.0 / (n - 2)))),
        ("e inner block is flat", np.all(e[2:, 2:] == 1.0)),
        ("e rows have unit geometric mean", bool(np.all(np.abs(np.exp(np.log(e).mean(axis=1)) - 1.0) <= CHAIN_TOL))),
    ]
    broken = [name for name, ok in checks if not ok]
    if broken:
        raise PcmError(f"construction invariants violated: {', '.join(broken)}")


def verify_proof_identities(chain: ProofChain, tol: float = CHAIN_TOL) -> dict:
    """Check the identities E satisfies, each entrywise within ``tol``.

    ``inv_swap``: swapping labels 1 and 2 equals the opposite of E.
    ``swap_power_aggregate`` (n >= 4 only, else None): the swapped matrix
    raised to 1/(n-2) equals the aggregate of the label swaps (2, m) for
    m = 3..n.  ``unit_row_geomeans``: every row of E has geometric mean 1.
    ``alpha_sqrt``: e_12 = sqrt(a_12).
    """
    e = chain.e
    n = e.n
    swap12 = permute(e, Permutation.transposition(n, 0, 1))
    out = {
        "inv_swap": _close(swap12.entries, opposite(e).entries, tol),
    }
    if n >= 4:
        lhs = power(swap12, RationalExponent(1, n - 2))
        rhs = aggregate(
            [permute(e, Permutation.transposition(n, 1, m)) for m in range(2, n)]
        )
        out["swap_power_aggregate"] = _close(lhs.entries, rhs.entries, tol)
    else:
        out["swap_power_aggregate"] = None
    row_geomeans = np.exp(np.log(e.entries).mean(axis=1))
    out["unit_row_geomeans"] = bool(np.all(np.abs(row_geomeans - 1.0) <= tol))
    out["alpha_sqrt"] = _close(e.entries[0, 1], math.sqrt(chain.a.entries[0, 1]), tol)
    return out


def row_product_smoke(a: PCM, tie_tol: float = DEFAULT_TIE_TOL) -> dict:
    """End-to-end sanity: the geometric-mean ranking of the pair (1, 2)
    tracks the row products.

    Clauses: (1) equal row products force a tie (reported as applicable
    only when the products agree), (2) after ``equalize_pair`` the tie
    appears, (3) a strict preference points the same way as the log
    row-product difference.
    """
    log_rows = _log_row_sums(a)
    delta = float(log_rows[0] - log_rows[1])
    rank = method_rank(MethodId.RGM, a, tie_tol)
    rel = pair_relation(rank, 0, 1)

    applicable = abs(delta) <= ROW_PRODUCT_TOL
    tie_when_equal = rel is PairRelation.TIED if applicable else True

    equalized = equalize_pair(a, 0, 1)
    rel_eq = pair_relation(method_rank(MethodId.RGM, equalized, tie_tol), 0, 1)

    if rel is PairRelation.STRICTLY_ABOVE:
        sign_matches = delta > 0.0
    elif rel is PairRelation.STRICTLY_BELOW:
        sign_matches = delta < 0.0
    else:
        sign_matches = True

    return {
        "tie_when_equal": {"applicable": applicable, "passed": bool(tie_when_equal)},
        "tie_after_equalize": rel_eq is PairRelation.TIED,
        "strict_matches_row_products": bool(sign_matches),
    }


def chain_json_dict(chain: ProofChain, identities: dict) -> dict:
    """JSON dump: {"alpha": ..., "B": ..., "C": ..., "D": ..., "E": ...,
    "identities": {...}}."""
    return {
        "alpha": chain.alpha,
        "B": chain.b.entries.tolist(),
        "C": chain.c.entries.tolist(),
        "D": chain.d.entries.tolist(),
        "E": chain.e.entries.tolist(),
        "identities": identities,
    }
