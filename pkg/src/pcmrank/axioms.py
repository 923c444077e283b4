"""Executable audits of the six ranking axioms, a seeded randomized
falsifier with greedy witness shrinking, and an empirical check of the
implications between the axioms.

Every check returns an AxiomVerdict; a failed verdict carries a Witness
holding the full falsifying instance, and feeding a Witness to ``replay``
reproduces the failure deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TIE_TOL,
    PCM,
    DimensionMismatch,
    DimensionTooSmall,
    IndexOutOfRange,
    NonPositive,
    NotAnIncrease,
    OverlappingIndices,
    PairRelation,
    PcmError,
    Permutation,
    RationalExponent,
    pair_relation,
)
from .transforms import aggregate, opposite, permute, power
from .weighting import EmOptions, MethodId, method_rank


class AxiomId(Enum):
    ANO = "ANO"  # anonymity: labels do not matter
    AI = "AI"  # aggregation invariance: unanimity survives geometric pooling
    INV = "INV"  # inversion: reversing all judgments reverses the ranking
    RSI = "RSI"  # rational scale invariance under entrywise powers
    IIC = "IIC"  # independence of irrelevant comparisons
    RES = "RES"  # responsiveness: a better a_ij strictly promotes i over j


@dataclass(frozen=True)
class Witness:
    """A concrete falsifying instance for (method, axiom).

    ``matrices`` and ``auxiliary`` contain everything needed to re-run the
    check; ``auxiliary`` uses 0-based indices and always records the
    tie tolerance, while ``narrative`` spells the broken biconditional out
    with 1-based alternative numbers.
    """

    axiom: AxiomId
    method: MethodId
    matrices: tuple[PCM, ...]
    auxiliary: dict
    narrative: str


@dataclass(frozen=True)
class AxiomVerdict:
    holds: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("witness must be present exactly when the axiom fails")


@dataclass(frozen=True)
class SearchConfig:
    """Budget and distribution for the randomized counterexample search.

    Entries are drawn as exp(uniform over ``entry_log_range``); the default
    span covers ratio judgments up to 9.  ``k_range`` bounds how many
    matrices an aggregation-invariance trial pools.
    """

    seed: int
    trials: int = 10_000
    n_range: tuple[int, int] = (2, 6)
    entry_log_range: tuple[float, float] = (-math.log(9.0), math.log(9.0))
    k_range: tuple[int, int] = (2, 4)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        lo, hi = self.n_range
        if not (2 <= lo <= hi <= 64):
            raise ValueError(f"n_range {self.n_range} must sit inside [2, 64]")
        if self.entry_log_range[0] > self.entry_log_range[1]:
            raise ValueError("entry_log_range must be a non-empty interval")
        klo, khi = self.k_range
        if not (2 <= klo <= khi):
            raise ValueError(f"k_range {self.k_range} must start at 2 or more")


_REL_TEXT = {
    PairRelation.STRICTLY_ABOVE: "strictly above",
    PairRelation.TIED: "tied with",
    PairRelation.STRICTLY_BELOW: "strictly below",
}


def _fail(
    axiom: AxiomId,
    method: MethodId,
    matrices: Sequence[PCM],
    auxiliary: dict,
    narrative: str,
) -> AxiomVerdict:
    witness = Witness(axiom, method, tuple(matrices), auxiliary, narrative)
    return AxiomVerdict(holds=False, witness=witness)


def check_ano(
    method: MethodId,
    a: PCM,
    sigma: Permutation,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Anonymity: i vs j under A must equal sigma(i) vs sigma(j) under the
    relabelled matrix, for every pair."""
    if sigma.n != a.n:
        raise DimensionMismatch(f"permutation on {sigma.n} labels, matrix has {a.n}")
    base = method_rank(method, a, tie_tol, em)
    image = method_rank(method, permute(a, sigma), tie_tol, em)
    for i in range(a.n):
        for j in range(i + 1, a.n):
            rel = pair_relation(base, i, j)
            rel_img = pair_relation(image, int(sigma.map[i]), int(sigma.map[j]))
            if rel is not rel_img:
                aux = {
                    "permutation": [int(x) for x in sigma.map],
                    "pair": [i, j],
                    "tie_tol": tie_tol,
                }
                narrative = (
                    f"{method.value} breaks anonymity: alternative {i + 1} is "
                    f"{_REL_TEXT[rel]} {j + 1}, but after relabelling by "
                    f"{[int(x) + 1 for x in sigma.map]} alternative "
                    f"{int(sigma.map[i]) + 1} is {_REL_TEXT[rel_img]} "
                    f"{int(sigma.map[j]) + 1}"
                )
                return _fail(AxiomId.ANO, method, [a], aux, narrative)
    return AxiomVerdict(holds=True)


def check_ai(
    method: MethodId,
    matrices: Sequence[PCM],
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Aggregation invariance: a pair ranked i >= j in every matrix must
    stay so in the geometric-mean aggregate, strictly if strict anywhere."""
    if len(matrices) < 2:
        raise ValueError("aggregation invariance needs at least two matrices")
    n = matrices[0].n
    for m in matrices[1:]:
        if m.n != n:
            raise DimensionMismatch(f"mixed sizes {n} and {m.n}")
    ranks = [method_rank(method, m, tie_tol, em) for m in matrices]
    agg_rank = method_rank(method, aggregate(list(matrices)), tie_tol, em)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rels = [pair_relation(r, i, j) for r in ranks]
            if any(rel is PairRelation.STRICTLY_BELOW for rel in rels):
                continue  # not unanimous for i over j
            strict = any(rel is PairRelation.STRICTLY_ABOVE for rel in rels)
            agg_rel = pair_relation(agg_rank, i, j)
            weak_broken = agg_rel is PairRelation.STRICTLY_BELOW
            strict_broken = strict and agg_rel is not PairRelation.STRICTLY_ABOVE
            if weak_broken or strict_broken:
                aux = {"pair": [i, j], "tie_tol": tie_tol}
                clause = (
                    "is strictly below in the aggregate"
                    if weak_broken
                    else "fails to stay strictly above in the aggregate"
                )
                narrative = (
                    f"{method.value} breaks aggregation invariance: alternative "
                    f"{i + 1} is ranked at least as high as {j + 1} in all "
                    f"{len(matrices)} matrices"
                    + (" (strictly in at least one)" if strict else "")
                    + f", yet {clause}"
                )
                return _fail(AxiomId.AI, method, matrices, aux, narrative)
    return AxiomVerdict(holds=True)


def check_inv(
    method: MethodId,
    a: PCM,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Inversion: the ranking on the opposite (transposed) matrix must be
    the exact reverse, pair by pair."""
    base = method_rank(method, a, tie_tol, em)
    rev = method_rank(method, opposite(a), tie_tol, em)
    for i in range(a.n):
        for j in range(i + 1, a.n):
            rel = pair_relation(base, i, j)
            rel_op = pair_relation(rev, i, j)
            if rel_op is not rel.reverse():
                aux = {"pair": [i, j], "tie_tol": tie_tol}
                narrative = (
                    f"{method.value} breaks inversion: alternative {i + 1} is "
                    f"{_REL_TEXT[rel]} {j + 1}, but on the opposite matrix it is "
                    f"{_REL_TEXT[rel_op]} instead of {_REL_TEXT[rel.reverse()]}"
                )
                return _fail(AxiomId.INV, method, [a], aux, narrative)
    return AxiomVerdict(holds=True)


def check_rsi(
    method: MethodId,
    a: PCM,
    kappa: RationalExponent,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Rational scale invariance: raising every entry to kappa must leave
    every pairwise relation unchanged."""
    base = method_rank(method, a, tie_tol, em)
    powered = method_rank(method, power(a, kappa), tie_tol, em)
    for i in range(a.n):
        for j in range(i + 1, a.n):
            rel = pair_relation(base, i, j)
            rel_pow = pair_relation(powered, i, j)
            if rel is not rel_pow:
                aux = {"kappa": str(kappa), "pair": [i, j], "tie_tol": tie_tol}
                narrative = (
                    f"{method.value} breaks scale invariance at exponent {kappa}: "
                    f"alternative {i + 1} is {_REL_TEXT[rel]} {j + 1} before but "
                    f"{_REL_TEXT[rel_pow]} after"
                )
                return _fail(AxiomId.RSI, method, [a], aux, narrative)
    return AxiomVerdict(holds=True)


def check_iic(
    method: MethodId,
    a: PCM,
    cell: tuple[int, int],
    new_value: float,
    pair: tuple[int, int],
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Independence of irrelevant comparisons: rewriting the comparison of
    two other alternatives must not move the (i, j) relation."""
    k, l = cell
    i, j = pair
    if a.n < 4:
        raise DimensionTooSmall("needs at least 4 alternatives")
    for idx in (k, l, i, j):
        if not 0 <= idx < a.n:
            raise IndexOutOfRange(f"index {idx} invalid for n={a.n}")
    if k == l or i == j:
        raise IndexOutOfRange("cell and pair must each name two alternatives")
    if {k, l} & {i, j}:
        raise OverlappingIndices(f"cell {cell} overlaps pair {pair}")
    if not np.isfinite(new_value) or new_value <= 0.0:
        raise NonPositive("replacement value must be positive")
    if new_value == a.entries[k, l]:
        raise ValueError("replacement value must differ from the current entry")
    modified = a.with_entry(k, l, new_value)
    rel = pair_relation(method_rank(method, a, tie_tol, em), i, j)
    rel_mod = pair_relation(method_rank(method, modified, tie_tol, em), i, j)
    if rel is not rel_mod:
        aux = {
            "cell": [k, l],
            "value": float(new_value),
            "pair": [i, j],
            "tie_tol": tie_tol,
        }
        narrative = (
            f"{method.value} breaks independence of irrelevant comparisons: "
            f"rewriting the comparison of alternatives {k + 1} and {l + 1} to "
            f"{new_value:g} turns alternative {i + 1} from {_REL_TEXT[rel]} "
            f"{j + 1} into {_REL_TEXT[rel_mod]}"
        )
        return _fail(AxiomId.IIC, method, [a], aux, narrative)
    return AxiomVerdict(holds=True)


def check_res(
    method: MethodId,
    a: PCM,
    pair: tuple[int, int],
    increased_value: float,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Responsiveness: if i is ranked at least as high as j, improving
    a_ij must leave i strictly above j.  Vacuously holds when i starts
    strictly below j."""
    i, j = pair
    if i == j or not (0 <= i < a.n and 0 <= j < a.n):
        raise IndexOutOfRange(f"pair {pair} invalid for n={a.n}")
    if not increased_value > a.entries[i, j]:
        raise NotAnIncrease(
            f"{increased_value!r} does not exceed a[{i + 1}][{j + 1}] = "
            f"{a.entries[i, j]!r}"
        )
    rel = pair_relation(method_rank(method, a, tie_tol, em), i, j)
    if rel is PairRelation.STRICTLY_BELOW:
        return AxiomVerdict(holds=True)
    improved = a.with_entry(i, j, increased_value)
    rel_after = pair_relation(method_rank(method, improved, tie_tol, em), i, j)
    if rel_after is not PairRelation.STRICTLY_ABOVE:
        aux = {"pair": [i, j], "increase": float(increased_value), "tie_tol": tie_tol}
        narrative = (
            f"{method.value} breaks responsiveness: alternative {i + 1} is "
            f"{_REL_TEXT[rel]} {j + 1}, yet raising their comparison to "
            f"{increased_value:g} leaves it {_REL_TEXT[rel_after]} instead of "
            f"strictly above"
        )
        return _fail(AxiomId.RES, method, [a], aux, narrative)
    return AxiomVerdict(holds=True)


# ---------------------------------------------------------------------------
# replay and the randomized search


def _run_check(
    method: MethodId,
    axiom: AxiomId,
    matrices: Sequence[PCM],
    aux: dict,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    tie_tol = aux["tie_tol"]
    if axiom is AxiomId.ANO:
        return check_ano(method, matrices[0], Permutation(aux["permutation"]), tie_tol, em)
    if axiom is AxiomId.AI:
        return check_ai(method, matrices, tie_tol, em)
    if axiom is AxiomId.INV:
        return check_inv(method, matrices[0], tie_tol, em)
    if axiom is AxiomId.RSI:
        return check_rsi(
            method, matrices[0], RationalExponent.parse(aux["kappa"]), tie_tol, em
        )
    if axiom is AxiomId.IIC:
        return check_iic(
            method,
            matrices[0],
            tuple(aux["cell"]),
            aux["value"],
            tuple(aux["pair"]),
            tie_tol,
            em,
        )
    if axiom is AxiomId.RES:
        return check_res(
            method, matrices[0], tuple(aux["pair"]), aux["increase"], tie_tol, em
        )
    raise ValueError(f"unknown axiom {axiom!r}")


def replay(witness: Witness, em: EmOptions = EmOptions()) -> AxiomVerdict:
    """Re-run the check a witness came from; a genuine witness must come
    back with holds == False."""
    return replay_inputs(witness.method, witness.axiom, witness.matrices, witness.auxiliary, em)


def replay_inputs(
    method: MethodId,
    axiom: AxiomId,
    matrices: Sequence[PCM],
    aux: dict,
    em: EmOptions = EmOptions(),
) -> AxiomVerdict:
    """Run the check for ``axiom`` from its raw inputs (see Witness)."""
    return _run_check(method, axiom, matrices, aux, em)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # stream depends only on (seed, trial index), so trials are order-free
    return np.random.default_rng(np.random.SeedSequence((seed % 2**64, trial)))


def _draw_pcm(rng: np.random.Generator, n: int, log_range: tuple[float, float]) -> PCM:
    logs = rng.uniform(log_range[0], log_range[1], size=(n, n))
    return PCM.from_upper(np.exp(logs))


def _draw_kappa(rng: np.random.Generator) -> RationalExponent:
    while True:
        kappa = RationalExponent(int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        if kappa.p != kappa.q:
            return kappa


def _run_trial(
    method: MethodId,
    axiom: AxiomId,
    cfg: SearchConfig,
    rng: np.random.Generator,
    tie_tol: float,
    em: EmOptions,
) -> AxiomVerdict:
    n_lo, n_hi = cfg.n_range
    if axiom is AxiomId.IIC:
        n_lo = max(n_lo, 4)  # the axiom is vacuous below four alternatives
        n_hi = max(n_hi, n_lo)
    n = int(rng.integers(n_lo, n_hi + 1))
    a = _draw_pcm(rng, n, cfg.entry_log_range)
    if axiom is AxiomId.ANO:
        sigma = Permutation(rng.permutation(n))
        return check_ano(method, a, sigma, tie_tol, em)
    if axiom is AxiomId.AI:
        k = int(rng.integers(cfg.k_range[0], cfg.k_range[1] + 1))
        mats = [a] + [_draw_pcm(rng, n, cfg.entry_log_range) for _ in range(k - 1)]
        return check_ai(method, mats, tie_tol, em)
    if axiom is AxiomId.INV:
        return check_inv(method, a, tie_tol, em)
    if axiom is AxiomId.RSI:
        return check_rsi(method, a, _draw_kappa(rng), tie_tol, em)
    if axiom is AxiomId.IIC:
        picks = [int(x) for x in rng.permutation(n)[:4]]
        pair, cell = (picks[0], picks[1]), (picks[2], picks[3])
        value = float(np.exp(rng.uniform(*cfg.entry_log_range)))
        while value == a.entries[cell]:
            value = float(np.exp(rng.uniform(*cfg.entry_log_range)))
        return check_iic(method, a, cell, value, pair, tie_tol, em)
    if axiom is AxiomId.RES:
        picks = [int(x) for x in rng.permutation(n)[:2]]
        i, j = picks
        span = max(cfg.entry_log_range[1], math.log(3.0))
        factor = math.exp(rng.uniform(0.1, span))
        return check_res(method, a, (i, j), float(a.entries[i, j] * factor), tie_tol, em)
    raise ValueError(f"unknown axiom {axiom!r}")


def falsify(
    method: MethodId,
    axiom: AxiomId,
    cfg: SearchConfig,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> Optional[Witness]:
    """Search ``cfg.trials`` random instances for a violation of ``axiom``
    by ``method``; return the first witness found, greedily shrunk, or
    None when every trial passes.

    Each trial's random stream is derived from (seed, trial index) alone,
    so results are reproducible and independent of evaluation order.
    """
    for trial in range(cfg.trials):
        rng = _trial_rng(cfg.seed, trial)
        verdict = _run_trial(method, axiom, cfg, rng, tie_tol, em)
        if not verdict.holds:
            return _shrink(verdict.witness, em)
    return None


# --- greedy witness shrinking ----------------------------------------------

_MIN_N = {axiom: 2 for axiom in AxiomId}
_MIN_N[AxiomId.IIC] = 4


def _round_to_one_significant(x: float) -> float:
    exponent = math.floor(math.log10(abs(x)))
    return round(x, -exponent)


def _pinned(axiom: AxiomId, aux: dict) -> set[int]:
    pinned = set(aux.get("pair", ()))
    if axiom is AxiomId.IIC:
        pinned |= set(aux["cell"])
    if axiom is AxiomId.ANO:
        sigma = aux["permutation"]
        pinned |= {t for t, image in enumerate(sigma) if image != t}
    return pinned


def _delete_index(matrices: tuple[PCM, ...], aux: dict, idx: int):
    """Drop one alternative, remapping every recorded index; entries keep
    their bits because deletion only removes a row and column."""
    kept = [PCM(np.delete(np.delete(m.entries, idx, axis=0), idx, axis=1)) for m in matrices]

    def remap(t: int) -> int:
        return t - 1 if t > idx else t

    new_aux = dict(aux)
    for key in ("pair", "cell"):
        if key in new_aux:
            new_aux[key] = [remap(t) for t in new_aux[key]]
    if "permutation" in new_aux:
        sigma = new_aux["permutation"]
        new_aux["permutation"] = [remap(sigma[t]) for t in range(len(sigma)) if t != idx]
    return tuple(kept), new_aux


def _attempt(method, axiom, matrices, aux, em) -> Optional[AxiomVerdict]:
    try:
        verdict = _run_check(method, axiom, matrices, aux, em)
    except PcmError:
        return None
    except ValueError:
        return None
    return verdict


def _shrink(witness: Witness, em: EmOptions = EmOptions()) -> Witness:
    """Best-effort minimization: drop alternatives outside the pinned
    indices, then round entries (and the auxiliary value, if any) to one
    significant digit, keeping only steps that still falsify."""
    method, axiom = witness.method, witness.axiom
    matrices, aux = witness.matrices, dict(witness.auxiliary)
    current = witness

    changed = True
    while changed:
        changed = False
        n = matrices[0].n
        if n <= _MIN_N[axiom]:
            break
        pinned = _pinned(axiom, aux)
        for idx in range(n - 1, -1, -1):
            if idx in pinned:
                continue
            cand_mats, cand_aux = _delete_index(matrices, aux, idx)
            verdict = _attempt(method, axiom, cand_mats, cand_aux, em)
            if verdict is not None and not verdict.holds:
                matrices, aux = cand_mats, cand_aux
                # keep the replayed pair so pinning tracks the live violation
                aux["pair"] = verdict.witness.auxiliary.get("pair", aux.get("pair"))
                current = verdict.witness
                changed = True
                break

    for mat_index, m in enumerate(matrices):
        for i in range(m.n):
            for j in range(i + 1, m.n):
                original = matrices[mat_index].entries[i, j]
                rounded = _round_to_one_significant(original)
                if rounded == original or rounded <= 0.0:
                    continue
                cand = list(matrices)
                cand[mat_index] = cand[mat_index].with_entry(i, j, rounded)
                verdict = _attempt(method, axiom, tuple(cand), aux, em)
                if verdict is not None and not verdict.holds:
                    matrices = tuple(cand)
                    current = verdict.witness

    for key in ("value", "increase"):
        if key in aux:
            rounded = _round_to_one_significant(aux[key])
            if rounded != aux[key] and rounded > 0.0:
                cand_aux = dict(aux)
                cand_aux[key] = rounded
                verdict = _attempt(method, axiom, matrices, cand_aux, em)
                if verdict is not None and not verdict.holds:
                    aux = cand_aux
                    current = verdict.witness

    return current


# ---------------------------------------------------------------------------
# implications between axioms


def check_implications(
    method: MethodId,
    cfg: SearchConfig,
    tie_tol: float = DEFAULT_TIE_TOL,
    em: EmOptions = EmOptions(),
) -> dict:
    """Empirically audit "anonymity and aggregation invariance together
    force inversion / scale invariance / irrelevance independence".

    If the falsifier clears both premise axioms under ``cfg`` but breaks a
    conclusion axiom under the same budget, that implication is reported
    as contradicted, which signals an implementation bug rather than a
    property of the method.  A violated premise makes the implications
    vacuous.
    """
    found: dict[AxiomId, Optional[Witness]] = {}
    for axiom in (AxiomId.ANO, AxiomId.AI, AxiomId.INV, AxiomId.RSI, AxiomId.IIC):
        found[axiom] = falsify(method, axiom, cfg, tie_tol, em)
    premise_holds = found[AxiomId.ANO] is None and found[AxiomId.AI] is None
    implications = {}
    for axiom in (AxiomId.INV, AxiomId.RSI, AxiomId.IIC):
        contradicted = premise_holds and found[axiom] is not None
        implications[axiom.value] = {
            "status": "contradicted" if contradicted else "consistent",
            "vacuous": not premise_holds,
            "conclusion_witness": found[axiom],
        }
    return {
        "method": method.value,
        "premise": {
            "ano_witness": found[AxiomId.ANO],
            "ai_witness": found[AxiomId.AI],
            "holds": premise_holds,
        },
        "implications": implications,
    }


def witness_json_dict(witness: Witness) -> dict:
    """JSON fragment with stable field order:
    {"axiom": ..., "method": ..., "matrices": [...], "aux": {...},
    "narrative": ...}."""
    return {
        "axiom": witness.axiom.value,
        "method": witness.method.value,
        "matrices": [m.entries.tolist() for m in witness.matrices],
        "aux": dict(witness.auxiliary),
        "narrative": witness.narrative,
    }
