"""The optimal ranking tradeoff between precision and recall.

For any finite performance set, the rankings induced by the F-score
family sweep a shortest path (in Kendall distance) from the
precision-induced ranking to the recall-induced one.  The ranking changes
only at the finitely many ``beta^2`` values at which two performances
receive equal F-scores; the median of those crossing values is the
optimal tradeoff, the minimizer of the Frechet variance
``d^2(precision, F) + d^2(F, recall)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ranking import (
    PerformanceSet,
    discordance,
    rank_by_score,
    ranks_from_values,
)
from .scores import (
    F1,
    PRECISION,
    RECALL,
    SIVF,
    TIE_TOL,
    Performance,
    ScoreFunction,
    UndefinedScoreError,
    fbeta,
    score_values,
)


class DegeneratePairError(ValueError):
    """Two performances that every F-score puts on an equal footing."""


class ZeroDenominatorError(ZeroDivisionError):
    pass


def crossing_beta_squared(p1: Performance, p2: Performance) -> float | None:
    """The beta^2 at which the two performances get equal F-scores.

    Returns None when no such finite beta exists: either the ratio is
    negative (the pair is ordered the same way by precision and recall,
    so no F-score can reverse it) or only recall equalizes them.  Raises
    DegeneratePairError when the pair is tied under every F-score.
    """
    num = p1.ptp * p2.pfp - p2.ptp * p1.pfp
    den = p1.ptp * p2.pfn - p2.ptp * p1.pfn
    if den == 0:
        if num == 0:
            raise DegeneratePairError("pair is equivalent under every F-score")
        return None
    theta = -num / den
    if theta < 0 or math.isinf(theta):
        return None
    return theta + 0.0  # normalize -0.0


@dataclass(frozen=True)
class CrossingSummary:
    """All pairwise F-score crossing values of a set, with exclusion counters."""

    thetas: tuple[float, ...]  # sorted, >= 0
    degenerate_pairs: int      # pairs tied under every F-score (excluded)
    unanimous_pairs: int       # pairs with no finite equalizing beta

    @property
    def n_crossings(self) -> int:
        return len(self.thetas)


def pair_crossings(pset: PerformanceSet) -> CrossingSummary:
    parts = pset.parts
    n = len(pset)
    if n < 2:
        raise ValueError("need at least 2 items")
    tn, fp, fn, tp = parts.T
    iu, ju = np.triu_indices(n, 1)
    num = tp[iu] * fp[ju] - tp[ju] * fp[iu]
    den = tp[iu] * fn[ju] - tp[ju] * fn[iu]
    degenerate = (num == 0) & (den == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = np.where(den != 0, -num / den, np.inf)
    crossing = ~degenerate & np.isfinite(theta) & (theta >= 0)
    thetas = np.sort(theta[crossing]) + 0.0
    n_deg = int(degenerate.sum())
    return CrossingSummary(
        thetas=tuple(float(t) for t in thetas),
        degenerate_pairs=n_deg,
        unanimous_pairs=len(iu) - n_deg - int(crossing.sum()),
    )


def optimal_beta(pset: PerformanceSet) -> tuple[float | None, list[float]]:
    """Median crossing value (the optimal beta^2) and the sorted crossing list.

    Returns (None, []) when precision and recall already agree on every
    pair, in which case every beta is optimal.  Degenerate pairs are
    excluded from the median pool; their count is available through
    ``pair_crossings``.
    """
    summary = pair_crossings(pset)
    if not summary.thetas:
        return None, []
    return float(np.median(summary.thetas)), list(summary.thetas)


def optimal_interval(thetas) -> tuple[float, float] | None:
    """The beta^2 range on which the Frechet variance attains its minimum.

    For an odd number of crossings this degenerates to the median point;
    for an even number it is the open span between the two middle values
    (any beta^2 strictly inside induces the midpoint ranking).
    """
    ts = sorted(thetas)
    m = len(ts)
    if m == 0:
        return None
    if m % 2 == 1:
        mid = ts[m // 2]
        return (mid, mid)
    return (ts[m // 2 - 1], ts[m // 2])


def _fbeta_ranks(parts: np.ndarray, beta: float) -> np.ndarray:
    values = score_values(fbeta(beta), parts)
    if np.isnan(values).any():
        raise UndefinedScoreError(int(np.isnan(values).argmax()), f"fbeta({beta:g})")
    return ranks_from_values(values)


def _discordant_count(ra: np.ndarray, rb: np.ndarray) -> int:
    sa = np.sign(ra[:, None] - ra[None, :])
    sb = np.sign(rb[:, None] - rb[None, :])
    return int((np.triu(sa * sb, 1) < 0).sum())


def frechet_variance(pset: PerformanceSet, beta: float) -> float:
    """d^2(precision, F_beta) + d^2(F_beta, recall) on the set, in [0, 2]."""
    parts = pset.parts
    r_pr = _fbeta_ranks(parts, 0.0)
    r_re = _fbeta_ranks(parts, math.inf)
    total = pset.total_pairs
    r = _fbeta_ranks(parts, beta)
    d1 = _discordant_count(r_pr, r) / total
    d2 = _discordant_count(r, r_re) / total
    return d1 * d1 + d2 * d2


def frechet_curve(
    pset: PerformanceSet,
    betas=None,
    grid_points: int = 41,
    grid_span: tuple[float, float] = (1e-3, 1e3),
) -> list[tuple[float, float]]:
    """Sampled (beta, Frechet variance) curve.

    The variance is piecewise constant between ranking transitions, so
    when ``betas`` is not given the log-spaced grid is augmented with the
    transition betas themselves and the geometric midpoints of adjacent
    transitions: every plateau, including the optimal one, is probed.
    """
    parts = pset.parts
    r_pr = _fbeta_ranks(parts, 0.0)
    r_re = _fbeta_ranks(parts, math.inf)
    total = pset.total_pairs
    if betas is None:
        bs = set(np.geomspace(grid_span[0], grid_span[1], grid_points))
        bs.add(0.0)
        ts = [t for t in pair_crossings(pset).thetas if t > 0]
        roots = [math.sqrt(t) for t in ts]
        bs.update(roots)
        bs.update(math.sqrt(a * b) for a, b in zip(roots, roots[1:]))
        if roots:
            bs.add(2.0 * roots[-1])
        betas = sorted(bs)
    out = []
    for b in betas:
        r = _fbeta_ranks(parts, b)
        d1 = _discordant_count(r_pr, r) / total
        d2 = _discordant_count(r, r_re) / total
        out.append((float(b), d1 * d1 + d2 * d2))
    return out


def geodesic_check(pset: PerformanceSet, betas) -> list[int]:
    """Exact integer residuals of the shortest-path identity, one per beta.

    residual = discordant(Pr, Re) - discordant(Pr, F_beta) - discordant(F_beta, Re);
    zero for every beta on tie-free sets.
    """
    parts = pset.parts
    r_pr = _fbeta_ranks(parts, 0.0)
    r_re = _fbeta_ranks(parts, math.inf)
    d_pr_re = _discordant_count(r_pr, r_re)
    out = []
    for b in betas:
        r = _fbeta_ranks(parts, b)
        out.append(d_pr_re - _discordant_count(r_pr, r) - _discordant_count(r, r_re))
    return out


@dataclass(frozen=True)
class OptimalityBreakdown:
    """Exact pair fractions for one candidate score against the optimal tradeoff.

    p_agree: pairs on which precision and recall agree (no choice to make);
    p_not_optimal: pairs on which the candidate contradicts the optimal
    tradeoff; p_optimal: the rest.  The three sum to 1 exactly.  ``degree``
    is p_optimal / (p_optimal + p_not_optimal); when there is nothing to
    choose (p_agree == 1) it is 1 by convention and ``vacuous`` is set.
    """

    p_agree: Fraction
    p_optimal: Fraction
    p_not_optimal: Fraction
    degree: Fraction
    vacuous: bool = False


def optimality_decomposition(
    pset: PerformanceSet,
    candidate: ScoreFunction,
    beta_star_squared: float | None = None,
) -> OptimalityBreakdown:
    """How optimal the candidate's ranking is, as exact pair fractions.

    ``beta_star_squared`` may be passed to reuse a precomputed optimum;
    otherwise it is derived from the set.  A set on which precision and
    recall never disagree yields the vacuous breakdown (degree 1).
    """
    r_pr = rank_by_score(pset, PRECISION)
    r_re = rank_by_score(pset, RECALL)
    d_pr_re, total = discordance(r_pr, r_re)
    if beta_star_squared is None:
        beta_star_squared, _ = optimal_beta(pset)
    if d_pr_re == 0 or beta_star_squared is None:
        one = Fraction(1)
        return OptimalityBreakdown(one, Fraction(0), Fraction(0), one, vacuous=True)
    r_cand = rank_by_score(pset, candidate)
    r_star = rank_by_score(pset, fbeta(math.sqrt(beta_star_squared)))
    d_bad, _ = discordance(r_cand, r_star)
    p_agree = 1 - Fraction(d_pr_re, total)
    p_bad = Fraction(d_bad, total)
    p_good = 1 - p_agree - p_bad
    return OptimalityBreakdown(p_agree, p_good, p_bad, p_good / (p_good + p_bad))


def heuristic_beta(pset: PerformanceSet) -> float:
    """Error-mass heuristic: beta^2 = sum(pfp) / sum(pfn) over the set."""
    parts = pset.parts
    fp_sum = float(parts[:, 1].sum())
    fn_sum = float(parts[:, 2].sum())
    if fn_sum == 0:
        raise ZeroDenominatorError("no item has false negatives")
    return math.sqrt(fp_sum / fn_sum)


def equidistance_gap(pset: PerformanceSet, beta_squared: float) -> Fraction:
    """|d(Pr, F) - d(F, Re)| at the given beta^2, as an exact fraction."""
    parts = pset.parts
    r_pr = _fbeta_ranks(parts, 0.0)
    r_re = _fbeta_ranks(parts, math.inf)
    r = _fbeta_ranks(parts, math.sqrt(beta_squared))
    total = pset.total_pairs
    gap = _discordant_count(r_pr, r) - _discordant_count(r, r_re)
    return Fraction(abs(gap), total)


@dataclass(frozen=True)
class TradeoffReport:
    """Everything the analysis pipeline knows about one performance set."""

    n_items: int
    total_pairs: int
    tau_pr_re: float
    discordant_pr_re: int
    beta_star_squared: float | None
    beta_star_interval: tuple[float, float] | None
    transition_thetas: tuple[float, ...]
    degenerate_pairs: int
    unanimous_pairs: int
    coalesced: bool
    equidistance_gap: Fraction | None
    heuristic: float | None
    frechet_curve: tuple[tuple[float, float], ...]
    optimality: dict[str, OptimalityBreakdown] = field(default_factory=dict)
    skipped_candidates: dict[str, str] = field(default_factory=dict)


def _has_coalesced(thetas, tol: float = TIE_TOL) -> bool:
    ts = [t for t in thetas if t > 0]
    return any(b - a <= tol for a, b in zip(ts, ts[1:]))


def analyze_set(
    pset: PerformanceSet,
    extra_betas=(),
    grid_points: int = 41,
    grid_span: tuple[float, float] = (1e-3, 1e3),
) -> TradeoffReport:
    """Full tradeoff analysis of one set.

    The optimality map always covers the balanced F-score, the
    skew-insensitive F-score and the error-mass heuristic (candidates
    whose score is undefined somewhere on the set are skipped and listed
    with the reason); ``extra_betas`` adds user-chosen F-scores.
    """
    r_pr = rank_by_score(pset, PRECISION)
    r_re = rank_by_score(pset, RECALL)
    d_pr_re, total = discordance(r_pr, r_re)
    summary = pair_crossings(pset)
    b2_star, thetas = optimal_beta(pset)
    interval = optimal_interval(thetas)

    try:
        heur: float | None = heuristic_beta(pset)
    except ZeroDenominatorError:
        heur = None

    candidates: dict[str, ScoreFunction] = {"f1": F1, "sivf": SIVF}
    if heur is not None:
        candidates["heuristic"] = fbeta(heur)
    for b in extra_betas:
        candidates[fbeta(b).label()] = fbeta(b)

    optimality: dict[str, OptimalityBreakdown] = {}
    skipped: dict[str, str] = {}
    for name, cand in candidates.items():
        try:
            optimality[name] = optimality_decomposition(pset, cand, b2_star)
        except UndefinedScoreError as exc:
            skipped[name] = str(exc)

    return TradeoffReport(
        n_items=len(pset),
        total_pairs=total,
        tau_pr_re=1.0 - 2.0 * d_pr_re / total,
        discordant_pr_re=d_pr_re,
        beta_star_squared=b2_star,
        beta_star_interval=interval,
        transition_thetas=tuple(thetas),
        degenerate_pairs=summary.degenerate_pairs,
        unanimous_pairs=summary.unanimous_pairs,
        coalesced=_has_coalesced(thetas),
        equidistance_gap=None if b2_star is None else equidistance_gap(pset, b2_star),
        heuristic=heur,
        frechet_curve=tuple(frechet_curve(pset, None, grid_points, grid_span)),
        optimality=optimality,
        skipped_candidates=skipped,
    )
