"""The discrete manifold of rankings swept by the F-score family.

Sweeping beta from 0 (precision) to infinity (recall) over a fixed
tie-free set, the induced ranking is piecewise constant and changes only
at the pairwise crossing betas.  The resulting path of rankings, one per
plateau, materializes the curve along which the optimal tradeoff lives;
projecting the rank vectors to two principal components reproduces the
usual picture of that curve.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ranking import PerformanceSet, Ranking, discordance, rank_by_score
from .scores import PRECISION, RECALL, SIVF, TIE_TOL, UndefinedScoreError, fbeta
from .tradeoff import optimal_beta, pair_crossings


class DegenerateSpreadError(ValueError):
    """All rankings identical: nothing to project."""


@dataclass(frozen=True)
class RankingPath:
    """Plateau-by-plateau record of the beta sweep over one set.

    ``transition_betas`` holds the distinct betas (square roots of the
    crossing beta^2 values) at which the ranking changes; ``rankings``
    has one entry per plateau, so it is one longer.  ``coalesced`` is set
    when several distinct pairs cross at the same beta (within tolerance),
    in which case a transition may move the ranking by more than one
    adjacent swap.
    """

    pset: PerformanceSet
    transition_betas: tuple[float, ...]
    rankings: tuple[Ranking, ...]
    distances_from_precision: tuple[Fraction, ...]
    coalesced: bool

    @property
    def n_plateaus(self) -> int:
        return len(self.rankings)

    def plateau_of(self, beta: float) -> int:
        """Index of the plateau containing the given beta."""
        return bisect_left(self.transition_betas, float(beta))

    @property
    def optimal_plateau(self) -> int:
        """Plateau whose distance from precision is nearest to half the total."""
        half = self.distances_from_precision[-1] / 2
        gaps = [abs(d - half) for d in self.distances_from_precision]
        return gaps.index(min(gaps))


def build_path(pset: PerformanceSet) -> RankingPath:
    """Enumerate every ranking induced by the F-score family on the set.

    Requires a tie-free set (distinct precision values and distinct
    recall values).  Each open plateau is probed at the geometric
    midpoint of its bounding transitions, since crossings live on a
    multiplicative beta scale; the first plateau is precision itself and
    the last is checked against recall.
    """
    r_pr = rank_by_score(pset, PRECISION)
    r_re = rank_by_score(pset, RECALL)
    if r_pr.has_ties or r_re.has_ties:
        raise ValueError("set has tied precision or recall values; path is ambiguous")

    thetas = [t for t in pair_crossings(pset).thetas if t > 0]
    coalesced = any(b - a <= TIE_TOL for a, b in zip(thetas, thetas[1:]))
    unique: list[float] = []
    for t in thetas:
        if not unique or t - unique[-1] > TIE_TOL:
            unique.append(t)
    betas = [math.sqrt(t) for t in unique]

    probes: list[float] = [0.0]
    probes += [math.sqrt(a * b) for a, b in zip(betas, betas[1:])]
    if betas:
        probes.append(2.0 * betas[-1])
    rankings = [r_pr]
    rankings += [rank_by_score(pset, fbeta(b)) for b in probes[1:]]
    if rankings[-1].ranks != r_re.ranks:
        raise RuntimeError("last plateau does not match the recall ranking")

    total = pset.total_pairs
    dists = tuple(Fraction(discordance(r_pr, r)[0], total) for r in rankings)
    return RankingPath(
        pset=pset,
        transition_betas=tuple(betas),
        rankings=tuple(rankings),
        distances_from_precision=dists,
        coalesced=coalesced,
    )


MARKER_NAMES = ("f1", "sivf", "optimal")


def marker_rankings(path: RankingPath) -> dict[str, Ranking]:
    """Rankings of the named scores, for plotting on top of the path.

    Precision and recall are the path endpoints already.  The balanced
    F-score reuses its plateau's ranking; the skew-insensitive score is
    ranked directly (and skipped when undefined on the set); the optimal
    tradeoff is the plateau of the median crossing.
    """
    out = {"f1": path.rankings[path.plateau_of(1.0)]}
    try:
        out["sivf"] = rank_by_score(path.pset, SIVF)
    except UndefinedScoreError:
        pass
    b2_star, _ = optimal_beta(path.pset)
    if b2_star is None:
        out["optimal"] = path.rankings[0]
    else:
        out["optimal"] = path.rankings[path.plateau_of(math.sqrt(b2_star))]
    return out


def pca_project(
    path: RankingPath, include_markers: bool = True
) -> tuple[np.ndarray, tuple[float, float]]:
    """Two-component principal projection of the path's rank vectors.

    Rows of the returned coordinate array follow the path plateaus, then
    the markers of ``marker_rankings`` in their iteration order when
    ``include_markers`` is set.  The projection is an orthogonal map of
    the centered rank vectors, so pairwise planar distances never exceed
    the corresponding Spearman distances.  Component signs are fixed
    (first nonzero loading positive) to make outputs reproducible.
    """
    rows = [r.as_array() for r in path.rankings]
    if include_markers:
        rows += [r.as_array() for r in marker_rankings(path).values()]
    x = np.array(rows, dtype=float)
    x -= x.mean(axis=0, keepdims=True)
    cov = x.T @ x / max(len(rows) - 1, 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    total = float(eigvals.sum())
    if total <= 0.0:
        raise DegenerateSpreadError("all rankings identical")
    comps = eigvecs[:, order[:2]]
    for j in range(comps.shape[1]):
        nz = np.flatnonzero(np.abs(comps[:, j]) > 1e-12)
        if nz.size and comps[nz[0], j] < 0:
            comps[:, j] = -comps[:, j]
    coords = x @ comps
    explained = (float(eigvals[0]) / total, float(eigvals[1]) / total)
    return coords, explained


def rank_trajectories(path: RankingPath) -> np.ndarray:
    """(n_items, n_plateaus) matrix of ranks: one step function of beta per item."""
    return np.array([r.ranks for r in path.rankings]).T
