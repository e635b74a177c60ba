"""Performance-distribution families, Monte Carlo rank correlations, analytic results.

Five sampling families are supported, identified as pi1..pi5:

pi1  uniform over the whole simplex of performances;
pi2  uniform over the slice with a fixed probability of true negatives;
pi3  uniform over the slice with fixed class priors (uniform ROC points);
pi4  pi3 conditioned on being at or above the no-skill diagonal;
pi5  pi3 conditioned on the near-oracle region (fpr below the positive
     prior, tpr above it).

Rank correlations between two scores under a family are estimated from
independent performance pairs: tau = 1 - 4 P[first score decreases while
the second increases].  Draws come from counter-based substreams of a
Philox generator in fixed-size blocks, so results are bit-reproducible
for a given seed no matter how the pair range is partitioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scores import Performance, ScoreFunction, TIE_TOL, score_values

FAMILIES = ("pi1", "pi2", "pi3", "pi4", "pi5")

_BLOCK = 1 << 16
_MAX_REDRAW_ROUNDS = 60
_REDRAW_FRACTION = 0.01


class RedrawLimitError(RuntimeError):
    """Too many degenerate Monte Carlo pairs (undefined or tied scores)."""


@dataclass(frozen=True)
class DistributionSpec:
    """One of the five families plus its parameter, if any."""

    family: str
    ptn: float | None = None        # pi2 only
    prior_pos: float | None = None  # pi3, pi4, pi5 only

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "pi1":
            if self.ptn is not None or self.prior_pos is not None:
                raise ValueError("pi1 takes no parameter")
        elif self.family == "pi2":
            if self.ptn is None or self.prior_pos is not None:
                raise ValueError("pi2 takes exactly the ptn parameter")
            if not 0.0 <= self.ptn < 1.0:
                raise ValueError(f"ptn must be in [0, 1), got {self.ptn!r}")
        else:
            if self.prior_pos is None or self.ptn is not None:
                raise ValueError(f"{self.family} takes exactly the prior_pos parameter")
            if not 0.0 < self.prior_pos < 1.0:
                raise ValueError(f"prior_pos must be in (0, 1), got {self.prior_pos!r}")

    def label(self) -> str:
        if self.family == "pi2":
            return f"pi2(ptn={self.ptn:g})"
        if self.prior_pos is not None:
            return f"{self.family}(prior={self.prior_pos:g})"
        return self.family


def uniform_spec() -> DistributionSpec:
    return DistributionSpec("pi1")


def fixed_tn_spec(ptn: float) -> DistributionSpec:
    return DistributionSpec("pi2", ptn=float(ptn))


def fixed_priors_spec(prior_pos: float) -> DistributionSpec:
    return DistributionSpec("pi3", prior_pos=float(prior_pos))


def above_no_skill_spec(prior_pos: float) -> DistributionSpec:
    return DistributionSpec("pi4", prior_pos=float(prior_pos))


def near_oracle_spec(prior_pos: float) -> DistributionSpec:
    return DistributionSpec("pi5", prior_pos=float(prior_pos))


def _generator(seed: int, counter: int = 0) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.Philox(key=seed, counter=counter))


def _block_generator(seed: int, block: int) -> np.random.Generator:
    # blocks are spaced 2**128 counter steps apart: substreams never overlap
    return _generator(seed, (block + 1) << 128)


def _roc_to_parts(fpr: np.ndarray, tpr: np.ndarray, prior_pos: float) -> np.ndarray:
    q = 1.0 - prior_pos
    return np.stack(
        [q * (1.0 - fpr), q * fpr, prior_pos * (1.0 - tpr), prior_pos * tpr], axis=1
    )


def _draw(spec: DistributionSpec, rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 4) array of performances drawn from the family."""
    fam = spec.family
    if fam == "pi1":
        e = rng.standard_exponential((n, 4))
        return e / e.sum(axis=1, keepdims=True)
    if fam == "pi2":
        e = rng.standard_exponential((n, 3))
        parts = np.empty((n, 4))
        parts[:, 0] = spec.ptn
        parts[:, 1:] = (1.0 - spec.ptn) * e / e.sum(axis=1, keepdims=True)
        return parts
    p = spec.prior_pos
    fpr = rng.uniform(0.0, 1.0, n)
    tpr = rng.uniform(0.0, 1.0, n)
    if fam == "pi4":
        bad = tpr < fpr
        while bad.any():
            k = int(bad.sum())
            fpr[bad] = rng.uniform(0.0, 1.0, k)
            tpr[bad] = rng.uniform(0.0, 1.0, k)
            bad = tpr < fpr
        return _roc_to_parts(fpr, tpr, p)
    if fam == "pi5":
        fpr = fpr * p
        tpr = p + tpr * (1.0 - p)
        # strict fpr < prior < tpr: float rounding can touch the edges
        bad = (fpr >= p) | (tpr <= p)
        while bad.any():
            k = int(bad.sum())
            fpr[bad] = rng.uniform(0.0, 1.0, k) * p
            tpr[bad] = p + rng.uniform(0.0, 1.0, k) * (1.0 - p)
            bad = (fpr >= p) | (tpr <= p)
        return _roc_to_parts(fpr, tpr, p)
    return _roc_to_parts(fpr, tpr, p)


def sample_parts(spec: DistributionSpec, seed: int, count: int) -> np.ndarray:
    """(count, 4) array of draws; deterministic for a given (spec, seed)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return _draw(spec, _generator(seed), count)


def sample(spec: DistributionSpec, seed: int, count: int) -> list[Performance]:
    return [Performance(*row) for row in sample_parts(spec, seed, count)]


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate with a 95% confidence half-width."""

    value: float
    half_width: float
    n_pairs: int
    seed: int


def mc_kendall_tau(
    spec: DistributionSpec,
    score1: ScoreFunction,
    score2: ScoreFunction,
    n_pairs: int,
    seed: int,
) -> McEstimate:
    """Kendall rank correlation of two scores under a performance distribution.

    Pairs on which either score is undefined or tied (within ``TIE_TOL``)
    are redrawn inside their block, which keeps ``n_pairs`` exact; those
    events have measure zero for the supported families, so a redraw rate
    above 1% aborts with ``RedrawLimitError``.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    done = 0
    block = 0
    discordant = 0
    redrawn = 0
    while done < n_pairs:
        want = min(_BLOCK, n_pairs - done)
        rng = _block_generator(seed, block)
        a = _draw(spec, rng, want)
        b = _draw(spec, rng, want)
        v1a, v1b = score_values(score1, a), score_values(score1, b)
        v2a, v2b = score_values(score2, a), score_values(score2, b)
        for _ in range(_MAX_REDRAW_ROUNDS):
            with np.errstate(invalid="ignore"):
                bad = ~(
                    np.isfinite(v1a) & np.isfinite(v1b)
                    & np.isfinite(v2a) & np.isfinite(v2b)
                )
                bad |= np.abs(v1a - v1b) <= TIE_TOL
                bad |= np.abs(v2a - v2b) <= TIE_TOL
            if not bad.any():
                break
            k = int(bad.sum())
            redrawn += k
            a2, b2 = _draw(spec, rng, k), _draw(spec, rng, k)
            v1a[bad], v1b[bad] = score_values(score1, a2), score_values(score1, b2)
            v2a[bad], v2b[bad] = score_values(score2, a2), score_values(score2, b2)
        else:
            raise RedrawLimitError(
                f"degenerate pairs persist after {_MAX_REDRAW_ROUNDS} redraw rounds"
            )
        discordant += int(((v1a < v1b) & (v2a > v2b)).sum())
        done += want
        block += 1
    if redrawn > _REDRAW_FRACTION * n_pairs:
        raise RedrawLimitError(f"{redrawn} of {n_pairs} pairs needed redrawing")
    p_hat = discordant / n_pairs
    half_width = 1.96 * 4.0 * math.sqrt(p_hat * (1.0 - p_hat) / n_pairs)
    return McEstimate(1.0 - 4.0 * p_hat, half_width, n_pairs, seed)


# ---------------------------------------------------------------------------
# Analytic rank correlations (fixed-prior families, in terms of the ROC
# pencil-vertex offset of the F-score: offset = beta^2 * prior / (1 - prior)).
# ---------------------------------------------------------------------------

_SIDES = ("pr", "re")


def _check_side_offset(side: str, offset: float) -> float:
    if side not in _SIDES:
        raise ValueError(f"side must be 'pr' or 're', got {side!r}")
    ell = float(offset)
    if not ell > 0 or math.isinf(ell):
        raise ValueError(f"vertex offset must be finite and > 0, got {offset!r}")
    return ell


def analytic_tau_fixed_priors(side: str, offset: float) -> float:
    """tau(precision, F) or tau(F, recall) under pi3, for the given vertex offset.

    The two sides sum to 3/2 for every offset, since tau(precision,
    recall) = 1/2 under pi3.
    """
    ell = _check_side_offset(side, offset)
    if side == "pr":
        return 1.0 - ell * (ell * math.log(ell / (ell + 1.0)) + 1.0)
    return 0.5 + ell - ell * ell * math.log((1.0 + ell) / ell)


def analytic_tau_above_no_skill(side: str, offset: float) -> float:
    """tau(precision, F) or tau(F, recall) under pi4; the sides sum to 1."""
    ell = _check_side_offset(side, offset)
    if side == "pr":
        return 1.0 - (2.0 / 3.0) * ell * (
            -6.0 * ell**2
            - 6.0 * (ell**2 - 1.0) * ell * math.log(ell / (ell + 1.0))
            + 3.0 * ell
            + 4.0
        )
    return (2.0 / 3.0) * ell * (
        -6.0 * ell**2
        + 6.0 * (ell**2 - 1.0) * ell * math.log(1.0 / ell + 1.0)
        + 3.0 * ell
        + 4.0
    )


def analytic_tau_pr_re_near_oracle(prior_pos: float) -> float:
    """tau(precision, recall) under pi5; lies in (0, 1/2) for every prior."""
    p = float(prior_pos)
    if not 0.0 < p < 1.0:
        raise ValueError(f"prior_pos must be in (0, 1), got {prior_pos!r}")
    return 1.0 - (-p**4 + 2.0 * p**4 * math.log(p) + p**2) / (
        2.0 * (1.0 - p) ** 2 * p**2
    )


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Bracketed 1-D minimization of a unimodal function."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - gr * (hi - lo)
    d = lo + gr * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - gr * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + gr * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


_ANALYTIC_TAU = {
    "pi3": analytic_tau_fixed_priors,
    "pi4": analytic_tau_above_no_skill,
}


def optimal_vertex_offset(family: str) -> float:
    """The vertex offset minimizing the Frechet variance under pi3 or pi4.

    Roughly 0.61585 for pi3 and 0.48 for pi4; at the optimum the two
    correlation sides are equal.
    """
    try:
        tau = _ANALYTIC_TAU[family]
    except KeyError:
        raise ValueError(f"family must be pi3 or pi4, got {family!r}") from None

    def variance(ell: float) -> float:
        d1 = (1.0 - tau("pr", ell)) / 2.0
        d2 = (1.0 - tau("re", ell)) / 2.0
        return d1 * d1 + d2 * d2

    return golden_section_min(variance, 1e-4, 10.0)


def beta_for_offset(offset: float, prior_pos: float) -> tuple[float, float]:
    """(beta^2, recall weight b) of the F-score with the given vertex offset at the given prior."""
    p = float(prior_pos)
    if not 0.0 < p < 1.0:
        raise ValueError(f"prior_pos must be in (0, 1), got {prior_pos!r}")
    beta_squared = float(offset) * (1.0 - p) / p
    return beta_squared, beta_squared / (1.0 + beta_squared)


def adapted_beta(family: str, prior_pos: float) -> tuple[float, float]:
    """Prior-adapted optimal F-score under pi3 or pi4: (beta^2, recall weight b)."""
    return beta_for_offset(optimal_vertex_offset(family), prior_pos)


# ---------------------------------------------------------------------------
# Near-oracle (pi5) numerics.  No closed form is available for the
# correlations against the F-scores, so the optimal offset is located by
# bisection on the equidistance gap, Monte Carlo estimated with common
# random numbers so the gap is a fixed deterministic function of the
# offset during the search.
# ---------------------------------------------------------------------------


def _pencil_sign(x1, y1, x2, y2, offset: float) -> np.ndarray:
    """Sign of score(point1) - score(point2) for the pencil score y / (x + offset)."""
    if math.isinf(offset):
        return np.sign(y1 - y2)
    return np.sign(y1 * (x2 + offset) - y2 * (x1 + offset))


def _near_oracle_uniforms(n_pairs: int, seed: int):
    rng = _generator(seed)
    return tuple(rng.uniform(0.0, 1.0, n_pairs) for _ in range(4))


def _near_oracle_sides(uniforms, prior_pos: float, offset: float) -> tuple[float, float]:
    """(tau(Pr, F), tau(F, Re)) under pi5, on frozen uniform draws."""
    ux, uy, vx, vy = uniforms
    p = prior_pos
    x1, y1 = ux * p, p + uy * (1.0 - p)
    x2, y2 = vx * p, p + vy * (1.0 - p)
    s_pr = _pencil_sign(x1, y1, x2, y2, 0.0)
    s_re = np.sign(y1 - y2)
    s_f = _pencil_sign(x1, y1, x2, y2, offset)
    tau_pr = 1.0 - 4.0 * np.mean((s_pr < 0) & (s_f > 0))
    tau_re = 1.0 - 4.0 * np.mean((s_f < 0) & (s_re > 0))
    return float(tau_pr), float(tau_re)


def _near_oracle_gap(uniforms, prior_pos: float, offset: float) -> float:
    tau_pr, tau_re = _near_oracle_sides(uniforms, prior_pos, offset)
    return tau_pr - tau_re


def mc_tau_sides_near_oracle(
    prior_pos: float, offset: float, n_pairs: int = 10**6, seed: int = 0
) -> tuple[float, float]:
    """Monte Carlo (tau(Pr, F), tau(F, Re)) under pi5 for a pencil score."""
    p = float(prior_pos)
    if not 0.0 < p < 1.0:
        raise ValueError(f"prior_pos must be in (0, 1), got {prior_pos!r}")
    return _near_oracle_sides(_near_oracle_uniforms(n_pairs, seed), p, offset)


def mc_optimal_vertex_offset_near_oracle(
    prior_pos: float, n_pairs: int = 10**6, seed: int = 0
) -> float:
    """Vertex offset equalizing the two correlation sides under pi5."""
    p = float(prior_pos)
    if not 0.0 < p < 1.0:
        raise ValueError(f"prior_pos must be in (0, 1), got {prior_pos!r}")
    uniforms = _near_oracle_uniforms(n_pairs, seed)
    lo, hi = 1e-4, 100.0
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if _near_oracle_gap(uniforms, p, mid) > 0:
            lo = mid  # too close to precision: increase the offset
        else:
            hi = mid
    return math.sqrt(lo * hi)


def mc_pencil_optimality(
    family: str,
    candidate_offset: float,
    n_pairs: int = 10**6,
    seed: int = 0,
    optimal_offset: float | None = None,
) -> float:
    """Degree of optimality of a pencil score under pi3 or pi4, by pair classification.

    Draws independent ROC pairs, keeps those on which precision and
    recall contradict each other, and returns the fraction the candidate
    orders like the optimal tradeoff.  The ROC geometry of pi3/pi4 does
    not depend on the prior, so neither does the result.
    """
    if family not in ("pi3", "pi4"):
        raise ValueError(f"family must be pi3 or pi4, got {family!r}")
    if optimal_offset is None:
        optimal_offset = optimal_vertex_offset(family)
    rng = _generator(seed)
    x1, y1 = rng.uniform(0.0, 1.0, n_pairs), rng.uniform(0.0, 1.0, n_pairs)
    x2, y2 = rng.uniform(0.0, 1.0, n_pairs), rng.uniform(0.0, 1.0, n_pairs)
    if family == "pi4":
        for x, y in ((x1, y1), (x2, y2)):
            bad = y < x
            while bad.any():
                k = int(bad.sum())
                x[bad] = rng.uniform(0.0, 1.0, k)
                y[bad] = rng.uniform(0.0, 1.0, k)
                bad = y < x
    s_pr = _pencil_sign(x1, y1, x2, y2, 0.0)
    s_re = np.sign(y1 - y2)
    s_cand = _pencil_sign(x1, y1, x2, y2, candidate_offset)
    s_star = _pencil_sign(x1, y1, x2, y2, optimal_offset)
    contradictory = s_pr * s_re < 0
    good = int((contradictory & (s_cand * s_star > 0)).sum())
    bad_ = int((contradictory & (s_cand * s_star < 0)).sum())
    if good + bad_ == 0:
        raise RedrawLimitError("no contradictory pairs drawn")
    return good / (good + bad_)


def sivf_equidistance_prior_near_oracle(n_pairs: int = 10**6, seed: int = 0) -> float:
    """The positive prior at which the skew-insensitive F-score is the pi5 optimum.

    The skew-insensitive score has vertex offset 1 at every prior; this
    finds the prior whose optimal offset is 1 (about 0.561).
    """
    uniforms = _near_oracle_uniforms(n_pairs, seed)
    lo, hi = 0.05, 0.95
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if _near_oracle_gap(uniforms, mid, 1.0) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
