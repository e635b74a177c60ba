"""Rank vectors over finite performance sets, and distances between rankings.

The rank of an item is the number of items whose score is greater than or
equal to its own, so the best item has rank 1 and, without ties, the rank
vector is a permutation of 1..n.  Ties (within ``TIE_TOL``) share the
worst rank of their group and contribute nothing to pair discordance;
this is the conservative extension of the tie-free definitions and is the
convention used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scores import (
    TIE_TOL,
    Performance,
    ScoreFunction,
    UndefinedScoreError,
    score_values,
)


class LengthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class PerformanceSet:
    """An ordered, immutable collection of performances (index = identity)."""

    items: tuple[Performance, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("empty performance set")
        object.__setattr__(self, "items", items)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(items):
                raise LengthMismatchError(
                    f"{len(labels)} labels for {len(items)} items"
                )
            object.__setattr__(self, "labels", labels)
        object.__setattr__(
            self, "_parts", np.array([p.as_array() for p in items])
        )

    def __len__(self) -> int:
        return len(self.items)

    @property
    def parts(self) -> np.ndarray:
        """(n, 4) array of (ptn, pfp, pfn, ptp) rows."""
        return self._parts

    @property
    def total_pairs(self) -> int:
        n = len(self.items)
        return n * (n - 1) // 2

    @classmethod
    def from_parts(cls, parts: np.ndarray, labels=None) -> "PerformanceSet":
        return cls(tuple(Performance(*row) for row in np.asarray(parts)), labels)


@dataclass(frozen=True)
class Ranking:
    """Vector of integer ranks, aligned with a performance set's items."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        n = len(ranks)
        if n == 0:
            raise ValueError("empty ranking")
        if any(r < 1 or r > n for r in ranks):
            raise ValueError(f"ranks must lie in 1..{n}")
        object.__setattr__(self, "ranks", ranks)

    def __len__(self) -> int:
        return len(self.ranks)

    def as_array(self) -> np.ndarray:
        return np.array(self.ranks)

    @property
    def has_ties(self) -> bool:
        return len(set(self.ranks)) != len(self.ranks)


def ranks_from_values(values: np.ndarray, tol: float = TIE_TOL) -> np.ndarray:
    """rank[i] = #{j : values[j] >= values[i] - tol} (ties share the worst rank)."""
    v = np.asarray(values, dtype=float)
    return (v[None, :] - v[:, None] >= -tol).sum(axis=1)


def rank_by_score(pset: PerformanceSet, score: ScoreFunction) -> Ranking:
    """Ranking induced by a score; raises UndefinedScoreError for items outside its domain."""
    values = score_values(score, pset.parts)
    bad = np.flatnonzero(np.isnan(values))
    if bad.size:
        raise UndefinedScoreError(int(bad[0]), score.label())
    return Ranking(tuple(int(r) for r in ranks_from_values(values)))


def _pair_signs(r: Ranking) -> np.ndarray:
    a = r.as_array()
    return np.sign(a[:, None] - a[None, :])


def discordance(r1: Ranking, r2: Ranking) -> tuple[int, int]:
    """(number of pairs ranked in opposite order, total number of pairs).

    Pairs tied in either ranking are not discordant.  Counts are exact
    integers.
    """
    if len(r1) != len(r2):
        raise LengthMismatchError(f"rankings of length {len(r1)} and {len(r2)}")
    n = len(r1)
    if n < 2:
        raise ValueError("need at least 2 items for pairwise statistics")
    prod = _pair_signs(r1) * _pair_signs(r2)
    discordant = int((np.triu(prod, 1) < 0).sum())
    return discordant, n * (n - 1) // 2


def kendall_distance(r1: Ranking, r2: Ranking) -> float:
    """Fraction of discordant pairs, in [0, 1]."""
    d, total = discordance(r1, r2)
    return d / total


def kendall_tau(r1: Ranking, r2: Ranking) -> float:
    """Rank correlation: 1 - 2 * kendall_distance, in [-1, 1]."""
    d, total = discordance(r1, r2)
    return 1.0 - 2.0 * d / total


def spearman_distance(r1: Ranking, r2: Ranking) -> float:
    """Euclidean (straight-line) distance between the two rank vectors."""
    if len(r1) != len(r2):
        raise LengthMismatchError(f"rankings of length {len(r1)} and {len(r2)}")
    diff = r1.as_array() - r2.as_array()
    return float(np.sqrt((diff * diff).sum()))
