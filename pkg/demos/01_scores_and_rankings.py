"""Scores, performances and the rankings they induce.

A performance is a normalized confusion matrix.  Feed raw counts in, get
a point on the probability simplex out, then evaluate any of the
supported scores on it and rank a whole set.
"""

import numpy as np

from prtradeoff import (
    F1,
    IOU,
    PRECISION,
    RECALL,
    SIVF,
    Performance,
    PerformanceSet,
    evaluate,
    fbeta,
    fbeta_importance,
    kendall_distance,
    kendall_tau,
    rank_by_score,
    ranking_score,
    spearman_distance,
)

# three classifiers evaluated on the same data, as raw confusion counts
classifiers = {
    "conservative": Performance(9000, 80, 400, 520),
    "balanced": Performance(8800, 280, 220, 700),
    "aggressive": Performance(8300, 780, 60, 860),
}

print("score values")
print(f"{'':>14}  precision  recall    F1      F0.5    SIVF    IoU")
for name, p in classifiers.items():
    vals = [evaluate(s, p) for s in (PRECISION, RECALL, F1, fbeta(0.5), SIVF, IOU)]
    print(f"{name:>14}  " + "  ".join(f"{v:.4f}" for v in vals))

# the F-score family interpolates monotonically between precision and recall
p = classifiers["balanced"]
print("\nF-beta sweep for the balanced classifier")
for beta in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0, np.inf):
    print(f"  beta={beta!s:>5}: {evaluate(fbeta(beta), p):.4f}")

# every F-score is a weighted fraction of satisfied outcomes
w = fbeta_importance(2.0)
print("\nimportance weights for beta=2:", (w.w_tn, w.w_fp, w.w_fn, w.w_tp))
print("ranking-score form reproduces the value:",
      ranking_score(w, p), "=", evaluate(fbeta(2.0), p))

# rankings: rank 1 is best; ties share the worst rank of their group
pset = PerformanceSet(tuple(classifiers.values()), labels=tuple(classifiers))
for score, name in [(PRECISION, "precision"), (F1, "F1"), (RECALL, "recall")]:
    r = rank_by_score(pset, score)
    print(f"\nranking by {name}: {dict(zip(pset.labels, r.ranks))}")

r_pr = rank_by_score(pset, PRECISION)
r_re = rank_by_score(pset, RECALL)
print("\nKendall distance precision vs recall:", kendall_distance(r_pr, r_re))
print("Kendall tau:                          ", kendall_tau(r_pr, r_re))
print("Spearman distance:                    ", spearman_distance(r_pr, r_re))
