"""End-to-end: a CSV of classifier results through the full analysis CLI.

Synthesizes a leaderboard-style CSV (ROC rows at a shared prior), runs
the `analyze` command on it, and walks through the emitted report and
plot tables.  Point --input at your own file to do the same for real
results; see the README for the accepted schemas.
"""

import json
import tempfile
from pathlib import Path

from prtradeoff import cli, fixed_priors_spec, sample_parts

workdir = Path(tempfile.mkdtemp(prefix="prtradeoff_demo_"))
csv_path = workdir / "leaderboard.csv"
out_dir = workdir / "analysis"

# fabricate 40 classifiers at a 2% positive prior
parts = sample_parts(fixed_priors_spec(0.02), seed=5, count=40)
prior = 0.02
rows = ["method,fpr,tpr,prior_pos"]
for k, (tn, fp, fn, tp) in enumerate(parts):
    rows.append(f"m{k:02d},{float(fp / (tn + fp))!r},{float(tp / (fn + tp))!r},{prior}")
csv_path.write_text("\n".join(rows) + "\n")

code = cli.main(
    ["analyze", "--input", str(csv_path), "--out", str(out_dir), "--beta", "0.5"]
)
assert code == 0, code

report = json.loads((out_dir / "report.json").read_text())
print(f"wrote {sorted(p.name for p in out_dir.iterdir())}")
print(f"\nitems: {report['n_items']}   pairs: {report['total_pairs']}")
print(f"tau(precision, recall) = {report['tau_precision_recall']:.4f}")
print(f"optimal beta           = {report['beta_star']:.4f}")
print(f"optimal beta^2 range   = {report['beta_star_interval']}")
print(f"heuristic beta         = {report['heuristic_beta']:.4f}")
print("\ndegree of optimality per candidate score")
for name, cell in report["optimality"].items():
    print(f"  {name:>10}: {cell['degree']:.1%}  (exact {cell['degree_exact']})")

print(f"\nplot tables are under {out_dir}")
print("each CSV starts with a '# config=... seed=...' line; identical inputs")
print("reproduce byte-identical outputs.")
