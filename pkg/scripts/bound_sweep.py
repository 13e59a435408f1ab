"""Bound reports with exact values for a sweep of small family members.

    python3 scripts/bound_sweep.py > sweep.csv
"""

import sys

from zqforce import families as F
from zqforce.bounds import bound_report, reports_csv
from zqforce.solver import BudgetExceeded, SolveConfig, zq_value

GRAPHS = [
    "path:6", "cycle:6", "star:6", "star-forest:5/4/3", "spider:2/2/2", "kary:k=2,depth=2",
    "kary:k=3,depth=2", "corona:n=3,k=2", "corona:n=4,k=2", "cnk:n=3,k=2", "cnk:n=4,k=2",
    "cnk:n=5,k=3,seed=1", "pnk:n=4,k=2", "pnk:n=5,k=3,seed=2",
]


def main():
    reports = []
    for spec in GRAPHS:
        g = F.build(spec)
        for q in range(4):
            try:
                exact = zq_value(g, SolveConfig(q, budget=500_000)).value
            except BudgetExceeded:
                exact = None
            reports.append(bound_report(g, q, exact))
    sys.stdout.write(reports_csv(reports))
    bad = [r for r in reports if not r.consistent()]
    for r in bad:
        print(f"inconsistent: {r}", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
