"""Compare the level bound with exact Z_q on complete k-ary trees.

Reported, not asserted: equality here is an observation only.
"""

from zqforce import families as F
from zqforce.bounds import tree_upper_bound
from zqforce.solver import BudgetExceeded, zq, zq_star_value

if __name__ == "__main__":
    print("k,depth,n,q,bound,root,exact,exact_star,tight_star")
    for k, depth in ((2, 1), (2, 2), (3, 1), (3, 2), (2, 3), (4, 1)):
        t = F.kary(k, depth)
        for q in (1, 2, 3):
            b, root = tree_upper_bound(t, q)
            try:
                z = zq(t, q, budget=3_000_000)
                zs = zq_star_value(t, q).value
            except BudgetExceeded:
                print(f"{k},{depth},{t.n},{q},{b},{root},,,")
                continue
            print(f"{k},{depth},{t.n},{q},{b},{root},{z},{zs},{zs == b}")
