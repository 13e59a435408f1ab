"""Search small caterpillar cycles for tokens that break the potential's
drop bounds, and print each with the center it made ineligible."""

import itertools

from zqforce import families as F
from zqforce.graph import GameState, bits
from zqforce.strategies.caterpillar import Q2, Q3, classify_centers, phi


def drops(n, k, variant, div):
    g = F.cnk(n, k, counts=[k] * n)
    seen = 0
    for blue in range(g.full + 1):
        s = GameState(g, blue)
        a = phi(s, variant)
        if a == 0:
            continue
        for v in bits(s.white):
            t = s.with_blue(1 << v)
            b = phi(t, variant)
            if div * b < a - 1:
                lost = [i for i, (x, y) in enumerate(zip(classify_centers(s).eligible,
                                                         classify_centers(t).eligible)) if x and not y]
                yield sorted(bits(blue)), v, a, b, lost
                seen += 1
                if seen >= 3:
                    return


if __name__ == "__main__":
    for (n, variant, div) in itertools.chain(((n, Q2, 2) for n in (3, 4, 5)), ((n, Q3, 3) for n in (4, 5, 6))):
        found = list(drops(n, 2, variant, div))
        print(f"n={n} {variant}: {len(found)} example(s)")
        for blue, v, a, b, lost in found:
            print(f"  blue={blue} token={v} phi {a}->{b} ineligible centers {lost}")
