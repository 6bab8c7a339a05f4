"""Brute-force oracle for the alpha = 3/2 grid scan.

Plain 256-bit floating evaluation of q * (3/2)^n with mpmath, independent of
the Rust code. Cells whose distance lies within 2^-200 (relative) of the
bound would be ambiguous at this precision; the script refuses to write the
fixture if any such cell exists.
"""

import json
import sys

from mpmath import fabs, floor, mp, mpf

mp.prec = 256

N_MAX = 100
Q_MAX = 100
THETA = mpf(9) / 10
EPS = mpf(1) / 2
D = 1

hits = []
zeros = []
for n in range(1, N_MAX + 1):
    for q in range(1, Q_MAX + 1):
        x = q * mpf(3) ** n / mpf(2) ** n
        p = floor(x + mpf(1) / 2)
        dist = fabs(x - p)
        bound = THETA**n / mpf(q) ** (D + EPS)
        if dist == 0:
            zeros.append([n, q])
            continue
        if fabs(dist - bound) < mpf(2) ** -200 * bound:
            sys.exit(f"cell ({n}, {q}) too close to the bound")
        if dist < bound:
            hits.append(
                {
                    "n": n,
                    "q": q,
                    "p": str(int(p)),
                    "dist": mp.nstr(dist, 30),
                    "bound": mp.nstr(bound, 30),
                }
            )

out = {
    "alpha": "3/2",
    "theta": "9/10",
    "epsilon": "1/2",
    "n_max": N_MAX,
    "q_max": Q_MAX,
    "hits": hits,
    "exact_zeros": zeros,
}
with open(sys.argv[1] if len(sys.argv) > 1 else "three_halves_grid.json", "w") as f:
    json.dump(out, f, indent=1)
    f.write("\n")
