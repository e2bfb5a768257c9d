"""
Checking the exact solver
=========================

A floating-point maximizer and a brute-force slope sweep, neither of which
shares code with the exact search, are run against a random instance.
"""

import random

from nashbargain import Game2, NonCompactGameError, check_feasible, normalize, solve
from nashbargain.oracle import brute_force_faces, numeric_maximize

rng = random.Random(7)
while True:
    m, n = 4, 3
    game = Game2(
        [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)],
        [rng.randint(0, 3) for _ in range(m)],
        [rng.randint(0, 3) for _ in range(m)],
        [rng.randint(1, 5) for _ in range(m)],
        0, 0, 2, 1,
    )
    try:
        if check_feasible(game).feasible:
            sol = solve(game)
            break
    except NonCompactGameError:
        continue

ng = normalize(game)
num = numeric_maximize(ng, tol=1e-9)
print("exact  :", sol.y1, sol.y2, "->", float(sol.y1), float(sol.y2))
print("numeric:", num.point)

faces = brute_force_faces(ng, grid=256)
print("useful chain from the sweep:")
for f in faces:
    if f.is_facet:
        print(f"  facet y1 + {f.alpha} y2 <= {f.beta}")
    else:
        print(f"  vertex {tuple(str(v) for v in f.coords)}")
print("solution face:", sol.face.kind)
