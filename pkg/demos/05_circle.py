"""
The quarter disk
================

On the disk the solution is usually irrational, so it is found in floating
point by bisecting an angle condition and then checked against a quartic.
"""

import math

from nashbargain.games import solve_circle

for c1, c2 in [(0, 0), (0.3, 0.3), (0.5, 0), (0.1, 0.8)]:
    p = solve_circle(c1, c2)
    slope_gap = (p.y - c2) / (p.x - c1) - p.x / p.y
    print(f"c=({c1}, {c2}) -> ({p.x:.12f}, {p.y:.12f})  quartic {p.residual:.1e}  tangency {slope_gap:.1e}")

print("sqrt(2)/2 =", math.sqrt(2) / 2)
