"""
Bargaining over a polygon
=========================

Two players split the set {y1 + y2/2 <= 1, y1/2 + y2 <= 1}. With equal
clout they meet at the corner; as player 1's clout grows the solution
slides onto the flatter facet.
"""

from fractions import Fraction as F

from nashbargain import Game2, compute_alpha_interval, normalize, solve, verify_solution

game = Game2(A=[[], []], b1=[1, F(1, 2)], b2=[F(1, 2), 1], e=[1, 1])

# the search runs over facet slopes between the two extreme facets
iv = compute_alpha_interval(normalize(game))
print("slope interval:", iv.lo, "to", iv.hi)

for w1 in (1, 2, 5, 9):
    g = game.with_clouts(w1, 1)
    sol = solve(g)
    rep = verify_solution(g, sol)
    where = f"facet alpha={sol.face.alpha}" if sol.face.is_facet else "vertex ({}, {})".format(*sol.face.coords)
    print(f"w1={w1}: v=({sol.v1}, {sol.v2})  on {where}  verified={rep.ok}")

# disagreement utilities shift the problem; here player 1 can walk away with 1/4
sol = solve(Game2([[]], [1], [1], [1], F(1, 4), 0))
print("triangle with c=(1/4, 0):", sol.v1, sol.v2)
