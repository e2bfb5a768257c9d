"""
An exact linear program
=======================

The solver works over fractions end to end, so the optimum, the duals and
the duality gap come out as exact rationals.
"""

from fractions import Fraction as F

from nashbargain.lp import LE, LpProblem, certificate_violations, solve_lp

# maximize x1 + x2 over the polygon cut out by two slanted lines
problem = LpProblem(
    objective=[1, 1],
    constraints=[([1, F(1, 2)], LE, 1), ([F(1, 2), 1], LE, 1)],
    sense="max",
)
out = solve_lp(problem)
print("status :", out.status)
print("x      :", [str(v) for v in out.primal])
print("value  :", out.value)
print("duals  :", [str(v) for v in out.dual])

# every optimality identity is rechecked with zero tolerance
print("certificate problems:", certificate_violations(problem, out) or "none")

# the rhs-weighted duals reproduce the objective exactly
print("b . y  :", sum(rhs * y for (_, _, rhs), y in zip(problem.constraints, out.dual)))
