"""
Bargaining over divisible goods
===============================

The market solver finds equilibrium prices directly. The same instance fed
to the generic polygon solver must give the same utilities.
"""

from fractions import Fraction as F

from nashbargain.games import Adnb2Instance, check_adnb2_feasible, equilibrium_violations, solve_adnb2
from nashbargain.oracle import adnb2_via_lnb2

inst = Adnb2Instance(u=[[3, 1, 2], [1, 4, 2]], c1=1, c2=F(1, 2), w1=2, w2=3)
print("feasible:", check_adnb2_feasible(inst).feasible)

eq = solve_adnb2(inst)
print("case", eq.case, "split index", eq.k)
print("prices :", [str(p) for p in eq.prices])
print("player 1 buys:", [str(x) for x in eq.alloc[0]])
print("player 2 buys:", [str(x) for x in eq.alloc[1]])
print("utilities:", eq.v1, eq.v2)
print("violations:", equilibrium_violations(eq) or "none")

sol = adnb2_via_lnb2(inst)
print("generic solver agrees:", sol.v == (eq.v1, eq.v2))

# asking for too much makes the game infeasible
print(check_adnb2_feasible(Adnb2Instance([[2, 1], [1, 2]], c1=2, c2=2)))
