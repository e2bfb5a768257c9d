"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's rule. The tableau is kept in
integer-preserving (Edmonds/Bareiss) form: every entry is an integer and
the true tableau is ``T / D`` for a single positive integer ``D``. Each
pivot divides exactly by the previous ``D``, so no gcd work is done
inside the inner loop and entries stay bounded by subdeterminants of the
input.

Duals are read off the columns that formed the initial identity basis
(slacks and artificials), i.e. from the final basis inverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rational import as_fraction, clear_denominators

__all__ = [
    "LE",
    "EQ",
    "GE",
    "MAXIMIZE",
    "MINIMIZE",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LpInputError",
    "LpProblem",
    "LpOutcome",
    "solve_lp",
    "certificate_violations",
]

LE, EQ, GE = "<=", "==", ">="
MAXIMIZE, MINIMIZE = "max", "min"
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

_RELATIONS = {LE, EQ, GE, "=", "≤", "≥"}
_CANON = {"=": EQ, "≤": LE, "≥": GE}


class LpInputError(ValueError):
    """Malformed LP (dimension mismatch, unknown relation, ...)."""


@dataclass(frozen=True)
class LpProblem:
    """``objective`` sense over ``constraints`` rows ``(row, relation, rhs)``.

    ``nonneg[i]`` False marks variable ``i`` as free. Omitted means every
    variable is nonnegative.
    """

    objective: tuple
    constraints: tuple = ()
    sense: str = MAXIMIZE
    nonneg: Optional[tuple] = None

    def __post_init__(self):
        obj = tuple(as_fraction(v) for v in self.objective)
        n = len(obj)
        if n < 1:
            raise LpInputError("an LP needs at least one variable")
        if self.sense not in (MAXIMIZE, MINIMIZE):
            raise LpInputError(f"unknown objective sense {self.sense!r}")
        rows = []
        for k, con in enumerate(self.constraints):
            try:
                row, rel, rhs = con
            except (TypeError, ValueError):
                raise LpInputError(f"constraint {k} is not a (row, relation, rhs) triple") from None
            if rel not in _RELATIONS:
                raise LpInputError(f"constraint {k}: unknown relation {rel!r}")
            row = tuple(as_fraction(v) for v in row)
            if len(row) != n:
                raise LpInputError(f"constraint {k} has {len(row)} coefficients, expected {n}")
            rows.append((row, _CANON.get(rel, rel), as_fraction(rhs)))
        nonneg = (True,) * n if self.nonneg is None else tuple(bool(b) for b in self.nonneg)
        if len(nonneg) != n:
            raise LpInputError(f"nonneg has length {len(nonneg)}, expected {n}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(rows))
        object.__setattr__(self, "nonneg", nonneg)

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: str
    primal: Optional[tuple] = None
    value: Optional[Fraction] = None
    dual: Optional[tuple] = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Integer tableau: constraint rows, then the phase-2 and phase-1 rows.

    Objective rows hold reduced costs (entering column when > 0) and, in
    the last slot, minus the objective value, all scaled by ``D``.
    """

    def __init__(self, rows, basis, n_cols):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols
        self.D = 1
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        rows, D = self.rows, self.D
        prow = rows[r]
        p = prow[c]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                new = [v * p for v in row]
                for j in nz:
                    new[j] -= f * prow[j]
                rows[i] = [v // D for v in new]
            elif p != D:
                rows[i] = [v * p // D for v in row]
        self.basis[r] = c
        self.D = p
        if p < 0:
            # keep D > 0 so that signs of entries are signs of values
            self.rows = [[-v for v in row] for row in self.rows]
            self.D = -p
        self.pivots += 1

    def entering(self, obj: int, allowed: int) -> Optional[int]:
        row = self.rows[obj]
        for j in range(allowed):
            if row[j] > 0:
                return j
        return None

    def leaving(self, c: int, m: int) -> Optional[int]:
        best = None
        rhs = self.n_cols
        for i in range(m):
            a = self.rows[i][c]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            b = self.rows[best]
            # compare rhs_i / a  against  rhs_best / b[c]
            lhs = self.rows[i][rhs] * b[c]
            rhs_best = b[rhs] * a
            if lhs < rhs_best or (lhs == rhs_best and self.basis[i] < self.basis[best]):
                best = i
        return best

    def run(self, obj: int, allowed: int, m: int) -> bool:
        """Optimize objective row ``obj``; False when unbounded."""
        while True:
            c = self.entering(obj, allowed)
            if c is None:
                return True
            r = self.leaving(c, m)
            if r is None:
                return False
            self.pivot(r, c)


def solve_lp(problem: LpProblem) -> LpOutcome:
    """Solve ``problem`` exactly.

    The outcome is deterministic for a given problem. When optimal,
    ``dual`` has one multiplier per constraint with the usual sign
    conventions (for a maximization: >= 0 on ``<=`` rows, <= 0 on ``>=``
    rows, free on equalities) and ``value == sum(rhs * dual)`` exactly.
    """
    if not isinstance(problem, LpProblem):
        raise LpInputError("solve_lp expects an LpProblem")
    n = problem.n_vars
    m = len(problem.constraints)

    # structural columns: free variables split into (plus, minus)
    var_cols = []
    n_struct = 0
    for i in range(n):
        if problem.nonneg[i]:
            var_cols.append((n_struct, None))
            n_struct += 1
        else:
            var_cols.append((n_struct, n_struct + 1))
            n_struct += 2

    def expand(row):
        out = [Fraction(0)] * n_struct
        for i, v in enumerate(row):
            pos, neg = var_cols[i]
            out[pos] = v
            if neg is not None:
                out[neg] = -v
        return out

    int_rows, rels, row_scale = [], [], []
    for row, rel, rhs in problem.constraints:
        ints, scale = clear_denominators(expand(row) + [rhs])
        sign = 1
        if ints[-1] < 0:
            sign = -1
            ints = [-v for v in ints]
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        int_rows.append(ints)
        rels.append(rel)
        row_scale.append(sign * scale)

    n_slack = sum(1 for rel in rels if rel != EQ)
    n_art = sum(1 for rel in rels if rel != LE)
    slack0 = n_struct
    art0 = n_struct + n_slack
    n_cols = art0 + n_art

    rows, basis, ident = [], [], []
    s_next, a_next = slack0, art0
    for ints, rel in zip(int_rows, rels):
        row = ints[:-1] + [0] * (n_slack + n_art) + [ints[-1]]
        if rel == LE:
            row[s_next] = 1
            basis.append(s_next)
            ident.append(s_next)
            s_next += 1
        else:
            if rel == GE:
                row[s_next] = -1
                s_next += 1
            row[a_next] = 1
            basis.append(a_next)
            ident.append(a_next)
            a_next += 1
        rows.append(row)

    sense_sign = 1 if problem.sense == MAXIMIZE else -1
    cost, cost_scale = clear_denominators([sense_sign * v for v in expand(problem.objective)])
    zrow = cost + [0] * (n_slack + n_art + 1)
    wrow = [0] * (n_cols + 1)
    for row, b in zip(rows, basis):
        if b >= art0:
            for j in range(n_cols + 1):
                if j < art0 or j == n_cols:
                    wrow[j] += row[j]
    rows.append(zrow)
    rows.append(wrow)
    tab = _Tableau(rows, basis, n_cols)
    Z, W = m, m + 1

    if n_art:
        tab.run(W, art0, m)
        if tab.rows[W][n_cols] != 0:
            return LpOutcome(INFEASIBLE, pivots=tab.pivots)
        for i in range(m):
            if tab.basis[i] >= art0:
                for j in range(art0):
                    if tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break

    if not tab.run(Z, art0, m):
        return LpOutcome(UNBOUNDED, pivots=tab.pivots)

    D = tab.D
    col_val = [Fraction(0)] * n_cols
    for i, b in enumerate(tab.basis):
        col_val[b] = Fraction(tab.rows[i][n_cols], D)
    primal = []
    for pos, neg in var_cols:
        v = col_val[pos]
        if neg is not None:
            v -= col_val[neg]
        primal.append(v)
    primal = tuple(primal)
    value = sum((c * x for c, x in zip(problem.objective, primal)), Fraction(0))

    zfin = tab.rows[Z]
    dual = tuple(
        sense_sign * Fraction(-zfin[ident[j]], D * cost_scale) * row_scale[j] for j in range(m)
    )
    return LpOutcome(OPTIMAL, primal, value, dual, pivots=tab.pivots)


def certificate_violations(problem: LpProblem, outcome: LpOutcome) -> list:
    """List every exact optimality-certificate identity that fails.

    Checks primal feasibility, dual sign and dual feasibility, strong
    duality and complementary slackness. Empty list means the outcome is
    a proof of optimality.
    """
    bad = []
    if not outcome.optimal:
        return ["outcome is not optimal"]
    x, y = outcome.primal, outcome.dual
    maximize = problem.sense == MAXIMIZE
    for j, (row, rel, rhs) in enumerate(problem.constraints):
        lhs = sum((a * v for a, v in zip(row, x)), Fraction(0))
        if (rel == LE and lhs > rhs) or (rel == GE and lhs < rhs) or (rel == EQ and lhs != rhs):
            bad.append(f"row {j} violated: {lhs} {rel} {rhs}")
        # sign of the multiplier: a tighter rhs may only hurt the objective
        loosen_up = rel == LE
        if rel != EQ:
            ok = (y[j] >= 0) if (loosen_up == maximize) else (y[j] <= 0)
            if not ok:
                bad.append(f"dual {j} has wrong sign: {y[j]}")
        if y[j] * (rhs - lhs) != 0:
            bad.append(f"complementary slackness fails on row {j}")
    for i in range(problem.n_vars):
        if problem.nonneg[i] and x[i] < 0:
            bad.append(f"x{i} negative")
        col = sum((row[i] * y[j] for j, (row, _, _) in enumerate(problem.constraints)), Fraction(0))
        red = problem.objective[i] - col
        if problem.nonneg[i]:
            if (maximize and red > 0) or (not maximize and red < 0):
                bad.append(f"dual infeasible on x{i}: reduced cost {red}")
            if red * x[i] != 0:
                bad.append(f"complementary slackness fails on x{i}")
        elif red != 0:
            bad.append(f"dual infeasible on free x{i}: reduced cost {red}")
    dual_value = sum((rhs * v for (_, _, rhs), v in zip(problem.constraints, y)), Fraction(0))
    if dual_value != outcome.value:
        bad.append(f"duality gap: primal {outcome.value} dual {dual_value}")
    return bad
