import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nashbargain.lp import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    LpInputError,
    LpProblem,
    certificate_violations,
    solve_lp,
)
from support import certificate_residuals, enumerate_lp, random_lp


def test_two_facet_polytope():
    p = LpProblem([1, 1], [([1, F(1, 2)], LE, 1), ([F(1, 2), 1], LE, 1)], "max")
    out = solve_lp(p)
    assert out.status == OPTIMAL
    assert out.primal == (F(2, 3), F(2, 3))
    assert out.value == F(4, 3)
    assert out.dual == (F(2, 3), F(2, 3))
    assert certificate_violations(p, out) == []


def test_minimize_with_ge_rows():
    # min x + 2y  s.t. x + y >= 2, x <= 1
    p = LpProblem([1, 2], [([1, 1], GE, 2), ([1, 0], LE, 1)], "min")
    out = solve_lp(p)
    assert out.status == OPTIMAL
    assert out.primal == (1, 1) and out.value == 3
    assert certificate_residuals(p, out.primal, out.dual, out.value) == []


def test_infeasible_and_unbounded():
    assert solve_lp(LpProblem([1], [([1], LE, -1)], "max")).status == INFEASIBLE
    assert solve_lp(LpProblem([1, 0], [([0, 1], LE, 1)], "max")).status == UNBOUNDED
    # equality system with no nonnegative solution
    assert solve_lp(LpProblem([0, 0], [([1, 1], EQ, -2)], "max")).status == INFEASIBLE


def test_free_variable():
    # max -x  s.t. x >= -3, x free
    p = LpProblem([-1], [([1], GE, -3)], "max", nonneg=[False])
    out = solve_lp(p)
    assert out.primal == (-3,) and out.value == 3
    assert certificate_violations(p, out) == []


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule
    p = LpProblem(
        [F(3, 4), -150, F(1, 50), -6],
        [
            ([F(1, 4), -60, F(-1, 25), 9], LE, 0),
            ([F(1, 2), -90, F(-1, 50), 3], LE, 0),
            ([0, 0, 1, 0], LE, 1),
        ],
        "max",
    )
    out = solve_lp(p)
    assert out.status == OPTIMAL and out.value == F(1, 20)
    assert certificate_violations(p, out) == []


def test_redundant_equalities():
    p = LpProblem([1, 1], [([1, 1], EQ, 2), ([2, 2], EQ, 4), ([1, 0], LE, 1)], "max")
    out = solve_lp(p)
    assert out.value == 2
    assert certificate_violations(p, out) == []


def test_deterministic():
    p = random_lp(random.Random(4))
    assert solve_lp(p) == solve_lp(p)


def test_input_validation():
    with pytest.raises(LpInputError):
        LpProblem([1, 2], [([1], LE, 1)], "max")
    with pytest.raises(LpInputError):
        LpProblem([1], [([1], "<", 1)], "max")
    with pytest.raises(LpInputError):
        LpProblem([1], [([1], LE, 1)], "sideways")
    with pytest.raises((LpInputError, TypeError)):
        LpProblem([0.5], [([1], LE, 1)], "max")


@given(st.integers(min_value=0, max_value=2**32))
def test_matches_vertex_enumeration(seed):
    p = random_lp(random.Random(seed), max_vars=4, max_rows=4)
    status, value = enumerate_lp(p)
    out = solve_lp(p)
    assert out.status == status
    if status == OPTIMAL:
        assert out.value == value
        assert certificate_residuals(p, out.primal, out.dual, out.value) == []
