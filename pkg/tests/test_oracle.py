import random
from fractions import Fraction as F

import pytest

from nashbargain import Face, InfeasibleGameError, normalize, solve
from nashbargain.games import Adnb2Instance, solve_adnb2
from nashbargain.oracle import (
    adnb2_via_lnb2,
    brute_force_faces,
    face_for_alpha,
    numeric_maximize,
    support_chain,
)
from support import box, random_game, triangle, two_facet


@pytest.mark.parametrize(
    "game, point",
    [(triangle(), (0.5, 0.5)), (triangle(2, 1), (2 / 3, 1 / 3)), (two_facet(), (2 / 3, 2 / 3))],
)
def test_numeric_examples(game, point):
    res = numeric_maximize(normalize(game), tol=1e-9)
    assert res.point == pytest.approx(point, abs=1e-7)
    assert res.tolerance == 1e-9


def test_numeric_box_corner():
    res = numeric_maximize(normalize(box()), tol=1e-9)
    assert res.point == pytest.approx((1, 1), abs=1e-7)


def test_numeric_infeasible():
    with pytest.raises(InfeasibleGameError):
        numeric_maximize(normalize(triangle(c1=1, c2=1)))


def test_sweep_examples():
    tri = brute_force_faces(normalize(triangle()), grid=16)
    assert [f for f in tri if f.is_facet] == [Face.facet(1, 1, (0, 1), (1, 0))]

    faces = brute_force_faces(normalize(two_facet()), grid=64)
    facets = [f for f in faces if f.is_facet]
    assert [f.alpha for f in facets] == [F(1, 2), 2]
    middle = [f for f in faces if not f.is_facet and f.coords == (F(2, 3), F(2, 3))]
    assert len(middle) == 1 and (middle[0].alpha1, middle[0].alpha2) == (F(1, 2), 2)

    corner = brute_force_faces(normalize(box()), grid=16)
    assert len(corner) == 1 and corner[0].coords == (1, 1)


def test_sweep_contains_the_solution_face():
    rng = random.Random(21)
    for _ in range(10):
        game = random_game(rng, max_m=4, max_n=3)
        sol = solve(game)
        faces = brute_force_faces(normalize(game), grid=128)
        if sol.face.is_facet:
            assert sol.face in faces
        else:
            assert sol.face.coords in [f.coords for f in faces if not f.is_facet]


def test_support_chain_is_concave():
    rng = random.Random(3)
    for _ in range(10):
        chain = support_chain(normalize(random_game(rng)))
        slopes = [(p[0] - q[0]) / (q[1] - p[1]) for p, q in zip(chain, chain[1:])]
        assert all(s > 0 for s in slopes)
        assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)


def test_face_for_alpha():
    faces = brute_force_faces(normalize(two_facet()), grid=8)
    assert face_for_alpha(faces, 1).coords == (F(2, 3), F(2, 3))
    assert face_for_alpha(faces, 2).is_facet


@pytest.mark.parametrize(
    "u, w, v",
    [([[2, 1], [1, 2]], (1, 1), (2, 2)), ([[1], [1]], (1, 1), (F(1, 2), F(1, 2))), ([[1], [1]], (3, 1), (F(3, 4), F(1, 4)))],
)
def test_adnb2_via_generic_solver(u, w, v):
    inst = Adnb2Instance(u, w1=w[0], w2=w[1])
    assert adnb2_via_lnb2(inst).v == v
    eq = solve_adnb2(inst)
    assert (eq.v1, eq.v2) == v
