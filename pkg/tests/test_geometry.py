"""Exterior calculus, brackets, metrics and connections on coordinate patches."""

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weil.errors import DegreeError, SingularJacobian
from weil.expr import ZERO, as_expr, parse
from weil.geometry import (
    Bivector, KForm, Patch, SmoothMap, Tensor02, Tensor11, VectorField, exterior_derivative,
    gauss_jordan_solve, interior_product, levi_civita, lie_bracket, lie_derivative, nijenhuis, pfaffian,
    pullback, ricci, schouten_ll, symbolic_det, wedge,
)
from weil.sampling import compare_pairs, expr_equiv

from _gen import rand_field, rand_form, rand_poly

P3 = Patch(("x", "y", "z"))
P2 = Patch(("x", "y"))


def _zero(form):
    return compare_pairs([(c, 0) for c in form.comps.values()]).equal


@given(st.integers(0, 10_000), st.integers(0, 1))
def test_d_squared_is_zero(seed, degree):
    w = rand_form(random.Random(seed), P3, degree, max_deg=3)
    assert _zero(exterior_derivative(exterior_derivative(w)))


def test_d_of_top_form_is_an_error():
    with pytest.raises(DegreeError):
        exterior_derivative(KForm(P2, 2, {(0, 1): parse("x")}))


@given(st.integers(0, 10_000))
def test_leibniz_rule(seed):
    rng = random.Random(seed)
    a, b = rand_form(rng, P3, 1), rand_form(rng, P3, 1)
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b))
    assert _zero(lhs - rhs)


@given(st.integers(0, 10_000))
def test_cartan_formula(seed):
    rng = random.Random(seed)
    X, w = rand_field(rng, P3), rand_form(rng, P3, 2)
    cartan = exterior_derivative(interior_product(X, w)) + interior_product(X, exterior_derivative(w))
    assert _zero(lie_derivative(X, w) - cartan)


@given(st.integers(0, 10_000))
def test_bracket_jacobi_identity(seed):
    rng = random.Random(seed)
    X, Y, Z = (rand_field(rng, P2) for _ in range(3))
    s = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
    assert compare_pairs([(c, 0) for c in s.comps]).equal


def test_pullback_commutes_with_d():
    phi = SmoothMap(P2, P2, [parse("x*y"), parse("x + y^2")])
    w = KForm(P2, 1, {(0,): parse("y^2"), (1,): parse("x*y")})
    assert _zero(pullback(phi, exterior_derivative(w)) - exterior_derivative(pullback(phi, w)))


def test_polar_christoffels():
    # dr^2 + r^2 dth^2: Gamma^r_thth = -r, Gamma^th_rth = 1/r
    P = Patch(("r", "th"))
    g = Tensor02(P, [[as_expr(1), ZERO], [ZERO, parse("r^2")]])
    G = levi_civita(g).gamma
    assert expr_equiv(G[0][1][1], parse("-r"))
    assert expr_equiv(G[1][0][1], parse("1/r"))
    assert expr_equiv(G[0][0][0], parse("0"))


def test_sphere_ricci():
    P = Patch(("t", "p"))
    g = Tensor02(P, [[as_expr(1), ZERO], [ZERO, parse("sin(t)^2")]])
    Ric = ricci(levi_civita(g))
    assert compare_pairs(Ric.pairs_with(g)).equal


def test_nijenhuis_constant_and_planted():
    J0 = Tensor11(P2, [[ZERO, as_expr(-1)], [as_expr(1), ZERO]])
    assert all(expr_equiv(c, 0) for c in _flat(nijenhuis(J0)))


def _flat(N):
    if isinstance(N, dict):
        return list(N.values())
    out = []
    for a in N:
        out.extend(_flat(a) if isinstance(a, (list, tuple)) else [a])
    return out


def test_schouten_poisson_and_non_poisson():
    L = Bivector.from_upper(P3, {(0, 1): "1"})
    assert all(expr_equiv(c, 0) for c in schouten_ll(L).comps.values())
    # z d_x^d_y + x d_x^d_z + d_y^d_z fails the Jacobi identity
    L2 = Bivector.from_upper(P3, {(0, 1): "z", (1, 2): "1", (0, 2): "x"})
    assert not all(expr_equiv(c, 0) for c in schouten_ll(L2).comps.values())


def test_symbolic_det_matches_numeric():
    m = [[parse("x"), parse("y"), parse("1")], [parse("x*y"), parse("2"), parse("z")], [parse("1"), parse("z^2"), parse("x")]]
    d = symbolic_det(m)
    env = {"x": 0.3, "y": -1.2, "z": 0.7}
    from weil.expr import evaluate

    num = np.linalg.det(np.array([[evaluate(c, env) for c in r] for r in m], dtype=float))
    assert abs(evaluate(d, env) - num) < 1e-12


def test_gauss_jordan_solve():
    m = [[parse("1"), parse("x")], [parse("y"), parse("1 + x*y + 1")]]
    sol = gauss_jordan_solve(m, [parse("1"), parse("0")])
    resid = [sum((m[i][j] * sol[j] for j in range(2)), ZERO) for i in range(2)]
    assert compare_pairs(list(zip(resid, [1, 0]))).equal
    with pytest.raises(SingularJacobian):
        gauss_jordan_solve([[parse("x"), parse("x")], [parse("1"), parse("1")]], [parse("1"), parse("0")])


def test_pfaffian():
    a = np.array([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]], dtype=float)
    assert pfaffian(a) == pytest.approx(6.0)
    rng = np.random.default_rng(0)
    b = rng.normal(size=(6, 6))
    b = b - b.T
    assert pfaffian(b) ** 2 == pytest.approx(np.linalg.det(b))


@pytest.mark.parametrize("g_rows", [
    [["1 + x^2", "x*y"], ["x*y", "2 + y^2"]],
    [["exp(2*x)", "0"], ["0", "exp(2*x)"]],
    [["y^-2", "0"], ["0", "y^-2"]],
])
def test_levi_civita_torsion_free_and_metric(g_rows):
    from weil.geometry import covariant_derivative

    g = Tensor02(P2, [[parse(c) for c in r] for r in g_rows])
    nab = levi_civita(g)
    assert compare_pairs(nab.torsion_pairs()).equal
    for i in range(2):
        Dg = covariant_derivative(nab, VectorField.coordinate(P2, i), g)
        assert compare_pairs([(c, 0) for row in Dg.comps for c in row]).equal


@given(st.integers(0, 10_000), st.integers(1, 2))
def test_graph_section_interior_product(seed, degree):
    """S*(i_{S_*Y} theta) = i_Y S*(theta) for a graph section S of the product patch (x, y, u) -> (x, y)."""
    rng = random.Random(seed)
    Q = Patch(("x", "y", "u"))
    h = rand_poly(rng, P2.coords)
    S = SmoothMap(P2, Q, [parse("x"), parse("y"), h])
    Y = rand_field(rng, P2)
    SY = VectorField(Q, list(Y.comps) + [Y(h)])  # pushforward along the image, extended constantly in u
    theta = rand_form(rng, Q, degree)
    lhs = pullback(S, interior_product(SY, theta))
    rhs = interior_product(Y, pullback(S, theta))
    assert _zero(lhs - rhs)
