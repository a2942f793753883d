"""Lifts to the Weil bundle: functions, maps, fields, forms, metrics, sections, augmentation."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weil.algebra import algebra_from_spec, functional
from weil.errors import InputError, MatchingImpossible, NonAffineSection, OddDimensionRequired
from weil.expr import as_expr, parse
from weil.geometry import (
    KForm, Patch, SmoothMap, Tensor02, VectorField, exterior_derivative, levi_civita, lie_bracket,
)
from weil.lift import (
    LiftedPatch, affine_section, augmentation_forms, averaged_lift_vector, basis_sections, lift_connection,
    lift_form, lift_function, lift_map, lift_metric, lift_vector_field, projection_pushforward,
    pullback_projection,
)
from weil.sampling import compare_pairs

from _gen import rand_field, rand_form, rand_poly

P2 = Patch(("x", "y"))
P3 = Patch(("x", "y", "z"))


@pytest.fixture(params=["dual", "jet(2)", "truncated(2,1)"])
def A(request):
    return algebra_from_spec(request.param)


def test_lifted_coordinates(A):
    LP = LiftedPatch(P2, A)
    assert LP.patch.dim == 2 * A.dim
    assert LP.patch.coords[:2] == ("x_1", "x_2")
    assert LP.index(1, 0) == A.dim


def test_lifted_name_clash_rejected():
    with pytest.raises(InputError):
        LiftedPatch(Patch(("x", "x_1")), algebra_from_spec("dual"))


def test_real_part_is_pullback(A):
    LP = LiftedPatch(P2, A)
    f = parse("x^2*y + sin(x)")
    assert compare_pairs([(lift_function(f, LP).real_part(), parse("x_1^2*y_1 + sin(x_1)"))]).equal


@given(st.integers(0, 10_000))
def test_field_lift_properties(seed):
    rng = random.Random(seed)
    A = algebra_from_spec("jet(2)")
    LP = LiftedPatch(P2, A)
    X, Y = rand_field(rng, P2), rand_field(rng, P2)
    XA, YA = lift_vector_field(X, A), lift_vector_field(Y, A)
    assert compare_pairs(projection_pushforward(XA, LP).pairs_with(X)).equal
    assert compare_pairs(lie_bracket(XA, YA).pairs_with(lift_vector_field(lie_bracket(X, Y), A))).equal
    f = rand_poly(rng, P2.coords)
    lf, lXf = lift_function(f, LP), lift_function(X(f), LP)
    assert compare_pairs([(XA(lf[k]), lXf[k]) for k in range(A.dim)]).equal


def test_map_lift_is_functorial(A):
    phi = SmoothMap(P2, P2, [parse("x + y^2"), parse("x*y")])
    psi = SmoothMap(P2, P2, [parse("y"), parse("x - y")])
    lhs = lift_map(phi.compose(psi), A)
    rhs = lift_map(phi, A).compose(lift_map(psi, A))
    assert compare_pairs(list(zip(lhs.comps, rhs.comps))).equal


@given(st.integers(0, 10_000), st.sampled_from(["top", "mixed", "real"]))
def test_d_commutes_with_form_lift(seed, preset):
    A = algebra_from_spec("jet(2)")
    lam = functional(A, preset)
    w = rand_form(random.Random(seed), P3, 1)
    lhs = exterior_derivative(lift_form(w, lam))
    rhs = lift_form(exterior_derivative(w), lam)
    assert compare_pairs((lhs - rhs).pairs_with(KForm(lhs.patch, 2, {}))).equal


def test_lift_form_of_constant_symplectic_dual_top():
    A = algebra_from_spec("dual")
    w = lift_form(KForm(P2, 2, {(0, 1): as_expr(1)}), functional(A, "top"))
    # lambda_top(a_k a_m) is 1 exactly when k + m = 1 (0-based)
    assert set(w.comps) == {(0, 3), (1, 2)}


def test_pullback_projection(A):
    w = KForm(P2, 1, {(0,): parse("y")})
    p = pullback_projection(w, A)
    LP = LiftedPatch(P2, A)
    assert compare_pairs([(p[LP.index(0, 0)], parse("y_1"))]).equal


@pytest.mark.parametrize("spec", ["dual", "jet(2)"])
def test_metric_lift_and_connection_lift(spec):
    A = algebra_from_spec(spec)
    lam = functional(A, "top")
    g = Tensor02(P2, [[parse("1 + x^2"), as_expr(0)], [as_expr(0), as_expr(1)]])
    gl = lift_metric(g, lam)
    n = gl.patch.dim
    assert compare_pairs([(gl.comps[i][j], gl.comps[j][i]) for i in range(n) for j in range(n)]).equal
    assert compare_pairs(levi_civita(gl).pairs_with(lift_connection(levi_civita(g), A))).equal


def test_sections_and_averaged_lift():
    A = algebra_from_spec("jet(2)")
    LP = LiftedPatch(P2, A)
    secs = basis_sections(P2, A)
    assert len(secs) == A.dim
    X = VectorField(P2, [parse("-y"), parse("x")])
    Xt = averaged_lift_vector(X, A)
    assert compare_pairs(projection_pushforward(Xt, LP).pairs_with(X)).equal
    with pytest.raises(NonAffineSection):
        affine_section(P2, A, [["x^2", "0"], ["0", "y"]])
    with pytest.raises(InputError):  # first fibre coordinate must reproduce the base point
        basis_sections(P2, A, [SmoothMap(P2, LP.patch, [parse("x^2")] + [parse("0")] * 5)])
    S = affine_section(P2, A, [["y", "1"], ["0", "x"]])
    Xs = averaged_lift_vector(X, A, [S])
    assert compare_pairs(projection_pushforward(Xs, LP).pairs_with(X)).equal


def test_augmentation_rules():
    A3 = algebra_from_spec("jet(2)")
    LP = LiftedPatch(P3, A3)
    sigma, tau = augmentation_forms(LP, 2, functional(A3, "mixed"))
    assert compare_pairs((exterior_derivative(tau) - sigma).pairs_with(KForm(LP.patch, 2, {}))).equal
    with pytest.raises(MatchingImpossible):
        augmentation_forms(LP, 2, functional(A3, "top"))  # lambda(1) = 0
    with pytest.raises(OddDimensionRequired):
        A2 = algebra_from_spec("dual")
        augmentation_forms(LiftedPatch(P3, A2), 2, functional(A2, "top"))


@given(st.integers(0, 10_000))
def test_a_valued_wedge_compatibility(seed):
    from weil.geometry import wedge
    from weil.lift import lift_form_A

    rng = random.Random(seed)
    A = algebra_from_spec("jet(2)")
    a, b = rand_form(rng, P3, 1), rand_form(rng, P3, 1)
    lhs = lift_form_A(wedge(a, b), A)
    rhs = lift_form_A(a, A).wedge(lift_form_A(b, A))
    assert compare_pairs(lhs.pairs_with(rhs)).equal


@given(st.integers(0, 10_000), st.sampled_from(["top", "mixed"]), st.integers(1, 2))
def test_interior_product_commutes_with_lift(seed, preset, degree):
    from weil.geometry import interior_product

    rng = random.Random(seed)
    A = algebra_from_spec("jet(2)")
    lam = functional(A, preset)
    X, w = rand_field(rng, P3), rand_form(rng, P3, degree)
    lhs = interior_product(lift_vector_field(X, A), lift_form(w, lam))
    rhs = lift_form(interior_product(X, w), lam)
    assert compare_pairs((lhs - rhs).pairs_with(KForm(lhs.patch, lhs.degree, {}))).equal


def test_pullback_square(A):
    from weil.geometry import pullback

    lam = functional(A, [1] + [0] * (A.dim - 2) + [1])
    rng = random.Random(5)
    phi = SmoothMap(P2, P2, [parse("x + y^2"), parse("x*y - y")])
    for degree in (1, 2):
        w = rand_form(rng, P2, degree)
        lhs = pullback(lift_map(phi, A), lift_form(w, lam))
        rhs = lift_form(pullback(phi, w), lam)
        assert compare_pairs((lhs - rhs).pairs_with(KForm(lhs.patch, degree, {}))).equal
