"""Weil algebras: presets, axioms, element arithmetic, functionals."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weil.algebra import (
    WeilAlgebra, algebra_from_spec, functional, make_dual_numbers, make_jet_algebra, make_truncated_poly,
    verify_axioms,
)
from weil.errors import AlgebraMismatch, InputError, InsufficientDerivatives, ScalarKindError, ZeroRealPart
from weil.expr import parse, evaluate

from _gen import rand_element

SPECS = ["dual", "jet(2)", "jet(3)", "jet(4)", "truncated(2,2)", "truncated(3,1)"]


@pytest.mark.parametrize("spec, dim", [("dual", 2), ("jet(3)", 4), ("truncated(2,2)", 6), ("truncated(3,1)", 4)])
def test_preset_dimensions(spec, dim):
    assert algebra_from_spec(spec).dim == dim


@pytest.mark.parametrize("spec", SPECS)
def test_axioms_hold(spec):
    rep = verify_axioms(algebra_from_spec(spec))
    assert rep.passed, rep.format_text()


def test_non_nilpotent_table_rejected():
    # a2 * a2 = a2 is idempotent, so the ideal never dies
    A = WeilAlgebra([[[1, 0], [0, 1]], [[0, 1], [0, 1]]], name="idem")
    assert A.nilpotency_order is None
    assert not verify_axioms(A).passed


def test_bad_specs():
    for spec in ("jet(0)", "poly(2)", "truncated(0,1)"):
        with pytest.raises(InputError):
            algebra_from_spec(spec)


@pytest.fixture(params=SPECS)
def algebra(request):
    return algebra_from_spec(request.param)


def test_ring_laws_random(algebra):
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = (rand_element(rng, algebra) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * algebra.one() == a


def test_inverse(algebra):
    rng = random.Random(3)
    for _ in range(10):
        a = rand_element(rng, algebra)
        if a.real_part() == 0:
            continue
        assert a * a.invert() == algebra.one()


def test_ideal_element_is_not_invertible():
    A = make_dual_numbers()
    with pytest.raises(ZeroRealPart):
        A.basis(1).invert()


def test_mixed_kinds_rejected():
    A = make_jet_algebra(2)
    with pytest.raises(ScalarKindError):
        A.element([Fraction(1), 0.5, Fraction(0)])


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        make_dual_numbers().one() + make_jet_algebra(2).one()


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_dual_numbers_differentiate(a, b):
    # f(a + eps) = f(a) + f'(a) eps
    A = make_dual_numbers()
    x = A.element([a, 1.0])
    v = evaluate(parse("exp(x)*sin(x) + x^3"), {"x": x})
    assert math.isclose(v.coeffs[0], math.exp(a) * math.sin(a) + a ** 3, rel_tol=1e-12, abs_tol=1e-12)
    d = math.exp(a) * (math.sin(a) + math.cos(a)) + 3 * a * a
    assert math.isclose(v.coeffs[1], d, rel_tol=1e-12, abs_tol=1e-12)


def test_jet_series_taylor_coefficients():
    A = make_jet_algebra(3)
    x = A.element([0.0, 1.0, 0.0, 0.0])
    v = evaluate(parse("exp(x)"), {"x": x})
    assert [round(c, 12) for c in v.coeffs] == [1.0, 1.0, 0.5, round(1 / 6, 12)]


def test_series_needs_enough_derivatives():
    A = make_jet_algebra(3)
    with pytest.raises(InsufficientDerivatives):
        A.basis(1).apply_series([1, 1])


def test_functional_presets():
    A = make_jet_algebra(2)
    top = functional(A, "top")
    assert top.nondegenerate and top.signature == (2, 1, 0)
    assert not functional(A, "real").nondegenerate
    mixed = functional(A, [1, 0, 1])
    assert mixed.det == -1
    # dual basis: lam(a_i b_j) = delta_ij
    for i in range(3):
        for j in range(3):
            assert top(A.basis(i) * A.element(top.dual_basis[j])) == int(i == j)


def test_truncated_truncates():
    A = make_truncated_poly(2, 2)
    t1 = A.basis(1)
    assert (t1 * t1 * t1).is_zero()
    assert not (t1 * t1).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_jet_nilpotency_order(k):
    assert make_jet_algebra(k).nilpotency_order == k + 1


@pytest.mark.parametrize("n, k", [(1, 3), (2, 2), (3, 1), (2, 3)])
def test_truncated_dimension(n, k):
    assert make_truncated_poly(n, k).dim == math.comb(n + k, k)


@pytest.mark.parametrize("text, split", [("sin(x)*cos(x)", ("sin(x)", "cos(x)")), ("exp(x)*exp(x)", ("exp(x)", "exp(x)"))])
def test_series_multiplicative(algebra, text, split):
    rng = random.Random(11)
    for _ in range(5):
        z = algebra.element([float(Fraction(rng.randint(-6, 6), rng.randint(1, 3))) for _ in range(algebra.dim)])
        lhs = evaluate(parse(text), {"x": z})
        rhs = evaluate(parse(split[0]), {"x": z}) * evaluate(parse(split[1]), {"x": z})
        assert max(abs(a - b) for a, b in zip(lhs.coeffs, rhs.coeffs)) < 1e-12


def test_float_inverse_residual(algebra):
    rng = random.Random(2)
    for _ in range(10):
        a = rand_element(rng, algebra, "float")
        if abs(a.real_part()) < 0.1:
            continue
        r = a * a.invert() - algebra.one("float")
        assert max(abs(c) for c in r.coeffs) < 1e-12


@pytest.mark.parametrize("values", [[1, 0, 0], [0, 0, 1], [1, 0, 1], [2, -1, 3]])
def test_gram_symmetric(values):
    lam = functional(make_jet_algebra(2), values)
    G = lam.gram
    assert all(G[i][j] == G[j][i] for i in range(3) for j in range(3))
