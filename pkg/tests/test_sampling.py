"""Seeded equivalence testing: exact rational path, float path, sampling domain."""

import numpy as np
import pytest

from weil.errors import UnsampleablePoint
from weil.expr import parse
from weil.report import EXACT_ZERO
from weil.sampling import SamplePolicy, compare, compare_pairs, expr_equiv, float_points, identity_check


def test_polynomial_identity_is_exact():
    c = compare(parse("(x + y)^2"), parse("x^2 + 2*x*y + y^2"))
    assert c.equal and c.exact and c.max_residual == EXACT_ZERO


def test_polynomial_difference_detected_exactly():
    c = compare(parse("x^2"), parse("x^2 + x*y/1000"))
    assert not c.equal and c.exact and c.max_residual > 0


def test_analytic_identity_uses_floats():
    c = compare(parse("sin(x)^2 + cos(x)^2"), parse("1"))
    assert c.equal and not c.exact
    assert c.max_residual < 1e-12


def test_small_perturbation_rejected_at_tolerance():
    assert not expr_equiv(parse("exp(x)"), parse("exp(x) + 1/1000000"))
    assert expr_equiv(parse("exp(x)"), parse("exp(x) + 1/1000000"), SamplePolicy(tol=1e-3))


def test_points_avoid_singularities():
    pts = float_points(["x"], SamplePolicy(n=50), [parse("log(x)")])
    assert np.all(pts["x"] > 0)


def test_unsampleable_domain_raises():
    with pytest.raises(UnsampleablePoint):
        compare(parse("log(-x^2 - 1)"), parse("0"))


def test_seed_determinism():
    a = float_points(["x", "y"], SamplePolicy(seed=11, n=5))
    b = float_points(["x", "y"], SamplePolicy(seed=11, n=5))
    c = float_points(["x", "y"], SamplePolicy(seed=12, n=5))
    assert all(np.array_equal(a[k], b[k]) for k in a)
    assert not np.array_equal(a["x"], c["x"])


def test_structural_zero_needs_no_samples():
    c = compare_pairs([(parse("x"), parse("x"))])
    assert c.equal and c.samples_used == 0


def test_identity_check_report_entry():
    chk = identity_check("square", [(parse("x*x"), parse("x^2"))])
    assert chk.passed and chk.name == "square"
