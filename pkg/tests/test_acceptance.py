"""Acceptance criteria 1-18.

Each test prints one ``CRITERION n: PASS|FAIL`` line (collected again in the
terminal summary) and then asserts.  Criterion 5 cannot hold as stated and is
marked ``xfail(strict=True)``: its FAIL line is printed and the test must keep
failing (see README, "Known failing criterion").

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from weil import fixtures as fx
from weil.algebra import algebra_from_spec, functional, verify_axioms
from weil.expr import add, evaluate, fn, mul, parse
from weil.geometry import (
    Distribution, Patch, SmoothMap, VectorField, exterior_derivative, levi_civita, lie_bracket,
)
from weil.lift import (
    LiftConfig, LiftedPatch, lift_connection, lift_form, lift_function, lift_metric, lift_vector_field,
    projection_pushforward, suspension,
)
from weil.report import EXACT_ZERO
from weil.sampling import SamplePolicy, compare_pairs
from weil.structures import (
    KINDS, geodesic_check, killing_check, lagrangian_check, lift_structure, lifted_curve, reeb_contact,
    reeb_cosymplectic, top_coefficient_values, verify_bracket_generating, verify_jacobi,
    verify_orientation_lift, verify_structure, verify_symplectic, verify_walker,
)

from _gen import rand_element, rand_field, rand_form, rand_poly

pytestmark = pytest.mark.acceptance

SEED = 20240601
POLICY = SamplePolicy(seed=0)


def record(n, title, ok, elapsed, limit, detail=""):
    """Print and collect the criterion line; pass requires the claim and the time limit."""
    in_time = elapsed < limit
    ok_all = bool(ok) and in_time
    line = f"CRITERION {n}: {'PASS' if ok_all else 'FAIL'}  {title}  [{elapsed:.2f}s, limit {limit}s]"
    if not in_time:
        line += "  over time limit"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok_all


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def cfg(spec, lam="top", policy=POLICY, **kw):
    A = algebra_from_spec(spec)
    return LiftConfig(A, functional(A, lam), policy=policy, **kw)


# ---------------------------------------------------------------------------


def test_criterion_01_algebra_axioms():
    specs = ["dual", "jet(2)", "jet(3)", "jet(4)", "truncated(2,2)", "truncated(3,1)"]
    with Timer() as t:
        reps = [verify_axioms(algebra_from_spec(s)) for s in specs]
    exact = all(c.max_residual == EXACT_ZERO for r in reps for c in r.checks)
    names = {"commutativity", "associativity", "unit", "nilpotency"}
    ok = all(r.passed and names <= {c.name for c in r.checks} for r in reps) and exact
    assert record(1, "algebra axioms, exact", ok, t.elapsed, 5, f"{len(specs)} algebras")


def _analytic(rng, names):
    base = add(parse(names[0]), rand_poly(rng, names, max_deg=2, terms=2))  # never constant
    return mul(fn(rng.choice(["sin", "cos", "exp"]), base), rand_poly(rng, names, max_deg=1, terms=2))


def _el(v, A, kind="rational"):
    """Constant expressions evaluate to bare scalars; promote them to elements of the point's kind."""
    if hasattr(v, "coeffs"):
        return v
    return A.scalar(float(v), "float") if kind == "float" else A.scalar(v)


def test_criterion_02_eval_homomorphism():
    rng = random.Random(SEED)
    names = ["x", "y"]
    algebras = [algebra_from_spec(s) for s in ("dual", "jet(2)", "jet(3)")]
    worst = 0.0
    exact_ok = True
    with Timer() as t:
        for _ in range(200):
            A = rng.choice(algebras)
            # rational polynomials at a rational A-point: exact equality
            f, g = rand_poly(rng, names, 3), rand_poly(rng, names, 3)
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            p = {v: rand_element(rng, A) for v in names}
            ev = lambda e, pt, kind="rational": _el(evaluate(e, pt), A, kind)  # noqa: E731
            ef, eg = ev(f, p), ev(g, p)
            exact_ok &= ev(mul(f, g), p) == ef * eg
            exact_ok &= ev(add(f, mul(c, g)), p) == ef + eg.scale(c)
            # analytic functions at a float A-point: agreement to 1e-9
            fa, ga = _analytic(rng, names), _analytic(rng, names)
            q = {v: rand_element(rng, A, "float") for v in names}
            fq, gq = ev(fa, q, "float"), ev(ga, q, "float")
            pairs = ((ev(mul(fa, ga), q, "float"), fq * gq),
                     (ev(add(fa, mul(c, ga)), q, "float"), fq + gq.scale(float(c))))
            for lhs, rhs in pairs:
                d = max(abs(a - b) / max(1.0, abs(a), abs(b)) for a, b in zip(lhs.coeffs, rhs.coeffs))
                worst = max(worst, d)
    float_ok = worst < 1e-9
    ok = bool(exact_ok) and float_ok
    assert record(2, "evaluation is an algebra homomorphism (200 cases)", ok, t.elapsed, 30,
                  f"exact={bool(exact_ok)}, worst float residual {worst:.2e}")


def test_criterion_03_vector_field_lift():
    rng = random.Random(SEED + 3)
    P = Patch(("x", "y"))
    failures = 0
    with Timer() as t:
        for spec in ("dual", "jet(2)"):
            A = algebra_from_spec(spec)
            LP = LiftedPatch(P, A)
            for _ in range(50):
                X, Y = rand_field(rng, P), rand_field(rng, P)
                XA, YA = lift_vector_field(X, A), lift_vector_field(Y, A)
                f = rand_poly(rng, P.coords, 3)
                lf, lXf = lift_function(f, LP), lift_function(X(f), LP)
                ok = (compare_pairs(projection_pushforward(XA, LP, POLICY).pairs_with(X), POLICY).equal
                      and compare_pairs(lie_bracket(XA, YA).pairs_with(lift_vector_field(lie_bracket(X, Y), A)),
                                        POLICY).equal
                      and compare_pairs([(XA(lf[k]), lXf[k]) for k in range(A.dim)], POLICY).equal)
                failures += not ok
    assert record(3, "X^A: projection, bracket homomorphism, X^A f^A = (Xf)^A", failures == 0, t.elapsed, 60,
                  f"100 field pairs, {failures} failures")


def test_criterion_04_d_commutes_with_lift():
    rng = random.Random(SEED + 4)
    P = Patch(("x", "y", "z"))
    forms = [rand_form(rng, P, 1 + (i % 2)) for i in range(50)]
    failures = 0
    with Timer() as t:
        for spec in ("dual", "jet(2)"):
            A = algebra_from_spec(spec)
            for preset in ("real", "top", "mixed"):
                lam = functional(A, preset)
                for w in forms:
                    lhs = exterior_derivative(lift_form(w, lam))
                    rhs = lift_form(exterior_derivative(w), lam)
                    diff = lhs - rhs
                    failures += not compare_pairs([(c, 0) for c in diff.comps.values()], POLICY).equal
    assert record(4, "d(lift_form) = lift_form(d)", failures == 0, t.elapsed, 60,
                  f"300 cases, {failures} failures")


@pytest.mark.xfail(strict=True, reason="the real lambda-lift of an lcs form is not lcs; see README")
def test_criterion_05_lcs_lift():
    with Timer() as t:
        literal = lift_structure(fx.lcs_r4(theta_sign=-1), cfg("dual", "top"))
        corrected = lift_structure(fx.lcs_r4(theta_sign=1), cfg("dual", "top"))
    ok = literal.report.passed
    detail = (f"theta=-dx1 fails {literal.report.failed()}; theta=+dx1 fails {corrected.report.failed()}; "
              f"A-valued identity holds: {corrected.report['A-omega-lee-identity'].passed}")
    assert record(5, "lcs fixture lifts to lcs under (dual, top)", ok, t.elapsed, 30, detail)


def test_criterion_06_cosymplectic_example():
    with Timer() as t:
        res = lift_structure(fx.cosymplectic_r3(), cfg("jet(2)", "mixed"))
        m = fx.cosymplectic_r3()
        base = reeb_cosymplectic(m["omega"], m["eta"], POLICY)
    rep = res.report
    dz = VectorField(fx.R3, [0, 0, 1])
    ok = (rep.passed and res.manifest.patch.dim == 9 and rep["reeb-unique"].passed
          and rep["reeb-projects"].passed and compare_pairs(base.field.pairs_with(dz)).equal
          and not res.extras["unaugmented"].passed and res.extras["unaugmented_kernel_dim"] == 2)
    assert record(6, "cosymplectic jet(2) lift: augmented passes, unaugmented kernel 2", ok, t.elapsed, 60,
                  f"unaugmented kernel dim {res.extras['unaugmented_kernel_dim']}")


def test_criterion_07_metric_lifts():
    A = algebra_from_spec("dual")
    lam = functional(A, "top")
    results = {}
    with Timer() as t:
        for label, m in (("euclidean", fx.riemannian_flat()), ("conformal", fx.conformal_plane())):
            g = m["g"]
            gl = lift_metric(g, lam, policy=POLICY)
            results[f"{label}-LC"] = compare_pairs(
                levi_civita(gl, POLICY).pairs_with(lift_connection(levi_civita(g, POLICY), A)), POLICY).equal
            res = lift_structure(m, LiftConfig(A, lam, policy=POLICY))
            results[f"{label}-signature"] = res.report["signature-gram-product"].passed
            results[f"{label}-note"] = any("signature" in n for n in res.report.notes)
        g = fx.euclidean(fx.R2)
        gl = lift_metric(g, lam, policy=POLICY)
        rot = VectorField(fx.R2, [parse("-y"), parse("x")])
        results["killing"] = (killing_check(rot, g, POLICY).passed
                              and killing_check(lift_vector_field(rot, A), gl, POLICY).passed)
        line = ["1 + 2*t", "3*t - 1"]
        results["geodesic"] = (geodesic_check(g, line, policy=POLICY).passed
                               and geodesic_check(gl, lifted_curve(line, fx.R2, A), policy=POLICY).passed)
    bad = [k for k, v in results.items() if not v]
    assert record(7, "metric lifts: LC commutes, Killing, geodesics, Gram-product signature", not bad,
                  t.elapsed, 120, f"failed: {bad}" if bad else "discrepancy note emitted")


def test_criterion_08_kahler():
    with Timer() as t:
        res = lift_structure(fx.kahler_r2(), cfg("dual", "top"))
        neg, _ = fx.mutation("kahler")
        nrep = verify_structure(neg, POLICY)
    rep = res.report
    ok = rep.passed and rep["nijenhuis"].passed and rep["nabla-J"].passed and nrep.failed() == ["nijenhuis"]
    assert record(8, "Kahler lift passes; planted J fails only Nijenhuis", ok, t.elapsed, 60,
                  f"negative fails {nrep.failed()}")


def test_criterion_09_contact():
    p20 = POLICY.with_(n=20)
    with Timer() as t:
        res = lift_structure(fx.contact_r3(), cfg("jet(2)", "mixed", policy=p20))
        beta = res.manifest["beta"]
        vals, size = top_coefficient_values(exterior_derivative(beta), beta, p20)
        sol = reeb_contact(beta, p20)
    resid = sol.residual
    resid_ok = resid == EXACT_ZERO or (isinstance(resid, float) and resid < 1e-9)
    ok = (res.report.passed and size == 20 and float(np.min(np.abs(vals))) > 1e-6 and resid_ok
          and res.report["reeb-projects"].passed)
    assert record(9, "contact jet(2) lift: nondegenerate at 20 samples, Reeb projects to d/dz", ok, t.elapsed, 60,
                  f"min |beta^(dbeta)^4| = {float(np.min(np.abs(vals))):.3g}, Reeb residual {resid}")


def test_criterion_10_orientation_sign_law():
    rng = random.Random(SEED + 10)
    P = fx.R2
    failures = 0
    with Timer() as t:
        for spec in ("dual", "jet(2)"):
            A = algebra_from_spec(spec)
            for _ in range(10):
                # small perturbation of the identity keeps the Jacobian invertible on the sample box
                eps = [rand_poly(rng, P.coords, 2, 2) for _ in range(2)]
                comps = [add(parse(c), mul(Fraction(1, 40), e)) for c, e in zip(P.coords, eps)]
                rep = verify_orientation_lift(SmoothMap(P, P, comps), A, POLICY)
                failures += not rep.passed
    assert record(10, "det J(phi^A) = (det J phi)^l, l in {2, 3}", failures == 0, t.elapsed, 60,
                  f"20 maps, {failures} failures")


def test_criterion_11_jacobi():
    with Timer() as t:
        m = fx.jacobi_contact_r3()
        base = verify_jacobi(m["Lambda"], m["Xi"], POLICY)
        res = lift_structure(m, cfg("jet(2)", "top"))
    rep = res.report
    emitted = len(rep.checks) >= 3 and all(c.status in ("pass", "fail") for c in rep.checks)
    ok = base.passed and emitted
    outcome = ", ".join(f"{c.name}={c.status}" for c in rep.checks)
    assert record(11, "Jacobi pair passes; averaged lift report emitted", ok, t.elapsed, 120,
                  f"lifted: {outcome}")


SASAKI_CHECKS = {"killing", "unit", "eta-metric-dual", "phi-nabla-xi", "phi-squared", "phi-metric", "nabla-phi"}


def test_criterion_12_sasakian():
    with Timer() as t0:
        base = verify_structure(fx.sasakian_r3(), POLICY)
    with Timer() as t1:
        res = lift_structure(fx.sasakian_r3(), cfg("jet(2)", "mixed"))
    names = {c.name for c in res.report.checks}
    ok = (base.passed and SASAKI_CHECKS <= {c.name for c in base.checks} and SASAKI_CHECKS <= names
          and t0.elapsed < 120)
    outcome = ", ".join(f"{c.name}={c.status}" for c in res.report.checks)
    assert record(12, "Sasakian base passes all seven; lift re-verified per check", ok, t0.elapsed + t1.elapsed,
                  600, f"lifted: {outcome}")


def test_criterion_13_heisenberg():
    with Timer() as t:
        m = fx.heisenberg()
        base = verify_bracket_generating(m["D"], 4, POLICY)
        res = lift_structure(m, cfg("jet(2)", "top"))
    chk = res.report["rank-with-rigging"]
    ok = base.passed and base.metadata.get("depth") == 2 and chk.passed and chk.samples_used == 20 \
        and res.manifest.patch.dim == 9
    assert record(13, "Heisenberg: depth 2; lifted generators + rigging full rank (9-dim)", ok, t.elapsed, 60)


def test_criterion_14_walker():
    with Timer() as t:
        base = verify_structure(fx.walker_r2(), POLICY)
        A = algebra_from_spec("dual")
        gl = lift_metric(fx.euclidean(Patch(("x",))), functional(A, "top"), policy=POLICY)
        Q = gl.patch
        lifted = verify_walker(gl, Distribution(Q, [VectorField(Q, [0, 1])]), POLICY)
    ok = base.passed and lifted.passed
    assert record(14, "Walker base and lifted Euclidean R^1 with vertical distribution", ok, t.elapsed, 30)


def test_criterion_15_lagrangian():
    with Timer() as t:
        w = fx.symplectic_r2n(2)["omega"]
        reps = [lagrangian_check(w, ["x1", "x2"], functional(algebra_from_spec(s), lam), POLICY)
                for s, lam in (("dual", "top"), ("jet(2)", "mixed"))]
    ok = all(r.passed and r["lifted-restriction-zero"].max_residual == EXACT_ZERO for r in reps)
    assert record(15, "lifted Lagrangian restriction vanishes", ok, t.elapsed, 30)


def test_criterion_16_suspension():
    with Timer() as t:
        m = fx.cosymplectic_r3()
        rep = verify_symplectic(suspension(m["omega"], m["eta"], "u"), POLICY)
    assert record(16, "suspension of the cosymplectic fixture is symplectic", rep.passed, t.elapsed, 10)


def test_criterion_17_negative_matrix():
    wrong = {}
    with Timer() as t:
        for kind in sorted(KINDS):
            m, name = fx.mutation(kind)
            failed = verify_structure(m, POLICY).failed()
            if failed != [name]:
                wrong[kind] = failed
    assert record(17, f"{len(KINDS)} planted mutations each fail exactly one check", not wrong and len(KINDS) == 12,
                  t.elapsed, 120,
                  f"mismatches {wrong}" if wrong else "")


def test_criterion_18_determinism():
    cmd = [sys.executable, "-m", "weil.cli", "--seed", "0", "demo", "all", "--format", "json"]
    outs = []
    with Timer() as t:
        for hashseed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            r = subprocess.run(cmd, capture_output=True, env=env)
            outs.append(r.stdout)
    ok = bool(outs[0]) and outs[0] == outs[1]
    assert record(18, "demo suite twice: byte-identical JSON", ok, t.elapsed, 600, f"{len(outs[0])} bytes")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(pytest.main([__file__, "-v"]))
