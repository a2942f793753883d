"""Verifiers for geometric structures on coordinate patches, and their Weil lifts.

Every verifier returns a :class:`~weil.report.VerificationReport`; nothing here
asserts.  Identities are decided by seeded sampling (exactly where possible),
open conditions such as nondegeneracy by numeric evaluation at sample points.

Conventions worth knowing:

* ``omega[i, j]`` is ``omega(d_i, d_j)``; ``J.comps[i][j]`` is ``J^i_j``.
* Sasakian structures use ``nabla_X xi = -Phi X``.  With ``Phi = +nabla xi``
  the curvature identity ``(nabla_X Phi) Y = g(X,Y) xi - eta(Y) X`` fails on the
  Heisenberg model, so the sign is fixed the other way.
* The top coefficient of ``eta ^ omega^n`` is ``n! Pf`` of the bordered matrix
  ``[[Omega, eta^T], [-eta, 0]]``; for ``omega^N`` it is ``N! Pf(Omega)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .algebra import LinearFunctional, WeilAlgebra, functional
from .errors import (
    DegenerateFunctional, InputError, NotProjectable, OddDimensionRequired, ParityError, SingularJacobian,
)
from .expr import ONE, ZERO, Const, Expr, add, differentiate, free_vars, is_zero_const, mul, neg, power, substitute
from .geometry import (
    Bivector, Connection, Distribution, KForm, MultiVector, Patch, SmoothMap, Tensor02, Tensor11, VectorField,
    covariant_derivative, eval_matrix, exterior_derivative, gauss_jordan_solve, interior_product, levi_civita,
    lie_bracket, lie_derivative, lie_derivative_bivector, nijenhuis, pfaffian, ricci, schouten_ll, symbolic_det,
    two_form_matrix, wedge, wedge_vector_bivector,
)
from .lift import (
    AValuedForm, LiftConfig, LiftedPatch, augmentation_forms, averaged_lift_bivector, averaged_lift_vector, lift_distribution,
    lift_element, lift_form, lift_form_A, lift_map, lift_metric, lift_tensor11, lift_vector_field, lift_vector_field_A,
    projection_pushforward,
)
from .report import EXACT_ZERO, FAIL, PASS, SKIPPED, Check, VerificationReport, check_from
from .sampling import DEFAULT_POLICY, SamplePolicy, compare_pairs, float_points, identity_check

NONDEG_TOL = 1e-6
RANK_TOL = 1e-9
WALKER_SAMPLES = 20

KINDS = ("symplectic", "contact", "cosymplectic", "lcs", "lcc", "riemannian", "kahler", "sasakian",
         "jacobi", "walker", "subriemannian", "orientation")

# ---------------------------------------------------------------------------
# small helpers


def _names(exprs):
    s = set()
    for e in exprs:
        s |= free_vars(e)
    return s


def _sample(exprs, patch: Patch, policy: SamplePolicy, n: int | None = None):
    n = policy.n if n is None else n
    exprs = [e for e in exprs if not is_zero_const(e)]
    return float_points(_names(exprs) | set(patch.coords), policy, exprs, n), n


def _require_parity(P: Patch, odd: bool, kind: str):
    if (P.dim % 2 == 1) != odd:
        want = "odd" if odd else "even"
        raise ParityError(f"{kind} structures need {want} patch dimension, got {P.dim}")


def _form_pairs(a: KForm, b: KForm):
    """Component pairs asserting a == b."""
    keys = sorted(set(a.comps) | set(b.comps))
    return [(a.comps.get(k, ZERO), b.comps.get(k, ZERO)) for k in keys]


def _zero_pairs(exprs):
    return [(e, ZERO) for e in exprs if not is_zero_const(e)]


def _closed_check(name: str, omega: KForm, policy, detail: str = "") -> Check:
    if omega.degree >= omega.patch.dim:
        return Check(name, PASS, EXACT_ZERO, 0, "top degree: closed by degree")
    return identity_check(name, _zero_pairs(exterior_derivative(omega).comps.values()), policy, detail)


def _matrix_pairs(a, b):
    return [(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)]


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[add(*(mul(a[i][t], b[t][j]) for t in range(k)
                   if not is_zero_const(a[i][t]) and not is_zero_const(b[t][j]))) for j in range(m)]
            for i in range(n)]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _numeric_rank(M, tol=RANK_TOL) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, float(s[0]))))


# ---------------------------------------------------------------------------
# top-degree coefficients


def top_coefficient_values(omega: KForm, eta: KForm | None = None, policy: SamplePolicy = DEFAULT_POLICY,
                           n: int | None = None):
    """Sampled coefficient of ``omega^N`` (even dim) or ``eta ^ omega^n`` (odd dim)."""
    P = omega.patch
    m = P.dim
    Om = two_form_matrix(omega)
    if eta is None:
        if m % 2:
            raise ParityError("omega^N needs even dimension")
        M, k = Om, m // 2
    else:
        if m % 2 == 0:
            raise ParityError("eta ^ omega^n needs odd dimension")
        e = [eta[i] for i in range(m)]
        M = [list(row) + [e[i]] for i, row in enumerate(Om)] + [[neg(x) for x in e] + [ZERO]]
        k = (m - 1) // 2
    pts, size = _sample([x for r in M for x in r], P, policy, n)
    vals = eval_matrix(M, pts, size)
    return np.array([factorial(k) * pfaffian(v) for v in vals]), size


def _nonvanishing_check(name: str, vals, size: int, tol: float, what: str) -> Check:
    mn = float(np.min(np.abs(vals))) if len(vals) else 0.0
    return check_from(name, mn > tol, None, size, f"min |{what}| = {mn:.6g} (threshold {tol:g})")


# ---------------------------------------------------------------------------
# symplectic family


def verify_symplectic(omega: KForm, policy: SamplePolicy = DEFAULT_POLICY, nondeg_tol: float = NONDEG_TOL):
    """Closed and nondegenerate (``omega^N != 0``) on an even-dimensional patch."""
    _require_parity(omega.patch, False, "symplectic")
    rep = VerificationReport("symplectic")
    rep.add(_closed_check("closed", omega, policy, "d omega = 0"))
    vals, size = top_coefficient_values(omega, None, policy)
    rep.add(_nonvanishing_check("nondegenerate", vals, size, nondeg_tol, "omega^N coefficient"))
    return rep


def verify_contact(beta: KForm, policy: SamplePolicy = DEFAULT_POLICY, nondeg_tol: float = NONDEG_TOL):
    """``beta ^ (d beta)^n != 0`` at every sample."""
    _require_parity(beta.patch, True, "contact")
    rep = VerificationReport("contact")
    vals, size = top_coefficient_values(exterior_derivative(beta), beta, policy)
    rep.add(_nonvanishing_check("nondegenerate", vals, size, nondeg_tol, "beta^(d beta)^n coefficient"))
    return rep


def verify_cosymplectic(omega: KForm, eta: KForm, policy: SamplePolicy = DEFAULT_POLICY,
                        nondeg_tol: float = NONDEG_TOL):
    _require_parity(omega.patch, True, "cosymplectic")
    rep = VerificationReport("cosymplectic")
    rep.add(_closed_check("omega-closed", omega, policy, "d omega = 0"))
    rep.add(_closed_check("eta-closed", eta, policy, "d eta = 0"))
    vals, size = top_coefficient_values(omega, eta, policy)
    rep.add(_nonvanishing_check("nondegenerate", vals, size, nondeg_tol, "eta^omega^n coefficient"))
    return rep


def verify_lcs(omega: KForm, theta: KForm, policy: SamplePolicy = DEFAULT_POLICY, nondeg_tol: float = NONDEG_TOL):
    """Locally conformal symplectic: ``d theta = 0``, ``d omega = -theta ^ omega``, nondegenerate."""
    _require_parity(omega.patch, False, "lcs")
    rep = VerificationReport("lcs")
    rep.add(_closed_check("theta-closed", theta, policy, "d theta = 0"))
    rep.add(identity_check("lee-identity", _form_pairs(exterior_derivative(omega), -wedge(theta, omega)), policy,
                           "d omega = -theta ^ omega"))
    vals, size = top_coefficient_values(omega, None, policy)
    rep.add(_nonvanishing_check("nondegenerate", vals, size, nondeg_tol, "omega^N coefficient"))
    return rep


def verify_lcc(omega: KForm, eta: KForm, theta: KForm, policy: SamplePolicy = DEFAULT_POLICY,
               nondeg_tol: float = NONDEG_TOL):
    """Locally conformal cosymplectic: ``d omega = -2 theta ^ omega``, ``d eta = -theta ^ eta``."""
    _require_parity(omega.patch, True, "lcc")
    rep = VerificationReport("lcc")
    rep.add(_closed_check("theta-closed", theta, policy, "d theta = 0"))
    rep.add(identity_check("omega-lee-identity",
                           _form_pairs(exterior_derivative(omega), wedge(theta, omega).scale(Const(-2))), policy,
                           "d omega = -2 theta ^ omega"))
    rep.add(identity_check("eta-lee-identity", _form_pairs(exterior_derivative(eta), -wedge(theta, eta)), policy,
                           "d eta = -theta ^ eta"))
    vals, size = top_coefficient_values(omega, eta, policy)
    rep.add(_nonvanishing_check("nondegenerate", vals, size, nondeg_tol, "eta^omega^n coefficient"))
    return rep


# ---------------------------------------------------------------------------
# Reeb fields


@dataclass
class ReebSolution:
    field: VectorField | None
    residual: float | str | None
    kernel_dim: int
    symbolic: bool
    report: VerificationReport

    @property
    def unique(self) -> bool:
        return self.kernel_dim == 0

    @property
    def passed(self) -> bool:
        return self.report.passed


def _solve_reeb(omega: KForm, eta: KForm, policy: SamplePolicy, subject: str) -> ReebSolution:
    """Solve ``i_xi omega = 0``, ``eta(xi) = 1`` via the bordered square system."""
    P = omega.patch
    m = P.dim
    Om = two_form_matrix(omega)
    e = [eta[i] for i in range(m)]
    # (i_xi omega)_j = sum_i xi^i omega_ij  ->  rows Omega^T
    rows = _transpose(Om) + [e]
    bordered = [list(r) + [e[j]] for j, r in enumerate(_transpose(Om))] + [e + [ZERO]]
    rep = VerificationReport(subject)
    pts, size = _sample([x for r in bordered for x in r], P, policy)
    stacked = eval_matrix(rows, pts, size)
    kernel = max(m - _numeric_rank(M) for M in stacked)
    rep.add(check_from("reeb-unique", kernel == 0, None, size, f"solve kernel dimension {kernel}"))
    if kernel:
        return ReebSolution(None, None, kernel, False, rep)
    B = eval_matrix(bordered, pts, size)
    dets = np.linalg.det(B)
    const_det = bool(np.all(np.abs(dets - dets[0]) <= policy.tol * max(1.0, abs(dets[0])))) and abs(dets[0]) > 1e-12
    rhs = [ZERO] * m + [ONE]
    if const_det:
        try:
            sol = gauss_jordan_solve(bordered, rhs, policy)
        except SingularJacobian:
            const_det = False
    if const_det:
        xi = VectorField(P, sol[:m])
        pairs = [(add(*(mul(xi.comps[i], Om[i][j]) for i in range(m))), ZERO) for j in range(m)]
        pairs.append((add(*(mul(xi.comps[i], e[i]) for i in range(m))), ONE))
        chk = identity_check("reeb-equations", pairs, policy, "i_xi omega = 0, eta(xi) = 1 (symbolic solve)")
        rep.add(chk)
        return ReebSolution(xi, chk.max_residual, 0, True, rep)
    # numeric fallback: per-sample solve, residuals of the original (overdetermined) system
    b = np.zeros(m + 1)
    b[-1] = 1.0
    worst = 0.0
    for M, S in zip(B, stacked):
        x = np.linalg.solve(M, b)[:m]
        worst = max(worst, float(np.max(np.abs(S @ x - b))))
    rep.add(check_from("reeb-equations", worst <= policy.tol, worst, size, "per-sample numeric solve"))
    return ReebSolution(None, worst, 0, False, rep)


def reeb_contact(beta: KForm, policy: SamplePolicy = DEFAULT_POLICY) -> ReebSolution:
    """Reeb field of a contact form: ``i_xi d beta = 0``, ``beta(xi) = 1``."""
    _require_parity(beta.patch, True, "contact")
    return _solve_reeb(exterior_derivative(beta), beta, policy, "contact Reeb field")


def reeb_cosymplectic(omega: KForm, eta: KForm, policy: SamplePolicy = DEFAULT_POLICY) -> ReebSolution:
    _require_parity(omega.patch, True, "cosymplectic")
    return _solve_reeb(omega, eta, policy, "cosymplectic Reeb field")


# ---------------------------------------------------------------------------
# metrics


def _sym_part_values(g: Tensor02, policy, n=None):
    pts, size = _sample(g.exprs(), g.patch, policy, n)
    vals = eval_matrix([list(r) for r in g.comps], pts, size)
    return (vals + np.transpose(vals, (0, 2, 1))) / 2, size


def _signatures(vals):
    out = set()
    for M in vals:
        ev = np.linalg.eigvalsh(M)
        scale = max(1.0, float(np.max(np.abs(ev))))
        pos = int(np.sum(ev > RANK_TOL * scale))
        negc = int(np.sum(ev < -RANK_TOL * scale))
        out.add((pos, negc, len(ev) - pos - negc))
    return out


def metric_signature(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY):
    """(pos, neg, zero) if constant over the samples, else None."""
    vals, _ = _sym_part_values(g, policy)
    sigs = _signatures(vals)
    return next(iter(sigs)) if len(sigs) == 1 else None


def verify_riemannian(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY, require_positive: bool = True):
    """Symmetric, nondegenerate, positive definite; the signature is always reported."""
    n = g.patch.dim
    rep = VerificationReport("riemannian")
    rep.add(identity_check("symmetric", [(g.comps[i][j], g.comps[j][i]) for i in range(n) for j in range(i + 1, n)],
                           policy, "g_ij = g_ji"))
    vals, size = _sym_part_values(g, policy)
    sigs = _signatures(vals)
    sig = next(iter(sigs)) if len(sigs) == 1 else None
    rep.metadata["signature"] = list(sig) if sig else sorted(list(s) for s in sigs)
    rep.add(_metric_rank_check(vals, size))
    posdef = all(s[0] == n for s in sigs)
    detail = f"signature {sorted(sigs)}"
    if require_positive:
        rep.add(check_from("positive-definite", posdef, None, size, detail))
    else:
        rep.add(Check("positive-definite", SKIPPED, None, size, detail + " (not required)"))
    return rep


def verify_kahler(g: Tensor02, omega: KForm, J: Tensor11, policy: SamplePolicy = DEFAULT_POLICY,
                  nabla_J: bool = False):
    """J^2 = -Id, g(J.,J.) = g, omega = g(J.,.), d omega = 0, N_J = 0 (and optionally nabla J = 0)."""
    P = g.patch
    _require_parity(P, False, "kahler")
    n = P.dim
    G = [list(r) for r in g.comps]
    Jm = [list(r) for r in J.comps]
    rep = VerificationReport("kahler")
    JJ = _matmul(Jm, Jm)
    minus_id = [[Const(-1) if i == j else ZERO for j in range(n)] for i in range(n)]
    rep.add(identity_check("J-squared", _matrix_pairs(JJ, minus_id), policy, "J^2 = -Id"))
    JtGJ = _matmul(_matmul(_transpose(Jm), G), Jm)
    rep.add(identity_check("J-compatible", _matrix_pairs(JtGJ, G), policy, "g(JX, JY) = g(X, Y)"))
    # omega(d_i, d_j) = g(J d_i, d_j) = sum_k J^k_i g_kj
    JtG = _matmul(_transpose(Jm), G)
    pairs = [(omega[i, j] if i != j else ZERO, JtG[i][j]) for i in range(n) for j in range(n)]
    rep.add(identity_check("omega-g-J", pairs, policy, "omega = g(J., .)"))
    rep.add(_closed_check("omega-closed", omega, policy, "d omega = 0"))
    N = nijenhuis(J)
    rep.add(identity_check("nijenhuis", _zero_pairs(c for a in N for b in a for c in b), policy, "N_J = 0"))
    if nabla_J:
        nab = levi_civita(g, policy)
        exprs = []
        for k in range(n):
            D = covariant_derivative(nab, VectorField.coordinate(P, k), J)
            exprs.extend(D.exprs())
        rep.add(identity_check("nabla-J", _zero_pairs(exprs), policy, "nabla J = 0 (Levi-Civita)"))
    else:
        rep.add(Check("nabla-J", SKIPPED, None, 0, "not requested"))
    sig = metric_signature(g, policy)
    rep.metadata["signature"] = list(sig) if sig else None
    return rep


def verify_sasakian(g: Tensor02, eta: KForm, xi: VectorField, Phi: Tensor11, policy: SamplePolicy = DEFAULT_POLICY,
                    require_riemannian: bool = True, nabla: Connection | None = None):
    """The seven Sasakian identities on coordinate fields, plus positivity of g.

    Sign convention: ``nabla_X xi = -Phi X``.
    """
    P = g.patch
    _require_parity(P, True, "sasakian")
    n = P.dim
    nab = nabla or levi_civita(g, policy)
    G = [list(r) for r in g.comps]
    F = [list(r) for r in Phi.comps]
    e = [eta[i] for i in range(n)]
    x = list(xi.comps)
    rep = VerificationReport("sasakian")

    L = lie_derivative(xi, g)
    rep.add(identity_check("killing", _zero_pairs(L.exprs()), policy, "L_xi g = 0"))

    gxx = add(*(mul(G[i][j], x[i], x[j]) for i in range(n) for j in range(n)))
    rep.add(identity_check("unit", [(gxx, ONE)], policy, "g(xi, xi) = 1"))

    low = [add(*(mul(G[j][i], x[i]) for i in range(n))) for j in range(n)]
    rep.add(identity_check("eta-metric-dual", list(zip(e, low)), policy, "eta = g(., xi)"))

    # nabla_{d_j} xi = -Phi d_j
    pairs = []
    coord = [VectorField.coordinate(P, j) for j in range(n)]
    for j in range(n):
        v = covariant_derivative(nab, coord[j], xi)
        pairs.extend((v.comps[i], neg(F[i][j])) for i in range(n))
    rep.add(identity_check("phi-nabla-xi", pairs, policy, "nabla_X xi = -Phi X"))

    FF = _matmul(F, F)
    target = [[add(Const(-1) if i == j else ZERO, mul(x[i], e[j])) for j in range(n)] for i in range(n)]
    rep.add(identity_check("phi-squared", _matrix_pairs(FF, target), policy, "Phi^2 = -Id + eta (x) xi"))

    FtGF = _matmul(_matmul(_transpose(F), G), F)
    target = [[add(G[i][j], neg(mul(e[i], e[j]))) for j in range(n)] for i in range(n)]
    rep.add(identity_check("phi-metric", _matrix_pairs(FtGF, target), policy,
                           "g(Phi X, Phi Y) = g(X, Y) - eta(X) eta(Y)"))

    pairs = []
    for k in range(n):
        D = covariant_derivative(nab, coord[k], Phi)
        for i in range(n):
            for j in range(n):
                rhs = add(mul(G[k][j], x[i]), neg(e[j]) if i == k else ZERO)
                pairs.append((D.comps[i][j], rhs))
    rep.add(identity_check("nabla-phi", pairs, policy, "(nabla_X Phi) Y = g(X, Y) xi - eta(Y) X"))

    vals, size = _sym_part_values(g, policy)
    sigs = _signatures(vals)
    rep.metadata["signature"] = sorted(list(s) for s in sigs)
    if require_riemannian:
        rep.add(check_from("riemannian", all(s[0] == n for s in sigs), None, size, f"signature {sorted(sigs)}"))
    else:
        rep.add(Check("riemannian", SKIPPED, None, size, f"signature {sorted(sigs)} (not required)"))
    return rep


# ---------------------------------------------------------------------------
# Jacobi, Walker, sub-Riemannian


def verify_jacobi(L: Bivector, Xi: VectorField, policy: SamplePolicy = DEFAULT_POLICY):
    """[L, L] = 2 Xi ^ L and L_Xi L = 0 (Schouten bracket convention of :func:`schouten_ll`)."""
    n = L.patch.dim
    rep = VerificationReport("jacobi")
    rep.add(identity_check("antisymmetric",
                           [(L.comps[i][j], neg(L.comps[j][i])) for i in range(n) for j in range(i, n)], policy,
                           "L^ij = -L^ji"))
    if n < 3:
        rep.add(Check("schouten-identity", PASS, EXACT_ZERO, 0, "3-vectors vanish in dimension < 3"))
    else:
        lhs = schouten_ll(L)
        rhs = wedge_vector_bivector(Xi, L).scale(Const(2))
        rep.add(identity_check("schouten-identity", _form_pairs(lhs, rhs), policy, "[L, L] = 2 Xi ^ L"))
    rep.add(identity_check("lie-invariance", _zero_pairs(lie_derivative_bivector(Xi, L).exprs()), policy,
                           "L_Xi L = 0"))
    return rep


def _metric_rank_check(vals, size: int) -> Check:
    """Nondegeneracy of sampled symmetric matrices by relative numeric rank (scale-free)."""
    n = vals.shape[1]
    ranks = [_numeric_rank(M) for M in vals]
    return check_from("nondegenerate", min(ranks) == n, None, size, f"min numeric rank {min(ranks)} of {n}")


def _in_span_rank_test(gens_vals, v_vals) -> bool:
    base = _numeric_rank(gens_vals)
    return _numeric_rank(np.vstack([gens_vals, v_vals[None, :]])) == base


def verify_walker(g: Tensor02, D: Distribution, policy: SamplePolicy = DEFAULT_POLICY,
                  samples: int = WALKER_SAMPLES):
    """Nondegenerate metric with a null distribution parallel for the Levi-Civita connection."""
    P = g.patch
    n = P.dim
    rep = VerificationReport("walker")
    gens = D.generators
    vals, size = _sym_part_values(g, policy)
    rep.add(_metric_rank_check(vals, size))
    rep.add(identity_check("nullity", _zero_pairs(g(a, b) for a in gens for b in gens), policy, "g(Y_a, Y_b) = 0"))
    nab = levi_civita(g, policy)
    derived = [covariant_derivative(nab, VectorField.coordinate(P, k), Y) for k in range(n) for Y in gens]
    gm = [list(Y.comps) for Y in gens]
    dm = [list(V.comps) for V in derived]
    pts, size = _sample([c for r in gm + dm for c in r], P, policy.with_(n=samples), samples)
    G = eval_matrix(gm, pts, size)
    Dv = eval_matrix(dm, pts, size)
    bad = 0
    for s in range(size):
        if not all(_in_span_rank_test(G[s], Dv[s][t]) for t in range(len(dm))):
            bad += 1
    rep.add(check_from("parallel", bad == 0, None, size,
                       f"nabla_X Y in span(D) at {size - bad}/{size} samples (rank test, tol {RANK_TOL:g})"))
    return rep


def _min_rank(fields, P: Patch, policy: SamplePolicy, n: int | None = None) -> int:
    m = [list(V.comps) for V in fields]
    if not m:
        return 0
    pts, size = _sample([c for r in m for c in r], P, policy, n)
    vals = eval_matrix(m, pts, size)
    return min(_numeric_rank(M) for M in vals)


def verify_bracket_generating(D: Distribution, depth_cap: int = 4, policy: SamplePolicy = DEFAULT_POLICY):
    """Iterated brackets [Y_a, [Y_b, ...]] up to ``depth_cap`` span the tangent space at all samples."""
    if depth_cap < 1:
        raise InputError("depth_cap must be >= 1")
    P = D.patch
    n = P.dim
    rep = VerificationReport("bracket-generating")
    gens = list(D.generators)
    span = list(gens)
    level = list(gens)
    seen = {tuple(V.comps) for V in span}
    ranks = []
    for depth in range(1, depth_cap + 1):
        r = _min_rank(span, P, policy)
        ranks.append(r)
        if r == n:
            rep.metadata.update(depth=depth, ranks=ranks)
            rep.add(check_from("bracket-generating", True, None, policy.n, f"full rank {n} at depth {depth}"))
            return rep
        if depth == depth_cap:
            break
        nxt = []
        for a in gens:
            for b in level:
                c = lie_bracket(a, b)
                key = tuple(c.comps)
                if all(is_zero_const(v) for v in key) or key in seen:
                    continue
                seen.add(key)
                nxt.append(c)
        if not nxt:
            rep.metadata.update(depth=None, ranks=ranks)
            rep.add(check_from("bracket-generating", False, None, policy.n,
                               f"brackets close at rank {r} < {n} (involutive)"))
            return rep
        level = nxt
        span.extend(nxt)
    rep.metadata.update(depth=None, ranks=ranks)
    rep.add(check_from("bracket-generating", False, None, policy.n,
                       f"depth cap {depth_cap} exceeded: rank {ranks[-1]} < {n}"))
    return rep


def verify_subriemannian(D: Distribution, depth_cap: int = 4, policy: SamplePolicy = DEFAULT_POLICY):
    """Constant-rank distribution (generators as orthonormal frame) that is bracket-generating."""
    P = D.patch
    rep = VerificationReport("subriemannian")
    m = [list(V.comps) for V in D.generators]
    pts, size = _sample([c for r in m for c in r], P, policy)
    ranks = [_numeric_rank(M) for M in eval_matrix(m, pts, size)]
    rep.add(check_from("rank", min(ranks) == max(ranks) == D.rank, None, size,
                       f"pointwise rank in [{min(ranks)}, {max(ranks)}], declared {D.rank}"))
    rep.extend(verify_bracket_generating(D, depth_cap, policy))
    return rep


# ---------------------------------------------------------------------------
# orientation


def verify_orientation(vol: KForm, policy: SamplePolicy = DEFAULT_POLICY, tol: float = NONDEG_TOL):
    """A top-degree form that vanishes nowhere and keeps one sign across the samples."""
    P = vol.patch
    rep = VerificationReport("orientation")
    top = vol.degree == P.dim
    rep.add(check_from("top-degree", top, None, 0, f"degree {vol.degree}, dimension {P.dim}"))
    if not top:
        rep.add(Check("nonvanishing", SKIPPED, None, 0, "not a top form"))
        rep.add(Check("sign-consistent", SKIPPED, None, 0, "not a top form"))
        return rep
    c = vol.comps.get(tuple(range(P.dim)), ZERO)
    pts, size = _sample([c], P, policy)
    from .sampling import eval_float

    vals = eval_float(c, pts, size)[0] if not is_zero_const(c) else np.zeros(size)
    rep.add(_nonvanishing_check("nonvanishing", vals, size, tol, "volume coefficient"))
    signs = set(np.sign(vals[np.abs(vals) > tol]).tolist())
    rep.add(check_from("sign-consistent", len(signs) <= 1, None, size, f"signs seen {sorted(signs)}"))
    return rep


def lift_volume_form(vol: KForm, A: WeilAlgebra) -> KForm:
    """f dx^1..dx^n  ->  N(f^A) dx^{1,1}..dx^{n,l}, N the algebra norm (= real part^l)."""
    LP = LiftedPatch(vol.patch, A)
    f = vol.comps.get(tuple(range(vol.patch.dim)), ZERO)
    real = lift_element(f, LP).coeffs[0]
    return KForm(LP.patch, LP.dim, {tuple(range(LP.dim)): power(real, A.dim)})


def verify_orientation_lift(phi: SmoothMap, A: WeilAlgebra, policy: SamplePolicy = DEFAULT_POLICY):
    """det J(phi^A) = (det J phi o pi)^l, hence sign(det J(phi^A)) = sign(det J phi)^l."""
    if phi.source.dim != phi.target.dim:
        raise InputError("orientation sign law needs an equidimensional map")
    l = A.dim
    base_det = symbolic_det(phi.jacobian())
    lifted = lift_map(phi, A)
    LP = LiftedPatch(phi.source, A)
    lifted_det = symbolic_det(lifted.jacobian())
    back = {c: LP.var(i, 0) for i, c in enumerate(phi.source.coords)}
    predicted = power(substitute(base_det, back), l)
    rep = VerificationReport("orientation-lift")
    pts, size = _sample([base_det], phi.source, policy)
    from .sampling import eval_float

    bvals = eval_float(base_det, pts, size)[0]
    if np.min(np.abs(bvals)) < NONDEG_TOL:
        raise SingularJacobian("base Jacobian is singular at a sample point")
    rep.add(identity_check("det-power-identity", [(lifted_det, predicted)], policy, "det J(phi^A) = (det J phi)^l"))
    lpts, lsize = _sample([lifted_det], LP.patch, policy)
    lv = eval_float(lifted_det, lpts, lsize)[0]
    pv = eval_float(predicted, lpts, lsize)[0]
    agree = bool(np.all(np.sign(lv) == np.sign(pv)))
    rep.add(check_from("sign-law", agree, None, lsize, f"l = {l}"))
    rep.metadata.update(l=l, base_det_sign=sorted(set(np.sign(bvals).astype(int).tolist())),
                        lifted_det_sign=sorted(set(np.sign(lv).astype(int).tolist())))
    return rep


# ---------------------------------------------------------------------------
# Killing fields, geodesics, Einstein residual


def killing_check(X: VectorField, g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY):
    rep = VerificationReport("killing")
    rep.add(identity_check("killing", _zero_pairs(lie_derivative(X, g).exprs()), policy, "L_X g = 0"))
    return rep


def geodesic_check(g: Tensor02, curve, param: str = "t", policy: SamplePolicy = DEFAULT_POLICY,
                   nabla: Connection | None = None):
    """c''^i + Gamma^i_jk(c) c'^j c'^k = 0 symbolically in the curve parameter."""
    P = g.patch
    n = P.dim
    if param in P.coords:
        raise InputError(f"curve parameter {param!r} clashes with a coordinate")
    from .expr import as_expr

    c = [as_expr(x) for x in curve]
    if len(c) != n:
        raise InputError(f"curve needs {n} components")
    nab = nabla or levi_civita(g, policy)
    at = dict(zip(P.coords, c))
    v = [differentiate(x, param) for x in c]
    a = [differentiate(x, param) for x in v]
    eqs = []
    for i in range(n):
        terms = [mul(substitute(nab.gamma[i][j][k], at), v[j], v[k])
                 for j in range(n) for k in range(n)
                 if not is_zero_const(nab.gamma[i][j][k]) and not is_zero_const(v[j]) and not is_zero_const(v[k])]
        eqs.append(add(a[i], *terms))
    rep = VerificationReport("geodesic")
    rep.add(identity_check("geodesic-equation", _zero_pairs(eqs), policy, "c'' + Gamma(c', c') = 0"))
    return rep


def lifted_curve(curve, P: Patch, A: WeilAlgebra):
    """alpha o c: x^{i,1} = c^i, other fibre coordinates 0."""
    from .expr import as_expr

    out = []
    for x in curve:
        out.extend([as_expr(x)] + [ZERO] * (A.dim - 1))
    return out


@dataclass
class EinsteinFit:
    lam: float
    residual: float
    samples: int

    def to_dict(self):
        return {"lambda": float(f"{self.lam:.6e}"), "residual": float(f"{self.residual:.6e}"),
                "samples": self.samples}


def einstein_fit(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY) -> EinsteinFit:
    """Least-squares lambda for Ric = lambda g over samples and components."""
    Ric = ricci(levi_civita(g, policy))
    exprs = list(g.exprs()) + list(Ric.exprs())
    pts, size = _sample(exprs, g.patch, policy)
    G = eval_matrix([list(r) for r in g.comps], pts, size)
    R = eval_matrix([list(r) for r in Ric.comps], pts, size)
    den = float(np.sum(G * G))
    lam = float(np.sum(R * G)) / den if den else 0.0
    diff = np.abs(R - lam * G) / np.maximum(1.0, np.maximum(np.abs(R), np.abs(lam * G)))
    return EinsteinFit(lam, float(np.max(diff)) if diff.size else 0.0, size)


def einstein_report(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY, claim: bool = True):
    """Best lambda and residual; with ``claim=False`` the fit is reported without a verdict."""
    fit = einstein_fit(g, policy)
    rep = VerificationReport("einstein")
    rep.metadata.update(fit.to_dict())
    detail = f"best lambda = {fit.lam:.6g}"
    if claim:
        rep.add(check_from("einstein", fit.residual <= policy.tol, fit.residual, fit.samples, detail))
    else:
        rep.add(Check("einstein", SKIPPED, fit.residual, fit.samples, detail + " (reported only)"))
    return rep


def _scaled(F: AValuedForm, c: int) -> AValuedForm:
    return AValuedForm(F.lifted, F.degree, {k: v * c for k, v in F.comps.items()})


def verify_lee_A(omega: KForm, theta: KForm, A: WeilAlgebra, eta: KForm | None = None,
                 policy: SamplePolicy = DEFAULT_POLICY) -> VerificationReport:
    """The A-valued Lee identities for (omega^A, theta^A[, eta^A]), checked coefficient by coefficient.

    This is the algebra-valued statement; applying a functional does not preserve
    the wedge products, so the real lifts need not satisfy the same identities.
    """
    wA, tA = lift_form_A(omega, A), lift_form_A(theta, A)
    factor = -1 if eta is None else -2
    rep = VerificationReport("A-valued Lee identities")
    rep.add(identity_check("A-theta-closed", _zero_pairs(c for v in tA.d().comps.values() for c in v.coeffs),
                           policy, "d theta^A = 0"))
    rep.add(identity_check("A-omega-lee-identity", wA.d().pairs_with(_scaled(tA.wedge(wA), factor)), policy,
                           f"d omega^A = {factor} theta^A ^ omega^A"))
    if eta is not None:
        eA = lift_form_A(eta, A)
        rep.add(identity_check("A-eta-lee-identity", eA.d().pairs_with(_scaled(tA.wedge(eA), -1)), policy,
                               "d eta^A = -theta^A ^ eta^A"))
    return rep


def lee_closedness(theta: KForm, lam: LinearFunctional, policy: SamplePolicy = DEFAULT_POLICY):
    """d theta = 0 iff d(theta^lam) = 0: both sides are decided and compared."""
    lifted = lift_form(theta, lam)
    base = _closed_check("base-closed", theta, policy, "d theta = 0")
    up = _closed_check("lift-closed", lifted, policy, "d theta^lam = 0")
    rep = VerificationReport("lee-closedness")
    rep.metadata.update(base_closed=base.passed, lift_closed=up.passed)
    rep.add(check_from("equivalence", base.passed == up.passed, None, max(base.samples_used, up.samples_used),
                       f"base closed: {base.passed}, lift closed: {up.passed}"))
    return rep


def lagrangian_check(omega: KForm, kept, lam: LinearFunctional, policy: SamplePolicy = DEFAULT_POLICY):
    """Restriction of omega (base) and omega^lam (lifted) to a coordinate subspace and its lift vanish."""
    from .lift import lift_submanifold, restrict_to_subspace

    P = omega.patch
    idx = sorted(P.index(k) if isinstance(k, str) else k for k in kept)
    rep = VerificationReport("lagrangian")
    base = restrict_to_subspace(omega, idx)
    rep.add(identity_check("base-restriction-zero", _zero_pairs(base.comps.values()), policy, "omega|L = 0"))
    LP = LiftedPatch(P, lam.algebra)
    up = lift_form(omega, lam)
    kept_lifted = [LP.index(i, k) for i in idx for k in range(LP.l)]
    r = restrict_to_subspace(up, kept_lifted)
    rep.add(identity_check("lifted-restriction-zero", _zero_pairs(r.comps.values()), policy,
                           "omega^lam | L^A = 0"))
    rep.metadata["lifted_dim"] = len(lift_submanifold(idx, LP).generators)
    return rep


# ---------------------------------------------------------------------------
# manifests


# ingredient name -> expected type tag, per kind; optional ones are marked with "?"
INGREDIENTS = {
    "symplectic": {"omega": "form2"},
    "contact": {"beta": "form1"},
    "cosymplectic": {"omega": "form2", "eta": "form1"},
    "lcs": {"omega": "form2", "theta": "form1"},
    "lcc": {"omega": "form2", "eta": "form1", "theta": "form1"},
    "riemannian": {"g": "tensor02"},
    "kahler": {"g": "tensor02", "omega": "form2", "J": "tensor11"},
    "sasakian": {"g": "tensor02", "eta": "form1", "xi": "vector", "Phi": "tensor11"},
    "jacobi": {"Lambda": "bivector", "Xi": "vector"},
    "walker": {"g": "tensor02", "D": "distribution"},
    "subriemannian": {"D": "distribution", "rigging?": "vectors"},
    "orientation": {"volume": "formtop", "map?": "map"},
}

ODD_KINDS = {"contact", "cosymplectic", "lcc", "sasakian"}
EVEN_KINDS = {"symplectic", "lcs", "kahler"}


def _type_ok(tag: str, v, P: Patch) -> bool:
    if tag.startswith("form"):
        if not isinstance(v, KForm) or v.patch != P:
            return False
        if tag == "formtop":
            return v.degree == P.dim
        return v.degree == int(tag[4:])
    table = {"tensor02": Tensor02, "tensor11": Tensor11, "vector": VectorField, "bivector": Bivector,
             "distribution": Distribution, "map": SmoothMap}
    if tag == "vectors":
        return isinstance(v, (list, tuple)) and all(isinstance(x, VectorField) and x.patch == P for x in v)
    cls = table[tag]
    if not isinstance(v, cls):
        return False
    if tag == "map":
        return v.source == P
    return v.patch == P


@dataclass
class StructureManifest:
    kind: str
    patch: Patch
    data: dict
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown structure kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        spec = INGREDIENTS[self.kind]
        allowed = {k.rstrip("?") for k in spec}
        extra = set(self.data) - allowed
        if extra:
            raise InputError(f"{self.kind}: unexpected ingredients {sorted(extra)}")
        for key, tag in spec.items():
            name = key.rstrip("?")
            if name not in self.data:
                if key.endswith("?"):
                    continue
                raise InputError(f"{self.kind}: missing ingredient {name!r}")
            if not _type_ok(tag, self.data[name], self.patch):
                raise InputError(f"{self.kind}: ingredient {name!r} must be a {tag} on patch {self.patch}")
        if self.kind in ODD_KINDS:
            _require_parity(self.patch, True, self.kind)
        if self.kind in EVEN_KINDS:
            _require_parity(self.patch, False, self.kind)

    def __getitem__(self, k):
        return self.data[k]

    def get(self, k, default=None):
        return self.data.get(k, default)


def verify_structure(m: StructureManifest, policy: SamplePolicy = DEFAULT_POLICY) -> VerificationReport:
    k, d, o = m.kind, m.data, m.options
    if k == "symplectic":
        return verify_symplectic(d["omega"], policy)
    if k == "contact":
        rep = verify_contact(d["beta"], policy)
        if rep.passed:
            rep.extend(reeb_contact(d["beta"], policy).report)
        return rep
    if k == "cosymplectic":
        rep = verify_cosymplectic(d["omega"], d["eta"], policy)
        if rep.passed:
            rep.extend(reeb_cosymplectic(d["omega"], d["eta"], policy).report)
        return rep
    if k == "lcs":
        return verify_lcs(d["omega"], d["theta"], policy)
    if k == "lcc":
        return verify_lcc(d["omega"], d["eta"], d["theta"], policy)
    if k == "riemannian":
        return verify_riemannian(d["g"], policy, o.get("require_positive", True))
    if k == "kahler":
        return verify_kahler(d["g"], d["omega"], d["J"], policy, o.get("nabla_J", False))
    if k == "sasakian":
        return verify_sasakian(d["g"], d["eta"], d["xi"], d["Phi"], policy, o.get("require_riemannian", True))
    if k == "jacobi":
        return verify_jacobi(d["Lambda"], d["Xi"], policy)
    if k == "walker":
        return verify_walker(d["g"], d["D"], policy)
    if k == "subriemannian":
        return verify_subriemannian(d["D"], o.get("depth_cap", 4), policy)
    if k == "orientation":
        rep = verify_orientation(d["volume"], policy)
        return rep
    raise InputError(k)  # pragma: no cover


# ---------------------------------------------------------------------------
# lift and re-verify


@dataclass
class LiftResult:
    manifest: StructureManifest
    report: VerificationReport
    extras: dict = field(default_factory=dict)


NEEDS_NONDEGENERATE = {"symplectic", "contact", "cosymplectic", "lcs", "lcc", "riemannian", "kahler", "sasakian",
                       "walker"}


def _augment_index(m: StructureManifest, cfg: LiftConfig) -> int:
    if cfg.distinguished is not None:
        return m.patch.index(cfg.distinguished)
    return m.patch.dim - 1


def _augmented(m, cfg, LP):
    """(sigma, tau) or (None, None) when augmentation is off."""
    if cfg.augmentation == "off":
        return None, None
    return augmentation_forms(LP, _augment_index(m, cfg), cfg.lam, cfg.matching())


def _reeb_projection(rep: VerificationReport, sol: ReebSolution, base: ReebSolution, LP: LiftedPatch, policy,
                     extras: dict):
    rep.extend(sol.report)
    extras["reeb"] = sol
    if sol.field is None or base.field is None:
        rep.add(Check("reeb-projects", SKIPPED, None, 0, "no symbolic Reeb field"))
        return
    try:
        proj = projection_pushforward(sol.field, LP, policy)
    except NotProjectable as exc:
        rep.add(Check("reeb-projects", FAIL, None, 0, str(exc)))
        return
    rep.add(identity_check("reeb-projects", proj.pairs_with(base.field), policy, "pi_* xi_lifted = xi_base"))


def lift_structure(m: StructureManifest, cfg: LiftConfig) -> LiftResult:
    """Lift every ingredient, then re-run the kind's verifier on the lifted patch."""
    A, lam, policy = cfg.algebra, cfg.lam, cfg.policy
    LP = LiftedPatch(m.patch, A)
    k, d = m.kind, m.data
    if k in ODD_KINDS and A.dim % 2 == 0:
        raise OddDimensionRequired(f"lifting a {k} structure needs an odd-dimensional algebra (l = {A.dim})")
    if k in NEEDS_NONDEGENERATE and not lam.nondegenerate:
        raise DegenerateFunctional(f"{k} lifts need a functional with nondegenerate Gram form ({lam.name})")
    extras: dict = {}
    notes: list = []
    Q = LP.patch

    if k == "symplectic":
        w = lift_form(d["omega"], lam)
        lifted = StructureManifest(k, Q, {"omega": w})
        rep = verify_symplectic(w, policy)
    elif k == "lcs":
        w, th = lift_form(d["omega"], lam), lift_form(d["theta"], lam)
        lifted = StructureManifest(k, Q, {"omega": w, "theta": th})
        rep = verify_lcs(w, th, policy)
        rep.extend(verify_lee_A(d["omega"], d["theta"], A, policy=policy))
        notes.append("the A-valued identities hold by functoriality; the real lambda-lift is checked separately")
    elif k == "cosymplectic":
        w, et = lift_form(d["omega"], lam), lift_form(d["eta"], lam)
        sigma, _ = _augmented(m, cfg, LP)
        unaug = verify_cosymplectic(w, et, policy)
        unaug_reeb = reeb_cosymplectic(w, et, policy)
        extras.update(unaugmented=unaug, unaugmented_kernel_dim=unaug_reeb.kernel_dim)
        if sigma is not None:
            w = w + sigma
        lifted = StructureManifest(k, Q, {"omega": w, "eta": et})
        rep = verify_cosymplectic(w, et, policy)
        rep.metadata.update(augmented=sigma is not None, unaugmented_status=unaug.status,
                            unaugmented_kernel_dim=unaug_reeb.kernel_dim)
        if rep.passed:
            base = reeb_cosymplectic(d["omega"], d["eta"], policy)
            sol = reeb_cosymplectic(w, et, policy)
            _reeb_projection(rep, sol, base, LP, policy, extras)
            _compare_averaged(rep, sol, base, A, cfg, policy, notes)
    elif k == "contact":
        b = lift_form(d["beta"], lam)
        _, tau = _augmented(m, cfg, LP)
        if tau is not None:
            b = b + tau
        lifted = StructureManifest(k, Q, {"beta": b})
        rep = verify_contact(b, policy)
        rep.metadata["augmented"] = tau is not None
        if rep.passed:
            base = reeb_contact(d["beta"], policy)
            sol = reeb_contact(b, policy)
            _reeb_projection(rep, sol, base, LP, policy, extras)
            _compare_averaged(rep, sol, base, A, cfg, policy, notes)
    elif k == "lcc":
        w, et, th = (lift_form(d[x], lam) for x in ("omega", "eta", "theta"))
        sigma, _ = _augmented(m, cfg, LP)
        if sigma is not None:
            w = w + sigma
        lifted = StructureManifest(k, Q, {"omega": w, "eta": et, "theta": th})
        rep = verify_lcc(w, et, th, policy)
        rep.extend(verify_lee_A(d["omega"], d["theta"], A, eta=d["eta"], policy=policy))
        notes.append("the A-valued identities hold by functoriality; the real lambda-lift is checked separately")
    elif k == "riemannian":
        g = lift_metric(d["g"], lam, policy=policy)
        lifted = StructureManifest(k, Q, {"g": g}, {"require_positive": False})
        rep = verify_riemannian(g, policy, require_positive=False)
        _signature_check(rep, d["g"], g, lam, policy, notes)
    elif k == "kahler":
        g = lift_metric(d["g"], lam, policy=policy)
        w = lift_form(d["omega"], lam)
        J = lift_tensor11(d["J"], A)
        lifted = StructureManifest(k, Q, {"g": g, "omega": w, "J": J}, {"nabla_J": True})
        rep = verify_kahler(g, w, J, policy, nabla_J=True)
    elif k == "sasakian":
        g = lift_metric(d["g"], lam, policy=policy)
        et = lift_form(d["eta"], lam)
        _, tau = _augmented(m, cfg, LP)
        if tau is not None:
            et = et + tau
        xi = lift_vector_field(d["xi"], A)
        Phi = lift_tensor11(d["Phi"], A)
        lifted = StructureManifest(k, Q, {"g": g, "eta": et, "xi": xi, "Phi": Phi})
        rep = verify_sasakian(g, et, xi, Phi, policy)
        notes.append("lifted Sasakian data re-verified check by check; outcomes are reported, not presumed")
    elif k == "jacobi":
        L = averaged_lift_bivector(d["Lambda"], A, cfg.sections)
        Xi = averaged_lift_vector(d["Xi"], A, cfg.sections)
        lifted = StructureManifest(k, Q, {"Lambda": L, "Xi": Xi})
        rep = verify_jacobi(L, Xi, policy)
        notes.append("averaged lifts through the section family; compatibility is tested, not assumed")
    elif k == "walker":
        g = lift_metric(d["g"], lam, policy=policy)
        D = lift_distribution(d["D"], A)
        lifted = StructureManifest(k, Q, {"g": g, "D": D})
        rep = verify_walker(g, D, policy)
    elif k == "subriemannian":
        D = lift_distribution(d["D"], A)
        rig = [lift_vector_field_A(Z, A, j) for Z in d.get("rigging", []) for j in range(A.dim)]
        data = {"D": D}
        if rig:
            data["rigging"] = rig
        lifted = StructureManifest(k, Q, data)
        rep = VerificationReport("subriemannian")
        n_s = WALKER_SAMPLES
        r = _min_rank(list(D.generators) + rig, Q, policy.with_(n=n_s), n_s)
        rep.add(check_from("rank-with-rigging", r == Q.dim, None, n_s,
                           f"min rank {r} of lifted generators + rigging on a {Q.dim}-dim patch"))
        rep.extend(verify_bracket_generating(D, m.options.get("depth_cap", 4), policy))
    elif k == "orientation":
        vol = lift_volume_form(d["volume"], A)
        data = {"volume": vol}
        rep = verify_orientation(vol, policy)
        if "map" in d:
            rep.extend(verify_orientation_lift(d["map"], A, policy), prefix="map:")
        lifted = StructureManifest(k, Q, data)
    else:  # pragma: no cover
        raise InputError(k)
    rep.subject = f"lifted {k} ({A.name}, lambda = {lam.name})"
    rep.notes.extend(notes)
    return LiftResult(lifted, rep, extras)


def _compare_averaged(rep, sol, base, A, cfg, policy, notes):
    """Open question: is the solved lifted Reeb field the averaged lift of the base one?"""
    if sol.field is None or base.field is None:
        return
    avg = averaged_lift_vector(base.field, A, cfg.sections)
    c = compare_pairs(avg.pairs_with(sol.field), policy)
    rep.metadata["reeb_equals_averaged_lift"] = c.equal
    notes.append(f"solved lifted Reeb field {'equals' if c.equal else 'differs from'} the averaged lift of the "
                 "base Reeb field")


def gram_product_signature(base_sig, gram_sig):
    """Signature of g (x) B_lambda: (p a + q b, p b + q a)."""
    p, q = base_sig[0], base_sig[1]
    a, b = gram_sig[0], gram_sig[1]
    return (p * a + q * b, p * b + q * a, 0)


def _signature_check(rep, g, g_lift, lam, policy, notes):
    base = metric_signature(g, policy)
    up = metric_signature(g_lift, policy)
    want = gram_product_signature(base, lam.signature) if base else None
    rep.metadata.update(base_signature=list(base) if base else None, lifted_signature=list(up) if up else None,
                        gram_signature=list(lam.signature))
    rep.add(check_from("signature-gram-product", up is not None and up == want, None, policy.n,
                       f"lifted {up} vs Gram product {want}"))
    if base and up and up != base:
        notes.append(f"lifted metric signature {up[:2]} differs from the base signature {base[:2]}: "
                     "the lift of a Riemannian metric need not be Riemannian; its signature is the "
                     "product of the base and Gram signatures")


__all__ = [
    "KINDS", "INGREDIENTS", "StructureManifest", "ReebSolution", "LiftResult", "EinsteinFit",
    "verify_symplectic", "verify_contact", "verify_cosymplectic", "verify_lcs", "verify_lcc",
    "verify_riemannian", "verify_kahler", "verify_sasakian", "verify_jacobi", "verify_walker",
    "verify_bracket_generating", "verify_subriemannian", "verify_orientation", "verify_orientation_lift",
    "reeb_contact", "reeb_cosymplectic", "killing_check", "geodesic_check", "lifted_curve", "einstein_fit",
    "einstein_report", "lee_closedness", "verify_lee_A", "lagrangian_check", "lift_structure", "verify_structure",
    "top_coefficient_values", "metric_signature", "gram_product_signature", "lift_volume_form",
]
