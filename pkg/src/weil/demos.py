"""End-to-end scenarios: each demo builds fixtures, lifts, re-verifies and collects reports.

Every outcome carries an expectation: ``pass`` and ``fail`` are claims the demo
makes (a planted negative, or the unaugmented pair that must be degenerate);
``report`` outcomes are recorded without a claim in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import algebra_from_spec, functional
from .errors import InputError
from .expr import as_expr
from .geometry import (
    Distribution, KForm, Patch, SmoothMap, Tensor02, VectorField, levi_civita,
)
from .lift import LiftConfig, lift_connection, lift_form, lift_metric, lift_vector_field, suspension
from .manifest import SCHEMA_VERSION, serialize_structure
from .report import Check, VerificationReport, check_from
from .sampling import DEFAULT_POLICY, SamplePolicy, identity_check
from . import fixtures as fx
from .structures import (
    einstein_report, geodesic_check, killing_check, lagrangian_check, lift_structure, lifted_curve,
    verify_bracket_generating, verify_cosymplectic, verify_orientation_lift, verify_structure, verify_symplectic,
    verify_walker,
)

DEMOS = ("symplectic-r2n", "cosymplectic-r2n1", "contact-r3", "orientation", "metric-flat", "walker-dual",
         "heisenberg-subriemannian", "sasakian-r3", "jacobi-contact", "lcs-r4", "lagrangian", "suspension",
         "einstein-remark")


@dataclass
class Outcome:
    label: str
    report: VerificationReport
    expect: str = "pass"  # "pass" | "fail" | "report"

    @property
    def ok(self) -> bool:
        return self.expect == "report" or self.report.status == self.expect

    def to_dict(self):
        return {"label": self.label, "expect": self.expect, "ok": self.ok, "report": self.report.to_dict()}


@dataclass
class DemoResult:
    name: str
    outcomes: list = field(default_factory=list)
    components: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, label, report, expect="pass"):
        self.outcomes.append(Outcome(label, report, expect))
        return report

    @property
    def passed(self) -> bool:
        return all(o.ok for o in self.outcomes)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {"schema_version": SCHEMA_VERSION, "demo": self.name, "status": self.status,
                "outcomes": [o.to_dict() for o in self.outcomes], "components": self.components,
                "notes": list(self.notes)}

    def format_text(self):
        lines = [f"== demo {self.name}: {self.status.upper()}"]
        for o in self.outcomes:
            lines.append(f"-- {o.label} (expect {o.expect}: {'ok' if o.ok else 'NOT MET'})")
            lines.append(o.report.format_text())
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def _cfg(spec, lam, policy, **kw):
    A = algebra_from_spec(spec)
    return LiftConfig(A, functional(A, lam), policy=policy, **kw)


# ---------------------------------------------------------------------------
# scenarios


def demo_symplectic(policy: SamplePolicy):
    r = DemoResult("symplectic-r2n")
    for n, spec, lam in ((1, "dual", "top"), (2, "dual", "top"), (1, "jet(2)", "mixed")):
        m = fx.symplectic_r2n(n)
        r.add(f"base R^{2 * n}", verify_structure(m, policy))
        res = lift_structure(m, _cfg(spec, lam, policy))
        r.add(f"R^{2 * n} lifted ({spec}, {lam})", res.report)
        if n == 1 and spec == "dual":
            r.components["lifted R^2 (dual, top)"] = serialize_structure(res.manifest)
    return r


def demo_cosymplectic(policy: SamplePolicy):
    r = DemoResult("cosymplectic-r2n1")
    m = fx.cosymplectic_r3()
    r.add("base (dx^dy, dz)", verify_structure(m, policy))
    cfg = _cfg("jet(2)", "mixed", policy)
    res = lift_structure(m, cfg)
    r.add("augmented lift (jet(2), (1,0,1))", res.report)
    r.add("unaugmented lift", res.extras["unaugmented"], expect="fail")
    rep = VerificationReport("unaugmented Reeb solve")
    k = res.extras["unaugmented_kernel_dim"]
    rep.add(check_from("kernel-dim-2", k == 2, None, policy.n, f"kernel dimension {k}"))
    r.add("unaugmented kernel dimension", rep)
    r.components["lifted"] = serialize_structure(res.manifest)
    if "reeb" in res.extras and res.extras["reeb"].field is not None:
        from .manifest import serialize_component

        r.components["lifted reeb"] = serialize_component(res.extras["reeb"].field)
    r.notes.extend(res.report.notes)
    return r


def demo_contact(policy: SamplePolicy):
    r = DemoResult("contact-r3")
    m = fx.contact_r3()
    r.add("base dz + x dy", verify_structure(m, policy))
    res = lift_structure(m, _cfg("jet(2)", "mixed", policy.with_(n=20)))
    r.add("augmented lift (jet(2), (1,0,1)), 20 samples", res.report)
    neg, _ = fx.mutation("contact")
    r.add("planted dz", verify_structure(neg, policy), expect="fail")
    r.components["lifted"] = serialize_structure(res.manifest)
    return r


def demo_orientation(policy: SamplePolicy):
    r = DemoResult("orientation")
    P = fx.R2
    maps = {"identity": ["x", "y"], "swap": ["y", "x"], "perturbation": ["x + x*y/5", "y + x^2/7"]}
    for spec in ("dual", "jet(2)"):
        A = algebra_from_spec(spec)
        for name, comps in maps.items():
            phi = SmoothMap(P, P, [as_expr(c) for c in comps])
            r.add(f"{name}, l = {A.dim}", verify_orientation_lift(phi, A, policy))
    res = lift_structure(fx.orientation_r2(["x + y^2/3", "y"]), _cfg("jet(2)", "top", policy))
    r.add("lifted volume form (jet(2))", res.report)
    return r


def demo_metric_flat(policy: SamplePolicy):
    r = DemoResult("metric-flat")
    A = algebra_from_spec("dual")
    lam = functional(A, "top")
    for label, m in (("Euclidean R^2", fx.riemannian_flat()), ("e^{2x}(dx^2+dy^2)", fx.conformal_plane())):
        g = m["g"]
        gl = lift_metric(g, lam, policy=policy)
        rep = VerificationReport(f"connection lift, {label}")
        rep.add(identity_check("levi-civita-commutes",
                               levi_civita(gl, policy).pairs_with(lift_connection(levi_civita(g, policy), A)),
                               policy, "LC(g^lam) = LC(g)^A"))
        r.add(f"{label}: connection", rep)
        res = lift_structure(m, LiftConfig(A, lam, policy=policy))
        r.add(f"{label}: lifted metric", res.report)
        r.notes.extend(res.report.notes)
    g = fx.euclidean(fx.R2)
    rot = VectorField(fx.R2, [as_expr("-y"), as_expr("x")])
    r.add("rotation Killing (base)", killing_check(rot, g, policy))
    r.add("rotation Killing (lifted)", killing_check(lift_vector_field(rot, A), lift_metric(g, lam, policy=policy),
                                                     policy))
    r.add("planted x d/dx", killing_check(VectorField(fx.R2, [as_expr("x"), as_expr(0)]), g, policy), expect="fail")
    line = ["1 + 2*t", "3*t - 1"]
    r.add("straight line (base)", geodesic_check(g, line, policy=policy))
    gl = lift_metric(g, lam, policy=policy)
    r.add("straight line via alpha (lifted)", geodesic_check(gl, lifted_curve(line, fx.R2, A), policy=policy))
    gc = fx.conformal_plane()["g"]
    ray = ["log(t)", "0"]  # radial ray of the flat cone metric, affinely parametrized
    r.add("ray (base, e^{2x})", geodesic_check(gc, ray, policy=policy))
    r.add("ray via alpha (lifted, e^{2x})",
          geodesic_check(lift_metric(gc, lam, policy=policy), lifted_curve(ray, fx.R2, A), policy=policy))
    return r


def demo_walker(policy: SamplePolicy):
    r = DemoResult("walker-dual")
    m = fx.walker_r2()
    r.add("base (2 dx dy, d/dx)", verify_structure(m, policy))
    A = algebra_from_spec("dual")
    lam = functional(A, "top")
    P1 = Patch(("x",))
    gl = lift_metric(fx.euclidean(P1), lam, policy=policy)
    Q = gl.patch
    D = Distribution(Q, [VectorField(Q, [as_expr(0), as_expr(1)])])
    r.add("lifted Euclidean R^1 with vertical d/dx_2", verify_walker(gl, D, policy))
    res = lift_structure(m, LiftConfig(A, lam, policy=policy))
    r.add("lifted base Walker structure", res.report)
    neg, _ = fx.mutation("walker")
    r.add("planted Euclidean", verify_structure(neg, policy), expect="fail")
    return r


def demo_heisenberg(policy: SamplePolicy):
    r = DemoResult("heisenberg-subriemannian")
    m = fx.heisenberg()
    base = verify_bracket_generating(m["D"], 4, policy)
    rep = VerificationReport("depth")
    rep.add(check_from("depth-2", base.metadata.get("depth") == 2, None, 0, f"depth {base.metadata.get('depth')}"))
    r.add("base bracket generation", base)
    r.add("base depth", rep)
    res = lift_structure(m, _cfg("jet(2)", "top", policy))
    r.add("lifted (jet(2)) rank test with rigging", res.report)
    neg, _ = fx.mutation("subriemannian")
    r.add("planted {d/dx, d/dy}", verify_structure(neg, policy), expect="fail")
    return r


def demo_sasakian(policy: SamplePolicy, slow: bool = False):
    r = DemoResult("sasakian-r3")
    r.add("base Heisenberg model", verify_structure(fx.sasakian_r3(), policy))
    r.add("planted g(xi, xi) = 2", verify_structure(fx.sasakian_r3(xi_norm="2*sqrt(2)"), policy), expect="fail")
    r.add("indefinite transverse metric", verify_structure(fx.sasakian_r3(t=-1), policy), expect="fail")
    p = policy.with_(n=max(policy.n, 64)) if slow else policy
    res = lift_structure(fx.sasakian_r3(), _cfg("jet(2)", "mixed", p))
    r.add("lift (jet(2), (1,0,1), augmented)", res.report, expect="report")
    r.notes.extend(res.report.notes)
    return r


def demo_jacobi(policy: SamplePolicy):
    r = DemoResult("jacobi-contact")
    r.add("base contact pair", verify_structure(fx.jacobi_contact_r3(), policy))
    r.add("Poisson R^2", verify_structure(fx.poisson_r2(), policy))
    neg, _ = fx.mutation("jacobi")
    r.add("planted Xi = d/dz, Lambda = dx^dy", verify_structure(neg, policy), expect="fail")
    res = lift_structure(fx.jacobi_contact_r3(), _cfg("jet(2)", "top", policy))
    r.add("averaged lift (jet(2), default sections)", res.report, expect="report")
    r.components["averaged lift"] = serialize_structure(res.manifest)
    r.notes.extend(res.report.notes)
    return r


def demo_lcs(policy: SamplePolicy):
    r = DemoResult("lcs-r4")
    r.add("base, theta = dx1", verify_structure(fx.lcs_r4(), policy))
    r.add("base, theta = -dx1", verify_structure(fx.lcs_r4(-1), policy), expect="fail")
    res = lift_structure(fx.lcs_r4(), _cfg("dual", "top", policy))
    r.add("lift (dual, top)", res.report)
    r.notes.extend(res.report.notes)
    return r


def demo_lagrangian(policy: SamplePolicy):
    r = DemoResult("lagrangian")
    m = fx.symplectic_r2n(2)  # coordinates x1, y1, x2, y2
    for spec, lam in (("dual", "top"), ("jet(2)", "mixed")):
        A = algebra_from_spec(spec)
        r.add(f"L = {{y1 = y2 = 0}}, ({spec}, {lam})", lagrangian_check(m["omega"], ["x1", "x2"],
                                                                         functional(A, lam), policy))
    return r


def demo_suspension(policy: SamplePolicy):
    r = DemoResult("suspension")
    m = fx.cosymplectic_r3()
    r.add("cosymplectic base", verify_structure(m, policy))
    s = suspension(m["omega"], m["eta"], "u")
    r.add("omega + eta ^ du on patch x R", verify_symplectic(s, policy))
    return r


def demo_einstein(policy: SamplePolicy):
    r = DemoResult("einstein-remark")
    r.add("Euclidean: lambda = 0", einstein_report(fx.euclidean(fx.R2), policy))
    r.add("e^{2x}(dx^2+dy^2): flat, lambda = 0", einstein_report(fx.conformal_plane()["g"], policy))
    r.add("hyperbolic: lambda = -1", einstein_report(fx.hyperbolic_plane()["g"], policy))
    A = algebra_from_spec("dual")
    gl = lift_metric(fx.hyperbolic_plane()["g"], functional(A, "top"), policy=policy)
    r.add("lifted hyperbolic (dual, top)", einstein_report(gl, policy, claim=False), expect="report")
    for o in r.outcomes:
        o.report.notes.append(f"lambda = {o.report.metadata['lambda']}")
    return r


_TABLE = {
    "symplectic-r2n": demo_symplectic,
    "cosymplectic-r2n1": demo_cosymplectic,
    "contact-r3": demo_contact,
    "orientation": demo_orientation,
    "metric-flat": demo_metric_flat,
    "walker-dual": demo_walker,
    "heisenberg-subriemannian": demo_heisenberg,
    "sasakian-r3": demo_sasakian,
    "jacobi-contact": demo_jacobi,
    "lcs-r4": demo_lcs,
    "lagrangian": demo_lagrangian,
    "suspension": demo_suspension,
    "einstein-remark": demo_einstein,
}


def run_demo(name: str, policy: SamplePolicy = DEFAULT_POLICY, slow: bool = False) -> DemoResult:
    if name not in _TABLE:
        raise InputError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    if name == "sasakian-r3":
        return demo_sasakian(policy, slow)
    return _TABLE[name](policy)


__all__ = ["DEMOS", "run_demo", "DemoResult", "Outcome"]
