"""Canonical flat models and their single-defect mutations, one per structure kind.

``canonical(kind)`` returns a manifest every verifier accepts;
``mutation(kind)`` returns ``(manifest, failing_check)`` where exactly that
check fails and all others pass.
"""

from __future__ import annotations

from fractions import Fraction

from .expr import add, as_expr, mul, neg
from .geometry import (
    Bivector, Distribution, KForm, Patch, SmoothMap, Tensor02, Tensor11, VectorField, covariant_derivative,
    levi_civita,
)
from .structures import StructureManifest

R2 = Patch(("x", "y"))
R3 = Patch(("x", "y", "z"))
R4 = Patch(("x1", "y1", "x2", "y2"))


def _f(P, degree, comps):
    return KForm(P, degree, {k: as_expr(v) for k, v in comps.items()})


def _m(P, rows, cls=Tensor02):
    return cls(P, [[as_expr(c) for c in r] for r in rows])


def _v(P, comps):
    return VectorField(P, [as_expr(c) for c in comps])


# ---------------------------------------------------------------------------
# individual models


def symplectic_r2n(n: int = 1):
    if n == 1:
        return StructureManifest("symplectic", R2, {"omega": _f(R2, 2, {(0, 1): "1"})})
    coords = tuple(c for i in range(1, n + 1) for c in (f"x{i}", f"y{i}"))
    P = Patch(coords)
    return StructureManifest("symplectic", P, {"omega": KForm(P, 2, {(2 * i, 2 * i + 1): as_expr("1")
                                                                     for i in range(n)})})


def contact_r3(beta: str = "dz + x dy"):
    comps = {"dz + x dy": {(2,): "1", (1,): "x"}, "dz - y dx": {(2,): "1", (0,): "-y"}}[beta]
    return StructureManifest("contact", R3, {"beta": _f(R3, 1, comps)})


def cosymplectic_r3():
    return StructureManifest("cosymplectic", R3, {"omega": _f(R3, 2, {(0, 1): "1"}), "eta": _f(R3, 1, {(2,): "1"})})


def lcs_r4(theta_sign: int = 1):
    """omega = e^{-x1}(dx1^dy1 + dx2^dy2); the Lee form solving d omega = -theta^omega is +dx1."""
    w = _f(R4, 2, {(0, 1): "exp(-x1)", (2, 3): "exp(-x1)"})
    th = _f(R4, 1, {(0,): str(theta_sign)})
    return StructureManifest("lcs", R4, {"omega": w, "theta": th})


def lcc_r3():
    return StructureManifest("lcc", R3, {
        "omega": _f(R3, 2, {(0, 1): "exp(-2*z)"}),
        "eta": _f(R3, 1, {(2,): "exp(-z)"}),
        "theta": _f(R3, 1, {(2,): "1"}),
    })


def euclidean(P: Patch):
    n = P.dim
    return Tensor02(P, [[as_expr(int(i == j)) for j in range(n)] for i in range(n)])


def riemannian_flat(P: Patch = R2):
    return StructureManifest("riemannian", P, {"g": euclidean(P)})


def conformal_plane():
    """e^{2x}(dx^2 + dy^2): flat (it is the Euclidean metric in log-polar coordinates)."""
    return StructureManifest("riemannian", R2, {"g": _m(R2, [["exp(2*x)", "0"], ["0", "exp(2*x)"]])})


def hyperbolic_plane():
    """(dx^2 + dy^2)/y^2: constant curvature -1, so Ric = -g."""
    return StructureManifest("riemannian", R2, {"g": _m(R2, [["y^-2", "0"], ["0", "y^-2"]])})


def kahler_r2():
    return StructureManifest("kahler", R2, {
        "g": euclidean(R2),
        "omega": _f(R2, 2, {(0, 1): "1"}),
        "J": _m(R2, [["0", "-1"], ["1", "0"]], Tensor11),
    })


def almost_kahler_r4(s: str = "x1"):
    """J = P J0 P^-1 with P = [[I, 0], [S, I]], S = [[0, s], [s, 0]]; compatible with the standard
    symplectic form but not integrable when s depends on the coordinates.  Coordinates
    (x1, x2, y1, y2) so that the blocks read naturally."""
    P = Patch(("x1", "x2", "y1", "y2"))
    sv = as_expr(s)
    z, o = as_expr(0), as_expr(1)
    S = [[z, sv], [sv, z]]
    # J0 d/dx_i = d/dy_i:  J0 = [[0, -I], [I, 0]];  P^-1 = [[I, 0], [-S, I]]
    # J = P J0 P^-1 = [[S, -I], [I + S^2, -S]]  (block computation)
    S2 = [[add(*(mul(S[i][k], S[k][j]) for k in range(2))) for j in range(2)] for i in range(2)]
    I = [[o, z], [z, o]]
    J = [[None] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            J[i][j] = S[i][j]
            J[i][j + 2] = neg(I[i][j])
            J[i + 2][j] = add(I[i][j], S2[i][j])
            J[i + 2][j + 2] = neg(S[i][j])
    Jt = Tensor11(P, J)
    # omega = dx1^dy1 + dx2^dy2, g(X, Y) = omega(X, J Y)  ->  g = Omega J
    Om = [[z, z, o, z], [z, z, z, o], [neg(o), z, z, z], [z, neg(o), z, z]]
    G = [[add(*(mul(Om[i][k], J[k][j]) for k in range(4))) for j in range(4)] for i in range(4)]
    w = KForm(P, 2, {(0, 2): o, (1, 3): o})
    return StructureManifest("kahler", P, {"g": Tensor02(P, G), "omega": w, "J": Jt})


def sasakian_r3(t: int = 1, xi_norm: str | None = None):
    """Heisenberg model: eta = (dz - y dx)/2, xi = 2 d/dz, g = (t/4)(dx^2 + dy^2) + eta (x) eta,
    Phi = -nabla xi.  ``t = -1`` gives an indefinite metric satisfying the seven identities."""
    h = Fraction(1, 2)
    e = [as_expr("-y/2"), as_expr(0), as_expr(h)]
    q = Fraction(t, 4)
    G = [[add(as_expr(q if i == j and i < 2 else 0), mul(e[i], e[j])) for j in range(3)] for i in range(3)]
    g = Tensor02(R3, G)
    xi = _v(R3, ["0", "0", "2"])
    nab = levi_civita(g)
    Phi = Tensor11(R3, [[neg(covariant_derivative(nab, VectorField.coordinate(R3, j), xi).comps[i])
                         for j in range(3)] for i in range(3)])
    if xi_norm is not None:  # planted defect: rescale xi so that g(xi, xi) != 1
        xi = _v(R3, ["0", "0", xi_norm])
    return StructureManifest("sasakian", R3, {"g": g, "eta": KForm(R3, 1, dict(enumerate(e))), "xi": xi,
                                              "Phi": Phi})


def jacobi_contact_r3():
    """Jacobi pair of the contact form dz - y dx: Lambda = (d_x + y d_z) ^ d_y, Xi = d_z."""
    return StructureManifest("jacobi", R3, {"Lambda": Bivector.from_upper(R3, {(0, 1): "1", (1, 2): "-y"}),
                                            "Xi": _v(R3, ["0", "0", "1"])})


def poisson_r2():
    return StructureManifest("jacobi", R2, {"Lambda": Bivector.from_upper(R2, {(0, 1): "1"}),
                                            "Xi": _v(R2, ["0", "0"])})


def walker_r2():
    return StructureManifest("walker", R2, {"g": _m(R2, [["0", "1"], ["1", "0"]]),
                                            "D": Distribution(R2, [_v(R2, ["1", "0"])])})


def heisenberg():
    D = Distribution(R3, [_v(R3, ["1", "0", "0"]), _v(R3, ["0", "1", "x"])])
    return StructureManifest("subriemannian", R3, {"D": D, "rigging": [_v(R3, ["0", "0", "1"])]})


def orientation_r2(map_comps=None):
    data = {"volume": _f(R2, 2, {(0, 1): "1"})}
    if map_comps is not None:
        data["map"] = SmoothMap(R2, R2, [as_expr(c) for c in map_comps])
    return StructureManifest("orientation", R2, data)


# ---------------------------------------------------------------------------
# the positive / negative matrix


def canonical(kind: str) -> StructureManifest:
    return {
        "symplectic": lambda: symplectic_r2n(2),
        "contact": contact_r3,
        "cosymplectic": cosymplectic_r3,
        "lcs": lcs_r4,
        "lcc": lcc_r3,
        "riemannian": riemannian_flat,
        "kahler": kahler_r2,
        "sasakian": sasakian_r3,
        "jacobi": jacobi_contact_r3,
        "walker": walker_r2,
        "subriemannian": heisenberg,
        "orientation": orientation_r2,
    }[kind]()


def mutation(kind: str):
    """(manifest with one planted defect, name of the single check that must fail)."""
    if kind == "symplectic":
        m = symplectic_r2n(2)
        P = m.patch
        w = m["omega"] + KForm(P, 2, {(2, 1): as_expr("x1")})  # + x1 dx2^dy1: still nondegenerate
        return StructureManifest(kind, P, {"omega": w}), "closed"
    if kind == "contact":
        return StructureManifest(kind, R3, {"beta": _f(R3, 1, {(2,): "1"})}), "nondegenerate"
    if kind == "cosymplectic":
        m = cosymplectic_r3()
        return StructureManifest(kind, R3, {"omega": m["omega"], "eta": _f(R3, 1, {(2,): "1", (1,): "x"})}), \
            "eta-closed"
    if kind == "lcs":
        return lcs_r4(theta_sign=-1), "lee-identity"
    if kind == "lcc":
        m = lcc_r3()
        eta = m["eta"] + _f(R3, 1, {(1,): "x*exp(-z)"})
        return StructureManifest(kind, R3, {"omega": m["omega"], "eta": eta, "theta": m["theta"]}), \
            "eta-lee-identity"
    if kind == "riemannian":
        return StructureManifest(kind, R2, {"g": _m(R2, [["1", "1/2"], ["0", "1"]])}), "symmetric"
    if kind == "kahler":
        return almost_kahler_r4(), "nijenhuis"
    if kind == "sasakian":
        return sasakian_r3(t=-1), "riemannian"
    if kind == "jacobi":
        return StructureManifest(kind, R3, {"Lambda": Bivector.from_upper(R3, {(0, 1): "1"}),
                                            "Xi": _v(R3, ["0", "0", "1"])}), "schouten-identity"
    if kind == "walker":
        return StructureManifest(kind, R2, {"g": euclidean(R2), "D": Distribution(R2, [_v(R2, ["1", "0"])])}), \
            "nullity"
    if kind == "subriemannian":
        D = Distribution(R3, [_v(R3, ["1", "0", "0"]), _v(R3, ["0", "1", "0"])])
        return StructureManifest(kind, R3, {"D": D}), "bracket-generating"
    if kind == "orientation":
        return StructureManifest(kind, R2, {"volume": _f(R2, 2, {(0, 1): "x"})}), "sign-consistent"
    raise KeyError(kind)


__all__ = [
    "R2", "R3", "R4", "canonical", "mutation", "symplectic_r2n", "contact_r3", "cosymplectic_r3", "lcs_r4",
    "lcc_r3", "euclidean", "riemannian_flat", "conformal_plane", "hyperbolic_plane", "kahler_r2",
    "almost_kahler_r4", "sasakian_r3", "jacobi_contact_r3", "poisson_r2", "walker_r2", "heisenberg",
    "orientation_r2",
]
