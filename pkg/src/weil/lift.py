"""Weil prolongation of patches, functions, maps, fields, forms and tensors.

A base patch with coordinates ``x^1..x^n`` lifts to the patch with coordinates
``x_k`` (``<base>_<k>``, k = 1..l, base index outer).  The A-point with these
coordinates is ``X^i = sum_k x^{i,k} a_k``; the lift of a function f is the
A-valued function ``f(X^1, .., X^n)``, whose a_k-coefficients are real functions
on the lifted patch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebra import SYMBOLIC, LinearFunctional, WeilAlgebra, WeilElement, functional
from .errors import (
    InputError, MatchingImpossible, NonAffineSection, NotProjectable, OddDimensionRequired,
)
from .expr import (
    ONE, ZERO, Const, Expr, Var, add, as_expr, differentiate, evaluate, free_vars, is_zero_const, mul,
    substitute,
)
from .geometry import (
    Bivector, Connection, Distribution, KForm, Patch, SmoothMap, Tensor02, Tensor11, VectorField,
    exterior_derivative, gauss_jordan_inverse, symbolic_inverse,
)
from .sampling import DEFAULT_POLICY, SamplePolicy, compare_pairs

# ---------------------------------------------------------------------------
# lifted patches


class LiftedPatch:
    def __init__(self, base: Patch, algebra: WeilAlgebra):
        self.base = base
        self.algebra = algebra
        self.l = algebra.dim
        names = [f"{c}_{k}" for c in base.coords for k in range(1, self.l + 1)]
        clash = set(names) & set(base.coords)
        if clash:
            raise InputError(f"lifted coordinate names collide with base names: {sorted(clash)}")
        self.patch = Patch(tuple(names))

    @property
    def coords(self):
        return self.patch.coords

    @property
    def dim(self) -> int:
        return self.patch.dim

    def index(self, i: int, k: int) -> int:
        """Lifted index of (base index i, basis index k), both 0-based."""
        return i * self.l + k

    def name(self, i: int, k: int) -> str:
        return self.patch.coords[self.index(i, k)]

    def var(self, i: int, k: int) -> Var:
        return Var(self.name(i, k))

    def split(self, p: int):
        return divmod(p, self.l)

    @cached_property
    def apoint(self):
        """A-valued coordinate functions X^i = sum_k x^{i,k} a_k."""
        return {c: WeilElement(self.algebra, [self.var(i, k) for k in range(self.l)], SYMBOLIC)
                for i, c in enumerate(self.base.coords)}

    def base_vars_to_real(self):
        """Substitution x^i -> x^{i,1}."""
        return {c: self.var(i, 0) for i, c in enumerate(self.base.coords)}

    def real_to_base(self):
        return {self.name(i, 0): Var(c) for i, c in enumerate(self.base.coords)}

    def __eq__(self, other):
        return isinstance(other, LiftedPatch) and self.base == other.base and self.algebra == other.algebra

    def __hash__(self):
        return hash((self.base, self.algebra))

    def __repr__(self):
        return f"LiftedPatch({self.base}, {self.algebra.name}, dim={self.dim})"


def lift_patch(P: Patch, A: WeilAlgebra) -> LiftedPatch:
    return LiftedPatch(P, A)


# ---------------------------------------------------------------------------
# functions and maps


@dataclass(frozen=True)
class AValuedFunction:
    lifted: LiftedPatch
    coeffs: tuple

    def element(self) -> WeilElement:
        return WeilElement(self.lifted.algebra, list(self.coeffs), SYMBOLIC)

    def real_part(self) -> Expr:
        return self.coeffs[0]

    def __getitem__(self, k):
        return self.coeffs[k]


def _as_symbolic_element(v, A: WeilAlgebra) -> WeilElement:
    if isinstance(v, WeilElement):
        return v
    c = v if isinstance(v, Expr) else Const(v)
    return A.scalar(c, SYMBOLIC)


def lift_element(f, LP: LiftedPatch) -> WeilElement:
    """The A-valued lift f(X^1..X^n) as a Weil element with Expr coefficients."""
    f = as_expr(f)
    env = {c: LP.apoint[c] for c in free_vars(f) if c in LP.apoint}
    missing = free_vars(f) - set(env)
    if missing:
        raise InputError(f"expression uses variables outside the patch: {sorted(missing)}")
    return _as_symbolic_element(evaluate(f, env), LP.algebra)


def lift_function(f, LP: LiftedPatch) -> AValuedFunction:
    return AValuedFunction(LP, lift_element(f, LP).coeffs)


def lift_map(phi: SmoothMap, A: WeilAlgebra) -> SmoothMap:
    src, tgt = LiftedPatch(phi.source, A), LiftedPatch(phi.target, A)
    comps = []
    for c in phi.comps:
        comps.extend(lift_element(c, src).coeffs)
    return SmoothMap(src.patch, tgt.patch, comps)


def lift_vector_field(X: VectorField, A: WeilAlgebra) -> VectorField:
    """X^A = sum_{i,k} [lift X^i]_k d/dx^{i,k}."""
    LP = LiftedPatch(X.patch, A)
    comps = []
    for c in X.comps:
        comps.extend(lift_element(c, LP).coeffs)
    return VectorField(LP.patch, comps)


def lift_vector_field_A(X: VectorField, A: WeilAlgebra, m: int) -> VectorField:
    """(a_m X)^A: the lift twisted by the A-module action of a_m (m = 0 gives X^A)."""
    LP = LiftedPatch(X.patch, A)
    am = A.basis(m, SYMBOLIC)
    comps = []
    for c in X.comps:
        comps.extend((lift_element(c, LP) * am).coeffs)
    return VectorField(LP.patch, comps)


def lift_distribution(D: Distribution, A: WeilAlgebra) -> Distribution:
    """A-module lift: generated by (a_m Y)^A over generators Y and basis elements a_m."""
    LP = LiftedPatch(D.patch, A)
    gens = [lift_vector_field_A(Y, A, m) for Y in D.generators for m in range(A.dim)]
    return Distribution(LP.patch, gens, D.rank * A.dim)


# ---------------------------------------------------------------------------
# forms


class AValuedForm:
    """An A-valued k-form on the lifted patch: lifted index tuples -> Weil elements."""

    def __init__(self, LP: LiftedPatch, degree: int, comps: dict):
        self.lifted = LP
        self.degree = degree
        self.comps = {k: v for k, v in comps.items() if not v.is_zero()}

    def apply(self, lam: LinearFunctional) -> KForm:
        return KForm(self.lifted.patch, self.degree, {k: lam(v) for k, v in self.comps.items()})

    def coefficient_form(self, t: int) -> KForm:
        return KForm(self.lifted.patch, self.degree, {k: v.coeffs[t] for k, v in self.comps.items()})

    def wedge(self, other: "AValuedForm") -> "AValuedForm":
        from .geometry import _perm_sign

        out: dict = {}
        for I, a in self.comps.items():
            for J, b in other.comps.items():
                if set(I) & set(J):
                    continue
                s = _perm_sign(I + J)
                key = tuple(sorted(I + J))
                t = a * b if s > 0 else -(a * b)
                out[key] = out[key] + t if key in out else t
        return AValuedForm(self.lifted, self.degree + other.degree, out)

    def d(self) -> "AValuedForm":
        A = self.lifted.algebra
        parts = [exterior_derivative(self.coefficient_form(t)) for t in range(A.dim)]
        keys = set()
        for p in parts:
            keys |= set(p.comps)
        return AValuedForm(self.lifted, self.degree + 1,
                           {k: WeilElement(A, [p.comps.get(k, ZERO) for p in parts], SYMBOLIC) for k in keys})

    def pairs_with(self, other: "AValuedForm"):
        keys = sorted(set(self.comps) | set(other.comps))
        A = self.lifted.algebra
        z = A.zero(SYMBOLIC)
        out = []
        for k in keys:
            a, b = self.comps.get(k, z), other.comps.get(k, z)
            out.extend(zip(a.coeffs, b.coeffs))
        return out


def _basis_products(A: WeilAlgebra, degree: int):
    """All k-tuples of basis indices with the rational element a_{k1}...a_{kd}."""
    out = {}
    for K in itertools.product(range(A.dim), repeat=degree):
        e = A.one()
        for k in K:
            e = e * A.basis(k)
        out[K] = e
    return out


def lift_form_A(omega: KForm, A: WeilAlgebra) -> AValuedForm:
    """Substitute coefficients by their lifts and dx^i by sum_k a_k dx^{i,k} (no functional)."""
    LP = LiftedPatch(omega.patch, A)
    prods = _basis_products(A, omega.degree)
    comps: dict = {}
    for I, c in omega.comps.items():
        F = lift_element(c, LP)
        for K, p in prods.items():
            if p.is_zero():
                continue
            key = tuple(LP.index(i, k) for i, k in zip(I, K))
            comps[key] = F * p.map_coeffs(Const, SYMBOLIC)
    return AValuedForm(LP, omega.degree, comps)


def lift_form(omega: KForm, lam: LinearFunctional) -> KForm:
    """Real-valued lift: lambda applied componentwise to the A-valued lift."""
    A = lam.algebra
    LP = LiftedPatch(omega.patch, A)
    prods = _basis_products(A, omega.degree)
    B = lam.gram
    # weights: lambda(F a_K) = sum_t F_t w[K][t], w[K][t] = sum_s p_s B[t][s]
    weights = {}
    for K, p in prods.items():
        w = [sum((ps * B[t][s] for s, ps in enumerate(p.coeffs) if ps), Fraction(0)) for t in range(A.dim)]
        if any(w):
            weights[K] = w
    comps: dict = {}
    for I, c in omega.comps.items():
        F = lift_element(c, LP).coeffs
        for K, w in weights.items():
            key = tuple(LP.index(i, k) for i, k in zip(I, K))
            comps[key] = add(*(mul(Const(wt), F[t]) for t, wt in enumerate(w) if wt and not is_zero_const(F[t])))
    return KForm(LP.patch, omega.degree, comps)


def pullback_projection(omega: KForm, A: WeilAlgebra) -> KForm:
    """pi^* omega: x^i -> x^{i,1}, dx^i -> dx^{i,1}."""
    LP = LiftedPatch(omega.patch, A)
    sub_ = LP.base_vars_to_real()
    return KForm(LP.patch, omega.degree,
                 {tuple(LP.index(i, 0) for i in I): substitute(c, sub_) for I, c in omega.comps.items()})


def pullback_projection_function(f, A: WeilAlgebra, base: Patch) -> Expr:
    LP = LiftedPatch(base, A)
    return substitute(as_expr(f), LP.base_vars_to_real())


# ---------------------------------------------------------------------------
# tensors


def _lift_grid(LP, comps):
    return [[lift_element(c, LP).coeffs for c in row] for row in comps]


def lift_metric(g: Tensor02, lam: LinearFunctional, with_inverse: bool = True,
                policy: SamplePolicy = DEFAULT_POLICY) -> Tensor02:
    """g^lam((i,k),(j,m)) = lam(g_ij^A a_k a_m)."""
    A = lam.algebra
    LP = LiftedPatch(g.patch, A)
    n, l = g.patch.dim, A.dim
    # T[t][k][m] = lam(a_t a_k a_m)
    T = [[[lam(A.basis(t) * A.basis(k) * A.basis(m)) for m in range(l)] for k in range(l)] for t in range(l)]
    F = _lift_grid(LP, g.comps)
    N = n * l
    out = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            Fij = F[i][j]
            if all(is_zero_const(c) for c in Fij):
                continue
            for k in range(l):
                for m in range(l):
                    out[LP.index(i, k)][LP.index(j, m)] = add(
                        *(mul(Const(T[t][k][m]), Fij[t]) for t in range(l) if T[t][k][m] and not is_zero_const(Fij[t])))
    hint = None
    if with_inverse and lam.nondegenerate:
        hint = lifted_metric_inverse(g, lam, policy)
    return Tensor02(LP.patch, out, inverse_hint=hint)


def a_matrix_inverse(M, A: WeilAlgebra, base_inverse):
    """Inverse of an n x n matrix over A (symbolic) given the inverse of its real part.

    G = G0 + N with N nilpotent-valued: G^-1 = sum_m (-G0^-1 N)^m G0^-1.
    """
    n = len(M)
    G0inv = [[A.scalar(base_inverse[i][j], SYMBOLIC) for j in range(n)] for i in range(n)]
    Nm = [[M[i][j].nilpotent_part() for j in range(n)] for i in range(n)]
    zero = A.zero(SYMBOLIC)

    def matmul(X, Y):
        return [[_sum_el([X[i][r] * Y[r][j] for r in range(n)], zero) for j in range(n)] for i in range(n)]

    K = matmul(G0inv, Nm)
    K = [[-K[i][j] for j in range(n)] for i in range(n)]
    acc = G0inv
    term = G0inv
    for _ in range(A.series_order - 1):
        term = matmul(K, term)
        acc = [[acc[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    return acc


def _sum_el(items, zero):
    out = zero
    for x in items:
        if not x.is_zero():
            out = out + x
    return out


def lifted_metric_inverse(g: Tensor02, lam: LinearFunctional, policy: SamplePolicy = DEFAULT_POLICY):
    """Inverse of g^lam via K((j,m),(r,s)) = c_m(H_jr b^s), H the A-valued inverse of g^A."""
    A = lam.algebra
    LP = LiftedPatch(g.patch, A)
    n, l = g.patch.dim, A.dim
    M = [[lift_element(c, LP) for c in row] for row in g.comps]
    base_inv = symbolic_inverse(g.comps, policy)
    to_real = LP.base_vars_to_real()
    base_inv = [[substitute(c, to_real) for c in row] for row in base_inv]
    H = a_matrix_inverse(M, A, base_inv)
    b = [WeilElement(A, [Const(v) for v in row], SYMBOLIC) for row in lam.dual_basis]
    N = n * l
    out = [[ZERO] * N for _ in range(N)]
    for j in range(n):
        for r in range(n):
            for s in range(l):
                e = H[j][r] * b[s]
                for m in range(l):
                    out[LP.index(j, m)][LP.index(r, s)] = e.coeffs[m]
    return out


def lift_tensor11(J: Tensor11, A: WeilAlgebra) -> Tensor11:
    """J^A[(i,k)][(j,m)] = c_k(J^i_j^A a_m), so that J^A(X^A) = (JX)^A."""
    LP = LiftedPatch(J.patch, A)
    n, l = J.patch.dim, A.dim
    N = n * l
    out = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            F = lift_element(J.comps[i][j], LP)
            if F.is_zero():
                continue
            for m in range(l):
                e = F * A.basis(m, SYMBOLIC)
                for k in range(l):
                    out[LP.index(i, k)][LP.index(j, m)] = e.coeffs[k]
    return Tensor11(LP.patch, out)


def lift_bivector(L: Bivector, lam: LinearFunctional) -> Bivector:
    """Lambda^lam((i,k),(j,m)) = lam(Lambda^ij^A b^k b^m), b the lam-dual basis."""
    A = lam.algebra
    LP = LiftedPatch(L.patch, A)
    n, l = L.patch.dim, A.dim
    b = [WeilElement(A, list(row), None) for row in lam.dual_basis]
    bb = [[(b[k] * b[m]).map_coeffs(Const, SYMBOLIC) for m in range(l)] for k in range(l)]
    N = n * l
    out = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            F = lift_element(L.comps[i][j], LP)
            if F.is_zero():
                continue
            for k in range(l):
                for m in range(l):
                    out[LP.index(i, k)][LP.index(j, m)] = lam(F * bb[k][m])
    return Bivector(LP.patch, out)


def lift_connection(nabla: Connection, A: WeilAlgebra) -> Connection:
    """Gamma^A((r,s); (i,k),(j,m)) = c_s(Gamma^r_ij^A a_k a_m)."""
    LP = LiftedPatch(nabla.patch, A)
    n, l = nabla.patch.dim, A.dim
    N = n * l
    G = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    akm = [[(A.basis(k) * A.basis(m)).map_coeffs(Const, SYMBOLIC) for m in range(l)] for k in range(l)]
    for r in range(n):
        for i in range(n):
            for j in range(n):
                F = lift_element(nabla.gamma[r][i][j], LP)
                if F.is_zero():
                    continue
                for k in range(l):
                    for m in range(l):
                        e = F * akm[k][m]
                        for s in range(l):
                            G[LP.index(r, s)][LP.index(i, k)][LP.index(j, m)] = e.coeffs[s]
    return Connection(LP.patch, G)


# ---------------------------------------------------------------------------
# sections and averaged lifts


def canonical_section(P: Patch, A: WeilAlgebra) -> SmoothMap:
    """alpha(x): x^{i,1} = x^i, x^{i,k} = 0 for k >= 2."""
    LP = LiftedPatch(P, A)
    comps = []
    for i in range(P.dim):
        comps.extend([P.var(i)] + [ZERO] * (A.dim - 1))
    return SmoothMap(P, LP.patch, comps)


def basis_sections(P: Patch, A: WeilAlgebra, spec="default"):
    """Default family: S_1 = alpha; S_j sets x^{i,1} = x^i = x^{i,j}, other fibre coordinates 0.

    ``spec`` may instead be a list of SmoothMaps (user-supplied affine sections).
    """
    LP = LiftedPatch(P, A)
    if spec != "default":
        sections = list(spec)
        for S in sections:
            _check_section(S, LP)
        return sections
    out = [canonical_section(P, A)]
    for j in range(1, A.dim):
        comps = []
        for i in range(P.dim):
            comps.extend([P.var(i) if k in (0, j) else ZERO for k in range(A.dim)])
        out.append(SmoothMap(P, LP.patch, comps))
    return out


def affine_section(P: Patch, A: WeilAlgebra, offsets) -> SmoothMap:
    """Section x^{i,1} = x^i, x^{i,k} = offsets[i][k-1] (expressions in base coordinates), k >= 2."""
    LP = LiftedPatch(P, A)
    comps = []
    for i in range(P.dim):
        comps.append(P.var(i))
        comps.extend(as_expr(o) for o in offsets[i])
    S = SmoothMap(P, LP.patch, comps)
    _check_section(S, LP)
    return S


def _check_section(S: SmoothMap, LP: LiftedPatch, policy: SamplePolicy = DEFAULT_POLICY):
    if S.target != LP.patch or S.source != LP.base:
        raise InputError("section must map the base patch into the lifted patch")
    pairs = [(S.comps[LP.index(i, 0)], LP.base.var(i)) for i in range(LP.base.dim)]
    if not compare_pairs(pairs, policy).equal:
        raise InputError("not a section: the x^{i,1} components must equal x^i")
    second = [(differentiate(differentiate(c, a), b), ZERO)
              for c in S.comps for a in LP.base.coords for b in LP.base.coords]
    if not compare_pairs(second, policy).equal:
        raise NonAffineSection("fibre-constant extension needs affine sections")


def section_pushforward(S: SmoothMap, X: VectorField, LP: LiftedPatch) -> VectorField:
    """(S_* X) along the image, extended fibre-constantly (components in x^{.,1})."""
    to_real = LP.base_vars_to_real()
    return VectorField(LP.patch, [substitute(X(c), to_real) for c in S.comps])


def averaged_lift_vector(X: VectorField, A: WeilAlgebra, sections="default") -> VectorField:
    LP = LiftedPatch(X.patch, A)
    S = basis_sections(X.patch, A, sections)
    acc = None
    for s in S:
        v = section_pushforward(s, X, LP)
        acc = v if acc is None else acc + v
    return acc.scale(Const(Fraction(1, len(S))))


def averaged_lift_bivector(L: Bivector, A: WeilAlgebra, sections="default") -> Bivector:
    LP = LiftedPatch(L.patch, A)
    S = basis_sections(L.patch, A, sections)
    n, N = L.patch.dim, LP.dim
    to_real = LP.base_vars_to_real()
    total = [[ZERO] * N for _ in range(N)]
    for s in S:
        Jac = [[differentiate(c, x) for x in L.patch.coords] for c in s.comps]  # N x n
        for p in range(N):
            for q in range(N):
                terms = [mul(Jac[p][i], Jac[q][j], L.comps[i][j]) for i in range(n) for j in range(n)
                         if not is_zero_const(Jac[p][i]) and not is_zero_const(Jac[q][j])
                         and not is_zero_const(L.comps[i][j])]
                if terms:
                    total[p][q] = add(total[p][q], substitute(add(*terms), to_real))
    w = Const(Fraction(1, len(S)))
    return Bivector(LP.patch, [[mul(w, c) for c in row] for row in total])


def projection_pushforward(V: VectorField, LP: LiftedPatch, policy: SamplePolicy = DEFAULT_POLICY) -> VectorField:
    """(pi)_* V: d/dx^{i,k} -> delta_{k,1} d/dx^i; requires projectability."""
    base_comps = [V.comps[LP.index(i, 0)] for i in range(LP.base.dim)]
    fibre_vars = [LP.name(i, k) for i in range(LP.base.dim) for k in range(1, LP.l)]
    pairs = [(differentiate(c, v), ZERO) for c in base_comps for v in fibre_vars if v in free_vars(c)]
    if pairs and not compare_pairs(pairs, policy).equal:
        raise NotProjectable("base components depend on fibre coordinates")
    back = LP.real_to_base()
    zero_fibres = {v: ZERO for v in fibre_vars}
    return VectorField(LP.base, [substitute(substitute(c, zero_fibres), back) for c in base_comps])


# ---------------------------------------------------------------------------
# odd-dimensional augmentation


def default_matching(l: int):
    """Adjacent pairs (2,3), (4,5), ... of 0-based fibre indices (1,2), (3,4), ..."""
    return [(k, k + 1) for k in range(1, l - 1, 2)]


def augmentation_forms(LP: LiftedPatch, z: int, lam: LinearFunctional, matching=None):
    """(sigma, tau): sigma = sum dz_a ^ dz_b over the matching, tau = sum z_a dz_b (d tau = sigma).

    The fibre index 1 (z_1) is left unmatched: it carries the Reeb direction.
    """
    l = LP.l
    if l % 2 == 0:
        raise OddDimensionRequired(f"augmentation needs odd algebra dimension, got l = {l}")
    if lam.values[0] != 1:
        raise MatchingImpossible("augmentation needs lambda(1) = 1 so the Reeb field projects to the base one")
    pairs = default_matching(l) if matching is None else [tuple(p) for p in matching]
    used = [k for p in pairs for k in p]
    if (len(set(used)) != len(used) or 0 in used or any(not 0 < k < l for k in used)
            or len(used) != l - 1):
        raise MatchingImpossible(f"matching {pairs} must pair up fibre indices 2..{l} exactly once")
    sigma = KForm(LP.patch, 2, {(LP.index(z, a), LP.index(z, b)): ONE for a, b in pairs})
    tau = KForm(LP.patch, 1, {(LP.index(z, b),): LP.var(z, a) for a, b in pairs})
    return sigma, tau


def augment_odd(omega_lifted: KForm, LP: LiftedPatch, z: int, lam: LinearFunctional, matching=None,
                contact: bool = False) -> KForm:
    """Add the matching form sigma to a lifted 2-form (or its primitive tau to a 1-form)."""
    sigma, tau = augmentation_forms(LP, z, lam, matching)
    if contact:
        return omega_lifted + tau
    if omega_lifted.degree != 2:
        raise InputError("augment_odd expects a lifted 2-form (or contact=True with a 1-form)")
    return omega_lifted + sigma


# ---------------------------------------------------------------------------
# submanifolds and suspension


def lift_submanifold(kept, LP: LiftedPatch) -> Distribution:
    """Lift of the coordinate subspace {x^i = 0, i not in kept}: span of d/dx^{i,k}, i in kept."""
    kept = sorted(LP.base.index(k) if isinstance(k, str) else k for k in kept)
    gens = [VectorField.coordinate(LP.patch, LP.index(i, k)) for i in kept for k in range(LP.l)]
    return Distribution(LP.patch, gens, len(gens))


def restrict_to_subspace(omega: KForm, kept_lifted) -> KForm:
    """Restrict to the coordinate subspace where coordinates outside ``kept_lifted`` vanish."""
    P = omega.patch
    kept = set(kept_lifted)
    zero = {P.coords[p]: ZERO for p in range(P.dim) if p not in kept}
    return KForm(P, omega.degree, {I: substitute(c, zero) for I, c in omega.comps.items()
                                   if set(I) <= kept})


def suspension(omega: KForm, eta: KForm, u: str = "u") -> KForm:
    """p^* omega + p^* eta ^ du on patch x R."""
    P = omega.patch
    if u in P.coords:
        raise InputError(f"suspension coordinate {u!r} already in the patch")
    Q = Patch(P.coords + (u,))
    n = P.dim
    comps = dict(omega.comps)
    for (i,), c in eta.comps.items():
        comps[(i, n)] = c
    return KForm(Q, 2, comps)


# ---------------------------------------------------------------------------
# configuration


@dataclass
class LiftConfig:
    algebra: WeilAlgebra
    lam: LinearFunctional | None = None
    sections: object = "default"
    policy: SamplePolicy = field(default_factory=SamplePolicy)
    augmentation: object = "auto"  # "auto" | "off" | explicit list of fibre-index pairs (1-based)
    distinguished: str | None = None  # base coordinate carrying the augmentation (default: last)

    def __post_init__(self):
        if self.lam is None:
            self.lam = functional(self.algebra, "top")
        if self.lam.algebra != self.algebra:
            raise InputError("functional lives on a different algebra")

    def matching(self):
        if isinstance(self.augmentation, (list, tuple)):
            return [(a - 1, b - 1) for a, b in self.augmentation]
        return None


__all__ = [
    "LiftedPatch", "lift_patch", "AValuedFunction", "lift_function", "lift_element", "lift_map",
    "lift_vector_field", "lift_vector_field_A", "lift_distribution", "AValuedForm", "lift_form_A", "lift_form", "pullback_projection",
    "lift_metric", "lifted_metric_inverse", "lift_tensor11", "lift_bivector", "lift_connection",
    "canonical_section", "basis_sections", "affine_section", "averaged_lift_vector", "averaged_lift_bivector",
    "projection_pushforward", "augmentation_forms", "augment_odd", "default_matching",
    "lift_submanifold", "restrict_to_subspace", "suspension", "LiftConfig", "section_pushforward",
]
