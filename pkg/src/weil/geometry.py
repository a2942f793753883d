"""Tensor fields with symbolic components on a coordinate patch, and their calculus.

Index conventions (0-based in code):

* ``KForm.comps[(i1,..,ik)]`` with ``i1 < .. < ik`` is the coefficient of
  ``dx^i1 ^ .. ^ dx^ik``;
* ``Tensor11.comps[i][j] = J^i_j`` (row = output index), ``(JX)^i = J^i_j X^j``;
* ``Connection.gamma[i][j][k] = Gamma^i_jk`` with ``nabla_{d_j} d_k = Gamma^i_jk d_i``;
* ``MultiVector`` mirrors ``KForm`` for contravariant alternating tensors;
  a ``Bivector`` keeps the full antisymmetric matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateMetric, DegreeError, PatchMismatch, SingularJacobian
from .expr import (
    ONE, ZERO, Const, Expr, Var, add, as_expr, differentiate, is_zero_const, mul, neg, power,
    substitute, sub,
)
from .sampling import DEFAULT_POLICY, SamplePolicy, compare_pairs, eval_float, float_points

# ---------------------------------------------------------------------------
# patches


@dataclass(frozen=True)
class Patch:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("a patch needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        for c in coords:
            Var(c)  # validates the identifier

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        return self.coords.index(name)

    def var(self, i: int) -> Var:
        return Var(self.coords[i])

    def vars(self):
        return [Var(c) for c in self.coords]

    def __str__(self):
        return f"Patch({', '.join(self.coords)})"


def _same(p: Patch, q: Patch):
    if p != q:
        raise PatchMismatch(f"{p} vs {q}")


def _e(x) -> Expr:
    return x if isinstance(x, Expr) else as_expr(x)


def _perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# alternating tensors (forms and multivectors)


class _Alternating:
    """Shared storage for k-forms and k-vectors: increasing index tuples -> Expr."""

    __slots__ = ("patch", "degree", "comps")

    def __init__(self, patch: Patch, degree: int, comps=None):
        if not 0 <= degree <= patch.dim:
            raise DegreeError(f"degree {degree} outside 0..{patch.dim}")
        acc: dict = {}
        for idx, c in (comps or {}).items():
            idx = (idx,) if isinstance(idx, int) else tuple(idx)
            if len(idx) != degree:
                raise DegreeError(f"index {idx} does not have length {degree}")
            if any(not 0 <= i < patch.dim for i in idx):
                raise IndexError(f"index {idx} outside the patch")
            s = _perm_sign(idx)
            if s == 0:
                continue
            key = tuple(sorted(idx))
            term = _e(c) if s > 0 else neg(_e(c))
            acc[key] = add(acc[key], term) if key in acc else term
        self.patch = patch
        self.degree = degree
        self.comps = {k: v for k, v in sorted(acc.items()) if not is_zero_const(v)}

    def _new(self, degree, comps):
        return type(self)(self.patch, degree, comps)

    def __getitem__(self, idx):
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        s = _perm_sign(idx)
        if s == 0:
            return ZERO
        v = self.comps.get(tuple(sorted(idx)), ZERO)
        return v if s > 0 else neg(v)

    def __add__(self, other):
        _same(self.patch, other.patch)
        if type(other) is not type(self) or other.degree != self.degree:
            raise DegreeError("can only add tensors of the same type and degree")
        comps = dict(self.comps)
        for k, v in other.comps.items():
            comps[k] = add(comps[k], v) if k in comps else v
        return self._new(self.degree, comps)

    def __neg__(self):
        return self._new(self.degree, {k: neg(v) for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "_Alternating":
        f = _e(f)
        return self._new(self.degree, {k: mul(f, v) for k, v in self.comps.items()})

    def __rmul__(self, f):
        return self.scale(f)

    def map(self, fn) -> "_Alternating":
        return self._new(self.degree, {k: fn(v) for k, v in self.comps.items()})

    def is_zero_struct(self) -> bool:
        return not self.comps

    def pairs_with(self, other):
        """(lhs, rhs) component pairs over the union of stored indices."""
        _same(self.patch, other.patch)
        keys = sorted(set(self.comps) | set(other.comps))
        return [(self.comps.get(k, ZERO), other.comps.get(k, ZERO)) for k in keys]

    def exprs(self):
        return list(self.comps.values())

    def _wedge(self, other):
        _same(self.patch, other.patch)
        deg = self.degree + other.degree
        if deg > self.patch.dim:
            raise DegreeError(f"wedge degree {deg} exceeds patch dimension {self.patch.dim}")
        comps: dict = {}
        for I, a in self.comps.items():
            sI = set(I)
            for J, b in other.comps.items():
                if sI.intersection(J):
                    continue
                idx = I + J
                s = _perm_sign(idx)
                key = tuple(sorted(idx))
                t = mul(a, b) if s > 0 else neg(mul(a, b))
                comps.setdefault(key, []).append(t)
        return self._new(deg, {k: add(*v) for k, v in comps.items()})

    def format(self, basis_prefix: str) -> str:
        if not self.comps:
            return "0"
        parts = []
        for k, v in self.comps.items():
            names = "^".join(f"{basis_prefix}{self.patch.coords[i]}" for i in k)
            vs = str(v)
            if not names:
                parts.append(vs)
            elif vs == "1":
                parts.append(names)
            else:
                parts.append(f"({vs})*{names}")
        return " + ".join(parts)


class KForm(_Alternating):
    __slots__ = ()

    def __xor__(self, other):
        return wedge(self, other)

    def __str__(self):
        return self.format("d")

    def __repr__(self):
        return f"KForm(deg={self.degree}, {self.format('d')})"


class MultiVector(_Alternating):
    __slots__ = ()

    def __xor__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self._wedge(other)

    def __str__(self):
        return self.format("D")


def form(patch: Patch, degree: int, comps=None) -> KForm:
    return KForm(patch, degree, comps)


def scalar_field(patch: Patch, f) -> KForm:
    return KForm(patch, 0, {(): _e(f)})


def dx(patch: Patch, name_or_index) -> KForm:
    i = patch.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
    return KForm(patch, 1, {(i,): ONE})


def function_of(omega: KForm) -> Expr:
    """The function carried by a degree-0 form."""
    if omega.degree != 0:
        raise DegreeError("not a degree-0 form")
    return omega.comps.get((), ZERO)


# ---------------------------------------------------------------------------
# vector fields and 2-tensors


class VectorField:
    __slots__ = ("patch", "comps")

    def __init__(self, patch: Patch, comps):
        comps = tuple(_e(c) for c in comps)
        if len(comps) != patch.dim:
            raise ValueError(f"need {patch.dim} components, got {len(comps)}")
        self.patch, self.comps = patch, comps

    @classmethod
    def coordinate(cls, patch: Patch, i) -> "VectorField":
        i = patch.index(i) if isinstance(i, str) else i
        return cls(patch, [ONE if j == i else ZERO for j in range(patch.dim)])

    def __call__(self, f) -> Expr:
        """Derivative of the function ``f`` along this field."""
        f = _e(f)
        return add(*(mul(c, differentiate(f, x)) for c, x in zip(self.comps, self.patch.coords)
                     if not is_zero_const(c)))

    def __add__(self, other):
        _same(self.patch, other.patch)
        return VectorField(self.patch, [add(a, b) for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _same(self.patch, other.patch)
        return VectorField(self.patch, [sub(a, b) for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.patch, [neg(a) for a in self.comps])

    def scale(self, f) -> "VectorField":
        f = _e(f)
        return VectorField(self.patch, [mul(f, a) for a in self.comps])

    def __rmul__(self, f):
        return self.scale(f)

    def map(self, fn):
        return VectorField(self.patch, [fn(c) for c in self.comps])

    def pairs_with(self, other):
        _same(self.patch, other.patch)
        return list(zip(self.comps, other.comps))

    def exprs(self):
        return list(self.comps)

    def as_multivector(self) -> MultiVector:
        return MultiVector(self.patch, 1, {(i,): c for i, c in enumerate(self.comps)})

    def __str__(self):
        parts = [f"({c})*D{x}" for c, x in zip(self.comps, self.patch.coords) if not is_zero_const(c)]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({self})"


class _Matrix:
    """n x n symbolic components."""

    __slots__ = ("patch", "comps")

    def __init__(self, patch: Patch, comps):
        n = patch.dim
        rows = [tuple(_e(c) for c in row) for row in comps]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"need a {n}x{n} component matrix")
        self.patch, self.comps = patch, tuple(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.comps[i][j]

    def _new(self, comps):
        return type(self)(self.patch, comps)

    def map(self, fn):
        return self._new([[fn(c) for c in r] for r in self.comps])

    def pairs_with(self, other):
        _same(self.patch, other.patch)
        return [(a, b) for ra, rb in zip(self.comps, other.comps) for a, b in zip(ra, rb)]

    def exprs(self):
        return [c for r in self.comps for c in r]

    def __add__(self, other):
        _same(self.patch, other.patch)
        return self._new([[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _same(self.patch, other.patch)
        return self._new([[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.comps, other.comps)])

    def scale(self, f):
        f = _e(f)
        return self._new([[mul(f, c) for c in r] for r in self.comps])

    def __str__(self):
        return "[" + "; ".join(", ".join(str(c) for c in r) for r in self.comps) + "]"


class Tensor02(_Matrix):
    """Covariant 2-tensor ``g_ij``; metrics are symmetric instances."""

    __slots__ = ("inverse_hint",)

    def __init__(self, patch: Patch, comps, inverse_hint=None):
        super().__init__(patch, comps)
        self.inverse_hint = inverse_hint

    def __call__(self, X: VectorField, Y: VectorField) -> Expr:
        return add(*(mul(self.comps[i][j], X.comps[i], Y.comps[j])
                     for i in range(self.patch.dim) for j in range(self.patch.dim)
                     if not is_zero_const(self.comps[i][j])))

    def __repr__(self):
        return f"Tensor02({self})"


Metric = Tensor02


class Tensor11(_Matrix):
    __slots__ = ()

    def __call__(self, X: VectorField) -> VectorField:
        n = self.patch.dim
        return VectorField(self.patch, [add(*(mul(self.comps[i][j], X.comps[j]) for j in range(n)))
                                        for i in range(n)])

    def compose(self, other: "Tensor11") -> "Tensor11":
        n = self.patch.dim
        return Tensor11(self.patch, [[add(*(mul(self.comps[i][m], other.comps[m][j]) for m in range(n)))
                                      for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, patch: Patch):
        return cls(patch, [[ONE if i == j else ZERO for j in range(patch.dim)] for i in range(patch.dim)])

    def __repr__(self):
        return f"Tensor11({self})"


class Bivector(_Matrix):
    __slots__ = ()

    @classmethod
    def from_upper(cls, patch: Patch, entries: dict) -> "Bivector":
        """Build from ``{(i, j): Lambda^ij}``; the antisymmetric partner is implied."""
        n = patch.dim
        m = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            v = _e(v)
            m[i][j] = add(m[i][j], v)
            m[j][i] = sub(m[j][i], v)
        return cls(patch, m)

    def as_multivector(self) -> MultiVector:
        n = self.patch.dim
        return MultiVector(self.patch, 2, {(i, j): self.comps[i][j] for i in range(n) for j in range(i + 1, n)})

    def __repr__(self):
        return f"Bivector({self})"


class Connection:
    """Christoffel symbols ``gamma[i][j][k] = Gamma^i_jk``."""

    __slots__ = ("patch", "gamma")

    def __init__(self, patch: Patch, gamma):
        n = patch.dim
        g = [[[_e(c) for c in row] for row in plane] for plane in gamma]
        if len(g) != n or any(len(p) != n or any(len(r) != n for r in p) for p in g):
            raise ValueError(f"need {n}^3 Christoffel symbols")
        self.patch = patch
        self.gamma = tuple(tuple(tuple(r) for r in p) for p in g)

    @classmethod
    def flat(cls, patch: Patch) -> "Connection":
        n = patch.dim
        return cls(patch, [[[ZERO] * n for _ in range(n)] for _ in range(n)])

    def pairs_with(self, other):
        _same(self.patch, other.patch)
        return [(a, b) for pa, pb in zip(self.gamma, other.gamma)
                for ra, rb in zip(pa, pb) for a, b in zip(ra, rb)]

    def exprs(self):
        return [c for p in self.gamma for r in p for c in r]

    def torsion_pairs(self):
        n = self.patch.dim
        return [(self.gamma[i][j][k], self.gamma[i][k][j])
                for i in range(n) for j in range(n) for k in range(j + 1, n)]


@dataclass
class Distribution:
    patch: Patch
    generators: list
    rank: int | None = None

    def __post_init__(self):
        for g in self.generators:
            _same(self.patch, g.patch)
        if self.rank is None:
            self.rank = len(self.generators)
        if len(self.generators) < self.rank:
            raise ValueError("fewer generators than the declared rank")


@dataclass
class SmoothMap:
    source: Patch
    target: Patch
    comps: tuple = field(default=())

    def __post_init__(self):
        self.comps = tuple(_e(c) for c in self.comps)
        if len(self.comps) != self.target.dim:
            raise ValueError(f"need {self.target.dim} target components")

    def compose(self, inner: "SmoothMap") -> "SmoothMap":
        """``self o inner``."""
        _same(self.source, inner.target)
        mapping = dict(zip(self.source.coords, inner.comps))
        return SmoothMap(inner.source, self.target, [substitute(c, mapping) for c in self.comps])

    def jacobian(self):
        return [[differentiate(c, x) for x in self.source.coords] for c in self.comps]

    @classmethod
    def identity(cls, patch: Patch):
        return cls(patch, patch, patch.vars())


# ---------------------------------------------------------------------------
# exterior calculus


def exterior_derivative(omega: KForm) -> KForm:
    P = omega.patch
    if omega.degree >= P.dim:
        raise DegreeError("d of a top-degree form leaves the patch")
    comps: dict = {}
    for I, c in omega.comps.items():
        for j, x in enumerate(P.coords):
            if j in I:
                continue
            dc = differentiate(c, x)
            if is_zero_const(dc):
                continue
            idx = (j,) + I
            s = _perm_sign(idx)
            comps.setdefault(tuple(sorted(idx)), []).append(dc if s > 0 else neg(dc))
    return KForm(P, omega.degree + 1, {k: add(*v) for k, v in comps.items()})


d = exterior_derivative


def wedge(a: KForm, b: KForm) -> KForm:
    return a._wedge(b)


def wedge_all(forms, patch: Patch | None = None) -> KForm:
    forms = list(forms)
    if not forms:
        return scalar_field(patch, ONE)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior_product(X: VectorField, omega: KForm) -> KForm:
    _same(X.patch, omega.patch)
    if omega.degree == 0:
        raise DegreeError("interior product of a function")
    comps: dict = {}
    for I, c in omega.comps.items():
        for p, i in enumerate(I):
            xi = X.comps[i]
            if is_zero_const(xi):
                continue
            t = mul(xi, c)
            comps.setdefault(I[:p] + I[p + 1:], []).append(t if p % 2 == 0 else neg(t))
    return KForm(omega.patch, omega.degree - 1, {k: add(*v) for k, v in comps.items()})


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _same(X.patch, Y.patch)
    return VectorField(X.patch, [sub(X(b), Y(a)) for a, b in zip(X.comps, Y.comps)])


def lie_derivative(X: VectorField, T):
    """L_X T by coordinate formulas, for functions, fields, forms and 2-tensors."""
    P = X.patch
    n = P.dim
    dX = [[differentiate(X.comps[i], x) for x in P.coords] for i in range(n)]  # dX[i][k] = d_k X^i
    if isinstance(T, Expr):
        return X(T)
    if isinstance(T, VectorField):
        return lie_bracket(X, T)
    if isinstance(T, KForm):
        _same(P, T.patch)
        out = {}
        for I, c in T.comps.items():
            out.setdefault(I, []).append(X(c))
            for p, i in enumerate(I):
                # replace dx^{i} at position p by d(X^i) = sum_k d_k X^i dx^k
                for k in range(n):
                    if is_zero_const(dX[i][k]):
                        continue
                    idx = I[:p] + (k,) + I[p + 1:]
                    s = _perm_sign(idx)
                    if s == 0:
                        continue
                    t = mul(c, dX[i][k])
                    out.setdefault(tuple(sorted(idx)), []).append(t if s > 0 else neg(t))
        return KForm(P, T.degree, {k: add(*v) for k, v in out.items()})
    if isinstance(T, Tensor02):
        g = T.comps
        return Tensor02(P, [[add(X(g[i][j]),
                                 *(mul(g[k][j], dX[k][i]) for k in range(n)),
                                 *(mul(g[i][k], dX[k][j]) for k in range(n))) for j in range(n)]
                            for i in range(n)])
    if isinstance(T, Tensor11):
        J = T.comps
        return Tensor11(P, [[add(X(J[i][j]),
                                 *(neg(mul(J[k][j], dX[i][k])) for k in range(n)),
                                 *(mul(J[i][k], dX[k][j]) for k in range(n))) for j in range(n)]
                            for i in range(n)])
    if isinstance(T, Bivector):
        return lie_derivative_bivector(X, T)
    raise TypeError(f"no Lie derivative for {type(T).__name__}")


def lie_derivative_bivector(X: VectorField, L: Bivector) -> Bivector:
    P = X.patch
    _same(P, L.patch)
    n = P.dim
    dX = [[differentiate(X.comps[i], x) for x in P.coords] for i in range(n)]
    A = L.comps
    return Bivector(P, [[add(X(A[i][j]),
                             *(neg(mul(A[k][j], dX[i][k])) for k in range(n)),
                             *(neg(mul(A[i][k], dX[j][k])) for k in range(n))) for j in range(n)]
                        for i in range(n)])


def pullback(phi: SmoothMap, omega: KForm) -> KForm:
    """phi^* omega, with omega on phi.target."""
    _same(phi.target, omega.patch)
    S = phi.source
    mapping = dict(zip(phi.target.coords, phi.comps))
    dphi = [exterior_derivative(scalar_field(S, c)) for c in phi.comps]
    out = KForm(S, omega.degree, {})
    for I, c in omega.comps.items():
        term = scalar_field(S, substitute(c, mapping)) if not I else None
        if I:
            term = wedge_all([dphi[i] for i in I]).scale(substitute(c, mapping))
        out = out + term
    return out


def pushforward_vector(phi: SmoothMap, X: VectorField) -> VectorField:
    """(phi_* X) expressed along the image, components in source coordinates."""
    _same(phi.source, X.patch)
    return VectorField(phi.target, [X(c) for c in phi.comps])


# ---------------------------------------------------------------------------
# complex structures, multivectors


def nijenhuis(J: Tensor11):
    """N[i][j][k]: components of N_J(d_j, d_k) = [Jd_j,Jd_k] - J[Jd_j,d_k] - J[d_j,Jd_k]."""
    P = J.patch
    n = P.dim
    c = J.comps
    dJ = [[[differentiate(c[i][j], x) for x in P.coords] for j in range(n)] for i in range(n)]  # d_m J^i_j
    N = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                v = add(*(mul(c[m][j], dJ[i][k][m]) for m in range(n)),
                        *(neg(mul(c[m][k], dJ[i][j][m])) for m in range(n)),
                        *(mul(c[i][m], dJ[m][j][k]) for m in range(n)),
                        *(neg(mul(c[i][m], dJ[m][k][j])) for m in range(n)))
                N[i][j][k] = v
                N[i][k][j] = neg(v)
    return N


def schouten_ll(L: Bivector) -> MultiVector:
    """[L,L]^{ijk} = 2 sum_m (L^{mi} d_m L^{jk} + L^{mj} d_m L^{ki} + L^{mk} d_m L^{ij})."""
    P = L.patch
    n = P.dim
    A = L.comps
    dA = {}

    def dd(i, j, m):
        key = (i, j, m)
        if key not in dA:
            dA[key] = differentiate(A[i][j], P.coords[m])
        return dA[key]

    comps = {}
    for i, j, k in itertools.combinations(range(n), 3):
        terms = []
        for m in range(n):
            terms += [mul(A[m][i], dd(j, k, m)), mul(A[m][j], dd(k, i, m)), mul(A[m][k], dd(i, j, m))]
        comps[(i, j, k)] = mul(Const(2), add(*terms))
    return MultiVector(P, 3, comps)


def wedge_vector_bivector(X: VectorField, L: Bivector) -> MultiVector:
    return X.as_multivector() ^ L.as_multivector()


# ---------------------------------------------------------------------------
# metrics and connections


def symbolic_det(m) -> Expr:
    """Determinant by cofactor expansion with memoized minors (small n)."""
    n = len(m)
    memo: dict = {}

    def minor(rows: tuple, cols: tuple) -> Expr:
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            r = m[rows[0]][cols[0]]
        else:
            terms = []
            i = rows[0]
            for p, j in enumerate(cols):
                a = m[i][j]
                if is_zero_const(a):
                    continue
                t = mul(a, minor(rows[1:], cols[:p] + cols[p + 1:]))
                terms.append(t if p % 2 == 0 else neg(t))
            r = add(*terms)
        memo[key] = r
        return r

    return minor(tuple(range(n)), tuple(range(n)))


def symbolic_inverse(m, policy: SamplePolicy = DEFAULT_POLICY):
    """Inverse of a symbolic matrix: adjugate for n <= 4, Gauss-Jordan otherwise.

    Gauss-Jordan picks pivots that are nonzero at a seeded sample point, so
    the result is valid on the generic (dense open) set of the patch.
    """
    n = len(m)
    if n <= 4:
        det = symbolic_det(m)
        if is_zero_const(det):
            raise DegenerateMetric("matrix is identically singular")
        dinv = power(det, -1)
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows = tuple(r for r in range(n) if r != j)
                cols = tuple(c for c in range(n) if c != i)
                cof = symbolic_det([[m[r][c] for c in cols] for r in rows]) if n > 1 else ONE
                out[i][j] = mul(cof, dinv) if (i + j) % 2 == 0 else neg(mul(cof, dinv))
        return out
    return gauss_jordan_inverse(m, policy)


def gauss_jordan_inverse(m, policy: SamplePolicy = DEFAULT_POLICY):
    n = len(m)
    aug = [[_e(c) for c in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    names = set()
    for row in m:
        for c in row:
            from .expr import free_vars
            names |= free_vars(_e(c))
    pt = float_points(names, policy.with_(n=1), [], 1) if names else {}

    def val(e):
        if is_zero_const(e):
            return 0.0
        v, bad = eval_float(e, pt, 1)
        return 0.0 if bad[0] else float(v[0])

    for col in range(n):
        best = max(range(col, n), key=lambda r: abs(val(aug[r][col])))
        if abs(val(aug[best][col])) < 1e-12:
            raise DegenerateMetric("matrix is singular at the pivot sample point")
        aug[col], aug[best] = aug[best], aug[col]
        pinv = power(aug[col][col], -1)
        aug[col] = [mul(c, pinv) for c in aug[col]]
        for r in range(n):
            if r != col and not is_zero_const(aug[r][col]):
                f = aug[r][col]
                aug[r] = [sub(a, mul(f, b)) if not is_zero_const(b) else a for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def gauss_jordan_solve(m, rhs, policy: SamplePolicy = DEFAULT_POLICY):
    """Solve m x = rhs symbolically (pivots chosen nonzero at a seeded sample point)."""
    n = len(m)
    from .expr import free_vars

    aug = [[_e(c) for c in row] + [_e(b)] for row, b in zip(m, rhs)]
    names = set()
    for row in aug:
        for c in row:
            names |= free_vars(c)
    pt = float_points(names, policy.with_(n=1), [], 1) if names else {}

    def val(e):
        if is_zero_const(e):
            return 0.0
        v, bad = eval_float(e, pt, 1)
        return 0.0 if bad[0] else float(v[0])

    for col in range(n):
        best = max(range(col, n), key=lambda r: abs(val(aug[r][col])))
        if abs(val(aug[best][col])) < 1e-12:
            raise SingularJacobian("linear system is singular at the pivot sample point")
        aug[col], aug[best] = aug[best], aug[col]
        pinv = power(aug[col][col], -1)
        aug[col] = [mul(c, pinv) for c in aug[col]]
        for r in range(n):
            if r != col and not is_zero_const(aug[r][col]):
                f = aug[r][col]
                aug[r] = [sub(a, mul(f, b)) if not is_zero_const(b) else a for a, b in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def metric_inverse(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY):
    if g.inverse_hint is not None:
        return g.inverse_hint
    return symbolic_inverse(g.comps, policy)


def levi_civita(g: Tensor02, policy: SamplePolicy = DEFAULT_POLICY) -> Connection:
    """Koszul formula Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk)."""
    P = g.patch
    n = P.dim
    G = g.comps
    names = set()
    from .expr import free_vars

    for row in G:
        for c in row:
            names |= free_vars(c)
    if not names:
        return Connection.flat(P)
    ginv = metric_inverse(g, policy)
    dg = [[[differentiate(G[a][b], x) for x in P.coords] for b in range(n)] for a in range(n)]  # dg[a][b][c]=d_c g_ab
    half = Const(Fraction(1, 2))
    # lowered symbols Gamma_ljk
    low = [[[mul(half, add(dg[l][k][j], dg[l][j][k], neg(dg[j][k][l]))) for k in range(n)] for j in range(n)]
           for l in range(n)]
    gamma = [[[add(*(mul(ginv[i][l], low[l][j][k]) for l in range(n)
                     if not is_zero_const(ginv[i][l]) and not is_zero_const(low[l][j][k])))
               for k in range(n)] for j in range(n)] for i in range(n)]
    return Connection(P, gamma)


def covariant_derivative(nabla: Connection, X: VectorField, T):
    """nabla_X T for vector fields, (0,2) and (1,1) tensors, 1-forms."""
    P = nabla.patch
    _same(P, X.patch)
    n = P.dim
    Gm = nabla.gamma
    # A[i][k] = Gamma^i_{lk} X^l
    A = [[add(*(mul(Gm[i][l][k], X.comps[l]) for l in range(n)
               if not is_zero_const(Gm[i][l][k]) and not is_zero_const(X.comps[l])))
          for k in range(n)] for i in range(n)]
    if isinstance(T, VectorField):
        return VectorField(P, [add(X(T.comps[i]), *(mul(A[i][k], T.comps[k]) for k in range(n)))
                               for i in range(n)])
    if isinstance(T, Tensor02):
        g = T.comps
        return Tensor02(P, [[add(X(g[i][j]),
                                 *(neg(mul(A[k][i], g[k][j])) for k in range(n)),
                                 *(neg(mul(A[k][j], g[i][k])) for k in range(n))) for j in range(n)]
                            for i in range(n)])
    if isinstance(T, Tensor11):
        J = T.comps
        return Tensor11(P, [[add(X(J[i][j]),
                                 *(mul(A[i][k], J[k][j]) for k in range(n)),
                                 *(neg(mul(A[k][j], J[i][k])) for k in range(n))) for j in range(n)]
                            for i in range(n)])
    if isinstance(T, KForm) and T.degree == 1:
        return KForm(P, 1, {(j,): add(X(T[j]), *(neg(mul(A[k][j], T[k])) for k in range(n)))
                            for j in range(n)})
    raise TypeError(f"no covariant derivative for {type(T).__name__}")


def riemann(nabla: Connection):
    """R[i][j][k][l] = (R(d_k, d_l) d_j)^i."""
    P = nabla.patch
    n = P.dim
    G = nabla.gamma
    R = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k + 1, n):
                    v = add(differentiate(G[i][l][j], P.coords[k]),
                            neg(differentiate(G[i][k][j], P.coords[l])),
                            *(mul(G[i][k][m], G[m][l][j]) for m in range(n)),
                            *(neg(mul(G[i][l][m], G[m][k][j])) for m in range(n)))
                    R[i][j][k][l] = v
                    R[i][j][l][k] = neg(v)
    return R


def ricci(nabla: Connection) -> Tensor02:
    R = riemann(nabla)
    n = nabla.patch.dim
    return Tensor02(nabla.patch, [[add(*(R[i][j][i][l] for i in range(n))) for l in range(n)] for j in range(n)])


# ---------------------------------------------------------------------------
# numerics at sample points


def two_form_matrix(omega: KForm):
    """Antisymmetric component matrix Omega[i][j] = omega(d_i, d_j)."""
    if omega.degree != 2:
        raise DegreeError("need a 2-form")
    n = omega.patch.dim
    return [[omega[i, j] if i != j else ZERO for j in range(n)] for i in range(n)]


def eval_matrix(m, pts, size):
    """Evaluate a nested list of Exprs at float points; shape (size, rows, cols)."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = np.zeros((size, rows, cols))
    for i in range(rows):
        for j in range(cols):
            e = m[i][j]
            if not is_zero_const(e):
                out[:, i, j] = eval_float(e, pts, size)[0]
    return out


def pfaffian(a) -> float:
    """Pfaffian of a real antisymmetric matrix (Gaussian elimination with pivoting)."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0.0:
            return 0.0
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            col = a[k + 2:, k + 1].copy()
            a[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return float(pf)


def _names_of(exprs):
    from .expr import free_vars

    s = set()
    for e in exprs:
        s |= free_vars(e)
    return s


def pointwise_rank(obj, policy: SamplePolicy = DEFAULT_POLICY, patch: Patch | None = None, n: int | None = None):
    """(min, max) numeric rank over seeded samples of a vector list or a 2-form."""
    if isinstance(obj, KForm):
        m = two_form_matrix(obj)
        P = obj.patch
    else:
        vecs = list(obj.generators if isinstance(obj, Distribution) else obj)
        P = patch or vecs[0].patch
        m = [list(v.comps) for v in vecs]
    exprs = [e for r in m for e in r]
    names = _names_of(exprs) | set(P.coords)
    count = policy.n if n is None else n
    pts = float_points(names, policy, exprs, count)
    vals = eval_matrix(m, pts, count)
    ranks = []
    for M in vals:
        s = np.linalg.svd(M, compute_uv=False) if M.size else np.zeros(0)
        tol = max(M.shape) * np.finfo(float).eps * 1e3 * max(1.0, float(s[0]) if s.size else 1.0)
        ranks.append(int(np.sum(s > max(tol, 1e-9))))
    return min(ranks), max(ranks)


def jacobian_det(phi: SmoothMap) -> Expr:
    J = phi.jacobian()
    if len(J) <= 4:
        return symbolic_det(J)
    raise ValueError("symbolic Jacobian determinant limited to n <= 4; use numeric_jacobian_det")


def numeric_det(m, pts, size):
    vals = eval_matrix(m, pts, size)
    return np.linalg.det(vals) if vals.size else np.ones(size)


__all__ = [
    "Patch", "KForm", "MultiVector", "VectorField", "Tensor02", "Metric", "Tensor11", "Bivector",
    "Connection", "Distribution", "SmoothMap", "form", "scalar_field", "dx", "function_of",
    "exterior_derivative", "d", "wedge", "wedge_all", "interior_product", "lie_bracket", "lie_derivative",
    "lie_derivative_bivector", "pullback", "pushforward_vector", "nijenhuis", "schouten_ll",
    "wedge_vector_bivector", "symbolic_det", "symbolic_inverse", "gauss_jordan_inverse", "gauss_jordan_solve", "metric_inverse",
    "levi_civita", "covariant_derivative", "riemann", "ricci", "two_form_matrix", "eval_matrix",
    "pfaffian", "pointwise_rank", "jacobian_det", "numeric_det", "compare_pairs",
]
