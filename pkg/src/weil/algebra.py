"""Weil algebras as structure-constant tables, their elements and linear functionals.

A Weil algebra here is a finite-dimensional commutative unital algebra with
basis ``a_1 = 1, a_2, ..., a_l`` and rational structure constants
``a_i a_j = sum_k c[i][j][k] a_k``; the span of ``a_2..a_l`` is the nilpotent
maximal ideal.  Indices are 0-based in code (``a_1`` is index 0).
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import cached_property
from numbers import Integral

import numpy as np

from . import linalg
from .errors import (
    AlgebraMismatch, InputError, InsufficientDerivatives, ScalarKindError, ZeroRealPart,
)
from .expr import ONE, ZERO, Const, Expr, is_zero_const
from .report import EXACT_ZERO, Check, VerificationReport, check_from

DIM_CAP = 512

RATIONAL, FLOAT, SYMBOLIC = "rational", "float", "expr"


def scalar_kind(v) -> str | None:
    """Kind of a single scalar; plain ints are kind-neutral (None)."""
    if isinstance(v, bool):
        raise ScalarKindError("booleans are not scalars")
    if isinstance(v, Expr):
        return SYMBOLIC
    if isinstance(v, Fraction):
        return RATIONAL
    if isinstance(v, Integral):
        return None
    if isinstance(v, (float, np.floating)):
        return FLOAT
    raise ScalarKindError(f"unsupported scalar type {type(v).__name__}")


def _convert(v, kind: str):
    k = scalar_kind(v)
    if kind == RATIONAL:
        if k in (None, RATIONAL):
            return Fraction(v)
    elif kind == FLOAT:
        if k in (None, RATIONAL, FLOAT):
            return float(v)
    elif kind == SYMBOLIC:
        if k == SYMBOLIC:
            return v
        if k in (None, RATIONAL):
            return Const(v)
    raise ScalarKindError(f"cannot use a {k} scalar in a {kind} computation")


def _zero(kind):
    return {RATIONAL: Fraction(0), FLOAT: 0.0, SYMBOLIC: ZERO}[kind]


def _one(kind):
    return {RATIONAL: Fraction(1), FLOAT: 1.0, SYMBOLIC: ONE}[kind]


def _is_zero(v) -> bool:
    if isinstance(v, Expr):
        return is_zero_const(v)
    return v == 0


class WeilAlgebra:
    """Structure-constant representation; see module docstring.

    The constructor only checks shapes.  Axioms are *reported* by
    :func:`verify_axioms` so that defective custom tables can be inspected.
    """

    def __init__(self, table, labels=None, name: str = "custom", degrees=None, cap: int = DIM_CAP):
        l = len(table)
        if l < 1:
            raise InputError("algebra dimension must be positive")
        if l > cap:
            raise InputError(f"algebra dimension {l} exceeds the cap {cap}")
        try:
            t = tuple(
                tuple(tuple(Fraction(v) for v in table[i][j]) for j in range(l)) for i in range(l)
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"structure constants must be rational: {exc}") from None
        if any(len(table[i]) != l or any(len(table[i][j]) != l for j in range(l)) for i in range(l)):
            raise InputError("structure-constant table must have shape l x l x l")
        self.dim = l
        self.table = t
        self.name = name
        self.labels = tuple(labels) if labels is not None else ("1",) + tuple(f"a{k}" for k in range(2, l + 1))
        if len(self.labels) != l:
            raise InputError("need one label per basis element")
        self.degrees = tuple(degrees) if degrees is not None else None
        # sparse products: _prod[i][j] = ((k, c), ...)
        self._prod = tuple(
            tuple(tuple((k, c) for k, c in enumerate(t[i][j]) if c != 0) for j in range(l)) for i in range(l)
        )
        self.ideal_indices = tuple(range(1, l))
        self.nilpotency_order = self._find_nilpotency_order()

    # -- structure ---------------------------------------------------------

    def _mul_vec(self, i, v):
        out = [Fraction(0)] * self.dim
        for j, cj in enumerate(v):
            if cj:
                for k, c in self._prod[i][j]:
                    out[k] += c * cj
        return out

    def _find_nilpotency_order(self):
        if self.dim == 1:
            return 1
        basis = [[Fraction(int(k == i)) for k in range(self.dim)] for i in self.ideal_indices]
        order = 1
        prev = len(basis)
        while basis:
            products = [self._mul_vec(i, v) for i in self.ideal_indices for v in basis]
            basis = linalg.row_basis(products)
            order += 1
            if len(basis) >= prev and basis:
                return None  # ideal powers stopped shrinking: not nilpotent
            prev = len(basis)
        return order

    @property
    def series_order(self) -> int:
        if self.nilpotency_order is None:
            raise InputError(f"algebra {self.name} has no nilpotent maximal ideal")
        return self.nilpotency_order

    def __eq__(self, other):
        return isinstance(other, WeilAlgebra) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"WeilAlgebra({self.name}, dim={self.dim})"

    def product_terms(self, i: int, j: int):
        """Nonzero ``(k, c)`` pairs of ``a_i a_j``."""
        return self._prod[i][j]

    # -- elements ----------------------------------------------------------

    def element(self, coeffs, kind: str | None = None) -> "WeilElement":
        return WeilElement(self, coeffs, kind)

    def zero(self, kind: str = RATIONAL) -> "WeilElement":
        return WeilElement(self, [_zero(kind)] * self.dim, kind)

    def one(self, kind: str = RATIONAL) -> "WeilElement":
        return self.basis(0, kind)

    def basis(self, k: int, kind: str = RATIONAL) -> "WeilElement":
        z, o = _zero(kind), _one(kind)
        return WeilElement(self, [o if i == k else z for i in range(self.dim)], kind)

    def scalar(self, c, kind: str | None = None) -> "WeilElement":
        kind = kind or scalar_kind(c) or RATIONAL
        z = _zero(kind)
        return WeilElement(self, [_convert(c, kind)] + [z] * (self.dim - 1), kind)

    def multiplication_table(self):
        """Labels of ``a_i a_j`` as readable strings."""
        rows = []
        for i in range(self.dim):
            rows.append([self.element(list(self.table[i][j])).format() for j in range(self.dim)])
        return rows


class WeilElement:
    """An element ``sum_k coeffs[k] a_k``; all coefficients share one scalar kind."""

    __slots__ = ("algebra", "coeffs", "kind")
    __array_ufunc__ = None  # keep numpy scalars from broadcasting over elements

    def __init__(self, algebra: WeilAlgebra, coeffs, kind: str | None = None):
        coeffs = list(coeffs)
        if len(coeffs) != algebra.dim:
            raise InputError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        if kind is None:
            kinds = {scalar_kind(c) for c in coeffs} - {None}
            if len(kinds) > 1:
                raise ScalarKindError(f"mixed scalar kinds {sorted(kinds)}")
            kind = kinds.pop() if kinds else RATIONAL
        self.algebra = algebra
        self.kind = kind
        self.coeffs = tuple(_convert(c, kind) for c in coeffs)

    @classmethod
    def _raw(cls, algebra, coeffs, kind):
        obj = cls.__new__(cls)
        obj.algebra, obj.coeffs, obj.kind = algebra, tuple(coeffs), kind
        return obj

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, WeilElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
            if other.kind != self.kind:
                raise ScalarKindError(f"cannot combine {self.kind} and {other.kind} elements")
            return other
        try:
            c = _convert(other, self.kind)
        except ScalarKindError:
            raise
        return self.algebra.scalar(c, self.kind)

    def _accepts(self, other) -> bool:
        return isinstance(other, (WeilElement, Expr, Fraction, Integral, float, np.floating))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not self._accepts(other):
            return NotImplemented
        o = self._coerce(other)
        return WeilElement._raw(self.algebra, [a + b for a, b in zip(self.coeffs, o.coeffs)], self.kind)

    __radd__ = __add__

    def __neg__(self):
        return WeilElement._raw(self.algebra, [-a for a in self.coeffs], self.kind)

    def __sub__(self, other):
        if not self._accepts(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not self._accepts(other):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not self._accepts(other):
            return NotImplemented
        if not isinstance(other, WeilElement):
            c = _convert(other, self.kind)
            return WeilElement._raw(self.algebra, [a * c for a in self.coeffs], self.kind)
        o = self._coerce(other)
        A = self.algebra
        acc = [[] for _ in range(A.dim)]
        for i, x in enumerate(self.coeffs):
            if _is_zero(x):
                continue
            for j, y in enumerate(o.coeffs):
                if _is_zero(y):
                    continue
                xy = x * y
                for k, c in A._prod[i][j]:
                    acc[k].append(xy if c == 1 else xy * _convert(c, self.kind))
        z = _zero(self.kind)
        out = []
        for terms in acc:
            if not terms:
                out.append(z)
            elif self.kind == SYMBOLIC:
                from .expr import add
                out.append(add(*terms))
            else:
                s = terms[0]
                for t in terms[1:]:
                    s = s + t
                out.append(s)
        return WeilElement._raw(A, out, self.kind)

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def __truediv__(self, other):
        if not self._accepts(other):
            return NotImplemented
        if isinstance(other, WeilElement):
            return self * self._coerce(other).invert()
        c = _convert(other, self.kind)
        if _is_zero(c):
            raise ZeroRealPart("division by zero scalar")
        if self.kind == SYMBOLIC:
            from .expr import div
            return WeilElement._raw(self.algebra, [div(a, c) for a in self.coeffs], self.kind)
        return WeilElement._raw(self.algebra, [a / c for a in self.coeffs], self.kind)

    def __rtruediv__(self, other):
        if not self._accepts(other):
            return NotImplemented
        return self._coerce(other) * self.invert()

    def __pow__(self, e):
        if not isinstance(e, Integral):
            return NotImplemented
        e = int(e)
        base = self if e >= 0 else self.invert()
        result = self.algebra.one(self.kind)
        n = abs(e)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, WeilElement):
            return self.algebra == other.algebra and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- structure ---------------------------------------------------------

    def real_part(self):
        return self.coeffs[0]

    def nilpotent_part(self) -> "WeilElement":
        return WeilElement._raw(self.algebra, [_zero(self.kind)] + list(self.coeffs[1:]), self.kind)

    def invert(self) -> "WeilElement":
        """Inverse via the terminating geometric series on the nilpotent part."""
        c = self.real_part()
        if _is_zero(c):
            raise ZeroRealPart("element lies in the maximal ideal and is not a unit")
        if self.kind == SYMBOLIC:
            from .expr import power
            cinv = power(c, -1)
        else:
            cinv = 1 / c
        n = self.nilpotent_part() * cinv  # x = c (1 + n)
        N = self.algebra.series_order
        one = self.algebra.one(self.kind)
        acc = one
        for _ in range(N - 1):  # 1 - n + n^2 - ... (Horner)
            acc = one - n * acc
        return acc * cinv

    def series(self, derivs) -> "WeilElement":
        """sum_m f^(m)(c)/m! (x - c)^m with c the real part; ``derivs[m] = f^(m)(c)``."""
        N = self.algebra.series_order
        if len(derivs) < N:
            raise InsufficientDerivatives(f"need {N} derivative orders, got {len(derivs)}")
        n = self.nilpotent_part()
        terms = [_convert(derivs[m], self.kind) * _convert(Fraction(1, math.factorial(m)), self.kind) if m > 1
                 else _convert(derivs[m], self.kind) for m in range(N)]
        acc = self.algebra.scalar(terms[N - 1], self.kind)
        for m in range(N - 2, -1, -1):
            acc = acc * n + terms[m]
        return acc

    def apply_series(self, derivs) -> "WeilElement":
        return self.series(derivs)

    def lam(self, functional: "LinearFunctional"):
        return functional(self)

    def map_coeffs(self, f, kind: str | None = None) -> "WeilElement":
        return WeilElement(self.algebra, [f(c) for c in self.coeffs], kind)

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def format(self) -> str:
        parts = []
        for c, lab in zip(self.coeffs, self.algebra.labels):
            if _is_zero(c):
                continue
            cs = str(c)
            if isinstance(c, Expr) and any(ch in cs for ch in "+- "):
                cs = f"({cs})"
            if lab == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(lab)
            elif cs == "-1":
                parts.append("-" + lab)
            else:
                parts.append(f"{cs}*{lab}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"WeilElement[{self.algebra.name}]({self.format()})"


def apply_series(derivs, x: WeilElement) -> WeilElement:
    return x.series(derivs)


def real_part(x: WeilElement):
    return x.real_part()


def invert(x: WeilElement) -> WeilElement:
    return x.invert()


# ---------------------------------------------------------------------------
# constructors


def _monomial_algebra(monos, name, label_fn, k_max):
    """Algebra with basis the given exponent tuples, truncating total degree > k_max."""
    index = {m: i for i, m in enumerate(monos)}
    l = len(monos)
    table = [[[0] * l for _ in range(l)] for _ in range(l)]
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            prod = tuple(x + y for x, y in zip(a, b))
            if sum(prod) <= k_max and prod in index:
                table[i][j][index[prod]] = 1
    return WeilAlgebra(table, [label_fn(m) for m in monos], name, degrees=[sum(m) for m in monos])


def make_trivial_algebra() -> WeilAlgebra:
    return WeilAlgebra([[[1]]], ["1"], "trivial", degrees=[0])


def make_jet_algebra(k: int) -> WeilAlgebra:
    """R[u]/(u^{k+1}), basis 1, u, ..., u^k."""
    if isinstance(k, bool) or not isinstance(k, Integral) or k < 1:
        raise InputError("jet order k must be an integer >= 1 (use make_trivial_algebra for dim 1)")
    if k + 1 > DIM_CAP:
        raise InputError(f"algebra dimension {k + 1} exceeds the cap {DIM_CAP}")

    def label(m):
        return "1" if m[0] == 0 else ("u" if m[0] == 1 else f"u^{m[0]}")

    name = "dual" if k == 1 else f"jet({k})"
    return _monomial_algebra([(d,) for d in range(k + 1)], name, label, k)


def make_dual_numbers() -> WeilAlgebra:
    return make_jet_algebra(1)


def truncated_monomials(n: int, k: int):
    """Exponent tuples of total degree <= k in degree-lexicographic order."""
    out = []
    for d in range(k + 1):
        degree_d = [m for m in itertools.product(range(d, -1, -1), repeat=n) if sum(m) == d]
        out.extend(sorted(degree_d, reverse=True))
    return out


def make_truncated_poly(n: int, k: int, cap: int = DIM_CAP) -> WeilAlgebra:
    """R[X_1..X_n]/m^{k+1}; dimension C(n+k, k)."""
    for v, nm in ((n, "n"), (k, "k")):
        if isinstance(v, bool) or not isinstance(v, Integral) or v < 1:
            raise InputError(f"{nm} must be an integer >= 1")
    dim = math.comb(n + k, k)
    if dim > cap:
        raise InputError(f"algebra dimension {dim} exceeds the cap {cap}")

    def label(m):
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(f"X{i + 1}")
            elif e > 1:
                parts.append(f"X{i + 1}^{e}")
        return "*".join(parts) or "1"

    return _monomial_algebra(truncated_monomials(n, k), f"truncated({n},{k})", label, k)


_SPEC_RE = re.compile(r"^\s*(dual|trivial|jet\s*\(\s*(\d+)\s*\)|truncated\s*\(\s*(\d+)\s*,\s*(\d+)\s*\))\s*$")


def algebra_from_spec(spec: str) -> WeilAlgebra:
    """Parse ``dual``, ``trivial``, ``jet(k)`` or ``truncated(n,k)``."""
    m = _SPEC_RE.match(spec) if isinstance(spec, str) else None
    if not m:
        raise InputError(f"unknown algebra spec {spec!r}; use dual, jet(k) or truncated(n,k)")
    if m.group(1) == "dual":
        return make_dual_numbers()
    if m.group(1) == "trivial":
        return make_trivial_algebra()
    if m.group(2) is not None:
        return make_jet_algebra(int(m.group(2)))
    return make_truncated_poly(int(m.group(3)), int(m.group(4)))


# ---------------------------------------------------------------------------
# axioms


def verify_axioms(A: WeilAlgebra) -> VerificationReport:
    """Exact check of commutativity, associativity, unit, ideal closure, nilpotency."""
    rep = VerificationReport(f"Weil algebra axioms: {A.name} (dim {A.dim})")
    c = A.table
    l = A.dim

    def residual_check(name, diffs):
        worst = max((abs(d) for d in diffs), default=Fraction(0))
        rep.add(check_from(name, worst == 0, EXACT_ZERO if worst == 0 else float(worst)))

    residual_check("commutativity", (c[i][j][k] - c[j][i][k] for i in range(l) for j in range(l) for k in range(l)))
    assoc = []
    for i in range(l):
        for j in range(l):
            for kk in range(l):
                left = [Fraction(0)] * l
                right = [Fraction(0)] * l
                for m in range(l):
                    if c[i][j][m]:
                        for r in range(l):
                            left[r] += c[i][j][m] * c[m][kk][r]
                    if c[j][kk][m]:
                        for r in range(l):
                            right[r] += c[j][kk][m] * c[i][m][r]
                assoc.extend(a - b for a, b in zip(left, right))
    residual_check("associativity", assoc)
    residual_check("unit", (c[0][j][k] - (1 if j == k else 0) for j in range(l) for k in range(l)))
    residual_check("ideal-closure", (c[i][j][0] for i in range(1, l) for j in range(1, l)))
    nil = A.nilpotency_order
    rep.add(Check("nilpotency", "pass" if nil is not None else "fail", EXACT_ZERO if nil is not None else None,
                  0, f"order {nil}" if nil is not None else "ideal powers do not vanish"))
    rep.metadata.update({"dim": l, "nilpotency_order": nil, "labels": list(A.labels)})
    return rep


# ---------------------------------------------------------------------------
# functionals


class LinearFunctional:
    """lambda(a_k) = values[k]; Gram form B[k][m] = lambda(a_k a_m)."""

    def __init__(self, algebra: WeilAlgebra, values, name: str = "custom"):
        values = list(values)
        if len(values) != algebra.dim:
            raise InputError(f"functional needs {algebra.dim} values, got {len(values)}")
        try:
            self.values = tuple(Fraction(v) if not isinstance(v, float) else Fraction(str(v)) for v in values)
        except (TypeError, ValueError) as exc:
            raise InputError(f"functional values must be rational: {exc}") from None
        self.algebra = algebra
        self.name = name

    def __call__(self, x: WeilElement):
        if x.algebra != self.algebra:
            raise AlgebraMismatch("functional and element live on different algebras")
        terms = [(v, c) for v, c in zip(self.values, x.coeffs) if v != 0 and not _is_zero(c)]
        if x.kind == SYMBOLIC:
            from .expr import add, mul
            return add(*(mul(Const(v), c) for v, c in terms))
        acc = _zero(x.kind)
        for v, c in terms:
            acc = acc + _convert(v, x.kind) * c
        return acc

    @property
    def gram(self):
        A = self.algebra
        return [[sum((self.values[k] * c for k, c in A._prod[i][j]), Fraction(0)) for j in range(A.dim)]
                for i in range(A.dim)]

    @property
    def det(self) -> Fraction:
        return linalg.det(self.gram)

    @property
    def normalized(self) -> bool:
        return self.values[0] == 1

    @property
    def nondegenerate(self) -> bool:
        return self.det != 0

    @property
    def signature(self):
        return linalg.signature(self.gram)

    @cached_property
    def dual_basis(self):
        """Coefficient rows b^m with lambda(a_s b^m) = delta_sm (requires nondegeneracy)."""
        if not self.nondegenerate:
            raise InputError(f"functional {self.name} has a degenerate Gram form")
        inv = linalg.inverse(self.gram)
        # b^m = sum_t inv[t][m] a_t  (gram symmetric)
        return [[inv[t][m] for t in range(self.algebra.dim)] for m in range(self.algebra.dim)]

    def to_dict(self) -> dict:
        return {"name": self.name, "values": [str(v) for v in self.values]}

    def __repr__(self):
        return f"LinearFunctional({self.name}, {[str(v) for v in self.values]})"


def gram_of(lam: LinearFunctional):
    return lam.gram


def is_nondegenerate(lam: LinearFunctional) -> bool:
    return lam.nondegenerate


def functional(algebra: WeilAlgebra, spec="real") -> LinearFunctional:
    """Preset ``real`` | ``top`` | ``mixed`` or an explicit list of values.

    ``mixed`` puts 1 on the unit and on every basis element of top degree
    (``(1, 0, 1)`` on jet(2)); its Gram form is nondegenerate exactly when the
    algebra has a one-dimensional socle.
    """
    l = algebra.dim
    if isinstance(spec, str):
        if spec == "real":
            vals = [1] + [0] * (l - 1)
        elif spec == "top":
            vals = [0] * (l - 1) + [1]
        elif spec == "mixed":
            vals = [0] * l
            vals[0] = 1
            if algebra.degrees is not None:
                top = max(algebra.degrees)
                for i, d in enumerate(algebra.degrees):
                    if d == top:
                        vals[i] = 1
            else:
                vals[-1] = 1
        else:
            raise InputError(f"unknown functional preset {spec!r}")
        return LinearFunctional(algebra, vals, spec)
    return LinearFunctional(algebra, spec, "custom")
