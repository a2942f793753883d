"""Symbolic scalar expressions over named coordinates.

Expressions are immutable trees (in practice DAGs, since subtrees are shared)
built from a small node set: ``Const``, ``Var``, ``Neg``, ``Add``, ``Sub``,
``Mul``, ``Div``, ``Pow`` (integer exponent) and ``Fn`` (one of six analytic
unary functions).

There are two ways to build trees:

* :func:`parse` produces the *raw* tree of the input text; the only folding it
  does is flattening of ``+``/``*`` chains, negated literals and literal
  quotients such as ``2/3``.  ``parse(to_string(e)) == e`` for raw trees.
* the smart constructors :func:`add`, :func:`mul`, :func:`power`, ... (and the
  Python operators on :class:`Expr`) fold constants, collect like terms and
  merge powers.  Every library operation builds trees this way; :func:`simplify`
  rebuilds a raw tree with them.

:func:`evaluate` works over any commutative ring whose elements support the
Python arithmetic operators: floats, numpy arrays, ``Fraction``, Weil algebra
elements (with any coefficient kind) and ``Expr`` itself (substitution).
"""

from __future__ import annotations

import sys
import zlib
from fractions import Fraction
from functools import lru_cache
from numbers import Integral

import numpy as np

from .errors import DivisionByNonUnit, DomainError, ScalarKindError

__all__ = [
    "Expr", "Const", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Fn",
    "FUNCTIONS", "MAX_EXPONENT", "ZERO", "ONE", "ExprSyntaxError",
    "parse", "to_string", "as_expr", "const", "var",
    "add", "sub", "mul", "div", "neg", "power", "fn",
    "simplify", "expand", "differentiate", "substitute", "evaluate", "free_vars",
    "has_functions", "is_zero_const", "taylor_derivatives",
]

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
MAX_EXPONENT = 64

# precedence levels used by the printer
_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _crc(s: str) -> int:
    return zlib.crc32(s.encode())


class Expr:
    """Base node.  Hashes are built from ints only so they are stable across runs."""

    __slots__ = ("_h", "_fv", "_k", "_fn")
    __array_ufunc__ = None

    def __hash__(self):
        return self._h

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr) or self._h != other._h or type(self) is not type(other):
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        return not self.__eq__(other)

    def _fields(self):
        raise NotImplementedError

    def children(self) -> tuple:
        return ()

    # arithmetic goes through the smart constructors
    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else add(self, o)

    def __radd__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else add(o, self)

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else sub(self, o)

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else sub(o, self)

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else mul(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else mul(o, self)

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else div(self, o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else div(o, self)

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if not isinstance(e, Integral):
            return NotImplemented
        return power(self, int(e))

    def __str__(self):
        return to_string(self, pretty=True)

    def __repr__(self):
        return f"Expr({to_string(self)!r})"

    @property
    def sort_key(self):
        k = getattr(self, "_k", None)
        if k is None:
            k = self._sort_key()
            self._k = k
        return k

    def _sort_key(self):
        return (9, self._h)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, bool) or not isinstance(value, (Integral, Fraction)):
            raise ScalarKindError(f"Const needs an exact rational, got {type(value).__name__}")
        self.value = Fraction(value)
        self._h = hash((1, self.value))
        self._fv = frozenset()
        self._fn = False
        self._k = None

    def _fields(self):
        return (self.value,)

    def _sort_key(self):
        return (0, self.value)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not _is_identifier(name):
            raise ValueError(f"invalid variable name {name!r}")
        self.name = name
        self._h = hash((2, _crc(name)))
        self._fv = frozenset((name,))
        self._fn = False
        self._k = None

    def _fields(self):
        return (self.name,)

    def _sort_key(self):
        return (1, self.name)


class _Compound(Expr):
    __slots__ = ()

    def _init_common(self, h):
        self._h = h
        self._fv = None
        self._fn = None
        self._k = None


class Neg(_Compound):
    __slots__ = ("arg",)

    def __init__(self, arg: Expr):
        self.arg = arg
        self._init_common(hash((3, arg._h)))

    def _fields(self):
        return (self.arg,)

    def children(self):
        return (self.arg,)


class Add(_Compound):
    __slots__ = ("args",)

    def __init__(self, args):
        args = tuple(args)
        if len(args) < 2:
            raise ValueError("Add needs at least two operands")
        self.args = args
        self._init_common(hash((4,) + tuple(a._h for a in args)))

    def _fields(self):
        return self.args

    def children(self):
        return self.args

    def _sort_key(self):
        return (6, self._h)


class Sub(_Compound):
    __slots__ = ("left", "right")

    def __init__(self, left: Expr, right: Expr):
        self.left, self.right = left, right
        self._init_common(hash((5, left._h, right._h)))

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


class Mul(_Compound):
    __slots__ = ("args",)

    def __init__(self, args):
        args = tuple(args)
        if len(args) < 2:
            raise ValueError("Mul needs at least two operands")
        self.args = args
        self._init_common(hash((6,) + tuple(a._h for a in args)))

    def _fields(self):
        return self.args

    def children(self):
        return self.args

    def _sort_key(self):
        return (3, tuple(a.sort_key for a in self.args if not isinstance(a, Const)))


class Div(_Compound):
    __slots__ = ("left", "right")

    def __init__(self, left: Expr, right: Expr):
        self.left, self.right = left, right
        self._init_common(hash((7, left._h, right._h)))

    def _fields(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


class Pow(_Compound):
    __slots__ = ("base", "exp")

    def __init__(self, base: Expr, exp: int):
        if isinstance(exp, bool) or not isinstance(exp, Integral):
            raise TypeError("Pow exponent must be an integer")
        exp = int(exp)
        if abs(exp) > MAX_EXPONENT:
            raise ValueError(f"exponent {exp} exceeds the bound {MAX_EXPONENT}")
        self.base, self.exp = base, exp
        self._init_common(hash((8, base._h, exp)))

    def _fields(self):
        return (self.base, self.exp)

    def children(self):
        return (self.base,)

    def _sort_key(self):
        return (2, self.base.sort_key, self.exp)


class Fn(_Compound):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg: Expr):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}")
        self.name, self.arg = name, arg
        self._init_common(hash((9, _crc(name), arg._h)))

    def _fields(self):
        return (self.name, self.arg)

    def children(self):
        return (self.arg,)

    def _sort_key(self):
        return (4, self.name, self.arg.sort_key)


ZERO = Const(0)
ONE = Const(1)


def _is_identifier(name) -> bool:
    if not isinstance(name, str) or not name or not name[0].isascii() or not name[0].isalpha():
        return False
    return all(c.isascii() and (c.isalnum() or c == "_") for c in name)


def _coerce(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (Integral, Fraction)):
        return Const(x)
    if isinstance(x, (float, np.floating)):
        raise ScalarKindError("floats cannot enter symbolic expressions; use Fraction")
    return NotImplemented


def const(v) -> Const:
    return Const(v)


def var(name: str) -> Var:
    return Var(name)


def as_expr(x) -> Expr:
    """Coerce strings (parsed), ints and Fractions to expressions."""
    if isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return simplify(parse(x))
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Expr")
    return c


def is_zero_const(e) -> bool:
    return isinstance(e, Const) and e.value == 0


def free_vars(e: Expr) -> frozenset:
    fv = e._fv
    if fv is None:
        out = set()
        for c in e.children():
            out |= free_vars(c)
        fv = frozenset(out)
        e._fv = fv
    return fv


def has_functions(e: Expr) -> bool:
    """True when an analytic function node occurs anywhere in ``e``."""
    f = e._fn
    if f is None:
        f = isinstance(e, Fn) or any(has_functions(c) for c in e.children())
        e._fn = f
    return f


# ---------------------------------------------------------------------------
# smart constructors


def _split_coef(a: Expr):
    if isinstance(a, Mul) and isinstance(a.args[0], Const):
        rest = a.args[1:]
        return a.args[0].value, (rest[0] if len(rest) == 1 else Mul(rest))
    return Fraction(1), a


def _with_coef(c: Fraction, rest: Expr) -> Expr:
    if c == 1:
        return rest
    if isinstance(rest, Mul):
        return Mul((Const(c),) + rest.args)
    return Mul((Const(c), rest))


def add(*args) -> Expr:
    constant = Fraction(0)
    terms: dict = {}
    stack = list(reversed(args))
    while stack:
        a = stack.pop()
        if not isinstance(a, Expr):
            a = as_expr(a)
        if isinstance(a, Const):
            constant += a.value
        elif isinstance(a, Add):
            stack.extend(reversed(a.args))
        else:
            c, rest = _split_coef(a)
            terms[rest] = terms.get(rest, 0) + c
    items = [(r, c) for r, c in terms.items() if c != 0]
    items.sort(key=lambda rc: rc[0].sort_key)
    out = [_with_coef(c, r) for r, c in items]
    if constant != 0:
        out.append(Const(constant))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(out)


def _factor_key(b: Expr):
    return b.sort_key


def mul(*args) -> Expr:
    coef = Fraction(1)
    powers: dict = {}
    stack = list(reversed(args))
    while stack:
        a = stack.pop()
        if not isinstance(a, Expr):
            a = as_expr(a)
        if isinstance(a, Const):
            coef *= a.value
            if coef == 0:
                return ZERO
        elif isinstance(a, Mul):
            stack.extend(reversed(a.args))
        elif isinstance(a, Pow):
            powers[a.base] = powers.get(a.base, 0) + a.exp
        else:
            powers[a] = powers.get(a, 0) + 1
    factors = [(b, e) for b, e in powers.items() if e != 0]
    factors.sort(key=lambda be: _factor_key(be[0]))
    fexprs = [b if e == 1 else Pow(b, e) for b, e in factors]
    if not fexprs:
        return Const(coef)
    if coef == 1:
        return fexprs[0] if len(fexprs) == 1 else Mul(fexprs)
    if len(fexprs) == 1 and isinstance(fexprs[0], Add):
        # c*(a + b) -> c*a + c*b so like terms keep merging
        return add(*(mul(Const(coef), t) for t in fexprs[0].args))
    return Mul([Const(coef)] + fexprs)


def power(b, e: int) -> Expr:
    if not isinstance(b, Expr):
        b = as_expr(b)
    e = int(e)
    if e == 0:
        return ONE
    if e == 1:
        return b
    if isinstance(b, Const):
        if b.value == 0 and e < 0:
            raise DivisionByNonUnit("zero raised to a negative power")
        return Const(b.value ** e)
    if isinstance(b, Pow):
        return power(b.base, b.exp * e)
    if isinstance(b, Mul):
        return mul(*(power(f, e) for f in b.args))
    return Pow(b, e)


def neg(a) -> Expr:
    return mul(Const(-1), a)


def sub(a, b) -> Expr:
    return add(a, neg(b))


def div(a, b) -> Expr:
    if not isinstance(b, Expr):
        b = as_expr(b)
    if isinstance(b, Const):
        if b.value == 0:
            raise DivisionByNonUnit("division by the constant 0")
        return mul(a, Const(1 / b.value))
    return mul(a, power(b, -1))


_FN_AT_ZERO = {"sin": 0, "tan": 0, "sqrt": 0, "cos": 1, "exp": 1}


def fn(name: str, a) -> Expr:
    if not isinstance(a, Expr):
        a = as_expr(a)
    if isinstance(a, Const):
        if a.value == 0 and name in _FN_AT_ZERO:
            return Const(_FN_AT_ZERO[name])
        if a.value == 1 and name in ("log", "sqrt"):
            return Const(0 if name == "log" else 1)
    return Fn(name, a)


def simplify(e: Expr) -> Expr:
    """Constant folding, 0/1 identities, flattening and like-term collection."""
    memo: dict = {}

    def rec(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, (Const, Var)):
            r = n
        elif isinstance(n, Add):
            r = add(*(rec(a) for a in n.args))
        elif isinstance(n, Mul):
            r = mul(*(rec(a) for a in n.args))
        elif isinstance(n, Neg):
            r = neg(rec(n.arg))
        elif isinstance(n, Sub):
            r = sub(rec(n.left), rec(n.right))
        elif isinstance(n, Div):
            r = div(rec(n.left), rec(n.right))
        elif isinstance(n, Pow):
            r = power(rec(n.base), n.exp)
        elif isinstance(n, Fn):
            r = fn(n.name, rec(n.arg))
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    return rec(e)


def expand(e: Expr) -> Expr:
    """Distribute products over sums (positive integer powers included)."""
    memo: dict = {}

    def terms_of(n):
        return n.args if isinstance(n, Add) else (n,)

    def rec(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, (Const, Var)):
            r = n
        elif isinstance(n, Fn):
            r = fn(n.name, rec(n.arg))
        elif isinstance(n, (Add, Sub, Neg, Div)):
            r = simplify_node(n, rec)
        elif isinstance(n, Pow):
            b = rec(n.base)
            if isinstance(b, Add) and n.exp > 0:
                r = b
                for _ in range(n.exp - 1):
                    r = _distribute(r, b)
            else:
                r = power(b, n.exp)
        elif isinstance(n, Mul):
            r = ONE
            for a in n.args:
                r = _distribute(r, rec(a))
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    def _distribute(a, b):
        if not isinstance(a, Add) and not isinstance(b, Add):
            return mul(a, b)
        return add(*(mul(s, t) for s in terms_of(a) for t in terms_of(b)))

    return rec(e)


def simplify_node(n: Expr, rec) -> Expr:
    """Rebuild one node with smart constructors after mapping children by ``rec``."""
    if isinstance(n, Add):
        return add(*(rec(a) for a in n.args))
    if isinstance(n, Mul):
        return mul(*(rec(a) for a in n.args))
    if isinstance(n, Neg):
        return neg(rec(n.arg))
    if isinstance(n, Sub):
        return sub(rec(n.left), rec(n.right))
    if isinstance(n, Div):
        return div(rec(n.left), rec(n.right))
    if isinstance(n, Pow):
        return power(rec(n.base), n.exp)
    if isinstance(n, Fn):
        return fn(n.name, rec(n.arg))
    return n


# ---------------------------------------------------------------------------
# calculus


def differentiate(e: Expr, v: str) -> Expr:
    """Partial derivative of ``e`` with respect to the variable named ``v``."""
    memo: dict = {}

    def rec(n):
        if v not in free_vars(n):
            return ZERO
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, Var):
            r = ONE
        elif isinstance(n, Add):
            r = add(*(rec(a) for a in n.args))
        elif isinstance(n, Sub):
            r = sub(rec(n.left), rec(n.right))
        elif isinstance(n, Neg):
            r = neg(rec(n.arg))
        elif isinstance(n, Mul):
            terms = []
            for i, a in enumerate(n.args):
                da = rec(a)
                if not is_zero_const(da):
                    terms.append(mul(*n.args[:i], da, *n.args[i + 1:]))
            r = add(*terms)
        elif isinstance(n, Div):
            a, b = n.left, n.right
            r = sub(div(rec(a), b), mul(a, rec(b), power(b, -2)))
        elif isinstance(n, Pow):
            r = mul(Const(n.exp), power(n.base, n.exp - 1), rec(n.base))
        elif isinstance(n, Fn):
            r = mul(_fn_derivative(n.name, n.arg), rec(n.arg))
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    return rec(e)


def _fn_derivative(name: str, u: Expr) -> Expr:
    if name == "sin":
        return fn("cos", u)
    if name == "cos":
        return neg(fn("sin", u))
    if name == "tan":
        return add(ONE, power(fn("tan", u), 2))
    if name == "exp":
        return fn("exp", u)
    if name == "log":
        return power(u, -1)
    if name == "sqrt":
        return mul(Const(Fraction(1, 2)), power(fn("sqrt", u), -1))
    raise ValueError(name)  # pragma: no cover


@lru_cache(maxsize=None)
def taylor_derivatives(name: str, order: int) -> tuple:
    """Expressions for f, f', ..., f^(order-1) in the variable ``t``."""
    out = [fn(name, Var("t"))]
    while len(out) < order:
        out.append(differentiate(out[-1], "t"))
    return tuple(out[:order])


def substitute(e: Expr, mapping: dict) -> Expr:
    """Replace variables by expressions (names missing from ``mapping`` stay)."""
    mapping = {k: as_expr(v) for k, v in mapping.items()}
    keys = frozenset(mapping)
    memo: dict = {}

    def rec(n):
        if not (free_vars(n) & keys):
            return n
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, Var):
            r = mapping[n.name]
        elif isinstance(n, Add):
            r = add(*(rec(a) for a in n.args))
        elif isinstance(n, Mul):
            r = mul(*(rec(a) for a in n.args))
        elif isinstance(n, Neg):
            r = neg(rec(n.arg))
        elif isinstance(n, Sub):
            r = sub(rec(n.left), rec(n.right))
        elif isinstance(n, Div):
            r = div(rec(n.left), rec(n.right))
        elif isinstance(n, Pow):
            r = power(rec(n.base), n.exp)
        elif isinstance(n, Fn):
            r = fn(n.name, rec(n.arg))
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    return rec(e)


# ---------------------------------------------------------------------------
# evaluation over a scalar ring


def _is_float_like(x) -> bool:
    return isinstance(x, (float, np.floating)) or (isinstance(x, np.ndarray) and x.dtype.kind == "f")


def _apply_fn(name: str, x):
    if isinstance(x, Expr):
        return fn(name, x)
    if hasattr(x, "series"):
        # Weil element: Taylor expansion around its real part
        c = x.real_part()
        derivs = [evaluate(d, {"t": c}) for d in taylor_derivatives(name, x.algebra.series_order)]
        return x.series(derivs)
    if _is_float_like(x):
        arr = np.asarray(x, dtype=float)
        if name == "log" and np.any(arr <= 0):
            raise DomainError("log of a nonpositive value")
        if name == "sqrt" and np.any(arr < 0):
            raise DomainError("sqrt of a negative value")
        out = getattr(np, "log" if name == "log" else name)(x)
        return out
    if isinstance(x, (Integral, Fraction)):
        v = Fraction(x)
        if v == 0 and name in _FN_AT_ZERO:
            return Fraction(_FN_AT_ZERO[name])
        if v == 1 and name in ("log", "sqrt"):
            return Fraction(0 if name == "log" else 1)
        if name in ("log", "sqrt") and v <= 0:
            raise DomainError(f"{name} of a nonpositive value")
        raise ScalarKindError(f"{name}({v}) is not exactly rational; evaluate over floats")
    raise TypeError(f"cannot apply {name} to {type(x).__name__}")


def _is_exact_zero(x) -> bool:
    if isinstance(x, (Integral, Fraction, float, np.floating)):
        return x == 0
    if isinstance(x, Expr):
        return is_zero_const(x)
    if isinstance(x, np.ndarray):
        return bool(np.any(x == 0))
    return False


def _check_env(env: dict):
    kinds = set()
    for v in env.values():
        if isinstance(v, bool):
            raise ScalarKindError("booleans are not scalars")
        if isinstance(v, (Integral, Fraction)):
            kinds.add("rational")
        elif _is_float_like(v):
            kinds.add("float")
    if len(kinds) > 1:
        raise ScalarKindError("environment mixes exact rationals and floats")


def evaluate(e: Expr, env: dict):
    """Evaluate ``e`` with variables bound by ``env`` over the env's scalar ring.

    Division by an element with zero real part raises
    :class:`DivisionByNonUnit`; log/sqrt outside the domain raise
    :class:`DomainError`.
    """
    _check_env(env)
    memo: dict = {}

    def rec(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, Const):
            r = n.value
        elif isinstance(n, Var):
            try:
                r = env[n.name]
            except KeyError:
                raise KeyError(f"no value bound for variable {n.name!r}") from None
            if isinstance(r, Integral) and not isinstance(r, bool):
                r = Fraction(r)
        elif isinstance(n, Add):
            r = rec(n.args[0])
            for a in n.args[1:]:
                r = r + rec(a)
        elif isinstance(n, Sub):
            r = rec(n.left) - rec(n.right)
        elif isinstance(n, Neg):
            r = -rec(n.arg)
        elif isinstance(n, Mul):
            r = rec(n.args[0])
            for a in n.args[1:]:
                r = r * rec(a)
        elif isinstance(n, Div):
            d = rec(n.right)
            if _is_exact_zero(d):
                raise DivisionByNonUnit("division by zero")
            r = rec(n.left) / d
        elif isinstance(n, Pow):
            b = rec(n.base)
            if n.exp < 0 and _is_exact_zero(b):
                raise DivisionByNonUnit("zero raised to a negative power")
            r = b ** n.exp
        elif isinstance(n, Fn):
            r = _apply_fn(n.name, rec(n.arg))
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    return rec(e)


# ---------------------------------------------------------------------------
# printing


def _prec(n: Expr) -> int:
    if isinstance(n, (Add, Sub)):
        return _ADD
    if isinstance(n, (Mul, Div)):
        return _MUL
    if isinstance(n, Neg):
        return _NEG
    if isinstance(n, Pow):
        return _POW
    return _ATOM


def _const_str(v: Fraction) -> str:
    if v.denominator == 1 and v >= 0:
        return str(v.numerator)
    return f"({v})"


def _neg_leading(n: Expr) -> bool:
    if isinstance(n, Const):
        return n.value < 0
    return isinstance(n, Mul) and isinstance(n.args[0], Const) and n.args[0].value < 0


def to_string(e: Expr, pretty: bool = False) -> str:
    """Print in the parser's grammar.

    The default output is faithful: parsing it returns the identical raw tree.
    ``pretty=True`` renders negative terms with ``-`` and is only guaranteed to
    round-trip up to :func:`simplify`.
    """

    def paren(n, cond):
        s = rec(n)
        return f"({s})" if cond else s

    if pretty and isinstance(e, Const):
        return str(e.value)

    def rec(n):
        if isinstance(n, Const):
            return _const_str(n.value)
        if isinstance(n, Var):
            return n.name
        if isinstance(n, Fn):
            return f"{n.name}({rec(n.arg)})"
        if isinstance(n, Pow):
            return f"{paren(n.base, _prec(n.base) <= _POW)}^{n.exp}"
        if isinstance(n, Neg):
            return "-" + paren(n.arg, _prec(n.arg) < _NEG)
        if isinstance(n, Sub):
            return f"{rec(n.left)} - {paren(n.right, _prec(n.right) <= _ADD)}"
        if isinstance(n, Div):
            return f"{paren(n.left, _prec(n.left) < _MUL)}/{paren(n.right, _prec(n.right) <= _MUL)}"
        if isinstance(n, Mul):
            args = n.args
            if pretty and isinstance(args[0], Const) and args[0].value == -1:
                rest = args[1] if len(args) == 2 else Mul(args[1:])
                return "-" + paren(rest, _prec(rest) < _MUL)
            parts = [paren(args[0], _prec(args[0]) < _MUL or isinstance(args[0], Mul))]
            parts += [paren(a, _prec(a) <= _MUL) for a in args[1:]]
            return "*".join(parts)
        if isinstance(n, Add):
            out = paren(n.args[0], isinstance(n.args[0], Add))
            for a in n.args[1:]:
                if pretty and _neg_leading(a):
                    m = neg(a)
                    out += " - " + paren(m, _prec(m) <= _ADD)
                else:
                    out += " + " + paren(a, _prec(a) <= _ADD)
            return out
        raise TypeError(type(n))  # pragma: no cover

    return rec(e)


# ---------------------------------------------------------------------------
# parsing


class ExprSyntaxError(SyntaxError):
    """Parse failure; ``offset`` is the 0-based byte offset, ``expected`` a set."""

    def __init__(self, message: str, text: str, offset: int, expected=()):
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        full = f"{message} at offset {offset}" + (f" (expected one of: {exp})" if exp else "")
        super().__init__(full)
        self.msg = full
        self.text = text
        self.offset = offset


_OPERATORS = frozenset("+-*/^(),")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            toks.append(("num", text[i:j], i))
            i = j
        elif c.isascii() and c.isalpha():
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("id", text[i:j], i))
            i = j
        elif c in _OPERATORS:
            toks.append(("op", c, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {c!r}", text, len(text[:i].encode()))
    toks.append(("end", "", n))
    return toks


def _fold_const(e):
    """Value of a constant-only raw tree, or None."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Neg):
        v = _fold_const(e.arg)
        return None if v is None else -v
    if isinstance(e, Pow):
        v = _fold_const(e.base)
        if v is None or (v == 0 and e.exp < 0):
            return None
        return v ** e.exp
    return None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def offset(self, tok) -> int:
        return len(self.text[: tok[2]].encode())

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, expected):
        raise ExprSyntaxError(msg, self.text, self.offset(self.peek()), expected)

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token", {"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.next()[1]
            rhs = self.term()
            if op == "+":
                left = acc.args if isinstance(acc, Add) else (acc,)
                right = rhs.args if isinstance(rhs, Add) else (rhs,)
                acc = Add(left + right)
            else:
                acc = Sub(acc, rhs)
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.next()
            rhs = self.unary()
            if tok[1] == "*":
                left = acc.args if isinstance(acc, Mul) else (acc,)
                right = rhs.args if isinstance(rhs, Mul) else (rhs,)
                acc = Mul(left + right)
            elif isinstance(acc, Const) and isinstance(rhs, Const):
                if rhs.value == 0:
                    raise ExprSyntaxError("division by a zero literal", self.text, self.offset(tok))
                acc = Const(acc.value / rhs.value)
            else:
                acc = Div(acc, rhs)
        return acc

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.next()
            a = self.unary()
            return Const(-a.value) if isinstance(a, Const) else Neg(a)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.next()
            start = self.peek()
            e = self.unary()
            v = _fold_const(e)
            if v is None or v.denominator != 1 or abs(v) > MAX_EXPONENT:
                raise ExprSyntaxError(
                    f"integer exponent with |e| <= {MAX_EXPONENT} required",
                    self.text, self.offset(start), {"integer"},
                )
            return Pow(base, int(v))
        return base

    def atom(self):
        kind, val, _ = tok = self.peek()
        if kind == "num":
            self.next()
            return Const(Fraction(val))
        if kind == "id":
            self.next()
            if val in FUNCTIONS:
                if not (self.peek()[0] == "op" and self.peek()[1] == "("):
                    self.fail(f"function {val} needs an argument", {"("})
                self.next()
                arg = self.expr()
                self.expect_close()
                return Fn(val, arg)
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                raise ExprSyntaxError(f"unknown function {val!r}", self.text, self.offset(tok))
            return Var(val)
        if kind == "op" and val == "(":
            self.next()
            e = self.expr()
            self.expect_close()
            return e
        self.fail("expected an operand", {"number", "identifier", "("})

    def expect_close(self):
        if self.peek()[0] == "op" and self.peek()[1] == ")":
            self.next()
            return
        self.fail("unclosed parenthesis", {")", "+", "-", "*", "/", "^"})


def parse(text: str) -> Expr:
    """Parse ``text`` into a raw expression tree.

    Grammar, loosest first: ``+ -`` < ``* /`` < unary ``-`` < ``^`` (right
    associative, integer exponents).  Literals are decimal (``0.5``) and exact.
    """
    return _Parser(text).parse()
