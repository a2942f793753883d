"""Seeded random-point identity testing for expressions.

Two evaluation paths:

* exact: rational functions of moderate size are evaluated with Fractions at
  random rational points; a verdict is then a proof-by-evaluation and the
  residual is the exact-zero marker.
* float: anything with analytic nodes (or very large DAGs) is evaluated with
  vectorized numpy over all candidate points at once; points where some
  expression is undefined or a denominator is (nearly) zero are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DivisionByNonUnit, DomainError, UnsampleablePoint
from .expr import (
    Add, Const, Div, Expr, Fn, Mul, Neg, Pow, Sub, Var, as_expr, evaluate, free_vars, has_functions,
)
from .report import EXACT_ZERO, Check, check_from

EXACT_NODE_LIMIT = 2500
_DENOM_EPS = 1e-10
_RATIONAL_DEN = 97


@dataclass(frozen=True)
class SamplePolicy:
    seed: int = 0
    n: int = 24
    tol: float = 1e-9
    low: float = -2.0
    high: float = 2.0
    max_retries: int = 40  # candidate budget = n * max_retries
    exact: bool = True  # allow the exact rational path

    def with_(self, **kw) -> "SamplePolicy":
        d = dict(self.__dict__)
        d.update(kw)
        return SamplePolicy(**d)


DEFAULT_POLICY = SamplePolicy()


def dag_size(exprs) -> int:
    seen = set()
    stack = list(exprs)
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        stack.extend(n.children())
    return len(seen)


# ---------------------------------------------------------------------------
# vectorized float evaluation


def eval_float(e: Expr, env: dict, size: int):
    """Evaluate over float arrays; returns (values, bad_mask)."""
    bad = np.zeros(size, dtype=bool)
    memo: dict = {}

    def rec(n):
        nonlocal bad
        r = memo.get(id(n))
        if r is not None:
            return r
        if isinstance(n, Const):
            r = np.full(size, float(n.value))
        elif isinstance(n, Var):
            r = np.broadcast_to(np.asarray(env[n.name], dtype=float), (size,))
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
            bad = bad | (np.abs(d) < _DENOM_EPS)
            r = rec(n.left) / d
        elif isinstance(n, Pow):
            b = rec(n.base)
            if n.exp < 0:
                bad = bad | (np.abs(b) < _DENOM_EPS)
            r = b ** float(n.exp)
        elif isinstance(n, Fn):
            a = rec(n.arg)
            if n.name in ("log", "sqrt"):
                bad = bad | (a <= 0)  # also reject sqrt(0): derivatives blow up there
            elif n.name == "tan":
                bad = bad | (np.abs(np.cos(a)) < 1e-8)
            r = getattr(np, n.name)(a)
        else:  # pragma: no cover
            raise TypeError(type(n))
        memo[id(n)] = r
        return r

    with np.errstate(all="ignore"):
        val = np.array(rec(e), dtype=float)
    bad = bad | ~np.isfinite(val)
    return val, bad


def _float_candidates(names, policy: SamplePolicy, count: int, rng):
    return {v: rng.uniform(policy.low, policy.high, count) for v in names}


def float_points(names, policy: SamplePolicy = DEFAULT_POLICY, exprs=(), n: int | None = None):
    """``n`` accepted float points (dict of arrays) where all ``exprs`` are well defined."""
    n = policy.n if n is None else n
    names = sorted(names)
    rng = np.random.default_rng(policy.seed)
    budget = n * policy.max_retries
    accepted = {v: [] for v in names}
    got = 0
    drawn = 0
    while got < n:
        if drawn >= budget:
            raise UnsampleablePoint(f"only {got} of {n} sample points accepted after {drawn} draws")
        m = max(2 * (n - got), 8)
        cand = _float_candidates(names, policy, m, rng)
        drawn += m
        ok = np.ones(m, dtype=bool)
        for e in exprs:
            _, bad = eval_float(e, cand, m)
            ok &= ~bad
        idx = np.nonzero(ok)[0][: n - got]
        for v in names:
            accepted[v].extend(cand[v][idx].tolist())
        got += len(idx)
    return {v: np.array(accepted[v]) for v in names}


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class Comparison:
    equal: bool
    max_residual: float | str
    samples_used: int
    exact: bool


def _use_exact(exprs, policy) -> bool:
    return policy.exact and not any(has_functions(e) for e in exprs) and dag_size(exprs) <= EXACT_NODE_LIMIT


def _rational_point(names, rng, policy):
    lo, hi = int(policy.low * _RATIONAL_DEN), int(policy.high * _RATIONAL_DEN)
    return {v: Fraction(int(rng.integers(lo, hi + 1)), _RATIONAL_DEN) for v in names}


def compare_pairs(pairs, policy: SamplePolicy = DEFAULT_POLICY, names=None) -> Comparison:
    """Test lhs == rhs for every pair at shared seeded sample points."""
    pairs = [(as_expr(a), as_expr(b)) for a, b in pairs]
    if not pairs:
        return Comparison(True, EXACT_ZERO, 0, True)
    diffs = [a - b for a, b in pairs]
    # structurally zero differences need no sampling
    live = [(p, d) for p, d in zip(pairs, diffs) if not (isinstance(d, Const) and d.value == 0)]
    if not live:
        return Comparison(True, EXACT_ZERO, 0, True)
    all_exprs = [x for (a, b), _ in live for x in (a, b)]
    if names is None:
        names = set()
        for e in all_exprs:
            names |= free_vars(e)
    names = sorted(names)
    if _use_exact(all_exprs, policy):
        return _compare_exact(live, names, policy)
    return _compare_float(live, names, policy)


def _compare_exact(live, names, policy) -> Comparison:
    rng = np.random.default_rng(policy.seed)
    used = 0
    attempts = 0
    worst = Fraction(0)
    target = policy.n if names else 1
    while used < target:
        if attempts >= target * policy.max_retries:
            raise UnsampleablePoint(f"only {used} of {target} exact sample points accepted")
        attempts += 1
        env = _rational_point(names, rng, policy)
        try:
            vals = [(evaluate(a, env), evaluate(b, env)) for (a, b), _ in live]
        except (DivisionByNonUnit, DomainError, ZeroDivisionError):
            continue
        used += 1
        for x, y in vals:
            worst = max(worst, abs(Fraction(x) - Fraction(y)))
    return Comparison(worst == 0, EXACT_ZERO if worst == 0 else float(worst), used, True)


def _compare_float(live, names, policy) -> Comparison:
    n = policy.n if names else 1
    exprs = [x for (a, b), _ in live for x in (a, b)]
    pts = float_points(names, policy, exprs, n)
    worst = 0.0
    equal = True
    for (a, b), _ in live:
        va, _ = eval_float(a, pts, n)
        vb, _ = eval_float(b, pts, n)
        scale = np.maximum(1.0, np.maximum(np.abs(va), np.abs(vb)))
        rel = np.abs(va - vb) / scale
        worst = max(worst, float(np.max(rel)))
        if np.any(rel > policy.tol):
            equal = False
    return Comparison(equal, worst, n, False)


def compare(e1, e2, policy: SamplePolicy = DEFAULT_POLICY) -> Comparison:
    return compare_pairs([(e1, e2)], policy)


def expr_equiv(e1, e2, policy: SamplePolicy = DEFAULT_POLICY) -> bool:
    """True iff e1 and e2 agree at ``policy.n`` seeded random points (to ``policy.tol``)."""
    return compare(e1, e2, policy).equal


def is_zero(e, policy: SamplePolicy = DEFAULT_POLICY) -> bool:
    return compare(e, Const(0), policy).equal


def identity_check(name: str, pairs, policy: SamplePolicy = DEFAULT_POLICY, detail: str = "") -> Check:
    """A report entry asserting every ``lhs == rhs`` in ``pairs``."""
    c = compare_pairs(list(pairs), policy)
    return check_from(name, c.equal, c.max_residual, c.samples_used, detail)
