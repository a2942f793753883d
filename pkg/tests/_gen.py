"""Seeded generators of random polynomial data for the property and acceptance suites."""

import random
from fractions import Fraction

from weil.expr import parse
from weil.geometry import KForm, Patch, VectorField

__all__ = ["rand_poly", "rand_poly_text", "rand_field", "rand_form", "rand_element"]


def rand_poly_text(rng: random.Random, names, max_deg=2, terms=3) -> str:
    out = []
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if c == 0:
            continue
        mono = "*".join(f"{v}^{rng.randint(1, max_deg)}" for v in names if rng.random() < 0.5)
        out.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(out) or "0"


def rand_poly(rng, names, max_deg=2, terms=3):
    return parse(rand_poly_text(rng, names, max_deg, terms))


def rand_field(rng, P: Patch, max_deg=2) -> VectorField:
    return VectorField(P, [rand_poly(rng, P.coords, max_deg) for _ in P.coords])


def rand_form(rng, P: Patch, degree: int, max_deg=2) -> KForm:
    from itertools import combinations

    comps = {}
    for idx in combinations(range(P.dim), degree):
        if rng.random() < 0.7:
            comps[idx] = rand_poly(rng, P.coords, max_deg)
    return KForm(P, degree, comps)


def rand_element(rng, A, kind="rational"):
    if kind == "float":
        return A.element([rng.uniform(-1.5, 1.5) for _ in range(A.dim)])
    return A.element([Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(A.dim)])
