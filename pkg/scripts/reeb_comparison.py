#!/usr/bin/env python3
"""Solved lifted Reeb field vs the averaged lift of the base Reeb field.

Both always project to the base Reeb field; whether they coincide is an open question
that this script probes for the contact and cosymplectic fixtures.
"""

from weil import fixtures as fx
from weil.algebra import algebra_from_spec, functional
from weil.lift import LiftConfig, averaged_lift_vector
from weil.manifest import serialize_component
from weil.structures import lift_structure, reeb_contact, reeb_cosymplectic


def base_reeb(m):
    d = m.data
    sol = reeb_contact(d["beta"]) if m.kind == "contact" else reeb_cosymplectic(d["omega"], d["eta"])
    return sol.field


def main():
    cases = (("contact dz + x dy", fx.contact_r3()), ("contact dz - y dx", fx.contact_r3("dz - y dx")),
             ("cosymplectic", fx.cosymplectic_r3()))
    for label, m in cases:
        for spec in ("jet(2)", "jet(4)", "truncated(2,1)"):
            A = algebra_from_spec(spec)
            lam = functional(A, [1] + [0] * (A.dim - 2) + [1])
            if not lam.nondegenerate:
                print(f"{label:<20} {spec:<15} functional (1, 0, ..., 1) is degenerate; skipped")
                continue
            res = lift_structure(m, LiftConfig(A, lam))
            rep = res.report
            same = rep.metadata.get("reeb_equals_averaged_lift")
            proj = rep["reeb-projects"].status if "reeb-projects" in rep else "n/a"
            print(f"{label:<20} {spec:<15} lift {rep.status:<5} projects={proj:<5} equals averaged lift={same}")
            sol = res.extras.get("reeb")
            if sol is not None and sol.field is not None and not same:
                print("    solved:  ", serialize_component(sol.field)["components"])
                avg = averaged_lift_vector(base_reeb(m), A)
                print("    averaged:", serialize_component(avg)["components"])


if __name__ == "__main__":
    main()
