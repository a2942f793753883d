"""``weil`` command line: algebra info, verify, lift, compare-lifts, demo.

Exit codes: 0 every claim holds, 1 some check failed, 2 input error (nothing
but the error message is printed in that case).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .algebra import algebra_from_spec, functional, verify_axioms
from .demos import DEMOS, run_demo
from .errors import InputError, WeilError
from .expr import ExprSyntaxError, is_zero_const, to_string
from .geometry import VectorField, lie_bracket
from .lift import (
    LiftedPatch, averaged_lift_vector, lift_vector_field, projection_pushforward,
)
from .manifest import SCHEMA_VERSION, load_manifest, serialize_component, serialize_structure
from .report import SKIPPED, Check, VerificationReport
from .sampling import SamplePolicy, compare_pairs, identity_check
from .structures import lift_structure, verify_structure

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message terse
        self.print_usage(sys.stderr)
        print(f"weil: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weil", description="Weil prolongations of geometric structures, verified.")
    p.add_argument("--version", action="version", version=f"weil {__version__}")
    p.add_argument("--seed", type=int, default=None, help="sampling seed (overrides the manifest)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("algebra", help="algebra utilities")
    asub = a.add_subparsers(dest="algebra_command", required=True, parser_class=_Parser)
    info = asub.add_parser("info", help="basis, multiplication table, Gram forms")
    info.add_argument("spec", help="dual | jet(k) | truncated(n,k)")
    info.add_argument("--format", choices=("text", "json"), default="text")

    for name, hlp in (("verify", "verify the base structure"), ("lift", "lift and re-verify"),
                      ("compare-lifts", "canonical vs averaged lift of a vector field")):
        c = sub.add_parser(name, help=hlp)
        c.add_argument("-m", "--manifest", required=True)
        c.add_argument("--format", choices=("text", "json", "latex"), default="text")
        c.add_argument("--out", default=None, help="write the report here instead of stdout")

    d = sub.add_parser("demo", help="run a fixed scenario")
    d.add_argument("name", choices=DEMOS + ("all",))
    d.add_argument("--slow", action="store_true", help="denser sampling for the lifted Sasakian check")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--out", default=None)
    return p


# ---------------------------------------------------------------------------
# rendering


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


_FN = re.compile(r"\b(sin|cos|tan|exp|log|sqrt)\(")
_SUB = re.compile(r"\b([A-Za-z][A-Za-z0-9]*)_(\d+)\b")


def latex_expr(e) -> str:
    s = to_string(e, pretty=True)
    s = _FN.sub(lambda m: "\\" + m.group(1) + "(" if m.group(1) != "sqrt" else "\\sqrt(", s)
    s = _SUB.sub(lambda m: f"{m.group(1)}_{{{m.group(2)}}}", s)
    s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
    return s.replace("*", " \\, ")


def _latex_name(c: str) -> str:
    return _SUB.sub(lambda m: f"{m.group(1)}_{{{m.group(2)}}}", c)


_GREEK = {"omega", "eta", "theta", "beta", "xi", "Phi", "Lambda", "Xi"}


def _g(name: str) -> str:
    return "\\" + name if name in _GREEK else name


def _coef(e) -> str:
    s = latex_expr(e)
    return "" if s == "1" else f"\\left({s}\\right) "


def latex_component(name: str, obj) -> list:
    """Aligned-equation lines for one component; other objects are skipped."""
    from .geometry import Bivector, KForm, Tensor02, Tensor11

    lines = []
    if isinstance(obj, KForm):
        P = obj.patch
        terms = [_coef(v) + " \\wedge ".join(f"d{_latex_name(P.coords[i])}" for i in k)
                 for k, v in obj.comps.items() if not is_zero_const(v)]
        lines.append(f"{_g(name)} &= " + (" + ".join(terms) if terms else "0"))
    elif isinstance(obj, (Tensor02, Tensor11, Bivector)):
        P = obj.patch
        for i in range(P.dim):
            for j in range(P.dim):
                c = obj.comps[i][j]
                if not is_zero_const(c):
                    lines.append(f"{_g(name)}_{{{_latex_name(P.coords[i])} {_latex_name(P.coords[j])}}} &= "
                                 f"{latex_expr(c)}")
    elif isinstance(obj, VectorField):
        P = obj.patch
        terms = [_coef(c) + f"\\partial_{{{_latex_name(P.coords[i])}}}"
                 for i, c in enumerate(obj.comps) if not is_zero_const(c)]
        lines.append(f"{_g(name)} &= " + (" + ".join(terms) if terms else "0"))
    return lines


def render_latex(lifted) -> str:
    lines = []
    for name, obj in sorted(lifted.data.items()):
        lines.extend(latex_component(name, obj))
    return "\\begin{aligned}\n" + " \\\\\n".join(lines) + "\n\\end{aligned}\n"


def _text_reports(reports) -> str:
    return "\n".join(r.format_text() for r in reports) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_algebra_info(args) -> tuple[int, str]:
    A = algebra_from_spec(args.spec)
    table = A.multiplication_table()
    grams = {}
    for preset in ("real", "top", "mixed"):
        lam = functional(A, preset)
        grams[preset] = {"values": [str(v) for v in lam.values], "gram": [[str(v) for v in r] for r in lam.gram],
                         "det": str(lam.det), "signature": list(lam.signature)}
    axioms = verify_axioms(A)
    doc = {"schema_version": SCHEMA_VERSION, "algebra": A.name, "dim": A.dim, "basis": list(A.labels),
           "nilpotency_order": A.nilpotency_order, "table": table, "functionals": grams,
           "axioms": axioms.to_dict()}
    if args.format == "json":
        return EXIT_OK if axioms.passed else EXIT_FAIL, dump_json(doc)
    lines = [f"algebra {A.name}: dimension l = {A.dim}, nilpotency order {A.nilpotency_order}",
             "basis: " + ", ".join(A.labels), "multiplication table:"]
    w = max(len(str(c)) for row in table for c in row) if table else 1
    w = max(w, max(len(x) for x in A.labels))
    lines.append(" " * (w + 3) + " ".join(f"{x:>{w}}" for x in A.labels))
    for lab, row in zip(A.labels, table):
        lines.append(f"{lab:>{w}} | " + " ".join(f"{str(c):>{w}}" for c in row))
    for preset, gdoc in grams.items():
        lines.append(f"functional {preset} = ({', '.join(gdoc['values'])}): det {gdoc['det']}, "
                     f"signature {tuple(gdoc['signature'])}")
        for r in gdoc["gram"]:
            lines.append("    [" + " ".join(f"{c:>4}" for c in r) + "]")
    lines.append(axioms.format_text())
    return EXIT_OK if axioms.passed else EXIT_FAIL, "\n".join(lines) + "\n"


def _run_report(command, man, reports, lifted=None, extra=None):
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "input": man.echo,
           "reports": [r.to_dict() for r in reports],
           "status": "pass" if all(r.passed for r in reports) else "fail"}
    if lifted is not None:
        doc["lifted"] = serialize_structure(lifted)
    if extra:
        doc.update(extra)
    return doc


def cmd_verify(args) -> tuple[int, str]:
    man = load_manifest(args.manifest, args.seed)
    rep = verify_structure(man.structure, man.policy)
    doc = _run_report("verify", man, [rep])
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if args.format == "json":
        return code, dump_json(doc)
    if args.format == "latex":
        return code, render_latex(man.structure)
    return code, _text_reports([rep])


def cmd_lift(args) -> tuple[int, str]:
    man = load_manifest(args.manifest, args.seed)
    res = lift_structure(man.structure, man.lift_config())
    code = EXIT_OK if res.report.passed else EXIT_FAIL
    if args.format == "json":
        return code, dump_json(_run_report("lift", man, [res.report], res.manifest))
    if args.format == "latex":
        return code, render_latex(res.manifest)
    lines = [res.report.format_text(), "lifted components:"]
    for name, obj in sorted(res.manifest.data.items()):
        lines.append(f"  {name}: {json.dumps(serialize_component(obj), sort_keys=True)}")
    return code, "\n".join(lines) + "\n"


def compare_lifts_report(X: VectorField, A, sections, policy) -> tuple[VerificationReport, dict]:
    """Canonical lift X^A vs averaged lift; both projections and bracket homomorphisms."""
    LP = LiftedPatch(X.patch, A)
    XA = lift_vector_field(X, A)
    Xt = averaged_lift_vector(X, A, sections)
    diff = XA - Xt
    rep = VerificationReport(f"compare lifts ({A.name})")
    c = compare_pairs([(v, 0) for v in diff.comps], policy)
    rep.metadata["lifts_differ"] = not c.equal
    for label, V in (("canonical", XA), ("averaged", Xt)):
        proj = projection_pushforward(V, LP, policy)
        rep.add(identity_check(f"{label}-projects", proj.pairs_with(X), policy, "pi_* V = X"))
    for label, lift in (("canonical", lambda Y: lift_vector_field(Y, A)),
                        ("averaged", lambda Y: averaged_lift_vector(Y, A, sections))):
        pairs = []
        for i in range(X.patch.dim):
            Y = VectorField.coordinate(X.patch, i)
            pairs.extend(lie_bracket(lift(X), lift(Y)).pairs_with(lift(lie_bracket(X, Y))))
        chk = identity_check(f"{label}-bracket-homomorphism", pairs, policy,
                             "[V(X), V(d_i)] = V([X, d_i]) for coordinate fields")
        if label == "averaged":  # reported, not claimed
            chk = Check(chk.name, SKIPPED, chk.max_residual, chk.samples_used,
                        chk.detail + f" -> {'holds' if chk.passed else 'fails'} (reported)")
        rep.add(chk)
    comps = {"canonical": serialize_component(XA), "averaged": serialize_component(Xt),
             "difference": serialize_component(diff)}
    return rep, comps


def cmd_compare_lifts(args) -> tuple[int, str]:
    man = load_manifest(args.manifest, args.seed)
    if man.vector_field is None:
        raise InputError("compare-lifts needs a vector_field entry in the manifest")
    if man.algebra is None:
        raise InputError("compare-lifts needs an algebra")
    rep, comps = compare_lifts_report(man.vector_field, man.algebra, man.sections, man.policy)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if args.format == "json":
        return code, dump_json(_run_report("compare-lifts", man, [rep], extra={"lifts": comps}))
    lines = [rep.format_text()]
    for k in ("canonical", "averaged", "difference"):
        lines.append(f"  {k}: {comps[k]['components']}")
    return code, "\n".join(lines) + "\n"


def cmd_demo(args) -> tuple[int, str]:
    policy = SamplePolicy(seed=args.seed or 0)
    names = DEMOS if args.name == "all" else (args.name,)
    results = [run_demo(n, policy, slow=args.slow) for n in names]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if args.format == "json":
        doc = [r.to_dict() for r in results]
        return code, dump_json(doc[0] if len(doc) == 1 else {"schema_version": SCHEMA_VERSION, "demos": doc})
    return code, "\n\n".join(r.format_text() for r in results) + "\n"


_COMMANDS = {"verify": cmd_verify, "lift": cmd_lift, "compare-lifts": cmd_compare_lifts, "demo": cmd_demo}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "algebra":
            code, text = cmd_algebra_info(args)
        else:
            code, text = _COMMANDS[args.command](args)
    except ExprSyntaxError as exc:
        print(f"weil: expression error at position {exc.offset}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"weil: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WeilError as exc:
        print(f"weil: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
