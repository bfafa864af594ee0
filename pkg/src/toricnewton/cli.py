"""Command-line front end: JSON reports and SVG plots.

Input is a JSON problem file::

    {"semigroup": [[1, 0], [1, 1], [1, 2]],
     "variables": ["x", "y", "z"],
     "ideal": ["x^2*y + 3*x^2*z", "y^3 - x*y + z^2"],
     "whitney": {"parameters": ["y"], "F": "..."}}      # optional

Exit codes: 0 success, 2 bad input, 3 an Unknown verdict or an uncertified
condition-W check.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .closure import (
    UNKNOWN,
    IdealData,
    MembershipResult,
    NonDegReport,
    build_ideal,
    c_closure_report,
    icirc_min_generators,
    is_nondegenerate,
    monomial_membership,
)
from .poly import Poly, parse_poly
from .polyhedra import Face, NewtonPolyhedron
from .semigroup import Semigroup, SupportedGerm, toric_ideal, validate_semigroup
from .whitney import FamilySpec, WhitneyReport, verdier_check

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 2, 3
_SAFE_INT = 2**53


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization


def num(x) -> Any:
    """Exact JSON value: ints as numbers when 53-bit safe, everything else as strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            x = x.numerator
        else:
            return str(x)
    if isinstance(x, int):
        return x if abs(x) < _SAFE_INT else str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    raise TypeError(f"cannot serialize {x!r}")


def vec(v: Sequence) -> list:
    return [num(x) for x in v]


def face_json(face: Face) -> dict:
    return {
        "normal": vec(face.normal),
        "ell": num(face.ell),
        "dim": face.dim,
        "vertices": [vec(p) for p in face.vertex_set],
        "compact": face.compact,
    }


def newton_json(P: NewtonPolyhedron) -> dict:
    return {
        "vertices": [vec(p) for p in P.vertices],
        "facets": [{"normal": vec(h.normal), "offset": num(h.offset)} for h in P.facets],
        "recession_rays": [vec(r) for r in P.recession.rays],
    }


def germ_json(g: SupportedGerm) -> dict:
    return {
        "germ": str(g.germ),
        "supp": [vec(p) for p in g.supp],
        "collisions": [vec(p) for p in g.collisions],
        "cancelled": [vec(p) for p in g.cancelled],
    }


def nondeg_json(report: NonDegReport) -> dict:
    faces = []
    for fc in report.per_face:
        faces.append({
            "face": face_json(fc.face),
            "face_polys": [str(p) for p in fc.face_polys],
            "torus_zero_exists": fc.torus_zero_exists,
            "witness": None if fc.witness is None else vec(fc.witness),
        })
    return {"nondegenerate": report.nondegenerate, "faces": faces}


def _curve_term(coeff: Fraction, k: int) -> str:
    t = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
    if coeff == 1:
        return t
    return f"{coeff}" if k == 0 else f"{coeff}*{t}"


def membership_json(res: MembershipResult, S: Semigroup) -> dict:
    out = {"verdict": res.verdict, "point": vec(res.point), "reason": res.reason, "witness": None}
    w = res.witness
    if w is not None:
        param = w.parametrization(S)
        out["witness"] = {
            "v": vec(w.v),
            "base": vec(w.base),
            "target_order": num(w.target_order),
            "min_generator_order": num(w.min_generator_order),
            "curve": [_curve_term(c, k) for c, k in param],
        }
    return out


def icirc_json(I: IdealData, search_box=None) -> dict:
    res = icirc_min_generators(I, search_box)
    names = _names(I)
    return {
        "search_box": vec(res.box),
        "generators": [
            {"monomial": str(Poly.monomial(names, k)), "exponent": vec(k), "point": vec(p)}
            for k, p in res.generators
        ],
    }


def closure_json(I: IdealData, nondeg: NonDegReport) -> dict:
    rep = c_closure_report(I, nondeg)
    return {
        "equality": rep.equality,
        "excluded": [membership_json(r, I.semigroup) for r in rep.excluded],
    }


def whitney_json(rep: WhitneyReport) -> dict:
    return {
        "verdict": rep.verdict,
        "failed_stage": rep.failed_stage,
        "defines_X": rep.defines_X,
        "jacobian_ideal": None if rep.jacobian_ideal is None else [germ_json(g) for g in rep.jacobian_ideal.generators],
        "newton": None if rep.jacobian_ideal is None else newton_json(rep.jacobian_ideal.newton),
        "nondeg": None if rep.nondeg is None else nondeg_json(rep.nondeg),
        "partials_in_closure": {
            y: [{"point": vec(p), "in_newton": ok} for p, ok in checks]
            for y, checks in rep.partials_in_closure.items()
        },
    }


def _names(I: IdealData) -> tuple[str, ...]:
    return I.generators[0].germ.variables


# ---------------------------------------------------------------------------
# problem files


@dataclass
class Problem:
    semigroup: Semigroup
    variables: tuple[str, ...]
    ideal: tuple[Poly, ...]
    whitney: dict | None

    def ideal_data(self) -> IdealData:
        if not self.ideal:
            raise InputError("the ideal needs at least one generator")
        return build_ideal(self.semigroup, self.ideal)


def load_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("problem file must be a JSON object")
    for key in ("semigroup", "variables", "ideal"):
        if key not in raw:
            raise InputError(f"missing field {key!r}")
    gens = raw["semigroup"]
    if not isinstance(gens, list) or not all(
        isinstance(b, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in b) for b in gens
    ):
        raise InputError("semigroup must be a list of integer vectors")
    S = validate_semigroup(gens)
    variables = raw["variables"]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError("variables must be a list of names")
    if len(set(variables)) != len(variables):
        raise InputError("variable names must be unique")
    if len(variables) != S.r:
        raise InputError(f"{len(variables)} variables for {S.r} semigroup generators")
    if not isinstance(raw["ideal"], list) or not all(isinstance(g, str) for g in raw["ideal"]):
        raise InputError("ideal must be a list of polynomial strings")
    ideal = tuple(parse_poly(g, variables) for g in raw["ideal"])
    whitney = raw.get("whitney")
    if whitney is not None and not isinstance(whitney, dict):
        raise InputError("whitney must be an object")
    return Problem(S, tuple(variables), ideal, whitney)


def family_spec(problem: Problem) -> FamilySpec:
    block = problem.whitney
    if block is None:
        raise InputError("problem file has no whitney block")
    params = block.get("parameters")
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise InputError("whitney.parameters must be a list of names")
    if not isinstance(block.get("F"), str):
        raise InputError("whitney.F must be a polynomial string")
    F = parse_poly(block["F"], problem.variables)
    return FamilySpec(problem.semigroup, problem.variables, tuple(params), F)


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code)


def cmd_toric_ideal(problem: Problem):
    return {"toric_ideal": [str(p) for p in toric_ideal(problem.semigroup, problem.variables)]}, EXIT_OK


def cmd_newton(problem: Problem):
    I = problem.ideal_data()
    out = newton_json(I.newton)
    out["supports"] = [germ_json(g) for g in I.generators]
    out["compact_faces"] = [face_json(f) for f in I.compact_faces]
    return out, EXIT_OK


def cmd_nondeg(problem: Problem):
    return nondeg_json(is_nondegenerate(problem.ideal_data())), EXIT_OK


def cmd_member(problem: Problem, monomial: str):
    m = parse_poly(monomial, problem.variables)
    if len(m.terms) != 1 or m.constant_term():
        raise InputError("--monomial must be a single non-constant monomial")
    (k,) = m.terms
    I = problem.ideal_data()
    res = monomial_membership(k, I)
    out = membership_json(res, I.semigroup)
    out["monomial"] = monomial
    return out, EXIT_UNDECIDED if res.verdict == UNKNOWN else EXIT_OK


def cmd_icirc(problem: Problem, bound: int | None = None):
    if bound is not None and bound < 0:
        raise InputError("--bound must be nonnegative")
    return icirc_json(problem.ideal_data(), bound), EXIT_OK


def cmd_analyze(problem: Problem):
    I = problem.ideal_data()
    nondeg = is_nondegenerate(I)
    out = {
        "semigroup": [vec(b) for b in problem.semigroup.generators],
        "variables": list(problem.variables),
        "toric_ideal": [str(p) for p in toric_ideal(problem.semigroup, problem.variables)],
        "supports": [germ_json(g) for g in I.generators],
        "newton": newton_json(I.newton),
        "compact_faces": [
            {"face": face_json(fc.face), "face_polys": [str(p) for p in fc.face_polys]}
            for fc in nondeg.per_face
        ],
        "nondeg": nondeg_json(nondeg),
        "closure": closure_json(I, nondeg),
        "icirc": icirc_json(I),
    }
    return out, EXIT_OK


def cmd_whitney(problem: Problem):
    rep = verdier_check(family_spec(problem))
    return whitney_json(rep), EXIT_OK if rep.certified else EXIT_UNDECIDED


def cmd_plot(problem: Problem, out_path: str | None):
    if problem.semigroup.n != 2:
        raise InputError("plot supports n=2 only")
    svg = render_svg(problem.ideal_data())
    if out_path is None:
        return svg, EXIT_OK
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return {"out": out_path}, EXIT_OK


# ---------------------------------------------------------------------------
# SVG

CANVAS, MARGIN = 480, 20


def clip_polygon(poly: list[tuple[Fraction, Fraction]], normal, offset) -> list[tuple[Fraction, Fraction]]:
    """Sutherland-Hodgman step: keep the part with ``<normal, p> >= offset``."""
    out = []
    if not poly:
        return out

    def val(p):
        return normal[0] * p[0] + normal[1] * p[1] - offset

    prev = poly[-1]
    for cur in poly:
        a, b = val(prev), val(cur)
        if b >= 0:
            if a < 0:
                out.append(_cross_point(prev, cur, a, b))
            out.append(cur)
        elif a >= 0:
            out.append(_cross_point(prev, cur, a, b))
        prev = cur
    return out


def _cross_point(p, q, a, b):
    t = Fraction(a) / (a - b)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _fmt(x) -> str:
    s = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(I: IdealData) -> str:
    P = I.newton
    pts = list(I.supp) + list(P.vertices)
    top = max(max(p) for p in pts) + 2
    scale = Fraction(CANVAS, top)

    def px(p):
        return _fmt(MARGIN + p[0] * scale), _fmt(MARGIN + CANVAS - p[1] * scale)

    size = CANVAS + 2 * MARGIN
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    ox, oy = px((0, 0))
    ax, _ = px((top, 0))
    _, ay = px((0, top))
    lines.append(f'<line x1="{ox}" y1="{oy}" x2="{ax}" y2="{oy}" stroke="black" stroke-width="1"/>')
    lines.append(f'<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{ay}" stroke="black" stroke-width="1"/>')
    for i in range(top + 1):
        x0, y0 = px((i, 0))
        x1, y1 = px((0, i))
        lines.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_fmt(MARGIN + CANVAS + 4)}" stroke="black" stroke-width="1"/>')
        lines.append(f'<line x1="{_fmt(MARGIN - 4)}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black" stroke-width="1"/>')

    region = [(Fraction(0), Fraction(0)), (Fraction(top), Fraction(0)),
              (Fraction(top), Fraction(top)), (Fraction(0), Fraction(top))]
    for h in P.facets:
        region = clip_polygon(region, h.normal, h.offset)
    if region:
        coords = " ".join(",".join(px(p)) for p in region)
        lines.append(f'<polygon points="{coords}" fill="#c8d8f0" stroke="none"/>')

    for r in P.recession.rays:
        t = Fraction(top, max(r))
        ex, ey = px((r[0] * t, r[1] * t))
        lines.append(f'<line x1="{ox}" y1="{oy}" x2="{ex}" y2="{ey}" stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>')

    for f in I.compact_faces:
        if f.dim == 0:
            x, y = px(f.vertex_set[0])
            lines.append(f'<circle cx="{x}" cy="{y}" r="6" fill="none" stroke="#b00000" stroke-width="2"/>')
        elif f.dim == 1:
            (x0, y0), (x1, y1) = px(f.vertex_set[0]), px(f.vertex_set[-1])
            lines.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#b00000" stroke-width="3"/>')

    for p in I.supp:
        x, y = px(p)
        lines.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--json", dest="pretty", action="store_false", default=argparse.SUPPRESS,
                     help="compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=argparse.SUPPRESS,
                     help="indented JSON output")

    parser = argparse.ArgumentParser(prog="toricnewton", parents=[fmt],
                                     description="Newton polyhedra and integral closure on affine toric varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("analyze", "full report"),
        ("newton", "Newton polyhedron and compact faces"),
        ("nondeg", "Newton non-degeneracy"),
        ("toric-ideal", "binomial generators of the toric ideal"),
        ("whitney", "condition-W certification"),
    ]:
        sp = sub.add_parser(name, parents=[fmt], help=help_text)
        sp.add_argument("file")
    sp = sub.add_parser("member", parents=[fmt], help="monomial membership in the integral closure")
    sp.add_argument("file")
    sp.add_argument("--monomial", required=True)
    sp = sub.add_parser("icirc", parents=[fmt], help="minimal generators of I-circ")
    sp.add_argument("file")
    sp.add_argument("--bound", type=int, default=None, help="uniform per-coordinate search box")
    sp = sub.add_parser("plot", parents=[fmt], help="SVG of a 2-D Newton polyhedron")
    sp.add_argument("file")
    sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
    return parser


def dump(payload, pretty: bool) -> str:
    if pretty:
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def run(argv: Sequence[str] | None = None) -> tuple[str, int]:
    """Execute a command; returns ``(stdout text, exit code)`` and raises ValueError on bad input."""
    args = build_parser().parse_args(argv)
    problem = load_problem(args.file)
    cmd = args.command
    if cmd == "analyze":
        payload, code = cmd_analyze(problem)
    elif cmd == "newton":
        payload, code = cmd_newton(problem)
    elif cmd == "nondeg":
        payload, code = cmd_nondeg(problem)
    elif cmd == "toric-ideal":
        payload, code = cmd_toric_ideal(problem)
    elif cmd == "whitney":
        payload, code = cmd_whitney(problem)
    elif cmd == "member":
        payload, code = cmd_member(problem, args.monomial)
    elif cmd == "icirc":
        payload, code = cmd_icirc(problem, args.bound)
    else:
        payload, code = cmd_plot(problem, args.out)
    if isinstance(payload, str):
        return payload, code
    return dump(payload, getattr(args, "pretty", False)) + "\n", code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        text, code = run(argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
