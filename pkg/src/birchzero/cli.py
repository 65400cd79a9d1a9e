"""Command-line front end.

Every subcommand prints one JSON document. Exit status is 0 for a
definitive result, 2 when the answer is Unknown, and 1 on usage or parse
errors.

    birchzero certify system.txt --vars x,y
    birchzero nonneg "x^4 + y^4 + 1 - 3*x*y"
    birchzero threshold "x^4 + y^4 + 1" --mode sup --gamma 1,1
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import circuit, coercive, minimize, numeric, orthant, transform
from .certify import RecognitionError, certify, recognize, validate
from .certify import Verdict as CertVerdict
from .poly import ParseError, Polynomial, glex_key, parse
from .polytope import hull

logger = logging.getLogger("birchzero")

COMMANDS = ("parse", "polytope", "circuit", "coercive", "nonneg", "transform", "minimize", "certify", "solve", "threshold")
DEGREE_WARNING = 200

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    text: str
    variables: list[str]
    seed: int = 0
    starts: int = 64
    budget: int = 10_000
    tol: float = 1e-4
    output: str | None = None
    pretty: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.variables or len(set(self.variables)) != len(self.variables):
            raise UsageError("--vars must be nonempty and distinct")
        if self.tol <= 0 or self.budget <= 0 or self.starts <= 0:
            raise UsageError("--tol, --budget and --starts must be positive")


def _lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _vector(text: str, n: int) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if len(v) != n:
        raise UsageError(f"expected {n} coordinates, got {len(v)}")
    return v


def _fmt_terms(f: Polynomial) -> list[dict]:
    return [{"exp": list(e), "c": str(c)} for e, c in f.sorted_terms()]


def _single(job: JobSpec) -> Polynomial:
    lines = _lines(job.text)
    if len(lines) != 1:
        raise UsageError(f"expected one polynomial, got {len(lines)} lines")
    return parse(lines[0], job.variables)


def _system(job: JobSpec) -> list[Polynomial]:
    lines = _lines(job.text)
    if len(lines) != len(job.variables):
        raise UsageError(f"expected {len(job.variables)} polynomials (one per line), got {len(lines)}")
    return [parse(line, job.variables) for line in lines]


def cmd_parse(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    return {"canonical": f.to_string(job.variables), "terms": _fmt_terms(f)}, EXIT_OK


def cmd_polytope(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    if f.is_zero():
        raise UsageError("the zero polynomial has no Newton polytope")
    P = hull(f.support)
    out = {
        "dim": P.dim,
        "vertices": [list(v) for v in P.vertices],
        "facets": [{"normal": [str(x) for x in w], "offset": str(b)} for w, b in P.facets],
        "full_dimensional": P.full_dimensional,
    }
    if P.full_dimensional:
        out["simple_vertices"] = [list(v) for v in P.simple_vertices()]
        out["interior_points"] = [list(p) for p in P.points if P.is_interior(p)]
    if (0,) * f.nvars in P.points:
        out["faces_avoiding_origin"] = [[list(v) for v in face.sorted_vertices()] for face in P.faces_avoiding_origin()]
    return out, EXIT_OK


def cmd_circuit(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    try:
        c = circuit.recognize(f, require_even=False)
    except circuit.NotCircuitError as exc:
        return {"circuit": False, "condition": exc.condition, "message": str(exc)}, EXIT_OK
    out = {
        "circuit": True,
        "outer": [{"exp": list(a), "c": str(v)} for a, v in c.outer],
        "inner": {"exp": list(c.inner[0]), "d": str(c.d)},
        "weights": [str(w) for w in c.weights],
        "circuit_number": c.circuit_number,
        "nonnegative_on_orthant": circuit.is_nonnegative_on_orthant(c),
        "nonnegative": circuit.is_nonnegative(c) if c.outer_even else None,
    }
    return out, EXIT_OK


def cmd_coercive(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    r = coercive.report(f)
    out = {
        "verdict": r.verdict.value,
        "necessary": {
            "even_vertices": r.necessary.even_vertices,
            "positive_vertex_coefficients": r.necessary.positive_vertex_coefficients,
            "axis_vertices": r.necessary.axis_vertices,
        },
        "D": [list(d) for d in r.D_set],
        "sufficient": r.sufficient_ok,
        "constant_shifted": r.shifted_constant,
    }
    return out, EXIT_UNKNOWN if r.verdict == coercive.Verdict.UNKNOWN else EXIT_OK


def cmd_nonneg(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    v = orthant.decide(f, budget=job.budget, seed=job.seed)
    return v.evidence(), EXIT_UNKNOWN if v.status == orthant.Status.UNKNOWN else EXIT_OK


def cmd_transform(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    if args.vertex is None:
        raise UsageError("transform needs --vertex")
    a0 = _vector(args.vertex, f.nvars)
    t, g = transform.normalize_at_vertex(f, a0)
    degree = max(sum(e) for e in g.support)
    if degree > DEGREE_WARNING:
        print(f"warning: transformed total degree {degree} exceeds {DEGREE_WARNING}", file=sys.stderr)
    out = {
        "matrix": [[str(x) for x in row] for row in t.matrix],
        "base": [str(x) for x in t.base],
        "mu": t.mu,
        "axis_degrees": list(t.axis_degrees),
        "polynomial": g.to_string(job.variables),
        "degree": degree,
    }
    return out, EXIT_OK


def cmd_minimize(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    r = minimize.check_and_minimize(f, budget=job.budget, seed=job.seed)
    return r.as_dict(), EXIT_UNKNOWN if r.conclusion == minimize.Conclusion.UNKNOWN else EXIT_OK


def cmd_certify(job: JobSpec, args) -> tuple[dict, int]:
    eqs = _system(job)
    try:
        bs = recognize(eqs)
    except RecognitionError as exc:
        out = {
            "verdict": CertVerdict.NOT_APPLICABLE.value,
            "theorem": None,
            "gamma": None,
            "A": [],
            "B": [],
            "hypotheses": [{"name": "Birch-type structure", "status": "fail", "evidence": {"message": str(exc)}}],
            "witness": None,
        }
        return out, EXIT_OK
    cert = certify(bs, budget=job.budget, seed=job.seed)
    if not args.no_validate:
        cert = validate(bs, cert, starts=job.starts, seed=job.seed)
    return cert.as_dict(), EXIT_UNKNOWN if cert.verdict == CertVerdict.UNKNOWN else EXIT_OK


def cmd_solve(job: JobSpec, args) -> tuple[dict, int]:
    eqs = _system(job)
    roots = numeric.solve_system(eqs, starts=job.starts, seed=job.seed)
    out = {
        "zeros": [
            {"point": [float(x) for x in r.point], "residual": float(r.value_or_residual), "iterations": r.iterations}
            for r in roots
        ]
    }
    return out, EXIT_OK


def cmd_threshold(job: JobSpec, args) -> tuple[dict, int]:
    f = _single(job)
    if args.gamma is None:
        raise UsageError("threshold needs --gamma")
    gamma = _vector(args.gamma, f.nvars)
    if gamma in f.support:
        raise UsageError("gamma must not be in the support of the base polynomial")
    mode = numeric.Mode(args.mode)
    outer = tuple(sorted(((e, c) for e, c in f.terms.items() if c > 0), key=lambda t: glex_key(t[0])))
    inner = tuple(sorted(((e, -c) for e, c in f.terms.items() if c < 0), key=lambda t: glex_key(t[0])))
    q = numeric.ThresholdQuery(outer, inner, gamma, mode)
    if mode == numeric.Mode.SUP:
        base = orthant.decide(q.base(), budget=job.budget, seed=job.seed)
        if base.status != orthant.Status.NONNEGATIVE:
            raise UsageError(f"sup mode needs a base polynomial nonnegative on the orthant (got {base.status.value})")
    try:
        r = numeric.estimate_threshold(q, tol=job.tol, seed=job.seed, max_iter=job.budget)
    except numeric.ThresholdError as exc:
        lo, hi = exc.bracket
        return {"lo": lo, "hi": hi, "error": str(exc)}, EXIT_UNKNOWN
    out = {"lo": r.lo, "hi": r.hi, "evaluations": r.evaluations}
    if r.minimizer is not None:
        out["minimizer"] = {"point": [float(x) for x in r.minimizer.point], "value": float(r.minimizer.value_or_residual)}
    return out, EXIT_OK


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="birchzero", description="Positive-zero certificates for Birch-type polynomial systems.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="file path, '-' for stdin, or inline polynomial text")
    p.add_argument("--vars", default=None, help="comma-separated variable names (default: names in the input, sorted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-4)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON (default)")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--vertex", default=None, help="transform: vertex a0 as comma-separated integers")
    p.add_argument("--gamma", default=None, help="threshold: exponent gamma as comma-separated integers")
    p.add_argument("--mode", choices=("inf", "sup"), default="sup", help="threshold mode")
    p.add_argument("--no-validate", action="store_true", help="certify: skip the numeric zero search")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    return arg


def _infer_variables(text: str) -> list[str]:
    names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", "\n".join(_lines(text))))
    return sorted(names) or ["x"]


def run(job: JobSpec, args) -> tuple[dict, int]:
    return HANDLERS[job.command](job, args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        text = _read_input(args.input)
        variables = [v.strip() for v in args.vars.split(",")] if args.vars else _infer_variables(text)
        job = JobSpec(
            args.command, text, variables, args.seed, args.starts, args.budget, args.tol, args.output, args.pretty
        )
        doc, code = run(job, args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"birchzero {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rendered = json.dumps(doc, indent=2 if args.pretty else None, sort_keys=False)
    if args.output:
        Path(args.output).write_text(rendered + "\n", encoding="utf-8")
    else:
        print(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
