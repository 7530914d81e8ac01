"""Command-line front end: ``frobtqft validate|derive|eval|verify|example``.

Exit codes: 0 when no check failed, 1 when a check failed, 2 for usage,
parse and I/O errors.  Reports are deterministic for a fixed config.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources

from . import __version__, builders, io, laurent
from .algebra import MissingDataError, ValidationError, errors, validate
from .findings import Finding
from .frobenius import (NotInvertibleError, derive, frobenius_suite, invert_in_algebra,
                        with_coproduct)
from .scalars import format_scalar, to_scalar

SUITES = ("frobenius", "sewing", "cohft", "duality", "almost", "ribbon", "laurent")
EXIT_OK, EXIT_FINDINGS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# reports ------------------------------------------------------------------

def make_report(command, config, findings, algebra=None, **payload):
    results = [f.to_json(algebra) for f in findings]
    summary = {s: sum(1 for f in findings if f.status == s) for s in ("pass", "fail", "warn", "skip")}
    status = EXIT_FINDINGS if summary["fail"] else EXIT_OK
    report = {"tool": "frobtqft", "version": __version__, "command": command, "config": config,
              "results": results, "summary": summary, "exit_status": status}
    report.update(payload)
    return report


def render_text(report):
    lines = [f"frobtqft {report['version']} {report['command']}"]
    for r in report["results"]:
        parts = [f"{r['status']:<5}", f"{r['suite']}/{r['check']}"]
        if "algebra" in r:
            parts.append(r["algebra"])
        if "type" in r:
            parts.append("(" + ",".join(map(str, r["type"])) + ")")
        if r.get("message"):
            parts.append(r["message"])
        if r.get("witness") is not None:
            parts.append(f"witness={r['witness']}")
        lines.append(" ".join(parts))
    for key in ("derived", "value"):
        if key in report:
            lines.append(f"{key}: {io.dumps(report[key]).strip()}")
    s = report["summary"]
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['warn']} warn, {s['skip']} skip"
                 f" -> exit {report['exit_status']}")
    return "\n".join(lines) + "\n"


def emit(report, args):
    text = io.dumps(report) if args.format == "json" else render_text(report)
    write_output(text, args.out)
    return report["exit_status"]


def write_output(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def config_of(args, **extra):
    keys = ("spec", "suites", "gmax", "nmax", "mmax", "edge_bound", "laurent", "grid", "m", "seed",
            "type", "vectors", "non_unital")
    out = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    out.update(extra)
    return out


# spec loading ---------------------------------------------------------------

def load_algebra(path):
    kind, spec = io.read_spec(path)
    if kind != "algebra":
        raise UsageError(f"{path} is a Laurent spec; this command needs an algebra spec")
    return spec


def package_for_checks(spec):
    """Derive the package, keeping a supplied-but-wrong coproduct so checks can expose it.

    Returns ``(package or None, validation findings)``.
    """
    findings = validate(spec)
    bad = errors(findings)
    if not bad:
        return derive(spec), findings
    if spec.coproduct is not None and all(f.check == "coproduct-formula" for f in bad):
        base = derive(spec.with_changes(coproduct=None))
        return with_coproduct(base, spec.coproduct), findings
    return None, findings


# commands -----------------------------------------------------------------------

def cmd_validate(args):
    kind, spec = io.read_spec(args.spec)
    if kind == "laurent":
        findings = [Finding("laurent-spec", "pass", "well-formed Laurent spec", suite="validate")]
        return emit(make_report("validate", config_of(args), findings), args)
    findings = validate(spec) or [Finding("axioms", "pass", suite="validate")]
    return emit(make_report("validate", config_of(args), findings, spec.name), args)


def cmd_derive(args):
    spec = load_algebra(args.spec)
    findings = validate(spec)
    if errors(findings):
        return emit(make_report("derive", config_of(args), findings, spec.name), args)
    pkg = derive(spec)
    inverse = None
    if pkg.unit is not None and pkg.euler_element is not None:
        try:
            inverse = invert_in_algebra(pkg, pkg.euler_element)
        except NotInvertibleError:
            findings.append(Finding("euler-inverse", "warn", "Euler element is not invertible",
                                    suite="derive"))
    findings.append(Finding("derive", "pass", suite="derive"))
    return emit(make_report("derive", config_of(args), findings, spec.name,
                            derived=io.package_to_json(pkg, inverse)), args)


def _parse_type(text):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"type must be g,n,m, got {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"type must be g,n,m, got {text!r}")
    return tuple(parts)


def _parse_vector(text, spec):
    if text in spec.basis:
        return spec.basis_vector(spec.basis.index(text))
    try:
        values = [to_scalar(x) for x in text.split(",")]
    except (TypeError, ValueError):
        raise UsageError(f"vector {text!r} is neither a basis label nor comma-separated rationals") from None
    if len(values) != spec.dim:
        raise UsageError(f"vector {text!r} has {len(values)} entries, expected {spec.dim}")
    return tuple(values)


def cmd_eval(args):
    from .tensor import apply
    from .tqft import InadmissibleTypeError, closed_form
    spec = load_algebra(args.spec)
    findings = validate(spec)
    if errors(findings):
        return emit(make_report("eval", config_of(args), findings, spec.name), args)
    pkg = derive(spec)
    if not pkg.commutative:
        raise UsageError("TQFT evaluation needs a commutative algebra")
    t = _parse_type(args.type)
    unital = pkg.unit is not None and not args.non_unital
    try:
        value = closed_form(t, pkg, unital=unital)
    except (InadmissibleTypeError, MissingDataError) as exc:
        raise UsageError(str(exc)) from None
    vectors = [_parse_vector(v, spec) for v in (args.vectors or [])]
    if vectors:
        if len(vectors) != t[1]:
            raise UsageError(f"type {t} takes {t[1]} input vectors, got {len(vectors)}")
        out = apply(value, vectors)
        if t[2] == 0:
            rendered = format_scalar(out.as_scalar())
        elif t[2] == 1:
            rendered = [format_scalar(x) for x in out.as_vector()]
        else:
            rendered = out.to_sparse(one_based=True)
    else:
        rendered = value.to_sparse(one_based=True)
    findings = [Finding("eval", "pass", suite="eval", type=t)]
    return emit(make_report("eval", config_of(args), findings, spec.name,
                            value={"type": list(t), "inputs": len(vectors), "value": rendered}), args)


def _parse_grid(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"grid must look like LO..HI, got {text!r}") from None
    if lo > hi:
        raise UsageError("grid must have LO <= HI")
    return range(lo, hi + 1)


def _parse_suites(text):
    names = [s.strip() for s in text.split(",") if s.strip()]
    if names == ["all"]:
        return list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)} or all")
    return names


def run_algebra_suites(pkg, suites, args):
    from . import ribbon, tqft
    out = []
    n_range = range(1, args.nmax + 1)
    m_range = range(0, args.mmax + 1)
    for suite in suites:
        if suite == "frobenius":
            out += frobenius_suite(pkg)
        elif suite == "sewing":
            out += tqft.normal_form_suite(pkg, args.gmax, n_range, m_range)
            out += tqft.plan_independence_suite(pkg, args.gmax, n_range, m_range, seed=args.seed)
        elif suite == "cohft":
            out += tqft.cohft_check(pkg, args.gmax, args.nmax)
        elif suite == "duality":
            out += tqft.duality_collapse_check(pkg, args.mmax)
        elif suite == "almost":
            out += tqft.almost_tqft_lemma_suite(pkg, args.gmax, args.nmax, args.mmax)
            out += tqft.unital_consistency_check(pkg, args.gmax, args.nmax, args.mmax)
        elif suite == "ribbon":
            out += ribbon.corollary_d_suite(pkg, args.edge_bound)
        elif suite == "laurent":
            out.append(Finding("laurent", "skip", "needs a Laurent spec or --laurent", suite="laurent"))
    return out


def run_laurent(weights, args, grid):
    out = laurent.laurent_suite(sorted(weights), grid, args.m)
    if len(weights) > 1 or any(w != 1 for w in weights.values()):
        out.append(laurent.check_combination(weights, grid))
    return out


def cmd_verify(args):
    suites = _parse_suites(args.suites)
    grid = _parse_grid(args.grid)
    for name in ("gmax", "nmax", "mmax", "edge_bound", "m"):
        if getattr(args, name) < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    if args.laurent is not None or args.spec is None:
        if args.laurent is None:
            raise UsageError("verify needs a spec path or --laurent K")
        weights = {args.laurent: to_scalar(1)}
        findings = run_laurent(weights, args, grid)
        return emit(make_report("verify", config_of(args, suites=["laurent"]), findings,
                                f"laurent:{args.laurent}"), args)
    kind, spec = io.read_spec(args.spec)
    if kind == "laurent":
        findings = run_laurent(spec, args, grid)
        name = "laurent:" + ",".join(map(str, sorted(spec)))
        return emit(make_report("verify", config_of(args, suites=suites), findings, name), args)
    pkg, findings = package_for_checks(spec)
    if pkg is not None:
        chosen = [s for s in suites if s != "laurent"] if args.suites == "all" else suites
        findings = findings + run_algebra_suites(pkg, chosen, args)
    return emit(make_report("verify", config_of(args, suites=suites), findings, spec.name), args)


def example_json(name):
    if name in ("s3-characters", "degenerate-form", "tampered-coproduct"):
        text = resources.files("frobtqft").joinpath("data", f"{name}.json").read_text("utf-8")
        return io.loads(text)
    if name.startswith("group-algebra:"):
        try:
            return io.algebra_to_json(builders.group_algebra(name.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if name.startswith("laurent:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad Laurent example {name!r}") from None
        return io.laurent_spec({k: 1})
    raise UsageError(f"unknown example {name!r}; try s3-characters, group-algebra:Z4, laurent:1")


def cmd_example(args):
    write_output(io.dumps(example_json(args.name)), args.out)
    return EXIT_OK


# argument parsing ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="frobtqft", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"frobtqft {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="PATH")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the algebra axioms of a spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derive", parents=[common], help="derive η⁻¹, δ, ε, e, E and e⁻¹")
    p.add_argument("spec")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("eval", parents=[common], help="evaluate ω_{g,n,m} by the closed form")
    p.add_argument("spec")
    p.add_argument("--type", required=True, metavar="G,N,M")
    p.add_argument("--vector", dest="vectors", action="append", metavar="V",
                   help="input vector: basis label or comma-separated rationals (repeat n times)")
    p.add_argument("--non-unital", action="store_true", help="use E^g instead of multiplication by e^g")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("spec", nargs="?")
    p.add_argument("--suites", default="all")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--edge-bound", type=int, default=5)
    p.add_argument("--laurent", type=int, metavar="K")
    p.add_argument("--grid", default="-3..3", metavar="LO..HI")
    p.add_argument("--m", type=int, default=4, help="largest Laurent coproduct power")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="write a built-in spec")
    p.add_argument("name")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_example)
    return parser


def _join_negative_values(argv):
    """Let ``--grid -3..3`` through argparse, which would read ``-3..3`` as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--grid":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--grid={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (OSError, io.SpecError, UsageError, ValidationError) as exc:
        print(f"frobtqft: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
