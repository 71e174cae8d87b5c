"""
Command-line entry point, installed as ``quadratic-equations``.

Every command prints text by default and a JSON document with ``--format json``.
Exit codes: 0 on success or a passing suite, 1 when there is no solution or a
claim fails, 2 on bad usage or malformed input.
"""

# Standard library imports
import argparse
import json
import logging
import math
import sys

# Local Application Imports
from QuadraticEquations import settings
from QuadraticEquations.datavalidation import (
    DomainError,
    MalformedWordError,
    NoSolutionError,
    QuadraticEquationError,
)
from QuadraticEquations.normalizer import reduce_solution
from QuadraticEquations.solver import genus_minus, genus_plus, solve_commutators, solve_squares
from QuadraticEquations.verification import run_paper_suite, witness_u1, witness_u2
from QuadraticEquations.wicksenum import form_table
from QuadraticEquations.wordcore import (
    VARIABLE,
    Substitution,
    format_substitution,
    format_word,
    parse_word,
    variable,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _genus_value(value):
    return None if value == math.inf else value


def _genus_text(value):
    return "inf" if value == math.inf else str(value)


def _certificate(result):
    cert = result.certificate
    if isinstance(cert, Substitution):
        return format_substitution(cert)
    if isinstance(cert, str):
        return cert
    return f"{format_word(cert.form)} @ {cert.rotation_offset}: {format_substitution(cert.assignment)}"


def _cmd_genus(args):
    u = parse_word(args.word)
    kinds = {"orientable": [True], "nonorientable": [False], "both": [True, False]}[args.kind]
    out = {"equation": format_word(u), "genus": {}, "certificates": {}}
    lines = []
    for orientable in kinds:
        key = "orientable" if orientable else "nonorientable"
        compute = genus_plus if orientable else genus_minus
        result = compute(u, table_dir=args.table_dir)
        out["genus"][key] = _genus_value(result.value)
        out["certificates"][key] = _certificate(result)
        sign = "+" if orientable else "-"
        lines.append(f"genus{sign}({format_word(u)}) = {_genus_text(result.value)}")
        lines.append(f"  certificate: {_certificate(result)}")
    return out, lines, EXIT_OK


def _classes_output(u, reps, genus, certificates):
    out = {
        "equation": format_word(u),
        "genus": genus,
        "classes": [rep.as_dict() for rep in reps],
        "certificates": certificates,
    }
    lines = [f"equation: {format_word(u)}", f"genus: {genus}", f"classes: {len(reps)}"]
    for i, rep in enumerate(reps, 1):
        lines.append(f"  [{i}] {format_substitution(rep.rep)}")
        lines.append(f"      lengths={rep.lengths} fingerprint={rep.fingerprint_id} {rep.distinctness}")
    for key, value in certificates.items():
        lines.append(f"{key}: {value}")
    return out, lines


def _cmd_solve(args):
    u = parse_word(args.word)
    if args.kind == "commutators":
        reps = solve_commutators(u, table_dir=args.table_dir)
        genus = reps[0].genus
        out, lines = _classes_output(u, reps, genus, {})
    else:
        reps, complete = solve_squares(u, table_dir=args.table_dir)
        genus = reps[0].genus
        out, lines = _classes_output(u, reps, genus, {"complete": complete})
    return out, lines, EXIT_OK


def _cmd_wicks(args):
    orientable = args.kind == "orientable"
    table = form_table(orientable, args.genus, table_dir=args.table_dir, maximal_only=args.maximal)
    forms = [format_word(f.word) for f in table.forms]
    out = {"orientable": orientable, "genus": args.genus, "maximal": args.maximal, "forms": forms}
    lines = [f"{args.kind} genus {args.genus}: {len(forms)} forms"] + forms
    return out, lines, EXIT_OK


def _parse_assignment(text):
    name, sep, image = text.partition("=")
    if not sep:
        raise MalformedWordError(f"Assignments look like 'x=a b^-1', not {text!r}.")
    return variable(name.strip()), parse_word(image)


def _cmd_reduce(args):
    w = parse_word(args.form, kind=VARIABLE)
    psi = Substitution(dict(_parse_assignment(a) for a in args.assignments))
    u = psi.apply(w)
    w2, psi2, beta, trace = reduce_solution(w, psi, u)
    out = {
        "equation": format_word(u),
        "form": format_word(w2),
        "solution": {k.name: format_word(v) for k, v in psi2.items()},
        "automorphism": {k.name: format_word(v) for k, v in beta.forward.items()},
        "moves": trace.kinds(),
    }
    lines = [
        f"u = {format_word(u)}",
        f"W' = {format_word(w2)}",
        f"psi' = {format_substitution(psi2)}",
        f"beta = {format_substitution(beta.forward)}",
        f"moves: {', '.join(trace.kinds()) or 'none'}",
    ]
    return out, lines, EXIT_OK


def _cmd_verify(args):
    report = run_paper_suite(skip_slow=args.skip_slow, table_dir=args.table_dir)
    lines = [f"{c.claim_id}: {c.status}" + (f" ({c.details})" if c.details else "") for c in report.claims]
    counts = report.counts()
    lines.append(", ".join(f"{k}={v}" for k, v in counts.items()))
    return report.as_dict(), lines, EXIT_OK if report.passed else EXIT_FAIL


def _cmd_witness(args):
    u = witness_u1(args.n) if args.family == "u1" else witness_u2(args.n)
    text = format_word(u)
    return {"family": args.family, "n": args.n, "word": text, "length": len(u)}, [text], EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadratic-equations",
        description="Genus and solution classes of [x1,y1]...[xg,yg] = u and x1^2...xg^2 = u in free groups.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--table-dir", default=None, help=f"form-table directory (default ${settings.TABLE_DIR_ENV})")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    genus = sub.add_parser("genus", help="orientable and nonorientable genus of a word")
    genus.add_argument("word")
    kind = genus.add_mutually_exclusive_group()
    kind.add_argument("--orientable", dest="kind", action="store_const", const="orientable")
    kind.add_argument("--nonorientable", dest="kind", action="store_const", const="nonorientable")
    kind.add_argument("--both", dest="kind", action="store_const", const="both")
    genus.set_defaults(kind="both", handler=_cmd_genus)

    solve = sub.add_parser("solve", help="one representative per solution class")
    solve.add_argument("kind", choices=("commutators", "squares"))
    solve.add_argument("word")
    solve.set_defaults(handler=_cmd_solve)

    wicks = sub.add_parser("wicks", help="list Wicks forms of one genus")
    wicks.add_argument("kind", choices=("orientable", "nonorientable"))
    wicks.add_argument("genus", type=int)
    wicks.add_argument("--maximal", action="store_true")
    wicks.set_defaults(handler=_cmd_wicks)

    reduce = sub.add_parser("reduce-solution", help="make a solution cancellation free")
    reduce.add_argument("form")
    reduce.add_argument("assignments", nargs="+", metavar="x=WORD")
    reduce.set_defaults(handler=_cmd_reduce)

    verify = sub.add_parser("verify", help="run the reproduction suite")
    verify.add_argument("target", choices=("paper",))
    verify.add_argument("--skip-slow", action="store_true")
    verify.set_defaults(handler=_cmd_verify)

    witness = sub.add_parser("witness", help="print a witness word")
    witness.add_argument("family", choices=("u1", "u2"))
    witness.add_argument("n", type=int)
    witness.set_defaults(handler=_cmd_witness)
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None, stdout=None):
    """
    Run one command.

    Parameters
    ----------
    argv : list of str, optional
        Defaults to ``sys.argv[1:]``.
    stdout : file, optional
        Where results go; logging and errors go to stderr.

    Returns
    -------
    int
        The exit code.
    """
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)

    try:
        out, lines, code = args.handler(args)
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MalformedWordError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadraticEquationError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAIL

    if args.format == "json":
        stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
