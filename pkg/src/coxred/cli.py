"""Command-line entry point: ``coxred <subcommand> [--diagram TEXT] [--prime P]``.

Exit codes: 0 success, 2 malformed input, 3 pipeline failure.  Reports and
error objects are JSON on stdout (and in ``--report PATH`` when given).
"""

from __future__ import annotations

import argparse
import logging
import sys

from coxred import glue
from coxred.coxdiagram import DELTA_3, as_diagram, euler_characteristic
from coxred.errors import CoxredError, InputError, NotCoxeter, ParseError
from coxred.numberfield import format_multiquad
from coxred.report import ReportBuilder, dumps, fraction_text

SUBCOMMANDS = ("gram", "lattice", "reduce", "torsion", "invariants", "homology", "glue", "davis")
DAVIS_PRIME = 5


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxred", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=SUBCOMMANDS)
    ap.add_argument("--diagram", help='bracket symbol like "[5,3,3,5]", "nodes=N; i-j:m; ..." or a preset')
    ap.add_argument("--prime", type=int, help="rational prime below the reducing ideal")
    ap.add_argument("--face", type=int, help="node to double across (glue)")
    ap.add_argument("--report", help="also write the JSON report to this path")
    ap.add_argument("--cap", type=int, default=10 ** 6, help="element cap for group enumeration")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _glue(builder: ReportBuilder, face):
    d = builder.d
    if face is None:
        raise InputError("glue needs --face")
    fs = glue.double(d, face)
    section = {
        "face": face,
        "faces": fs.face_names(),
        "gram": [[format_multiquad(x) for x in row] for row in fs.gram],
        "coxeter": True,
        "recognized": None,
        "offending_entry": None,
        "index_relation": None,
    }
    try:
        big = glue.recognize(fs)
        section["recognized"] = big.text()
        if euler_characteristic(d):
            section["index_relation"] = fraction_text(glue.index_relation(big, d))
    except NotCoxeter as exc:
        section["coxeter"] = False
        section["offending_entry"] = {"message": str(exc), "value": format_multiquad(exc.entry)}
    builder.report["glue"] = section


def run(argv) -> tuple[int, dict]:
    """Run one subcommand; returns (exit code, report or error object)."""
    return execute(_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        if args.command == "davis":
            d = as_diagram(args.diagram or DELTA_3)
            b = ReportBuilder(d, args.prime or DAVIS_PRIME, args.cap, davis=True)
        else:
            if not args.diagram:
                raise InputError("--diagram is required")
            d = as_diagram(args.diagram)
            b = ReportBuilder(d, args.prime, args.cap)
        b.report["command"] = args.command
        if args.cap <= 0:
            raise InputError("--cap must be positive")
        cmd = args.command
        if cmd == "gram":
            b.gram()
        elif cmd == "lattice":
            b.lattice()
        elif cmd == "reduce":
            b.reduction()
        elif cmd == "torsion":
            b.torsion()
        elif cmd == "invariants":
            b.invariants()
        elif cmd == "homology":
            b.torsion()
            b.homology()
        elif cmd == "glue":
            b.gram()
            _glue(b, args.face)
        else:
            b.torsion()
            b.invariants()
            b.homology()
        return 0, b.report
    except InputError as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err["position"] = exc.position
        return 2, {"error": err}
    except (CoxredError, ValueError) as exc:
        return 3, {"error": {"type": type(exc).__name__, "message": str(exc)}}


def main(argv=None) -> int:
    args = _parser().parse_args(sys.argv[1:] if argv is None else argv)
    code, report = execute(args)
    text = dumps(report)
    print(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
