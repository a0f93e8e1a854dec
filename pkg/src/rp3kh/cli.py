"""Command line front end.

Exit codes: 0 success or equal, 1 homology differs, 2 parse error,
3 invalid diagram, 4 failed internal check.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import corpus as corpus_mod
from .cube import shuffled_choices
from .diagram import DiagramError, ParseError, ProjectiveDiagram, crossing_signs, loads, validate
from .differential import ConventionError, chain_complex, check_bigrade_preservation, verify_d2
from .homology import D2Error, compare, euler_characteristic, homology_of_complex
from .skein import KbsmElement, bracket_normalized, kbsm, substitute_x

EXIT_OK, EXIT_DIFFER, EXIT_PARSE, EXIT_INVALID, EXIT_CHECK = 0, 1, 2, 3, 4
MAX_CROSSINGS = 20


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def read_diagram(source: str, force: bool = False) -> ProjectiveDiagram:
    """Load from a path, ``-`` for stdin, or ``corpus:NAME``."""
    try:
        if source.startswith("corpus:"):
            text = corpus_mod.raw(source[len("corpus:"):])
        elif source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except KeyError:
        raise CliError(EXIT_PARSE, f"{source}: no such corpus entry") from None
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{source}: {exc.strerror}") from None
    try:
        d = loads(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{source}: {exc}") from None
    try:
        validate(d)
    except DiagramError as exc:
        raise CliError(EXIT_INVALID, f"{source}: {exc}") from None
    if d.n_crossings > MAX_CROSSINGS and not force:
        raise CliError(EXIT_INVALID,
                       f"{source}: {d.n_crossings} crossings means 2^{d.n_crossings} states; "
                       f"pass --force to go ahead")
    return d


def _homology(args, d: ProjectiveDiagram):
    hook = shuffled_choices(args.seed) if args.seed is not None else None
    cx = chain_complex(d, hook, corrupt=args.debug_corrupt_signs)
    try:
        return homology_of_complex(cx, jobs=args.jobs, check_ranks=args.debug)
    except D2Error as exc:
        raise CliError(EXIT_CHECK, f"d∘d != 0: {exc}") from None
    except ConventionError as exc:
        raise CliError(EXIT_CHECK, f"convention check failed: {exc}") from None


def _print_kbsm(k: KbsmElement, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(k.to_json())
    elif fmt == "tsv":
        print("generator\ta\tcoeff")
        for gen, pairs in k.to_dict().items():
            for a, c in pairs:
                print(f"{gen}\t{a}\t{c}")
    else:
        print(k)


# ---------------------------------------------------------------------------
# commands


def cmd_kbsm(args) -> int:
    _print_kbsm(kbsm(read_diagram(args.file, args.force)), args.format)
    return EXIT_OK


def cmd_jones(args) -> int:
    d = read_diagram(args.file, args.force)
    _print_kbsm(bracket_normalized(d), args.format)
    return EXIT_OK


def cmd_homology(args) -> int:
    h = _homology(args, read_diagram(args.file, args.force))
    if args.format == "json":
        sys.stdout.write(h.to_json())
    elif args.format == "tsv":
        sys.stdout.write(h.to_tsv())
    else:
        sys.stdout.write(h.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    d = read_diagram(args.file, args.force)
    hook = shuffled_choices(args.seed) if args.seed is not None else None
    cx = chain_complex(d, hook, corrupt=args.debug_corrupt_signs)
    report: dict = {"schema": 1, "crossings": d.n_crossings, "writhe": crossing_signs(d).writhe}
    failed = None
    try:
        check_bigrade_preservation(cx)
        report["bigrades"] = "ok"
        fail = verify_d2(cx)
    except ConventionError as exc:
        report["bigrades"] = "fail"
        failed = f"convention check: {exc}"
        fail = None
    if failed is None:
        report["d2"] = "ok" if fail is None else "fail"
        if fail is not None:
            failed = f"d∘d: {fail.description}"
    if failed is None:
        chi_c = euler_characteristic(cx)
        chi_h = euler_characteristic(homology_of_complex(cx, jobs=args.jobs, check_ranks=args.debug))
        chi_k = substitute_x(kbsm(d))
        report.update(chi_chains=str(chi_c), chi_homology=str(chi_h), chi_kbsm=str(chi_k))
        if not chi_c == chi_h == chi_k:
            report["euler"] = "fail"
            failed = "euler characteristic mismatch"
        else:
            report["euler"] = "ok"
    report["status"] = "ok" if failed is None else "fail"
    if failed:
        report["failure"] = failed
    if args.format == "json":
        print(json.dumps(report, indent=2))
    elif args.format == "tsv":
        for key, value in report.items():
            print(f"{key}\t{value}")
    else:
        if "d2" in report:
            print(f"d∘d = 0 ........ {report['d2']}")
        print(f"bigrades ....... {report['bigrades']}")
        if "euler" in report:
            print(f"chi(C) = {report['chi_chains']}")
            print(f"chi(H) = {report['chi_homology']}")
            print(f"kbsm   = {report['chi_kbsm']}")
            print(f"euler identity . {report['euler']}")
        print("ok" if failed is None else f"FAIL: {failed}")
    return EXIT_OK if failed is None else EXIT_CHECK


def cmd_compare(args) -> int:
    h1 = _homology(args, read_diagram(args.file_a, args.force))
    h2 = _homology(args, read_diagram(args.file_b, args.force))
    diff = compare(h1, h2)
    if args.format == "json":
        out = {"schema": 1, "equal": diff is None}
        if diff is not None:
            out["first_difference"] = {
                "ijk": list(diff.ijk),
                "left": {"free_rank": diff.left.free_rank, "torsion": list(diff.left.torsion)},
                "right": {"free_rank": diff.right.free_rank, "torsion": list(diff.right.torsion)},
            }
        print(json.dumps(out, indent=2))
    elif diff is None:
        print("equal")
    else:
        i, j, k = diff.ijk
        sep = "\t" if args.format == "tsv" else " "
        print(f"differ{sep}({i},{j},{k}){sep}{diff.left}{sep}{diff.right}")
    return EXIT_OK if diff is None else EXIT_DIFFER


def cmd_corpus(args) -> int:
    if args.action == "list":
        names = corpus_mod.names()
        if args.format == "json":
            rows = [{"name": n, "crossings": corpus_mod.get(n).n_crossings,
                     "description": corpus_mod.describe(n)} for n in names]
            print(json.dumps({"schema": 1, "corpus": rows}, indent=2))
        else:
            for n in names:
                sep = "\t" if args.format == "tsv" else "  "
                print(f"{n:<16s}{sep}{corpus_mod.get(n).n_crossings}{sep}{corpus_mod.describe(n)}")
        return EXIT_OK
    if not args.name:
        raise CliError(EXIT_PARSE, "corpus emit needs a name")
    try:
        sys.stdout.write(corpus_mod.raw(args.name))
    except KeyError:
        raise CliError(EXIT_PARSE, f"no corpus entry named {args.name!r}") from None
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    common.add_argument("--seed", type=int, default=None,
                        help="shuffle circle order and orientation with this seed")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for homology")
    common.add_argument("--force", action="store_true",
                        help=f"allow more than {MAX_CROSSINGS} crossings")
    common.add_argument("--debug", action="store_true", help=argparse.SUPPRESS)
    common.add_argument("--debug-corrupt-signs", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="rp3kh", parents=[common],
        description="Skein module and Khovanov-type homology of links in RP^3.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kbsm", parents=[common], help="skein module value")
    p.add_argument("file")
    p.set_defaults(func=cmd_kbsm)

    p = sub.add_parser("jones", parents=[common], help="writhe-normalised bracket")
    p.add_argument("file")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("homology", parents=[common], help="bigraded homology table")
    p.add_argument("file")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", parents=[common], help="check d∘d = 0 and the Euler identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common], help="compare homology of two diagrams")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", parents=[common], help="list or print shipped diagrams")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        args.jobs = 1
    try:
        return args.func(args)
    except CliError as exc:
        print(f"rp3kh: {exc}", file=sys.stderr)
        return exc.code
    except D2Error as exc:
        print(f"rp3kh: d∘d != 0: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except ConventionError as exc:
        print(f"rp3kh: convention check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
