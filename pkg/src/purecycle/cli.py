"""
Command-line entry point.

Exit codes: 0 success, 1 a mathematical invariant failed, 2 bad input,
3 an I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from .braid import OrbitLimitExceeded, full_braid_orbits, pure_braid_orbits
from .config import Settings, load_settings
from .degeneration import NoPath, NodeIndexSequence, connect_sequences, enumerate_sequences
from .enumeration import enumerate_classes
from .explicit import (
    Case, FourPointParams, FourPointProblem, base_params, four_point_classify,
    four_point_enumerate, four_point_path, formula_number,
)
from .factorization import (
    Factorization, HurwitzProblem, format_tuple, genus_zero_problems, parse_tuple,
)
from .groupid import generated_group
from .perm import cycle_type

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

TABLE_COLUMNS = ("h_formula", "h_enum", "orbit_count", "group_tag", "degen_count")


class InputError(ValueError):
    pass


class InvariantError(AssertionError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _problem(args) -> HurwitzProblem:
    if args.d is None or args.e is None:
        raise InputError("both -d and -e are required")
    e = _int_list(args.e)
    if not getattr(args, "no_sort", False) and e != sorted(e):
        print(f"note: cycle lengths sorted to {','.join(map(str, sorted(e)))}", file=sys.stderr)
        e = sorted(e)
    genus = getattr(args, "genus", 0) or 0
    simple = getattr(args, "simple", None)
    if simple is None:
        simple = 3 * genus
    return HurwitzProblem(args.d, tuple(e), genus, simple)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_number(args, settings: Settings) -> int:
    problem = _problem(args)
    h_formula = formula_number(problem)
    h_enum = None
    if args.check or args.enumerate or h_formula is None:
        h_enum = len(enumerate_classes(problem, settings.bounds))
    payload = {"d": problem.d, "e": list(problem.e), "genus": problem.genus,
               "h_formula": h_formula, "h_enum": h_enum}
    shown = [str(x) for x in (h_formula, h_enum) if x is not None]
    _emit(args, payload, " ".join(shown))
    if args.check and h_formula is not None and h_formula != h_enum:
        raise InvariantError(f"formula gives {h_formula} but enumeration finds {h_enum}")
    return EXIT_OK


def cmd_orbits(args, settings: Settings) -> int:
    problem = _problem(args)
    classes = enumerate_classes(problem, settings.bounds)
    act = full_braid_orbits if args.full else pure_braid_orbits
    report = act(classes, witness=args.witness, limit=settings.orbit_memory_cap)
    payload = {"d": problem.d, "e": list(problem.e), "genus": problem.genus,
               "simple_count": problem.simple_count, "class_count": len(classes),
               "action": "full" if args.full else "pure", **report.to_json()}
    if report.orbit_count != 1 and problem.genus:
        payload["flag"] = "MULTIPLE_ORBITS"
        print("FLAG: more than one orbit for a higher-genus problem", file=sys.stderr)
    lines = [f"{problem}: {len(classes)} classes, {report.orbit_count} orbit(s), "
             f"sizes {report.orbit_sizes}, {report.generator_applications} generator applications"]
    if report.witness_paths is not None:
        for i, word in sorted(report.witness_paths.items()):
            lines.append(f"  {format_tuple(classes[i].sigma)}: {' '.join(word) or '(base)'}")
    _emit(args, payload, "\n".join(lines))
    if args.expect_single and report.orbit_count != 1:
        return EXIT_INVARIANT
    return EXIT_OK


def table_rows(dmax: int, r: int, settings: Settings) -> list[dict]:
    rows = []
    for problem in genus_zero_problems(dmax, r):
        classes = enumerate_classes(problem, settings.bounds)
        report = pure_braid_orbits(classes, limit=settings.orbit_memory_cap)
        tags = {generated_group(c.sigma, max_degree=settings.group_max_degree,
                                cross_check=False).tag.value for c in classes}
        row = {"d": problem.d}
        row.update({f"e{i + 1}": x for i, x in enumerate(problem.e)})
        row.update({
            "h_formula": formula_number(problem),
            "h_enum": len(classes),
            "orbit_count": report.orbit_count,
            "group_tag": "|".join(sorted(tags)),
            "degen_count": len(enumerate_sequences(problem)) if r >= 3 else None,
        })
        rows.append(row)
    return rows


def _render_table(rows, r, fmt) -> str:
    columns = ["d"] + [f"e{i + 1}" for i in range(r)] + list(TABLE_COLUMNS)
    if fmt == "json":
        return json.dumps({"columns": columns, "rows": rows}, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def cmd_table(args, settings: Settings) -> int:
    if args.r < 2:
        raise InputError("r must be at least 2")
    text = _render_table(table_rows(args.dmax, args.r, settings), args.r, args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def _parse_params(text: str) -> FourPointParams:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 3 or parts[0] not in ("I", "II"):
        raise InputError(f"expected CASE,k,second such as II,1,3; got {text!r}")
    try:
        return FourPointParams(Case(parts[0]), int(parts[1]), int(parts[2]))
    except ValueError:
        raise InputError(f"bad parameters {text!r}") from None


def _params_json(q: FourPointParams) -> dict:
    return {"case": q.case.value, "k": q.k, "second": q.second}


def _four_point_problem(args) -> FourPointProblem:
    problem = _problem(args)
    if problem.r != 4 or problem.genus:
        raise InputError("fourpoint needs four cycle lengths and genus 0")
    return FourPointProblem(problem.d, problem.e)


def cmd_fourpoint(args, settings: Settings) -> int:
    if args.action == "list":
        fp = _four_point_problem(args)
        items = four_point_enumerate(fp)
        payload = {"d": fp.d, "e": list(fp.e),
                   "params": [dict(_params_json(q), sigma=format_tuple(f.sigma)) for q, f in items]}
        text = "\n".join(f"{q.case.value} {q.k} {q.second}  {format_tuple(f.sigma)}" for q, f in items)
        _emit(args, payload, text)
        return EXIT_OK
    if args.action == "classify":
        if not args.sigma:
            raise InputError("classify needs --sigma")
        sigma = parse_tuple(args.sigma, args.d)
        e = [cycle_type(p).parts for p in sigma]
        if any(len(parts) != 1 for parts in e):
            raise InputError("every entry must be a single cycle")
        lengths = tuple(parts[0] for parts in e)
        if list(lengths) != sorted(lengths):
            raise InputError("entries must be ordered by ascending cycle length")
        f = Factorization(HurwitzProblem(sigma[0].degree, lengths), sigma)
        q = four_point_classify(f)
        payload = {"d": f.problem.d, "e": list(lengths), **_params_json(q)}
        _emit(args, payload, f"case {q.case.value}, k={q.k}, "
                             f"{'l' if q.case is Case.I else 'm'}={q.second}")
        return EXIT_OK
    fp = _four_point_problem(args)
    start = _parse_params(args.from_) if args.from_ else None
    if start is None:
        raise InputError("path needs --from")
    steps = four_point_path(fp, start)
    word = [s.letter for s in steps]
    payload = {"d": fp.d, "e": list(fp.e), "from": _params_json(start),
               "base": _params_json(base_params(fp)), "word": word,
               "steps": [{"move": s.move.value, "letter": s.letter,
                          "to": _params_json(s.observed)} for s in steps]}
    lines = [f"{s.move.value:5s} {s.letter}  -> {s.observed}" for s in steps]
    lines.append("word: " + (" ".join(word) or "(empty)"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_degenerate(args, settings: Settings) -> int:
    problem = _problem(args)
    if problem.genus:
        raise InputError("node sequences need genus 0")
    if problem.r < 3:
        raise InputError("node sequences need at least three cycle lengths")
    if args.action == "list":
        seqs = enumerate_sequences(problem)
        payload = {"d": problem.d, "e": list(problem.e),
                   "sequences": [list(s.interior) for s in seqs]}
        _emit(args, payload, "\n".join(str(s) for s in seqs))
        return EXIT_OK
    if not args.from_ or not args.to:
        raise InputError("connect needs --from and --to")
    s1 = NodeIndexSequence(problem, _int_list(args.from_))
    s2 = NodeIndexSequence(problem, _int_list(args.to))
    try:
        path = connect_sequences(s1, s2)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"d": problem.d, "e": list(problem.e), "from": list(s1.interior),
               "to": list(s2.interior), "path": [list(t.interior) for t in path]}
    _emit(args, payload, "\n".join(str(t) for t in [s1] + path))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--workers", type=int)
    common.add_argument("--max-degree", type=int)
    common.add_argument("--max-entries", type=int)
    common.add_argument("--orbit-cap", type=int, dest="orbit_memory_cap",
                        help="maximum number of states in an orbit search")
    common.add_argument("--extended", action="store_true", default=None,
                        help="admit the degree-10 checks")
    common.add_argument("--json", action="store_true", help="print JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("-d", type=int)
    problem.add_argument("-e", help="cycle lengths, comma separated")
    problem.add_argument("--no-sort", action="store_true", help="keep the given order of -e")

    parser = argparse.ArgumentParser(prog="purecycle", description="Pure-cycle Hurwitz numbers and braid orbits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("number", parents=[common, problem], help="Hurwitz number")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--simple", type=int)
    p.add_argument("--check", action="store_true", help="compare formula with enumeration")
    p.add_argument("--enumerate", action="store_true", help="always enumerate")
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("orbits", parents=[common, problem], help="braid orbits on classes")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--simple", type=int)
    p.add_argument("--full", action="store_true", help="full braid group instead of pure")
    p.add_argument("--witness", action="store_true", help="record words to each orbit base")
    p.add_argument("--expect-single", action="store_true", help="exit 1 unless there is one orbit")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("table", parents=[common], help="table over all cycle lengths")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("fourpoint", parents=[common, problem], help="four-point constructions")
    p.add_argument("action", choices=("list", "classify", "path"))
    p.add_argument("--sigma", help='tuple such as "(1 2);(1 3);(1 3);(1 2)"')
    p.add_argument("--from", dest="from_", help="start parameters, e.g. II,1,3")
    p.set_defaults(func=cmd_fourpoint)

    p = sub.add_parser("degenerate", parents=[common, problem], help="node index sequences")
    p.add_argument("action", choices=("list", "connect"))
    p.add_argument("--from", dest="from_")
    p.add_argument("--to")
    p.set_defaults(func=cmd_degenerate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = load_settings(args.config).override(
            workers=args.workers, max_degree=args.max_degree, max_entries=args.max_entries,
            orbit_memory_cap=args.orbit_memory_cap, extended=args.extended)
        return args.func(args, settings)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (AssertionError, NoPath) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OrbitLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
