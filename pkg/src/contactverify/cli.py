"""Command-line front end.

Exit codes: 0 when every executed scenario passes, 1 when one fails,
2 for usage, parameter or input-file errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Sequence, TextIO

from . import __version__
from . import registry
from .abelian.homology import homology
from .abelian.snf import smith_normal_form
from .formats import FormatError, format_matrix, parse_complex, parse_matrix, parse_presentation
from .grouppres import abelianization, simplify_with_report
from .results import ParameterError, VerificationResult

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _color(stream: TextIO) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _status(status: str, color: bool) -> str:
    word = status.upper()
    if not color:
        return word
    return f"\033[{32 if status == 'pass' else 31}m{word}\033[0m"


def _fmt_params(params: dict[str, Any]) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def render_text(r: VerificationResult, color: bool) -> str:
    head = f"{_status(r.status, color)} {r.scenario_name}"
    if r.params:
        head += f" [{_fmt_params(r.params)}]"
    lines = [head + f" ({r.elapsed * 1000:.1f} ms)"]
    for c in r.checks:
        mark = "ok " if c.passed else "BAD"
        lines.append(f"  {mark} {c.label}" + ("" if c.passed else f": {c.witness}"))
    for a in r.axioms_used:
        lines.append(f"  axiom: {a}")
    return "\n".join(lines)


def _json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _parse_params(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--param {key}: {value!r} is not an integer") from None
    return out


def _read(path: str) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="contactverify", description="Exact checks of contact-topology computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list registered scenarios")

    v = sub.add_parser("verify", help="run one scenario")
    v.add_argument("--scenario", required=True)
    v.add_argument("--n", type=int, help="size parameter")
    v.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--negative-control", action="store_true",
                   help="run the mutated variant, which is expected to fail")
    v.add_argument("--unsafe-n", action="store_true", help="lift the default size caps")

    s = sub.add_parser("snf", help="Smith normal form of a matrix file")
    s.add_argument("--input", required=True)
    s.add_argument("--format", choices=("text", "json"), default="text")

    h = sub.add_parser("homology", help="homology of a chain-complex file")
    h.add_argument("--input", required=True)
    h.add_argument("--format", choices=("text", "json"), default="text")

    g = sub.add_parser("pi1", help="simplify a presentation file")
    g.add_argument("--input", required=True)
    g.add_argument("--simplify", action="store_true")
    g.add_argument("--abelianize", action="store_true")
    g.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("report", help="run every scenario and write a report")
    r.add_argument("--all", action="store_true", required=True)
    r.add_argument("--n-max", type=int, default=3)
    r.add_argument("--out")
    return p


def cmd_list(args, out: TextIO) -> int:
    for d in registry.SCENARIOS:
        params = " ".join(f"--{p.name} [{p.lo}..{'' if p.cap is None else p.cap}] "
                          f"(default {p.default})" for p in d.params)
        out.write(f"{d.name:18s} {d.module:11s} {d.description}"
                  + (f"  {params}" if params else "") + "\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    try:
        desc = registry.get(args.scenario)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    given = _parse_params(args.param)
    if args.n is not None:
        if desc.n_param is None:
            raise UsageError(f"scenario {desc.name!r} takes no --n")
        given[desc.n_param.name] = args.n
    result = desc.execute(given, negative=args.negative_control, unsafe=args.unsafe_n)
    if args.format == "json":
        out.write(_json(result.to_record()) + "\n")
    else:
        out.write(render_text(result, _color(out)) + "\n")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_snf(args, out: TextIO) -> int:
    M = parse_matrix(_read(args.input))
    U, S, V = smith_normal_form(M)
    factors = [S[i, i] for i in range(min(S.shape)) if S[i, i] != 0]
    if args.format == "json":
        out.write(_json({"S": S.to_rows(), "U": U.to_rows(), "V": V.to_rows(),
                         "invariant_factors": factors, "shape": list(M.shape)}) + "\n")
    else:
        out.write("S =\n" + format_matrix(S) + "U =\n" + format_matrix(U)
                  + "V =\n" + format_matrix(V))
        out.write("invariant factors: " + (" ".join(map(str, factors)) or "none") + "\n")
    return EXIT_OK


def cmd_homology(args, out: TextIO) -> int:
    groups = homology(parse_complex(_read(args.input)))
    if args.format == "json":
        out.write(_json({"homology": [str(g) for g in groups]}) + "\n")
    else:
        for k, g in enumerate(groups):
            out.write(f"H{k} = {g}\n")
    return EXIT_OK


def cmd_pi1(args, out: TextIO) -> int:
    P = parse_presentation(_read(args.input))
    record: dict[str, Any] = {"input": str(P)}
    if args.simplify:
        rep = simplify_with_report(P)
        P = rep.presentation
        record.update(simplified=str(P), steps=rep.steps, relator_free=rep.relator_free)
        if rep.relator_free:
            record["free_rank"] = rep.free_rank
    if args.abelianize:
        record["abelianization"] = str(abelianization(P))
    if args.format == "json":
        out.write(_json(record) + "\n")
    else:
        out.write(f"input: {record['input']}\n")
        if args.simplify:
            for step in record["steps"]:
                out.write(f"  {step}\n")
            out.write(f"simplified: {record['simplified']}\n")
            if rep.relator_free:
                out.write(f"syntactically free of rank {rep.free_rank}\n")
        if args.abelianize:
            out.write(f"abelianization: {record['abelianization']}\n")
    return EXIT_OK


def build_report(n_max: int) -> dict[str, Any]:
    start = time.perf_counter()
    results = []
    for desc in registry.SCENARIOS:
        for given in registry.report_grid(desc, n_max):
            results.append(desc.execute(given))
    records = []
    for r in results:
        rec = r.to_record()
        records.append({k: rec[k] for k in ("scenario", "params", "status", "witness",
                                            "axioms_used", "elapsed_ms")})
    passed = sum(r.passed for r in results)
    return {
        "version": __version__,
        "n_max": n_max,
        "results": records,
        "summary": {"pass": passed, "fail": len(results) - passed},
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }


def cmd_report(args, out: TextIO) -> int:
    if args.n_max < 1:
        raise ParameterError("--n-max must be >= 1")
    report = build_report(args.n_max)
    color = _color(out)
    for rec in report["results"]:
        line = f"{_status(rec['status'], color)} {rec['scenario']}"
        if rec["params"]:
            line += f" [{_fmt_params(rec['params'])}]"
        out.write(line + ("" if rec["status"] == "pass" else f": {rec['witness']}") + "\n")
    s = report["summary"]
    out.write(f"{s['pass']} passed, {s['fail']} failed\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_json(report) + "\n")
    return EXIT_OK if s["fail"] == 0 else EXIT_FAIL


COMMANDS = {"list": cmd_list, "verify": cmd_verify, "snf": cmd_snf, "homology": cmd_homology,
            "pi1": cmd_pi1, "report": cmd_report}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except (ParameterError, FormatError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
