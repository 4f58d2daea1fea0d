"""Command-line front end: betti-char <verify|resolve|betti|decompose>."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .betti import BettiCharacterTable, betti_characters
from .chars import NonIntegralDecomposition, decompose
from .freemod import ShapeError
from .problem import ProblemError, ProblemFile, build_psi0, build_resolution, load_problem
from .resolution import complex_to_dict, verify_complex
from .ring import MalformedInput, format_degree, parse_degree
from .solve import NoSolution

COMMANDS = ("verify", "resolve", "betti", "decompose")


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _grid(header, rows) -> str:
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    lines = ["  ".join(cell.rjust(w) if c else cell.ljust(w) for c, (cell, w) in enumerate(zip(r, widths))).rstrip()
             for r in [header] + rows]
    return "\n".join(lines) + "\n"


def _twist(d) -> str:
    if not any(d):
        return "R"
    if len(d) == 1:
        return f"R({-d[0]})"
    return f"R(-{format_degree(d)})"


def format_table(table: BettiCharacterTable, mode: str = "text") -> str:
    if mode == "machine":
        data = {
            "classes": list(table.class_names),
            "entries": [{"i": i, "degree": list(j), "values": [_q(v) for v in vals]}
                        for (i, j), vals in table.items()],
        }
        return json.dumps(data, indent=1, ensure_ascii=False) + "\n"
    if mode != "text":
        raise ValueError(f"unknown format {mode!r}")
    header = ["(i, j)"] + list(table.class_names)
    rows = [[f"({i}, {format_degree(j)})"] + [_q(v) for v in vals] for (i, j), vals in table.items()]
    return _grid(header, rows)


def parse_table(text: str) -> BettiCharacterTable:
    """Inverse of format_table(..., "machine")."""
    data = json.loads(text)
    entries = {(e["i"], parse_degree(e["degree"])): [Fraction(v) for v in e["values"]] for e in data["entries"]}
    return BettiCharacterTable(tuple(data["classes"]), entries)


def format_decomposition(table: BettiCharacterTable, rows: dict, names, mode: str) -> str:
    if mode == "machine":
        data = {
            "irreducibles": list(names),
            "entries": [{"i": i, "degree": list(j), "multiplicities": dict(rows[(i, j)])}
                        for (i, j) in table.keys()],
        }
        return json.dumps(data, indent=1, ensure_ascii=False) + "\n"
    header = ["(i, j)"] + list(names)
    body = [[f"({i}, {format_degree(j)})"] + [str(m) for _, m in rows[(i, j)]] for (i, j) in table.keys()]
    return _grid(header, body)


def run(command: str, problem: ProblemFile, fmt: str = "text", check: bool = False) -> str:
    """Execute one command and return its rendered output."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    C = build_resolution(problem, check=check)
    if command == "verify":
        rep = verify_complex(C)
        if fmt == "machine":
            return json.dumps({
                "ranks": list(C.ranks()),
                "compositionZero": rep.composition_zero,
                "homogeneous": [not bad for bad in rep.homogeneous],
                "minimal": rep.minimal,
                "failures": rep.failures(),
            }, indent=1) + "\n"
        lines = [f"ranks: {list(C.ranks())}"]
        for i, ok in enumerate(rep.composition_zero, start=1):
            lines.append(f"d_{i} d_{i + 1} = 0: {'ok' if ok else 'FAIL'}")
        for i, (bad, mini) in enumerate(zip(rep.homogeneous, rep.minimal), start=1):
            lines.append(f"d_{i}: homogeneous {'ok' if not bad else 'FAIL'}, minimal {'ok' if mini else 'FAIL'}")
        lines.extend(f"  {f}" for f in rep.failures())
        lines.append("complex ok" if rep.ok else "complex has problems")
        return "\n".join(lines) + "\n"
    if command == "resolve":
        if fmt == "machine":
            return json.dumps(complex_to_dict(C), indent=1) + "\n"
        lines = []
        for i, F in enumerate(C.modules):
            counts = {}
            for d in F.degrees:
                counts[d] = counts.get(d, 0) + 1
            twists = " + ".join(_twist(d) + (f"^{c}" if c > 1 else "")
                                for d, c in sorted(counts.items())) or "0"
            lines.append(f"F_{i}: rank {F.rank}: {twists}")
        return "\n".join(lines) + "\n"
    P = build_psi0(problem, C)
    table = betti_characters(C, P, problem.group, check=check)
    if command == "betti":
        return format_table(table, fmt)
    T = problem.character_table
    if T is None:
        raise ProblemError("decompose needs a characterTable in the problem file")
    rows = {key: decompose(vals, T, problem.group) for key, vals in table.items()}
    return format_decomposition(table, rows, T.names, fmt)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="betti-char",
                                     description="Betti characters of finite groups on minimal free resolutions.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", required=True, help="problem file (JSON)")
    parser.add_argument("--format", "-f", choices=("text", "machine"), default="text")
    parser.add_argument("--check", action="store_true", help="enable internal consistency assertions")
    args = parser.parse_args(argv)
    try:
        problem = load_problem(args.input)
        sys.stdout.write(run(args.command, problem, args.format, args.check))
    except NoSolution as exc:
        where = ""
        if exc.homological_degree is not None:
            where = f" (i={exc.homological_degree}, class={exc.class_name})"
        print(f"error: NoSolution{where}: {exc}", file=sys.stderr)
        return 3
    except (NonIntegralDecomposition, MalformedInput, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
