"""
Problem files: one JSON document describing ring, module, resolution,
group and (optionally) a character table. See docs/FORMATS.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .action import (
    GroupData,
    InstabilityError,
    UnsupportedAction,
    induced_psi0,
    validate_group_data,
)
from .chars import CharacterTable, load_character_table, shipped_table
from .freemod import GradedFreeModule, GradedMatrix, identity
from .resolution import FreeComplex, complex_from_dict, complex_to_dict, minimize, taylor_complex
from .ring import GradedRing, MalformedInput, Monomial, degree_of_monomial, monomial_divides

MODULE_KINDS = ("monomial-ideal", "quotient-by-monomial-ideal", "presented")
SOURCES = ("taylor-minimize", "imported")


class ProblemError(MalformedInput):
    pass


@dataclass
class ModuleSpec:
    kind: str
    generators: list = field(default_factory=list)  # monomials (exponent tuples)
    psi0: dict = field(default_factory=dict)  # class name -> constant grid


@dataclass
class ProblemFile:
    ring: GradedRing
    module: ModuleSpec
    source: str
    group: GroupData
    complex: FreeComplex = None
    character_table: CharacterTable = None
    _table_ref: object = None  # how the table was given, for rendering


def _need(data: Mapping, key: str, where: str):
    if not isinstance(data, Mapping):
        raise ProblemError(f"{where} must be an object")
    if key not in data:
        raise ProblemError(f"{where}.{key} is missing" if where else f"{key} is missing")
    return data[key]


def parse_monomial(text, R: GradedRing, where: str) -> Monomial:
    try:
        f = R.parse(text)
    except MalformedInput as exc:
        raise ProblemError(f"{where}: {exc}") from None
    items = list(f.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ProblemError(f"{where}: {text!r} is not a monomial")
    return items[0][0]


def parse_problem(text: str, base_dir: Path = None) -> ProblemFile:
    """Parse and validate a problem file; errors name the offending field."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"not valid JSON: {exc}") from None
    return problem_from_dict(data, base_dir)


def problem_from_dict(data: Mapping, base_dir: Path = None) -> ProblemFile:
    try:
        R = GradedRing.from_dict(_need(data, "ring", ""))
    except ProblemError:
        raise
    except MalformedInput as exc:
        raise ProblemError(f"ring: {exc}") from None

    mod = _need(data, "module", "")
    kind = _need(mod, "kind", "module")
    if kind not in MODULE_KINDS:
        raise ProblemError(f"module.kind must be one of {MODULE_KINDS}, got {kind!r}")
    gens = []
    if kind != "presented":
        raw = _need(mod, "generators", "module")
        if not raw:
            raise ProblemError("module.generators is empty")
        gens = [parse_monomial(g, R, f"module.generators[{k}]") for k, g in enumerate(raw)]
        if len(set(gens)) != len(gens):
            raise ProblemError("module.generators has duplicates")
    psi0 = {}
    for name, grid in (mod.get("psi0") or {}).items():
        try:
            psi0[name] = [[Fraction(a) for a in row] for row in grid]
        except (ValueError, TypeError, ZeroDivisionError):
            raise ProblemError(f"module.psi0[{name}]: entries must be rationals") from None

    res = _need(data, "resolution", "")
    source = _need(res, "source", "resolution")
    if source not in SOURCES:
        raise ProblemError(f"resolution.source must be one of {SOURCES}, got {source!r}")
    C = None
    if source == "imported":
        payload = _need(res, "complex", "resolution")
        try:
            C = complex_from_dict(payload, R, where="resolution.complex")
        except MalformedInput as exc:
            raise ProblemError(str(exc)) from None
    elif "complex" in res:
        raise ProblemError("resolution.complex is only allowed with source 'imported'")
    if kind == "presented" and source != "imported":
        raise ProblemError("a presented module needs resolution.source = 'imported'")

    try:
        G = GroupData.from_dict(_need(data, "group", ""))
    except ProblemError:
        raise
    except MalformedInput as exc:
        raise ProblemError(str(exc)) from None
    problems = validate_group_data(G, R)
    if problems:
        raise ProblemError("group: " + "; ".join(problems))
    for name in psi0:
        if name not in G.names:
            raise ProblemError(f"module.psi0: unknown class {name!r}")
    if kind == "presented":
        missing = [n for k, n in enumerate(G.names) if n not in psi0 and k != G.identity_index]
        if missing:
            raise ProblemError(f"module.psi0 is required for classes {missing} of a presented module")

    T = None
    ref = data.get("characterTable")
    if ref is not None:
        try:
            if isinstance(ref, str):
                if (base_dir is not None and (base_dir / ref).is_file()):
                    raw = json.loads((base_dir / ref).read_text())
                else:
                    raw = shipped_table(ref)
            else:
                raw = ref
            T = load_character_table(raw, G)
        except FileNotFoundError:
            raise ProblemError(f"characterTable: no table named {ref!r}") from None
        except MalformedInput as exc:
            raise ProblemError(f"characterTable: {exc}") from None

    return ProblemFile(R, ModuleSpec(kind, gens, psi0), source, G, C, T, ref)


def load_problem(path) -> ProblemFile:
    path = Path(path)
    return parse_problem(path.read_text(), path.parent)


def problem_to_dict(P: ProblemFile) -> dict:
    R = P.ring
    mod = {"kind": P.module.kind}
    if P.module.kind != "presented":
        mod["generators"] = [R.format(R.monomial(m)) for m in P.module.generators]
    if P.module.psi0:
        mod["psi0"] = {name: [[str(a) for a in row] for row in grid] for name, grid in P.module.psi0.items()}
    res = {"source": P.source}
    if P.complex is not None:
        res["complex"] = complex_to_dict(P.complex, include_ring=False)
    out = {"ring": R.to_dict(), "module": mod, "resolution": res, "group": P.group.to_dict()}
    if P.character_table is not None:
        out["characterTable"] = P._table_ref if isinstance(P._table_ref, str) else P.character_table.to_dict()
    return out


def render_problem(P: ProblemFile) -> str:
    return json.dumps(problem_to_dict(P), indent=1, ensure_ascii=False) + "\n"


# --- pipeline ----------------------------------------------------------

def minimal_generators(gens) -> list:
    """Drop generators divisible by another one."""
    gens = [tuple(m) for m in gens]
    return [m for m in gens if not any(o != m and monomial_divides(o, m) for o in gens)]


def build_resolution(P: ProblemFile, check: bool = False) -> FreeComplex:
    if P.source == "imported":
        return P.complex
    gens = minimal_generators(P.module.generators)
    if P.module.kind == "monomial-ideal":
        mode = "resolve-ideal"
    else:
        if any(not any(m) for m in gens):
            raise ProblemError("the unit ideal has a zero quotient; nothing to resolve")
        mode = "resolve-quotient"
    return minimize(taylor_complex(gens, mode, P.ring), check=check)


def _f0_generators(P: ProblemFile, C: FreeComplex):
    """Generators ordered as the basis of F_0 of C."""
    if P.source == "taylor-minimize":
        return C.target["generators"]
    gens = P.module.generators
    F0 = C.modules[0]
    if [degree_of_monomial(m, P.ring) for m in gens] != list(F0.degrees):
        raise ProblemError("module.generators do not match the degrees of F_0 of the imported complex")
    return gens


def build_psi0(P: ProblemFile, C: FreeComplex) -> list[GradedMatrix]:
    R = P.ring
    F0 = C.modules[0]
    out = []
    for k, cls in enumerate(P.group.classes):
        grid = P.module.psi0.get(cls.name)
        if grid is not None:
            if len(grid) != F0.rank or any(len(row) != F0.rank for row in grid):
                raise ProblemError(f"module.psi0[{cls.name}] must be {F0.rank}x{F0.rank}")
            out.append(GradedMatrix.from_constants(R, F0, grid))
        elif k == P.group.identity_index or P.module.kind == "quotient-by-monomial-ideal":
            out.append(identity(R, F0))
        elif P.module.kind == "monomial-ideal":
            try:
                out.append(induced_psi0(_f0_generators(P, C), cls.representative, F0, R))
            except (InstabilityError, UnsupportedAction) as exc:
                raise ProblemError(f"psi0 for class {cls.name}: {exc}") from None
        else:
            raise ProblemError(f"module.psi0[{cls.name}] is missing")
    if P.module.kind == "quotient-by-monomial-ideal" and (F0.rank != 1 or F0.degrees[0] != R.zero_degree()):
        raise ProblemError("a quotient ring must have F_0 = R in degree 0")
    return out
