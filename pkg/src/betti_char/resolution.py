"""
Chain complexes of graded free modules F_0 <- F_1 <- ... <- F_n.

Taylor complexes give a (usually non-minimal) resolution of a monomial
ideal or its quotient ring; `minimize` cancels unit entries until every
differential has entries in the maximal ideal. Imported complexes are
checked for grading and composition-zero only: exactness is trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .freemod import GradedFreeModule, GradedMatrix, compose, validate_graded
from .ring import (
    GradedRing,
    MalformedInput,
    Monomial,
    Polynomial,
    degree_of_monomial,
    monomial_lcm,
    monomial_sort_key,
    parse_degree,
)

MODES = ("resolve-ideal", "resolve-quotient")


class ComplexError(MalformedInput):
    pass


@dataclass(frozen=True)
class FreeComplex:
    """Differentials[i-1] is the matrix of d_i: F_i -> F_{i-1}."""

    ring: GradedRing
    modules: tuple[GradedFreeModule, ...]
    differentials: tuple[GradedMatrix, ...]
    target: Mapping = field(default=None, compare=False)  # what is resolved, informational

    def __post_init__(self):
        mods = tuple(self.modules)
        diffs = tuple(self.differentials)
        if not mods:
            raise ComplexError("a complex needs at least F_0")
        if len(diffs) != len(mods) - 1:
            raise ComplexError(f"{len(mods)} modules need {len(mods) - 1} differentials, got {len(diffs)}")
        for i, D in enumerate(diffs, start=1):
            if D.codomain != mods[i - 1] or D.domain != mods[i]:
                raise ComplexError(f"d_{i} does not map F_{i} to F_{i - 1}")
        object.__setattr__(self, "modules", mods)
        object.__setattr__(self, "differentials", diffs)

    @classmethod
    def from_differentials(cls, differentials: Sequence[GradedMatrix], target=None) -> "FreeComplex":
        if not differentials:
            raise ComplexError("need at least one differential (use the constructor otherwise)")
        mods = [differentials[0].codomain] + [D.domain for D in differentials]
        return cls(differentials[0].ring, tuple(mods), tuple(differentials), target)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def ranks(self) -> tuple[int, ...]:
        return tuple(F.rank for F in self.modules)

    def d(self, i: int) -> GradedMatrix:
        return self.differentials[i - 1]

    def betti_numbers(self) -> dict:
        """{(i, j): number of basis elements of F_i in degree j}."""
        out = {}
        for i, F in enumerate(self.modules):
            for deg in F.degrees:
                out[(i, deg)] = out.get((i, deg), 0) + 1
        return dict(sorted(out.items()))


# --- Taylor complex --------------------------------------------------------

def taylor_complex(generators: Sequence[Monomial], mode: str, R: GradedRing) -> FreeComplex:
    """Taylor resolution of I = <generators> ("resolve-ideal") or of R/I.

    Subsets S of the sorted generators index the bases (|S| = i + 1 for the
    ideal, |S| = i for the quotient), e_S has degree deg(lcm S), and
    d(e_S) = sum_k (-1)^(pos_k + 1) (lcm S / lcm(S - m_k)) e_(S - m_k).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    gens = [tuple(m) for m in generators]
    if not gens:
        raise ComplexError("no generators")
    for m in gens:
        if len(m) != R.nvars:
            raise MalformedInput(f"generator {m} does not match the ring")
    if len(set(gens)) != len(gens):
        raise ComplexError("duplicate generators")
    gens.sort(key=monomial_sort_key)
    n = len(gens)
    offset = 1 if mode == "resolve-ideal" else 0
    top = n - offset
    subsets = [list(combinations(range(n), i + offset)) for i in range(top + 1)]
    lcms = {}
    for level in subsets:
        for S in level:
            lcms[S] = monomial_lcm((gens[k] for k in S), R.nvars)
    modules = [GradedFreeModule(tuple(degree_of_monomial(lcms[S], R) for S in level)) for level in subsets]
    diffs = []
    zero = R.zero()
    for i in range(1, top + 1):
        rows = {S: r for r, S in enumerate(subsets[i - 1])}
        entries = [[zero] * len(subsets[i]) for _ in subsets[i - 1]]
        for col, S in enumerate(subsets[i]):
            L = lcms[S]
            for pos, k in enumerate(S, start=1):
                T = S[:pos - 1] + S[pos:]
                quot = tuple(a - b for a, b in zip(L, lcms[T]))
                sign = 1 if (pos + 1) % 2 == 0 else -1
                entries[rows[T]][col] = Polynomial({quot: sign}, R.nvars)
        diffs.append(GradedMatrix(R, modules[i], modules[i - 1], entries))
    target = {"kind": "ideal" if offset else "quotient", "generators": gens}
    return FreeComplex(R, tuple(modules), tuple(diffs), target)


# --- minimization ----------------------------------------------------------

def _find_unit(diffs, order: str):
    idx = range(len(diffs))
    if order == "reverse":
        idx = reversed(idx)
    for i in idx:
        grid = diffs[i]
        rows = range(len(grid))
        if order == "reverse":
            rows = reversed(rows)
        for u in rows:
            row = grid[u]
            cols = range(len(row))
            if order == "reverse":
                cols = reversed(cols)
            for v in cols:
                a = row[v]
                if a and a.is_constant():
                    return i, u, v
    return None


def minimize(C: FreeComplex, order: str = "forward", check: bool = False) -> FreeComplex:
    """Cancel unit entries until the complex is minimal.

    Pivot (u, v) of d_i with constant c: d_i loses row u and column v and
    becomes d_i[r][s] - d_i[r][v] d_i[u][s] / c, d_(i+1) loses row v and
    d_(i-1) loses column u. `order` is "forward" (i, rows, columns all
    ascending) or "reverse"; the scan restarts after every cancellation.
    With `check`, composition-zero is verified after each step.
    """
    if order not in ("forward", "reverse"):
        raise ValueError("order must be 'forward' or 'reverse'")
    report = verify_complex(C)
    if not (report.composition_ok and report.homogeneous_ok):
        raise ComplexError("minimize needs a graded complex: " + "; ".join(report.failures()))
    R = C.ring
    degs = [list(F.degrees) for F in C.modules]
    diffs = [[list(row) for row in D.entries] for D in C.differentials]
    while True:
        hit = _find_unit(diffs, order)
        if hit is None:
            break
        i, u, v = hit  # d_(i+1) in 1-based terms
        grid = diffs[i]
        c = grid[u][v].constant_value()
        pivot_row = grid[u]
        new = []
        for r, row in enumerate(grid):
            if r == u:
                continue
            f = row[v]
            if f:
                f = f.scale(1 / c)
                row = [a - f * b if b else a for a, b in zip(row, pivot_row)]
            new.append(row[:v] + row[v + 1:])
        diffs[i] = new
        if i + 1 < len(diffs):
            del diffs[i + 1][v]
        if i > 0:
            for row in diffs[i - 1]:
                del row[u]
        del degs[i][u]
        del degs[i + 1][v]
        if check:
            _assert_complex(R, degs, diffs)
    # drop zero modules from the top, always keeping F_0
    while len(degs) > 1 and not degs[-1]:
        degs.pop()
        diffs.pop()
    modules = [GradedFreeModule(tuple(d)) for d in degs]
    out = [GradedMatrix(R, modules[i + 1], modules[i], grid) for i, grid in enumerate(diffs)]
    return FreeComplex(R, tuple(modules), tuple(out), C.target)


def _assert_complex(R, degs, diffs):
    mods = [GradedFreeModule(tuple(d)) for d in degs]
    mats = [GradedMatrix(R, mods[i + 1], mods[i], g) for i, g in enumerate(diffs)]
    for i in range(len(mats) - 1):
        if not compose(mats[i], mats[i + 1]).is_zero():
            raise AssertionError(f"composition d_{i + 1} d_{i + 2} != 0 during minimization")


# --- verification ----------------------------------------------------------

@dataclass
class ComplexReport:
    composition_zero: list  # per i, d_i d_(i+1) == 0
    homogeneous: list  # per d_i, list of GradingViolation
    minimal: list  # per d_i, True when no nonzero constant entry

    @property
    def composition_ok(self) -> bool:
        return all(self.composition_zero)

    @property
    def homogeneous_ok(self) -> bool:
        return not any(self.homogeneous)

    @property
    def minimal_ok(self) -> bool:
        return all(self.minimal)

    @property
    def ok(self) -> bool:
        return self.composition_ok and self.homogeneous_ok and self.minimal_ok

    def failures(self) -> list[str]:
        out = []
        for i, z in enumerate(self.composition_zero, start=1):
            if not z:
                out.append(f"d_{i} d_{i + 1} != 0")
        for i, bad in enumerate(self.homogeneous, start=1):
            out.extend(f"d_{i} {b}" for b in bad)
        for i, m in enumerate(self.minimal, start=1):
            if not m:
                out.append(f"d_{i} has a unit entry")
        return out


def verify_complex(C: FreeComplex) -> ComplexReport:
    D = C.differentials
    comp = [compose(D[i], D[i + 1]).is_zero() for i in range(len(D) - 1)]
    homog = [validate_graded(M) for M in D]
    minimal = [not any(a and a.is_constant() for row in M.entries for a in row) for M in D]
    return ComplexReport(comp, homog, minimal)


# --- text format -----------------------------------------------------------

def complex_to_dict(C: FreeComplex, include_ring: bool = True) -> dict:
    out = {}
    if include_ring:
        out["ring"] = C.ring.to_dict()
    out["modules"] = [[list(d) for d in F.degrees] for F in C.modules]
    out["differentials"] = [M.to_strings() for M in C.differentials]
    return out


def complex_from_dict(data: Mapping, ring: GradedRing = None, where: str = "complex",
                      require_minimal: bool = False) -> FreeComplex:
    if ring is None:
        if "ring" not in data:
            raise ComplexError(f"{where}.ring is missing and no ring was given")
        ring = GradedRing.from_dict(data["ring"])
    if "modules" not in data:
        raise ComplexError(f"{where}.modules is missing")
    try:
        mods = [GradedFreeModule(tuple(parse_degree(d) for d in F)) for F in data["modules"]]
    except (TypeError, ValueError) as exc:
        raise ComplexError(f"{where}.modules: {exc}") from None
    for k, F in enumerate(mods):
        if any(len(d) != ring.rank for d in F.degrees):
            raise ComplexError(f"{where}.modules[{k}]: degrees must have length {ring.rank}")
    grids = data.get("differentials", [])
    if len(grids) != len(mods) - 1:
        raise ComplexError(f"{where}: {len(mods)} modules need {len(mods) - 1} differentials, got {len(grids)}")
    diffs = []
    for i, grid in enumerate(grids, start=1):
        here = f"{where}.differentials[{i - 1}]"
        rows, cols = mods[i - 1].rank, mods[i].rank
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ComplexError(f"{here}: d_{i} must be {rows}x{cols} to match the degree lists")
        try:
            diffs.append(GradedMatrix.from_strings(ring, mods[i], mods[i - 1], grid))
        except MalformedInput as exc:
            raise ComplexError(f"{here}: {exc}") from None
    C = FreeComplex(ring, tuple(mods), tuple(diffs), data.get("target"))
    report = verify_complex(C)
    problems = [f for f in report.failures() if "unit entry" not in f or require_minimal]
    if problems:
        raise ComplexError(f"{where} rejected: " + "; ".join(problems))
    return C


def export_complex(C: FreeComplex) -> str:
    return json.dumps(complex_to_dict(C), indent=1) + "\n"


def import_complex(text: str, ring: GradedRing = None, require_minimal: bool = False) -> FreeComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"not valid JSON: {exc}") from None
    return complex_from_dict(data, ring, require_minimal=require_minimal)
