"""
Graded free modules and degree-compatible matrices between them.

Columns are images: column v of a matrix holds the image of the v-th basis
element of the domain, written in the codomain basis. A basis element of
degree d generates a copy of R(-d), so entry (u, v) must be zero or
homogeneous of degree deg(domain[v]) - deg(codomain[u]).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ring import (
    ZERO,
    Degree,
    GradedRing,
    MalformedInput,
    Polynomial,
    format_degree,
    is_homogeneous,
    parse_degree,
    sub_degrees,
)


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    degrees: tuple[Degree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(parse_degree(d) for d in self.degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(tuple(tuple(-x for x in d) for d in self.degrees))

    def drop(self, index: int) -> "GradedFreeModule":
        return GradedFreeModule(self.degrees[:index] + self.degrees[index + 1:])

    def __str__(self):
        return "[" + ", ".join(format_degree(d) for d in self.degrees) + "]"


@dataclass(frozen=True)
class GradingViolation:
    row: int
    col: int
    expected: Degree
    actual: object  # a Degree, or None for an inhomogeneous entry

    def __str__(self):
        got = "inhomogeneous" if self.actual is None else format_degree(self.actual)
        return f"entry ({self.row}, {self.col}): expected degree {format_degree(self.expected)}, got {got}"


class GradedMatrix:
    """Matrix of an R-linear map between graded free modules."""

    __slots__ = ("ring", "domain", "codomain", "entries")

    def __init__(self, ring: GradedRing, domain: GradedFreeModule, codomain: GradedFreeModule,
                 entries: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != codomain.rank:
            raise ShapeError(f"matrix has {len(rows)} rows but the codomain has rank {codomain.rank}")
        for row in rows:
            if len(row) != domain.rank:
                raise ShapeError(f"matrix row has {len(row)} entries but the domain has rank {domain.rank}")
        self.ring = ring
        self.domain = domain
        self.codomain = codomain
        self.entries = rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.codomain.rank, self.domain.rank)

    def __getitem__(self, idx):
        u, v = idx
        return self.entries[u][v]

    def column(self, v: int) -> list[Polynomial]:
        return [row[v] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.entries))

    def __repr__(self):
        return f"GradedMatrix({self.codomain} <- {self.domain}, {self.to_strings()})"

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return compose(self, other)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ShapeError("cannot add matrices between different modules")
        return GradedMatrix(self.ring, self.domain, self.codomain,
                            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedMatrix":
        c = Fraction(c)
        return GradedMatrix(self.ring, self.domain, self.codomain,
                            [[a.scale(c) for a in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def is_constant(self) -> bool:
        return all(a.is_constant() for row in self.entries for a in row)

    def transpose(self) -> "GradedMatrix":
        """Matrix of the dual map; degrees are negated so the rule still holds."""
        n, m = self.shape
        return GradedMatrix(self.ring, self.codomain.dual(), self.domain.dual(),
                            [[self.entries[u][v] for u in range(n)] for v in range(m)])

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.format(a) for a in row] for row in self.entries]

    @classmethod
    def from_strings(cls, ring: GradedRing, domain, codomain, grid) -> "GradedMatrix":
        if not isinstance(domain, GradedFreeModule):
            domain = GradedFreeModule(tuple(domain))
        if not isinstance(codomain, GradedFreeModule):
            codomain = GradedFreeModule(tuple(codomain))
        return cls(ring, domain, codomain, [[ring.parse(a) for a in row] for row in grid])

    @classmethod
    def from_constants(cls, ring: GradedRing, module: GradedFreeModule, grid,
                       codomain: GradedFreeModule = None) -> "GradedMatrix":
        codomain = module if codomain is None else codomain
        return cls(ring, module, codomain, [[ring.const(Fraction(a)) for a in row] for row in grid])


def zero_matrix(ring: GradedRing, domain: GradedFreeModule, codomain: GradedFreeModule) -> GradedMatrix:
    z = ring.zero()
    return GradedMatrix(ring, domain, codomain, [[z] * domain.rank for _ in range(codomain.rank)])


def identity(ring: GradedRing, module: GradedFreeModule) -> GradedMatrix:
    z, one = ring.zero(), ring.one()
    n = module.rank
    return GradedMatrix(ring, module, module, [[one if u == v else z for v in range(n)] for u in range(n)])


def validate_graded(A: GradedMatrix) -> list[GradingViolation]:
    """Cells breaking the degree rule; an empty list means A is graded."""
    bad = []
    for u, row in enumerate(A.entries):
        du = A.codomain.degrees[u]
        for v, a in enumerate(row):
            if a.is_zero():
                continue
            want = sub_degrees(A.domain.degrees[v], du)
            got = is_homogeneous(a, A.ring)
            if got is not ZERO and got != want:
                bad.append(GradingViolation(u, v, want, got))
    return bad


def compose(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """The product A·B, i.e. first B then A."""
    if A.domain != B.codomain:
        raise ShapeError(f"cannot compose: domain {A.domain} != codomain {B.codomain}")
    ring = A.ring
    z = ring.zero()
    n, k = A.shape
    m = B.domain.rank
    Bcols = [[B.entries[t][v] for t in range(k)] for v in range(m)]
    out = []
    for u in range(n):
        Arow = A.entries[u]
        nz = [(t, a) for t, a in enumerate(Arow) if a]
        row = []
        for v in range(m):
            acc = z
            col = Bcols[v]
            for t, a in nz:
                b = col[t]
                if b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return GradedMatrix(ring, B.domain, A.codomain, out)


def degrees_of_domain(A: GradedMatrix) -> list[Degree]:
    return list(A.domain.degrees)


def graded_trace(A: GradedMatrix, j) -> Fraction:
    """Trace of the block of A on basis elements of degree j."""
    if A.domain != A.codomain:
        raise ShapeError("trace needs an endomorphism (domain == codomain)")
    j = parse_degree(j)
    total = Fraction(0)
    for u, d in enumerate(A.domain.degrees):
        if d == j:
            a = A.entries[u][u]
            if not a.is_constant():
                # homogeneity forces degree 0 here
                raise AssertionError(f"non-constant diagonal entry {a!r} at ({u}, {u})")
            total += a.constant_value()
    return total


def check_graded(A: GradedMatrix, what: str = "matrix") -> None:
    bad = validate_graded(A)
    if bad:
        raise MalformedInput(f"{what} is not graded: " + "; ".join(str(b) for b in bad[:5]))
