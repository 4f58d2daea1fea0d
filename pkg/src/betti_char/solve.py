"""
Exact linear algebra over Q and graded matrix factorization.

`factor(A, B)` finds a homogeneous X with B·X = A one column at a time: the
unknown entries of a column are written in the monomial basis of their
required degree, B·x = a expands into one scalar equation per
(row, monomial) pair, and the system is solved by Gauss-Jordan elimination
with free variables set to zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .freemod import GradedFreeModule, GradedMatrix, ShapeError
from .ring import Polynomial, monomials_of_degree, sub_degrees

PIVOT_RULES = ("first", "last")


class NoSolution(ArithmeticError):
    """B·X = A has no homogeneous solution.

    Raised by `factor`; the Betti driver re-raises it with the homological
    degree and the conjugacy class that failed.
    """

    def __init__(self, message, homological_degree=None, class_name=None, column=None):
        super().__init__(message)
        self.homological_degree = homological_degree
        self.class_name = class_name
        self.column = column


def solve_sparse(equations, nvars: int, pivot: str = "first"):
    """Solve sparse linear equations exactly.

    `equations` is an iterable of (coeffs, rhs) with coeffs a dict
    var -> Fraction. Returns a list of nvars Fractions (free variables are 0)
    or None if the system is inconsistent. `pivot` picks the lowest ("first")
    or highest ("last") variable index as the pivot of each new row.
    """
    if pivot not in PIVOT_RULES:
        raise ValueError(f"unknown pivot rule {pivot!r}")
    rows = {}  # pivot var -> (coeffs, rhs), kept fully reduced
    for coeffs, rhs in equations:
        row = {k: Fraction(c) for k, c in coeffs.items() if c}
        rhs = Fraction(rhs)
        for p in [k for k in row if k in rows]:
            c = row.get(p)
            if not c:
                continue
            prow, prhs = rows[p]
            for k, a in prow.items():
                s = row.get(k, 0) - c * a
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
            rhs -= c * prhs
        if not row:
            if rhs:
                return None
            continue
        p = min(row) if pivot == "first" else max(row)
        inv = 1 / row[p]
        row = {k: a * inv for k, a in row.items()}
        rhs *= inv
        # keep earlier rows reduced w.r.t. the new pivot
        for q, (qrow, qrhs) in list(rows.items()):
            c = qrow.get(p)
            if c:
                for k, a in row.items():
                    s = qrow.get(k, 0) - c * a
                    if s:
                        qrow[k] = s
                    else:
                        qrow.pop(k, None)
                rows[q] = (qrow, qrhs - c * rhs)
        rows[p] = (row, rhs)
    x = [Fraction(0)] * nvars
    for p, (_, rhs) in rows.items():
        x[p] = rhs
    return x


def _dense_equations(M: Sequence[Sequence], rhs: Sequence = None):
    for i, row in enumerate(M):
        yield {k: Fraction(a) for k, a in enumerate(row) if a}, (rhs[i] if rhs is not None else 0)


def rank(M: Sequence[Sequence]) -> int:
    rows = []
    for row in M:
        row = [Fraction(a) for a in row]
        rows.append(row)
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def determinant(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ShapeError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ShapeError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def factor(A: GradedMatrix, B: GradedMatrix, pivot: str = "first") -> GradedMatrix:
    """Homogeneous X with B·X = A, where A and B share a codomain.

    Every entry X[u][v] is zero or homogeneous of degree
    deg(domain(A)[v]) - deg(domain(B)[u]). Raises NoSolution when A is not
    in the image of B degreewise.
    """
    if A.codomain != B.codomain:
        raise ShapeError(f"factor needs a common codomain: {A.codomain} != {B.codomain}")
    ring = A.ring
    nrows = B.codomain.rank
    nunk = B.domain.rank
    columns = []
    for v in range(A.domain.rank):
        dv = A.domain.degrees[v]
        # variable layout: (u, monomial) pairs flattened
        var_of = []
        bases = []
        for u in range(nunk):
            basis = monomials_of_degree(sub_degrees(dv, B.domain.degrees[u]), ring)
            bases.append(basis)
            var_of.extend((u, mono) for mono in basis)
        offsets = []
        off = 0
        for basis in bases:
            offsets.append(off)
            off += len(basis)
        eqs: dict = {}
        for r in range(nrows):
            Brow = B.entries[r]
            for u in range(nunk):
                b = Brow[u]
                if not b:
                    continue
                for k, mono in enumerate(bases[u]):
                    var = offsets[u] + k
                    for m, c in b.items():
                        key = (r, tuple(x + y for x, y in zip(m, mono)))
                        coeffs = eqs.setdefault(key, [{}, Fraction(0)])[0]
                        coeffs[var] = coeffs.get(var, 0) + c
            for m, c in A.entries[r][v].items():
                eqs.setdefault((r, m), [{}, Fraction(0)])[1] = c
        # sorted keys make the elimination order deterministic
        system = [(eqs[key][0], eqs[key][1]) for key in sorted(eqs)]
        x = solve_sparse(system, len(var_of), pivot)
        if x is None:
            raise NoSolution(f"column {v} of A is not in the image of B", column=v)
        col = []
        for u in range(nunk):
            terms = {}
            for k, mono in enumerate(bases[u]):
                c = x[offsets[u] + k]
                if c:
                    terms[mono] = c
            col.append(Polynomial(terms, ring.nvars))
        columns.append(col)
    entries = [[columns[v][u] for v in range(A.domain.rank)] for u in range(nunk)]
    return GradedMatrix(ring, A.domain, B.domain, entries)


def factor_right(A: GradedMatrix, B: GradedMatrix, pivot: str = "first") -> GradedMatrix:
    """Homogeneous Y with Y·B = A, where A and B share a domain (via transposes)."""
    if A.domain != B.domain:
        raise ShapeError(f"factor_right needs a common domain: {A.domain} != {B.domain}")
    return factor(A.transpose(), B.transpose(), pivot).transpose()
