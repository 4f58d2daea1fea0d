"""
Betti characters of a finite group acting on a minimal free resolution.

For each class representative g the driver twists the differentials by
g^-1 entrywise, lifts psi_0 to a chain map by repeated factorization

    Q_i = factor(Q_(i-1) D_i, g^-1 D_i),

and reads the character value at (i, j) off the trace of Q_i on the basis
elements of degree j. Any lift gives the same traces, so the choice made
by `factor` does not matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .action import (
    GroupData,
    UnsupportedAction,
    act_on_matrix,
    inverse_action,
    validate_psi0,
)
from .freemod import GradedMatrix, compose, degrees_of_domain, graded_trace
from .resolution import FreeComplex, ComplexError, verify_complex
from .ring import Degree, GradedRing, Monomial, monomial_divides, monomials_of_degree, parse_degree
from .solve import NoSolution, factor, factor_right


@dataclass
class BettiCharacterTable:
    """(i, j) -> one exact value per conjugacy class, in class order."""

    class_names: tuple[str, ...]
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.class_names = tuple(self.class_names)
        self.entries = {(int(i), tuple(j)): tuple(Fraction(x) for x in vals)
                        for (i, j), vals in self.entries.items()}

    def keys(self):
        return sorted(self.entries)

    def __getitem__(self, key):
        i, j = key
        return self.entries[(i, parse_degree(j))]

    def __contains__(self, key):
        i, j = key
        return (i, parse_degree(j)) in self.entries

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, BettiCharacterTable):
            return NotImplemented
        return self.class_names == other.class_names and self.entries == other.entries

    def betti_numbers(self, identity_index: int) -> dict:
        return {k: self.entries[k][identity_index] for k in self.keys()}

    def items(self):
        return [(k, self.entries[k]) for k in self.keys()]


def _record(acc: dict, i: int, Q: GradedMatrix, k: int, nclasses: int):
    for j in dict.fromkeys(degrees_of_domain(Q)):
        acc.setdefault((i, j), [Fraction(0)] * nclasses)[k] = graded_trace(Q, j)


def _finish(acc: dict, names) -> BettiCharacterTable:
    return BettiCharacterTable(tuple(names), {k: v for k, v in acc.items() if any(v)})


def lift_chain_map(D: FreeComplex, psi0: GradedMatrix, g, pivot: str = "first",
                   class_name: str = None) -> list[GradedMatrix]:
    """[Q_0, Q_1, ..., Q_n] lifting psi0 along D for the element g."""
    ginv = inverse_action(g)
    Q = psi0
    out = [Q]
    for i, Di in enumerate(D.differentials, start=1):
        C = act_on_matrix(ginv, Di)
        try:
            Q = factor(compose(Q, Di), C, pivot)
        except NoSolution:
            raise NoSolution(
                f"no lift in homological degree {i} for class {class_name or '?'}: "
                "inputs not equivariant or not a resolution",
                homological_degree=i, class_name=class_name) from None
        out.append(Q)
    return out


def betti_characters(D: FreeComplex, P: Sequence[GradedMatrix], G: GroupData,
                     pivot: str = "first", check: bool = False) -> BettiCharacterTable:
    """Betti characters from a minimal resolution D and psi_0 matrices P.

    P[k] is the matrix of psi_0 for the k-th class of G. With `check`, the
    twisted complexes g^-1 D are verified to be minimal complexes and every
    lift is checked to commute with the differentials.
    """
    report = verify_complex(D)
    if not report.ok:
        raise ComplexError("betti_characters needs a minimal graded complex: " + "; ".join(report.failures()))
    problems = validate_psi0(P, D.modules[0], G)
    if problems:
        raise ComplexError("bad psi0: " + "; ".join(problems))
    n = len(G.classes)
    acc: dict = {}
    Q = list(P)
    for k in range(n):
        _record(acc, 0, Q[k], k, n)
    inverses = [inverse_action(c.representative) for c in G.classes]
    lifts = [[q] for q in Q]
    for i, Di in enumerate(D.differentials, start=1):
        for k, cls in enumerate(G.classes):
            C = act_on_matrix(inverses[k], Di)
            try:
                Q[k] = factor(compose(Q[k], Di), C, pivot)
            except NoSolution:
                raise NoSolution(
                    f"no lift in homological degree {i} for class {cls.name}: "
                    "inputs not equivariant or not a resolution",
                    homological_degree=i, class_name=cls.name) from None
            lifts[k].append(Q[k])
            _record(acc, i, Q[k], k, n)
    if check:
        for k, cls in enumerate(G.classes):
            _check_lift(D, lifts[k], cls)
    return _finish(acc, G.names)


def _check_lift(D: FreeComplex, lifts, cls):
    ginv = inverse_action(cls.representative)
    twisted = [act_on_matrix(ginv, Di) for Di in D.differentials]
    Dg = FreeComplex(D.ring, D.modules, tuple(twisted))
    rep = verify_complex(Dg)
    if not rep.ok:
        raise AssertionError(f"twisted complex for {cls.name} fails: {rep.failures()}")
    for i, (Di, Ci) in enumerate(zip(D.differentials, twisted), start=1):
        if compose(Ci, lifts[i]) != compose(lifts[i - 1], Di):
            raise AssertionError(f"lift for {cls.name} does not commute in degree {i}")


def betti_characters_from(D: FreeComplex, start: int, psi_start: Sequence[GradedMatrix], G: GroupData,
                          pivot: str = "first") -> BettiCharacterTable:
    """Same as `betti_characters` but with the action known in degree `start`.

    Upward, Q_i = factor(Q_(i-1) D_i, g^-1 D_i). Downward, Q_(i-1) solves
    Q_(i-1) D_i = (g^-1 D_i) Q_i, a factorization on the right. Downward
    steps assume the supplied matrices are the genuine action: a lift with
    Q_i only homotopic to psi_i need not descend.
    """
    if not 0 <= start <= D.length:
        raise ValueError(f"start degree {start} outside 0..{D.length}")
    report = verify_complex(D)
    if not report.ok:
        raise ComplexError("betti_characters_from needs a minimal graded complex: " + "; ".join(report.failures()))
    n = len(G.classes)
    if len(psi_start) != n:
        raise ComplexError(f"{len(psi_start)} starting matrices for {n} classes")
    acc: dict = {}
    for k, cls in enumerate(G.classes):
        ginv = inverse_action(cls.representative)
        Fs = D.modules[start]
        if psi_start[k].domain != Fs or psi_start[k].codomain != Fs:
            raise ComplexError(f"starting matrix for {cls.name} is not an endomorphism of F_{start}")
        _record(acc, start, psi_start[k], k, n)
        Q = psi_start[k]
        for i in range(start + 1, D.length + 1):
            Di = D.d(i)
            try:
                Q = factor(compose(Q, Di), act_on_matrix(ginv, Di), pivot)
            except NoSolution:
                raise NoSolution(f"no lift in homological degree {i} for class {cls.name}",
                                 homological_degree=i, class_name=cls.name) from None
            _record(acc, i, Q, k, n)
        Q = psi_start[k]
        for i in range(start, 0, -1):
            Di = D.d(i)
            try:
                Q = factor_right(compose(act_on_matrix(ginv, Di), Q), Di, pivot)
            except NoSolution:
                raise NoSolution(f"no descent to homological degree {i - 1} for class {cls.name}",
                                 homological_degree=i - 1, class_name=cls.name) from None
            _record(acc, i - 1, Q, k, n)
    return _finish(acc, G.names)


def standard_monomials(generators: Sequence[Monomial], j: Degree, R: GradedRing) -> list[Monomial]:
    """Monomials of degree j divisible by no generator."""
    gens = [tuple(m) for m in generators]
    return [m for m in monomials_of_degree(parse_degree(j), R)
            if not any(monomial_divides(g, m) for g in gens)]


def graded_component_character(generators: Sequence[Monomial], j, G: GroupData, R: GradedRing) -> list[Fraction]:
    """Character of G on (R/I)_j for a monomial ideal I and monomial actions.

    The standard monomials of degree j are a basis of (R/I)_j, and a monomial
    action sends each of them to a scalar times a monomial, so the trace is
    the sum of scalars over the basis elements that come back to themselves.
    Images that land in I vanish in the quotient and contribute nothing.
    """
    basis = standard_monomials(generators, j, R)
    out = []
    for cls in G.classes:
        g = cls.representative
        if not g.is_monomial():
            raise UnsupportedAction(f"class {cls.name}: graded components need a monomial action")
        total = Fraction(0)
        for b in basis:
            c, image = g.apply_monomial(b)
            if image == b:
                total += c
        out.append(total)
    return out
