import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from betti_char.action import act_on_matrix, inverse_action
from betti_char.freemod import GradedFreeModule, GradedMatrix, ShapeError, compose, graded_trace, identity, validate_graded
from betti_char.problem import build_psi0
from betti_char.ring import GradedRing, Polynomial, monomials_of_degree
from betti_char.solve import NoSolution, determinant, factor, factor_right, inverse, rank, solve_sparse

from .conftest import LIFT1_1234

R = GradedRing(("x1", "x2", "x3", "x4"))


def free(*degs):
    return GradedFreeModule(tuple((d,) for d in degs))


def test_solve_sparse_small():
    # x + y = 3, x - y = 1
    assert solve_sparse([({0: 1, 1: 1}, 3), ({0: 1, 1: -1}, 1)], 2) == [2, 1]
    # inconsistent
    assert solve_sparse([({0: 1}, 1), ({0: 2}, 3)], 1) is None
    # underdetermined: free variable is zero, pivot rule decides which
    assert solve_sparse([({0: 1, 1: 1}, 1)], 2, "first") == [1, 0]
    assert solve_sparse([({0: 1, 1: 1}, 1)], 2, "last") == [0, 1]


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=50)
def test_dense_helpers_match_sympy(rows):
    M = sympy.Matrix(rows)
    assert rank(rows) == M.rank()
    if len(rows) == 3:
        assert determinant(rows) == M.det()
        if M.det() != 0:
            inv = inverse(rows)
            assert sympy.Matrix(inv) == M.inv()


def test_factor_s4_step(S4, s4_imported, s4_complex):
    """psi0 d1 = d^g_1 X for g = (1234): X has zero trace, like the reference lift."""
    d1 = s4_complex.differentials[0]
    k = S4.index("(1234)")
    g = S4.classes[k].representative
    P = build_psi0(s4_imported, s4_complex)[k]
    A = compose(P, d1)
    B = act_on_matrix(inverse_action(g), d1)
    X = factor(A, B)
    assert compose(B, X) == A
    assert graded_trace(X, (3,)) == 0
    reference = GradedMatrix.from_constants(R, d1.domain, LIFT1_1234)
    assert compose(B, reference) == A  # the reference lift solves the same equation


def test_factor_identity_and_no_solution():
    A = GradedMatrix.from_strings(R, free(2, 3), free(1, 1), [["x1", "x2^2"], ["0", "x1*x3"]])
    assert factor(A, identity(R, A.codomain)) == A
    with pytest.raises(NoSolution):
        factor(GradedMatrix.from_strings(R, free(1), free(0), [["x1"]]),
               GradedMatrix.from_strings(R, free(1), free(0), [["x2"]]))
    with pytest.raises(ShapeError):
        factor(A, identity(R, free(1)))


def test_factor_right():
    # Y [x1 x2] = [x1*x3 x2*x3] -> Y = [x3]
    B = GradedMatrix.from_strings(R, free(1, 1), free(0), [["x1", "x2"]])
    A = GradedMatrix.from_strings(R, free(1, 1), free(-1), [["x1*x3", "x2*x3"]])
    Y = factor_right(A, B)
    assert compose(Y, B) == A
    assert Y.entries[0][0] == R.parse("x3")


def _random_graded(rng, dom, cod, density=0.6):
    rows = []
    for du in cod:
        row = []
        for dv in dom:
            mons = monomials_of_degree((dv - du,), R)
            terms = {}
            if mons and rng.random() < density:
                for _ in range(rng.randint(1, 2)):
                    terms[rng.choice(mons)] = rng.randint(-2, 2)
            row.append(Polynomial(terms, 4))
        rows.append(row)
    return GradedMatrix(R, free(*dom), free(*cod), rows)


def random_factor_case(rng):
    cod = [rng.randint(0, 1) for _ in range(rng.randint(1, 3))]
    mid = [rng.randint(1, 2) for _ in range(rng.randint(1, 3))]
    dom = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
    B = _random_graded(rng, mid, cod)
    X0 = _random_graded(rng, dom, mid)
    return B, X0


@pytest.mark.parametrize("pivot", ["first", "last"])
def test_factor_roundtrip_random(pivot):
    rng = random.Random(11)
    for _ in range(150):
        B, X0 = random_factor_case(rng)
        A = compose(B, X0)
        X = factor(A, B, pivot)
        assert validate_graded(X) == []
        assert compose(B, X) == A


def test_pivot_rules_agree_on_traces(S4, s4_imported, s4_complex):
    d1 = s4_complex.differentials[0]
    P = build_psi0(s4_imported, s4_complex)
    for k, cls in enumerate(S4.classes):
        A = compose(P[k], d1)
        B = act_on_matrix(inverse_action(cls.representative), d1)
        X1, X2 = factor(A, B, "first"), factor(A, B, "last")
        assert graded_trace(X1, (3,)) == graded_trace(X2, (3,))


def test_solve_sparse_rejects_unknown_rule():
    with pytest.raises(ValueError):
        solve_sparse([], 0, "random")


def test_rational_solutions():
    B = GradedMatrix.from_strings(R, free(1), free(0), [["2*x1"]])
    A = GradedMatrix.from_strings(R, free(2), free(0), [["3*x1^2"]])
    X = factor(A, B)
    assert X.entries[0][0] == R.parse("3/2*x1")
    assert X.entries[0][0].coefficient((1, 0, 0, 0)) == Fraction(3, 2)
