import random

import pytest

from betti_char.freemod import GradedFreeModule, GradedMatrix, compose
from betti_char.resolution import (
    ComplexError,
    FreeComplex,
    complex_from_dict,
    export_complex,
    import_complex,
    minimize,
    taylor_complex,
    verify_complex,
)
from betti_char.ring import GradedRing, degree_of_monomial, monomial_lcm

R4 = GradedRing(("x1", "x2", "x3", "x4"))
R3 = GradedRing(("x1", "x2", "x3"))
R2 = GradedRing(("x1", "x2"))

QUADRICS = [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]
TRIANGLE = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]


def test_taylor_two_variables():
    # by hand: dropping position p of S = (x1, x2) carries sign (-1)^(p+1)
    # and coefficient lcm(S)/lcm(S minus p), so e_12 -> -x2 e_1 + x1 e_2
    C = taylor_complex([(1, 0), (0, 1)], "resolve-ideal", R2)
    assert C.ranks() == (2, 1)
    (d1,) = C.differentials
    assert d1.to_strings() == [["-x2"], ["x1"]]


def test_taylor_single_generator():
    C = taylor_complex([(1, 1, 0, 0)], "resolve-ideal", R4)
    assert C.ranks() == (1,)
    assert C.modules[0].degrees == ((2,),)
    assert C.differentials == ()


def test_taylor_triangle():
    C = taylor_complex(TRIANGLE, "resolve-ideal", R3)
    assert C.ranks() == (3, 3, 1)
    assert verify_complex(C).composition_ok
    # direct expansion: e_{12} -> -x3 e_1 + x2 e_2 for m1 = x1x2, m2 = x1x3
    d1, d2 = C.differentials
    assert [d1.entries[r][0] for r in range(3)] == [R3.parse("-x3"), R3.parse("x2"), R3.zero()]
    assert d2.to_strings() == [["1"], ["-1"], ["1"]]


def test_taylor_degrees_are_lcm_degrees():
    C = taylor_complex(QUADRICS, "resolve-ideal", R4)
    assert C.ranks() == (6, 15, 20, 15, 6, 1)
    from itertools import combinations

    gens = sorted(QUADRICS, key=lambda m: tuple(-e for e in m))
    for i, F in enumerate(C.modules):
        expect = [degree_of_monomial(monomial_lcm([gens[k] for k in S], 4), R4)
                  for S in combinations(range(6), i + 1)]
        assert list(F.degrees) == expect


def test_taylor_quotient_mode():
    C = taylor_complex(TRIANGLE, "resolve-quotient", R3)
    assert C.ranks() == (1, 3, 3, 1)
    assert C.modules[0].degrees == ((0,),)
    assert verify_complex(C).composition_ok


def test_taylor_errors():
    with pytest.raises(ComplexError):
        taylor_complex([], "resolve-ideal", R3)
    with pytest.raises(ComplexError):
        taylor_complex([(1, 0, 0), (1, 0, 0)], "resolve-ideal", R3)


def test_minimize_quadrics():
    M = minimize(taylor_complex(QUADRICS, "resolve-ideal", R4), check=True)
    assert M.ranks() == (6, 8, 3)
    assert [set(F.degrees) for F in M.modules] == [{(2,)}, {(3,)}, {(4,)}]
    assert verify_complex(M).ok


def test_minimize_already_minimal(s4_complex):
    assert minimize(s4_complex) == s4_complex


def test_minimize_full_cancellation():
    F = GradedFreeModule(((0,),))
    D = GradedMatrix.from_strings(R2, F, F, [["1"]])
    M = minimize(FreeComplex.from_differentials([D]))
    assert M.ranks() == (0,)


def test_minimize_rejects_non_complex():
    F = GradedFreeModule(((1,),))
    G = GradedFreeModule(((0,),))
    d1 = GradedMatrix.from_strings(R2, F, G, [["x1"]])
    d2 = GradedMatrix.from_strings(R2, GradedFreeModule(((2,),)), F, [["x2"]])
    with pytest.raises(ComplexError):
        minimize(FreeComplex.from_differentials([d1, d2]))


def test_verify_reports():
    F = GradedFreeModule(((0,),))
    unit = FreeComplex.from_differentials([GradedMatrix.from_strings(R2, F, F, [["1"]])])
    rep = verify_complex(unit)
    assert rep.minimal == [False] and rep.composition_ok
    F1 = GradedFreeModule(((1,),))
    d1 = GradedMatrix.from_strings(R2, F1, F, [["x1"]])
    d2 = GradedMatrix.from_strings(R2, GradedFreeModule(((2,),)), F1, [["x2"]])
    rep = verify_complex(FreeComplex.from_differentials([d1, d2]))
    assert rep.composition_zero == [False]
    assert rep.homogeneous_ok and rep.minimal_ok


def test_verify_s4(s4_complex):
    rep = verify_complex(s4_complex)
    assert rep.ok


def test_import_export_roundtrip(s4_complex):
    text = export_complex(s4_complex)
    again = import_complex(text)
    assert again == s4_complex
    assert export_complex(again) == text
    M = minimize(taylor_complex(TRIANGLE, "resolve-quotient", R3))
    assert import_complex(export_complex(M)) == M


def test_import_rejects_bad_shapes(s4_complex):
    from betti_char.resolution import complex_to_dict

    data = complex_to_dict(s4_complex)
    data["modules"][2] = [[4]] * 4
    with pytest.raises(ComplexError, match="match the degree lists"):
        complex_from_dict(data)
    data = complex_to_dict(s4_complex)
    data["differentials"][0][0][0] = "-x4"
    with pytest.raises(ComplexError, match="d_1 d_2"):
        complex_from_dict(data)
    data = complex_to_dict(s4_complex)
    data["differentials"][0][0][0] = "-x3^2"
    with pytest.raises(ComplexError, match=r"entry \(0, 0\)"):
        complex_from_dict(data)
    with pytest.raises(ComplexError):
        import_complex("{not json")


def random_ideal(rng, nvars, ngens):
    gens = set()
    while len(gens) < ngens:
        m = tuple(rng.randint(0, 2) for _ in range(nvars))
        if any(m):
            gens.add(m)
    return sorted(gens)


def test_minimize_random_invariants():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 4)
        R = GradedRing(tuple(f"x{i + 1}" for i in range(n)))
        gens = random_ideal(rng, n, rng.randint(1, 5))
        mode = rng.choice(["resolve-ideal", "resolve-quotient"])
        T = taylor_complex(gens, mode, R)
        M = minimize(T)
        rep = verify_complex(M)
        assert rep.ok
        assert minimize(M) == M
        assert minimize(T, order="reverse").betti_numbers() == M.betti_numbers()


def test_minimize_triangle():
    T = taylor_complex(TRIANGLE, "resolve-ideal", R3)
    M = minimize(T, check=True)
    assert M.ranks() == (3, 2)
    assert M.modules[1].degrees == ((3,), (3,))
    Q = minimize(taylor_complex(TRIANGLE, "resolve-quotient", R3))
    assert Q.ranks() == (1, 3, 2)
    assert compose(*Q.differentials).is_zero()
