import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrlie.exactlin import (
    CapacityError,
    LinMatrix,
    MPoly,
    SampleConfig,
    det,
    generic_rank,
    generic_rank_exact,
    invert,
    kernel,
    mat_mul,
    mpoly_exact_div,
    pfaffian,
    pfaffian_poly,
    proportional,
    rank,
    solve,
    transpose,
)


def rand_matrix(rng, n, m, lo=-9, hi=9):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(m)]
            for _ in range(n)]


def rand_alternating(rng, n, lo=-9, hi=9):
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = Fraction(rng.randint(lo, hi))
            M[j][i] = -M[i][j]
    return M


# -- rank / kernel -----------------------------------------------------------

def test_rank_examples():
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0] * 4 for _ in range(3)]) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_kernel_examples():
    assert kernel([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    basis = kernel([[0, 0], [0, 0]])
    assert len(basis) == 2 and rank(basis) == 2
    (v,) = kernel([[1, 1], [1, 1]])
    assert v[0] * 1 + v[1] * 1 == 0 and any(v)


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(40):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        M = rand_matrix(rng, n, m)
        assert rank(M) + len(kernel(M)) == m


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=2, max_size=5))
def test_kernel_vectors_annihilate(rows):
    M = [[Fraction(x) for x in row] for row in rows]
    for v in kernel(M):
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in M)


def test_rank_with_fractions():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)]]
    assert rank(M) == 2
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)],
         [Fraction(2), Fraction(4, 3)]]
    assert rank(M) == 2


def test_solve_and_invert():
    A = [[2, 1], [1, 1]]
    x = solve(A, [3, 2])
    assert x == [Fraction(1), Fraction(1)]
    assert solve([[1, 1], [1, 1]], [0, 1]) is None
    Ainv = invert(A)
    assert mat_mul(A, Ainv) == [[1, 0], [0, 1]]
    assert det(A) == 1
    assert det([[0, 1], [1, 0]]) == -1


# -- pfaffian ----------------------------------------------------------------

J2 = [[0, 1], [-1, 0]]


def test_pfaffian_convention():
    assert pfaffian(J2) == 1
    J4 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert pfaffian(J4) == 1
    assert pfaffian([[0, 5], [-5, 0]]) == 5


def test_pfaffian_preconditions():
    with pytest.raises(ValueError):
        pfaffian([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])  # odd size
    with pytest.raises(ValueError):
        pfaffian([[0, 1], [1, 0]])  # not antisymmetric
    with pytest.raises(ValueError):
        pfaffian([[1, 1], [-1, 0]])  # diagonal


def test_pfaffian_squares_to_det():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.choice([2, 4, 6])
        M = rand_alternating(rng, n)
        assert pfaffian(M) ** 2 == det(M)


def test_pfaffian_odd_rank_properties():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.choice([2, 4, 6])
        M = rand_alternating(rng, n)
        r = rank(M)
        assert r % 2 == 0
        assert (pfaffian(M) != 0) == (r == n)


def test_pfaffian_congruence():
    # pfaffian(P^t M P) = det(P) * pfaffian(M)
    rng = random.Random(17)
    for n in (4, 6):
        done = 0
        while done < 10:
            M = rand_alternating(rng, n)
            P = rand_matrix(rng, n, n, -3, 3)
            if det(P) == 0:
                continue
            PtMP = mat_mul(transpose(P), mat_mul(M, P))
            assert pfaffian(PtMP) == det(P) * pfaffian(M)
            done += 1


# -- polynomials -------------------------------------------------------------

def V(names, n):
    return MPoly.var(names, n)


def test_pfaffian_poly_examples():
    xs = ("x",)
    x = V(xs, "x")
    zero = MPoly.zero(xs)
    assert pfaffian_poly([[zero, x], [-x, zero]]) == x

    zs = ("z",)
    z = V(zs, "z")
    z0 = MPoly.zero(zs)
    M = [[z0, z, z0, z0], [-z, z0, z0, z0],
         [z0, z0, z0, z], [z0, z0, -z, z0]]
    assert pfaffian_poly(M) == z * z

    # classical 4x4 identity: pf = x12 x34 - x13 x24 + x14 x23
    names = tuple(f"x{i}{j}" for i in range(1, 5) for j in range(i + 1, 5))
    E = {(i, j): V(names, f"x{i}{j}") for i in range(1, 5)
         for j in range(i + 1, 5)}
    zero = MPoly.zero(names)
    M = [[zero] * 4 for _ in range(4)]
    for (i, j), p in E.items():
        M[i - 1][j - 1] = p
        M[j - 1][i - 1] = -p
    expect = (E[(1, 2)] * E[(3, 4)] - E[(1, 3)] * E[(2, 4)]
              + E[(1, 4)] * E[(2, 3)])
    assert pfaffian_poly(M) == expect


def test_pfaffian_poly_capacity_guard():
    names = ("x",)
    zero = MPoly.zero(names)
    M = [[zero] * 14 for _ in range(14)]
    with pytest.raises(CapacityError):
        pfaffian_poly(M)


def test_mpoly_arithmetic_and_eval():
    names = ("a", "b")
    a, b = V(names, "a"), V(names, "b")
    p = a * a - 2 * b + 3
    assert p.evaluate([2, 5]) == 4 - 10 + 3
    assert (p - p).is_zero()
    assert str(a * b) == "a*b"
    assert proportional(2 * a - 4 * b, a - 2 * b)
    assert not proportional(a, b)
    q = mpoly_exact_div(a * a - b * b, a - b)
    assert q == a + b
    with pytest.raises(ArithmeticError):
        mpoly_exact_div(a, b)


# -- generic rank ------------------------------------------------------------

def lin_matrix(names, entries):
    return LinMatrix(tuple(names), entries)


def test_generic_rank_examples():
    # symbolic Kirillov form of the 3-dim Heisenberg algebra
    names = ("x", "y", "z")
    z = V(names, "z")
    zero = MPoly.zero(names)
    M = lin_matrix(names, [[zero, z, zero], [-z, zero, zero],
                           [zero, zero, zero]])
    cfg = SampleConfig(trials=3, bound=1000, seed=5)
    assert generic_rank(M, cfg) == 2
    assert generic_rank_exact(M) == 2

    Z = lin_matrix(names, [[zero] * 3 for _ in range(3)])
    assert generic_rank(Z, cfg) == 0
    abelian = lin_matrix(("a", "b", "c", "d"),
                         [[MPoly.zero(("a", "b", "c", "d"))] * 4
                          for _ in range(4)])
    assert generic_rank(abelian, cfg) == 0


def test_generic_rank_exact_matches_randomized():
    from qrlie.classical import zoo
    from qrlie.liealg import kirillov_symbolic
    cfg = SampleConfig(trials=3, bound=10 ** 6, seed=3)
    for name, params in [("heisenberg", {"e": 2}), ("borel_sl2", {}),
                         ("f_algebra", {}), ("bh5", {}), ("borel_sl3", {}),
                         ("ghat", {}), ("sp_heisenberg", {"r": 1})]:
        M = kirillov_symbolic(zoo(name, **params))
        assert M.size <= 20
        assert generic_rank(M, cfg) == generic_rank_exact(M)


def test_linmatrix_rejects_non_antisymmetric():
    names = ("x",)
    x = V(names, "x")
    zero = MPoly.zero(names)
    with pytest.raises(ValueError):
        lin_matrix(names, [[zero, x], [x, zero]])
