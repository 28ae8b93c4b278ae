import json
import random
from fractions import Fraction

import pytest

from qrlie.exactlin import SampleConfig, pfaffian, proportional, rank
from qrlie.liealg import (
    ClosureError,
    ConstructionError,
    DomainError,
    algebra_from_json,
    algebra_to_json,
    center,
    direct_sum,
    from_matrices,
    from_structure_constants,
    index,
    index_certified,
    is_unimodular,
    kirillov_form,
    kirillov_symbolic,
    load_algebra,
    psi_polynomial,
    sample_regular_form,
    save_algebra,
    stabilizer,
)
from qrlie.classical import sp_algebra, zoo

CFG = SampleConfig(trials=3, bound=10 ** 6, seed=2)

HEIS_TABLE = {(0, 1): {2: 1}}  # [x, y] = z
SL2_TABLE = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}  # h, e, f


def E(n, i, j):
    M = [[Fraction(0)] * n for _ in range(n)]
    M[i][j] = Fraction(1)
    return M


# -- construction ------------------------------------------------------------

def test_from_structure_constants_heisenberg():
    L = from_structure_constants(HEIS_TABLE, ["x", "y", "z"])
    assert L.dim == 3
    assert L.bracket_basis(0, 1) == {2: 1}
    assert L.bracket_basis(1, 0) == {2: -1}


def test_antisymmetry_error():
    table = {(0, 1): {2: 1}, (1, 0): {2: 1}}
    with pytest.raises(ConstructionError, match="antisymmetry"):
        from_structure_constants(table, ["x", "y", "z"])


def test_sl2_table_valid_and_jacobi_error():
    L = from_structure_constants(SL2_TABLE, ["h", "e", "f"])
    assert L.dim == 3
    bad = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1, 1: 1}}
    with pytest.raises(ConstructionError, match="triple"):
        from_structure_constants(bad, ["h", "e", "f"])


def test_from_matrices_heisenberg():
    L = from_matrices([E(3, 0, 1), E(3, 1, 2), E(3, 0, 2)], ["x", "y", "z"])
    assert L.dim == 3
    assert L.bracket_basis(0, 1) == {2: 1}
    assert center(L).dim == 1


def test_from_matrices_two_dim_nonabelian():
    L = from_matrices([E(2, 0, 0), E(2, 0, 1)])
    assert L.dim == 2
    assert L.bracket_basis(0, 1) == {1: 1}  # [E11, E12] = E12


def test_from_matrices_closure_error():
    with pytest.raises(ClosureError, match=r"\(0,1\)"):
        from_matrices([E(2, 0, 1), E(2, 1, 0)])


def test_from_matrices_independence_error():
    with pytest.raises(ConstructionError):
        from_matrices([E(2, 0, 1), [[0, 2], [0, 0]]])


# -- center ------------------------------------------------------------------

def test_center_examples():
    H = zoo("heisenberg", e=1)
    zc = center(H)
    assert zc.dim == 1
    assert zc.basis[0][2] != 0 and zc.basis[0][0] == zc.basis[0][1] == 0
    sl2 = from_structure_constants(SL2_TABLE, ["h", "e", "f"])
    assert center(sl2).dim == 0
    ab = from_structure_constants({}, ["a", "b", "c", "d"])
    assert center(ab).dim == 4


# -- Kirillov form, index, stabilizers ---------------------------------------

def test_kirillov_form_examples():
    H = zoo("heisenberg", e=1)
    zstar = [Fraction(0), Fraction(0), Fraction(1)]
    assert kirillov_form(H, zstar) == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    assert kirillov_form(H, [0, 0, 0]) == [[0] * 3 for _ in range(3)]
    ab = from_structure_constants({}, ["a", "b"])
    assert kirillov_form(ab, [5, 7]) == [[0, 0], [0, 0]]


def test_index_examples():
    assert index(zoo("heisenberg", e=1), CFG) == 1
    assert index(zoo("borel_sl2"), CFG) == 0
    assert index(sp_algebra(4), CFG) == 2


def test_index_zero_dim():
    L = from_structure_constants({}, [])
    assert L.dim == 0 and index(L, CFG) == 0


def test_stabilizer_examples():
    H = zoo("heisenberg", e=1)
    st = stabilizer(H, [0, 0, 1])
    assert st.dim == 1 and st.contains([0, 0, 1])
    st = stabilizer(H, [0, 0, 0])
    assert st.dim == 3
    b3 = zoo("borel_sl3")
    g = [Fraction(3), Fraction(-1), Fraction(2), Fraction(5), Fraction(7)]
    assert g[4] != 0
    assert stabilizer(b3, g).dim == 1  # orbit dimension 4 in a 5-dim algebra


def test_stabilizer_contains_center_and_closed():
    rng = random.Random(5)
    for name, params in [("heisenberg", {"e": 2}), ("bh5", {}),
                         ("borel_sl3", {}), ("ghat", {})]:
        L = zoo(name, **params)
        zc = center(L)
        for _ in range(5):
            g = [Fraction(rng.randint(-50, 50)) for _ in range(L.dim)]
            st = stabilizer(L, g)  # construction validates closure
            for v in zc.basis:
                assert st.contains(v)


def test_sample_regular_form():
    H = zoo("heisenberg", e=1)
    g, cert = sample_regular_form(H, CFG)
    assert cert.ok and g[2] != 0  # regular iff nonzero on the center
    ab = from_structure_constants({}, ["a", "b"])
    g, cert = sample_regular_form(ab, CFG)
    assert cert.attempts == 1  # every form of an abelian algebra is regular
    sl2 = from_structure_constants(SL2_TABLE, ["h", "e", "f"])
    g, cert = sample_regular_form(sl2, CFG)
    assert stabilizer(sl2, g).dim == 1


def test_regular_stabilizer_abelian():
    for name, params in [("heisenberg", {"e": 2}), ("borel_sl3", {}),
                         ("ghat", {}), ("sp_heisenberg", {"r": 1})]:
        L = zoo(name, **params)
        g, cert = sample_regular_form(L, CFG)
        assert cert.ok
        assert stabilizer(L, g).is_abelian()


# -- unimodularity -----------------------------------------------------------

def test_is_unimodular():
    assert is_unimodular(zoo("heisenberg", e=1))
    assert not is_unimodular(zoo("borel_sl2"))
    sl2 = from_structure_constants(SL2_TABLE, ["h", "e", "f"])
    assert is_unimodular(sl2)


# -- Pfaffian polynomial -----------------------------------------------------

def test_psi_examples():
    from qrlie.exactlin import MPoly
    H = zoo("heisenberg", e=1)
    psi = psi_polynomial(H, CFG)
    assert proportional(psi, MPoly.var(psi.vars, "z"))
    bh = zoo("bh5")
    psi = psi_polynomial(bh, CFG)
    e = MPoly.var(psi.vars, "e")
    x = MPoly.var(psi.vars, "x")
    z = MPoly.var(psi.vars, "z")
    assert proportional(psi, e * e - 2 * x * z)
    f = zoo("f_algebra")
    psi = psi_polynomial(f, CFG)
    e = MPoly.var(psi.vars, "e")
    assert proportional(psi, e * e)


def test_psi_requires_prehomogeneous():
    sl2 = from_structure_constants(SL2_TABLE, ["h", "e", "f"])
    with pytest.raises(DomainError, match="prehomogeneous"):
        psi_polynomial(sl2, CFG)


def test_psi_matches_numeric_pfaffian():
    # evaluation of the symbolic Pfaffian equals the Pfaffian of the
    # numeric restricted Kirillov form, on random points
    rng = random.Random(23)
    from qrlie.exactlin import rref
    for name, params in [("heisenberg", {"e": 1}), ("borel_sl2", {}),
                         ("f_algebra", {}), ("bh5", {})]:
        L = zoo(name, **params)
        psi = psi_polynomial(L, CFG)
        zc = center(L)
        piv = set(rref(zc.basis)[1]) if zc.dim else set()
        compl = [i for i in range(L.dim) if i not in piv]
        for _ in range(50):
            g = [Fraction(rng.randint(-20, 20)) for _ in range(L.dim)]
            B = kirillov_form(L, g)
            sub = [[B[i][j] for j in compl] for i in compl]
            assert psi.evaluate(g) == pfaffian(sub)


# -- structural invariants ---------------------------------------------------

def test_dim_minus_index_even():
    for name, params in [("heisenberg", {"e": 1}), ("heisenberg", {"e": 2}),
                         ("borel_sl2", {}), ("f_algebra", {}), ("bh5", {}),
                         ("borel_sl3", {}), ("ghat", {}),
                         ("sp_heisenberg", {"r": 1}),
                         ("sp_k_heisenberg", {"r": 1})]:
        L = zoo(name, **params)
        assert (L.dim - index(L, CFG)) % 2 == 0


def test_index_additive_on_products():
    pairs = [(zoo("heisenberg", e=1), zoo("borel_sl2")),
             (zoo("bh5"), zoo("f_algebra")),
             (zoo("ghat"), zoo("heisenberg", e=1))]
    for L1, L2 in pairs:
        P = direct_sum(L1, L2)
        assert index(P, CFG) == index(L1, CFG) + index(L2, CFG)
        assert P.realization is not None


# -- JSON interchange --------------------------------------------------------

def test_json_roundtrip(tmp_path):
    L = zoo("bh5")
    doc = algebra_to_json(L)
    assert doc["dim"] == 5
    assert all(isinstance(c, str) for _, _, terms in doc["structure"]
               for _, c in terms)
    L2 = algebra_from_json(doc)
    assert L2.brackets == L.brackets
    assert L2.realization == L.realization

    path = tmp_path / "alg.json"
    save_algebra(L, path)
    L3 = load_algebra(path)
    assert L3.brackets == L.brackets


def test_json_rational_strings(tmp_path):
    table = {(0, 1): {0: Fraction(1, 2)}}
    L = from_structure_constants(table, ["a", "b"])
    doc = algebra_to_json(L)
    assert doc["structure"] == [[0, 1, [[0, "1/2"]]]]
    assert algebra_from_json(doc).bracket_basis(0, 1) == {0: Fraction(1, 2)}


def test_json_validates():
    doc = {"dim": 3, "labels": ["x", "y", "z"],
           "structure": [[0, 1, [[2, "1"]]], [1, 0, [[2, "1"]]]]}
    with pytest.raises(ConstructionError):
        algebra_from_json(doc)
