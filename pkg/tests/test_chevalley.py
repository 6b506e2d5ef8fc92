import numpy as np
import pytest

from liedense import roots as R
from liedense.chevalley import chevalley_basis
from liedense.errors import AlgebraMismatch, NotARoot

JACOBI_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "F4"]


def dense_ad(g, i):
    m = np.zeros((g.dim, g.dim), dtype=object)
    for j, col in enumerate(g.ad_columns[i]):
        for k, c in col.items():
            m[k, j] = c
    return m


def test_a1_relations():
    g = chevalley_basis("A1")
    assert g.labels == ["E1", "F1", "H1"]
    E, F, H = (g.basis(x) for x in ("E1", "F1", "H1"))
    assert g.bracket(H, E) == 2 * E
    assert g.bracket(H, F) == -2 * F
    assert g.bracket(E, F) == H


@pytest.mark.parametrize("name", JACOBI_TYPES)
def test_jacobi_exhaustive(name):
    assert chevalley_basis(name).jacobi_failures(limit=1) == []


@pytest.mark.parametrize("name", JACOBI_TYPES + ["C4", "E6"])
def test_sl2_triples_and_antisymmetry(name):
    g = chevalley_basis(name)
    for a in g.pos:
        t = g.sl2_triple(a)
        assert t.holds()
        assert g.bracket(g.E(a), g.F(a)) == g.H(a)
    for (i, j), v in g.table.items():
        assert g.table[(j, i)] == {k: -c for k, c in v.items()}


@pytest.mark.parametrize("name", ["A2", "B3", "C3", "G2", "F4"])
def test_structure_constant_magnitudes(name):
    # |N_{a,b}| = p + 1 with p the largest k such that b - k a is a root
    g = chevalley_basis(name)
    roots = {a for a in g.pos} | {tuple(-x for x in a) for a in g.pos}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s not in roots:
                assert g.N(a, b) == 0
                continue
            p, cur = 0, tuple(y - x for x, y in zip(a, b))
            while cur in roots:
                p += 1
                cur = tuple(y - x for x, y in zip(a, cur))
            assert abs(g.N(a, b)) == p + 1


def test_carter_sign_identities():
    g = chevalley_basis("G2")
    roots = list(g.pos) + [tuple(-x for x in a) for a in g.pos]
    for a in roots:
        for b in roots:
            neg = lambda r: tuple(-x for x in r)
            assert g.N(neg(a), neg(b)) == -g.N(a, b)
            assert g.N(b, a) == -g.N(a, b)


def test_a2_and_g2_examples():
    a2 = chevalley_basis("A2")
    assert abs(a2.N((1, 0), (0, 1))) == 1
    g2 = chevalley_basis("G2")
    assert max(abs(v) for v in g2._N.values()) == 3


def test_bracket_examples():
    g = chevalley_basis("A2")
    x = g.E((1, 1)) + 3 * g.H((0, 1))
    assert g.bracket(x, x).is_zero()
    a = (1, 0)
    assert g.bracket(g.H(a), g.F(a)) == -2 * g.F(a)
    assert g.bracket(g.E((1, 0)), g.F((0, 1))).is_zero()
    with pytest.raises(AlgebraMismatch):
        g.bracket(g.E(a), chevalley_basis("A1").E((1,)))
    with pytest.raises(NotARoot):
        g.sl2_triple((1, -1))


def test_killing_form_values():
    a1 = chevalley_basis("A1")
    H = a1.basis("H1")
    assert a1.killing_form(H, H) == 8
    g = chevalley_basis("A2")
    assert g.killing_form(g.H((1, 0)), g.E((0, 1))) == 0
    with pytest.raises(AlgebraMismatch):
        g.killing_form(H, H)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_killing_form_matches_dense_trace(name):
    g = chevalley_basis(name)
    ads = [dense_ad(g, i) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(g.dim):
            assert g.killing_matrix[i][j] == np.trace(ads[i].dot(ads[j]))


def test_a_type_killing_is_2n_trace():
    # on sl(n): B(x, y) = 2n tr(xy); for H_i = e_ii - e_{i+1,i+1} the traces are 2 and -1
    n = 4
    g = chevalley_basis(f"A{n - 1}")
    for i in range(1, n):
        for j in range(1, n):
            tr = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            hi, hj = g.basis(f"H{i}"), g.basis(f"H{j}")
            assert g.killing_form(hi, hj) == 2 * n * tr


def test_killing_pairing_consistency_a2():
    g = chevalley_basis("A2")
    for a in g.pos:
        for b in g.pos:
            ha, hb = g.H(a), g.H(b)
            # alpha(H_beta) = 2 B(H_a, H_b) / B(H_a, H_a) after identifying roots with coroots
            lhs = g.pairing(a, b)
            rhs = 2 * g.killing_form(ha, hb) / g.killing_form(hb, hb)
            assert lhs == rhs


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_killing_invariance(name):
    g = chevalley_basis(name)
    km = g.killing_matrix
    for x in range(g.dim):
        for y in range(g.dim):
            for z in range(g.dim):
                xy = g.table.get((x, y), {})
                xz = g.table.get((x, z), {})
                s = sum(c * km[k][z] for k, c in xy.items()) + sum(c * km[y][k] for k, c in xz.items())
                assert s == 0


def test_export_table_round_trip():
    g = chevalley_basis("B2")
    rebuilt = {(i, j): {k: c for k, c in v} for i, j, v in g.export_table()}
    assert rebuilt == g.table
    assert g.to_json()["dim"] == 10


def test_cached_and_parsed():
    assert chevalley_basis("G2") is chevalley_basis(R.build("G2"))
