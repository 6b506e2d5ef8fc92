import pytest

from liedense import certify as C
from liedense import modules as M
from liedense import roots as R
from liedense.chevalley import chevalley_basis
from liedense.closure import generated_submodule
from liedense.errors import HypothesisNotMet
from liedense.linalg import Subspace


def seed_is_sound(w, seed):
    for s in seed:
        if s.kind == "cartan":
            assert not w.act_element(s.xi, s.w)
        else:
            (x,) = s.xi
            assert not w.act(x, w.act(x, s.w))


def test_seed_trivial_module_spans_everything():
    g = chevalley_basis("A2")
    w = M.trivial(g)
    seed = C.overshear_seed(w)
    flat = [s.flatten(g.dim) for s in seed]
    span, dims = generated_submodule(flat, M.module_tensor_g(w))
    assert dims[0] == g.dim and span.dim == g.dim


def test_seed_v2_e_kernel():
    w = M.sl2_irrep(2)
    e = w.algebra.root_index((1,))
    seed = [s for s in C.overshear_seed(w) if s.kind == "overshear" and s.xi == {e: 1}]
    assert len(seed) == 2


def test_seed_adjoint_contains_cartan_shears():
    g = chevalley_basis("A2")
    w = M.dual(M.adjoint_rep(g))
    seed = C.overshear_seed(w)
    seed_is_sound(w, seed)
    wg = M.module_tensor_g(w)
    span = Subspace(wg.dim, [s.flatten(g.dim) for s in seed])
    km = g.killing_matrix
    for a in g.pos:
        h_a = {j: sum(c * km[i][j] for i, c in g.H(a).coeffs.items()) for j in range(g.dim)}
        h_a = {j: v for j, v in h_a.items() if v}
        for b in g.pos:
            assert M.pure_tensor(h_a, g.H(b).coeffs, g.dim) in span


@pytest.mark.parametrize("n", range(0, 7))
def test_seed_soundness_sl2(n):
    w = M.sl2_irrep(n)
    seed_is_sound(w, C.overshear_seed(w))


def test_generated_submodule_examples():
    v = M.sl2_irrep(5)
    span, dims = generated_submodule([{j: 1} for j in range(6)], v)
    assert span.dim == 6 and dims == [6, 6]
    span, dims = generated_submodule([{0: 1}], v)
    assert span.dim == 6
    assert dims == sorted(dims) and dims[-1] == dims[-2]
    span, dims = generated_submodule([{}], v)
    assert span.dim == 0


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 10, 12])
def test_sl2_odd_dimension_and_c2_generated(n):
    cert = C.certify(M.sl2_irrep(n))
    assert cert.generated
    assert cert.closure_dims[-1] == cert.target_dim == 3 * (n + 1)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_sl2_even_dimension_outcome_recorded(n):
    cert = C.certify(M.sl2_irrep(n))
    assert cert.verdict in ("generated by overshears", "not generated by the canonical seed")
    assert cert.generated == (cert.closure_dims[-1] == cert.target_dim)


def test_certificate_invariants_and_membership():
    g = chevalley_basis("A2")
    w = M.adjoint_rep(g)
    cert = C.certify(w)
    assert cert.generated and cert.target_dim == 64
    d = cert.closure_dims
    assert all(a < b for a, b in zip(d[:-2], d[1:-1])) and d[-1] == d[-2]
    wg = M.module_tensor_g(w)
    span, _ = generated_submodule([s.flatten(g.dim) for s in C.overshear_seed(w)], wg)
    assert all({j: 1} in span for j in range(wg.dim))
    assert cert.to_json()["verdict"] == "generated by overshears"


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_adjoint_generated(name):
    assert C.certify(M.adjoint_rep(name)).generated


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_adjoint_cases(name):
    rep = C.verify_adjoint_cases(name)
    assert rep["passed"]


def test_adjoint_case_coefficients_a2():
    rep = C.verify_adjoint_cases("A2")
    rows = {(tuple(r["alpha"]), tuple(r["beta"])): r for r in rep["pairs"]}
    assert rows[(1, 0), (0, 1)]["case4"]["c"] in (1, -1)
    assert rows[(1, 0), (0, 1)]["case4"]["alpha_plus_beta_is_root"]
    assert rows[(1, 0), (1, 0)]["case3"]["n"] == 2
    assert rows[(1, 0), (1, 0)]["case2"]["term"] == "h_alpha (x) H_beta"


@pytest.mark.parametrize("n", [6, 8, 10])
def test_expansion_identities(n):
    count = 0
    for k in range(n + 1):
        try:
            r = C.verify_old_sl2(n, k)
        except HypothesisNotMet:
            continue
        count += 1
        assert r["identity1"] and r["identity2"] and r["F_Ej_identity"]
        assert r["independent"] and r["rank"] == 3
        assert r["identity1_F_coefficient"] == -r["j"] * (r["j"] + 1)
        assert not r["printed_sign_holds"]
    assert count == len([k for k in range(2, n) if n != 2 * k])


def test_expansion_identity_example_and_rejections():
    r = C.verify_old_sl2(6, 2)
    assert r["lambda"] == 2 and r["j"] == 2 and r["rank"] == 3
    with pytest.raises(HypothesisNotMet):
        C.verify_old_sl2(4, 2)
    for k in range(3):
        with pytest.raises(HypothesisNotMet):
            C.verify_old_sl2(2, k)


@pytest.mark.parametrize("n", range(1, 7))
def test_odd_weight_bracket_bookkeeping(n):
    r = C.verify_theorem34_cases(n, max_degree=3)
    assert r["all_odd"]
    if n % 2:
        assert r["checked"] > 0
    else:
        assert r["checked"] == 0 and r["nothing_to_prove"] > 0


def test_odd_weight_coefficients_n1():
    r = C.verify_theorem34_cases(1, max_degree=3)
    assert all(c % 2 for c in r["coefficients"]["H"])
    assert all(c % 2 for c in r["coefficients"]["E"])


def test_generation_by_cartan_tensor():
    r = C.verify_lemma_l1(M.sl2_irrep(2))
    assert r["identity_checks"] == 6 and r["generated"]
    r = C.verify_lemma_l1(M.trivial("A2"))
    assert r["generated"] and r["closure_dim"] == 8
    r = C.verify_lemma_l1(M.adjoint_rep("A2"))
    assert r["closure_dim"] == 64


@pytest.mark.parametrize("w", [M.sl2_irrep(2), M.sl2_irrep(4), M.adjoint_rep("B2"),
                               M.adjoint_rep("A2")], ids=["V2", "V4", "B2", "A2"])
def test_even_pairing_weight_spaces_in_closure(w):
    r = C.verify_lemma_l2(w)
    assert r["passed"] and r["weights"]


def test_direct_sum_of_generated_modules_is_generated():
    w = M.direct_sum(M.sl2_irrep(2), M.sl2_irrep(4))
    assert C.certify(w).generated
    a2 = M.adjoint_rep("A2")
    assert C.certify(M.direct_sum(a2, M.trivial(a2.algebra))).generated


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_highest_root_irreps_certified(name):
    rs = R.build(name)
    cert, rep, k = C.certify_irrep(rs, rs.highest_root)
    assert k == 1 and cert.generated
    assert rep.dim == M.weyl_dim(rs, rs.highest_root)
