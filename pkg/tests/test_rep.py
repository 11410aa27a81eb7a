import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wittquiver import rep
from wittquiver.gf import ArtinSchreierField
from wittquiver.witt import Character, representative, witt


@pytest.mark.parametrize("p", [5, 7, 11])
def test_verma_modules_are_valid(p):
    for lam in range(p):
        assert rep.validate(rep.verma(p, lam))


def test_verma_action_formula():
    p, lam = 7, 3
    Z = rep.verma(p, lam)
    # e_k m_j = (j + k + 1 + (k + 1) lam) m_{j+k}
    for k in range(-1, p - 1):
        A = Z.act(k)
        for j in range(p):
            t = j + k
            if 0 <= t < p:
                assert A[t, j] == (j + k + 1 + (k + 1) * lam) % p
    assert np.array_equal(Z.act(0), np.diag(Z.weights))
    # m_{p-1} is killed by e_1, ..., e_{p-2}
    assert all(not Z.act(k)[:, p - 1].any() for k in range(1, p - 1))


def test_simple_dimensions():
    p = 7
    dims = [rep.simple_restricted(p, lam).dim for lam in range(p)]
    assert dims == [1, 7, 7, 7, 7, 7, 6]


def test_validation_reports_broken_relation():
    Z = rep.verma(5, 1)
    Z.mats = Z.mats.copy()
    Z.mats[3, 0, 0] = 1
    report = rep.validate(Z)
    assert not report
    assert report.first.startswith("bracket relation fails")


def test_json_roundtrip_prime_and_extension():
    Z = rep.verma(5, 2)
    back = rep.Representation.from_json(Z.to_json())
    assert np.array_equal(back.mats, Z.mats) and back.label == "Z2"
    d = Z.to_dict()
    assert d["p"] == 5 and d["dim"] == 5 and set(d["matrices"]) == {str(i) for i in range(-1, 4)}
    L = rep.simple_height1(5, 2)
    back = rep.Representation.from_json(L.to_json())
    assert np.array_equal(back.mats, L.mats)
    assert isinstance(back.field, ArtinSchreierField)


@pytest.mark.parametrize("p", [5, 7])
def test_induction_reproduces_vermas(p):
    zero = Character.zero(p)
    for lam in range(p):
        assert np.array_equal(rep.induce_from_borel(zero, lam).mats, rep.verma(p, lam).mats)


@pytest.mark.parametrize("p", [5, 7])
def test_height_zero_and_one_simples(p):
    for lam in range(p - 1):
        M = rep.simple_height0(p, lam)
        assert M.dim == p and rep.validate(M) and rep.is_simple(M)
    with pytest.raises(ValueError):
        rep.simple_height0(p, p - 1)
    for lam in range(p):
        M = rep.simple_height1(p, lam)
        assert M.dim == p and rep.validate(M)


def test_height_one_module_weights_live_in_extension():
    M = rep.simple_height1(5, 0)
    keys = list(rep.weight_spaces(M))
    assert len(keys) == 5 and all(isinstance(k, tuple) and k[1] == 1 for k in keys)


def test_weight_spaces_of_non_diagonal_module():
    p = 5
    M = rep.simple_height0(p, 2)
    spaces = rep.weight_spaces(M)
    assert sorted(spaces) == list(range(p))
    P, w = rep.weight_basis(M)
    N = M.change_basis(P)
    assert np.array_equal(N.act(0), np.diag(w))


def test_one_dim_rep_checks():
    p = 7
    chi = representative(p, 4)
    psi = rep.one_dim_rep(chi, 2)
    assert int(psi(3)) == 1 and int(psi(5)) == 0
    with pytest.raises(ValueError):
        rep.one_dim_rep(chi, -1)
    with pytest.raises(ValueError):
        rep.one_dim_rep(chi, 0)
    with pytest.raises(ValueError):
        rep.one_dim_rep(Character.zero(p), 0, lam=ArtinSchreierField(p).xi)


def test_induce_argument_checks():
    chi = representative(5, 2)
    psi = rep.one_dim_rep(chi, 1)
    with pytest.raises(ValueError):
        rep.induce(chi, 2, psi, 0)
    with pytest.raises(ValueError):
        rep.induce(Character.zero(5), 1, psi, 0)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_module_action_is_a_lie_map(p, lam, seed):
    M = rep.verma(p, lam % p)
    W = witt(p)
    rng = np.random.default_rng(seed)
    x, y = W.random_element(rng), W.random_element(rng)
    F = M.field
    X, Y = M.act_element(x), M.act_element(y)
    assert np.array_equal(F.sub(F.matmul(X, Y), F.matmul(Y, X)), M.act_element(W.bracket(x, y)))


def test_dual_pairs_simples():
    p = 7
    D = rep.dual(rep.simple_restricted(p, 2))
    assert rep.validate(D)
    assert D.label == "L2*"


def test_spin_and_simplicity():
    p = 5
    Z0 = rep.verma(p, 0)
    assert not rep.is_simple(Z0)
    assert rep.spin(Z0, np.eye(p, dtype=np.int64)[0]) == p - 1
    assert rep.is_simple(rep.verma(p, 2))


def test_build_module_labels():
    assert rep.build_module(5, -1, "Z2").label == "Z2"
    assert rep.build_module(5, -1, "L4").dim == 4
    for bad in ("Q1", "Lx", "Z9"):
        with pytest.raises(ValueError):
            rep.build_module(5, -1, bad)
