import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wittquiver import rep
from wittquiver.ext1 import (
    SizeCapExceeded, coboundary, cocycle_system, extension_module, ext1, hom_dim, hom_space,
    is_isomorphic, verify_cocycle,
)
from wittquiver.witt import representative


def test_small_values():
    p = 5
    L = [rep.simple_restricted(p, lam) for lam in range(p)]
    assert ext1(L[0], L[4]).dim == 2
    assert ext1(L[4], L[0]).dim == 2
    assert ext1(L[1], L[3]).dim == 1
    assert ext1(L[2], L[2]).dim == 0


@pytest.mark.parametrize("p", [5, 7])
def test_weight_reduction_agrees_with_full_system(p):
    Z = [rep.verma(p, lam) for lam in range(p)]
    for mu in range(p):
        for lam in range(p):
            a = ext1(Z[mu], Z[lam])
            b = ext1(Z[mu], Z[lam], reduce=False)
            assert a.reduced and not b.reduced
            assert a.dim == b.dim
            assert a.unknowns < b.unknowns


def test_reduction_on_extension_field():
    p = 5
    S, T = rep.simple_height1(p, 0), rep.simple_height1(p, 2)
    assert ext1(S, T).dim == ext1(S, T, reduce=False).dim == 1


def test_result_bookkeeping():
    Z = rep.verma(5, 2)
    res = ext1(Z, Z)
    assert res.hom_dim == 1
    assert res.dim == res.cocycle_dim - res.coboundary_dim


def test_size_cap():
    Z = rep.verma(7, 1)
    with pytest.raises(SizeCapExceeded):
        cocycle_system(Z, Z, reduce=False, cap=10)
    with pytest.raises(SizeCapExceeded):
        ext1(Z, Z, cap=10)


def test_mismatched_pair_rejected():
    with pytest.raises(ValueError):
        ext1(rep.verma(5, 1), rep.verma(7, 1))
    with pytest.raises(ValueError):
        ext1(rep.verma(5, 1), rep.verma(5, 1).restrict(0))


def test_hom_and_isomorphism():
    p = 7
    Z = rep.verma(p, 3)
    assert hom_space(Z, Z).dim == 1
    assert hom_dim(Z, Z) == 1
    assert hom_dim(rep.verma(p, 0), rep.simple_restricted(p, p - 1)) == 0
    assert is_isomorphic(rep.dual(rep.simple_restricted(p, 2)), rep.simple_restricted(p, p - 3))
    assert not is_isomorphic(rep.simple_restricted(p, 2), rep.simple_restricted(p, 3))


def test_hom_dim_on_non_diagonal_modules():
    p = 5
    M = rep.simple_height0(p, 1)
    assert hom_dim(M, M) == hom_space(M, M).dim == 1


def test_class_representatives_are_cocycles():
    p = 5
    S, T = rep.simple_restricted(p, 0), rep.simple_restricted(p, 4)
    res = ext1(S, T, classes=True)
    assert res.classes.shape[0] == 2
    for d in res.classes:
        E = extension_module(S, T, d)
        assert E.dim == S.dim + T.dim and rep.validate(E)
        assert verify_cocycle(d, S, T, trials=50, rng=np.random.default_rng(1))


def test_coboundary_gives_split_extension():
    p = 5
    S, T = rep.verma(p, 1), rep.verma(p, 3)
    m = np.random.default_rng(3).integers(0, p, size=(T.dim, S.dim))
    d = coboundary(S, T, m)
    assert verify_cocycle(d, S, T, trials=30)


def test_corrupted_cocycle_detected():
    p = 5
    S, T = rep.simple_restricted(p, 0), rep.simple_restricted(p, 4)
    d = ext1(S, T, classes=True).classes[0].copy()
    d[1] = (d[1] + 1) % p
    assert not verify_cocycle(d, S, T, trials=50)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_duality_random_pairs(mu, lam):
    p = 5
    L = rep.simple_restricted
    assert ext1(L(p, mu), L(p, lam)).dim == ext1(rep.dual(L(p, lam)), rep.dual(L(p, mu))).dim


def test_height_zero_loop_on_trivial_weight():
    p = 7
    L0 = rep.simple_height0(p, 0)
    assert L0.chi == representative(p, 0)
    assert ext1(L0, L0).dim == 1
