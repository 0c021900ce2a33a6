import itertools

import pytest

from azumaya.errors import NormNotOneError, NotApplicableError, NotAssociativeError, NotInSubringError
from azumaya.galois import (
    certify_galois,
    coboundary,
    g_t_fixed_subalgebra,
    galois_data,
    hilbert90_solve,
    norm,
    norm_one_group,
    separable_idempotent_check,
    verify_witness,
)
from azumaya.petit import make_cyclic
from azumaya.rings import RingTower, cyclic_shift, frobenius, identity, matrix_ring, prime_field, split_ring
from azumaya.skewpoly import SkewPolyRing

from builders import ONE4, W, cyclic, field, mat2_gf4


def data_for(p, n, e=1):
    F = field(p, n)
    return galois_data(RingTower(F, frobenius(F, e)))


# -- norm ------------------------------------------------------------------------


def test_norm_examples():
    data = data_for(2, 2)
    F = data.tower.D
    w = F.elem(W)
    assert norm(w, data) == w * w * w == F.one
    assert norm(F.one, data) == F.one
    assert sum(1 for k in F.units() if norm(k, data) == F.one) == 3


@pytest.mark.parametrize("p,n,size", [(2, 2, 3), (2, 3, 7), (3, 2, 4)])
def test_norm_one_group_sizes(p, n, size):
    data = data_for(p, n)
    group = norm_one_group(data)
    assert len(group) == size == (p**n - 1) // (p - 1)
    members = set(group)
    assert all(a * b in members and a.inverse() in members for a in group for b in group)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_norm_properties(p, n):
    data = data_for(p, n)
    F = data.tower.D
    units = F.units()
    for a, b in itertools.product(units, repeat=2):
        assert norm(a * b, data) == norm(a, data) * norm(b, data)
    for k in units:
        assert norm(data.sigma(k), data) == norm(k, data)
        assert norm(coboundary(k, data), data) == F.one


def test_norm_requires_element_of_C():
    F = field(2, 2)
    M = matrix_ring(F, 2)
    from azumaya.rings import matrix_automorphism

    data = galois_data(RingTower(M, matrix_automorphism(M, frobenius(F))))
    with pytest.raises(NotInSubringError):
        norm(M.elem((0, 0, 1, 0, 0, 0, 0, 0)), data)


# -- Hilbert 90 ------------------------------------------------------------------


def test_hilbert90_omega():
    data = data_for(2, 2)
    F = data.tower.D
    w = F.elem(W)
    c = hilbert90_solve(w, data)
    assert c.inverse() * data.sigma(c) == w
    # the worked value c = w also solves it
    assert coboundary(w, data) == w


def test_hilbert90_trivial():
    data = data_for(2, 3)
    c = hilbert90_solve(data.tower.D.one, data)
    assert coboundary(c, data) == data.tower.D.one


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_hilbert90_every_norm_one(p, n):
    data = data_for(p, n)
    for k in norm_one_group(data):
        c = hilbert90_solve(k, data)
        assert c is not None and coboundary(c, data) == k


def test_hilbert90_rejects_norm_not_one():
    data = data_for(3, 2)
    F = data.tower.D
    k = next(k for k in F.units() if norm(k, data) != F.one)
    with pytest.raises(NormNotOneError):
        hilbert90_solve(k, data)


# -- certification ---------------------------------------------------------------


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_certify_fields(p, n):
    data = certify_galois(data_for(p, n))
    assert data.certified and verify_witness(data)


def test_certify_split_ring():
    S = split_ring(prime_field(2), 2)
    data = certify_galois(galois_data(RingTower(S, cyclic_shift(S))))
    assert verify_witness(data)


def test_trivial_group_rejected():
    F = field(2, 2)
    with pytest.raises(ValueError):
        galois_data(RingTower(F, identity(F)))


def test_uncertified_witness_fails_verification():
    assert not verify_witness(data_for(2, 2))


# -- separable idempotent ------------------------------------------------------------


def test_separable_idempotent_gf9():
    v = separable_idempotent_check(cyclic(3, 2, 2, (1, 0)))
    assert v.status == "pass"
    assert v.computed["passing"] == ["t^i(x)t^(m-i), i=0..m-1"]
    printed = [r for name, r in v.computed["candidates"].items() if name.startswith("t^i(x)t^(m-1-i)")]
    assert len(printed) == 2 and not any(r["pass"] for r in printed)


def test_separable_idempotent_char_two_not_applicable():
    with pytest.raises(NotApplicableError):
        separable_idempotent_check(cyclic(2, 2, 2, ONE4))


@pytest.mark.parametrize("power", [0, 21, 42])
def test_separable_idempotent_gf64_over_gf4(power):
    F = field(2, 6)
    x = F.elem((0, 1, 0, 0, 0, 0))
    d = x**power  # x^21 generates GF(4) inside GF(64)
    R = SkewPolyRing(F, frobenius(F, 2))
    A = make_cyclic(R, 3, d)
    assert d in A.tower.S0
    assert separable_idempotent_check(A).status == "pass"


def test_separable_idempotent_needs_d_in_S0():
    with pytest.raises(NotAssociativeError):
        separable_idempotent_check(cyclic(3, 2, 2, (0, 1)))


# -- G_t-fixed subalgebra --------------------------------------------------------------


def test_g_t_fixed_gf4():
    A = cyclic(2, 2, 2, ONE4)
    fx = g_t_fixed_subalgebra(A)
    assert fx.fixed.dim == 2 and A.t in fx.fixed
    assert all(v.ok for v in fx.verdicts)


def test_g_t_fixed_gf9_by_enumeration():
    A = cyclic(3, 2, 2, (1, 0))
    t_inv = A.inverse(A.t)
    brute = [u for u in A.whole.elements() if (A.t * u) * t_inv == u]
    fx = g_t_fixed_subalgebra(A)
    assert A.p ** fx.fixed.dim == len(brute)
    assert all(u in fx.fixed for u in brute)


def test_g_t_fixed_mat2():
    fx = g_t_fixed_subalgebra(mat2_gf4())
    assert fx.fixed.dim == 8 and fx.fixed_center.dim == 2
    assert all(v.ok for v in fx.verdicts)


def test_g_t_fixed_needs_associative():
    with pytest.raises(NotAssociativeError):
        g_t_fixed_subalgebra(cyclic(2, 2, 2, W))
