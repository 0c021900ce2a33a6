import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from azumaya import gfp
from azumaya.errors import CenterMismatchError, NotInvertibleError
from azumaya.petit import (
    associator,
    center_of_algebra,
    centralizer_in_algebra,
    commutant,
    is_associative,
    make_cyclic,
    make_petit,
    nucleus,
    right_nucleus_by_division,
    s_minimal,
    structure_report,
)
from azumaya.rings import RingTower, SubringBasis, frobenius
from azumaya.skewpoly import SkewPolyRing

from builders import ONE4, SWAP, W, cyclic, field, mat2_gf4, skew_ring

GF4_W = lambda: cyclic(2, 2, 2, W)  # noqa: E731
GF4_1 = lambda: cyclic(2, 2, 2, ONE4)  # noqa: E731


def brute_nucleus(A, which):
    """Enumerate every element and test the associator against all basis pairs."""
    B = A.basis()
    out = []
    for x in A.whole.elements():
        if which == "left":
            ok = all(associator(x, y, z).is_zero() for y, z in itertools.product(B, repeat=2))
        elif which == "middle":
            ok = all(associator(y, x, z).is_zero() for y, z in itertools.product(B, repeat=2))
        else:
            ok = all(associator(y, z, x).is_zero() for y, z in itertools.product(B, repeat=2))
        if ok:
            out.append(x)
    return out


def brute_commutant(A):
    B = A.basis()
    return [x for x in A.whole.elements() if all(x * b == b * x for b in B)]


# -- construction --------------------------------------------------------------


def test_dimensions():
    assert GF4_W().N == 4 and not is_associative(GF4_W())
    assert mat2_gf4().N == 16


def test_gf4_one_looks_like_mat2_gf2():
    A = GF4_1()
    assert is_associative(A)
    elems = A.whole.elements()
    units = [x for x in elems if A.left_inverse(x) is not None and x * A.left_inverse(x) == A.one]
    square_zero = [x for x in elems if not x.is_zero() and (x * x).is_zero()]
    assert len(units) == 6 and len(square_zero) == 3
    assert center_of_algebra(A).dim == 1


def test_degree_one_rejected():
    R = skew_ring(2, 2)
    with pytest.raises(ValueError):
        make_petit(R, R.t - R.one)


def test_non_unit_d_rejected():
    R = skew_ring(2, 2)
    with pytest.raises(NotInvertibleError):
        make_cyclic(R, 2, R.D.zero)


def test_circ_examples():
    A = GF4_W()
    w = A.embed(W)
    assert A.t * A.t == w
    wt = A.embed(W, 1)
    assert wt * wt == w
    for g in A.basis():
        assert A.one * g == g == g * A.one


def test_mul_table_entries():
    A = GF4_W()
    w = A.embed(W)
    assert A.t * w == A.embed((1, 1), 1)


# -- associator and nuclei -------------------------------------------------------


def test_associator_examples():
    A = GF4_W()
    assert associator(A.t, A.t, A.t) == A.t
    for x, y in itertools.product(A.basis(), repeat=2):
        for z in (A.embed(ONE4), A.embed(W)):
            assert associator(x, y, z).is_zero()
        assert associator(A.one, x, y).is_zero()


@pytest.mark.parametrize("which", ["left", "middle", "right"])
@pytest.mark.parametrize("build", [GF4_W, GF4_1, lambda: cyclic(3, 2, 2, (0, 1))])
def test_nucleus_matches_enumeration(build, which):
    A = build()
    computed = nucleus(A, which)
    brute = brute_nucleus(A, which)
    assert A.p ** computed.dim == len(brute)
    assert all(x in computed for x in brute)


def test_nuclei_of_gf4_omega():
    A = GF4_W()
    S = A.embed_subring(np.eye(2, dtype=np.int64))
    for which in ("left", "middle", "right"):
        assert nucleus(A, which).same_as(S)


def test_right_nucleus_gf16():
    A = cyclic(2, 4, 4, (0, 1, 1, 0))
    predicted = A.embed_subring(np.eye(4, dtype=np.int64), (0, 2))
    assert nucleus(A, "right").same_as(predicted) and predicted.dim == 8


@pytest.mark.parametrize("build", [GF4_W, GF4_1, lambda: cyclic(2, 4, 4, (0, 1, 1, 0)), lambda: mat2_gf4(SWAP)])
def test_right_nucleus_two_ways(build):
    A = build()
    assert nucleus(A, "right").same_as(right_nucleus_by_division(A))


def test_associative_nuclei_are_everything():
    A = GF4_1()
    for which in ("left", "middle", "right"):
        assert nucleus(A, which).dim == A.N


# -- commutant, center, centralizers ---------------------------------------------


@pytest.mark.parametrize("build", [GF4_W, GF4_1, lambda: cyclic(2, 3, 3, (0, 1, 0))])
def test_commutant_matches_enumeration(build):
    A = build()
    comm = commutant(A)
    brute = brute_commutant(A)
    assert A.p ** comm.dim == len(brute)


def test_center_examples():
    assert center_of_algebra(GF4_W()).same_as(GF4_W().span([[1, 0, 0, 0]]))
    assert center_of_algebra(mat2_gf4()).dim == 1
    assert center_of_algebra(mat2_gf4(SWAP)).dim == 1
    assert center_of_algebra(cyclic(2, 3, 3, (0, 1, 0))).dim == 1


def test_center_mismatch_detected():
    F = field(2, 2)
    s = frobenius(F)
    tower = RingTower.build(F, s, s0=[(1, 0), (0, 1)])
    A = make_cyclic(SkewPolyRing(F, s), 2, F.elem(W), tower)
    with pytest.raises(CenterMismatchError):
        center_of_algebra(A)


def test_centralizer_examples():
    A = mat2_gf4()
    D = A.embed_subring(np.eye(8, dtype=np.int64))
    assert centralizer_in_algebra(A, A.tower.C).same_as(D) and D.dim == 8
    B = GF4_W()
    S = SubringBasis(B.D, np.eye(2, dtype=np.int64))
    assert centralizer_in_algebra(B, S).dim == 2
    prime = SubringBasis(B.D, np.array([[1, 0]]))
    assert centralizer_in_algebra(B, prime).dim == B.N


def test_s_minimal_examples():
    assert s_minimal(GF4_W()) == (2, 1, 0)
    assert s_minimal(cyclic(2, 4, 4, (0, 1, 1, 0))) == (2, 2, 0)
    assert s_minimal(cyclic(2, 3, 3, (1, 0, 0))) == (1, 3, 0)


def test_associativity_criterion():
    assert is_associative(GF4_1()) and not is_associative(GF4_W())
    assert is_associative(mat2_gf4())
    assert not is_associative(mat2_gf4((1, 0, 1, 0, 0, 0, 1, 0)))


# -- properties ------------------------------------------------------------------


@pytest.mark.parametrize("build", [GF4_W, GF4_1, mat2_gf4, lambda: cyclic(3, 2, 2, (0, 1))])
def test_two_case_product_and_bilinearity(build):
    A = build()
    assert A.two_case_agrees()
    rng = np.random.default_rng(3)
    for _ in range(20):
        x, y, z = (rng.integers(0, A.p, A.N) for _ in range(3))
        assert np.array_equal(A.mul_vec(x, (y + z) % A.p), (A.mul_vec(x, y) + A.mul_vec(x, z)) % A.p)
        assert np.array_equal(A.mul_vec((x + y) % A.p, z), (A.mul_vec(x, z) + A.mul_vec(y, z)) % A.p)


@pytest.mark.parametrize("build", [GF4_W, lambda: cyclic(2, 4, 4, (0, 1, 1, 0)), mat2_gf4])
def test_structure_verdicts_pass(build):
    rep = structure_report(build())
    assert all(v.ok for v in rep.verdicts), [v.as_dict() for v in rep.verdicts if not v.ok]


@settings(max_examples=30)
@given(data=st.data())
def test_table_invariant_under_unit_scaling(data):
    R = skew_ring(2, 3)
    A = cyclic(2, 3, 3, (0, 1, 0))
    a = data.draw(st.sampled_from(R.D.units()))
    B = make_petit(R, R.const(a) * A.f)
    assert np.array_equal(A.table, B.table)


def test_subspace_closure():
    A = cyclic(2, 4, 4, (0, 1, 1, 0))
    for which in ("left", "middle", "right"):
        assert nucleus(A, which).is_subalgebra()
    assert gfp.rank(nucleus(A, "right").basis, 2) == 8
