import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from azumaya.errors import IndexOutOfRangeError, NotAnAutomorphismError, NotInvertibleError, RingMismatchError
from azumaya.rings import frobenius, identity, split_ring, prime_field
from azumaya.skewpoly import NEG_INF, SkewPoly, SkewPolyRing, format_poly, inner_derivation, mod_r, right_divide, skew_mul

from builders import W, field, skew_ring


def polys(R, max_deg, monic_deg=None):
    D = R.D
    coeff = st.lists(st.integers(0, D.p - 1), min_size=D.dim, max_size=D.dim).map(D.elem)
    if monic_deg is not None:
        return st.lists(coeff, min_size=monic_deg, max_size=monic_deg).map(lambda cs: SkewPoly(R, cs + [D.one]))
    return st.lists(coeff, min_size=0, max_size=max_deg + 1).map(lambda cs: SkewPoly(R, cs))


def naive_product(g, h):
    """Oracle for delta = 0: sum a_i sigma^i(b_j) t^(i+j)."""
    R = g.ring
    out = [R.D.zero] * (len(g.coeffs) + len(h.coeffs))
    for i, a in enumerate(g.coeffs):
        s_i = R.sigma.power(i)
        for j, b in enumerate(h.coeffs):
            out[i + j] = out[i + j] + a * s_i(b)
    return SkewPoly(R, out)


@pytest.fixture(scope="module")
def gf9_derivation():
    F = field(3, 2)
    s = frobenius(F)
    return SkewPolyRing(F, s, inner_derivation(s, F.elem((1, 1))))


# -- spec examples -----------------------------------------------------------


def test_t_times_omega():
    R = skew_ring(2, 2)
    w = R.D.elem(W)
    assert R.t * R.const(w) == R.monomial(w * w, 1)


def test_omega_t_squared():
    R = skew_ring(2, 2)
    wt = R.monomial(R.D.elem(W), 1)
    assert wt * wt == R.monomial(R.D.one, 2)


def test_unit_law():
    R = skew_ring(2, 3)
    g = R.parse("(1,1,0) + (0,0,1)*t^2")
    assert g * R.one == g == R.one * g


def test_delta_op_examples(gf9_derivation):
    R = gf9_derivation
    n = R.D.dim
    assert np.array_equal(R.delta_op(0, 0), np.eye(n, dtype=np.int64))
    assert np.array_equal(R.delta_op(1, 0), R.delta)
    assert np.array_equal(R.delta_op(1, 1), R.sigma.matrix)
    expect = (R.delta @ R.sigma.matrix + R.sigma.matrix @ R.delta) % 3
    assert np.array_equal(R.delta_op(2, 1), expect)
    with pytest.raises(IndexOutOfRangeError):
        R.delta_op(2, 3)
    with pytest.raises(IndexOutOfRangeError):
        R.delta_op(2, -1)


def test_delta_op_zero_derivation():
    R = skew_ring(2, 3)
    for k in range(5):
        assert np.array_equal(R.delta_op(k, k), R.sigma.power(k).matrix)


def test_rejects_non_derivation():
    F = field(3, 2)
    bad = np.eye(2, dtype=np.int64)
    with pytest.raises(NotAnAutomorphismError):
        SkewPolyRing(F, frobenius(F), bad)


def test_degree_examples():
    R = skew_ring(2, 2)
    assert R.zero.degree is NEG_INF
    assert R.parse("(0,1)*t + (1,0)*t^3").degree == 3
    assert NEG_INF < 0 and NEG_INF + 5 is NEG_INF


def test_division_examples():
    R = skew_ring(2, 2)
    w = R.D.elem(W)
    f = R.monomial(R.D.one, 2) - R.const(w)
    q, r = right_divide(R.monomial(R.D.one, 2), f)
    assert q == R.one and r == R.const(w)
    g = R.parse("(1,1) + (0,1)*t")
    assert right_divide(g, f) == (R.zero, g)
    assert mod_r(f, f) == R.zero
    assert mod_r(R.monomial(R.D.one, 3), f) == R.monomial(w * w, 1)


def test_division_needs_unit_leading_coefficient():
    S = split_ring(prime_field(2), 2)
    R = SkewPolyRing(S, identity(S))
    f = R.poly([S.one, S.elem((1, 0))])
    with pytest.raises(NotInvertibleError):
        right_divide(R.monomial(S.one, 3), f)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        skew_mul(skew_ring(2, 2).t, skew_ring(2, 3).t)


def test_parse_format_round_trip():
    R = skew_ring(2, 3)
    text = "(1,0,1) + (0,1,0)*t + (1,1,1)*t^4"
    assert format_poly(R.parse(text)) == text
    assert format_poly(R.zero) == "0"


# -- properties ----------------------------------------------------------------


@settings(max_examples=500)
@given(data=st.data())
def test_ring_axioms_gf8(data):
    R = skew_ring(2, 3)
    g, h, k = (data.draw(polys(R, 4)) for _ in range(3))
    assert (g * h) * k == g * (h * k)
    assert g * (h + k) == g * h + g * k
    assert (g + h) * k == g * k + h * k
    assert (g * h).degree <= g.degree + h.degree


@settings(max_examples=200)
@given(data=st.data())
def test_ring_axioms_with_derivation(gf9_derivation, data):
    R = gf9_derivation
    g, h, k = (data.draw(polys(R, 3)) for _ in range(3))
    assert (g * h) * k == g * (h * k)
    assert g * (h + k) == g * h + g * k


@settings(max_examples=300)
@given(data=st.data())
def test_product_matches_naive_formula(data):
    R = skew_ring(2, 3)
    g, h = data.draw(polys(R, 5)), data.draw(polys(R, 5))
    assert g * h == naive_product(g, h)


@settings(max_examples=200)
@given(data=st.data())
def test_monic_degrees_add(data):
    R = skew_ring(2, 3)
    dg, dh = data.draw(st.integers(0, 5)), data.draw(st.integers(0, 5))
    g, h = data.draw(polys(R, 0, dg)), data.draw(polys(R, 0, dh))
    assert (g * h).degree == dg + dh


@settings(max_examples=1000)
@given(data=st.data())
def test_division_soundness_and_uniqueness(data):
    R = skew_ring(2, 3)
    f = data.draw(polys(R, 0, 3))
    q0, r0 = data.draw(polys(R, 5)), data.draw(polys(R, 2))
    g = q0 * f + r0
    q, r = right_divide(g, f, checked=False)
    assert q * f + r == g and r.degree < 3
    # any decomposition with deg r < deg f is the one returned
    assert (q, r) == (q0, r0)


@pytest.mark.parametrize("n", range(0, 7))
def test_t_power_commutation(n):
    R = skew_ring(2, 3)
    for b in R.D.basis():
        assert R.monomial(R.D.one, n) * R.const(b) == R.monomial(R.sigma.power(n)(b), n)


def test_delta_expansion_matches_product(gf9_derivation):
    R = gf9_derivation
    elems = list(R.D.elements())
    rng = np.random.default_rng(7)
    for n in range(6):
        for m in range(6):
            a, b = elems[rng.integers(len(elems))], elems[rng.integers(len(elems))]
            assert R.expand_monomials(a, n, b, m) == R.monomial(a, n) * R.monomial(b, m)
