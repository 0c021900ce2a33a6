"""Cached constructions shared by the test modules."""

from functools import lru_cache
from pathlib import Path

from azumaya.petit import make_cyclic
from azumaya.rings import (
    RingTower,
    frobenius,
    make_extension_field,
    matrix_automorphism,
    matrix_ring,
    prime_field,
    split_ring,
)
from azumaya.skewpoly import SkewPolyRing

MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
}


@lru_cache(maxsize=None)
def field(p, n):
    if n == 1:
        return prime_field(p)
    return make_extension_field(p, MODULI[(p, n)])


def skew_ring(p, n, e=1):
    return _skew_ring(p, n, e)


@lru_cache(maxsize=None)
def _skew_ring(p, n, e):
    F = field(p, n)
    return SkewPolyRing(F, frobenius(F, e))


def cyclic(p, n, m, d, e=1):
    """``(GF(p^n), frob^e, d)`` with ``f = t^m - d``; ``d`` is a coordinate tuple."""
    return _cyclic(p, n, m, tuple(d), e)


@lru_cache(maxsize=None)
def _cyclic(p, n, m, d, e):
    R = skew_ring(p, n, e)
    return make_cyclic(R, m, R.D.elem(d))


@lru_cache(maxsize=None)
def mat2_gf4(d=(1, 0, 0, 0, 0, 0, 1, 0)):
    F = field(2, 2)
    M = matrix_ring(F, 2)
    sigma = matrix_automorphism(M, frobenius(F))
    R = SkewPolyRing(M, sigma)
    return make_cyclic(R, 2, M.elem(d), RingTower(M, sigma))


@lru_cache(maxsize=None)
def split2():
    return split_ring(prime_field(2), 2)


# [[0, 1], [1, 0]] in Mat2(GF(4)): a non-central unit
SWAP = (0, 0, 1, 0, 1, 0, 0, 0)

# frequently used coordinates
ONE4, W, W2 = (1, 0), (0, 1), (1, 1)

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
