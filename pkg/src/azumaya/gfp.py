"""Dense linear algebra over the prime field GF(p).

Matrices are ``numpy.int64`` arrays with entries reduced to ``0 .. p-1``.
Vectors are rows unless a function says otherwise; subspaces are stored as
a matrix whose rows form a basis.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np


def mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over GF(p) and its pivot columns."""
    r = mod(a, p).copy()
    if r.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(factors[hit], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x == 0}`` over GF(p).

    The basis is the canonical one read off the reduced echelon form, so the
    output is deterministic for a given input.
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def row_basis(a, p: int) -> np.ndarray:
    """Canonical basis (reduced echelon rows) of the row space of ``a``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[-1] if a.ndim == 2 else 0), dtype=np.int64)
    r, pivots = rref(a, p)
    return r[: len(pivots)]


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x == b`` over GF(p), or ``None``."""
    a = mod(a, p)
    b = mod(b, p).reshape(-1, 1)
    n = a.shape[1]
    r, pivots = rref(np.hstack([a, b]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n]
    return x


def inverse(a, p: int) -> np.ndarray | None:
    """Inverse of a square matrix over GF(p), or ``None`` when singular."""
    a = mod(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    r, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:, n:]


def is_invertible(a, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def same_span(a, b, p: int) -> bool:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ra, rb = rank(a, p), rank(b, p)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack([a, b]), p) == ra


def contains(big, small, p: int) -> bool:
    """Whether the row space of ``small`` lies inside the row space of ``big``."""
    big = np.asarray(big, dtype=np.int64)
    small = np.asarray(small, dtype=np.int64)
    if small.size == 0 or rank(small, p) == 0:
        return True
    if big.size == 0:
        return False
    return rank(np.vstack([big, small]), p) == rank(big, p)


def intersect(a, b, p: int) -> np.ndarray:
    """Basis of the intersection of two row spaces."""
    a = row_basis(a, p)
    b = row_basis(b, p)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, max(a.shape[1], b.shape[1])), dtype=np.int64)
    # x a = y b  <=>  [x | y] in the left kernel of [a ; -b]
    stacked = np.vstack([a, (-b) % p])
    kernel = nullspace(stacked.T, p)
    if kernel.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return row_basis(kernel[:, : a.shape[0]] @ a % p, p)


def span_elements(basis, p: int) -> Iterator[np.ndarray]:
    """Every vector in the span of ``basis``, in lexicographic coefficient order."""
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    for coeffs in itertools.product(range(p), repeat=k):
        yield np.asarray(coeffs, dtype=np.int64) @ basis % p if k else np.zeros(basis.shape[1], dtype=np.int64)


def all_vectors(n: int, p: int) -> np.ndarray:
    """All ``p**n`` vectors of length ``n`` as rows, in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def matrix_power(a, e: int, p: int) -> np.ndarray:
    a = mod(a, p)
    result = np.eye(a.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            result = result @ a % p
        a = a @ a % p
        e >>= 1
    return result
