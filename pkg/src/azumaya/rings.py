"""Finite coefficient rings, their automorphisms and distinguished subrings.

Every ring is a finite-dimensional associative GF(p)-algebra stored by its
structure constants: ``table[i, j, k]`` is the coefficient of basis element
``b_k`` in ``b_i * b_j``.  Elements are coordinate tuples in that basis, so
subrings, centers and fixed rings are all nullspace computations.

Bases:

* extension field GF(p)[x]/(g): powers ``1, x, ..., x^(n-1)``
* split ring B^m: index ``c * dim(B) + a`` is basis element ``a`` of copy ``c``
* matrix ring Mat_n(B): index ``(r * n + s) * dim(B) + a`` is ``E_rs * b_a``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from . import gfp
from .errors import (
    NotInSubringError,
    NotInvertibleError,
    NotPrimeError,
    NotAnAutomorphismError,
    ReducibleModulusError,
    RingMismatchError,
    RingTooLargeError,
)

DEFAULT_ELEMENT_BOUND = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


# -- dense polynomials over GF(p), coefficients low to high ------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(a, b, p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(q), a


def find_factor(modulus, p: int) -> list[int] | None:
    """A monic proper factor of ``modulus`` over GF(p), or ``None``.

    Exhaustive over monic candidates of degree up to ``deg / 2``.
    """
    n = len(modulus) - 1
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            cand = list(low) + [1]
            _, r = poly_divmod(modulus, cand, p)
            if not r:
                return cand
    return None


# -- rings -------------------------------------------------------------------


class Ring:
    """A finite associative unital GF(p)-algebra given by structure constants."""

    def __init__(self, kind: str, p: int, table, one, name: str, params=None,
                 element_bound: int = DEFAULT_ELEMENT_BOUND):
        if not is_prime(p):
            raise NotPrimeError(f"characteristic {p} is not prime")
        self.kind = kind
        self.p = p
        self.table = gfp.mod(table, p)
        self.table.setflags(write=False)
        self.dim = self.table.shape[0]
        self._one = tuple(int(x) for x in one)
        self.name = name
        self.params = params or {}
        self.element_bound = element_bound

    # identity of a ring is its descriptor
    @property
    def key(self):
        return (self.kind, self.p, self.name)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Ring({self.name})"

    @property
    def size(self) -> int:
        return self.p**self.dim

    def elem(self, coords) -> RingElement:
        if isinstance(coords, RingElement):
            if coords.ring != self:
                raise RingMismatchError(f"{coords!r} is not in {self.name}")
            return coords
        if isinstance(coords, int):
            return self.one * coords
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"{self.name} needs {self.dim} coordinates, got {len(coords)}")
        return RingElement(self, coords)

    @cached_property
    def zero(self) -> RingElement:
        return RingElement(self, (0,) * self.dim)

    @cached_property
    def one(self) -> RingElement:
        return RingElement(self, self._one)

    def basis(self) -> list[RingElement]:
        return [RingElement(self, tuple(int(i == j) for j in range(self.dim))) for i in range(self.dim)]

    def mul_vec(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.table) % self.p

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> a * x`` acting on column coordinate vectors."""
        return np.einsum("i,ijk->kj", np.asarray(a, dtype=np.int64), self.table) % self.p

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> x * a``."""
        return np.einsum("j,ijk->ki", np.asarray(a, dtype=np.int64), self.table) % self.p

    def check_size(self, count: int | None = None):
        count = self.size if count is None else count
        if count > self.element_bound:
            raise RingTooLargeError(
                f"{self.name} would need enumerating {count} elements (bound {self.element_bound})"
            )

    def elements(self):
        self.check_size()
        for v in gfp.all_vectors(self.dim, self.p):
            yield RingElement(self, tuple(int(x) for x in v))

    def units(self) -> list[RingElement]:
        return [a for a in self.elements() if a.is_unit()]

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    @cached_property
    def is_associative(self) -> bool:
        t = self.table
        lhs = np.einsum("ijc,ckl->ijkl", t, t) % self.p
        rhs = np.einsum("jkc,icl->ijkl", t, t) % self.p
        return bool(np.array_equal(lhs, rhs))


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    coords: tuple

    @property
    def vec(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.int64)

    def _wrap(self, v) -> RingElement:
        return RingElement(self.ring, tuple(int(x) for x in v))

    def _other(self, other) -> RingElement:
        if isinstance(other, int):
            return self.ring.one * other
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise RingMismatchError(f"cannot combine elements of {self.ring.name} and {other!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        return self._wrap((self.vec + other.vec) % self.ring.p)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap((-self.vec) % self.ring.p)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.vec * other % self.ring.p)
        other = self._other(other)
        return self._wrap(self.ring.mul_vec(self.vec, other.vec))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return self._other(other) * self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> RingElement:
        """Two-sided inverse; raises :class:`NotInvertibleError` otherwise."""
        ring = self.ring
        x = gfp.solve(ring.left_matrix(self.vec), ring.one.vec, ring.p)
        if x is None:
            raise NotInvertibleError(f"{self} has no right inverse in {ring.name}")
        inv = self._wrap(x)
        if inv * self != ring.one or self * inv != ring.one:
            raise NotInvertibleError(f"{self} is not a two-sided unit in {ring.name}")
        return inv

    def is_unit(self) -> bool:
        try:
            self.inverse()
        except NotInvertibleError:
            return False
        return True

    def __str__(self):
        return format_coords(self.coords)

    def __repr__(self):
        return f"{self.ring.name}{format_coords(self.coords)}"


def format_coords(coords) -> str:
    return "(" + ",".join(str(int(c)) for c in coords) + ")"


def parse_coords(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return tuple(int(x) for x in text.split(",") if x.strip())


# -- ring constructors -------------------------------------------------------


def prime_field(p: int) -> Ring:
    return Ring("prime-field", p, np.ones((1, 1, 1), dtype=np.int64), (1,), f"GF({p})", {})


def make_extension_field(p: int, modulus) -> Ring:
    """GF(p)[x]/(modulus) with the power basis; ``modulus`` is low-to-high and monic.

    >>> make_extension_field(2, [1, 1, 1]).dim
    2
    """
    if not is_prime(p):
        raise NotPrimeError(f"characteristic {p} is not prime")
    modulus = [int(c) % p for c in modulus]
    n = len(modulus) - 1
    if n < 1 or modulus[-1] != 1:
        raise ValueError(f"modulus {modulus} must be monic of degree >= 1")
    factor = find_factor(modulus, p)
    if factor is not None:
        raise ReducibleModulusError(modulus, factor)
    if n == 1:
        return prime_field(p)
    table = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mono = [0] * (i + j) + [1]
            _, r = poly_divmod(mono, modulus, p)
            table[i, j, : len(r)] = r
    one = (1,) + (0,) * (n - 1)
    name = f"GF({p}^{n})[{','.join(map(str, modulus))}]"
    return Ring("extension-field", p, table, one, name, {"modulus": tuple(modulus)})


def split_ring(base: Ring, copies: int) -> Ring:
    """The product ring ``base x ... x base`` with componentwise operations."""
    e = base.dim
    n = copies * e
    table = np.zeros((n, n, n), dtype=np.int64)
    for c in range(copies):
        s = slice(c * e, (c + 1) * e)
        table[s, s, s] = base.table
    one = base._one * copies
    name = f"{base.name}^{copies}"
    return Ring("split-ring", base.p, table, one, name, {"copies": copies, "base": base})


def matrix_ring(base: Ring, size: int) -> Ring:
    e = base.dim
    n = size * size * e
    table = np.zeros((n, n, n), dtype=np.int64)
    for r, s, v in itertools.product(range(size), repeat=3):
        # E_rs E_sv = E_rv
        i0 = (r * size + s) * e
        j0 = (s * size + v) * e
        k0 = (r * size + v) * e
        table[i0 : i0 + e, j0 : j0 + e, k0 : k0 + e] = base.table
    one = []
    for r in range(size):
        for s in range(size):
            one.extend(base._one if r == s else (0,) * e)
    name = f"Mat{size}({base.name})"
    return Ring("matrix-ring", base.p, table, one, name, {"matrix_size": size, "base": base})


def matrix_entries(ring: Ring, x) -> list[list[RingElement]]:
    """Entries of an element of a matrix ring as base-ring elements."""
    base, n = ring.params["base"], ring.params["matrix_size"]
    v = x.coords if isinstance(x, RingElement) else tuple(x)
    e = base.dim
    return [[base.elem(v[(r * n + s) * e : (r * n + s + 1) * e]) for s in range(n)] for r in range(n)]


def from_entries(ring: Ring, rows) -> RingElement:
    base = ring.params["base"]
    coords: list[int] = []
    for row in rows:
        for entry in row:
            coords.extend(base.elem(entry).coords)
    return ring.elem(coords)


# -- automorphisms -----------------------------------------------------------


class RingAutomorphism:
    """An additive, multiplicative bijection of a ring, stored as a GF(p)-matrix.

    ``matrix @ coords`` gives the image coordinates.  Construction verifies
    the homomorphism property on all basis pairs and that the matrix is
    invertible.
    """

    def __init__(self, ring: Ring, matrix, kind: str = "custom", label: str = "", check: bool = True):
        self.ring = ring
        self.matrix = gfp.mod(matrix, ring.p)
        self.matrix.setflags(write=False)
        self.kind = kind
        self.label = label or kind
        if check:
            self._verify()

    def _verify(self):
        ring, m, p = self.ring, self.matrix, self.ring.p
        # phi(b_i b_j) == phi(b_i) phi(b_j) for all basis pairs
        lhs = np.einsum("ijc,kc->ijk", ring.table, m) % p
        rhs = np.einsum("ai,bj,abk->ijk", m, m, ring.table) % p
        if not np.array_equal(lhs, rhs):
            raise NotAnAutomorphismError(f"{self.label} is not multiplicative on {ring.name}")
        if not np.array_equal(m @ ring.one.vec % p, ring.one.vec):
            raise NotAnAutomorphismError(f"{self.label} does not fix 1")
        inv = gfp.inverse(m, p)
        if inv is None:
            raise NotAnAutomorphismError(f"{self.label} is not bijective")
        if not np.array_equal(inv @ m % p, np.eye(ring.dim, dtype=np.int64)):
            raise NotAnAutomorphismError(f"{self.label}: inverse check failed")

    def __call__(self, x):
        x = self.ring.elem(x)
        return x._wrap(self.matrix @ x.vec % self.ring.p)

    def __eq__(self, other):
        return (
            isinstance(other, RingAutomorphism)
            and self.ring == other.ring
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.ring, self.matrix.tobytes()))

    def __repr__(self):
        return f"RingAutomorphism({self.label} on {self.ring.name})"

    def compose(self, other: RingAutomorphism) -> RingAutomorphism:
        """``self o other`` (apply ``other`` first)."""
        if other.ring != self.ring:
            raise RingMismatchError("automorphisms of different rings")
        return RingAutomorphism(
            self.ring, self.matrix @ other.matrix, "composite", f"{self.label}.{other.label}", check=False
        )

    def power(self, e: int) -> RingAutomorphism:
        if e < 0:
            return self.inverse().power(-e)
        if e == 0:
            return identity(self.ring)
        return RingAutomorphism(
            self.ring, gfp.matrix_power(self.matrix, e, self.ring.p), self.kind, f"{self.label}^{e}", check=False
        )

    def inverse(self) -> RingAutomorphism:
        inv = gfp.inverse(self.matrix, self.ring.p)
        return RingAutomorphism(self.ring, inv, self.kind, f"{self.label}^-1", check=False)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.ring.dim, dtype=np.int64)))

    def agrees_on(self, other: RingAutomorphism, basis) -> bool:
        basis = np.asarray(basis, dtype=np.int64)
        p = self.ring.p
        return bool(np.array_equal(basis @ self.matrix.T % p, basis @ other.matrix.T % p))

    @cached_property
    def order(self) -> int | None:
        return self.order_on(np.eye(self.ring.dim, dtype=np.int64))

    def order_on(self, basis, limit: int = 10_000) -> int | None:
        """Smallest ``n >= 1`` with ``phi^n`` fixing every row of ``basis``."""
        basis = gfp.mod(basis, self.ring.p)
        p = self.ring.p
        cur = basis.copy()
        for n in range(1, limit + 1):
            cur = cur @ self.matrix.T % p
            if np.array_equal(cur, basis):
                return n
        return None


def identity(ring: Ring) -> RingAutomorphism:
    return RingAutomorphism(ring, np.eye(ring.dim, dtype=np.int64), "identity", "id", check=False)


def frobenius(field: Ring, e: int = 1) -> RingAutomorphism:
    """``x -> x^(p^e)`` on an extension (or prime) field."""
    q = field.p**e
    cols = [(b**q).vec for b in field.basis()]
    return RingAutomorphism(field, np.array(cols).T, "frobenius", f"frob^{e}")


def cyclic_shift(ring: Ring, power: int = 1, base_aut: RingAutomorphism | None = None) -> RingAutomorphism:
    """On ``B^m``: copy ``c`` of the image is (base_aut of) copy ``c + power``."""
    base, m = ring.params["base"], ring.params["copies"]
    e = base.dim
    bm = base_aut.matrix if base_aut is not None else np.eye(e, dtype=np.int64)
    mat = np.zeros((ring.dim, ring.dim), dtype=np.int64)
    for c in range(m):
        src = (c + power) % m
        mat[c * e : (c + 1) * e, src * e : (src + 1) * e] = bm
    return RingAutomorphism(ring, mat, "cyclic-shift", f"shift^{power}")


def permute_copies(ring: Ring, perm) -> RingAutomorphism:
    """On ``B^m``: copy ``c`` of the image is copy ``perm[c]`` of the input."""
    base, m = ring.params["base"], ring.params["copies"]
    e = base.dim
    mat = np.zeros((ring.dim, ring.dim), dtype=np.int64)
    for c in range(m):
        s = perm[c]
        mat[c * e : (c + 1) * e, s * e : (s + 1) * e] = np.eye(e, dtype=np.int64)
    return RingAutomorphism(ring, mat, "permutation", f"perm{tuple(perm)}")


def matrix_automorphism(ring: Ring, base_aut: RingAutomorphism | None = None, conjugator=None,
                        label: str | None = None) -> RingAutomorphism:
    """``X -> U base_aut(X) U^-1`` on ``Mat_n(B)``; either part may be omitted."""
    base, n = ring.params["base"], ring.params["matrix_size"]
    e = base.dim
    bm = base_aut.matrix if base_aut is not None else np.eye(e, dtype=np.int64)
    entrywise = np.kron(np.eye(n * n, dtype=np.int64), bm)
    mat = entrywise
    kind = "entrywise" if base_aut is not None else "identity"
    if conjugator is not None:
        u = conjugator if isinstance(conjugator, RingElement) else from_entries(ring, conjugator)
        u_inv = u.inverse()
        conj = ring.left_matrix(u.vec) @ ring.right_matrix(u_inv.vec) % ring.p
        mat = conj @ entrywise % ring.p
        kind = "entrywise-conjugation" if base_aut is not None else "conjugation"
    if label is None:
        parts = []
        if conjugator is not None:
            parts.append("conj")
        if base_aut is not None:
            parts.append(base_aut.label)
        label = ".".join(parts) or "id"
    return RingAutomorphism(ring, mat, kind, label)


# -- subrings ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubringBasis:
    """A GF(p)-subspace of a ring, given by basis rows in ambient coordinates."""

    ambient: Ring
    basis: np.ndarray
    is_subring: bool = True
    label: str = ""

    def __post_init__(self):
        b = gfp.row_basis(self.basis, self.ambient.p) if len(self.basis) else np.zeros((0, self.ambient.dim), dtype=np.int64)
        object.__setattr__(self, "basis", b)
        self.basis.setflags(write=False)

    def __len__(self):
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return self.ambient.p ** len(self)

    def __contains__(self, x) -> bool:
        x = self.ambient.elem(x)
        return gfp.contains(self.basis, x.vec.reshape(1, -1), self.ambient.p)

    def require(self, x, what: str = "element"):
        if x not in self:
            raise NotInSubringError(f"{what} {x} is not in {self.label or 'the subring'}")

    def elements(self) -> list[RingElement]:
        self.ambient.check_size(self.size)
        return [self.ambient.elem(v) for v in gfp.span_elements(self.basis, self.ambient.p)]

    def units(self) -> list[RingElement]:
        return [a for a in self.elements() if a.is_unit()]

    def basis_elements(self) -> list[RingElement]:
        return [self.ambient.elem(row) for row in self.basis]

    def same_as(self, other) -> bool:
        other_basis = other.basis if isinstance(other, SubringBasis) else other
        return gfp.same_span(self.basis, other_basis, self.ambient.p)

    def is_closed(self) -> bool:
        """Whether products of basis elements stay in the span."""
        elems = self.basis_elements()
        prods = [(a * b).vec for a in elems for b in elems]
        if not prods:
            return True
        return gfp.contains(self.basis, np.array(prods), self.ambient.p)


def fixed_ring(ring: Ring, sigma: RingAutomorphism) -> SubringBasis:
    """Fix(sigma) as the nullspace of ``sigma - id``."""
    a = (sigma.matrix - np.eye(ring.dim, dtype=np.int64)) % ring.p
    return SubringBasis(ring, gfp.nullspace(a, ring.p), True, f"Fix({sigma.label})")


def center(ring: Ring) -> SubringBasis:
    """Solve ``x b_i = b_i x`` for all basis elements."""
    rows = [(ring.right_matrix(b.vec) - ring.left_matrix(b.vec)) % ring.p for b in ring.basis()]
    return SubringBasis(ring, gfp.nullspace(np.vstack(rows), ring.p), True, f"C({ring.name})")


def intersection(a: SubringBasis, b: SubringBasis, label: str = "") -> SubringBasis:
    return SubringBasis(a.ambient, gfp.intersect(a.basis, b.basis, a.ambient.p), True, label)


def idempotents(ring: Ring) -> list[RingElement]:
    """All idempotents of a commutative ring.

    In characteristic 2 squaring is GF(2)-linear on a commutative ring, so
    ``e^2 = e`` is a linear system; otherwise all elements are enumerated.
    """
    if ring.p == 2 and ring.is_commutative:
        sq = np.array([(b * b).vec for b in ring.basis()]).T
        sol = gfp.nullspace((sq - np.eye(ring.dim, dtype=np.int64)) % 2, 2)
        ring.check_size(2 ** sol.shape[0])
        return [ring.elem(v) for v in gfp.span_elements(sol, 2)]
    return [e for e in ring.elements() if e * e == e]


def strongly_distinct(sigma: RingAutomorphism, tau: RingAutomorphism, ring: Ring) -> bool:
    """True iff no nonzero idempotent ``e`` has ``sigma(x) e == tau(x) e`` for all ``x``.

    Checking basis ``x`` suffices since both sides are additive in ``x``.
    """
    diffs = [sigma(b) - tau(b) for b in ring.basis()]
    for e in idempotents(ring):
        if e.is_zero():
            continue
        if all((d * e).is_zero() for d in diffs):
            return False
    return True


def difference_ideal_is_full(c, sigma: RingAutomorphism, i: int) -> bool:
    """Whether the ideal of ``C`` generated by ``{c - sigma^i(c)}`` is all of ``C``.

    ``c`` is a commutative :class:`Ring` or a commutative :class:`SubringBasis`.
    """
    sub = c if isinstance(c, SubringBasis) else SubringBasis(c, np.eye(c.dim, dtype=np.int64))
    ring = sub.ambient
    s_i = sigma.power(i)
    gens = [x - s_i(x) for x in sub.basis_elements()]
    prods = [(g * y).vec for g in gens for y in sub.basis_elements()]
    if not prods:
        return False
    return gfp.rank(np.array(prods), ring.p) == len(sub)


# -- the ring tower ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RingTower:
    """Coefficient ring ``D`` with automorphism ``sigma`` and its distinguished subrings.

    ``C`` is the center of ``D``, ``fix`` is Fix(sigma) and ``S0 = C n Fix(sigma)``.
    """

    D: Ring
    sigma: RingAutomorphism
    C: SubringBasis = field(init=False)
    fix: SubringBasis = field(init=False)
    S0: SubringBasis = field(init=False)
    s0_configured: bool = False

    def __post_init__(self):
        if self.sigma.ring != self.D:
            raise RingMismatchError("sigma must act on D")
        object.__setattr__(self, "C", center(self.D))
        object.__setattr__(self, "fix", fixed_ring(self.D, self.sigma))
        object.__setattr__(self, "S0", intersection(self.C, self.fix, "S0"))

    @classmethod
    def build(cls, D: Ring, sigma: RingAutomorphism, s0=None) -> RingTower:
        tower = cls(D, sigma)
        if s0 is not None:
            basis = np.array([D.elem(x).vec for x in s0], dtype=np.int64).reshape(-1, D.dim)
            object.__setattr__(tower, "S0", SubringBasis(D, basis, True, "S0 (configured)"))
            object.__setattr__(tower, "s0_configured", True)
        return tower

    @cached_property
    def m_C(self) -> int | None:
        """Order of ``sigma`` restricted to the center."""
        return self.sigma.order_on(self.C.basis)

    def __repr__(self):
        return f"RingTower({self.D.name}, {self.sigma.label})"


def subfield_degrees(field: Ring) -> list[int]:
    n = field.dim
    return [e for e in range(1, n + 1) if n % e == 0]


def frobenius_order(n: int, e: int) -> int:
    return n // gcd(n, e)
