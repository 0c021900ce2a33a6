"""Petit algebras ``S_f = D[t; sigma, delta] / D[t; sigma, delta] f`` and their structure.

An algebra of ``deg f = m`` over ``D`` of GF(p)-dimension ``n`` has the prime
basis ``b_a t^j`` (label ``b{a}t{j}``) at index ``j * n + a``.  Products are
cached as a structure-constant tensor so that nuclei, centers and
centralizers reduce to nullspace problems on basis-indexed constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from . import gfp
from .errors import CenterMismatchError, NotInvertibleError, RingMismatchError
from .rings import RingElement, RingTower, SubringBasis
from .skewpoly import NEG_INF, SkewPoly, SkewPolyRing, format_poly, mod_r

TABLE_CACHE_LIMIT = 2**12


class PetitAlgebra:
    """The quotient ``S_f`` with multiplication ``g o h = g h mod_r f``.

    ``tower`` carries ``C``, ``Fix(sigma)`` and ``S0`` of the coefficient
    ring; it is derived from ``R`` when not supplied.
    """

    def __init__(self, R: SkewPolyRing, f: SkewPoly, tower: RingTower | None = None):
        if f.ring is not R:
            raise RingMismatchError("f must live in R")
        if f.degree is NEG_INF or f.degree < 2:
            raise ValueError(f"deg f must be at least 2, got {f.degree}")
        if not f.lead.is_unit():
            raise NotInvertibleError(f"leading coefficient {f.lead} of f is not a unit")
        self.R = R
        self.f = f
        self.m = f.degree
        self.D = R.D
        self.p = R.D.p
        self.n = R.D.dim
        self.N = self.m * self.n
        self.tower = tower if tower is not None else RingTower(R.D, R.sigma)
        self.d = self._read_d()

    def _read_d(self) -> RingElement | None:
        """``d`` when ``f = t^m - d``, otherwise ``None``."""
        coeffs = self.f.coeffs
        if coeffs[-1] != self.D.one:
            return None
        if any(not c.is_zero() for c in coeffs[1:-1]):
            return None
        return -coeffs[0]

    def __repr__(self):
        return f"PetitAlgebra({self.R!r} / {format_poly(self.f)})"

    # -- coordinates -----------------------------------------------------

    @property
    def labels(self) -> list[str]:
        return [f"b{a}t{j}" for j in range(self.m) for a in range(self.n)]

    def to_vec(self, g: SkewPoly) -> np.ndarray:
        if not g.degree < self.m:
            raise ValueError(f"{format_poly(g)} has degree >= {self.m}")
        v = np.zeros(self.N, dtype=np.int64)
        for j, c in enumerate(g.coeffs):
            v[j * self.n : (j + 1) * self.n] = c.coords
        return v

    def to_poly(self, v) -> SkewPoly:
        v = np.asarray(v, dtype=np.int64) % self.p
        return SkewPoly(self.R, [self.D.elem(v[j * self.n : (j + 1) * self.n]) for j in range(self.m)])

    def element(self, x) -> AlgebraElement:
        """Coerce a polynomial, ring element, coordinate vector or text to an element."""
        if isinstance(x, AlgebraElement):
            return x
        if isinstance(x, str):
            x = self.R.parse(x)
        if isinstance(x, RingElement):
            x = self.R.const(x)
        if isinstance(x, SkewPoly):
            if not x.degree < self.m:
                raise ValueError(f"{format_poly(x)} has degree >= {self.m}")
            return AlgebraElement(self, x)
        return AlgebraElement(self, self.to_poly(x))

    def embed(self, a, j: int = 0) -> AlgebraElement:
        return AlgebraElement(self, self.R.monomial(self.D.elem(a), j))

    @property
    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.R.one)

    @property
    def t(self) -> AlgebraElement:
        return AlgebraElement(self, self.R.t)

    def basis(self) -> list[AlgebraElement]:
        return [self.element(row) for row in np.eye(self.N, dtype=np.int64)]

    # -- multiplication --------------------------------------------------

    def circ(self, g: SkewPoly, h: SkewPoly) -> SkewPoly:
        """The two-case product: plain when degrees stay below ``m``, else reduced."""
        prod = g * h
        if g.degree + h.degree < self.m:
            return prod
        return mod_r(prod, self.f)

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j, k]``: coefficient of basis ``k`` in ``basis_i o basis_j``."""
        if self.N > TABLE_CACHE_LIMIT:
            raise MemoryError(f"dimension {self.N} is above the table cache limit")
        polys = [self.to_poly(row) for row in np.eye(self.N, dtype=np.int64)]
        t = np.zeros((self.N, self.N, self.N), dtype=np.int64)
        for i, g in enumerate(polys):
            for j, h in enumerate(polys):
                t[i, j] = self.to_vec(self.circ(g, h))
        t.setflags(write=False)
        return t

    def mul_vec(self, x, y) -> np.ndarray:
        return np.einsum("a,b,abk->k", x, y, self.table) % self.p

    def left_matrix(self, y) -> np.ndarray:
        """Matrix of ``x -> y o x``."""
        return np.einsum("a,abk->kb", np.asarray(y, dtype=np.int64), self.table) % self.p

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of ``x -> x o y``."""
        return np.einsum("b,abk->ka", np.asarray(y, dtype=np.int64), self.table) % self.p

    def two_case_agrees(self) -> bool:
        """Whether the cached two-case product equals plain "multiply then mod_r f"."""
        polys = [self.to_poly(row) for row in np.eye(self.N, dtype=np.int64)]
        for i, g in enumerate(polys):
            for j, h in enumerate(polys):
                if not np.array_equal(self.to_vec(mod_r(g * h, self.f)), self.table[i, j]):
                    return False
        return True

    def left_inverse(self, x) -> AlgebraElement | None:
        """Some ``y`` with ``y o x = 1``, or ``None``."""
        x = self.element(x)
        sol = gfp.solve(self.right_matrix(x.vec), self.one.vec, self.p)
        return None if sol is None else self.element(sol)

    def inverse(self, x) -> AlgebraElement:
        """Two-sided inverse; raises when ``x`` is not a unit."""
        x = self.element(x)
        y = self.left_inverse(x)
        if y is None or x * y != self.one:
            raise NotInvertibleError(f"{x} is not invertible")
        return y

    def power(self, x, e: int) -> AlgebraElement:
        """Left-normed power ``x o (x o (... o x))``."""
        x = self.element(x)
        out = self.one
        for _ in range(e):
            out = x * out
        return out

    def span(self, vectors, label: str = "") -> Subspace:
        return Subspace(self, np.asarray(vectors, dtype=np.int64).reshape(-1, self.N), label)

    def embed_subring(self, sub: SubringBasis | np.ndarray, degrees=(0,), label: str = "") -> Subspace:
        """Span of ``{a t^j : a in sub, j in degrees}``."""
        basis = sub.basis if isinstance(sub, SubringBasis) else np.asarray(sub)
        rows = []
        for j in degrees:
            for b in basis:
                v = np.zeros(self.N, dtype=np.int64)
                v[j * self.n : (j + 1) * self.n] = b
                rows.append(v)
        return self.span(rows, label)

    @property
    def whole(self) -> Subspace:
        return self.span(np.eye(self.N, dtype=np.int64), "A")


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: PetitAlgebra
    poly: SkewPoly

    @property
    def vec(self) -> np.ndarray:
        return self.algebra.to_vec(self.poly)

    def _other(self, other) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise RingMismatchError("elements of different algebras")
            return other
        return self.algebra.element(other)

    def __add__(self, other):
        return AlgebraElement(self.algebra, self.poly + self._other(other).poly)

    def __sub__(self, other):
        return AlgebraElement(self.algebra, self.poly - self._other(other).poly)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.poly)

    def __mul__(self, other):
        return circ_mul(self, self._other(other))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self):
        return format_poly(self.poly)

    def __repr__(self):
        return f"<{format_poly(self.poly)}>"


@dataclass(frozen=True, eq=False)
class Subspace:
    """A GF(p)-subspace of a Petit algebra, stored as canonical basis rows."""

    algebra: PetitAlgebra
    basis: np.ndarray
    label: str = ""

    def __post_init__(self):
        b = gfp.row_basis(self.basis, self.algebra.p) if self.basis.size else np.zeros((0, self.algebra.N), dtype=np.int64)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def same_as(self, other: Subspace) -> bool:
        return gfp.same_span(self.basis, other.basis, self.algebra.p)

    def contains(self, other) -> bool:
        rows = other.basis if isinstance(other, Subspace) else np.asarray(other).reshape(-1, self.algebra.N)
        return gfp.contains(self.basis, rows, self.algebra.p)

    def __contains__(self, x) -> bool:
        return self.contains(self.algebra.element(x).vec)

    def intersect(self, other: Subspace, label: str = "") -> Subspace:
        return Subspace(self.algebra, gfp.intersect(self.basis, other.basis, self.algebra.p), label)

    def elements(self) -> list[AlgebraElement]:
        return [self.algebra.element(v) for v in gfp.span_elements(self.basis, self.algebra.p)]

    def basis_elements(self) -> list[AlgebraElement]:
        return [self.algebra.element(v) for v in self.basis]

    def is_subalgebra(self) -> bool:
        """Closed under the product (checked on basis pairs)."""
        if self.dim == 0:
            return True
        prods = np.einsum("ia,jb,abk->ijk", self.basis, self.basis, self.algebra.table) % self.algebra.p
        return self.contains(prods.reshape(-1, self.algebra.N))

    def describe(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "basis": [format_poly(self.algebra.to_poly(v)) for v in self.basis],
        }


# -- structure operations ----------------------------------------------------


def make_petit(R: SkewPolyRing, f: SkewPoly, tower: RingTower | None = None) -> PetitAlgebra:
    return PetitAlgebra(R, f, tower)


def make_cyclic(R: SkewPolyRing, m: int, d, tower: RingTower | None = None) -> PetitAlgebra:
    """``S_f`` for ``f = t^m - d``; ``d`` must be a unit of ``D``."""
    d = R.D.elem(d)
    if not d.is_unit():
        raise NotInvertibleError(f"d = {d} must be a unit of {R.D.name}")
    return PetitAlgebra(R, R.monomial(R.D.one, m) - R.const(d), tower)


def circ_mul(g: AlgebraElement, h: AlgebraElement) -> AlgebraElement:
    if g.algebra is not h.algebra:
        raise RingMismatchError("elements of different algebras")
    return AlgebraElement(g.algebra, g.algebra.circ(g.poly, h.poly))


def associator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """``[x, y, z] = (x y) z - x (y z)``."""
    return (x * y) * z - x * (y * z)


def _associator_constraints(A: PetitAlgebra, which: str) -> np.ndarray:
    """Stacked matrices of ``x -> [x, b_i, b_j]`` (resp. middle, right slot)."""
    t = A.table
    if which == "left":
        # (x b_i) b_j - x (b_i b_j)
        ten = np.einsum("aic,cjk->ijka", t, t) - np.einsum("ijc,ack->ijka", t, t)
    elif which == "middle":
        # (b_i x) b_j - b_i (x b_j)
        ten = np.einsum("iac,cjk->ijka", t, t) - np.einsum("ajc,ick->ijka", t, t)
    elif which == "right":
        # (b_i b_j) x - b_i (b_j x)
        ten = np.einsum("ijc,cak->ijka", t, t) - np.einsum("jac,ick->ijka", t, t)
    else:
        raise ValueError(f"unknown nucleus {which!r}")
    return ten.reshape(-1, A.N) % A.p


def nucleus(A: PetitAlgebra, which: str) -> Subspace:
    """Left, middle or right nucleus as a nullspace over all basis pairs."""
    return A.span(gfp.nullspace(_associator_constraints(A, which), A.p), f"Nuc_{which[0]}")


def right_nucleus_by_division(A: PetitAlgebra) -> Subspace:
    """``{g : deg g < m, f g in R f}``, via right division of ``f g`` by ``f``."""
    cols = []
    for b in A.basis():
        cols.append(A.to_vec(mod_r(A.f * b.poly, A.f)))
    return A.span(gfp.nullspace(np.array(cols).T, A.p), "Nuc_r (division)")


def full_nucleus(A: PetitAlgebra) -> Subspace:
    return nucleus(A, "left").intersect(nucleus(A, "middle")).intersect(nucleus(A, "right"), "Nuc")


def commutant(A: PetitAlgebra) -> Subspace:
    """``{x : x o b = b o x}`` for all basis elements ``b``."""
    t = A.table
    ten = (t.transpose(1, 2, 0) - t.transpose(0, 2, 1)).reshape(-1, A.N)  # rows (i,k), cols a
    return A.span(gfp.nullspace(ten % A.p, A.p), "Comm")


def commutant_by_coefficients(A: PetitAlgebra) -> Subspace:
    """``{sum d_i t^i : d_i in Fix(sigma), c d_i = d_i sigma^i(c) for all c in D}``."""
    D, p, n = A.D, A.p, A.n
    eye = np.eye(n, dtype=np.int64)
    rows = []
    for i in range(A.m):
        cons = [(A.R.sigma.matrix - eye) % p]
        for c in D.basis():
            sc = A.R.apply_sigma_power(i, c)
            cons.append((D.left_matrix(c.vec) - D.right_matrix(sc.vec)) % p)
        for sol in gfp.nullspace(np.vstack(cons), p):
            v = np.zeros(A.N, dtype=np.int64)
            v[i * n : (i + 1) * n] = sol
            rows.append(v)
    return A.span(np.array(rows, dtype=np.int64).reshape(-1, A.N), "Comm (coefficients)")


def center_of_algebra(A: PetitAlgebra, check: bool = True) -> Subspace:
    """Commutant intersected with all three nuclei.

    For ``f = t^m - d`` with ``d`` a unit and ``check`` set, the result must
    equal ``S0`` in degree 0; otherwise :class:`CenterMismatchError`.
    """
    cen = commutant(A).intersect(full_nucleus(A), "C(A)")
    if check and A.d is not None and A.d.is_unit():
        expected = A.embed_subring(A.tower.S0, label="S0")
        if not cen.same_as(expected):
            raise CenterMismatchError(cen.describe()["basis"], expected.describe()["basis"])
    return cen


def is_associative(A: PetitAlgebra) -> bool:
    t = A.table
    lhs = np.einsum("ijc,ckl->ijkl", t, t) % A.p
    rhs = np.einsum("jkc,icl->ijkl", t, t) % A.p
    return bool(np.array_equal(lhs, rhs))


def centralizer_in_algebra(A: PetitAlgebra, sub: SubringBasis) -> Subspace:
    """``{x : x o c = c o x for all c in sub}`` with ``sub`` placed in degree 0."""
    mats = []
    for b in sub.basis:
        c = A.embed(b).vec
        mats.append((A.right_matrix(c) - A.left_matrix(c)) % A.p)
    if not mats:
        return A.whole
    return A.span(gfp.nullspace(np.vstack(mats), A.p), f"Cent({sub.label})")


def s_minimal(A: PetitAlgebra) -> tuple[int, int, int]:
    """Smallest ``s >= 1`` with ``sigma^s(d) = d``, and ``m = r s + b``."""
    if A.d is None:
        raise ValueError("s_minimal needs f = t^m - d")
    s = 1
    while A.R.apply_sigma_power(s, A.d) != A.d:
        s += 1
        if s > 10_000:
            raise RuntimeError("sigma orbit of d did not close")
    return s, A.m // s, A.m % s


def is_domain(sub: SubringBasis) -> bool:
    """A finite commutative ring is a domain iff every nonzero element is a unit."""
    return all(x.is_zero() or x.is_unit() for x in sub.elements())


# -- structure report --------------------------------------------------------


@dataclass
class Verdict:
    """Outcome of one theorem check, with both sides kept for debugging."""

    name: str
    status: str  # pass | fail | not-applicable | error
    predicted: Any = None
    computed: Any = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "not-applicable")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "predicted": self.predicted,
            "computed": self.computed,
            "note": self.note,
        }


def verdict(name: str, ok: bool, predicted=None, computed=None, note: str = "") -> Verdict:
    return Verdict(name, "pass" if ok else "fail", predicted, computed, note)


@dataclass
class StructureReport:
    nuc_l: Subspace
    nuc_m: Subspace
    nuc_r: Subspace
    center: Subspace
    commutant: Subspace
    associative: bool
    s_minimal: int | None
    r: int | None
    b: int | None
    verdicts: list[Verdict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "nuc_l": self.nuc_l.describe(),
            "nuc_m": self.nuc_m.describe(),
            "nuc_r": self.nuc_r.describe(),
            "center": self.center.describe(),
            "commutant": self.commutant.describe(),
            "associative": self.associative,
            "s_minimal": self.s_minimal,
            "r": self.r,
            "b": self.b,
            "verdicts": [v.as_dict() for v in self.verdicts],
        }


def structure_report(A: PetitAlgebra) -> StructureReport:
    """Compute every structural invariant and check it against the known theorems."""
    tower = A.tower
    nl, nm, nr = nucleus(A, "left"), nucleus(A, "middle"), nucleus(A, "right")
    comm = commutant(A)
    cen = comm.intersect(nl).intersect(nm).intersect(nr, "C(A)")
    assoc = is_associative(A)
    dims = lambda s: s.dim  # noqa: E731
    out: list[Verdict] = []

    out.append(verdict("two-case-product", A.two_case_agrees(),
                       "g o h agrees with gh mod_r f", "compared on all basis pairs"))

    nr_div = right_nucleus_by_division(A)
    out.append(verdict("right-nucleus-division", nr.same_as(nr_div),
                       {"dim": nr_div.dim}, {"dim": nr.dim}))

    for name, sub in (("Nuc_l", nl), ("Nuc_m", nm), ("Nuc_r", nr), ("center", cen)):
        out.append(verdict(f"subalgebra-closure:{name}", sub.is_subalgebra(), True, sub.is_subalgebra()))

    s = r = b = None
    if A.d is None or not A.d.is_unit():
        out.append(Verdict("center-identification", "not-applicable", note="needs f = t^m - d, d a unit"))
        return StructureReport(nl, nm, nr, cen, comm, assoc, s, r, b, out)

    d = A.d
    s, r, b = s_minimal(A)
    generalized = not A.D.is_commutative
    d_in_S0 = d in tower.S0
    note = ""
    if generalized:
        note = ("printed generalized criterion 'associative iff d in D \\ S0' contradicts the cyclic "
                "criterion; d in S0 is used")
    out.append(verdict("associativity-criterion", assoc == d_in_S0,
                       {"associative": d_in_S0, "rule": "d in S0"}, {"associative": assoc}, note))

    comm_coef = commutant_by_coefficients(A)
    out.append(verdict("commutant-description", comm.same_as(comm_coef),
                       comm_coef.describe(), comm.describe()))

    s0_emb = A.embed_subring(tower.S0, label="S0")
    out.append(verdict("center-identification", cen.same_as(s0_emb), s0_emb.describe(), cen.describe()))

    cent_c = centralizer_in_algebra(A, tower.C)
    D_emb = A.embed_subring(np.eye(A.n, dtype=np.int64), label="D")
    galois_m = tower.m_C == A.m
    if galois_m:
        out.append(verdict("centralizer-of-C", cent_c.same_as(D_emb), {"dim": D_emb.dim}, {"dim": cent_c.dim}))
    else:
        out.append(Verdict("centralizer-of-C", "not-applicable", {"dim": D_emb.dim}, {"dim": cent_c.dim},
                           f"m = {A.m} differs from the order {tower.m_C} of sigma on C"))

    s0_domain = is_domain(tower.S0)
    if assoc:
        out.append(verdict("nuclei-left-middle", nl.dim == nm.dim == A.N, {"dim": A.N}, {"l": nl.dim, "m": nm.dim},
                           "associative: every nucleus is the whole algebra"))
    elif s0_domain:
        ok = nl.same_as(D_emb) and nm.same_as(D_emb)
        out.append(verdict("nuclei-left-middle", ok, {"dim": D_emb.dim}, {"l": nl.dim, "m": nm.dim}))
    else:
        ok = nl.contains(D_emb) and nm.contains(D_emb)
        out.append(verdict("nuclei-left-middle", ok, "D contained", {"l": nl.dim, "m": nm.dim},
                           "S0 not a domain: containment only"))

    if not generalized:
        degrees = range(0, r * s, s)
        predicted = A.embed_subring(np.eye(A.n, dtype=np.int64), degrees, "S + St^s + ...")
        if galois_m and (s0_domain or (s != 1 and _prime(s))):
            out.append(verdict("right-nucleus-structure", nr.same_as(predicted),
                               predicted.describe(), nr.describe()))
        else:
            out.append(verdict("right-nucleus-structure", nr.contains(predicted),
                               predicted.describe(), nr.describe(), "containment only"))
    else:
        top = r * s if b else (r - 1) * s
        degrees = [j for j in range(0, top + 1, s) if j < A.m]
        predicted = A.embed_subring(tower.C, degrees, "C + Ct^s + ...")
        out.append(verdict("right-nucleus-containment", nr.contains(predicted),
                           predicted.describe(), nr.describe(), "containment only; no equality claimed"))

    return StructureReport(nl, nm, nr, cen, comm, assoc, s, r, b, out)


def _prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))
