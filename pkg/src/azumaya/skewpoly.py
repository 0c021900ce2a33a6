"""Skew polynomials ``D[t; sigma, delta]`` with ``t a = sigma(a) t + delta(a)``.

Coefficients are stored densely, index ``i`` holding the coefficient of
``t^i``.  Multiplication works by repeated left multiplication with ``t``;
the ``Delta_{n,j}`` operators are computed separately from their recursion
so the two can be checked against each other.
"""

from __future__ import annotations

import re
from functools import total_ordering

import numpy as np

from . import gfp
from .errors import IndexOutOfRangeError, NotAnAutomorphismError, NotInvertibleError, RingMismatchError
from .rings import Ring, RingAutomorphism, RingElement, format_coords, parse_coords


@total_ordering
class _NegInfinity:
    """The degree of the zero polynomial. Absorbs addition, below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInfinity()


def inner_derivation(sigma: RingAutomorphism, beta) -> np.ndarray:
    """Matrix of the inner sigma-derivation ``a -> sigma(a) beta - beta a``."""
    ring = sigma.ring
    beta = ring.elem(beta)
    cols = [(sigma(b) * beta - beta * b).vec for b in ring.basis()]
    return np.array(cols, dtype=np.int64).T % ring.p


class SkewPolyRing:
    """The ring ``D[t; sigma, delta]``.

    ``delta`` is a GF(p)-matrix (``None`` means zero).  With ``checked`` set,
    every right division re-multiplies its result and compares.
    """

    def __init__(self, D: Ring, sigma: RingAutomorphism, delta=None, checked: bool = True):
        if sigma.ring != D:
            raise RingMismatchError("sigma must act on the coefficient ring")
        self.D = D
        self.sigma = sigma
        self.delta = None if delta is None else gfp.mod(delta, D.p)
        if self.delta is not None and not self.delta.any():
            self.delta = None
        self.checked = checked
        if self.delta is not None:
            self._verify_delta()
        self._sigma_pows = {0: np.eye(D.dim, dtype=np.int64)}
        self._delta_ops: dict[tuple[int, int], np.ndarray] = {}

    def _verify_delta(self):
        for a in self.D.basis():
            for b in self.D.basis():
                if self.apply_delta(a * b) != self.sigma(a) * self.apply_delta(b) + self.apply_delta(a) * b:
                    raise NotAnAutomorphismError(f"delta is not a left sigma-derivation at ({a}, {b})")

    def apply_delta(self, a: RingElement) -> RingElement:
        if self.delta is None:
            return self.D.zero
        return a._wrap(self.delta @ a.vec % self.D.p)

    def sigma_power(self, n: int) -> np.ndarray:
        if n not in self._sigma_pows:
            self._sigma_pows[n] = gfp.matrix_power(self.sigma.matrix, n, self.D.p)
        return self._sigma_pows[n]

    def apply_sigma_power(self, n: int, a: RingElement) -> RingElement:
        return a._wrap(self.sigma_power(n) @ a.vec % self.D.p)

    def __repr__(self):
        d = "" if self.delta is None else ",delta"
        return f"{self.D.name}[t;{self.sigma.label}{d}]"

    # -- construction helpers --------------------------------------------

    def poly(self, coeffs) -> SkewPoly:
        return SkewPoly(self, [self.D.elem(c) for c in coeffs])

    def const(self, a) -> SkewPoly:
        return SkewPoly(self, [self.D.elem(a)])

    def monomial(self, a, n: int) -> SkewPoly:
        return SkewPoly(self, [self.D.zero] * n + [self.D.elem(a)])

    @property
    def zero(self) -> SkewPoly:
        return SkewPoly(self, [])

    @property
    def one(self) -> SkewPoly:
        return self.const(self.D.one)

    @property
    def t(self) -> SkewPoly:
        return self.monomial(self.D.one, 1)

    # -- Delta operators -------------------------------------------------

    def delta_op(self, n: int, j: int) -> np.ndarray:
        """Matrix of ``Delta_{n,j}``, so that ``t^n b = sum_j Delta_{n,j}(b) t^j``."""
        if n < 0 or j < 0 or j > n:
            raise IndexOutOfRangeError(f"Delta_{{{n},{j}}} needs 0 <= j <= n")
        key = (n, j)
        if key in self._delta_ops:
            return self._delta_ops[key]
        dim, p = self.D.dim, self.D.p
        if n == 0:
            out = np.eye(dim, dtype=np.int64)
        else:
            out = np.zeros((dim, dim), dtype=np.int64)
            if j <= n - 1 and self.delta is not None:
                out = out + self.delta @ self.delta_op(n - 1, j)
            if j >= 1:
                out = out + self.sigma.matrix @ self.delta_op(n - 1, j - 1)
            out %= p
        out.setflags(write=False)
        self._delta_ops[key] = out
        return out

    def expand_monomials(self, a, n: int, b, m: int) -> SkewPoly:
        """``(a t^n)(b t^m)`` as ``sum_j a Delta_{n,j}(b) t^{m+j}``."""
        a, b = self.D.elem(a), self.D.elem(b)
        coeffs = [self.D.zero] * (m + n + 1)
        for j in range(n + 1):
            coeffs[m + j] = a * b._wrap(self.delta_op(n, j) @ b.vec % self.D.p)
        return SkewPoly(self, coeffs)

    # -- text syntax -----------------------------------------------------

    _TERM = re.compile(r"^\s*(\([^()]*\)|\d+)?\s*(\*?\s*t\s*(\^\s*(\d+))?)?\s*$")

    def parse(self, text: str) -> SkewPoly:
        """Parse ``c0 + c1*t + c2*t^2`` with coordinate-tuple coefficients."""
        text = text.strip()
        if text == "0":
            return self.zero
        terms = _split_top_level(text)
        coeffs: dict[int, RingElement] = {}
        for term in terms:
            match = self._TERM.match(term)
            if not match or (match.group(1) is None and match.group(2) is None):
                raise ValueError(f"cannot parse term {term!r}")
            coef_txt, t_part, _, power = match.groups()
            if coef_txt is None:
                c = self.D.one
            elif coef_txt.startswith("("):
                c = self.D.elem(parse_coords(coef_txt))
            else:
                c = self.D.one * int(coef_txt)
            deg = 0 if t_part is None else (int(power) if power is not None else 1)
            coeffs[deg] = coeffs.get(deg, self.D.zero) + c
        top = max(coeffs)
        return SkewPoly(self, [coeffs.get(i, self.D.zero) for i in range(top + 1)])


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class SkewPoly:
    """An element of a :class:`SkewPolyRing`; immutable, trailing zeros trimmed."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewPolyRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("SkewPoly is immutable")

    def _check(self, other) -> SkewPoly:
        if not isinstance(other, SkewPoly) or other.ring is not self.ring:
            raise RingMismatchError("skew polynomials from different rings")
        return other

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int) -> RingElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.D.zero

    @property
    def lead(self) -> RingElement:
        return self.coeffs[-1] if self.coeffs else self.ring.D.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and other.ring is self.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def left_scale(self, a: RingElement) -> SkewPoly:
        return SkewPoly(self.ring, [a * c for c in self.coeffs])

    def shift(self, k: int) -> SkewPoly:
        """Right multiplication by ``t^k`` (no twisting needed)."""
        if self.is_zero():
            return self
        return SkewPoly(self.ring, [self.ring.D.zero] * k + list(self.coeffs))

    def t_times(self) -> SkewPoly:
        """``t * self`` using ``t b = sigma(b) t + delta(b)``."""
        ring = self.ring
        out = [ring.D.zero] * (len(self.coeffs) + 1)
        for i, b in enumerate(self.coeffs):
            out[i + 1] = out[i + 1] + ring.sigma(b)
            if ring.delta is not None:
                out[i] = out[i] + ring.apply_delta(b)
        return SkewPoly(ring, out)

    def __mul__(self, other):
        other = self._check(other)
        return skew_mul(self, other)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"SkewPoly({format_poly(self)})"


def skew_mul(g: SkewPoly, h: SkewPoly) -> SkewPoly:
    """Product in ``D[t; sigma, delta]``: ``sum_n a_n (t^n h)``."""
    if g.ring is not h.ring:
        raise RingMismatchError("skew polynomials from different rings")
    result = g.ring.zero
    tn_h = h
    for n, a in enumerate(g.coeffs):
        if n:
            tn_h = tn_h.t_times()
        if not a.is_zero():
            result = result + tn_h.left_scale(a)
    return result


def degree(g: SkewPoly):
    return g.degree


def right_divide(g: SkewPoly, f: SkewPoly, checked: bool | None = None) -> tuple[SkewPoly, SkewPoly]:
    """``(q, r)`` with ``g = q f + r`` and ``deg r < deg f``.

    The leading coefficient of ``f`` must be a unit.  The leading term of
    ``c t^k f`` is ``c sigma^k(lead f) t^(k + deg f)``, which fixes each
    quotient coefficient in turn.
    """
    if g.ring is not f.ring:
        raise RingMismatchError("skew polynomials from different rings")
    if f.is_zero():
        raise ZeroDivisionError("right division by the zero polynomial")
    ring = f.ring
    try:
        lead_inv = f.lead.inverse()
    except NotInvertibleError:
        raise NotInvertibleError(f"leading coefficient {f.lead} of f is not a unit") from None
    m = f.degree
    if ring.delta is None:
        q, r = _right_divide_arrays(g, f, lead_inv)
    else:
        q_coeffs: dict[int, RingElement] = {}
        r = g
        while r.degree >= m:
            k = r.degree - m
            c = r.lead * ring.apply_sigma_power(k, lead_inv)
            q_coeffs[k] = c
            r = r - skew_mul(ring.monomial(c, k), f)
        q = SkewPoly(ring, [q_coeffs.get(i, ring.D.zero) for i in range(max(q_coeffs, default=-1) + 1)])
    if ring.checked if checked is None else checked:
        if q * f + r != g or not r.degree < m:
            raise AssertionError("right division failed its reconstruction check")
    return q, r


def _right_divide_arrays(g: SkewPoly, f: SkewPoly, lead_inv: RingElement) -> tuple[SkewPoly, SkewPoly]:
    """Right division for ``delta = 0`` on coefficient arrays.

    ``c t^k f`` has coefficients ``c sigma^k(f_i)`` at ``t^(k+i)``, so each
    step is one matrix product instead of a full skew multiplication.
    """
    ring = f.ring
    D, p, m = ring.D, ring.D.p, f.degree
    F = np.array([c.coords for c in f.coeffs], dtype=np.int64)
    R = np.array([c.coords for c in g.coeffs], dtype=np.int64).reshape(-1, D.dim)
    Q = np.zeros((max(len(R) - m, 0), D.dim), dtype=np.int64)
    inv = lead_inv.vec
    top = len(R) - 1
    while top >= m:
        if R[top].any():
            k = top - m
            S = ring.sigma_power(k)
            c = D.mul_vec(R[top], S @ inv % p)
            Q[k] = c
            R[k : top + 1] = (R[k : top + 1] - (F @ S.T) @ D.left_matrix(c).T) % p
        top -= 1
    wrap = lambda rows: SkewPoly(ring, [RingElement(D, tuple(int(x) for x in row)) for row in rows])  # noqa: E731
    return wrap(Q), wrap(R[:m])


def mod_r(g: SkewPoly, f: SkewPoly, checked: bool | None = None) -> SkewPoly:
    return right_divide(g, f, checked)[1]


def format_poly(g: SkewPoly) -> str:
    terms = []
    for i, c in enumerate(g.coeffs):
        if c.is_zero():
            continue
        txt = format_coords(c.coords)
        if i == 1:
            txt += "*t"
        elif i > 1:
            txt += f"*t^{i}"
        terms.append(txt)
    return " + ".join(terms) if terms else "0"
