"""Job configuration files (TOML) and their translation into rings and algebras.

A minimal file::

    [ring]
    p = 2
    kind = "extension"
    modulus = [1, 1, 1]          # coefficients low to high
    sigma = { kind = "frobenius", power = 1 }

    [algebra]
    m = 2
    d = [0, 1]

Ring kinds are ``prime``, ``extension``, ``split`` (``copies`` copies of the
prime or extension field) and ``matrix`` (``matrix_size`` square matrices).
Sigma kinds are ``identity``, ``frobenius``, ``cyclic-shift`` (split rings,
optional Frobenius ``power`` applied to every copy), ``permutation`` (split
rings, ``perm``) and ``entrywise`` (matrix rings, Frobenius ``power`` on the
entries, optional ``conjugator`` given as rows of entry coordinates).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .automorphisms import DEFAULT_BUDGET
from .errors import AlgebraError, ConfigError
from .petit import PetitAlgebra, make_cyclic
from .rings import (
    Ring,
    RingAutomorphism,
    RingTower,
    cyclic_shift,
    frobenius,
    identity,
    make_extension_field,
    matrix_automorphism,
    matrix_ring,
    permute_copies,
    prime_field,
    split_ring,
)
from .skewpoly import SkewPolyRing

CHECKS = (
    "structure",
    "galois",
    "separable-idempotent",
    "g_t-fixed",
    "automorphisms",
    "inner",
    "csa-inner-listing",
)
RING_KINDS = ("prime", "extension", "split", "matrix")
SIGMA_KINDS = ("identity", "frobenius", "cyclic-shift", "permutation", "entrywise")
MODES = ("theoretic", "bruteforce", "both")
FORMATS = ("report", "table", "plain")
DEFAULT_PRINT_BOUND = 64


@dataclass
class JobConfig:
    ring: dict
    algebra: dict
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    mode: str = "both"
    budget: int = DEFAULT_BUDGET
    print_bound: int = DEFAULT_PRINT_BOUND
    output: dict = field(default_factory=dict)
    source: str | None = None

    def echo(self) -> dict:
        """The normalized job description, enough to rebuild the algebra."""
        return {
            "ring": self.ring,
            "algebra": self.algebra,
            "checks": list(self.checks),
            "automorphisms": {"mode": self.mode, "budget": self.budget},
        }


def _line_of(text: str, key: str) -> int | None:
    pat = re.compile(rf"^\s*{re.escape(key)}\s*=", re.M)
    m = pat.search(text)
    return None if m is None else text.count("\n", 0, m.start()) + 1


def _int(value, name: str, text: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(name, f"expected an integer, got {value!r}", _line_of(text, name.split(".")[-1]))
    if minimum is not None and value < minimum:
        raise ConfigError(name, f"must be at least {minimum}, got {value}", _line_of(text, name.split(".")[-1]))
    return value


def _int_list(value, name: str, text: str) -> list:
    line = _line_of(text, name.split(".")[-1])
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ConfigError(name, f"expected a list of integers, got {value!r}", line)
    return list(value)


def parse_config(text: str, source: str | None = None) -> JobConfig:
    """Parse and validate a TOML job; errors name the offending field."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError("<file>", str(exc), line) from exc
    unknown = set(raw) - {"ring", "algebra", "checks", "automorphisms", "output"}
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown section")
    if "ring" not in raw:
        raise ConfigError("ring", "missing section")
    if "algebra" not in raw:
        raise ConfigError("algebra", "missing section")
    ring = dict(raw["ring"])
    p = _int(ring.get("p"), "ring.p", text, 2)
    kind = ring.get("kind", "extension")
    if kind not in RING_KINDS:
        raise ConfigError("ring.kind", f"unknown kind {kind!r}; expected one of {list(RING_KINDS)}",
                          _line_of(text, "kind"))
    norm_ring = {"p": p, "kind": kind}
    if "modulus" in ring:
        norm_ring["modulus"] = _int_list(ring["modulus"], "ring.modulus", text)
    elif kind == "extension":
        raise ConfigError("ring.modulus", "required for kind 'extension'")
    if kind == "split":
        norm_ring["copies"] = _int(ring.get("copies"), "ring.copies", text, 2)
    if kind == "matrix":
        norm_ring["matrix_size"] = _int(ring.get("matrix_size"), "ring.matrix_size", text, 1)
    sigma = ring.get("sigma", {"kind": "frobenius", "power": 1})
    if not isinstance(sigma, dict):
        raise ConfigError("ring.sigma", "expected a table {kind, power, conjugator}", _line_of(text, "sigma"))
    skind = sigma.get("kind")
    if skind not in SIGMA_KINDS:
        raise ConfigError("ring.sigma.kind", f"unknown kind {skind!r}; expected one of {list(SIGMA_KINDS)}",
                          _line_of(text, "sigma"))
    norm_sigma = {"kind": skind, "power": _int(sigma.get("power", 1), "ring.sigma.power", text, 0)}
    if "conjugator" in sigma:
        norm_sigma["conjugator"] = sigma["conjugator"]
    if "perm" in sigma:
        norm_sigma["perm"] = _int_list(sigma["perm"], "ring.sigma.perm", text)
    norm_ring["sigma"] = norm_sigma
    if "s0" in ring:
        norm_ring["s0"] = [_int_list(x, "ring.s0", text) for x in ring["s0"]]

    alg = raw["algebra"]
    m = _int(alg.get("m"), "algebra.m", text, 2)
    d = _int_list(alg.get("d"), "algebra.d", text)
    norm_alg = {"m": m, "d": d}

    checks_raw = raw.get("checks", {}).get("run", list(CHECKS))
    if checks_raw == "all" or checks_raw == ["all"]:
        checks_raw = list(CHECKS)
    if not isinstance(checks_raw, list):
        raise ConfigError("checks.run", "expected a list of check names", _line_of(text, "run"))
    for c in checks_raw:
        if c not in CHECKS:
            raise ConfigError("checks.run", f"unknown check {c!r}; expected names from {list(CHECKS)}",
                              _line_of(text, "run"))
    checks = [c for c in CHECKS if c in checks_raw]

    auto = raw.get("automorphisms", {})
    mode = auto.get("mode", "both")
    if mode not in MODES:
        raise ConfigError("automorphisms.mode", f"expected one of {list(MODES)}", _line_of(text, "mode"))
    budget = _int(auto.get("budget", DEFAULT_BUDGET), "automorphisms.budget", text, 1)

    output = dict(raw.get("output", {}))
    fmt = output.get("format", "report")
    if fmt not in FORMATS:
        raise ConfigError("output.format", f"expected one of {list(FORMATS)}", _line_of(text, "format"))
    print_bound = _int(output.get("print_bound", DEFAULT_PRINT_BOUND), "output.print_bound", text, 1)

    cfg = JobConfig(norm_ring, norm_alg, checks, mode, budget, print_bound, output, source)
    # building validates the algebra itself (irreducible modulus, d a unit, ...)
    build_algebra(cfg)
    return cfg


def load_config(path) -> JobConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc}") from exc
    return parse_config(text, str(path))


# -- building ------------------------------------------------------------------


def _base_field(spec: dict) -> Ring:
    if spec["kind"] == "prime" or "modulus" not in spec:
        return prime_field(spec["p"])
    try:
        return make_extension_field(spec["p"], spec["modulus"])
    except AlgebraError as exc:
        raise ConfigError("ring.modulus", str(exc)) from exc


def build_ring(spec: dict) -> Ring:
    base = _base_field(spec)
    kind = spec["kind"]
    if kind in ("prime", "extension"):
        return base
    if kind == "split":
        return split_ring(base, spec["copies"])
    return matrix_ring(base, spec["matrix_size"])


def build_sigma(D: Ring, spec: dict) -> RingAutomorphism:
    s = spec["sigma"]
    kind, power = s["kind"], s["power"]
    try:
        if kind == "identity":
            return identity(D)
        if kind == "frobenius":
            if D.kind not in ("extension-field", "prime-field"):
                raise ConfigError("ring.sigma.kind", "frobenius needs a field; use entrywise or cyclic-shift")
            return frobenius(D, power)
        if kind == "cyclic-shift":
            if D.kind != "split-ring":
                raise ConfigError("ring.sigma.kind", "cyclic-shift needs kind 'split'")
            base = D.params["base"]
            base_aut = frobenius(base, s.get("base_power", 0)) if base.dim > 1 else None
            return cyclic_shift(D, power or 1, base_aut)
        if kind == "permutation":
            if D.kind != "split-ring" or "perm" not in s:
                raise ConfigError("ring.sigma.perm", "permutation needs kind 'split' and a perm list")
            perm = s["perm"]
            if sorted(perm) != list(range(D.params["copies"])):
                raise ConfigError("ring.sigma.perm", f"{perm} is not a permutation of the copies")
            return permute_copies(D, perm)
        if D.kind != "matrix-ring":
            raise ConfigError("ring.sigma.kind", "entrywise needs kind 'matrix'")
        base = D.params["base"]
        base_aut = frobenius(base, power) if base.dim > 1 else identity(base)
        return matrix_automorphism(D, base_aut, s.get("conjugator"))
    except ConfigError:
        raise
    except (AlgebraError, TypeError, IndexError) as exc:
        raise ConfigError("ring.sigma", str(exc)) from exc


def build_tower(spec: dict) -> RingTower:
    D = build_ring(spec)
    sigma = build_sigma(D, spec)
    try:
        return RingTower.build(D, sigma, spec.get("s0"))
    except AlgebraError as exc:
        raise ConfigError("ring.s0", str(exc)) from exc


def build_algebra(cfg: JobConfig, checked: bool = False) -> PetitAlgebra:
    tower = build_tower(cfg.ring)
    D = tower.D
    d = cfg.algebra["d"]
    if len(d) != D.dim:
        raise ConfigError("algebra.d", f"expected {D.dim} coordinates, got {len(d)}")
    R = SkewPolyRing(D, tower.sigma, checked=checked)
    try:
        return make_cyclic(R, cfg.algebra["m"], D.elem(d), tower)
    except AlgebraError as exc:
        raise ConfigError("algebra.d", str(exc)) from exc
