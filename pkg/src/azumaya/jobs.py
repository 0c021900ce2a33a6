"""Run configured analyses on one algebra and assemble a deterministic report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import automorphisms as aut
from .config import CHECKS, JobConfig, build_algebra
from .errors import (
    AlgebraError,
    NotApplicableError,
    NotAssociativeError,
    TooLargeToPrintError,
)
from .galois import (
    certify_galois,
    galois_data,
    g_t_fixed_subalgebra,
    hilbert90_solve,
    norm_one_group,
    separable_idempotent_check,
)
from .petit import PetitAlgebra, Verdict, is_associative, structure_report, verdict
from .rings import format_coords
from .skewpoly import format_poly

SCHEMA_VERSION = "1.0"


@dataclass
class JobState:
    """Results shared between checks; later checks reuse what earlier ones computed."""

    algebra: PetitAlgebra
    config: JobConfig
    galois: object = None
    taus: list | None = None
    theoretic: list | None = None
    bruteforce: list | None = None
    sections: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)


def _plain(obj):
    """JSON fallback for numpy scalars and arrays."""
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def describe_algebra(A: PetitAlgebra) -> dict:
    tower = A.tower
    return {
        "f": format_poly(A.f),
        "m": A.m,
        "p": A.p,
        "coefficient_dimension": A.n,
        "dimension": A.N,
        "labels": A.labels,
        "associative": is_associative(A),
        "tower": {
            "D": tower.D.name,
            "sigma": tower.sigma.label,
            "dim_C": tower.C.dim,
            "dim_fix": tower.fix.dim,
            "dim_S0": tower.S0.dim,
            "order_of_sigma_on_C": tower.m_C,
        },
    }


# -- individual checks ---------------------------------------------------------


def _check_structure(st: JobState) -> tuple[list[Verdict], dict]:
    rep = structure_report(st.algebra)
    data = rep.as_dict()
    data.pop("verdicts")
    return rep.verdicts, data


def _galois(st: JobState):
    if st.galois is None:
        try:
            st.galois = galois_data(st.algebra.tower)
        except ValueError as exc:
            raise NotApplicableError(str(exc)) from exc
    return st.galois


def _check_galois(st: JobState) -> tuple[list[Verdict], dict]:
    data = certify_galois(_galois(st))
    st.galois = data
    group = norm_one_group(data)
    solutions = {}
    for k in group:
        c = hilbert90_solve(k, data)
        solutions[format_coords(k.coords)] = None if c is None else format_coords(c.coords)
    witness = {
        f"sigma^{g}": {"x": [format_coords(x.coords) for x in xs], "y": [format_coords(y.coords) for y in ys]}
        for g, (xs, ys) in sorted(data.witness.items())
    }
    all_solved = all(c is not None for c in solutions.values())
    verdicts = [
        verdict("galois-certificate", data.certified, "witness exists", "found"),
        verdict("hilbert90-all", all_solved, "every norm-one k is a coboundary",
                {"norm_one": len(group), "solved": sum(c is not None for c in solutions.values())}),
    ]
    return verdicts, {"m": data.m, "norm_one_group": sorted(solutions), "hilbert90": solutions, "witness": witness}


def _check_idempotent(st: JobState) -> tuple[list[Verdict], dict]:
    v = separable_idempotent_check(st.algebra)
    return [v], {"passing": v.computed["passing"]}


def _check_g_t(st: JobState) -> tuple[list[Verdict], dict]:
    fx = g_t_fixed_subalgebra(st.algebra)
    return fx.verdicts, {"fixed": fx.fixed.describe(), "fixed_center": fx.fixed_center.describe()}


def _automorphism_entry(H, theoretic_by_key: dict, data) -> dict:
    entry = {"provenance": H.provenance, "matrix": H.matrix.tolist()}
    match = theoretic_by_key.get(H.key)
    entry["tau"] = match.tau.label if match is not None else None
    entry["k"] = format_coords(match.k.coords) if match is not None else None
    decomposition = None
    if match is not None and data is not None:
        dec = aut.decompose_inner(match, data)
        decomposition = None if dec is None else dec.as_dict()
    entry["inner_decomposition"] = decomposition
    return entry


def _check_automorphisms(st: JobState) -> tuple[list[Verdict], dict]:
    A, cfg = st.algebra, st.config
    verdicts: list[Verdict] = []
    st.taus = aut.commuting_tau_inventory(A.tower)
    if cfg.mode in ("theoretic", "both"):
        st.theoretic = aut.enumerate_theoretic(A, st.taus)
    if cfg.mode in ("bruteforce", "both"):
        try:
            st.bruteforce = aut.enumerate_bruteforce(A, budget=cfg.budget)
        except AlgebraError as exc:
            verdicts.append(Verdict("bruteforce-enumeration", "error", note=str(exc)))
    try:
        data = _galois(st)
    except NotApplicableError:
        data = None
    theoretic = st.theoretic if st.theoretic is not None else aut.enumerate_theoretic(A, st.taus)
    group = st.bruteforce if st.bruteforce is not None else theoretic
    if st.theoretic is not None and st.bruteforce is not None:
        verdicts.append(aut.oracle_equality(st.theoretic, st.bruteforce))
    verdicts.append(aut.composition_law(theoretic))
    verdicts.append(aut.injectivity(A, st.taus))
    verdicts.append(aut.kernel_theorem(A, group))
    verdicts.append(aut.norm_one_correspondence(A, group))
    if data is not None:
        verdicts.append(aut.coboundaries_inner(A, data, theoretic))
    verdicts.extend(aut.root_of_unity_orders(A, st.taus))
    by_key = {H.key: H for H in theoretic}
    payload = {
        "taus": [t.label for t in st.taus],
        "count_theoretic": None if st.theoretic is None else len(st.theoretic),
        "count_bruteforce": None if st.bruteforce is None else len(st.bruteforce),
        "count_extending_identity": sum(1 for H in group if H.restricts_to_identity_on_D()),
        "automorphisms": [_automorphism_entry(H, by_key, data) for H in group],
    }
    return verdicts, payload


def _group(st: JobState):
    if st.bruteforce is not None:
        return st.bruteforce
    if st.theoretic is not None:
        return st.theoretic
    return aut.enumerate_bruteforce(st.algebra, budget=st.config.budget)


def _check_inner(st: JobState) -> tuple[list[Verdict], dict]:
    A = st.algebra
    maps = aut.inner_maps(A)
    verdicts = aut.inner_subgroup_properties(A, maps=maps)
    verdicts.append(aut.conjugation_stability(_group(st), list(maps.values())))
    return verdicts, {"inner_count": len({G.key for G in maps.values()}), "nucleus_units": len(maps)}


def _check_csa(st: JobState) -> tuple[list[Verdict], dict]:
    A = st.algebra
    if not is_associative(A):
        raise NotAssociativeError("the algebra is not associative")
    brute = st.bruteforce
    if brute is None:
        brute = st.bruteforce = aut.enumerate_bruteforce(A, budget=st.config.budget)
    maps, v = aut.csa_inner_listing(A, brute)
    verdicts = [v]
    if A.d == A.D.one:
        # H_{sigma,1} = G_{t^-1}
        g = aut.inner_G(aut.t_inverse(A), A.t, A)
        h = aut.make_H(A.tower.sigma, A.D.one, A)
        verdicts.append(verdict("h_sigma_1-is-g_t_inverse", h.key == g.key, True, h.key == g.key))
    return verdicts, {"listing": [{"c": G.provenance["c"], "j": G.provenance["j"]} for G in maps]}


RUNNERS = {
    "structure": _check_structure,
    "galois": _check_galois,
    "separable-idempotent": _check_idempotent,
    "g_t-fixed": _check_g_t,
    "automorphisms": _check_automorphisms,
    "inner": _check_inner,
    "csa-inner-listing": _check_csa,
}
assert tuple(RUNNERS) == CHECKS


def run_job(cfg: JobConfig, checks=None, algebra: PetitAlgebra | None = None) -> dict:
    """Run the requested checks in dependency order; one failing check never stops the others."""
    A = build_algebra(cfg) if algebra is None else algebra
    st = JobState(A, cfg)
    wanted = cfg.checks if checks is None else checks
    start = time.perf_counter()
    flat = []
    for name in CHECKS:
        if name not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            verdicts, data = RUNNERS[name](st)
            status = "ran"
        except (NotAssociativeError, NotApplicableError) as exc:
            verdicts, data, status = [Verdict(name, "not-applicable", note=str(exc))], {}, "not-applicable"
        except Exception as exc:  # recorded per check; siblings keep running
            verdicts = [Verdict(name, "error", note=f"{type(exc).__name__}: {exc}")]
            data, status = {}, "error"
        st.timing[name] = round(time.perf_counter() - t0, 6)
        st.sections[name] = {"status": status, "data": data, "verdicts": [v.as_dict() for v in verdicts]}
        flat.extend({"check": name, **v.as_dict()} for v in verdicts)
    st.timing["total"] = round(time.perf_counter() - start, 6)
    counts = {s: sum(1 for v in flat if v["status"] == s) for s in ("pass", "fail", "not-applicable", "error")}
    return {
        "schema_version": SCHEMA_VERSION,
        "job": cfg.echo(),
        "algebra": describe_algebra(A),
        "checks": st.sections,
        "verdicts": flat,
        "summary": {**counts, "ok": counts["fail"] == 0},
        "timing": st.timing,
    }


def report_failed(report: dict) -> bool:
    return any(v["status"] == "fail" for v in report["verdicts"])


def dumps(report: dict, timing: bool = True) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    body = dict(report) if timing else {k: v for k, v in report.items() if k != "timing"}
    return json.dumps(body, sort_keys=True, indent=2, default=_plain) + "\n"


def plain_summary(report: dict) -> str:
    lines = [f"algebra: {report['algebra']['f']} over {report['algebra']['tower']['D']}"]
    for v in report["verdicts"]:
        lines.append(f"{v['check']}/{v['name']}: {v['status']}" + (f"  ({v['note']})" if v["note"] else ""))
    s = report["summary"]
    lines.append(f"pass {s['pass']}, fail {s['fail']}, not-applicable {s['not-applicable']}, error {s['error']}")
    return "\n".join(lines) + "\n"


def verdict_table(report: dict) -> str:
    """One tab-separated row per verdict: check, name, status."""
    rows = ["check\tverdict\tstatus"]
    rows += [f"{v['check']}\t{v['name']}\t{v['status']}" for v in report["verdicts"]]
    return "\n".join(rows) + "\n"


def mul_table(A: PetitAlgebra, bound: int) -> str:
    """Tab-separated product table over the prime basis; entry ``(i, j)`` is ``b_i o b_j``."""
    if A.N > bound:
        raise TooLargeToPrintError(f"dimension {A.N} exceeds the print bound {bound}")
    labels = A.labels
    rows = ["\t".join(["o"] + labels)]
    for i, label in enumerate(labels):
        cells = [format_poly(A.to_poly(A.table[i, j])) for j in range(A.N)]
        rows.append("\t".join([label] + cells))
    return "\n".join(rows) + "\n"
