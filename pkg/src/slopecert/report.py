"""Verification suites and report rendering.

Every check record names the statement it certifies.  JSON output carries no
timings so that a fixed seed gives byte-identical reports; the Markdown view
adds them.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .chevalley import build_chevalley
from .exact import CycloNum, PuiseuxSeries, format_rational, ord_pole
from .fg import FGData, act_on_data, fg_invariant, h_orbit_equivalent, verify_fg_properties
from .formalconn import (GLDiagonalConnection, JordanConnection, adjoint_irregularity,
                         adjoint_irregularity_exact, check_main_inequality, difference_diagonal,
                         gl_from_type_a, gl_irregularity, random_jordan_form, slope,
                         sl2_fg_reduction, validate)
from .rootdata import (DEFAULT_BUDGET, BudgetExceeded, RootSystem, build_root_system,
                       parabolic_degree_scan, parse_type, standard_parabolics)
from .strata import (barycenter, candidate_depths, default_denominator_bound,
                     has_fundamental_stratum_at_depth, scan_alcove_report)
from .weyleigen import (DEGREE_NOTE, check_eigenvector_bound, cyclotomic_combination,
                        elementary_symmetric_check, in_span, type_a_diagonal, v_b_components)

SCHEMA = "slopecert.report/1"

DEFAULT_TYPES = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C2", "C3", "C4",
                 "D4", "D5", "G2", "F4", "E6")


@dataclass
class CheckRecord:
    suite: str
    type_name: str
    name: str
    claim: str
    status: str
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"suite": self.suite, "type": self.type_name, "name": self.name,
                "claim": self.claim, "status": self.status, "witness": jsonable(self.witness)}


@dataclass
class Config:
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    denominator_bound: int | None = None
    allow_large: bool = False
    trials: int = 20

    def to_json(self) -> dict:
        return {"seed": self.seed, "budget": self.budget,
                "denominator_bound": self.denominator_bound,
                "allow_large": self.allow_large, "trials": self.trials}


@dataclass
class Report:
    command: list[str]
    config: Config
    checks: list[CheckRecord] = field(default_factory=list)
    emit: str = "md"

    def render(self) -> str:
        return self.dumps() if self.emit == "json" else self.markdown()

    @property
    def verdict(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": list(self.command), "config": self.config.to_json(),
                "checks": [c.to_json() for c in self.checks], "verdict": self.verdict}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def markdown(self) -> str:
        lines = [f"# slopecert report: {' '.join(self.command)}", ""]
        cfg = self.config.to_json()
        lines.append("Config: " + ", ".join(f"{k}={v}" for k, v in cfg.items()))
        lines.append("")
        lines.append("| suite | type | check | status | details | seconds |")
        lines.append("|---|---|---|---|---|---|")
        for c in self.checks:
            detail = "; ".join(f"{k}={_md(v)}" for k, v in jsonable(c.witness).items())
            lines.append(f"| {c.suite} | {c.type_name} | {c.name} | {c.status} | "
                         f"{detail.replace('|', '/')} | {c.seconds:.2f} |")
        lines.append("")
        passed = sum(c.status == "pass" for c in self.checks)
        skipped = sum(c.status == "skipped" for c in self.checks)
        failed = sum(c.status == "fail" for c in self.checks)
        lines.append(f"Verdict: **{self.verdict}** ({passed} passed, {failed} failed, "
                     f"{skipped} skipped)")
        return "\n".join(lines) + "\n"


def _md(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def jsonable(v: Any):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, CycloNum):
        return format_rational(v.to_fraction()) if v.is_rational() else repr(v)
    if isinstance(v, PuiseuxSeries):
        return repr(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def weyl_suite(rs: RootSystem, cfg: Config) -> list[CheckRecord]:
    name = rs.name
    claim = "min N over V(b) minus 0 is at least b*rank; equality only at b = h, on a regular Coxeter eigenline"
    try:
        rep = check_eigenvector_bound(rs, cfg.budget, strict=False)
    except BudgetExceeded as e:
        return [CheckRecord("weyl", name, "V(b) bound", claim, "skipped", {"reason": str(e)})]
    out = []
    for rec in rep.records:
        w = {"b": rec.b, "V(b) nonzero": rec.nonzero, "degree criterion": rec.degree_criterion,
             "bound b*rank": rec.bound}
        if rec.nonzero:
            w.update({"min N": rec.min_N, "equality": rec.equality,
                      "witness regular": rec.witness_regular,
                      "witness order": rec.witness_order,
                      "eigenspaces checked": rec.components_checked})
        out.append(CheckRecord("weyl", name, f"V({rec.b})", claim, _status(rec.passed), w))
    out.append(CheckRecord("weyl", name, "nonvanishing criterion", DEGREE_NOTE, "pass",
                           {"degrees": list(rs.degrees)}))
    if rs.name == "E6":
        out.extend(e6_numerology(rs))
    if rs.type_label == "A" and rs.rank <= 4:
        out.extend(springer_type_a(rs, cfg))
    else:
        out.append(CheckRecord("weyl", name, "elementary-symmetric cross-check",
                               "type A with n <= 5 only", "skipped",
                               {"reason": "defined for type A_{n-1}, n <= 5"}))
    return out


def e6_numerology(rs: RootSystem) -> list[CheckRecord]:
    pars = standard_parabolics(rs)
    max_all = max(pars, key=lambda p: p.root_count)
    small = [p for p in pars if len(p.subset) <= 4]
    max_small = max(small, key=lambda p: p.root_count)
    scan9 = parabolic_degree_scan(rs, 9)
    scan8 = parabolic_degree_scan(rs, 8)
    labels8 = sorted({p.label for p in scan8})
    recs = [
        ("root count", "|Phi| = 72", len(rs.roots) == 72, {"roots": len(rs.roots)}),
        ("degrees", "degrees 2, 5, 6, 8, 9, 12", rs.degrees == (2, 5, 6, 8, 9, 12),
         {"degrees": list(rs.degrees)}),
        ("max parabolic", "largest proper parabolic has 40 roots (D5)",
         max_all.root_count == 40 and max_all.label == "D5",
         {"roots": max_all.root_count, "label": max_all.label}),
        ("max rank <= 4 parabolic", "largest rank <= 4 parabolic has 24 roots (D4); 72 - 24 = 48 > 36",
         max_small.root_count == 24 and max_small.label == "D4" and 72 - 24 > 36,
         {"roots": max_small.root_count, "label": max_small.label}),
        ("degree scan b=9", "no proper parabolic has a degree divisible by 9", not scan9,
         {"found": [p.label for p in scan9]}),
        ("degree scan b=8", "the proper parabolics with a degree divisible by 8 are of type D5",
         labels8 == ["D5"], {"labels": labels8, "subsets": [list(p.subset) for p in scan8]}),
    ]
    return [CheckRecord("weyl", rs.name, n, c, _status(ok), w) for n, c, ok, w in recs]


def springer_type_a(rs: RootSystem, cfg: Config, points: int = 20) -> list[CheckRecord]:
    """Eigenspace membership against e_i(x) = 0 for b not dividing i, on A_{n-1}."""
    n = rs.rank + 1
    rng = random.Random(cfg.seed)
    out = []
    for b in range(1, n + 1):
        comps = v_b_components(rs, b, cfg.budget)
        agree = True
        checked = 0
        for E in comps:
            for v in E.basis:
                checked += 1
                agree &= elementary_symmetric_check(n, type_a_diagonal(v), b)
        members = 0
        for _ in range(points if comps else 0):
            E = rng.choice(comps)
            x = cyclotomic_combination(E.basis, rng, b)
            members += 1
            agree &= elementary_symmetric_check(n, type_a_diagonal(x), b)
        # when some w acts on 𝔥 by a primitive b-th root, V(b) is everything
        full = any(E.dim == rs.rank for E in comps)
        # random points of 𝔥 outside every component
        nonmembers = 0
        tries = 0
        while not full and nonmembers < points and tries < 50 * points:
            tries += 1
            x = cyclotomic_combination([[1 if i == j else 0 for j in range(rs.rank)]
                                        for i in range(rs.rank)], rng, b)
            if any(in_span(E.basis, x) for E in comps):
                continue
            nonmembers += 1
            agree &= not elementary_symmetric_check(n, type_a_diagonal(x), b)
        ok = agree and (not comps or members >= points) and (full or nonmembers >= points)
        out.append(CheckRecord(
            "weyl", rs.name, f"eigenvalue test vs symmetric functions, b={b}",
            "x is in V(b) exactly when e_i(x) = 0 for every i not divisible by b",
            _status(ok), {"basis vectors": checked, "members": members,
                          "non-members": nonmembers, "V(b) is all of 𝔥": full}))
    return out


def fg_suite(rs: RootSystem, cfg: Config) -> list[CheckRecord]:
    alg = build_chevalley(rs)
    rep = verify_fg_properties(alg, FGData.ones(rs), strict=False, seed=cfg.seed)
    w = {"slope": rep.slope, "Irr(Ad)": rep.irregularity, "centralizer dim": rep.centralizer_dim,
         "dim s(0)": rep.s0_dim, "dim s(-1/h)": rep.s_minus_dim}
    out = [CheckRecord("fg", rs.name, claim, claim, _status(ok), w)
           for claim, ok in rep.clauses.items()]
    rng = random.Random(cfg.seed)
    inv_ok = True
    sep_ok = True
    for _ in range(cfg.trials):
        d = FGData(rs, _nonzero(rng), tuple(_nonzero(rng) for _ in range(rs.rank)))
        g = tuple(_nonzero(rng) for _ in range(rs.rank))
        d2 = act_on_data(rs, d, g)
        inv_ok &= fg_invariant(rs, d).j == fg_invariant(rs, d2).j
        inv_ok &= h_orbit_equivalent(alg, d, d2).equivalent
        d3 = FGData(rs, d.x0 * 2, d.xs)
        sep_ok &= not h_orbit_equivalent(alg, d, d3).equivalent
    out.append(CheckRecord("fg", rs.name, "torus invariant",
                           "j = x0 * prod x_i^c_i is constant on constant-torus gauge orbits",
                           _status(inv_ok), {"trials": cfg.trials}))
    out.append(CheckRecord("fg", rs.name, "torus separation",
                           "data with different j are not related by a constant torus element",
                           _status(sep_ok), {"trials": cfg.trials}))
    out.append(CheckRecord("fg", rs.name, "finer classification",
                           "identification up to roots of unity of order h' needs loop-group gauge",
                           "skipped", {"reason": "h' is not tabulated; only the torus orbit is certified"}))
    return out


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if q:
            return q


def strata_suite(rs: RootSystem, cfg: Config) -> list[CheckRecord]:
    alg = build_chevalley(rs)
    D = cfg.denominator_bound or default_denominator_bound(rs)
    h = rs.coxeter_number
    top = scan_alcove_report(alg, Fraction(1, h), D, seed=cfg.seed)
    bc = barycenter(rs)
    ok = top.points == [bc]
    out = [CheckRecord("strata", rs.name, "depth 1/h",
                       "the only alcove point with a fundamental stratum of depth 1/h is the barycenter",
                       _status(ok), {"D": D, "method": top.method,
                                     "points": [str(p) for p in top.points],
                                     "flats visited": top.flats_visited,
                                     "grid points": top.grid_points})]
    depths = candidate_depths(rs, D, Fraction(1, h))
    found = []
    for r in depths:
        res = scan_alcove_report(alg, r, D, seed=cfg.seed)
        found.extend((r, str(p)) for p in res.points)
    out.append(CheckRecord("strata", rs.name, "depths below 1/h",
                           "no alcove point has a fundamental stratum of depth 0 < r < 1/h",
                           _status(not found), {"D": D, "depths scanned": len(depths),
                                                "points found": found}))
    out.append(CheckRecord("strata", rs.name, "points off the standard apartment",
                           "strata at general points of the building", "skipped",
                           {"reason": "only the standard apartment is modelled"}))
    return out


def inequality_suite(rs: RootSystem, cfg: Config, samples: int | None = None) -> list[CheckRecord]:
    alg = build_chevalley(rs)
    rng = random.Random(cfg.seed)
    n = samples if samples is not None else cfg.trials
    irregular = equality = 0
    failures = []
    for i in range(n):
        conn = random_jordan_form(rs, rng, budget=cfg.budget)
        validate(conn, alg)
        irr = adjoint_irregularity(conn)
        if (irr == 0) != (slope(conn) == 0):
            failures.append({"sample": i, "problem": "Irr = 0 and slope = 0 disagree"})
        if slope(conn) == 0:
            continue
        irregular += 1
        rep = check_main_inequality(conn, alg, cfg.budget, strict=False, validated=True)
        if not rep.passed:
            failures.append({"sample": i, "chain": rep.chain_text(), "note": rep.conclusion})
        if rep.equality:
            equality += 1
            if slope(conn) != Fraction(1, rs.coxeter_number):
                failures.append({"sample": i, "problem": "Irr = rank with slope != 1/h"})
    return [CheckRecord("conn", rs.name, "main inequality (random Jordan forms)",
                        "Irr(Ad) >= N(x) k/b >= N(x)/b >= rank; Irr(Ad) = rank forces slope 1/h",
                        _status(not failures), {"samples": n, "irregular": irregular,
                                                "equality cases": equality,
                                                "failures": failures[:5]})]


def global_suite(cfg: Config) -> list[CheckRecord]:
    """Type-independent checks: the GL_2 example and the sl_2 reduction."""
    one = PuiseuxSeries.monomial(1, -1)
    gl = GLDiagonalConnection((one, one))
    g_irr = gl_irregularity(gl)
    a_irr = gl_irregularity(difference_diagonal(gl))
    out = [CheckRecord("conn", "GL2", "scalar irregular connection",
                       "diag(t^-1, t^-1) has irregularity 2 but its adjoint is regular singular",
                       _status(g_irr == 2 and a_irr == 0), {"Irr": g_irr, "Irr(Ad)": a_irr})]
    red = sl2_fg_reduction()
    conn = red.connection
    alg = build_chevalley(conn.rs)
    stratum = has_fundamental_stratum_at_depth(alg, barycenter(conn.rs), Fraction(1, 2), cfg.seed)
    s, irr = slope(conn), adjoint_irregularity(conn)
    out.append(CheckRecord("conn", "A1", "sl2 reduction of the Frenkel-Gross matrix",
                           "explicit gauge reduction gives slope 1/2 and Irr(Ad) = 1, as the stratum predicts",
                           _status(s == Fraction(1, 2) and irr == 1 and stratum),
                           {"h_part": [[e, list(y)] for e, y in conn.h_part], "b": conn.b,
                            "slope": s, "Irr(Ad)": irr, "stratum at barycenter": stratum,
                            "steps": len(red.steps)}))
    return out


def connection_suite(conn: JordanConnection, cfg: Config) -> list[CheckRecord]:
    rs = conn.rs
    alg = build_chevalley(rs)
    name = rs.name
    v = validate(conn, alg, strict=False)
    out = [CheckRecord("conn", name, "Jordan form", "h Cartan-valued, n nilpotent, [h, n] = 0",
                       _status(v.valid), {"Cartan-valued": v.cartan_valued, "commute": v.commutes,
                                          "nilpotent": v.nilpotent, "messages": v.messages})]
    if not v.valid:
        return out
    s = slope(conn)
    irr_q = adjoint_irregularity_exact(conn)
    integral = irr_q.denominator == 1
    out.append(CheckRecord("conn", name, "irregularity",
                           "Irr(Ad) is a non-negative integer, zero exactly when the slope is zero",
                           _status(integral and ((irr_q == 0) == (s == 0))),
                           {"slope": s, "Irr(Ad)": irr_q}))
    if rs.type_label == "A":
        gl = _gl_total(difference_diagonal(gl_from_type_a(conn)))
        out.append(CheckRecord("conn", name, "GL_n cross-check",
                               "Irr(Ad) equals the irregularity of the difference diagonal",
                               _status(gl == irr_q), {"difference diagonal": gl}))
    if s == 0:
        out.append(CheckRecord("conn", name, "main inequality", "needs an irregular connection",
                               "skipped", {"reason": "slope 0"}))
    else:
        rep = check_main_inequality(conn, alg, cfg.budget, strict=False, validated=True)
        out.append(CheckRecord("conn", name, "leading term in V(b)",
                               "the leading coefficient of a connection over the unramified disk lies in V(b)",
                               _status(rep.genuine), {"b": rep.b, "k": rep.a,
                                                      "method": rep.membership_method}))
        if rep.genuine:
            out.append(CheckRecord("conn", name, "main inequality",
                                   "Irr(Ad) >= N(x) k/b >= N(x)/b >= rank and N(x) >= b rank",
                                   _status(rep.passed),
                                   {"chain": rep.chain_text(), "N": rep.N,
                                    "links": [[l.label, l.holds] for l in rep.links],
                                    "N >= b*rank": rep.eigen_bound_holds,
                                    "conclusion": rep.conclusion}))
        else:
            out.append(CheckRecord("conn", name, "main inequality",
                                   "applies to genuine Jordan forms only", "skipped",
                                   {"chain": rep.chain_text(), "reason": rep.conclusion}))
    out.append(CheckRecord("conn", name, "general reduction to Jordan form",
                           "arbitrary connection matrices", "skipped",
                           {"reason": "inputs must already be in Jordan form"}))
    return out


def _gl_total(conn: GLDiagonalConnection) -> Fraction:
    """The irregularity sum without the integrality assertion."""
    return sum((ord_pole(s) for s in conn.entries), Fraction(0))


def resolve_type(text: str, allow_large: bool) -> RootSystem:
    label, rank = parse_type(text)
    return build_root_system(label, rank, allow_large)
