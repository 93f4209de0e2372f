"""One test per acceptance criterion, each printing a PASS/FAIL line.

Run directly (python tests/test_acceptance.py) or through pytest; the pytest
terminal summary repeats the lines.
"""

from __future__ import annotations

import time
from fractions import Fraction

from slopecert.chevalley import build_chevalley
from slopecert.cli import execute
from slopecert.exact import PuiseuxSeries
from slopecert.fg import FGData, verify_fg_properties
from slopecert.formalconn import (GLDiagonalConnection, JordanConnection, adjoint_irregularity,
                                  difference_diagonal, gl_irregularity, sl2_fg_reduction, slope)
from slopecert.report import (DEFAULT_TYPES, Config, e6_numerology, inequality_suite,
                              springer_type_a)
from slopecert.rootdata import build_root_system, parse_type
from slopecert.strata import (barycenter, candidate_depths, default_denominator_bound,
                              has_fundamental_stratum_at_depth, scan_alcove)
from slopecert.weyleigen import check_eigenvector_bound

RESULTS: dict[int, tuple[bool, str]] = {}


def rs_of(name):
    return build_root_system(*parse_type(name))


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_eigenvector_bound():
    t0 = time.perf_counter()
    bad = []
    for name in DEFAULT_TYPES:
        rs = rs_of(name)
        rep = check_eigenvector_bound(rs, strict=False)
        top = rep.records[-1]
        ok = (rep.passed and rep.equality_bs() == [rs.coxeter_number] and top.witness_regular
              and top.witness_order == rs.coxeter_number)
        if not ok:
            bad.append(name)
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 600,
           f"min N >= b*rank on V(b), equality only at b = h, {len(DEFAULT_TYPES)} types "
           f"in {dt:.1f}s; failing: {bad or 'none'}")


def test_criterion_2_e6_numerology():
    recs = e6_numerology(rs_of("E6"))
    bad = [r.name for r in recs if r.status != "pass"]
    record(2, not bad and len(recs) == 6, f"E6 numerology, {len(recs)} facts; failing: {bad or 'none'}")


def test_criterion_3_springer_type_a():
    bad = []
    total = 0
    for n in range(2, 6):
        rs = build_root_system("A", n - 1)
        for r in springer_type_a(rs, Config(seed=0), points=20):
            total += 1
            if r.status != "pass":
                bad.append((rs.name, r.name))
    record(3, not bad, f"type A, n <= 5: {total} (n, b) cases agree; failing: {bad or 'none'}")


def test_criterion_4_barycenter_scans():
    t0 = time.perf_counter()
    bad = []
    scanned = 0
    for name in DEFAULT_TYPES:
        rs = rs_of(name)
        alg = build_chevalley(rs)
        D = default_denominator_bound(rs)
        h = rs.coxeter_number
        if scan_alcove(alg, Fraction(1, h), D) != [barycenter(rs)]:
            bad.append((name, "1/h"))
        for r in candidate_depths(rs, D, Fraction(1, h)):
            scanned += 1
            if scan_alcove(alg, r, D):
                bad.append((name, str(r)))
    dt = time.perf_counter() - t0
    record(4, not bad and dt < 300,
           f"barycenter unique at 1/h, {scanned} smaller depths empty, in {dt:.1f}s; "
           f"failing: {bad or 'none'}")


def test_criterion_5_frenkel_gross():
    bad = []
    for name in DEFAULT_TYPES:
        rs = rs_of(name)
        alg = build_chevalley(rs)
        rep = verify_fg_properties(alg, FGData.ones(rs), strict=False)
        if not (rep.passed and rep.slope == Fraction(1, rs.coxeter_number)
                and rep.irregularity == rs.rank):
            bad.append(name)
    record(5, not bad, f"five Frenkel-Gross properties for {len(DEFAULT_TYPES)} types; "
                       f"failing: {bad or 'none'}")


def test_criterion_6_main_inequality():
    bad = []
    irregular = equality = 0
    for name in DEFAULT_TYPES:
        rec = inequality_suite(rs_of(name), Config(seed=0), samples=200)[0]
        irregular += rec.witness["irregular"]
        equality += rec.witness["equality cases"]
        if rec.status != "pass" or rec.witness["samples"] != 200:
            bad.append((name, rec.witness["failures"]))
    record(6, not bad and equality > 0,
           f"200 random Jordan forms per type, {irregular} irregular, {equality} with "
           f"Irr(Ad) = rank; failing: {bad or 'none'}")


def test_criterion_7_gl2_example():
    tinv = PuiseuxSeries.monomial(1, -1)
    gl = GLDiagonalConnection((tinv, tinv))
    g, a = gl_irregularity(gl), gl_irregularity(difference_diagonal(gl))
    record(7, g == 2 and a == 0, f"diag(t^-1, t^-1): Irr = {g}, Irr(Ad) = {a}")


def test_criterion_8_sl2_reduction():
    red = sl2_fg_reduction()
    conn: JordanConnection = red.connection
    s, irr = slope(conn), adjoint_irregularity(conn)
    a1 = conn.rs
    stratum = has_fundamental_stratum_at_depth(build_chevalley(a1), barycenter(a1), s)
    fg = verify_fg_properties(build_chevalley(a1), FGData.ones(a1))
    ok = s == Fraction(1, 2) and irr == 1 and stratum and fg.slope == s and fg.irregularity == irr
    terms = ", ".join(f"{y[0]}*h1*u^{e}" for e, y in conn.h_part)
    record(8, ok, f"reduced h_part {terms} over b = {conn.b}: slope {s}, "
                  f"Irr(Ad) {irr}, stratum slope {fg.slope}")


def test_criterion_9_determinism():
    argv = ["check-all", "--emit", "json", "--seed", "11", "--trials", "5"]
    c1, r1 = execute(argv)
    c2, r2 = execute(argv)
    a, b = r1.render(), r2.render()
    record(9, c1 == c2 == 0 and a == b,
           f"check-all over {len(DEFAULT_TYPES)} types twice: {len(a)} bytes, identical={a == b}")


if __name__ == "__main__":
    import sys
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
