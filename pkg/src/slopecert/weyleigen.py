"""Eigenspaces of Weyl group elements, the sets V(b) and root-vanishing counts.

For a Weyl element w and b >= 1, the zeta_b-eigenspace of w on 𝔥 is computed
exactly over Q(zeta_b), where zeta_b is the residue class of x modulo the
b-th cyclotomic polynomial.  V(b) is the union of these over all of W.

N(x) counts the roots that do not vanish at x.  Inside one eigenspace E, the
set of roots vanishing at x only depends on which flat of the restricted
root-hyperplane arrangement has x in its relative interior, so the minimum of
N over E minus the origin is a minimum over finitely many flats.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import CycloNum, field_for
from .linalg import nullspace, normal_form, rank, rref
from .rootdata import (DEFAULT_BUDGET, RootSystem, WeylElement, conjugacy_classes,
                       enumerate_weyl)

log = logging.getLogger(__name__)

DEGREE_NOTE = ("V(b) is nonzero exactly when b divides a degree of W; this is the criterion "
               "implemented and cross-checked here, which differs from phrasing the condition "
               "in terms of exponents (for A1 and b = 2, V(b) is all of 𝔥 while 2 does not "
               "divide the exponent 1).")


class TheoremViolation(AssertionError):
    def __init__(self, message: str, flat: "FlatRecord | None" = None):
        super().__init__(message)
        self.flat = flat


@dataclass(frozen=True)
class Eigenspace:
    w: WeylElement
    b: int
    basis: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __bool__(self) -> bool:
        return bool(self.basis)

    @property
    def key(self) -> tuple:
        return (self.b, self.basis)


@dataclass(frozen=True)
class FlatRecord:
    eigenspace: Eigenspace
    vanishing: tuple[int, ...]
    basis: tuple[tuple, ...]
    N: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def regular(self) -> bool:
        return not self.vanishing


@dataclass
class BRecord:
    b: int
    nonzero: bool
    degree_criterion: bool
    bound: int
    min_N: int | None = None
    witness: FlatRecord | None = None
    components_checked: int = 0
    passed: bool = True
    equality: bool = False
    witness_regular: bool | None = None
    witness_order: int | None = None


@dataclass
class TheoremReport:
    root_system: str
    rank: int
    coxeter_number: int
    n_roots: int
    records: list[BRecord] = field(default_factory=list)
    method: str = "conjugacy class representatives"
    notes: tuple[str, ...] = (DEGREE_NOTE,)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def equality_bs(self) -> list[int]:
        return [r.b for r in self.records if r.equality]


# ---------------------------------------------------------------------------
# eigenspaces
# ---------------------------------------------------------------------------


def eigenspace(rs: RootSystem, w: WeylElement, b: int) -> Eigenspace:
    """Exact zeta_b-eigenspace of w acting on 𝔥, basis in reduced echelon form."""
    z, _ = field_for(b)
    M = w.matrix
    r = rs.rank
    rows = [[M[i][j] - (z if i == j else 0) for j in range(r)] for i in range(r)]
    basis = normal_form(nullspace(rows, r))
    return Eigenspace(w, b, basis)


def _act_on_space(w: WeylElement, basis) -> tuple[tuple, ...]:
    return normal_form([w.act(v) for v in basis])


def v_b_components(rs: RootSystem, b: int, budget: int = DEFAULT_BUDGET) -> tuple[Eigenspace, ...]:
    """All distinct nonzero zeta_b-eigenspaces of elements of W.

    The eigenspace of g w g^-1 is g applied to that of w, so each class
    representative's eigenspace is spread by its orbit under the simple
    reflections instead of solving |W| kernels.
    """
    classes = conjugacy_classes(rs, budget)
    found: dict[tuple, Eigenspace] = {}
    gens = rs.simple_reflections
    for cls in classes:
        E = eigenspace(rs, cls[0], b)
        if not E:
            continue
        if E.basis in found:
            continue
        found[E.basis] = E
        frontier = [E]
        while frontier:
            nxt = []
            for F in frontier:
                for s in gens:
                    basis = _act_on_space(s, F.basis)
                    if basis not in found:
                        G = Eigenspace(s * F.w * s, b, basis)
                        found[basis] = G
                        nxt.append(G)
            frontier = nxt
    return tuple(found[k] for k in sorted(found, key=_space_sort_key))


def _space_sort_key(basis) -> tuple:
    return tuple(tuple(repr(c) for c in row) for row in basis)


def v_b_components_bruteforce(rs: RootSystem, b: int, budget: int = DEFAULT_BUDGET):
    """Same set as v_b_components by solving one kernel per element (for testing)."""
    found = {}
    for w in enumerate_weyl(rs, budget):
        E = eigenspace(rs, w, b)
        if E and E.basis not in found:
            found[E.basis] = E
    return tuple(found[k] for k in sorted(found, key=_space_sort_key))


def in_span(basis: Sequence[Sequence], x: Sequence) -> bool:
    if not any(x):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(x)]) == len(basis)


def in_v_b(components: Sequence[Eigenspace], x: Sequence) -> bool:
    return any(in_span(E.basis, x) for E in components)


def degree_criterion(rs: RootSystem, b: int) -> bool:
    return any(d % b == 0 for d in rs.degrees)


# ---------------------------------------------------------------------------
# N(x) and flats
# ---------------------------------------------------------------------------


def vanishing_roots(rs: RootSystem, x: Sequence) -> tuple[int, ...]:
    return tuple(k for k in range(len(rs.roots)) if not rs.evaluate(k, x))


def count_N(rs: RootSystem, x: Sequence) -> int:
    """Number of roots alpha with alpha(x) != 0 (x in simple-root coordinates)."""
    return 2 * sum(1 for k in range(rs.n_positive) if rs.evaluate(k, x))


def _restricted_functionals(rs: RootSystem, E: Eigenspace) -> list[list]:
    return [[rs.evaluate(k, v) for v in E.basis] for k in range(rs.n_positive)]


def _normalize(vec: Sequence) -> tuple | None:
    lead = next((c for c in vec if c), None)
    if lead is None:
        return None
    inv = 1 / lead
    return tuple(c * inv if c else c for c in vec)


def _reduce(vec: Sequence, echelon: Sequence[Sequence], pivots: Sequence[int]) -> list:
    v = list(vec)
    for row, p in zip(echelon, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def enumerate_flats(rs: RootSystem, E: Eigenspace) -> list[FlatRecord]:
    """Every nonzero flat of the arrangement {ker(alpha|_E)} (including E itself)."""
    if not E:
        return []
    ells = _restricted_functionals(rs, E)
    k = E.dim
    zero_set = frozenset(i for i, l in enumerate(ells) if not any(l))
    seen: dict[frozenset, tuple] = {}
    frontier = [zero_set]
    seen[zero_set] = ([], [])
    out = []
    while frontier:
        nxt = []
        for S in frontier:
            ech, piv = seen[S]
            out.append(_flat_record(rs, E, S, ech, piv))
            if len(piv) + 1 >= k:
                continue
            groups: dict[tuple, list[int]] = {}
            residual_of: dict[tuple, list] = {}
            for i, l in enumerate(ells):
                if i in S:
                    continue
                res = _reduce(l, ech, piv)
                key = _normalize(res)
                groups.setdefault(key, []).append(i)
                residual_of.setdefault(key, res)
            for key, members in groups.items():
                child = S | frozenset(members)
                if child in seen:
                    continue
                R, P = rref(list(ech) + [list(key)], k)
                seen[child] = (R, P)
                nxt.append(child)
        frontier = nxt
    out.sort(key=lambda f: (f.N, f.vanishing))
    return out


def _flat_record(rs: RootSystem, E: Eigenspace, S, ech, piv) -> FlatRecord:
    k = E.dim
    coords = nullspace(ech, k) if ech else [[Fraction(int(i == j)) for j in range(k)]
                                            for i in range(k)]
    basis = []
    for c in coords:
        v = [0] * rs.rank
        for cj, row in zip(c, E.basis):
            if cj:
                v = [a + cj * b for a, b in zip(v, row)]
        basis.append(v)
    basis = normal_form(basis)
    pos = sorted(S)
    vanishing = tuple(pos + [rs.negative(i) for i in pos])
    return FlatRecord(E, tuple(sorted(vanishing)), basis, len(rs.roots) - len(vanishing))


def min_N_over_eigenspace(rs: RootSystem, E: Eigenspace) -> tuple[int, FlatRecord]:
    if not E:
        raise ValueError("eigenspace is zero")
    flats = enumerate_flats(rs, E)
    best = flats[0]
    return best.N, best


def generic_point(rs: RootSystem, flat: FlatRecord, rng: random.Random,
                  max_tries: int = 50, scale: int = 10**6) -> list:
    """Random integer combination of the flat basis avoiding every non-vanishing root."""
    want = set(range(len(rs.roots))) - set(flat.vanishing)
    for attempt in range(max_tries):
        cs = [rng.randint(1, scale) for _ in flat.basis]
        x = [0] * rs.rank
        for c, row in zip(cs, flat.basis):
            x = [a + c * b for a, b in zip(x, row)]
        if all(rs.evaluate(k, x) for k in want):
            return x
        log.info("generic point retry %d on a flat of dimension %d", attempt + 1, flat.dim)
    raise RuntimeError("no generic point found within the retry budget")


# ---------------------------------------------------------------------------
# the bound N(x) >= b r on V(b)
# ---------------------------------------------------------------------------


def check_eigenvector_bound(rs: RootSystem, budget: int = DEFAULT_BUDGET, strict: bool = True,
                     all_elements: bool = False) -> TheoremReport:
    """Verify min N over V(b) minus 0 is at least b r for every b, with equality only at b = h.

    N is W-invariant and the eigenspaces of conjugate elements are W-translates,
    so one representative per conjugacy class covers V(b).  ``all_elements``
    runs over every element instead (used to cross-check on small types).
    """
    r, h = rs.rank, rs.coxeter_number
    report = TheoremReport(rs.name, r, h, len(rs.roots))
    if all_elements:
        elements = enumerate_weyl(rs, budget)
        report.method = "every element of W"
    else:
        elements = tuple(c[0] for c in conjugacy_classes(rs, budget))
    for b in range(1, h + 1):
        rec = BRecord(b, False, degree_criterion(rs, b), b * r)
        seen = set()
        for w in elements:
            E = eigenspace(rs, w, b)
            if not E or E.basis in seen:
                continue
            seen.add(E.basis)
            rec.nonzero = True
            rec.components_checked += 1
            n, flat = min_N_over_eigenspace(rs, E)
            if rec.min_N is None or n < rec.min_N or (
                    n == rec.min_N and flat.regular and not rec.witness.regular):
                rec.min_N, rec.witness = n, flat
        if rec.nonzero != rec.degree_criterion:
            rec.passed = False
            msg = f"{rs.name}, b={b}: V(b) nonzero={rec.nonzero} disagrees with the degree criterion"
            if strict:
                raise TheoremViolation(msg)
        if rec.nonzero:
            rec.equality = rec.min_N == rec.bound
            rec.witness_regular = rec.witness.regular
            rec.witness_order = rec.witness.eigenspace.w.order
            if rec.min_N < rec.bound:
                rec.passed = False
                if strict:
                    raise TheoremViolation(
                        f"{rs.name}, b={b}: N = {rec.min_N} < {rec.bound}", rec.witness)
            if rec.equality and not (b == h and rec.witness_regular and rec.witness_order == h):
                rec.passed = False
                if strict:
                    raise TheoremViolation(
                        f"{rs.name}, b={b}: equality N = br without a Coxeter witness",
                        rec.witness)
        report.records.append(rec)
    top = report.records[-1]
    if not top.equality:
        top.passed = False
        if strict:
            raise TheoremViolation(f"{rs.name}: equality not attained at b = h")
    return report


# ---------------------------------------------------------------------------
# type A: elementary symmetric functions
# ---------------------------------------------------------------------------


def elementary_symmetric(x: Sequence) -> list:
    """[e_0, e_1, ..., e_n] of the entries of x."""
    e: list = [Fraction(1)]
    for xi in x:
        new = list(e) + [Fraction(0)]
        for i in range(1, len(new)):
            new[i] = new[i] + xi * e[i - 1]
        e = new
    return e


def elementary_symmetric_check(n: int, x: Sequence, b: int) -> bool:
    """e_i(x) = 0 for every 1 <= i <= n with b not dividing i."""
    if len(x) != n:
        raise ValueError("vector length must equal n")
    total = sum(x, Fraction(0))
    if total:
        raise ValueError("entries must sum to zero")
    e = elementary_symmetric(x)
    return all(not e[i] for i in range(1, n + 1) if i % b)


def type_a_diagonal(x: Sequence) -> list:
    """Simple-root coordinates on A_{n-1} to the traceless diagonal (y_1..y_n)."""
    n = len(x) + 1
    ext = [0] + list(x) + [0]
    return [ext[k + 1] - ext[k] for k in range(n)]


def cyclotomic_combination(basis: Sequence[Sequence], rng: random.Random, b: int,
                           scale: int = 50) -> list:
    """Random combination of basis vectors with coefficients in Z[zeta_b]."""
    z, conv = field_for(b)
    r = len(basis[0])
    x = [0] * r
    for row in basis:
        if isinstance(z, CycloNum):
            c = CycloNum(b, [rng.randint(-scale, scale) for _ in range(len(z.coeffs))])
        else:
            c = Fraction(rng.randint(-scale, scale))
        if not c:
            c = conv(1)
        x = [a + c * v for a, v in zip(x, row)]
    return x
