"""Points of the standard apartment, graded pieces and fundamental strata.

A point x of the apartment is recorded by a_i = alpha_i(x).  At x the loop
algebra is graded: the root line of alpha at t^m sits in degree alpha(x) + m,
and t^m 𝔥 sits in degree m.  A stratum of depth r at x is fundamental when
the degree -r piece, with t set to 1, contains a non-nilpotent element.  All
of its basis vectors are homogeneous for the grading, and scaling by the
one-parameter subgroup attached to x carries t to 1 without changing
nilpotency, so that specialization is faithful.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import ceil
from typing import Sequence

from .chevalley import (AlgebraElement, ChevalleyAlgebra, SpanProbe, probe_span,
                        root_span_in_halfspace)
from .exact import PuiseuxSeries, lcm
from .linalg import feasible_nonnegative, positive_dependency, rref

log = logging.getLogger(__name__)

GRID_POINT_LIMIT = 200_000


class RamifiedInput(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ApartmentPoint:
    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Sequence) -> "ApartmentPoint":
        return cls(tuple(Fraction(v) for v in values))

    def root_value(self, root: Sequence[int]) -> Fraction:
        return sum((n * a for n, a in zip(root, self.values)), Fraction(0))

    def in_alcove(self, marks: Sequence[int]) -> bool:
        return all(a >= 0 for a in self.values) and self.root_value(marks) <= 1

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class GradedPiece:
    point: ApartmentPoint
    degree: Fraction
    basis: tuple[tuple[int, int], ...]

    def __bool__(self):
        return bool(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def shifted_labels(self, k: int) -> tuple[tuple[int, int], ...]:
        return tuple((i, m + k) for i, m in self.basis)

    def elements(self, alg: ChevalleyAlgebra, specialize: bool = False) -> list[AlgebraElement]:
        """One algebra element per basis line; series t^m, or 1 when specialized."""
        if specialize:
            return [AlgebraElement({i: 1}) for i, _ in self.basis]
        return [AlgebraElement({i: PuiseuxSeries.monomial(1, m)}) for i, m in self.basis]


@dataclass(frozen=True)
class Stratum:
    point: ApartmentPoint
    depth: Fraction
    representative: AlgebraElement

    def validate(self, alg: ChevalleyAlgebra) -> None:
        piece = graded_piece(alg, self.point, -self.depth)
        allowed = set(piece.basis)
        for k, c in self.representative.coeffs.items():
            s = c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c)
            for q in s.exponents():
                if q.denominator != 1 or (k, int(q)) not in allowed:
                    raise ValueError(f"term {alg.basis_label(k)} t^{q} is not in the graded piece")


def graded_piece(alg: ChevalleyAlgebra, x: ApartmentPoint, r) -> GradedPiece:
    """Basis of the degree-r piece at x: root lines with alpha(x) + m = r, Cartan iff r in Z."""
    r = Fraction(r)
    rs = alg.rs
    basis = []
    for k, root in enumerate(rs.roots):
        m = r - x.root_value(root)
        if m.denominator == 1:
            basis.append((k, int(m)))
    if r.denominator == 1:
        basis.extend((alg.h_index(i), int(r)) for i in range(rs.rank))
    basis.sort()
    return GradedPiece(x, r, tuple(basis))


def barycenter(rs) -> ApartmentPoint:
    h = rs.coxeter_number
    return ApartmentPoint(tuple(Fraction(1, h) for _ in range(rs.rank)))


def origin(rs) -> ApartmentPoint:
    return ApartmentPoint(tuple(Fraction(0) for _ in range(rs.rank)))


# ---------------------------------------------------------------------------
# Killing form and residue pairing
# ---------------------------------------------------------------------------


def killing_matrix(alg: ChevalleyAlgebra) -> dict[tuple[int, int], int]:
    """Nonzero entries of tr(ad a ad b) on basis pairs."""
    cached = getattr(alg, "_killing", None)
    if cached is not None:
        return cached
    ads = [alg.ad_sparse(AlgebraElement({k: 1})) for k in range(alg.dim)]
    out = {}
    for a in range(alg.dim):
        A = ads[a]
        for b in range(alg.dim):
            B = ads[b]
            tr = 0
            for k, row in enumerate(A):
                for j, v in row.items():
                    w = B[j].get(k)
                    if w:
                        tr += v * w
            if tr:
                out[(a, b)] = tr
    alg._killing = out
    return out


def killing_form(alg: ChevalleyAlgebra, X: AlgebraElement, Y: AlgebraElement):
    K = killing_matrix(alg)
    acc = 0
    for (a, b), v in K.items():
        xa, yb = X.coeffs.get(a), Y.coeffs.get(b)
        if xa is not None and yb is not None:
            acc = acc + xa * yb * v
    return acc


def _as_series(c) -> PuiseuxSeries:
    return c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c)


def residue_pairing(alg: ChevalleyAlgebra, X: AlgebraElement, Y: AlgebraElement) -> Fraction:
    """Coefficient of t^0 in the Killing form of Y and X."""
    for E in (X, Y):
        for c in E.coeffs.values():
            if isinstance(c, PuiseuxSeries) and c.b > 1:
                raise RamifiedInput("the residue pairing is defined on unramified loops")
    Xs, Ys = X.map(_as_series), Y.map(_as_series)
    val = killing_form(alg, Ys, Xs)
    if not isinstance(val, PuiseuxSeries):
        return Fraction(val)
    return val.coefficient(0) or Fraction(0)


# ---------------------------------------------------------------------------
# fundamental strata
# ---------------------------------------------------------------------------


class _ProbeCache:
    """Decides non-nilpotency of spans of basis vectors, memoized by support.

    Spans of root vectors inside an open half-space are nilpotent with an
    exact certificate; everything else goes through the span probe.
    """

    def __init__(self, alg: ChevalleyAlgebra, seed: int = 0, trials: int = 5):
        self.alg = alg
        self.seed = seed
        self.trials = trials
        self.cache: dict[frozenset, bool] = {}
        self.halfspace = 0
        self.witnessed = 0
        self.fallback = 0

    def __call__(self, support: frozenset) -> bool:
        hit = self.cache.get(support)
        if hit is None:
            if root_span_in_halfspace(self.alg, support):
                self.halfspace += 1
                hit = False
            else:
                elems = [AlgebraElement({k: 1}) for k in sorted(support)]
                probe = probe_span(self.alg, elems, random.Random(self.seed), self.trials)
                if probe.fallback_used:
                    self.fallback += 1
                    log.info("span probe fell back to prime coefficients on %d vectors",
                             len(elems))
                else:
                    self.witnessed += 1
                hit = probe.nonnilpotent
            self.cache[support] = hit
        return hit


def fundamental_probe(alg: ChevalleyAlgebra, x: ApartmentPoint, r, seed: int = 0,
                      trials: int = 5) -> SpanProbe | None:
    """The span probe for the depth-r piece at x, or None if that piece is zero."""
    piece = graded_piece(alg, x, -Fraction(r))
    if not piece:
        return None
    elems = piece.elements(alg, specialize=True)
    return probe_span(alg, elems, random.Random(seed), trials)


def has_fundamental_stratum_at_depth(alg: ChevalleyAlgebra, x: ApartmentPoint, r,
                                     seed: int = 0) -> bool:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("depth must be positive")
    probe = fundamental_probe(alg, x, r, seed)
    return probe is not None and probe.nonnilpotent


@dataclass
class ScanResult:
    depth: Fraction
    denominator_bound: int
    method: str
    points: list[ApartmentPoint] = field(default_factory=list)
    flats_visited: int = 0
    grid_points: int = 0
    spans_probed: int = 0
    halfspace_certificates: int = 0
    nonnilpotent_witnesses: int = 0
    probe_fallbacks: int = 0
    subtrees_pruned: int = 0


def default_denominator_bound(rs) -> int:
    return 2 * rs.coxeter_number * reduce(lcm, rs.marks, 1)


def grid_size(rs, D: int) -> int:
    """Number of points a = k/D in the closed alcove (sum c_i k_i <= D)."""
    counts = [0] * (D + 1)
    counts[0] = 1
    for c in rs.marks:
        for s in range(c, D + 1):
            counts[s] += counts[s - c]
    return sum(counts)


def candidate_depths(rs, D: int, below: Fraction) -> list[Fraction]:
    """Depths in (0, below) at which a grid point can have a nonzero graded piece.

    At a grid point every alpha(x) lies in (1/D)Z, so a nonzero piece of
    degree -r needs r in (1/D)Z; other rationals have empty pieces everywhere.
    """
    out = []
    k = 1
    while Fraction(k, D) < below:
        out.append(Fraction(k, D))
        k += 1
    return out


def scan_alcove(alg: ChevalleyAlgebra, r, denominator_bound: int, method: str = "auto",
                seed: int = 0) -> list[ApartmentPoint]:
    return scan_alcove_report(alg, r, denominator_bound, method, seed).points


def scan_alcove_report(alg: ChevalleyAlgebra, r, denominator_bound: int,
                       method: str = "auto", seed: int = 0) -> ScanResult:
    """Grid points of the closed alcove (denominators dividing the bound) with a
    fundamental stratum of depth r, in lexicographic order.

    ``grid`` visits every grid point.  ``flats`` walks the flats of the affine
    arrangement {beta(a) = v} that meet the alcove, stops at the first
    fundamental flat on each branch (a larger root set only adds elements to
    the span), and lists the grid points on those flats.  Both return the same
    set; ``auto`` picks grid for small grids.
    """
    r = Fraction(r)
    rs = alg.rs
    D = denominator_bound
    if r <= 0:
        raise ValueError("depth must be positive")
    if D < rs.coxeter_number:
        raise ValueError("denominator bound must be at least h")
    if method == "auto":
        method = "grid" if grid_size(rs, D) <= 5000 else "flats"
    res = ScanResult(r, D, method)
    if (r * D).denominator != 1:
        return res
    probe = _ProbeCache(alg, seed)
    if method == "grid":
        _scan_grid(alg, r, D, probe, res)
    elif method == "flats":
        _scan_flats(alg, r, D, probe, res)
    else:
        raise ValueError(f"unknown scan method {method!r}")
    res.points = sorted(set(res.points))
    res.spans_probed = len(probe.cache)
    res.halfspace_certificates = probe.halfspace
    res.nonnilpotent_witnesses = probe.witnessed
    res.probe_fallbacks = probe.fallback
    return res


def _grid_points(marks: Sequence[int], D: int):
    r = len(marks)

    def rec(i, budget, prefix):
        if i == r:
            yield prefix
            return
        for k in range(budget // marks[i] + 1):
            yield from rec(i + 1, budget - k * marks[i], prefix + (k,))

    yield from rec(0, D, ())


def _scan_grid(alg, r, D, probe, res: ScanResult) -> None:
    rs = alg.rs
    if grid_size(rs, D) > GRID_POINT_LIMIT:
        raise ValueError("grid too large for the literal scan; use method='flats'")
    target = int(r * D)
    roots = rs.roots
    cartan = frozenset(alg.h_index(i) for i in range(rs.rank)) if r.denominator == 1 else None
    for ks in _grid_points(rs.marks, D):
        res.grid_points += 1
        # root line at t^m has degree (n.k)/D + m; it sits in degree -r iff n.k = -rD mod D
        support = frozenset(j for j, n in enumerate(roots)
                            if (sum(a * b for a, b in zip(n, ks)) + target) % D == 0)
        if cartan:
            support |= cartan
        if support and probe(support):
            res.points.append(ApartmentPoint(tuple(Fraction(k, D) for k in ks)))


def _affine_hyperplanes(rs, r: Fraction) -> list[tuple[int, Fraction]]:
    """(positive root index, value v) with v in [0, 1] and v = +-r mod 1."""
    vals = set()
    for s in (r, -r):
        m = ceil(-s)
        while s + m <= 1:
            vals.add(s + m)
            m += 1
    return [(k, v) for k in range(rs.n_positive) for v in sorted(vals)]


def _hyperplane_support(rs, r: Fraction, k: int, v: Fraction) -> list[tuple[int, int]]:
    """Basis lines (root index, t-power) of degree -r on {beta_k(a) = v}."""
    out = []
    if ((v - r) % 1) == 0:
        out.append((rs.negative(k), int(v - r)))
    if ((v + r) % 1) == 0:
        out.append((k, int(-r - v)))
    return out


def region_obstruction(alg: ChevalleyAlgebra, r: Fraction, lines) -> list | None:
    """Exact proof that every degree -r span using only ``lines`` is nilpotent,
    at every point of the apartment where those lines have degree -r.

    A root line (gamma, m) has degree -r at a exactly when gamma(a) = -(r + m).
    If a functional (phi, mu) is positive on every vector (gamma, r + m), then
    at any such point a the functional phi - mu * (evaluation at a) is positive
    on every root of the support, so the span lies in a positively graded
    nilpotent subalgebra.  Existence is decided exactly (Gordan's alternative).
    Returns None when such a functional exists (the region is certified) and
    otherwise the lines carrying positive weight in a dependency among the
    vectors (Cartan lines are an obstruction by themselves).
    """
    lines = sorted(lines)
    cart = [ln for ln in lines if alg.is_cartan(ln[0])]
    if cart:
        return cart
    vecs = [list(alg.rs.roots[k]) + [r + m] for k, m in lines]
    w = positive_dependency(vecs)
    if w is None:
        return None
    return [ln for ln, c in zip(lines, w) if c]


def _solve_square(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n = len(M)
    A = [row[:] + [v] for row, v in zip(M, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n] for row in A]


def flat_alcove_vertices(rs, rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Vertices of {a : rows . (a, -1) = 0} intersected with the closed alcove.

    ``rows`` must be in reduced echelon form.  Vertices are the basic
    feasible solutions in barycentric coordinates lambda_i = c_i a_i,
    lambda_0 = 1 - sum lambda_i.
    """
    r = rs.rank
    c = rs.marks
    A = [[Fraction(0)] + [Fraction(row[i]) / c[i] for i in range(r)] for row in rows]
    b = [Fraction(row[r]) for row in rows]
    A.append([Fraction(1)] * (r + 1))
    b.append(Fraction(1))
    m = len(A)
    out = set()
    for cols in combinations(range(r + 1), m):
        lam_b = _solve_square([[row[j] for j in cols] for row in A], b)
        if lam_b is None or any(v < 0 for v in lam_b):
            continue
        lam = [Fraction(0)] * (r + 1)
        for j, v in zip(cols, lam_b):
            lam[j] = v
        out.add(tuple(lam[i + 1] / c[i] for i in range(r)))
    return sorted(out)


def _scan_flats(alg, r, D, probe, res: ScanResult) -> None:
    """Branch and bound over (flat, excluded hyperplanes) regions.

    A region is the set of alcove points on the flat and off every excluded
    hyperplane.  It is discarded when the lines it can reach admit a region
    certificate.  Otherwise the certificate's obstruction names hyperplanes
    W; a point of the region either lies on all of W, or there is a first
    one it misses.  These cases cover the region and each one shrinks it.
    """
    rs = alg.rs
    rank = rs.rank
    H = _affine_hyperplanes(rs, r)
    rows_of = [[Fraction(x) for x in rs.roots[k]] + [v] for k, v in H]
    lines_of = [_hyperplane_support(rs, r, k, v) for k, v in H]
    plane_of = {ln: i for i, lns in enumerate(lines_of) for ln in lns}
    cartan = [(alg.h_index(i), int(r)) for i in range(rank)] if r.denominator == 1 else []

    def restrict(ech, piv, new_rows):
        R, P = rref(list(ech) + [list(x) for x in new_rows], rank + 1)
        if rank in P:
            return None
        return R, P

    fundamental = []
    visited = set()
    stack = [(([], []), frozenset())]
    while stack:
        (ech, piv), X = stack.pop()
        verts = flat_alcove_vertices(rs, ech)
        if not verts:
            continue
        closure, meeting = [], []
        for i, row in enumerate(rows_of):
            vals = [sum((x * a for x, a in zip(row, vert) if x), Fraction(0)) - row[rank]
                    for vert in verts]
            if min(vals) > 0 or max(vals) < 0:
                continue
            if not any(vals):  # every point of the region lies on it
                closure.append(i)
            else:
                meeting.append(i)
        key = (frozenset(closure), X)
        if key in visited or X.intersection(closure):
            continue
        visited.add(key)
        res.flats_visited += 1
        own = set(cartan).union(*(lines_of[i] for i in closure))
        if own and probe(frozenset(k for k, _ in own)):
            fundamental.append(ech)
            continue
        reach = set(own)
        for i in meeting:
            if i not in X:
                reach.update(lines_of[i])
        obstruction = region_obstruction(alg, r, reach) if reach else None
        if obstruction is None:
            res.subtrees_pruned += 1
            continue
        W = sorted({plane_of[ln] for ln in obstruction if ln in plane_of} - set(closure))
        if not W:
            # the flat's own lines are not certified but the probe found them
            # nilpotent: split on every hyperplane meeting the flat
            W_split = [i for i in meeting if i not in X]
            for i in W_split:
                sub = restrict(ech, piv, [rows_of[i]])
                if sub is not None:
                    stack.append((sub, X))
            continue
        sub = restrict(ech, piv, [rows_of[i] for i in W])
        if sub is not None:
            stack.append((sub, X))
        for j, i in enumerate(W):
            sub = restrict(ech, piv, [rows_of[k] for k in W[:j]]) if j else (ech, piv)
            if sub is not None:
                stack.append((sub, X | {i}))
    for ech in fundamental:
        for x in _grid_points_on_flat(rs, ech, D):
            res.points.append(x)
            res.grid_points += 1


def _grid_points_on_flat(rs, ech, D: int):
    rank = rs.rank
    R, P = rref(ech, rank + 1) if ech else ([], [])
    free = [i for i in range(rank) if i not in P]
    ranges = [range(D // rs.marks[i] + 1) for i in free]
    for ks in product(*ranges):
        a = [Fraction(0)] * rank
        for i, k in zip(free, ks):
            a[i] = Fraction(k, D)
        ok = True
        for row, p in zip(R, P):
            val = row[rank] - sum((row[j] * a[j] for j in free), Fraction(0))
            if (val * D).denominator != 1 or val < 0:
                ok = False
                break
            a[p] = val
        if not ok:
            continue
        x = ApartmentPoint(tuple(a))
        if x.in_alcove(rs.marks):
            yield x
