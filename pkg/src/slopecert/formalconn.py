"""Formal connections in Jordan form over ramified covers.

A Jordan form over u = t^(1/b) is d + (h + n) du/u with h a finite 𝔥-valued
series in u^(-1) and n a constant nilpotent commuting with every coefficient
of h.  Cartan vectors are stored in simple-coroot coordinates (sum y_i h_i).
Pole orders are always reported in t-units.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Sequence

from .chevalley import (AlgebraElement, ChevalleyAlgebra, build_chevalley, is_nilpotent,
                        root_span_in_halfspace)
from .exact import CycloNum, PuiseuxSeries, field_for, format_rational, ord_pole, parse_rational
from .linalg import normal_form, nullspace
from .rootdata import (DEFAULT_BUDGET, RootSystem, WeylElement, build_root_system,
                       coxeter_element, enumerate_weyl, parse_type)
from .weyleigen import (TheoremViolation, count_N, cyclotomic_combination, in_v_b,
                        type_a_diagonal, v_b_components)


class InvalidJordanForm(ValueError):
    def __init__(self, clauses: Sequence[str]):
        super().__init__("invalid Jordan form: " + "; ".join(clauses))
        self.clauses = tuple(clauses)


class NonIntegralIrregularity(ValueError):
    pass


class RegularSingularInput(ValueError):
    pass


class ZeroScalar(ValueError):
    pass


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


def _is_zero_vector(y: Sequence) -> bool:
    return not any(y)


@dataclass(frozen=True)
class JordanConnection:
    """d + (sum_e y_e u^e + n) du/u with u^b = t.

    ``h_part`` holds (exponent <= 0, coroot coordinates) pairs; equal exponents
    are merged and zero vectors dropped.  ``weyl_witness`` optionally names a
    Weyl element having the leading coefficient as an eigenvector with
    primitive eigenvalue, which makes the membership check in V(b) direct.
    """

    rs: RootSystem
    b: int
    h_part: tuple = ()
    n_part: AlgebraElement = field(default_factory=AlgebraElement)
    weyl_witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if int(self.b) < 1:
            raise ValueError("ramification must be a positive integer")
        merged: dict[int, list] = {}
        for e, y in self.h_part:
            y = list(y)
            if e in merged:
                merged[e] = [a + c for a, c in zip(merged[e], y)]
            else:
                merged[e] = y
        clean = tuple((int(e), tuple(y)) for e, y in sorted(merged.items())
                      if not _is_zero_vector(y))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "h_part", clean)

    @property
    def depth(self) -> int:
        """Largest k with a nonzero u^(-k) coefficient (0 if none)."""
        return max((-e for e, _ in self.h_part if e < 0), default=0)

    def coefficient(self, e: int) -> tuple:
        for f, y in self.h_part:
            if f == e:
                return y
        return tuple(0 for _ in range(self.rs.rank))

    def root_series(self, k: int) -> PuiseuxSeries:
        """alpha_k applied to h_part, as a series in t."""
        rs = self.rs
        terms = {e: rs.evaluate(k, rs.hvec_from_coroot(y)) for e, y in self.h_part}
        return PuiseuxSeries(terms, self.b)


@dataclass(frozen=True)
class GLDiagonalConnection:
    """d + diag(h_1..h_n) dt/t with finite Puiseux entries."""

    entries: tuple[PuiseuxSeries, ...]

    def __post_init__(self):
        ents = tuple(self.entries)
        for s in ents:
            if not isinstance(s, PuiseuxSeries) or s.truncation is not None:
                raise ValueError("diagonal entries must be finite Puiseux series")
        object.__setattr__(self, "entries", ents)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def b(self) -> int:
        out = 1
        for s in self.entries:
            out = out * s.b // gcd(out, s.b)
        return out


@dataclass(frozen=True)
class LeadingTermData:
    """Leading term x t^(-a/b), gcd(a, b) = 1, x in coroot coordinates."""

    x: tuple
    a: int
    b: int

    def __post_init__(self):
        if gcd(self.a, self.b) != 1 or self.a < 1 or self.b < 1:
            raise ValueError("exponent must be a reduced positive fraction")
        if _is_zero_vector(self.x):
            raise ValueError("leading coefficient must be nonzero")

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.a, self.b)


def u_series(terms: dict, b: int) -> PuiseuxSeries:
    """sum c_e u^e with u^b = t."""
    return PuiseuxSeries(terms, b)


# ---------------------------------------------------------------------------
# validation and invariants
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    cartan_valued: bool
    commutes: bool
    nilpotent: bool
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.cartan_valued and self.commutes and self.nilpotent


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, CycloNum)) and not isinstance(v, bool)


def validate(conn: JordanConnection, alg: ChevalleyAlgebra | None = None,
             strict: bool = True) -> ValidationReport:
    """Check the three defining conditions separately; raise on failure when strict."""
    rs = conn.rs
    alg = alg or build_chevalley(rs)
    msgs = []

    cartan = True
    for e, y in conn.h_part:
        if e > 0:
            cartan = False
            msgs.append(f"h_part exponent {e} is positive")
        if len(y) != rs.rank or not all(_is_scalar(v) for v in y):
            cartan = False
            msgs.append(f"h_part coefficient at u^{e} is not a vector in 𝔥")

    commutes = True
    if cartan:
        for e, y in conn.h_part:
            br = alg.bracket(alg.cartan_element(y), conn.n_part)
            if br:
                commutes = False
                msgs.append(f"[h_{e}, n] != 0 (support {[alg.basis_label(k) for k in br.support()]})")

    n = conn.n_part
    if not all(_is_scalar(v) for v in n.coeffs.values()):
        nilpotent = False
        msgs.append("n_part has non-constant coefficients")
    elif any(alg.is_cartan(k) for k in n.support()):
        nilpotent = is_nilpotent(alg, n)
    else:
        # a root-vector span in an open half-space is nilpotent by the grading
        nilpotent = root_span_in_halfspace(alg, n.support()) or is_nilpotent(alg, n)
    if not nilpotent:
        msgs.append("n_part is not nilpotent")

    rep = ValidationReport(cartan, commutes, nilpotent, msgs)
    if strict and not rep.valid:
        raise InvalidJordanForm(msgs)
    return rep


def _assert_integral(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise NonIntegralIrregularity(
            f"{what} = {q} is not an integer; the input is not a genuine Jordan form")
    return int(q)


def slope(conn: JordanConnection) -> Fraction:
    return Fraction(conn.depth, conn.b)


def gl_irregularity(conn: GLDiagonalConnection) -> int:
    total = sum((ord_pole(s) for s in conn.entries), Fraction(0))
    return _assert_integral(total, "irregularity")


def adjoint_irregularity(conn: JordanConnection) -> int:
    """sum over all roots of the pole order of alpha(h_part); Cartan directions give 0."""
    total = sum((ord_pole(conn.root_series(k)) for k in range(len(conn.rs.roots))), Fraction(0))
    return _assert_integral(total, "adjoint irregularity")


def adjoint_irregularity_exact(conn: JordanConnection) -> Fraction:
    """The same sum without the integrality assertion."""
    return sum((ord_pole(conn.root_series(k)) for k in range(len(conn.rs.roots))), Fraction(0))


def leading_term_data(conn: JordanConnection) -> LeadingTermData:
    k = conn.depth
    if k == 0:
        raise RegularSingularInput("slope is 0; there is no polar leading term")
    q = Fraction(k, conn.b)
    return LeadingTermData(conn.coefficient(-k), q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# type A: the GL_n picture
# ---------------------------------------------------------------------------


def gl_from_type_a(conn: JordanConnection) -> GLDiagonalConnection:
    """Embed 𝔥 of A_{n-1} as traceless diagonals; entry k is a series in t."""
    rs = conn.rs
    if rs.type_label != "A":
        raise ValueError("the GL embedding is defined for type A only")
    n = rs.rank + 1
    per = [dict() for _ in range(n)]
    for e, y in conn.h_part:
        d = type_a_diagonal(rs.hvec_from_coroot(y))
        for k in range(n):
            per[k][e] = d[k]
    return GLDiagonalConnection(tuple(u_series(p, conn.b) for p in per))


def difference_diagonal(conn: GLDiagonalConnection) -> GLDiagonalConnection:
    """The diagonal of the induced connection on End: entries h_i - h_j, i != j."""
    E = conn.entries
    return GLDiagonalConnection(tuple(E[i] - E[j] for i in range(len(E))
                                      for j in range(len(E)) if i != j))


# ---------------------------------------------------------------------------
# the chain Irr >= N k/b >= N/b >= r
# ---------------------------------------------------------------------------


@dataclass
class ChainLink:
    label: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass
class MainInequalityReport:
    type_name: str
    rank: int
    coxeter_number: int
    irregularity: Fraction
    N: int
    a: int
    b: int
    genuine: bool
    membership_method: str
    links: list[ChainLink] = field(default_factory=list)
    eigen_bound_holds: bool = True
    equality: bool = False
    conclusion: str = ""
    passed: bool = True

    def chain_text(self) -> str:
        irr, N, a, b, r = self.irregularity, self.N, self.a, self.b, self.rank
        return (f"{format_rational(irr)} >= {N}*({a}/{b}) >= {N}/{b} >= {r}")


def _is_primitive_root(lam, order: int) -> bool:
    if lam ** order != 1:
        return False
    return all(lam ** d != 1 for d in range(1, order) if order % d == 0)


def _eigen_with_witness(w: WeylElement, x: Sequence, order: int) -> bool:
    """w x = lam x for a primitive order-th root of unity lam."""
    wx = w.act(x)
    i = next(i for i, v in enumerate(x) if v)
    lam = wx[i] / x[i]
    if any(a != lam * v for a, v in zip(wx, x)):
        return False
    return _is_primitive_root(lam, order)


def leading_in_v_b(conn: JordanConnection, lead: LeadingTermData,
                   budget: int = DEFAULT_BUDGET) -> tuple[bool, str]:
    """Is the leading coefficient in V(b) for the reduced denominator b?"""
    rs = conn.rs
    x = rs.hvec_from_coroot(lead.x)
    if lead.b == 1:
        return True, "V(1) is all of 𝔥"
    if conn.weyl_witness is not None:
        w = weyl_from_word(rs, conn.weyl_witness)
        if _eigen_with_witness(w, x, lead.b):
            return True, "eigenvector of the supplied Weyl element"
    return in_v_b(v_b_components(rs, lead.b, budget), x), "exact span test against every component of V(b)"


def check_main_inequality(conn: JordanConnection, alg: ChevalleyAlgebra | None = None,
                          budget: int = DEFAULT_BUDGET, strict: bool = True,
                          validated: bool = False) -> MainInequalityReport:
    """Verify Irr(Ad) >= N(x) k/b >= N(x)/b >= r, N(x) >= b r, and the equality case.

    A leading coefficient outside V(b) cannot come from a connection over the
    unramified disk; that is reported as non-genuine rather than as a failure
    of the inequality.
    """
    rs = conn.rs
    if not validated:
        validate(conn, alg)
    lead = leading_term_data(conn)
    irr = adjoint_irregularity_exact(conn)
    x = rs.hvec_from_coroot(lead.x)
    N = count_N(rs, x)
    a, b, r, h = lead.a, lead.b, rs.rank, rs.coxeter_number
    genuine, method = leading_in_v_b(conn, lead, budget)
    rep = MainInequalityReport(rs.name, r, h, irr, N, a, b, genuine, method)
    Nk = Fraction(N * a, b)
    Nb = Fraction(N, b)
    rep.links = [
        ChainLink("Irr(Ad) >= N(x) k/b", irr, Nk, irr >= Nk),
        ChainLink("N(x) k/b >= N(x)/b", Nk, Nb, Nk >= Nb),
        ChainLink("N(x)/b >= rank", Nb, Fraction(r), Nb >= r),
    ]
    rep.eigen_bound_holds = N >= b * r
    rep.equality = irr == r
    problems = [f"link '{l.label}' fails: {l.lhs} < {l.rhs}" for l in rep.links if not l.holds]
    if not rep.eigen_bound_holds:
        problems.append(f"N(x) = {N} < b r = {b * r}")
    if irr.denominator != 1:
        problems.append(f"Irr(Ad) = {irr} is not an integer")
    if rep.equality:
        if b == h and a == 1:
            rep.conclusion = f"Irr(Ad) = rank forces b = h = {h}, k = 1: slope = 1/{h}"
        else:
            problems.append(f"Irr(Ad) = rank but (k, b) = ({a}, {b}) != (1, {h})")
    if not genuine:
        rep.passed = False
        rep.conclusion = ("leading coefficient is not in V(b): not the Jordan form of any "
                          "connection over the unramified disk")
        return rep
    if problems:
        rep.passed = False
        if strict:
            raise TheoremViolation(f"{rs.name}: " + "; ".join(problems)
                                   + f" [chain {rep.chain_text()}, x = {list(lead.x)}]")
    return rep


# ---------------------------------------------------------------------------
# matrices over Puiseux series: pullback and constant gauge
# ---------------------------------------------------------------------------


def pullback(matrix_form: AlgebraElement, c: int) -> AlgebraElement:
    """t := u^c; the dt/t frame becomes c du/u."""
    if c < 1:
        raise ValueError("pullback degree must be positive")
    return matrix_form.map(lambda s: _as_series(s).substitute(c) * c)


def _as_series(s) -> PuiseuxSeries:
    return s if isinstance(s, PuiseuxSeries) else PuiseuxSeries.constant(s)


def matrix_pole_order(matrix_form: AlgebraElement) -> Fraction:
    """Largest pole order among the coefficients (in the variable of the frame)."""
    return max((ord_pole(_as_series(s)) for s in matrix_form.coeffs.values()),
               default=Fraction(0))


def torus_character(rs: RootSystem, root: Sequence[int], values: Sequence):
    """prod alpha_i(g)^{n_i} for root = sum n_i alpha_i."""
    out = Fraction(1)
    for n, v in zip(root, values):
        if isinstance(v, int):
            v = Fraction(v)
        if n:
            out = out * (v ** n if n > 0 else (1 / v) ** (-n))
    return out


def _check_torus(rs: RootSystem, values: Sequence) -> None:
    if len(values) != rs.rank:
        raise ValueError(f"expected {rs.rank} torus values")
    if not all(values):
        raise ZeroScalar("torus values must be nonzero")


def gauge_constant(alg: ChevalleyAlgebra, matrix_form: AlgebraElement,
                   torus_values: Sequence) -> AlgebraElement:
    """Ad(g) for a constant torus element g; the (dg)g^-1 term vanishes."""
    rs = alg.rs
    _check_torus(rs, torus_values)
    out = {}
    for k, v in matrix_form.coeffs.items():
        if alg.is_cartan(k):
            out[k] = v
        else:
            out[k] = v * torus_character(rs, rs.roots[k], torus_values)
    return AlgebraElement(out)


def gauge_constant_connection(alg: ChevalleyAlgebra, conn: JordanConnection,
                              torus_values: Sequence) -> JordanConnection:
    """The torus fixes h_part and rescales the root vectors in n_part."""
    return JordanConnection(conn.rs, conn.b, conn.h_part,
                            gauge_constant(alg, conn.n_part, torus_values), conn.weyl_witness)


# ---------------------------------------------------------------------------
# Weyl words
# ---------------------------------------------------------------------------


def reduced_word(w: WeylElement) -> tuple[int, ...]:
    """Indices i_1..i_l (1-based) with w = s_{i_1} ... s_{i_l}."""
    rs = w.rs
    npos = rs.n_positive
    word = []
    sr = rs.simple_reflections
    while not w.is_identity():
        # w(alpha_i) < 0 means w = w' s_i with shorter w'
        i = next(i for i in range(rs.rank) if w.perm[i] >= npos)
        word.append(i + 1)
        w = w * sr[i]
    return tuple(reversed(word))


def weyl_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    w = rs.identity()
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple reflection index {i} out of range")
        w = w * rs.simple_reflections[i - 1]
    return w


# ---------------------------------------------------------------------------
# random Jordan forms from Weyl eigenvectors
# ---------------------------------------------------------------------------


def _eigenbasis(w: WeylElement, lam, r: int) -> tuple:
    M = w.matrix
    rows = [[M[i][j] - (lam if i == j else 0) for j in range(r)] for i in range(r)]
    return normal_form(nullspace(rows, r))


def random_jordan_form(rs: RootSystem, rng: random.Random, max_depth: int = 3,
                       regular_singular_rate: float = 0.1, coxeter_rate: float = 0.15,
                       budget: int = DEFAULT_BUDGET) -> JordanConnection:
    """A Jordan form whose coefficients descend to the unramified disk.

    Pick w in W and b with a nonzero primitive zeta_b-eigenspace; the u^(-j)
    coefficient is a random vector with w x = zeta_b^(-j) x, so the leading
    term lies in V(b/gcd(k, b)).  n_part is a random combination of positive
    root vectors vanishing on every coefficient.  A share of draws uses the
    Coxeter element with b = h and k = 1, where Irr(Ad) = rank.
    """
    r = rs.rank
    W = enumerate_weyl(rs, budget)
    while True:
        if rng.random() < coxeter_rate:
            w = coxeter_element(rs)
            b = rs.coxeter_number
            z, _ = field_for(b)
            k = 1
            lead_basis = _eigenbasis(w, z ** (-1), r)
            break
        w = rng.choice(W)
        o = w.order
        bs = [d for d in range(1, o + 1) if o % d == 0
              and _eigenbasis(w, field_for(d)[0], r)]
        b = rng.choice(bs)
        z, _ = field_for(b)
        if rng.random() < regular_singular_rate:
            k = 0
        else:
            k = rng.randint(1, max_depth * b)
        lead_basis = _eigenbasis(w, z ** (-k) if k else 1, r)
        if lead_basis:
            break
    h_part = []
    for j in range(k, -1, -1):
        if j != k and rng.random() < 0.5:
            continue
        basis = lead_basis if j == k else _eigenbasis(w, z ** (-j) if j else 1, r)
        if not basis:
            continue
        x = cyclotomic_combination(basis, rng, b, scale=5)
        h_part.append((-j, tuple(rs.hvec_to_coroot(x))))
    xs = [rs.hvec_from_coroot(y) for _, y in h_part]
    free = [k2 for k2 in range(rs.n_positive) if all(not rs.evaluate(k2, x) for x in xs)]
    n = {}
    for k2 in free:
        if rng.random() < 0.5:
            n[k2] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return JordanConnection(rs, b, tuple(h_part), AlgebraElement(n), reduced_word(w))


# ---------------------------------------------------------------------------
# the sl_2 reduction of the A_1 Frenkel-Gross matrix
# ---------------------------------------------------------------------------


def _m2(a, b, c, d) -> list[list[PuiseuxSeries]]:
    return [[_as_series(a), _as_series(b)], [_as_series(c), _as_series(d)]]


def _m2_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _m2_sub(A, B):
    return [[A[i][j] - B[i][j] for j in range(2)] for i in range(2)]


def _m2_map(A, f):
    return [[f(A[i][j]) for j in range(2)] for i in range(2)]


def _gauge_2x2(A, g, g_inv):
    """g A g^-1 - (u d/du g) g^-1."""
    dg = _m2_map(g, lambda s: s.euler_derivative())
    return _m2_sub(_m2_mul(_m2_mul(g, A), g_inv), _m2_mul(dg, g_inv))


def _m2_truncate(A, order: int):
    return _m2_map(A, lambda s: PuiseuxSeries({e: c for e, c in s.terms.items()
                                               if Fraction(e, s.b) < order}, s.b))


def _traceless(A):
    half = (A[0][0] + A[1][1]) * Fraction(1, 2)
    return [[A[0][0] - half, A[0][1]], [A[1][0], A[1][1] - half]]


def _m2_text(A, var: str = "u") -> list[list[str]]:
    return [[repr(s).replace("t^", var + "^") for s in row] for row in A]


@dataclass
class Sl2Reduction:
    connection: JordanConnection
    s: Fraction
    order: int
    steps: list[tuple[str, list[list[str]]]]
    residual_valuation: Fraction


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sl2_fg_reduction(x0=1, x1=1, order: int = 6) -> Sl2Reduction:
    """Reduce d + [[0, x0 t^-1], [x1, 0]] dt/t to Jordan form, by explicit gauge steps.

    1. pull back along t = u^2;  2. shear by diag(u, 1) (in the adjoint group,
    so only the traceless part is kept);  3. conjugate by the constant
    eigenvector matrix of the u^-1 coefficient;  4. remove the off-diagonal
    terms of u^0..u^(order-2) by gauges 1 + u^m Y.  Needs x0 x1 to be a
    rational square s^2.
    """
    x0, x1 = Fraction(x0), Fraction(x1)
    if not x0 or not x1:
        raise ZeroScalar("Frenkel-Gross scalars must be nonzero")
    s = _rational_sqrt(x0 * x1)
    if s is None or s == 0:
        raise ValueError("x0 x1 must be the square of a nonzero rational")
    steps = []
    tinv = PuiseuxSeries.monomial(1, -1)
    A = _m2(0, tinv * x0, x1, 0)
    steps.append(("matrix in the dt/t frame", _m2_text(A, "t")))
    A = _m2_map(A, lambda q: q.substitute(2) * 2)
    steps.append(("pullback t = u^2 (du/u frame)", _m2_text(A)))
    u = PuiseuxSeries.monomial(1, 1)
    uinv = PuiseuxSeries.monomial(1, -1)
    A = _traceless(_gauge_2x2(A, _m2(u, 0, 0, 1), _m2(uinv, 0, 0, 1)))
    steps.append(("shear by diag(u, 1), traceless part", _m2_text(A)))
    P = _m2(x0, x0, s, -s)
    det = -2 * s * x0
    P_inv = _m2(-s / det, -x0 / det, -s / det, x0 / det)
    A = _gauge_2x2(A, P_inv, P)
    steps.append(("conjugate by the eigenvector matrix", _m2_text(A)))
    D = A[0][0].coefficient(-1)
    if A[1][1].coefficient(-1) != -D or D != 2 * s:
        raise AssertionError("u^-1 coefficient was not diagonalized")
    for m in range(1, order):
        c12 = A[0][1].coefficient(m - 1)
        c21 = A[1][0].coefficient(m - 1)
        if not c12 and not c21:
            continue
        # [Y, D h] has entries -2D y12 and 2D y21
        y12, y21 = c12 / (2 * D), -c21 / (2 * D)
        um = PuiseuxSeries.monomial(1, m)
        g = _m2(1, um * y12, um * y21, 1)
        g_inv = _m2(1, um * (-y12), um * (-y21), 1)
        for j in range(2, order // m + 2):
            # (1 + u^m Y)^-1 as a truncated geometric series
            Yj = _m2(0, um * y12, um * y21, 0)
            P_j = Yj
            for _ in range(j - 1):
                P_j = _m2_mul(P_j, Yj)
            sign = -1 if j % 2 else 1
            g_inv = [[g_inv[i][l] + P_j[i][l] * sign for l in range(2)] for i in range(2)]
        A = _m2_truncate(_gauge_2x2(A, g, g_inv), order)
        steps.append((f"remove the off-diagonal u^{m - 1} terms", _m2_text(A)))
    off = [A[0][1], A[1][0]]
    vals = [v for v in (q.valuation() for q in off) if v is not None]
    residual = min(vals) if vals else Fraction(order)
    if residual < order - 1:
        raise AssertionError("off-diagonal terms survived the elimination")
    h_terms = {e: c for e, c in A[0][0].terms.items() if Fraction(e, A[0][0].b) <= 0}
    if any(A[1][1].coefficient(Fraction(e, A[0][0].b)) != -c for e, c in h_terms.items()):
        raise AssertionError("diagonal is not traceless")
    b0 = A[0][0].b
    if b0 != 1:
        raise AssertionError("unexpected ramification in the u-frame")
    # diag(c, -c) = c h_1
    h_part = tuple((e, (c,)) for e, c in h_terms.items())
    rs = build_root_system("A", 1)
    conn = JordanConnection(rs, 2, h_part, AlgebraElement(), (1,))
    return Sl2Reduction(conn, s, order, steps, residual)


# ---------------------------------------------------------------------------
# JSON ingestion
# ---------------------------------------------------------------------------


def _scalar_to_json(v):
    if isinstance(v, CycloNum):
        if v.is_rational():
            return format_rational(v.to_fraction())
        return {"cyclotomic": v.m, "coeffs": [format_rational(c) for c in v.coeffs]}
    return format_rational(v)


def _scalar_from_json(v):
    if isinstance(v, dict):
        return CycloNum(int(v["cyclotomic"]), [parse_rational(c) for c in v["coeffs"]])
    if isinstance(v, (int, str)):
        return parse_rational(v)
    raise ValueError(f"cannot read scalar {v!r}")


def root_label(root: Sequence[int]) -> str:
    return "e(" + ",".join(str(c) for c in root) + ")"


def _parse_root_label(text: str) -> tuple[int, ...]:
    t = text.strip()
    if t.startswith("e(") and t.endswith(")"):
        t = t[2:-1]
    return tuple(int(p) for p in t.split(","))


def connection_to_json(conn: JordanConnection) -> dict:
    rs = conn.rs
    out = {
        "type": rs.name,
        "rank": rs.rank,
        "ramification": conn.b,
        "h_part": [[e, [_scalar_to_json(v) for v in y]] for e, y in conn.h_part],
        "n_part": [[root_label(rs.roots[k]), _scalar_to_json(v)]
                   for k, v in conn.n_part.coeffs.items()],
    }
    if conn.weyl_witness is not None:
        out["weyl_witness"] = list(conn.weyl_witness)
    return out


def connection_from_json(data: dict, allow_large: bool = False) -> JordanConnection:
    label, rank = parse_type(data["type"])
    if "rank" in data and int(data["rank"]) != rank:
        raise ValueError(f"rank {data['rank']} disagrees with type {data['type']}")
    rs = build_root_system(label, rank, allow_large)
    h_part = []
    for e, y in data.get("h_part", []):
        if len(y) != rs.rank:
            raise ValueError(f"h_part vector has length {len(y)}, expected {rs.rank}")
        h_part.append((int(e), tuple(_scalar_from_json(v) for v in y)))
    n = {}
    for lab, v in data.get("n_part", []):
        root = _parse_root_label(lab)
        if tuple(root) not in rs.index:
            raise ValueError(f"{lab} is not a root of {rs.name}")
        n[rs.root_index(root)] = _scalar_from_json(v)
    witness = data.get("weyl_witness")
    return JordanConnection(rs, int(data["ramification"]), tuple(h_part), AlgebraElement(n),
                            tuple(witness) if witness is not None else None)


def dumps_connection(conn: JordanConnection) -> str:
    return json.dumps(connection_to_json(conn), sort_keys=True)


def loads_connection(text: str, allow_large: bool = False) -> JordanConnection:
    return connection_from_json(json.loads(text), allow_large)
