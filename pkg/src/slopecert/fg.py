"""Frenkel-Gross connections: construction, invariants and torus-orbit classification.

The connection is d + (x0 e_{alpha_0} t^-1 + sum x_i e_{-alpha_i}) dt/t with
alpha_0 the highest root and every scalar nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .chevalley import AlgebraElement, ChevalleyAlgebra, is_regular_semisimple
from .exact import PuiseuxSeries
from .formalconn import ZeroScalar, gauge_constant, torus_character
from .linalg import nullspace
from .rootdata import RootSystem
from .strata import barycenter, graded_piece, has_fundamental_stratum_at_depth


class PropertyViolation(AssertionError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FGData:
    """x0 multiplies e_{alpha_0} t^-1; xs[i] multiplies e_{-alpha_{i+1}}."""

    rs: RootSystem
    x0: Any
    xs: tuple

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        if len(self.xs) != self.rs.rank:
            raise ValueError(f"expected {self.rs.rank} scalars x_1..x_r")

    @classmethod
    def ones(cls, rs: RootSystem) -> "FGData":
        return cls(rs, Fraction(1), tuple(Fraction(1) for _ in range(rs.rank)))

    def scalars(self) -> tuple:
        return (self.x0,) + self.xs

    def check_nonzero(self) -> None:
        zeros = [i for i, v in enumerate(self.scalars()) if not v]
        if zeros:
            raise ZeroScalar(f"Frenkel-Gross scalars must be nonzero (zero at positions {zeros})")


@dataclass(frozen=True)
class FGInvariant:
    j: Any


def _highest_index(rs: RootSystem) -> int:
    return rs.root_index(rs.highest_root)


def _neg_simple_index(rs: RootSystem, i: int) -> int:
    return rs.negative(rs.root_index(rs.simple_roots[i]))


def build_fg(alg: ChevalleyAlgebra, data: FGData) -> AlgebraElement:
    """The connection matrix in the dt/t frame, coefficients as Puiseux series."""
    data.check_nonzero()
    rs = alg.rs
    coeffs = {_highest_index(rs): PuiseuxSeries.monomial(data.x0, -1)}
    for i, x in enumerate(data.xs):
        coeffs[_neg_simple_index(rs, i)] = PuiseuxSeries.constant(x)
    return AlgebraElement(coeffs)


def specialize(X: AlgebraElement) -> AlgebraElement:
    """t := 1."""
    return X.map(lambda s: s.evaluate_at_one() if isinstance(s, PuiseuxSeries) else s)


# ---------------------------------------------------------------------------
# the five properties
# ---------------------------------------------------------------------------


@dataclass
class FGReport:
    type_name: str
    rank: int
    coxeter_number: int
    n_roots: int
    slope: Fraction
    support_matches_piece: bool = False
    stratum_fundamental: bool = False
    regular_semisimple: bool = False
    centralizer_dim: int = -1
    s0_dim: int = -1
    s_minus_dim: int = -1
    irregularity: Fraction = Fraction(0)
    clauses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())


def _centralizer_dim(alg: ChevalleyAlgebra, X: AlgebraElement,
                     basis: Sequence[AlgebraElement]) -> int:
    """dim of {v in span(basis) : [X, v] = 0} (basis assumed independent)."""
    cols = [alg.bracket(X, v) for v in basis]
    keys = sorted({k for c in cols for k in c.support()})
    rows = [[c.get(k) for c in cols] for k in keys]
    if not rows:
        return len(basis)
    return len(nullspace(rows, len(basis)))


def verify_fg_properties(alg: ChevalleyAlgebra, data: FGData, strict: bool = True,
                         seed: int = 0) -> FGReport:
    """Certify slope 1/h, a regular semisimple leading term, s(0) = 0,
    dim s(-1/h) = 1 and Irr(Ad) = |Phi|/h = rank, all exactly."""
    rs = alg.rs
    h, r = rs.coxeter_number, rs.rank
    X = build_fg(alg, data)
    rep = FGReport(rs.name, r, h, len(rs.roots), Fraction(1, h))
    x = barycenter(rs)

    # (a) the matrix is exactly the degree -1/h piece at the barycenter
    piece = graded_piece(alg, x, Fraction(-1, h))
    monomial = all(len(s.terms) == 1 for s in X.coeffs.values())
    support = {(k, int(s.valuation())) for k, s in X.coeffs.items()}
    rep.support_matches_piece = monomial and support == set(piece.basis)
    rep.stratum_fundamental = has_fundamental_stratum_at_depth(alg, x, Fraction(1, h), seed)
    X1 = specialize(X)

    # (b) t := 1 is regular semisimple; its centralizer has dimension rank
    rep.regular_semisimple = is_regular_semisimple(alg, X1)
    rep.centralizer_dim = _centralizer_dim(alg, X1, [AlgebraElement({k: 1}) for k in range(alg.dim)])

    # (c) s(0) = 0: the degree-0 piece is 𝔥, and no h in 𝔥 commutes with sum e_{-alpha_i}
    piece0 = graded_piece(alg, x, 0)
    cartan_only = all(alg.is_cartan(k) for k, _ in piece0.basis)
    N = AlgebraElement({_neg_simple_index(rs, i): 1 for i in range(r)})
    rep.s0_dim = _centralizer_dim(alg, N, [alg.h(i) for i in range(r)])
    if not cartan_only:
        rep.s0_dim = -1

    # (d) dim s(-1/h) = 1
    rep.s_minus_dim = _centralizer_dim(alg, X1, piece.elements(alg, specialize=True))

    # (e) Irr(Ad) = slope * |Phi| for a regular semisimple leading term
    rep.irregularity = Fraction(len(rs.roots), h)

    rep.clauses = {
        "slope = 1/h (support is the barycentric piece, stratum fundamental)":
            rep.support_matches_piece and rep.stratum_fundamental,
        "leading term regular semisimple, centralizer of dimension rank":
            rep.regular_semisimple and rep.centralizer_dim == r,
        "s(0) = 0": rep.s0_dim == 0,
        "dim s(-1/h) = 1": rep.s_minus_dim == 1,
        "Irr(Ad) = |Phi|/h = rank": rep.irregularity == r and rep.regular_semisimple,
    }
    if strict and not rep.passed:
        bad = [k for k, v in rep.clauses.items() if not v]
        raise PropertyViolation(f"{rs.name}: failed {bad}", rep)
    return rep


# ---------------------------------------------------------------------------
# torus orbits
# ---------------------------------------------------------------------------


def fg_invariant(rs: RootSystem, data: FGData) -> FGInvariant:
    """j = x0 prod x_i^{c_i}: the weight of x0 is alpha_0 = sum c_i alpha_i and of x_i is -alpha_i."""
    data.check_nonzero()
    j = data.x0
    for x, c in zip(data.xs, rs.marks):
        j = j * x ** c
    return FGInvariant(j)


@dataclass(frozen=True)
class OrbitResult:
    equivalent: bool
    torus_values: tuple | None
    j1: Any
    j2: Any


def h_orbit_equivalent(alg: ChevalleyAlgebra, d1: FGData, d2: FGData) -> OrbitResult:
    """Decide whether a constant torus element carries d1 to d2.

    The equations on e_{-alpha_i} force alpha_i(g) = x_i / y_i, so the solve is
    unique; the remaining equation on e_{alpha_0} holds exactly when j agrees.
    The witness is checked through gauge_constant.
    """
    rs = alg.rs
    j1, j2 = fg_invariant(rs, d1).j, fg_invariant(rs, d2).j
    values = tuple(x / y for x, y in zip(d1.xs, d2.xs))
    moved = gauge_constant(alg, build_fg(alg, d1), values)
    ok = moved == build_fg(alg, d2)
    if ok != (j1 == j2):
        raise PropertyViolation("torus solve disagrees with the monomial invariant",
                                (d1, d2, values))
    return OrbitResult(ok, values if ok else None, j1, j2)


def act_on_data(rs: RootSystem, data: FGData, torus_values: Sequence) -> FGData:
    """The FG data of Ad(g) applied to the connection of ``data``."""
    x0 = data.x0 * torus_character(rs, rs.highest_root, torus_values)
    xs = tuple(x * torus_character(rs, [-c for c in rs.simple_roots[i]], torus_values)
               for i, x in enumerate(data.xs))
    return FGData(rs, x0, xs)
