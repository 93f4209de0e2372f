"""Chevalley basis of a simple Lie algebra and adjoint-matrix tests.

Basis order: e_alpha for every root (in the root system's order), then the
simple coroots h_1..h_r.  Structure constants N_{alpha,beta} = +-(p+1) are
fixed by declaring every extraspecial pair positive and propagating through
the standard identities; Jacobi is verified at build time.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .exact import CycloNum, PuiseuxSeries, lcm
from .linalg import (certify_not_nilpotent, charpoly, in_open_halfspace, is_nilpotent_exact,
                     poly_kills, rank, squarefree_part)
from .rootdata import RootSystem

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgebraElement:
    """A vector over the Chevalley basis; zero coefficients are never stored."""

    coeffs: Mapping[int, Any] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): v for k, v in sorted(self.coeffs.items()) if v}
        object.__setattr__(self, "coeffs", clean)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement({k: v * c for k, v in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def support(self) -> tuple[int, ...]:
        return tuple(self.coeffs)

    def get(self, k: int):
        return self.coeffs.get(k, 0)

    def map(self, f) -> "AlgebraElement":
        return AlgebraElement({k: f(v) for k, v in self.coeffs.items()})


class ChevalleyAlgebra:
    """The simple Lie algebra attached to a root system, in a Chevalley basis."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n_roots = len(rs.roots)
        self.rank = rs.rank
        self.dim = self.n_roots + self.rank
        self.N = _structure_constants(rs)
        self._table = self._bracket_table()

    # -- basis helpers ------------------------------------------------------

    def e(self, root: Sequence[int] | int, c=1) -> AlgebraElement:
        idx = root if isinstance(root, int) else self.rs.root_index(root)
        return AlgebraElement({idx: c})

    def h(self, i: int, c=1) -> AlgebraElement:
        return AlgebraElement({self.n_roots + i: c})

    def h_index(self, i: int) -> int:
        return self.n_roots + i

    def is_cartan(self, k: int) -> bool:
        return k >= self.n_roots

    def basis_label(self, k: int) -> str:
        if k >= self.n_roots:
            return f"h{k - self.n_roots + 1}"
        return "e(" + ",".join(str(c) for c in self.rs.roots[k]) + ")"

    def cartan_element(self, y: Sequence) -> AlgebraElement:
        """sum_i y_i h_i (simple coroot coordinates)."""
        return AlgebraElement({self.n_roots + i: v for i, v in enumerate(y)})

    def cartan_from_root_coords(self, x: Sequence) -> AlgebraElement:
        """The element of 𝔥 identified with sum x_i alpha_i by the invariant form."""
        return self.cartan_element(self.rs.hvec_to_coroot(x))

    def coroot(self, idx: int) -> list[Fraction]:
        """h_alpha in simple coroot coordinates."""
        rs = self.rs
        a = rs.roots[idx]
        L = rs.length2(a)
        return [Fraction(a[i] * rs.gram[i][i], L) for i in range(rs.rank)]

    # -- brackets -----------------------------------------------------------

    def _bracket_table(self) -> list[list[tuple[tuple[int, int], ...]]]:
        rs = self.rs
        n, dim = self.n_roots, self.dim
        T: list[list[tuple]] = [[() for _ in range(dim)] for _ in range(dim)]
        for a in range(n):
            ra = rs.roots[a]
            for b in range(n):
                rb = rs.roots[b]
                s = tuple(x + y for x, y in zip(ra, rb))
                if not any(s):
                    hv = self.coroot(a)
                    assert all(v.denominator == 1 for v in hv)
                    T[a][b] = tuple((n + i, int(v)) for i, v in enumerate(hv) if v)
                elif s in rs.index:
                    T[a][b] = ((rs.index[s], self.N[(a, b)]),)
            for i in range(self.rank):
                c = rs.coroot_pairing(ra, i)
                if c:
                    T[n + i][a] = ((a, c),)
                    T[a][n + i] = ((a, -c),)
        return T

    def bracket_basis(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        return self._table[a][b]

    def bracket(self, X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
        out: dict[int, Any] = {}
        for a, xa in X.coeffs.items():
            row = self._table[a]
            for b, yb in Y.coeffs.items():
                for k, c in row[b]:
                    v = xa * yb * c
                    out[k] = out[k] + v if k in out else v
        return AlgebraElement(out)

    def ad_sparse(self, X: AlgebraElement) -> list[dict[int, Any]]:
        """Rows of ad X as dicts: row k maps column b to the e_k-coefficient of [X, b]."""
        rows: list[dict[int, Any]] = [dict() for _ in range(self.dim)]
        for a, xa in X.coeffs.items():
            row = self._table[a]
            for b in range(self.dim):
                for k, c in row[b]:
                    v = xa * c
                    r = rows[k]
                    r[b] = r[b] + v if b in r else v
        return [{j: v for j, v in r.items() if v} for r in rows]

    def verify_jacobi(self, triples: Iterable[tuple[int, int, int]]) -> None:
        for a, b, c in triples:
            x, y, z = (AlgebraElement({k: 1}) for k in (a, b, c))
            total = (self.bracket(x, self.bracket(y, z)) + self.bracket(y, self.bracket(z, x))
                     + self.bracket(z, self.bracket(x, y)))
            if total:
                raise AssertionError(f"Jacobi fails on basis triple {(a, b, c)}")


def _structure_constants(rs: RootSystem) -> dict[tuple[int, int], int]:
    roots = rs.roots
    index = rs.index
    P = rs.n_positive
    pair = rs.pair

    def add(a, b):
        return index.get(tuple(x + y for x, y in zip(roots[a], roots[b])))

    def sub(a, b):
        return index.get(tuple(x - y for x, y in zip(roots[a], roots[b])))

    def string_p(a, b):
        # largest p with beta - p*alpha a root
        p = 0
        v = list(roots[b])
        while True:
            v = [x - y for x, y in zip(v, roots[a])]
            if tuple(v) not in index:
                return p
            p += 1

    extraspecial: dict[int, tuple[int, int]] = {}
    for xi in range(P):
        for a in range(P):
            b = sub(xi, a)
            if b is not None and b < P:
                extraspecial[xi] = (a, b)
                break

    memo: dict[tuple[int, int], Fraction] = {}

    def N(a, b) -> Fraction:
        s = add(a, b)
        if s is None:
            return Fraction(0)
        key = (a, b)
        if key in memo:
            return memo[key]
        pa, pb = a < P, b < P
        if pa and pb:
            if a > b:
                val = -N(b, a)
            else:
                g, d = extraspecial[s]
                if (a, b) == (g, d):
                    val = Fraction(string_p(a, b) + 1)
                else:
                    Ngd = N(g, d)
                    L = pair(roots[s], roots[s])
                    t1 = t2 = Fraction(0)
                    bg = sub(b, g)
                    if bg is not None:
                        t1 = N(b, rs.negative(g)) * N(a, rs.negative(d)) / rs.length2(roots[bg])
                    ag = sub(a, g)
                    if ag is not None:
                        t2 = N(rs.negative(g), a) * N(b, rs.negative(d)) / rs.length2(roots[ag])
                    val = Fraction(L) / Ngd * (t1 + t2)
        elif not pa and not pb:
            val = -N(rs.negative(a), rs.negative(b))
        elif not pa:
            val = -N(b, a)
        else:
            th = s
            if th < P:
                val = -Fraction(rs.length2(roots[th]), rs.length2(roots[a])) * N(rs.negative(b), th)
            else:
                val = Fraction(rs.length2(roots[th]), rs.length2(roots[b])) * N(rs.negative(th), a)
        memo[key] = val
        return val

    out: dict[tuple[int, int], int] = {}
    n = len(roots)
    for a in range(n):
        for b in range(n):
            if add(a, b) is not None:
                v = N(a, b)
                assert v.denominator == 1 and abs(v) == string_p(a, b) + 1, (a, b, v)
                out[(a, b)] = int(v)
    return out


def _jacobi_triples(alg: ChevalleyAlgebra, rng: random.Random):
    dim = alg.dim
    if alg.rank <= 4:
        return combinations(range(dim), 3)
    return (tuple(sorted(rng.sample(range(dim), 3))) for _ in range(4000))


@lru_cache(maxsize=None)
def build_chevalley(rs: RootSystem) -> ChevalleyAlgebra:
    """Chevalley basis with Jacobi checked (all triples for rank <= 4, sampled above)."""
    alg = ChevalleyAlgebra(rs)
    alg.verify_jacobi(_jacobi_triples(alg, random.Random(0)))
    for a in range(alg.n_roots):
        neg = rs.negative(a)
        assert all(alg.is_cartan(k) for k, _ in alg.bracket_basis(a, neg))
    return alg


# ---------------------------------------------------------------------------
# adjoint matrices and tests
# ---------------------------------------------------------------------------


def ad_matrix(alg: ChevalleyAlgebra, X: AlgebraElement) -> list[list]:
    """Dense matrix of [X, -] in the Chevalley basis."""
    zero = _zero_like(X)
    S = alg.ad_sparse(X)
    return [[row.get(j, zero) for j in range(alg.dim)] for row in S]


def _zero_like(X: AlgebraElement):
    for v in X.coeffs.values():
        if isinstance(v, PuiseuxSeries):
            return PuiseuxSeries()
        break
    return Fraction(0)


def _conductor(X: AlgebraElement) -> int:
    m = 1
    for v in X.coeffs.values():
        if isinstance(v, CycloNum):
            m = lcm(m, v.m)
        elif isinstance(v, PuiseuxSeries):
            raise TypeError("specialize series coefficients before testing nilpotency")
    return m


def is_nilpotent(alg: ChevalleyAlgebra, X: AlgebraElement) -> bool:
    """Exact: (ad X)^dim == 0.  A modular certificate short-cuts the common 'no' case."""
    if not X:
        return True
    m = _conductor(X)
    S = alg.ad_sparse(X)
    if certify_not_nilpotent(S, alg.dim, m):
        return False
    return is_nilpotent_exact(S)


def is_regular_semisimple(alg: ChevalleyAlgebra, X: AlgebraElement) -> bool:
    """Kernel of ad X has dimension rank, and ad X is diagonalizable (squarefree minimal poly)."""
    _conductor(X)
    A = ad_matrix(alg, X)
    if alg.dim - rank(A) != alg.rank:
        return False
    rad = squarefree_part(charpoly(A))
    return poly_kills(rad, alg.ad_sparse(X))


def cartan_is_regular(alg: ChevalleyAlgebra, y: Sequence) -> bool:
    """alpha(h) != 0 for all roots, h = sum y_i h_i; the direct criterion on 𝔥."""
    x = alg.rs.hvec_from_coroot(y)
    return all(alg.rs.evaluate(k, x) for k in range(alg.rs.n_positive))


@dataclass(frozen=True)
class SpanProbe:
    nonnilpotent: bool
    trials: int
    fallback_used: bool
    coefficients: tuple[int, ...]


def _first_primes(k: int) -> list[int]:
    out, n = [], 2
    while len(out) < k:
        if all(n % p for p in out):
            out.append(n)
        n += 1
    return out


def probe_span(alg: ChevalleyAlgebra, spanning_set: Sequence[AlgebraElement],
               rng: random.Random | None = None, trials: int = 5,
               coefficient_range: int = 1 << 31) -> SpanProbe:
    """Search the span for a non-nilpotent element with random integer combinations.

    A non-nilpotent witness is a proof.  If every trial is nilpotent, the
    element with distinct prime coefficients is tested and its answer reported.
    """
    if not spanning_set:
        raise ValueError("empty spanning set")
    rng = rng or random.Random(0)
    for t in range(1, trials + 1):
        cs = [rng.randint(1, coefficient_range) for _ in spanning_set]
        X = _combine(spanning_set, cs)
        if not is_nilpotent(alg, X):
            return SpanProbe(True, t, False, tuple(cs))
    ps = _first_primes(len(spanning_set))
    X = _combine(spanning_set, ps)
    return SpanProbe(not is_nilpotent(alg, X), trials, True, tuple(ps))


def _combine(elems: Sequence[AlgebraElement], cs: Sequence[int]) -> AlgebraElement:
    out = AlgebraElement({})
    for c, E in zip(cs, elems):
        out = out + E.scale(c)
    return out


def root_span_in_halfspace(alg: ChevalleyAlgebra, support: Iterable[int]) -> bool:
    """Exact sufficient test that a span of basis vectors is entirely nilpotent.

    If the roots in ``support`` lie in an open half-space {f > 0}, the span
    sits inside the sum of root spaces with f > 0, a positively graded and
    hence nilpotent subalgebra, so every element of the span is ad-nilpotent.
    """
    support = list(support)
    if any(alg.is_cartan(k) for k in support):
        return False
    roots = [alg.rs.roots[k] for k in support]
    neg = alg.rs.negative
    if any(neg(k) in set(support) for k in support):
        return False
    return in_open_halfspace(roots)


def generic_span_nonnilpotent(alg: ChevalleyAlgebra, spanning_set: Sequence[AlgebraElement],
                              rng: random.Random | None = None, trials: int = 5) -> bool:
    return probe_span(alg, spanning_set, rng, trials).nonnilpotent
