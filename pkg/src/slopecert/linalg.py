"""Exact linear algebra over Q and Q(zeta_m).

Matrices are lists of rows.  Entries are any field elements supporting the
usual operators and truthiness as a zero test (Fraction, CycloNum); plain
ints are accepted on input.  A few helpers reduce integral matrices modulo a
prime; these only ever *certify* a property, never deny one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .exact import CycloNum, cyclo_minpoly, poly_divmod, poly_trim

Matrix = list  # list[list[field element]]


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form (pivot entries 1) and the pivot columns."""
    M = [[_field(x) for x in row] for row in rows]
    if not M:
        return [], []
    n = len(M[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v: list = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def normal_form(vectors: Sequence[Sequence]) -> tuple[tuple, ...]:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    if not vectors:
        return ()
    R, _ = rref(vectors)
    return tuple(tuple(row) for row in R)


def solve(A: Sequence[Sequence], b: Sequence) -> list | None:
    """One solution of A x = b, or None if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x: list = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt]
            for row in A]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(A: Sequence[Sequence]) -> list:
    """Characteristic polynomial det(xI - A), coefficients low to high.

    Hessenberg reduction followed by the standard recurrence; O(n^3) field
    operations.
    """
    n = len(A)
    H = [[_field(x) for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = 1 / H[m][m - 1]
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if not u:
                continue
            u = u * inv
            H[i] = [a - u * b for a, b in zip(H[i], H[m])]
            for row in H:
                if row[i]:
                    row[m] = row[m] + u * row[i]
    return _hessenberg_charpoly(H)


def _hessenberg_charpoly(H) -> list:
    n = len(H)
    one = Fraction(1)
    polys: list[list] = [[one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        # (x - h_mm) * p_{m-1}
        p = [Fraction(0)] + list(prev)
        for k, c in enumerate(prev):
            p[k] = p[k] - H[m - 1][m - 1] * c
        t = one
        for i in range(1, m):
            t = t * H[m - i][m - i - 1]
            if not t:
                break
            coef = t * H[m - i - 1][m - 1]
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    p[k] = p[k] - coef * c
        polys.append(p)
    return polys[n]


def poly_derivative(p: Sequence) -> list:
    return poly_trim([k * c for k, c in enumerate(p)][1:])


def poly_gcd(p: Sequence, q: Sequence) -> list:
    a, b = poly_trim(list(p)), poly_trim(list(q))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def squarefree_part(p: Sequence) -> list:
    """p / gcd(p, p'), made monic."""
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(list(p), g)
    assert not r
    lead = q[-1]
    return [c / lead for c in q]


def feasible_nonnegative(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> bool:
    """Is {lam >= 0 : A lam = b} nonempty?"""
    return nonnegative_solution(A, b) is not None


def nonnegative_solution(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list | None:
    """A basic solution of A lam = b with lam >= 0, or None.  Exact phase-one
    simplex with Bland's rule."""
    m, n = len(A), len(A[0])
    # tableau rows: [A | I | b], made b >= 0
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        T.append([sign * x for x in A[i]] + [Fraction(int(i == j)) for j in range(m)]
                 + [sign * b[i]])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize the sum of artificials, reduced costs over all columns
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # unbounded; cannot happen for phase one
        i = best[1]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        for k in range(m):
            if k != i and T[k][enter]:
                f = T[k][enter]
                T[k] = [x - f * y for x, y in zip(T[k], T[i])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, T[i])]
        basis[i] = enter
    if cost[width] != 0:
        return None
    lam = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            lam[j] = T[i][width]
    return lam


def positive_dependency(vectors: Sequence[Sequence]) -> list | None:
    """Weights w >= 0 summing to 1 with sum w_i v_i = 0, or None if there are none."""
    vs = [list(v) for v in vectors]
    if not vs:
        return None
    dim = len(vs[0])
    A = [[Fraction(v[i]) for v in vs] for i in range(dim)]
    A.append([Fraction(1)] * len(vs))
    b = [Fraction(0)] * dim + [Fraction(1)]
    return nonnegative_solution(A, b)


def in_open_halfspace(vectors: Sequence[Sequence]) -> bool:
    """True iff some linear functional is positive on every vector.

    By Gordan's alternative this fails exactly when 0 is a convex combination
    of the vectors, which is an exact feasibility problem.
    """
    return positive_dependency(vectors) is None


# ---------------------------------------------------------------------------
# sparse matrices: list of dict(col -> value) rows
# ---------------------------------------------------------------------------


def sparse_from_dense(A: Sequence[Sequence]) -> list[dict[int, Any]]:
    return [{j: x for j, x in enumerate(row) if x} for row in A]


def sparse_mat_vec(S: Sequence[dict], v: Sequence) -> list:
    out = []
    for row in S:
        acc = 0
        for j, a in row.items():
            x = v[j]
            if x:
                acc = acc + a * x
        out.append(acc)
    return out


def poly_kills(p: Sequence, S: Sequence[dict]) -> bool:
    """True iff p(A) = 0 for the sparse matrix A, checked column by column."""
    n = len(S)
    for i in range(n):
        # Horner on the basis vector e_i
        v: list = [0] * n
        for c in reversed(p):
            v = sparse_mat_vec(S, v)
            v[i] = v[i] + c
        if any(v):
            return False
    return True


def is_nilpotent_exact(S: Sequence[dict]) -> bool:
    """A^n = 0, tested by pushing every basis vector through A up to n times."""
    n = len(S)
    for i in range(n):
        v: list = [0] * n
        v[i] = 1
        for _ in range(n):
            v = sparse_mat_vec(S, v)
            if not any(v):
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# reduction modulo primes
# ---------------------------------------------------------------------------

_PRIME_CACHE: dict[int, list[int]] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_1_mod(m: int, count: int = 3, start: int = 1 << 30) -> list[int]:
    """Primes p = 1 (mod m) just above ``start``."""
    key = m * 1000 + count
    if key in _PRIME_CACHE:
        return _PRIME_CACHE[key]
    out = []
    p = start - start % m + 1
    while len(out) < count:
        p += m
        if _is_prime(p):
            out.append(p)
    _PRIME_CACHE[key] = out
    return out


def _root_of_unity_mod(m: int, p: int) -> int:
    """An element of exact multiplicative order m in F_p, and a root of Phi_m."""
    phi = cyclo_minpoly(m)
    for g in range(2, p):
        z = pow(g, (p - 1) // m, p)
        if sum(c * pow(z, k, p) for k, c in enumerate(phi)) % p == 0:
            return z
    raise ValueError("no root of unity found")


class ModularImage:
    """Ring homomorphism from Z[1/N][zeta_m] to F_p."""

    def __init__(self, m: int, p: int):
        self.m, self.p = m, p
        self.z = _root_of_unity_mod(m, p) if m > 2 else (1 if m == 1 else p - 1)

    def __call__(self, x) -> int | None:
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                return None
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, CycloNum):
            if self.m % x.m:
                return None
            x = x.lift(self.m)
            acc = 0
            for k, c in enumerate(x.coeffs):
                if c:
                    ck = self(c)
                    if ck is None:
                        return None
                    acc += ck * pow(self.z, k, p)
            return acc % p
        return None


def charpoly_mod_p(A: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial of an integer matrix modulo p (Hessenberg)."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(H[m][m - 1], -1, p)
        rowm = H[m]
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if not u:
                continue
            u = u * inv % p
            H[i] = [(a - u * b) % p for a, b in zip(H[i], rowm)]
            for row in H:
                if row[i]:
                    row[m] = (row[m] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        poly = [0] + list(prev)
        h = H[m - 1][m - 1]
        for k, c in enumerate(prev):
            poly[k] = (poly[k] - h * c) % p
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % p
            if not t:
                break
            coef = t * H[m - i - 1][m - 1] % p
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    poly[k] = (poly[k] - coef * c) % p
        polys.append(poly)
    return polys[n]


def certify_not_nilpotent(S: Sequence[dict], n: int, m: int = 1) -> bool:
    """True only if the sparse matrix is provably not nilpotent.

    Uses a homomorphism to F_p: a nilpotent matrix has A^n = 0 under every
    ring homomorphism, so A^n v != 0 mod p for some vector v is a
    certificate.  A False answer proves nothing.
    """
    for p in primes_1_mod(max(m, 2), count=2):
        img = ModularImage(m, p)
        rows = []
        ok = True
        for row in S:
            r = {}
            for j, x in row.items():
                v = img(x)
                if v is None:
                    ok = False
                    break
                if v:
                    r[j] = v
            if not ok:
                break
            rows.append(r)
        if not ok:
            continue
        vec = [(7 * i * i + 3 * i + 1) % p for i in range(n)]
        for _ in range(n):
            vec = [sum(a * vec[j] for j, a in r.items()) % p for r in rows]
            if not any(vec):
                break
        else:
            return True
    return False


def certify_not_nilpotent_charpoly(S: Sequence[dict], n: int, m: int = 1) -> bool:
    """Same certificate via the characteristic polynomial mod p (nonzero lower terms)."""
    for p in primes_1_mod(max(m, 2), count=2):
        img = ModularImage(m, p)
        dense = [[0] * n for _ in range(n)]
        ok = True
        for i, row in enumerate(S):
            for j, x in row.items():
                v = img(x)
                if v is None:
                    ok = False
                    break
                dense[i][j] = v
            if not ok:
                break
        if not ok:
            continue
        cp = charpoly_mod_p(dense, p)
        if any(cp[:n]):
            return True
    return False
