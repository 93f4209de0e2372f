"""Exact scalars and series: rationals, cyclotomic numbers, Puiseux series.

Rationals are plain :class:`fractions.Fraction` values.  ``CycloNum`` is an
element of Q(zeta_m) stored as a residue modulo the m-th cyclotomic
polynomial, and ``PuiseuxSeries`` is a finite-support series in t^(1/b).
Nothing in here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Mapping, Sequence

Rational = Fraction


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists from low to high degree
# ---------------------------------------------------------------------------


def poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Division with remainder; ``q`` must be nonzero."""
    q = poly_trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    poly_trim(rem)
    if len(rem) < len(q):
        return [], rem
    lead = q[-1]
    quot = [0] * (len(rem) - len(q) + 1)
    for k in range(len(rem) - len(q), -1, -1):
        c = rem[k + len(q) - 1]
        if not c:
            continue
        c = c / lead if lead != 1 else c
        quot[k] = c
        for j, b in enumerate(q):
            if b:
                rem[k + j] -= c * b
    poly_trim(rem)
    return poly_trim(quot), rem


@lru_cache(maxsize=None)
def cyclo_minpoly(m: int) -> tuple[int, ...]:
    """The m-th cyclotomic polynomial, coefficients low to high.

    Obtained by exact division of x^m - 1 by Phi_d for every proper divisor d.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    num: list = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = poly_divmod(num, list(cyclo_minpoly(d)))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclo_minpoly(m)) - 1


def _reduce_mod(coeffs: Sequence, m: int) -> tuple[Fraction, ...]:
    mod = cyclo_minpoly(m)
    deg = len(mod) - 1
    c = [Fraction(x) for x in coeffs]
    # mod is monic with integer coefficients
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if lead:
            shift = k - deg
            for j in range(deg):
                if mod[j]:
                    c[shift + j] -= lead * mod[j]
            c[k] = Fraction(0)
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


class CycloNum:
    """An element of the cyclotomic field Q(zeta_m).

    ``coeffs[k]`` multiplies zeta_m^k, for k < phi(m).  The element
    zeta_m itself is the residue class of x.  Values are immutable.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable = ()):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "coeffs", _reduce_mod(list(coeffs), self.m))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    @classmethod
    def _raw(cls, m: int, coeffs: tuple) -> "CycloNum":
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "CycloNum":
        """zeta_m ** power."""
        power %= m
        return cls(m, [0] * power + [1])

    @classmethod
    def rational(cls, m: int, value) -> "CycloNum":
        return cls(m, [value])

    # -- coercion -----------------------------------------------------------

    def lift(self, M: int) -> "CycloNum":
        """Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m)."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{M})")
        step = M // self.m
        c = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, a in enumerate(self.coeffs):
            c[k * step] = a
        return CycloNum(M, c)

    def _coerce(self, other) -> tuple["CycloNum", "CycloNum"] | None:
        if isinstance(other, CycloNum):
            if other.m == self.m:
                return self, other
            M = lcm(self.m, other.m)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            n = len(self.coeffs)
            return self, CycloNum._raw(self.m, (Fraction(other),) + (Fraction(0),) * (n - 1))
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum._raw(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum._raw(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycloNum._raw(self.m, (Fraction(0),) * len(self.coeffs))
            return CycloNum._raw(self.m, tuple(x * other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if len(a.coeffs) == 1:
            return CycloNum._raw(a.m, (a.coeffs[0] * b.coeffs[0],))
        return CycloNum(a.m, poly_mul(a.coeffs, b.coeffs) or [0])

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self.coeffs) == 1:
            return CycloNum._raw(self.m, (1 / self.coeffs[0],))
        # extended Euclid: s*self + t*Phi_m = 1
        r0, r1 = [Fraction(c) for c in cyclo_minpoly(self.m)], poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = poly_mul(q, s1)
            s_new = [Fraction(0)] * max(len(s0), len(qs))
            for i, c in enumerate(s0):
                s_new[i] += c
            for i, c in enumerate(qs):
                s_new[i] -= c
            s0, s1 = s1, poly_trim(s_new)
        const = r1[0]
        return CycloNum(self.m, [c / const for c in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.m, tuple(x / other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.rational(self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def galois(self, k: int) -> "CycloNum":
        """Apply the automorphism zeta_m -> zeta_m^k (k coprime to m)."""
        if gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        out = CycloNum.rational(self.m, 0)
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + CycloNum.zeta(self.m, j * k) * c
        return out

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.m}" + (f"^{k}" if k > 1 else "")
                terms.append(z if c == 1 else f"{c}*{z}")
        return " + ".join(terms) if terms else "0"


def field_for(b: int):
    """Return (zeta_b, converter) for the field Q(zeta_b).

    For b <= 2 the field is Q itself and plain Fractions are used, which keeps
    the hot paths over Q cheap.
    """
    if euler_phi(b) == 1:
        z = Fraction(1) if b == 1 else Fraction(-1)
        return z, Fraction
    return CycloNum.zeta(b), lambda v: CycloNum.rational(b, v)


# ---------------------------------------------------------------------------
# Puiseux series
# ---------------------------------------------------------------------------


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, CycloNum))


class PuiseuxSeries:
    """Finite-support series sum c_e t^(e/b), optionally truncated.

    ``terms`` maps integer e to a nonzero coefficient.  The ramification is
    always reduced, so the same series built over different covers has an
    identical stored form.  ``truncation`` (a Fraction in t-units, or None
    for exact) marks where knowledge of the series stops.
    """

    __slots__ = ("b", "terms", "truncation")

    def __init__(self, terms: Mapping[int, Any] | None = None, b: int = 1,
                 truncation: Fraction | None = None):
        if b < 1:
            raise ValueError("ramification must be positive")
        clean = {int(e): c for e, c in (terms or {}).items() if c}
        if truncation is not None:
            truncation = Fraction(truncation)
            clean = {e: c for e, c in clean.items() if Fraction(e, b) < truncation}
        g = b
        for e in clean:
            g = gcd(g, e)
        if g > 1:
            clean = {e // g: c for e, c in clean.items()}
            b //= g
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, coeff, exponent) -> "PuiseuxSeries":
        q = Fraction(exponent)
        return cls({q.numerator: coeff}, q.denominator)

    @classmethod
    def from_exponents(cls, data: Mapping[Any, Any], truncation=None) -> "PuiseuxSeries":
        """Build from a mapping Fraction exponent -> coefficient."""
        qs = {Fraction(q): c for q, c in data.items()}
        b = 1
        for q in qs:
            b = lcm(b, q.denominator)
        return cls({int(q * b): c for q, c in qs.items()}, b, truncation)

    @classmethod
    def constant(cls, c) -> "PuiseuxSeries":
        return cls({0: c}, 1)

    # -- queries ------------------------------------------------------------

    def exponents(self) -> dict[Fraction, Any]:
        return {Fraction(e, self.b): c for e, c in self.terms.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def valuation(self) -> Fraction | None:
        if not self.terms:
            return None
        return Fraction(next(iter(self.terms)), self.b)

    def leading(self) -> tuple[Fraction, Any]:
        if not self.terms:
            raise ValueError("zero series has no leading term")
        e, c = next(iter(self.terms.items()))
        return Fraction(e, self.b), c

    def coefficient(self, exponent) -> Any:
        q = Fraction(exponent)
        if (q * self.b).denominator != 1:
            return 0
        return self.terms.get(int(q * self.b), 0)

    def evaluate_at_one(self):
        """Specialize t := 1 (meaningful for finite series)."""
        return sum(self.terms.values(), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def _common(self, other: "PuiseuxSeries"):
        B = lcm(self.b, other.b)
        a = {e * (B // self.b): c for e, c in self.terms.items()}
        o = {e * (B // other.b): c for e, c in other.terms.items()}
        return B, a, o

    def _trunc_min(self, other):
        ts = [t for t in (self.truncation, other.truncation) if t is not None]
        return min(ts) if ts else None

    def __add__(self, other):
        if _is_scalar(other):
            other = PuiseuxSeries.constant(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        B, a, o = self._common(other)
        for e, c in o.items():
            a[e] = a[e] + c if e in a else c
        return PuiseuxSeries(a, B, self._trunc_min(other))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.b, self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return PuiseuxSeries({e: c * other for e, c in self.terms.items()}, self.b,
                                 self.truncation)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        B, a, o = self._common(other)
        out: dict[int, Any] = {}
        for e1, c1 in a.items():
            for e2, c2 in o.items():
                k = e1 + e2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        trunc = None
        cands = []
        if self.truncation is not None:
            v = other.valuation()
            if v is not None:
                cands.append(self.truncation + v)
        if other.truncation is not None:
            v = self.valuation()
            if v is not None:
                cands.append(other.truncation + v)
        if cands:
            trunc = min(cands)
        return PuiseuxSeries(out, B, trunc)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not _is_scalar(scalar):
            return NotImplemented
        return PuiseuxSeries({e: c / scalar for e, c in self.terms.items()}, self.b,
                             self.truncation)

    def truncate(self, order) -> "PuiseuxSeries":
        """Drop every term t^q with q >= order."""
        return PuiseuxSeries(self.terms, self.b, Fraction(order))

    def polar_part(self) -> "PuiseuxSeries":
        """Terms with exponent <= 0 (the part a Jordan form keeps)."""
        return PuiseuxSeries({e: c for e, c in self.terms.items() if e <= 0}, self.b)

    def substitute(self, c: int) -> "PuiseuxSeries":
        """t := u^c; the result is read as a series in u."""
        if c < 1:
            raise ValueError("pullback degree must be positive")
        trunc = None if self.truncation is None else self.truncation * c
        return PuiseuxSeries({e * c: v for e, v in self.terms.items()}, self.b, trunc)

    def euler_derivative(self) -> "PuiseuxSeries":
        """t d/dt."""
        return PuiseuxSeries({e: c * Fraction(e, self.b) for e, c in self.terms.items()},
                             self.b, self.truncation)

    def map_coefficients(self, f) -> "PuiseuxSeries":
        return PuiseuxSeries({e: f(c) for e, c in self.terms.items()}, self.b, self.truncation)

    def __eq__(self, other):
        if _is_scalar(other):
            other = PuiseuxSeries.constant(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.b, self.terms, self.truncation) == (other.b, other.terms, other.truncation)

    def __hash__(self):
        return hash((self.b, tuple(self.terms.items()), self.truncation))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for q, c in self.exponents().items():
            parts.append(f"({c})" if q == 0 else f"({c})*t^({q})")
        s = " + ".join(parts)
        if self.truncation is not None:
            s += f" + O(t^({self.truncation}))"
        return s


def ord_pole(s: PuiseuxSeries) -> Fraction:
    """Order of the pole at t = 0, as an exact rational.

    The zero series has no leading term; by convention its pole order is 0
    (use ``s.is_zero()`` to tell it apart from a regular series).
    """
    v = s.valuation()
    if v is None:
        return Fraction(0)
    return max(Fraction(0), -v)


def parse_rational(text: str) -> Fraction:
    return Fraction(str(text).strip())


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
