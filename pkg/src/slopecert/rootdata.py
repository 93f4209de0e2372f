"""Root systems of types A-G, Weyl group enumeration and parabolic data.

Roots are integer vectors in the basis of simple roots.  The invariant form is
an integral Gram matrix of the simple roots (Bourbaki numbering), and the same
matrix identifies the Cartan subalgebra with its dual, so elements of 𝔥 are
also written in simple-root coordinates: alpha(x) = alpha^T G x.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, prod
from typing import Sequence

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000


class UnsupportedType(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


SUPPORTED = {
    "A": range(1, 8),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(4, 6),
    "G": (2,),
    "F": (4,),
    "E": (6,),
}
LARGE = {"E": (7, 8)}


def _edges_simply_laced(label: str, n: int) -> list[tuple[int, int]]:
    if label == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if label == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if label == "E":
        return [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
    raise UnsupportedType(label)


def gram_matrix(label: str, n: int) -> list[list[int]]:
    """Integral Gram matrix (alpha_i, alpha_j) of the simple roots."""
    G = [[0] * n for _ in range(n)]
    if label in "ADE":
        for i in range(n):
            G[i][i] = 2
        for i, j in _edges_simply_laced(label, n):
            G[i][j] = G[j][i] = -1
    elif label == "B":
        for i in range(n - 1):
            G[i][i] = 4
        G[n - 1][n - 1] = 2
        for i in range(n - 1):
            G[i][i + 1] = G[i + 1][i] = -2
    elif label == "C":
        for i in range(n - 1):
            G[i][i] = 2
        G[n - 1][n - 1] = 4
        for i in range(n - 2):
            G[i][i + 1] = G[i + 1][i] = -1
        G[n - 2][n - 1] = G[n - 1][n - 2] = -2
    elif label == "F":
        G = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif label == "G":
        G = [[2, -3], [-3, 6]]
    else:
        raise UnsupportedType(label)
    return G


def degrees_of(label: str, n: int) -> tuple[int, ...]:
    if label == "A":
        d = range(2, n + 2)
    elif label in "BC":
        d = range(2, 2 * n + 1, 2)
    elif label == "D":
        d = list(range(2, 2 * n - 1, 2)) + [n]
    elif label == "E":
        d = {6: (2, 5, 6, 8, 9, 12), 7: (2, 6, 8, 10, 12, 14, 18),
             8: (2, 8, 12, 14, 18, 20, 24, 30)}[n]
    elif label == "F":
        d = (2, 6, 8, 12)
    elif label == "G":
        d = (2, 6)
    else:
        raise UnsupportedType(label)
    return tuple(sorted(d))


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    marks: tuple[int, ...]
    degrees: tuple[int, ...]
    exponents: tuple[int, ...]
    coxeter_number: int
    index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def weyl_order(self) -> int:
        return prod(self.degrees)

    def pair(self, u: Sequence, v: Sequence):
        """The invariant form (u, v) in simple-root coordinates."""
        G = self.gram
        r = self.rank
        return sum(u[i] * G[i][j] * v[j] for i in range(r) for j in range(r) if u[i] and v[j])

    @cached_property
    def root_rows(self) -> tuple[tuple[int, ...], ...]:
        """alpha^T G for each root, so alpha(x) is a dot product."""
        G = self.gram
        r = self.rank
        return tuple(tuple(sum(a[i] * G[i][j] for i in range(r)) for j in range(r))
                     for a in self.roots)

    def evaluate(self, root_index: int, x: Sequence):
        row = self.root_rows[root_index]
        acc = 0
        for a, v in zip(row, x):
            if a and v:
                acc = acc + a * v
        return acc

    def length2(self, root: Sequence[int]) -> int:
        return self.pair(root, root)

    def coroot_pairing(self, beta: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i)."""
        G = self.gram
        num = 2 * sum(beta[j] * G[j][i] for j in range(self.rank))
        q, rem = divmod(num, G[i][i])
        assert rem == 0
        return q

    def height(self, root: Sequence[int]) -> int:
        return sum(root)

    def is_positive(self, idx: int) -> bool:
        return idx < self.n_positive

    def negative(self, idx: int) -> int:
        n = self.n_positive
        return idx + n if idx < n else idx - n

    def root_index(self, root: Sequence[int]) -> int:
        return self.index[tuple(root)]

    def hvec_from_coroot(self, y: Sequence) -> list:
        """Convert sum y_i h_i (simple coroots) to simple-root coordinates."""
        return [y[i] * Fraction(2, self.gram[i][i]) for i in range(self.rank)]

    def hvec_to_coroot(self, x: Sequence) -> list:
        return [x[i] * Fraction(self.gram[i][i], 2) for i in range(self.rank)]

    def reflection_perm(self, i: int) -> tuple[int, ...]:
        out = []
        for beta in self.roots:
            c = self.coroot_pairing(beta, i)
            img = list(beta)
            img[i] -= c
            out.append(self.index[tuple(img)])
        return tuple(out)

    @cached_property
    def simple_reflections(self) -> tuple["WeylElement", ...]:
        return tuple(WeylElement(self.reflection_perm(i), self) for i in range(self.rank))

    def identity(self) -> "WeylElement":
        return WeylElement(tuple(range(len(self.roots))), self)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of W, stored as the permutation it induces on the roots."""

    perm: tuple[int, ...]
    rs: RootSystem = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __lt__(self, other):
        return self.perm < other.perm

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition: (self * other)(v) = self(other(v))."""
        p = self.perm
        return WeylElement(tuple(p[j] for j in other.perm), self.rs)

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(tuple(inv), self.rs)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """r x r integer matrix on simple-root coordinates (columns = images)."""
        rs = self.rs
        r = rs.rank
        cols = [rs.roots[self.perm[i]] for i in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    def act(self, v: Sequence) -> list:
        M = self.matrix
        out = []
        for row in M:
            acc = 0
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    @cached_property
    def order(self) -> int:
        seen = [False] * len(self.perm)
        o = 1
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                n += 1
            o = o * n // gcd(o, n)
        return o

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))


def _check_supported(label: str, rank: int, allow_large: bool) -> None:
    ok = label in SUPPORTED and rank in SUPPORTED[label]
    if not ok and allow_large and label in LARGE and rank in LARGE[label]:
        log.warning("building %s%d: Weyl group enumeration will need a large budget",
                    label, rank)
        ok = True
    if not ok:
        raise UnsupportedType(f"unsupported root system {label}{rank}")


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int, allow_large: bool = False) -> RootSystem:
    """Construct the root system by closing the simple roots under reflections."""
    label = type_label.upper()
    _check_supported(label, rank, allow_large)
    G = gram_matrix(label, rank)
    r = rank

    def pairing(beta, i):
        num = 2 * sum(beta[j] * G[j][i] for j in range(r))
        assert num % G[i][i] == 0
        return num // G[i][i]

    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                img = list(beta)
                img[i] -= pairing(beta, i)
                img = tuple(img)
                if img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    positive = sorted((b for b in found if sum(b) > 0), key=lambda b: (sum(b), [-c for c in b]))
    roots = tuple(positive) + tuple(tuple(-c for c in b) for b in positive)
    index = {b: k for k, b in enumerate(roots)}
    highest = positive[-1]
    degs = degrees_of(label, rank)
    rs = RootSystem(
        type_label=label, rank=rank, gram=tuple(tuple(row) for row in G), roots=roots,
        simple_roots=tuple(positive[:r]), highest_root=highest, marks=tuple(highest),
        degrees=degs, exponents=tuple(d - 1 for d in degs), coxeter_number=max(degs),
        index=index,
    )
    _verify_root_system(rs)
    return rs


def _verify_root_system(rs: RootSystem) -> None:
    n = len(rs.roots)
    assert n == rs.coxeter_number * rs.rank, "|Phi| != h r"
    assert sum(rs.exponents) == rs.n_positive, "sum of exponents != |Phi+|"
    assert all(d == m + 1 for d, m in zip(rs.degrees, rs.exponents))
    assert rs.coxeter_number == max(rs.degrees)
    for b in rs.roots:
        assert tuple(-c for c in b) in rs.index
        assert all(c >= 0 for c in b) or all(c <= 0 for c in b)
    assert rs.simple_roots == tuple(tuple(int(i == j) for j in range(rs.rank))
                                    for i in range(rs.rank))
    assert all(sum(b) <= sum(rs.highest_root) for b in rs.roots)


def parse_type(text: str) -> tuple[str, int]:
    """'E6' -> ('E', 6)."""
    text = text.strip()
    if len(text) < 2 or not text[0].isalpha() or not text[1:].isdigit():
        raise UnsupportedType(f"cannot parse root system type {text!r}")
    return text[0].upper(), int(text[1:])


def coxeter_element(rs: RootSystem) -> WeylElement:
    """s_1 s_2 ... s_r in index order."""
    w = rs.identity()
    for s in rs.simple_reflections:
        w = w * s
    return w


@lru_cache(maxsize=None)
def _enumerate(rs: RootSystem) -> tuple[WeylElement, ...]:
    gens = [s.perm for s in rs.simple_reflections]
    start = tuple(range(len(rs.roots)))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple([s[j] for j in g])
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(WeylElement(p, rs) for p in sorted(seen))


def enumerate_weyl(rs: RootSystem, budget: int = DEFAULT_BUDGET) -> tuple[WeylElement, ...]:
    """All of W by breadth-first closure, sorted by permutation."""
    if rs.weyl_order > budget:
        raise BudgetExceeded(f"|W({rs.name})| = {rs.weyl_order} exceeds budget {budget}")
    elems = _enumerate(rs)
    assert len(elems) == rs.weyl_order, "|W| != product of degrees"
    return elems


@lru_cache(maxsize=None)
def _classes(rs: RootSystem) -> tuple[tuple[WeylElement, ...], ...]:
    elems = _enumerate(rs)
    gens = [s.perm for s in rs.simple_reflections]
    unseen = {w.perm for w in elems}
    classes = []
    for w in elems:
        if w.perm not in unseen:
            continue
        unseen.discard(w.perm)
        cls = [w.perm]
        frontier = [w.perm]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    # s g s, with s an involution
                    h = tuple([s[g[s[j]]] for j in range(len(g))])
                    if h in unseen:
                        unseen.discard(h)
                        cls.append(h)
                        nxt.append(h)
            frontier = nxt
        classes.append(tuple(WeylElement(p, rs) for p in sorted(cls)))
    classes.sort(key=lambda c: c[0].perm)
    return tuple(classes)


def conjugacy_classes(rs: RootSystem, budget: int = DEFAULT_BUDGET):
    """Conjugacy classes of W; each is sorted and starts with its representative."""
    enumerate_weyl(rs, budget)
    return _classes(rs)


# ---------------------------------------------------------------------------
# parabolic subsystems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicInfo:
    subset: tuple[int, ...]
    component_types: tuple[str, ...]
    root_count: int
    degrees: tuple[int, ...]

    @property
    def label(self) -> str:
        return "x".join(self.component_types) if self.component_types else "1"


def _components(G, subset: Sequence[int]) -> list[list[int]]:
    remaining = set(subset)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if j not in comp and G[i][j]:
                    comp.add(j)
                    stack.append(j)
        remaining -= comp
        comps.append(sorted(comp))
    return comps


def identify_component(G, comp: Sequence[int]) -> tuple[str, int]:
    """Cartan type of a connected Dynkin subdiagram."""
    n = len(comp)
    if n == 1:
        return "A", 1
    lengths = {i: G[i][i] for i in comp}
    adj = {i: [j for j in comp if j != i and G[i][j]] for i in comp}
    ratios = {}
    for i in comp:
        for j in adj[i]:
            ratios[(i, j)] = max(lengths[i], lengths[j]) // min(lengths[i], lengths[j])
    if any(v == 3 for v in ratios.values()):
        return "G", 2
    if len(set(lengths.values())) == 1:
        branch = [i for i in comp if len(adj[i]) == 3]
        if not branch:
            return "A", n
        c = branch[0]
        arms = []
        for start in adj[c]:
            length, prev, cur = 1, c, start
            while True:
                nxt = [j for j in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return "D", n
        return "E", n
    if n == 2:
        return "B", 2
    ends = [i for i in comp if len(adj[i]) == 1]
    double = [(i, j) for (i, j), v in ratios.items() if v == 2]
    nodes_in_double = {i for pair in double for i in pair}
    if not (nodes_in_double & set(ends)):
        return "F", 4
    end = next(e for e in ends if e in nodes_in_double)
    short = min(lengths.values())
    return ("B", n) if lengths[end] == short else ("C", n)


def _parabolic(rs: RootSystem, subset: tuple[int, ...]) -> ParabolicInfo:
    G = rs.gram
    types, degs = [], []
    for comp in _components(G, subset):
        lab, k = identify_component(G, comp)
        types.append(f"{lab}{k}")
        degs.extend(degrees_of(lab, k))
    count = sum(1 for b in rs.roots if all(b[i] == 0 for i in range(rs.rank) if i not in subset))
    degs.extend([1] * (rs.rank - len(degs)))
    return ParabolicInfo(subset, tuple(sorted(types)), count, tuple(sorted(degs)))


def standard_parabolics(rs: RootSystem) -> tuple[ParabolicInfo, ...]:
    """One entry per proper subset of the simple roots (including the empty one).

    Every parabolic subgroup of W is conjugate to a standard one, so these
    cover all parabolics up to conjugacy.
    """
    out = []
    for k in range(rs.rank):
        for subset in combinations(range(rs.rank), k):
            out.append(_parabolic(rs, subset))
    return tuple(out)


def parabolic_degree_scan(rs: RootSystem, b: int) -> tuple[ParabolicInfo, ...]:
    """Proper standard parabolics having a degree divisible by b."""
    return tuple(p for p in standard_parabolics(rs) if any(d % b == 0 for d in p.degrees))
