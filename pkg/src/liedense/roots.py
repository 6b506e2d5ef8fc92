"""Irreducible root systems in Bourbaki coordinates, with exact arithmetic.

Roots are enumerated by reflection closure of the simple roots; nothing but
the simple roots is tabulated.  Ambient vectors are tuples of
:class:`~fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    InvalidType,
    NonIntegral,
    NotInSpan,
    WitnessNotFound,
    ZeroVector,
)

Vec = tuple[Fraction, ...]

HALF = Fraction(1, 2)

CLASSICAL_COUNTS = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
    "F": lambda l: 48,
    "G": lambda l: 12,
}


def vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def pairing(lam: Sequence, alpha: Sequence) -> Fraction:
    """``2 (lam, alpha) / (alpha, alpha)`` under the Euclidean inner product."""
    n = dot(alpha, alpha)
    if n == 0:
        raise ZeroVector("pairing against the zero vector")
    return 2 * dot(lam, alpha) / n


def reflect(v: Sequence, alpha: Sequence) -> Vec:
    c = pairing(v, alpha)
    return tuple(x - c * a for x, a in zip(v, alpha))


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        f, l = self.family, self.rank
        ok = (
            (f == "A" and l >= 1)
            or (f == "B" and l >= 2)
            or (f == "C" and l >= 3)
            or (f == "D" and l >= 4)
            or (f == "E" and l in (6, 7, 8))
            or (f == "F" and l == 4)
            or (f == "G" and l == 2)
        )
        if not ok:
            raise InvalidType(f"inadmissible root system type {f}{l}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, s: str, rank: int | None = None) -> "RootSystemType":
        """Parse ``"G2"``, ``"E_6"`` or ``("B", 3)``.  ``C2`` is normalized to ``B2``."""
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d*)\s*", str(s))
        if not m:
            raise InvalidType(f"cannot parse root system type {s!r}")
        fam = m.group(1).upper()
        if m.group(2):
            l = int(m.group(2))
            if rank is not None and rank != l:
                raise InvalidType(f"rank {rank} conflicts with type {s!r}")
        elif rank is not None:
            l = rank
        else:
            raise InvalidType(f"missing rank in {s!r}")
        if fam == "C" and l == 2:
            warnings.warn("C2 is isomorphic to B2; using B2", stacklevel=2)
            fam = "B"
        return cls(fam, l)


def admissible_types(max_rank: int = 8, exceptional: bool = True) -> list[RootSystemType]:
    out = []
    for l in range(1, max_rank + 1):
        out.append(RootSystemType("A", l))
    for fam, lo in (("B", 2), ("C", 3), ("D", 4)):
        out.extend(RootSystemType(fam, l) for l in range(lo, max_rank + 1))
    if exceptional:
        out.extend(
            RootSystemType(f, l)
            for f, l in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2))
            if l <= max_rank
        )
    return out


def _e(n: int, *entries: tuple[int, object]) -> Vec:
    v = [Fraction(0)] * n
    for i, x in entries:
        v[i - 1] += Fraction(x)
    return tuple(v)


def _e8_simple() -> list[Vec]:
    a1 = tuple(HALF * x for x in (1, -1, -1, -1, -1, -1, -1, 1))
    a2 = _e(8, (1, 1), (2, 1))
    rest = [_e(8, (k - 2, -1), (k - 1, 1)) for k in range(3, 9)]
    return [a1, a2] + rest


def simple_roots_for(t: RootSystemType) -> list[Vec]:
    """Bourbaki simple roots in the ambient space of the Planches."""
    f, l = t.family, t.rank
    if f == "A":
        return [_e(l + 1, (i, 1), (i + 1, -1)) for i in range(1, l + 1)]
    if f in "BCD":
        base = [_e(l, (i, 1), (i + 1, -1)) for i in range(1, l)]
        last = {"B": _e(l, (l, 1)), "C": _e(l, (l, 2)), "D": _e(l, (l - 1, 1), (l, 1))}[f]
        return base + [last]
    if f == "E":
        return _e8_simple()[:l]
    if f == "F":
        return [
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1), (4, -1)),
            _e(4, (4, 1)),
            vec(HALF * x for x in (1, -1, -1, -1)),
        ]
    if f == "G":
        return [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]
    raise InvalidType(str(t))


def _solve_gram(basis: Sequence[Vec], v: Sequence) -> list[Fraction]:
    """Coefficients of the orthogonal projection of ``v`` onto span(basis)."""
    n = len(basis)
    gram = [[dot(a, b) for b in basis] for a in basis]
    rhs = [dot(a, v) for a in basis]
    # Gauss-Jordan on the (positive definite) Gram matrix.
    m = [row[:] + [r] for row, r in zip(gram, rhs)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootSystem:
    rtype: RootSystemType
    simple_roots: tuple[Vec, ...]
    roots: frozenset = field(repr=False)
    positive_roots: tuple[Vec, ...] = field(repr=False)
    fundamental_weights: tuple[Vec, ...] = field(repr=False)
    cartan_matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.rtype.rank

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0])

    def __str__(self) -> str:
        return str(self.rtype)

    # -- coordinates -------------------------------------------------------

    def simple_coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` in the simple-root basis; ``NotInSpan`` if off-span."""
        c = _solve_gram(self.simple_roots, v)
        back = [Fraction(0)] * self.ambient_dim
        for ci, a in zip(c, self.simple_roots):
            for k, x in enumerate(a):
                back[k] += ci * x
        if tuple(back) != tuple(Fraction(x) for x in v):
            raise NotInSpan(f"{fmt(v)} has a component outside the root span")
        return tuple(c)

    def root_coords(self, alpha: Sequence) -> tuple[int, ...]:
        return tuple(int(c) for c in self._root_coords[tuple(alpha)])

    @cached_property
    def _root_coords(self) -> dict[Vec, tuple[Fraction, ...]]:
        return {a: self.simple_coords(a) for a in self.roots}

    def height(self, alpha: Sequence) -> int:
        return sum(self.root_coords(alpha))

    def dynkin_labels(self, lam: Sequence) -> tuple[Fraction, ...]:
        """``(pairing(lam, alpha_i))_i`` -- the fundamental-weight coordinates."""
        return tuple(pairing(lam, a) for a in self.simple_roots)

    def from_dynkin(self, labels: Sequence) -> Vec:
        out = [Fraction(0)] * self.ambient_dim
        for c, w in zip(labels, self.fundamental_weights):
            c = Fraction(c)
            for k, x in enumerate(w):
                out[k] += c * x
        return tuple(out)

    def from_simple_coords(self, coeffs: Sequence) -> Vec:
        out = [Fraction(0)] * self.ambient_dim
        for c, a in zip(coeffs, self.simple_roots):
            c = Fraction(c)
            for k, x in enumerate(a):
                out[k] += c * x
        return tuple(out)

    @cached_property
    def highest_root(self) -> Vec:
        return self.positive_roots[-1]

    @cached_property
    def rho(self) -> Vec:
        return vscale(HALF, [sum(c) for c in zip(*self.positive_roots)])

    @cached_property
    def coroots(self) -> frozenset:
        """The dual root system ``{2 alpha / (alpha, alpha)}`` in ambient coordinates."""
        return frozenset(vscale(Fraction(2) / dot(a, a), a) for a in self.roots)

    def coroot(self, alpha: Sequence) -> Vec:
        return vscale(Fraction(2) / dot(alpha, alpha), alpha)

    def is_integral(self, lam: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.dynkin_labels(lam))

    def is_dominant(self, lam: Sequence) -> bool:
        return all(c >= 0 for c in self.dynkin_labels(lam))

    def _check_integral(self, lam: Sequence) -> None:
        if not self.is_integral(lam):
            raise NonIntegral(f"{fmt(lam)} is not an integral weight of {self}")

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": str(self.rtype),
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "simple_roots": [fmt(a) for a in self.simple_roots],
            "positive_roots": [fmt(a) for a in self.positive_roots],
            "roots": [fmt(a) for a in sorted_roots(self)],
            "fundamental_weights": [fmt(w) for w in self.fundamental_weights],
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
        }


def fmt(v: Sequence) -> list[str]:
    return [str(Fraction(x)) for x in v]


def sorted_roots(rs: RootSystem) -> list[Vec]:
    """Positive roots in order followed by their negatives."""
    return list(rs.positive_roots) + [vscale(-1, a) for a in rs.positive_roots]


def reflection_closure(simple: Sequence[Vec]) -> set[Vec]:
    """All roots obtained from ``simple`` by repeated simple reflections."""
    found = set(simple) | {vscale(-1, a) for a in simple}
    frontier = list(found)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = reflect(v, a)
                if w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    return found


@lru_cache(maxsize=None)
def _build(t: RootSystemType) -> RootSystem:
    simple = tuple(simple_roots_for(t))
    roots = reflection_closure(simple)
    l = t.rank
    cartan = tuple(tuple(int(pairing(a, b)) for b in simple) for a in simple)

    pos = []
    for r in roots:
        c = _solve_gram(simple, r)
        if all(x >= 0 for x in c):
            pos.append((sum(c), tuple(-x for x in c), r))
    pos.sort()
    positive = tuple(r for _, _, r in pos)

    # omega_i = sum_j (A^{-1})_{ij} alpha_j  with A_ij = pairing(alpha_i, alpha_j)
    a_inv = _inverse([[Fraction(x) for x in row] for row in cartan])
    fund = []
    for i in range(l):
        w = [Fraction(0)] * len(simple[0])
        for j in range(l):
            for k, x in enumerate(simple[j]):
                w[k] += a_inv[i][j] * x
        fund.append(tuple(w))
    return RootSystem(t, simple, frozenset(roots), positive, tuple(fund), cartan)


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def build(rtype: RootSystemType | str, rank: int | None = None) -> RootSystem:
    """Build (and cache) the root system of the given type."""
    if not isinstance(rtype, RootSystemType):
        rtype = RootSystemType.parse(rtype, rank)
    return _build(rtype)


# ---------------------------------------------------------------------------
# weight-lattice predicates


def in_root_lattice(rs: RootSystem, lam: Sequence) -> tuple[bool, tuple[Fraction, ...]]:
    """Solve ``lam = sum c_i alpha_i``; membership iff every ``c_i`` is an integer."""
    c = rs.simple_coords(lam)
    return all(x.denominator == 1 for x in c), c


def dominant_representative(rs: RootSystem, lam: Sequence) -> Vec:
    rs._check_integral(lam)
    mu = vec(lam)
    while True:
        for a in rs.simple_roots:
            if pairing(mu, a) < 0:
                mu = reflect(mu, a)
                break
        else:
            return mu


def is_extremal(rs: RootSystem, lam: Sequence) -> bool:
    """True iff the Weyl orbit of ``lam`` contains a multiple of a fundamental weight."""
    labels = rs.dynkin_labels(dominant_representative(rs, lam))
    return sum(1 for c in labels if c != 0) <= 1


def is_fundamental_multiple(rs: RootSystem, lam: Sequence) -> bool:
    """``lam = k omega_j`` for some integer ``k`` (zero included) and some ``j``."""
    labels = rs.dynkin_labels(lam)
    if any(c.denominator != 1 for c in labels):
        return False
    return sum(1 for c in labels if c != 0) <= 1


def find_even_coroot(rs: RootSystem, lam: Sequence) -> tuple[Vec, int] | None:
    """A root ``alpha`` with ``pairing(lam, alpha)`` positive and even, or ``None``.

    Positive roots are searched from the highest root downwards; the first hit
    is returned together with the pairing value.
    """
    for a in reversed(rs.positive_roots):
        p = pairing(lam, a)
        if p.denominator != 1 or p == 0:
            continue
        p = int(p)
        if p % 2 == 0:
            return (a, p) if p > 0 else (vscale(-1, a), -p)
    return None


def coroot_sum_check(rs: RootSystem, i: int, j: int) -> bool:
    """Is ``H_i + ... + H_j`` (1-based, inclusive) a coroot?"""
    if not (1 <= i <= j <= rs.rank):
        raise IndexOutOfRange(f"need 1 <= i <= j <= {rs.rank}, got i={i}, j={j}")
    total = [Fraction(0)] * rs.ambient_dim
    for k in range(i - 1, j):
        total = vadd(total, rs.coroot(rs.simple_roots[k]))
    return tuple(total) in rs.coroots


# ---------------------------------------------------------------------------
# multiple-of-fundamental-weight campaign


def momega_part(rs: RootSystem, i: int) -> str:
    """Which clause of the m*omega_i witness check governs ``(rs, i)``: ``"a"``, ``"b"`` or ``"c"``."""
    f, l = rs.rtype.family, rs.rank
    if f == "A" and l % 2 == 0:
        return "c"
    if f == "E" and l == 6:
        return "c" if i == 1 else "b"
    return "a"


def find_even_pairing(rs: RootSystem, lam: Sequence) -> tuple[Vec, int] | None:
    """A root with nonzero even pairing against ``lam`` (either sign), first in root order."""
    for a in rs.positive_roots:
        p = pairing(lam, a)
        if p != 0 and p.denominator == 1 and int(p) % 2 == 0:
            return a, int(p)
    return None


def _part_c_checks(rs: RootSystem, lam: Sequence, i: int) -> dict:
    a_i = rs.simple_roots[i - 1]
    checks = {}
    for sign, name in ((1, "plus"), (-1, "minus")):
        mu = vadd(lam, vscale(sign, a_i))
        checks[name] = {"weight": fmt(mu), "dynkin": fmt(rs.dynkin_labels(mu)),
                        "fundamental_multiple": is_fundamental_multiple(rs, mu)}
    return checks


def verify_momega(rs: RootSystem, m_max: int, strict: bool = True) -> list[dict]:
    """Check every ``m omega_i`` (``1 <= m <= m_max``) that lies in the root lattice.

    Clauses (a)/(b) need a root with even nonzero pairing; clause (c) needs
    ``m omega_i +- alpha_i`` to avoid every integral multiple of a fundamental
    weight.  With ``strict`` a counterexample raises :class:`WitnessNotFound`;
    otherwise it is reported as a row with ``"failed": True`` (for clause (a)/(b)
    rows the clause (c) test is then recorded as well).
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    rows = []
    for i in range(1, rs.rank + 1):
        w = rs.fundamental_weights[i - 1]
        part = momega_part(rs, i)
        for m in range(1, m_max + 1):
            lam = vscale(m, w)
            inside, _ = in_root_lattice(rs, lam)
            if not inside:
                continue
            row = {"type": str(rs.rtype), "i": i, "m": m, "part": part, "failed": False}
            if part in "ab":
                hit = find_even_pairing(rs, lam)
                if hit is None:
                    msg = f"{rs}: no even pairing for {m}*omega_{i}"
                    if strict:
                        raise WitnessNotFound(msg)
                    row.update(witness=None, value=None, failed=True,
                               pairings=sorted({int(pairing(lam, a)) for a in rs.roots}),
                               verification=_part_c_checks(rs, lam, i))
                else:
                    row["witness"] = fmt(hit[0])
                    row["value"] = hit[1]
                if rs.rtype.family == "A":
                    # Only parity of m is used downstream; record the stronger claim separately.
                    row["divisible_by_rank_plus_1"] = m % (rs.rank + 1) == 0
            else:
                checks = _part_c_checks(rs, lam, i)
                row["verification"] = checks
                row["value"] = None
                for name, c in checks.items():
                    if c["fundamental_multiple"]:
                        sign = "+" if name == "plus" else "-"
                        msg = f"{rs}: {m}*omega_{i} {sign} alpha_{i} is a multiple of a fundamental weight"
                        if strict:
                            raise WitnessNotFound(msg)
                        row["failed"] = True
            rows.append(row)
    return rows


def dominant_weights(rank: int, max_sum: int) -> Iterable[tuple[int, ...]]:
    """Dynkin-label tuples with nonnegative entries summing to at most ``max_sum``."""
    for labels in itertools.product(range(max_sum + 1), repeat=rank):
        if sum(labels) <= max_sum:
            yield labels


def verify_even_coroot(rs: RootSystem, max_sum: int = 5) -> list[dict]:
    """For every dominant non-fundamental-multiple weight up to ``max_sum``, find an even coroot."""
    rows = []
    for labels in dominant_weights(rs.rank, max_sum):
        if sum(1 for c in labels if c) <= 1:
            continue
        lam = rs.from_dynkin(labels)
        hit = find_even_coroot(rs, lam)
        if hit is None:
            raise WitnessNotFound(f"{rs}: no positive even coroot for {labels}")
        rows.append({"type": str(rs.rtype), "dynkin": list(labels),
                     "witness": fmt(hit[0]), "value": hit[1]})
    return rows
