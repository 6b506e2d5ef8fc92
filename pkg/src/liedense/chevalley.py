"""Chevalley basis of a simple Lie algebra with integer structure constants.

Basis order is ``[E_a for a in positive roots] + [F_a for a in positive roots]
+ [H_1 .. H_l]``.  Roots are handled internally as integer tuples of simple-root
coordinates.  Signs of ``N_{a,b}`` are fixed by declaring the structure
constant of every extraspecial pair positive; the remaining constants follow
from the usual Chevalley identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import roots as R
from .errors import AlgebraMismatch, NotARoot
from .linalg import SparseVec, axpy, q

Root = tuple[int, ...]


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _is_pos(a: Root) -> bool:
    return any(x > 0 for x in a)


class LieAlgebra:
    """The simple Lie algebra attached to a root system, in a Chevalley basis."""

    def __init__(self, rs: R.RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.pos: list[Root] = [rs.root_coords(a) for a in rs.positive_roots]
        self.n_pos = len(self.pos)
        self.dim = 2 * self.n_pos + self.rank
        self._pos_index = {a: k for k, a in enumerate(self.pos)}
        self._roots = set(self.pos) | {_neg(a) for a in self.pos}
        simple = rs.simple_roots
        self._gram = [[R.dot(a, b) for b in simple] for a in simple]
        self.cartan = [list(r) for r in rs.cartan_matrix]
        self._N = self._structure_constants()
        self.table = self._bracket_table()

    # -- labels and indices --------------------------------------------------

    @cached_property
    def labels(self) -> list[str]:
        p, l = self.n_pos, self.rank
        return ([f"E{k + 1}" for k in range(p)] + [f"F{k + 1}" for k in range(p)]
                + [f"H{i + 1}" for i in range(l)])

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def root_index(self, a: Root) -> int:
        """Basis index of the root vector ``E_a`` (``F_{-a}`` for negative ``a``)."""
        a = tuple(a)
        if a in self._pos_index:
            return self._pos_index[a]
        na = _neg(a)
        if na in self._pos_index:
            return self.n_pos + self._pos_index[na]
        raise NotARoot(f"{a} is not a root of {self.rs}")

    def h_index(self, i: int) -> int:
        """Basis index of ``H_i`` (1-based ``i``)."""
        return 2 * self.n_pos + i - 1

    def basis_root(self, k: int) -> Root | None:
        """Root (simple coordinates) of basis element ``k``; ``None`` for Cartan elements."""
        if k < self.n_pos:
            return self.pos[k]
        if k < 2 * self.n_pos:
            return _neg(self.pos[k - self.n_pos])
        return None

    def is_root(self, a: Root) -> bool:
        return tuple(a) in self._roots

    # -- root arithmetic -----------------------------------------------------

    def ip(self, a: Root, b: Root) -> Fraction:
        g = self._gram
        return sum((a[i] * b[j] * g[i][j] for i in range(self.rank) for j in range(self.rank)
                    if a[i] and b[j]), Fraction(0))

    def pairing(self, a: Root, b: Root) -> int:
        """``<a, b^vee>`` for roots given in simple coordinates."""
        return int(2 * self.ip(a, b) / self.ip(b, b))

    def weight_of_root(self, a: Root) -> tuple[int, ...]:
        """Dynkin labels ``(a(H_1), ..., a(H_l))``."""
        return tuple(sum(a[j] * self.cartan[j][i] for j in range(self.rank))
                     for i in range(self.rank))

    def coroot_coeffs(self, a: Root) -> tuple[int, ...]:
        """``H_a`` expanded in the simple coroots ``H_i`` (``a`` may be negative)."""
        na = self.ip(a, a)
        out = []
        for i in range(self.rank):
            c = a[i] * self._gram[i][i] / na
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def _string_p(self, a: Root, b: Root) -> int:
        """Largest ``p`` with ``b - p a`` a root."""
        p = 0
        cur = b
        while True:
            cur = tuple(x - y for x, y in zip(cur, a))
            if cur not in self._roots:
                return p
            p += 1

    # -- structure constants -------------------------------------------------

    def _structure_constants(self) -> dict[tuple[Root, Root], int]:
        pos = self.pos
        order = {a: k for k, a in enumerate(pos)}
        npos: dict[tuple[Root, Root], int] = {}

        def N(r: Root, s: Root) -> Fraction:
            t = _neg(_add(r, s))
            if not any(t) or t not in self._roots:
                return Fraction(0)
            pr, ps = _is_pos(r), _is_pos(s)
            if pr and ps:
                return Fraction(npos[(r, s)])
            if not pr and not ps:
                return Fraction(-npos[(_neg(r), _neg(s))])
            ip = self.ip
            # Cyclic triple r + s + t = 0: N_rs/(t,t) = N_st/(r,r) = N_tr/(s,s).
            if _is_pos(t):
                if pr:
                    return ip(t, t) / ip(s, s) * npos[(t, r)]
                return ip(t, t) / ip(r, r) * npos[(s, t)]
            # Two negatives: use the negated triple and N_{-x,-y} = -N_{x,y}.
            if not pr:
                val = ip(t, t) / ip(s, s) * npos[(_neg(t), _neg(r))]
            else:
                val = ip(t, t) / ip(r, r) * npos[(_neg(s), _neg(t))]
            return -val

        for xi in pos:
            if sum(xi) == 1:
                continue
            pairs = [(g, _add(xi, _neg(g))) for g in pos
                     if _add(xi, _neg(g)) in order and order[g] < order[_add(xi, _neg(g))]]
            a, b = pairs[0]
            nab = self._string_p(a, b) + 1
            npos[(a, b)] = nab
            npos[(b, a)] = -nab
            xx = self.ip(xi, xi)
            for g, d in pairs[1:]:
                val = Fraction(0)
                bg = _add(b, _neg(g))
                if any(bg) and bg in self._roots:
                    val += N(b, _neg(g)) * N(a, _neg(d)) / self.ip(bg, bg)
                ag = _add(a, _neg(g))
                if any(ag) and ag in self._roots:
                    val += N(_neg(g), a) * N(b, _neg(d)) / self.ip(ag, ag)
                val = xx / nab * val
                assert val.denominator == 1, (xi, g, d, val)
                npos[(g, d)] = int(val)
                npos[(d, g)] = -int(val)

        full: dict[tuple[Root, Root], int] = {}
        roots = sorted(self._roots)
        for r in roots:
            for s in roots:
                v = N(r, s)
                if v:
                    assert v.denominator == 1
                    full[(r, s)] = int(v)
        return full

    def N(self, a: Root, b: Root) -> int:
        """Structure constant with ``[E_a, E_b] = N_{a,b} E_{a+b}`` (0 if ``a+b`` is not a root)."""
        return self._N.get((tuple(a), tuple(b)), 0)

    def _bracket_table(self) -> dict[tuple[int, int], SparseVec]:
        table: dict[tuple[int, int], SparseVec] = {}
        d = self.dim
        for i in range(d):
            for j in range(d):
                v = self._bracket_basis(i, j)
                if v:
                    table[(i, j)] = v
        return table

    def _bracket_basis(self, i: int, j: int) -> SparseVec:
        a, b = self.basis_root(i), self.basis_root(j)
        if a is None and b is None:
            return {}
        if a is None:
            c = self.weight_of_root(b)[i - 2 * self.n_pos]
            return {j: c} if c else {}
        if b is None:
            c = self.weight_of_root(a)[j - 2 * self.n_pos]
            return {i: -c} if c else {}
        s = _add(a, b)
        if not any(s):
            return {self.h_index(k + 1): c for k, c in enumerate(self.coroot_coeffs(a)) if c}
        n = self.N(a, b)
        return {self.root_index(s): n} if n else {}

    # -- elements ------------------------------------------------------------

    def basis(self, k: int | str) -> "Element":
        if isinstance(k, str):
            k = self.label_index[k]
        return Element(self, {k: 1})

    def E(self, a: Root) -> "Element":
        return Element(self, {self.root_index(a): 1})

    def F(self, a: Root) -> "Element":
        return Element(self, {self.root_index(_neg(tuple(a))): 1})

    def H(self, a: Root) -> "Element":
        """The coroot ``H_a`` as an element."""
        return Element(self, {self.h_index(k + 1): c
                              for k, c in enumerate(self.coroot_coeffs(tuple(a))) if c})

    def element(self, coeffs: SparseVec) -> "Element":
        return Element(self, dict(coeffs))

    def bracket_vec(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        t = self.table
        for i, a in x.items():
            for j, b in y.items():
                v = t.get((i, j))
                if v:
                    axpy(out, a * b, v)
        return out

    def bracket(self, x: "Element", y: "Element") -> "Element":
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("elements belong to a different algebra")
        return Element(self, self.bracket_vec(x.coeffs, y.coeffs))

    # -- adjoint action and Killing form --------------------------------------

    @cached_property
    def ad_columns(self) -> list[list[SparseVec]]:
        """``ad_columns[i][j]`` is ``[b_i, b_j]`` -- column ``j`` of ``ad(b_i)``."""
        d = self.dim
        cols = [[{} for _ in range(d)] for _ in range(d)]
        for (i, j), v in self.table.items():
            cols[i][j] = v
        return cols

    @cached_property
    def killing_matrix(self) -> list[list[Fraction]]:
        d = self.dim
        ad = self.ad_columns
        km = [[0] * d for _ in range(d)]
        for i in range(d):
            for k in range(i, d):
                # tr(ad b_i ad b_k) = sum_j <e_j, ad b_i ad b_k e_j>
                tr = 0
                for j in range(d):
                    for m, c in ad[k][j].items():
                        v = ad[i][m].get(j)
                        if v:
                            tr += c * v
                km[i][k] = km[k][i] = tr
        return km

    def killing_form(self, x: "Element", y: "Element") -> int | Fraction:
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("elements belong to a different algebra")
        km = self.killing_matrix
        return q(sum((a * b * km[i][j] for i, a in x.coeffs.items()
                      for j, b in y.coeffs.items()), Fraction(0)))

    def sl2_triple(self, alpha: Root) -> "Sl2Triple":
        alpha = tuple(alpha)
        if alpha not in self._pos_index:
            raise NotARoot(f"{alpha} is not a positive root of {self.rs}")
        return Sl2Triple(self.E(alpha), self.F(alpha), self.H(alpha))

    # -- checks and export ---------------------------------------------------

    def jacobi_failures(self, limit: int | None = None) -> list[tuple[int, int, int]]:
        """Basis triples ``i < j < k`` on which the Jacobi identity fails."""
        d = self.dim
        bad = []
        bv = self.bracket_vec
        for i in range(d):
            for j in range(i + 1, d):
                ij = self.table.get((i, j), {})
                for k in range(j + 1, d):
                    s = bv(ij, {k: 1})
                    axpy(s, 1, bv(self.table.get((j, k), {}), {i: 1}))
                    axpy(s, 1, bv(self.table.get((k, i), {}), {j: 1}))
                    if s:
                        bad.append((i, j, k))
                        if limit and len(bad) >= limit:
                            return bad
        return bad

    def export_table(self) -> list:
        """Sparse triples ``[i, j, [[k, c], ...]]`` with 0-based indices."""
        return [[i, j, [[k, int(c)] for k, c in sorted(v.items())]]
                for (i, j), v in sorted(self.table.items())]

    def to_json(self) -> dict:
        return {
            "type": str(self.rs.rtype),
            "dim": self.dim,
            "basis": self.labels,
            "positive_roots": [list(a) for a in self.pos],
            "bracket": self.export_table(),
        }

    def __repr__(self) -> str:
        return f"LieAlgebra({self.rs.rtype})"


@dataclass(frozen=True)
class Element:
    algebra: LieAlgebra = field(repr=False, compare=False)
    coeffs: SparseVec

    def __add__(self, other: "Element") -> "Element":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to a different algebra")
        out = dict(self.coeffs)
        axpy(out, 1, other.coeffs)
        return Element(self.algebra, out)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __rmul__(self, c) -> "Element":
        if not c:
            return Element(self.algebra, {})
        return Element(self.algebra, {k: q(c * v) for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and other.algebra is self.algebra
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        lab = self.algebra.labels
        return " + ".join(f"{v}*{lab[k]}" for k, v in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class Sl2Triple:
    e: Element
    f: Element
    h: Element

    def holds(self) -> bool:
        g = self.e.algebra
        return (g.bracket(self.h, self.e) == 2 * self.e
                and g.bracket(self.h, self.f) == -2 * self.f
                and g.bracket(self.e, self.f) == self.h)


@lru_cache(maxsize=None)
def _chevalley_cached(t: R.RootSystemType) -> LieAlgebra:
    return LieAlgebra(R.build(t))


def chevalley_basis(rs: R.RootSystem | R.RootSystemType | str) -> LieAlgebra:
    """Build (and cache) the Chevalley basis for ``rs``."""
    if isinstance(rs, R.RootSystem):
        return _chevalley_cached(rs.rtype)
    if not isinstance(rs, R.RootSystemType):
        rs = R.RootSystemType.parse(rs)
    return _chevalley_cached(rs)
