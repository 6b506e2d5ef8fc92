"""Exact rational linear algebra on sparse vectors.

Vectors are ``dict[int, Fraction | int]`` mapping coordinate index to a
nonzero entry.  Integral values are stored as ``int`` to keep the hot loops
cheap; everything else is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction | int
SparseVec = dict[int, Rational]


def q(x) -> Rational:
    """Normalize a rational: ``Fraction`` with denominator 1 becomes ``int``."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return q(parse_rational(x))
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        raise TypeError("floating point values are not accepted as exact rationals")
    return Fraction(str(s).strip())


def fmt_rational(x) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(x))


def fmt_vector(v: Iterable) -> list[str]:
    return [fmt_rational(x) for x in v]


# ---------------------------------------------------------------------------
# sparse vector helpers


def axpy(y: SparseVec, a: Rational, x: SparseVec) -> None:
    """In place ``y += a*x``, dropping entries that cancel."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(x: SparseVec, a: Rational) -> SparseVec:
    if not a:
        return {}
    return {k: q(a * v) for k, v in x.items()}


def add(*vs: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def sub(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    axpy(out, -1, y)
    return out


def clean(x: SparseVec) -> SparseVec:
    return {k: q(v) for k, v in x.items() if v}


def to_dense(x: SparseVec, n: int) -> list[Rational]:
    out: list[Rational] = [0] * n
    for k, v in x.items():
        out[k] = v
    return out


def from_dense(row: Sequence) -> SparseVec:
    return {i: q(Fraction(v)) for i, v in enumerate(row) if v}


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^n held as reduced row-echelon sparse rows.

    Every row has leading entry 1 at its pivot and zeros at the pivots of all
    other rows, so reduction against the basis is a single pass.
    """

    __slots__ = ("ambient_dim", "_rows")

    def __init__(self, ambient_dim: int, vectors: Iterable[SparseVec] = ()):
        self.ambient_dim = ambient_dim
        self._rows: dict[int, SparseVec] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    @property
    def basis(self) -> list[SparseVec]:
        """Rows ordered by strictly increasing pivot."""
        return [self._rows[p] for p in sorted(self._rows)]

    def reduce(self, v: SparseVec) -> SparseVec:
        """Return ``v`` minus its component along the current basis."""
        r = dict(v)
        rows = self._rows
        for c in [c for c in r if c in rows]:
            a = r.get(c)
            if a:
                axpy(r, -a, rows[c])
        return r

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def add(self, v: SparseVec) -> SparseVec | None:
        """Insert ``v``; return the new normalized row, or ``None`` if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        lead = r[p]
        if lead != 1:
            inv = Fraction(1) / lead
            r = {k: q(a * inv) for k, a in r.items()}
        for row in self._rows.values():
            a = row.get(p)
            if a:
                axpy(row, -a, r)
        self._rows[p] = r
        return r

    def coordinates(self, v: SparseVec) -> list[Rational]:
        """Coefficients of ``v`` in :attr:`basis`; raises if ``v`` is not a member."""
        if self.reduce(v):
            raise ValueError("vector is not in the subspace")
        return [v.get(p, 0) for p in sorted(self._rows)]

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim


# ---------------------------------------------------------------------------
# dense helpers built on Subspace


def rank(rows: Iterable[SparseVec], n: int) -> int:
    return Subspace(n, rows).dim


def nullspace(columns: Sequence[SparseVec], n: int) -> list[SparseVec]:
    """Kernel of the linear map whose ``j``-th column is ``columns[j]``.

    ``n`` is the number of columns (domain dimension).  The kernel basis is
    returned in reduced row-echelon order, so the first vector is the
    lexicographically first echelon vector.
    """
    # Row-reduce the augmented system [A^T | I] column-wise: track which
    # combinations of columns vanish.
    pivot_rows: dict[int, tuple[SparseVec, SparseVec]] = {}
    kernel = Subspace(n)
    for j in range(n):
        img = dict(columns[j])
        comb: SparseVec = {j: 1}
        while img:
            p = min(img)
            if p not in pivot_rows:
                break
            prow, pcomb = pivot_rows[p]
            a = img[p]
            axpy(img, -a, prow)
            axpy(comb, -a, pcomb)
        if img:
            p = min(img)
            inv = Fraction(1) / img[p]
            pivot_rows[p] = (scale(img, inv), scale(comb, inv))
        else:
            kernel.add(comb)
    return kernel.basis


def solve(columns: Sequence[SparseVec], n: int, target: SparseVec) -> list[Rational] | None:
    """Find ``x`` with ``sum_j x_j columns[j] = target``; ``None`` if inconsistent."""
    pivot_rows: dict[int, tuple[SparseVec, SparseVec]] = {}
    for j in range(n):
        img = dict(columns[j])
        comb: SparseVec = {j: 1}
        while img:
            p = min(img)
            if p not in pivot_rows:
                break
            prow, pcomb = pivot_rows[p]
            a = img[p]
            axpy(img, -a, prow)
            axpy(comb, -a, pcomb)
        if img:
            p = min(img)
            inv = Fraction(1) / img[p]
            pivot_rows[p] = (scale(img, inv), scale(comb, inv))
    t = dict(target)
    x: SparseVec = {}
    while t:
        p = min(t)
        if p not in pivot_rows:
            return None
        prow, pcomb = pivot_rows[p]
        a = t[p]
        axpy(t, -a, prow)
        axpy(x, a, pcomb)
    return [q(x.get(j, 0)) for j in range(n)]
