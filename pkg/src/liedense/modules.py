"""Finite-dimensional modules over a Chevalley-basis Lie algebra.

A :class:`Representation` stores one sparse exact matrix per basis element
of the algebra, column by column: ``mats[x][j]`` is ``rho(b_x) e_j``.  Every
construction shipped here produces a weight basis (all ``rho(H_i)``
diagonal), which the closure engine exploits.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from . import roots as R
from .chevalley import LieAlgebra, chevalley_basis
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    DimensionOverflow,
    NonDiagonalizable,
    NonDominant,
    NotARepresentation,
    NotFoundWithinBound,
    NotInSpan,
)
from .linalg import (
    SparseVec,
    Subspace,
    axpy,
    fmt_rational,
    nullspace,
    parse_rational,
    q,
    solve,
)

DEFAULT_MAX_DIM = 3000


def max_dim() -> int:
    return int(os.environ.get("LIEDENSE_MAX_DIM", DEFAULT_MAX_DIM))


def check_dim(n: int, what: str = "module") -> None:
    limit = max_dim()
    if n > limit:
        raise DimensionOverflow(
            f"{what} of dimension {n} exceeds the limit {limit} (set LIEDENSE_MAX_DIM)")


Matrix = list[SparseVec]


class Representation:
    """A module given by exact matrices for every basis element of ``algebra``."""

    def __init__(self, algebra: LieAlgebra, dim: int, mats: list[Matrix], name: str = ""):
        if len(mats) != algebra.dim:
            raise ValueError(f"need {algebra.dim} matrices, got {len(mats)}")
        self.algebra = algebra
        self.dim = dim
        self.mats = mats
        self.name = name or f"module(dim={dim})"

    def __repr__(self) -> str:
        return f"Representation({self.algebra.rs.rtype}, {self.name}, dim={self.dim})"

    def act(self, x: int, v: SparseVec) -> SparseVec:
        """``rho(b_x) v`` for a basis index ``x``."""
        col = self.mats[x]
        out: SparseVec = {}
        for j, c in v.items():
            for i, a in col[j].items():
                s = out.get(i, 0) + c * a
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def act_element(self, x: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for k, a in x.items():
            axpy(out, a, self.act(k, v))
        return out

    def dense(self, x: int) -> list[list]:
        m = [[0] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(self.mats[x]):
            for i, a in col.items():
                m[i][j] = a
        return m

    @cached_property
    def is_weight_basis(self) -> bool:
        g = self.algebra
        for i in range(1, g.rank + 1):
            for j, col in enumerate(self.mats[g.h_index(i)]):
                if any(k != j for k in col):
                    return False
        return True

    @cached_property
    def weights(self) -> list[tuple] | None:
        """Dynkin labels of each basis vector when the basis is a weight basis."""
        if not self.is_weight_basis:
            return None
        g = self.algebra
        hs = [self.mats[g.h_index(i)] for i in range(1, g.rank + 1)]
        return [tuple(q(h[j].get(j, 0)) for h in hs) for j in range(self.dim)]

    @cached_property
    def weight_blocks(self) -> dict[tuple, list[int]]:
        blocks: dict[tuple, list[int]] = defaultdict(list)
        for j, w in enumerate(self.weights):
            blocks[w].append(j)
        return dict(blocks)

    def homomorphism_failures(self, limit: int | None = None) -> list[tuple[int, int]]:
        """Basis pairs ``(x, y)`` with ``rho([x,y]) != [rho(x), rho(y)]``."""
        g = self.algebra
        bad = []
        for x in range(g.dim):
            for y in range(x + 1, g.dim):
                xy = g.table.get((x, y), {})
                for j in range(self.dim):
                    e = {j: 1}
                    v = self.act(x, self.act(y, e))
                    axpy(v, -1, self.act(y, self.act(x, e)))
                    axpy(v, -1, self.act_element(xy, e))
                    if v:
                        bad.append((x, y))
                        break
                if limit and len(bad) >= limit:
                    return bad
        return bad

    def is_representation(self) -> bool:
        return not self.homomorphism_failures(limit=1)

    def to_json(self) -> dict:
        g = self.algebra
        return {
            "algebra": str(g.rs.rtype),
            "dim": self.dim,
            "matrices": {lab: [[fmt_rational(a) for a in row] for row in self.dense(k)]
                         for k, lab in enumerate(g.labels)},
        }


def _same_algebra(*reps: Representation) -> LieAlgebra:
    g = reps[0].algebra
    for r in reps[1:]:
        if r.algebra is not g:
            raise AlgebraMismatch(f"{r} and {reps[0]} are modules over different algebras")
    return g


def _as_algebra(g) -> LieAlgebra:
    return g if isinstance(g, LieAlgebra) else chevalley_basis(g)


# ---------------------------------------------------------------------------
# constructions


def trivial(g, dim: int = 1) -> Representation:
    g = _as_algebra(g)
    return Representation(g, dim, [[{} for _ in range(dim)] for _ in range(g.dim)], "trivial")


def sl2_irrep(n: int) -> Representation:
    """The ``(n+1)``-dimensional irreducible ``sl(2)`` module with integer matrices.

    Basis ``v_0 .. v_n`` with ``H v_k = (n-2k) v_k``, ``F v_k = v_{k+1}`` and
    ``E v_k = k(n-k+1) v_{k-1}``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    g = chevalley_basis("A1")
    d = n + 1
    e = [({k - 1: k * (n - k + 1)} if k > 0 else {}) for k in range(d)]
    f = [({k + 1: 1} if k < n else {}) for k in range(d)]
    h = [({k: n - 2 * k} if n - 2 * k else {}) for k in range(d)]
    mats = [None] * 3
    mats[g.root_index((1,))] = e
    mats[g.root_index((-1,))] = f
    mats[g.h_index(1)] = h
    return Representation(g, d, mats, f"V({n})")


def adjoint_rep(g) -> Representation:
    g = _as_algebra(g)
    cols = g.ad_columns
    return Representation(g, g.dim, [[dict(c) for c in cols[x]] for x in range(g.dim)], "adjoint")


def dual(rep: Representation) -> Representation:
    """Contragredient module: ``rho*(x) = -rho(x)^T``."""
    d = rep.dim
    mats = []
    for m in rep.mats:
        t = [dict() for _ in range(d)]
        for j, col in enumerate(m):
            for i, a in col.items():
                t[i][j] = -a
        mats.append(t)
    return Representation(rep.algebra, d, mats, f"dual({rep.name})")


def direct_sum(a: Representation, b: Representation) -> Representation:
    g = _same_algebra(a, b)
    check_dim(a.dim + b.dim)
    off = a.dim
    mats = []
    for ma, mb in zip(a.mats, b.mats):
        mats.append([dict(c) for c in ma] + [{i + off: v for i, v in c.items()} for c in mb])
    return Representation(g, a.dim + b.dim, mats, f"({a.name} + {b.name})")


def tensor(a: Representation, b: Representation) -> Representation:
    """``rho(x)(v (x) w) = rho_a(x) v (x) w + v (x) rho_b(x) w``; index ``i*dim_b + j``."""
    g = _same_algebra(a, b)
    n = a.dim * b.dim
    check_dim(n)
    db = b.dim
    mats = []
    for ma, mb in zip(a.mats, b.mats):
        cols = []
        for i in range(a.dim):
            ca = ma[i]
            for j in range(db):
                col: SparseVec = {k * db + j: v for k, v in ca.items()}
                for l, v in mb[j].items():
                    key = i * db + l
                    s = col.get(key, 0) + v
                    if s:
                        col[key] = s
                    else:
                        col.pop(key, None)
                cols.append(col)
        mats.append(cols)
    return Representation(g, n, mats, f"({a.name} x {b.name})")


def module_tensor_g(w: Representation) -> Representation:
    """The module ``W (x) g`` with ``x.(v (x) y) = x v (x) y + v (x) [x, y]``."""
    out = tensor(w, adjoint_rep(w.algebra))
    out.name = f"{w.name} (x) g"
    return out


def pure_tensor(v: SparseVec, y: SparseVec, dim_b: int) -> SparseVec:
    """Coordinates of ``v (x) y`` in a tensor product with second factor of dimension ``dim_b``."""
    out: SparseVec = {}
    for i, a in v.items():
        for k, b in y.items():
            out[i * dim_b + k] = q(a * b)
    return out


# ---------------------------------------------------------------------------
# weights


def weight_decomposition(rep: Representation) -> list[tuple[R.Vec, Subspace]]:
    """Simultaneous eigenspaces of the Cartan matrices, as ``(weight, subspace)`` pairs.

    Weights are returned as ambient vectors of the algebra's root system and
    are sorted by their Dynkin labels (descending).
    """
    g = rep.algebra
    rs = g.rs
    if rep.is_weight_basis:
        return [(rs.from_dynkin(w), Subspace(rep.dim, [{j: 1} for j in idx]))
                for w, idx in sorted(rep.weight_blocks.items(), reverse=True)]
    blocks = _split_eigenspaces(rep)
    return [(rs.from_dynkin(w), sp) for w, sp in sorted(blocks.items(), reverse=True)]


def _split_eigenspaces(rep: Representation) -> dict[tuple, Subspace]:
    import sympy

    g = rep.algebra
    parts: list[tuple[tuple, Subspace]] = [((), Subspace(rep.dim, [{j: 1} for j in range(rep.dim)]))]
    for i in range(1, g.rank + 1):
        h = g.h_index(i)
        nxt = []
        for key, sp in parts:
            basis = sp.basis
            m = len(basis)
            cols = []
            for b in basis:
                img = rep.act(h, b)
                try:
                    cols.append(sp.coordinates(img))
                except ValueError:
                    raise NonDiagonalizable("Cartan elements do not commute") from None
            mat = sympy.Matrix(m, m, lambda r, c: sympy.Rational(str(Fraction(cols[c][r]))))
            found = 0
            for ev in sorted(mat.eigenvals(), key=sympy.default_sort_key):
                if not ev.is_rational:
                    raise NonDiagonalizable(f"eigenvalue {ev} of H_{i} is not rational")
                c = Fraction(int(ev.p), int(ev.q))
                shifted = [{r: q(Fraction(cols[j][r]) - (c if r == j else 0))
                            for r in range(m) if Fraction(cols[j][r]) - (c if r == j else 0)}
                           for j in range(m)]
                ker = nullspace(shifted, m)
                vecs = []
                for kv in ker:
                    v: SparseVec = {}
                    for r, a in kv.items():
                        axpy(v, a, basis[r])
                    vecs.append(v)
                found += len(vecs)
                nxt.append((key + (q(c),), Subspace(rep.dim, vecs)))
            if found != m:
                raise NonDiagonalizable(f"H_{i} is not diagonalizable over the rationals")
        parts = nxt
    return dict(parts)


def in_weight_basis(rep: Representation) -> Representation:
    """An isomorphic copy of ``rep`` whose basis consists of weight vectors."""
    if rep.is_weight_basis:
        return rep
    blocks = _split_eigenspaces(rep)
    basis: list[SparseVec] = []
    for _, sp in sorted(blocks.items(), reverse=True):
        basis.extend(sp.basis)
    return restrict(rep, basis, name=rep.name)


def restrict(rep: Representation, basis: Sequence[SparseVec], name: str = "") -> Representation:
    """Matrices of ``rep`` on an invariant subspace with the given (independent) basis."""
    n = len(basis)
    whole = Subspace(rep.dim)
    for b in basis:
        whole.add(b)
    if whole.dim != n:
        raise ValueError("basis vectors are linearly dependent")
    mats = []
    for x in range(rep.algebra.dim):
        cols = []
        for b in basis:
            img = rep.act(x, b)
            coords = solve(basis, n, img)
            if coords is None:
                raise NotInSpan("subspace is not invariant")
            cols.append({i: c for i, c in enumerate(coords) if c})
        mats.append(cols)
    return Representation(rep.algebra, n, mats, name or f"sub({rep.name})")


def restrict_rref(rep: Representation, sub: Subspace, name: str = "") -> Representation:
    """Like :func:`restrict` for a reduced-echelon basis; coordinates are read off pivots."""
    basis = sub.basis
    pivots = sub.pivots
    mats = []
    for x in range(rep.algebra.dim):
        cols = []
        for b in basis:
            img = rep.act(x, b)
            coords = {i: img[p] for i, p in enumerate(pivots) if img.get(p)}
            chk = dict(img)
            for i, c in coords.items():
                axpy(chk, -c, basis[i])
            if chk:
                raise NotInSpan("subspace is not invariant")
            cols.append({i: q(c) for i, c in coords.items()})
        mats.append(cols)
    return Representation(rep.algebra, len(basis), mats, name or f"sub({rep.name})")


def boundedness_of_weights(weights: Iterable[Sequence], roots: Iterable[Sequence]) -> Fraction:
    """``max |pairing(lam, alpha)|`` over the given ambient weights and roots."""
    roots = list(roots)
    best = Fraction(0)
    for lam in weights:
        for a in roots:
            best = max(best, abs(R.pairing(lam, a)))
    return best


def boundedness(rep: Representation) -> int:
    """Largest ``|lam(H_alpha)|`` over weights ``lam`` of ``rep`` and roots ``alpha``."""
    g = rep.algebra
    if rep.is_weight_basis:
        labels = list(rep.weight_blocks)
    else:
        labels = list(_split_eigenspaces(rep))
    cor = [g.coroot_coeffs(a) for a in g.pos]
    best = 0
    for lab in labels:
        for c in cor:
            best = max(best, abs(sum(x * y for x, y in zip(lab, c))))
    return int(best)


def weyl_dim(rs: R.RootSystem, lam: Sequence) -> int:
    """Weyl dimension formula ``prod (lam + rho, a) / (rho, a)`` over positive roots."""
    if not (rs.is_integral(lam) and rs.is_dominant(lam)):
        raise NonDominant(f"{R.fmt(lam)} is not dominant integral")
    rho = rs.rho
    lr = R.vadd(lam, rho)
    out = Fraction(1)
    for a in rs.positive_roots:
        out *= R.dot(lr, a) / R.dot(rho, a)
    assert out.denominator == 1
    return int(out)


# ---------------------------------------------------------------------------
# highest-weight construction


def highest_weight_vectors(m: Representation, labels: tuple) -> list[SparseVec]:
    """Basis (reduced echelon) of vectors of weight ``labels`` killed by every simple ``E_i``."""
    g = m.algebra
    idx = m.weight_blocks.get(tuple(labels), [])
    if not idx:
        return []
    ops = [g.root_index(tuple(int(k == i) for k in range(g.rank))) for i in range(g.rank)]
    cols = []
    for j in idx:
        col: SparseVec = {}
        for t, x in enumerate(ops):
            for i, a in m.act(x, {j: 1}).items():
                col[t * m.dim + i] = a
        cols.append(col)
    out = []
    for kv in nullspace(cols, len(idx)):
        out.append({idx[r]: a for r, a in kv.items()})
    return out


def construct_irrep(rs, lam: Sequence, k_max: int = 3) -> tuple[Representation, int]:
    """Irreducible module of highest weight ``lam`` found inside ``adjoint^{(x) k}``.

    Returns the module and the tensor power ``k`` where it was found.
    """
    from .closure import generated_submodule

    if not isinstance(rs, R.RootSystem):
        rs = R.build(rs)
    lam = R.vec(lam)
    inside, _ = R.in_root_lattice(rs, lam)
    if not inside:
        raise NotInSpan(f"{R.fmt(lam)} is not in the root lattice")
    target = weyl_dim(rs, lam)
    labels = tuple(int(c) for c in rs.dynkin_labels(lam))
    g = chevalley_basis(rs)
    ad = adjoint_rep(g)
    power = None
    for k in range(1, k_max + 1):
        power = ad if k == 1 else tensor(power, ad)
        hw = highest_weight_vectors(power, labels)
        if not hw:
            continue
        sub, _ = generated_submodule([hw[0]], power)
        if sub.dim != target:
            raise DimensionMismatch(
                f"generated module has dimension {sub.dim}, Weyl formula gives {target}")
        name = f"L({','.join(str(c) for c in labels)})"
        return restrict_rref(power, sub, name=name), k
    raise NotFoundWithinBound(f"no highest-weight vector of weight {labels} for k <= {k_max}")


# ---------------------------------------------------------------------------
# file format


def _derive_missing(g: LieAlgebra, mats: dict[int, list[list[Fraction]]], d: int) -> None:
    """Fill root-vector matrices from the simple ones via ``E_{a+b} = [E_a, E_b] / N_{a,b}``."""

    def mm(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(d) if a[i][k]), Fraction(0))
                 for j in range(d)] for i in range(d)]

    for sign in (1, -1):
        for xi in g.pos:
            k = g.root_index(tuple(sign * x for x in xi))
            if k in mats:
                continue
            for a in g.pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if not g.is_root(b) or not any(x > 0 for x in b):
                    continue
                sa, sb = tuple(sign * x for x in a), tuple(sign * x for x in b)
                ka, kb = g.root_index(sa), g.root_index(sb)
                if ka in mats and kb in mats:
                    n = g.N(sa, sb)
                    ab, ba = mm(mats[ka], mats[kb]), mm(mats[kb], mats[ka])
                    mats[k] = [[(ab[i][j] - ba[i][j]) / n for j in range(d)] for i in range(d)]
                    break
            else:
                raise NotARepresentation(f"cannot derive matrix for {g.labels[k]}")


def rep_from_json(data: dict, validate: bool = True) -> Representation:
    """Load the JSON module format; validates the homomorphism property by default."""
    try:
        g = chevalley_basis(data["algebra"])
        d = int(data["dim"])
        raw = data["matrices"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed representation file: {exc}") from None
    check_dim(d)
    dense: dict[int, list[list[Fraction]]] = {}
    for lab, m in raw.items():
        if lab not in g.label_index:
            raise ValueError(f"unknown basis label {lab!r} for {g.rs.rtype}")
        if len(m) != d or any(len(r) != d for r in m):
            raise ValueError(f"matrix {lab} is not {d}x{d}")
        dense[g.label_index[lab]] = [[parse_rational(x) for x in r] for r in m]
    needed = [g.h_index(i) for i in range(1, g.rank + 1)]
    for i in range(g.rank):
        simple = tuple(int(k == i) for k in range(g.rank))
        needed += [g.root_index(simple), g.root_index(tuple(-x for x in simple))]
    missing = [g.labels[k] for k in needed if k not in dense]
    if missing:
        raise ValueError(f"missing generator matrices: {', '.join(missing)}")
    _derive_missing(g, dense, d)
    mats = []
    for x in range(g.dim):
        m = dense[x]
        mats.append([{i: q(m[i][j]) for i in range(d) if m[i][j]} for j in range(d)])
    rep = Representation(g, d, mats, data.get("name", "file"))
    if validate:
        bad = rep.homomorphism_failures(limit=1)
        if bad:
            x, y = bad[0]
            raise NotARepresentation(
                f"rho([{g.labels[x]},{g.labels[y]}]) != [rho({g.labels[x]}),rho({g.labels[y]})]")
    return rep


def load_representation(path: str | Path, validate: bool = True) -> Representation:
    with open(path) as fh:
        data = json.load(fh)
    rep = rep_from_json(data, validate=validate)
    rep.name = data.get("name", Path(path).stem)
    return rep


def dump_representation(rep: Representation, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(rep.to_json(), fh, indent=1, sort_keys=True)
        fh.write("\n")
