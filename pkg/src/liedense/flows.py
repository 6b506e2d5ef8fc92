"""Polynomial vector fields on C^n, their flows, and the quadric/symplectic checks.

The symbolic layer is exact: polynomials are sympy ``Poly`` objects over the
Gaussian rationals.  The numeric layer works in complex double precision.
Brackets use the derivation convention ``[X, Y] f = X(Y f) - Y(X f)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
import sympy as sp
from scipy.linalg import expm

from .errors import DimensionMismatch, NonFinite, NotAShear, NotSymplectic
from .linalg import fmt_rational, parse_rational

__all__ = [
    "PolyVectorField", "FlowResult", "coordinates", "monomial", "poly",
    "linear_field", "constant_field", "apply_field", "bracket_fields", "scale_field",
    "add_fields", "integrals", "quadric_fields", "quadric_field", "quadric_tangency",
    "quadric_bracket_failures", "so_standard_weights", "so_standard_boundedness",
    "shear_flow", "overshear_flow", "flow_rk4", "euler_product", "euler_step",
    "flow_map", "commutator_slope", "rotation_field", "symplectic_orbit_check",
    "random_symplectic", "field_to_json", "field_from_json", "poly_to_json",
    "poly_from_json",
]

GUARD = 1e12
DOMAIN = sp.QQ_I


@lru_cache(maxsize=None)
def _symbols(n: int) -> tuple[sp.Symbol, ...]:
    return sp.symbols(f"z0:{n}")


def poly(expr, n: int) -> sp.Poly:
    """A polynomial in ``z0..z{n-1}`` over the Gaussian rationals."""
    return sp.Poly(expr, *_symbols(n), domain=DOMAIN)


def coordinates(n: int) -> list[sp.Poly]:
    return [poly(z, n) for z in _symbols(n)]


def monomial(n: int, indices: Sequence[int]) -> sp.Poly:
    """Product of the coordinates listed in ``indices`` (with repetition)."""
    out = poly(1, n)
    zs = coordinates(n)
    for i in indices:
        out = out * zs[i]
    return out


def _nvars(p: sp.Poly) -> int:
    return len(p.gens)


@dataclass(frozen=True)
class PolyVectorField:
    """``sum_i components[i] * d/dz_i`` on ``C^n``."""

    n: int
    components: tuple[sp.Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise DimensionMismatch(f"{len(self.components)} components for C^{self.n}")
        for c in self.components:
            if _nvars(c) != self.n:
                raise DimensionMismatch("component lives in a different ring")

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyVectorField) and self.n == other.n
                and all((a - b).is_zero for a, b in zip(self.components, other.components)))

    def __hash__(self):
        return hash((self.n, tuple(c.as_expr() for c in self.components)))

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return add_fields(self, other)

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return add_fields(self, scale_field(-1, other))

    def __neg__(self) -> "PolyVectorField":
        return scale_field(-1, self)

    def __rmul__(self, c) -> "PolyVectorField":
        return scale_field(c, self)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    @property
    def degree(self) -> int:
        return max((c.total_degree() for c in self.components if not c.is_zero), default=0)

    def __call__(self, p: Sequence) -> list:
        """Exact value at a point with rational or Gaussian-rational coordinates."""
        subs = dict(zip(_symbols(self.n), [sp.nsimplify(x) for x in p]))
        return [sp.expand(c.as_expr().subs(subs)) for c in self.components]

    def affine_parts(self) -> tuple[np.ndarray, np.ndarray]:
        """``(A, b)`` with ``X(z) = A z + b``; requires degree <= 1."""
        if self.degree > 1:
            raise NotAShear("field is not affine")
        zs = _symbols(self.n)
        A = np.zeros((self.n, self.n), dtype=complex)
        b = np.zeros(self.n, dtype=complex)
        for i, c in enumerate(self.components):
            for mon, coef in c.terms():
                val = complex(coef)
                if sum(mon) == 0:
                    b[i] = val
                else:
                    A[i, mon.index(1)] = val
        return A, b

    @property
    def numeric(self) -> Callable[[np.ndarray], np.ndarray]:
        return _compile(self)

    def __str__(self) -> str:
        terms = [f"({c.as_expr()})*d{z}" for c, z in zip(self.components, _symbols(self.n))
                 if not c.is_zero]
        return " + ".join(terms) or "0"


def _compile(X: PolyVectorField) -> Callable[[np.ndarray], np.ndarray]:
    f = sp.lambdify(_symbols(X.n), [c.as_expr() for c in X.components], "numpy")

    def call(z: np.ndarray) -> np.ndarray:
        return np.asarray(f(*z), dtype=complex)

    return call


def linear_field(matrix: Sequence[Sequence]) -> PolyVectorField:
    """``X(z) = A z``."""
    n = len(matrix)
    zs = _symbols(n)
    comps = tuple(poly(sum(sp.nsimplify(a) * z for a, z in zip(row, zs)), n) for row in matrix)
    return PolyVectorField(n, comps)


def constant_field(vector: Sequence) -> PolyVectorField:
    n = len(vector)
    return PolyVectorField(n, tuple(poly(sp.nsimplify(a), n) for a in vector))


def _as_poly(c, n: int) -> sp.Poly:
    if isinstance(c, sp.Poly):
        if _nvars(c) != n:
            raise DimensionMismatch("polynomial lives in a different ring")
        return c
    if isinstance(c, Fraction):
        c = sp.Rational(c.numerator, c.denominator)
    return poly(c, n)


def scale_field(c, X: PolyVectorField) -> PolyVectorField:
    """``c * X`` for a scalar or polynomial ``c``."""
    c = _as_poly(c, X.n)
    return PolyVectorField(X.n, tuple(c * a for a in X.components))


def add_fields(*fields: PolyVectorField) -> PolyVectorField:
    n = fields[0].n
    if any(X.n != n for X in fields):
        raise DimensionMismatch("fields on different spaces")
    comps = [poly(0, n)] * n
    for X in fields:
        comps = [a + b for a, b in zip(comps, X.components)]
    return PolyVectorField(n, tuple(comps))


def apply_field(X: PolyVectorField, f) -> sp.Poly:
    """The derivative ``X f = sum_i X_i df/dz_i``."""
    f = _as_poly(f, X.n)
    out = poly(0, X.n)
    for c, z in zip(X.components, _symbols(X.n)):
        if not c.is_zero:
            out = out + c * f.diff(z)
    return out


def bracket_fields(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """``[X, Y]`` with ``[X, Y]_k = X(Y_k) - Y(X_k)``."""
    if X.n != Y.n:
        raise DimensionMismatch(f"fields on C^{X.n} and C^{Y.n}")
    return PolyVectorField(X.n, tuple(apply_field(X, b) - apply_field(Y, a)
                                      for a, b in zip(X.components, Y.components)))


def integrals(X: PolyVectorField, f) -> str:
    """``"first"`` if ``Xf = 0``, ``"second"`` if only ``X^2 f = 0``, else ``"neither"``."""
    xf = apply_field(X, f)
    if xf.is_zero:
        return "first"
    if apply_field(X, xf).is_zero:
        return "second"
    return "neither"


# ---------------------------------------------------------------------------
# the quadric x_0^2 + ... + x_n^2 = 1


def quadric_field(n: int, i: int, j: int) -> PolyVectorField:
    """``X_ij = x_i d_j - x_j d_i`` on ``C^{n+1}``; ``X_ji = -X_ij``, ``X_ii = 0``."""
    d = n + 1
    if not (0 <= i < d and 0 <= j < d):
        raise DimensionMismatch(f"index out of range for C^{d}")
    zs = coordinates(d)
    comps = [poly(0, d)] * d
    if i != j:
        comps[j] = comps[j] + zs[i]
        comps[i] = comps[i] - zs[j]
    return PolyVectorField(d, tuple(comps))


def quadric_fields(n: int) -> list[PolyVectorField]:
    """The ``n(n+1)/2`` fields ``X_ij``, ``0 <= i < j <= n``, in lexicographic order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [quadric_field(n, i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


def quadric_tangency(n: int) -> list[tuple[int, int]]:
    """Index pairs whose field does not annihilate ``x_0^2 + ... + x_n^2 - 1``."""
    d = n + 1
    Q = sum((z * z for z in coordinates(d)), poly(-1, d))
    return [(i, j) for i in range(d) for j in range(i + 1, d)
            if not apply_field(quadric_field(n, i, j), Q).is_zero]


def quadric_bracket_failures(n: int) -> list[tuple[int, int, int, int]]:
    """Quadruples where ``[X_ij, X_kl]`` differs from the Kronecker-delta expansion

    ``d_jk X_il - d_ik X_jl + d_il X_jk - d_jl X_ik``.
    """
    d = n + 1
    X = {(i, j): quadric_field(n, i, j) for i in range(d) for j in range(d)}
    bad = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                for l in range(k + 1, d):
                    rhs = []
                    if j == k:
                        rhs.append(X[i, l])
                    if i == k:
                        rhs.append(-X[j, l])
                    if i == l:
                        rhs.append(X[j, k])
                    if j == l:
                        rhs.append(-X[i, k])
                    expect = add_fields(*rhs) if rhs else scale_field(0, X[i, j])
                    if bracket_fields(X[i, j], X[k, l]) != expect:
                        bad.append((i, j, k, l))
    return bad


def _quadric_coords(X: PolyVectorField) -> list:
    """Coordinates of a linear field in the basis ``X_ij`` (``i < j``, lexicographic).

    ``X_ij`` is the only basis field whose ``j``-th component involves ``x_i``
    with ``i < j``, so the coefficient of ``x_i`` there is the coordinate.
    """
    zs = _symbols(X.n)
    return [X.components[j].coeff_monomial(zs[i])
            for i in range(X.n) for j in range(i + 1, X.n)]


def so_standard_weights(n: int) -> dict:
    """Weights and roots of ``so(n+1)`` read off the fields ``X_ij``.

    The Cartan subalgebra is spanned by ``h_m = sqrt(-1) X_{2m,2m+1}``.
    Weights are its eigenvalues on the linear functions ``x_0, ..., x_n``
    (eigenvectors ``x_{2m} +- sqrt(-1) x_{2m+1}``); roots are its eigenvalues
    under the bracket on ``span{X_ij}``.  All arithmetic is over ``Q(i)``.
    """
    d = n + 1
    r = d // 2
    basis = quadric_fields(n)
    H = [scale_field(sp.I, quadric_field(n, 2 * m, 2 * m + 1)) for m in range(r)]
    zs = coordinates(d)

    def lin(f: sp.Poly) -> sp.Matrix:
        return sp.Matrix([f.coeff_monomial(z.as_expr()) for z in zs])

    # action on linear functions f -> h f
    act = [sp.Matrix.hstack(*[lin(apply_field(h, z)) for z in zs]) for h in H]
    ad = [sp.Matrix([_quadric_coords(bracket_fields(h, B)) for B in basis]).T
          for h in H]
    generic = [10 ** m + 1 for m in range(r)]

    def joint(mats, size):
        combo = sum((c * m for c, m in zip(generic, mats)), sp.zeros(size, size))
        out = []
        for _, _, vecs in combo.eigenvects():
            for v in vecs:
                lam = []
                for m in mats:
                    w = m * v
                    k = next(t for t in range(size) if v[t] != 0)
                    lam.append(sp.nsimplify(sp.simplify(w[k] / v[k])))
                out.append((tuple(lam), v))
        return out

    weights = joint(act, d)
    roots = [lam for lam, _ in joint(ad, len(basis)) if any(x != 0 for x in lam)]
    vectors = []
    for lam, v in weights:
        v = v / next(x for x in v if x != 0)
        f = sum(v[k] * _symbols(d)[k] for k in range(d))
        vectors.append({"weight": [str(x) for x in lam], "vector": str(sp.expand(f))})
    return {"n": n, "rank": r, "weights": [lam for lam, _ in weights], "roots": roots,
            "weight_vectors": vectors}


def so_standard_boundedness(n: int) -> int:
    """``max |2 (lam, a) / (a, a)|`` over weights and roots of the standard ``so(n+1)`` module."""
    from .modules import boundedness_of_weights

    data = so_standard_weights(n)
    to_q = lambda v: [Fraction(str(sp.Rational(x))) for x in v]
    b = boundedness_of_weights([to_q(w) for w in data["weights"]],
                               [to_q(a) for a in data["roots"]])
    return int(b)


def so_cartan_eigenvalue_bound(n: int) -> int:
    """Largest ``|eigenvalue|`` of the basis ``h_m = sqrt(-1) X_{2m,2m+1}`` on ``x_0, ..., x_n``.

    This reads weights against the chosen Cartan basis, not against coroots;
    for odd ``n + 1`` the short coroots ``2 e_m`` double it.
    """
    data = so_standard_weights(n)
    return int(max(abs(sp.Rational(x)) for w in data["weights"] for x in w))


# ---------------------------------------------------------------------------
# flows


@dataclass
class FlowResult:
    endpoint: np.ndarray
    steps: int
    scheme: str


def _point(p) -> np.ndarray:
    return np.array([complex(x) for x in p], dtype=complex)


def _affine_flow(X: PolyVectorField, s: complex, p: np.ndarray) -> np.ndarray:
    """``phi_X^s(p)`` for an affine field via the augmented matrix exponential."""
    A, b = X.affine_parts()
    n = X.n
    aug = np.zeros((n + 1, n + 1), dtype=complex)
    aug[:n, :n] = A
    aug[:n, n] = b
    v = np.append(p, 1)
    return (expm(s * aug) @ v)[:n]


def _eval(f: sp.Poly, p: np.ndarray) -> complex:
    return complex(sp.lambdify(f.gens, f.as_expr(), "numpy")(*p))


def shear_flow(X: PolyVectorField, f, t: complex, p: Sequence) -> np.ndarray:
    """Time-``t`` flow of the shear ``f X`` for an affine complete ``X`` with ``X f = 0``.

    ``f`` is constant along ``X``-orbits, so the flow is ``phi_X^{t f(p)}(p)``.
    """
    f = _as_poly(f, X.n)
    if not apply_field(X, f).is_zero:
        raise NotAShear("X f is not identically zero")
    p = _point(p)
    return _affine_flow(X, t * _eval(f, p), p)


def overshear_flow(X: PolyVectorField, f, t: complex, p: Sequence) -> np.ndarray:
    """Time-``t`` flow of the overshear ``f X`` for an affine ``X`` with ``X^2 f = 0``.

    ``k = (X f)(p)`` is constant along the trajectory, which is
    ``phi_X^{s(t)}(p)`` with ``s' = f(p) + k s``.
    """
    f = _as_poly(f, X.n)
    xf = apply_field(X, f)
    if not apply_field(X, xf).is_zero:
        raise NotAShear("X^2 f is not identically zero")
    p = _point(p)
    f0, k = _eval(f, p), _eval(xf, p)
    s = f0 * t if abs(k * t) < 1e-300 else f0 * np.expm1(k * t) / k
    return _affine_flow(X, s, p)


def flow_rk4(X: PolyVectorField | Callable, p: Sequence, t: complex, steps: int,
             guard: float = GUARD) -> FlowResult:
    """Classical fourth-order Runge-Kutta for ``dc/ds = X(c)``, ``s`` from 0 to ``t``.

    Complex ``t`` integrates along the straight segment ``s = tau t``, ``tau in [0, 1]``.
    Raises :class:`NonFinite` once the trajectory leaves the ball of radius ``guard``.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    F = X.numeric if isinstance(X, PolyVectorField) else X
    h = complex(t) / steps
    z = _point(p)
    for i in range(steps):
        k1 = F(z)
        k2 = F(z + h / 2 * k1)
        k3 = F(z + h / 2 * k2)
        k4 = F(z + h * k3)
        z = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(z)) or np.max(np.abs(z)) > guard:
            raise NonFinite(f"trajectory left |z| <= {guard:g} at step {i + 1} "
                            f"(s = {abs(h) * (i + 1):.6g})")
    return FlowResult(z, steps, "rk4")


def flow_map(X: PolyVectorField, steps_per_unit: int = 2000) -> Callable[[complex, np.ndarray], np.ndarray]:
    """``(s, p) -> phi_X^s(p)``: exact for affine fields, RK4 otherwise."""
    if X.degree <= 1:
        return lambda s, p: _affine_flow(X, s, _point(p))
    return lambda s, p: flow_rk4(X, p, s, max(1, int(abs(s) * steps_per_unit) + 1)).endpoint


def euler_step(X: PolyVectorField) -> Callable[[complex, np.ndarray], np.ndarray]:
    """The family ``F_h(p) = p + h X(p)``."""
    F = X.numeric
    return lambda h, p: _point(p) + h * F(_point(p))


def euler_product(F: Callable[[complex, np.ndarray], np.ndarray], p: Sequence,
                  t: complex, N: int) -> np.ndarray:
    """``F_{t/N}`` composed ``N`` times, applied to ``p``."""
    z = _point(p)
    for _ in range(N):
        z = F(t / N, z)
    return z


def commutator_slope(X: PolyVectorField, Y: PolyVectorField, p: Sequence,
                     t: float) -> np.ndarray:
    """``(phi_Y^{-s} phi_X^{-s} phi_Y^s phi_X^s (p) - p) / t`` with ``s = sqrt(t)``.

    Tends to ``[X, Y](p)`` as ``t -> 0+``.
    """
    fx, fy = flow_map(X), flow_map(Y)
    s = np.sqrt(t)
    z = _point(p)
    w = fy(-s, fx(-s, fy(s, fx(s, z))))
    return (w - z) / t


def rotation_field() -> PolyVectorField:
    """``-y d_x + x d_y`` on ``C^2``: the rotation benchmark, period ``2 pi``."""
    return linear_field([[0, -1], [1, 0]])


# ---------------------------------------------------------------------------
# Lagrangian splittings: the conjugation orbit of diag(I, -I)


def _J(n: int) -> sp.Matrix:
    I, Z = sp.eye(n), sp.zeros(n)
    return sp.Matrix(sp.BlockMatrix([[Z, -I], [I, Z]]))


def symplectic_orbit_check(n: int, g) -> bool:
    """Conjugate ``lam = diag(I, -I)`` by ``g`` and check the orbit equations exactly.

    With ``g lam g^{-1} = [[x, y], [z, w]]`` the conditions are ``w = -x^T``,
    ``y^T = y``, ``z^T = z`` and ``x^2 + y z = I``.
    """
    g = sp.Matrix(g).applyfunc(sp.nsimplify)
    if g.shape != (2 * n, 2 * n):
        raise NotSymplectic(f"expected a {2 * n}x{2 * n} matrix, got {g.shape}")
    J = _J(n)
    if g.T * J * g != J:
        raise NotSymplectic("g^T J g != J")
    ginv = -J * g.T * J  # J^{-1} = -J
    lam = sp.diag(sp.eye(n), -sp.eye(n))
    m = g * lam * ginv
    x, y = m[:n, :n], m[:n, n:]
    z, w = m[n:, :n], m[n:, n:]
    return (w == -x.T and y.T == y and z.T == z and x * x + y * z == sp.eye(n)
            and m.T * J + J * m == sp.zeros(2 * n))


def random_symplectic(n: int, rng: random.Random, factors: int = 4, bound: int = 3) -> sp.Matrix:
    """Product of random integer symplectic generators: unipotent shears and block swaps."""
    I, Z = sp.eye(n), sp.zeros(n)
    g = sp.eye(2 * n)
    for _ in range(factors):
        b = sp.zeros(n)
        for i in range(n):
            for j in range(i, n):
                b[i, j] = b[j, i] = rng.randint(-bound, bound)
        kind = rng.randrange(3)
        if kind == 0:
            f = sp.Matrix(sp.BlockMatrix([[I, b], [Z, I]]))
        elif kind == 1:
            f = sp.Matrix(sp.BlockMatrix([[I, Z], [b, I]]))
        else:
            f = _J(n)
        g = g * f
    return g


# ---------------------------------------------------------------------------
# JSON


def _fmt_gaussian(c) -> str:
    re, im = sp.re(c), sp.im(c)
    r = fmt_rational(Fraction(int(re.p), int(re.q)))
    if im == 0:
        return r
    i = fmt_rational(Fraction(int(im.p), int(im.q)))
    return f"{r}+{i} i" if not i.startswith("-") else f"{r}{i} i"


def _parse_gaussian(s: str):
    s = s.strip()
    if not s.endswith(" i"):
        return sp.Rational(str(parse_rational(s)))
    body = s[:-2]
    k = max(body.rfind("+"), body.rfind("-"))
    re, im = body[:k], body[k:]
    return sp.Rational(str(parse_rational(re))) + sp.Rational(str(parse_rational(im))) * sp.I


def poly_to_json(f: sp.Poly) -> dict:
    """``{"e0,e1,...": "p/q" or "p/q+r/s i"}`` keyed by exponent tuples."""
    return {",".join(map(str, mon)): _fmt_gaussian(c) for mon, c in sorted(f.terms())}


def poly_from_json(data: dict, n: int) -> sp.Poly:
    zs = _symbols(n)
    expr = sp.Integer(0)
    for key, val in data.items():
        mon = [int(x) for x in key.split(",")] if key else [0] * n
        if len(mon) != n:
            raise DimensionMismatch(f"exponent tuple {key} for C^{n}")
        expr += _parse_gaussian(val) * sp.Mul(*[z ** e for z, e in zip(zs, mon)])
    return poly(expr, n)


def field_to_json(X: PolyVectorField) -> dict:
    return {"n": X.n, "components": [poly_to_json(c) for c in X.components]}


def field_from_json(data: dict) -> PolyVectorField:
    n = int(data["n"])
    return PolyVectorField(n, tuple(poly_from_json(c, n) for c in data["components"]))
