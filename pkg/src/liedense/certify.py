"""Overshear generation certificates for modules of the form ``W (x) g``.

An element ``w (x) xi`` is an overshear when ``rho(xi)^2 w = 0`` (a shear
when ``rho(xi) w = 0``).  The canonical seed uses the Chevalley root vectors
and the Cartan kernels of each weight; :func:`certify` closes it under the
algebra and compares dimensions.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from . import modules as M
from .chevalley import LieAlgebra, chevalley_basis
from .closure import generated_submodule
from .errors import HypothesisNotMet, IdentityFailure
from .linalg import SparseVec, Subspace, axpy, nullspace, q, rank, scale, sub

__all__ = [
    "Certificate",
    "SeedVector",
    "overshear_seed",
    "generated_submodule",
    "certify",
    "certify_irrep",
    "verify_adjoint_cases",
    "verify_old_sl2",
    "verify_theorem34_cases",
    "verify_lemma_l1",
    "verify_lemma_l2",
]


@dataclass(frozen=True)
class SeedVector:
    """A pure tensor ``w (x) xi``; ``xi`` is a sparse element of the algebra."""

    w: SparseVec
    xi: SparseVec
    kind: str  # "overshear" (root vector) or "cartan" (xi in h with lambda(xi) = 0)

    def flatten(self, dim_g: int) -> SparseVec:
        return M.pure_tensor(self.w, self.xi, dim_g)


@dataclass
class Certificate:
    module_desc: str
    algebra: str
    target_dim: int
    seed_dim: int
    closure_dims: list[int]
    generated: bool
    seed_size: int = 0
    iterations: int = 0
    verdict: str = field(init=False)

    def __post_init__(self):
        self.verdict = ("generated by overshears" if self.generated
                        else "not generated by the canonical seed")

    def to_json(self) -> dict:
        return asdict(self)


def _power(rep: M.Representation, x: int, v: SparseVec, k: int) -> SparseVec:
    for _ in range(k):
        if not v:
            break
        v = rep.act(x, v)
    return v


def overshear_seed(w: M.Representation) -> list[SeedVector]:
    """Canonical overshear seed of ``W (x) g``.

    Returns ``ker rho(xi)^2 (x) xi`` for every root vector ``xi`` of the
    Chevalley basis and ``W_lambda (x) (h cap ker lambda)`` for every weight.
    Kernels are computed weight space by weight space, in reduced echelon form.
    """
    if not w.is_weight_basis:
        w = M.in_weight_basis(w)
    g = w.algebra
    out: list[SeedVector] = []
    blocks = sorted(w.weight_blocks.items(), reverse=True)
    for x in range(2 * g.n_pos):
        for _, idx in blocks:
            cols = [_power(w, x, {j: 1}, 2) for j in idx]
            for kv in nullspace(cols, len(idx)):
                out.append(SeedVector({idx[r]: a for r, a in kv.items()}, {x: 1}, "overshear"))
    h0 = g.h_index(1)
    for lab, idx in blocks:
        cols = [({0: c} if c else {}) for c in lab]
        for kv in nullspace(cols, g.rank):
            xi = {h0 + r: a for r, a in kv.items()}
            for j in idx:
                out.append(SeedVector({j: 1}, xi, "cartan"))
    return out


def certify(w: M.Representation, desc: str | None = None) -> Certificate:
    """Decide whether the canonical overshear seed generates ``W (x) g``."""
    if not w.is_weight_basis:
        w = M.in_weight_basis(w)
    g = w.algebra
    wg = M.module_tensor_g(w)
    seed = overshear_seed(w)
    flat = [s.flatten(g.dim) for s in seed]
    span, dims = generated_submodule(flat, wg)
    # Seed vectors are weight-homogeneous, so dims[0] is the rank of the seed.
    seed_dim = dims[0]
    grew = sum(1 for a, b in zip(dims, dims[1:]) if b > a)
    return Certificate(
        module_desc=desc or w.name,
        algebra=str(g.rs.rtype),
        target_dim=wg.dim,
        seed_dim=seed_dim,
        closure_dims=dims,
        generated=span.dim == wg.dim,
        seed_size=len(seed),
        iterations=grew,
    )


def certify_irrep(rs, lam, k_max: int = 3) -> tuple[Certificate, M.Representation, int]:
    """Build the irreducible module of highest weight ``lam`` and certify it."""
    rep, k = M.construct_irrep(rs, lam, k_max)
    return certify(rep), rep, k


# ---------------------------------------------------------------------------
# adjoint module: the four case identities


def _phi(g: LieAlgebra, y: SparseVec) -> SparseVec:
    """Killing dual ``B(y, .)`` written in the dual basis."""
    km = g.killing_matrix
    out: SparseVec = {}
    for i, a in y.items():
        row = km[i]
        for j in range(g.dim):
            if row[j]:
                out[j] = out.get(j, 0) + a * row[j]
    return {k: q(v) for k, v in out.items() if v}


def verify_adjoint_cases(g: LieAlgebra | str) -> dict:
    """Check the shear/overshear identities for ``g* (x) g`` on all positive root pairs.

    Elements of ``g*`` are named through the Killing form: ``e_a = B(E_a, .)``,
    ``f_a = B(F_a, .)`` and ``h_a = B(H_a, .)``.  Raises :class:`IdentityFailure`
    on the first identity that does not hold.
    """
    if not isinstance(g, LieAlgebra):
        g = chevalley_basis(g)
    w = M.dual(M.adjoint_rep(g))
    wg = M.module_tensor_g(w)
    d = g.dim

    def el(e):
        return e.coeffs

    def T(phi, xi):
        return M.pure_tensor(phi, xi, d)

    def fail(msg):
        raise IdentityFailure(f"{g.rs.rtype}: {msg}")

    # The Killing identification must intertwine the adjoint and coadjoint actions.
    for x in range(d):
        for y in range(d):
            if w.act(x, _phi(g, {y: 1})) != _phi(g, g.table.get((x, y), {})):
                fail(f"Killing map is not equivariant on ({g.labels[x]}, {g.labels[y]})")

    roots = list(g.pos) + [tuple(-c for c in a) for a in g.pos]
    case1 = 0
    for a in g.pos:
        h_a = _phi(g, el(g.H(a)))
        for b in roots:
            hb = el(g.H(b))
            if w.act_element(hb, h_a):
                fail(f"H_{b} h_{a} != 0")
            xb = g.root_index(b)
            if _power(w, xb, h_a, 2):
                fail(f"X_{b}^2 h_{a} != 0")
            case1 += 1

    rows = []
    for a in g.pos:
        ia, ja = g.root_index(a), g.root_index(tuple(-c for c in a))
        e_a, f_a = _phi(g, {ia: 1}), _phi(g, {ja: 1})
        h_a = _phi(g, el(g.H(a)))
        for b in g.pos:
            ib = g.root_index(b)
            H_b = el(g.H(b))
            row = {"alpha": list(a), "beta": list(b)}

            # case 2: 2 f_a (x) E_b - F_a (h_a (x) E_b) = h_a (x) Z,  Z = -[F_a, E_b]
            lhs = scale(T(f_a, {ib: 1}), 2)
            rest = sub(lhs, wg.act(ja, T(h_a, {ib: 1})))
            z = scale(g.bracket_vec({ja: 1}, {ib: 1}), -1)
            if rest != T(h_a, z):
                fail(f"case 2 for alpha={a}, beta={b}")
            if a == b:
                row["case2"] = {"n": int(z.get(g.h_index(1), 0)) if g.rank == 1 else 1,
                                "term": "h_alpha (x) H_beta"}
                if z != H_b:
                    fail(f"case 2 correction is not h_a (x) H_b for alpha=beta={a}")
            elif z:
                (k, n), = z.items()
                row["case2"] = {"n": int(n), "term": f"h_alpha (x) {g.labels[k]}"}
            else:
                row["case2"] = {"n": 0, "term": None}
            for k in z:
                # every correction term h_a (x) X is itself a shear or overshear
                if g.basis_root(k) is None:
                    if w.act(k, h_a):
                        fail("case 2 correction is not a shear")
                elif _power(w, k, h_a, 2):
                    fail("case 2 correction is not an overshear")

            # case 3: -2 e_a (x) H_b - E_a (h_a (x) H_b) = n h_a (x) E_a,  n = a(H_b)
            lhs = scale(T(e_a, H_b), -2)
            rest = sub(lhs, wg.act(ia, T(h_a, H_b)))
            n3 = g.pairing(a, b)
            if rest != scale(T(h_a, {ia: 1}), n3):
                fail(f"case 3 for alpha={a}, beta={b}")
            row["case3"] = {"n": n3}

            # case 4: -2 e_a (x) E_b - E_b (e_a (x) H_b) = c e_{a+b} (x) H_b,  c = N_{a,b}
            lhs = scale(T(e_a, {ib: 1}), -2)
            rest = sub(lhs, wg.act(ib, T(e_a, H_b)))
            s = tuple(x + y for x, y in zip(a, b))
            c = g.N(a, b)
            expect = scale(T(_phi(g, {g.root_index(s): 1}), H_b), c) if c else {}
            if rest != expect:
                fail(f"case 4 for alpha={a}, beta={b}")
            row["case4"] = {"c": c, "alpha_plus_beta_is_root": g.is_root(s)}
            rows.append(row)
    return {"type": str(g.rs.rtype), "case1_checks": case1, "pairs": rows, "passed": True}


# ---------------------------------------------------------------------------
# sl(2): the three-vector independence argument


def verify_old_sl2(n: int, k: int) -> dict:
    """Evaluate the ``F^{j+1}`` expansion identities on ``v = v_k`` in ``V(n) (x) sl2``.

    ``v_k`` has weight ``n - 2k`` and ``j = k`` is the largest exponent with
    ``E^j v != 0``.  The coefficient of the ``F`` term is evaluated with both
    signs: the algebra forces ``-j(j+1)``; ``printed_sign_holds`` records
    whether ``+j(j+1)`` would also hold (it does only when that term vanishes).
    """
    if not 0 <= k <= n:
        raise HypothesisNotMet(f"no basis vector v_{k} in V({n})")
    lam = n - 2 * k
    if lam == 0:
        raise HypothesisNotMet("weight of v is zero")
    if k == 0 or k == n:
        raise HypothesisNotMet("v is annihilated by E or F")
    j = k
    if j < 2:
        raise HypothesisNotMet(f"j = {j} < 2")
    V = M.sl2_irrep(n)
    g = V.algebra
    E, F, H = g.root_index((1,)), g.root_index((-1,)), g.h_index(1)
    W = M.module_tensor_g(V)
    v = {k: 1}

    def T(x, y):
        return M.pure_tensor(x, {y: 1}, 3)

    ej = _power(V, E, v, j)
    ej1 = _power(V, E, v, j - 1)
    if not ej or _power(V, E, v, j + 1):
        raise IdentityFailure("j is not the top exponent")
    id0 = V.act(F, ej) == scale(ej1, lam + 2 * j)

    x1 = _power(W, F, T(ej, E), j + 1)
    base1 = T(_power(V, F, ej, j + 1), E)
    axpy(base1, -(j + 1), T(_power(V, F, ej, j), H))
    f_term1 = T(_power(V, F, ej, j - 1), F)
    derived1 = dict(base1)
    axpy(derived1, -j * (j + 1), f_term1)
    printed1 = dict(base1)
    axpy(printed1, j * (j + 1), f_term1)

    x2 = _power(W, F, T(ej1, E), j)
    rhs2 = T(_power(V, F, ej1, j), E)
    axpy(rhs2, -j, T(_power(V, F, ej1, j - 1), H))
    axpy(rhs2, -j * (j - 1), T(_power(V, F, ej1, j - 2), F))

    vh = T(v, H)
    r = rank([vh, x1, x2], W.dim)
    report = {
        "n": n, "k": k, "lambda": lam, "j": j,
        "F_Ej_identity": id0,
        "identity1": x1 == derived1,
        "identity1_F_coefficient": -j * (j + 1),
        "printed_sign_holds": x1 == printed1,
        "identity2": x2 == rhs2,
        "rank": r,
        "independent": r == 3,
        # the three vectors and the overshears span the lambda weight space
        "lambda_space_dim": sum(1 for i in range(W.dim) if W.weights[i] == (lam,)),
    }
    if not (id0 and report["identity1"] and report["identity2"]):
        raise IdentityFailure(f"expansion identities fail for n={n}, k={k}")
    return report


# ---------------------------------------------------------------------------
# polynomial vector fields on V: the odd-weight bracket bookkeeping


def verify_theorem34_cases(n: int, max_degree: int = 3) -> dict:
    """Check the odd-weight bracket identities for monomials on ``V(n)``.

    ``sl2`` acts on ``C^{n+1}`` by the linear fields ``X_a(z) = rho(a)^T z``,
    so the coordinate function ``x_i`` has weight ``n - 2i``.  For every
    monomial ``f = x_1 g`` of odd weight with ``x_1`` of odd weight ``lam`` and
    ``g`` of weight ``2k``::

        [g X_H, x_1 X_H] = (lam - 2k) f X_H
        [g X_H, x_1 X_E] = (lam + 2) f X_E - x_1 X_E(g) X_H
        [g X_H, x_1 X_F] = (lam - 2) f X_F - x_1 X_F(g) X_H

    and the leading coefficients are odd.  Monomials of even weight, or on a
    module with only even weights, are counted as reducing to the
    even-dimension case.
    """
    import itertools

    from . import flows

    V = M.sl2_irrep(n)
    g = V.algebra
    d = n + 1
    gens = {"E": g.root_index((1,)), "F": g.root_index((-1,)), "H": g.h_index(1)}
    # X_a(z) = rho(a)^T z : row i of the field matrix is column i of rho(a)
    X = {name: flows.linear_field([[V.mats[x][i].get(j, 0) for j in range(d)]
                                   for i in range(d)])
         for name, x in gens.items()}
    if flows.bracket_fields(X["H"], X["E"]) != flows.scale_field(2, X["E"]):
        raise IdentityFailure("field realization is not a homomorphism")
    wt = [n - 2 * i for i in range(d)]
    gens_poly = flows.coordinates(d)
    checked = trivial = 0
    coeffs = {"H": set(), "E": set(), "F": set()}
    for deg in range(1, max_degree + 1):
        for mono in itertools.combinations_with_replacement(range(d), deg):
            weight = sum(wt[i] for i in mono)
            if weight % 2 == 0 or all(w % 2 == 0 for w in wt):
                trivial += 1
                continue
            i1 = next(i for i in mono if wt[i] % 2)
            rest = list(mono)
            rest.remove(i1)
            lam = wt[i1]
            two_k = weight - lam
            x1 = gens_poly[i1]
            gpoly = flows.monomial(d, rest)
            f = x1 * gpoly
            gH = flows.scale_field(gpoly, X["H"])
            lhs = flows.bracket_fields(gH, flows.scale_field(x1, X["H"]))
            if lhs != flows.scale_field((lam - two_k) * f, X["H"]):
                raise IdentityFailure(f"case H fails for monomial {mono}")
            coeffs["H"].add(lam - two_k)
            for name, shift in (("E", 2), ("F", -2)):
                lhs = flows.bracket_fields(gH, flows.scale_field(x1, X[name]))
                rhs = flows.add_fields(
                    flows.scale_field((lam + shift) * f, X[name]),
                    flows.scale_field(-x1 * flows.apply_field(X[name], gpoly), X["H"]))
                if lhs != rhs:
                    raise IdentityFailure(f"case {name} fails for monomial {mono}")
                coeffs[name].add(lam + shift)
            checked += 1
    odd = all(c % 2 for s in coeffs.values() for c in s)
    if not odd:
        raise IdentityFailure("a leading coefficient is even")
    return {"n": n, "max_degree": max_degree, "checked": checked,
            "nothing_to_prove": trivial,
            "coefficients": {k: sorted(v) for k, v in coeffs.items()}, "all_odd": odd}


# ---------------------------------------------------------------------------
# generation by W (x) h, and the even-pairing weight spaces


def verify_lemma_l1(w: M.Representation) -> dict:
    """``2 w (x) X_a = (X_a w) (x) H_a - X_a (w (x) H_a)`` and ``<W (x) h> = W (x) g``."""
    if not w.is_weight_basis:
        w = M.in_weight_basis(w)
    g = w.algebra
    wg = M.module_tensor_g(w)
    d = g.dim
    roots = list(g.pos) + [tuple(-c for c in a) for a in g.pos]
    checks = 0
    for a in roots:
        xa = g.root_index(a)
        ha = g.H(a).coeffs
        for j in range(w.dim):
            wv = {j: 1}
            lhs = M.pure_tensor(wv, {xa: 2}, d)
            rhs = M.pure_tensor(w.act(xa, wv), ha, d)
            axpy(rhs, -1, wg.act(xa, M.pure_tensor(wv, ha, d)))
            if lhs != rhs:
                raise IdentityFailure(f"identity fails for w=e_{j}, root {a}")
            checks += 1
    seed = [M.pure_tensor({j: 1}, {g.h_index(i): 1}, d)
            for j in range(w.dim) for i in range(1, g.rank + 1)]
    span, dims = generated_submodule(seed, wg)
    return {"module": w.name, "identity_checks": checks, "closure_dim": span.dim,
            "target_dim": wg.dim, "closure_dims": dims, "generated": span.dim == wg.dim}


def verify_lemma_l2(w: M.Representation) -> dict:
    """For weights with an even nonzero coroot pairing, is ``W_lam (x) h`` in the overshear closure?"""
    if not w.is_weight_basis:
        w = M.in_weight_basis(w)
    g = w.algebra
    wg = M.module_tensor_g(w)
    flat = [s.flatten(g.dim) for s in overshear_seed(w)]
    span, _ = generated_submodule(flat, wg)
    cor = [g.coroot_coeffs(a) for a in g.pos]
    rows = []
    for lab, idx in sorted(w.weight_blocks.items(), reverse=True):
        vals = [sum(x * y for x, y in zip(lab, c)) for c in cor]
        even = [v for v in vals if v and v % 2 == 0]
        if not even:
            continue
        inside = all(M.pure_tensor({j: 1}, {g.h_index(i): 1}, g.dim) in span
                     for j in idx for i in range(1, g.rank + 1))
        rows.append({"weight": list(lab), "pairing": even[0], "contained": inside})
    return {"module": w.name, "weights": rows, "passed": all(r["contained"] for r in rows)}
