"""Smallest invariant subspace containing a seed: a linear-algebra fixpoint."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .linalg import SparseVec, Subspace


def split_by_weight(v: SparseVec, weights: list[tuple]) -> dict[tuple, SparseVec]:
    parts: dict[tuple, SparseVec] = defaultdict(dict)
    for i, a in v.items():
        parts[weights[i]][i] = a
    return dict(parts)


def generated_submodule(seed: Iterable[SparseVec], module) -> tuple[Subspace, list[int]]:
    """Closure of ``span(seed)`` under every basis element of the algebra.

    Each round applies all basis actions to the vectors added in the previous
    round (applying them to older vectors adds nothing new).  Returns the
    subspace and the dimension after the seed and after every round; the last
    two entries coincide.

    On a weight basis the span is tracked one weight space at a time: a
    submodule is the sum of its weight components, so seed vectors may be
    split by weight, Cartan elements act by scalars and can be skipped, and a
    root vector moves a weight space into a single other one.
    """
    from .modules import check_dim

    g = module.algebra
    check_dim(module.dim, "closure ambient space")
    weights = module.weights
    blocks: dict[tuple, Subspace] = {}
    frontier: list[tuple[tuple, SparseVec]] = []
    total = 0

    def insert(key, v):
        nonlocal total
        sp = blocks.get(key)
        if sp is None:
            sp = blocks[key] = Subspace(module.dim)
        row = sp.add(v)
        if row is not None:
            total += 1
            return dict(row)
        return None

    if weights is not None:
        ops = [x for x in range(g.dim) if g.basis_root(x) is not None]
        shift = {x: g.weight_of_root(g.basis_root(x)) for x in ops}
        for v in seed:
            for key, part in split_by_weight(v, weights).items():
                row = insert(key, part)
                if row is not None:
                    frontier.append((key, row))
    else:
        ops = list(range(g.dim))
        shift = None
        for v in seed:
            if v:
                row = insert((), v)
                if row is not None:
                    frontier.append(((), row))

    dims = [total]
    while True:
        nxt = []
        for key, v in frontier:
            for x in ops:
                u = module.act(x, v)
                if not u:
                    continue
                k2 = tuple(a + b for a, b in zip(key, shift[x])) if shift else ()
                row = insert(k2, u)
                if row is not None:
                    nxt.append((k2, row))
        dims.append(total)
        if not nxt:
            break
        frontier = nxt

    out = Subspace(module.dim)
    for sp in blocks.values():
        # Blocks have disjoint supports, so their reduced rows stay reduced together.
        out._rows.update(sp._rows)
    return out, dims
