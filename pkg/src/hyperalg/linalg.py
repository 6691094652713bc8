"""Exact subspaces of U_r over F_p.

Vectors are dense int64 rows over the lexicographic monomial order.  Matrix
products go through float64 BLAS: entries are below p and row lengths below
2^12, so every partial sum is an exact integer well under 2^53.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .algebra import AlgebraCtx, Element, format_element, gen_x, gen_y, mul, register_cache


def _mod(a: np.ndarray, p: int) -> np.ndarray:
    return np.mod(np.rint(a), p).astype(np.int64) if a.dtype.kind == "f" else np.mod(a, p)


def _matmul(a, b, p: int) -> np.ndarray:
    if sp.issparse(b):
        out = (b.T @ a.T.astype(np.float64)).T
    else:
        out = a.astype(np.float64) @ b.astype(np.float64)
    return _mod(np.asarray(out), p)


def rref(m: np.ndarray, p: int):
    """Reduced row echelon form mod p.  Returns (rows, pivots) with zero rows
    dropped and rows sorted by pivot column."""
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0), np.zeros(0, dtype=np.int64)
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    nrows, ncols = a.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        k = row + nz[0]
        if k != row:
            a[[row, k]] = a[[k, row]]
        a[row] = a[row] * inv[a[row, col]] % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[row])) % p
        pivots.append(col)
        row += 1
    return a[:row], np.array(pivots, dtype=np.int64)


class Subspace:
    """A subspace of U_r held as a reduced row echelon basis."""

    __slots__ = ("ctx", "rows", "pivots")

    def __init__(self, ctx: AlgebraCtx, rows: np.ndarray, pivots: np.ndarray):
        self.ctx = ctx
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def zero(cls, ctx: AlgebraCtx) -> "Subspace":
        return cls(ctx, np.zeros((0, ctx.dim), dtype=np.int64), np.zeros(0, dtype=np.int64))

    @classmethod
    def from_vectors(cls, ctx: AlgebraCtx, vecs) -> "Subspace":
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, ctx.dim)
        rows, piv = rref(vecs, ctx.p)
        return cls(ctx, rows, piv)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def __len__(self):
        return self.dim

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        """Residues of the given row vectors modulo this subspace."""
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, self.ctx.dim) % self.ctx.p
        if self.dim == 0 or vecs.shape[0] == 0:
            return vecs
        return (vecs - _matmul(vecs[:, self.pivots], self.rows, self.ctx.p)) % self.ctx.p

    def extend(self, vecs: np.ndarray) -> "tuple[Subspace, np.ndarray]":
        """Adjoin vectors; returns the new subspace and the rows of the
        reduced basis of the part that was actually new."""
        p = self.ctx.p
        res = self.reduce(vecs)
        res = res[np.any(res, axis=1)]
        if res.shape[0] == 0:
            return self, res
        new_rows, new_piv = rref(res, p)
        old = self.rows
        if old.shape[0]:
            old = (old - _matmul(old[:, new_piv], new_rows, p)) % p
        rows = np.vstack([old, new_rows])
        piv = np.concatenate([self.pivots, new_piv])
        order = np.argsort(piv, kind="stable")
        return Subspace(self.ctx, rows[order], piv[order]), new_rows

    def member(self, e: Element) -> bool:
        self._check_ctx(e.ctx)
        return not np.any(self.reduce(e.to_vector()))

    def contains(self, other: "Subspace") -> bool:
        self._check_ctx(other.ctx)
        return not np.any(self.reduce(other.rows))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ctx == other.ctx and self.dim == other.dim
                and np.array_equal(self.pivots, other.pivots)
                and np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.ctx, self.rows.tobytes()))

    def _check_ctx(self, ctx: AlgebraCtx):
        if ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {ctx}")

    def elements(self) -> List[Element]:
        return [Element.from_vector(self.ctx, row) for row in self.rows]

    def dump(self) -> str:
        return "\n".join(format_element(e) for e in self.elements())

    def __repr__(self):
        return f"Subspace({self.ctx}, dim={self.dim})"


def span(ctx: AlgebraCtx, elements: Iterable[Element]) -> Subspace:
    elements = list(elements)
    for e in elements:
        if e.ctx != ctx:
            raise ValueError(f"context mismatch: {ctx} vs {e.ctx}")
    if not elements:
        return Subspace.zero(ctx)
    return Subspace.from_vectors(ctx, np.array([e.to_vector() for e in elements]))


def dim(s: Subspace) -> int:
    return s.dim


def member(s: Subspace, e: Element) -> bool:
    return s.member(e)


def add(s: Subspace, t: Subspace) -> Subspace:
    s._check_ctx(t.ctx)
    return s.extend(t.rows)[0]


def left_kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : x m = 0}."""
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    aug = np.hstack([m, np.eye(n, dtype=np.int64)])
    rows, piv = rref(aug, p)
    keep = piv >= m.shape[1]
    return rows[keep][:, m.shape[1]:]


def intersect(s: Subspace, t: Subspace) -> Subspace:
    s._check_ctx(t.ctx)
    if s.dim == 0 or t.dim == 0:
        return Subspace.zero(s.ctx)
    k = left_kernel(np.vstack([s.rows, t.rows]), s.ctx.p)
    return Subspace.from_vectors(s.ctx, _matmul(k[:, : s.dim], s.rows, s.ctx.p))


# -- multiplication operators ---------------------------------------------------

@register_cache
@lru_cache(maxsize=None)
def mult_matrix(g: Element, side: str) -> sp.csr_matrix:
    """Sparse matrix M with vec(x) @ M = vec(g x) (side 'left') or vec(x g)
    (side 'right')."""
    ctx = g.ctx
    rows, cols, vals = [], [], []
    for k in range(ctx.dim):
        mono = Element(ctx, {k: 1})
        prod = mul(g, mono) if side == "left" else mul(mono, g)
        for key, c in prod.terms.items():
            rows.append(k)
            cols.append(key)
            vals.append(c)
    return sp.csr_matrix((vals, (rows, cols)), shape=(ctx.dim, ctx.dim), dtype=np.int64)


def default_multipliers(ctx: AlgebraCtx) -> List[Element]:
    out = []
    for i in range(ctx.r):
        out.append(gen_x(ctx, ctx.p ** i))
        out.append(gen_y(ctx, ctx.p ** i))
    return out


def full_multipliers(ctx: AlgebraCtx) -> List[Element]:
    """Every X^(n), Y^(n); only used to cross-check the short multiplier set."""
    out = []
    for n in range(1, ctx.P):
        out.append(gen_x(ctx, n))
        out.append(gen_y(ctx, n))
    return out


def _close(space: Subspace, frontier: np.ndarray, left: Sequence[Element],
           right: Sequence[Element]) -> Subspace:
    p = space.ctx.p
    lmats = [mult_matrix(g, "left") for g in left]
    rmats = [mult_matrix(g, "right") for g in right]
    while frontier.shape[0]:
        new = []
        for mats in (lmats, rmats):
            if not mats:
                continue
            prods = np.vstack([_matmul(frontier, m, p) for m in mats])
            space, added = space.extend(prods)
            if added.shape[0]:
                new.append(added)
        frontier = np.vstack(new) if new else frontier[:0]
    return space


def ideal_closure(ctx: AlgebraCtx, gens: Iterable[Element],
                  multipliers: Optional[Sequence[Element]] = None,
                  left: Optional[Sequence[Element]] = None,
                  right: Optional[Sequence[Element]] = None) -> Subspace:
    """Least subspace containing ``gens`` and stable under left multiplication
    by ``left`` and right multiplication by ``right`` (both default to
    ``multipliers``, which defaults to X^(p^i), Y^(p^i))."""
    if multipliers is None:
        multipliers = default_multipliers(ctx)
    left = multipliers if left is None else left
    right = multipliers if right is None else right
    start = span(ctx, gens)
    return _close(Subspace.zero(ctx).extend(start.rows)[0], start.rows, left, right)


def extend_ideal(ideal: Subspace, gens: Iterable[Element],
                 multipliers: Optional[Sequence[Element]] = None) -> Subspace:
    """Closure of an already closed ideal together with extra generators."""
    ctx = ideal.ctx
    if multipliers is None:
        multipliers = default_multipliers(ctx)
    vecs = [e.to_vector() for e in gens]
    if not vecs:
        return ideal
    space, added = ideal.extend(np.array(vecs))
    return _close(space, added, multipliers, multipliers)


def is_closed(s: Subspace, left: Sequence[Element], right: Sequence[Element]) -> bool:
    p = s.ctx.p
    for g in left:
        if np.any(s.reduce(_matmul(s.rows, mult_matrix(g, "left"), p))):
            return False
    for g in right:
        if np.any(s.reduce(_matmul(s.rows, mult_matrix(g, "right"), p))):
            return False
    return True


def ideal_generators(ideal: Subspace, multipliers: Optional[Sequence[Element]] = None) -> List[Element]:
    """A small two-sided generating set of a closed ideal, chosen greedily
    from its echelon basis."""
    ctx = ideal.ctx
    if multipliers is None:
        multipliers = default_multipliers(ctx)
    gens: List[Element] = []
    cur = Subspace.zero(ctx)
    for row in ideal.rows:
        if cur.dim == ideal.dim:
            break
        if np.any(cur.reduce(row)):
            e = Element.from_vector(ctx, row)
            gens.append(e)
            cur = extend_ideal(cur, [e], multipliers)
    return gens


def subspace_product(s: Subspace, t: Subspace) -> Subspace:
    """span{x y : x in s, y in t}, by right multiplication with each basis row
    of t."""
    s._check_ctx(t.ctx)
    out = Subspace.zero(s.ctx)
    if s.dim == 0:
        return out
    for e in t.elements():
        out = out.extend(_matmul(s.rows, mult_matrix(e, "right"), s.ctx.p))[0]
    return out


def ideal_power_step(prev: Subspace, gens: Sequence[Element],
                     multipliers: Optional[Sequence[Element]] = None) -> Subspace:
    """prev * I for a two-sided ideal I generated by ``gens``: since
    I = U gens U and prev is a two-sided ideal, prev I = (prev gens) U."""
    ctx = prev.ctx
    if multipliers is None:
        multipliers = default_multipliers(ctx)
    p = ctx.p
    out = Subspace.zero(ctx)
    if prev.dim == 0:
        return out
    for g in gens:
        out = out.extend(_matmul(prev.rows, mult_matrix(g, "right"), p))[0]
    return _close(Subspace.zero(ctx).extend(out.rows)[0], out.rows, multipliers, multipliers)


def nilpotency_index(ideal: Subspace, gens: Optional[Sequence[Element]] = None,
                     multipliers: Optional[Sequence[Element]] = None) -> Optional[int]:
    """Least n with ideal^n = 0, or None if the powers stabilise at a nonzero
    ideal.  ``ideal`` must be a two-sided ideal."""
    if ideal.dim == 0:
        return 1
    if gens is None:
        gens = ideal_generators(ideal, multipliers)
    power = ideal
    n = 1
    while power.dim:
        nxt = ideal_power_step(power, gens, multipliers)
        n += 1
        if nxt.dim == power.dim:
            return None
        power = nxt
    return n


def _left_kernel_of_maps(basis: np.ndarray, mats, p: int, modulo: Optional[Subspace] = None) -> np.ndarray:
    """Coefficient vectors c with (c basis) M reducing to 0 (mod ``modulo``)
    for every M."""
    blocks = []
    for m in mats:
        img = _matmul(basis, m, p)
        if modulo is not None:
            img = modulo.reduce(img)
        blocks.append(img)
    return left_kernel(np.hstack(blocks), p)


def left_socle(ctx: AlgebraCtx, radical: Subspace,
               gens: Optional[Sequence[Element]] = None) -> Subspace:
    """{x : v x = 0 for every v in the radical}.

    With rad = U G U this is the largest left submodule inside the common
    kernel of left multiplication by G.
    """
    p = ctx.p
    if radical.dim == 0:
        return Subspace.from_vectors(ctx, np.eye(ctx.dim, dtype=np.int64))
    if gens is None:
        gens = ideal_generators(radical)
    eye = np.eye(ctx.dim, dtype=np.int64)
    k = _left_kernel_of_maps(eye, [mult_matrix(g, "left") for g in gens], p)
    space = Subspace.from_vectors(ctx, k)
    lmats = [mult_matrix(g, "left") for g in default_multipliers(ctx)]
    while space.dim:
        c = _left_kernel_of_maps(space.rows, lmats, p, modulo=space)
        if c.shape[0] == space.dim:
            break
        space = Subspace.from_vectors(ctx, _matmul(c, space.rows, p))
    return space
