"""Simple U_r-modules from Steinberg tensor products, and the radical oracle.

The oracle only touches multiplication-free data: generator matrices built
from binomials, and the monomial basis.  It never calls into the B-element
construction, so it can referee it.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple

import numpy as np

from .algebra import AlgebraCtx, Element
from .belements import (
    b_shifted,
    enumerate_tuples,
    in_v_box,
    theta_set,
)
from .ffield import binom_int, inv_mod
from .linalg import Subspace, left_kernel

BUDGET = 1000


class BudgetExceeded(RuntimeError):
    pass


def _digits(n: int, p: int, r: int) -> Tuple[int, ...]:
    out = []
    for _ in range(r):
        n, d = divmod(n, p)
        out.append(d)
    return tuple(out)


def _factor_raise(lam: int, p: int) -> np.ndarray:
    # X^(1) v_k = (lam - k + 1) v_{k-1}
    m = np.zeros((lam + 1, lam + 1), dtype=np.int64)
    for k in range(1, lam + 1):
        m[k - 1, k] = binom_int(lam - k + 1, 1, p)
    return m


def _factor_lower(lam: int, p: int) -> np.ndarray:
    # Y^(1) v_k = (k + 1) v_{k+1}
    m = np.zeros((lam + 1, lam + 1), dtype=np.int64)
    for k in range(lam):
        m[k + 1, k] = binom_int(k + 1, 1, p)
    return m


def _kron_at(mats: List[np.ndarray], i: int, m: np.ndarray) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.int64)
    for l, base in enumerate(mats):
        out = np.kron(out, m if l == i else np.eye(base.shape[0], dtype=np.int64))
    return out


class SimpleModule:
    """L(lam) for 0 <= lam < p^r, on the tensor basis v_{k_0} x ... x v_{k_{r-1}}
    (first factor most significant in the flat index)."""

    def __init__(self, ctx: AlgebraCtx, lam: int):
        if not 0 <= lam < ctx.P:
            raise ValueError(f"highest weight {lam} outside [0, {ctx.P})")
        p, r = ctx.p, ctx.r
        self.ctx = ctx
        self.lam = lam
        self.digits = _digits(lam, p, r)
        self.dim = int(np.prod([d + 1 for d in self.digits]))
        idx = list(itertools.product(*[range(d + 1) for d in self.digits]))
        lowering = np.array([sum(k * p ** i for i, k in enumerate(ks)) for ks in idx], dtype=np.int64)
        self.weights = lam - 2 * lowering
        units = [np.eye(d + 1, dtype=np.int64) for d in self.digits]
        self.gen_action: Dict[tuple, np.ndarray] = {}
        for i, d in enumerate(self.digits):
            self.gen_action[("X", i)] = _kron_at(units, i, _factor_raise(d, p)) % p
            self.gen_action[("Y", i)] = _kron_at(units, i, _factor_lower(d, p)) % p
        for a in range(ctx.P):
            self.gen_action[("mu", a)] = np.diag((self.weights - a) % ctx.P == 0).astype(np.int64)

    def _divided(self, kind: str, n: int) -> np.ndarray:
        # X^(n) = prod_i (X^(p^i))^{n_i} / n_i!  (carry-free factorisation)
        p = self.ctx.p
        out = np.eye(self.dim, dtype=np.int64)
        for i, ni in enumerate(_digits(n, p, self.ctx.r)):
            if ni:
                g = self.gen_action[(kind, i)]
                pw = np.linalg.matrix_power(g, ni) % p
                out = out @ pw * inv_mod(factorial(ni), p) % p
        return out

    @property
    def x_powers(self) -> np.ndarray:
        return self._powers("X")

    @property
    def y_powers(self) -> np.ndarray:
        return self._powers("Y")

    def _powers(self, kind: str) -> np.ndarray:
        key = "_cache_" + kind
        if not hasattr(self, key):
            setattr(self, key, np.array([self._divided(kind, n) for n in range(self.ctx.P)]))
        return getattr(self, key)

    def mu_indicators(self) -> np.ndarray:
        P = self.ctx.P
        return np.array([(self.weights - a) % P == 0 for a in range(P)], dtype=np.int64)

    def __repr__(self):
        return f"SimpleModule(lam={self.lam}, dim={self.dim})"


@lru_cache(maxsize=None)
def build_simple(ctx: AlgebraCtx, lam: int) -> SimpleModule:
    return SimpleModule(ctx, lam)


def simples(ctx: AlgebraCtx) -> List[SimpleModule]:
    return [build_simple(ctx, lam) for lam in range(ctx.P)]


def act(e: Element, module: SimpleModule) -> np.ndarray:
    if e.ctx != module.ctx:
        raise ValueError(f"context mismatch: {e.ctx} vs {module.ctx}")
    p = e.ctx.p
    xs, ys = module.x_powers, module.y_powers
    ind = module.mu_indicators()
    out = np.zeros((module.dim, module.dim), dtype=np.int64)
    for m, a, mp, c in e.monomials():
        out += c * ((ys[m] * ind[a][None, :]) @ xs[mp])
    return out % p


def action_matrix(ctx: AlgebraCtx, module: SimpleModule) -> np.ndarray:
    """Row k is the flattened action of basis monomial k."""
    ys, xs, ind = module.y_powers, module.x_powers, module.mu_indicators()
    t = np.einsum("mij,aj,njk->manik", ys, ind, xs)
    return t.reshape(ctx.dim, module.dim ** 2) % ctx.p


def semisimple_dim(ctx: AlgebraCtx) -> int:
    return sum(m.dim ** 2 for m in simples(ctx))


def check_budget(ctx: AlgebraCtx, allow_large: bool = False):
    if ctx.dim > BUDGET and not allow_large:
        raise BudgetExceeded(f"dim U_r = {ctx.dim} exceeds the budget of {BUDGET}; pass allow_large")


@lru_cache(maxsize=None)
def oracle_radical(ctx: AlgebraCtx, allow_large: bool = False) -> Subspace:
    """Common annihilator of all simple modules."""
    check_budget(ctx, allow_large)
    phi = np.hstack([action_matrix(ctx, m) for m in simples(ctx)])
    return Subspace.from_vectors(ctx, left_kernel(phi, ctx.p))


def _theta_elements(ctx: AlgebraCtx):
    r = ctx.r
    for pairs in enumerate_tuples(ctx.p, r):
        for entry in theta_set(pairs, (0,) * r):
            yield pairs, entry


def claimed_radical_basis(ctx: AlgebraCtx) -> List[Element]:
    return [b_shifted(entry.theta, pairs, entry.t)
            for pairs, entry in _theta_elements(ctx) if not in_v_box(pairs, entry)]


def v_set(ctx: AlgebraCtx) -> List[Element]:
    return [b_shifted(entry.theta, pairs, entry.t)
            for pairs, entry in _theta_elements(ctx) if in_v_box(pairs, entry)]


def index_counts(ctx: AlgebraCtx) -> Tuple[int, int]:
    """(|claimed|, |V|) from the index sets alone."""
    claimed = v = 0
    for pairs, entry in _theta_elements(ctx):
        if in_v_box(pairs, entry):
            v += 1
        else:
            claimed += 1
    return claimed, v
