"""Pairs (a, j), the refined idempotents B^(eps)(a, j) and their tuple versions.

j is stored as the integer ``twoJ = 2j`` so that the half-integers needed
for p = 2 stay exact.  Pairs are always canonical: ``0 <= a < p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .algebra import (
    AlgebraCtx,
    Element,
    embed,
    fr_prime,
    gen_x,
    gen_y,
    identity,
    lift,
    monomial,
    mul,
    register_cache,
    toral,
)
from .ffield import Scalar, binom_int, inv_mod


class ConsistencyViolation(AssertionError):
    """A structural inequality the construction relies on does not hold."""


@dataclass(frozen=True, order=True)
class Pair:
    p: int
    a: int
    twoJ: int

    def __post_init__(self):
        p, a, twoJ = self.p, self.a, self.twoJ
        if p == 2:
            ok = (a, twoJ) in ((0, 1), (1, 0), (1, 2))
        else:
            ok = 0 <= a < p and 0 <= twoJ <= p - 1 and twoJ % 2 == 0
        if not ok:
            raise ValueError(f"({a}, j={twoJ}/2) is not a canonical pair for p={p}")

    def __str__(self):
        j = f"{self.twoJ // 2}" if self.twoJ % 2 == 0 else f"{self.twoJ}/2"
        return f"({self.a},{j})"


TupleAJ = Tuple[Pair, ...]
EpsVec = Tuple[int, ...]


class ThetaEntry(NamedTuple):
    theta: EpsVec
    t: Tuple[int, ...]


def enumerate_p_set(p: int) -> List[Pair]:
    if p == 2:
        return [Pair(2, 0, 1), Pair(2, 1, 0), Pair(2, 1, 2)]
    return [Pair(p, a, twoJ) for a in range(p) for twoJ in range(0, p, 2)]


def enumerate_tuples(p: int, r: int) -> List[TupleAJ]:
    return list(itertools.product(enumerate_p_set(p), repeat=r))


def classify(pair: Pair) -> str:
    p, a, twoJ = pair.p, pair.a, pair.twoJ
    if a % 2 == 0:
        return "A" if twoJ >= p - a + 1 else "B"
    return "C" if twoJ <= a - 1 else "D"


def satisfies_e(pair: Pair) -> bool:
    if pair.p == 2:
        return pair.a % 2 == 1
    return pair.twoJ == 0


def negate_pair(pair: Pair) -> Pair:
    """(a, j) -> (-a, j) on canonical pairs.

    For p = 2 the odd pairs swap: T1 sends mu_1 YX to mu_1 XY, so (1, 0) and
    (1, 1) trade places while (0, 1/2) is fixed.
    """
    if pair.p == 2:
        return Pair(2, pair.a, {0: 2, 2: 0}.get(pair.twoJ, pair.twoJ))
    return Pair(pair.p, (-pair.a) % pair.p, pair.twoJ)


# numerators over 2 of (n0, n1, n~0, n~1), as functions of (p, a, 2j)
_N_TABLE = {
    "A": lambda p, a, j2: (p - a - 1 + j2, 3 * p - a - 1 - j2, -p + a - 1 + j2, p + a - 1 - j2),
    "B": lambda p, a, j2: (p - a - 1 - j2, p - a - 1 + j2, p + a - 1 - j2, p + a - 1 + j2),
    "C": lambda p, a, j2: (2 * p - a - 1 - j2, 2 * p - a - 1 + j2, a - 1 - j2, a - 1 + j2),
    "D": lambda p, a, j2: (j2 - a - 1, 2 * p - a - 1 - j2, a - 1 + j2, 2 * p + a - 1 - j2),
}


def _row(pair: Pair) -> Tuple[int, int, int, int]:
    row = _N_TABLE[classify(pair)](pair.p, pair.a, pair.twoJ)
    assert all(x % 2 == 0 for x in row)
    return tuple(x // 2 for x in row)


def n_bound(pair: Pair, eps: int) -> int:
    return _row(pair)[eps % 2]


def n_tilde_bound(pair: Pair, eps: int) -> int:
    return _row(pair)[2 + eps % 2]


def iota(pair: Pair) -> int:
    return pair.a - pair.p if classify(pair) in "AC" else pair.a


def s_val(pair: Pair) -> int:
    cls = classify(pair)
    if cls not in "AC":
        raise ValueError(f"s is defined only for pairs of type A or C, got {cls} for {pair}")
    p, a = pair.p, pair.a
    if p == 2:
        return 1
    return (p - a + 1) // 2 if a % 2 == 0 else (p - a) // 2


def _gamma_int(pair: Pair, i: int) -> int:
    p, a, twoJ = pair.p, pair.a, pair.twoJ
    if p == 2:
        num = twoJ * twoJ - (a + 1 + 2 * i) ** 2
        assert num % 4 == 0
        return (num // 4) % 2
    h = inv_mod(2, p)
    j = twoJ * h
    return (j * j - ((a + 1) * h + i) ** 2) % p


def gamma(pair: Pair, i: int) -> Scalar:
    return Scalar(_gamma_int(pair, i), pair.p)


def gamma_tilde(pair: Pair, i: int) -> Scalar:
    return gamma(negate_pair(pair), i)


def beta(pair: Pair, n: int) -> Scalar:
    out = 1
    for i in range(n):
        out = out * _gamma_int(pair, i) % pair.p
    return Scalar(out, pair.p)


def beta_tilde(pair: Pair, n: int) -> Scalar:
    return beta(negate_pair(pair), n)


def four_j_squared(pair: Pair) -> Scalar:
    return Scalar(pair.twoJ * pair.twoJ, pair.p)


# -- psi polynomials and rank-one elements ------------------------------------

def _poly_mul(f: List[int], g: List[int], p: int) -> List[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for k, y in enumerate(g):
                out[i + k] = (out[i + k] + x * y) % p
    return out


def psi_coeffs(p: int, twoJ: int, eps: int) -> List[int]:
    """Coefficients (constant term first) of the polynomial psi_j^(eps)."""
    if p == 2 or twoJ % 2 or not 0 <= twoJ <= p - 1:
        raise ValueError(f"psi needs odd p and even 2j in [0, p-1], got p={p}, 2j={twoJ}")
    s = twoJ // 2
    if s == 0:
        poly = [1]
        for i in range(1, p):
            poly = _poly_mul(poly, [-(i * i) % p, 1], p)
        return poly
    poly = [0, 2] if eps == 0 else [0, 1]
    poly = _poly_mul(poly, [(s * s) % p if eps == 0 else -(s * s) % p, 1], p)
    for i in range(1, p):
        if i in (s, p - s):
            continue
        poly = _poly_mul(poly, [-(i * i) % p, 1], p)
    return poly


def _u1(p: int) -> AlgebraCtx:
    return AlgebraCtx(p, 1)


@register_cache
@lru_cache(maxsize=None)
def b1(eps: int, pair: Pair) -> Element:
    """B^(eps)(a, j) in U_1."""
    p, a = pair.p, pair.a
    ctx = _u1(p)
    if p == 2:
        yx = monomial(ctx, 1, a, 1)  # mu_a Y X = Y^(1) mu_a X^(1) since 2 = 0
        if (a, pair.twoJ) == (0, 1):
            return yx if eps else monomial(ctx, 0, 0, 0)
        if pair.twoJ == 0:
            return yx
        return yx + monomial(ctx, 0, 1, 0)
    mu_a = monomial(ctx, 0, a, 0)
    shift = ((a + 1) * inv_mod(2, p)) ** 2 % p
    arg = monomial(ctx, 1, a + 2, 1) + mu_a.scale(shift)
    out = Element(ctx, {})
    for c in reversed(psi_coeffs(p, pair.twoJ, eps)):
        out = mul(out, arg) + mu_a.scale(c)
    return out


def _mu_ym_xn(ctx: AlgebraCtx, a: int, m: int, n: int) -> Element:
    """mu_a Y^m X^n with ordinary powers."""
    p = ctx.p
    c = factorial(m) * factorial(n) % p
    return monomial(ctx, m, a + 2 * m, n, c)


@register_cache
@lru_cache(maxsize=None)
def b_coeffs(eps: int, pair: Pair) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Coefficients of B^(eps)(a, j) in the two expansions
    mu_a sum c_m Y^m X^m and mu_a sum c~_m X^m Y^m."""
    p, a = pair.p, pair.a
    ctx = _u1(p)
    b = b1(eps, pair)
    c = {}
    for m in range(p):
        v = b.coeff(m, a + 2 * m, m)
        if v:
            c[m] = v * inv_mod(factorial(m) ** 2, p) % p
    rest = b
    c_tilde = {}
    for m in reversed(range(p)):
        v = rest.coeff(m, a + 2 * m, m)
        if not v:
            continue
        k = v * inv_mod(factorial(m) ** 2, p) % p
        c_tilde[m] = k
        xy = mul(monomial(ctx, 0, a, 0), mul(gen_x(ctx, m), gen_y(ctx, m)))
        rest = rest - xy.scale(k * factorial(m) ** 2)
    if rest:
        raise ConsistencyViolation(f"B^({eps}){pair} is not in the span of mu_a X^m Y^m")
    return c, c_tilde


# -- the Z recursion ------------------------------------------------------------

def z_op(eps: int, pair: Pair, z: Element) -> Element:
    """One step of the Z recursion: U_k -> U_{k+1}."""
    p = pair.p
    R = z.ctx.r + 1
    frz = fr_prime(z)
    if classify(pair) in "BD":
        return mul(frz, lift(b1(eps, pair), R))
    s = s_val(pair)
    c, _ = b_coeffs(eps, pair)
    target = frz.ctx
    left = Element(_u1(p), {})
    for m, cm in c.items():
        if m < s:
            raise ConsistencyViolation(
                f"coefficient index {m} below shift {s} for {pair}, eps={eps}")
        left = left + _mu_ym_xn(_u1(p), pair.a, m, m - s).scale(cm)
    right = gen_x(target, s).scale(factorial(s))
    return mul(lift(left, R), mul(frz, right))


def z_tuple(eps: Sequence[int], pairs: Sequence[Pair], z: Element) -> Element:
    for e, pair in zip(reversed(eps), reversed(pairs)):
        z = z_op(e, pair, z)
    return z


@register_cache
@lru_cache(maxsize=None)
def b_tuple(eps: EpsVec, pairs: TupleAJ) -> Element:
    eps, pairs = tuple(eps), tuple(pairs)
    if len(eps) != len(pairs):
        raise ValueError(f"length mismatch: {len(eps)} signs for {len(pairs)} pairs")
    if not pairs:
        raise ValueError("empty tuple")
    return z_tuple(eps, pairs, identity(AlgebraCtx(pairs[0].p, 0)))


def flip(eps: EpsVec, i: int) -> EpsVec:
    out = list(eps)
    out[i] ^= 1
    return tuple(out)


def tuple_weight(pairs: Sequence[Pair]) -> int:
    p = pairs[0].p
    return sum(p ** i * iota(q) for i, q in enumerate(pairs))


# -- shifted elements and index sets --------------------------------------------

def u_pow(i: int, t: int, ctx: AlgebraCtx) -> Element:
    if not 0 <= i < ctx.r:
        raise ValueError(f"level {i} outside [0, {ctx.r})")
    g = gen_x(ctx, ctx.p ** i) if t >= 0 else gen_y(ctx, ctx.p ** i)
    return g ** abs(t)


def b_shifted(eps: EpsVec, pairs: TupleAJ, t: Sequence[int]) -> Element:
    b = b_tuple(tuple(eps), tuple(pairs))
    if len(t) != len(pairs):
        raise ValueError("shift vector length mismatch")
    ctx = b.ctx
    u = identity(ctx)
    for i, ti in enumerate(t):
        if ti:
            u = mul(u, u_pow(i, ti, ctx))
    return mul(u, b)


def x_set(pairs: Sequence[Pair]) -> List[EpsVec]:
    choices = [(0,) if satisfies_e(q) else (0, 1) for q in pairs]
    return list(itertools.product(*choices))


def t_range(pair: Pair, theta: int) -> range:
    e = (theta + 1) % 2
    return range(-n_tilde_bound(pair, e), n_bound(pair, e) + 1)


def theta_set(pairs: Sequence[Pair], eps: EpsVec) -> List[ThetaEntry]:
    eps = tuple(eps)
    xs = x_set(pairs)
    if eps not in xs:
        raise ValueError(f"{eps} is not an admissible sign vector for this tuple")
    out = []
    for theta in xs:
        if any(e > th for e, th in zip(eps, theta)):
            continue
        ranges = [t_range(q, th) for q, th in zip(pairs, theta)]
        for t in itertools.product(*ranges):
            out.append(ThetaEntry(theta, t))
    return out


def in_v_box(pairs: Sequence[Pair], entry: ThetaEntry) -> bool:
    """Whether an index lies in the quotient-basis set: theta = 0 and every
    shift within the eps = 0 bounds."""
    if any(entry.theta):
        return False
    return all(-n_tilde_bound(q, 0) <= t <= n_bound(q, 0) for q, t in zip(pairs, entry.t))


def h_elem(nu: int, i: int, ctx: AlgebraCtx) -> Element:
    p = ctx.p
    if p == 2:
        raise ValueError("h(nu, i) is defined only for odd p")
    if not 1 <= nu <= (p - 1) // 2:
        raise ValueError(f"nu must lie in [1, {(p - 1) // 2}], got {nu}")
    if not 0 <= i < ctx.r:
        raise ValueError(f"level {i} outside [0, {ctx.r})")
    n = 2 * p ** i * nu
    return toral(ctx, lambda a: binom_int(a + n, n, p) + binom_int(a + n - 1, n, p))
