"""The hyperalgebra U_r of the r-th Frobenius kernel of SL2 over F_p.

Basis monomials are ``Y^(m) mu_a X^(mp)`` with ``0 <= m, a, mp < p^r``,
encoded as the integer ``(m * P + a) * P + mp`` where ``P = p^r``.  The
encoding order is lexicographic in ``(m, a, mp)`` and doubles as the column
order for all linear algebra.
"""

from __future__ import annotations

import re
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from .ffield import binom_int, is_prime

# Asserts that every dropped out-of-range divided power really has a zero
# coefficient.  Slow; enable only while debugging.
DEBUG_KUMMER = False

_FAULT: Optional[Tuple[int, int, int, int]] = None
_CACHED: list = []


@dataclass(frozen=True)
class AlgebraCtx:
    """The pair (p, r).  ``r = 0`` is the ground field, used as the seed of
    the Z-recursion."""

    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.r < 0:
            raise ValueError(f"r must be nonnegative, got {self.r}")

    @property
    def P(self) -> int:
        return self.p ** self.r

    @property
    def dim(self) -> int:
        return self.P ** 3

    def key(self, m: int, a: int, mp: int) -> int:
        P = self.P
        return (m * P + a) * P + mp

    def unkey(self, key: int) -> Tuple[int, int, int]:
        P = self.P
        m, rest = divmod(key, P * P)
        a, mp = divmod(rest, P)
        return m, a, mp

    def __repr__(self):
        return f"AlgebraCtx(p={self.p}, r={self.r})"


class _Tables:
    __slots__ = ("recombine", "toral")

    def __init__(self, recombine, toral):
        self.recombine = recombine
        self.toral = toral


@lru_cache(maxsize=None)
def _base_tables(ctx: AlgebraCtx) -> _Tables:
    p, P = ctx.p, ctx.P
    # recombine[s][t] = binom(s + t, s): Y^(s) Y^(t) = recombine[s][t] Y^(s+t)
    recombine = [[binom_int(s + t, s, p) for t in range(P)] for s in range(P)]
    # toral[x][j] = binom(x, j) for x taken mod P (period P since j < P)
    toral = [[binom_int(x, j, p) for j in range(P)] for x in range(P)]
    return _Tables(recombine, toral)


def _tables(ctx: AlgebraCtx) -> _Tables:
    base = _base_tables(ctx)
    if _FAULT is None or _FAULT[:2] != (ctx.p, ctx.r):
        return base
    _, _, x, j = _FAULT
    toral = [row[:] for row in base.toral]
    toral[x][j] = (toral[x][j] + 1) % ctx.p
    return _Tables(base.recombine, toral)


def clear_caches() -> None:
    """Drop every memoised structure-dependent value (monomial images,
    multiplier matrices, B elements)."""
    for fn in _CACHED:
        fn.cache_clear()


def register_cache(fn):
    """Decorator: mark an lru_cache'd function as depending on the
    multiplication table, so fault injection invalidates it."""
    _CACHED.append(fn)
    return fn


@contextmanager
def inject_fault(p: int, r: int, x: int = 1, j: int = 1):
    """Perturb the single structure constant binom(x, j) used by the toral
    step of multiplication in U_r, for the duration of the block."""
    global _FAULT
    old = _FAULT
    _FAULT = (p, r, x, j)
    clear_caches()
    try:
        yield
    finally:
        _FAULT = old
        clear_caches()


class Element:
    """A sparse F_p-linear combination of basis monomials of U_r.

    ``terms`` maps monomial keys to residues in ``[1, p)``; instances are
    treated as immutable.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraCtx, terms: Optional[Dict[int, int]] = None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    @classmethod
    def from_terms(cls, ctx: AlgebraCtx, items: Iterable[Tuple[int, int]]) -> "Element":
        p = ctx.p
        acc: Dict[int, int] = defaultdict(int)
        for key, c in items:
            acc[key] += c
        return cls(ctx, {k: v % p for k, v in acc.items() if v % p})

    @classmethod
    def from_monomials(cls, ctx: AlgebraCtx, items: Iterable[Tuple[Tuple[int, int, int], int]]) -> "Element":
        P = ctx.P
        out = []
        for (m, a, mp), c in items:
            if not (0 <= m < P and 0 <= mp < P):
                raise ValueError(f"divided power index out of range for p^r={P}: {(m, mp)}")
            out.append((ctx.key(m, a % P, mp), c))
        return cls.from_terms(ctx, out)

    def monomials(self) -> Iterator[Tuple[int, int, int, int]]:
        """Yield ``(m, a, mp, coeff)`` in lexicographic order."""
        for key in sorted(self.terms):
            m, a, mp = self.ctx.unkey(key)
            yield m, a, mp, self.terms[key]

    def coeff(self, m: int, a: int, mp: int) -> int:
        return self.terms.get(self.ctx.key(m, a % self.ctx.P, mp), 0)

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Element(self.ctx, out)

    def __neg__(self):
        p = self.ctx.p
        return Element(self.ctx, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "Element":
        p = self.ctx.p
        c %= p
        if c == 0:
            return Element(self.ctx, {})
        return Element(self.ctx, {k: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative power")
        out = identity(self.ctx)
        for _ in range(n):
            out = mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Element<{self.ctx.p},{self.ctx.r}>({format_element(self)})"

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.ctx.dim, dtype=np.int64)
        for k, c in self.terms.items():
            v[k] = c
        return v

    @classmethod
    def from_vector(cls, ctx: AlgebraCtx, vec) -> "Element":
        vec = np.asarray(vec) % ctx.p
        nz = np.nonzero(vec)[0]
        return cls(ctx, {int(k): int(vec[k]) for k in nz})


def zero(ctx: AlgebraCtx) -> Element:
    return Element(ctx, {})


def mul(e1: Element, e2: Element) -> Element:
    """Exact product in U_r.

    For ``(Y^(m1) mu_a X^(n1)) (Y^(m2) mu_b X^(n2))`` the middle factor
    ``X^(n1) Y^(m2)`` is expanded as
    ``sum_j Y^(m2-j) binom(H - n1 - m2 + 2j, j) X^(n1-j)``; the two weight
    idempotents then agree iff ``a + 2 m2 == b + 2 n1 (mod p^r)``, and the
    toral binomial becomes a scalar on the surviving weight.
    """
    e1._check(e2)
    ctx = e1.ctx
    p, P = ctx.p, ctx.P
    PP = P * P
    tab = _tables(ctx)
    rec, tor = tab.recombine, tab.toral

    right: Dict[int, Dict[int, list]] = {}
    for key, c in e2.terms.items():
        m2, rest = divmod(key, PP)
        b, n2 = divmod(rest, P)
        right.setdefault(m2, {}).setdefault(b, []).append((n2, c))

    out: Dict[int, int] = defaultdict(int)
    for key1, c1 in e1.terms.items():
        m1, rest = divmod(key1, PP)
        a, n1 = divmod(rest, P)
        shift = a - 2 * n1
        for m2, by_b in right.items():
            lst = by_b.get((shift + 2 * m2) % P)
            if lst is None:
                continue
            rec_m1 = rec[m1]
            for j in range(min(n1, m2) + 1):
                y = m1 + m2 - j
                if y >= P:
                    if DEBUG_KUMMER:
                        assert binom_int(y, m1, p) == 0
                    continue
                cy = rec_m1[m2 - j]
                if not cy:
                    continue
                w = (a + 2 * (m2 - j)) % P
                ct = tor[(w - n1 - m2 + 2 * j) % P][j]
                if not ct:
                    continue
                base = c1 * cy * ct
                nx = n1 - j
                rec_nx = rec[nx]
                prefix = (y * P + w) * P
                for n2, c2 in lst:
                    x = nx + n2
                    if x >= P:
                        if DEBUG_KUMMER:
                            assert binom_int(x, nx, p) == 0
                        continue
                    cx = rec_nx[n2]
                    if cx:
                        out[prefix + x] += base * cx * c2
    return Element(ctx, {k: v % p for k, v in out.items() if v % p})


def product(*elements: Element) -> Element:
    out = elements[0]
    for e in elements[1:]:
        out = mul(out, e)
    return out


# -- generators ---------------------------------------------------------------

def _check_index(ctx: AlgebraCtx, n: int, what: str):
    if not 0 <= n < ctx.P:
        raise ValueError(f"{what} index {n} outside [0, {ctx.P})")


def identity(ctx: AlgebraCtx) -> Element:
    return Element(ctx, {ctx.key(0, a, 0): 1 for a in range(ctx.P)})


def gen_x(ctx: AlgebraCtx, n: int) -> Element:
    _check_index(ctx, n, "X")
    return Element(ctx, {ctx.key(0, a, n): 1 for a in range(ctx.P)})


def gen_y(ctx: AlgebraCtx, n: int) -> Element:
    _check_index(ctx, n, "Y")
    return Element(ctx, {ctx.key(n, a, 0): 1 for a in range(ctx.P)})


def gen_mu(ctx: AlgebraCtx, a: int) -> Element:
    """mu_a; any integer a is accepted and reduced mod p^r."""
    return Element(ctx, {ctx.key(0, a % ctx.P, 0): 1})


def gen_binom_h(ctx: AlgebraCtx, n: int) -> Element:
    _check_index(ctx, n, "binom(H, n)")
    p = ctx.p
    return Element.from_terms(ctx, ((ctx.key(0, a, 0), binom_int(a, n, p)) for a in range(ctx.P)))


def toral(ctx: AlgebraCtx, f) -> Element:
    """The weight-diagonal element sum_a f(a) mu_a."""
    return Element.from_terms(ctx, ((ctx.key(0, a, 0), f(a)) for a in range(ctx.P)))


def monomial(ctx: AlgebraCtx, m: int, a: int, mp: int, c: int = 1) -> Element:
    return Element.from_monomials(ctx, [((m, a, mp), c)])


def basis(ctx: AlgebraCtx) -> Iterator[Element]:
    for key in range(ctx.dim):
        yield Element(ctx, {key: 1})


# -- structure maps -----------------------------------------------------------

@register_cache
@lru_cache(maxsize=None)
def _t1_monomial(ctx: AlgebraCtx, key: int) -> Element:
    m, a, mp = ctx.unkey(key)
    sign = -1 if (m + mp) % 2 else 1
    # X^(m) mu_{-a} = mu_{-a+2m} X^(m)
    left = monomial(ctx, 0, -a + 2 * m, m, sign)
    return mul(left, gen_y(ctx, mp))


@register_cache
@lru_cache(maxsize=None)
def _t2_monomial(ctx: AlgebraCtx, key: int) -> Element:
    m, a, mp = ctx.unkey(key)
    sign = -1 if (m + mp) % 2 else 1
    # X^(mp) mu_{-a} Y^(m)
    left = monomial(ctx, 0, -a + 2 * mp, mp, sign)
    return mul(left, gen_y(ctx, m))


def _apply_linear(e: Element, image, target: Optional[AlgebraCtx] = None) -> Element:
    ctx = target or e.ctx
    p = ctx.p
    acc: Dict[int, int] = defaultdict(int)
    for key, c in e.terms.items():
        for k2, c2 in image(e.ctx, key).terms.items():
            acc[k2] += c * c2
    return Element(ctx, {k: v % p for k, v in acc.items() if v % p})


def t1(e: Element) -> Element:
    """The automorphism X^(m) -> (-1)^m Y^(m), Y^(m) -> (-1)^m X^(m)."""
    return _apply_linear(e, _t1_monomial)


def t2(e: Element) -> Element:
    """The antiautomorphism X^(m) -> (-1)^m X^(m), Y^(m) -> (-1)^m Y^(m)."""
    return _apply_linear(e, _t2_monomial)


@lru_cache(maxsize=None)
def _mu_binom_expansion(p: int, P: int, a: int) -> Tuple[Tuple[int, int], ...]:
    # mu_a = binom(H - a - 1, P - 1) = sum_i binom(-a - 1, P - 1 - i) binom(H, i)
    out = []
    for i in range(P):
        c = binom_int(-a - 1, P - 1 - i, p)
        if c:
            out.append((i, c))
    return tuple(out)


@register_cache
@lru_cache(maxsize=None)
def _fr_monomial(ctx: AlgebraCtx, key: int) -> Element:
    p, P = ctx.p, ctx.P
    m, a, mp = ctx.unkey(key)
    if m % p or mp % p:
        return zero(ctx)
    acc: Dict[int, int] = defaultdict(int)
    for i, c in _mu_binom_expansion(p, P, a):
        if i % p:
            continue
        n = i // p
        for w in range(P):
            cw = binom_int(w, n, p)
            if cw:
                acc[ctx.key(m // p, w, mp // p)] += c * cw
    return Element(ctx, {k: v % p for k, v in acc.items() if v % p})


def fr(e: Element) -> Element:
    """Frobenius: divide every divided-power and binomial index by p, killing
    indices not divisible by p.  The image of U_r lies in U_{r-1}, returned
    here inside the same context."""
    return _apply_linear(e, _fr_monomial)


def fr_prime(e: Element) -> Element:
    """The linear map Y^(m) binom(H,n) X^(m') -> Y^(pm) binom(H,pn) X^(pm'),
    landing in U_{r+1}."""
    ctx = e.ctx
    p = ctx.p
    target = AlgebraCtx(p, ctx.r + 1)
    out: Dict[int, int] = {}
    for key, c in e.terms.items():
        m, b, mp = ctx.unkey(key)
        for a0 in range(p):
            out[target.key(p * m, a0 + p * b, p * mp)] = c
    return Element(target, out)


def fr_prime_power(e: Element, i: int) -> Element:
    for _ in range(i):
        e = fr_prime(e)
    return e


def embed(e: Element, R: int) -> Element:
    """Inclusion U_r -> U_R for R > r."""
    ctx = e.ctx
    if R <= ctx.r:
        raise ValueError(f"embedding needs R > r, got R={R}, r={ctx.r}")
    target = AlgebraCtx(ctx.p, R)
    P, Q = ctx.P, target.P
    out: Dict[int, int] = {}
    for key, c in e.terms.items():
        m, a, mp = ctx.unkey(key)
        for t in range(a, Q, P):
            out[target.key(m, t, mp)] = c
    return Element(target, out)


def restrict(e: Element, r: int) -> Element:
    """Inverse of ``embed``: view an element of U_R lying in the image of
    U_r as an element of U_r.  Raises if it does not lie there."""
    ctx = e.ctx
    small = AlgebraCtx(ctx.p, r)
    P = small.P
    out: Dict[int, int] = {}
    for m, a, mp, c in e.monomials():
        if m >= P or mp >= P:
            raise ValueError(f"divided power beyond p^{r} in {format_element(e)}")
        out[small.key(m, a % P, mp)] = c
    back = embed(Element(small, out), ctx.r) if r < ctx.r else Element(small, out)
    if back != e:
        raise ValueError("element is not in the image of the smaller algebra")
    return Element(small, out)


def lift(e: Element, R: int) -> Element:
    """Like ``embed`` but the identity when R equals the current rank."""
    return e if R == e.ctx.r else embed(e, R)


# -- grading and weights ------------------------------------------------------

def weight_of(e: Element) -> Optional[int]:
    """The common U_r^0 weight (mod p^r) of all terms, or None."""
    P = e.ctx.P
    weights = {(a - 2 * m) % P for m, a, _, _ in e.monomials()}
    if len(weights) == 1:
        return weights.pop()
    return None


def degree_split(e: Element) -> Dict[int, Element]:
    parts: Dict[int, Dict[int, int]] = defaultdict(dict)
    for key, c in e.terms.items():
        m, _, mp = e.ctx.unkey(key)
        parts[mp - m][key] = c
    return {d: Element(e.ctx, t) for d, t in parts.items()}


def is_in_Ar(e: Element) -> bool:
    return all(m == mp for m, _, mp, _ in e.monomials())


def random_element(ctx: AlgebraCtx, rng, n_terms: int = 4) -> Element:
    keys = rng.integers(0, ctx.dim, size=n_terms)
    coeffs = rng.integers(1, ctx.p, size=n_terms) if ctx.p > 2 else np.ones(n_terms, dtype=int)
    return Element.from_terms(ctx, zip(map(int, keys), map(int, coeffs)))


# -- text format --------------------------------------------------------------

_TERM = re.compile(r"^\s*(\d+)\*Y\((\d+)\)\.mu\((\d+)\)\.X\((\d+)\)\s*$")


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    return " + ".join(f"{c}*Y({m}).mu({a}).X({mp})" for m, a, mp, c in e.monomials())


def parse_element(ctx: AlgebraCtx, text: str) -> Element:
    text = text.strip()
    if text == "0":
        return zero(ctx)
    items = []
    for chunk in text.split(" + "):
        match = _TERM.match(chunk)
        if not match:
            raise ValueError(f"cannot parse term {chunk!r}")
        c, m, a, mp = map(int, match.groups())
        if not 1 <= c < ctx.p:
            raise ValueError(f"coefficient {c} outside [1, {ctx.p})")
        if not 0 <= a < ctx.P:
            raise ValueError(f"mu index {a} outside [0, {ctx.P})")
        items.append(((m, a, mp), c))
    return Element.from_monomials(ctx, items)


