"""Verification suites.

Each suite returns a ``CheckReport`` whose details map invariant names to
their status, the number of individual checks made and, on failure, the
first counterexample.  Enumeration orders are fixed and every random draw
comes from a generator seeded by (seed, invariant name), so two runs with
the same seed produce identical reports apart from timings.
"""

from __future__ import annotations

import itertools
import time
import zlib
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import (
    AlgebraCtx,
    Element,
    basis,
    degree_split,
    embed,
    format_element,
    fr,
    fr_prime,
    fr_prime_power,
    gen_binom_h,
    gen_mu,
    gen_x,
    gen_y,
    identity,
    inject_fault,
    is_in_Ar,
    lift,
    monomial,
    mul,
    random_element,
    restrict,
    t1,
    t2,
    weight_of,
    zero,
)
from .belements import (
    Pair,
    b1,
    b_coeffs,
    b_shifted,
    b_tuple,
    beta,
    beta_tilde,
    classify,
    enumerate_p_set,
    enumerate_tuples,
    flip,
    four_j_squared,
    gamma,
    gamma_tilde,
    h_elem,
    iota,
    n_bound,
    n_tilde_bound,
    negate_pair,
    s_val,
    satisfies_e,
    t_range,
    tuple_weight,
    x_set,
    z_op,
    z_tuple,
)
from .ffield import Scalar, binom_int, falling_binom, inv
from .linalg import (
    Subspace,
    add,
    default_multipliers,
    full_multipliers,
    ideal_closure,
    ideal_generators,
    ideal_power_step,
    intersect,
    is_closed,
    left_socle,
    mult_matrix,
    nilpotency_index,
    rref,
    span,
    _matmul,
)
from .simples import (
    BudgetExceeded,
    act,
    build_simple,
    check_budget,
    claimed_radical_basis,
    oracle_radical,
    semisimple_dim,
    simples,
    v_set,
)

VERSION = "0.1.0"
SUITES = ("algebra", "idempotents", "radical", "socle", "main", "lemmas", "props")
COMBINATION_LIMIT = 16


@dataclass
class CheckReport:
    name: str
    params: Dict[str, object]
    status: str
    details: Dict[str, object]
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failures(self) -> Dict[str, str]:
        inv = self.details.get("invariants", {})
        return {k: v.get("counterexample", "") for k, v in inv.items() if v["status"] == "fail"}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "details": {"params": self.params, **self.details},
            "elapsed_ms": self.elapsed_ms,
        }


class Skip(Exception):
    """Raised inside an invariant that does not apply to the given context."""


class Tally:
    """Running record of one invariant."""

    def __init__(self):
        self.checked = 0
        self.failure: Optional[str] = None
        self.info: Dict[str, object] = {}

    def check(self, ok: bool, describe) -> bool:
        self.checked += 1
        if not ok and self.failure is None:
            self.failure = describe() if callable(describe) else str(describe)
        return bool(ok)

    def equal(self, lhs: Element, rhs: Element, label: str) -> bool:
        return self.check(lhs == rhs, lambda: f"{label}: lhs = {format_element(lhs)}; rhs = {format_element(rhs)}")

    def dims(self, actual: int, expected: int, label: str) -> bool:
        self.info[label] = actual
        return self.check(actual == expected, f"{label}: got dimension {actual}, expected {expected}")


Invariant = Callable[[Tally], None]


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def _run(name: str, ctx: AlgebraCtx, invariants: Sequence[Tuple[str, Invariant]],
         extra: Optional[dict] = None) -> CheckReport:
    start = time.perf_counter()
    results = {}
    for inv_name, fn in invariants:
        tally = Tally()
        t0 = time.perf_counter()
        status = None
        try:
            fn(tally)
        except (Skip, BudgetExceeded) as exc:
            status, reason = "skipped", str(exc)
        except Exception as exc:  # a crash inside a check is a failed check
            tally.failure = tally.failure or f"{type(exc).__name__}: {exc}"
        entry = {"checked": tally.checked}
        if status == "skipped":
            entry["status"] = "skipped"
            entry["reason"] = reason
        elif tally.failure is not None:
            entry["status"] = "fail"
            entry["counterexample"] = tally.failure
        else:
            entry["status"] = "pass"
        entry.update(tally.info)
        entry["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
        results[inv_name] = entry
    statuses = {v["status"] for v in results.values()}
    if "fail" in statuses:
        status = "fail"
    elif statuses <= {"skipped"}:
        status = "skipped"
    else:
        status = "pass"
    params = {"p": ctx.p, "r": ctx.r, **(extra or {})}
    return CheckReport(name, params, status, {"invariants": results},
                       int((time.perf_counter() - start) * 1000))


def _skipped(name: str, ctx: AlgebraCtx, reason: str, extra: Optional[dict] = None) -> CheckReport:
    params = {"p": ctx.p, "r": ctx.r, **(extra or {})}
    return CheckReport(name, params, "skipped", {"reason": reason, "invariants": {}}, 0)


# -- small helpers ------------------------------------------------------------

def _nonzero(ctx: AlgebraCtx, rng, n_terms: int = 3) -> Element:
    while True:
        e = random_element(ctx, rng, n_terms)
        if e:
            return e


def _random_monomial(ctx: AlgebraCtx, rng) -> Element:
    return Element(ctx, {int(rng.integers(0, ctx.dim)): 1})


def _random_restricted(ctx: AlgebraCtx, rng, which: str, n_terms: int = 3) -> Element:
    """Random element supported on monomials with m = 0 ('upper') or mp = 0
    ('lower')."""
    P = ctx.P
    items = []
    for _ in range(n_terms):
        a, k = int(rng.integers(0, P)), int(rng.integers(0, P))
        c = int(rng.integers(1, ctx.p)) if ctx.p > 2 else 1
        items.append(((0, a, k) if which == "upper" else (k, a, 0), c))
    return Element.from_monomials(ctx, items)


def _prod_except(vals: Sequence[int], skip: int, p: int) -> int:
    out = 1
    for i, v in enumerate(vals):
        if i != skip:
            out = out * v % p
    return out


def _scalar(e: Element, c) -> Element:
    return e.scale(int(c) % e.ctx.p)


def _u(p: int, r: int) -> AlgebraCtx:
    return AlgebraCtx(p, r)


def _nu_values(p: int) -> List[int]:
    return list(range(1, (p - 1) // 2 + 1))


def _shift_pair(pair: Pair) -> Pair:
    """(a, j) -> (a + 2, j) on canonical pairs; for p = 2 the odd pairs swap."""
    if pair.p == 2:
        return negate_pair(pair)
    return Pair(pair.p, (pair.a + 2) % pair.p, pair.twoJ)


# -- generating sets ----------------------------------------------------------

def nu_combinations(ctx: AlgebraCtx) -> List[Tuple[int, ...]]:
    if ctx.p == 2:
        return [()]
    return list(itertools.product(_nu_values(ctx.p), repeat=ctx.r))


def main_generators(ctx: AlgebraCtx, nu: Sequence[int] = ()) -> List[Element]:
    """The generating set of the radical: h(nu_i, i) X^(p^i)^(p - nu_i) and its
    mirror for odd p; mu_m^(i+1) X^(m) X^(2^i) and its mirror for p = 2."""
    p, r = ctx.p, ctx.r
    out = []
    if p == 2:
        for i in range(r):
            for m in range(2 ** i):
                mu = lift(gen_mu(_u(2, i + 1), m), r)
                out.append(mu * gen_x(ctx, m) * gen_x(ctx, 2 ** i))
                out.append(gen_y(ctx, 2 ** i) * gen_y(ctx, m) * mu)
        return out
    nu = tuple(nu)
    if len(nu) != r or not all(1 <= v <= (p - 1) // 2 for v in nu):
        raise ValueError(f"nu must have length {r} with entries in [1, {(p - 1) // 2}], got {nu}")
    for i, v in enumerate(nu):
        h = h_elem(v, i, ctx)
        out.append(h * gen_x(ctx, p ** i) ** (p - v))
        out.append(gen_y(ctx, p ** i) ** (p - v) * h)
    return out


def _annihilates_all(e: Element) -> Tuple[bool, Optional[int]]:
    for module in simples(e.ctx):
        if np.any(act(e, module)):
            return False, module.lam
    return True, None


# -- algebra ------------------------------------------------------------------

def verify_algebra(ctx: AlgebraCtx, seed: int = 0) -> CheckReport:
    mons = list(basis(ctx))

    def dimension(t: Tally):
        t.dims(len(mons), ctx.p ** (3 * ctx.r), "basis size")

    def unit(t: Tally):
        one = identity(ctx)
        for m in mons:
            t.equal(one * m, m, "1 * m")
            t.equal(m * one, m, "m * 1")

    def associativity(t: Tally):
        if ctx.dim <= 8:
            triples = itertools.product(mons, repeat=3)
            t.info["mode"] = "exhaustive"
        else:
            rng = _rng(seed, "associativity")
            triples = ([mons[int(i)] for i in rng.integers(0, ctx.dim, 3)] for _ in range(200))
            t.info["mode"] = "random"
        for x, y, z in triples:
            t.equal((x * y) * z, x * (y * z), f"({format_element(x)}, {format_element(y)}, {format_element(z)})")

    return _run("algebra", ctx, [("dimension", dimension), ("unit", unit), ("associativity", associativity)],
                {"seed": seed})


# -- idempotents --------------------------------------------------------------

def verify_idempotents(ctx: AlgebraCtx, allow_large: bool = False) -> CheckReport:
    try:
        check_budget(ctx, allow_large)
    except BudgetExceeded as exc:
        return _skipped("idempotents", ctx, str(exc))
    tuples = enumerate_tuples(ctx.p, ctx.r)
    zero_eps = (0,) * ctx.r
    idem = [b_tuple(zero_eps, t) for t in tuples]

    def count(t: Tally):
        t.dims(len(idem), len(enumerate_p_set(ctx.p)) ** ctx.r, "idempotent count")

    def idempotent(t: Tally):
        for tup, e in zip(tuples, idem):
            t.equal(e * e, e, f"B{tuple(map(str, tup))}^2")

    def orthogonal(t: Tally):
        for (ta, ea), (tb, eb) in itertools.permutations(zip(tuples, idem), 2):
            prod_ = ea * eb
            t.check(not prod_, lambda: f"B{tuple(map(str, ta))} B{tuple(map(str, tb))} = {format_element(prod_)}")

    def total(t: Tally):
        s = zero(ctx)
        for e in idem:
            s = s + e
        t.equal(s, identity(ctx), "sum of idempotents")

    def quotient(t: Tally):
        rad = oracle_radical(ctx, allow_large)
        t.dims(ctx.dim - rad.dim, semisimple_dim(ctx), "dim U/rad")

    return _run("idempotents", ctx, [("count", count), ("idempotent", idempotent), ("orthogonal", orthogonal),
                                     ("sum is unity", total), ("quotient dimension", quotient)])


# -- radical basis -----------------------------------------------------------

def verify_radical_basis(ctx: AlgebraCtx, allow_large: bool = False) -> CheckReport:
    try:
        check_budget(ctx, allow_large)
    except BudgetExceeded as exc:
        return _skipped("radical", ctx, str(exc))
    state = {}

    def oracle() -> Subspace:
        if "rad" not in state:
            state["rad"] = oracle_radical(ctx, allow_large)
        return state["rad"]

    def claimed() -> List[Element]:
        if "claimed" not in state:
            state["claimed"] = claimed_radical_basis(ctx)
        return state["claimed"]

    def dimensions(t: Tally):
        rad = oracle()
        counted = ctx.dim - semisimple_dim(ctx)
        t.info["oracle"] = rad.dim
        t.info["claimed"] = len(claimed())
        t.info["counted"] = counted
        t.check(rad.dim == len(claimed()) == counted,
                f"oracle {rad.dim}, claimed {len(claimed())}, counted {counted}")

    def independent(t: Tally):
        t.dims(span(ctx, claimed()).dim, len(claimed()), "rank of claimed basis")

    def equals_oracle(t: Tally):
        s = span(ctx, claimed())
        rad = oracle()
        t.check(s == rad, lambda: f"span dimension {s.dim} vs oracle {rad.dim}; "
                                  f"intersection {intersect(s, rad).dim}")

    def complement(t: Tally):
        vs = v_set(ctx)
        sv = span(ctx, vs)
        t.dims(sv.dim, len(vs), "rank of V")
        t.dims(intersect(sv, oracle()).dim, 0, "V meet rad")
        t.dims(add(sv, oracle()).dim, ctx.dim, "V + rad")

    def nonzero(t: Tally):
        for e in claimed() + v_set(ctx):
            t.check(bool(e), "a shifted B element in the index set is zero")

    def ideal(t: Tally):
        mults = default_multipliers(ctx)
        t.check(is_closed(oracle(), mults, mults), "oracle radical not stable under X^(p^i), Y^(p^i)")

    def nilpotent(t: Tally):
        n = nilpotency_index(oracle())
        t.info["nilpotency index"] = n
        t.check(n is not None, "powers of the oracle radical stabilise at a nonzero ideal")

    return _run("radical", ctx, [("dimensions", dimensions), ("claimed independent", independent),
                                 ("claimed spans radical", equals_oracle), ("V is a complement", complement),
                                 ("basis elements nonzero", nonzero), ("two-sided ideal", ideal),
                                 ("nilpotent", nilpotent)])


# -- socle --------------------------------------------------------------------

def socle_count(ctx: AlgebraCtx) -> int:
    return sum(prod(n_bound(q, 0) + n_tilde_bound(q, 0) + 1 for q in tup)
               for tup in enumerate_tuples(ctx.p, ctx.r))


def socle_spanning_set(ctx: AlgebraCtx) -> List[Element]:
    ones = (1,) * ctx.r
    out = []
    for tup in enumerate_tuples(ctx.p, ctx.r):
        ranges = [range(-n_tilde_bound(q, 0), n_bound(q, 0) + 1) for q in tup]
        for t in itertools.product(*ranges):
            out.append(b_shifted(ones, tup, t))
    return out


def verify_socle(ctx: AlgebraCtx, allow_large: bool = False) -> CheckReport:
    try:
        check_budget(ctx, allow_large)
    except BudgetExceeded as exc:
        return _skipped("socle", ctx, str(exc))
    state = {}

    def socle() -> Subspace:
        if "soc" not in state:
            state["soc"] = left_socle(ctx, oracle_radical(ctx, allow_large))
        return state["soc"]

    def dimension(t: Tally):
        t.dims(socle().dim, socle_count(ctx), "left socle")

    def spanning(t: Tally):
        elems = socle_spanning_set(ctx)
        s = span(ctx, elems)
        t.dims(s.dim, len(elems), "rank of B^(1)((a,j);t) set")
        t.check(s == socle(), lambda: f"span dimension {s.dim} vs socle {socle().dim}")

    def explicit(t: Tally):
        if (ctx.p, ctx.r) != (2, 1):
            raise Skip("explicit spanning set is stated for p = 2, r = 1")
        X, Y = gen_x(ctx, 1), gen_y(ctx, 1)
        mu0, mu1 = gen_mu(ctx, 0), gen_mu(ctx, 1)
        elems = [mu0 * X * Y, mu1 * Y * X, mu1 * X, mu1 * X * Y, mu1 * Y]
        s = span(ctx, elems)
        t.dims(s.dim, 5, "explicit set rank")
        t.check(s == socle(), "explicit set does not span the socle")

    def annihilated(t: Tally):
        rad_span = span(ctx, claimed_radical_basis(ctx))
        gens = ideal_generators(rad_span)
        t.info["radical generators"] = len(gens)
        soc = socle()
        for g in gens:
            img = _matmul(soc.rows, mult_matrix(g, "left"), ctx.p)
            t.check(not np.any(img), lambda: f"{format_element(g)} does not kill the socle")
        if len(rad_span) * soc.dim <= 5000:
            for v in claimed_radical_basis(ctx):
                for x in soc.elements():
                    prod_ = v * x
                    t.check(not prod_, lambda: f"{format_element(v)} * {format_element(x)} = {format_element(prod_)}")

    return _run("socle", ctx, [("dimension", dimension), ("B^(1) shifts span the socle", spanning),
                               ("explicit set", explicit), ("radical kills socle", annihilated)])


# -- radical generators -----------------------------------------------------

def verify_main_theorem(ctx: AlgebraCtx, nu: Optional[Sequence[int]] = None,
                        allow_large: bool = False) -> CheckReport:
    try:
        check_budget(ctx, allow_large)
    except BudgetExceeded as exc:
        return _skipped("main", ctx, str(exc))
    combos = nu_combinations(ctx)
    if ctx.p != 2 and nu is not None:
        combos = [tuple(nu)]
    elif len(combos) > COMBINATION_LIMIT:
        raise ValueError(f"{len(combos)} nu-combinations; pass one explicitly")
    expected_count = 2 * ctx.r if ctx.p > 2 else 2 * (2 ** ctx.r - 1)
    invariants = []
    for combo in combos:
        label = "nu=" + ",".join(map(str, combo)) if combo else "p=2"

        def count(t: Tally, combo=combo):
            t.dims(len(main_generators(ctx, combo)), expected_count, "generator count")

        def inside(t: Tally, combo=combo):
            for g in main_generators(ctx, combo):
                ok, lam = _annihilates_all(g)
                t.check(ok, lambda: f"{format_element(g)} acts nonzero on L({lam})")

        def generates(t: Tally, combo=combo):
            closure = ideal_closure(ctx, main_generators(ctx, combo))
            rad = oracle_radical(ctx, allow_large)
            t.info["closure"] = closure.dim
            t.info["oracle"] = rad.dim
            t.check(closure == rad, f"closure dimension {closure.dim} vs radical {rad.dim}")

        invariants += [(f"{label}: generator count", count), (f"{label}: generators in radical", inside),
                       (f"{label}: closure is radical", generates)]
    return _run("main", ctx, invariants, {"nu": [list(c) for c in combos]})


# -- membership suite -------------------------------------------------------

class _IdealCache:
    def __init__(self):
        self._store: Dict[tuple, Subspace] = {}

    def get(self, key: tuple, build: Callable[[], Subspace]) -> Subspace:
        if key not in self._store:
            self._store[key] = build()
        return self._store[key]


def _x_gen(ctx: AlgebraCtx, s: int, key) -> Element:
    """The left-hand generator at level s: h(nu, s) (X^(p^s))^(p - nu) for odd
    p, mu_m^(s+1) X^(m) X^(2^s) for p = 2 (key is nu or m)."""
    p = ctx.p
    if p == 2:
        return lift(gen_mu(_u(2, s + 1), key), ctx.r) * gen_x(ctx, key) * gen_x(ctx, 2 ** s)
    return h_elem(key, s, ctx) * gen_x(ctx, p ** s) ** (p - key)


def _y_gen(ctx: AlgebraCtx, s: int, key) -> Element:
    p = ctx.p
    if p == 2:
        return gen_y(ctx, 2 ** s) * gen_y(ctx, key) * lift(gen_mu(_u(2, s + 1), key), ctx.r)
    return gen_y(ctx, p ** s) ** (p - key) * h_elem(key, s, ctx)


def verify_lemma_suite(ctx: AlgebraCtx) -> CheckReport:
    p, r = ctx.p, ctx.r
    U1 = _u(p, 1)
    X1, Y1 = gen_x(U1, 1), gen_y(U1, 1)
    cache = _IdealCache()
    pairs = enumerate_p_set(p)

    def u1_ideal(g: Element) -> Subspace:
        return cache.get(("U1", g), lambda: ideal_closure(U1, [g]))

    def odd_only():
        if p == 2:
            raise Skip("statement is for odd p")

    def h_symmetry(t: Tally):
        odd_only()
        for nu in _nu_values(p):
            h = h_elem(nu, 0, U1)
            sign = (-1) ** (nu + 1)
            t.equal(t1(h * X1 ** (p - nu)), _scalar(Y1 ** (p - nu) * h, sign), f"T1(h({nu},0) X^{p - nu})")
            t.equal(t1(Y1 ** (p - nu) * h), _scalar(h * X1 ** (p - nu), sign), f"T1(Y^{p - nu} h({nu},0))")

    def binomial_support(t: Tally):
        odd_only()
        for nu in _nu_values(p):
            for m in range(3 * p):
                lhs = (binom_int(m + 1, 2 * nu, p) + binom_int(m, 2 * nu, p)) % p != 0
                rhs = 2 * nu - 1 <= m % p <= p - 1
                t.check(lhs == rhs, f"m={m}, nu={nu}")

    def half_algebra_membership(t: Tally):
        odd_only()
        mus = [gen_mu(U1, a) for a in range(p)]
        upper, lower = [X1] + mus, [Y1] + mus
        for nu in _nu_values(p):
            h = h_elem(nu, 0, U1)
            iu = ideal_closure(U1, [h * X1 ** (p - nu)], upper)
            il = ideal_closure(U1, [Y1 ** (p - nu) * h], lower)
            for a in range(p):
                if a % p == p - 1:
                    continue
                e = gen_mu(U1, a) * X1 ** (p - 1)
                t.check(iu.member(e), f"mu_{a} X^{p - 1} outside the upper ideal for nu={nu}")
                f = Y1 ** (p - 1) * gen_mu(U1, a)
                t.check(il.member(f), f"Y^{p - 1} mu_{a} outside the lower ideal for nu={nu}")

    def b1_membership(t: Tally):
        for q in pairs:
            b = b1(1, q)
            g = gen_mu(U1, q.a + 2 * n_bound(q, 0)) * X1 ** (p - 1)
            t.check(u1_ideal(g).member(b), f"B^(1){q} outside U mu X^(p-1) U")
            if p > 2 and q.twoJ:
                for nu in _nu_values(p):
                    g = h_elem(nu, 0, U1) * X1 ** (p - nu)
                    t.check(u1_ideal(g).member(b), f"B^(1){q} outside U h({nu},0) X^{p - nu} U")

    def b0_shift_membership(t: Tally):
        for q in pairs:
            if satisfies_e(q):
                continue
            n0, n1 = n_bound(q, 0), n_bound(q, 1)
            m0, m1 = n_tilde_bound(q, 0), n_tilde_bound(q, 1)
            cases = [(tt, "X") for tt in range(n0 + 1, n1 + 1)] + [(tt, "Y") for tt in range(-m1, -m0)]
            for tt, side in cases:
                b = b_shifted((0,), (q,), (tt,))
                if side == "X":
                    g = gen_mu(U1, q.a + 2 * n1) * X1 ** (p - 1)
                else:
                    g = Y1 ** (p - 1) * gen_mu(U1, q.a + 2 * n0)
                t.check(u1_ideal(g).member(b), f"B^(0)({q};{tt}) outside its {side}-ideal")
                if p > 2:
                    for nu in _nu_values(p):
                        h = h_elem(nu, 0, U1)
                        g = h * X1 ** (p - nu) if side == "X" else Y1 ** (p - nu) * h
                        t.check(u1_ideal(g).member(b), f"B^(0)({q};{tt}) outside the h-ideal, nu={nu}")

    def generators_kill_simples(t: Tally):
        gens = []
        if p == 2:
            gens = [gen_mu(U1, 0) * X1, Y1 * gen_mu(U1, 0)]
        else:
            for nu in _nu_values(p):
                h = h_elem(nu, 0, U1)
                gens += [h * X1 ** (p - nu), Y1 ** (p - nu) * h]
        for g in gens:
            ok, lam = _annihilates_all(g)
            t.check(ok, lambda: f"{format_element(g)} acts nonzero on L({lam})")

    def level_ideal(side: str, s: int, key) -> Subspace:
        gen = _x_gen(ctx, s, key) if side == "X" else _y_gen(ctx, s, key)
        return cache.get((side, s, key), lambda: ideal_closure(ctx, [gen]))

    def z_image_membership(t: Tally):
        if r < 2:
            raise Skip("needs r >= 2")
        L = r - 1
        if p > 2:
            zero_eps = (0,) * L
            for tup in enumerate_tuples(p, L):
                for a in range(p):
                    if a == p - 1:
                        continue
                    zx = z_tuple(zero_eps, tup, gen_mu(U1, a) * X1 ** (p - 1))
                    zy = z_tuple(zero_eps, tup, Y1 ** (p - 1) * gen_mu(U1, a))
                    for nu in _nu_values(p):
                        t.check(level_ideal("X", L, nu).member(zx), f"X-side, tuple {tuple(map(str, tup))}, a'={a}")
                        t.check(level_ideal("Y", L, nu).member(zy), f"Y-side, tuple {tuple(map(str, tup))}, a'={a}")
            return
        src = _u(2, L)
        for q in pairs:
            for a in range(2 ** (L - 1)):
                mu = gen_mu(src, a)
                zx = z_op(0, q, mu * gen_x(src, a) * gen_x(src, 2 ** (L - 1)))
                zy = z_op(0, q, gen_y(src, 2 ** (L - 1)) * gen_y(src, a) * mu)
                m = q.a % 2 + 2 * a
                t.check(level_ideal("X", L, m).member(zx), f"X-side, pair {q}, a'={a}")
                t.check(level_ideal("Y", L, m).member(zy), f"Y-side, pair {q}, a'={a}")

    def level_keys(tup, s):
        if p == 2:
            return [sum(2 ** l * (tup[l].a % 2) for l in range(s))]
        return _nu_values(p)

    def tuple_membership(t: Tally):
        for tup in enumerate_tuples(p, r):
            for eps in x_set(tup):
                if not any(eps):
                    continue
                b = b_tuple(eps, tup)
                for s in (i for i, e in enumerate(eps) if e):
                    for key in level_keys(tup, s):
                        t.check(level_ideal("X", s, key).member(b),
                                f"B^{eps}{tuple(map(str, tup))} outside level-{s} ideal ({key})")

    def shifted_membership(t: Tally):
        for tup in enumerate_tuples(p, r):
            for eps in x_set(tup):
                ranges = [t_range(q, e) for q, e in zip(tup, eps)]
                for tv in itertools.product(*ranges):
                    hits = []
                    for s, (q, e, ts) in enumerate(zip(tup, eps, tv)):
                        if e:
                            continue
                        if n_bound(q, 0) < ts <= n_bound(q, 1):
                            hits.append((s, "X"))
                        elif -n_tilde_bound(q, 1) <= ts < -n_tilde_bound(q, 0):
                            hits.append((s, "Y"))
                    if not hits:
                        continue
                    b = b_shifted(eps, tup, tv)
                    t.check(bool(b), f"B^{eps}({tuple(map(str, tup))};{tv}) is zero")
                    for s, side in hits:
                        for key in level_keys(tup, s):
                            t.check(level_ideal(side, s, key).member(b),
                                    f"B^{eps}({tuple(map(str, tup))};{tv}) outside level-{s} {side}-ideal ({key})")

    return _run("lemmas", ctx, [("h-element symmetry", h_symmetry), ("binomial sum support", binomial_support),
                                ("half-algebra ideal membership", half_algebra_membership), ("B^(1) ideal membership", b1_membership),
                                ("B^(0) shift ideal membership", b0_shift_membership), ("generators kill simples", generators_kill_simples),
                                ("Z-image ideal membership", z_image_membership), ("tuple B^(eps) membership", tuple_membership),
                                ("tuple shifted membership", shifted_membership)])


# -- property suite -----------------------------------------------------------

def _ffield_invariants(ctx: AlgebraCtx) -> List[Tuple[str, Invariant]]:
    p = ctx.p

    def periodicity(t: Tally):
        for k in range(p * p):
            M = 1
            while p ** M <= k:
                M += 1
            for n in range(2 * p * p):
                t.check(binom_int(n + p ** M, k, p) == binom_int(n, k, p), f"n={n}, k={k}, M={M}")

    def lucas_vs_exact(t: Tally):
        for n in range(-2 * p * p, 2 * p * p):
            for k in range(p * p):
                t.check(binom_int(n, k, p) == falling_binom(n, k) % p, f"binom({n},{k})")

    def kummer(t: Tally):
        r = 1
        while p ** r <= 27:
            P = p ** r
            for a in range(P):
                for b in range(P - a, P):
                    t.check(falling_binom(a + b, a) % p == 0, f"binom({a + b},{a}) with P={P}")
            r += 1

    def field_axioms(t: Tally):
        els = [Scalar(v, p) for v in range(p)]
        for x, y, z in itertools.product(els, repeat=3):
            t.check((x + y) + z == x + (y + z) and (x * y) * z == x * (y * z), f"associativity at {x},{y},{z}")
            t.check(x * (y + z) == x * y + x * z, f"distributivity at {x},{y},{z}")
        for x, y in itertools.product(els, repeat=2):
            t.check(x + y == y + x and x * y == y * x, f"commutativity at {x},{y}")
        for x in els:
            t.check(x + (-x) == 0, f"additive inverse of {x}")
            if x:
                t.check(x * inv(x) == 1, f"multiplicative inverse of {x}")

    return [("binomial periodicity", periodicity), ("binomial vs exact", lucas_vs_exact),
            ("carry vanishing", kummer), ("field axioms", field_axioms)]


def _algebra_invariants(ctx: AlgebraCtx, seed: int) -> List[Tuple[str, Invariant]]:
    p, r, P = ctx.p, ctx.r, ctx.P
    up = _u(p, r + 1)

    def antiauto(t: Tally):
        rng = _rng(seed, "t1 t2")
        for _ in range(30):
            x, y = _nonzero(ctx, rng), _nonzero(ctx, rng)
            t.equal(t1(x * y), t1(x) * t1(y), "T1(xy)")
            t.equal(t2(x * y), t2(y) * t2(x), "T2(xy)")

    def involutive(t: Tally):
        rng = _rng(seed, "involutive")
        for _ in range(50):
            x = _nonzero(ctx, rng)
            t.equal(t1(t1(x)), x, "T1 T1")
            t.equal(t2(t2(x)), x, "T2 T2")

    def agree_on_a(t: Tally):
        rng = _rng(seed, "agree on A")
        for _ in range(30):
            items = []
            for _ in range(3):
                m, a = int(rng.integers(0, P)), int(rng.integers(0, P))
                items.append(((m, a, m), 1))
            x = Element.from_monomials(ctx, items)
            t.check(is_in_Ar(x), "sample left A_r")
            t.equal(t1(x), t2(x), "T1 vs T2 on A_r")

    def fr_prime_mult(t: Tally):
        rng = _rng(seed, "fr prime")
        for which in ("upper", "lower"):
            for _ in range(15):
                x, y = _random_restricted(ctx, rng, which), _random_restricted(ctx, rng, which)
                t.equal(fr_prime(x * y), fr_prime(x) * fr_prime(y), f"Fr'({which} product)")

    def fr_after_fr_prime(t: Tally):
        for m in basis(ctx):
            (mm, _, _, _), = m.monomials()
            if mm:
                continue
            t.equal(fr(fr_prime(m)), embed(m, r + 1), "Fr Fr'")

    def grading(t: Tally):
        rng = _rng(seed, "grading")
        for _ in range(40):
            x, y = _random_monomial(ctx, rng), _random_monomial(ctx, rng)
            (d1,), (d2,) = degree_split(x), degree_split(y)
            degs = set(degree_split(x * y))
            t.check(degs <= {d1 + d2}, lambda: f"{format_element(x)} * {format_element(y)} has degrees {sorted(degs)}")

    def embedding(t: Tally):
        rng = _rng(seed, "embedding")
        for _ in range(20):
            x, y = _nonzero(ctx, rng), _nonzero(ctx, rng)
            t.equal(embed(x * y, r + 1), embed(x, r + 1) * embed(y, r + 1), "embed(xy)")
        t.equal(embed(identity(ctx), r + 1), identity(up), "embed(1)")

    def mu_shift(t: Tally):
        for a in range(P):
            mu = gen_mu(ctx, a)
            for n in range(P):
                t.equal(mu * gen_x(ctx, n), gen_x(ctx, n) * gen_mu(ctx, a - 2 * n), f"mu_{a} X^({n})")
                t.equal(mu * gen_y(ctx, n), gen_y(ctx, n) * gen_mu(ctx, a + 2 * n), f"mu_{a} Y^({n})")

    def mu_factor(t: Tally):
        big = ctx if r >= 2 else _u(p, 2)
        R = big.r
        for i in range(1, R):
            for a in range(-big.P, big.P):
                a1 = a % p ** i
                a2 = (a - a1) // p ** i
                lhs = embed(gen_mu(_u(p, i), a1), R) * fr_prime_power(gen_mu(_u(p, R - i), a2), i)
                t.equal(lhs, gen_mu(big, a), f"mu_{a} at split level {i}")

    def comm_prop(t: Tally):
        for m in range(P):
            for a in range(P):
                e = embed(monomial(ctx, m, a, m), r + 1)
                for n in range(1, p):
                    for g in (gen_x(up, P * n), gen_y(up, P * n)):
                        t.equal(g * e, e * g, f"commutator with Y({m}).mu({a}).X({m}), n={n}")

    def multiplication_iso(t: Tally):
        if r >= 2:
            big, small = ctx, _u(p, r - 1)
        elif p ** 6 <= 1000:
            big, small = _u(p, 2), _u(p, 1)
        else:
            raise Skip("rank test too large for this p")
        U1 = _u(p, 1)
        rows = []
        lifted = [lift(u, big.r) for u in basis(U1)]
        for v in basis(small):
            fv = fr_prime(v)
            for u in lifted:
                rows.append((u * fv).to_vector())
        rank = len(rref(np.array(rows, dtype=np.int64), p)[1])
        t.dims(rank, big.dim, "rank of U_1 x Fr'(U_(r-1))")

    def kummer_debug(t: Tally):
        from . import algebra
        rng = _rng(seed, "kummer debug")
        old = algebra.DEBUG_KUMMER
        algebra.DEBUG_KUMMER = True
        try:
            for _ in range(30):
                x, y = _nonzero(ctx, rng, 4), _nonzero(ctx, rng, 4)
                t.check(isinstance(x * y, Element), "product failed")
        finally:
            algebra.DEBUG_KUMMER = old

    return [("T1 automorphism, T2 antiautomorphism", antiauto), ("T1, T2 involutive", involutive),
            ("T1 = T2 on A_r", agree_on_a), ("Fr' multiplicative on half algebras", fr_prime_mult),
            ("Fr after Fr'", fr_after_fr_prime), ("grading", grading), ("embedding multiplicative", embedding),
            ("mu shift rules", mu_shift), ("mu factorisation", mu_factor),
            ("high powers commute with A_r", comm_prop), ("U_1 x Fr' isomorphism", multiplication_iso),
            ("dropped terms vanish", kummer_debug)]


def _belement_invariants(ctx: AlgebraCtx, seed: int) -> List[Tuple[str, Invariant]]:
    p, r = ctx.p, ctx.r
    U1 = _u(p, 1)
    pairs = enumerate_p_set(p)
    X1, Y1 = gen_x(U1, 1), gen_y(U1, 1)

    def table_identities(t: Tally):
        for q in pairs:
            n0, n1 = n_bound(q, 0), n_bound(q, 1)
            m0, m1 = n_tilde_bound(q, 0), n_tilde_bound(q, 1)
            t.check(0 <= n0 <= n1 <= p - 1, f"{q}: n0={n0}, n1={n1}")
            t.check(n0 + m1 == n1 + m0 == p - 1, f"{q}: n0+n~1={n0 + m1}, n1+n~0={n1 + m0}")
            t.check((n0 == n1) == satisfies_e(q), f"{q}: n0 = n1 iff (E)")
            t.check((m0 == m1) == satisfies_e(q), f"{q}: n~0 = n~1 iff (E)")
            for e in (0, 1):
                t.check(n_tilde_bound(q, e) == n_bound(negate_pair(q), e), f"{q}: n~({e}) vs n({e}) of the negation")
            if p > 2:
                expect = {"A": "D", "C": "B", "D": "A", "B": "C" if q.a else "B"}[classify(q)]
                t.check(classify(negate_pair(q)) == expect, f"{q}: class of the negation")

    def weight_identity(t: Tally):
        for q in pairs:
            b, n0, m0 = iota(q), n_bound(q, 0), n_tilde_bound(q, 0)
            rhs = q.twoJ - 1 if classify(q) in "AD" else p - q.twoJ - 1
            t.check(b + 2 * n0 == 2 * m0 - b == rhs, f"{q}: b+2n0={b + 2 * n0}, 2n~0-b={2 * m0 - b}, expected {rhs}")

    def shift_bound(t: Tally):
        for q in pairs:
            if classify(q) in "AC":
                t.check(n_bound(q, 0) >= s_val(q), f"{q}: n0 < s")

    def b1_weight(t: Tally):
        for q in pairs:
            for e in (0, 1):
                t.check(weight_of(b1(e, q)) == q.a % p, f"B^({e}){q} weight {weight_of(b1(e, q))}")

    def b1_idempotents(t: Tally):
        es = [b1(0, q) for q in pairs]
        s = zero(U1)
        for q, e in zip(pairs, es):
            t.equal(e * e, e, f"B^(0){q} squared")
            s = s + e
        for (qa, ea), (qb, eb) in itertools.permutations(zip(pairs, es), 2):
            t.check(not ea * eb, f"B^(0){qa} B^(0){qb} != 0")
        t.equal(s, identity(U1), "sum of B^(0)")

    def b1_support(t: Tally):
        for q in pairs:
            for e in (0, 1):
                c, ct = b_coeffs(e, q)
                n, nt = n_bound(q, e), n_tilde_bound(q, e)
                t.check(c.get(n, 0) != 0 and min(c) == n, f"B^({e}){q}: YX support {sorted(c)}, n={n}")
                t.check(ct.get(nt, 0) != 0 and min(ct) == nt, f"B^({e}){q}: XY support {sorted(ct)}, n~={nt}")

    def b1_yx(t: Tally):
        YX, XY = Y1 * X1, X1 * Y1
        for q in pairs:
            B0, B1 = b1(0, q), b1(1, q)
            fj = four_j_squared(q)
            t.equal(YX * B0, _scalar(B0, gamma(q, 0)) + _scalar(B1, fj), f"YX B^(0){q}")
            t.equal(XY * B0, _scalar(B0, gamma_tilde(q, 0)) + _scalar(B1, fj), f"XY B^(0){q}")
            t.equal(YX * B1, _scalar(B1, gamma(q, 0)), f"YX B^(1){q}")
            t.equal(XY * B1, _scalar(B1, gamma_tilde(q, 0)), f"XY B^(1){q}")

    def b1_equal_iff_e(t: Tally):
        for q in pairs:
            t.check((b1(0, q) == b1(1, q)) == satisfies_e(q), f"{q}: B^(0) = B^(1) iff (E)")

    def b1_absorb(t: Tally):
        for q in pairs:
            B0 = b1(0, q)
            for e in (0, 1):
                B = b1(e, q)
                t.equal(B * B0, B, f"B^({e}){q} B^(0)")
                t.equal(B0 * B, B, f"B^(0){q} B^({e})")

    def b1_distinct(t: Tally):
        for e in (0, 1):
            for qa, qb in itertools.combinations(pairs, 2):
                t.check(b1(e, qa) != b1(e, qb), f"B^({e}){qa} = B^({e}){qb}")

    def b1_shift(t: Tally):
        for q in pairs:
            q2 = _shift_pair(q)
            for e in (0, 1):
                t.equal(X1 * b1(e, q), b1(e, q2) * X1, f"X B^({e}){q}")
                t.equal(Y1 * b1(e, q2), b1(e, q) * Y1, f"Y B^({e}){q2}")

    def formulas_b1(t: Tally):
        for q in pairs:
            B = {0: b1(0, q), 1: b1(1, q)}
            fj = int(four_j_squared(q))
            g = [int(gamma(q, i)) for i in range(p)]
            gt = [int(gamma_tilde(q, i)) for i in range(p)]
            for tilde in (False, True):
                gam, bnd = (gt, n_tilde_bound(q, 0)) if tilde else (g, n_bound(q, 0))
                bet = beta_tilde if tilde else beta
                for s in range(p):
                    op = (X1 ** s) * (Y1 ** s) if tilde else (Y1 ** s) * (X1 ** s)
                    label = f"{'X^%dY^%d' % (s, s) if tilde else 'Y^%dX^%d' % (s, s)} B^(%d){q}"
                    if s <= bnd:
                        coef = sum(_prod_except(gam[:s], l, p) for l in range(s)) % p
                        rhs = _scalar(B[0], bet(q, s)) + _scalar(B[1], fj * coef)
                    else:
                        rhs = _scalar(B[1], fj * _prod_except(gam[:s], bnd, p))
                    t.equal(op * B[0], rhs, label % 0)
                    t.equal(op * B[1], _scalar(B[1], bet(q, s)), label % 1)

    def z_homomorphic(t: Tally):
        rng = _rng(seed, "z hom")
        for q in pairs:
            for e in (0, 1):
                for _ in range(3):
                    z1, z2 = _nonzero(U1, rng), _nonzero(U1, rng)
                    a, b = z_op(e, q, z1) * z_op(0, q, z2), z_op(0, q, z1) * z_op(e, q, z2)
                    c = z_op(e, q, z1 * z2)
                    t.equal(a, c, f"Z^({e})(z1) Z^(0)(z2) for {q}")
                    t.equal(b, c, f"Z^(0)(z1) Z^({e})(z2) for {q}")

    def z_high_powers(t: Tally):
        rng = _rng(seed, "z high")
        U2 = _u(p, 2)
        Xp, Yp = gen_x(U2, p), gen_y(U2, p)
        for q in pairs:
            for e in (0, 1):
                z = _nonzero(U1, rng)
                for u in (Xp, Yp, Xp * Yp, Yp * Xp):
                    t.equal(u * z_op(e, q, z), z_op(e, q, restrict(fr(u), 1) * z), f"u Z^({e})(z; {q})")

    def z_classify(t: Tally):
        rng = _rng(seed, "z classify")
        for q in pairs:
            z = _nonzero(U1, rng)
            t.check((z_op(0, q, z) == z_op(1, q, z)) == satisfies_e(q), f"{q}: Z^(0) = Z^(1) iff (E)")
        for e in (0, 1):
            z = _nonzero(U1, rng)
            imgs = [z_op(e, q, z) for q in pairs]
            for (qa, ia), (qb, ib) in itertools.combinations(zip(pairs, imgs), 2):
                t.check(ia != ib, f"Z^({e})(z; {qa}) = Z^({e})(z; {qb})")

    def z_injective(t: Tally):
        mons = list(basis(U1))
        for q in pairs:
            for e in (0, 1):
                imgs = np.array([z_op(e, q, m).to_vector() for m in mons], dtype=np.int64)
                rank = len(rref(imgs, p)[1])
                t.check(rank == len(mons), f"Z^({e})(-; {q}) has rank {rank}")

    # tuple-level checks (ctx-sized) ------------------------------------------------
    tuples = enumerate_tuples(p, r)
    all_eps = list(itertools.product((0, 1), repeat=r))

    def bz_weight(t: Tally):
        for tup in tuples:
            w = tuple_weight(tup) % ctx.P
            for eps in all_eps:
                b = b_tuple(eps, tup)
                t.check(weight_of(b) == w, f"B^{eps}{tuple(map(str, tup))} weight {weight_of(b)} vs {w}")

    def bz_action(t: Tally):
        for tup in tuples:
            for i, q in enumerate(tup):
                Xi, Yi = gen_x(ctx, p ** i), gen_y(ctx, p ** i)
                fj = int(four_j_squared(q))
                g = [int(gamma(q, l)) for l in range(p)]
                gt = [int(gamma_tilde(q, l)) for l in range(p)]
                for eps in all_eps:
                    B = b_tuple(eps, tup)
                    Bf = b_tuple(flip(eps, i), tup)
                    for tilde in (False, True):
                        gam = gt if tilde else g
                        bnd = n_tilde_bound(q, 0) if tilde else n_bound(q, 0)
                        bet = beta_tilde if tilde else beta
                        for s in range(p):
                            op = Xi ** s * Yi ** s if tilde else Yi ** s * Xi ** s
                            if eps[i]:
                                rhs = _scalar(B, bet(q, s))
                            elif s <= bnd:
                                coef = sum(_prod_except(gam[:s], l, p) for l in range(s)) % p
                                rhs = _scalar(B, bet(q, s)) + _scalar(Bf, fj * coef)
                            else:
                                rhs = _scalar(Bf, fj * _prod_except(gam[:s], bnd, p))
                            t.equal(op * B, rhs, f"level {i}, s={s}, {'XY' if tilde else 'YX'}, eps={eps}, "
                                                 f"{tuple(map(str, tup))}")

    def bz_sign_classes(t: Tally):
        for tup in tuples:
            imgs = {eps: b_tuple(eps, tup) for eps in all_eps}
            for ea, eb in itertools.combinations(all_eps, 2):
                same = all(x == y for x, y, q in zip(ea, eb, tup) if not satisfies_e(q))
                t.check((imgs[ea] == imgs[eb]) == same, f"{tuple(map(str, tup))}: eps {ea} vs {eb}")

    def bz_distinct(t: Tally):
        for eps in all_eps:
            seen: Dict[Element, tuple] = {}
            for tup in tuples:
                b = b_tuple(eps, tup)
                t.check(b not in seen, lambda: f"B^{eps} equal for {tuple(map(str, tup))} and "
                                               f"{tuple(map(str, seen[b]))}")
                seen.setdefault(b, tup)

    # Z over several levels: U_1 -> U_{L+1}
    L = r - 1 if r >= 2 else 1
    deep = _u(p, L + 1)
    level_tuples = enumerate_tuples(p, L)

    def bz_high_powers(t: Tally):
        rng = _rng(seed, "bz high")
        Xh, Yh = gen_x(deep, p ** L), gen_y(deep, p ** L)
        for tup in level_tuples:
            z = _nonzero(U1, rng)
            for eps in itertools.product((0, 1), repeat=L):
                base = z_tuple(eps, tup, z)
                for u in (Xh, Yh):
                    fu = u
                    for _ in range(L):
                        fu = fr(fu)
                    t.equal(u * base, z_tuple(eps, tup, restrict(fu, 1) * z), f"u Z^{eps}(z; {tuple(map(str, tup))})")

    def bz_mu(t: Tally):
        rng = _rng(seed, "bz mu")
        for tup in level_tuples:
            z = _nonzero(U1, rng)
            w = tuple_weight(tup)
            for eps in itertools.product((0, 1), repeat=L):
                base = z_tuple(eps, tup, z)
                for a in range(p):
                    t.equal(z_tuple(eps, tup, gen_mu(U1, a) * z), gen_mu(deep, w + p ** L * a) * base,
                            f"Z^{eps}(mu_{a} z; {tuple(map(str, tup))})")

    def bz_homomorphic(t: Tally):
        rng = _rng(seed, "bz hom")
        zeros = (0,) * L
        for tup in level_tuples:
            z1, z2 = _nonzero(U1, rng), _nonzero(U1, rng)
            for eps in itertools.product((0, 1), repeat=L):
                c = z_tuple(eps, tup, z1 * z2)
                t.equal(z_tuple(eps, tup, z1) * z_tuple(zeros, tup, z2), c, f"Z^{eps} product, {tuple(map(str, tup))}")
                t.equal(z_tuple(zeros, tup, z1) * z_tuple(eps, tup, z2), c, f"Z^0 product, {tuple(map(str, tup))}")

    def formulas_b2(t: Tally):
        P = ctx.P
        Xs = [gen_x(ctx, p ** i) for i in range(r)]
        Ys = [gen_y(ctx, p ** i) for i in range(r)]
        for tup in tuples:
            mu = gen_mu(ctx, tuple_weight(tup) % P)
            for eps in all_eps:
                coeffs = [b_coeffs(e, q) for e, q in zip(eps, tup)]
                for tilde in (False, True):
                    lows = [(n_tilde_bound if tilde else n_bound)(q, e) for q, e in zip(tup, eps)]
                    acc = zero(ctx)
                    for ms in itertools.product(*[range(lo, p) for lo in lows]):
                        c = 1
                        for (cc, cct), m in zip(coeffs, ms):
                            c = c * (cct if tilde else cc).get(m, 0) % p
                        if not c:
                            continue
                        xs = identity(ctx)
                        ys = identity(ctx)
                        for i, m in enumerate(ms):
                            xs = xs * Xs[i] ** m
                            ys = ys * Ys[i] ** m
                        acc = acc + _scalar(xs * ys if tilde else ys * xs, c)
                    t.equal(mu * acc, b_tuple(eps, tup), f"{'XY' if tilde else 'YX'} expansion of "
                                                         f"B^{eps}{tuple(map(str, tup))}")

    def b2_negation(t: Tally):
        for tup in tuples:
            neg = tuple(negate_pair(q) for q in tup)
            for eps in all_eps:
                b = b_tuple(eps, tup)
                bn = b_tuple(eps, neg)
                t.equal(t1(b), bn, f"T1 B^{eps}{tuple(map(str, tup))}")
                t.equal(t2(b), bn, f"T2 B^{eps}{tuple(map(str, tup))}")
                t.check(weight_of(bn) == (-tuple_weight(tup)) % ctx.P, f"weight of negated {tuple(map(str, tup))}")

    def theta_count(t: Tally):
        from .belements import theta_set
        total = sum(len(theta_set(tup, (0,) * r)) for tup in tuples)
        t.dims(total, ctx.dim, "sum of |Theta|")

    return [("table identities", table_identities), ("weight identity", weight_identity), ("shift below n0", shift_bound),
            ("B weight", b1_weight), ("B idempotents in U_1", b1_idempotents), ("B coefficient support", b1_support),
            ("YX and XY on B", b1_yx), ("B^(0) = B^(1) iff (E)", b1_equal_iff_e), ("B^(0) absorbs", b1_absorb),
            ("B distinct", b1_distinct), ("X, Y shift rules", b1_shift), ("product formulas in U_1", formulas_b1),
            ("Z multiplicative", z_homomorphic), ("Z and high powers", z_high_powers),
            ("Z classification", z_classify), ("Z injective", z_injective),
            ("tuple weight", bz_weight), ("tuple divided-power action", bz_action),
            ("tuple sign classes", bz_sign_classes), ("tuple distinct", bz_distinct),
            ("multi-level Z and high powers", bz_high_powers), ("multi-level Z and mu", bz_mu),
            ("multi-level Z multiplicative", bz_homomorphic), ("tuple expansions", formulas_b2),
            ("tuple negation", b2_negation), ("index set count", theta_count)]


def cross_identification(ctx: AlgebraCtx) -> Dict[tuple, int]:
    """Map each tuple to the unique highest weight whose simple module is not
    killed by B^(0)(tuple)."""
    out = {}
    zeros = (0,) * ctx.r
    for tup in enumerate_tuples(ctx.p, ctx.r):
        b = b_tuple(zeros, tup)
        hits = [m.lam for m in simples(ctx) if np.any(act(b, m))]
        if len(hits) != 1:
            raise AssertionError(f"B^0{tuple(map(str, tup))} acts on L({hits})")
        out[tup] = hits[0]
    return out


def _simples_invariants(ctx: AlgebraCtx, seed: int, allow_large: bool) -> List[Tuple[str, Invariant]]:
    p, r = ctx.p, ctx.r

    def homomorphism(t: Tally):
        rng = _rng(seed, "act hom")
        n = 100 if ctx.dim <= 1000 else 20
        for module in simples(ctx):
            for _ in range(n):
                x, y = _nonzero(ctx, rng), _nonzero(ctx, rng)
                ok = np.array_equal(act(x * y, module), (act(x, module) @ act(y, module)) % p)
                t.check(ok, lambda: f"L({module.lam}): act({format_element(x)} * {format_element(y)})")

    def unit(t: Tally):
        for module in simples(ctx):
            t.check(np.array_equal(act(identity(ctx), module), np.eye(module.dim, dtype=np.int64)),
                    f"1 on L({module.lam})")

    def oracle_props(t: Tally):
        rad = oracle_radical(ctx, allow_large)
        mults = default_multipliers(ctx)
        t.check(is_closed(rad, mults, mults), "oracle radical not closed")
        t.check(nilpotency_index(rad) is not None, "oracle radical not nilpotent")
        t.dims(ctx.dim - rad.dim, semisimple_dim(ctx), "dim U/rad")

    def crossid(t: Tally):
        check_budget(ctx, allow_large)
        ident = cross_identification(ctx)
        t.check(set(ident.values()) == set(range(ctx.P)), f"highest weights hit: {sorted(set(ident.values()))}")
        ones = (1,) * r
        mus = [gen_mu(ctx, a) for a in range(ctx.P)]
        for tup, lam in ident.items():
            module = build_simple(ctx, lam)
            left = ideal_closure(ctx, [b_tuple(ones, tup)], left=default_multipliers(ctx), right=[])
            t.dims(left.dim, module.dim, f"U B^1{tuple(map(str, tup))}")
            got = []
            for a, mu in enumerate(mus):
                img = _matmul(left.rows, mult_matrix(mu, "left"), p)
                got += [a] * len(rref(img, p)[1])
            expect = sorted(int(w) % ctx.P for w in module.weights)
            t.check(sorted(got) == expect, f"weights of U B^1{tuple(map(str, tup))}: {sorted(got)} vs {expect}")

    return [("action is a homomorphism", homomorphism), ("action of unity", unit),
            ("oracle radical ideal, nilpotent, codimension", oracle_props),
            ("idempotents match simples", crossid)]


def _linalg_invariants(ctx: AlgebraCtx, seed: int) -> List[Tuple[str, Invariant]]:
    p = ctx.p

    def closed(t: Tally):
        rng = _rng(seed, "closure closed")
        mults = default_multipliers(ctx)
        for _ in range(3):
            I = ideal_closure(ctx, [_nonzero(ctx, rng, 2)])
            t.check(is_closed(I, mults, mults), "closure not closed")

    def monotone(t: Tally):
        rng = _rng(seed, "closure monotone")
        for _ in range(3):
            g1, g2 = _nonzero(ctx, rng, 2), _nonzero(ctx, rng, 2)
            I = ideal_closure(ctx, [g1])
            J = ideal_closure(ctx, [g1, g2])
            t.check(J.contains(I), "closure not monotone")
            t.check(ideal_closure(ctx, I.elements()) == I, "closure not idempotent")

    def products(t: Tally):
        rng = _rng(seed, "ideal products")
        rad = oracle_radical(ctx) if ctx.dim <= 1000 else None
        for _ in range(2):
            g1, g2 = _nonzero(ctx, rng, 2), _nonzero(ctx, rng, 2)
            I, J = ideal_closure(ctx, [g1]), ideal_closure(ctx, [g2])
            IJ = ideal_power_step(I, [g2])
            t.check(I.contains(IJ) and J.contains(IJ), f"I J not inside I and J ({IJ.dim}, {I.dim}, {J.dim})")
        if rad is not None and ctx.dim <= 125:
            sq = ideal_power_step(rad, ideal_generators(rad))
            t.check(sq == _subspace_product_ref(rad, rad), "ideal power step disagrees with the direct product")

    def canonical(t: Tally):
        rng = _rng(seed, "echelon")
        for _ in range(5):
            m = rng.integers(0, p, size=(12, ctx.dim))
            a = Subspace.from_vectors(ctx, m)
            b = Subspace.from_vectors(ctx, m[rng.permutation(12)])
            t.check(a == b and np.array_equal(a.rows, b.rows), "echelon form depends on row order")

    def short_multipliers(t: Tally):
        if ctx.P > 9:
            raise Skip("full multiplier cross-check only for p^r <= 9")
        rng = _rng(seed, "short multipliers")
        for _ in range(3):
            g = _nonzero(ctx, rng, 2)
            t.check(ideal_closure(ctx, [g]) == ideal_closure(ctx, [g], full_multipliers(ctx)),
                    lambda: f"closures of {format_element(g)} differ")

    return [("closure is closed", closed), ("closure monotone and idempotent", monotone),
            ("ideal products", products), ("echelon form canonical", canonical),
            ("short multiplier set", short_multipliers)]


def _subspace_product_ref(s: Subspace, t: Subspace) -> Subspace:
    from .linalg import subspace_product
    return subspace_product(s, t)


def verify_prop_suite(ctx: AlgebraCtx, seed: int = 0, allow_large: bool = False) -> CheckReport:
    groups = [("ffield", _ffield_invariants(ctx)), ("algebra", _algebra_invariants(ctx, seed)),
              ("belements", _belement_invariants(ctx, seed)), ("simples", _simples_invariants(ctx, seed, allow_large)),
              ("linalg", _linalg_invariants(ctx, seed))]
    invariants = [(f"{g}: {n}", fn) for g, items in groups for n, fn in items]
    return _run("props", ctx, invariants, {"seed": seed})


# -- driver -----------------------------------------------------------------

def run_suites(ctx: AlgebraCtx, suites: Sequence[str] = SUITES, nu: Optional[Sequence[int]] = None,
               seed: int = 0, allow_large: bool = False) -> List[CheckReport]:
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    jobs = {
        "algebra": lambda: verify_algebra(ctx, seed),
        "idempotents": lambda: verify_idempotents(ctx, allow_large),
        "radical": lambda: verify_radical_basis(ctx, allow_large),
        "socle": lambda: verify_socle(ctx, allow_large),
        "main": lambda: verify_main_theorem(ctx, nu, allow_large),
        "lemmas": lambda: verify_lemma_suite(ctx),
        "props": lambda: verify_prop_suite(ctx, seed, allow_large),
    }
    return [jobs[name]() for name in SUITES if name in suites]


def fault_sensitivity(ctx: AlgebraCtx, x: int = 1, j: int = 1, seed: int = 0,
                      suites: Sequence[str] = SUITES) -> List[CheckReport]:
    """Run the suites with one structure constant of U_r perturbed."""
    with inject_fault(ctx.p, ctx.r, x, j):
        return run_suites(ctx, suites, seed=seed)
