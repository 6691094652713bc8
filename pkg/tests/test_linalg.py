import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperalg.algebra import AlgebraCtx, Element, basis, gen_mu, gen_x, gen_y, identity
from hyperalg.belements import h_elem
from hyperalg.linalg import (
    Subspace,
    add,
    default_multipliers,
    full_multipliers,
    ideal_closure,
    intersect,
    is_closed,
    left_kernel,
    left_socle,
    nilpotency_index,
    rref,
    span,
    subspace_product,
)
from hyperalg.simples import oracle_radical


def test_rref_small():
    rows, piv = rref(np.array([[2, 1, 0], [1, 2, 0], [0, 0, 1]]), 3)
    assert list(piv) == [0, 2]
    assert rows.tolist() == [[1, 2, 0], [0, 0, 1]]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5]))
def test_rref_row_order_invariant(seed, p):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(7, 9))
    a, pa = rref(m, p)
    b, pb = rref(m[rng.permutation(7)], p)
    assert np.array_equal(a, b) and np.array_equal(pa, pb)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5]))
def test_left_kernel(seed, p):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(8, 5))
    k = left_kernel(m, p)
    assert not np.any(k @ m % p)
    assert k.shape[0] + len(rref(m, p)[1]) == 8


def test_span_extremes():
    ctx = AlgebraCtx(2, 1)
    assert span(ctx, []).dim == 0
    assert span(ctx, basis(ctx)).dim == 8


def test_closure_extremes():
    ctx = AlgebraCtx(3, 1)
    assert ideal_closure(ctx, [identity(ctx)]).dim == 27
    assert ideal_closure(ctx, []).dim == 0


def test_closure_of_main_generators_p3():
    ctx = AlgebraCtx(3, 1)
    h = h_elem(1, 0, ctx)
    x2 = gen_x(ctx, 1) * gen_x(ctx, 1)
    y2 = gen_y(ctx, 1) * gen_y(ctx, 1)
    assert x2 == gen_x(ctx, 2).scale(2)
    assert ideal_closure(ctx, [h * x2, y2 * h]).dim == 13


def test_subspace_ops():
    ctx = AlgebraCtx(2, 1)
    a = span(ctx, [gen_mu(ctx, 0), gen_x(ctx, 1)])
    b = span(ctx, [gen_mu(ctx, 0), gen_y(ctx, 1)])
    assert intersect(a, b).dim == 1
    assert add(a, b).dim == 3
    assert a.member(gen_mu(ctx, 0))
    assert not a.member(gen_mu(ctx, 1))
    assert Subspace.from_vectors(ctx, a.rows) == a


@pytest.mark.parametrize("ctx", [AlgebraCtx(2, 1), AlgebraCtx(3, 1), AlgebraCtx(2, 2)])
def test_closure_properties(ctx):
    rng = np.random.default_rng(7)
    mults = default_multipliers(ctx)
    for _ in range(3):
        g1 = Element.from_vector(ctx, (rng.random(ctx.dim) < 0.05) * rng.integers(1, ctx.p, ctx.dim))
        g2 = Element.from_vector(ctx, (rng.random(ctx.dim) < 0.05) * rng.integers(1, ctx.p, ctx.dim))
        I = ideal_closure(ctx, [g1])
        J = ideal_closure(ctx, [g2])
        assert is_closed(I, mults, mults)
        assert ideal_closure(ctx, [g1, g2]).contains(I)
        assert ideal_closure(ctx, I.elements()) == I
        assert ideal_closure(ctx, [g1], full_multipliers(ctx)) == I
        IJ = subspace_product(I, J)
        assert I.contains(IJ) and J.contains(IJ)


def test_nilpotency():
    ctx = AlgebraCtx(2, 1)
    s = span(ctx, [gen_mu(ctx, 0) * gen_x(ctx, 1)])
    assert subspace_product(s, s).dim == 0
    assert nilpotency_index(Subspace.zero(ctx)) == 1
    assert nilpotency_index(oracle_radical(ctx)) == 3
    assert nilpotency_index(span(ctx, [identity(ctx)]).__class__.from_vectors(ctx, np.eye(8, dtype=np.int64))) is None


def test_socle_of_zero_radical_is_everything():
    ctx = AlgebraCtx(2, 1)
    assert left_socle(ctx, Subspace.zero(ctx)).dim == 8


def test_socle_p2():
    ctx = AlgebraCtx(2, 1)
    soc = left_socle(ctx, oracle_radical(ctx))
    X, Y = gen_x(ctx, 1), gen_y(ctx, 1)
    mu0, mu1 = gen_mu(ctx, 0), gen_mu(ctx, 1)
    assert soc == span(ctx, [mu0 * X * Y, mu1 * Y * X, mu1 * X, mu1 * X * Y, mu1 * Y])
