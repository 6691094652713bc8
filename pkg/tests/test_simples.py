import numpy as np
import pytest

from hyperalg.algebra import AlgebraCtx, gen_mu, gen_x, gen_y, identity, random_element
from hyperalg.linalg import add, intersect, span
from hyperalg.simples import (
    BudgetExceeded,
    SimpleModule,
    act,
    build_simple,
    claimed_radical_basis,
    index_counts,
    oracle_radical,
    semisimple_dim,
    v_set,
)

# dimensions from the common annihilator of the Steinberg tensor products,
# independently matched by the claimed basis span
ORACLE_DIMS = {(2, 1): 3, (3, 1): 13, (5, 1): 70, (2, 2): 39, (3, 2): 533, (2, 3): 387}
SEMISIMPLE = {(2, 1): 5, (3, 1): 14, (5, 1): 55, (2, 2): 25, (3, 2): 196, (2, 3): 125}


def test_trivial_and_natural_modules():
    ctx = AlgebraCtx(2, 1)
    l0 = build_simple(ctx, 0)
    assert l0.dim == 1
    assert not np.any(act(gen_x(ctx, 1), l0)) and not np.any(act(gen_y(ctx, 1), l0))
    c3 = AlgebraCtx(3, 1)
    l1 = build_simple(c3, 1)
    x, y = act(gen_x(c3, 1), l1), act(gen_y(c3, 1), l1)
    assert x[0, 1] == 1 and y[1, 0] == 1 and l1.dim == 2


def test_frobenius_twist():
    ctx = AlgebraCtx(3, 2)
    m = build_simple(ctx, 3)
    assert m.dim == 2
    assert not np.any(act(gen_x(ctx, 1), m))
    assert np.linalg.matrix_rank(act(gen_x(ctx, 3), m)) == 1


@pytest.mark.parametrize("ctx", [AlgebraCtx(2, 1), AlgebraCtx(3, 1), AlgebraCtx(2, 2), AlgebraCtx(3, 2)])
def test_action_homomorphism(ctx):
    rng = np.random.default_rng(3)
    for lam in range(ctx.P):
        m = build_simple(ctx, lam)
        assert np.array_equal(act(identity(ctx), m), np.eye(m.dim, dtype=np.int64))
        hw = act(gen_mu(ctx, lam), m)
        assert hw[0, 0] == 1
        for _ in range(20):
            x, y = random_element(ctx, rng, 3), random_element(ctx, rng, 3)
            assert np.array_equal(act(x * y, m), act(x, m) @ act(y, m) % ctx.p)


@pytest.mark.parametrize("pr", list(ORACLE_DIMS))
def test_oracle_dimension(pr):
    ctx = AlgebraCtx(*pr)
    rad = oracle_radical(ctx)
    assert rad.dim == ORACLE_DIMS[pr]
    assert semisimple_dim(ctx) == SEMISIMPLE[pr]
    assert rad.dim + semisimple_dim(ctx) == ctx.dim


@pytest.mark.parametrize("pr", list(ORACLE_DIMS))
def test_claimed_basis_matches_oracle(pr):
    ctx = AlgebraCtx(*pr)
    rad = oracle_radical(ctx)
    claimed = claimed_radical_basis(ctx)
    assert len(claimed) == rad.dim
    s = span(ctx, claimed)
    assert s.dim == len(claimed) and s == rad
    sv = span(ctx, v_set(ctx))
    assert intersect(sv, rad).dim == 0 and add(sv, rad).dim == ctx.dim


def test_index_counts():
    assert index_counts(AlgebraCtx(2, 1)) == (3, 5)
    assert index_counts(AlgebraCtx(3, 1)) == (13, 14)


def test_budget():
    with pytest.raises(BudgetExceeded):
        oracle_radical(AlgebraCtx(5, 2))
    with pytest.raises(ValueError):
        SimpleModule(AlgebraCtx(2, 1), 2)
