import itertools
from collections import Counter

import pytest

from hyperalg.algebra import AlgebraCtx, embed, format_element, gen_mu, gen_x, gen_y, identity, monomial, t1, weight_of
from hyperalg.belements import (
    ConsistencyViolation,
    Pair,
    b1,
    b_coeffs,
    b_shifted,
    b_tuple,
    beta,
    classify,
    enumerate_p_set,
    enumerate_tuples,
    gamma,
    h_elem,
    in_v_box,
    iota,
    n_bound,
    n_tilde_bound,
    negate_pair,
    psi_coeffs,
    s_val,
    satisfies_e,
    theta_set,
    tuple_weight,
    u_pow,
    x_set,
    z_op,
)


def test_p_sets():
    assert [str(q) for q in enumerate_p_set(2)] == ["(0,1/2)", "(1,0)", "(1,1)"]
    assert len(enumerate_p_set(3)) == 6
    assert len(enumerate_p_set(5)) == 15
    with pytest.raises(ValueError):
        Pair(3, 0, 1)
    with pytest.raises(ValueError):
        Pair(2, 0, 0)


@pytest.mark.parametrize("pair,cls,e", [
    (Pair(3, 0, 2), "B", False), (Pair(3, 2, 2), "A", False), (Pair(2, 1, 0), "C", True),
    (Pair(2, 0, 1), "B", False), (Pair(2, 1, 2), "D", True), (Pair(3, 1, 0), "C", True),
])
def test_classify(pair, cls, e):
    assert classify(pair) == cls
    assert satisfies_e(pair) == e


@pytest.mark.parametrize("pair,row", [
    (Pair(3, 2, 2), (1, 2, 0, 1)), (Pair(3, 0, 2), (0, 2, 0, 2)), (Pair(2, 0, 1), (0, 1, 0, 1)),
])
def test_bounds(pair, row):
    assert (n_bound(pair, 0), n_bound(pair, 1), n_tilde_bound(pair, 0), n_tilde_bound(pair, 1)) == row


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_table_identities(p):
    for q in enumerate_p_set(p):
        n0, n1 = n_bound(q, 0), n_bound(q, 1)
        m0, m1 = n_tilde_bound(q, 0), n_tilde_bound(q, 1)
        assert 0 <= n0 <= n1 <= p - 1
        assert n0 + m1 == n1 + m0 == p - 1
        assert (n0 == n1) == satisfies_e(q)
        for e in (0, 1):
            assert n_tilde_bound(q, e) == n_bound(negate_pair(q), e)
        b = iota(q)
        rhs = q.twoJ - 1 if classify(q) in "AD" else p - q.twoJ - 1
        assert b + 2 * n0 == 2 * m0 - b == rhs


def test_iota_and_negation():
    assert iota(Pair(3, 2, 2)) == -1
    assert iota(Pair(3, 1, 0)) == -2
    assert iota(Pair(3, 0, 2)) == 0
    assert negate_pair(Pair(3, 2, 2)) == Pair(3, 1, 2)
    assert negate_pair(Pair(5, 0, 4)) == Pair(5, 0, 4)
    assert classify(negate_pair(Pair(3, 2, 2))) == "D"


def test_negation_p2_follows_t1():
    # T1 swaps the two odd pairs at p = 2; the index tables agree
    for q in enumerate_p_set(2):
        for e in (0, 1):
            assert t1(b1(e, q)) == b1(e, negate_pair(q))
    assert negate_pair(Pair(2, 1, 0)) == Pair(2, 1, 2)
    assert negate_pair(Pair(2, 0, 1)) == Pair(2, 0, 1)


def test_gamma_beta_s():
    q = Pair(3, 2, 2)
    assert (gamma(q, 0).value, gamma(q, 1).value, beta(q, 2).value) == (1, 0, 0)
    assert gamma(Pair(2, 1, 0), 0).value == 1
    assert s_val(q) == 1 and s_val(Pair(3, 1, 0)) == 1 and s_val(Pair(2, 1, 0)) == 1
    with pytest.raises(ValueError):
        s_val(Pair(3, 0, 2))


def test_psi():
    assert psi_coeffs(3, 0, 0) == [1, 1, 1]
    assert psi_coeffs(3, 2, 0) == [0, 2, 2]
    for p in (3, 5, 7):
        for twoJ in range(0, p, 2):
            j2 = (twoJ // 2) ** 2 % p
            val = sum(c * pow(j2, i, p) for i, c in enumerate(psi_coeffs(p, twoJ, 0))) % p
            assert val == 1
    with pytest.raises(ValueError):
        psi_coeffs(2, 1, 0)


def test_b1_p2_table():
    ctx = AlgebraCtx(2, 1)
    q = Pair(2, 0, 1)
    assert b1(0, q) == gen_mu(ctx, 0)
    assert b1(1, q) == gen_mu(ctx, 0) * gen_y(ctx, 1) * gen_x(ctx, 1)
    assert b_coeffs(1, q)[0] == {1: 1}


@pytest.mark.parametrize("p", [3, 5])
def test_b1_e_pairs_agree(p):
    for a in range(p):
        q = Pair(p, a, 0)
        assert b1(0, q) == b1(1, q)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_coefficient_support(p):
    for q in enumerate_p_set(p):
        for e in (0, 1):
            c, ct = b_coeffs(e, q)
            assert min(c) == n_bound(q, e) and c[n_bound(q, e)]
            assert min(ct) == n_tilde_bound(q, e) and ct[n_tilde_bound(q, e)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_z_of_one_is_embedded_b(p):
    one = identity(AlgebraCtx(p, 1))
    for q in enumerate_p_set(p):
        for e in (0, 1):
            assert z_op(e, q, one) == embed(b1(e, q), 2)


@pytest.mark.parametrize("p", [2, 3])
def test_z_mu_weight(p):
    c1 = AlgebraCtx(p, 1)
    for q in enumerate_p_set(p):
        for a in range(p):
            out = z_op(0, q, gen_mu(c1, a))
            assert weight_of(out) == (iota(q) + p * a) % (p * p)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_tuple_idempotents(p, r):
    ctx = AlgebraCtx(p, r)
    es = [b_tuple((0,) * r, t) for t in enumerate_tuples(p, r)]
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == identity(ctx)
    for e in es:
        assert e * e == e
    for e, f in itertools.permutations(es[:6], 2):
        assert not e * f


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2)])
def test_tuple_weights(p, r):
    for tup in enumerate_tuples(p, r):
        for eps in itertools.product((0, 1), repeat=r):
            assert weight_of(b_tuple(eps, tup)) == tuple_weight(tup) % p ** r


def test_u_pow():
    ctx = AlgebraCtx(3, 2)
    assert u_pow(0, 0, ctx) == identity(ctx)
    assert u_pow(0, -2, ctx) == gen_y(ctx, 2).scale(2)
    assert u_pow(1, 1, ctx) == gen_x(ctx, 3)


def test_shifted_examples():
    ctx = AlgebraCtx(2, 1)
    q = (Pair(2, 0, 1),)
    assert b_shifted((0,), q, (0,)) == b_tuple((0,), q)
    out = b_shifted((1,), q, (0,))
    assert out == gen_mu(ctx, 0) * gen_y(ctx, 1) * gen_x(ctx, 1) and out


def test_x_set_and_theta():
    assert x_set((Pair(3, 1, 0),)) == [(0,)]
    assert x_set((Pair(3, 2, 2),)) == [(0,), (1,)]
    assert len(theta_set((Pair(3, 2, 2),), (0,))) == 6
    with pytest.raises(ValueError):
        theta_set((Pair(3, 1, 0),), (1,))


@pytest.mark.parametrize("p,expected", [
    (2, {"(0,1/2)": (4, 1), "(1,0)": (2, 2), "(1,1)": (2, 2)}),
    (3, {"(0,0)": (3, 3), "(0,1)": (6, 1), "(1,0)": (3, 3), "(1,1)": (6, 2), "(2,0)": (3, 3), "(2,1)": (6, 2)}),
])
def test_index_counts_per_pair(p, expected):
    got = {}
    for tup in enumerate_tuples(p, 1):
        entries = theta_set(tup, (0,))
        got[str(tup[0])] = (len(entries), sum(in_v_box(tup, e) for e in entries))
    assert got == expected


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_index_sets_count_to_dimension(p, r):
    total = sum(len(theta_set(t, (0,) * r)) for t in enumerate_tuples(p, r))
    assert total == p ** (3 * r)


def test_h_element():
    ctx = AlgebraCtx(3, 1)
    assert h_elem(1, 0, ctx) == gen_mu(ctx, 0) + gen_mu(ctx, 1)
    with pytest.raises(ValueError):
        h_elem(2, 0, ctx)
    with pytest.raises(ValueError):
        h_elem(1, 0, AlgebraCtx(2, 1))


def test_tuple_length_mismatch():
    with pytest.raises(ValueError):
        b_tuple((0, 0), (Pair(3, 0, 0),))
