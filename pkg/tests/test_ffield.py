import itertools

import pytest
from hypothesis import given, strategies as st

from hyperalg.ffield import Scalar, binom_int, falling_binom, factorial_mod, inv, inv_mod, is_prime


@pytest.mark.parametrize("n,k,p,expected", [(-1, 1, 3, 2), (6, 1, 3, 0), (4, 2, 2, 0), (5, 0, 7, 1)])
def test_binom_examples(n, k, p, expected):
    assert binom_int(n, k, p) == expected


@pytest.mark.parametrize("x,p,expected", [(2, 3, 2), (1, 5, 1), (1, 7, 1), (3, 5, 2)])
def test_inverse_examples(x, p, expected):
    assert inv_mod(x, p) == expected
    assert inv(Scalar(x, p)).value == expected


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inv(Scalar(0, 5))
    with pytest.raises(ZeroDivisionError):
        inv_mod(10, 5)


def test_negative_lower_index_rejected():
    with pytest.raises(ValueError):
        binom_int(3, -1, 3)


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        Scalar(1, 3) + Scalar(1, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_periodicity_exhaustive(p):
    for k in range(p * p):
        M = 1
        while p ** M <= k:
            M += 1
        for n in range(2 * p * p):
            assert binom_int(n + p ** M, k, p) == binom_int(n, k, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_carry_vanishing(p):
    r = 1
    while p ** r <= 27:
        P = p ** r
        for a in range(P):
            for b in range(P - a, P):
                assert falling_binom(a + b, a) % p == 0
        r += 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    els = [Scalar(v, p) for v in range(p)]
    for x, y, z in itertools.product(els, repeat=3):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
    for x in els:
        assert x + (-x) == 0
        if x:
            assert x * inv(x) == 1
            assert x / x == 1


@given(st.integers(-200, 200), st.integers(0, 40), st.sampled_from([2, 3, 5, 7]))
def test_binom_matches_exact(n, k, p):
    assert binom_int(n, k, p) == falling_binom(n, k) % p


@given(st.integers(0, 30), st.sampled_from([2, 3, 5, 7]))
def test_factorial_mod(n, p):
    out = 1
    for i in range(2, n + 1):
        out *= i
    assert factorial_mod(n, p) == out % p


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
