"""Prime field arithmetic and binomial coefficients modulo p."""

from __future__ import annotations

from math import comb


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Scalar:
    """An element of F_p carrying its modulus.

    Arithmetic between scalars of different moduli raises ``ValueError``.
    Plain ``int`` operands are coerced into the field.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be prime, got {modulus}")
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.modulus != self.modulus:
                raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Scalar(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Scalar(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Scalar(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Scalar(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * inv(Scalar(v, self.modulus))

    def __pow__(self, n: int):
        if n < 0:
            return inv(self) ** (-n)
        return Scalar(pow(self.value, n, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Scalar({self.value}, {self.modulus})"


def inv(s: Scalar) -> Scalar:
    if s.value == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{s.modulus}")
    return Scalar(pow(s.value, s.modulus - 2, s.modulus), s.modulus)


def inv_mod(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{p}")
    return pow(x, p - 2, p)


def binom_int(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p as a plain int; n may be negative.

    n is first reduced into [0, p^M) with p^M > k, then Lucas' theorem is
    applied digit by digit.
    """
    if k < 0:
        raise ValueError(f"lower argument must be nonnegative, got {k}")
    if k == 0:
        return 1 % p
    period = p
    while period <= k:
        period *= p
    n %= period
    if n < k:
        return 0
    result = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * comb(nd, kd) % p
        n //= p
        k //= p
    return result


def binom_mod_p(n: int, k: int, p: int) -> Scalar:
    return Scalar(binom_int(n, k, p), p)


def falling_binom(n: int, k: int) -> int:
    """Exact integer binom(n, k) for arbitrary integer n via the product formula."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def factorial_mod(n: int, p: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out = out * i % p
    return out
