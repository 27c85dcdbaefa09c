"""Exact rational arithmetic localized at a prime.

Everything here works with arbitrary-precision integers and
fractions.Fraction; no floating point is used anywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def as_fraction(x) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed; use Fraction")
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def _int_valuation(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def nu(p: int, x) -> int:
    """The exponent of p in the rational x.

    nu(p, a/b) = nu(p, a) - nu(p, b) for a/b in lowest terms.  The
    valuation of zero is undefined and raises ValueError rather than
    returning a sentinel.
    """
    _check_prime(p)
    x = as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    return _int_valuation(p, abs(x.numerator)) - _int_valuation(p, x.denominator)


def is_p_local_integer(p: int, x) -> bool:
    """True when x lies in Z localized at p, i.e. p does not divide the denominator."""
    _check_prime(p)
    x = as_fraction(x)
    return x.denominator % p != 0


def is_p_local_unit(p: int, x) -> bool:
    """True when x is invertible in the p-local integers: x != 0 and nu(p, x) == 0."""
    x = as_fraction(x)
    return x != 0 and nu(p, x) == 0


def multiplicative_order(a: int, modulus: int) -> int:
    """Least t >= 1 with a**t == 1 mod modulus; a must be coprime to modulus."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    a %= modulus
    if gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible mod {modulus}")
    t, x = 1, a
    while x != 1:
        x = x * a % modulus
        t += 1
    return t


def check_primitive_root(p: int, q: int) -> bool:
    """Whether q generates the unit group mod p**2, for an odd prime p.

    The 2-local constructions fix their own Adams parameter, so p = 2 is
    rejected rather than answered.
    """
    _check_prime(p)
    if p == 2:
        raise ValueError("primitive-root test is undefined for p = 2")
    if q % p == 0:
        raise ValueError("q must not be divisible by p")
    return multiplicative_order(q, p * p) == p * (p - 1)


def least_primitive_root(p: int) -> int:
    """Smallest q >= 2 generating the units mod p**2 (p an odd prime)."""
    q = 2
    while True:
        if q % p != 0 and check_primitive_root(p, q):
            return q
        q += 1


@dataclass(frozen=True)
class PAdicRational:
    """A rational number carried together with the prime it is localized at."""

    value: Fraction
    prime: int

    def __post_init__(self):
        _check_prime(self.prime)
        object.__setattr__(self, "value", as_fraction(self.value))

    def valuation(self) -> int:
        return nu(self.prime, self.value)

    def is_integer(self) -> bool:
        return is_p_local_integer(self.prime, self.value)

    def is_unit(self) -> bool:
        return is_p_local_unit(self.prime, self.value)
