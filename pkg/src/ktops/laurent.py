"""Sparse Laurent polynomials over Q, and monic root-product families.

A LaurentPoly is an immutable map exponent -> Fraction with zero
coefficients stripped.  Exponents may be negative; evaluation at 0 of a
polynomial with negative exponents raises PoleError.  The theta
constructors build the monic products prod_{i=1..n} (X - z_i) for a
root sequence z, which is how every operation basis in this package is
written down.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .rationals import as_fraction


class PoleError(ZeroDivisionError):
    pass


class NotDivisibleError(ValueError):
    pass


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                v = as_fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def variable(cls) -> "LaurentPoly":
        return cls({1: 1})

    def items(self):
        return self._c.items()

    @property
    def support(self):
        return self._c.keys()

    def coeff(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no degree")
        return max(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no lowest exponent")
        return min(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly({0: other})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, Fraction(0)) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else LaurentPoly({0: -as_fraction(other)}))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = as_fraction(other)
            return LaurentPoly({e: c * v for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, Fraction(0)) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined; use monomials directly")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        if x == 0 and self._c and min(self._c) < 0:
            raise PoleError("evaluation at zero hits a pole")
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * x**e
        return total

    def substitute_power(self, m: int) -> "LaurentPoly":
        """Replace the variable w by w**m."""
        if m == 0:
            raise ValueError("substituting w**0 collapses the variable")
        return LaurentPoly({e * m: v for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by w**k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def __str__(self):
        return self.render()

    def render(self, var: str = "w") -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                pw = var if e == 1 else f"{var}^{e}"
                body = pw if mag == 1 else f"{mag}*{pw}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._c.items()))!r})"


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """The quotient f/g when g divides f exactly; NotDivisibleError otherwise."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return LaurentPoly.zero()
    # Shift both into ordinary polynomials, divide, shift back.
    sf, sg = f.low, g.low
    num = {e - sf: v for e, v in f.items()}
    den = {e - sg: v for e, v in g.items()}
    dg = max(den)
    lead = den[dg]
    quo = {}
    while num:
        dn = max(num)
        if dn < dg:
            raise NotDivisibleError("polynomials do not divide exactly")
        q = num[dn] / lead
        quo[dn - dg] = q
        for e, v in den.items():
            e2 = e + dn - dg
            r = num.get(e2, Fraction(0)) - q * v
            if r:
                num[e2] = r
            else:
                num.pop(e2, None)
    return LaurentPoly(quo).shift(sf - sg)


def memoized_sequence(fn: Callable[[int], Fraction]) -> Callable[[int], Fraction]:
    cache: dict[int, Fraction] = {}

    def get(i: int) -> Fraction:
        if i not in cache:
            cache[i] = as_fraction(fn(i))
        return cache[i]

    return get


def geometric_powers(base) -> Callable[[int], Fraction]:
    """The root sequence z_i = base**(i-1), i >= 1."""
    b = as_fraction(base)
    return memoized_sequence(lambda i: b ** (i - 1))


def alternating_powers(base) -> Callable[[int], Fraction]:
    """The root sequence z_i = base**((-1)**i * floor(i/2)).

    The exponents run 0, 1, -1, 2, -2, ... so that the first n of them
    always form a block of consecutive integers.
    """
    b = as_fraction(base)
    return memoized_sequence(lambda i: b ** ((i // 2) if i % 2 == 0 else -(i // 2)))


def _as_sequence(z) -> Callable[[int], Fraction]:
    if callable(z):
        return z
    if isinstance(z, Sequence):
        seq = [as_fraction(v) for v in z]

        def get(i: int) -> Fraction:
            return seq[i - 1]

        return get
    raise TypeError("root sequence must be a callable i -> rational or a sequence")


def theta(n: int, z) -> LaurentPoly:
    """The monic degree-n product prod_{i=1..n} (X - z_i)."""
    if n < 0:
        raise ValueError("theta is defined for n >= 0")
    zs = _as_sequence(z)
    out = LaurentPoly.one()
    x = LaurentPoly.variable()
    for i in range(1, n + 1):
        out = out * (x - LaurentPoly({0: zs(i)}))
    return out


def big_theta(n: int, q) -> LaurentPoly:
    """theta with the balanced root sequence q**0, q**1, q**-1, q**2, ..."""
    if as_fraction(q) == 0:
        raise ValueError("the balanced root sequence needs q != 0")
    return theta(n, alternating_powers(q))


def newton_coeffs(f: LaurentPoly, z, count: int) -> list[Fraction]:
    """First `count` coordinates of f in the basis theta_0, theta_1, ....

    Extracted bottom-up: the coordinate of theta_k is the value at
    z_{k+1} of the running quotient, which is then divided by
    (X - z_{k+1}).  Exact at every step.
    """
    zs = _as_sequence(z)
    x = LaurentPoly.variable()
    out = []
    cur = f
    for k in range(count):
        v = cur(zs(k + 1))
        out.append(v)
        cur = exact_divide(cur - LaurentPoly({0: v}), x - LaurentPoly({0: zs(k + 1)}))
        if cur.is_zero:
            out.extend([Fraction(0)] * (count - k - 1))
            break
    return out


def theta_coords(f: LaurentPoly, z) -> list[Fraction]:
    """All coordinates of a polynomial f in the basis theta_0, theta_1, ...."""
    if f.is_zero:
        return []
    if f.low < 0:
        raise ValueError("theta coordinates are defined for ordinary polynomials")
    return newton_coeffs(f, z, f.degree + 1)
