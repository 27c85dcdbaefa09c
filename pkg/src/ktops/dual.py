"""The topological dual algebra of a regular coalgebra.

Elements of the dual are infinite sums sum_n r_n a_n where a_n is the
functional picking the n-th basis coordinate.  A DualElement stores the
first N coefficients, which pins the element down modulo the ideal of
functionals vanishing on basis indices below N; all operations below
are exact on that coset.  An AdamsPoly is the other way of presenting
an element: a polynomial P evaluated at the operation that sends f(w)
to f(beta), so that pairing with f gives sum_j p_j f(beta**j).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .coalgebra import CoalgebraSpec
from .laurent import LaurentPoly
from .rationals import as_fraction, is_p_local_unit, multiplicative_order, nu


class PrecisionError(ValueError):
    pass


class NotIntegralError(ValueError):
    pass


class NotInvertibleError(ValueError):
    def __init__(self, step: int, slot: int, pivot: Fraction):
        self.step = step
        self.slot = slot
        self.pivot = pivot
        super().__init__(
            f"not invertible at step {step}: pairing against monomial slot {slot} gives {pivot}"
        )


class DualElement:
    """A truncated coefficient vector in the dual topological basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(as_fraction(v) for v in coeffs)
        if not self.coeffs:
            raise ValueError("a dual element needs precision at least 1")

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @classmethod
    def unit_vector(cls, n: int, precision: int) -> "DualElement":
        if not 0 <= n < precision:
            raise ValueError("unit vector index must sit below the precision")
        return cls(tuple(1 if i == n else 0 for i in range(precision)))

    @classmethod
    def one(cls, precision: int) -> "DualElement":
        return cls.unit_vector(0, precision)

    def truncate(self, precision: int) -> "DualElement":
        if precision > len(self.coeffs):
            raise PrecisionError("cannot extend a truncated element")
        return DualElement(self.coeffs[:precision])

    def __eq__(self, other):
        return isinstance(other, DualElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return DualElement(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return DualElement(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __neg__(self):
        return DualElement(tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        s = as_fraction(scalar)
        return DualElement(tuple(s * a for a in self.coeffs))

    def __repr__(self):
        return f"DualElement({list(self.coeffs)!r})"


@dataclass(frozen=True)
class AdamsPoly:
    """A polynomial in the degree-raising operation of base beta.

    poly is an ordinary polynomial in a formal variable X standing for
    the operation f(w) -> f(beta); its j-th power pairs with f as
    f(beta**j), so the whole element pairs as sum_j p_j f(beta**j).
    """

    beta: Fraction
    poly: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.beta == 0:
            raise ValueError("the operation base must be nonzero")
        if not self.poly.is_zero and self.poly.low < 0:
            raise ValueError("an operation polynomial has no negative powers")

    def __add__(self, other):
        if isinstance(other, AdamsPoly):
            if other.beta != self.beta:
                raise ValueError("cannot mix operation bases")
            return AdamsPoly(self.beta, self.poly + other.poly)
        return AdamsPoly(self.beta, self.poly + as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __rsub__(self, other):
        return AdamsPoly(self.beta, -self.poly + as_fraction(other))

    def __mul__(self, other):
        if isinstance(other, AdamsPoly):
            if other.beta != self.beta:
                raise ValueError("cannot mix operation bases")
            return AdamsPoly(self.beta, self.poly * other.poly)
        return AdamsPoly(self.beta, self.poly * as_fraction(other))

    __rmul__ = __mul__

    def value_on(self, f: LaurentPoly) -> Fraction:
        """Pair with a Laurent polynomial: sum over monomials of P(beta**e)."""
        total = Fraction(0)
        for e, v in f.items():
            total += v * self.poly(self.beta**e)
        return total


@dataclass(frozen=True)
class UnitVerdict:
    unit: bool
    exact: bool
    witness: int | None = None
    period: int | None = None
    checked: int | None = None

    def __bool__(self):
        return self.unit


def _require_prime(spec: CoalgebraSpec) -> int:
    if spec.prime is None:
        raise ValueError("this operation needs a p-local coalgebra")
    return spec.prime


def pair(spec: CoalgebraSpec, a, f: LaurentPoly) -> Fraction:
    """The pairing of a dual element against a polynomial in the coalgebra."""
    if isinstance(a, AdamsPoly):
        return a.value_on(f)
    coords = spec.coords_of(f)
    if len(coords) > a.precision:
        raise PrecisionError(
            f"pairing needs {len(coords)} coefficients but only {a.precision} are known"
        )
    return sum((r * c for r, c in zip(a.coeffs, coords)), Fraction(0))


def expand(spec: CoalgebraSpec, a: AdamsPoly, precision: int) -> DualElement:
    """Coefficients of an operation polynomial in the dual basis.

    The n-th coefficient is the pairing against basis element n.  A
    coefficient outside the ground ring means the element does not lie
    in the dual algebra over that ring, which is an error rather than a
    value.
    """
    out = []
    for n in range(precision):
        v = a.value_on(spec.basis_poly(n))
        if not spec.in_ground_ring(v):
            raise NotIntegralError(
                f"coefficient {n} is {v}, not integral over the ground ring"
            )
        out.append(v)
    return DualElement(out)


def multiply(spec: CoalgebraSpec, a: DualElement, b: DualElement) -> DualElement:
    """Product in the dual algebra, exact at the shared precision.

    Coefficient n of the product only involves coefficients i, j <= n of
    the factors, so truncation commutes with multiplication.
    """
    n = min(a.precision, b.precision)
    out = []
    for t in range(n):
        g = spec.coproduct_matrix(t)
        total = Fraction(0)
        for i in range(t + 1):
            ai = a.coeffs[i]
            if not ai:
                continue
            row = g[i]
            for j in range(t + 1):
                if b.coeffs[j]:
                    total += ai * row[j] * b.coeffs[j]
        out.append(total)
    return DualElement(out)


def ideal_index(a: DualElement) -> int:
    """Index of the first nonzero coefficient; the precision if all vanish."""
    for i, v in enumerate(a.coeffs):
        if v:
            return i
    return a.precision


def monomial_pairing(spec: CoalgebraSpec, a: DualElement, k: int) -> Fraction:
    """The pairing of a against the monomial w**(rk), when resolvable."""
    coords = spec.basis_coords(k)
    if len(coords) > a.precision:
        raise PrecisionError(
            f"monomial slot {k} needs {len(coords)} coefficients; only {a.precision} known"
        )
    return sum((r * c for r, c in zip(a.coeffs, coords)), Fraction(0))


def is_unit(spec: CoalgebraSpec, a, mode: str = "auto", precision: int | None = None) -> UnitVerdict:
    """Whether a is invertible in the dual algebra.

    An element is a unit exactly when its pairing against every
    monomial w**(rk) is a unit of the ground ring.  For an AdamsPoly
    with integer base coprime to p those pairings are P evaluated at
    powers of beta**r, whose residues mod p cycle; checking one full
    period gives an exact verdict.  For a truncated element only the
    monomials resolvable below the precision can be checked, so the
    verdict is a bounded one.
    """
    p = _require_prime(spec)
    if mode not in ("auto", "exact", "truncated"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "exact" if isinstance(a, AdamsPoly) else "truncated"

    if mode == "exact":
        if not isinstance(a, AdamsPoly):
            raise ValueError("the exact unit test needs the operation-polynomial form")
        beta = a.beta
        if beta.denominator != 1 or beta.numerator % p == 0:
            raise ValueError(
                "periodicity unavailable: the exact test needs an integer base coprime to p"
            )
        for _, v in a.poly.items():
            if not spec.in_ground_ring(v):
                raise NotIntegralError(f"coefficient {v} is not integral, unit test undefined")
        base = int(beta) ** spec.step
        t = multiplicative_order(base % p, p) if p > 2 else 1
        for j in range(t):
            v = a.poly(Fraction(base) ** j)
            if not is_p_local_unit(p, v):
                return UnitVerdict(unit=False, exact=True, witness=j, period=t)
        return UnitVerdict(unit=True, exact=True, period=t)

    if isinstance(a, AdamsPoly):
        if precision is None:
            raise ValueError("truncated unit test on an operation polynomial needs a precision")
        a = expand(spec, a, precision)
    n = a.precision if precision is None else min(precision, a.precision)
    for i in range(n):
        k = spec.extending_slot(i)
        v = monomial_pairing(spec, a.truncate(n), k)
        if not is_p_local_unit(p, v):
            return UnitVerdict(unit=False, exact=False, witness=k, checked=n)
    return UnitVerdict(unit=True, exact=False, checked=n)


def invert(spec: CoalgebraSpec, a: DualElement, precision: int | None = None) -> DualElement:
    """The inverse of a unit, exact at the requested precision.

    Builds the inverse coefficient by coefficient: at step i the
    coefficient s_i is forced by requiring coefficient i of a * s to
    match the identity, and the divisor involved is the pairing of a
    against the monomial of the slot that step resolves.  A non-unit
    pivot is reported with its step and slot.
    """
    p = _require_prime(spec)
    n = a.precision if precision is None else min(precision, a.precision)
    for v in a.coeffs[:n]:
        if not spec.in_ground_ring(v):
            raise NotIntegralError(f"coefficient {v} is not integral over the ground ring")
    s = [Fraction(0)] * n
    prod = [Fraction(0)] * n  # coefficients of a * s so far
    for i in range(n):
        g = spec.coproduct_matrix(i)
        pivot = sum((a.coeffs[k] * g[k][i] for k in range(i + 1)), Fraction(0))
        if not is_p_local_unit(p, pivot):
            raise NotInvertibleError(i, spec.extending_slot(i), pivot)
        target = spec.counit_value(i)
        s[i] = (target - prod[i]) / pivot
        if s[i]:
            for t in range(i, n):
                gt = spec.coproduct_matrix(t)
                prod[t] += s[i] * sum(
                    (a.coeffs[k] * gt[k][i] for k in range(t + 1)), Fraction(0)
                )
    return DualElement(s)


def algebra_one(spec: CoalgebraSpec, precision: int) -> DualElement:
    """The multiplicative identity: the counit, written in the dual basis."""
    return DualElement(tuple(spec.counit_value(n) for n in range(precision)))
