"""Mechanical verification of the discreteness criteria.

Two conditions control when the dual algebra of a regular coalgebra has
discrete = locally-finitely-generated module theory.  For a depth l and
a set of admissible shifts:

(1) unit condition: for shifts m < n, the element dual to basis slot
    n - m must differ from 1 by a non-unit everywhere, i.e. all its
    monomial pairings lie in p Z_(p);
(2) congruence condition: products of dual basis elements a_m a_n must
    agree with a_{m+n} mod p**l.

For the six product-form algebras both conditions reduce to finite
computations: (1) is periodic in the evaluation exponent mod p, and (2)
reduces to valuations of differences of the product nodes.  The 2-local
complex theories have no product form, so both conditions are checked
through the coalgebra coefficient tables up to a stated bound.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable

from .laurent import LaurentPoly, alternating_powers, geometric_powers, newton_coeffs, theta
from .rationals import multiplicative_order, nu
from .spectra import SpectrumSpec, admissible_shifts, support_step


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of checking one condition for one cell (m, n, l)."""

    spectrum: str
    condition: str
    holds: bool
    exact: bool
    m: int
    n: int | None = None
    level: int | None = None
    witness: object = None
    min_valuation: int | None = None
    checked: object = None
    control: bool = False

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {
            "spectrum": self.spectrum,
            "condition": self.condition,
            "verdict": "holds" if self.holds else "fails",
            "exact": self.exact,
            "m": self.m,
            "n": self.n,
            "l": self.level,
            "witness": self.witness,
            "min_valuation": self.min_valuation,
            "checked": self.checked,
            "control": self.control,
        }

    def describe(self) -> str:
        word = "holds" if self.holds else "FAILS"
        where = f"m={self.m}" + (f", n={self.n}" if self.n is not None else "")
        if self.level is not None:
            where += f", l={self.level}"
        tail = "" if self.exact else " (bounded)"
        if not self.holds and self.witness is not None:
            tail += f" witness={self.witness}"
        ctl = " [control]" if self.control else ""
        return f"{self.spectrum} {self.condition} {where}: {word}{tail}{ctl}"


def _nodes(spec: SpectrumSpec) -> Callable[[int], Fraction]:
    if spec.base is None:
        raise ValueError(f"{spec.name} has no product-form basis")
    return (alternating_powers if spec.periodic else geometric_powers)(spec.base)


def _theta_value(count: int, z: Callable[[int], Fraction], x: Fraction) -> Fraction:
    total = Fraction(1)
    for i in range(1, count + 1):
        total *= x - z(i)
    return total


def check_unit_condition(
    spec: SpectrumSpec, m: int, n: int, bound: int = 20, periods: int = 1
) -> ConditionVerdict:
    """Condition (1) for the shift pair m < n.

    Product-form route: evaluates the degree n-m node product at b**j
    and demands the value land in p Z_(p).  The values only matter mod
    p and b**j cycles with period ord_p(b), so one period of j decides
    every integer exponent and the verdict is exact.  Without a product
    form the same statement is read off the monomial coordinate tables:
    p must divide the (n-m)-th coordinate of every monomial, checked
    for slots resolvable up to the bound.
    """
    if m >= n:
        raise ValueError("the unit condition needs m < n")
    p = spec.prime
    if spec.has_theta_form:
        z = _nodes(spec)
        b = spec.base
        period = multiplicative_order(b % p, p)
        for j in range(period * periods):
            v = _theta_value(n - m, z, Fraction(b) ** j)
            if v and nu(p, v) < 1:
                return ConditionVerdict(
                    spec.name, "unit", False, True, m, n, witness=j, checked=period
                )
        return ConditionVerdict(spec.name, "unit", True, True, m, n, checked=period)

    ok, slot = _monomial_divisibility(spec, n - m, bound)
    if not ok:
        return ConditionVerdict(
            spec.name, "unit", False, False, m, n, witness=slot, checked=bound
        )
    return ConditionVerdict(spec.name, "unit", True, False, m, n, checked=bound)


def check_congruence_condition(
    spec: SpectrumSpec,
    m: int,
    n: int,
    l: int,
    expansion_cap: int = 12,
    expansion_limit: int = 60,
) -> ConditionVerdict:
    """Condition (2) for shift m, index n, depth l.

    The product a_m a_n differs from a_{m+n} by terms whose coefficients
    are built from the node differences z_{n-i} - z_{m+n-i}; requiring
    valuation >= l on each difference decides the congruence exactly.
    As a guard against transcription errors, the verdict is
    cross-validated on small cells by expanding the actual polynomial
    difference in the node basis and checking every coefficient.
    """
    if l < 1:
        raise ValueError("the depth must be a positive integer")
    if m < 0 or n < 0:
        raise ValueError("shift and index must be non-negative")
    p = spec.prime
    if not spec.has_theta_form:
        return check_product_congruence(spec, m, n, l)
    z = _nodes(spec)
    min_val: int | None = None
    verdict = True
    witness = None
    for i in range(n):
        d = z(n - i) - z(m + n - i)
        if not d:
            continue
        v = nu(p, d)
        if min_val is None or v < min_val:
            min_val = v
        if v < l:
            verdict = False
            witness = i
            break

    cross = None
    if m + n <= expansion_limit:
        cross = _cross_validate_congruence(spec, z, m, n, l, expansion_cap)
    return ConditionVerdict(
        spec.name,
        "congruence",
        verdict,
        True,
        m,
        n,
        level=l,
        witness=witness,
        min_valuation=min_val,
        checked={"cross": cross} if cross is not None else None,
    )


def _cross_validate_congruence(
    spec: SpectrumSpec,
    z: Callable[[int], Fraction],
    m: int,
    n: int,
    l: int,
    cap: int,
) -> dict:
    """Expand theta_m * theta_n - theta_{m+n} in the node basis.

    The coefficients are exactly the coordinates of a_m a_n - a_{m+n}
    in the dual topological basis, so every one must have valuation
    at least l for the congruence to hold.  Precision is capped; the
    difference has degree below m + n, so a cap of m + n is complete.
    """
    diff = theta(m, z) * theta(n, z) - theta(m + n, z)
    count = min(m + n, cap)
    coeffs = newton_coeffs(diff, z, count)
    worst: int | None = None
    bad = None
    for k, g in enumerate(coeffs):
        if not g:
            continue
        v = nu(spec.prime, g)
        if worst is None or v < worst:
            worst = v
        if v < l and bad is None:
            bad = k
    return {
        "coefficients": count,
        "complete": count >= m + n,
        "min_valuation": worst,
        "ok": bad is None,
        "witness": bad,
    }


def _monomial_divisibility(spec: SpectrumSpec, index: int, bound: int) -> tuple[bool, int | None]:
    """Whether p divides the index-th coordinate of every resolvable monomial."""
    coalg = spec.coalgebra
    p = spec.prime
    for slot in coalg.monomial_slots(bound):
        coords = coalg.basis_coords(slot)
        v = coords[index] if index < len(coords) else Fraction(0)
        if v and nu(p, v) < 1:
            return False, slot
    return True, None


def _gamma_congruence(
    spec: SpectrumSpec,
    m: int,
    n: int,
    l: int,
    bound: int,
    gamma: Callable[[int, int, int], Fraction],
) -> tuple[bool, object, int | None]:
    """Product-side table check: returns (ok, witness, min valuation)."""
    p = spec.prime
    diag = gamma(m, n, m + n)
    if diag != 1:
        return False, {"part": "product", "target": m + n, "value": str(diag)}, None
    min_val: int | None = None
    for t in range(bound + 1):
        if t == m + n:
            continue
        v = gamma(m, n, t)
        if not v:
            continue
        val = nu(p, v)
        if min_val is None or val < min_val:
            min_val = val
        if val < l:
            return False, {"part": "product", "target": t, "value": str(v)}, min_val
    return True, None, min_val


def check_coalgebra_conditions(
    spec: SpectrumSpec,
    m: int,
    n: int,
    l: int,
    bound: int = 20,
    gamma: Callable[[int, int, int], Fraction] | None = None,
) -> ConditionVerdict:
    """Both conditions read off the coalgebra coefficient tables.

    For m < n, p must divide the (n-m)-th coordinate of every monomial
    (slots up to the bound).  For the product side, the structure
    constant sending (m, n) to m+n must be exactly 1 and every other
    structure constant with source (m, n) must have valuation >= l, for
    targets up to the bound.  Verdicts are bounded, not exact.  A
    replacement gamma table may be passed in to probe the checker
    itself.
    """
    if l < 1:
        raise ValueError("the depth must be a positive integer")
    if bound < m + n:
        raise ValueError("the bound must reach at least m + n")
    if gamma is None:
        gamma = spec.coalgebra.coproduct_entry

    if m < n:
        ok, slot = _monomial_divisibility(spec, n - m, bound)
        if not ok:
            return ConditionVerdict(
                spec.name,
                "coalgebra",
                False,
                False,
                m,
                n,
                level=l,
                witness={"part": "unit", "slot": slot},
                checked=bound,
            )
    ok, witness, min_val = _gamma_congruence(spec, m, n, l, bound, gamma)
    return ConditionVerdict(
        spec.name,
        "coalgebra",
        ok,
        False,
        m,
        n,
        level=l,
        witness=witness,
        min_valuation=min_val,
        checked=bound,
    )


def check_product_congruence(
    spec: SpectrumSpec, m: int, n: int, l: int, bound: int = 20
) -> ConditionVerdict:
    """Condition (2) by whichever route the algebra admits."""
    if spec.has_theta_form:
        return check_congruence_condition(spec, m, n, l)
    bound = max(bound, m + n)
    ok, witness, min_val = _gamma_congruence(
        spec, m, n, l, bound, spec.coalgebra.coproduct_entry
    )
    return ConditionVerdict(
        spec.name,
        "congruence",
        ok,
        False,
        m,
        n,
        level=l,
        witness=witness,
        min_valuation=min_val,
        checked=bound,
    )


def product_identity_holds(z: Callable[[int], Fraction], m: int, n: int) -> bool:
    """The exact polynomial identity behind the congruence reduction.

    The product of the degree-m and degree-n node polynomials differs
    from the degree-(m+n) one by a sum of corrections, each carrying a
    node difference z_{n-i} - z_{m+n-i} as a factor:

        T_{m+n} = T_m T_n + sum_{i<n} (z_{n-i} - z_{m+n-i})
                  * prod_{k=n-i+1..n} (X - z_k) * T_{m+n-i-1}

    Checked symbolically over the given node sequence.
    """
    if m < 0 or n < 0:
        raise ValueError("degrees must be non-negative")
    x = LaurentPoly.variable()
    lhs = theta(m + n, z)
    rhs = theta(m, z) * theta(n, z)
    for i in range(n):
        cofactor = LaurentPoly.one()
        for k in range(n - i + 1, n + 1):
            cofactor = cofactor * (x - z(k))
        rhs = rhs + (z(n - i) - z(m + n - i)) * cofactor * theta(m + n - i - 1, z)
    return lhs == rhs


@dataclass(frozen=True)
class SweepReport:
    """Outcome of an exhaustive small sweep with a list of bad cells."""

    name: str
    holds: bool
    cells: int
    mismatches: tuple = ()

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": "holds" if self.holds else "fails",
            "cells": self.cells,
            "mismatches": list(self.mismatches),
        }


def check_pow3_valuations(i_max: int) -> SweepReport:
    """The closed form for the 2-adic valuation of 3**i - 1.

    The valuation is 1 for odd i and 2 + nu_2(i) for even i; this drives
    every 2-local congruence estimate, so it gets its own sweep.
    """
    if i_max < 1:
        raise ValueError("need at least one exponent to check")
    bad = []
    for i in range(1, i_max + 1):
        expected = 1 if i % 2 else 2 + nu(2, i)
        actual = nu(2, 3**i - 1)
        if actual != expected:
            bad.append({"i": i, "expected": expected, "actual": actual})
    return SweepReport("pow3-valuations", not bad, i_max, tuple(bad))


def check_gamma_transfer(k2: SpectrumSpec, ko2: SpectrumSpec, m_max: int) -> SweepReport:
    """Structure constants of the 2-local complex theory from the real one.

    The odd-target constants of the interleaved coalgebra are determined
    by the real ones:

        G[2i, 2j -> 2m+1]   = (1 - 3**(i+j-m)) / 2 * g[i, j -> m]
        G[2i, 2j+1 -> 2m+1] = 3**(i+j-m) * g[i, j -> m]

    Also sweeps the bridge identity w * c_{2m} = 3**m c_{2m} -
    2 * 3**m c_{2m+1} that the derivation rests on.  Exact equality on
    every cell with i, j, m <= m_max.
    """
    if k2.family != "k" or k2.prime != 2 or k2.periodic:
        raise ValueError("first argument must be the connective 2-local complex theory")
    if ko2.family != "ko" or ko2.periodic:
        raise ValueError("second argument must be the connective 2-local real theory")
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    bad = []
    cells = 0
    ck, co = k2.coalgebra, ko2.coalgebra
    w = LaurentPoly.variable()
    for m in range(m_max + 1):
        lhs = w * ck.basis_poly(2 * m)
        rhs = ck.basis_poly(2 * m) * (3**m) - ck.basis_poly(2 * m + 1) * (2 * 3**m)
        cells += 1
        if lhs != rhs:
            bad.append({"identity": "bridge", "m": m})
        for i in range(m_max + 1):
            for j in range(m_max + 1):
                real = co.coproduct_entry(i, j, m)
                scale = Fraction(3) ** (i + j - m)
                even = ck.coproduct_entry(2 * i, 2 * j, 2 * m + 1)
                odd = ck.coproduct_entry(2 * i, 2 * j + 1, 2 * m + 1)
                cells += 2
                if even != (1 - scale) / 2 * real:
                    bad.append(
                        {"identity": "even", "i": i, "j": j, "m": m,
                         "got": str(even), "want": str((1 - scale) / 2 * real)}
                    )
                if odd != scale * real:
                    bad.append(
                        {"identity": "odd", "i": i, "j": j, "m": m,
                         "got": str(odd), "want": str(scale * real)}
                    )
    return SweepReport("gamma-transfer", not bad, cells, tuple(bad))


@dataclass(frozen=True)
class ConditionReport:
    """Pass/fail matrix for sampled cells of both conditions."""

    spectrum: str
    l_max: int
    rows: tuple[ConditionVerdict, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows if not r.control)

    @property
    def failing(self) -> tuple[ConditionVerdict, ...]:
        return tuple(r for r in self.rows if not r.holds and not r.control)

    @property
    def failing_controls(self) -> tuple[ConditionVerdict, ...]:
        return tuple(r for r in self.rows if not r.holds and r.control)

    def min_valuations(self) -> dict[int, int | None]:
        out: dict[int, int | None] = {}
        for r in self.rows:
            if r.control or r.level is None or r.min_valuation is None:
                continue
            cur = out.get(r.level)
            if cur is None or r.min_valuation < cur:
                out[r.level] = r.min_valuation
        return out

    def as_dict(self) -> dict:
        return {
            "spectrum": self.spectrum,
            "l_max": self.l_max,
            "all_hold": self.all_hold,
            "min_valuations": {str(k): v for k, v in sorted(self.min_valuations().items())},
            "rows": [r.as_dict() for r in self.rows],
        }

    def summary(self) -> str:
        lines = [
            f"{self.spectrum}: {len(self.rows)} cells to depth {self.l_max}; "
            f"{'all hold' if self.all_hold else f'{len(self.failing)} FAIL'}"
        ]
        for r in self.failing:
            lines.append("  " + r.describe())
        for r in self.failing_controls:
            lines.append("  " + r.describe())
        return "\n".join(lines)


def _control_shift(spec: SpectrumSpec, l: int) -> int | None:
    """Smallest positive shift outside the admissible set, if any."""
    d = support_step(spec, l)
    return None if d == 1 else 1


def condition_report(
    spec: SpectrumSpec,
    l_max: int,
    sample_size: int = 5,
    n_range: int = 6,
    bound: int = 20,
    include_controls: bool = True,
) -> ConditionReport:
    """Sample both conditions over admissible shifts up to depth l_max.

    For each depth l the first sample_size admissible shifts feed the
    congruence condition against every n below n_range, and ordered
    pairs of them feed the unit condition.  Deliberate out-of-set
    shifts are appended as labeled control rows; they are reported but
    never counted against the verdict.
    """
    if l_max < 1:
        raise ValueError("the depth must be a positive integer")
    rows: list[ConditionVerdict] = []
    for l in range(1, l_max + 1):
        shifts = []
        gen = admissible_shifts(spec, l)
        for _ in range(sample_size):
            shifts.append(next(gen))
        for a in range(len(shifts)):
            for b in range(a + 1, len(shifts)):
                v = check_unit_condition(spec, shifts[a], shifts[b], bound=bound)
                rows.append(replace(v, level=l))
        for m in shifts:
            for n in range(n_range):
                rows.append(check_product_congruence(spec, m, n, l, bound=bound))
        if include_controls:
            c = _control_shift(spec, l)
            if c is not None:
                for n in (1, 2):
                    v = check_product_congruence(spec, c, n, l, bound=bound)
                    rows.append(replace(v, control=True))
    return ConditionReport(spec.name, l_max, tuple(rows))
