"""Exact scalar arithmetic: rationals, cyclotomic field elements, eps-polynomials.

Rationals are `fractions.Fraction` (re-exported as ``Rational``); the stdlib
type already maintains the canonical reduced form with positive denominator.

Cyclotomic elements of Q(zeta_N) are stored reduced modulo the N-th cyclotomic
polynomial Phi_N, not modulo x^N - 1. The quotient by Phi_N is a field, so
equality is coefficient-wise and identities like sum_j zeta^(j*r) = 0 for
r not divisible by N hold exactly.

``EpsPolynomial`` is a univariate polynomial in a formal parameter ``eps``
over either coefficient domain; it does the degree bookkeeping for
degeneration certificates.

No floating point enters any arithmetic path in this module; approximate
rendering (``CyclotomicElement.approx``) exists for display only.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

Rational = Fraction

Scalar = Union[int, Fraction, "CyclotomicElement"]


# ---------------------------------------------------------------------------
# Dense integer polynomials, constant coefficient first.


def _poly_trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod_monic(num: list, den: list) -> tuple[list, list]:
    """Quotient and remainder by a monic divisor; stays in the base ring."""
    assert den and den[-1] == 1
    rem = list(num)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    for top in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[top]
        if c == 0:
            continue
        shift = top - (len(den) - 1)
        quo[shift] = c
        for i, d in enumerate(den):
            rem[shift + i] -= c * d
    return _poly_trim(quo), _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients of Phi_order, constant term first, monic.

    Computed by dividing x^order - 1 by the product of Phi_d over the proper
    divisors d of order; every divisor is monic so the division is exact over
    the integers.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod_monic(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


def cyclotomic_degree(order: int) -> int:
    """Degree of Phi_order (Euler phi of order)."""
    return len(cyclotomic_polynomial(order)) - 1


# ---------------------------------------------------------------------------
# Cyclotomic field elements.


def _reduce_mod_phi(coeffs: list[Fraction], order: int) -> list[Fraction]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    work = list(coeffs)
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c == 0:
            continue
        work[top] = Fraction(0)
        for i in range(deg):
            work[top - deg + i] -= c * phi[i]
    work = work[:deg]
    work += [Fraction(0)] * (deg - len(work))
    return work


@dataclass(eq=False)
class CyclotomicElement:
    """An element of Q(zeta_order), reduced mod Phi_order.

    ``coeffs[i]`` multiplies zeta^i; the tuple always has length deg Phi_order,
    so equality within one order is plain coefficient comparison. Mixing two
    different orders in arithmetic is an error: callers embed into a common
    (lcm) order with :meth:`embed` first.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        reduced = _reduce_mod_phi([Fraction(c) for c in self.coeffs], self.order)
        self.coeffs = tuple(reduced)

    @classmethod
    def constant(cls, value: int | Fraction, order: int = 1) -> "CyclotomicElement":
        return cls(order, (Fraction(value),))

    @classmethod
    def zeta(cls, order: int) -> "CyclotomicElement":
        """A primitive order-th root of unity."""
        return cls(order, (Fraction(0), Fraction(1)))

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicElement | None":
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.constant(other, self.order)
        if isinstance(other, CyclotomicElement):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch ({self.order} vs {other.order}); "
                    "embed() into a common order first"
                )
            return other
        return None

    def embed(self, new_order: int) -> "CyclotomicElement":
        """Rewrite in Q(zeta_new_order); requires order | new_order.

        zeta_N = zeta_M^(M/N) for N | M, so embedding dilates coefficient
        indices by M/N and reduces.
        """
        if new_order % self.order != 0:
            raise ValueError(f"{self.order} does not divide {new_order}")
        step = new_order // self.order
        dilated = [Fraction(0)] * (len(self.coeffs) * step)
        for i, c in enumerate(self.coeffs):
            dilated[i * step] = c
        return CyclotomicElement(new_order, tuple(dilated))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(
            self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        return CyclotomicElement(self.order, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        if self.is_zero:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # Extended Euclid over Q[x]: s*self + t*Phi = gcd = nonzero constant.
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_frac(s0, _poly_mul(q, s1))
        assert r1, "Phi_N is irreducible, gcd must be a nonzero constant"
        g = r1[0]
        inv = [c / g for c in s1]
        return CyclotomicElement(self.order, tuple(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicElement.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        if isinstance(other, CyclotomicElement):
            if self.order == other.order:
                return self.coeffs == other.coeffs
            common = _lcm(self.order, other.order)
            return self.embed(common).coeffs == other.embed(common).coeffs
        return NotImplemented

    __hash__ = None  # mutable-by-convention value type; never used as a key

    def approx(self) -> complex:
        """Float approximation for display; never used in arithmetic."""
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = [
            f"{c}*z{self.order}^{i}" for i, c in enumerate(self.coeffs) if c != 0
        ]
        return "Cyc(" + (" + ".join(terms) if terms else "0") + ")"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    quo = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for top in range(len(num) - 1, len(den) - 2, -1):
        c = num[top]
        if c == 0:
            continue
        shift = top - (len(den) - 1)
        f = c / lead
        quo[shift] = f
        for i, d in enumerate(den):
            num[shift + i] -= f * d
    return _poly_trim(quo), _poly_trim(num)


def _poly_sub_frac(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# Polynomials in the degeneration parameter.


def scalar_is_zero(x) -> bool:
    if isinstance(x, CyclotomicElement):
        return x.is_zero
    if isinstance(x, EpsPolynomial):
        return not x.coeffs
    return x == 0


def scalar_inv(x):
    if isinstance(x, CyclotomicElement):
        return x.inverse()
    return Fraction(1) / Fraction(x)


@dataclass(eq=False)
class EpsPolynomial:
    """Polynomial in the formal parameter eps; coeffs[i] multiplies eps^i.

    The trailing coefficient is nonzero unless the polynomial is zero (empty
    coefficient tuple). Coefficients are rationals or cyclotomic elements.
    """

    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        work = list(self.coeffs)
        while work and scalar_is_zero(work[-1]):
            work.pop()
        self.coeffs = tuple(
            Fraction(c) if isinstance(c, int) else c for c in work
        )

    @classmethod
    def constant(cls, value: Scalar) -> "EpsPolynomial":
        return cls((value,))

    @classmethod
    def eps(cls) -> "EpsPolynomial":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def zero(cls) -> "EpsPolynomial":
        return cls(())

    @property
    def degree(self) -> int:
        """Degree of the leading term; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def low_degree(self) -> int | None:
        """Smallest exponent with a nonzero coefficient, None if zero."""
        for i, c in enumerate(self.coeffs):
            if not scalar_is_zero(c):
                return i
        return None

    def coeff_at(self, d: int) -> Scalar:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    def evaluate(self, x: Scalar) -> Scalar:
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "EpsPolynomial | None":
        if isinstance(other, EpsPolynomial):
            return other
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            return EpsPolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        out: list[Scalar] = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] = out[i] + c
        for i, c in enumerate(o.coeffs):
            out[i] = out[i] + c
        return EpsPolynomial(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return EpsPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return EpsPolynomial.zero()
        out: list[Scalar] = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if scalar_is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                if not scalar_is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return EpsPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("cannot invert an eps-polynomial")
        result = EpsPolynomial.constant(Fraction(1))
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, EpsPolynomial):
            if len(self.coeffs) != len(other.coeffs):
                return False
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            if scalar_is_zero(other):
                return self.is_zero
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "EpsPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if scalar_is_zero(c):
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*e")
            else:
                terms.append(f"({c})*e^{i}")
        return "EpsPoly(" + " + ".join(terms) + ")"


def as_eps(x) -> EpsPolynomial:
    """Coerce a scalar or eps-polynomial to an EpsPolynomial."""
    if isinstance(x, EpsPolynomial):
        return x
    return EpsPolynomial.constant(Fraction(x) if isinstance(x, int) else x)
