"""Exact arithmetic in a real number field Q(beta).

Elements are vectors of rationals in the power basis 1, beta, ..., beta^(d-1),
where beta is the unique root of a monic irreducible integer polynomial inside
a rational isolating interval.  All comparisons are decided exactly: the zero
test is coefficient-wise, and signs of nonzero elements are obtained by
refining a rational enclosure of beta until the evaluated enclosure of the
element excludes 0.  No floating point enters any decision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

import sympy
from sympy import Poly, Symbol

_X = Symbol("x")

RationalLike = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Raised when combining elements of different number fields."""


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Horner evaluation of a polynomial given in ascending order."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _interval_mul(a, b):
    """Product of two rational intervals."""
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def _interval_poly_eval(coeffs, lo, hi):
    """Enclosure of poly(x) for x in [lo, hi], ascending coefficients."""
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _interval_mul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


class NumberField:
    """The field Q(beta) for beta the root of ``min_poly`` in an isolating interval.

    ``min_poly`` is a monic integer polynomial (ascending coefficients,
    leading coefficient 1) irreducible over Q.  The isolating interval must
    contain exactly one real root, with lower endpoint >= 1, and the
    polynomial must change sign across it so bisection refinement works.
    """

    def __init__(self, min_poly: Sequence[int], interval: tuple[RationalLike, RationalLike]):
        coeffs = tuple(int(c) for c in min_poly)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("min_poly must be monic of degree >= 1")
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if lo < 1:
            raise ValueError("isolating interval must have lower bound >= 1")
        if not Poly(list(reversed(coeffs)), _X).is_irreducible:
            raise ValueError("min_poly is reducible over Q")
        if Poly(list(reversed(coeffs)), _X).count_roots(lo, hi) != 1:
            raise ValueError("interval does not isolate exactly one real root")
        self.min_poly = coeffs
        self.degree = len(coeffs) - 1
        # Nudge endpoints off the root so the interval carries a sign change.
        frac_coeffs = [Fraction(c) for c in coeffs]
        while _poly_eval(frac_coeffs, lo) == 0 or _poly_eval(frac_coeffs, hi) == 0:
            width = hi - lo
            lo, hi = lo - width / 3, hi + width / 3
            if Poly(list(reversed(coeffs)), _X).count_roots(lo, hi) != 1:
                raise ValueError("cannot normalize isolating interval")
        self._lo, self._hi = lo, hi
        self._frac_coeffs = frac_coeffs
        self._sign_lo = 1 if _poly_eval(frac_coeffs, lo) > 0 else -1
        # beta^k for k = d .. 2d-2, reduced into the power basis.
        self._pow_table = self._build_pow_table()
        self._approx_cache: tuple[float, float] | None = None

    def _build_pow_table(self):
        d = self.degree
        table = []
        # beta^d = -(a_0 + a_1 beta + ... + a_{d-1} beta^{d-1})
        cur = [Fraction(-c) for c in self.min_poly[:d]]
        table.append(tuple(cur))
        for _ in range(d - 1):
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            cur = [s + top * t for s, t in zip(shifted, table[0])]
            table.append(tuple(cur))
        return table

    def refine(self) -> None:
        """Halve the isolating interval by one bisection step."""
        mid = (self._lo + self._hi) / 2
        val = _poly_eval(self._frac_coeffs, mid)
        if val == 0:
            # mid is rational, impossible for irreducible degree >= 2;
            # for degree 1 the root is exact and refinement keeps it interior.
            width = (self._hi - self._lo) / 4
            self._lo, self._hi = mid - width, mid + width
            return
        if (1 if val > 0 else -1) == self._sign_lo:
            self._lo = mid
        else:
            self._hi = mid

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Rational interval around beta of width at most ``width``."""
        while self._hi - self._lo > width:
            self.refine()
        return self._lo, self._hi

    def zero(self) -> "AlgebraicReal":
        return AlgebraicReal(self, (Fraction(0),) * self.degree)

    def one(self) -> "AlgebraicReal":
        return self.from_rational(1)

    def beta(self) -> "AlgebraicReal":
        if self.degree == 1:
            return self.from_rational(-self.min_poly[0])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return AlgebraicReal(self, tuple(coeffs))

    def from_rational(self, q: RationalLike) -> "AlgebraicReal":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return AlgebraicReal(self, tuple(coeffs))

    def element(self, coeffs: Sequence[RationalLike]) -> "AlgebraicReal":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError("too many coordinates")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return AlgebraicReal(self, tuple(cs))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{i}" for i, c in enumerate(self.min_poly) if c)
        return f"NumberField({terms}, beta in [{self._lo}, {self._hi}])"


class AlgebraicReal:
    """An element of Q(beta) as a rational vector in the power basis."""

    __slots__ = ("field", "coeffs", "_float")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs
        self._float = None

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other) -> "AlgebraicReal":
        if isinstance(other, AlgebraicReal):
            if other.field != self.field:
                raise FieldMismatchError("elements belong to different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicReal(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicReal(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return AlgebraicReal(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        raw = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    raw[i + j] += a * b
        out = raw[:d]
        for k in range(d, 2 * d - 1):
            c = raw[k]
            if c:
                row = self.field._pow_table[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return AlgebraicReal(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicReal":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # Extended Euclid of the element polynomial with min_poly over Q.
        a = list(self.field._frac_coeffs)
        b = list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def _trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        a, b = _trim(a), _trim(b)
        while b:
            q, r = _poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # a is a nonzero constant gcd.
        inv = [c / a[0] for c in s0]
        inv = inv[: self.field.degree]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return AlgebraicReal(self.field, tuple(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- exact decisions ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sign(self) -> int:
        """-1, 0 or +1, decided exactly."""
        if self.is_zero():
            return 0
        mid, err = self._approx()
        if abs(mid) > 4 * err + 1e-300:
            return 1 if mid > 0 else -1
        width = self.field._hi - self.field._lo
        while True:
            lo, hi = _interval_poly_eval(self.coeffs, self.field._lo, self.field._hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 2
            self.field.enclosure(width)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def _approx(self) -> tuple[float, float]:
        """(midpoint, error bound) from a rigorous rational enclosure.

        Used only as a fast path inside sign(); near-zero cases fall back to
        exact interval refinement.  The float conversions are padded so the
        bound stays valid despite rounding.
        """
        if self._float is None:
            lo, hi = _interval_poly_eval(
                self.coeffs, *self.field.enclosure(Fraction(1, 2**80))
            )
            mid = float((lo + hi) / 2)
            err = float((hi - lo) / 2) * 1.01 + abs(mid) * 1e-12
            self._float = (mid, err)
        return self._float

    def __float__(self):
        return self._approx()[0]

    def to_rational(self) -> Fraction:
        if any(self.coeffs[1:]):
            raise ValueError("element is irrational")
        return self.coeffs[0]

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*b")
            else:
                parts.append(f"{c}*b^{i}")
        return " + ".join(parts) if parts else "0"


# -- polynomial helpers over Q (ascending coefficient lists) ----------------


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, e in enumerate(b):
                out[i + j] += c * e
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b):
        k = len(a) - len(b)
        f = a[-1] * inv_lead
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        while a and a[-1] == 0:
            a.pop()
    return q, a


# -- operation-style wrappers ------------------------------------------------


def nf_add(a: AlgebraicReal, b: AlgebraicReal) -> AlgebraicReal:
    return a + b


def nf_sub(a: AlgebraicReal, b: AlgebraicReal) -> AlgebraicReal:
    return a - b


def nf_mul(a: AlgebraicReal, b: AlgebraicReal) -> AlgebraicReal:
    return a * b


def nf_sign(a: AlgebraicReal) -> int:
    return a.sign()


def fast_cmp(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """sign(a - b) using cached rigorous approximations when they already
    separate the values, falling back to exact refinement otherwise."""
    ma, ea = a._approx()
    mb, eb = b._approx()
    d = ma - mb
    margin = ea + eb + 1e-12 * (abs(ma) + abs(mb)) + 1e-300
    if d > margin:
        return 1
    if -d > margin:
        return -1
    return (a - b).sign()


# -- the Pisot test -----------------------------------------------------------


def _is_reciprocal(coeffs: tuple[int, ...]) -> bool:
    rev = tuple(reversed(coeffs))
    return coeffs == rev or coeffs == tuple(-c for c in rev)


def is_pisot(min_poly: Sequence[int], beta_interval: tuple[RationalLike, RationalLike]) -> bool:
    """True iff the root of min_poly in the interval is a Pisot number.

    Every conjugate other than beta must have modulus strictly below 1.
    Real conjugates are compared to +-1 exactly; complex conjugates are
    bounded via rigorous isolating-rectangle refinement.  Roots of modulus
    exactly 1 occur only for self-reciprocal polynomials, which are handled
    separately, so the refinement loop terminates.
    """
    coeffs = tuple(int(c) for c in min_poly)
    if coeffs[-1] != 1:
        raise ValueError("min_poly must be monic")
    poly = Poly(list(reversed(coeffs)), _X)
    if not poly.is_irreducible:
        raise ValueError("min_poly must be irreducible")
    d = len(coeffs) - 1
    lo, hi = Fraction(beta_interval[0]), Fraction(beta_interval[1])
    if poly.count_roots(lo, hi) != 1:
        raise ValueError("interval does not isolate a root")
    if d == 1:
        return True  # beta = -a_0 > 1, no conjugates
    if _is_reciprocal(coeffs):
        # Roots pair up as r, 1/r.  Degree 2 gives the single conjugate
        # +-1/beta; higher degree forces a second root of modulus >= 1.
        return d == 2
    one = sympy.Integer(1)
    for root in poly.all_roots(radicals=False):
        if root.is_real:
            if lo <= root <= hi:
                continue  # beta itself
            if not (-one < root < one):
                return False
        else:
            itv = root._get_interval()
            while True:
                ax, bx = Fraction(str(itv.ax)), Fraction(str(itv.bx))
                ay, by = Fraction(str(itv.ay)), Fraction(str(itv.by))
                far = max(ax * ax, bx * bx) + max(ay * ay, by * by)
                near_x = Fraction(0) if ax <= 0 <= bx else min(abs(ax), abs(bx))
                near_y = Fraction(0) if ay <= 0 <= by else min(abs(ay), abs(by))
                near = near_x * near_x + near_y * near_y
                if far < 1:
                    break
                if near > 1:
                    return False
                itv = itv.refine()
    return True
