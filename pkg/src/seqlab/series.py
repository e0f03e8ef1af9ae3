"""Exact arithmetic substrate: rationals, dense polynomials, truncated power series.

Rational scalars are `fractions.Fraction` (arbitrary precision, always in lowest
terms with positive denominator), re-exported here as `BigRat`.  On top of that
sit two immutable value types:

* `Poly` -- dense univariate polynomial, coefficients ascending, no trailing
  zeros (the zero polynomial is the empty coefficient tuple).
* `TruncSeries` -- power series known exactly up to (but excluding) a stated
  truncation order.  Arithmetic returns results at the weakest participating
  order, so precision loss is always explicit, never silent.

All operations are pure; nothing here mutates its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence as Seq, Union

from .errors import ZeroConstantTerm

BigRat = Fraction

Scalar = Union[int, Fraction]


def _as_rat(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate by Horner's rule; works for Fraction, int, or mpf input."""
        acc = 0 * x if self.coeffs else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, shift: Scalar) -> "Poly":
        """Return p(t + shift) expanded in t."""
        out = Poly([])
        lin = Poly([_as_rat(shift), Fraction(1)])
        for c in reversed(self.coeffs):
            out = out * lin + Poly([c])
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return tuple(int(c) for c in self.coeffs)

    def content(self) -> int:
        """gcd of the integer coefficients (polynomial must be integral)."""
        g = 0
        for c in self.int_coeffs():
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "Poly":
        """Divide out the content; sign is left untouched."""
        g = self.content()
        return self if g in (0, 1) else Poly([c / g for c in self.coeffs])

    @staticmethod
    def from_ints(cs: Iterable[int]) -> "Poly":
        return Poly(list(cs))

    def format(self, var: str = "x") -> str:
        """Human-readable form, highest power first, e.g. '2*n^2 + 31*n + 120'."""
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                body = f"{head}{var}" + (f"^{e}" if e > 1 else "")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def int_horner(coeffs: Iterable[int], n: int) -> int:
    """Evaluate an integer coefficient list (ascending powers) at integer n."""
    acc = 0
    for c in reversed(tuple(coeffs)):
        acc = acc * n + c
    return acc


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class TruncSeries:
    """Power series with coefficients 0..order-1 known exactly.

    `order` is the truncation order: the series is congruent to the stored
    coefficients mod x^order.  Binary operations return the weakest order of
    their operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        object.__setattr__(
            self, "coeffs", tuple(_as_rat(c) for c in coeffs)
        )
        if not self.coeffs:
            raise ValueError("a TruncSeries needs order >= 1")

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("TruncSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("TruncSeries", self.coeffs))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 6 else ""
        return f"TruncSeries([{head}{tail}], order={self.order})"

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[:order])

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n)]
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; requires a unit constant term.

        inv(a)[n] is determined by the first n+1 coefficients of a, so the
        result carries the same order.
        """
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTerm("series has zero constant term")
        n = self.order
        inv0 = 1 / a[0]
        out = [Fraction(0)] * n
        out[0] = inv0
        for k in range(1, n):
            s = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * out[k - i]
            out[k] = -s * inv0
        return TruncSeries(out)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k (k >= 0), keeping the truncation order."""
        if k < 0:
            raise ValueError("negative shift on a power series")
        return TruncSeries(
            (Fraction(0),) * min(k, self.order) + self.coeffs[: self.order - k]
        )

    def derivative(self) -> "TruncSeries":
        """Formal derivative; the result is known to one order less."""
        if self.order == 1:
            return TruncSeries([Fraction(0)])
        return TruncSeries(
            [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def mul_poly(self, p: Poly) -> "TruncSeries":
        """Multiply by a polynomial without losing truncation order."""
        n = self.order
        out = [Fraction(0)] * n
        for i, a in enumerate(p.coeffs):
            if a and i < n:
                for j in range(n - i):
                    b = self.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncSeries(out)

    def pow(self, e: int) -> "TruncSeries":
        if e < 0:
            raise ValueError("negative power; invert first")
        acc = TruncSeries((1,) + (0,) * (self.order - 1))
        for _ in range(e):
            acc = acc * self
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @staticmethod
    def one(order: int) -> "TruncSeries":
        return TruncSeries((1,) + (0,) * (order - 1))

    @staticmethod
    def from_poly(p: Poly, order: int) -> "TruncSeries":
        cs = list(p.coeffs[:order])
        cs += [Fraction(0)] * (order - len(cs))
        return TruncSeries(cs)


# Functional aliases: some call sites read better with explicit names.
def ps_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def ps_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def ps_inv(a: TruncSeries) -> TruncSeries:
    return a.inverse()


def q_pochhammer(n: int, order: int) -> TruncSeries:
    """(q;q)_n = prod_{k=1..n} (1 - q^k), truncated to `order` coefficients."""
    if n < 0:
        raise ValueError("q-Pochhammer needs n >= 0")
    out = [0] * order
    out[0] = 1
    for k in range(1, n + 1):
        if k >= order:
            break
        # multiply in place by (1 - q^k), highest coefficient first
        for i in range(order - 1, k - 1, -1):
            out[i] -= out[i - k]
    return TruncSeries(out)
