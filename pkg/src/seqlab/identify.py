"""Recognition of high-precision real constants.

Three escalating strategies: continued-fraction rational reconstruction,
rational multiples of a small ordered dictionary of common irrationals, and
integer minimal polynomials found by exact LLL lattice reduction.  Every
positive identification is re-verified numerically before being returned;
the certified-digits field records how many decimal digits the candidate
and the input actually share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath

from .errors import PrecisionTooLow, RankDeficient
from .series import Poly

Payload = Union[Fraction, tuple, Poly]


@dataclass(frozen=True)
class Identification:
    """A recognized constant: what it is, and to how many digits it checks out.

    kind is one of "rational", "dictionary-multiple", "algebraic"; payload is
    a Fraction, a (multiplier-tag, Fraction) pair, or an integer Poly.
    """

    kind: str
    payload: Payload
    certified_digits: int


@dataclass(frozen=True)
class MultiplierDictionary:
    """Ordered (tag, value-builder) pairs; values computed at call precision."""

    entries: tuple

    def __post_init__(self):
        tags = [t for t, _ in self.entries]
        if len(set(tags)) != len(tags):
            raise ValueError("multiplier tags must be unique")

    def items(self):
        return self.entries

    @staticmethod
    def default() -> "MultiplierDictionary":
        return MultiplierDictionary(
            (
                ("1", lambda: mpmath.mpf(1)),
                ("sqrt(2)", lambda: mpmath.sqrt(2)),
                ("sqrt(3)", lambda: mpmath.sqrt(3)),
                ("sqrt(5)", lambda: mpmath.sqrt(5)),
                ("pi", lambda: +mpmath.pi),
                ("sqrt(pi)", lambda: mpmath.sqrt(mpmath.pi)),
                ("1/pi", lambda: 1 / mpmath.pi),
                ("pi^2", lambda: mpmath.pi**2),
                ("2^(1/3)", lambda: mpmath.cbrt(2)),
                ("3^(1/3)", lambda: mpmath.cbrt(3)),
            )
        )


def _input_digits(digits: Optional[int]) -> int:
    """Digits the input is certified to: explicit, else the ambient precision."""
    return digits if digits is not None else mpmath.mp.dps


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def identify_rational(
    x, maxden: int = 1000, digits: Optional[int] = None
) -> Optional[Fraction]:
    """Best rational p/q with q <= maxden, if it matches x to nearly full digits.

    The candidate is the continued-fraction best approximation; it is
    accepted only when |x - p/q| < 10^(4 - digits), where `digits` defaults
    to the ambient working precision.  Values carrying fewer correct digits
    than the ambient precision should pass their certified digit count.
    """
    d = _input_digits(digits)
    with mpmath.workdps(max(d, 15) + 10):
        x = mpmath.mpf(x)
        if not mpmath.isfinite(x):
            return None
        cand = _mpf_to_fraction(x).limit_denominator(maxden)
        err = abs(x - mpmath.mpf(cand.numerator) / cand.denominator)
        if err < mpmath.mpf(10) ** (4 - d):
            return cand
    return None


def _certified_digits(err, cap: int) -> int:
    if err == 0:
        return cap
    return min(cap, int(-mpmath.log10(err)))


def identify_with_multipliers(
    x,
    dictionary: Optional[MultiplierDictionary] = None,
    maxden: int = 1000,
    digits: Optional[int] = None,
) -> Optional[Identification]:
    """First dictionary multiplier m (in order) with x/m a certified rational.

    Returns an Identification with payload (tag, p/q) meaning x = (p/q) * m,
    or None when no entry matches within the precision bound.
    """
    dictionary = dictionary or MultiplierDictionary.default()
    d = _input_digits(digits)
    with mpmath.workdps(max(d, 15) + 10):
        x = mpmath.mpf(x)
        if not mpmath.isfinite(x):
            return None
        for tag, build in dictionary.items():
            m = build()
            frac = identify_rational(x / m, maxden, digits=d)
            if frac is None:
                continue
            err = abs(x - m * frac.numerator / frac.denominator)
            cert = _certified_digits(err, d)
            if cert >= d - 4:
                return Identification("dictionary-multiple", (tag, frac), cert)
    return None


# ---------------------------------------------------------------------------
# exact LLL reduction and minimal polynomials
# ---------------------------------------------------------------------------

def _gram_schmidt(b: list[list[int]]):
    """Exact Gram-Schmidt data: orthogonal vectors, coefficients mu, norms."""
    n = len(b)
    star: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(c) for c in b[i]]
        for j in range(i):
            if norms[j] == 0:
                raise RankDeficient("basis rows are linearly dependent")
            mu[i][j] = Fraction(
                sum(Fraction(b[i][k]) * star[j][k] for k in range(len(v)))
            ) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        norms.append(sum(c * c for c in v))
    if norms and norms[-1] == 0:
        raise RankDeficient("basis rows are linearly dependent")
    return star, mu, norms


def lll_reduce(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce integer basis rows with parameter delta, exactly.

    Size-reduction and the Lovasz condition are enforced in rational
    arithmetic, so the output provably satisfies them; raises RankDeficient
    on linearly dependent input rows.
    """
    b = [list(map(int, row)) for row in basis]
    if not b or len({len(r) for r in b}) != 1:
        raise ValueError("basis must be a non-empty rectangular integer matrix")
    n = len(b)
    _, mu, norms = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                for l in range(j):
                    mu[k][l] -= q * mu[j][l]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            _, mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def min_poly(x, maxdeg: int, digits: int) -> Optional[Poly]:
    """Integer polynomial of minimal degree <= maxdeg with x as a near-root.

    Builds the integer-relation lattice [identity | round(10^(digits-10) x^i)]
    and LLL-reduces it, trying degrees in increasing order so the first
    verified hit has minimal degree.  A candidate p is accepted only if
    |p(x)| < 10^(5 - digits) * ||p||_inf * max(1, |x|)^deg, a threshold a few
    orders above evaluation roundoff but far below the residual of any
    accidental lattice relation at this scaling.  Returns None if no degree
    yields a verified relation; raises PrecisionTooLow when digits is too
    small to separate the two regimes (digits < 10 * (maxdeg + 1)).
    """
    if digits < 10 * (maxdeg + 1):
        raise PrecisionTooLow(
            f"need at least {10 * (maxdeg + 1)} digits for degree {maxdeg}"
        )
    scale_exp = digits - 10
    with mpmath.workdps(digits + 10):
        x = mpmath.mpf(x)
        scale = mpmath.mpf(10) ** scale_exp
        grow = max(mpmath.mpf(1), abs(x))
        for deg in range(1, maxdeg + 1):
            rows = []
            for i in range(deg + 1):
                row = [0] * (deg + 1) + [int(mpmath.nint(scale * x**i))]
                row[i] = 1
                rows.append(row)
            try:
                reduced = lll_reduce(rows)
            except RankDeficient:
                continue
            threshold = mpmath.mpf(10) ** (5 - digits) * grow**deg
            for vec in sorted(reduced, key=lambda r: sum(c * c for c in r[:-1])):
                coeffs = vec[: deg + 1]
                if not any(coeffs[1:]):
                    continue
                p = Poly.from_ints(coeffs).primitive()
                if p.coeffs[-1] < 0:
                    p = -p
                norm = max(abs(int(c)) for c in p.coeffs)
                if abs(p(x)) < threshold * norm:
                    return p
    return None
