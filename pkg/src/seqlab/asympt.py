"""High-precision asymptotics for positive counting sequences.

The pipeline estimates parameters of two model families from exact terms:

* stretched exponential  s_n ~ exp(a pi n^beta) / (c n^delta),
* power law              s_n ~ C mu^n n^g (1 + sum_k a_k / n^k),

via ratio sequences, exact elimination of inverse-power error terms,
successive-triple fits, square subsampling, Bulirsch-Stoer extrapolation,
and overdetermined-free linear amplitude fits.  Everything runs on mpmath
arbitrary-precision floats at a precision carried by an HpContext; the
purely rational operators (ratios, eliminations, subsampling) also accept
exact Fraction values, which the algebraic-identity tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Union

import mpmath

from .errors import (
    DomainError,
    IllConditioned,
    InsufficientTerms,
    NonPositiveValue,
    NoPositiveRoot,
    SingularSystem,
    TableauBlowup,
)
from .series import Poly

HpReal = mpmath.mpf
Real = Union[HpReal, Fraction, int]


@dataclass(frozen=True)
class HpContext:
    """Working precision in decimal digits, plus guard digits for rounding."""

    digits: int = 100
    guard: int = 10

    def work(self):
        """Context manager setting mpmath precision to digits + guard."""
        return mpmath.workdps(self.digits + self.guard)

    def mpf(self, x) -> HpReal:
        with self.work():
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpf(x)


@dataclass(frozen=True)
class HpSeq:
    """Consecutively indexed high-precision values (index = offset + position).

    Values are normally mpmath floats at the context precision; the rational
    operators below work equally on exact Fraction values.
    """

    offset: int
    values: tuple
    ctx: HpContext = HpContext()

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last_index(self) -> int:
        return self.offset + len(self.values) - 1

    def value(self, n: int):
        if not self.offset <= n <= self.last_index:
            raise IndexError(f"index {n} outside [{self.offset}, {self.last_index}]")
        return self.values[n - self.offset]

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.values))

    def slice_from(self, n: int) -> "HpSeq":
        if n <= self.offset:
            return self
        return HpSeq(n, self.values[n - self.offset :], self.ctx)

    def tail(self, k: int) -> "HpSeq":
        k = min(k, len(self.values))
        return HpSeq(self.last_index - k + 1, self.values[-k:], self.ctx)

    def map(self, fn: Callable) -> "HpSeq":
        with self.ctx.work():
            return HpSeq(self.offset, tuple(fn(v) for v in self.values), self.ctx)

    @staticmethod
    def from_sequence(seq, ctx: HpContext = HpContext()) -> "HpSeq":
        with ctx.work():
            return HpSeq(seq.offset, tuple(mpmath.mpf(t) for t in seq.terms), ctx)

    @staticmethod
    def from_values(offset: int, values, ctx: HpContext = HpContext()) -> "HpSeq":
        return HpSeq(offset, tuple(values), ctx)


@dataclass(frozen=True)
class StretchedModel:
    """s_n ~ exp(a pi n^beta) / (c n^delta) with beta in (0, 1)."""

    a: HpReal
    beta: Fraction
    delta: HpReal
    c: HpReal


@dataclass(frozen=True)
class PowerLawModel:
    """s_n ~ C mu^n n^g (1 + sum_k corrections[k-1] / n^k)."""

    mu: HpReal
    g: HpReal
    C: Optional[HpReal]
    corrections: tuple = ()


# ---------------------------------------------------------------------------
# rational-exact estimators
# ---------------------------------------------------------------------------

def ratios(s: HpSeq) -> HpSeq:
    """r_n = s_n / s_(n-1), offset shifted by one."""
    with s.ctx.work():
        out = []
        for i in range(1, len(s.values)):
            if s.values[i - 1] == 0:
                raise ZeroDivisionError(
                    f"zero term at index {s.offset + i - 1}"
                )
            out.append(s.values[i] / s.values[i - 1])
    return HpSeq(s.offset + 1, tuple(out), s.ctx)


def elim_power(s: HpSeq, p: int) -> HpSeq:
    """(n^p s_n - (n-1)^p s_(n-1)) / (n^p - (n-1)^p), offset shifted by one.

    Exactly cancels an additive a/n^p term: on s_n = s + a/n^p the output is
    constantly s.  Composing p=1 then p=2 does NOT cancel a/n + b/n^2
    exactly (the p=1 pass leaves a b/(n(n-1)) residue, not b/n^2); the
    composition is still a second-order accelerator, with exact residue
    b / ((2n-1)(n-1)(n-2)).
    """
    if p < 1:
        raise ValueError("power p must be >= 1")
    with s.ctx.work():
        out = []
        for i in range(1, len(s.values)):
            n = s.offset + i
            hi, lo = n**p, (n - 1) ** p
            out.append((hi * s.values[i] - lo * s.values[i - 1]) / (hi - lo))
    return HpSeq(s.offset + 1, tuple(out), s.ctx)


def square_subsample(s):
    """Pick out indices 1, 4, 9, ...: output index k holds the term at k*k.

    Accepts an integer Sequence or an HpSeq and returns the same kind,
    reindexed consecutively from 1.
    """
    picker = s.value if isinstance(s, HpSeq) else s.term
    k_max = 1
    while (k_max + 1) ** 2 <= s.last_index:
        k_max += 1
    if s.last_index < 1 or s.offset > 1:
        raise InsufficientTerms("need terms at the square indices 1, 4, 9, ...")
    picked = tuple(picker(k * k) for k in range(1, k_max + 1))
    if isinstance(s, HpSeq):
        return HpSeq(1, picked, s.ctx)
    return type(s)(1, picked)


# ---------------------------------------------------------------------------
# stretched-exponential pipeline
# ---------------------------------------------------------------------------

def loglog_gradient(s: HpSeq) -> HpSeq:
    """Two-point gradient of log(s_n) against log(n); needs offset >= 1."""
    if s.offset < 1:
        raise ValueError("log-log gradient needs indices >= 1")
    with s.ctx.work():
        logs = []
        for n, v in zip(s.indices(), s.values):
            if v <= 0:
                raise NonPositiveValue(f"non-positive value at index {n}")
            logs.append(mpmath.log(v))
        out = tuple(
            (logs[i] - logs[i - 1])
            / (mpmath.log(s.offset + i) - mpmath.log(s.offset + i - 1))
            for i in range(1, len(logs))
        )
    return HpSeq(s.offset + 1, out, s.ctx)


def stretched_lambda(s: HpSeq, beta: Fraction = Fraction(1, 2)) -> HpSeq:
    """lambda_n = log(s_n) / (pi n^beta), starting at index max(offset, 1)."""
    s = s.slice_from(1)
    with s.ctx.work():
        b = s.ctx.mpf(beta)
        out = []
        for n, v in zip(s.indices(), s.values):
            if v <= 0:
                raise NonPositiveValue(f"non-positive value at index {n}")
            out.append(mpmath.log(v) / (mpmath.pi * mpmath.power(n, b)))
    return HpSeq(s.offset, tuple(out), s.ctx)


def stretched_triple_fit(lam: HpSeq) -> tuple[HpSeq, HpSeq, HpSeq]:
    """Fit lambda_n = e1 + e2 log(n)/(pi sqrt n) + e3/(pi sqrt n) on triples.

    Each consecutive index triple (k-1, k, k+1) yields one exact 3x3 solve;
    the three returned estimator sequences (offset shifted by one) estimate
    the stretched-exponential parameters a, -delta and -log c.
    """
    if len(lam) < 3:
        raise InsufficientTerms("triple fit needs at least 3 values")
    if lam.offset < 1:
        raise ValueError("triple fit needs indices >= 1")
    with lam.ctx.work():
        def basis(n: int):
            root = mpmath.pi * mpmath.sqrt(n)
            return (mpmath.mpf(1), mpmath.log(n) / root, 1 / root)

        rows = [basis(n) for n in lam.indices()]
        e1, e2, e3 = [], [], []
        for k in range(1, len(lam) - 1):
            (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = rows[k - 1 : k + 2]
            y1, y2, y3 = lam.values[k - 1 : k + 2]
            det = (
                a1 * (b2 * c3 - b3 * c2)
                - b1 * (a2 * c3 - a3 * c2)
                + c1 * (a2 * b3 - a3 * b2)
            )
            if det == 0:
                raise SingularSystem(f"degenerate triple at index {lam.offset + k}")
            d1 = (
                y1 * (b2 * c3 - b3 * c2)
                - b1 * (y2 * c3 - y3 * c2)
                + c1 * (y2 * b3 - y3 * b2)
            )
            d2 = (
                a1 * (y2 * c3 - y3 * c2)
                - y1 * (a2 * c3 - a3 * c2)
                + c1 * (a2 * y3 - a3 * y2)
            )
            d3 = (
                a1 * (b2 * y3 - b3 * y2)
                - b1 * (a2 * y3 - a3 * y2)
                + y1 * (a2 * b3 - a3 * b2)
            )
            e1.append(d1 / det)
            e2.append(d2 / det)
            e3.append(d3 / det)
    off = lam.offset + 1
    return (
        HpSeq(off, tuple(e1), lam.ctx),
        HpSeq(off, tuple(e2), lam.ctx),
        HpSeq(off, tuple(e3), lam.ctx),
    )


def summarize_stretched(
    e1: HpSeq, e2: HpSeq, e3: HpSeq, beta: Fraction = Fraction(1, 2), tail: int = 10
) -> tuple[StretchedModel, dict]:
    """Last-index summary of the triple-fit estimators with tail spreads."""
    with e1.ctx.work():
        model = StretchedModel(
            a=e1.values[-1],
            beta=beta,
            delta=-e2.values[-1],
            c=mpmath.exp(-e3.values[-1]),
        )
        spreads = {
            name: max(seq.tail(tail).values) - min(seq.tail(tail).values)
            for name, seq in (("a", e1), ("delta", e2), ("log_c", e3))
        }
    return model, spreads


def stretched_amplitude_seq(s: HpSeq, a: Real, beta: Fraction, delta: Real) -> HpSeq:
    """Amplitude estimates c_n = s_n n^delta exp(-a pi n^beta) for each index.

    On s_n ~ A exp(a pi n^beta) / n^delta these converge to the amplitude A,
    which is the reciprocal of the denominator constant c in StretchedModel
    (both presentations of the same constant occur; reports carry both).
    Subsampled at square indices these form the extrapolation input for the
    half-power case beta = 1/2.
    """
    s = s.slice_from(1)
    with s.ctx.work():
        a_, b_, d_ = (s.ctx.mpf(t) for t in (a, beta, delta))
        out = []
        for n, v in zip(s.indices(), s.values):
            if v <= 0:
                raise NonPositiveValue(f"non-positive value at index {n}")
            out.append(
                v * mpmath.power(n, d_)
                * mpmath.exp(-a_ * mpmath.pi * mpmath.power(n, b_))
            )
    return HpSeq(s.offset, tuple(out), s.ctx)


# ---------------------------------------------------------------------------
# power-law pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerLawDiagnostics:
    """g_n = (r_n/mu - 1) n and its first elimination, with a summary."""

    g_seq: HpSeq
    g2_seq: HpSeq
    g_estimate: HpReal
    g_spread: HpReal
    model: PowerLawModel


def _float_values(s: HpSeq) -> HpSeq:
    """Coerce exact rational values to context floats for float-domain ops."""
    if any(isinstance(v, Fraction) for v in s.values):
        return s.map(s.ctx.mpf)
    return s


def powerlaw_pipeline(s: HpSeq, mu: Real, tail: int = 10) -> PowerLawDiagnostics:
    """Estimate the power g of s_n ~ D mu^n n^g from ratios r_n = mu(1 + g/n + ...)."""
    r = _float_values(ratios(s))
    with s.ctx.work():
        mu_ = s.ctx.mpf(mu)
        if mu_ <= 0:
            raise ValueError("mu must be positive")
        g_seq = HpSeq(
            r.offset,
            tuple((v / mu_ - 1) * n for n, v in zip(r.indices(), r.values)),
            s.ctx,
        )
        g2 = elim_power(g_seq, 1)
        est = g2.values[-1]
        spread = max(g2.tail(tail).values) - min(g2.tail(tail).values)
    return PowerLawDiagnostics(
        g_seq=g_seq,
        g2_seq=g2,
        g_estimate=est,
        g_spread=spread,
        model=PowerLawModel(mu=mu_, g=est, C=None),
    )


# ---------------------------------------------------------------------------
# Bulirsch-Stoer extrapolation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BstResult:
    value: HpReal
    spread: HpReal
    depth: int


def bst_extrapolate(s: HpSeq, w) -> BstResult:
    """Bulirsch-Stoer sequence-to-limit extrapolation with exponent w.

    Tableau: T(-1) = 0, T(0) = s, and

        T(m, n) = T(m-1, n+1) + (T(m-1, n+1) - T(m-1, n)) /
                  [ (x_n / x_(n+m))^w (1 - D/Dp) - 1 ]

    with abscissae x_n = 1/n, D = T(m-1, n+1) - T(m-1, n) and
    Dp = T(m-1, n+1) - T(m-2, n+1).  A vanishing D means the previous depth
    already converged there, so the entry propagates unchanged; a vanishing
    Dp likewise kills the correction in the limit.  A vanishing bracket with
    D nonzero is a genuine pole and raises TableauBlowup.  Returns the
    deepest entry and the spread against the previous depth.
    """
    if len(s) < 4:
        raise InsufficientTerms("extrapolation needs at least 4 terms")
    if s.offset < 1:
        raise ValueError("abscissae 1/n need indices >= 1")
    w = Fraction(w)
    if w <= 0:
        raise ValueError("exponent w must be positive")
    s = _float_values(s)
    n_terms = len(s)
    with s.ctx.work():
        w_ = s.ctx.mpf(w)
        prev2 = [mpmath.mpf(0)] * (n_terms + 1)
        prev1 = list(s.values)
        for m in range(1, n_terms):
            cur = []
            for i in range(n_terms - m):
                hi, lo = prev1[i + 1], prev1[i]
                delta = hi - lo
                if delta == 0:
                    cur.append(hi)
                    continue
                dprev = hi - prev2[i + 1]
                if dprev == 0:
                    cur.append(hi)
                    continue
                n = s.offset + i
                ratio = mpmath.power(mpmath.mpf(n + m) / n, w_)
                bracket = ratio * (1 - delta / dprev) - 1
                if bracket == 0:
                    raise TableauBlowup(
                        f"zero denominator at depth {m}, index {n}"
                    )
                cur.append(hi + delta / bracket)
            prev2, prev1 = prev1, cur
        value = prev1[0]
        spread = abs(value - prev2[1]) if len(prev2) > 1 else mpmath.mpf(0)
    return BstResult(value=value, spread=spread, depth=n_terms - 1)


# ---------------------------------------------------------------------------
# amplitude fit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeFit:
    model: PowerLawModel
    c_spread: HpReal
    cond_estimate: HpReal
    window_end: int


def _norm1(mat) -> HpReal:
    return max(
        sum(abs(mat[i, j]) for i in range(mat.rows)) for j in range(mat.cols)
    )


def amplitude_fit(s, mu: Real, g, K: int, ctx: HpContext) -> AmplitudeFit:
    """Fit s_n n^g / mu^n = C (1 + a_1/n + ... + a_K/n^K) on the last K+1 indices.

    `s` is an exact integer Sequence; `g` is the normalizing power (the
    fitted model for s_n itself has exponent -g).  The (K+1)-point linear
    system is solved at full context precision; the fit is repeated on
    windows ending 1..9 indices earlier and the spread of C across windows
    is reported, along with a 1-norm condition estimate of the fit matrix.
    Raises IllConditioned when the matrix is singular to working precision.
    """
    if K < 0:
        raise ValueError("need K >= 0")
    if len(s) < K + 1:
        raise InsufficientTerms(f"need at least K+1 = {K + 1} terms")
    shifts = min(10, len(s) - (K + 1) + 1)
    with ctx.work():
        mu_ = ctx.mpf(mu)
        g_ = ctx.mpf(Fraction(g) if not isinstance(g, (int, Fraction)) else g)
        log_mu = mpmath.log(mu_)

        def scaled(n: int) -> HpReal:
            return (
                mpmath.mpf(s.term(n))
                * mpmath.exp(g_ * mpmath.log(n) - n * log_mu)
            )

        c_values = []
        cond = None
        sol0 = None
        for shift in range(shifts):
            end = s.last_index - shift
            ns = list(range(end - K, end + 1))
            if ns[0] < max(s.offset, 1):
                break
            mat = mpmath.matrix(
                [[mpmath.power(n, -k) for k in range(K + 1)] for n in ns]
            )
            rhs = mpmath.matrix([scaled(n) for n in ns])
            try:
                sol = mpmath.lu_solve(mat, rhs)
            except ZeroDivisionError as exc:
                raise IllConditioned("fit matrix is singular to working precision") from exc
            if shift == 0:
                sol0 = sol
                try:
                    cond = _norm1(mat) * _norm1(mpmath.inverse(mat))
                except ZeroDivisionError as exc:
                    raise IllConditioned(
                        "fit matrix is singular to working precision"
                    ) from exc
                if cond > mpmath.mpf(10) ** (ctx.digits - 5):
                    raise IllConditioned(
                        f"condition estimate 10^{mpmath.nstr(mpmath.log10(cond), 4)} "
                        f"leaves no correct digits at {ctx.digits} digits",
                        cond_estimate=cond,
                    )
            c_values.append(sol[0])
        c0 = c_values[0]
        spread = max(abs(c - c0) for c in c_values)
        corrections = tuple(sol0[k] / c0 for k in range(1, K + 1))
    return AmplitudeFit(
        model=PowerLawModel(mu=mu_, g=-g_, C=c0, corrections=corrections),
        c_spread=spread,
        cond_estimate=cond,
        window_end=s.last_index,
    )


# ---------------------------------------------------------------------------
# exact root isolation
# ---------------------------------------------------------------------------

def _int_poly(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in p.coeffs]


def _poly_div_frac(a: list[Fraction], b: list[Fraction]):
    """Polynomial division over Q: returns (quotient, remainder)."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _sturm_chain(p: list[int]) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in p]
    p1 = [Fraction(i * c) for i, c in enumerate(p)][1:]
    chain = [p0, p1]
    while chain[-1]:
        _, rem = _poly_div_frac(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _eval_frac(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval_frac(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def poly_smallest_positive_root(p: Poly, digits: int = 50) -> HpReal:
    """Smallest positive real root, isolated exactly then bisected to `digits`.

    Isolation uses a Sturm chain of the square-free part over exact
    rationals, so no positive root can be missed; the returned value
    satisfies |p(root)| < 10^(-digits+2).  Raises NoPositiveRoot when the
    polynomial has no root in (0, inf).
    """
    if p.is_zero() or p.degree < 1:
        raise NoPositiveRoot("polynomial has no positive real root")
    ints = _int_poly(p)
    # strip roots at the origin; positive roots are unaffected
    first = next(i for i, c in enumerate(ints) if c)
    ints = ints[first:]
    if len(ints) < 2:
        raise NoPositiveRoot("polynomial has no positive real root")
    chain = _sturm_chain(ints)
    # square-free part = p / gcd(p, p'); the gcd is the last nonzero chain entry
    if len(chain[-1]) > 1:
        sf, _ = _poly_div_frac([Fraction(c) for c in ints], chain[-1])
        ints = _primitive_from_frac(sf)
        chain = _sturm_chain(ints)
    sf_poly = chain[0]

    bound = Fraction(1) + max(abs(Fraction(c)) for c in ints[:-1]) / abs(ints[-1])

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    if count(Fraction(0), bound) < 1:
        raise NoPositiveRoot("no root in (0, upper bound]")
    # shrink (lo, hi] until it brackets exactly the smallest positive root;
    # invariant: no root <= lo, at least one root in (lo, hi]
    lo, hi = Fraction(0), bound
    exact = None
    while True:
        if count(lo, hi) == 1:
            if _eval_frac(sf_poly, hi) == 0:
                exact = hi
                break
            break
        mid = (lo + hi) / 2
        if count(lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if exact is None:
        flo = _eval_frac(sf_poly, lo)
        steps = int((digits + 6) * 3.33) + bound.numerator.bit_length()
        width = Fraction(1, 10 ** (digits + 5))
        for _ in range(steps):
            if hi - lo < width:
                break
            mid = (lo + hi) / 2
            fmid = _eval_frac(sf_poly, mid)
            if fmid == 0:
                lo = hi = mid
                break
            if (fmid > 0) == (flo > 0):
                lo, flo = mid, fmid
            else:
                hi = mid
    root = exact if exact is not None else (lo + hi) / 2
    with mpmath.workdps(digits + 10):
        return mpmath.mpf(root.numerator) / root.denominator


def _primitive_from_frac(fr: list[Fraction]) -> list[int]:
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return [c // max(g, 1) for c in ints]


# ---------------------------------------------------------------------------
# builtin high-precision evaluation
# ---------------------------------------------------------------------------

_BUILTINS = {
    "exp": mpmath.exp,
    "log": mpmath.log,
    "sqrt": mpmath.sqrt,
    "cos": mpmath.cos,
    "arccos": mpmath.acos,
}


def hp_eval_builtin(fn: str, x=None, ctx: HpContext = HpContext()) -> HpReal:
    """Evaluate one named function {exp, log, sqrt, cos, arccos, pi} at x.

    Results are correct to within a few ulps at the context precision;
    domain violations (log of a non-positive value, sqrt of a negative,
    arccos outside [-1, 1]) raise DomainError.
    """
    with ctx.work():
        if fn == "pi":
            return +mpmath.pi
        if fn not in _BUILTINS:
            raise DomainError(f"unknown builtin {fn!r}")
        x_ = ctx.mpf(x)
        if fn == "log" and x_ <= 0:
            raise DomainError("log needs a positive argument")
        if fn == "sqrt" and x_ < 0:
            raise DomainError("sqrt needs a non-negative argument")
        if fn == "arccos" and abs(x_) > 1:
            raise DomainError("arccos needs an argument in [-1, 1]")
        return _BUILTINS[fn](x_)
