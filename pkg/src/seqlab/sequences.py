"""Integer counting sequences: exact generators, brute-force oracles, expanders.

Three families are built in:

* L-convex polyominoes counted by area (every ordered pair of cells joined by
  a monotone internal path with at most one turn),
* stack polyominoes counted by area (unimodal bargraphs),
* ascent sequences avoiding a short pattern, counted by length.

Each family has a fast exact generator working from a functional equation or
recurrence, plus an independent brute-force enumerator used as an oracle.
The generators work on plain Python int arrays; all series identities are
evaluated with one running numerator over a common denominator product, so
the cost stays at O(N^2) coefficient operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    BranchAmbiguous,
    BudgetExceeded,
    InconsistentInit,
    LeadingCoeffVanishes,
    NonIntegral,
    NotARoot,
)
from .guess import AlgEq, PRecurrence
from .series import Poly, TruncSeries


@dataclass(frozen=True)
class Sequence:
    """Exact integer terms for consecutive indices offset, offset+1, ..."""

    offset: int
    terms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def last_index(self) -> int:
        return self.offset + len(self.terms) - 1

    def term(self, n: int) -> int:
        """Term at absolute index n."""
        if not self.offset <= n <= self.last_index:
            raise IndexError(f"index {n} outside [{self.offset}, {self.last_index}]")
        return self.terms[n - self.offset]

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.terms))

    def head(self, k: int) -> "Sequence":
        return Sequence(self.offset, self.terms[:k])


@dataclass(frozen=True)
class Pattern:
    """A classical pattern over totally ordered letters, e.g. 201 or 011.

    Letters are order-normalized on construction: the distinct values are
    replaced by their ranks, so Pattern([3, 0, 1]) == Pattern([2, 0, 1]).
    Repeated letters stay equal and an occurrence requires equality there.
    """

    letters: tuple[int, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("pattern must have length >= 1")
        ranks = {v: r for r, v in enumerate(sorted(set(self.letters)))}
        object.__setattr__(
            self, "letters", tuple(ranks[v] for v in self.letters)
        )

    @staticmethod
    def from_string(s: str) -> "Pattern":
        if not s.isdigit():
            raise ValueError(f"pattern string must be digits, got {s!r}")
        return Pattern(tuple(int(ch) for ch in s))

    def __str__(self) -> str:
        return "".join(str(v) for v in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


# ---------------------------------------------------------------------------
# in-place binomial multiply/divide on int coefficient arrays
# ---------------------------------------------------------------------------

def _mul_one_minus_qm(a: list[int], m: int) -> None:
    """a *= (1 - q^m), truncated to len(a)."""
    for i in range(len(a) - 1, m - 1, -1):
        a[i] -= a[i - m]


def _div_one_minus_qm(a: list[int], m: int) -> None:
    """a /= (1 - q^m), truncated to len(a) (stride-m prefix sums)."""
    for i in range(m, len(a)):
        a[i] += a[i - m]


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def gen_lconvex_area(n_terms: int) -> Sequence:
    """L-convex polyominoes by area: 1, 1, 2, 6, 15, 35, ... (offset 0).

    The area generating function is

        A(q) = 1 + sum_{k>=0} q^(k+1) f_k(q)
                   / [ (1-q)^2 (1-q^2)^2 ... (1-q^k)^2 (1-q^(k+1)) ],

    with f_0 = 1, f_1 = 1 + 2q - q^2 and
    f_k = 2 f_(k-1) - (1-q^k)^2 f_(k-2).  The k-th summand starts at q^(k+1),
    so summands with k+1 >= n_terms cannot change any kept coefficient.

    The sum is accumulated as a single numerator over the deepest common
    denominator, which is divided out once at the end.
    """
    if n_terms < 1:
        raise ValueError("need n_terms >= 1")
    big_n = n_terms
    num = [0] * big_n
    f_prev2: list[int] = []
    f_prev1: list[int] = []
    k_max = big_n - 2
    for k in range(0, k_max + 1):
        if k == 0:
            f_k = [1] + [0] * (big_n - 1)
        elif k == 1:
            f_k = [1, 2, -1] + [0] * (big_n - 3) if big_n >= 3 else [1, 2][:big_n]
            f_k += [0] * (big_n - len(f_k))
        else:
            # f_k = 2 f_(k-1) - (1 - 2 q^k + q^(2k)) f_(k-2)
            f_k = [2 * c for c in f_prev1]
            for i in range(big_n):
                c = f_prev2[i]
                if c:
                    f_k[i] -= c
                    if i + k < big_n:
                        f_k[i + k] += 2 * c
                    if i + 2 * k < big_n:
                        f_k[i + 2 * k] -= c
        # bring num over the denominator for summand k, then add q^(k+1) f_k
        if k == 0:
            _mul_one_minus_qm(num, 1)  # D_0 = (1 - q); num is still zero here
        else:
            _mul_one_minus_qm(num, k)
            _mul_one_minus_qm(num, k + 1)
        for i in range(big_n - k - 1):
            c = f_k[i]
            if c:
                num[i + k + 1] += c
        f_prev2, f_prev1 = f_prev1, f_k
    # divide by D_(k_max) = prod_{j<=k_max} (1-q^j)^2 * (1-q^(k_max+1))
    for j in range(1, k_max + 1):
        _div_one_minus_qm(num, j)
        _div_one_minus_qm(num, j)
    if k_max + 1 >= 1:
        _div_one_minus_qm(num, k_max + 1)
    num[0] += 1
    return Sequence(0, tuple(num))


def gen_stack_area(n_terms: int) -> Sequence:
    """Stack polyominoes (unimodal bargraphs) by area: 1, 2, 4, 8, 15, ... (offset 1).

    S(q) = sum_{n>=1} q^n / ( (q;q)_(n-1) (q;q)_n ), accumulated the same way
    as the L-convex sum: one numerator over the deepest denominator.
    """
    if n_terms < 1:
        raise ValueError("need n_terms >= 1")
    size = n_terms + 1
    num = [0] * size
    for n in range(1, n_terms + 1):
        if n == 1:
            _mul_one_minus_qm(num, 1)  # D_1 = (1 - q); num is still zero here
        else:
            _mul_one_minus_qm(num, n - 1)
            _mul_one_minus_qm(num, n)
        num[n] += 1
    for j in range(1, n_terms):
        _div_one_minus_qm(num, j)
        _div_one_minus_qm(num, j)
    _div_one_minus_qm(num, n_terms)
    return Sequence(1, tuple(num[1:]))


@dataclass(frozen=True)
class LaurentSeries:
    """Finite Laurent expansion: coeffs[i] multiplies x^(offset + i)."""

    offset: int
    coeffs: tuple[Fraction, ...]

    def to_sequence(self) -> Sequence:
        if any(c.denominator != 1 for c in self.coeffs):
            raise NonIntegral("expansion has non-integer coefficients")
        return Sequence(self.offset, tuple(int(c) for c in self.coeffs))


def expand_rational(num: Poly, den: Poly, n_terms: int) -> LaurentSeries:
    """Laurent expansion of num/den around x = 0 with explicit offset.

    The offset is val(num) - val(den); the den must be nonzero.
    """
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return LaurentSeries(0, (Fraction(0),) * n_terms)
    v_num = next(i for i, c in enumerate(num.coeffs) if c)
    v_den = next(i for i, c in enumerate(den.coeffs) if c)
    num_s = TruncSeries.from_poly(Poly(num.coeffs[v_num:]), n_terms)
    den_s = TruncSeries.from_poly(Poly(den.coeffs[v_den:]), n_terms)
    return LaurentSeries(v_num - v_den, (num_s * den_s.inverse()).coeffs)


def gen_lconvex_perimeter(n_terms: int) -> Sequence:
    """L-convex polyominoes by half-perimeter minus 2: 1, 2, 7, 24, 82, ...

    Rational generating function (1-x)^2 / (2(1-x)^2 - 1); from the third
    term on, a(n) = 4 a(n-1) - 2 a(n-2).
    """
    num = Poly([1, -2, 1])
    den = Poly([1, -4, 2])
    return expand_rational(num, den, n_terms).to_sequence()


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def _is_l_convex(rows: list[tuple[int, int]]) -> bool:
    """rows[i] = (start, end) half-open; all rows nonempty, consecutive overlap."""
    m = len(rows)
    # vertical convexity: each column's covering rows must be contiguous
    lo = min(s for s, _ in rows)
    hi = max(e for _, e in rows)
    for c in range(lo, hi):
        seen = [i for i in range(m) if rows[i][0] <= c < rows[i][1]]
        if seen and seen[-1] - seen[0] + 1 != len(seen):
            return False
    # one-turn paths: for each cell pair, a row-then-column or
    # column-then-row staircase must stay inside
    cells = [(i, c) for i in range(m) for c in range(rows[i][0], rows[i][1])]
    for (r1, c1) in cells:
        for (r2, c2) in cells:
            if r1 == r2 or c1 == c2:
                continue  # straight segment, inside by row/column convexity
            # path via corner (r1, c2)
            ok_a = rows[r1][0] <= c2 < rows[r1][1] and all(
                rows[r][0] <= c2 < rows[r][1]
                for r in range(min(r1, r2), max(r1, r2) + 1)
            )
            if ok_a:
                continue
            # path via corner (r2, c1)
            ok_b = rows[r2][0] <= c1 < rows[r2][1] and all(
                rows[r][0] <= c1 < rows[r][1]
                for r in range(min(r1, r2), max(r1, r2) + 1)
            )
            if not ok_b:
                return False
    return True


def enum_lconvex_bruteforce(n_max: int, budget: int = 5_000_000) -> Sequence:
    """Count L-convex polyominoes of areas 1..n_max by direct enumeration.

    Fixed polyominoes: translates are identified, rotations/reflections are
    counted separately.  Shapes are built row by row as intervals (L-convex
    implies row and column convexity), with the first row pinned to start at
    column 0 as the translation normal form, and then filtered by the
    one-turn path test.  Intended for small n_max (about 10).
    """
    counts = [0] * (n_max + 1)
    nodes = 0

    def recurse(rows: list[tuple[int, int]], area: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        if _is_l_convex(rows):
            counts[area] += 1
        prev_s, prev_e = rows[-1]
        room = n_max - area
        for length in range(1, room + 1):
            for start in range(prev_s - length + 1, prev_e):
                rows.append((start, start + length))
                recurse(rows, area + length)
                rows.pop()

    for length in range(1, n_max + 1):
        recurse([(0, length)], length)
    return Sequence(1, tuple(counts[1:]))


def enum_stack_bruteforce(n_max: int, budget: int = 5_000_000) -> Sequence:
    """Count unimodal compositions of 1..n_max by direct enumeration.

    A stack polyomino is a bargraph whose column heights weakly rise then
    weakly fall; by columns it is exactly a unimodal composition of the area.
    Each composition is generated once: the rising phase is the maximal
    weakly rising prefix.
    """
    counts = [0] * (n_max + 1)
    nodes = 0

    def recurse(total: int, last: int, rising: bool):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        counts[total] += 1
        for v in range(1, n_max - total + 1):
            if rising and v >= last:
                recurse(total + v, v, True)
            elif v <= last:
                recurse(total + v, v, False)

    for v in range(1, n_max + 1):
        recurse(v, v, True)
    return Sequence(1, tuple(counts[1:]))


def _cmp(a: int, b: int) -> int:
    return (a > b) - (a < b)


def enum_ascent_avoiding(
    pattern: Union[Pattern, str, int],
    n_max: int,
    budget: int = 50_000_000,
) -> Sequence:
    """Count ascent sequences of lengths 0..n_max avoiding `pattern`.

    An ascent sequence starts with 0 and each later letter lies in
    [0, 1 + number of strict ascents of the preceding prefix].  Containment
    is by order-isomorphic subsequence; repeated pattern letters demand
    equal values.  Patterns up to length 3 are supported.

    Depth-first search over avoiding prefixes; raises BudgetExceeded when
    the node count passes `budget`.
    """
    if isinstance(pattern, int):
        pattern = Pattern.from_string(str(pattern))
    elif isinstance(pattern, str):
        pattern = Pattern.from_string(pattern)
    p = pattern.letters
    if len(p) > 3:
        raise ValueError("patterns longer than 3 are not supported")
    counts = [0] * (n_max + 1)
    counts[0] = 1
    if n_max == 0:
        return Sequence(0, tuple(counts))

    nodes = 0
    maxval = n_max + 2  # letters never exceed the sequence length

    if len(p) == 1:
        # any letter is an occurrence; only the empty sequence avoids
        return Sequence(0, tuple(counts))

    if len(p) == 2:
        r12 = _cmp(p[0], p[1])
        # presence mask of prefix values; occurrence = some v with v r12 x
        def creates2(x: int, prefix_mask: int) -> bool:
            if r12 < 0:
                return bool(prefix_mask & ((1 << x) - 1))
            if r12 > 0:
                return prefix_mask >> (x + 1) != 0
            return bool(prefix_mask & (1 << x))

        def recurse2(depth: int, last: int, asc: int, prefix_mask: int):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exceeded")
            counts[depth] += 1
            if depth == n_max:
                return
            for x in range(0, asc + 2):
                if not creates2(x, prefix_mask):
                    recurse2(
                        depth + 1,
                        x,
                        asc + (1 if x > last else 0),
                        prefix_mask | (1 << x),
                    )

        recurse2(1, 0, 0, 1)  # prefix mask holds the initial letter 0
        return Sequence(0, tuple(counts))

    # length-3 pattern: keep, for every value v, the bitmask of values v1
    # having an earlier occurrence before some occurrence of v
    r12, r13, r23 = _cmp(p[0], p[1]), _cmp(p[0], p[2]), _cmp(p[1], p[2])
    pair_mask = [0] * (maxval + 1)

    def v1_mask(v2: int, x: int) -> int:
        m = -1  # all ones
        if r12 < 0:
            m &= (1 << v2) - 1
        elif r12 == 0:
            m &= 1 << v2
        else:
            m &= -1 << (v2 + 1)
        if r13 < 0:
            m &= (1 << x) - 1
        elif r13 == 0:
            m &= 1 << x
        else:
            m &= -1 << (x + 1)
        return m

    def creates3(x: int, top: int) -> bool:
        if r23 < 0:
            v2_range = range(0, x)
        elif r23 == 0:
            v2_range = range(x, x + 1)
        else:
            v2_range = range(x + 1, top + 1)
        for v2 in v2_range:
            pm = pair_mask[v2]
            if pm and pm & v1_mask(v2, x):
                return True
        return False

    def recurse3(depth: int, last: int, asc: int, prefix_mask: int, top: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        counts[depth] += 1
        if depth == n_max:
            return
        for x in range(0, asc + 2):
            if creates3(x, top):
                continue
            saved = pair_mask[x]
            pair_mask[x] = saved | prefix_mask
            recurse3(
                depth + 1,
                x,
                asc + (1 if x > last else 0),
                prefix_mask | (1 << x),
                max(top, x),
            )
            pair_mask[x] = saved

    recurse3(1, 0, 0, 1, 0)  # prefix mask holds the initial letter 0
    return Sequence(0, tuple(counts))


# ---------------------------------------------------------------------------
# expanders driven by recurrences / algebraic equations
# ---------------------------------------------------------------------------

def _eval_int_poly(coeffs: tuple[int, ...], n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def expand_prec(rec: PRecurrence, init: Sequence, n_terms: int) -> Sequence:
    """Extend `init` to n_terms terms using the recurrence.

    All supplied init terms must already satisfy the recurrence on every
    window they cover (InconsistentInit otherwise).  Raises
    LeadingCoeffVanishes(n) if the leading polynomial vanishes at a needed
    index and NonIntegral if an exact integer step fails.
    """
    r = rec.order
    if len(init) < r:
        raise InconsistentInit(f"need at least {r} initial terms, got {len(init)}")
    if n_terms < len(init):
        return init.head(n_terms)
    ints = [p.int_coeffs() for p in rec.coeffs]
    terms = list(init.terms)
    for n in range(init.offset, init.offset + len(terms) - r):
        acc = sum(
            _eval_int_poly(ints[j], n) * terms[n - init.offset + j]
            for j in range(r + 1)
        )
        if acc != 0:
            raise InconsistentInit(f"initial terms violate the recurrence at n={n}")
    while len(terms) < n_terms:
        n = init.offset + len(terms) - r
        lead = _eval_int_poly(ints[r], n)
        if lead == 0:
            raise LeadingCoeffVanishes(n)
        acc = sum(
            _eval_int_poly(ints[j], n) * terms[n - init.offset + j]
            for j in range(r)
        )
        q, rem = divmod(-acc, lead)
        if rem:
            raise NonIntegral(f"non-integer term at n={n + r}")
        terms.append(q)
    return Sequence(init.offset, tuple(terms))


def _alg_eval(eq: AlgEq, y: TruncSeries) -> TruncSeries:
    """P(x, y(x)) as a truncated series."""
    n = y.order
    acc = TruncSeries((0,) * n)
    yp = TruncSeries.one(n)
    for j, cj in enumerate(eq.coeffs):
        if j:
            yp = yp * y
        if not cj.is_zero():
            acc = acc + yp.mul_poly(cj)
    return acc


def _alg_eval_dy(eq: AlgEq, y: TruncSeries) -> TruncSeries:
    n = y.order
    acc = TruncSeries((0,) * n)
    yp = TruncSeries.one(n)
    for j in range(1, len(eq.coeffs)):
        if j > 1:
            yp = yp * y
        cj = eq.coeffs[j]
        if not cj.is_zero():
            acc = acc + yp.mul_poly(cj * j)
    return acc


def expand_algebraic_series(eq: AlgEq, seed: Iterable, n_terms: int) -> TruncSeries:
    """Newton-lift the power series root of P(x, y) = 0 pinned by `seed`.

    The seed must satisfy P(x, seed) = 0 mod x^len(seed) (NotARoot
    otherwise), and dP/dy evaluated on the seed must be a unit, i.e. have a
    nonzero constant term (BranchAmbiguous otherwise: the seed sits on a
    multiple root and does not determine the branch).  Each Newton step
    doubles the number of correct coefficients.
    """
    seed_coeffs = [Fraction(c) for c in seed]
    if not seed_coeffs:
        raise NotARoot("empty seed")
    y = TruncSeries(seed_coeffs)
    if any(c != 0 for c in _alg_eval(eq, y).coeffs):
        raise NotARoot("seed does not satisfy the equation to its own order")
    if _alg_eval_dy(eq, y)[0] == 0:
        raise BranchAmbiguous("dP/dy vanishes at x=0 on this seed")
    while y.order < n_terms:
        new_order = min(2 * y.order, n_terms)
        y = TruncSeries(y.coeffs + (Fraction(0),) * (new_order - y.order))
        num = _alg_eval(eq, y)
        den = _alg_eval_dy(eq, y)
        y = y - num * den.inverse()
    if any(c != 0 for c in _alg_eval(eq, y).coeffs):
        raise NotARoot("Newton lifting failed to converge")  # pragma: no cover
    return y


def expand_algebraic(eq: AlgEq, seed: Iterable, n_terms: int) -> Sequence:
    """Integer-sequence wrapper around expand_algebraic_series (offset 0)."""
    y = expand_algebraic_series(eq, seed, n_terms)
    if not y.is_integral():
        raise NonIntegral("branch has non-integer coefficients")
    return Sequence(0, tuple(int(c) for c in y.coeffs))
