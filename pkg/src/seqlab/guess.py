"""Conjecturing exact structure from initial terms.

Given the first terms of an integer sequence, search for

* a linear recurrence with polynomial coefficients (``guess_prec``),
* an algebraic equation P(x, y) = 0 for the generating function
  (``guess_algeq``),

by exact integer nullspace computation (fraction-free Gaussian
elimination).  Fitting never touches the trailing terms: candidates must
also annihilate a held-out block of windows, and finally every supplied
term, before they are returned.  ``prec_to_ode`` converts a recurrence
into a homogeneous linear ODE for the generating function; the
``*_residual`` functions re-check any structure against longer
expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import TYPE_CHECKING, Optional, Sequence as SeqABC

from .errors import InconsistentInit, InsufficientTerms
from .series import Poly, TruncSeries, int_horner

if TYPE_CHECKING:  # pragma: no cover
    from .sequences import Sequence


# ---------------------------------------------------------------------------
# domain types (auto-normalized: integer coefficients, content 1, fixed sign)
# ---------------------------------------------------------------------------

def _normalize_polys(polys: SeqABC[Poly], what: str) -> tuple[Poly, ...]:
    """Clear denominators, divide out content, make the top poly's leading
    coefficient positive.  The top poly must be nonzero."""
    polys = tuple(polys)
    if not polys or polys[-1].is_zero():
        raise ValueError(f"{what}: leading polynomial must be nonzero")
    den = 1
    for p in polys:
        for c in p.coeffs:
            den = lcm(den, c.denominator)
    g = 0
    for p in polys:
        for c in p.coeffs:
            g = gcd(g, abs(int(c * den)))
    scale = Fraction(den, g)
    if polys[-1].coeffs[-1] < 0:
        scale = -scale
    return tuple(p * scale for p in polys)


@dataclass(frozen=True)
class PRecurrence:
    """Linear recurrence sum_j coeffs[j](n) * u(n + j) = 0.

    Normal form (applied on construction): integer coefficients of overall
    content 1, leading coefficient of the top polynomial positive.
    """

    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("recurrence must have order >= 1")
        object.__setattr__(
            self, "coeffs", _normalize_polys(self.coeffs, "PRecurrence")
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    def coeff_lists(self) -> list[list[int]]:
        return [list(p.int_coeffs()) for p in self.coeffs]

    @staticmethod
    def from_lists(lists: SeqABC[SeqABC[int]]) -> "PRecurrence":
        return PRecurrence(tuple(Poly(list(cs)) for cs in lists))

    def __str__(self) -> str:
        parts = [
            f"({p.format('n')})*u(n{f'+{j}' if j else ''})"
            for j, p in enumerate(self.coeffs)
            if not p.is_zero()
        ]
        return " + ".join(parts) + " = 0"


@dataclass(frozen=True)
class AlgEq:
    """Algebraic equation P(x, y) = sum_j coeffs[j](x) * y^j = 0.

    Must actually involve y (degree >= 1) and must not be divisible by y.
    Same normal form as PRecurrence, sign fixed on the top y-coefficient.
    """

    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("equation must have y-degree >= 1")
        if self.coeffs[0].is_zero():
            raise ValueError("equation is divisible by y")
        object.__setattr__(
            self, "coeffs", _normalize_polys(self.coeffs, "AlgEq")
        )

    @property
    def degree_y(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree_x(self) -> int:
        return max(p.degree for p in self.coeffs)

    def grid(self) -> list[list[int]]:
        """Coefficient grid: grid()[j][i] multiplies x^i y^j."""
        dx = self.degree_x
        return [
            list(p.int_coeffs()) + [0] * (dx - p.degree) for p in self.coeffs
        ]

    @staticmethod
    def from_grid(grid: SeqABC[SeqABC[int]]) -> "AlgEq":
        return AlgEq(tuple(Poly(list(cs)) for cs in grid))

    def __str__(self) -> str:
        parts = [
            f"({p.format('x')})" + ("" if j == 0 else f"*y^{j}" if j > 1 else "*y")
            for j, p in enumerate(self.coeffs)
            if not p.is_zero()
        ]
        return " + ".join(parts) + " = 0"


@dataclass(frozen=True)
class LinODE:
    """Linear ODE sum_i coeffs[i](x) * f^(i)(x) = 0, same normal form."""

    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("ODE needs at least one coefficient")
        object.__setattr__(
            self, "coeffs", _normalize_polys(self.coeffs, "LinODE")
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    def coeff_lists(self) -> list[list[int]]:
        return [list(p.int_coeffs()) for p in self.coeffs]

    @staticmethod
    def from_lists(lists: SeqABC[SeqABC[int]]) -> "LinODE":
        return LinODE(tuple(Poly(list(cs)) for cs in lists))

    def __str__(self) -> str:
        def deriv(i: int) -> str:
            return "f" if i == 0 else "f" + "'" * i if i <= 3 else f"f^({i})"

        parts = [
            f"({p.format('x')})*{deriv(i)}"
            for i, p in enumerate(self.coeffs)
            if not p.is_zero()
        ]
        return " + ".join(parts) + " = 0"


# ---------------------------------------------------------------------------
# exact nullspace
# ---------------------------------------------------------------------------

_RANK_PRIME = (1 << 61) - 1


def _rank_mod(rows: list[list[int]], ncols: int, p: int = _RANK_PRIME) -> int:
    work = [[e % p for e in row] for row in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[c], p - 2, p)
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f:
                f = f * inv % p
                row = work[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == len(work):
            break
    return rank


def _primitive_int(vec: SeqABC[Fraction]) -> list[int]:
    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for e in ints:
        g = gcd(g, abs(e))
    if g > 1:
        ints = [e // g for e in ints]
    lead = next((e for e in ints if e), 0)
    return [-e for e in ints] if lead < 0 else ints


def integer_nullspace(rows: SeqABC[SeqABC[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the right nullspace of an integer matrix.

    Exact: fraction-free (Bareiss) elimination, then rational back
    substitution per free column.  A modular rank check short-circuits the
    common full-column-rank case.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        basis = []
        for c in range(ncols):
            v = [0] * ncols
            v[c] = 1
            basis.append(v)
        return basis
    if len(m) >= ncols and _rank_mod(m, ncols) == ncols:
        return []
    nrows = len(m)
    piv_cols: list[int] = []
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        best = None
        for i in range(rank, nrows):
            e = m[i][c]
            if e and (best is None or abs(e) < abs(m[best][c])):
                best = i
        if best is None:
            continue
        m[rank], m[best] = m[best], m[rank]
        pr = m[rank]
        pv = pr[c]
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (pv * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        piv_cols.append(c)
        prev = pv
        rank += 1
    in_piv = set(piv_cols)
    basis = []
    for fc in (c for c in range(ncols) if c not in in_piv):
        v: list[Fraction] = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in reversed(range(rank)):
            pc = piv_cols[i]
            s = sum((m[i][j] * v[j] for j in range(pc + 1, ncols) if v[j]), Fraction(0))
            v[pc] = -s / m[i][pc]
        basis.append(_primitive_int(v))
    return basis


def _combine(basis: list[list[int]], weights: list[int]) -> list[int]:
    n = len(basis[0])
    out = [0] * n
    for w, vec in zip(weights, basis):
        if w:
            for t in range(n):
                out[t] += w * vec[t]
    return _primitive_int([Fraction(e) for e in out])


def _bit_cost(polys: SeqABC[Poly]) -> int:
    return sum(abs(int(c)).bit_length() for p in polys for c in p.coeffs)


# ---------------------------------------------------------------------------
# P-recurrence guessing
# ---------------------------------------------------------------------------

def prec_residual(rec: PRecurrence, terms: "Sequence") -> int:
    """Count of consecutive satisfied windows, from the first applicable index.

    Equals ``len(terms) - rec.order`` exactly when the recurrence
    annihilates every checkable window.
    """
    r = rec.order
    coeff_ints = [p.int_coeffs() for p in rec.coeffs]
    count = 0
    for w in range(len(terms) - r):
        n = terms.offset + w
        acc = sum(
            int_horner(coeff_ints[j], n) * terms.terms[w + j] for j in range(r + 1)
        )
        if acc:
            break
        count += 1
    return count


def _full_windows(rec: PRecurrence, terms: "Sequence") -> bool:
    return prec_residual(rec, terms) == max(len(terms) - rec.order, 0)


def _vec_to_prec(vec: list[int], r: int, d: int) -> Optional[PRecurrence]:
    polys = [Poly(vec[j * (d + 1) : (j + 1) * (d + 1)]) for j in range(r + 1)]
    if polys[-1].is_zero():
        return None
    return PRecurrence(tuple(polys))


def guess_prec(
    terms: "Sequence",
    rmax: int = 8,
    dmax: int = 4,
    margin: int = 4,
) -> Optional[PRecurrence]:
    """Search for a recurrence sum_j p_j(n) u(n+j) = 0 annihilating `terms`.

    Shapes (order r, coefficient degree d) are visited in increasing r + d,
    then increasing r.  For each shape, the window equations that avoid the
    last `margin` terms are solved exactly; surviving coefficient vectors
    must then annihilate the held-out windows and finally every window.
    Among several survivors the smallest total coefficient size wins.

    Returns None when the whole grid fails; raises InsufficientTerms when
    no shape in the grid had enough terms to be attempted at all.
    """
    seq_terms = terms.terms
    big_l = len(seq_terms)
    attempted = False
    shapes = sorted(
        ((r, d) for r in range(1, rmax + 1) for d in range(0, dmax + 1)),
        key=lambda rd: (rd[0] + rd[1], rd[0]),
    )
    for r, d in shapes:
        k = (r + 1) * (d + 1)
        n_win = big_l - r
        if n_win < max(k - 1, margin + 1):
            continue
        attempted = True
        rows = []
        for w in range(n_win):
            n = terms.offset + w
            row = []
            for j in range(r + 1):
                e = seq_terms[w + j]
                for _t in range(d + 1):
                    row.append(e)
                    e *= n
            rows.append(row)
        n_hold = min(margin, n_win - 1)
        basis = integer_nullspace(rows[: n_win - n_hold], k)
        if not basis:
            continue
        if n_hold:
            held = [[sum(h[t] * v[t] for t in range(k)) for v in basis]
                    for h in rows[n_win - n_hold :]]
            weight_basis = integer_nullspace(held, len(basis))
            if not weight_basis:
                continue
            cands = [_combine(basis, w) for w in weight_basis]
        else:
            cands = basis
        found = []
        for vec in cands:
            rec = _vec_to_prec(vec, r, d)
            if rec is not None and _full_windows(rec, terms):
                found.append(rec)
        if found:
            return min(found, key=lambda rc: _bit_cost(rc.coeffs))
    if not attempted:
        raise InsufficientTerms(
            f"{big_l} terms are too few for every recurrence shape with "
            f"order <= {rmax}, degree <= {dmax}, margin {margin}"
        )
    return None


# ---------------------------------------------------------------------------
# recurrence -> ODE for the generating function
# ---------------------------------------------------------------------------

def _stirling2(dmax: int) -> list[list[int]]:
    table = [[1]]
    for t in range(1, dmax + 1):
        prev = table[-1] + [0]
        table.append(
            [0] + [i * prev[i] + prev[i - 1] for i in range(1, t + 1)]
        )
    return table


def prec_to_ode(rec: PRecurrence, init: "Sequence") -> LinODE:
    """Homogeneous linear ODE annihilating f(x) = sum_n u(n) x^n.

    Writing the recurrence with theta = x d/dx gives an operator identity
    L f = R where R is a polynomial collecting initial-term corrections
    (theta acts diagonally on monomials; each shift contributes a division
    by x, cleared by premultiplying with x^order).  If R is nonzero the
    identity is differentiated once against R, yielding the homogeneous
    annihilator R (L f)' - R' (L f) of order at most deg + 1.

    `init` must start at offset 0, cover the recurrence order, and satisfy
    the recurrence on every window it covers (InconsistentInit otherwise).
    """
    if init.offset != 0:
        raise ValueError("generating-function conversion needs an offset-0 sequence")
    r = rec.order
    if len(init) < r:
        raise InconsistentInit(
            f"need at least {r} initial terms, got {len(init)}"
        )
    if not _full_windows(rec, init):
        raise InconsistentInit("initial terms violate the recurrence")
    d = rec.degree
    s2 = _stirling2(d)
    # operator part: x^r * sum_j x^{-j} p_j(theta - j), collected as
    # sum_i Q_i(x) D^i with theta^t = sum_i S2(t, i) x^i D^i
    q_acc: list[dict[int, Fraction]] = [dict() for _ in range(d + 1)]
    for j, p in enumerate(rec.coeffs):
        shifted = p.compose_linear(-j)
        for t, a_t in enumerate(shifted.coeffs):
            if not a_t:
                continue
            for i in range(t + 1):
                c = a_t * s2[t][i]
                if c:
                    e = r - j + i
                    q_acc[i][e] = q_acc[i].get(e, Fraction(0)) + c
    def build(acc: dict[int, Fraction]) -> Poly:
        if not acc:
            return Poly([])
        top = max(acc)
        return Poly([acc.get(e, Fraction(0)) for e in range(top + 1)])

    q_ops = [build(acc) for acc in q_acc]
    # constant part from initial terms: sum_j sum_{m<j} p_j(m-j) u(m) x^{r-j+m}
    r_acc: dict[int, Fraction] = {}
    for j, p in enumerate(rec.coeffs):
        for m in range(min(j, len(init))):
            c = p(Fraction(m - j)) * init.terms[m]
            if c:
                e = r - j + m
                r_acc[e] = r_acc.get(e, Fraction(0)) + c
    r_poly = build(r_acc)
    if r_poly.is_zero():
        return LinODE(tuple(q_ops))
    r_deriv = r_poly.derivative()
    padded = [Poly([])] + q_ops + [Poly([])]
    coeffs = [
        r_poly * (padded[i] + padded[i + 1].derivative()) - r_deriv * padded[i + 1]
        for i in range(d + 2)
    ]
    return LinODE(tuple(coeffs))


def ode_residual(ode: LinODE, terms: "Sequence") -> Optional[int]:
    """Exponent of the first nonzero coefficient of sum_i Q_i f^(i), or None.

    None means all-zero to the checkable truncation.  The series f comes
    from `terms` (offset 0); with L terms and order m the residual is
    trustworthy through x^(L - m - 1).
    """
    if terms.offset != 0:
        raise ValueError("ODE residual needs an offset-0 sequence")
    m = ode.order
    big_l = len(terms)
    if big_l < m + ode.degree + 1:
        raise InsufficientTerms(
            f"need at least order + degree + 1 = {m + ode.degree + 1} terms"
        )
    out_order = big_l - m
    f = TruncSeries([Fraction(t) for t in terms.terms])
    acc = TruncSeries((Fraction(0),) * out_order)
    g = f
    for i, q in enumerate(ode.coeffs):
        if i:
            g = g.derivative()
        if not q.is_zero():
            acc = acc + g.mul_poly(q).truncate(out_order)
    return next((i for i, c in enumerate(acc.coeffs) if c), None)


# ---------------------------------------------------------------------------
# algebraic equation guessing
# ---------------------------------------------------------------------------

def _convolve_trunc(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * order
    for i, ai in enumerate(a):
        if ai:
            for j in range(min(len(b), order - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def algeq_residual(eq: AlgEq, terms: "Sequence") -> Optional[int]:
    """Exponent of the first nonzero coefficient of P(x, y(x)), or None.

    y(x) is the series of `terms` (offset 0); every supplied order is
    checkable since the coefficient of x^m in P(x, y) only involves terms
    up to m.
    """
    if terms.offset != 0:
        raise ValueError("algebraic residual needs an offset-0 sequence")
    big_l = len(terms)
    u = [int(t) for t in terms.terms]
    powers = [[1] + [0] * (big_l - 1)]
    for _ in range(eq.degree_y):
        powers.append(_convolve_trunc(powers[-1], u, big_l))
    grid = [p.int_coeffs() for p in eq.coeffs]
    for m in range(big_l):
        s = 0
        for j, cs in enumerate(grid):
            pj = powers[j]
            for i, c in enumerate(cs):
                if c and i <= m:
                    s += c * pj[m - i]
        if s:
            return m
    return None


def _vec_to_algeq(vec: list[int], dx: int, dy: int) -> Optional[AlgEq]:
    polys = [Poly(vec[j * (dx + 1) : (j + 1) * (dx + 1)]) for j in range(dy + 1)]
    if polys[-1].is_zero() or polys[0].is_zero():
        return None
    return AlgEq(tuple(polys))


def guess_algeq(
    terms: "Sequence",
    dxmax: int = 12,
    dymax: int = 3,
    margin: int = 4,
) -> Optional[AlgEq]:
    """Search for P(x, y) = 0 satisfied by the generating function of `terms`.

    Degree shapes (dx, dy) are visited in increasing dx + dy, then
    increasing dy, so the returned equation is minimal in that ordering.
    A shape is attempted only when the coefficient equations overdetermine
    the unknowns by at least `margin`; the last `margin` equations are held
    out of the fit and must be satisfied as well, then the candidate is
    re-verified against every supplied term.

    Returns None when the grid fails; raises InsufficientTerms when no
    shape could be attempted.
    """
    if terms.offset != 0:
        raise ValueError("generating-function guessing needs an offset-0 sequence")
    u = [int(t) for t in terms.terms]
    big_l = len(u)
    powers = [[1] + [0] * (big_l - 1)]
    for _ in range(dymax):
        powers.append(_convolve_trunc(powers[-1], u, big_l))
    attempted = False
    shapes = sorted(
        ((dx, dy) for dx in range(0, dxmax + 1) for dy in range(1, dymax + 1)),
        key=lambda dd: (dd[0] + dd[1], dd[1]),
    )
    for dx, dy in shapes:
        k = (dx + 1) * (dy + 1)
        if big_l < k - 1 + margin:
            continue
        attempted = True
        rows = []
        for m in range(big_l):
            row = []
            for j in range(dy + 1):
                pj = powers[j]
                row.extend(
                    pj[m - i] if i <= m else 0 for i in range(dx + 1)
                )
            rows.append(row)
        basis = integer_nullspace(rows[: big_l - margin], k)
        if not basis:
            continue
        held = [[sum(h[t] * v[t] for t in range(k)) for v in basis]
                for h in rows[big_l - margin :]]
        weight_basis = integer_nullspace(held, len(basis))
        if not weight_basis:
            continue
        found = []
        for w in weight_basis:
            eq = _vec_to_algeq(_combine(basis, w), dx, dy)
            if eq is not None and algeq_residual(eq, terms) is None:
                found.append(eq)
        if found:
            return min(found, key=lambda e: _bit_cost(e.coeffs))
    if not attempted:
        raise InsufficientTerms(
            f"{big_l} terms are too few for every equation shape with "
            f"x-degree <= {dxmax}, y-degree <= {dymax}, margin {margin}"
        )
    return None
