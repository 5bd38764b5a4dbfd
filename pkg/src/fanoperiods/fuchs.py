"""Singularity analysis of Fuchsian operators.

For an operator L of order r, each singular place (t = 0, t = infinity,
or a conjugate packet of algebraic points given by an irreducible
q(t) | p_r(t)) contributes

    packet size * (r - dim of the local meromorphic solution space)

to the ramification rf; the ramification defect is rf - 2r.  At a
regular singular point, single-valued is the same as meromorphic, so the
invariant dimension dim V^{T_s} is computed exactly as the nullspace
dimension of a truncated Frobenius recursion, over Q at rational places
and over the number field Q[theta]/(q) at algebraic packets.  Defects
are small integers and must not depend on numeric tolerance, so nothing
here is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import sympy

from .errors import IrregularSingularityError, StabilizationError
from .pf import DifferentialOperator

DEFAULT_MARGIN = 20

_T = sympy.Symbol("t")
_LAM = sympy.Symbol("lam")
_TH = sympy.Symbol("theta")


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class SingularPlace:
    """t = 0, t = infinity, or the packet of roots of an irreducible
    integer polynomial q (primitive, positive leading coefficient,
    q(0) != 0; ascending coefficients)."""

    kind: str
    minpoly: tuple = ()

    @property
    def packet_size(self) -> int:
        return len(self.minpoly) - 1 if self.kind == "algebraic" else 1

    def label(self) -> str:
        if self.kind == "zero":
            return "t = 0"
        if self.kind == "infinity":
            return "t = infinity"
        return "roots of " + _poly_str(self.minpoly, "t")

    def __repr__(self):
        return f"SingularPlace({self.label()})"


def _poly_str(coeffs, var) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
            continue
        body = var if i == 1 else f"{var}^{i}"
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _sympy_poly(coeffs, var):
    return sympy.Poly(
        sum(
            sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
            * var**i
            for i, c in enumerate(coeffs)
        ),
        var,
    )


def singular_places(op: DifferentialOperator):
    """{0} and {infinity}, plus one packet per irreducible factor (other
    than t itself) of the leading t-coefficient polynomial p_order."""
    op = op.normalized()
    lead = op.p_polynomial(op.order)
    poly = _sympy_poly(lead, _T)
    places = [SingularPlace("zero")]
    algebraic = []
    for factor, _ in poly.factor_list()[1]:
        coeffs = [int(c) for c in reversed(factor.all_coeffs())]
        if len(coeffs) == 2 and coeffs[0] == 0:  # the factor t
            continue
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        algebraic.append(tuple(coeffs))
    algebraic.sort(key=lambda q: (len(q), q))
    places.extend(SingularPlace("algebraic", q) for q in algebraic)
    places.append(SingularPlace("infinity"))
    return places


# ---------------------------------------------------------------------------
# number fields Q[theta]/(q)


class NumberField:
    """Exact arithmetic in Q[theta]/(q), elements as coefficient tuples.

    Degree-1 fields are allowed (then theta is just the rational root),
    which lets every algebraic packet go through one code path.
    """

    def __init__(self, minpoly):
        lead = Fraction(minpoly[-1])
        self.degree = len(minpoly) - 1
        self.monic = tuple(Fraction(c) / lead for c in minpoly)
        self.zero = (Fraction(0),) * self.degree
        self.one = self.from_rational(1)
        # theta^i for i in [degree, 2*degree - 2], reduced
        self._powers = []
        if self.degree >= 1:
            cur = tuple(-c for c in self.monic[:-1])  # theta^degree
            for _ in range(self.degree - 1):
                self._powers.append(cur)
                cur = self._times_theta(cur)

    def from_rational(self, c):
        return (Fraction(c),) + (Fraction(0),) * (self.degree - 1)

    def theta(self):
        if self.degree == 1:
            return (-self.monic[0],)
        return tuple(
            Fraction(int(i == 1)) for i in range(self.degree)
        )

    def _times_theta(self, a):
        shifted = (Fraction(0),) + a[:-1]
        top = a[-1]
        if top:
            shifted = tuple(
                s + top * p for s, p in zip(shifted, self._power(self.degree))
            )
        return shifted

    def _power(self, i):
        if i < self.degree:
            return tuple(
                Fraction(int(k == i)) for k in range(self.degree)
            )
        return self._powers[i - self.degree]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        d = self.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for i in range(d, 2 * d - 1):
            c = conv[i]
            if c:
                p = self._power(i)
                out = [o + c * q for o, q in zip(out, p)]
        return tuple(out)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def inv(self, a):
        # extended Euclid on (a(x), q(x)) over Q[x]
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in number field")
        r0 = list(self.monic)
        r1 = list(a)
        s0 = [Fraction(0)]
        s1 = [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                c = r1[0]
                out = [x / c for x in s1]
                out += [Fraction(0)] * (self.degree - len(out))
                return tuple(out[: self.degree])
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def to_string(self, a) -> str:
        return _poly_str(a, "theta") if any(a) else "0"


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and b[-1] == 0:
        b.pop()
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
    return q, a


# ---------------------------------------------------------------------------
# local data


@dataclass(frozen=True)
class LocalData:
    """Indicial data and invariant dimension at one singular place."""

    place: SingularPlace
    indicial: tuple  # coefficients; rationals at 0/infinity, K-vectors else
    exponents: tuple  # ((rational root, multiplicity), ...)
    unsplit_degree: int  # residual degree of the non-rational part
    invariant_dim: int | None = None
    contribution: int | None = None


def _stirling2(order):
    s = [[0] * (order + 1) for _ in range(order + 1)]
    s[0][0] = 1
    for n in range(1, order + 1):
        for k in range(1, n + 1):
            s[n][k] = s[n - 1][k - 1] + k * s[n - 1][k]
    return s


def _falling_value(m, k):
    out = Fraction(1)
    for i in range(k):
        out *= m - i
    return out


def _del_form(op: DifferentialOperator):
    """Coefficients r_k(t) of L = sum r_k(t) (d/dt)^k."""
    r = op.order
    s2 = _stirling2(r)
    out = []
    for k in range(r + 1):
        if k == 0:
            out.append(list(op.p_polynomial(0)))
            continue
        acc = [Fraction(0)] * (op.tdegree + 1)
        for j in range(k, r + 1):
            w = s2[j][k]
            if w:
                for a, c in enumerate(op.p_polynomial(j)):
                    acc[a] += w * c
        out.append([Fraction(0)] * k + acc)  # the factor t^k
    return out


def _rational_indicial(op, place):
    """Indicial polynomial over Q at t = 0 or t = infinity."""
    if place.kind == "zero":
        coeffs = [Fraction(c) for c in op.d_polynomial(0)]
    else:
        d = op.tdegree
        coeffs = [
            Fraction(c) * (-1) ** j
            for j, c in enumerate(op.d_polynomial(d))
        ]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 < op.order:
        raise IrregularSingularityError(
            f"irregular singularity at {place.label()}: indicial degree "
            f"{len(coeffs) - 1} < order {op.order}"
        )
    return coeffs


def _rational_roots_q(coeffs):
    """((root, multiplicity), ...) over Q, plus the unsplit degree."""
    poly = _sympy_poly(coeffs, _LAM)
    roots = []
    unsplit = 0
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            val = -factor.nth(0) / factor.nth(1)
            roots.append(
                (Fraction(int(sympy.numer(val)), int(sympy.denom(val))), mult)
            )
        else:
            unsplit += factor.degree() * mult
    roots.sort()
    return tuple(roots), unsplit


class _AlgebraicLocal:
    """Shifted del-form data s_k(u) = r_k(theta + u) at an algebraic place."""

    def __init__(self, op: DifferentialOperator, place: SingularPlace):
        self.op = op
        self.place = place
        self.field = NumberField(place.minpoly)
        field = self.field
        theta = field.theta()
        # theta powers up to the t-degree of the del form
        dels = _del_form(op)
        maxdeg = max(len(r) for r in dels) - 1
        powers = [field.one]
        for _ in range(maxdeg):
            powers.append(field.mul(powers[-1], theta))
        self.s = []
        for rk in dels:
            sk = [field.zero] * len(rk)
            for a, c in enumerate(rk):
                if not c:
                    continue
                for b in range(a + 1):
                    sk[b] = field.add(
                        sk[b],
                        field.scale(powers[a - b], c * comb(a, b)),
                    )
            while sk and field.is_zero(sk[-1]):
                sk.pop()
            self.s.append(sk)
        r = op.order
        if not self.s[r]:
            raise ValueError("place does not divide the leading coefficient")
        self.v_lead = next(
            i for i, c in enumerate(self.s[r]) if not field.is_zero(c)
        )
        for k, sk in enumerate(self.s):
            if not sk:
                continue
            val = next(i for i, c in enumerate(sk) if not field.is_zero(c))
            if val < self.v_lead - (r - k):
                raise IrregularSingularityError(
                    f"irregular singularity at {place.label()}"
                )

    def s_coeff(self, k, i):
        sk = self.s[k]
        if i < 0 or i >= len(sk):
            return self.field.zero
        return sk[i]

    def indicial(self):
        """I(lambda) = sum_k s_k[v - r + k] * lambda(lambda-1)...(lambda-k+1)."""
        field = self.field
        r = self.op.order
        coeffs = [field.zero] * (r + 1)
        falling = [Fraction(1)]  # coefficients of the rising product
        for k in range(r + 1):
            c = self.s_coeff(k, self.v_lead - r + k)
            if not field.is_zero(c):
                for i, w in enumerate(falling):
                    if w:
                        coeffs[i] = field.add(coeffs[i], field.scale(c, w))
            falling = _poly_mul(falling, [Fraction(-k), Fraction(1)])
        return coeffs

    def rational_roots(self):
        """Rational roots (with multiplicity) of the indicial polynomial,
        found through the norm (a resultant over theta) and verified by
        exact division in K[lambda]."""
        field = self.field
        ind = self.indicial()
        theta_expr = sum(
            sympy.Rational(c.numerator, c.denominator) * _TH**i
            for i, c in enumerate(field.monic)
        )
        ind_expr = sum(
            sympy.Rational(x.numerator, x.denominator) * _TH**d * _LAM**i
            for i, vec in enumerate(ind)
            for d, x in enumerate(vec)
        )
        norm = sympy.resultant(theta_expr, ind_expr, _TH)
        norm_poly = sympy.Poly(sympy.expand(norm), _LAM)
        candidates = set()
        for factor, _ in norm_poly.factor_list()[1]:
            if factor.degree() == 1:
                val = -factor.nth(0) / factor.nth(1)
                candidates.add(
                    Fraction(int(sympy.numer(val)), int(sympy.denom(val)))
                )
        roots = []
        total_deg = len(ind) - 1
        for cand in sorted(candidates):
            mult = 0
            poly = list(ind)
            while True:
                quot, rem = _kpoly_div_linear(field, poly, cand)
                if not field.is_zero(rem):
                    break
                mult += 1
                poly = quot
            if mult:
                roots.append((cand, mult))
        unsplit = total_deg - sum(m for _, m in roots)
        return tuple(roots), unsplit


def _kpoly_div_linear(field, poly, c):
    """Divide a K[lambda] polynomial by (lambda - c), c rational."""
    c = Fraction(c)
    quot = [field.zero] * max(1, len(poly) - 1)
    carry = field.zero
    for i in range(len(poly) - 1, 0, -1):
        carry = field.add(poly[i], field.scale(carry, c))
        quot[i - 1] = carry
    rem = field.add(poly[0], field.scale(carry, c))
    return quot, rem


def indicial_data(op: DifferentialOperator, place: SingularPlace) -> LocalData:
    """Indicial polynomial and its (rational) root multiset at a place."""
    op = op.normalized()
    if place.kind in ("zero", "infinity"):
        coeffs = _rational_indicial(op, place)
        roots, unsplit = _rational_roots_q(coeffs)
        return LocalData(
            place=place,
            indicial=tuple(coeffs),
            exponents=roots,
            unsplit_degree=unsplit,
        )
    local = _AlgebraicLocal(op, place)
    roots, unsplit = local.rational_roots()
    return LocalData(
        place=place,
        indicial=tuple(local.indicial()),
        exponents=roots,
        unsplit_degree=unsplit,
    )


# ---------------------------------------------------------------------------
# invariant dimensions


def _integer_window(exponents):
    ints = [int(r) for r, _ in exponents if r.denominator == 1]
    if not ints:
        return None
    return min(ints), max(ints)


def _dim_at_zero_like(op, margin):
    """dim of the Laurent-series solution space at 0 for an operator in
    normal form (P_0 != 0), via the recursion sum_k P_k(m-k) y_{m-k}."""
    coeffs = [Fraction(c) for c in op.d_polynomial(0)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    roots, _ = _rational_roots_q(coeffs)
    window = _integer_window(roots)
    if window is None:
        return 0
    e_min, e_max = window
    n_top = e_max + op.order + margin
    rows = []
    for m in range(e_min, n_top + 1):
        row = []
        for mp in range(e_min, n_top + 1):
            k = m - mp
            if 0 <= k <= op.tdegree:
                row.append(op.eval_d_polynomial(k, mp))
            else:
                row.append(Fraction(0))
        rows.append(row)
    from .linalg import rank

    return (n_top - e_min + 1) - rank(rows)


def _transform_to_infinity(op: DifferentialOperator) -> DifferentialOperator:
    """Rewrite L around u = 1/t: u^d L = sum_k u^(d-k) P_k(-D_u)."""
    d = op.tdegree
    grid = {}
    for (k, j), c in op.grid().items():
        grid[(d - k, j)] = grid.get((d - k, j), 0) + c * (-1) ** j
    return DifferentialOperator(grid)


def _dim_algebraic(op, place, margin):
    local = _AlgebraicLocal(op, place)
    field = local.field
    roots, _ = local.rational_roots()
    window = _integer_window(roots)
    if window is None:
        return 0
    e_min, e_max = window
    r = op.order
    n_top = e_max + r + margin
    cols = list(range(e_min, n_top + 1))
    rows = []
    for j in range(e_min - r + local.v_lead, n_top - r + local.v_lead + 1):
        row = []
        for m in cols:
            acc = field.zero
            for k in range(r + 1):
                c = local.s_coeff(k, j - m + k)
                if not field.is_zero(c):
                    acc = field.add(
                        acc, field.scale(c, _falling_value(m, k))
                    )
            row.append(acc)
        rows.append(row)
    return len(cols) - _rank_over_field(field, rows)


def _rank_over_field(field, rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(x, inv) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y))
                    for x, y in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank


def invariant_dimension(
    op: DifferentialOperator, place: SingularPlace, margin: int = DEFAULT_MARGIN
) -> int:
    """dim V^{T_s}: the number of independent meromorphic local solutions
    at the place, computed by truncated Frobenius linear algebra with a
    stabilization double-check between two margins."""
    op = op.normalized()

    def compute(mg):
        if place.kind == "zero":
            _rational_indicial(op, place)  # irregularity check
            return _dim_at_zero_like(op, mg)
        if place.kind == "infinity":
            _rational_indicial(op, place)
            return _dim_at_zero_like(_transform_to_infinity(op), mg)
        return _dim_algebraic(op, place, mg)

    dim = compute(margin)
    check = compute(margin + 5)
    if dim != check:
        raise StabilizationError(
            f"local dimension at {place.label()} did not stabilize: "
            f"{dim} (margin {margin}) vs {check} (margin {margin + 5})"
        )
    return dim


# ---------------------------------------------------------------------------
# the report


@dataclass(frozen=True)
class RamificationReport:
    """Per-place local data plus rf, rank, defect, and the extremality
    verdict (with irreducibility and nontriviality recorded as
    assumptions, not theorems)."""

    rank: int
    locals: tuple
    rf: int
    defect: int
    extremal_candidate: bool
    caveat: str = "assuming Sol L irreducible and nontrivial"

    def as_table(self) -> str:
        lines = [
            "place                          exponents            dim V^T  contribution",
        ]
        for loc in self.locals:
            exps = ", ".join(
                (str(r) if m == 1 else f"{r} (x{m})") for r, m in loc.exponents
            )
            if loc.unsplit_degree:
                exps += f" [+ degree {loc.unsplit_degree} non-rational]"
            lines.append(
                "%-30s %-20s %7d  %12d"
                % (loc.place.label(), exps, loc.invariant_dim, loc.contribution)
            )
        lines.append(
            f"rank {self.rank}   rf {self.rf}   defect {self.defect}   "
            + (
                f"extremal-candidate ({self.caveat})"
                if self.extremal_candidate
                else "not extremal"
            )
        )
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rf": self.rf,
            "defect": self.defect,
            "extremal_candidate": self.extremal_candidate,
            "caveat": self.caveat,
            "places": [
                {
                    "place": loc.place.label(),
                    "exponents": [
                        [str(r), m] for r, m in loc.exponents
                    ],
                    "unsplit_degree": loc.unsplit_degree,
                    "invariant_dim": loc.invariant_dim,
                    "contribution": loc.contribution,
                }
                for loc in self.locals
            ],
        }


def ramification_report(
    op: DifferentialOperator, margin: int = DEFAULT_MARGIN
) -> RamificationReport:
    """Assemble places, local data, rf and the defect rf - 2 rank."""
    op = op.normalized()
    rank = op.order
    locals_ = []
    rf = 0
    for place in singular_places(op):
        data = indicial_data(op, place)
        dim = invariant_dimension(op, place, margin)
        contribution = place.packet_size * (rank - dim)
        rf += contribution
        locals_.append(
            LocalData(
                place=place,
                indicial=data.indicial,
                exponents=data.exponents,
                unsplit_degree=data.unsplit_degree,
                invariant_dim=dim,
                contribution=contribution,
            )
        )
    defect = rf - 2 * rank
    return RamificationReport(
        rank=rank,
        locals=tuple(locals_),
        rf=rf,
        defect=defect,
        extremal_candidate=(defect == 0),
    )
