"""Differential operators in Q<t, D> and recursion-relation fitting.

An operator is a finite grid of rational coefficients a_{k,j} on the
monomials t^k D^j, where D = t d/dt.  Acting on a power series
sum c_m t^m, the coefficient of t^m in L(series) is
sum_k P_k(m - k) c_{m - k} with P_k(D) = sum_j a_{k,j} D^j: annihilation
is a linear recursion on the sequence, which is how operators are
fitted from period data, verified, and used to extend sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .errors import (
    AmbiguousFitError,
    NoOperatorFoundError,
    ParseError,
)
from .laurent import PeriodSequence
from .linalg import nullspace


class DifferentialOperator:
    """Element of Q<t, D> stored as a coefficient grid on t^k D^j."""

    __slots__ = ("_grid", "_order", "_tdegree")

    def __init__(self, grid):
        clean = {}
        for (k, j), c in (
            grid.items() if hasattr(grid, "items") else grid
        ):
            k, j = int(k), int(j)
            if k < 0 or j < 0:
                raise ValueError("grid indices must be nonnegative")
            c = Fraction(c)
            if c:
                clean[(k, j)] = c
        if not clean:
            raise ValueError("the zero operator is not allowed")
        self._grid = clean
        self._order = max(j for _, j in clean)
        self._tdegree = max(k for k, _ in clean)

    @property
    def order(self) -> int:
        return self._order

    @property
    def tdegree(self) -> int:
        return self._tdegree

    def grid(self):
        return dict(self._grid)

    def coefficient(self, k, j) -> Fraction:
        return self._grid.get((k, j), Fraction(0))

    def p_polynomial(self, j):
        """Coefficients of p_j(t) = sum_k a_{k,j} t^k."""
        return [
            self._grid.get((k, j), Fraction(0))
            for k in range(self._tdegree + 1)
        ]

    def d_polynomial(self, k):
        """Coefficients of P_k(D) = sum_j a_{k,j} D^j."""
        return [
            self._grid.get((k, j), Fraction(0))
            for j in range(self._order + 1)
        ]

    def eval_d_polynomial(self, k, x) -> Fraction:
        acc = Fraction(0)
        xp = Fraction(1)
        for j in range(self._order + 1):
            c = self._grid.get((k, j))
            if c:
                acc += c * xp
            xp *= x
        return acc

    # -- normalization -------------------------------------------------

    def normalized(self) -> "DifferentialOperator":
        """Canonical scalar multiple: left powers of t stripped, integer
        coefficients of content 1, first nonzero grid entry (in (k, j)
        lex order) positive."""
        shift = min(k for k, _ in self._grid)
        grid = {(k - shift, j): c for (k, j), c in self._grid.items()}
        den = 1
        for c in grid.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in grid.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        first = min(grid)
        if grid[first] < 0:
            scale = -scale
        return DifferentialOperator(
            {kj: c * scale for kj, c in grid.items()}
        )

    def equivalent(self, other) -> bool:
        """Equality up to multiplication by a nonzero constant."""
        return self.normalized()._grid == other.normalized()._grid

    def __eq__(self, other):
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self._grid == other._grid

    def __hash__(self):
        return hash(frozenset(self._grid.items()))

    def __repr__(self):
        return f"DifferentialOperator({self.pretty()!r})"

    # -- action on series ----------------------------------------------

    def apply(self, seq) -> PeriodSequence:
        coeffs = list(seq)
        out = []
        for m in range(len(coeffs)):
            acc = Fraction(0)
            for k in range(min(m, self._tdegree) + 1):
                acc += self.eval_d_polynomial(k, m - k) * coeffs[m - k]
            out.append(int(acc) if acc.denominator == 1 else acc)
        return PeriodSequence(out)

    def pretty(self) -> str:
        """Paper-style D-polynomial, highest t-degree first."""
        parts = []
        for (k, j) in sorted(self._grid, key=lambda kj: (-kj[0], -kj[1])):
            c = self._grid[(k, j)]
            factors = []
            if k:
                factors.append("t" if k == 1 else f"t^{k}")
            if j:
                factors.append("D" if j == 1 else f"D^{j}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def apply_operator(op: DifferentialOperator, seq) -> PeriodSequence:
    return op.apply(seq)


@dataclass(frozen=True)
class FitConfig:
    """Search bounds for operator fitting.

    A shape (order k, common t-degree d) is only attempted when its
    ``(k+1)(d+1)`` unknowns are overdetermined by at least ``slack``
    equations, which keeps accidental fits implausible.
    """

    max_order: int = 6
    max_degree: int = 12
    slack: int = 10


def _fit_matrix(coeffs, order, degree):
    ncols = (degree + 1) * (order + 1)
    rows = []
    for m in range(len(coeffs)):
        row = [Fraction(0)] * ncols
        for k in range(min(m, degree) + 1):
            c = coeffs[m - k]
            if c == 0:
                continue
            x = m - k
            xp = Fraction(1)
            for j in range(order + 1):
                row[k * (order + 1) + j] = c * xp
                xp *= x
        rows.append(row)
    return rows


def _without_columns(rows, dropped):
    return [
        [v for i, v in enumerate(row) if i not in dropped] for row in rows
    ]


def _reinsert_columns(vec, ncols, dropped):
    full = []
    it = iter(vec)
    for i in range(ncols):
        full.append(Fraction(0) if i in dropped else next(it))
    return full


def fit_operator(seq, cfg: FitConfig = FitConfig()) -> DifferentialOperator:
    """Minimal-order, then minimal-leading-degree annihilator of a
    sequence, found by exact nullspace computation on the recursion
    equations through the last available index.

    Shapes are searched order-ascending, then degree-ascending; the
    first hit therefore has minimal order, and within that order minimal
    common degree.  The leading coefficient's trailing t-degrees are
    then greedily stripped.  Raises ``NoOperatorFoundError`` when the
    bounds are exhausted and ``AmbiguousFitError`` when the nullspace at
    the accepted shape has dimension > 1 (the sequence is too short).
    """
    coeffs = [Fraction(c) for c in seq]
    m_top = len(coeffs) - 1
    frontier = []
    for order in range(1, cfg.max_order + 1):
        for degree in range(cfg.max_degree + 1):
            unknowns = (order + 1) * (degree + 1)
            if unknowns + cfg.slack > m_top + 1:
                continue
            frontier.append((order, degree))
            rows = _fit_matrix(coeffs, order, degree)
            basis = nullspace(rows)
            if not basis:
                continue
            if len(basis) > 1:
                raise AmbiguousFitError(
                    "nullspace dimension %d at order %d, degree %d: "
                    "need more terms to pin down the operator"
                    % (len(basis), order, degree)
                )
            vec = _strip_leading(rows, order, degree, basis[0])
            grid = {}
            for k in range(degree + 1):
                for j in range(order + 1):
                    c = vec[k * (order + 1) + j]
                    if c:
                        grid[(k, j)] = c
            return DifferentialOperator(grid).normalized()
    raise NoOperatorFoundError(
        "no annihilating operator with order <= %d, degree <= %d, "
        "slack %d on %d terms"
        % (cfg.max_order, cfg.max_degree, cfg.slack, len(coeffs)),
        frontier=frontier,
    )


def _strip_leading(rows, order, degree, vec):
    """Zero out trailing t-degrees of the leading coefficient p_order
    while an annihilator still exists."""
    ncols = (degree + 1) * (order + 1)
    dropped = set()
    while True:
        lead = [
            k
            for k in range(degree, -1, -1)
            if vec[k * (order + 1) + order] != 0
        ]
        if not lead:
            break
        candidate = dropped | {lead[0] * (order + 1) + order}
        basis = nullspace(_without_columns(rows, candidate))
        if len(basis) != 1:
            break
        dropped = candidate
        vec = _reinsert_columns(basis[0], ncols, dropped)
    return vec


def extend_sequence(op: DifferentialOperator, seq, m_new: int) -> PeriodSequence:
    """Extend a sequence annihilated by ``op`` up to index ``m_new``
    using the recursion c_m = -P_0(m)^{-1} sum_{k>=1} P_k(m-k) c_{m-k}."""
    coeffs = list(seq)
    residual = op.apply(coeffs)
    if any(c != 0 for c in residual):
        raise ValueError("operator does not annihilate the given terms")
    for m in range(len(coeffs), m_new + 1):
        lead = op.eval_d_polynomial(0, m)
        if lead == 0:
            raise ValueError(
                f"recursion stalls: P_0({m}) = 0; supply more direct terms"
            )
        acc = Fraction(0)
        for k in range(1, min(m, op.tdegree) + 1):
            acc += op.eval_d_polynomial(k, m - k) * coeffs[m - k]
        c = -acc / lead
        coeffs.append(int(c) if c.denominator == 1 else c)
    return PeriodSequence(coeffs)


# ---------------------------------------------------------------------------
# the operator at t = 0


@dataclass(frozen=True)
class ZeroTypeReport:
    """P_0(D) together with its splitting behaviour over Q."""

    p0: tuple  # coefficients of P_0, ascending powers of D
    roots: tuple  # (root, multiplicity) pairs for the rational roots
    verdict: str  # manifold | orbifold | non-split


def operator_at_zero(op: DifferentialOperator) -> ZeroTypeReport:
    """P_0(D) = L(0) and its type: manifold when all roots are integers,
    orbifold when all roots are rational but not all integral, non-split
    otherwise."""
    p0 = [Fraction(c) for c in op.d_polynomial(0)]
    while p0 and p0[-1] == 0:
        p0.pop()
    if not p0:
        raise ValueError("P_0 vanishes identically; normalize the operator")
    x = sympy.Symbol("D")
    poly = sympy.Poly(
        sum(sympy.Rational(c.numerator, c.denominator) * x**i
            for i, c in enumerate(p0)),
        x,
    )
    roots = []
    split = True
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            b, a = factor.nth(0), factor.nth(1)
            root = Fraction(int(sympy.numer(-b / a)), int(sympy.denom(-b / a)))
            roots.append((root, mult))
        else:
            split = False
    roots.sort()
    if not split:
        verdict = "non-split"
    elif all(r.denominator == 1 for r, _ in roots):
        verdict = "manifold"
    else:
        verdict = "orbifold"
    return ZeroTypeReport(
        p0=tuple(p0), roots=tuple(roots), verdict=verdict
    )


# ---------------------------------------------------------------------------
# text format


def parse_operator(text, path=None) -> DifferentialOperator:
    """Operator file: header ``order k``, then lines ``k j : coeff``
    giving the coefficient of t^k D^j."""
    order = None
    grid = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if order is None:
            if len(parts) != 2 or parts[0] != "order":
                raise ParseError("expected header 'order k'", path, lineno)
            try:
                order = int(parts[1])
            except ValueError:
                raise ParseError("bad order", path, lineno) from None
            continue
        if len(parts) != 4 or parts[2] != ":":
            raise ParseError("expected 'k j : coeff'", path, lineno)
        try:
            k, j = int(parts[0]), int(parts[1])
            c = Fraction(parts[3])
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad grid entry", path, lineno) from None
        if (k, j) in grid:
            raise ParseError(f"duplicate entry for t^{k} D^{j}", path, lineno)
        grid[(k, j)] = c
    if order is None:
        raise ParseError("missing 'order k' header", path)
    op = DifferentialOperator(grid)
    if op.order != order:
        raise ParseError(
            f"declared order {order} but grid has order {op.order}", path
        )
    return op


def format_operator(op: DifferentialOperator) -> str:
    lines = [f"order {op.order}"]
    for (k, j) in sorted(op._grid):
        c = op._grid[(k, j)]
        c_str = str(c.numerator) if c.denominator == 1 else str(c)
        lines.append(f"{k} {j} : {c_str}")
    return "\n".join(lines) + "\n"
