"""Quantum periods of toric Fano manifolds and complete intersections.

The toric formula sums t^(-K.k) / prod (D_i.k)! over the lattice points
k of the Mori cone (input as the dual of user-supplied nef generators);
1/(negative integer)! counts as 0.  Complete intersections twist the
analogous A-graded sum by exp(-a_1 t).  The matrix method integrates
D Psi = Psi M(t), Psi(0) = Id, degree by degree and reads the quantum
period off the first entry.  Everything is exact rational arithmetic;
cone positivity checks and enumeration bounds use Fourier-Motzkin
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, factorial

from .errors import ParseError
from .laurent import PeriodSequence
from .linalg import invert, mat_vec_t, rank as _q_rank

# ---------------------------------------------------------------------------
# exact Fourier-Motzkin elimination
#
# A system is a list of rows (a, c) meaning <a, x> >= c.


def _fm_eliminate(rows, var):
    pos, neg, zero = [], [], []
    for a, c in rows:
        if a[var] > 0:
            pos.append((a, c))
        elif a[var] < 0:
            neg.append((a, c))
        else:
            zero.append((a, c))
    out = list(zero)
    for ap, cp in pos:
        for an, cn in neg:
            sp, sn = -an[var], ap[var]
            a = tuple(sp * x + sn * y for x, y in zip(ap, an))
            out.append((a, sp * cp + sn * cn))
    seen = set()
    unique = []
    for a, c in out:
        key = (a, c)
        if key not in seen:
            seen.add(key)
            unique.append((a, c))
    return unique


def _fm_chain(rows, nvars):
    """chain[j] is the system in the first j variables."""
    chain = [None] * (nvars + 1)
    chain[nvars] = list(rows)
    for j in range(nvars, 0, -1):
        chain[j - 1] = _fm_eliminate(chain[j], j - 1)
    return chain


def fm_feasible(rows, nvars) -> bool:
    """Feasibility of <a, x> >= c over the rationals."""
    chain = _fm_chain(rows, nvars)
    return all(c <= 0 for _, c in chain[0])


def _bounds(rows, var, prefix):
    lo, hi = None, None
    for a, c in rows:
        coeff = a[var]
        if coeff == 0:
            continue
        rest = c - sum(a[i] * prefix[i] for i in range(var))
        bound = Fraction(rest, coeff)
        if coeff > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    return lo, hi


def fm_lattice_points(rows, nvars):
    """Integer solutions of <a, x> >= c, in lexicographic order.

    The system must be bounded (the callers' degree slices of a Mori
    cone always are).
    """
    chain = _fm_chain(rows, nvars)
    out = []

    def recurse(prefix):
        j = len(prefix)
        lo, hi = _bounds(chain[j + 1], j, prefix)
        if lo is None or hi is None:
            raise ValueError("unbounded enumeration")
        for v in range(ceil(lo), floor(hi) + 1):
            nxt = prefix + (v,)
            if j + 1 == nvars:
                out.append(nxt)
            else:
                recurse(nxt)

    recurse(())
    return out


# ---------------------------------------------------------------------------
# toric data


@dataclass(frozen=True)
class ToricData:
    """Weight data of a toric Fano manifold plus its nef cone.

    ``weights`` is the b x r matrix whose columns are the divisor
    classes D_1, ..., D_r in Z^b; ``nef`` rows cut out the Mori cone
    NE = {k : <nef_i, k> >= 0}.  The cone is supplied, not derived from
    fan combinatorics; validation checks the nef rows span and that
    -K = sum D_i is strictly positive on NE minus the origin (otherwise
    the quantum-period sum would be unbounded).
    """

    weights: tuple
    nef: tuple

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in row) for row in self.weights)
        nef = tuple(tuple(int(x) for x in row) for row in self.nef)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "nef", nef)
        b = len(w)
        if b < 1 or any(len(row) != len(w[0]) for row in w):
            raise ValueError("weight matrix must be rectangular, b >= 1")
        if not nef or any(len(row) != b for row in nef):
            raise ValueError("nef generators must be vectors of length b")
        if _q_rank([[Fraction(x) for x in row] for row in nef]) != b:
            raise ValueError("nef cone is not full-dimensional")
        if not self._positive_on_cone(self.anticanonical()):
            raise ValueError(
                "-K is not strictly positive on NE minus 0; "
                "the quantum period would not converge degree by degree"
            )

    @property
    def b(self) -> int:
        return len(self.weights)

    @property
    def r(self) -> int:
        return len(self.weights[0])

    def divisor(self, j):
        return tuple(self.weights[i][j] for i in range(self.b))

    def anticanonical(self):
        return tuple(sum(row) for row in self.weights)

    def cone_rows(self):
        return [(g, 0) for g in self.nef]

    def _positive_on_cone(self, functional) -> bool:
        """Is <functional, k> > 0 for every nonzero k in NE?"""
        base = self.cone_rows() + [
            (tuple(-x for x in functional), 0)
        ]
        for i in range(self.b):
            for sign in (1, -1):
                unit = tuple(
                    sign if j == i else 0 for j in range(self.b)
                )
                if fm_feasible(base + [(unit, 1)], self.b):
                    return False
        return True

    def nonnegative_on_cone(self, functional) -> bool:
        base = self.cone_rows() + [
            (tuple(-x for x in functional), 1)
        ]
        return not fm_feasible(base, self.b)

    def degree_slice(self, functional, m):
        """Lattice points of NE with <functional, k> = m."""
        rows = self.cone_rows()
        rows.append((functional, m))
        rows.append((tuple(-x for x in functional), -m))
        return fm_lattice_points(rows, self.b)

    # -- convenience constructors --------------------------------------

    @classmethod
    def projective_space(cls, n: int) -> "ToricData":
        return cls(weights=((1,) * (n + 1),), nef=((1,),))

    @classmethod
    def product_of_projective_spaces(cls, *ns) -> "ToricData":
        b = len(ns)
        cols = []
        for i, n in enumerate(ns):
            col = tuple(int(k == i) for k in range(b))
            cols.extend([col] * (n + 1))
        weights = tuple(
            tuple(col[i] for col in cols) for i in range(b)
        )
        nef = tuple(
            tuple(int(k == i) for k in range(b)) for i in range(b)
        )
        return cls(weights=weights, nef=nef)


def _reciprocal_factorials(values):
    """prod 1/(v!) with the convention 1/(negative)! = 0."""
    acc = Fraction(1)
    for v in values:
        if v < 0:
            return Fraction(0)
        acc /= factorial(v)
    return acc


def toric_quantum_period(data: ToricData, m_max: int) -> PeriodSequence:
    """Coefficients p_m of G_X for a toric Fano manifold, m <= m_max."""
    mk = data.anticanonical()
    divisors = [data.divisor(j) for j in range(data.r)]
    out = []
    for m in range(m_max + 1):
        acc = Fraction(0)
        for k in data.degree_slice(mk, m):
            acc += _reciprocal_factorials(
                [sum(d * x for d, x in zip(dv, k)) for dv in divisors]
            )
        out.append(int(acc) if acc.denominator == 1 else acc)
    return PeriodSequence(out)


@dataclass(frozen=True)
class BundleData:
    """Nef line bundles L_1, ..., L_c cutting out a complete intersection."""

    bundles: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "bundles",
            tuple(tuple(int(x) for x in row) for row in self.bundles),
        )

    def validate(self, data: ToricData):
        for line in self.bundles:
            if len(line) != data.b:
                raise ValueError("bundle class has wrong length")
            if not data.nonnegative_on_cone(line):
                raise ValueError(f"bundle {line} is not nef")
        a = self.ambient_twist(data)
        if not data._positive_on_cone(a):
            raise ValueError(
                "A = -K - sum L_i is not strictly positive on NE minus 0"
            )
        return a

    def ambient_twist(self, data: ToricData):
        mk = data.anticanonical()
        return tuple(
            mk[i] - sum(line[i] for line in self.bundles)
            for i in range(data.b)
        )


def ci_quantum_period(
    data: ToricData, bundles: BundleData, m_max: int
) -> PeriodSequence:
    """Quantum period of a complete intersection, via the A-graded sum
    F_X and the exp(-a_1 t) twist, truncated at m_max."""
    a = bundles.validate(data)
    divisors = [data.divisor(j) for j in range(data.r)]
    f_coeffs = []
    for m in range(m_max + 1):
        acc = Fraction(0)
        for k in data.degree_slice(a, m):
            num = Fraction(1)
            for line in bundles.bundles:
                v = sum(l * x for l, x in zip(line, k))
                num *= factorial(v)  # L_i nef: v >= 0
            acc += num * _reciprocal_factorials(
                [sum(d * x for d, x in zip(dv, k)) for dv in divisors]
            )
        f_coeffs.append(acc)
    a1 = f_coeffs[1] if len(f_coeffs) > 1 else Fraction(0)
    out = []
    for m in range(m_max + 1):
        acc = Fraction(0)
        pw = Fraction(1)
        for i in range(m + 1):
            acc += pw / factorial(i) * f_coeffs[m - i]
            pw *= -a1
        out.append(int(acc) if acc.denominator == 1 else acc)
    return PeriodSequence(out)


def regularize(seq: PeriodSequence) -> PeriodSequence:
    """Termwise Fourier-Laplace twist c_m = m! p_m."""
    out = []
    for m, c in enumerate(seq):
        v = factorial(m) * Fraction(c)
        out.append(int(v) if v.denominator == 1 else v)
    return PeriodSequence(out)


# ---------------------------------------------------------------------------
# the matrix method


@dataclass(frozen=True)
class QuantumMatrix:
    """Square matrix of polynomials in t (entries as ascending
    coefficient tuples): quantum multiplication by -K in a fixed basis."""

    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        ent = []
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            ent.append(
                tuple(tuple(Fraction(c) for c in poly) for poly in row)
            )
        object.__setattr__(self, "entries", tuple(ent))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def max_degree(self) -> int:
        return max(
            (len(poly) - 1 for row in self.entries for poly in row),
            default=0,
        )

    def coefficient_matrix(self, k):
        n = self.dimension
        return [
            [
                self.entries[i][j][k] if k < len(self.entries[i][j]) else Fraction(0)
                for j in range(n)
            ]
            for i in range(n)
        ]


def matrix_quantum_period(matrix: QuantumMatrix, m_max: int) -> PeriodSequence:
    """Solve D Psi = Psi M(t) with Psi(0) = Id as a power series and
    return the (0, 0) entry coefficients.

    Degree m gives Psi_m(m Id - M_0) = sum_{k>=1} Psi_{m-k} M_k, which is
    solvable for every m >= 1 when M_0 is nilpotent (as it is for
    quantum multiplication matrices)."""
    n = matrix.dimension
    mats = [matrix.coefficient_matrix(k) for k in range(matrix.max_degree + 1)]
    identity = [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)
    ]
    psi = [identity]
    out = [Fraction(1)]
    for m in range(1, m_max + 1):
        rhs = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, min(m, len(mats) - 1) + 1):
            prev = psi[m - k]
            mk = mats[k]
            for i in range(n):
                row = prev[i]
                for l in range(n):
                    c = row[l]
                    if c:
                        target = rhs[i]
                        mrow = mk[l]
                        for j in range(n):
                            if mrow[j]:
                                target[j] += c * mrow[j]
        lhs = [
            [
                (m if i == j else 0) - mats[0][i][j]
                for j in range(n)
            ]
            for i in range(n)
        ]
        try:
            inv = invert(lhs)
        except ValueError:
            raise ValueError(
                f"degree-{m} system is singular: m Id - M(0) not invertible"
            ) from None
        psi_m = [mat_vec_t(inv, row) for row in rhs]
        psi.append(psi_m)
        out.append(psi_m[0][0])
    return PeriodSequence(
        [int(c) if Fraction(c).denominator == 1 else c for c in out]
    )


# ---------------------------------------------------------------------------
# mirror matching


@dataclass(frozen=True)
class MatchVerdict:
    matched: bool
    depth: int
    mismatch_index: int | None = None
    operators_equal: bool | None = None

    def describe(self) -> str:
        if self.matched:
            msg = f"match to depth {self.depth}"
            if self.operators_equal is not None:
                msg += (
                    "; fitted operators agree"
                    if self.operators_equal
                    else "; fitted operators DIFFER"
                )
            return msg
        return f"mismatch at index {self.mismatch_index}"


def mirror_match(
    classical: PeriodSequence,
    quantum: PeriodSequence,
    min_overlap: int = 20,
    compare_operators: bool = False,
    fit_cfg=None,
) -> MatchVerdict:
    """Compare a classical period with a (regularized) quantum period.

    ``quantum`` is the raw quantum period; it is regularized here.  The
    verdict covers the common head of both sequences, which must be at
    least ``min_overlap`` terms.
    """
    overlap = min(len(classical), len(quantum))
    if overlap < min_overlap:
        raise ValueError(
            f"insufficient overlap: {overlap} < required {min_overlap}"
        )
    reg = regularize(quantum)
    for i in range(overlap):
        if classical[i] != reg[i]:
            return MatchVerdict(matched=False, depth=i, mismatch_index=i)
    ops_equal = None
    if compare_operators:
        from .pf import FitConfig, fit_operator

        cfg = fit_cfg or FitConfig()
        ops_equal = fit_operator(
            classical, cfg
        ).equivalent(fit_operator(reg, cfg))
    return MatchVerdict(matched=True, depth=overlap, operators_equal=ops_equal)


# ---------------------------------------------------------------------------
# text formats


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_toric(text, path=None):
    """Toric data file: header ``b r``, b weight-matrix rows, a ``nef``
    section, and an optional ``bundles`` section.

    Returns ``(ToricData, BundleData | None)``."""
    b = r = None
    weights = []
    nef = []
    bundles = []
    section = "weights"
    for lineno, line in _content_lines(text):
        parts = line.split()
        if b is None:
            if len(parts) != 2:
                raise ParseError("expected header 'b r'", path, lineno)
            try:
                b, r = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("bad header", path, lineno) from None
            continue
        if parts == ["nef"]:
            section = "nef"
            continue
        if parts == ["bundles"]:
            section = "bundles"
            continue
        try:
            row = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError("bad integer row", path, lineno) from None
        if section == "weights":
            if len(row) != r:
                raise ParseError(f"expected {r} entries", path, lineno)
            weights.append(row)
        else:
            if len(row) != b:
                raise ParseError(f"expected {b} entries", path, lineno)
            (nef if section == "nef" else bundles).append(row)
    if b is None:
        raise ParseError("missing 'b r' header", path)
    if len(weights) != b:
        raise ParseError(f"expected {b} weight rows, got {len(weights)}", path)
    if not nef:
        raise ParseError("missing nef section", path)
    data = ToricData(weights=tuple(weights), nef=tuple(nef))
    return data, (BundleData(tuple(bundles)) if bundles else None)


def format_toric(data: ToricData, bundles: BundleData | None = None) -> str:
    lines = [f"{data.b} {data.r}"]
    for row in data.weights:
        lines.append(" ".join(str(x) for x in row))
    lines.append("nef")
    for row in data.nef:
        lines.append(" ".join(str(x) for x in row))
    if bundles is not None and bundles.bundles:
        lines.append("bundles")
        for row in bundles.bundles:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_quantum_matrix(text, path=None) -> QuantumMatrix:
    """Matrix file: header ``dim n`` then entries ``i j k : coeff`` for
    the coefficient of t^k in entry (i, j)."""
    n = None
    data = {}
    for lineno, line in _content_lines(text):
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError("expected header 'dim n'", path, lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError("bad dimension", path, lineno) from None
            continue
        if len(parts) != 5 or parts[3] != ":":
            raise ParseError("expected 'i j k : coeff'", path, lineno)
        try:
            i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
            c = Fraction(parts[4])
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad entry", path, lineno) from None
        if not (0 <= i < n and 0 <= j < n and k >= 0):
            raise ParseError("entry out of range", path, lineno)
        data[(i, j, k)] = data.get((i, j, k), 0) + c
    if n is None:
        raise ParseError("missing 'dim n' header", path)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            degs = [k for (a, b_, k) in data if a == i and b_ == j]
            top = max(degs) if degs else 0
            row.append(
                tuple(data.get((i, j, k), Fraction(0)) for k in range(top + 1))
            )
        entries.append(tuple(row))
    return QuantumMatrix(entries=tuple(entries))


def format_quantum_matrix(matrix: QuantumMatrix) -> str:
    lines = [f"dim {matrix.dimension}"]
    for i, row in enumerate(matrix.entries):
        for j, poly in enumerate(row):
            for k, c in enumerate(poly):
                if c:
                    c_str = (
                        str(c.numerator) if c.denominator == 1 else str(c)
                    )
                    lines.append(f"{i} {j} {k} : {c_str}")
    return "\n".join(lines) + "\n"
