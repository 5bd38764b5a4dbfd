"""Sparse exact Laurent polynomials and classical period sequences.

A Laurent polynomial in n variables is stored as a finite map from
integer exponent vectors to rational coefficients.  All arithmetic is
exact; there is no floating point anywhere in this package's core.

The classical period sequence of f is ``c_m = constant term of f^m``.
Computing it is the hot loop of the whole pipeline, so the iteration is
delegated to a kernel working on packed exponent keys: a compiled
extension when available, otherwise a pure-Python twin with identical
semantics (set ``FANOPERIODS_PURE=1`` to force the fallback).
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import _pure
from .errors import (
    DimensionMismatchError,
    NonzeroConstantTermError,
    ParseError,
)

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None

#: bits available for a packed exponent key in the compiled kernel
_INT64_BITS = 63

_VARIABLE_NAMES = "xyzw"


def kernel_in_use() -> str:
    """Which period kernel new computations will pick by default."""
    if _speedups is None or os.environ.get("FANOPERIODS_PURE"):
        return "pure"
    return "compiled"


def _term_key(exponents):
    return (-sum(exponents), tuple(-e for e in exponents))


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("_n", "_terms")

    def __init__(self, dimension, terms=()):
        if dimension < 1:
            raise ValueError("dimension must be a positive integer")
        self._n = int(dimension)
        clean = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for exponents, coeff in items:
            e = tuple(int(x) for x in exponents)
            if len(e) != self._n:
                raise DimensionMismatchError(
                    f"monomial {e} has length {len(e)}, expected {self._n}"
                )
            c = Fraction(coeff)
            if c == 0:
                continue
            c += clean.get(e, 0)
            if c == 0:
                clean.pop(e, None)
            else:
                clean[e] = c
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dimension):
        return cls(dimension)

    @classmethod
    def one(cls, dimension):
        return cls(dimension, {(0,) * dimension: 1})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        return cls(len(exponents), {tuple(exponents): coeff})

    # -- basic queries ------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._n

    def items(self):
        """Terms in graded-lex order (higher total degree first)."""
        return tuple(
            (e, self._terms[e]) for e in sorted(self._terms, key=_term_key)
        )

    def support(self):
        return tuple(sorted(self._terms, key=_term_key))

    def coefficient(self, exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._n, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    # -- arithmetic ---------------------------------------------------

    def _check_dim(self, other):
        if self._n != other._n:
            raise DimensionMismatchError(
                f"dimensions differ: {self._n} vs {other._n}"
            )

    def __add__(self, other):
        self._check_dim(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentPolynomial(self._n, terms)

    def __neg__(self):
        return LaurentPolynomial(
            self._n, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_dim(other)
        prod = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = prod.get(e, 0) + ca * cb
                if s == 0:
                    prod.pop(e, None)
                else:
                    prod[e] = s
        return LaurentPolynomial(self._n, prod)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPolynomial.one(self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, factor):
        factor = Fraction(factor)
        return LaurentPolynomial(
            self._n, {e: c * factor for e, c in self._terms.items()}
        )

    def apply_matrix(self, u):
        """Monomial substitution x^e -> x^(U e) for an integer matrix U."""
        n = self._n
        terms = {}
        for e, c in self._terms.items():
            img = tuple(
                sum(u[i][j] * e[j] for j in range(n)) for i in range(n)
            )
            terms[img] = terms.get(img, 0) + c
        return LaurentPolynomial(n, terms)

    def translate(self, shift):
        """Multiply by the monomial x^shift."""
        return LaurentPolynomial(
            self._n,
            {
                tuple(x + s for x, s in zip(e, shift)): c
                for e, c in self._terms.items()
            },
        )

    # -- geometry -----------------------------------------------------

    def newton_polytope(self):
        from .polytope import LatticePolytope

        if not self._terms:
            raise ValueError("the zero polynomial has no Newton polytope")
        return LatticePolytope(self.support())

    def face_restriction(self, face):
        """Sum of the terms supported on a face of the Newton polytope."""
        p = self.newton_polytope()
        if face.parent != p:
            raise ValueError("not a face of the Newton polytope of f")
        kept = {
            e: c for e, c in self._terms.items() if face.contains_point(e)
        }
        return LaurentPolynomial(self._n, kept)

    def __repr__(self):
        return f"LaurentPolynomial({self._n}, {self.pretty()!r})"

    def pretty(self) -> str:
        """Human form like ``x + y + 3*x^-1*y^-1``."""
        if not self._terms:
            return "0"
        if self._n <= len(_VARIABLE_NAMES):
            names = _VARIABLE_NAMES[: self._n]
        else:
            names = [f"x{i + 1}" for i in range(self._n)]
        parts = []
        for e, c in self.items():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k != 0:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
                continue
            mono = "*".join(factors)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Exact product (zero-coefficient terms pruned)."""
    return f * g


def constant_term(f: LaurentPolynomial) -> Fraction:
    """Coefficient of the zero monomial (0 if absent)."""
    return f.constant_term()


def newton_polytope(f: LaurentPolynomial):
    return f.newton_polytope()


def face_restriction(f: LaurentPolynomial, face):
    return f.face_restriction(face)


# ---------------------------------------------------------------------------
# period sequences


class PeriodSequence:
    """A list of exact rational series coefficients c_0, ..., c_M.

    Used for classical periods, quantum periods, and their
    regularizations alike.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients):
        self._coeffs = tuple(
            c if isinstance(c, int) else Fraction(c) for c in coefficients
        )

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, i):
        got = self._coeffs[i]
        return PeriodSequence(got) if isinstance(i, slice) else got

    def __eq__(self, other):
        if isinstance(other, PeriodSequence):
            return len(self) == len(other) and all(
                a == b for a, b in zip(self._coeffs, other._coeffs)
            )
        if isinstance(other, (list, tuple)):
            return len(self._coeffs) == len(other) and all(
                a == b for a, b in zip(self._coeffs, other)
            )
        return NotImplemented

    def __hash__(self):
        return hash(tuple(Fraction(c) for c in self._coeffs))

    def head(self, n) -> "PeriodSequence":
        return PeriodSequence(self._coeffs[:n])

    def coefficients(self):
        return self._coeffs

    def __repr__(self):
        shown = ", ".join(str(c) for c in self._coeffs[:8])
        if len(self._coeffs) > 8:
            shown += ", ..."
        return f"PeriodSequence([{shown}])"


def _pack_support(support, coeffs, m_max):
    """Pack exponent vectors into single integers.

    Each coordinate gets a fixed bit field wide enough to hold any
    exponent reachable within m_max multiplications, so key addition is
    componentwise vector addition.  Returns (keys, width).
    """
    n = len(support[0])
    bound = m_max * max(abs(x) for e in support for x in e) + 1
    width = max(bound + 1, 2).bit_length() + 1
    keys = []
    for e in support:
        k = 0
        for i, x in enumerate(e):
            k += x << (width * i)
        keys.append(k)
    return keys, width


def period_sequence(f: LaurentPolynomial, m_max: int) -> PeriodSequence:
    """Classical period sequence (c_0, ..., c_M), c_m = coeff_1(f^m).

    Requires the normalization a_0 = 0: a nonzero constant term is
    rejected so that stored period sequences are unambiguous.
    """
    if m_max < 0:
        raise ValueError("number of terms must be nonnegative")
    if f.is_zero():
        raise ValueError("cannot compute the period of the zero polynomial")
    if f.constant_term() != 0:
        raise NonzeroConstantTermError(
            "f has nonzero constant term %s; renormalize first"
            % f.constant_term()
        )
    if m_max == 0:
        return PeriodSequence([1])

    support = list(f.support())
    integral = f.is_integral()
    coeffs = [
        int(f.coefficient(e)) if integral else f.coefficient(e)
        for e in support
    ]
    keys, width = _pack_support(support, coeffs, m_max)
    prune = _prune_data(f, width)

    n = f.dimension
    kernel = _pure
    if (
        _speedups is not None
        and not os.environ.get("FANOPERIODS_PURE")
        and n * width <= _INT64_BITS
    ):
        kernel = _speedups
    out = kernel.power_constant_terms(keys, coeffs, m_max, prune)
    return PeriodSequence(out)


def _prune_data(f, width):
    """Facet inequalities of Newt(f) for kernel-side support pruning.

    Only valid when the origin lies in the Newton polytope (then
    s*P, s = 0, 1, 2, ... is an increasing family); returns None
    otherwise and the kernel keeps the full support.
    """
    p = f.newton_polytope()
    if p.dim() != f.dimension:
        return None
    rows = []
    for normal, offset in p.facet_inequalities():
        if offset > 0:  # origin outside P
            return None
        rows.append(tuple(normal) + (-offset,))
    return (f.dimension, width, tuple(rows))


# ---------------------------------------------------------------------------
# text formats

def _iter_content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_fraction(token, path, lineno):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", path, lineno) from None


def parse_polynomial(text, path=None) -> LaurentPolynomial:
    """Read the one-term-per-line polynomial format.

    Header ``dim n``, then lines ``e1 e2 ... en : p/q`` (``/q``
    optional); ``#`` starts a comment.
    """
    n = None
    terms = {}
    for lineno, line in _iter_content_lines(text):
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError("expected header 'dim n'", path, lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError("bad dimension", path, lineno) from None
            if n < 1:
                raise ParseError("dimension must be >= 1", path, lineno)
            continue
        if ":" not in line:
            raise ParseError("expected 'e1 ... en : coeff'", path, lineno)
        left, right = line.split(":", 1)
        parts = left.split()
        if len(parts) != n:
            raise ParseError(
                f"expected {n} exponents, got {len(parts)}", path, lineno
            )
        try:
            e = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError("bad exponent", path, lineno) from None
        c = _parse_fraction(right.strip(), path, lineno)
        terms[e] = terms.get(e, 0) + c
    if n is None:
        raise ParseError("missing 'dim n' header", path)
    return LaurentPolynomial(n, terms)


def format_polynomial(f: LaurentPolynomial) -> str:
    lines = [f"dim {f.dimension}"]
    for e, c in f.items():
        coeff = str(c.numerator) if c.denominator == 1 else str(c)
        lines.append("%s : %s" % (" ".join(str(x) for x in e), coeff))
    return "\n".join(lines) + "\n"


def parse_period(text, path=None) -> PeriodSequence:
    """Read a period file: one rational coefficient per line."""
    coeffs = []
    for lineno, line in _iter_content_lines(text):
        coeffs.append(_parse_fraction(line, path, lineno))
    if not coeffs:
        raise ParseError("empty period file", path)
    return PeriodSequence(coeffs)


def format_period(seq: PeriodSequence) -> str:
    out = []
    for c in seq:
        c = Fraction(c)
        out.append(str(c.numerator) if c.denominator == 1 else str(c))
    return "\n".join(out) + "\n"
