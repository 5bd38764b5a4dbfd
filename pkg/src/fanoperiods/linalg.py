"""Exact linear algebra over Q, over Z, and over user-supplied fields.

Everything here is small and dense: the matrices produced by operator
fitting and by local solution-space computations have at most a few
hundred rows.  Correctness and determinism take priority over asymptotic
cleverness; there are no floating-point or modular shortcuts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# rational matrices


def _entry_size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _scale_row_primitive(row):
    """Scale a rational row to a primitive integer row (content 1)."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return [Fraction(v) for v in ints]


def rref(rows):
    """Reduced row echelon form of a rational matrix.

    Returns ``(matrix, pivot_columns)``.  Pivots are chosen by smallest
    bit size within the current column, and rows are rescaled to
    primitive integer vectors after every elimination step to keep the
    intermediate entries small.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                size = _entry_size(m[i][c])
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        m[r], m[i] = m[i], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                if any(m[i]):
                    m[i] = _scale_row_primitive(m[i])
                    # keep reduced rows normalized below pivot rows only
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    # back-substitution pass: make entries above pivots zero, pivot = 1
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        piv = m[k][c]
        if piv != 1:
            m[k] = [x / piv for x in m[k]]
        for i in range(k):
            if m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of the right nullspace of a rational matrix.

    The basis is in reduced echelon shape (one vector per free column,
    with a 1 in that column), which makes the result deterministic.
    """
    if not rows:
        if not ncols:
            return []
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    ncols = len(rows[0])
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def solve_right(matrix, rhs_rows):
    """Solve ``X * matrix = rhs`` row by row for a square rational matrix.

    Used for power-series matrix recursions; raises ``ValueError`` when
    the matrix is singular.
    """
    inv = invert(matrix)
    return [mat_vec_t(inv, row) for row in rhs_rows]


def invert(matrix):
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def mat_vec_t(matrix, row):
    """Row vector times matrix (``row @ matrix``)."""
    n = len(matrix)
    ncols = len(matrix[0])
    return [
        sum((row[i] * matrix[i][j] for i in range(n)), Fraction(0))
        for j in range(ncols)
    ]


def mat_mul(a, b):
    return [mat_vec_t(b, row) for row in a]


# ---------------------------------------------------------------------------
# integer lattices

def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_vector(v):
    """Divide an integer vector by its content; the zero vector is kept."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def hermite_row_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    The result is the canonical representative of the left
    ``GL_n(Z)``-orbit of the input: echelon with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.  Zero rows sink
    to the bottom.
    """
    m = [list(map(int, row)) for row in rows]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        # clear column c below row r using gcd steps
        while True:
            nz = [i for i in range(r, nrows) if m[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[i] = m[i], m[r]
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            done = True
            for i in range(r + 1, nrows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and m[r][c] != 0:
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == nrows:
                break
    return [tuple(row) for row in m]


def lattice_basis(generators):
    """Basis (Hermite form, zero rows dropped) of the lattice spanned by
    the given integer vectors."""
    return [row for row in hermite_row_form(generators) if any(row)]


def lattice_equal(gens_a, gens_b) -> bool:
    return lattice_basis(list(gens_a)) == lattice_basis(list(gens_b))


def lattice_sum(*gens) -> list:
    merged = []
    for g in gens:
        merged.extend(g)
    return lattice_basis(merged)


def functional_kernel_basis(a):
    """Basis of ``{x in Z^n : <a, x> = 0}`` for an integer vector ``a``.

    Computed by running the extended gcd on the coordinates with
    unimodular column bookkeeping, so the basis is genuinely a lattice
    basis (saturated), not merely a spanning set.
    """
    n = len(a)
    a = list(a)
    # columns of u are the current basis of Z^n
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    # reduce a to (g, 0, ..., 0) by column operations
    for c in range(1, n):
        x, y = a[0], a[c]
        while y:
            q = x // y
            x, y = y, x - q * y
            # column op on (0, c): mirrors the gcd step
            for i in range(n):
                u[i][0], u[i][c] = u[i][c], u[i][0] - q * u[i][c]
        a[0], a[c] = x, 0
    basis = []
    for c in range(1, n):
        basis.append(tuple(u[i][c] for i in range(n)))
    if a[0] == 0:  # the functional was zero: the first column is kernel too
        basis.insert(0, tuple(u[i][0] for i in range(n)))
    return basis
