"""Pure-Python period-sequence kernel.

Reference implementation of the hot loop: iterated sparse multiplication
g <- g*f reading off the constant term after every step.  Exponent
vectors arrive packed into single integers (see ``laurent._pack``), so a
monomial product is one integer addition and the constant term is key 0.

The compiled kernel in ``_speedups`` implements exactly the same
contract; parity between the two is asserted by the test suite.
"""

from __future__ import annotations


def power_constant_terms(f_keys, f_coeffs, m_max, prune=None):
    """Constant terms of f^0, ..., f^m_max.

    ``prune``, when given, is ``(n, width, rows)`` where each row is
    ``(a_1..a_n, b)``: a monomial with packed exponent vector e survives
    step m only if <a, e> <= (m_max - m) * b for every row.  Monomials
    failing this can never multiply back to the constant term within the
    remaining budget, so dropping them is exact.
    """
    one = f_coeffs[0] * 0 + 1 if f_coeffs else 1
    out = [one]
    if m_max == 0:
        return out
    f_items = list(zip(f_keys, f_coeffs))
    g = {0: one}
    for m in range(1, m_max + 1):
        new = {}
        get = new.get
        for kf, cf in f_items:
            for kg, cg in g.items():
                k = kf + kg
                prev = get(k)
                if prev is None:
                    new[k] = cf * cg
                else:
                    new[k] = prev + cf * cg
        for k in [k for k, c in new.items() if c == 0]:
            del new[k]
        if prune is not None and m < m_max:
            budget = m_max - m
            n, width, rows = prune
            drop = []
            for k in new:
                e = _unpack(k, n, width)
                for row in rows:
                    s = 0
                    for i in range(n):
                        s += row[i] * e[i]
                    if s > budget * row[n]:
                        drop.append(k)
                        break
            for k in drop:
                del new[k]
        g = new
        out.append(g.get(0, one * 0))
    return out


def _unpack(key, n, width):
    base = 1 << width
    half = base >> 1
    e = []
    for _ in range(n):
        r = key & (base - 1)
        if r >= half:
            r -= base
        e.append(r)
        key = (key - r) >> width
    return e
