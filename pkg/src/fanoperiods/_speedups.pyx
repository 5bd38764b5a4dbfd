# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled period-sequence kernel.

Same contract as ``_pure.power_constant_terms``: iterate g <- g*f on
packed exponent keys, pruning monomials that cannot return to the
constant term within the remaining multiplication budget.  Keys must fit
a signed 64-bit integer (the caller checks n * width <= 63 and falls
back to the pure kernel otherwise); coefficients are arbitrary Python
numbers (ints or Fractions).
"""

from cpython.dict cimport PyDict_GetItem, PyDict_Next, PyDict_SetItem
from cpython.object cimport PyObject

from libc.stdlib cimport free, malloc


cdef inline void _unpack(long long key, int n, int width, long long *out) noexcept:
    cdef long long base = (<long long>1) << width
    cdef long long half = base >> 1
    cdef long long mask = base - 1
    cdef long long r
    cdef int i
    for i in range(n):
        r = key & mask
        if r >= half:
            r -= base
        out[i] = r
        key = (key - r) >> width


def power_constant_terms(f_keys, f_coeffs, m_max, prune=None):
    cdef int nterms = len(f_keys)
    cdef long long *fk = <long long *>malloc(nterms * sizeof(long long))
    cdef int i, j
    cdef int n = 0, width = 0, nrows = 0
    cdef long long *prows = NULL
    cdef long long *ecoords = NULL
    cdef list out, fcs, drop
    cdef dict g, new
    cdef long long kf, key
    cdef object cf, cg, prev, keyobj
    cdef PyObject *pk
    cdef PyObject *pv
    cdef PyObject *hit
    cdef Py_ssize_t pos
    cdef int m, budget
    cdef long long acc, bound
    cdef bint bad

    if fk == NULL:
        raise MemoryError()
    try:
        for i in range(nterms):
            fk[i] = f_keys[i]
        fcs = list(f_coeffs)
        one = fcs[0] * 0 + 1 if fcs else 1
        out = [one]
        if m_max == 0:
            return out

        if prune is not None:
            n = prune[0]
            width = prune[1]
            rows = prune[2]
            nrows = len(rows)
            prows = <long long *>malloc(nrows * (n + 1) * sizeof(long long))
            ecoords = <long long *>malloc(n * sizeof(long long))
            if prows == NULL or ecoords == NULL:
                raise MemoryError()
            for i in range(nrows):
                for j in range(n + 1):
                    prows[i * (n + 1) + j] = rows[i][j]

        g = {0: one}
        for m in range(1, m_max + 1):
            new = {}
            for i in range(nterms):
                kf = fk[i]
                cf = fcs[i]
                pos = 0
                while PyDict_Next(g, &pos, &pk, &pv):
                    key = kf + (<object>pk)
                    cg = <object>pv
                    keyobj = key
                    hit = PyDict_GetItem(new, keyobj)
                    if hit == NULL:
                        PyDict_SetItem(new, keyobj, cf * cg)
                    else:
                        PyDict_SetItem(new, keyobj, (<object>hit) + cf * cg)
            drop = []
            pos = 0
            while PyDict_Next(new, &pos, &pk, &pv):
                if (<object>pv) == 0:
                    drop.append(<object>pk)
            for keyobj in drop:
                del new[keyobj]
            if prune is not None and m < m_max:
                budget = m_max - m
                drop = []
                pos = 0
                while PyDict_Next(new, &pos, &pk, &pv):
                    key = <object>pk
                    _unpack(key, n, width, ecoords)
                    bad = False
                    for i in range(nrows):
                        acc = 0
                        for j in range(n):
                            acc += prows[i * (n + 1) + j] * ecoords[j]
                        bound = budget * prows[i * (n + 1) + n]
                        if acc > bound:
                            bad = True
                            break
                    if bad:
                        drop.append(<object>pk)
                for keyobj in drop:
                    del new[keyobj]
            g = new
            hit = PyDict_GetItem(g, 0)
            if hit == NULL:
                out.append(one * 0)
            else:
                out.append(<object>hit)
        return out
    finally:
        free(fk)
        if prows != NULL:
            free(prows)
        if ecoords != NULL:
            free(ecoords)
