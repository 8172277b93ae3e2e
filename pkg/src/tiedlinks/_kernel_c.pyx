# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial kernel; same API as tiedlinks._kernel_py."""

from math import gcd

NVARS = 6

ZERO_EXP = (0, 0, 0, 0, 0, 0)


cpdef dict p_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


cpdef dict p_neg(dict a):
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e] = -c
    return out


cpdef dict p_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


cpdef dict p_scale(dict a, object k):
    if k == 0:
        return {}
    if k == 1:
        return dict(a)
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e] = c * k
    return out


cpdef dict p_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, s
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (
                ea[0] + eb[0],
                ea[1] + eb[1],
                ea[2] + eb[2],
                ea[3] + eb[3],
                ea[4] + eb[4],
                ea[5] + eb[5],
            )
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


cpdef dict p_shift(dict a, tuple delta):
    cdef long d0 = delta[0], d1 = delta[1], d2 = delta[2]
    cdef long d3 = delta[3], d4 = delta[4], d5 = delta[5]
    if d0 == 0 and d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0 and d5 == 0:
        return dict(a)
    cdef dict out = {}
    cdef tuple e
    cdef object c
    for e, c in a.items():
        out[(e[0] + d0, e[1] + d1, e[2] + d2, e[3] + d3, e[4] + d4, e[5] + d5)] = c
    return out


cpdef object p_content(dict a):
    cdef object g = 0
    cdef object c
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


cpdef tuple p_min_exps(dict a, dict b):
    """Componentwise minimum exponent over the keys of both dicts."""
    cdef list mins = None
    cdef tuple e
    cdef int i
    cdef dict d
    for d in (a, b):
        for e in d:
            if mins is None:
                mins = list(e)
            else:
                for i in range(6):
                    if e[i] < mins[i]:
                        mins[i] = e[i]
    if mins is None:
        return ZERO_EXP
    return tuple(mins)


cpdef object p_lead_coeff(dict a):
    """Coefficient of the first term in the canonical (ascending lex) order."""
    if not a:
        return 0
    return a[min(a)]
