"""Pure-Python polynomial kernel.

A polynomial in the six variables (u, v, x, y, w, z) is a dict mapping a
6-tuple of integer exponents (Laurent: negatives allowed) to a nonzero int
coefficient.  These functions are the hot inner loop of every invariant
computation; `tiedlinks._kernel_c` is a compiled twin with the same API.
"""

from math import gcd

NVARS = 6

ZERO_EXP = (0,) * NVARS


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def p_neg(a):
    return {e: -c for e, c in a.items()}


def p_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def p_scale(a, k):
    if k == 0:
        return {}
    if k == 1:
        return dict(a)
    return {e: c * k for e, c in a.items()}


def p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        a0, a1, a2, a3, a4, a5 = ea
        for eb, cb in b.items():
            e = (a0 + eb[0], a1 + eb[1], a2 + eb[2], a3 + eb[3], a4 + eb[4], a5 + eb[5])
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def p_shift(a, delta):
    d0, d1, d2, d3, d4, d5 = delta
    if not (d0 or d1 or d2 or d3 or d4 or d5):
        return dict(a)
    return {
        (e[0] + d0, e[1] + d1, e[2] + d2, e[3] + d3, e[4] + d4, e[5] + d5): c
        for e, c in a.items()
    }


def p_content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def p_min_exps(a, b):
    """Componentwise minimum exponent over the keys of both dicts."""
    mins = None
    for d in (a, b):
        for e in d:
            if mins is None:
                mins = list(e)
            else:
                for i in range(NVARS):
                    if e[i] < mins[i]:
                        mins[i] = e[i]
    return tuple(mins) if mins is not None else ZERO_EXP


def p_lead_coeff(a):
    """Coefficient of the first term in the canonical (ascending lex) order."""
    if not a:
        return 0
    return a[min(a)]
