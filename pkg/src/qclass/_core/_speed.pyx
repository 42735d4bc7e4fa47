# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled lane of the coefficient kernel.

Same datum and same results as qclass._core._pure: a Laurent polynomial
is (terms, den) with terms a dict keyed by (s_exp, z_exps, t_exp) and
Gaussian-integer pair values, den a positive int, content 1.
"""

from math import gcd


ZKEY = (0, (), 0)


def zexp_add(tuple a, tuple b):
    """Add two z-exponent tuples, trimming trailing zeros."""
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    cdef Py_ssize_t i
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return tuple(out)


def pnorm(dict terms, den):
    """Canonicalize: strip zero pairs, make content 1."""
    if not terms:
        return {}, 1
    g = den
    for v in terms.values():
        g = gcd(g, v[0], v[1])
        if g == 1:
            break
    if g == 1:
        return terms, den
    cdef dict out = {}
    for k, v in terms.items():
        out[k] = (v[0] // g, v[1] // g)
    return out, den // g


def padd(dict t1, d1, dict t2, d2):
    """Sum of two canonical poly data, returned canonical."""
    if not t1:
        return dict(t2), d2
    if not t2:
        return dict(t1), d1
    g = gcd(d1, d2)
    m1 = d2 // g
    m2 = d1 // g
    den = d1 * m1
    cdef dict out
    if m1 == 1 and m2 == 1:
        out = dict(t1)
        for k, v in t2.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                a = cur[0] + v[0]
                b = cur[1] + v[1]
                if a == 0 and b == 0:
                    del out[k]
                else:
                    out[k] = (a, b)
        return pnorm(out, den)
    out = {}
    for k, v in t1.items():
        out[k] = (v[0] * m1, v[1] * m1)
    for k, v in t2.items():
        a = v[0] * m2
        b = v[1] * m2
        cur = out.get(k)
        if cur is None:
            out[k] = (a, b)
        else:
            a = a + cur[0]
            b = b + cur[1]
            if a == 0 and b == 0:
                del out[k]
            else:
                out[k] = (a, b)
    return pnorm(out, den)


def pneg(dict t1, d1):
    cdef dict out = {}
    for k, v in t1.items():
        out[k] = (-v[0], -v[1])
    return out, d1


def pmul(dict t1, d1, dict t2, d2):
    """Product of two canonical poly data, returned canonical."""
    if not t1 or not t2:
        return {}, 1
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    cdef dict out = {}
    cdef tuple k1, k2, key
    for k1, v1 in t1.items():
        a1 = v1[0]
        b1 = v1[1]
        s1 = k1[0]
        z1 = k1[1]
        e1 = k1[2]
        for k2, v2 in t2.items():
            key = (s1 + k2[0], zexp_add(z1, k2[1]), e1 + k2[2])
            re = a1 * v2[0] - b1 * v2[1]
            im = a1 * v2[1] + b1 * v2[0]
            cur = out.get(key)
            if cur is not None:
                re = re + cur[0]
                im = im + cur[1]
                if re == 0 and im == 0:
                    del out[key]
                    continue
            out[key] = (re, im)
    return pnorm(out, d1 * d2)


def pscale(dict t1, d1, a, b, d):
    """Multiply a poly datum by the Gaussian rational (a + b*i)/d."""
    if not t1 or (a == 0 and b == 0):
        return {}, 1
    cdef dict out = {}
    for k, v in t1.items():
        out[k] = (v[0] * a - v[1] * b, v[0] * b + v[1] * a)
    return pnorm(out, d1 * d)
