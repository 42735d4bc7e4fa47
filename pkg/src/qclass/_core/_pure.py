"""Pure-Python lane of the coefficient kernel.

A Laurent-polynomial datum is a pair ``(terms, den)``:

  terms : dict mapping exponent keys to Gaussian-integer pairs ``(re, im)``
  den   : positive int, the common rational denominator of all coefficients

An exponent key is ``(s_exp, z_exps, t_exp)`` where ``s_exp`` is the
exponent of s = q^(1/2), ``z_exps`` a tuple of block-parameter exponents
with trailing zeros trimmed, and ``t_exp`` the exponent of the generic
parameter t.  Canonical form: no zero coefficient pairs are stored and
gcd(den, all re, all im) == 1.

The compiled lane (`qclass._core._speed`) implements the same functions
with identical results; `qclass._core` selects one at import time.
"""

from math import gcd

ZKEY = (0, (), 0)


def zexp_add(a, b):
    """Add two z-exponent tuples, trimming trailing zeros."""
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] += b[i]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pnorm(terms, den):
    """Canonicalize: strip zero pairs, make content 1."""
    if not terms:
        return {}, 1
    g = den
    for a, b in terms.values():
        g = gcd(g, a, b)
        if g == 1:
            break
    if g == 1:
        return terms, den
    return {k: (a // g, b // g) for k, (a, b) in terms.items()}, den // g


def padd(t1, d1, t2, d2):
    """Sum of two canonical poly data, returned canonical."""
    if not t1:
        return dict(t2), d2
    if not t2:
        return dict(t1), d1
    g = gcd(d1, d2)
    m1 = d2 // g
    m2 = d1 // g
    den = d1 * m1
    if m1 == 1 and m2 == 1:
        out = dict(t1)
        for k, (a, b) in t2.items():
            cur = out.get(k)
            if cur is None:
                out[k] = (a, b)
            else:
                a += cur[0]
                b += cur[1]
                if a == 0 and b == 0:
                    del out[k]
                else:
                    out[k] = (a, b)
        return pnorm(out, den)
    out = {k: (a * m1, b * m1) for k, (a, b) in t1.items()}
    for k, (a, b) in t2.items():
        a *= m2
        b *= m2
        cur = out.get(k)
        if cur is None:
            out[k] = (a, b)
        else:
            a += cur[0]
            b += cur[1]
            if a == 0 and b == 0:
                del out[k]
            else:
                out[k] = (a, b)
    return pnorm(out, den)


def pneg(t1, d1):
    return {k: (-a, -b) for k, (a, b) in t1.items()}, d1


def pmul(t1, d1, t2, d2):
    """Product of two canonical poly data, returned canonical."""
    if not t1 or not t2:
        return {}, 1
    out = {}
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    for (s1, z1, e1), (a1, b1) in t1.items():
        for (s2, z2, e2), (a2, b2) in t2.items():
            k = (s1 + s2, zexp_add(z1, z2), e1 + e2)
            re = a1 * a2 - b1 * b2
            im = a1 * b2 + b1 * a2
            cur = out.get(k)
            if cur is None:
                out[k] = (re, im)
            else:
                re += cur[0]
                im += cur[1]
                if re == 0 and im == 0:
                    del out[k]
                else:
                    out[k] = (re, im)
    return pnorm(out, d1 * d2)


def pscale(t1, d1, a, b, d):
    """Multiply a poly datum by the Gaussian rational (a + b*i)/d."""
    if not t1 or (a == 0 and b == 0):
        return {}, 1
    out = {}
    for k, (x, y) in t1.items():
        out[k] = (x * a - y * b, x * b + y * a)
    return pnorm(out, d1 * d)
