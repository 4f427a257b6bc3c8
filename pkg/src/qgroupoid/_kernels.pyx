# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`qgroupoid._kernels_py` (same semantics)."""

from fractions import Fraction
from math import gcd

cdef object _ONE = Fraction(1)
cdef object _FRACTION = Fraction


cdef inline object _frac(object n, object d):
    # n/d already in lowest terms with d > 0; skips Fraction.__new__ normalization
    cdef object f = object.__new__(_FRACTION)
    f._numerator = n
    f._denominator = d
    return f


cdef object _fma(object w, object c, object v):
    """``w + c*v`` on Fractions with the gcd shortcuts of ``Fraction.__add__``; ``None`` means zero."""
    cdef object a, b, g, g2, num, den, s
    # c*v, cancelling across
    num, den = c._numerator, v._denominator
    g = gcd(num, den)
    if g != 1:
        num //= g
        den //= g
    a, b = v._numerator, c._denominator
    g = gcd(a, b)
    if g != 1:
        a //= g
        b //= g
    num = num * a
    den = den * b
    if w is None:
        return _frac(num, den)
    a, b = w._numerator, w._denominator
    g = gcd(b, den)
    if g == 1:
        num = a * den + num * b
        den = b * den
    else:
        s = b // g
        num = a * (den // g) + num * s
        g2 = gcd(num, g)
        if g2 != 1:
            num //= g2
        den = s * (den // g2)
    if not num:
        return None
    return _frac(num, den)


cpdef void add_scaled(dict target, object coeff, dict src):
    cdef object k, v, w
    if not coeff:
        return
    if type(coeff) is _FRACTION:
        for k, v in src.items():
            if type(v) is not _FRACTION:
                break
            w = target.get(k)
            if w is not None and type(w) is not _FRACTION:
                break
            w = _fma(w, coeff, v)
            if w is None:
                target.pop(k, None)
            else:
                target[k] = w
        else:
            return
        # mixed scalars: fall through for the remaining entries
        _generic_tail(target, coeff, src, k)
        return
    for k, v in src.items():
        w = target.get(k)
        if w is None:
            target[k] = coeff * v
        else:
            w = w + coeff * v
            if w:
                target[k] = w
            else:
                del target[k]


cdef void _generic_tail(dict target, object coeff, dict src, object start):
    cdef object k, v, w
    cdef bint on = False
    for k, v in src.items():
        if not on:
            if k == start:
                on = True
            else:
                continue
        w = target.get(k)
        if w is None:
            target[k] = coeff * v
        else:
            w = w + coeff * v
            if w:
                target[k] = w
            else:
                del target[k]


cpdef dict reduce_vector(dict rows, dict vec):
    cdef dict out = dict(vec)
    cdef list hits = [c for c in out if c in rows]
    cdef object c, x
    for c in hits:
        x = out.get(c)
        if x:
            add_scaled(out, -x, <dict>rows[c])
    return out


cpdef object insert_row(dict rows, dict vec, object limit=None):
    cdef dict v = reduce_vector(rows, vec)
    cdef list cols
    cdef long lim
    cdef object k, x, inv, p
    cdef dict row
    if limit is None:
        cols = list(v)
    else:
        lim = limit
        cols = [c for c in v if c < lim]
    if not cols:
        return None
    p = min(cols)
    inv = _ONE / v[p]
    if inv != 1:
        for k in list(v):
            v[k] = v[k] * inv
    for row in rows.values():
        x = row.get(p)
        if x:
            add_scaled(row, -x, v)
    rows[p] = v
    return p


cpdef dict apply_columns(list cols, dict vec):
    cdef dict out = {}
    cdef object j, x, col
    for j, x in vec.items():
        col = cols[j]
        if col:
            add_scaled(out, x, <dict>col)
    return out
