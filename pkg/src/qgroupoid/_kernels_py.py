"""Pure-Python sparse elimination kernels.

Sparse vectors are ``dict[int, scalar]`` without explicit zeros.  An echelon
basis is a ``dict[pivot_col, row]`` in which every row has a 1 in its pivot
column and 0 in every other pivot column (fully reduced form).
"""

from fractions import Fraction

_ONE = Fraction(1)


def add_scaled(target, coeff, src):
    """``target += coeff * src`` in place."""
    if not coeff:
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


def reduce_vector(rows, vec):
    """Return ``vec`` reduced modulo the echelon basis ``rows`` (a new dict)."""
    out = dict(vec)
    hits = [c for c in out if c in rows]
    for c in hits:
        x = out.get(c)
        if x:
            add_scaled(out, -x, rows[c])
    return out


def insert_row(rows, vec, limit=None):
    """Add ``vec`` to the echelon basis; return its pivot column or None.

    Pivots are only chosen among columns ``< limit`` (when given); columns at
    or beyond ``limit`` carry bookkeeping tags and never become pivots.
    """
    v = reduce_vector(rows, vec)
    if limit is None:
        cols = list(v)
    else:
        cols = [c for c in v if c < limit]
    if not cols:
        return None
    p = min(cols)
    inv = _ONE / v[p]
    if inv != 1:
        for k in v:
            v[k] = v[k] * inv
    for row in rows.values():
        x = row.get(p)
        if x:
            add_scaled(row, -x, v)
    rows[p] = v
    return p


def apply_columns(cols, vec):
    """Image of a sparse vector under a map given by sparse columns."""
    out = {}
    for j, x in vec.items():
        col = cols[j]
        if col:
            add_scaled(out, x, col)
    return out
