"""Independent dense reference computations used as test oracles.

Nothing here imports the package's linear algebra; everything is plain
lists of Fractions.
"""

from fractions import Fraction
from itertools import product


def rref_rank(rows):
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    r, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def dense_nullspace(rows, n):
    """Basis of ``{x : row . x = 0}`` by reduced row echelon form."""
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = []
    for f in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        out.append(v)
    return out


def commutative_kn_takeuchi_regular(n):
    """``dim(R^e x_R R^e)`` for ``R = k^n`` straight from the definition.

    ``R^e = k^(n*n)`` with idempotents ``f_ab = e_a (x) bar e_b``; the regular
    bimodule acts by multiplication, so every action is a 0/1 diagonal.
    """
    idx = {ab: i for i, ab in enumerate(product(range(n), repeat=2))}
    d = len(idx)
    amb = d * d

    def vec(pairs):
        v = [Fraction(0)] * amb
        for k, x in pairs:
            v[k] += x
        return v

    def env(x, y):
        # element e_x (x) bar e_y of R^e as coordinates
        return {idx[(x, y)]: Fraction(1)}

    def act(elem, basis_i):  # multiplication in R^e = k^(n*n) (commutative)
        return {basis_i: elem.get(basis_i, Fraction(0))} if elem.get(basis_i) else {}

    def one_tensor(r):  # 1 (x) bar e_r
        return {idx[(x, r)]: Fraction(1) for x in range(n)}

    def tensor_one(r):  # e_r (x) 1
        return {idx[(r, y)]: Fraction(1) for y in range(n)}

    rels = []
    for r in range(n):
        for m, k in product(range(d), repeat=2):
            left = [(a * d + k, x) for a, x in act(one_tensor(r), m).items()]
            right = [(m * d + b, -x) for b, x in act(tensor_one(r), k).items()]
            v = vec(left + right)
            if any(v):
                rels.append(v)
    rel_rank = rref_rank(rels)
    # W = {w : D_s w in span(rels)}; annihilator forms of span(rels)
    ann = dense_nullspace(rels, amb) if rels else [[Fraction(int(i == j)) for j in range(amb)] for i in range(amb)]
    conds = []
    for s in range(n):
        # D_s(e_m (x) e_k) = m.(1 (x) bar s) (x) k - m (x) k.(s (x) 1)
        cols = []
        for m, k in product(range(d), repeat=2):
            left = [(a * d + k, x) for a, x in act(one_tensor(s), m).items()]
            right = [(m * d + b, -x) for b, x in act(tensor_one(s), k).items()]
            cols.append(vec(left + right))
        for form in ann:
            conds.append([sum(form[t] * col[t] for t in range(amb)) for col in cols])
    dim_w = amb - rref_rank(conds)
    return dim_w - rel_rank


def brute_algebra_axioms(mult, unit, n):
    """Associativity and unit from a dense structure tensor ``mult[i][j][k]``."""
    for i, j, k in product(range(n), repeat=3):
        for out in range(n):
            lhs = sum(mult[i][j][a] * mult[a][k][out] for a in range(n))
            rhs = sum(mult[j][k][a] * mult[i][a][out] for a in range(n))
            if lhs != rhs:
                return False
    for i in range(n):
        for out in range(n):
            l = sum(unit[a] * mult[a][i][out] for a in range(n))
            r = sum(unit[a] * mult[i][a][out] for a in range(n))
            if l != (out == i) or r != (out == i):
                return False
    return True
