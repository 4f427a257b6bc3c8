"""Dual weak bialgebras, skew pairings, and their transport along Morita contexts.

The dual carries the multiplication ``(xi zeta)(l) = xi(l_2) zeta(l_1)`` (the
transpose of the opposite comultiplication), which is the convention under
which evaluation satisfies the skew-pairing axioms with the ``R^e``-structure
``(r bar s xi t bar u)(l) = r xi(t l u bar s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteAlgebra
from .errors import BaseMismatch, IllDefined
from .linalg import LinearMap, Vec, add_scaled, sub
from .morita import BaseChange, MoritaContext, base_change, weak_iso_violations
from .report import Violation
from .weak import Base, WeakBialgebra, base_of, counit_to_end, target_map

ONE = Fraction(1)


def dual_weak_bialgebra(H: WeakBialgebra) -> WeakBialgebra:
    """Dual basis ``e^i``; ``e^i e^j = sum_k Delta[k][j, i] e^k``, ``Delta(e^k) = sum mult[a, b][k] e^a (x) e^b``."""
    A = H.algebra
    n = H.dim
    mult: dict[tuple[int, int], Vec] = {}
    for k in range(n):
        for key, x in H.comult[k].items():
            a, b = divmod(key, n)
            mult.setdefault((b, a), {})[k] = mult.get((b, a), {}).get(k, 0) + x
    comult: list[Vec] = [dict() for _ in range(n)]
    for (a, b), v in A.mult.items():
        for k, x in v.items():
            comult[k][a * n + b] = x
    unit = {i: x for i, x in H.counit.items() if x}
    counit = {i: x for i, x in A.unit.items() if x}
    labels = [f"{l}*" for l in A.labels]
    alg = FiniteAlgebra(n, labels, {k: {i: x for i, x in v.items() if x} for k, v in mult.items()}, unit, A.field)
    b = base_of(H)
    # s(r) = eps(s(r) .)
    src_cols = []
    for c in b.source.cols:
        src_cols.append({j: e for j in range(n) if (e := H.eps(A.mul(c, {j: ONE})))})
    base = Base(b.R, LinearMap(b.R.dim, n, src_cols), dict(b.R.frobenius or {}))
    return WeakBialgebra(alg, comult, counit, base, name=f"dual({H.name})")


@dataclass
class SkewPairing:
    """``tau[(xi, l)]`` is ``tau(e_xi | e_l)`` as a vector in ``R``."""

    lam: WeakBialgebra
    L: WeakBialgebra
    R: FiniteAlgebra
    tau: dict[tuple[int, int], Vec]

    def value(self, xi: Vec, l: Vec) -> Vec:
        out: Vec = {}
        for i, x in xi.items():
            for j, y in l.items():
                v = self.tau.get((i, j))
                if v:
                    add_scaled(out, x * y, v)
        return out


def _frobenius_pairs(R: FiniteAlgebra) -> list[tuple[Vec, Vec]]:
    """``(a_k, b_k)`` with ``z = sum_k psi(z a_k) b_k``."""
    psi = R.frobenius
    if not psi:
        raise BaseMismatch("base algebra carries no Frobenius functional")
    n = R.dim
    gram = [[sum((psi.get(k, 0) * c for k, c in R.basis_mul(i, j).items()), Fraction(0)) for j in range(n)]
            for i in range(n)]
    G = LinearMap.from_matrix(gram)
    if not G.is_bijective():
        raise BaseMismatch("Frobenius functional is degenerate")
    Gi = G.inverse().matrix()
    # psi(z e_j) = sum_i z_i G[i][j]; need sum_j G[i][j] X[j][m] = delta_im, so b_j = sum_m Gi[j][m] e_m
    return [({j: ONE}, {m: Gi[j][m] for m in range(n) if Gi[j][m]}) for j in range(n)]


def evaluation_pairing(H: WeakBialgebra, D: WeakBialgebra | None = None) -> SkewPairing:
    """``tau(xi | l) = sum_k xi(t(a_k) l) b_k`` between the dual and ``H``."""
    D = D or dual_weak_bialgebra(H)
    b = base_of(H)
    R = b.R
    t = target_map(H)
    A = H.algebra
    n = H.dim
    pairs = _frobenius_pairs(R)
    tl = [[A.mul(t.apply(a), {l: ONE}) for a, _ in pairs] for l in range(n)]
    tau = {}
    for xi in range(n):
        for l in range(n):
            v: Vec = {}
            for k, (_, bk) in enumerate(pairs):
                c = tl[l][k].get(xi)
                if c:
                    add_scaled(v, c, bk)
            if v:
                tau[(xi, l)] = v
    return SkewPairing(D, H, R, tau)


def verify_skew_pairing(p: SkewPairing) -> list[Violation]:
    """skp.1 through its five one-variable instances, skp.2 and skp.3 with their unit parts."""
    lam, L, R = p.lam, p.L, p.R
    bl, bL = base_of(lam), base_of(L)
    if not (bl.R.same_structure(R) and bL.R.same_structure(R)):
        raise BaseMismatch("pairing sides are not over the given base")
    sl, tl_ = bl.source, target_map(lam)
    sL, tL = bL.source, target_map(L)
    nl, nL = lam.dim, L.dim
    A, B = lam.algebra, L.algebra
    out: list[Violation] = []
    tau = p.value
    for r in range(R.dim):
        er = {r: ONE}
        for xi in range(nl):
            x = {xi: ONE}
            for l in range(nL):
                y = {l: ONE}
                base = tau(x, y)
                if sub(tau(A.mul(sl.cols[r], x), y), R.mul(er, base)):
                    out.append(Violation("skp.1 r", (r, xi, l)))
                if sub(tau(A.mul(tl_.cols[r], x), y), tau(x, B.mul(y, tL.cols[r]))):
                    out.append(Violation("skp.1 s", (r, xi, l)))
                if sub(tau(A.mul(x, sl.cols[r]), y), tau(x, B.mul(sL.cols[r], y))):
                    out.append(Violation("skp.1 t", (r, xi, l)))
                if sub(tau(A.mul(x, tl_.cols[r]), y), tau(x, B.mul(y, sL.cols[r]))):
                    out.append(Violation("skp.1 u", (r, xi, l)))
                if sub(R.mul(base, er), tau(x, B.mul(tL.cols[r], y))):
                    out.append(Violation("skp.1 v", (r, xi, l)))
    eh_lam, eh_L = counit_to_end(lam), counit_to_end(L)
    nR = R.dim

    def at_one(col: Vec) -> Vec:
        out_: Vec = {}
        for key, x in col.items():
            i, j = divmod(key, nR)
            y = R.unit.get(j)
            if y:
                add_scaled(out_, x * y, {i: ONE})
        return out_

    for xi in range(nl):
        x = {xi: ONE}
        if sub(tau(x, B.unit), at_one(eh_lam.cols[xi])):
            out.append(Violation("skp.2 unit", (xi,), "tau(xi|1) != eps(xi)(1)"))
        for l in range(nL):
            for m in range(nL):
                lhs = tau(x, B.basis_mul(l, m))
                rhs: Vec = {}
                for key, c in lam.comult[xi].items():
                    a, b = divmod(key, nl)
                    r = tau({b: ONE}, {m: ONE})
                    if r:
                        add_scaled(rhs, c, tau(A.mul(tl_.apply(r), {a: ONE}), {l: ONE}))
                if sub(lhs, rhs):
                    out.append(Violation("skp.2", (xi, l, m)))
    for l in range(nL):
        y = {l: ONE}
        if sub(tau(A.unit, y), at_one(eh_L.cols[l])):
            out.append(Violation("skp.3 unit", (l,), "tau(1|l) != eps(l)(1)"))
        for xi in range(nl):
            for zeta in range(nl):
                lhs = tau(A.basis_mul(xi, zeta), y)
                rhs = {}
                for key, c in L.comult[l].items():
                    a, b = divmod(key, nL)
                    r = tau({zeta: ONE}, {a: ONE})
                    if r:
                        add_scaled(rhs, c, tau({xi: ONE}, B.mul(sL.apply(r), {b: ONE})))
                if sub(lhs, rhs):
                    out.append(Violation("skp.3", (xi, zeta, l)))
    return out


def induce_pairing(p: SkewPairing, ctx: MoritaContext, lam_bc: BaseChange | None = None,
                   L_bc: BaseChange | None = None, check: bool = True) -> SkewPairing:
    """``tau~(p1 bar q1 (x) xi (x) q2 bar p2 | p3 bar q3 (x) l (x) q4 bar p4)
    = f(p1 . tau(xi | s(q2 p3) l s(q4 p2) t(q1 p4)) (x) q3)``."""
    lam_bc = lam_bc or base_change(p.lam, ctx)
    L_bc = L_bc or base_change(p.L, ctx)
    C1, C2 = lam_bc.carrier, L_bc.carrier
    L = p.L
    bL = base_of(L_bc.source_L)
    tL = target_map(L_bc.source_L)
    B = L.algebra
    P = ctx.P

    def raw(t1, t2) -> Vec:
        pe1, xi, qe2 = t1
        pe3, l, qe4 = t2
        p1, q1 = C1.pe_parts(pe1)
        q2, p2 = C1.qe_parts(qe2)
        p3, q3 = C2.pe_parts(pe3)
        q4, p4 = C2.qe_parts(qe4)
        left = bL.source.apply(ctx.gqp(q2, p3))
        right = B.mul(bL.source.apply(ctx.gqp(q4, p2)), tL.apply(ctx.gqp(q1, p4)))
        ell = B.mul(B.mul(left, {l: ONE}), right)
        r = p.value({xi: ONE}, ell)
        out: Vec = {}
        for pk, x in P.act_right({p1: ONE}, r).items():
            add_scaled(out, x, ctx.fpq(pk, q3))
        return out

    if check:
        for row in C1.kernel_triples():
            for t2 in C2.triples:
                acc: Vec = {}
                for key, c in row.items():
                    add_scaled(acc, c, raw(key, t2))
                if acc:
                    raise IllDefined("induced pairing does not descend in the first argument")
        for row in C2.kernel_triples():
            for t1 in C1.triples:
                acc = {}
                for key, c in row.items():
                    add_scaled(acc, c, raw(t1, key))
                if acc:
                    raise IllDefined("induced pairing does not descend in the second argument")
    tau = {}
    for i, t1 in enumerate(C1.triples):
        for j, t2 in enumerate(C2.triples):
            v = raw(t1, t2)
            if v:
                tau[(i, j)] = v
    return SkewPairing(lam_bc.H, L_bc.H, ctx.S, tau)


@dataclass
class DualIso:
    F: LinearMap
    induced: SkewPairing
    evaluation: SkewPairing
    violations: list[Violation]


def dual_base_change_iso(L: WeakBialgebra, ctx: MoritaContext, check: bool = True) -> DualIso:
    """``F``: base change of the dual ``->`` dual of the base change, ``F(X)(Y) = psi_S(tau~(X|Y))``."""
    D = dual_weak_bialgebra(L)
    tau = evaluation_pairing(L, D)
    lam_bc = base_change(D, ctx, check=check)
    L_bc = base_change(L, ctx, check=check)
    induced = induce_pairing(tau, ctx, lam_bc, L_bc, check=check)
    Lt = L_bc.H
    Dt = dual_weak_bialgebra(Lt)
    ev = evaluation_pairing(Lt, Dt)
    psi = ctx.S.frobenius
    n = Lt.dim
    cols = []
    for X in range(lam_bc.H.dim):
        col = {}
        for Y in range(n):
            v = induced.tau.get((X, Y), {})
            c = sum((psi.get(k, 0) * x for k, x in v.items()), Fraction(0))
            if c:
                col[Y] = c
        cols.append(col)
    F = LinearMap(lam_bc.H.dim, Dt.dim, cols)
    viol = weak_iso_violations(F, lam_bc.H, Dt)
    for X in range(lam_bc.H.dim):
        for Y in range(n):
            if sub(ev.value(F.cols[X], {Y: ONE}), induced.tau.get((X, Y), {})):
                viol.append(Violation("eval o (F x id) = tau~", (X, Y)))
    return DualIso(F, induced, ev, viol)
