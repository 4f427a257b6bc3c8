"""Strict Morita contexts and Morita base change of weak bialgebras.

The base-changed algebra is realized as ``P^e (x)_{R^e} L (x)_{R^e} Q^e``.  Each
of its basis vectors is represented by a pure triple of basis indices, and
every structure map is evaluated on triples and projected back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import FiniteAlgebra, MultiMatrixAlgebra, check_algebra_map, enveloping, kn, subalgebra
from .bimodule import Bimodule, regular_bimodule, ring_bimodule, tensor_over, verify_bimodule
from .errors import BaseMismatch, IllDefined, NotInSpan, NotSingleBlock
from .linalg import LinearMap, Span, Vec, add_scaled, nullspace, solve, span_basis, sub
from .report import Report, Violation
from .weak import (Base, LModule, WeakBialgebra, base_of, counit_to_end, env_map, target_map,
                   tensor_modules, verify_weak_bialgebra)

ONE = Fraction(1)


# contexts ------------------------------------------------------------------------

@dataclass
class MoritaContext:
    """``(R, S, P, Q, f, g)``; ``P`` is an (S,R)-, ``Q`` an (R,S)-bimodule.

    ``f`` maps ``P (x) Q`` (index ``p*dim Q + q``) to ``S``; ``g`` maps
    ``Q (x) P`` (index ``q*dim P + p``) to ``R``.  ``f_inv``/``g_inv`` are
    representatives of ``f^{-1}(1_S)``/``g^{-1}(1_R)`` in those ambient spaces.
    """

    R: FiniteAlgebra
    S: FiniteAlgebra
    P: Bimodule
    Q: Bimodule
    f: LinearMap
    g: LinearMap
    f_inv: Vec = field(default_factory=dict)
    g_inv: Vec = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if not self.f_inv:
            self.f_inv = solve(self.f, self.S.unit) or {}
        if not self.g_inv:
            self.g_inv = solve(self.g, self.R.unit) or {}

    def fpq(self, p: int, q: int) -> Vec:
        return self.f.cols[p * self.Q.dim + q]

    def gqp(self, q: int, p: int) -> Vec:
        return self.g.cols[q * self.P.dim + p]

    def f_terms(self) -> list[tuple[object, int, int]]:
        return [(x, *divmod(k, self.Q.dim)) for k, x in self.f_inv.items()]

    def g_terms(self) -> list[tuple[object, int, int]]:
        return [(x, *divmod(k, self.P.dim)) for k, x in self.g_inv.items()]

    def swapped(self) -> "MoritaContext":
        """``(S, R, Q, P, g, f)``."""
        return MoritaContext(self.S, self.R, self.Q, self.P, self.g, self.f, dict(self.g_inv),
                             dict(self.f_inv), f"swap({self.name})")


def _pairing_violations(name, X, Y, pair, A, B, inv) -> list[Violation]:
    """``pair: X (x) Y -> B`` balanced over ``A``, a ``B``-bimodule map, surjective, hitting 1 at ``inv``."""
    out = []
    dY = Y.dim
    for x in range(X.dim):
        for y in range(dY):
            v = pair.cols[x * dY + y]
            for a in range(A.dim):
                lhs = {}
                for k, c in X.right_action.get((x, a), {}).items():
                    add_scaled(lhs, c, pair.cols[k * dY + y])
                rhs = {}
                for k, c in Y.left_action.get((a, y), {}).items():
                    add_scaled(rhs, c, pair.cols[x * dY + k])
                if sub(lhs, rhs):
                    out.append(Violation(f"{name} balanced", (x, a, y)))
            for b in range(B.dim):
                lhs = {}
                for k, c in X.left_action.get((b, x), {}).items():
                    add_scaled(lhs, c, pair.cols[k * dY + y])
                if sub(lhs, B.mul({b: ONE}, v)):
                    out.append(Violation(f"{name} left linear", (b, x, y)))
                rhs = {}
                for k, c in Y.right_action.get((y, b), {}).items():
                    add_scaled(rhs, c, pair.cols[x * dY + k])
                if sub(rhs, B.mul(v, {b: ONE})):
                    out.append(Violation(f"{name} right linear", (x, y, b)))
    if pair.rank() != B.dim:
        out.append(Violation(f"{name} surjective", (pair.rank(), B.dim)))
    if sub(pair.apply(inv), B.unit):
        out.append(Violation(f"{name} dual basis", ()))
    tp = tensor_over(X, A, Y)
    if tp.dim != B.dim:
        out.append(Violation(f"{name} descends to an isomorphism", (tp.dim, B.dim)))
    return out


def verify_context(ctx: MoritaContext) -> list[Violation]:
    out = verify_bimodule(ctx.P) + verify_bimodule(ctx.Q)
    if out:
        return out
    out += _pairing_violations("f", ctx.P, ctx.Q, ctx.f, ctx.R, ctx.S, ctx.f_inv)
    out += _pairing_violations("g", ctx.Q, ctx.P, ctx.g, ctx.S, ctx.R, ctx.g_inv)
    P, Q = ctx.P, ctx.Q
    for p in range(P.dim):
        for q in range(Q.dim):
            fpq = ctx.fpq(p, q)
            for p2 in range(P.dim):
                if sub(P.act_left(fpq, {p2: ONE}), P.act_right({p: ONE}, ctx.gqp(q, p2))):
                    out.append(Violation("mixed associativity f(pq)p' = p g(qp')", (p, q, p2)))
    for q in range(Q.dim):
        for p in range(P.dim):
            gqp = ctx.gqp(q, p)
            for q2 in range(Q.dim):
                if sub(Q.act_left(gqp, {q2: ONE}), Q.act_right({q: ONE}, ctx.fpq(p, q2))):
                    out.append(Violation("mixed associativity g(qp)q' = q f(pq')", (q, p, q2)))
    return out


def canonical_context(R: MultiMatrixAlgebra) -> MoritaContext:
    """``R = (+) M_{d_a}``, ``S = k^n``, ``P = pR``, ``Q = Rp`` with ``p = sum E^a_11``."""
    blocks = R.blocks
    S = kn(len(blocks), R.field)
    prow = [(a, j) for a, d in enumerate(blocks) for j in range(d)]  # E^a_{1j}
    qcol = [(a, i) for a, d in enumerate(blocks) for i in range(d)]  # E^a_{i1}
    pidx = {x: k for k, x in enumerate(prow)}
    qidx = {x: k for k, x in enumerate(qcol)}
    n = len(prow)
    P_left = {(a, pidx[(a, j)]): {pidx[(a, j)]: ONE} for (a, j) in prow}
    P_right = {}
    for (a, j) in prow:
        for l in range(blocks[a]):
            P_right[(pidx[(a, j)], R.E(a, j, l))] = {pidx[(a, l)]: ONE}
    Q_left = {}
    for (a, i) in qcol:
        for k in range(blocks[a]):
            Q_left[(R.E(a, k, i), qidx[(a, i)])] = {qidx[(a, k)]: ONE}
    Q_right = {(qidx[(a, i)], a): {qidx[(a, i)]: ONE} for (a, i) in qcol}
    P = Bimodule(S, R, n, P_left, P_right)
    Q = Bimodule(R, S, n, Q_left, Q_right)
    fcols, gcols = [], []
    for (a, j) in prow:
        for (b, i) in qcol:
            fcols.append({a: ONE} if a == b and i == j else {})
    for (b, i) in qcol:
        for (a, j) in prow:
            gcols.append({R.E(a, i, j): ONE} if a == b else {})
    f = LinearMap(n * n, S.dim, fcols)
    g = LinearMap(n * n, R.dim, gcols)
    f_inv = {pidx[(a, 0)] * n + qidx[(a, 0)]: ONE for a in range(len(blocks))}
    g_inv = {qidx[(a, i)] * n + pidx[(a, i)]: ONE for (a, i) in qcol}
    return MoritaContext(R, S, P, Q, f, g, f_inv, g_inv, f"canonical{tuple(blocks)}")


def trivial_context(R: FiniteAlgebra) -> MoritaContext:
    B = regular_bimodule(R)
    n = R.dim
    m = LinearMap(n * n, n, [R.basis_mul(i, j) for i in range(n) for j in range(n)])
    one = {i * n + j: x * y for i, x in R.unit.items() for j, y in R.unit.items()}
    return MoritaContext(R, R, B, B, m, m, one, dict(one), "trivial")


# double context -----------------------------------------------------------------

def double_context(ctx: MoritaContext) -> tuple[Bimodule, Bimodule]:
    """``P^e = P (x) bar Q`` over ``(S^e, R^e)`` and ``Q^e = Q (x) bar P`` over ``(R^e, S^e)``."""
    R, S, P, Q = ctx.R, ctx.S, ctx.P, ctx.Q
    Re, Se = enveloping(R), enveloping(S)
    return (_double(P, Q, Se, Re, S.dim, R.dim), _double(Q, P, Re, Se, R.dim, S.dim))


def _double(X: Bimodule, Y: Bimodule, left_env, right_env, nl: int, nr: int) -> Bimodule:
    """``X (x) bar Y``: ``(a bar b)(x bar y)(c bar d) = a x c (x) bar(d y b)``."""
    dY = Y.dim
    left, right = {}, {}
    for x in range(X.dim):
        for y in range(dY):
            v = x * dY + y
            for a in range(nl):
                ax = X.left_action.get((a, x))
                if not ax:
                    continue
                for b in range(nl):
                    yb = Y.right_action.get((y, b))
                    if yb:
                        left[(a * nl + b, v)] = {i * dY + j: c * e for i, c in ax.items() for j, e in yb.items()}
            for a in range(nr):
                xa = X.right_action.get((x, a))
                if not xa:
                    continue
                for b in range(nr):
                    by = Y.left_action.get((b, y))
                    if by:
                        right[(v, a * nr + b)] = {i * dY + j: c * e for i, c in xa.items() for j, e in by.items()}
    return Bimodule(left_env, right_env, X.dim * dY, left, right)


# the base-changed carrier ----------------------------------------------------------

class Carrier:
    """``P^e (x)_{R^e} L (x)_{R^e} Q^e`` for a ring ``L`` with ``eta: R^e -> L``."""

    def __init__(self, ctx: MoritaContext, L: FiniteAlgebra, eta: LinearMap):
        self.ctx = ctx
        self.L = L
        self.eta = eta
        self.Pe, self.Qe = double_context(ctx)
        Re = enveloping(ctx.R)
        Lb = ring_bimodule(L, Re, eta)
        self.X = tensor_over(self.Pe, Re, Lb)
        self.Y = tensor_over(self.X.bimodule, Re, self.Qe)
        self._xcache: dict[tuple[int, int], Vec] = {}
        self.triples = []
        for i in range(self.Y.dim):
            x, qe = self.Y.rep(i)
            pe, l = self.X.rep(x)
            self.triples.append((pe, l, qe))

    @property
    def dim(self) -> int:
        return self.Y.dim

    def project(self, w: dict[tuple[int, int, int], object]) -> Vec:
        """Coordinates of ``sum w[(pe, l, qe)] pe (x) l (x) qe``."""
        nq = self.Qe.dim
        amb: Vec = {}
        for (pe, l, qe), c in w.items():
            if not c:
                continue
            key = (pe, l)
            xv = self._xcache.get(key)
            if xv is None:
                xv = self.X.quotient.project({pe * self.L.dim + l: ONE})
                self._xcache[key] = xv
            for k, y in xv.items():
                add_scaled(amb, ONE, {k * nq + qe: c * y})
        return self.Y.quotient.project(amb)

    def project_l(self, pe: int, lvec: Vec, qe: int, coeff=ONE) -> Vec:
        return self.project({(pe, l, qe): coeff * x for l, x in lvec.items()})

    def kernel_triples(self) -> list[dict]:
        """Spanning set of the kernel of the projection, as triple-indexed vectors."""
        out = []
        nl = self.L.dim
        for row in self.X.quotient.kernel_basis():
            for qe in range(self.Qe.dim):
                out.append({(*divmod(k, nl), qe): x for k, x in row.items()})
        nq = self.Qe.dim
        for row in self.Y.quotient.kernel_basis():
            w: dict = {}
            for k, x in row.items():
                xi, qe = divmod(k, nq)
                for amb, y in self.X.quotient.section({xi: ONE}).items():
                    pe, l = divmod(amb, nl)
                    key = (pe, l, qe)
                    w[key] = w.get(key, 0) + x * y
            out.append({k: v for k, v in w.items() if v})
        return out

    # typical elements: pe = p (x) bar q, qe = q (x) bar p
    def pe_parts(self, pe: int) -> tuple[int, int]:
        return divmod(pe, self.ctx.Q.dim)

    def qe_parts(self, qe: int) -> tuple[int, int]:
        return divmod(qe, self.ctx.P.dim)

    def pe_index(self, p: int, q: int) -> int:
        return p * self.ctx.Q.dim + q

    def qe_index(self, q: int, p: int) -> int:
        return q * self.ctx.P.dim + p

    def s_t(self, r1: Vec, r2: Vec) -> Vec:
        """``eta(r1 (x) bar r2)``."""
        n = self.ctx.R.dim
        return self.eta.apply({a * n + b: x * y for a, x in r1.items() for b, y in r2.items()})

    def middle(self, qe: int, pe: int) -> Vec:
        """``Q^e (x)_{S^e} P^e -> R^e -> L``: ``(q2 bar p2)(p3 bar q3) -> s(g(q2 p3)) t(g(q3 p2))``."""
        q2, p2 = self.qe_parts(qe)
        p3, q3 = self.pe_parts(pe)
        return self.s_t(self.ctx.gqp(q2, p3), self.ctx.gqp(q3, p2))


def _mul_triples(C: Carrier, a: tuple, b: tuple) -> Vec:
    pe1, l1, qe1 = a
    pe2, l2, qe2 = b
    mid = C.middle(qe1, pe2)
    if not mid:
        return {}
    prod = C.L.mul(C.L.mul({l1: ONE}, mid), {l2: ONE})
    return C.project_l(pe1, prod, qe2)


def _check_descends(C: Carrier, fn, what: str, probes=None) -> None:
    """``fn`` (linear on triples) must vanish on the kernel of the projection."""
    for row in C.kernel_triples():
        if probes is None:
            if fn(row):
                raise IllDefined(f"{what} does not descend to the base-changed carrier")
        else:
            for p in probes:
                if fn(row, p):
                    raise IllDefined(f"{what} does not descend to the base-changed carrier")


@dataclass
class BaseChange:
    """Result of a base change: the weak bialgebra and the data used to build it."""

    H: WeakBialgebra
    carrier: Carrier
    ctx: MoritaContext
    source_L: WeakBialgebra
    report: Report = field(default_factory=Report)


def _frobenius_dual(S: FiniteAlgebra) -> list[tuple[Vec, Vec]]:
    """Pairs ``(u_k, v_k)`` with ``sum_k psi(u_k z) v_k = z`` for the Frobenius functional of ``S``."""
    if S.frobenius is None:
        raise BaseMismatch("target base algebra carries no Frobenius functional")
    n = S.dim
    psi = S.frobenius
    gram = [[sum((psi.get(k, 0) * c for k, c in S.basis_mul(i, j).items()), Fraction(0))
             for j in range(n)] for i in range(n)]
    G = LinearMap.from_matrix(gram)
    if not G.is_bijective():
        raise BaseMismatch("Frobenius functional on the target base is degenerate")
    Ginv = G.inverse().matrix()
    # z = sum_i psi(z e_i) v_i with v_i = sum_j Ginv[j][i] e_j
    out = []
    for i in range(n):
        v = {j: Ginv[j][i] for j in range(n) if Ginv[j][i]}
        out.append(({i: ONE}, v))
    return out


def base_change(L: WeakBialgebra, ctx: MoritaContext, ident: LinearMap | None = None,
                check: bool = True) -> BaseChange:
    """Morita base change of ``L`` (over ``R = ctx.R``) to a weak bialgebra over ``ctx.S``.

    ``ident`` identifies ``ctx.R`` with the stored base of ``L``; it defaults to
    the identity when the two have the same structure constants.  ``check``
    toggles the representative-independence checks.
    """
    b = base_of(L)
    if ident is None:
        if not ctx.R.same_structure(b.R):
            raise BaseMismatch("context base differs from the base of L; pass an identification")
        src = b.source
    else:
        if not (ident.is_bijective() and check_algebra_map(ident, ctx.R, b.R)):
            raise BaseMismatch("identification is not an algebra isomorphism")
        src = b.source.compose(ident)
    Lw = WeakBialgebra(L.algebra, L.comult, L.counit, Base(ctx.R, src, b.R.frobenius or {}), L.name)
    A = L.algebra
    eta = env_map(Lw)
    C = Carrier(ctx, A, eta)
    S = ctx.S
    n = C.dim
    nl = A.dim
    P, Q = ctx.P, ctx.Q
    fterms, gterms = ctx.f_terms(), ctx.g_terms()

    # multiplication
    if check:
        basis_triples = C.triples

        def mul_defect(row, t):
            out1, out2 = {}, {}
            for key, c in row.items():
                add_scaled(out1, c, _mul_triples(C, key, t))
                add_scaled(out2, c, _mul_triples(C, t, key))
            return out1 or out2

        _check_descends(C, mul_defect, "multiplication", basis_triples)
    mult = {}
    for i, ti in enumerate(C.triples):
        for j, tj in enumerate(C.triples):
            v = _mul_triples(C, ti, tj)
            if v:
                mult[(i, j)] = v
    unit_w = {}
    for c1, pj, qj in fterms:
        for c2, pk, qk in fterms:
            for l, x in A.unit.items():
                key = (C.pe_index(pj, qk), l, C.qe_index(qj, pk))
                unit_w[key] = unit_w.get(key, 0) + c1 * c2 * x
    unit = C.project(unit_w)
    labels = [f"[{C.triples[i][0]}|{A.labels[C.triples[i][1]]}|{C.triples[i][2]}]" for i in range(n)]
    alg = FiniteAlgebra(n, labels, mult, unit, A.field or S.field)

    # source and target maps S -> L~
    preimages = []
    for z in range(S.dim):
        pre = solve(ctx.f, {z: ONE})
        if pre is None:
            raise IllDefined("f is not surjective")
        preimages.append([(x, *divmod(k, Q.dim)) for k, x in pre.items()])

    def s_tilde(z: int) -> Vec:
        w = {}
        for c1, pa, qa in preimages[z]:
            for c2, pj, qj in fterms:
                for l, x in A.unit.items():
                    key = (C.pe_index(pa, qj), l, C.qe_index(qa, pj))
                    w[key] = w.get(key, 0) + c1 * c2 * x
        return C.project(w)

    def t_tilde(z: int) -> Vec:
        w = {}
        for c1, pd, qb in preimages[z]:
            for c2, pj, qj in fterms:
                for l, x in A.unit.items():
                    key = (C.pe_index(pj, qb), l, C.qe_index(qj, pd))
                    w[key] = w.get(key, 0) + c1 * c2 * x
        return C.project(w)

    s_map = LinearMap(S.dim, n, [s_tilde(z) for z in range(S.dim)])
    t_map = LinearMap(S.dim, n, [t_tilde(z) for z in range(S.dim)])

    # comultiplication on triples, valued in L~ (x) L~
    def delta_triple(t) -> Vec:
        pe, l, qe = t
        p1, q1 = C.pe_parts(pe)
        q2, p2 = C.qe_parts(qe)
        out: Vec = {}
        for key, x in L.comult[l].items():
            l1, l2 = divmod(key, nl)
            for cg, qi, pi in gterms:
                for cf, pj, qj in fterms:
                    left = C.project({(C.pe_index(p1, qi), l1, C.qe_index(q2, pj)): ONE})
                    if not left:
                        continue
                    right = C.project({(C.pe_index(pi, q1), l2, C.qe_index(qj, p2)): ONE})
                    c = x * cg * cf
                    for a, u in left.items():
                        for bb, v in right.items():
                            add_scaled(out, ONE, {a * n + bb: c * u * v})
        return out

    dual = _frobenius_dual(S)
    delta1: Vec = {}
    for u, v in dual:
        tu = t_map.apply(u)
        sv = s_map.apply(v)
        for a, x in tu.items():
            for bb, y in sv.items():
                add_scaled(delta1, ONE, {a * n + bb: x * y})

    def normalize(w: Vec) -> Vec:
        from .weak import tensor_mul
        return tensor_mul(alg, delta1, w, 2)

    if check:
        def delta_defect(row):
            acc: Vec = {}
            for key, c in row.items():
                add_scaled(acc, c, delta_triple(key))
            return normalize(acc)

        _check_descends(C, delta_defect, "comultiplication")
    comult = [normalize(delta_triple(t)) for t in C.triples]

    # counit through hat eps of L and the pairings
    ehat = counit_to_end(Lw)
    R = ctx.R
    nR = R.dim

    def ehat_apply(l: int, r: Vec) -> Vec:
        out: Vec = {}
        for key, x in ehat.cols[l].items():
            i, j = divmod(key, nR)
            y = r.get(j)
            if y:
                add_scaled(out, x * y, {i: ONE})
        return out

    def end_tilde(t) -> Vec:
        """``hat eps~(t)(1_S)`` in ``S``."""
        pe, l, qe = t
        p1, q1 = C.pe_parts(pe)
        q2, p2 = C.qe_parts(qe)
        r_in: Vec = {}
        for cf, pj, qj in fterms:
            add_scaled(r_in, cf, R.mul(ctx.gqp(q2, pj), ctx.gqp(qj, p2)))
        r_out = ehat_apply(l, r_in)
        p_r = P.act_right({p1: ONE}, r_out)
        out: Vec = {}
        for pk, x in p_r.items():
            add_scaled(out, x, ctx.fpq(pk, q1))
        return out

    psi = S.frobenius

    def eps_triple(t):
        return sum((psi.get(k, 0) * x for k, x in end_tilde(t).items()), Fraction(0))

    if check:
        def eps_defect(row):
            acc: Vec = {}
            for key, c in row.items():
                add_scaled(acc, c, end_tilde(key))
            return acc

        _check_descends(C, eps_defect, "counit")
    counit = {i: e for i, t in enumerate(C.triples) if (e := eps_triple(t))}
    H = WeakBialgebra(alg, comult, counit, Base(S, s_map, dict(psi)), name=f"bc({L.name})")
    return BaseChange(H, C, ctx, Lw)


def amplify(H: WeakBialgebra, ctx: MoritaContext, check: bool = True) -> BaseChange:
    """Base change of ``H`` (over ``ctx.S``) along the swapped context, landing over ``ctx.R``."""
    return base_change(H, ctx.swapped(), check=check)


# isomorphisms of weak bialgebras ----------------------------------------------------

def weak_iso_violations(phi: LinearMap, H1: WeakBialgebra, H2: WeakBialgebra) -> list[Violation]:
    """Empty iff ``phi`` is a bijective algebra and coalgebra map ``H1 -> H2``."""
    out = []
    if not phi.is_bijective():
        return [Violation("bijective", (phi.rank(), H1.dim, H2.dim))]
    if not check_algebra_map(phi, H1.algebra, H2.algebra):
        out.append(Violation("algebra map", ()))
    n1, n2 = H1.dim, H2.dim
    for i in range(n1):
        img: Vec = {}
        for key, x in H1.comult[i].items():
            a, b = divmod(key, n1)
            for u, y in phi.cols[a].items():
                for v, z in phi.cols[b].items():
                    add_scaled(img, ONE, {u * n2 + v: x * y * z})
        if sub(img, H2.delta(phi.cols[i])):
            out.append(Violation("coalgebra map", (i,)))
        if H1.eps({i: ONE}) != H2.eps(phi.cols[i]):
            out.append(Violation("counit preserved", (i,)))
    return out


def identity_iso(bc: BaseChange) -> LinearMap:
    """``l -> 1 (x) l (x) 1`` for a base change along the trivial context."""
    C = bc.carrier
    R = bc.ctx.R
    one_pe = {C.pe_index(a, b): x * y for a, x in R.unit.items() for b, y in R.unit.items()}
    one_qe = {C.qe_index(a, b): x * y for a, x in R.unit.items() for b, y in R.unit.items()}
    cols = []
    for l in range(C.L.dim):
        cols.append(C.project({(pe, l, qe): x * y for pe, x in one_pe.items() for qe, y in one_qe.items()}))
    return LinearMap(C.L.dim, C.dim, cols)


def round_trip_iso(H: WeakBialgebra, amp: BaseChange, back: BaseChange) -> LinearMap:
    """``h -> (p_a bar q^b) (x) [(q^a bar p_b) (x) h (x) (p_c bar q^d)] (x) (q^c bar p_d)``."""
    ctx = back.ctx
    Ca, Cb = amp.carrier, back.carrier
    terms = ctx.f_terms()
    cols = []
    for h in range(H.dim):
        outer: dict = {}
        for ca, pa, qa in terms:
            for cb, pb, qb in terms:
                for cc, pc, qc in terms:
                    for cd, pd, qd in terms:
                        inner = Ca.project({(Ca.pe_index(qa, pb), h, Ca.qe_index(pc, qd)): ca * cb * cc * cd})
                        for k, x in inner.items():
                            key = (Cb.pe_index(pa, qb), k, Cb.qe_index(qc, pd))
                            outer[key] = outer.get(key, 0) + x
        cols.append(Cb.project(outer))
    return LinearMap(H.dim, Cb.dim, cols)


# the corner realization ----------------------------------------------------------------

def _reduced_coords(basis: list[Vec], x: Vec) -> Vec:
    """Coordinates of ``x`` in a fully reduced echelon basis (pivot = smallest index)."""
    out = {}
    for k, b in enumerate(basis):
        c = x.get(min(b))
        if c:
            out[k] = c
    rebuilt: Vec = {}
    for k, c in out.items():
        add_scaled(rebuilt, c, basis[k])
    if sub(rebuilt, x):
        raise NotInSpan("vector leaves the corner")
    return out


@dataclass
class Corner:
    H: WeakBialgebra
    basis: list[Vec]
    idempotent: Vec

    def coords(self, x: Vec) -> Vec:
        return _reduced_coords(self.basis, x)


def corner_base_change(L: WeakBialgebra) -> Corner:
    """``p bar p L p bar p`` for the canonical context of a multi-matrix base."""
    b = base_of(L)
    R = b.R
    if not isinstance(R, MultiMatrixAlgebra):
        raise BaseMismatch("corner realization needs a multi-matrix base")
    A = L.algebra
    t = target_map(L)
    s = b.source

    def st(r1: Vec, r2: Vec) -> Vec:
        return A.mul(s.apply(r1), t.apply(r2))

    p = {R.E(a, 0, 0): ONE for a in range(len(R.blocks))}
    e = st(p, p)
    basis = span_basis(A.mul(A.mul(e, {i: ONE}), e) for i in range(A.dim))
    m = len(basis)
    sub_alg, _ = subalgebra(A, basis, unit=e)
    na = A.dim
    lefts = []
    for a, d in enumerate(R.blocks):
        for i in range(d):
            lefts.append((st(p, {R.E(a, i, 0): ONE}), st({R.E(a, 0, i): ONE}, p)))
    comult = []
    for x in basis:
        dx = L.delta(x)
        w: Vec = {}
        for key, c in dx.items():
            u, v = divmod(key, na)
            for lu, lv in lefts:
                left = A.mul(A.mul(lu, {u: ONE}), e)
                if not left:
                    continue
                right = A.mul(A.mul(lv, {v: ONE}), e)
                for i, y in _reduced_coords(basis, left).items():
                    for j, z in _reduced_coords(basis, right).items():
                        add_scaled(w, ONE, {i * m + j: c * y * z})
        comult.append(w)
    # counit: the unique functional with (eps (x) id) Delta = id
    cols = []
    for k in range(m):
        col: Vec = {}
        for x in range(m):
            for key, c in comult[x].items():
                i, j = divmod(key, m)
                if i == k:
                    col[x * m + j] = col.get(x * m + j, 0) + c
        cols.append({a: v for a, v in col.items() if v})
    eq = LinearMap(m, m * m, cols)
    target = {x * m + x: ONE for x in range(m)}
    counit = solve(eq, target)
    if counit is None or eq.rank() != m:
        raise IllDefined("corner comultiplication has no unique counit")
    S = kn(len(R.blocks), R.field)
    src = LinearMap(S.dim, m, [_reduced_coords(basis, st({R.E(a, 0, 0): ONE}, p)) for a in range(S.dim)])
    H = WeakBialgebra(sub_alg, comult, counit, Base(S, src, dict(S.frobenius)), name=f"corner({L.name})")
    return Corner(H, basis, e)


def corner_iso(bc: BaseChange, corner: Corner, L: WeakBialgebra) -> LinearMap:
    """``p1 bar q1 (x) l (x) q2 bar p2 -> s(p1) t(q1) l s(q2) t(p2)`` from the tensor to the corner realization."""
    C = bc.carrier
    ctx = bc.ctx
    R = ctx.R
    A = L.algebra
    b = base_of(L)
    t = target_map(L)

    def as_r(kind: str, idx: int) -> Vec:
        # basis of P is E^a_{1j}, of Q is E^a_{i1}, in block order
        pairs = [(a, j) for a, d in enumerate(R.blocks) for j in range(d)]
        a, j = pairs[idx]
        return {R.E(a, 0, j): ONE} if kind == "p" else {R.E(a, j, 0): ONE}

    def st(r1, r2):
        return A.mul(b.source.apply(r1), t.apply(r2))

    cols = []
    for pe, l, qe in C.triples:
        p1, q1 = C.pe_parts(pe)
        q2, p2 = C.qe_parts(qe)
        x = A.mul(A.mul(st(as_r("p", p1), as_r("q", q1)), {l: ONE}), st(as_r("q", q2), as_r("p", p2)))
        cols.append(corner.coords(x))
    return LinearMap(C.dim, len(corner.basis), cols)


# Bratteli data through corner dimensions -----------------------------------------------

def corner_gram(L: WeakBialgebra) -> list[list[int]]:
    """``dim(e_i L e_k)`` over minimal idempotents ``s(E^a_11) t(E^b_11)`` of the ``R^e`` components."""
    b = base_of(L)
    R = b.R
    if not isinstance(R, MultiMatrixAlgebra):
        raise BaseMismatch("corner dimensions need a multi-matrix base")
    A = L.algebra
    t = target_map(L)
    nb = len(R.blocks)
    idem = [A.mul(b.source.apply({R.E(a, 0, 0): ONE}), t.apply({R.E(c, 0, 0): ONE}))
            for a in range(nb) for c in range(nb)]
    out = []
    for x in idem:
        left = [A.mul(x, {i: ONE}) for i in range(A.dim)]
        row = []
        for y in idem:
            row.append(len(span_basis(A.mul(v, y) for v in left)))
        out.append(row)
    return out


# module transport ----------------------------------------------------------------------

@dataclass
class TransportedModule:
    module: LModule
    tensor: object
    source: LModule


def _module_bimodule(M: LModule, eta: LinearMap, env: FiniteAlgebra) -> Bimodule:
    one = kn(1)
    left = {}
    for i in range(env.dim):
        for m in range(M.dim):
            v = M.act(eta.cols[i], {m: ONE})
            if v:
                left[(i, m)] = v
    return Bimodule(env, one, M.dim, left, {(m, 0): {m: ONE} for m in range(M.dim)})


def transport_module(M: LModule, bc: BaseChange, check: bool = True) -> TransportedModule:
    """``P^e (x)_{R^e} M`` with ``(p1 bar q1 (x) l (x) q2 bar p2)(p3 bar q3 (x) m) = p1 bar q1 (x) l (q2 p3)(bar q3 p2) m``."""
    C = bc.carrier
    env = enveloping(bc.ctx.R)
    T = tensor_over(C.Pe, env, _module_bimodule(M, C.eta, env))
    nm = M.dim

    def act_amb(t, w: Vec) -> Vec:
        pe1, l, qe1 = t
        out: Vec = {}
        for key, x in w.items():
            pe3, m = divmod(key, nm)
            mid = C.middle(qe1, pe3)
            if not mid:
                continue
            lm = M.act(C.L.mul({l: ONE}, mid), {m: ONE})
            for k, y in lm.items():
                add_scaled(out, ONE, {pe1 * nm + k: x * y})
        return out

    reps = [T.quotient.section({j: ONE}) for j in range(T.dim)]
    if check:
        for row in C.kernel_triples():
            for w in reps:
                acc: Vec = {}
                for key, c in row.items():
                    add_scaled(acc, c, act_amb(key, w))
                if T.project(acc):
                    raise IllDefined("transported action does not descend in the algebra factor")
        for row in T.quotient.kernel_basis():
            for t in C.triples:
                if T.project(act_amb(t, row)):
                    raise IllDefined("transported action does not descend in the module factor")
    action = {}
    for i, t in enumerate(C.triples):
        for j, w in enumerate(reps):
            v = T.project(act_amb(t, w))
            if v:
                action[(i, j)] = v
    return TransportedModule(LModule(bc.H.algebra, T.dim, action), T, M)


@dataclass
class Xi:
    xi: LinearMap
    xi_inv: LinearMap
    report: Report


def monoidal_xi(M: LModule, N: LModule, bc: BaseChange) -> Xi:
    """``xi: F(M) <>_S F(N) -> F(M <>_R N)`` and its inverse, with all checks."""
    C = bc.carrier
    ctx = bc.ctx
    Lw = bc.source_L
    FM, FN = transport_module(M, bc), transport_module(N, bc)
    dom = tensor_modules(bc.H, FM.module, FN.module)
    MN = tensor_modules(Lw, M, N)
    cod = transport_module(MN.module, bc)
    b = base_of(Lw)
    nM, nN, nMN = M.dim, N.dim, MN.module.dim
    fnd = FN.module.dim

    def xi_pure(u: Vec, v: Vec) -> Vec:
        """``u in P^e (x) M``, ``v in P^e (x) N`` (ambient) to ``cod`` coordinates."""
        amb: Vec = {}
        for ku, x in u.items():
            pe1, m = divmod(ku, nM)
            p1, q1 = C.pe_parts(pe1)
            for kv, y in v.items():
                pe2, n = divmod(kv, nN)
                p2, q2 = C.pe_parts(pe2)
                gn = N.act(b.source.apply(ctx.gqp(q1, p2)), {n: ONE})
                if not gn:
                    continue
                mn = MN.project_pure({m: ONE}, gn)
                pe = C.pe_index(p1, q2)
                for k, z in mn.items():
                    add_scaled(amb, ONE, {pe * nMN + k: x * y * z})
        return cod.tensor.project(amb)

    fm_reps = [FM.tensor.quotient.section({i: ONE}) for i in range(FM.module.dim)]
    fn_reps = [FN.tensor.quotient.section({j: ONE}) for j in range(fnd)]
    for row in FM.tensor.quotient.kernel_basis():
        for v in fn_reps:
            if xi_pure(row, v):
                raise IllDefined("xi does not descend in the first factor")
    for row in FN.tensor.quotient.kernel_basis():
        for u in fm_reps:
            if xi_pure(u, row):
                raise IllDefined("xi does not descend in the second factor")
    for row in dom.quotient.kernel_basis():
        acc: Vec = {}
        for key, c in row.items():
            i, j = divmod(key, fnd)
            add_scaled(acc, c, xi_pure(fm_reps[i], fn_reps[j]))
        if acc:
            raise IllDefined("xi does not descend to the module tensor product")
    xi_cols = []
    for d in range(dom.module.dim):
        i, j = divmod(dom.quotient.free[d], fnd)
        xi_cols.append(xi_pure(fm_reps[i], fn_reps[j]))
    xi = LinearMap(dom.module.dim, cod.module.dim, xi_cols)

    gterms = ctx.g_terms()

    def xi_inv_pure(pe: int, w: Vec) -> Vec:
        """``p bar q (x) w`` with ``w in M (x) N`` to ``sum_i (p bar q_i (x) m) (x) (p^i bar q (x) n)``."""
        p, q = C.pe_parts(pe)
        out: Vec = {}
        for kk, y in w.items():
            m, n = divmod(kk, nN)
            for c, qi, pi in gterms:
                u = FM.tensor.project({C.pe_index(p, qi) * nM + m: ONE})
                v = FN.tensor.project({C.pe_index(pi, q) * nN + n: ONE})
                add_scaled(out, y * c, dom.project_pure(u, v))
        return out

    def xi_inv_amb(w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            pe, mn = divmod(key, nMN)
            add_scaled(out, x, xi_inv_pure(pe, MN.quotient.section({mn: ONE})))
        return out

    for row in cod.tensor.quotient.kernel_basis():
        if xi_inv_amb(row):
            raise IllDefined("xi^{-1} does not descend over R^e")
    for row in MN.quotient.kernel_basis():
        for pe in range(C.Pe.dim):
            if xi_inv_pure(pe, row):
                raise IllDefined("xi^{-1} does not descend to M <> N")
    inv_cols = [xi_inv_amb(cod.tensor.quotient.section({k: ONE})) for k in range(cod.module.dim)]
    xi_inv = LinearMap(cod.module.dim, dom.module.dim, inv_cols)
    rep = Report()
    rep.add("dim F(M) <> F(N) = dim F(M <> N)", dom.module.dim == cod.module.dim,
            f"{dom.module.dim} vs {cod.module.dim}")
    rep.add("xi o xi^{-1} = id", xi.compose(xi_inv) == LinearMap.identity(cod.module.dim))
    rep.add("xi^{-1} o xi = id", xi_inv.compose(xi) == LinearMap.identity(dom.module.dim))
    equiv = True
    for i in range(bc.H.dim):
        for d in range(dom.module.dim):
            lhs = xi.apply(dom.module.act({i: ONE}, {d: ONE}))
            rhs = cod.module.act({i: ONE}, xi.cols[d])
            if sub(lhs, rhs):
                equiv = False
                break
        if not equiv:
            break
    rep.add("xi is L~-equivariant", equiv)
    return Xi(xi, xi_inv, rep)


# Azumaya reduction -------------------------------------------------------------------------

@dataclass
class AzumayaResult:
    H: WeakBialgebra
    inclusion: LinearMap
    report: Report
    corner: Corner
    phi: LinearMap  # corner -> centralizer


def azumaya_reduce(L: WeakBialgebra) -> AzumayaResult:
    """The centralizer of the base ``R = M_d(k)`` as an ordinary bialgebra."""
    b = base_of(L)
    R = b.R
    if not isinstance(R, MultiMatrixAlgebra) or len(R.blocks) != 1:
        raise NotSingleBlock("Azumaya reduction needs a base that is one full matrix block")
    d = R.blocks[0]
    A = L.algebra
    n = A.dim
    t = target_map(L)
    s = b.source
    eqs: dict[tuple, Vec] = {}
    for r in range(R.dim):
        sr, tr = s.cols[r], t.cols[r]
        for l in range(n):
            for side, v in ((0, sub(A.mul(sr, {l: ONE}), A.mul(tr, {l: ONE}))),
                            (1, sub(A.mul({l: ONE}, sr), A.mul({l: ONE}, tr)))):
                for k, x in v.items():
                    eqs.setdefault((r, side, k), {})[l] = x
    cent = span_basis(nullspace(eqs.values(), n))
    Hal, inc = subalgebra(A, cent)
    corner = corner_base_change(L)
    C = corner.H

    def st(r1, r2):
        return A.mul(s.apply(r1), t.apply(r2))

    a_el: Vec = {}
    b_el: Vec = {}
    for i in range(d):
        add_scaled(a_el, ONE, st({R.E(0, i, 0): ONE}, {R.E(0, 0, i): ONE}))
        add_scaled(b_el, Fraction(1, d), st({R.E(0, 0, i): ONE}, {R.E(0, i, 0): ONE}))
    span = Span(cent, n)
    phi_cols = [span.coords(A.mul(A.mul(a_el, x), b_el)) for x in corner.basis]
    phi = LinearMap(C.dim, Hal.dim, phi_cols)
    rep = Report()
    rep.add("corner -> centralizer is an algebra isomorphism",
            phi.is_bijective() and check_algebra_map(phi, C.algebra, Hal))
    pinv = phi.inverse()
    m = Hal.dim
    comult = []
    for k in range(m):
        w: Vec = {}
        for key, x in C.delta(pinv.cols[k]).items():
            u, v = divmod(key, C.dim)
            for i, y in phi.cols[u].items():
                for j, z in phi.cols[v].items():
                    add_scaled(w, ONE, {i * m + j: x * y * z})
        comult.append(w)
    counit = {k: e for k in range(m) if (e := C.eps(pinv.cols[k]))}
    one = kn(1, R.field)
    base = Base(one, LinearMap(1, m, [dict(Hal.unit)]), {0: ONE})
    H = WeakBialgebra(Hal, comult, counit, base, name=f"azumaya({L.name})")
    rep.add("weak bialgebra axioms", verify_weak_bialgebra(H))
    d1 = H.delta(Hal.unit)
    rep.add("Delta(1) = 1 (x) 1", not sub(d1, {i * m + j: x * y for i, x in Hal.unit.items()
                                                for j, y in Hal.unit.items()}))
    mult_eps = all(H.eps(Hal.basis_mul(i, j)) == H.eps({i: ONE}) * H.eps({j: ONE})
                   for i in range(m) for j in range(m))
    rep.add("counit multiplicative", mult_eps)
    rep.add("dim L = d^4 dim H", n == d ** 4 * m, f"{n} = {d}^4 * {m}")
    return AzumayaResult(H, inc, rep, corner, phi)


def azumaya_iso(H0: WeakBialgebra, amp: BaseChange, az: AzumayaResult) -> LinearMap:
    """Explicit map ``H0 -> azumaya_reduce(amplify(H0))`` through the corner realization."""
    ctx = amp.ctx.swapped()
    back = base_change(amp.H, ctx)
    rt = round_trip_iso(H0, amp, back)
    ci = corner_iso(back, az.corner, amp.H)
    return az.phi.compose(ci.compose(rt))
