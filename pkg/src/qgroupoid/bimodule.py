"""Bimodules, balanced tensor products, and Takeuchi's ``M x_R N``.

All subquotients are computed by exact elimination.  The ``x_R`` product is
formed quotient-first: ``M (x) N`` modulo ``bar(r) m (x) n - m (x) r n``, then
the subspace on which ``m bar(s) (x) n = m (x) n s`` holds for every ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteAlgebra, check_algebra_map, enveloping, make_multimatrix
from .errors import ActionMismatch, IllDefined, NotInSpan
from .linalg import (LinearMap, Quotient, Subquotient, Vec, add_scaled, full_subquotient, nullspace,
                     sub)
from .report import Violation

ONE = Fraction(1)


@dataclass
class Bimodule:
    """``left``-``right`` bimodule with basis ``v_0..v_{dim-1}``.

    ``left_action[(i, m)]`` is ``e_i . v_m`` and ``right_action[(m, j)]`` is
    ``v_m . e_j``, both as sparse coordinate vectors.
    """

    left: FiniteAlgebra
    right: FiniteAlgebra
    dim: int
    left_action: dict[tuple[int, int], Vec]
    right_action: dict[tuple[int, int], Vec]

    def act_left(self, a: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            for m, y in v.items():
                w = self.left_action.get((i, m))
                if w:
                    add_scaled(out, x * y, w)
        return out

    def act_right(self, v: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for m, y in v.items():
            for j, x in b.items():
                w = self.right_action.get((m, j))
                if w:
                    add_scaled(out, x * y, w)
        return out


def regular_bimodule(A: FiniteAlgebra) -> Bimodule:
    act = {k: v for k, v in A.mult.items()}
    return Bimodule(A, A, A.dim, act, act)


def ring_bimodule(L: FiniteAlgebra, A: FiniteAlgebra, eta: LinearMap) -> Bimodule:
    """``L`` as an ``A``-bimodule through an algebra map ``eta: A -> L``."""
    left, right = {}, {}
    for i in range(A.dim):
        img = eta.cols[i]
        for m in range(L.dim):
            e = {m: ONE}
            left[(i, m)] = L.mul(img, e)
            right[(m, i)] = L.mul(e, img)
    return Bimodule(A, A, L.dim, left, right)


def verify_bimodule(M: Bimodule) -> list[Violation]:
    out: list[Violation] = []
    A, B = M.left, M.right
    for m in range(M.dim):
        v = {m: ONE}
        if sub(M.act_left(A.unit, v), v):
            out.append(Violation("left unit", (m,)))
        if sub(M.act_right(v, B.unit), v):
            out.append(Violation("right unit", (m,)))
        for i in range(A.dim):
            iv = M.act_left({i: ONE}, v)
            for j in range(A.dim):
                if sub(M.act_left({j: ONE}, iv), M.act_left(A.basis_mul(j, i), v)):
                    out.append(Violation("left associativity", (j, i, m)))
            for j in range(B.dim):
                if sub(M.act_right(iv, {j: ONE}), M.act_left({i: ONE}, M.act_right(v, {j: ONE}))):
                    out.append(Violation("actions commute", (i, m, j)))
        for i in range(B.dim):
            vi = M.act_right(v, {i: ONE})
            for j in range(B.dim):
                if sub(M.act_right(vi, {j: ONE}), M.act_right(v, B.basis_mul(i, j))):
                    out.append(Violation("right associativity", (m, i, j)))
    return out


def is_bimodule_map(f: LinearMap, M: Bimodule, N: Bimodule) -> bool:
    for m in range(M.dim):
        v = {m: ONE}
        for i in range(M.left.dim):
            if sub(f.apply(M.act_left({i: ONE}, v)), N.act_left({i: ONE}, f.cols[m])):
                return False
        for j in range(M.right.dim):
            if sub(f.apply(M.act_right(v, {j: ONE})), N.act_right(f.cols[m], {j: ONE})):
                return False
    return True


# balanced tensor products ------------------------------------------------------

@dataclass
class TensorProduct:
    """``M (x)_A N`` as a quotient of ``M (x) N`` (index ``m*dim N + n``)."""

    M: Bimodule
    N: Bimodule
    algebra: FiniteAlgebra
    quotient: Quotient
    bimodule: Bimodule

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def space(self) -> Subquotient:
        return full_subquotient(self.quotient)

    def rep(self, i: int) -> tuple[int, int]:
        """Pure basis tensor ``(m, n)`` representing quotient basis vector ``i``."""
        return divmod(self.quotient.free[i], self.N.dim)

    def project_pure(self, u: Vec, v: Vec) -> Vec:
        nd = self.N.dim
        return self.quotient.project({i * nd + j: x * y for i, x in u.items() for j, y in v.items()})

    def project(self, w: Vec) -> Vec:
        return self.quotient.project(w)

    def __iter__(self):
        yield self.bimodule
        yield self.space


def tensor_over(M: Bimodule, A: FiniteAlgebra, N: Bimodule) -> TensorProduct:
    """``M (x)_A N`` with the surviving outer actions."""
    if M.right.dim != A.dim or N.left.dim != A.dim:
        raise ActionMismatch("M must be a right A-module and N a left A-module")
    nd = N.dim
    rels = []
    for m in range(M.dim):
        for a in range(A.dim):
            ma = M.right_action.get((m, a), {})
            for n in range(nd):
                an = N.left_action.get((a, n), {})
                r: Vec = {k * nd + n: x for k, x in ma.items()}
                for k, x in an.items():
                    key = m * nd + k
                    y = r.get(key, 0) - x
                    if y:
                        r[key] = y
                    else:
                        r.pop(key, None)
                if r:
                    rels.append(r)
    q = Quotient(M.dim * nd, rels)
    left, right = {}, {}
    for b in range(q.dim):
        m, n = divmod(q.free[b], nd)
        for i in range(M.left.dim):
            w = M.left_action.get((i, m))
            if w:
                p = q.project({k * nd + n: x for k, x in w.items()})
                if p:
                    left[(i, b)] = p
        for j in range(N.right.dim):
            w = N.right_action.get((n, j))
            if w:
                p = q.project({m * nd + k: x for k, x in w.items()})
                if p:
                    right[(b, j)] = p
    out = Bimodule(M.left, N.right, q.dim, left, right)
    return TensorProduct(M, N, A, q, out)


# R^e-bimodules and the Takeuchi product ----------------------------------------

def env_index(R: FiniteAlgebra, a: int, b: int) -> int:
    """Index of ``e_a (x) bar(e_b)`` in ``enveloping(R)``."""
    return a * R.dim + b


def env_source(R: FiniteAlgebra, r: Vec) -> Vec:
    """``r (x) bar(1)`` in ``R^e``."""
    return {a * R.dim + b: x * y for a, x in r.items() for b, y in R.unit.items()}


def env_target(R: FiniteAlgebra, r: Vec) -> Vec:
    """``1 (x) bar(r)`` in ``R^e``."""
    return {a * R.dim + b: x * y for a, x in R.unit.items() for b, y in r.items()}


@dataclass
class TakeuchiProduct:
    """``M x_R N`` as a subquotient of ``M (x) N`` (index ``m*dim N + n``)."""

    R: FiniteAlgebra
    M: Bimodule
    N: Bimodule
    space: Subquotient
    bimodule: Bimodule

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, w: Vec) -> Vec:
        return self.space.project(w)

    def contains(self, w: Vec) -> bool:
        return self.space.contains(w)

    def include(self, c: Vec) -> Vec:
        return self.space.include(c)


def _act_first(M: Bimodule, N: Bimodule, w: Vec, a: Vec, side: str) -> Vec:
    """Apply ``a`` to the M-factor of ``w in M (x) N`` (left or right action)."""
    nd = N.dim
    out: Vec = {}
    for key, x in w.items():
        m, n = divmod(key, nd)
        img = M.act_left(a, {m: x}) if side == "left" else M.act_right({m: x}, a)
        for k, y in img.items():
            add_scaled(out, ONE, {k * nd + n: y})
    return out


def _act_second(M: Bimodule, N: Bimodule, w: Vec, a: Vec, side: str) -> Vec:
    nd = N.dim
    out: Vec = {}
    for key, x in w.items():
        m, n = divmod(key, nd)
        img = N.act_left(a, {n: x}) if side == "left" else N.act_right({n: x}, a)
        for k, y in img.items():
            add_scaled(out, ONE, {m * nd + k: y})
    return out


def takeuchi_product(M: Bimodule, N: Bimodule, R: FiniteAlgebra) -> TakeuchiProduct:
    """``M x_R N`` for ``R^e``-bimodules ``M``, ``N``.

    The equalizer condition is checked to be well defined on the quotient;
    failure raises ``IllDefined``.
    """
    n_env = R.dim * R.dim
    for X in (M, N):
        if X.left.dim != n_env or X.right.dim != n_env:
            raise ActionMismatch("takeuchi_product expects R^e-bimodules")
    nd = N.dim
    rels = []
    for r in range(R.dim):
        rbar = env_target(R, {r: ONE})
        rr = env_source(R, {r: ONE})
        for m in range(M.dim):
            for n in range(nd):
                w = {m * nd + n: ONE}
                rel = _act_first(M, N, w, rbar, "left")
                add_scaled(rel, -ONE, _act_second(M, N, w, rr, "left"))
                if rel:
                    rels.append(rel)
    q = Quotient(M.dim * nd, rels)

    def defect(w: Vec, s: int) -> Vec:
        d = _act_first(M, N, w, env_target(R, {s: ONE}), "right")
        add_scaled(d, -ONE, _act_second(M, N, w, env_source(R, {s: ONE}), "right"))
        return d

    for row in q.kernel_basis():
        for s in range(R.dim):
            if q.project(defect(row, s)):
                raise IllDefined("equalizer condition does not descend to the quotient")
    eqs: dict[int, Vec] = {}
    for s in range(R.dim):
        for b in range(q.dim):
            img = q.project(defect(q.section({b: ONE}), s))
            for c, x in img.items():
                eqs.setdefault(s * q.dim + c, {})[b] = x
    basis = nullspace(eqs.values(), q.dim)
    space = Subquotient(q, basis)
    bim = _takeuchi_bimodule(R, M, N, space)
    return TakeuchiProduct(R, M, N, space, bim)


def _takeuchi_bimodule(R, M, N, space: Subquotient) -> Bimodule:
    """``(r bar s) . (m (x) n) . (r' bar s') = r m r' (x) bar s n bar s'``."""
    env = enveloping(R)
    n = R.dim
    left, right = {}, {}
    for b in range(space.dim):
        w = space.representative(b)
        for a in range(n):
            for c in range(n):
                i = a * n + c
                lw = _act_second(M, N, _act_first(M, N, w, env_source(R, {a: ONE}), "left"),
                                 env_target(R, {c: ONE}), "left")
                rw = _act_second(M, N, _act_first(M, N, w, env_source(R, {a: ONE}), "right"),
                                 env_target(R, {c: ONE}), "right")
                try:
                    pl, pr = space.project(lw), space.project(rw)
                except NotInSpan as exc:
                    raise IllDefined("R^e-action leaves the Takeuchi product") from exc
                if pl:
                    left[(i, b)] = pl
                if pr:
                    right[(b, i)] = pr
    return Bimodule(env, env, space.dim, left, right)


def takeuchi_ring_product(T: TakeuchiProduct, L1: FiniteAlgebra, L2: FiniteAlgebra, x: Vec, y: Vec) -> Vec:
    """Product of two elements of ``L1 x_R L2`` (coordinates), via representatives."""
    n2 = L2.dim
    rx, ry = T.include(x), T.include(y)
    out: Vec = {}
    for k1, a in rx.items():
        i1, j1 = divmod(k1, n2)
        for k2, b in ry.items():
            i2, j2 = divmod(k2, n2)
            p, q = L1.basis_mul(i1, i2), L2.basis_mul(j1, j2)
            for u, c in p.items():
                for v, d in q.items():
                    add_scaled(out, ONE, {u * n2 + v: a * b * c * d})
    return T.project(out)


# End(R) and the structure maps theta, alpha -------------------------------------

@dataclass
class EndRing:
    """``End(R)`` with basis ``E_ij: e_j -> e_i`` (index ``i*dim R + j``)."""

    R: FiniteAlgebra
    algebra: FiniteAlgebra
    eta: LinearMap  # R^e -> End(R), r bar(s) -> (t -> r t s)

    def bimodule(self) -> Bimodule:
        return ring_bimodule(self.algebra, enveloping(self.R), self.eta)

    def apply(self, f: Vec, t: Vec) -> Vec:
        n = self.R.dim
        out: Vec = {}
        for key, x in f.items():
            i, j = divmod(key, n)
            y = t.get(j)
            if y:
                add_scaled(out, ONE, {i: x * y})
        return out


def end_ring(R: FiniteAlgebra) -> EndRing:
    n = R.dim
    E = make_multimatrix((n,), R.field)
    E.labels = [f"End[{R.labels[i]}<-{R.labels[j]}]" for i in range(n) for j in range(n)]
    E.frobenius = None
    cols = []
    for a in range(n):
        for b in range(n):
            img: Vec = {}
            for c in range(n):
                val = R.mul(R.mul({a: ONE}, {c: ONE}), {b: ONE})
                for i, x in val.items():
                    img[i * n + c] = x
            cols.append(img)
    eta = LinearMap(n * n, n * n, cols)
    if not check_algebra_map(eta, enveloping(R), E):
        raise IllDefined("r bar(s) -> (t -> r t s) is not an algebra map")
    return EndRing(R, E, eta)


@dataclass
class ThetaMaps:
    theta: LinearMap        # M x_R End(R) -> M
    theta_prime: LinearMap  # End(R) x_R M -> M
    right: TakeuchiProduct
    left: TakeuchiProduct


def theta_maps(M: Bimodule, R: FiniteAlgebra) -> ThetaMaps:
    """``theta(m (x) f) = bar(f(1)) m`` and ``theta'(f (x) m) = f(1) m``."""
    E = end_ring(R)
    Eb = E.bimodule()
    T1 = takeuchi_product(M, Eb, R)
    T2 = takeuchi_product(Eb, M, R)
    ed = Eb.dim

    def f_of_one(f_idx: int) -> Vec:
        return E.apply({f_idx: ONE}, R.unit)

    def theta_amb(w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            m, f = divmod(key, ed)
            add_scaled(out, x, M.act_left(env_target(R, f_of_one(f)), {m: ONE}))
        return out

    def theta_p_amb(w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            f, m = divmod(key, M.dim)
            add_scaled(out, x, M.act_left(env_source(R, f_of_one(f)), {m: ONE}))
        return out

    for T, fn in ((T1, theta_amb), (T2, theta_p_amb)):
        for row in T.space.quotient.kernel_basis():
            if fn(row):
                raise IllDefined("theta does not descend to the balanced tensor product")
    th = LinearMap(T1.dim, M.dim, [theta_amb(T1.space.representative(b)) for b in range(T1.dim)])
    thp = LinearMap(T2.dim, M.dim, [theta_p_amb(T2.space.representative(b)) for b in range(T2.dim)])
    return ThetaMaps(th, thp, T1, T2)


@dataclass
class Threefold:
    """``M x_R P x_R N`` as a subquotient of ``M (x) P (x) N``."""

    R: FiniteAlgebra
    M: Bimodule
    P: Bimodule
    N: Bimodule
    space: Subquotient

    def index(self, m: int, p: int, n: int) -> int:
        return (m * self.P.dim + p) * self.N.dim + n


def threefold_product(M: Bimodule, P: Bimodule, N: Bimodule, R: FiniteAlgebra) -> Threefold:
    dP, dN = P.dim, N.dim

    def idx(m, p, n):
        return (m * dP + p) * dN + n

    def act(w: Vec, slot: int, a: Vec, side: str) -> Vec:
        out: Vec = {}
        mods = (M, P, N)
        for key, x in w.items():
            mp, n = divmod(key, dN)
            m, p = divmod(mp, dP)
            parts = [m, p, n]
            mod = mods[slot]
            img = mod.act_left(a, {parts[slot]: x}) if side == "left" else mod.act_right({parts[slot]: x}, a)
            for k, y in img.items():
                parts2 = list(parts)
                parts2[slot] = k
                add_scaled(out, ONE, {idx(*parts2): y})
        return out

    rels = []
    for r in range(R.dim):
        rs, rt = env_source(R, {r: ONE}), env_target(R, {r: ONE})
        for m in range(M.dim):
            for p in range(dP):
                for n in range(dN):
                    w = {idx(m, p, n): ONE}
                    a = act(w, 0, rt, "left")
                    add_scaled(a, -ONE, act(w, 1, rs, "left"))
                    b = act(w, 1, rt, "left")
                    add_scaled(b, -ONE, act(w, 2, rs, "left"))
                    rels += [v for v in (a, b) if v]
    q = Quotient(M.dim * dP * dN, rels)

    def defects(w: Vec, s: int) -> tuple[Vec, Vec]:
        ss, st = env_source(R, {s: ONE}), env_target(R, {s: ONE})
        a = act(w, 0, st, "right")
        add_scaled(a, -ONE, act(w, 1, ss, "right"))
        b = act(w, 1, st, "right")
        add_scaled(b, -ONE, act(w, 2, ss, "right"))
        return a, b

    for row in q.kernel_basis():
        for s in range(R.dim):
            if any(q.project(d) for d in defects(row, s)):
                raise IllDefined("threefold equalizer does not descend to the quotient")
    eqs: dict[int, Vec] = {}
    for s in range(R.dim):
        for b in range(q.dim):
            for t, d in enumerate(defects(q.section({b: ONE}), s)):
                for c, x in q.project(d).items():
                    eqs.setdefault((s * 2 + t) * q.dim + c, {})[b] = x
    basis = nullspace(eqs.values(), q.dim)
    return Threefold(R, M, P, N, Subquotient(q, basis))


@dataclass
class AlphaMaps:
    alpha: LinearMap        # (M x P) x N -> M x P x N
    alpha_prime: LinearMap  # M x (P x N) -> M x P x N
    left_nested: TakeuchiProduct
    right_nested: TakeuchiProduct
    inner_left: TakeuchiProduct
    inner_right: TakeuchiProduct
    threefold: Threefold


def alpha_maps(M: Bimodule, P: Bimodule, N: Bimodule, R: FiniteAlgebra) -> AlphaMaps:
    """The associativity comparison maps, induced by the identity on representatives."""
    MP = takeuchi_product(M, P, R)
    PN = takeuchi_product(P, N, R)
    MP_N = takeuchi_product(MP.bimodule, N, R)
    M_PN = takeuchi_product(M, PN.bimodule, R)
    T3 = threefold_product(M, P, N, R)
    dP, dN = P.dim, N.dim

    def lift_left(w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            t, n = divmod(key, dN)
            for k, y in MP.include({t: ONE}).items():
                add_scaled(out, ONE, {k * dN + n: x * y})
        return out

    def lift_right(w: Vec) -> Vec:
        out: Vec = {}
        pn = PN.dim
        for key, x in w.items():
            m, t = divmod(key, pn)
            for k, y in PN.include({t: ONE}).items():
                add_scaled(out, ONE, {m * dP * dN + k: x * y})
        return out

    q3 = T3.space.quotient
    for nested, lift in ((MP_N, lift_left), (M_PN, lift_right)):
        for row in nested.space.quotient.kernel_basis():
            if q3.project(lift(row)):
                raise IllDefined("associativity map is not well defined")

    def build(nested, lift) -> LinearMap:
        cols = []
        for b in range(nested.dim):
            try:
                cols.append(T3.space.project(lift(nested.space.representative(b))))
            except NotInSpan as exc:
                raise IllDefined("associativity map leaves the threefold product") from exc
        return LinearMap(nested.dim, T3.space.dim, cols)

    return AlphaMaps(build(MP_N, lift_left), build(M_PN, lift_right), MP_N, M_PN, MP, PN, T3)
