"""Weak bialgebras, weak Hopf algebras, and their Takeuchi-bialgebra picture."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import FiniteAlgebra, check_algebra_map, enveloping, kn, subalgebra, verify_algebra
from .bimodule import (Bimodule, alpha_maps, end_ring, ring_bimodule,
                       takeuchi_product, takeuchi_ring_product, tensor_over, theta_maps)
from .errors import EmbeddingFailure, IllDefined, InvalidGroupoid, NotInSpan
from .linalg import LinearMap, Quotient, Span, Vec, add_scaled, span_basis, sub
from .report import Report, Violation

ONE = Fraction(1)


# tensor powers -----------------------------------------------------------------

def digits(idx: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def undigits(ds: Sequence[int], n: int) -> int:
    idx = 0
    for d in ds:
        idx = idx * n + d
    return idx


def tensor_mul(A: FiniteAlgebra, x: Vec, y: Vec, k: int) -> Vec:
    """Product in ``A^{(x)k}`` (index in base ``dim A``)."""
    n = A.dim
    out: Vec = {}
    for i, a in x.items():
        di = digits(i, n, k)
        for j, b in y.items():
            dj = digits(j, n, k)
            acc: Vec = {0: a * b}
            for s in range(k):
                p = A.basis_mul(di[s], dj[s])
                if not p:
                    acc = {}
                    break
                acc = {u * n + v: c * d for u, c in acc.items() for v, d in p.items()}
            if acc:
                add_scaled(out, ONE, acc)
    return out


def tensor_power_unit(A: FiniteAlgebra, k: int) -> Vec:
    acc: Vec = {0: ONE}
    for _ in range(k):
        acc = {u * A.dim + v: c * d for u, c in acc.items() for v, d in A.unit.items()}
    return acc


# the weak bialgebra ------------------------------------------------------------

@dataclass
class Base:
    """Base algebra ``R`` with the source embedding ``s: R -> H`` and a Frobenius functional."""

    R: FiniteAlgebra
    source: LinearMap
    frobenius: Vec


@dataclass
class WeakBialgebra:
    """``Delta(e_i) = sum comult[i][j*dim + k] e_j (x) e_k``; ``counit[i] = eps(e_i)``."""

    algebra: FiniteAlgebra
    comult: list[Vec]
    counit: Vec
    base: Base | None = None
    name: str = ""
    antipode: LinearMap | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta(self, x: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            if self.comult[i]:
                add_scaled(out, a, self.comult[i])
        return out

    def eps(self, x: Vec):
        return sum((a * self.counit[i] for i, a in x.items() if i in self.counit), Fraction(0))

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def delta_left(self, w: Vec, k: int) -> Vec:
        """``Delta (x) id^{k-1}`` on a ``k``-fold tensor."""
        n = self.dim
        rest = n ** (k - 1)
        out: Vec = {}
        for key, x in w.items():
            a, tail = divmod(key, rest)
            for d, y in self.comult[a].items():
                add_scaled(out, ONE, {d * rest + tail: x * y})
        return out

    def delta_right(self, w: Vec, k: int) -> Vec:
        """``id^{k-1} (x) Delta`` on a ``k``-fold tensor."""
        n = self.dim
        out: Vec = {}
        for key, x in w.items():
            head, a = divmod(key, n)
            for d, y in self.comult[a].items():
                add_scaled(out, ONE, {head * n * n + d: x * y})
        return out

    def eps_t(self, h: Vec) -> Vec:
        """``eps(1_1 h) 1_2``."""
        n = self.dim
        out: Vec = {}
        for key, c in self.delta(self.algebra.unit).items():
            a, b = divmod(key, n)
            e = self.eps(self.mul({a: ONE}, h))
            if e:
                add_scaled(out, c * e, {b: ONE})
        return out

    def eps_s(self, h: Vec) -> Vec:
        """``1_1 eps(h 1_2)``."""
        n = self.dim
        out: Vec = {}
        for key, c in self.delta(self.algebra.unit).items():
            a, b = divmod(key, n)
            e = self.eps(self.mul(h, {b: ONE}))
            if e:
                add_scaled(out, c * e, {a: ONE})
        return out

    def eps_t_map(self) -> LinearMap:
        return LinearMap.from_function(self.dim, self.dim, lambda i: self.eps_t({i: ONE}))

    def eps_s_map(self) -> LinearMap:
        return LinearMap.from_function(self.dim, self.dim, lambda i: self.eps_s({i: ONE}))


def verify_weak_bialgebra(H: WeakBialgebra) -> list[Violation]:
    A = H.algebra
    n = H.dim
    out = list(verify_algebra(A))
    if out:
        return out
    for i in range(n):
        d = H.comult[i]
        if sub(H.delta_left(d, 2), H.delta_right(d, 2)):
            out.append(Violation("coassociativity", (i,)))
        left: Vec = {}
        right: Vec = {}
        for key, x in d.items():
            a, b = divmod(key, n)
            if H.counit.get(a):
                add_scaled(left, x * H.counit[a], {b: ONE})
            if H.counit.get(b):
                add_scaled(right, x * H.counit[b], {a: ONE})
        if sub(left, {i: ONE}) or sub(right, {i: ONE}):
            out.append(Violation("counit", (i,), f"(eps x id)D={left} (id x eps)D={right}"))
    for i in range(n):
        for j in range(n):
            if sub(H.delta(A.basis_mul(i, j)), tensor_mul(A, H.comult[i], H.comult[j], 2)):
                out.append(Violation("multiplicativity", (i, j)))
    # weak counit: eps(fgh) = eps(f g1) eps(g2 h) = eps(f g2) eps(g1 h)
    E = [[H.eps(A.basis_mul(f, x)) for x in range(n)] for f in range(n)]
    for f in range(n):
        for g in range(n):
            fg = A.basis_mul(f, g)
            for h in range(n):
                lhs = sum((c * E[l][h] for l, c in fg.items()), Fraction(0))
                r1 = r2 = Fraction(0)
                for key, x in H.comult[g].items():
                    a, b = divmod(key, n)
                    r1 += x * E[f][a] * E[b][h]
                    r2 += x * E[f][b] * E[a][h]
                if lhs != r1 or lhs != r2:
                    out.append(Violation("weak counit", (f, g, h)))
    # weak unit
    d1 = H.delta(A.unit)
    lhs = H.delta_left(d1, 2)
    a = {k * n + u: x * y for k, x in d1.items() for u, y in A.unit.items()}
    b = {u * n * n + k: x * y for k, x in d1.items() for u, y in A.unit.items()}
    if sub(lhs, tensor_mul(A, a, b, 3)):
        out.append(Violation("weak unit", ("(D(1)x1)(1xD(1))",)))
    if sub(lhs, tensor_mul(A, b, a, 3)):
        out.append(Violation("weak unit", ("(1xD(1))(D(1)x1)",)))
    return out


# counital subalgebras ------------------------------------------------------------

@dataclass
class CounitalData:
    target_projection: LinearMap
    source_projection: LinearMap
    target_basis: list[Vec]
    source_basis: list[Vec]
    violations: list[Violation] = field(default_factory=list)

    @property
    def target_dim(self) -> int:
        return len(self.target_basis)

    @property
    def source_dim(self) -> int:
        return len(self.source_basis)


def _closed_unital(A: FiniteAlgebra, basis: list[Vec], name: str) -> list[Violation]:
    span = Span(basis, A.dim)
    out = []
    if not span.contains(A.unit):
        out.append(Violation(f"{name} unital", ()))
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if not span.contains(A.mul(x, y)):
                out.append(Violation(f"{name} closed", (i, j)))
    return out


def counital_subalgebras(H: WeakBialgebra) -> CounitalData:
    et, es = H.eps_t_map(), H.eps_s_map()
    tb, sb = et.image_basis(), es.image_basis()
    v = _closed_unital(H.algebra, tb, "H_t") + _closed_unital(H.algebra, sb, "H_s")
    for i, x in enumerate(tb):
        for j, y in enumerate(sb):
            if sub(H.mul(x, y), H.mul(y, x)):
                v.append(Violation("H_t, H_s commute", (i, j)))
    if et.compose(et) != et:
        v.append(Violation("eps_t idempotent", ()))
    if es.compose(es) != es:
        v.append(Violation("eps_s idempotent", ()))
    if len(tb) != len(sb):
        v.append(Violation("dim H_t = dim H_s", (len(tb), len(sb))))
    return CounitalData(et, es, tb, sb, v)


def is_face_algebra(H: WeakBialgebra) -> bool:
    Rt, _ = subalgebra(H.algebra, H.eps_t_map().image_basis(), unit=H.algebra.unit)
    return Rt.is_commutative()


def base_of(H: WeakBialgebra) -> Base:
    """The stored base, or ``R = H_t`` with the inclusion and ``eps`` restricted."""
    if H.base is not None:
        return H.base
    tb = H.eps_t_map().image_basis()
    R, inc = subalgebra(H.algebra, tb, labels=[f"t{i}" for i in range(len(tb))], unit=H.algebra.unit)
    frob = {i: H.eps(b) for i, b in enumerate(tb) if H.eps(b)}
    R.frobenius = frob
    H.base = Base(R, inc, frob)
    return H.base


def target_map(H: WeakBialgebra) -> LinearMap:
    """``t(r) = eps_s(s(r))``, the anti-map ``R -> H_s``."""
    b = base_of(H)
    return LinearMap(b.R.dim, H.dim, [H.eps_s(c) for c in b.source.cols])


def env_map(H: WeakBialgebra) -> LinearMap:
    """``eta(r (x) bar s) = s(r) t(s)``, the ``R^e``-ring structure of ``H``."""
    b = base_of(H)
    t = target_map(H)
    n = b.R.dim
    return LinearMap(n * n, H.dim, [H.mul(b.source.cols[a], t.cols[c]) for a in range(n) for c in range(n)])


def counit_to_end(H: WeakBialgebra) -> LinearMap:
    """``hat eps(h)(r) = s^{-1}(eps_t(h s(r)))`` as a map ``H -> End(R)``."""
    b = base_of(H)
    n = b.R.dim
    span = Span(b.source.cols, H.dim)
    cols = []
    for h in range(H.dim):
        col: Vec = {}
        for j in range(n):
            img = span.coords(H.eps_t(H.mul({h: ONE}, b.source.cols[j])))
            for i, x in img.items():
                col[i * n + j] = x
        cols.append(col)
    return LinearMap(H.dim, n * n, cols)


# embedding into the Takeuchi framework ------------------------------------------

@dataclass
class TakeuchiEmbedding:
    report: Report
    product: object = None

    @property
    def ok(self) -> bool:
        return self.report.status == "pass"

    def require(self) -> "TakeuchiEmbedding":
        for c in self.report.checks:
            if not c.ok:
                raise EmbeddingFailure(f"{c.name}: {c.witness}")
        return self


def _in_takeuchi(T, w: Vec) -> Vec | None:
    try:
        return T.project(w)
    except NotInSpan:
        return None


def embed_as_takeuchi_bialgebra(H: WeakBialgebra, coassoc: bool = True) -> TakeuchiEmbedding:
    """Check that ``H`` is a ``x_R``-bialgebra over its base.

    ``coassoc`` toggles the (expensive) associativity check through alpha, alpha'.
    """
    rep = Report()
    A = H.algebra
    b = base_of(H)
    R, s = b.R, b.source
    t = target_map(H)
    env = enveloping(R)
    rep.add("source is an algebra map", check_algebra_map(s, R, A))
    anti = t.rank() == R.dim and not sub(t.apply(R.unit), A.unit)
    for i in range(R.dim):
        for j in range(R.dim):
            if sub(t.apply(R.basis_mul(i, j)), A.mul(t.cols[j], t.cols[i])):
                anti = False
    rep.add("target is an injective anti-map", anti)
    comm = all(not sub(A.mul(x, y), A.mul(y, x)) for x in s.cols for y in t.cols)
    rep.add("source and target images commute", comm)
    eta = env_map(H)
    ring_ok = check_algebra_map(eta, env, A)
    rep.add("R^e -> H is an algebra map", ring_ok)
    if not (ring_ok and anti and comm):
        return TakeuchiEmbedding(rep)
    L = ring_bimodule(A, env, eta)
    T = takeuchi_product(L, L, R)
    dcoords: list[Vec] = []
    lands = True
    for i in range(H.dim):
        c = _in_takeuchi(T, H.comult[i])
        if c is None:
            lands = False
            rep.add("Delta lands in H x_R H", False, f"basis element {i}")
            return TakeuchiEmbedding(rep, T)
        dcoords.append(c)
    rep.add("Delta lands in H x_R H", lands, f"dim H x_R H = {T.dim}")
    # R^e-ring map: unit map r bar s -> s(r) (x) t(s), and multiplicativity in T
    n = H.dim
    unit_ok = True
    for a in range(R.dim):
        for c in range(R.dim):
            lhs = T.project(H.delta(eta.cols[a * R.dim + c]))
            rhs = T.project({u * n + v: x * y for u, x in s.cols[a].items() for v, y in t.cols[c].items()})
            if sub(lhs, rhs):
                unit_ok = False
    mult_ok = True
    for i in range(n):
        for j in range(n):
            if sub(takeuchi_ring_product(T, A, A, dcoords[i], dcoords[j]), T.project(H.delta(A.basis_mul(i, j)))):
                mult_ok = False
    rep.add("Delta is an R^e-ring map", unit_ok and mult_ok)
    # counit law through theta, theta'
    ehat = counit_to_end(H)
    E = end_ring(R)
    eh_ok = check_algebra_map(ehat, A, E.algebra) and ehat.compose(eta) == E.eta
    rep.add("counit H -> End(R) is an R^e-ring map", eh_ok)
    th = theta_maps(L, R)
    ed = E.algebra.dim
    c1 = c2 = True
    for i in range(n):
        w1, w2 = {}, {}
        for key, x in H.comult[i].items():
            a, c = divmod(key, n)
            for f, y in ehat.cols[c].items():
                add_scaled(w1, ONE, {a * ed + f: x * y})
            for f, y in ehat.cols[a].items():
                add_scaled(w2, ONE, {f * n + c: x * y})
        p1, p2 = _in_takeuchi(th.right, w1), _in_takeuchi(th.left, w2)
        if p1 is None or sub(th.theta.apply(p1), {i: ONE}):
            c1 = False
        if p2 is None or sub(th.theta_prime.apply(p2), {i: ONE}):
            c2 = False
    rep.add("counit law theta(id x eps)Delta = id", c1)
    rep.add("counit law theta'(eps x id)Delta = id", c2)
    if coassoc:
        rep.add("coassociativity through alpha, alpha'", _coassoc_via_alpha(H, L, R, T, dcoords))
    return TakeuchiEmbedding(rep, T)


def _coassoc_via_alpha(H, L, R, T, dcoords) -> bool:
    al = alpha_maps(L, L, L, R)
    n = H.dim
    MP, PN = al.inner_left, al.inner_right
    for i in range(n):
        w1, w2 = {}, {}
        for b, x in dcoords[i].items():
            for key, y in T.include({b: ONE}).items():
                a, c = divmod(key, n)
                # (Delta x id): Delta(a) as an element of L x L, then paired with c
                for u, z in MP.project(H.comult[a]).items():
                    add_scaled(w1, ONE, {u * n + c: x * y * z})
                for u, z in PN.project(H.comult[c]).items():
                    add_scaled(w2, ONE, {a * PN.dim + u: x * y * z})
        try:
            l = al.alpha.apply(al.left_nested.project(w1))
            r = al.alpha_prime.apply(al.right_nested.project(w2))
        except NotInSpan:
            return False
        if sub(l, r):
            return False
    return True


# antipode and the Hopf criterion --------------------------------------------------

def verify_antipode(H: WeakBialgebra, S: LinearMap) -> list[Violation]:
    A = H.algebra
    n = H.dim
    out: list[Violation] = []
    for i in range(n):
        d = H.comult[i]
        left: Vec = {}
        right: Vec = {}
        for key, x in d.items():
            a, b = divmod(key, n)
            add_scaled(left, x, A.mul(S.cols[a], {b: ONE}))
            add_scaled(right, x, A.mul({a: ONE}, S.cols[b]))
        if sub(left, H.eps_s({i: ONE})):
            out.append(Violation("S(h1)h2 = eps_s(h)", (i,), A.labels[i]))
        if sub(right, H.eps_t({i: ONE})):
            out.append(Violation("h1S(h2) = eps_t(h)", (i,), A.labels[i]))
        three: Vec = {}
        for key, x in H.delta_left(d, 2).items():
            ab, c = divmod(key, n)
            a, b = divmod(ab, n)
            add_scaled(three, x, A.mul(A.mul(S.cols[a], {b: ONE}), S.cols[c]))
        if sub(three, S.cols[i]):
            out.append(Violation("S(h1)h2S(h3) = S(h)", (i,), A.labels[i]))
    for i in range(n):
        for j in range(n):
            if sub(S.apply(A.basis_mul(i, j)), A.mul(S.cols[j], S.cols[i])):
                out.append(Violation("S anti-multiplicative", (i, j)))
    cd = counital_subalgebras(H)
    st = span_basis(S.apply(v) for v in cd.target_basis)
    ss = span_basis(S.apply(v) for v in cd.source_basis)
    if not _same_span(st, cd.source_basis, n):
        out.append(Violation("S(H_t) = H_s", ()))
    if not _same_span(ss, cd.target_basis, n):
        out.append(Violation("S(H_s) = H_t", ()))
    return out


def _same_span(u: list[Vec], v: list[Vec], n: int) -> bool:
    if len(u) != len(v):
        return False
    sp = Span(v, n)
    return all(sp.contains(x) for x in u)


@dataclass
class BetaResult:
    bijective: bool
    rank: int
    domain_dim: int
    codomain_dim: int

    def __iter__(self):
        yield self.bijective
        yield self.rank


def hopf_beta_check(H: WeakBialgebra) -> BetaResult:
    """``beta: L (x)_{bar R} L -> L nabla L``, ``l (x) m -> l_1 (x) l_2 m``."""
    A = H.algebra
    b = base_of(H)
    R = b.R
    t = target_map(H)
    Rop = R.opposite()
    one = kn(1)
    n = H.dim
    # L as right bar R-module (l . bar r = l t(r)) and left bar R-module (bar r . m = t(r) m)
    right = {(m, r): A.mul({m: ONE}, t.cols[r]) for m in range(n) for r in range(R.dim)}
    left = {(r, m): A.mul(t.cols[r], {m: ONE}) for m in range(n) for r in range(R.dim)}
    triv = {(0, m): {m: ONE} for m in range(n)}
    triv_r = {(m, 0): {m: ONE} for m in range(n)}
    M = Bimodule(one, Rop, n, triv, right)
    N = Bimodule(Rop, one, n, left, triv_r)
    dom = tensor_over(M, Rop, N)
    rels = []
    for r in range(R.dim):
        for l in range(n):
            tl = A.mul(t.cols[r], {l: ONE})
            for m in range(n):
                sm = A.mul(b.source.cols[r], {m: ONE})
                w = {k * n + m: x for k, x in tl.items()}
                add_scaled(w, -ONE, {l * n + k: x for k, x in sm.items()})
                if w:
                    rels.append(w)
    cod = Quotient(n * n, rels)

    def beta(w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            l, m = divmod(key, n)
            for dk, y in H.comult[l].items():
                a, c = divmod(dk, n)
                for k, z in A.basis_mul(c, m).items():
                    add_scaled(out, ONE, {a * n + k: x * y * z})
        return out

    for row in dom.quotient.kernel_basis():
        if cod.project(beta(row)):
            raise IllDefined("beta does not descend to L (x)_{bar R} L")
    cols = [cod.project(beta(dom.quotient.section({i: ONE}))) for i in range(dom.dim)]
    f = LinearMap(dom.dim, cod.dim, cols)
    rk = f.rank()
    return BetaResult(rk == dom.dim == cod.dim, rk, dom.dim, cod.dim)


# groupoids -------------------------------------------------------------------------

@dataclass
class Groupoid:
    """Finite groupoid; ``compose[(g, h)] = gh`` is defined iff ``src(g) == tgt(h)``."""

    objects: list[str]
    arrows: list[str]
    src: dict[str, str]
    tgt: dict[str, str]
    compose: dict[tuple[str, str], str]
    inverses: dict[str, str]

    def identity(self, x: str) -> str:
        for g in self.arrows:
            if self.src[g] == x == self.tgt[g] and self.compose.get((g, g)) == g:
                return g
        raise InvalidGroupoid(f"no identity arrow at object {x}")


def validate_groupoid(G: Groupoid) -> None:
    arrows = set(G.arrows)
    if len(arrows) != len(G.arrows):
        raise InvalidGroupoid("duplicate arrow names")
    for g in G.arrows:
        if G.src.get(g) not in G.objects or G.tgt.get(g) not in G.objects:
            raise InvalidGroupoid(f"arrow {g} has an unknown source or target")
    for (g, h), gh in G.compose.items():
        if g not in arrows or h not in arrows or gh not in arrows:
            raise InvalidGroupoid(f"composition {g}*{h} names an unknown arrow")
        if G.src[g] != G.tgt[h]:
            raise InvalidGroupoid(f"composition {g}*{h} is given but not composable")
        if G.src[gh] != G.src[h] or G.tgt[gh] != G.tgt[g]:
            raise InvalidGroupoid(f"composite {g}*{h}={gh} has wrong endpoints")
    for g in G.arrows:
        for h in G.arrows:
            if G.src[g] == G.tgt[h] and (g, h) not in G.compose:
                raise InvalidGroupoid(f"composable pair {g}*{h} has no composite")
    for g in G.arrows:
        for h in G.arrows:
            if (g, h) not in G.compose:
                continue
            for k in G.arrows:
                if (h, k) in G.compose:
                    if G.compose[(G.compose[(g, h)], k)] != G.compose[(g, G.compose[(h, k)])]:
                        raise InvalidGroupoid(f"associativity fails at ({g},{h},{k})")
    ids = {x: G.identity(x) for x in G.objects}
    for g in G.arrows:
        if G.compose[(ids[G.tgt[g]], g)] != g or G.compose[(g, ids[G.src[g]])] != g:
            raise InvalidGroupoid(f"identity law fails at {g}")
        gi = G.inverses.get(g)
        if gi is None or G.compose.get((g, gi)) != ids[G.tgt[g]] or G.compose.get((gi, g)) != ids[G.src[g]]:
            raise InvalidGroupoid(f"inverse law fails at {g}")


def groupoid_weak_hopf(G: Groupoid) -> tuple[WeakBialgebra, LinearMap]:
    validate_groupoid(G)
    idx = {g: i for i, g in enumerate(G.arrows)}
    n = len(G.arrows)
    mult = {(idx[g], idx[h]): {idx[gh]: ONE} for (g, h), gh in G.compose.items()}
    ids = [idx[G.identity(x)] for x in G.objects]
    alg = FiniteAlgebra(n, list(G.arrows), mult, {i: ONE for i in ids})
    comult = [{i * n + i: ONE} for i in range(n)]
    counit = {i: ONE for i in range(n)}
    S = LinearMap(n, n, [{idx[G.inverses[g]]: ONE} for g in G.arrows])
    R = kn(len(G.objects))
    R.labels = [f"e_{x}" for x in G.objects]
    R.frobenius = {i: ONE for i in range(R.dim)}
    base = Base(R, LinearMap(R.dim, n, [{i: ONE} for i in ids]), dict(R.frobenius))
    H = WeakBialgebra(alg, comult, counit, base, name="groupoid", antipode=S)
    return H, S


def pair_groupoid(n: int) -> Groupoid:
    objs = [str(i + 1) for i in range(n)]
    arrows = [f"g{x}{y}" for x in objs for y in objs]
    src = {f"g{x}{y}": y for x in objs for y in objs}
    tgt = {f"g{x}{y}": x for x in objs for y in objs}
    comp = {(f"g{x}{y}", f"g{y}{z}"): f"g{x}{z}" for x in objs for y in objs for z in objs}
    inv = {f"g{x}{y}": f"g{y}{x}" for x in objs for y in objs}
    return Groupoid(objs, arrows, src, tgt, comp, inv)


def cyclic_group(m: int) -> Groupoid:
    arrows = [f"c{i}" for i in range(m)]
    comp = {(f"c{i}", f"c{j}"): f"c{(i + j) % m}" for i in range(m) for j in range(m)}
    inv = {f"c{i}": f"c{(-i) % m}" for i in range(m)}
    return Groupoid(["*"], arrows, {a: "*" for a in arrows}, {a: "*" for a in arrows}, comp, inv)


def disjoint_trivial(k: int) -> Groupoid:
    objs = [str(i + 1) for i in range(k)]
    arrows = [f"id{x}" for x in objs]
    return Groupoid(objs, arrows, {f"id{x}": x for x in objs}, {f"id{x}": x for x in objs},
                    {(f"id{x}", f"id{x}"): f"id{x}" for x in objs}, {f"id{x}": f"id{x}" for x in objs})


def disjoint_union(*parts: Groupoid) -> Groupoid:
    """Sum of groupoids; object and arrow names get the prefix ``"<i>."``."""
    objs, arrows, src, tgt, comp, inv = [], [], {}, {}, {}, {}
    for i, G in enumerate(parts):
        def tag(x, i=i):
            return f"{i}.{x}"
        objs += [tag(x) for x in G.objects]
        arrows += [tag(g) for g in G.arrows]
        src.update({tag(g): tag(x) for g, x in G.src.items()})
        tgt.update({tag(g): tag(x) for g, x in G.tgt.items()})
        comp.update({(tag(g), tag(h)): tag(gh) for (g, h), gh in G.compose.items()})
        inv.update({tag(g): tag(h) for g, h in G.inverses.items()})
    return Groupoid(objs, arrows, src, tgt, comp, inv)


def null_monoid_bialgebra() -> WeakBialgebra:
    """Monoid ``{1, z}`` with ``z^2 = z``; ``Delta(m) = m (x) m``; no antipode."""
    alg = FiniteAlgebra(2, ["1", "z"], {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}, (1, 1): {1: ONE}},
                        {0: ONE})
    return WeakBialgebra(alg, [{0: ONE}, {3: ONE}], {0: ONE, 1: ONE}, name="null-monoid")


# modules ------------------------------------------------------------------------------

@dataclass
class LModule:
    """Left module; ``action[(i, m)] = e_i . v_m``."""

    algebra: FiniteAlgebra
    dim: int
    action: dict[tuple[int, int], Vec]

    def act(self, a: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            for m, y in v.items():
                w = self.action.get((i, m))
                if w:
                    add_scaled(out, x * y, w)
        return out


def regular_module(A: FiniteAlgebra) -> LModule:
    return LModule(A, A.dim, dict(A.mult))


def verify_module(M: LModule) -> list[Violation]:
    A = M.algebra
    out = []
    for m in range(M.dim):
        v = {m: ONE}
        if sub(M.act(A.unit, v), v):
            out.append(Violation("module unit", (m,)))
        for i in range(A.dim):
            iv = M.act({i: ONE}, v)
            for j in range(A.dim):
                if sub(M.act({j: ONE}, iv), M.act(A.basis_mul(j, i), v)):
                    out.append(Violation("module associativity", (j, i, m)))
    return out


@dataclass
class ModuleTensor:
    """``M <> N``: ``M (x) N`` modulo ``t(r) m (x) n - m (x) s(r) n`` with the diagonal action."""

    module: LModule
    quotient: Quotient
    left_dim: int
    right_dim: int

    def project_pure(self, u: Vec, v: Vec) -> Vec:
        nd = self.right_dim
        return self.quotient.project({i * nd + j: x * y for i, x in u.items() for j, y in v.items()})


def tensor_modules(H: WeakBialgebra, M: LModule, N: LModule) -> ModuleTensor:
    b = base_of(H)
    t = target_map(H)
    nd = N.dim
    rels = []
    for r in range(b.R.dim):
        for m in range(M.dim):
            tm = M.act(t.cols[r], {m: ONE})
            for k in range(nd):
                w = {u * nd + k: x for u, x in tm.items()}
                add_scaled(w, -ONE, {m * nd + u: x for u, x in N.act(b.source.cols[r], {k: ONE}).items()})
                if w:
                    rels.append(w)
    q = Quotient(M.dim * nd, rels)
    hn = H.dim

    def act(l: int, w: Vec) -> Vec:
        out: Vec = {}
        for key, x in w.items():
            m, k = divmod(key, nd)
            for dk, y in H.comult[l].items():
                a, c = divmod(dk, hn)
                for u, p in M.action.get((a, m), {}).items():
                    for v, z in N.action.get((c, k), {}).items():
                        add_scaled(out, ONE, {u * nd + v: x * y * p * z})
        return out

    for row in q.kernel_basis():
        for l in range(hn):
            if q.project(act(l, row)):
                raise IllDefined("diagonal action does not descend to M <> N")
    action = {}
    for l in range(hn):
        for i in range(q.dim):
            p = q.project(act(l, q.section({i: ONE})))
            if p:
                action[(l, i)] = p
    return ModuleTensor(LModule(H.algebra, q.dim, action), q, M.dim, nd)
