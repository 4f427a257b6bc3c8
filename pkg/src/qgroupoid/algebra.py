"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import LinearMap, Span, Vec, add_scaled, nullspace, sub
from .report import Violation

ONE = Fraction(1)


@dataclass
class FiniteAlgebra:
    """Algebra with basis ``e_0..e_{dim-1}`` and ``e_i e_j = sum_k mult[i,j][k] e_k``.

    Products absent from ``mult`` are zero.  ``frobenius`` optionally carries a
    functional (as a coefficient vector) used when the algebra serves as the
    base of a weak bialgebra.
    """

    dim: int
    labels: list[str]
    mult: dict[tuple[int, int], Vec]
    unit: Vec
    field: int | None = None
    frobenius: Vec | None = None

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        self.mult = {k: v for k, v in self.mult.items() if v}

    def basis_mul(self, i: int, j: int) -> Vec:
        return self.mult.get((i, j), {})

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.mult.get((i, j))
                if p:
                    add_scaled(out, a * b, p)
        return out

    def left_mult_map(self, x: Vec) -> LinearMap:
        return LinearMap(self.dim, self.dim, [self.mul(x, {j: ONE}) for j in range(self.dim)])

    def right_mult_map(self, x: Vec) -> LinearMap:
        return LinearMap(self.dim, self.dim, [self.mul({j: ONE}, x) for j in range(self.dim)])

    def opposite(self) -> "FiniteAlgebra":
        return FiniteAlgebra(self.dim, [f"{l}^op" for l in self.labels],
                             {(j, i): v for (i, j), v in self.mult.items()}, dict(self.unit),
                             self.field, self.frobenius)

    def is_commutative(self) -> bool:
        return all(not sub(self.basis_mul(i, j), self.basis_mul(j, i))
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def same_structure(self, other: "FiniteAlgebra") -> bool:
        if self.dim != other.dim or sub(self.unit, other.unit):
            return False
        keys = set(self.mult) | set(other.mult)
        return all(not sub(self.basis_mul(*k), other.basis_mul(*k)) for k in keys)


@dataclass
class MultiMatrixAlgebra(FiniteAlgebra):
    """Direct sum of full matrix algebras with matrix-unit basis ``E^(a)_ij``."""

    blocks: tuple[int, ...] = ()
    offsets: tuple[int, ...] = field(default=(), repr=False)

    def E(self, a: int, i: int, j: int) -> int:
        """Basis index of ``E^(a)_{ij}`` (0-based block and matrix indices)."""
        d = self.blocks[a]
        return self.offsets[a] + i * d + j


def make_multimatrix(blocks: Sequence[int], field: int | None = None) -> MultiMatrixAlgebra:
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b < 1 for b in blocks):
        raise ValueError("blocks must be a nonempty sequence of positive integers")
    offsets, labels, off = [], [], 0
    for a, d in enumerate(blocks):
        offsets.append(off)
        labels += [f"E{a + 1}_{i + 1}{j + 1}" for i in range(d) for j in range(d)]
        off += d * d
    mult: dict[tuple[int, int], Vec] = {}
    unit: Vec = {}
    for a, d in enumerate(blocks):
        o = offsets[a]
        for i in range(d):
            unit[o + i * d + i] = ONE
            for j in range(d):
                for l in range(d):
                    mult[(o + i * d + j, o + j * d + l)] = {o + i * d + l: ONE}
    # Frobenius functional sum_a d_a tr_a: dual bases E_ij (x) E_ji / d_a, so sum u_k v_k = 1
    frob = {offsets[a] + i * d + i: Fraction(d) for a, d in enumerate(blocks) for i in range(d)}
    return MultiMatrixAlgebra(off, labels, mult, unit, field, frob, blocks, tuple(offsets))


def kn(n: int, field: int | None = None) -> MultiMatrixAlgebra:
    """The commutative algebra ``k^n`` of ``n`` orthogonal idempotents."""
    alg = make_multimatrix((1,) * n, field)
    alg.labels = [f"e{a + 1}" for a in range(n)]
    return alg


def tensor_algebra(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """``A (x) B`` with basis index ``i*dim B + j``."""
    nb = B.dim
    mult: dict[tuple[int, int], Vec] = {}
    for (i, k), p in A.mult.items():
        for (j, l), q in B.mult.items():
            mult[(i * nb + j, k * nb + l)] = {a * nb + b: x * y for a, x in p.items() for b, y in q.items()}
    unit = {i * nb + j: x * y for i, x in A.unit.items() for j, y in B.unit.items()}
    labels = [f"{a}(x){b}" for a in A.labels for b in B.labels]
    return FiniteAlgebra(A.dim * nb, labels, mult, unit, A.field or B.field)


def enveloping(R: FiniteAlgebra) -> FiniteAlgebra:
    """``R^e = R (x) R^op``; index ``i*dim R + j`` stands for ``e_i (x) bar(e_j)``."""
    env = tensor_algebra(R, R.opposite())
    env.labels = [f"{a}|{b}~" for a in R.labels for b in R.labels]
    return env


def verify_algebra(A: FiniteAlgebra) -> list[Violation]:
    """Every failing associativity or unit instance (empty iff A is valid)."""
    out: list[Violation] = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            ij = A.basis_mul(i, j)
            for k in range(n):
                left = A.mul(ij, {k: ONE})
                right = A.mul({i: ONE}, A.basis_mul(j, k))
                if sub(left, right):
                    out.append(Violation("associativity", (i, j, k), f"(ee)e={left} e(ee)={right}"))
    for i in range(n):
        e = {i: ONE}
        if sub(A.mul(A.unit, e), e):
            out.append(Violation("left unit", (i,)))
        if sub(A.mul(e, A.unit), e):
            out.append(Violation("right unit", (i,)))
    return out


def center(A: FiniteAlgebra) -> list[Vec]:
    """Exact basis of ``{x : x e_i = e_i x for all i}``."""
    n = A.dim
    eqs: list[Vec] = []
    for i in range(n):
        # coefficient of e_k in x e_i - e_i x, as a linear form in x
        forms: dict[int, Vec] = {}
        for j in range(n):
            diff = sub(A.basis_mul(j, i), A.basis_mul(i, j))
            for k, c in diff.items():
                forms.setdefault(k, {})[j] = c
        eqs.extend(f for f in forms.values() if f)
    return nullspace(eqs, n)


def check_algebra_map(f: LinearMap, A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    if f.domain != A.dim or f.codomain != B.dim:
        raise ValueError("map shape does not match the algebras")
    if sub(f.apply(A.unit), B.unit):
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            if sub(f.apply(A.basis_mul(i, j)), B.mul(f.cols[i], f.cols[j])):
                return False
    return True


def subalgebra(A: FiniteAlgebra, basis: Sequence[Vec], labels: Sequence[str] | None = None,
               unit: Vec | None = None) -> tuple[FiniteAlgebra, LinearMap]:
    """Algebra structure on a multiplicatively closed subspace.

    When ``unit`` is omitted the subalgebra's own identity element is solved
    for; it need not coincide with the unit of ``A``.
    """
    basis = list(basis)
    span = Span(basis, A.dim)
    m = len(basis)
    mult = {}
    for i in range(m):
        for j in range(m):
            c = span.coords(A.mul(basis[i], basis[j]))
            if c:
                mult[(i, j)] = c
    if unit is None:
        unit = _solve_unit(m, mult)
    else:
        unit = span.coords(unit)
    labels = list(labels) if labels is not None else [f"b{i}" for i in range(m)]
    sub_alg = FiniteAlgebra(m, labels, mult, unit, A.field)
    return sub_alg, LinearMap(m, A.dim, basis)


def _solve_unit(m: int, mult: dict[tuple[int, int], Vec]) -> Vec:
    # unknown u = sum_k u_k b_k with u b_j = b_j = b_j u; affine system
    eqs: list[Vec] = []
    for j in range(m):
        for side in (0, 1):
            forms: dict[int, Vec] = {}
            for k in range(m):
                prod = mult.get((k, j) if side == 0 else (j, k), {})
                for l, c in prod.items():
                    forms.setdefault(l, {})[k] = c
            for l in range(m):
                f = dict(forms.get(l, {}))
                rhs = ONE if l == j else Fraction(0)
                if rhs:
                    f[m] = -rhs
                if f:
                    eqs.append(f)
    sol = nullspace(eqs, m + 1)
    for v in sol:
        if v.get(m):
            c = v[m]
            return {k: x / c for k, x in v.items() if k < m and x}
    raise ValueError("subspace has no identity element")


def scalar_one_dim(field: int | None = None) -> FiniteAlgebra:
    """The ground field as a 1-dimensional algebra."""
    return kn(1, field)
