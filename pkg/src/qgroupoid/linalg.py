"""Exact sparse linear algebra over Q and Q(sqrt d).

The elimination kernel comes from the compiled extension when it was built,
otherwise from the pure-Python module with identical semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels_py
from .errors import NotInSpan

try:  # pragma: no cover - depends on the build
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

_backend = _compiled or _kernels_py
BACKEND = "compiled" if _compiled is not None else "python"


def use_backend(name: str) -> None:
    """Switch the elimination kernel (``"python"`` or ``"compiled"``)."""
    global _backend, BACKEND
    if name == "python":
        _backend = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this build")
        _backend = _compiled
    else:
        raise ValueError(name)
    BACKEND = name


def compiled_available() -> bool:
    return _compiled is not None


# sparse vector helpers ---------------------------------------------------

Vec = dict  # dict[int, scalar]


def add_scaled(target: Vec, coeff, src: Vec) -> None:
    _backend.add_scaled(target, coeff, src)


def lincomb(terms: Iterable[tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        if c:
            _backend.add_scaled(out, c, v)
    return out


def scale(c, v: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def sub(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    _backend.add_scaled(out, Fraction(-1), v)
    return out


def unit_vec(i: int, c=Fraction(1)) -> Vec:
    return {i: c}


def to_sparse(values: Sequence) -> Vec:
    return {i: x for i, x in enumerate(values) if x}


def to_dense(v: Vec, n: int, zero=Fraction(0)) -> list:
    out = [zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def tensor_vec(u: Vec, v: Vec, n: int) -> Vec:
    """Coordinates of ``u (x) v`` with index ``i*n + j``."""
    return {i * n + j: x * y for i, x in u.items() for j, y in v.items()}


# echelon bases -----------------------------------------------------------

class Echelon:
    """Fully reduced echelon basis of a subspace, built incrementally."""

    def __init__(self, limit: int | None = None):
        self.rows: dict[int, Vec] = {}
        self.limit = limit

    def insert(self, v: Vec):
        if not v:
            return None
        return _backend.insert_row(self.rows, v, self.limit)

    def extend(self, vs: Iterable[Vec]) -> "Echelon":
        for v in vs:
            self.insert(v)
        return self

    def reduce(self, v: Vec) -> Vec:
        return _backend.reduce_vector(self.rows, v)

    def contains(self, v: Vec) -> bool:
        r = self.reduce(v)
        if self.limit is None:
            return not r
        return not any(c < self.limit for c in r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank(vectors: Iterable[Vec]) -> int:
    return Echelon().extend(vectors).rank


def span_basis(vectors: Iterable[Vec]) -> list[Vec]:
    return Echelon().extend(vectors).basis()


def nullspace(equations: Iterable[Vec], n: int) -> list[Vec]:
    """Basis of ``{x in k^n : <eq, x> = 0 for every eq}``."""
    ech = Echelon().extend(equations)
    free = [c for c in range(n) if c not in ech.rows]
    basis = []
    for f in free:
        v: Vec = {f: Fraction(1)}
        for p, row in ech.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


class Span:
    """Subspace with a fixed basis; returns coordinates of members."""

    def __init__(self, basis: Sequence[Vec], ambient: int):
        self.ambient = ambient
        self.vectors = list(basis)
        self._ech = Echelon(limit=ambient)
        for i, b in enumerate(self.vectors):
            tagged = dict(b)
            tagged[ambient + i] = Fraction(1)
            if self._ech.insert(tagged) is None:
                raise ValueError("Span basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords(self, v: Vec) -> Vec:
        r = self._ech.reduce(v)
        out: Vec = {}
        for k, x in r.items():
            if k < self.ambient:
                raise NotInSpan("vector is not in the span")
            out[k - self.ambient] = -x
        return out

    def contains(self, v: Vec) -> bool:
        return self._ech.contains(v)


# quotients and subquotients ------------------------------------------------

class Quotient:
    """``k^n / span(relations)`` with coordinates on the non-pivot columns."""

    def __init__(self, n: int, relations: Iterable[Vec] = ()):
        self.ambient = n
        self.relations = Echelon().extend(relations)
        self.free = [c for c in range(n) if c not in self.relations.rows]
        self._index = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, v: Vec) -> Vec:
        r = self.relations.reduce(v)
        return {self._index[k]: x for k, x in r.items()}

    def section(self, q: Vec) -> Vec:
        return {self.free[i]: x for i, x in q.items()}

    def kernel_basis(self) -> list[Vec]:
        return self.relations.basis()


@dataclass
class Subquotient:
    """A subspace (given by a basis) of a quotient of an ambient space.

    ``projection`` maps ambient vectors to subquotient coordinates (raising
    ``NotInSpan`` when the image leaves the subspace); ``inclusion`` maps
    subquotient coordinates back to chosen ambient representatives.
    """

    quotient: Quotient
    basis: list[Vec]
    _span: Span = field(init=False, repr=False)

    def __post_init__(self):
        self._span = Span(self.basis, self.quotient.dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return self.quotient.ambient

    def project(self, v: Vec) -> Vec:
        return self._span.coords(self.quotient.project(v))

    def contains(self, v: Vec) -> bool:
        return self._span.contains(self.quotient.project(v))

    def include(self, c: Vec) -> Vec:
        q = lincomb((x, self.basis[i]) for i, x in c.items())
        return self.quotient.section(q)

    def representative(self, i: int) -> Vec:
        return self.quotient.section(self.basis[i])

    def projection_map(self) -> "LinearMap":
        cols = []
        for a in range(self.ambient):
            q = self.quotient.project({a: Fraction(1)})
            cols.append(q)
        return LinearMap(self.ambient, self.quotient.dim, cols)

    def inclusion_map(self) -> "LinearMap":
        return LinearMap(self.dim, self.ambient, [self.representative(i) for i in range(self.dim)])


def full_subquotient(q: Quotient) -> Subquotient:
    return Subquotient(q, [{i: Fraction(1)} for i in range(q.dim)])


# linear maps ---------------------------------------------------------------

@dataclass
class LinearMap:
    """Linear map ``k^domain -> k^codomain`` stored by sparse columns."""

    domain: int
    codomain: int
    cols: list[Vec]

    def __post_init__(self):
        if len(self.cols) != self.domain:
            raise ValueError("column count does not match the domain dimension")

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_function(cls, domain: int, codomain: int, fn) -> "LinearMap":
        return cls(domain, codomain, [fn(i) for i in range(domain)])

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "LinearMap":
        m = len(rows)
        n = len(rows[0]) if m else 0
        cols = [{i: rows[i][j] for i in range(m) if rows[i][j]} for j in range(n)]
        return cls(n, m, cols)

    def apply(self, v: Vec) -> Vec:
        return _backend.apply_columns(self.cols, v)

    __call__ = apply

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self o other``."""
        return LinearMap(other.domain, self.codomain, [self.apply(c) for c in other.cols])

    def matrix(self) -> list[list]:
        out = [[Fraction(0)] * self.domain for _ in range(self.codomain)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def rank(self) -> int:
        return rank(self.cols)

    def image_basis(self) -> list[Vec]:
        return span_basis(self.cols)

    def kernel_basis(self) -> list[Vec]:
        # solve sum_j x_j col_j = 0: equations are the rows
        rows: list[Vec] = [dict() for _ in range(self.codomain)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return nullspace([r for r in rows if r], self.domain)

    def is_injective(self) -> bool:
        return self.rank() == self.domain

    def is_bijective(self) -> bool:
        return self.domain == self.codomain and self.rank() == self.domain

    def inverse(self) -> "LinearMap":
        if not self.is_bijective():
            raise ValueError("map is not invertible")
        span = Span(self.cols, self.codomain)
        return LinearMap(self.codomain, self.domain,
                         [span.coords({i: Fraction(1)}) for i in range(self.codomain)])

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain, self.codomain) == (other.domain, other.codomain) and all(
            not sub(a, b) for a, b in zip(self.cols, other.cols))


def solve(f: LinearMap, y: Vec) -> Vec | None:
    """Some ``x`` with ``f(x) = y``, or ``None`` when ``y`` is not in the image."""
    n = f.domain
    rows: list[Vec] = [dict() for _ in range(f.codomain)]
    for j, col in enumerate(f.cols):
        for i, x in col.items():
            rows[i][j] = x
    for i, x in y.items():
        rows[i][n] = -x
    for v in nullspace([r for r in rows if r], n + 1):
        c = v.get(n)
        if c:
            return {k: x / c for k, x in v.items() if k < n and x}
    return None
