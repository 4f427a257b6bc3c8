"""Temperley-Lieb diagram algebras and Bratteli-level tower computations.

Floor components are ordered by increasing number of through-strands.  All
inclusion matrices have rows indexed by the lower floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Sequence

from .algebra import FiniteAlgebra, verify_algebra
from .errors import FloorMismatch, InconsistentRanks, NoSolution, TooManyStrands
from .linalg import Vec, sub
from .report import Violation
from .scalars import QuadScalar, beta_of, delta_of

MAX_STRANDS = 6


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


# diagrams -----------------------------------------------------------------------

def planar_pairings(k: int) -> list[tuple[int, ...]]:
    """Non-crossing perfect matchings of ``2k`` points; top ``0..k-1``, bottom ``k..2k-1``.

    Returned as partner tuples, sorted for a deterministic basis order.
    """
    circle = list(range(k)) + [k + i for i in reversed(range(k))]

    def match(seq):
        if not seq:
            yield []
            return
        first = seq[0]
        for j in range(1, len(seq), 2):
            for inner in match(seq[1:j]):
                for outer in match(seq[j + 1:]):
                    yield [(first, seq[j])] + inner + outer

    out = []
    for m in match(circle):
        partner = [0] * (2 * k)
        for a, b in m:
            partner[a], partner[b] = b, a
        out.append(tuple(partner))
    return sorted(out)


def compose_diagrams(x: tuple[int, ...], y: tuple[int, ...], k: int) -> tuple[tuple[int, ...], int]:
    """Stack ``x`` above ``y``; returns the diagram and the number of closed loops."""
    # x's bottom i is glued to y's top i; label x points 0..2k-1, y points 2k..4k-1
    def partner(p):
        return x[p] if p < 2 * k else 2 * k + y[p - 2 * k]

    def glue(p):
        if k <= p < 2 * k:
            return 2 * k + (p - k)
        if 2 * k <= p < 3 * k:
            return k + (p - 2 * k)
        return None

    result = [0] * (2 * k)
    outer = list(range(k)) + list(range(3 * k, 4 * k))
    seen = set()
    for start in outer:
        if start in seen:
            continue
        p = start
        while True:
            q = partner(p)
            g = glue(q)
            if g is None:
                break
            p = g
        end = q
        seen.update((start, end))
        a = start if start < k else start - 2 * k
        b = end if end < k else end - 2 * k
        result[a], result[b] = b, a
    loops = 0
    visited = set()
    for m in range(k, 2 * k):
        if m in visited:
            continue
        # does this middle point lie on a path to the boundary?
        p, closed, path = m, True, []
        while True:
            path.append(p)
            q = partner(p)
            path.append(q)
            g = glue(q)
            if g is None:
                closed = False
                break
            if g == m:
                break
            p = g
        visited.update(v for v in path if k <= v < 3 * k)
        visited.update(glue(v) for v in path if glue(v) is not None)
        if closed:
            loops += 1
    return tuple(result), loops


@dataclass
class TLAlgebra:
    n: int
    strands: int
    delta: QuadScalar
    beta: QuadScalar
    algebra: FiniteAlgebra
    diagrams: list[tuple[int, ...]]
    e: list[Vec]  # e_1 .. e_{k-1}

    @property
    def dim(self) -> int:
        return self.algebra.dim


def cup_cap(i: int, k: int) -> tuple[int, ...]:
    """``U_i`` (1-based): caps joining ``i-1, i`` on top and bottom, other strands vertical."""
    partner = [0] * (2 * k)
    for j in range(k):
        partner[j], partner[k + j] = k + j, j
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[k + a], partner[k + b] = k + b, k + a
    return tuple(partner)


def tl_algebra(n: int, k: int) -> TLAlgebra:
    """``A_{beta,k}`` with ``beta = beta_of(n)`` on the planar-pairing basis."""
    beta, delta = beta_of(n), delta_of(n)
    if k < 1:
        raise ValueError("need at least one strand")
    if k > MAX_STRANDS:
        raise TooManyStrands(f"k={k} exceeds the supported maximum {MAX_STRANDS}")
    diags = planar_pairings(k)
    index = {d: i for i, d in enumerate(diags)}
    powers = [QuadScalar(1, 0, delta.d)]
    for _ in range(k + 1):
        powers.append(powers[-1] * delta)
    mult = {}
    for i, x in enumerate(diags):
        for j, y in enumerate(diags):
            z, loops = compose_diagrams(x, y, k)
            mult[(i, j)] = {index[z]: powers[loops]}
    ident = tuple([k + j for j in range(k)] + list(range(k)))
    alg = FiniteAlgebra(len(diags), [_diagram_label(d, k) for d in diags], mult,
                        {index[ident]: QuadScalar(1, 0, delta.d)}, delta.d)
    inv = 1 / delta
    e = [{index[cup_cap(i, k)]: inv} for i in range(1, k)]
    return TLAlgebra(n, k, delta, beta, alg, diags, e)


def _diagram_label(d: tuple[int, ...], k: int) -> str:
    return "".join(f"{a}-{d[a]}," for a in range(2 * k) if a < d[a]).rstrip(",")


def tl_relation_violations(T: TLAlgebra) -> list[Violation]:
    A = T.algebra
    out: list[Violation] = []
    m = len(T.e)
    for i in range(m):
        ei = T.e[i]
        if sub(A.mul(ei, ei), ei):
            out.append(Violation("e_i^2 = e_i", (i + 1,)))
        for j in range(m):
            ej = T.e[j]
            if abs(i - j) == 1:
                lhs = {key: T.beta * x for key, x in A.mul(A.mul(ei, ej), ei).items()}
                if sub(lhs, ei):
                    out.append(Violation("beta e_i e_j e_i = e_i", (i + 1, j + 1)))
            elif abs(i - j) >= 2:
                if sub(A.mul(ei, ej), A.mul(ej, ei)):
                    out.append(Violation("e_i e_j = e_j e_i", (i + 1, j + 1)))
    if T.dim != catalan(T.strands):
        out.append(Violation("dim = Catalan(k)", (T.dim, catalan(T.strands))))
    return out


def verify_tl(T: TLAlgebra) -> list[Violation]:
    return verify_algebra(T.algebra) + tl_relation_violations(T)


# Bratteli data ------------------------------------------------------------------------

@dataclass(frozen=True)
class BratteliFloor:
    ranks: tuple[int, ...]
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        if any(r < 1 for r in self.ranks):
            raise InconsistentRanks("ranks must be positive")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.ranks))))

    @property
    def dim(self) -> int:
        return sum(r * r for r in self.ranks)


@dataclass(frozen=True)
class InclusionStep:
    lower: BratteliFloor
    upper: BratteliFloor
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != len(self.lower.ranks) or any(len(row) != len(self.upper.ranks) for row in m):
            raise InconsistentRanks("matrix shape does not match the floors")
        if rank_equation(m, self.lower.ranks) != tuple(self.upper.ranks):
            raise InconsistentRanks(
                f"upper ranks {self.upper.ranks} != {rank_equation(m, self.lower.ranks)} from the rank equation")


def rank_equation(matrix, lower: Sequence[int]) -> tuple[int, ...]:
    cols = len(matrix[0]) if matrix else 0
    return tuple(sum(matrix[i][j] * lower[i] for i in range(len(lower))) for j in range(cols))


def transpose(m) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*m)) if m else ()


def matmul(a, b) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
                 for i in range(len(a)))


def basic_construction_step(step: InclusionStep, name: str = "") -> InclusionStep:
    """``A < B`` gives ``B < B_1`` with matrix ``Lambda^T`` and ranks ``Lambda . ranks(B)``."""
    lam = step.matrix
    if rank_equation(lam, step.lower.ranks) != step.upper.ranks:
        raise InconsistentRanks("input step violates the rank equation")
    new_ranks = tuple(sum(lam[i][j] * step.upper.ranks[j] for j in range(len(step.upper.ranks)))
                      for i in range(len(lam)))
    upper = BratteliFloor(new_ranks, step.lower.labels, name)
    return InclusionStep(step.upper, upper, transpose(lam))


def compose_steps(s1: InclusionStep, s2: InclusionStep) -> InclusionStep:
    if s1.upper.ranks != s2.lower.ranks:
        raise FloorMismatch(f"{s1.upper.ranks} is not {s2.lower.ranks}")
    return InclusionStep(s1.lower, s2.upper, matmul(s1.matrix, s2.matrix))


def identity_step(floor: BratteliFloor) -> InclusionStep:
    n = len(floor.ranks)
    return InclusionStep(floor, floor, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


# generic Temperley-Lieb pattern ---------------------------------------------------------

def tl_ranks(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Through-strand counts and ranks of the generic ``TL_m`` (ballot numbers)."""
    through = tuple(t for t in range(m % 2, m + 1, 2))
    ranks = tuple(comb(m, (m - t) // 2) - (comb(m, (m - t) // 2 - 1) if (m - t) // 2 >= 1 else 0)
                  for t in through)
    return through, ranks


def tl_floor(m: int, name: str = "") -> BratteliFloor:
    through, ranks = tl_ranks(m)
    return BratteliFloor(ranks, tuple(f"t{t}" for t in through), name or f"TL{m}")


def tl_inclusion(m: int) -> InclusionStep:
    """Generic ``TL_m < TL_{m+1}``: ``t`` through-strands branch to ``t +- 1``."""
    lo, hi = tl_ranks(m)[0], tl_ranks(m + 1)[0]
    mat = tuple(tuple(int(abs(a - b) == 1) for b in hi) for a in lo)
    return InclusionStep(tl_floor(m), tl_floor(m + 1), mat)


def tower(n: int, up_to: int | None = None) -> list[InclusionStep]:
    """Steps ``A_{1,k} < A_{1,k+1}`` for ``k = 1 .. up_to - 1`` (default ``up_to = 2n-1``).

    ``A_{1,k}`` is the generic ``TL_{k+1}`` for ``k <= n``; later floors come
    from the basic construction.
    """
    beta_of(n)
    up_to = up_to or 2 * n - 1
    steps: list[InclusionStep] = []
    for k in range(1, up_to):
        if k + 1 <= n:
            s = tl_inclusion(k + 1)
            s = InclusionStep(_rename(s.lower, f"A_1,{k}"), _rename(s.upper, f"A_1,{k + 1}"), s.matrix)
        else:
            s = basic_construction_step(steps[-1], f"A_1,{k + 1}")
        steps.append(s)
    return steps


def _rename(f: BratteliFloor, name: str) -> BratteliFloor:
    return BratteliFloor(f.ranks, f.labels, name)


def floors(steps: Sequence[InclusionStep]) -> list[BratteliFloor]:
    return [steps[0].lower] + [s.upper for s in steps] if steps else []


def composite(steps: Sequence[InclusionStep]) -> InclusionStep:
    out = steps[0]
    for s in steps[1:]:
        out = compose_steps(out, s)
    return out


def catalan_check(n: int) -> list[Violation]:
    """``dim A_{1,k} = Catalan(k+1)`` on the generic floors, against the diagram algebra."""
    out = []
    for k, f in enumerate(floors(tower(n, n)), start=1):
        if k + 1 <= MAX_STRANDS:
            d = tl_algebra(n, k + 1).dim
            if f.dim != d:
                out.append(Violation("floor dim = dim TL_{k+1}", (k, f.dim, d)))
    return out


# middle inclusion inference ------------------------------------------------------------------

@dataclass
class MiddleData:
    bottom: InclusionStep      # H_t < H_t (x) H_s
    composite: InclusionStep   # H_t < H
    swap_pairs: list[tuple[int, int]]


def middle_data(n: int) -> MiddleData:
    """Inputs for the inference of ``H_t (x) H_s < H`` from the tower of index ``n``."""
    steps = tower(n)
    comp = composite(steps[n - 2:]) if n >= 2 else None
    ht = comp.lower.ranks
    c = len(ht)
    mid = tuple(ht[a] * ht[b] for a in range(c) for b in range(c))
    labels = tuple(f"{a}{b}" for a in range(c) for b in range(c))
    bottom = tuple(tuple(ht[b] if a == a2 else 0 for a2 in range(c) for b in range(c)) for a in range(c))
    step = InclusionStep(comp.lower, BratteliFloor(mid, labels, "H_t(x)H_s"), bottom)
    swaps = [(a * c + b, b * c + a) for a in range(c) for b in range(a + 1, c)]
    return MiddleData(step, comp, swaps)


def infer_middle_inclusion(bottom: InclusionStep, composite_step: InclusionStep,
                           swap_pairs: Sequence[tuple[int, int]]) -> list[InclusionStep]:
    """All middle steps ``X`` with ``bottom . X = composite``, the rank equation, and
    equal rows on antipode-swapped middle components.  Sorted; raises ``NoSolution``."""
    if bottom.lower.ranks != composite_step.lower.ranks:
        raise FloorMismatch("bottom and composite start on different floors")
    mid = bottom.upper.ranks
    top = composite_step.upper.ranks
    B = bottom.matrix
    per_column = []
    for j, tj in enumerate(top):
        want = [composite_step.matrix[i][j] for i in range(len(B))]
        bounds = [tj // m for m in mid]
        cols = []
        for x in product(*(range(b + 1) for b in bounds)):
            if sum(x[i] * mid[i] for i in range(len(mid))) != tj:
                continue
            if any(x[a] != x[b] for a, b in swap_pairs):
                continue
            if all(sum(B[i][m] * x[m] for m in range(len(mid))) == want[i] for i in range(len(B))):
                cols.append(x)
        if not cols:
            raise NoSolution(f"no middle column fits top component {j} (rank {tj})")
        per_column.append(cols)
    sols = []
    for choice in product(*per_column):
        mat = transpose(choice)
        sols.append(InclusionStep(bottom.upper, composite_step.upper, mat))
    return sorted(sols, key=lambda s: s.matrix)


def bratteli_base_change(step: InclusionStep, new_lower_ranks: Sequence[int]) -> InclusionStep:
    """Same matrix, new lower ranks, upper ranks from the rank equation."""
    new_lower_ranks = tuple(int(r) for r in new_lower_ranks)
    if len(new_lower_ranks) != len(step.lower.ranks):
        raise FloorMismatch("number of lower components changed")
    lower = BratteliFloor(new_lower_ranks, step.lower.labels, step.lower.name + "~")
    upper = BratteliFloor(rank_equation(step.matrix, new_lower_ranks), step.upper.labels, step.upper.name + "~")
    return InclusionStep(lower, upper, step.matrix)


# emission ------------------------------------------------------------------------------------

def to_dot(steps: Sequence[InclusionStep], title: str = "bratteli") -> str:
    lines = [f"graph {title} {{", "  rankdir=BT;", "  node [shape=circle];"]
    fl = floors(steps)
    for level, f in enumerate(fl):
        names = " ".join(f"f{level}_{i}" for i in range(len(f.ranks)))
        lines.append(f"  subgraph floor{level} {{ rank=same; {names}; }}")
        for i, r in enumerate(f.ranks):
            lines.append(f'  f{level}_{i} [label="{r}"];')
    for level, s in enumerate(steps):
        for i, row in enumerate(s.matrix):
            for j, m in enumerate(row):
                for _ in range(m):
                    lines.append(f"  f{level}_{i} -- f{level + 1}_{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_table(steps: Sequence[InclusionStep]) -> str:
    lines = []
    for f in floors(steps):
        ranks = ",".join(map(str, f.ranks))
        lines.append(f"{f.name or 'floor'}: ranks ({ranks}) dim {f.dim}")
    for s in steps:
        rows = "; ".join(" ".join(map(str, r)) for r in s.matrix)
        lines.append(f"{s.lower.name} < {s.upper.name}: [{rows}]")
    return "\n".join(lines) + "\n"
