from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qgroupoid.algebra import (FiniteAlgebra, center, check_algebra_map, enveloping, kn, make_multimatrix,
                               subalgebra, tensor_algebra, verify_algebra)
from qgroupoid.linalg import LinearMap

from oracles import brute_algebra_axioms, rref_rank

ONE = Fraction(1)
blocks = st.lists(st.integers(1, 2), min_size=1, max_size=3)
small = st.integers(-3, 3)


def dense(A):
    n = A.dim
    m = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in A.mult.items():
        for k, x in v.items():
            m[i][j][k] = x
    return m, [A.unit.get(i, Fraction(0)) for i in range(n)]


def invertible(n, data):
    flat = data.draw(st.lists(small, min_size=n * n, max_size=n * n))
    m = [[Fraction(x) for x in flat[i * n:(i + 1) * n]] for i in range(n)]
    if rref_rank(m) < n:
        # unipotent fallback keeps the example instead of discarding it
        m = [[Fraction(int(i == j)) + (Fraction(flat[i * n + j]) if j > i else 0) for j in range(n)]
             for i in range(n)]
    return m


def transport(A, g):
    """Structure constants of ``A`` in the basis ``b_i = sum_k g[i][k] e_k``."""
    n = A.dim
    G = LinearMap(n, n, [{k: g[i][k] for k in range(n) if g[i][k]} for i in range(n)])
    Gi = G.inverse()
    mult = {}
    for i in range(n):
        for j in range(n):
            v = Gi.apply(A.mul(G.cols[i], G.cols[j]))
            if v:
                mult[(i, j)] = v
    return FiniteAlgebra(n, [f"b{i}" for i in range(n)], mult, Gi.apply(A.unit)), G


@given(blocks)
def test_multimatrix_valid(bl):
    A = make_multimatrix(bl)
    assert A.dim == sum(b * b for b in bl)
    assert verify_algebra(A) == []
    assert len(center(A)) == len(bl)


@given(st.sampled_from([(1,), (1, 1), (2,), (1, 1, 1), (2, 1)]), st.data())
def test_change_of_basis_agrees_with_oracle(bl, data):
    A = make_multimatrix(bl)
    B, G = transport(A, invertible(A.dim, data))
    assert verify_algebra(B) == []
    assert brute_algebra_axioms(*dense(B), B.dim)
    assert check_algebra_map(G, B, A)


@given(st.data())
def test_corruption_detected_like_oracle(data):
    A = make_multimatrix((2,))
    i, j = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    k = data.draw(st.integers(0, 3))
    c = Fraction(data.draw(st.integers(1, 3)))
    mult = {key: dict(v) for key, v in A.mult.items()}
    v = mult.setdefault((i, j), {})
    v[k] = v.get(k, 0) + c
    if not v[k]:
        del v[k]
    B = FiniteAlgebra(4, A.labels, mult, A.unit)
    assert (verify_algebra(B) == []) == brute_algebra_axioms(*dense(B), 4)
    assert verify_algebra(B) != []


def test_tensor_and_enveloping():
    A, B = make_multimatrix((2,)), kn(2)
    T = tensor_algebra(A, B)
    assert T.dim == 8 and verify_algebra(T) == []
    E = enveloping(make_multimatrix((2, 1)))
    assert E.dim == 25 and verify_algebra(E) == []
    assert kn(3).is_commutative() and not make_multimatrix((2,)).is_commutative()


def test_opposite():
    A = make_multimatrix((2,))
    Aop = A.opposite()
    assert verify_algebra(Aop) == []
    assert Aop.basis_mul(0, 1) == A.basis_mul(1, 0)


def test_subalgebra_solves_its_own_unit():
    A = make_multimatrix((2,))
    # the corner E11 M2 E11 = k E11, unit E11
    S, inc = subalgebra(A, [{0: ONE}])
    assert S.dim == 1 and S.unit == {0: ONE}
    with pytest.raises(ValueError):
        subalgebra(A, [{1: ONE}])  # E12 squares to zero, no unit


def test_labels_length_checked():
    with pytest.raises(ValueError):
        FiniteAlgebra(2, ["a"], {}, {})


def test_frobenius_dual_bases():
    A = make_multimatrix((2, 1))
    assert A.frobenius[A.E(0, 0, 0)] == 2 and A.frobenius[A.E(1, 0, 0)] == 1
