import time

import pytest
from hypothesis import given, strategies as st

from qgroupoid.errors import FloorMismatch, InconsistentRanks, NoSolution, TooManyStrands, UnsupportedIndex
from qgroupoid.towers import (BratteliFloor, InclusionStep, basic_construction_step, bratteli_base_change,
                              catalan, catalan_check, compose_diagrams, composite, compose_steps, floors,
                              identity_step, infer_middle_inclusion, matmul, middle_data, planar_pairings,
                              rank_equation, tl_algebra, tl_floor, tl_inclusion, tl_relation_violations,
                              to_dot, to_table, tower, transpose, verify_tl)


def brute_noncrossing(k):
    """Perfect matchings of 2k boundary points without crossings, by filtering all matchings."""
    pts = list(range(k)) + [k + i for i in reversed(range(k))]
    pos = {p: i for i, p in enumerate(pts)}

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for b in rest[1:]:
            for m in matchings([x for x in rest if x not in (a, b)]):
                yield [(a, b)] + m

    count = 0
    for m in matchings(list(range(2 * k))):
        arcs = [tuple(sorted((pos[a], pos[b]))) for a, b in m]
        if all(not (a < c < b < d or c < a < d < b) for a, b in arcs for c, d in arcs):
            count += 1
    return count


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_planar_pairings_brute(k):
    assert len(planar_pairings(k)) == brute_noncrossing(k) == catalan(k)


def test_catalan():
    assert [catalan(k) for k in range(1, 7)] == [1, 2, 5, 14, 42, 132]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_tl_algebra_small(n, k):
    T = tl_algebra(n, k)
    assert T.dim == catalan(k)
    assert verify_tl(T) == []


@pytest.mark.parametrize("n", [2, 3])
def test_tl_relations_five_strands(n):
    T = tl_algebra(n, 5)
    assert T.dim == 42
    assert tl_relation_violations(T) == []


def test_loop_counting():
    U = tl_algebra(3, 3)
    # U_1 U_1 has one closed loop
    from qgroupoid.towers import cup_cap
    d, loops = compose_diagrams(cup_cap(1, 3), cup_cap(1, 3), 3)
    assert d == cup_cap(1, 3) and loops == 1
    d, loops = compose_diagrams(cup_cap(1, 3), cup_cap(2, 3), 3)
    assert loops == 0
    e1, e2 = U.e
    A = U.algebra
    lhs = {k: U.beta * x for k, x in A.mul(A.mul(e1, e2), e1).items()}
    assert lhs == e1


def test_tl_errors():
    with pytest.raises(TooManyStrands):
        tl_algebra(3, 7)
    with pytest.raises(UnsupportedIndex):
        tl_algebra(4, 3)


def test_tower_n3():
    t0 = time.perf_counter()
    fl = floors(tower(3))
    assert [f.dim for f in fl] == [2, 5, 14, 41, 122]
    assert fl[-1].ranks == (5, 9, 4)
    assert time.perf_counter() - t0 < 1


def test_basic_construction_reproduces_first_diagram():
    s = tl_inclusion(3)  # A_{1,2} < A_{1,3}
    assert s.lower.ranks == (2, 1) and s.upper.ranks == (2, 3, 1)
    assert s.matrix == ((1, 1, 0), (0, 1, 1))
    s1 = basic_construction_step(s)
    assert s1.upper.ranks == (5, 4) and s1.matrix == transpose(s.matrix)
    s2 = basic_construction_step(s1)
    assert s2.upper.ranks == (5, 9, 4) and s2.matrix == s.matrix


def test_basic_construction_identity():
    f = BratteliFloor((2, 3))
    s = basic_construction_step(identity_step(f))
    assert s.upper.ranks == f.ranks


def test_composite_n3():
    c = composite(tower(3)[1:])
    assert c.matrix == ((2, 3, 1), (1, 3, 2))
    assert rank_equation(c.matrix, (2, 1)) == (5, 9, 4)
    assert compose_steps(c, identity_step(c.upper)).matrix == c.matrix


def test_compose_mismatch():
    with pytest.raises(FloorMismatch):
        compose_steps(tl_inclusion(2), tl_inclusion(4))


def test_inconsistent_ranks():
    with pytest.raises(InconsistentRanks):
        InclusionStep(BratteliFloor((1,)), BratteliFloor((3,)), ((2,),))
    with pytest.raises(InconsistentRanks):
        BratteliFloor((0, 1))


def test_middle_inclusion_n3():
    md = middle_data(3)
    assert md.bottom.matrix == ((2, 1, 0, 0), (0, 0, 2, 1))
    assert md.bottom.upper.ranks == (4, 2, 2, 1)
    t0 = time.perf_counter()
    sols = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)
    assert time.perf_counter() - t0 < 5
    assert len(sols) == 1
    assert transpose(sols[0].matrix) == ((1, 0, 0, 1), (1, 1, 1, 1), (0, 1, 1, 0))
    assert matmul(md.bottom.matrix, sols[0].matrix) == md.composite.matrix


def test_middle_inclusion_n2_multiplicity_reported():
    md = middle_data(2)
    sols = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)
    assert len(sols) == 4
    assert all(bratteli_base_change(s, (1, 1, 1, 1)).upper.dim == 13 for s in sols)


def test_middle_trivial_and_no_solution():
    f1 = BratteliFloor((1,))
    bottom = InclusionStep(f1, f1, ((1,),))
    comp = InclusionStep(f1, BratteliFloor((2,)), ((2,),))
    sols = infer_middle_inclusion(bottom, comp, [])
    assert [s.matrix for s in sols] == [((2,),)]
    md = middle_data(3)
    # each H_t component enters once: forces x_1 = x_3 = 1, but the swap pair needs x_1 = x_2 = 0 or 1
    wrong = InclusionStep(BratteliFloor((2, 1)), BratteliFloor((3,)), ((1,), (1,)))
    with pytest.raises(NoSolution):
        infer_middle_inclusion(md.bottom, wrong, md.swap_pairs)


def test_bratteli_base_change():
    md = middle_data(3)
    (mid,) = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)
    moved = bratteli_base_change(mid, (1, 1, 1, 1))
    assert moved.upper.ranks == (2, 4, 2) and moved.upper.dim == 24
    assert moved.matrix == mid.matrix
    same = bratteli_base_change(mid, mid.lower.ranks)
    assert same.upper.ranks == mid.upper.ranks


@given(st.lists(st.integers(1, 4), min_size=2, max_size=2),
       st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=2, max_size=2))
def test_base_change_keeps_matrix(ranks, mat):
    if not all(any(mat[i][j] for i in range(2)) for j in range(3)):
        mat = [[1, 1, 1], [1, 1, 1]]
    up = rank_equation(mat, ranks)
    s = InclusionStep(BratteliFloor(tuple(ranks)), BratteliFloor(up), tuple(map(tuple, mat)))
    moved = bratteli_base_change(s, (1, 1))
    assert moved.matrix == s.matrix
    assert moved.upper.ranks == rank_equation(mat, (1, 1))


def test_tower_n2():
    fl = floors(tower(2))
    assert fl[-1].ranks == (2, 3) and fl[-1].dim == 13
    assert fl[0].ranks == (1, 1)
    assert fl[1].ranks == (2, 1) and fl[1].dim == 5


@pytest.mark.parametrize("n", [2, 3])
def test_catalan_consistency(n):
    assert catalan_check(n) == []
    for k in range(1, n + 1):
        assert tl_floor(k + 1).dim == catalan(k + 1)


def test_emission():
    steps = tower(3)
    dot = to_dot(steps)
    assert dot.startswith("graph") and dot.count("--") == sum(sum(map(sum, s.matrix)) for s in steps)
    table = to_table(steps)
    assert "dim 122" in table
