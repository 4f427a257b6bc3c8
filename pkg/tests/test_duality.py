from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qgroupoid.algebra import make_multimatrix
from qgroupoid.duality import (dual_base_change_iso, dual_weak_bialgebra, evaluation_pairing, induce_pairing,
                               verify_skew_pairing)
from qgroupoid.morita import canonical_context, trivial_context
from qgroupoid.weak import (WeakBialgebra, base_of, embed_as_takeuchi_bialgebra, verify_weak_bialgebra)

from corpus import CASES, amplified, instance

ONE = Fraction(1)


@pytest.mark.parametrize("name", ["pair2", "pair3", "C2", "C2+pt", "null"])
def test_dual_is_weak_bialgebra(name):
    D = dual_weak_bialgebra(instance(name))
    assert verify_weak_bialgebra(D) == []
    assert embed_as_takeuchi_bialgebra(D).ok


def test_double_dual_structure_constants():
    H = instance("pair2")
    DD = dual_weak_bialgebra(dual_weak_bialgebra(H))
    # the bidual has the structure constants of H with both opposites applied
    assert DD.algebra.same_structure(H.algebra.opposite()) or DD.algebra.same_structure(H.algebra)
    assert DD.counit == H.counit


@pytest.mark.parametrize("name", ["pair2", "C2", "C2+pt", "dual_pair2", "null"])
def test_evaluation_pairing(name):
    assert verify_skew_pairing(evaluation_pairing(instance(name))) == []


def test_corrupted_pairing_fails():
    p = evaluation_pairing(instance("pair2"))
    key = next(iter(p.tau))
    p.tau[key] = {k: 2 * x for k, x in p.tau[key].items()}
    assert verify_skew_pairing(p) != []


@given(st.sampled_from(CASES[:4]))
@settings(max_examples=4)
def test_dual_base_change_iso(case):
    name, blocks = case
    ctx = canonical_context(make_multimatrix(blocks))
    _, amp = amplified(name, blocks)
    res = dual_base_change_iso(amp.H, ctx)
    assert res.F.is_bijective()
    assert res.violations == []
    assert verify_skew_pairing(res.induced) == []


def test_induced_pairing_trivial_context():
    H = instance("pair2")
    p = evaluation_pairing(H)
    ctx = trivial_context(base_of(H).R)
    ind = induce_pairing(p, ctx)
    assert verify_skew_pairing(ind) == []
    res = dual_base_change_iso(H, ctx)
    assert res.violations == []


def test_derived_base_duality():
    H = instance("C2+pt")
    bare = WeakBialgebra(H.algebra, H.comult, H.counit)
    assert verify_skew_pairing(evaluation_pairing(bare)) == []
