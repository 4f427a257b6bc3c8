from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qgroupoid.algebra import kn, make_multimatrix
from qgroupoid.errors import BaseMismatch, NotSingleBlock
from qgroupoid.linalg import LinearMap
from qgroupoid.morita import (azumaya_iso, azumaya_reduce, base_change, canonical_context, corner_base_change,
                              corner_gram, corner_iso, identity_iso, monoidal_xi, round_trip_iso,
                              transport_module, trivial_context, verify_context, weak_iso_violations)
from qgroupoid.weak import (base_of, cyclic_group, embed_as_takeuchi_bialgebra, groupoid_weak_hopf,
                            hopf_beta_check, regular_module, verify_module, verify_weak_bialgebra)

from corpus import ALL, CASES, amplified, instance, round_trip

ONE = Fraction(1)


@pytest.mark.parametrize("blocks", [(1,), (2,), (1, 1), (2, 1), (1, 2, 1)])
def test_canonical_contexts_valid(blocks):
    ctx = canonical_context(make_multimatrix(blocks))
    assert verify_context(ctx) == []
    assert verify_context(ctx.swapped()) == []


def test_trivial_context_valid():
    assert verify_context(trivial_context(kn(2))) == []
    assert verify_context(trivial_context(make_multimatrix((2,)))) == []


@pytest.mark.parametrize("name,blocks", CASES)
def test_amplification_is_weak_bialgebra(name, blocks):
    H = instance(name)
    _, amp = amplified(name, blocks)
    assert amp.H.dim == amp.carrier.dim > H.dim
    assert verify_weak_bialgebra(amp.H) == []
    assert embed_as_takeuchi_bialgebra(amp.H, coassoc=False).ok


@pytest.mark.parametrize("name,blocks", CASES)
def test_round_trip(name, blocks):
    H = instance(name)
    amp, back = round_trip(name, blocks)
    assert back.H.dim == H.dim
    phi = round_trip_iso(H, amp, back)
    assert weak_iso_violations(phi, H, back.H) == []


def test_pair_groupoid_amplification_dimension():
    _, amp = amplified("pair2", (2, 1))
    # sum over arrows x <- y of (d_x d_y)^2 = (4 + 1)^2
    assert amp.H.dim == 25


@given(st.sampled_from(CASES))
@settings(max_examples=10)
def test_hopf_preserved(case):
    name, blocks = case
    _, amp = amplified(name, blocks)
    assert hopf_beta_check(instance(name)).bijective == hopf_beta_check(amp.H).bijective


def test_hopf_failure_preserved():
    H = ALL["null"]()
    ctx = canonical_context(make_multimatrix((2,)))
    from qgroupoid.morita import amplify
    amp = amplify(H, ctx)
    assert not hopf_beta_check(H).bijective
    assert not hopf_beta_check(amp.H).bijective


def test_trivial_context_identity():
    H = instance("pair2")
    bc = base_change(H, trivial_context(base_of(H).R))
    assert bc.H.dim == H.dim
    assert weak_iso_violations(identity_iso(bc), H, bc.H) == []


@pytest.mark.parametrize("name,blocks", CASES[:3])
def test_corner_realization(name, blocks):
    _, amp = amplified(name, blocks)
    ctx = canonical_context(make_multimatrix(blocks))
    back = base_change(amp.H, ctx)
    corner = corner_base_change(amp.H)
    assert corner.H.dim == back.H.dim
    assert verify_weak_bialgebra(corner.H) == []
    phi = corner_iso(back, corner, amp.H)
    assert weak_iso_violations(phi, back.H, corner.H) == []


@pytest.mark.parametrize("name,blocks", CASES)
def test_gram_invariant(name, blocks):
    _, amp = amplified(name, blocks)
    assert corner_gram(instance(name)) == corner_gram(amp.H)


def test_base_mismatch():
    H = instance("pair2")
    with pytest.raises(BaseMismatch):
        base_change(H, canonical_context(make_multimatrix((2, 1))))
    with pytest.raises(BaseMismatch):
        base_change(H, trivial_context(kn(3)))


def test_identification_map():
    H = instance("pair2")
    R = base_of(H).R
    swap = LinearMap(2, 2, [{1: ONE}, {0: ONE}])
    bc = base_change(H, trivial_context(R), ident=swap)
    assert verify_weak_bialgebra(bc.H) == []
    with pytest.raises(BaseMismatch):
        base_change(H, trivial_context(R), ident=LinearMap(2, 2, [{0: ONE}, {0: ONE}]))


def test_module_transport_and_xi_trivial():
    H = instance("pair2")
    bc = base_change(H, trivial_context(base_of(H).R))
    M = regular_module(H.algebra)
    tm = transport_module(M, bc)
    assert verify_module(tm.module) == []
    xi = monoidal_xi(M, M, bc)
    assert xi.report.status == "pass", xi.report.to_text()


@pytest.mark.slow
def test_xi_on_amplification():
    _, amp = amplified("pair2", (2, 1))
    H = amp.H
    ctx = canonical_context(make_multimatrix((2, 1)))
    bc = base_change(H, ctx)
    M = regular_module(H.algebra)
    xi = monoidal_xi(M, M, bc)
    assert xi.report.status == "pass", xi.report.to_text()


def test_azumaya():
    H0, _ = groupoid_weak_hopf(cyclic_group(2))
    ctx = canonical_context(make_multimatrix((2,)))
    from qgroupoid.morita import amplify
    amp = amplify(H0, ctx)
    assert amp.H.dim == 32
    az = azumaya_reduce(amp.H)
    assert az.report.status == "pass", az.report.to_text()
    assert az.H.dim == 2
    phi = azumaya_iso(H0, amp, az)
    assert weak_iso_violations(phi, H0, az.H) == []


def test_azumaya_needs_one_block():
    with pytest.raises(NotSingleBlock):
        azumaya_reduce(instance("pair2"))
