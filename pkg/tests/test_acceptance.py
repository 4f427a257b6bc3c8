"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines are collected in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qgroupoid.algebra import enveloping, kn, make_multimatrix, verify_algebra  # noqa: E402
from qgroupoid.bimodule import regular_bimodule, ring_bimodule, takeuchi_product  # noqa: E402
from qgroupoid.duality import (dual_base_change_iso, evaluation_pairing, induce_pairing,  # noqa: E402
                               verify_skew_pairing)
from qgroupoid.linalg import LinearMap  # noqa: E402
from qgroupoid.morita import (amplify, azumaya_iso, azumaya_reduce, base_change, canonical_context,  # noqa: E402
                              monoidal_xi, round_trip_iso, trivial_context, weak_iso_violations)
from qgroupoid.suites import verify_weak_suite  # noqa: E402
from qgroupoid.towers import (bratteli_base_change, catalan, composite, floors, infer_middle_inclusion,  # noqa: E402
                              middle_data, tl_algebra, tl_relation_violations, tower, transpose)
from qgroupoid.weak import (base_of, cyclic_group, embed_as_takeuchi_bialgebra, groupoid_weak_hopf,  # noqa: E402
                            hopf_beta_check, pair_groupoid, regular_module, verify_antipode,
                            verify_weak_bialgebra)

from corpus import CASES, amplified, instance, round_trip  # noqa: E402
from oracles import commutative_kn_takeuchi_regular  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def _clock(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    fl, dt = _clock(lambda: floors(tower(3)))
    dims = [f.dim for f in fl]
    ok = dims == [2, 5, 14, 41, 122] and fl[-1].ranks == (5, 9, 4) and dt < 1
    return ok, f"dims {dims}, final ranks {fl[-1].ranks}, {dt:.3f}s (limit 1s)"


def criterion_2():
    c = composite(tower(3)[1:])
    ok = c.matrix == ((2, 3, 1), (1, 3, 2)) and c.lower.ranks == (2, 1)
    return ok, f"matrix {[list(r) for r in c.matrix]} over H_t ranks {c.lower.ranks}"


def criterion_3():
    md = middle_data(3)
    sols, dt = _clock(lambda: infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs))
    got = [transpose(s.matrix) for s in sols]
    ok = len(sols) == 1 and got[0] == ((1, 0, 0, 1), (1, 1, 1, 1), (0, 1, 1, 0)) and dt < 5
    return ok, f"{len(sols)} solution(s), first {[list(r) for r in got[0]] if got else None}, {dt:.3f}s (limit 5s)"


def criterion_4():
    md = middle_data(3)
    mid = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)[0]
    moved = bratteli_base_change(mid, (1, 1, 1, 1))
    ok = moved.upper.ranks == (2, 4, 2) and moved.upper.dim == 24 and moved.matrix == mid.matrix
    return ok, f"upper ranks {moved.upper.ranks}, dim {moved.upper.dim}"


def criterion_5():
    fl = floors(tower(2))
    md = middle_data(2)
    sols = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)
    moved = {bratteli_base_change(s, (1,) * len(s.lower.ranks)).upper.dim for s in sols}
    ok = (fl[-1].ranks == (2, 3) and fl[-1].dim == 13 and fl[1].ranks == (2, 1) and fl[1].dim == 5
          and moved == {13})
    return ok, (f"H ranks {fl[-1].ranks} dim {fl[-1].dim}; floor ranks {fl[1].ranks} dim {fl[1].dim}; "
                f"{len(sols)} middle solution(s), base-changed dims {sorted(moved)}")


def criterion_6():
    bad = []

    def run():
        for n in (2, 3):
            for k in range(1, 6):
                T = tl_algebra(n, k)
                if T.dim != catalan(k) or verify_algebra(T.algebra) or tl_relation_violations(T):
                    bad.append((n, k))

    _, dt = _clock(run)
    return not bad and dt < 10, f"failures {bad}, {dt:.2f}s (limit 10s)"


def criterion_7():
    details, ok = [], True
    for name, G in (("pair2", pair_groupoid(2)), ("pair3", pair_groupoid(3)), ("C2", cyclic_group(2))):
        def run():
            H, _ = groupoid_weak_hopf(G)
            return (verify_weak_bialgebra(H) == [] and verify_antipode(H, H.antipode) == []
                    and embed_as_takeuchi_bialgebra(H).ok and hopf_beta_check(H).bijective)
        good, dt = _clock(run)
        ok &= good and dt < 5
        details.append(f"{name} {'ok' if good else 'FAIL'} {dt:.2f}s")
    return ok, ", ".join(details) + " (limit 5s each)"


def criterion_8():
    bad = []
    for name, blocks in CASES:
        amp, back = round_trip(name, blocks)
        H = instance(name)
        if back.H.dim != H.dim or weak_iso_violations(round_trip_iso(H, amp, back), H, back.H):
            bad.append((name, blocks))
    return not bad, f"{len(CASES) - len(bad)}/{len(CASES)} round trips isomorphic; failures {bad}"


def criterion_9():
    bad = []
    for name, blocks in CASES:
        _, back = round_trip(name, blocks)
        if verify_weak_suite(back.H).status != "pass":
            bad.append((name, blocks))
    H = instance("pair2")
    triv = base_change(H, trivial_context(base_of(H).R))
    xi_cases = [("pair2 trivial", H, triv)]
    _, amp = amplified("pair2", (2, 1))
    xi_cases.append(("pair2 (2,1)", amp.H, base_change(amp.H, canonical_context(make_multimatrix((2, 1))))))
    for label, L, bc in xi_cases:
        if verify_weak_suite(bc.H).status != "pass":
            bad.append(label)
        M = regular_module(L.algebra)
        if monoidal_xi(M, M, bc).report.status != "pass":
            bad.append(f"xi {label}")
    return not bad, f"{len(CASES) + 2} outputs, xi on {len(xi_cases)} contexts; failures {bad}"


def criterion_10():
    bad = []
    for name, blocks in CASES:
        _, amp = amplified(name, blocks)
        if hopf_beta_check(instance(name)).bijective != hopf_beta_check(amp.H).bijective:
            bad.append((name, blocks))
    extra = []
    for name in ("C2", "null"):
        H = instance(name)
        amp = amplify(H, canonical_context(make_multimatrix((2,))))
        b0, b1 = hopf_beta_check(H).bijective, hopf_beta_check(amp.H).bijective
        extra.append(f"{name} {b0}->{b1}")
        if b0 != b1:
            bad.append(name)
    return not bad, f"{len(CASES) + 2} instances agree; {', '.join(extra)}; failures {bad}"


def criterion_11():
    bad = []
    for name in ("pair2", "C2", "C2+pt", "dual_pair2", "null"):
        if verify_skew_pairing(evaluation_pairing(instance(name))):
            bad.append(f"eval {name}")
    H = instance("pair2")
    ctx = trivial_context(base_of(H).R)
    if verify_skew_pairing(induce_pairing(evaluation_pairing(H), ctx)):
        bad.append("induced trivial")
    for name, blocks in CASES[:4]:
        _, amp = amplified(name, blocks)
        res = dual_base_change_iso(amp.H, canonical_context(make_multimatrix(blocks)))
        if not res.F.is_bijective() or res.violations or verify_skew_pairing(res.induced):
            bad.append((name, blocks))
    return not bad, f"failures {bad}"


def criterion_12():
    H0, _ = groupoid_weak_hopf(cyclic_group(2))
    amp = amplify(H0, canonical_context(make_multimatrix((2,))))
    az = azumaya_reduce(amp.H)
    iso = weak_iso_violations(azumaya_iso(H0, amp, az), H0, az.H)
    ok = az.report.status == "pass" and az.H.dim == 2 and not iso
    return ok, f"amplified dim {amp.H.dim}, reduced dim {az.H.dim}, iso violations {len(iso)}"


def criterion_13():
    R1 = kn(1)
    M2 = make_multimatrix((2,))
    E1 = enveloping(R1)
    M = ring_bimodule(M2, E1, LinearMap(1, 4, [dict(M2.unit)]))
    over_k = takeuchi_product(M, M, R1).dim
    R = kn(2)
    Re = regular_bimodule(enveloping(R))
    dim = takeuchi_product(Re, Re, R).dim
    oracle = commutative_kn_takeuchi_regular(2)
    ok = over_k == 16 and dim == 8 == oracle
    return ok, f"M x_k N dim {over_k} (M(x)N = 16); R^e x_R R^e dim {dim}, oracle {oracle}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 14)}


def _line(k):
    ok, detail = RESULTS[k]
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k):
    try:
        RESULTS[k] = CRITERIA[k]()
    except Exception as e:  # a crash is a failed criterion, reported like any other
        RESULTS[k] = (False, f"raised {type(e).__name__}: {e}")
    print(_line(k))
    assert RESULTS[k][0], RESULTS[k][1]


if __name__ == "__main__":
    failed = 0
    for k in CRITERIA:
        try:
            RESULTS[k] = CRITERIA[k]()
        except Exception as e:
            RESULTS[k] = (False, f"raised {type(e).__name__}: {e}")
        failed += not RESULTS[k][0]
        print(_line(k), flush=True)
    sys.exit(1 if failed else 0)
