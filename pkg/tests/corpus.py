"""Shared corpus of face algebras and cached base changes."""

from functools import lru_cache

from qgroupoid.algebra import make_multimatrix
from qgroupoid.duality import dual_weak_bialgebra
from qgroupoid.morita import amplify, base_change, canonical_context
from qgroupoid.weak import (base_of, cyclic_group, disjoint_trivial, disjoint_union, groupoid_weak_hopf,
                            null_monoid_bialgebra, pair_groupoid)


def _g(G):
    return groupoid_weak_hopf(G)[0]


FACE = {
    "pair2": lambda: _g(pair_groupoid(2)),
    "pair3": lambda: _g(pair_groupoid(3)),
    "triv2": lambda: _g(disjoint_trivial(2)),
    "C2+pt": lambda: _g(disjoint_union(cyclic_group(2), disjoint_trivial(1))),
    "dual_pair2": lambda: dual_weak_bialgebra(_g(pair_groupoid(2))),
}

# everything above plus instances over k that are not face algebras of groupoids
ALL = dict(FACE, C2=lambda: _g(cyclic_group(2)), null=null_monoid_bialgebra)


@lru_cache(maxsize=None)
def instance(name):
    return ALL[name]()


def patterns(name):
    n = base_of(instance(name)).R.dim
    out = [(2,) + (1,) * (n - 1)]
    if n >= 2 and name in ("pair2", "triv2"):
        out.append((1, 2))
    return out


@lru_cache(maxsize=None)
def amplified(name, blocks):
    ctx = canonical_context(make_multimatrix(blocks))
    return ctx, amplify(instance(name), ctx)


@lru_cache(maxsize=None)
def round_trip(name, blocks):
    ctx, amp = amplified(name, blocks)
    return amp, base_change(amp.H, ctx)


CASES = [(name, bl) for name in FACE for bl in patterns(name)]
