"""Verification suites and end-to-end pipelines returning :class:`Report` objects.

The command-line front end only parses arguments and prints what these return.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import MultiMatrixAlgebra, make_multimatrix, verify_algebra
from .bimodule import verify_bimodule
from .duality import SkewPairing, evaluation_pairing, verify_skew_pairing
from .errors import BaseMismatch, QGroupoidError
from .io import (MalformedInput, load_algebra, load_bimodule, load_context, load_groupoid, load_vec,
                 load_weak)
from .morita import (BaseChange, MoritaContext, amplify, base_change, canonical_context, corner_gram,
                     trivial_context, verify_context)
from .report import Report
from .towers import (InclusionStep, bratteli_base_change, catalan_check, composite, floors,
                     infer_middle_inclusion, middle_data, tl_algebra, tl_relation_violations, tower)
from .weak import (WeakBialgebra, base_of, counital_subalgebras, embed_as_takeuchi_bialgebra,
                   groupoid_weak_hopf, hopf_beta_check, verify_antipode, verify_weak_bialgebra)


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.timing = time.perf_counter() - t0
        return rep
    run.__doc__ = fn.__doc__
    run.__name__ = fn.__name__
    return run


def weak_checks(H: WeakBialgebra, rep: Report, embed: bool = True) -> None:
    rep.add("algebra axioms", verify_algebra(H.algebra))
    rep.add("weak bialgebra axioms", verify_weak_bialgebra(H))
    cd = counital_subalgebras(H)
    rep.add("counital subalgebras", cd.violations)
    if embed:
        try:
            emb = embed_as_takeuchi_bialgebra(H)
        except QGroupoidError as e:
            rep.add("Takeuchi embedding", False, str(e))
        else:
            rep.add("Takeuchi embedding", emb.ok, next((c.name for c in emb.report.checks if not c.ok), ""))
    if H.antipode is not None:
        rep.add("antipode axioms", verify_antipode(H, H.antipode))
        beta = hopf_beta_check(H)
        rep.add("beta bijective", beta.bijective, f"rank {beta.rank} of {beta.codomain_dim}")


@_timed
def verify_weak_suite(H: WeakBialgebra, embed: bool = True) -> Report:
    rep = Report()
    weak_checks(H, rep, embed)
    return rep


@_timed
def verify_tower_suite(n: int) -> Report:
    rep = Report()
    for k in range(1, 5):
        T = tl_algebra(n, k)
        rep.add(f"TL_{k} algebra axioms", verify_algebra(T.algebra))
        rep.add(f"TL_{k} relations", tl_relation_violations(T))
    rep.add("Catalan cross-check", catalan_check(n))
    return rep


def verify_object(obj: dict) -> Report:
    """Dispatch on ``obj["kind"]``; decoding problems raise :class:`MalformedInput`."""
    kind = obj["kind"]
    t0 = time.perf_counter()
    rep = Report()
    if kind == "algebra":
        rep.add("algebra axioms", verify_algebra(load_algebra(obj)))
    elif kind == "weak_bialgebra":
        rep = verify_weak_suite(load_weak(obj))
    elif kind == "groupoid":
        G = load_groupoid(obj)
        try:
            H, _ = groupoid_weak_hopf(G)
        except QGroupoidError as e:
            rep.add("groupoid axioms", False, str(e))
        else:
            rep.add("groupoid axioms", True)
            weak_checks(H, rep)
    elif kind == "bimodule":
        rep.add("bimodule axioms", verify_bimodule(load_bimodule(obj)))
    elif kind == "context":
        rep.add("Morita context axioms", verify_context(load_context(obj)))
    elif kind == "pairing":
        rep.add("skew pairing axioms", verify_skew_pairing(load_pairing(obj)))
    elif kind == "tower":
        rep = verify_tower_suite(_tower_n(obj))
    rep.timing = time.perf_counter() - t0
    return rep


def _tower_n(obj: dict) -> int:
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise MalformedInput("n", "expected an integer index")
    return n


def load_pairing(obj: dict) -> SkewPairing:
    if "of" in obj:
        return evaluation_pairing(load_weak(obj["of"], "of"))
    lam = load_weak(obj.get("lambda", {}), "lambda")
    L = load_weak(obj.get("L", {}), "L")
    R = base_of(L).R
    tau = {}
    for k, entry in enumerate(obj.get("tau", [])):
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInput(f"tau[{k}]", "expected [xi, l, vector]")
        tau[(int(entry[0]), int(entry[1]))] = load_vec(entry[2], f"tau[{k}]", R.field, R.dim)
    return SkewPairing(lam, L, R, tau)


# base change ------------------------------------------------------------------------------------

@dataclass
class BaseChangeOutcome:
    report: Report
    result: WeakBialgebra | None = None
    dims: tuple[int, int] = (0, 0)
    lines: list[str] = field(default_factory=list)


def parse_blocks(text: str) -> tuple[int, ...]:
    try:
        blocks = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise MalformedInput("blocks", f"expected comma-separated integers, got {text!r}") from None
    if not blocks or any(b < 1 for b in blocks):
        raise MalformedInput("blocks", "blocks must be positive")
    return blocks


def context_for(H: WeakBialgebra, spec: str, ctx_obj: dict | None = None,
                blocks: tuple[int, ...] | None = None) -> tuple[MoritaContext, bool]:
    """The context named by ``spec``; the flag says whether to amplify along its swap."""
    R = base_of(H).R
    if ctx_obj is not None:
        return load_context(ctx_obj), False
    if spec == "trivial":
        return trivial_context(R), False
    if spec == "canonical":
        if not isinstance(R, MultiMatrixAlgebra):
            if blocks is None:
                raise BaseMismatch("base is not stored as a multi-matrix algebra; supply its blocks")
            M = make_multimatrix(blocks, R.field)
            if not M.same_structure(R):
                raise BaseMismatch(f"base does not have matrix-unit structure constants for blocks {blocks}")
            return canonical_context(M), False
        return canonical_context(R), False
    if spec.startswith("amplify:"):
        M = make_multimatrix(parse_blocks(spec.split(":", 1)[1]), R.field)
        ctx = canonical_context(M)
        if not ctx.S.same_structure(R):
            raise BaseMismatch(f"amplification needs a base k^{len(M.blocks)}")
        return ctx, True
    raise MalformedInput("--context", f"unknown context {spec!r}")


def gram_invariance(L: WeakBialgebra, bc: BaseChange) -> tuple[bool | None, str]:
    """Corner-dimension matrices before and after; ``None`` when either base is not multi-matrix."""
    try:
        g0, g1 = corner_gram(L), corner_gram(bc.H)
    except BaseMismatch:
        return None, "base not multi-matrix"
    return g0 == g1, f"{g0} vs {g1}"


def run_base_change(H: WeakBialgebra, ctx: MoritaContext, amplifying: bool = False,
                    full: bool = True) -> BaseChangeOutcome:
    t0 = time.perf_counter()
    rep = Report()
    bc = amplify(H, ctx) if amplifying else base_change(H, ctx)
    out = bc.H
    rep.add("base change descends", True)
    rep.add("weak bialgebra axioms", verify_weak_bialgebra(out))
    if full:
        rep.add("Takeuchi embedding", embed_as_takeuchi_bialgebra(out, coassoc=False).ok)
    ok, witness = gram_invariance(H, bc)
    if ok is not None:
        rep.add("inclusion matrix invariance", ok, witness)
    lines = [f"dim before = {H.dim}", f"dim after = {out.dim}",
             f"inclusion matrix invariance: {'skipped' if ok is None else ('ok' if ok else 'FAILED')}"]
    rep.timing = time.perf_counter() - t0
    return BaseChangeOutcome(rep, out, (H.dim, out.dim), lines)


def middle_step(n: int) -> tuple[InclusionStep, int]:
    md = middle_data(n)
    sols = infer_middle_inclusion(md.bottom, md.composite, md.swap_pairs)
    return sols[0], len(sols)


def run_bratteli_base_change(n: int, new_lower=None) -> BaseChangeOutcome:
    t0 = time.perf_counter()
    step, count = middle_step(n)
    new_lower = tuple(new_lower) if new_lower else (1,) * len(step.lower.ranks)
    moved = bratteli_base_change(step, new_lower)
    rep = Report()
    rep.add("middle inclusion inferred", True, f"{count} solution(s)")
    rep.add("inclusion matrix unchanged", moved.matrix == step.matrix)
    rep.timing = time.perf_counter() - t0
    lines = [f"dim before = {step.upper.dim}", f"dim after = {moved.upper.dim}",
             f"ranks {step.upper.ranks} -> {moved.upper.ranks}"]
    return BaseChangeOutcome(rep, None, (step.upper.dim, moved.upper.dim), lines)


# towers --------------------------------------------------------------------------------------------

@dataclass
class TowerOutput:
    steps: list[InclusionStep]
    composite: InclusionStep
    middle: InclusionStep
    middle_solutions: int
    moved: InclusionStep | None = None

    @property
    def dim(self) -> int:
        return self.composite.upper.dim


def run_tower(n: int, with_base_change: bool = False) -> TowerOutput:
    steps = tower(n)
    comp = composite(steps[n - 2:])
    mid, count = middle_step(n)
    moved = bratteli_base_change(mid, (1,) * len(mid.lower.ranks)) if with_base_change else None
    return TowerOutput(steps, comp, mid, count, moved)


def tower_dict(t: TowerOutput) -> dict:
    def step(s):
        return {"lower": list(s.lower.ranks), "upper": list(s.upper.ranks), "matrix": [list(r) for r in s.matrix]}

    out = {"floors": [{"name": f.name, "ranks": list(f.ranks), "dim": f.dim} for f in floors(t.steps)],
           "steps": [step(s) for s in t.steps], "composite": step(t.composite),
           "middle": step(t.middle), "middle_solutions": t.middle_solutions, "dim_H": t.dim}
    if t.moved is not None:
        out["base_change"] = step(t.moved)
        out["dim_H_tilde"] = t.moved.upper.dim
    return out
