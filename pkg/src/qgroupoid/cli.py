"""Command-line front end.

Exit codes: 0 when every check passes, 1 on violations or unsupported
requests, 2 when the input does not parse.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import QGroupoidError, UnsupportedIndex
from .io import MalformedInput, dump_weak, dumps, load_file, load_groupoid, load_weak
from .suites import (context_for, parse_blocks, run_base_change, run_bratteli_base_change, run_tower,
                     tower_dict, verify_object)
from .towers import to_dot, to_table
from .weak import groupoid_weak_hopf

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


def _print_report(rep, fmt: str, timing: bool, extra: dict | None = None) -> None:
    if fmt == "json":
        d = rep.to_dict(with_timing=timing)
        if extra:
            d.update(extra)
        print(json.dumps(d, indent=1, ensure_ascii=False))
    else:
        print(rep.to_text(with_timing=timing))


def cmd_verify(args) -> int:
    try:
        obj = load_file(args.path)
        rep = verify_object(obj)
    except MalformedInput as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as e:
        print(f"cannot read {args.path}: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except QGroupoidError as e:
        print(f"verification aborted: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    _print_report(rep, args.format, not args.no_timing)
    return EXIT_OK if rep.status == "pass" else EXIT_FAIL


def cmd_base_change(args) -> int:
    try:
        obj = load_file(args.path)
        if obj["kind"] == "tower":
            n = obj.get("n")
            if not isinstance(n, int):
                raise MalformedInput("n", "expected an integer index")
            outcome = run_bratteli_base_change(n, obj.get("new_lower_ranks"))
        else:
            if obj["kind"] == "groupoid":
                H, _ = groupoid_weak_hopf(load_groupoid(obj))
            elif obj["kind"] == "weak_bialgebra":
                H = load_weak(obj)
            else:
                raise MalformedInput("kind", f"cannot base-change a {obj['kind']}")
            ctx_obj = None
            if args.context not in ("canonical", "trivial") and not args.context.startswith("amplify:"):
                ctx_obj = load_file(args.context)
                if ctx_obj["kind"] != "context":
                    raise MalformedInput(f"{args.context}: kind", "expected a context file")
            blocks = parse_blocks(args.blocks) if args.blocks else None
            ctx, amp = context_for(H, args.context, ctx_obj, blocks)
            outcome = run_base_change(H, ctx, amp, full=not args.quick)
    except MalformedInput as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except QGroupoidError as e:
        print(f"base change failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.out and outcome.result is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(dump_weak(outcome.result)))
    if args.format == "json":
        _print_report(outcome.report, "json", not args.no_timing,
                      {"dim_before": outcome.dims[0], "dim_after": outcome.dims[1]})
    else:
        print("\n".join(outcome.lines))
        _print_report(outcome.report, "text", not args.no_timing)
    return EXIT_OK if outcome.report.status == "pass" else EXIT_FAIL


def cmd_tower(args) -> int:
    try:
        t = run_tower(args.n, args.base_change)
    except UnsupportedIndex as e:
        print(f"unsupported index: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(tower_dict(t), indent=1))
        return EXIT_OK
    if args.emit == "dot":
        sys.stdout.write(to_dot(t.steps, f"tower_n{args.n}"))
        sys.stdout.write(to_dot([t.composite], "composite"))
        sys.stdout.write(to_dot([t.middle], "middle"))
        if t.moved is not None:
            sys.stdout.write(to_dot([t.moved], "middle_base_changed"))
    else:
        sys.stdout.write(to_table(t.steps))
        sys.stdout.write("composite H_t < H:\n" + to_table([t.composite]))
        sys.stdout.write(f"middle H_t(x)H_s < H ({t.middle_solutions} solution(s)):\n" + to_table([t.middle]))
        if t.moved is not None:
            sys.stdout.write("after base change:\n" + to_table([t.moved]))
    print(f"dim H = {t.dim}")
    if t.moved is not None:
        print(f"dim H\u0303 = {t.moved.upper.dim}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgroupoid", description="Exact weak bialgebra and Morita base change toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite matching the file's kind")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("base-change", help="base change a weak bialgebra along a Morita context")
    b.add_argument("path")
    b.add_argument("--context", default="canonical",
                   help="canonical, trivial, amplify:B1,B2,... or a context JSON file")
    b.add_argument("--blocks", help="block sizes identifying a derived base with matrix units")
    b.add_argument("--out", help="write the result here")
    b.add_argument("--quick", action="store_true", help="skip the Takeuchi embedding check")
    b.set_defaults(func=cmd_base_change)

    t = sub.add_parser("tower", help="Temperley-Lieb tower at the Bratteli level")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--emit", choices=("dot", "table"), default="table")
    t.add_argument("--base-change", action="store_true")
    t.set_defaults(func=cmd_tower)

    for s in (v, b, t):
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--no-timing", action="store_true", help="omit timing for byte-stable output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
