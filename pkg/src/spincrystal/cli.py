"""Command-line front end: generate, verify, inspect and export.

Global options may appear before or after the subcommand.  The rank
parameter and the top-weight coefficients fix the algebra; h is always
derived as 2n+1 and never passed separately.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import crystal as crystal_mod
from . import reduced as reduced_mod
from .cartan import (
    WeightError,
    format_content,
    make_context,
    vertex_label,
    _defect_raw,
    _hub_raw,
)
from .partitions import (
    ConjectureViolation,
    CornerPartition,
    SpinMultipartition,
    empty_multipartition,
    multipartition_content,
    render,
)
from .signature import (
    MINUS,
    PLUS,
    PLUSMINUS,
    Signature,
    SignatureSymbol,
    apply_f,
    build_signature,
    epsilon,
    phi,
    reduce,
    reduce_with_order,
)

_DEFAULTS = {
    "n": None,
    "weight": None,
    "max_degree": None,
    "variant": "paper",
    "format": "text",
    "out": None,
    "seed": 0,
    "strict": False,
    "ascii": False,
}


class CliError(Exception):
    pass


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--n", type=int, help="rank parameter (h = 2n+1)")
    p.add_argument("--weight", help="comma-separated top-weight coefficients a0,...,an")
    p.add_argument("--max-degree", dest="max_degree", type=int, help="degree bound")
    p.add_argument("--variant", choices=["paper", "standard"], help="restrictedness reading")
    p.add_argument("--format", choices=["text", "json", "dot", "tsv"], help="output format")
    p.add_argument("--out", help="write output to a file instead of stdout")
    p.add_argument("--seed", type=int, help="seed for randomized cross-checks")
    p.add_argument("--strict", action="store_true", help="treat warnings as failures")
    p.add_argument("--ascii", action="store_true", help="ASCII-only signature symbols")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="spincrystal",
        parents=[common],
        description="Weight-lattice and spin-multipartition crystal tools for A_{2n}^(2)",
        argument_default=argparse.SUPPRESS,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduced", parents=[common], argument_default=argparse.SUPPRESS,
                       help="generate the block-reduced crystal")
    p.add_argument("--slice", dest="slice_spec", default=None,
                   help="restrict to a content slice, e.g. 2=0")

    p = sub.add_parser("crystal", parents=[common], argument_default=argparse.SUPPRESS,
                       help="generate the multipartition crystal")
    p.add_argument("--table", action="store_true", default=False,
                   help="print per-content diagram tables")

    sub.add_parser("verify", parents=[common], argument_default=argparse.SUPPRESS,
                   help="run the consistency harness")

    p = sub.add_parser("signature", parents=[common], argument_default=argparse.SUPPRESS,
                       help="signature of a multipartition given as a JSON literal")
    p.add_argument("--i", dest="residue", type=int, default=0, help="residue (default 0)")
    p.add_argument("multipartition", help='e.g. {"components": [{"corner": 0, "rows": [3,2,1]}]}')

    p = sub.add_parser("render", parents=[common], argument_default=argparse.SUPPRESS,
                       help="residue diagram of one corner partition")
    p.add_argument("--corner", type=int, required=True)
    p.add_argument("--rows", default="", help="comma-separated row lengths, empty for the empty partition")

    sub.add_parser("walkthrough", parents=[common], argument_default=argparse.SUPPRESS,
                   help="replay the first adding steps for n=1, weight 0,1")
    return parser


def _fill_defaults(ns: argparse.Namespace) -> argparse.Namespace:
    for key, value in _DEFAULTS.items():
        if not hasattr(ns, key):
            setattr(ns, key, value)
    return ns


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"{flag}: expected comma-separated integers, got {text!r}")


def _context(ns: argparse.Namespace):
    if ns.n is None:
        raise CliError("--n is required for this command")
    if ns.weight is None:
        raise CliError("--weight is required for this command")
    try:
        return make_context(ns.n, _parse_int_list(ns.weight, "--weight"))
    except WeightError as exc:
        raise CliError(f"--weight/--n: {exc}")


def _max_degree(ns: argparse.Namespace) -> int:
    if ns.max_degree is None:
        raise CliError("--max-degree is required for this command")
    if ns.max_degree < 0:
        raise CliError("--max-degree: must be nonnegative")
    return ns.max_degree


def _emit(ns: argparse.Namespace, text: str) -> None:
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sig_text(sig: Signature, ascii_only: bool) -> str:
    return sig.text(ascii_only)


def cmd_reduced(ns: argparse.Namespace) -> int:
    ctx = _context(ns)
    rc = reduced_mod.generate(ctx, _max_degree(ns))
    only = None
    if ns.slice_spec is not None:
        try:
            coord_s, value_s = ns.slice_spec.split("=")
            coord, value = int(coord_s), int(value_s)
        except ValueError:
            raise CliError(f"--slice: expected COORD=VALUE, got {ns.slice_spec!r}")
        if not 0 <= coord <= ctx.n:
            raise CliError(f"--slice: coordinate {coord} exceeds n={ctx.n}")
        if value < 0:
            raise CliError("--slice: value must be nonnegative")
        only = reduced_mod.slice_vertices(rc, coord, value)
    if ns.format == "text":
        _emit(ns, reduced_mod.to_text(rc, only))
    elif ns.format == "tsv":
        _emit(ns, reduced_mod.to_tsv(rc, only))
    elif ns.format == "dot":
        _emit(ns, reduced_mod.to_dot(rc, only))
    else:
        _emit(ns, reduced_mod.to_json(rc, only))
    return 0


def cmd_crystal(ns: argparse.Namespace) -> int:
    ctx = _context(ns)
    graph = crystal_mod.generate_crystal(ctx, _max_degree(ns), ns.variant)
    if ns.format == "dot":
        _emit(ns, crystal_mod.crystal_to_dot(graph))
    elif ns.format == "json":
        _emit(ns, crystal_mod.crystal_to_json(graph))
    elif ns.format == "tsv":
        raise CliError("--format tsv is not available for the crystal command")
    elif ns.table:
        _emit(ns, crystal_mod.crystal_to_table(graph))
    else:
        _emit(ns, crystal_mod.crystal_to_text(graph))
    return 0


def _confluence_sample(seed: int, samples: int = 200) -> int:
    """Random signatures x random orders; returns the number of disagreements."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        symbols = []
        for pos in range(rng.randint(0, 30)):
            roll = rng.random()
            if roll < 0.4:
                symbols.append(SignatureSymbol(PLUS, 0, node=(pos + 1, 1)))
            elif roll < 0.8:
                symbols.append(SignatureSymbol(MINUS, 0, node=(pos + 1, 1)))
            else:
                symbols.append(
                    SignatureSymbol(PLUSMINUS, 0, removable=(pos + 1, 1), addable=(pos + 2, 1))
                )
        sig = Signature(0, tuple(symbols))
        want = reduce(sig)
        for _ in range(3):
            if reduce_with_order(sig, rng.randrange(1 << 30)) != want:
                bad += 1
                break
    return bad


def cmd_verify(ns: argparse.Namespace) -> int:
    ctx = _context(ns)
    deg = _max_degree(ns)
    rc = reduced_mod.generate(ctx, deg)
    graph = crystal_mod.generate_crystal(ctx, deg, ns.variant)
    report = crystal_mod.verify(graph, rc, ns.variant)
    disagreements = _confluence_sample(ns.seed)
    report.checks.append(
        crystal_mod.CheckResult(
            "confluence_sample",
            "pass" if disagreements == 0 else "fail",
            f"200 random signatures x 3 orders (seed {ns.seed}), {disagreements} disagreement(s)",
        )
    )
    if ns.format == "json":
        _emit(ns, json.dumps(report.to_json_dict(), indent=2) + "\n")
    else:
        _emit(ns, report.format_text())
    if not report.hard_ok():
        return 1
    if ns.strict and report.has_warnings():
        return 1
    return 0


def _parse_multipartition(ctx, literal: str) -> SpinMultipartition:
    try:
        data = json.loads(literal)
    except json.JSONDecodeError as exc:
        raise CliError(f"multipartition: invalid JSON at position {exc.pos}: {exc.msg}")
    if not isinstance(data, dict) or "components" not in data:
        raise CliError('multipartition: expected an object with a "components" list')
    comps = []
    for num, comp in enumerate(data["components"]):
        if not isinstance(comp, dict) or "corner" not in comp or "rows" not in comp:
            raise CliError(f'multipartition: component {num} needs "corner" and "rows"')
        try:
            comps.append(CornerPartition(comp["corner"], tuple(comp["rows"])))
        except ValueError as exc:
            raise CliError(f"multipartition: component {num}: {exc}")
    try:
        return SpinMultipartition(ctx, tuple(comps))
    except ValueError as exc:
        raise CliError(f"multipartition: {exc}")


def cmd_signature(ns: argparse.Namespace) -> int:
    ctx = _context(ns)
    mp = _parse_multipartition(ctx, ns.multipartition)
    if not 0 <= ns.residue <= ctx.n:
        raise CliError(f"--i: residue {ns.residue} exceeds n={ctx.n}")
    raw = build_signature(mp, ns.residue, ns.variant)
    red = reduce(raw)
    lines = [f"raw: {_sig_text(raw, ns.ascii)}"]
    lines.extend(f"  {sym.describe()}" for sym in raw.symbols)
    lines.append(f"reduced: {_sig_text(red, ns.ascii)}")
    lines.extend(f"  {sym.describe()}" for sym in red.symbols)
    n_plus = sum(1 for s in red.symbols if s.mark in (PLUS, PLUSMINUS))
    n_minus = sum(1 for s in red.symbols if s.mark in (MINUS, PLUSMINUS))
    lines.append(f"phi={n_plus} epsilon={n_minus}")
    _emit(ns, "\n".join(lines) + "\n")
    return 0


def cmd_render(ns: argparse.Namespace) -> int:
    if ns.n is None:
        raise CliError("--n is required for this command")
    h = 2 * ns.n + 1
    rows = _parse_int_list(ns.rows, "--rows")
    try:
        cp = CornerPartition(ns.corner, rows)
    except ValueError as exc:
        raise CliError(f"--rows/--corner: {exc}")
    if not 0 <= ns.corner <= ns.n:
        raise CliError(f"--corner: {ns.corner} exceeds n={ns.n}")
    text = render(cp, h)
    _emit(ns, text + "\n" if text else "(empty)\n")
    return 0


def cmd_walkthrough(ns: argparse.Namespace) -> int:
    if ns.n not in (None, 1) or ns.weight not in (None, "0,1"):
        raise CliError("--n/--weight: the walkthrough is fixed to n=1, weight 0,1")
    ctx = make_context(1, (0, 1))
    mp = empty_multipartition(ctx)
    lines = []

    def describe_state(b: SpinMultipartition) -> str:
        c = multipartition_content(b).c
        return (
            f"{crystal_mod.element_label(b)} at {format_content(c)} "
            f"{vertex_label(_hub_raw(ctx, c), _defect_raw(ctx, c))}"
        )

    lines.append(f"start: {describe_state(mp)}")
    step = 0
    for residue in [1, 0, 0, 0, 0]:
        sig = reduce(build_signature(mp, residue, ns.variant))
        raw = build_signature(mp, residue, ns.variant)
        lines.append(f"step {step}: {residue}-signature: {_sig_text(raw, ns.ascii)}")
        nxt = apply_f(mp, residue, ns.variant)
        if nxt is None:
            lines.append(f"step {step}: no addable {residue}-node remains")
            break
        added = _added_node(mp, nxt)
        lines.append(f"step {step}: f_{residue} adds node {added} -> {describe_state(nxt)}")
        mp = nxt
        step += 1
    _emit(ns, "\n".join(lines) + "\n")
    return 0


def _added_node(before: SpinMultipartition, after: SpinMultipartition):
    for k, (old, new) in enumerate(zip(before.components, after.components)):
        if old.rows == new.rows:
            continue
        old_rows = old.rows + (0,)
        for r, length in enumerate(new.rows, start=1):
            if old_rows[r - 1] != length:
                return (r, length)
    raise RuntimeError("no node was added")


_COMMANDS = {
    "reduced": cmd_reduced,
    "crystal": cmd_crystal,
    "verify": cmd_verify,
    "signature": cmd_signature,
    "render": cmd_render,
    "walkthrough": cmd_walkthrough,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = _fill_defaults(parser.parse_args(argv))
    try:
        return _COMMANDS[ns.command](ns)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConjectureViolation as exc:
        print(f"conjecture violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
