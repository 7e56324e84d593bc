"""Generation of the multipartition crystal and the consistency harness.

The crystal is the closure of the empty multipartition under the adding
operators, cut off at a degree bound.  The harness replays every check used
as evidence for the labeling: content membership in the block-reduced
crystal, the hub identity phi - epsilon = theta_i, orbit-wise constancy of
the per-content element counts, the path-count bound, string transit, and
the operator inversion contract.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .cartan import (
    CartanContext,
    _defect_raw,
    _hub_raw,
    format_content,
    format_defect,
    make_context,
    vertex_label,
)
from .partitions import (
    ConjectureViolation,
    CornerPartition,
    SpinMultipartition,
    TieWarning,
    empty_multipartition,
    multipartition_content,
    render,
)
from .reduced import RESIDUE_COLORS, ReducedCrystal, _orbit, path_counts
from .signature import apply_e, apply_f, build_signature, epsilon, phi, reduce

__all__ = [
    "CrystalGraph",
    "CheckResult",
    "VerificationReport",
    "generate_crystal",
    "verify",
    "element_label",
    "crystal_to_text",
    "crystal_to_table",
    "crystal_to_dot",
    "crystal_to_json_dict",
    "crystal_to_json",
    "crystal_from_json_dict",
]

Content = tuple[int, ...]

_COUNTEREXAMPLE_CAP = 10


def _element_key(mp: SpinMultipartition) -> tuple:
    return (multipartition_content(mp).c, mp.rows_tuple)


@dataclass
class CrystalGraph:
    context: CartanContext
    max_degree: int
    elements: tuple[SpinMultipartition, ...]  # canonical order: content lex, then rows lex
    edges: tuple[tuple[SpinMultipartition, int, SpinMultipartition], ...]
    ties: tuple[TieWarning, ...] = ()

    def by_content(self) -> dict[Content, list[SpinMultipartition]]:
        out: dict[Content, list[SpinMultipartition]] = {}
        for b in self.elements:
            out.setdefault(multipartition_content(b).c, []).append(b)
        return out


def generate_crystal(
    ctx: CartanContext, max_degree: int, variant: str = "paper"
) -> CrystalGraph:
    """Close the empty multipartition under all adding operators up to a degree."""
    if max_degree < 0:
        raise ValueError(f"max_degree must be nonnegative, got {max_degree}")
    ties: list[TieWarning] = []
    start = empty_multipartition(ctx)
    elements = {start}
    edges: list[tuple[SpinMultipartition, int, SpinMultipartition]] = []
    layer = [start]
    for _ in range(max_degree):
        children: list[SpinMultipartition] = []
        for b in sorted(layer, key=_element_key):
            for i in range(ctx.size):
                nxt = apply_f(b, i, variant, ties)
                if nxt is None:
                    continue
                edges.append((b, i, nxt))
                if nxt not in elements:
                    elements.add(nxt)
                    children.append(nxt)
        layer = children
    return CrystalGraph(
        ctx,
        max_degree,
        tuple(sorted(elements, key=_element_key)),
        tuple(edges),
        tuple(ties),
    )


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "warn" | "truncated"
    summary: str
    counterexamples: tuple[str, ...] = ()


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)
    tie_warnings: list[str] = field(default_factory=list)

    def hard_ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def has_warnings(self) -> bool:
        return bool(self.tie_warnings) or any(
            c.status in ("warn", "truncated") for c in self.checks
        )

    def to_json_dict(self) -> dict:
        return {
            "ok": self.hard_ok(),
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "summary": c.summary,
                    "counterexamples": list(c.counterexamples),
                }
                for c in self.checks
            ],
            "tie_warnings": list(self.tie_warnings),
        }

    def format_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"[{c.status.upper():9s}] {c.name}: {c.summary}")
            for ce in c.counterexamples:
                lines.append(f"    counterexample: {ce}")
        for w in self.tie_warnings:
            lines.append(f"[WARN     ] tie: {w}")
        lines.append("overall: " + ("OK" if self.hard_ok() else "FAILED"))
        return "\n".join(lines) + "\n"


def element_label(mp: SpinMultipartition) -> str:
    parts = []
    for cp in reversed(mp.components):  # top component first, as in the tables
        rows = ",".join(map(str, cp.rows)) if cp.rows else ""
        parts.append(f"{cp.corner}:[{rows}]")
    return "(" + " | ".join(parts) + ")"


def _add(report: VerificationReport, name: str, bad: list[str], total: str,
         truncated: bool = False, warn_only: bool = False) -> None:
    if bad:
        status = "warn" if warn_only else "fail"
        report.checks.append(
            CheckResult(name, status, f"{len(bad)} violation(s); {total}",
                        tuple(bad[:_COUNTEREXAMPLE_CAP]))
        )
    else:
        status = "truncated" if truncated else "pass"
        report.checks.append(CheckResult(name, status, total))


def verify(
    crystal: CrystalGraph, reduced: ReducedCrystal, variant: str = "paper"
) -> VerificationReport:
    """Run every consistency check of the labeling against the reduced crystal."""
    ctx = crystal.context
    if reduced.context != ctx:
        raise ValueError("crystal and reduced crystal were built from different contexts")
    if crystal.max_degree > reduced.max_degree:
        raise ValueError("the reduced crystal must cover at least the crystal's degree range")
    report = VerificationReport()
    by_content = crystal.by_content()
    counts = {c: len(els) for c, els in by_content.items()}
    n_el = len(crystal.elements)

    # (a) membership: every element's content is a vertex
    bad = [
        f"content {format_content(c)} of {element_label(els[0])} is not a vertex"
        for c, els in sorted(by_content.items())
        if c not in reduced.vertices
    ]
    _add(report, "membership", bad, f"{n_el} elements over {len(by_content)} contents")

    # (b) hub identity: phi - epsilon equals the hub entry, every element, every residue
    bad = []
    for b in crystal.elements:
        c = multipartition_content(b).c
        theta = _hub_raw(ctx, c)
        for i in range(ctx.size):
            f_count, e_count = phi(b, i, variant), epsilon(b, i, variant)
            if f_count - e_count != theta[i]:
                bad.append(
                    f"{element_label(b)} at {format_content(c)}: residue {i} has "
                    f"phi-epsilon = {f_count - e_count}, hub entry {theta[i]}"
                )
    _add(report, "hub_identity", bad, f"{n_el} elements x {ctx.size} residues")

    # (c) orbit-wise constancy of element counts
    bad = []
    truncated = False
    seen: set[Content] = set()
    for c in sorted(counts):
        if c in seen:
            continue
        orbit, cut = _orbit(reduced, c)
        truncated = truncated or cut
        in_range = {o for o in orbit if sum(o) <= crystal.max_degree}
        seen |= in_range
        values = {o: counts.get(o, 0) for o in in_range}
        if len(set(values.values())) > 1:
            detail = ", ".join(
                f"{format_content(o)}:{k}" for o, k in sorted(values.items())
            )
            bad.append(f"orbit of {format_content(c)} has uneven counts: {detail}")
    _add(report, "orbit_counts", bad, f"{len(seen)} contents in checked orbits",
         truncated=truncated)

    # (d) element count bounded by the path count, equality forced at one path
    pc = path_counts(reduced)
    bad = []
    for c, k in sorted(counts.items()):
        if c not in pc:
            continue  # reported under membership
        if k > pc[c]:
            bad.append(f"{format_content(c)}: {k} elements exceed {pc[c]} paths")
        elif pc[c] == 1 and k != 1:
            bad.append(f"{format_content(c)}: single path but {k} elements")
    _add(report, "path_bound", bad, f"{len(counts)} contents checked")

    # (e) string transit: operators walk exactly to the mirror vertex of each string
    bad = []
    for b in crystal.elements:
        c = multipartition_content(b).c
        for i in range(ctx.size):
            try:
                f_count, e_count = phi(b, i, variant), epsilon(b, i, variant)
                entry = list(c)
                entry[i] -= e_count
                exit_ = list(c)
                exit_[i] += f_count
                if min(entry) < 0:
                    bad.append(
                        f"{element_label(b)}: epsilon {e_count} at residue {i} "
                        f"overshoots the cone from {format_content(c)}"
                    )
                    continue
                entry_t, exit_t = tuple(entry), tuple(exit_)
                th_in = _hub_raw(ctx, entry_t)[i]
                th_out = _hub_raw(ctx, exit_t)[i]
                d_in, d_out = _defect_raw(ctx, entry_t), _defect_raw(ctx, exit_t)
                if th_in != -th_out or d_in != d_out:
                    bad.append(
                        f"{element_label(b)} residue {i}: entry {format_content(entry_t)} "
                        f"({th_in}, defect {d_in}) is not the mirror of exit "
                        f"{format_content(exit_t)} ({th_out}, defect {d_out})"
                    )
                    continue
                cur = b
                for _ in range(f_count):
                    cur = apply_f(cur, i, variant)
                    if cur is None:
                        break
                if cur is None or apply_f(cur, i, variant) is not None:
                    bad.append(
                        f"{element_label(b)} residue {i}: expected exactly "
                        f"{f_count} adding steps"
                    )
                    continue
                cur = b
                for _ in range(e_count):
                    cur = apply_e(cur, i, variant)
                    if cur is None:
                        break
                if cur is None or apply_e(cur, i, variant) is not None:
                    bad.append(
                        f"{element_label(b)} residue {i}: expected exactly "
                        f"{e_count} removing steps"
                    )
            except ConjectureViolation as exc:
                bad.append(f"{element_label(b)} residue {i}: {exc}")
    _add(report, "string_transit", bad, f"{n_el} elements x {ctx.size} residues walked")

    # (f) operator inversion: removing after adding returns the element
    bad = []
    for b in crystal.elements:
        for i in range(ctx.size):
            try:
                nxt = apply_f(b, i, variant)
                if nxt is not None and apply_e(nxt, i, variant) != b:
                    bad.append(f"e_{i}(f_{i}(x)) != x for x = {element_label(b)}")
            except ConjectureViolation as exc:
                bad.append(f"{element_label(b)} residue {i}: {exc}")
    _add(report, "inversion", bad, f"{n_el} elements x {ctx.size} residues")

    # (g) surjectivity over the vertex set: evidence, not a hard failure
    missing = [
        f"vertex {format_content(c)} {vertex_label(*reduced.vertices[c])} has no element"
        for c in sorted(reduced.vertices, key=lambda c: (sum(c), c))
        if sum(c) <= crystal.max_degree and c not in counts
    ]
    _add(report, "surjectivity", missing,
         f"{sum(1 for c in reduced.vertices if sum(c) <= crystal.max_degree)} vertices in range",
         warn_only=True)

    report.tie_warnings.extend(t.describe() for t in crystal.ties)
    return report


def _sorted_contents(crystal: CrystalGraph) -> list[Content]:
    return sorted(crystal.by_content(), key=lambda c: (sum(c), c))


def crystal_to_text(crystal: CrystalGraph) -> str:
    ctx = crystal.context
    by_content = crystal.by_content()
    lines = []
    for c in _sorted_contents(crystal):
        theta, d = _hub_raw(ctx, c), _defect_raw(ctx, c)
        for b in by_content[c]:
            lines.append(f"{format_content(c)} {vertex_label(theta, d)}: {element_label(b)}")
    return "\n".join(lines) + "\n"


def crystal_to_table(crystal: CrystalGraph) -> str:
    """Per-content sections listing each element's rendered residue diagrams."""
    ctx = crystal.context
    by_content = crystal.by_content()
    blocks = []
    for c in _sorted_contents(crystal):
        theta, d = _hub_raw(ctx, c), _defect_raw(ctx, c)
        els = by_content[c]
        lines = [
            f"content {format_content(c)}  hub {vertex_label(theta, d)}  elements {len(els)}"
        ]
        for num, b in enumerate(els, start=1):
            lines.append(f"  element {num}: {element_label(b)}")
            for cp in reversed(b.components):
                rows = ",".join(map(str, cp.rows)) if cp.rows else ""
                lines.append(f"    {cp.corner}-corner [{rows}]")
                if cp.rows:
                    for row in render(cp, ctx.h).splitlines():
                        lines.append("      " + row)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def crystal_to_dot(crystal: CrystalGraph) -> str:
    ctx = crystal.context
    by_content = crystal.by_content()
    ids = {b: f"e{k}" for k, b in enumerate(crystal.elements)}
    out = ["digraph crystal {", "  rankdir=TB;", '  node [shape=box, fontname="monospace"];']
    for num, c in enumerate(_sorted_contents(crystal)):
        theta, d = _hub_raw(ctx, c), _defect_raw(ctx, c)
        out.append(f"  subgraph cluster_{num} {{")
        out.append(f'    label="{vertex_label(theta, d)}";')
        for b in by_content[c]:
            out.append(f'    {ids[b]} [label="{element_label(b)}"];')
        out.append("  }")
    for src, i, dst in crystal.edges:
        color = RESIDUE_COLORS[i % len(RESIDUE_COLORS)]
        out.append(f'  {ids[src]} -> {ids[dst]} [label="{i}", color="{color}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def crystal_to_json_dict(crystal: CrystalGraph, report: VerificationReport | None = None) -> dict:
    ids = {b: k for k, b in enumerate(crystal.elements)}
    data = {
        "n": crystal.context.n,
        "weight": list(crystal.context.weight),
        "max_degree": crystal.max_degree,
        "elements": [
            {
                "id": ids[b],
                "content": list(multipartition_content(b).c),
                "components": [
                    {"corner": cp.corner, "rows": list(cp.rows)} for cp in b.components
                ],
            }
            for b in crystal.elements
        ],
        "edges": sorted(
            ({"from": ids[src], "to": ids[dst], "residue": i} for src, i, dst in crystal.edges),
            key=lambda e: (e["from"], e["residue"], e["to"]),
        ),
    }
    if report is not None:
        data["report"] = report.to_json_dict()
    return data


def crystal_to_json(crystal: CrystalGraph, report: VerificationReport | None = None) -> str:
    return json.dumps(crystal_to_json_dict(crystal, report), indent=2) + "\n"


def crystal_from_json_dict(data: dict) -> CrystalGraph:
    ctx = make_context(data["n"], tuple(data["weight"]))
    elements = tuple(
        SpinMultipartition(
            ctx,
            tuple(CornerPartition(c["corner"], tuple(c["rows"])) for c in e["components"]),
        )
        for e in sorted(data["elements"], key=lambda e: e["id"])
    )
    edges = tuple(
        (elements[e["from"]], e["residue"], elements[e["to"]]) for e in data["edges"]
    )
    return CrystalGraph(ctx, data["max_degree"], elements, edges)
