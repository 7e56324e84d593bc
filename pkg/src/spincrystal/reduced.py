"""Degree-bounded generation of the block-reduced crystal and its queries.

Vertices are weights below the top weight, stored by content; edges step one
simple root down.  Generation runs breadth-first by degree: a vertex extends
its i-string downward exactly when the number of steps already taken from
the string top is smaller than the top's i-th hub entry, so a single pass
per degree layer suffices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import (
    CartanContext,
    WeightContent,
    _defect_raw,
    _hub_raw,
    format_content,
    format_defect,
    format_hub,
    make_context,
    null_root_content,
    vertex_label,
)

__all__ = [
    "ReducedCrystal",
    "TruncatedStringError",
    "generate",
    "string_through",
    "in_max_lambda",
    "weyl_orbit",
    "path_count",
    "path_counts",
    "slice_vertices",
    "sorted_vertices",
    "to_text",
    "to_tsv",
    "to_dot",
    "to_json_dict",
    "to_json",
    "from_json_dict",
]

Content = tuple[int, ...]

RESIDUE_COLORS = (
    "#e41a1c",
    "#377eb8",
    "#4daf4a",
    "#984ea3",
    "#ff7f00",
    "#a65628",
    "#f781bf",
)


class TruncatedStringError(Exception):
    """A query needed vertices beyond the generated degree range."""


@dataclass
class ReducedCrystal:
    context: CartanContext
    max_degree: int
    vertices: dict[Content, tuple[tuple[int, ...], Fraction]]
    edges: list[tuple[Content, int, Content]] = field(default_factory=list)

    def hub_of(self, c: Content) -> tuple[int, ...]:
        return self.vertices[c][0]

    def defect_of(self, c: Content) -> Fraction:
        return self.vertices[c][1]


def _bump(c: Content, i: int, k: int = 1) -> Content:
    out = list(c)
    out[i] += k
    return tuple(out)


def generate(ctx: CartanContext, max_degree: int) -> ReducedCrystal:
    """All weights of degree <= max_degree, with hubs, defects and string edges."""
    if max_degree < 0:
        raise ValueError(f"max_degree must be nonnegative, got {max_degree}")
    size = ctx.size
    zero = (0,) * size
    vertices: dict[Content, tuple[tuple[int, ...], Fraction]] = {
        zero: (_hub_raw(ctx, zero), _defect_raw(ctx, zero))
    }
    layer = [zero]
    edges: list[tuple[Content, int, Content]] = []
    for _ in range(max_degree):
        children: set[Content] = set()
        for c in sorted(layer):
            for i in range(size):
                # q = steps already present above c inside its i-string
                q = 0
                up = _bump(c, i, -1)
                while up[i] >= 0 and up in vertices:
                    q += 1
                    up = _bump(up, i, -1)
                top = _bump(c, i, -q)
                w = vertices[top][0][i]
                if q < w:
                    children.add(_bump(c, i))
        layer = sorted(children)
        for child in layer:
            vertices[child] = (_hub_raw(ctx, child), _defect_raw(ctx, child))
        for child in layer:
            for i in range(size):
                parent = _bump(child, i, -1)
                if parent[i] >= 0 and parent in vertices:
                    edges.append((parent, i, child))
    return ReducedCrystal(ctx, max_degree, vertices, edges)


def sorted_vertices(rc: ReducedCrystal) -> list[Content]:
    return sorted(rc.vertices, key=lambda c: (sum(c), c))


def string_through(rc: ReducedCrystal, c: Content, i: int) -> list[Content]:
    """The full i-string containing c, top to bottom."""
    if c not in rc.vertices:
        raise KeyError(f"{c} is not a generated vertex")
    top = c
    up = _bump(top, i, -1)
    while up[i] >= 0 and up in rc.vertices:
        top = up
        up = _bump(top, i, -1)
    w = rc.vertices[top][0][i]
    if sum(top) + w > rc.max_degree:
        raise TruncatedStringError(
            f"{i}-string through {format_content(c)} leaves the degree range "
            f"(top {format_content(top)}, length {w + 1}, max degree {rc.max_degree})"
        )
    return [_bump(top, i, k) for k in range(w + 1)]


def in_max_lambda(rc: ReducedCrystal, c: Content) -> bool:
    """Whether adding one null root leaves the weight system."""
    if c not in rc.vertices:
        raise KeyError(f"{c} is not a generated vertex")
    up = tuple(a - b for a, b in zip(c, null_root_content(rc.context)))
    if any(x < 0 for x in up):
        return True
    return up not in rc.vertices


def _orbit(rc: ReducedCrystal, c: Content) -> tuple[set[Content], bool]:
    seen = {c}
    frontier = [c]
    truncated = False
    while frontier:
        cur = frontier.pop()
        theta = rc.vertices[cur][0]
        for i in range(rc.context.size):
            if theta[i] == 0:
                continue
            nxt = _bump(cur, i, theta[i])
            if any(x < 0 for x in nxt):
                raise RuntimeError(f"reflection left the cone at {cur}, residue {i}")
            if sum(nxt) > rc.max_degree:
                truncated = True
                continue
            if nxt not in rc.vertices:
                raise RuntimeError(f"reflection image {nxt} missing from the vertex set")
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen, truncated


def weyl_orbit(rc: ReducedCrystal, c: Content) -> set[Content]:
    """Reflection orbit of c, restricted to the generated degree range."""
    if c not in rc.vertices:
        raise KeyError(f"{c} is not a generated vertex")
    orbit, _ = _orbit(rc, c)
    return orbit


def path_counts(rc: ReducedCrystal) -> dict[Content, int]:
    """Number of directed edge paths from the top vertex to every vertex."""
    counts: dict[Content, int] = {}
    for c in sorted_vertices(rc):
        if sum(c) == 0:
            counts[c] = 1
            continue
        total = 0
        for i in range(rc.context.size):
            parent = _bump(c, i, -1)
            if parent[i] >= 0 and parent in rc.vertices:
                total += counts[parent]
        counts[c] = total
    return counts


def path_count(rc: ReducedCrystal, c: Content) -> int:
    if c not in rc.vertices:
        raise KeyError(f"{c} is not a generated vertex")
    return path_counts(rc)[c]


def slice_vertices(rc: ReducedCrystal, coordinate: int, value: int) -> set[Content]:
    """All vertices whose content has the given entry at the given coordinate."""
    if not 0 <= coordinate <= rc.context.n:
        raise ValueError(f"slice coordinate {coordinate} out of range for n={rc.context.n}")
    return {c for c in rc.vertices if c[coordinate] == value}


def to_text(rc: ReducedCrystal, only: set[Content] | None = None) -> str:
    lines = []
    for c in sorted_vertices(rc):
        if only is not None and c not in only:
            continue
        theta, d = rc.vertices[c]
        lines.append(f"{format_content(c)}: {vertex_label(theta, d)}")
    return "\n".join(lines) + "\n"


def to_tsv(rc: ReducedCrystal, only: set[Content] | None = None) -> str:
    lines = ["content\thub\tdefect"]
    for c in sorted_vertices(rc):
        if only is not None and c not in only:
            continue
        theta, d = rc.vertices[c]
        lines.append(
            ",".join(map(str, c)) + "\t" + format_hub(theta) + "\t" + format_defect(d)
        )
    return "\n".join(lines) + "\n"


def _node_id(c: Content) -> str:
    return "v" + "_".join(map(str, c))


def to_dot(rc: ReducedCrystal, only: set[Content] | None = None) -> str:
    keep = set(rc.vertices) if only is None else only
    out = ["digraph reduced {", "  rankdir=TB;", '  node [shape=box, fontname="monospace"];']
    for c in sorted_vertices(rc):
        if c not in keep:
            continue
        theta, d = rc.vertices[c]
        out.append(f'  {_node_id(c)} [label="{vertex_label(theta, d)}"];')
    for src, i, dst in sorted(rc.edges):
        if src in keep and dst in keep:
            color = RESIDUE_COLORS[i % len(RESIDUE_COLORS)]
            out.append(f'  {_node_id(src)} -> {_node_id(dst)} [label="{i}", color="{color}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def to_json_dict(rc: ReducedCrystal, only: set[Content] | None = None) -> dict:
    keep = set(rc.vertices) if only is None else only
    return {
        "n": rc.context.n,
        "weight": list(rc.context.weight),
        "max_degree": rc.max_degree,
        "vertices": [
            {
                "content": list(c),
                "hub": list(rc.vertices[c][0]),
                "defect": format_defect(rc.vertices[c][1]),
            }
            for c in sorted_vertices(rc)
            if c in keep
        ],
        "edges": [
            {"from": list(src), "to": list(dst), "residue": i}
            for src, i, dst in sorted(rc.edges)
            if src in keep and dst in keep
        ],
    }


def to_json(rc: ReducedCrystal, only: set[Content] | None = None) -> str:
    return json.dumps(to_json_dict(rc, only), indent=2) + "\n"


def from_json_dict(data: dict) -> ReducedCrystal:
    ctx = make_context(data["n"], tuple(data["weight"]))
    vertices = {
        tuple(v["content"]): (tuple(v["hub"]), Fraction(v["defect"]))
        for v in data["vertices"]
    }
    edges = [(tuple(e["from"]), e["residue"], tuple(e["to"])) for e in data["edges"]]
    return ReducedCrystal(ctx, data["max_degree"], vertices, edges)


def weight_content(rc: ReducedCrystal, c: Content) -> WeightContent:
    return WeightContent(rc.context, c)
