"""Partitions with spin residues and their collective addable/removable node sets.

Residues follow the folded pattern 0,1,...,n,...,1,0,0 of period h=2n+1.  A
0-corner component reads residues down columns; an i-corner component reads
them along diagonals.  The node sets are collective: the largest set of
same-residue nodes whose joint addition (or removal) leaves a diagram that
still satisfies the component's row predicates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .cartan import CartanContext, WeightContent

__all__ = [
    "Node",
    "NodeRun",
    "CornerPartition",
    "SpinMultipartition",
    "TieWarning",
    "ConjectureViolation",
    "hat",
    "residue",
    "is_h_strict",
    "is_h_restricted",
    "check_corner_partition",
    "addable_set",
    "removable_set",
    "render",
    "corner_layout",
    "empty_multipartition",
    "multipartition_content",
]

Node = tuple[int, int]  # (row, column), both 1-based

_SOLUTION_CAP = 4096


class ConjectureViolation(Exception):
    """A combinatorial state the conjectured algorithm promises never happens."""


def hat(m: int, h: int) -> int:
    """Spin residue of column position m: min of (m-1) and (-m) mod h."""
    if h < 3 or h % 2 == 0:
        raise ValueError(f"h must be an odd integer >= 3, got {h}")
    return min((m - 1) % h, (-m) % h)


def residue(corner: int, node: Node, h: int) -> int:
    """Residue of a node in a corner-tagged component."""
    s, t = node
    if corner == 0:
        return hat(t, h)
    return hat(corner + t - s + 1, h)


def is_h_strict(rows: tuple[int, ...], h: int) -> bool:
    """No repeated row length unless that length is divisible by h."""
    return all(length % h == 0 for length, k in Counter(rows).items() if k > 1)


def is_h_restricted(rows: tuple[int, ...], h: int, variant: str = "paper") -> bool:
    """No block of h identical columns.

    The default reading bounds every consecutive row gap (including the gap
    to zero below the last row) strictly by h.  The "standard" variant
    additionally allows a gap of exactly h below a row of length divisible
    by h.
    """
    if variant not in ("paper", "standard"):
        raise ValueError(f"unknown restrictedness variant: {variant!r}")
    padded = rows + (0,)
    for upper, lower in zip(padded, padded[1:]):
        gap = upper - lower
        if gap < h:
            continue
        if variant == "standard" and gap == h and upper % h == 0:
            continue
        return False
    return True


@dataclass(frozen=True)
class CornerPartition:
    """A partition tagged with the residue sitting in its (1,1) node."""

    corner: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.corner < 0:
            raise ValueError(f"corner residue must be nonnegative, got {self.corner}")
        if any(not isinstance(r, int) or r <= 0 for r in self.rows):
            raise ValueError(f"rows must be positive integers, got {self.rows}")
        if any(a < b for a, b in zip(self.rows, self.rows[1:])):
            raise ValueError(f"rows must be weakly decreasing, got {self.rows}")


def check_corner_partition(cp: CornerPartition, h: int, variant: str = "paper") -> bool:
    """Row predicates for a component: restricted always, strict too for corner 0."""
    if not is_h_restricted(cp.rows, h, variant):
        return False
    if cp.corner == 0 and not is_h_strict(cp.rows, h):
        return False
    return True


@dataclass(frozen=True)
class NodeRun:
    """A horizontal or vertical segment of equal-residue nodes, actionable-first."""

    kind: str  # "addable" | "removable"
    nodes: tuple[Node, ...]

    @property
    def bottom_row(self) -> int:
        return max(s for s, _ in self.nodes)

    @property
    def min_col(self) -> int:
        return min(t for _, t in self.nodes)


@dataclass(frozen=True)
class TieWarning:
    """Several node sets of maximal size existed; the canonical one was chosen."""

    corner: int
    rows: tuple[int, ...]
    residue: int
    kind: str
    count: int

    def describe(self) -> str:
        return (
            f"{self.count} maximal {self.kind} {self.residue}-sets for "
            f"{self.corner}-corner {list(self.rows)}"
        )


@lru_cache(maxsize=None)
def _search_best(
    corner: int, rows: tuple[int, ...], i: int, h: int, variant: str, kind: str
) -> tuple[tuple[Node, ...], int]:
    """Largest valid same-residue node set, plus how many sets attain the size.

    Row r can gain or lose at most two cells (three consecutive residues are
    never equal), so the search walks rows top to bottom with the previous
    resulting row length as state.  Validity between neighbouring rows covers
    the diagram shape, strictness and restrictedness, all of which are local
    to adjacent rows of a weakly decreasing sequence.
    """
    nrows = len(rows)
    last = nrows + 2 if kind == "addable" else nrows
    strict_req = corner == 0

    def base(r: int) -> int:
        return rows[r - 1] if r <= nrows else 0

    def options(r: int) -> tuple[int, ...]:
        b = base(r)
        opts = [0]
        if kind == "addable":
            if residue(corner, (r, b + 1), h) == i:
                opts.append(1)
                if residue(corner, (r, b + 2), h) == i:
                    opts.append(2)
        else:
            if b >= 1 and residue(corner, (r, b), h) == i:
                opts.append(1)
                if b >= 2 and residue(corner, (r, b - 1), h) == i:
                    opts.append(2)
        return tuple(opts)

    def pair_ok(upper: int | None, lower: int) -> bool:
        if upper is None:
            return True
        if lower > upper:
            return False
        if lower == upper:
            return lower == 0 or not strict_req or lower % h == 0
        gap = upper - lower
        if gap < h:
            return True
        if variant == "standard":
            return gap == h and upper % h == 0
        return False

    memo: dict[tuple[int, int | None], int | None] = {}

    def best(r: int, prev: int | None) -> int | None:
        if r > last:
            return 0 if pair_ok(prev, 0) else None
        key = (r, prev)
        if key in memo:
            return memo[key]
        out: int | None = None
        for x in options(r):
            mu = base(r) + x if kind == "addable" else base(r) - x
            if mu < 0 or not pair_ok(prev, mu):
                continue
            sub = best(r + 1, mu)
            if sub is None:
                continue
            if out is None or x + sub > out:
                out = x + sub
        memo[key] = out
        return out

    total = best(1, None)
    if total is None:
        raise ValueError(
            f"component violates its own predicates: corner {corner}, rows {rows}"
        )

    solutions: list[tuple[Node, ...]] = []

    def nodes_of(picks: list[tuple[int, int]]) -> tuple[Node, ...]:
        out = []
        for r, x in picks:
            b = base(r)
            if kind == "addable":
                out.extend((r, b + k) for k in range(1, x + 1))
            else:
                out.extend((r, b - k) for k in range(x))
        return tuple(sorted(out))

    def walk(r: int, prev: int | None, picks: list[tuple[int, int]], remaining: int) -> None:
        if len(solutions) >= _SOLUTION_CAP:
            return
        if r > last:
            if remaining == 0 and pair_ok(prev, 0):
                solutions.append(nodes_of([(rr, x) for rr, x in picks if x]))
            return
        for x in options(r):
            mu = base(r) + x if kind == "addable" else base(r) - x
            if mu < 0 or x > remaining or not pair_ok(prev, mu):
                continue
            sub = best(r + 1, mu)
            if sub is None or x + sub != remaining:
                continue
            picks.append((r, x))
            walk(r + 1, mu, picks, remaining - x)
            picks.pop()

    walk(1, None, [], total)
    distinct = sorted(set(solutions), key=_solution_key)
    return distinct[0], len(distinct)


def _solution_key(nodes: tuple[Node, ...]) -> tuple[tuple[int, int], ...]:
    # row descending, column ascending; lexicographic over the node list
    return tuple(sorted(((-s, t) for s, t in nodes)))


def _group_runs(nodes: tuple[Node, ...], kind: str) -> tuple[NodeRun, ...]:
    ns = set(nodes)
    seen: set[Node] = set()
    runs = []
    for node in sorted(ns):
        if node in seen:
            continue
        s, t = node
        vertical = (s - 1, t) in ns or (s + 1, t) in ns
        horizontal = (s, t - 1) in ns or (s, t + 1) in ns
        if vertical and horizontal:
            raise RuntimeError(f"unexpected L-shaped node run at {node} in {nodes}")
        chain = [node]
        if vertical:
            while (chain[0][0] - 1, t) in ns:
                chain.insert(0, (chain[0][0] - 1, t))
            while (chain[-1][0] + 1, t) in ns:
                chain.append((chain[-1][0] + 1, t))
        elif horizontal:
            while (s, chain[0][1] - 1) in ns:
                chain.insert(0, (s, chain[0][1] - 1))
            while (s, chain[-1][1] + 1) in ns:
                chain.append((s, chain[-1][1] + 1))
        if len(chain) > 2:
            raise RuntimeError(f"node run longer than two: {chain}")
        seen.update(chain)
        if kind == "removable":
            chain.reverse()  # bottommost/rightmost acts first
        runs.append(NodeRun(kind, tuple(chain)))
    return tuple(runs)


@lru_cache(maxsize=None)
def _node_runs(
    corner: int, rows: tuple[int, ...], i: int, h: int, variant: str, kind: str
) -> tuple[tuple[NodeRun, ...], int]:
    nodes, count = _search_best(corner, rows, i, h, variant, kind)
    return _group_runs(nodes, kind), count


def addable_set(
    cp: CornerPartition,
    i: int,
    h: int,
    variant: str = "paper",
    ties: list[TieWarning] | None = None,
) -> list[NodeRun]:
    """Runs of the largest set of residue-i nodes that can be added together."""
    runs, count = _node_runs(cp.corner, cp.rows, i, h, variant, "addable")
    if count > 1 and ties is not None:
        ties.append(TieWarning(cp.corner, cp.rows, i, "addable", count))
    return list(runs)


def removable_set(
    cp: CornerPartition,
    i: int,
    h: int,
    variant: str = "paper",
    ties: list[TieWarning] | None = None,
) -> list[NodeRun]:
    """Runs of the largest set of residue-i nodes that can be removed together."""
    runs, count = _node_runs(cp.corner, cp.rows, i, h, variant, "removable")
    if count > 1 and ties is not None:
        ties.append(TieWarning(cp.corner, cp.rows, i, "removable", count))
    return list(runs)


def render(cp: CornerPartition, h: int) -> str:
    """One text line per row, the digits being node residues."""
    sep = "" if h <= 19 else ","
    lines = []
    for s, length in enumerate(cp.rows, start=1):
        lines.append(sep.join(str(residue(cp.corner, (s, t), h)) for t in range(1, length + 1)))
    return "\n".join(lines)


def corner_layout(ctx: CartanContext) -> tuple[int, ...]:
    """Corner tags of the components, bottom to top: a_0 zeros, then a_1 ones, ..."""
    tags = []
    for corner, count in enumerate(ctx.weight):
        tags.extend([corner] * count)
    return tuple(tags)


@dataclass(frozen=True)
class SpinMultipartition:
    """Ordered tuple of corner partitions; slot corners are fixed by the top weight."""

    context: CartanContext
    components: tuple[CornerPartition, ...]

    def __post_init__(self) -> None:
        expected = corner_layout(self.context)
        got = tuple(cp.corner for cp in self.components)
        if got != expected:
            raise ValueError(f"component corners {got} do not match the layout {expected}")

    @property
    def rows_tuple(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cp.rows for cp in self.components)


def empty_multipartition(ctx: CartanContext) -> SpinMultipartition:
    return SpinMultipartition(ctx, tuple(CornerPartition(c, ()) for c in corner_layout(ctx)))


@lru_cache(maxsize=None)
def _residue_counts(corner: int, rows: tuple[int, ...], h: int) -> tuple[int, ...]:
    n = (h - 1) // 2
    counts = [0] * (n + 1)
    for s, length in enumerate(rows, start=1):
        for t in range(1, length + 1):
            counts[residue(corner, (s, t), h)] += 1
    return tuple(counts)


def multipartition_content(mp: SpinMultipartition) -> WeightContent:
    """Total node count per residue across all components."""
    ctx = mp.context
    total = [0] * ctx.size
    for cp in mp.components:
        for i, k in enumerate(_residue_counts(cp.corner, cp.rows, ctx.h)):
            total[i] += k
    return WeightContent(ctx, tuple(total))
