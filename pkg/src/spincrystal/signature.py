"""Signatures of spin multipartitions and the crystal operators built on them.

The signature of a multipartition at residue i lists one symbol per addable
(+) or removable (-) node, walking components bottom to top and, inside a
component, node runs from the lowest row upward.  In a component whose
corner is positive, a removable 0-node sitting directly above an addable
0-node collapses into a single paired symbol.  Rewriting "+-", "+pm",
"pm-" (and "+pm-") to exhaustion is confluent, and the reduced word always
has the shape minuses, then pairs, then pluses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .partitions import (
    ConjectureViolation,
    CornerPartition,
    Node,
    NodeRun,
    SpinMultipartition,
    TieWarning,
    addable_set,
    check_corner_partition,
    removable_set,
)

__all__ = [
    "PLUS",
    "MINUS",
    "PLUSMINUS",
    "SignatureSymbol",
    "Signature",
    "build_signature",
    "reduce",
    "reduce_with_order",
    "phi",
    "epsilon",
    "apply_f",
    "apply_e",
]

PLUS = "+"
MINUS = "-"
PLUSMINUS = "±"


@dataclass(frozen=True)
class SignatureSymbol:
    mark: str
    component: int
    run: NodeRun | None = None  # owning run for +/- symbols straight from a node set
    node: Node | None = None  # bound node for +/- symbols
    removable: Node | None = None  # the upper node of a paired symbol
    addable: Node | None = None  # the lower node of a paired symbol

    def describe(self) -> str:
        if self.mark == PLUSMINUS:
            return f"± comp{self.component + 1} rem{self.removable} add{self.addable}"
        return f"{self.mark} comp{self.component + 1} node{self.node}"


@dataclass(frozen=True)
class Signature:
    residue: int
    symbols: tuple[SignatureSymbol, ...]

    def text(self, ascii_only: bool = False) -> str:
        if ascii_only:
            return "".join("pm" if s.mark == PLUSMINUS else s.mark for s in self.symbols)
        return "".join(s.mark for s in self.symbols)


def _component_items(
    cp: CornerPartition,
    component: int,
    i: int,
    h: int,
    variant: str,
    ties: list[TieWarning] | None,
) -> list[tuple[tuple[int, int], object]]:
    """Sortable (key, payload) items: node runs and merged pairs of one component."""
    rem_runs = removable_set(cp, i, h, variant, ties)
    add_runs = addable_set(cp, i, h, variant, ties)
    add_nodes = {n: run for run in add_runs for n in run.nodes}
    paired_rem: dict[NodeRun, Node] = {}
    paired_add: set[NodeRun] = set()
    for run in rem_runs:
        for s, t in run.nodes:
            # a first-row removable never pairs: its plus and minus cancel instead
            if s < 2:
                continue
            below = (s + 1, t)
            if below not in add_nodes:
                continue
            arun = add_nodes[below]
            if len(run.nodes) != 1 or len(arun.nodes) != 1:
                raise RuntimeError(
                    f"stacked run of length > 1 at {(s, t)} in {cp.corner}-corner {cp.rows}"
                )
            if cp.corner == 0:
                raise ConjectureViolation(
                    f"removable 0-node {(s, t)} directly above addable 0-node {below} "
                    f"in 0-corner component {list(cp.rows)}"
                )
            if i != 0:
                raise RuntimeError(f"vertically stacked equal residues {i} != 0 at {(s, t)}")
            paired_rem[run] = below
            paired_add.add(arun)

    items: list[tuple[tuple[int, int], object]] = []
    for run in rem_runs:
        if run in paired_rem:
            s, t = run.nodes[0]
            pair = SignatureSymbol(
                PLUSMINUS, component, removable=(s, t), addable=(s + 1, t)
            )
            items.append(((-(s + 1), t), pair))
        else:
            items.append(((-run.bottom_row, run.min_col), run))
    for run in add_runs:
        if run not in paired_add:
            items.append(((-run.bottom_row, run.min_col), run))
    items.sort(key=lambda kv: kv[0])
    return items


def build_signature(
    mp: SpinMultipartition,
    i: int,
    variant: str = "paper",
    ties: list[TieWarning] | None = None,
) -> Signature:
    """Raw signature at residue i, components bottom to top, runs lowest first."""
    h = mp.context.h
    symbols: list[SignatureSymbol] = []
    for k, cp in enumerate(mp.components):
        for _, payload in _component_items(cp, k, i, h, variant, ties):
            if isinstance(payload, SignatureSymbol):
                symbols.append(payload)
            else:
                mark = PLUS if payload.kind == "addable" else MINUS
                for node in payload.nodes:
                    symbols.append(SignatureSymbol(mark, k, run=payload, node=node))
    return Signature(i, tuple(symbols))


def _pair_plus(sym: SignatureSymbol) -> SignatureSymbol:
    return SignatureSymbol(PLUS, sym.component, node=sym.addable)


def _pair_minus(sym: SignatureSymbol) -> SignatureSymbol:
    return SignatureSymbol(MINUS, sym.component, node=sym.removable)


def reduce(sig: Signature) -> Signature:
    """Apply the rewrite rules to exhaustion (single left-to-right pass)."""
    out: list[SignatureSymbol] = []
    for sym in sig.symbols:
        if sym.mark == PLUS:
            out.append(sym)
        elif sym.mark == PLUSMINUS:
            if out and out[-1].mark == PLUS:
                out.pop()
                out.append(_pair_plus(sym))  # "+pm" keeps the pair's addable node
            else:
                out.append(sym)
        else:
            cur: SignatureSymbol | None = sym
            while cur is not None and out:
                top = out[-1]
                if top.mark == PLUS:
                    out.pop()
                    cur = None  # "+-" cancels
                elif top.mark == PLUSMINUS:
                    out.pop()
                    cur = _pair_minus(top)  # "pm-" keeps the pair's removable node
                else:
                    break
            if cur is not None:
                out.append(cur)
    return Signature(sig.residue, tuple(out))


def reduce_with_order(sig: Signature, order_seed: int) -> Signature:
    """Reduce by applying applicable rules in a seed-determined random order."""
    rng = random.Random(order_seed)
    word = list(sig.symbols)
    while True:
        moves: list[tuple[int, str]] = []
        for p in range(len(word) - 1):
            a, b = word[p].mark, word[p + 1].mark
            if a == PLUS and b == MINUS:
                moves.append((p, "cancel"))
            elif a == PLUS and b == PLUSMINUS:
                moves.append((p, "absorb_plus"))
            elif a == PLUSMINUS and b == MINUS:
                moves.append((p, "absorb_minus"))
            if (
                p + 2 < len(word)
                and a == PLUS
                and b == PLUSMINUS
                and word[p + 2].mark == MINUS
            ):
                moves.append((p, "triple"))
        if not moves:
            return Signature(sig.residue, tuple(word))
        p, rule = rng.choice(moves)
        if rule == "cancel":
            del word[p : p + 2]
        elif rule == "triple":
            del word[p : p + 3]
        elif rule == "absorb_plus":
            word[p : p + 2] = [_pair_plus(word[p + 1])]
        else:
            word[p : p + 2] = [_pair_minus(word[p])]


def phi(mp: SpinMultipartition, i: int, variant: str = "paper") -> int:
    """Number of pluses plus pairs in the reduced signature."""
    red = reduce(build_signature(mp, i, variant))
    return sum(1 for s in red.symbols if s.mark in (PLUS, PLUSMINUS))


def epsilon(mp: SpinMultipartition, i: int, variant: str = "paper") -> int:
    """Number of minuses plus pairs in the reduced signature."""
    red = reduce(build_signature(mp, i, variant))
    return sum(1 for s in red.symbols if s.mark in (MINUS, PLUSMINUS))


def _action_node(sym: SignatureSymbol, adding: bool) -> Node:
    if sym.mark == PLUSMINUS:
        return sym.addable if adding else sym.removable
    if sym.run is not None:
        return sym.run.nodes[0]  # the run's physically actionable node
    assert sym.node is not None
    return sym.node


def _replace_component(
    mp: SpinMultipartition, k: int, rows: tuple[int, ...], variant: str
) -> SpinMultipartition:
    cp = CornerPartition(mp.components[k].corner, rows)
    if not check_corner_partition(cp, mp.context.h, variant):
        raise ConjectureViolation(
            f"operator produced an invalid {cp.corner}-corner component {list(rows)}"
        )
    comps = list(mp.components)
    comps[k] = cp
    return SpinMultipartition(mp.context, tuple(comps))


def _add_node(mp: SpinMultipartition, k: int, node: Node, variant: str) -> SpinMultipartition:
    s, t = node
    rows = list(mp.components[k].rows)
    if s == len(rows) + 1:
        if t != 1:
            raise RuntimeError(f"cannot open row {s} at column {t}")
        rows.append(1)
    else:
        if not (1 <= s <= len(rows)) or rows[s - 1] != t - 1:
            raise RuntimeError(f"node {node} is not addable to rows {rows}")
        rows[s - 1] += 1
    return _replace_component(mp, k, tuple(rows), variant)


def _remove_node(mp: SpinMultipartition, k: int, node: Node, variant: str) -> SpinMultipartition:
    s, t = node
    rows = list(mp.components[k].rows)
    if not (1 <= s <= len(rows)) or rows[s - 1] != t:
        raise RuntimeError(f"node {node} is not removable from rows {rows}")
    rows[s - 1] -= 1
    if rows[s - 1] == 0:
        if s != len(rows):
            raise RuntimeError(f"removing {node} empties a non-final row of {rows}")
        rows.pop()
    return _replace_component(mp, k, tuple(rows), variant)


def apply_f(
    mp: SpinMultipartition,
    i: int,
    variant: str = "paper",
    ties: list[TieWarning] | None = None,
) -> SpinMultipartition | None:
    """Add the node of the leftmost pair-or-plus of the reduced signature."""
    red = reduce(build_signature(mp, i, variant, ties))
    for sym in red.symbols:
        if sym.mark in (PLUSMINUS, PLUS):
            return _add_node(mp, sym.component, _action_node(sym, adding=True), variant)
    return None


def apply_e(
    mp: SpinMultipartition,
    i: int,
    variant: str = "paper",
    ties: list[TieWarning] | None = None,
) -> SpinMultipartition | None:
    """Remove the node of the rightmost minus-or-pair of the reduced signature."""
    red = reduce(build_signature(mp, i, variant, ties))
    for sym in reversed(red.symbols):
        if sym.mark in (MINUS, PLUSMINUS):
            return _remove_node(mp, sym.component, _action_node(sym, adding=False), variant)
    return None
