"""Exact lattice arithmetic for the twisted affine family A_{2n}^(2).

A fixed dominant integral weight pins down the Cartan matrix, its
symmetrizer, the invariant bilinear form, and the per-weight bookkeeping
(content, hub, defect, level).  Every quantity is an int or a
`fractions.Fraction`; floats never enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "CartanContext",
    "WeightContent",
    "FullWeight",
    "WeightError",
    "make_context",
    "gram",
    "hub",
    "defect",
    "level",
    "degree",
    "defect_shift",
    "reflect",
    "translate",
    "weight_in_basis",
    "null_root_content",
    "format_content",
    "format_hub",
    "format_defect",
    "vertex_label",
]

HALF = Fraction(1, 2)


class WeightError(ValueError):
    """Invalid weight data: zero top weight, negative content, bad index."""


def _cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((2, -4), (-1, 2))
    rows = []
    for i in range(n + 1):
        row = [0] * (n + 1)
        row[i] = 2
        if i > 0:
            row[i - 1] = -1
        if i < n:
            # the first and the second-to-last superdiagonal entries are -2;
            # this is the unique filling symmetrized by diag(1/2, 1, ..., 1, 2)
            row[i + 1] = -2 if i in (0, n - 1) else -1
        rows.append(tuple(row))
    return tuple(rows)


def _symmetrizer(n: int) -> tuple[Fraction, ...]:
    return (HALF,) + (Fraction(1),) * (n - 1) + (Fraction(2),)


@dataclass(frozen=True)
class CartanContext:
    """Fixed algebra data: rank parameter n, Cartan matrix, symmetrizer, top weight."""

    n: int
    weight: tuple[int, ...]  # coefficients a_0..a_n of the top weight
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]

    @property
    def h(self) -> int:
        return 2 * self.n + 1

    @property
    def size(self) -> int:
        return self.n + 1


def make_context(n: int, weight: tuple[int, ...] | list[int]) -> CartanContext:
    """Build the context for rank parameter n and top-weight coefficients a_0..a_n."""
    if not isinstance(n, int) or n < 1:
        raise WeightError(f"rank parameter n must be a positive integer, got {n!r}")
    a = tuple(weight)
    if len(a) != n + 1:
        raise WeightError(f"weight needs {n + 1} coefficients, got {len(a)}")
    if any(not isinstance(x, int) or x < 0 for x in a):
        raise WeightError(f"weight coefficients must be nonnegative integers, got {a}")
    if not any(a):
        raise WeightError("the top weight must be non-zero")
    return CartanContext(n=n, weight=a, cartan=_cartan_matrix(n), symmetrizer=_symmetrizer(n))


@dataclass(frozen=True)
class WeightContent:
    """A weight below the top one, stored by the coefficient vector of what was subtracted."""

    context: CartanContext
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.c) != self.context.size:
            raise WeightError(f"content needs {self.context.size} entries, got {len(self.c)}")
        if any(not isinstance(x, int) or x < 0 for x in self.c):
            raise WeightError(f"content entries must be nonnegative integers, got {self.c}")


@dataclass(frozen=True)
class FullWeight:
    """A weight in the fundamental-weight/delta basis.

    ``delta_coeff`` is the coordinate on the basis element dual to the scaling
    element; the null root carries two units of it, so a weight of content c
    has ``delta_coeff == -c[0]``.
    """

    lambda_coeffs: tuple[Fraction | int, ...]
    delta_coeff: Fraction | int


def null_root_content(ctx: CartanContext) -> tuple[int, ...]:
    """Content vector of the null root: (2, ..., 2, 1)."""
    return (2,) * ctx.n + (1,)


def level(ctx: CartanContext) -> int:
    """Pairing of the top weight with the canonical central element."""
    a = ctx.weight
    return a[0] + 2 * sum(a[1:])


def gram(ctx: CartanContext, i: int, j: int) -> Fraction:
    """Symmetric product of simple roots i and j."""
    if not (0 <= i <= ctx.n and 0 <= j <= ctx.n):
        raise WeightError(f"root index out of range: ({i}, {j}) with n={ctx.n}")
    return ctx.symmetrizer[i] * ctx.cartan[i][j]


# Internal raw-tuple variants; the generation loops avoid wrapper objects.

def _hub_raw(ctx: CartanContext, c: tuple[int, ...]) -> tuple[int, ...]:
    a, cart = ctx.weight, ctx.cartan
    return tuple(a[i] - sum(cart[i][j] * c[j] for j in range(ctx.size)) for i in range(ctx.size))


def _defect_raw(ctx: CartanContext, c: tuple[int, ...]) -> Fraction:
    a, d, cart = ctx.weight, ctx.symmetrizer, ctx.cartan
    top_pairing = sum((c[i] * d[i] * a[i] for i in range(ctx.size)), Fraction(0))
    norm = sum(
        (c[i] * c[j] * d[i] * cart[i][j] for i in range(ctx.size) for j in range(ctx.size)),
        Fraction(0),
    )
    return top_pairing - HALF * norm


def hub(w: WeightContent) -> tuple[int, ...]:
    """Coroot pairings of the weight, one integer per node."""
    return _hub_raw(w.context, w.c)


def defect(w: WeightContent) -> Fraction:
    """Distance invariant from the reflection orbit of the top weight."""
    return _defect_raw(w.context, w.c)


def degree(w: WeightContent) -> int:
    return sum(w.c)


def defect_shift(w: WeightContent, t: int) -> Fraction:
    """Defect after moving down t null-root steps: defect + t * level."""
    if t < 0:
        raise WeightError(f"shift count must be nonnegative, got {t}")
    return defect(w) + t * level(w.context)


def reflect(w: WeightContent, i: int) -> WeightContent:
    """Simple reflection at node i, acting on contents as c -> c + theta_i * e_i."""
    ctx = w.context
    if not 0 <= i <= ctx.n:
        raise WeightError(f"residue out of range: {i} with n={ctx.n}")
    theta_i = _hub_raw(ctx, w.c)[i]
    new_i = w.c[i] + theta_i
    if new_i < 0:
        raise WeightError(
            f"reflection at {i} leaves the nonnegative cone: content {w.c}, hub entry {theta_i}"
        )
    c = list(w.c)
    c[i] = new_i
    return WeightContent(ctx, tuple(c))


def weight_in_basis(w: WeightContent) -> FullWeight:
    """Rewrite a content-coded weight in the fundamental-weight/delta basis."""
    return FullWeight(lambda_coeffs=hub(w), delta_coeff=-w.c[0])


def translate(
    ctx: CartanContext,
    zeta: FullWeight,
    alpha: tuple[Fraction | int, ...] | list,
    r: int,
) -> FullWeight:
    """Lattice translation t_alpha at level r.

    ``alpha`` gives rational coefficients on the simple roots 1..n (the
    delta-free directions).  The image is zeta + r*alpha minus the null-root
    multiple ((zeta|alpha) + (alpha|alpha)*r/2).
    """
    if len(alpha) != ctx.n:
        raise WeightError(f"alpha needs {ctx.n} coefficients (roots 1..n), got {len(alpha)}")
    x = [Fraction(v) for v in alpha]
    d, cart = ctx.symmetrizer, ctx.cartan
    lam = [Fraction(v) for v in zeta.lambda_coeffs]
    for j in range(1, ctx.size):
        if x[j - 1] == 0:
            continue
        for i in range(ctx.size):
            lam[i] += r * x[j - 1] * cart[i][j]
    pairing = sum(
        (x[j - 1] * d[j] * Fraction(zeta.lambda_coeffs[j]) for j in range(1, ctx.size)),
        Fraction(0),
    )
    norm = sum(
        (
            x[j - 1] * x[k - 1] * d[j] * cart[j][k]
            for j in range(1, ctx.size)
            for k in range(1, ctx.size)
        ),
        Fraction(0),
    )
    # the null root occupies two units of the stored delta coordinate
    delta = Fraction(zeta.delta_coeff) - 2 * (pairing + HALF * norm * r)
    return FullWeight(tuple(lam), delta)


def format_content(c: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in c) + ")"


def format_hub(theta: tuple[int, ...]) -> str:
    return "[" + ",".join(str(x) for x in theta) + "]"


def format_defect(d: Fraction | int) -> str:
    return str(d)


def vertex_label(theta: tuple[int, ...], d: Fraction | int) -> str:
    """Label in the figure convention: hub with the defect as an exponent."""
    return f"{format_hub(theta)}^{format_defect(d)}"
