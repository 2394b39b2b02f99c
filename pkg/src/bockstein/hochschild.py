"""HKR-style Hochschild homology of free graded-commutative algebras.

Only the collapsing cases are in scope: a polynomial generator x contributes
an exterior sigma-x, an exterior generator contributes a divided-power
sigma-x (a plain polynomial one in characteristic 0), always with degree
shift +1, and the answer is the Kuenneth product over the generator list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .algebra import (
    DIVIDED,
    EXTERIOR,
    POLYNOMIAL,
    Algebra,
    GeneratorSpec,
    NotFreeError,
    graded_dims,
)


@dataclass(frozen=True)
class HHResult:
    """Hochschild homology of a free algebra, graded by total degree.

    char is 0 or the algebra's p; the HH-degree is folded into the total
    degree (each sigma-generator sits one above its source).
    """

    algebra: Algebra
    char: int


def hh_free(A: Algebra, char: int) -> HHResult:
    """Adjoin one sigma-generator per input generator, |sigma x| = |x| + 1."""
    if char not in (0, A.p):
        raise ValueError(f"char must be 0 or {A.p}")
    gens = list(A.generators)
    for g in A.generators:
        if g.kind == POLYNOMIAL:
            gens.append(GeneratorSpec(f"σ{g.name}", g.degree + 1, EXTERIOR))
        elif g.kind == EXTERIOR:
            kind = POLYNOMIAL if char == 0 else DIVIDED
            gens.append(GeneratorSpec(f"σ{g.name}", g.degree + 1, kind))
        else:
            raise NotFreeError("not free")
    return HHResult(Algebra(A.p, tuple(gens)), char)


def hh_dims(res: HHResult, max_degree: int) -> Dict[int, int]:
    """Total-degree dimension table through max_degree; zeros omitted.

    In characteristic p the divided-power sigma-generators are expanded
    into truncated-height-p factors before counting.
    """
    dims = graded_dims(res.algebra, max_degree)
    return {d: c for d, c in enumerate(dims) if c}
