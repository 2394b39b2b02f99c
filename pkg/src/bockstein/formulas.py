"""Closed-form integer formulas: valuations, generator degrees, differential
lengths, and the recursive lambda-families.

All arithmetic is exact big-integer; degrees at p=7, n=25 exceed 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple


class FormulaError(ValueError):
    pass


def nu_p(p: int, k: int) -> int:
    """p-adic valuation of k, for k >= 1."""
    if k <= 0:
        raise FormulaError(f"nu_p needs k >= 1, got {k}")
    e = 0
    while k % p == 0:
        k //= p
        e += 1
    return e


def deg_lambda(p: int, i: int) -> int:
    if i < 1:
        raise FormulaError("lambda index must be >= 1")
    return 2 * p**i - 1


def deg_mu(p: int, n: int) -> int:
    if n < 0:
        raise FormulaError("n must be >= 0")
    return 2 * p ** (n + 1)


def d_deg(p: int, n: int, m: int) -> int:
    """Topological degree d(n, m) of the m-case lambda_n (recursive form)."""
    if m not in (1, 2):
        raise FormulaError("m must be 1 or 2")
    if n < 1:
        raise FormulaError("n must be >= 1")
    if n <= 3:
        return 2 * p**n - 1
    return 2 * p**n - 2 * p ** (n - 1) + d_deg(p, n - (m + 1), m)


def d_deg_explicit(p: int, n: int, m: int) -> int:
    """d(n, m) as the displayed alternating sum, for cross-checking."""
    if m not in (1, 2):
        raise FormulaError("m must be 1 or 2")
    if n < 1:
        raise FormulaError("n must be >= 1")
    if n <= 3:
        return 2 * p**n - 1
    total = 0
    j = n
    while j > 3:
        total += 2 * p**j - 2 * p ** (j - 1)
        j -= m + 1
    return total + 2 * p**j - 1


def r_len(p: int, n: int, m: int) -> int:
    """Differential length r(n, m) for the v_1 (m=1) and v_2 (m=2) ladders.

    m=1: p^{n+1} + p^{n-1} + ... down in steps of 2, ending at p^2 (n odd)
    or p^3 (n even).  m=2: p^n + p^{n-3} + ... down in steps of 3, ending at
    p^1, p^2, p^3 for n = 1, 2, 0 mod 3.  The paper assumes p >= 3 for m=1;
    the value still evaluates at p=2 but carries no asserted differential
    pattern there (see v1_p2_patterns).
    """
    if m not in (1, 2):
        raise FormulaError("m must be 1 or 2")
    if n < 1:
        raise FormulaError("n must be >= 1")
    if m == 1:
        end = 2 if n % 2 == 1 else 3
        top = n + 1
    else:
        rem = n % 3
        end = {1: 1, 2: 2, 0: 3}[rem]
        top = n
    total = 0
    j = top
    while j >= end:
        total += p**j
        j -= m + 1
    return total


def r_conj(p: int, n: int, m: int, s: int) -> int:
    """Conjectural differential length r_n(s, m), exponent step m+1.

    The sum runs from p^{n-m+s} down to p^{n+j-m}, where j is the unique
    element of {1, ..., m+1} with s = j mod m+1.
    """
    if m < 1 or m > n:
        raise FormulaError("need 1 <= m <= n")
    if s < 1:
        raise FormulaError("s must be >= 1")
    j = s % (m + 1)
    if j == 0:
        j = m + 1
    total = 0
    e = n - m + s
    while e >= n + j - m:
        total += p**e
        e -= m + 1
    return total


@dataclass(frozen=True)
class LambdaFamily:
    """The recursive lambda-family of one Bockstein case.

    case "v1": lambda_s = lambda_{s-2} mu_3^{p^{s-4}(p-1)} for s > 3;
    case "v2": lambda_s = lambda_{s-3} mu_3^{p^{s-4}(p-1)} for s > 3;
    case "conj" (with n, m): lambda_s = lambda_{s-(m+1)} mu_{n+1}^{p^{s-(n+2)}(p-1)}
    for s > n+1.  Entries unroll to (base lambda index, mu exponent).
    """

    case: str
    p: int
    n: int = 2
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if self.case not in ("v1", "v2", "conj"):
            raise FormulaError(f"unknown lambda-family case {self.case!r}")
        if self.case == "conj":
            if self.m is None or not 1 <= self.m <= self.n:
                raise FormulaError("conj case needs 1 <= m <= n")
        elif self.n != 2:
            raise FormulaError("v1/v2 cases live over n = 2")

    @property
    def step(self) -> int:
        if self.case == "v1":
            return 2
        if self.case == "v2":
            return 3
        return self.m + 1  # type: ignore[operator]

    @property
    def top_plain_index(self) -> int:
        return self.n + 1

    def entry(self, s: int) -> Tuple[int, int]:
        """(base lambda index, mu exponent) of the expansion of lambda_s."""
        if s < 1:
            raise FormulaError("s must be >= 1")
        p, step = self.p, self.step
        e = 0
        while s > self.top_plain_index:
            e += p ** (s - (self.n + 2)) * (p - 1)
            s -= step
        return s, e

    def degree(self, s: int) -> int:
        base, e = self.entry(s)
        return deg_lambda(self.p, base) + e * deg_mu(self.p, self.n)


def lambda_expand(family: LambdaFamily, s: int):
    """Expansion of lambda_s as a monomial over the mod-p THH algebra."""
    from .closedform import thh_mod_p_algebra

    base, e = family.entry(s)
    A = thh_mod_p_algebra(family.p, family.n)
    m = [0] * A.ngens
    m[base - 1] = 1
    m[A.ngens - 1] += e
    return tuple(m)


def degree_identity_v1(p: int, n: int) -> bool:
    """|mu_3^{p^{n-1}}| - 1 - d(n+1, 1) = |v_1| * r(n, 1)."""
    return deg_mu(p, 2) * p ** (n - 1) - 1 - d_deg(p, n + 1, 1) == (2 * p - 2) * r_len(p, n, 1)


def degree_identity_v2(p: int, n: int) -> bool:
    """2 p^{n+2} - d(n, 2) - 1 = |v_2| * r(n, 2)."""
    return 2 * p ** (n + 2) - d_deg(p, n, 2) - 1 == (2 * p * p - 2) * r_len(p, n, 2)


# The p = 2, m = 1 differential pattern is unresolved.  Besides the odd-p
# ladder ("A"), candidate differentials d_{r(n,1)+2}(lambda_{n+3}) =
# v^{r(n,1)+2} lambda_1 lambda_{n+2} (n even, plus the degenerate first
# case d_2(lambda_3) = v^2 lambda_1 lambda_2) cannot be ruled out.  The
# candidates are branch alternatives: once one fires, the later ladder
# targets die, so a single schedule cannot contain them all.  "B" below is
# the minimal coherent alternative branch.  Neither pattern is asserted.
V1_P2_PATTERNS: Dict[str, Dict[str, object]] = {
    "A": {"extra_rules": (), "note": "odd-p ladder taken verbatim"},
    "B": {
        "extra_rules": (
            {"page": 2, "source": 3, "targets": (1, 2)},
        ),
        "note": "first candidate differential fires; ladder prefix kept while "
                "its targets survive; uncharted above lambda_3",
    },
}
