"""Tower profiles: the engine's and the closed-form constructors' common
output format, plus the certification diff.

A tower length is a positive int (a finite v-tower, i.e. p^k torsion over
v_0 or a P(v)/v^k summand over v_1/v_2), INF for a free summand, or an
Unknown marker when the window does not determine the length.  Unknown
carries an advisory lower bound which is excluded from equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

INF = math.inf


@dataclass(frozen=True)
class Unknown:
    """A tower alive to the window edge whose continuation is undetermined."""

    lower: Optional[int] = None  # advisory: length is >= lower if finite

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Unknown)

    def __hash__(self) -> int:
        return hash("unknown")


TowerLength = Union[int, float, Unknown]


def _length_key(x: TowerLength) -> Tuple[int, float]:
    if isinstance(x, Unknown):
        return (2, float(x.lower or 0))
    if x == INF:
        return (1, 0.0)
    return (0, float(x))


def length_str(x: TowerLength) -> str:
    if isinstance(x, Unknown):
        return f"unknown(>= {x.lower})" if x.lower is not None else "unknown"
    if x == INF:
        return "inf"
    return str(int(x))


@dataclass
class TowerProfile:
    """Per topological degree, the multiset of tower lengths."""

    max_degree: int
    towers: Dict[int, List[TowerLength]] = field(default_factory=dict)

    def add(self, degree: int, length: TowerLength) -> None:
        if isinstance(length, int) and length < 1:
            raise ValueError("tower length must be >= 1")
        self.towers.setdefault(degree, []).append(length)
        self.towers[degree].sort(key=_length_key)

    def lengths(self, degree: int) -> List[TowerLength]:
        return list(self.towers.get(degree, []))

    def degrees(self) -> List[int]:
        return sorted(d for d, v in self.towers.items() if v)

    def restrict(self, max_degree: int) -> "TowerProfile":
        out = TowerProfile(max_degree)
        for d, v in self.towers.items():
            if 0 <= d <= max_degree and v:
                out.towers[d] = sorted(v, key=_length_key)
        return out

    def has_unknown(self) -> bool:
        return any(isinstance(x, Unknown) for v in self.towers.values() for x in v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TowerProfile):
            return NotImplemented
        a = {d: v for d, v in self.towers.items() if v}
        b = {d: v for d, v in other.towers.items() if v}
        return self.max_degree == other.max_degree and a == b

    def summary_lines(self) -> List[str]:
        out = []
        for d in self.degrees():
            out.append(f"t={d:>5}: " + ", ".join(length_str(x) for x in self.towers[d]))
        return out


@dataclass
class DiffReport:
    """Result of comparing an engine profile against an oracle profile."""

    mismatches: List[Tuple[int, List[TowerLength], List[TowerLength]]] = field(default_factory=list)
    unverified: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> List[str]:
        out = []
        for d, eng, orc in self.mismatches:
            out.append(
                f"MISMATCH t={d}: engine {[length_str(x) for x in eng]}"
                f" vs oracle {[length_str(x) for x in orc]}"
            )
        for d, msg in self.unverified:
            out.append(f"unverified t={d}: {msg}")
        if not out:
            out.append("profiles agree exactly")
        return out


def _unknown_matches(u: Unknown, length: TowerLength) -> bool:
    if isinstance(length, Unknown):
        return True
    if u.lower is None:
        return True
    if length == INF:
        return True
    return int(length) >= u.lower


def compare(engine: TowerProfile, oracle: TowerProfile, max_degree: Optional[int] = None) -> DiffReport:
    """Per-degree multiset comparison; engine Unknown entries match anything
    but are reported as unverified."""
    D = max_degree if max_degree is not None else min(engine.max_degree, oracle.max_degree)
    report = DiffReport()
    for d in range(0, D + 1):
        eng = engine.lengths(d)
        orc = oracle.lengths(d)
        known = [x for x in eng if not isinstance(x, Unknown)]
        unknowns = [x for x in eng if isinstance(x, Unknown)]
        rest = list(orc)
        leftover_known = []
        for x in known:
            if x in rest:
                rest.remove(x)
            else:
                leftover_known.append(x)
        # unknowns absorb remaining oracle entries they are consistent with,
        # smallest bound first against smallest remaining length
        unmatched_unknowns: List[Unknown] = []
        for u in sorted(unknowns, key=_length_key):
            hit = next((x for x in sorted(rest, key=_length_key) if _unknown_matches(u, x)), None)
            if hit is None:
                unmatched_unknowns.append(u)
            else:
                rest.remove(hit)
                report.unverified.append(
                    (d, f"engine {length_str(u)} matched to oracle {length_str(hit)} unverified")
                )
        if leftover_known or rest or unmatched_unknowns:
            report.mismatches.append((d, eng, orc))
    return report
