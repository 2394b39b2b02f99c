"""Localized (Laurent) runs: inverting v collapses everything periodic.

With v inverted the same schedules leave only the free part: two Laurent
lines {1, λ1} in the v1 case and a single line {1} in the v2 case, matching
the closed-form periodic answers.
"""

from bockstein import (
    Window,
    localized_expected,
    run,
    schedule_v1,
    schedule_v2,
    thh_mod_p_algebra,
)
from bockstein.jsonio import rep_str

D = 120


def span(pages, D):
    final = pages[-1]
    names = []
    for b in range(0, D + 1):
        cell = final.cells.get((b, 0))
        if cell is not None and cell.dim:
            for row in cell.reps_rows():
                names.append(rep_str(final.ctx.A, cell.monomials, row, final.ctx.v.name, 0))
    return names


A3 = thh_mod_p_algebra(3, 2)
w = Window(D)
pages, _ = run(A3, schedule_v1(3, w), w, localized=True)
print("v1 case, p=3:  Laurent span", span(pages, D), " expected", localized_expected("v1", 3))

for p in (2, 3):
    A = thh_mod_p_algebra(p, 2)
    pages, _ = run(A, schedule_v2(p, w), w, localized=True)
    print(f"v2 case, p={p}:  Laurent span", span(pages, D), " expected", localized_expected("v2", p))
