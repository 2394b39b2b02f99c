import json
import re

import pytest

from bockstein.closedform import t0n_profile, thh_mod_p_algebra
from bockstein.engine import Window, run, schedule_v0, schedule_v2
from bockstein.jsonio import emit_json, monomial_str, page_record, parse_json, towers_record
from bockstein.svg import ChartStyle, emit_svg
from bockstein.towers import TowerProfile


def _v0_run(D=58):
    A = thh_mod_p_algebra(2, 2)
    w = Window(D)
    sched = schedule_v0(2, 2, w)
    pages, prof = run(A, sched, w)
    meta = {"case": "v0", "p": 2, "n": 2, "D": D, "localized": False, "variant": None}
    return pages, prof, meta


def test_monomial_string_format():
    A = thh_mod_p_algebra(2, 2)
    assert monomial_str(A, A.unit) == "1"
    assert monomial_str(A, A.monomial(**{"λ3": 1})) == "λ3"
    m = A.monomial(**{"λ1": 1, "μ3": 2})
    assert monomial_str(A, m) == "λ1·μ3^2"
    assert monomial_str(A, m, ascii_=True) == "l1*m3^2"


def test_json_schema_and_fixtures():
    pages, prof, meta = _v0_run()
    doc = json.loads(emit_json(pages, prof, meta))
    assert set(doc) == {"meta", "pages", "towers"}
    assert doc["meta"]["case"] == "v0" and doc["meta"]["tool_version"]
    page1 = doc["pages"][0]
    assert page1["r"] == 1
    rec = next(c for c in page1["classes"] if c["t"] == 15 and c["s"] == 0)
    assert rec == {"t": 15, "s": 0, "dim": 1, "reps": ["λ3"]}
    t31 = next(t for t in doc["towers"] if t["t"] == 31)
    assert t31 == {"t": 31, "lengths": [2]}
    assert all(d["rank"] >= 1 for pg in doc["pages"] for d in pg["differentials"])


def test_json_roundtrip_and_determinism():
    pages, prof, meta = _v0_run(40)
    text1 = emit_json(pages, prof, meta)
    text2 = emit_json(pages, prof, meta)
    assert text1 == text2
    meta2, pages2, prof2 = parse_json(text1)
    assert prof2 == prof
    assert pages2 == [page_record(pd, prof.max_degree) for pd in pages]
    assert towers_record(prof2) == towers_record(prof)


def test_json_empty_window():
    A = thh_mod_p_algebra(2, 2)
    w = Window(2)
    with pytest.warns(UserWarning):
        pages, prof = run(A, schedule_v0(2, 2, w), w)
    doc = json.loads(emit_json(pages, prof, {"case": "v0", "p": 2, "n": 2, "D": 2,
                                             "localized": False, "variant": None}))
    # degree 2 window: only the unit class in degree 0 exists
    assert doc["towers"] == [{"t": 0, "lengths": ["inf"]}]
    assert all(not pg["differentials"] for pg in doc["pages"])


def test_svg_dot_counts_match_dims():
    pages, prof, meta = _v0_run(40)
    final = pages[-1]
    svg = emit_svg(final, ChartStyle(max_filtration=4), 40)
    per_col = {}
    for m in re.finditer(r'data-t="(\d+)" data-s="(\d+)"', svg):
        t, s = int(m.group(1)), int(m.group(2))
        per_col[(t, s)] = per_col.get((t, s), 0) + 1
    for (t, s), count in per_col.items():
        assert final.dim(t, s) == count
    for (t, s), cell in final.cells.items():
        if 0 <= t <= 40 and 0 <= s <= 4 and cell.dim:
            assert per_col.get((t, s)) == cell.dim


def test_svg_shows_differential_arrows():
    A = thh_mod_p_algebra(2, 2)
    w = Window(40)
    sched = schedule_v2(2, w)
    pages, prof = run(A, sched, w)
    fired = next(pg for pg in pages if pg.diffs)
    svg = emit_svg(fired, ChartStyle(), 40)
    assert f">d{fired.r}</text>" in svg


def test_unknown_serializes_per_schema():
    from bockstein.towers import Unknown

    prof = TowerProfile(10)
    prof.add(3, Unknown(7))
    assert towers_record(prof) == [{"t": 3, "lengths": ["unknown"]}]


def test_empty_document():
    doc = json.loads(emit_json([], TowerProfile(0), {"case": "v0", "p": 2, "n": 2,
                                                     "D": 0, "localized": False,
                                                     "variant": None}))
    assert doc["pages"] == [] and doc["towers"] == []
