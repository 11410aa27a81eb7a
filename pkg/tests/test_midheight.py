import json

import pytest

from wittquiver.midheight import (
    abelianization_dim, analyze_midheight, classify_height_pm1, midheight_modules,
    restricted_abelianization_dim,
)
from wittquiver.rep import validate
from wittquiver.witt import Character, beta_radical, default_character, representative, witt


def test_modules_at_height_two():
    m = midheight_modules(representative(5, 2))
    assert m.s == 1 and m.S.dim == 5 and m.L.dim == 25
    assert validate(m.S) and validate(m.L)


def test_range_checks():
    with pytest.raises(ValueError):
        midheight_modules(representative(5, 1))
    with pytest.raises(ValueError):
        classify_height_pm1(5, representative(5, 2))


def test_report_height_two_p5():
    r = analyze_midheight(5, representative(5, 2))
    assert (r.ext_SS, r.ext_LL, r.thmA_dim, r.h1_rad) == (2, 1, 2, 2)
    assert r.rad_is_ideal and r.chi_vanishes_on_rad and r.thmC_identity
    assert r.S_rad_invariant and r.S_simple and r.propB_holds
    assert r.conjecture == "consistent" and r.ext_LL_status == "computed"
    data = json.loads(r.to_json())
    assert data["dim_L"] == 25 and data["s"] == 1


def test_report_odd_height_has_caveat():
    r = analyze_midheight(5, default_character(5, 3))
    assert r.notes and r.conjecture.startswith("not applicable")
    assert r.propB_holds


def test_cap_skips_large_ext():
    r = analyze_midheight(5, representative(5, 2), cap=100)
    assert r.ext_LL is None and r.ext_LL_status.startswith("skipped")
    assert r.propB_holds is None


def test_abelianization_helpers():
    p = 7
    assert abelianization_dim(p, 2) == 3  # e_2, e_3, e_4 modulo [g_2, g_2] = span(e_5)
    W = witt(p)
    assert restricted_abelianization_dim(p, W.graded(1)) == 2
    rad, _ = beta_radical(representative(p, 4), 0)
    assert restricted_abelianization_dim(p, rad) == 2


def test_top_height_verdicts():
    res = classify_height_pm1(5, Character((0, 0, 0, 0, 1), 5))
    assert res.verdict == "p-nilpotent" and res.loop_multiplicity == 1
    res = classify_height_pm1(5, Character((0, 0, 1, 0, 1), 5))
    assert res.verdict == "torus" and res.loop_multiplicity == 0
    assert json.loads(res.to_json())["verdict"] == "torus"
