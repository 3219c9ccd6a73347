"""The independent-oracle suite must agree with the main implementation."""

import math

from spdckit import validation


def test_closed_form_kappa0_hand_value():
    # The log form equals arctan(1/(2 zeta))/pi, which is 1/4 at zeta = 1/2.
    assert math.isclose(validation.closed_form_upsilon_kappa0(0.5), 0.25, rel_tol=1e-13)
    zeta = 1.7
    assert math.isclose(
        validation.closed_form_upsilon_kappa0(zeta),
        math.atan(0.5 / zeta) / math.pi,
        rel_tol=1e-13,
    )


def test_all_oracles_pass():
    reports = validation.run_all_oracles()
    names = [r.name for r in reports]
    assert len(names) == len(set(names))
    assert len(reports) >= 7
    for r in reports:
        assert r.passed, f"{r.name}: rel_diff {r.rel_diff} > {r.tolerance}"
        assert r.rel_diff <= r.tolerance
        assert math.isfinite(r.main_value)
        assert math.isfinite(r.oracle_value)
        assert 0 < r.tolerance <= 1e-2


def test_reports_cover_both_routes():
    names = {r.name for r in validation.run_all_oracles()}
    assert any("fresnel" in n for n in names)
    assert any("thin-crystal" in n for n in names)
    assert any("rate" in n for n in names)
    assert any("closed-form" in n for n in names)
