import surfauto as sa
from surfauto.verify import (
    chart_suite,
    factorization_suite,
    fixed_point_suite,
    lattice_suite,
    parabolic_suite,
)


def test_lattice_suite_passes():
    rep = lattice_suite(2, 4)
    assert rep.overall == "pass"
    ids = {c.id for c in rep.checks}
    assert "negative-definite" in ids and "degree-recurrence" in ids
    # the displayed-coefficient comparison is a report, not a failure
    reports = [c for c in rep.checks if c.status == "report"]
    assert any(c.id == "gamma-displayed-coefficients" for c in reports)


def test_lattice_suite_degenerate_case_reports():
    rep = lattice_suite(3, 4)
    assert rep.overall == "pass"
    assert any(c.id == "gamma-closed-form" and c.status == "report" for c in rep.checks)


def test_chart_suite_passes_quick():
    p = sa.MapParams(n=3, k=2, c_spec=(1, 1))
    rep = chart_suite(p, n_xi=4)
    assert rep.overall == "pass"


def test_chart_suite_negative_control():
    # corrupting one blowup center must break the chart suite
    p = sa.MapParams(n=3, k=2, c_spec=(1, 1))
    rep = chart_suite(p, n_xi=2, tamper=(0, p.k + 1, 1.21))
    assert rep.overall == "fail"


def test_factorization_suite():
    for nk in [(2, 4), (3, 2)]:
        rep = factorization_suite(*nk)
        assert rep.overall == "pass"


def test_parabolic_suite_quick():
    p = sa.MapParams(n=3, k=2, c_spec=(1, 1))
    rep = parabolic_suite(p, points_per_fiber=2)
    assert rep.overall == "pass"
    reports = {c.id for c in rep.checks if c.status == "report"}
    assert "top-fiber-outside-configuration" in reports


def test_fixed_point_suite():
    rep = fixed_point_suite(sa.figure1_params())
    assert rep.overall == "pass"
    assert any(c.id == "real-census" for c in rep.checks)
