"""Acceptance suite: every quantitative claim at its stated tolerance, one
line per criterion.  Run with `pytest tests/test_acceptance.py -v -s`.

Desk scale: (n, k) in {(2,4), (2,6), (3,2), (3,4), (4,2)}.
"""

import math
from fractions import Fraction

import surfauto as sa
from surfauto import exactmat as xm
from surfauto.picard import PicardLattice, TSpace, degree_recurrence_residuals
from surfauto.verify import chart_suite, parabolic_suite

DESK = [(2, 4), (2, 6), (3, 2), (3, 4), (4, 2)]

PARAMS = {
    (2, 4): sa.figure1_params(),
    (2, 6): sa.MapParams(n=2, k=6, c_spec=(1, 1), a={2: 0.31, 4: -1.2}),
    (3, 2): sa.MapParams(n=3, k=2, c_spec=(1, 1)),
    (3, 4): sa.MapParams(n=3, k=4, c_spec=(1, 1), a={2: 0.4}),
    (4, 2): sa.MapParams(n=4, k=2, c_spec=(1, 1)),
}


def _line(num, ok, text):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_1_entropy_values():
    ok = abs(sa.spectral_radius(3, 2) - (3 + math.sqrt(5)) / 2) < 1e-9
    for k in (4, 6):
        lam = sa.spectral_radius(2, k)
        ok = ok and abs(lam - (k + math.sqrt(k * k - 4)) / 2) < 1e-9
    factored = xm.poly_mul([1, 1], [1, -3, 1]) == sa.chi_poly(3, 2)
    _line(1, ok and factored,
          "entropy values to 1e-9 and exact factorization of the (3,2) polynomial")


def test_criterion_2_exact_lattice_suite():
    ok = True
    for (n, k) in DESK:
        lat = PicardLattice.build(n, k)
        ok = ok and lat.s_negative_definite()
        lead, power = lat.s_gram_det_formula()
        ok = ok and Fraction(lat.s_gram_det()) == lead * power
        M = sa.pushforward_matrix(n, k)
        Q = lat.q_matrix()
        ok = ok and xm.mat_eq(xm.mat_mul(xm.transpose(M), xm.mat_mul(Q, M)), Q)
        K = lat.canonical_class()
        ok = ok and xm.mat_vec(M, K) == K
        ok = ok and xm.det_bareiss(M) in (1, -1)
        divides, _, worst = sa.char_poly_factor_check(n, k)
        ok = ok and divides and worst < 1e-9
    _line(2, ok, "exact lattice suite on all desk instances")


def test_criterion_3_t_space_identities():
    ok = True
    for (n, k) in DESK:
        lat = PicardLattice.build(n, k)
        ts = TSpace(lat)
        for s in range(n):
            coords = ts.gamma_coords(lat.strict[("L", s)])
            expect = [Fraction(k)] * n
            expect[s] = Fraction(-1)
            ok = ok and coords == expect
        C = sa.restricted_action(n, k)
        cp = xm.charpoly(C)
        chi = sa.chi_poly(n, k)
        ok = ok and (cp == chi or cp == [-c for c in chi])
        ok = ok and ts.gram_proportionality() is not None
    _line(3, ok, "line-class projection, restricted action, and Gram proportionality")


def test_criterion_4_degree_growth():
    ok = True
    for (n, k) in DESK:
        d = sa.degree_sequence(n, k, 40)
        ok = ok and d[1] == k + 1
        ok = ok and all(r == 0 for r in degree_recurrence_residuals(n, k, 40))
        ok = ok and abs(d[40] / d[39] - sa.spectral_radius(n, k)) < 1e-6
    _line(4, ok, "degree growth: exact recurrence to m=40, d1=k+1, ratio within 1e-6")


def test_criterion_5_chart_suite():
    ok = True
    detail = []
    for (n, k) in DESK:
        p = PARAMS[(n, k)]
        rep = chart_suite(p, n_xi=20)
        this = rep.overall == "pass"
        for c in rep.checks:
            if c.id == "fiber-transitions":
                this = this and c.status == "pass" and (c.residual or 0) < 1e-6
            if c.id == "center-cycle-closure":
                this = this and c.status == "pass" and (c.residual or 0) < 1e-8
        ok = ok and this
        if not this:
            detail.append((n, k))
    _line(5, ok, f"fiber transitions at 1e-6 and center closure at 1e-8"
                 f"{'; failing: ' + str(detail) if detail else ''}")


def test_criterion_6_parabolic_suite():
    ok = True
    detail = []
    for (n, k) in DESK:
        p = PARAMS[(n, k)]
        rep = parabolic_suite(p, points_per_fiber=10)
        ids = {c.id: c for c in rep.checks}
        this = (ids["invariant-line-fixed"].status == "pass"
                and ids["invariant-line-tangent"].status == "pass"
                and ids["invariant-line-half-diagonal"].status == "pass"
                and ids["fibers-fixed"].status == "pass"
                and ids["fibers-tangent"].status == "pass")
        ok = ok and this
        if not this:
            detail.append((n, k))
    _line(6, ok, f"tangent-to-identity at 1e-6 / fixed at 1e-8, 10 points per component"
                 f"{'; failing: ' + str(detail) if detail else ''}")


def test_criterion_7_fixed_point_suite():
    p = PARAMS[(2, 4)]
    recs = sa.fixed_points(p)
    ok = sum(r.multiplicity for r in recs) == 5
    worst = 0.0
    for r in recs:
        img = sa.eval_f(p, (r.zeta, r.zeta))
        worst = max(worst, abs(img[1] - r.zeta), abs(img[0] - r.zeta))
    ok = ok and worst < 1e-10
    real = [r for r in recs if abs(r.zeta.imag) < 1e-9]
    ok = ok and len(real) == 3
    ok = ok and sorted(r.type for r in real) == ["elliptic", "saddle", "saddle"]
    for (n, k) in DESK:
        q = PARAMS[(n, k)]
        rr = sa.fixed_points(q)
        ok = ok and sum(r.multiplicity for r in rr) == k + 1
    for k in (4, 6):
        rank, agree = sa.trace_map_rank(sa.MapParams(n=2, k=k, c_spec=(1, 1)))
        ok = ok and rank == k // 2 - 1 and agree < 1e-5
    _line(7, ok, "k+1 roots at 1e-10, real census 2 saddles + 1 elliptic, "
                 "trace rank k/2-1 with 1e-5 derivative agreement")


def test_criterion_8_reflection_suite():
    ok = True
    weyl_note = []
    for (n, k) in DESK:
        cox = sa.coxeter_factorization_check(n, k)
        ok = ok and cox["identity"]
        rev = sa.reversibility_check(n, k)
        ok = ok and rev["involution"] and rev["conjugates_to_inverse"]
        if n == 2:
            ok = ok and rev["dihedral"]
        weyl = sa.weyl_factorization_check(n, k)
        if weyl["literal_identity"]:
            weyl_note.append(f"({n},{k}): literal")
        else:
            rep = weyl["repaired"]
            ok = ok and rep is not None and rep["verified"]
            weyl_note.append(f"({n},{k}): repaired[{rep['reflection_count']}]")
    _line(8, ok, "Coxeter element exact; reversor relations exact; named "
                 f"factorization {', '.join(weyl_note)}")


def test_criterion_9_documented_exclusions():
    # Biholomorphic inequivalence of nearby family members and the full
    # isometry classification are statements about all biholomorphisms /
    # all isometries; only their computable ingredients are implemented:
    # the trace-multiset separation (criterion 7) and the dihedral
    # relations (criterion 8).  This criterion records the exclusion and
    # exercises exactly those ingredients.
    sep, dist = sa.trace_set_separation(
        sa.MapParams(n=2, k=4, c_spec=(1, 1), a={2: 0.01}),
        sa.MapParams(n=2, k=4, c_spec=(1, 1), a={2: 0.02}))
    ok = sep and dist > 1e-8
    rev = sa.reversibility_check(2, 4)
    ok = ok and rev["dihedral"]
    _line(9, ok, "excluded theorems covered only by their computable ingredients "
                 "(trace separation + dihedral relations)")
