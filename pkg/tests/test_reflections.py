import pytest

import surfauto as sa
from surfauto import exactmat as xm
from surfauto.picard import PicardLattice
from surfauto.reflections import quadratic_reflection

DESK = [(2, 4), (2, 6), (3, 2), (3, 4), (4, 2)]


def test_generators_are_isometries_and_involutions():
    for (n, k) in [(3, 2), (2, 4)]:
        lat = PicardLattice.build(n, k)
        gens = sa.weyl_generators(n, k)
        Q = lat.q_matrix()
        for g in gens.values():
            M = g.rows()
            assert xm.mat_eq(xm.mat_mul(xm.transpose(M), xm.mat_mul(Q, M)), Q)
        J = gens["J"].rows()
        assert xm.mat_eq(xm.mat_mul(J, J), xm.identity(lat.dim))
        # J(e0) = 2 e0 - e^1 - e^(k+1) - e^(2k+1) on limb 0
        img = xm.mat_vec(J, lat.e0())
        expect = [0] * lat.dim
        expect[0] = 2
        for j in (1, k + 1, 2 * k + 1):
            expect[lat.idx(0, j)] = -1
        assert img == expect
        # the limb shift has order n
        sig = gens["sigma_h"].rows()
        assert xm.mat_eq(xm.mat_pow(sig, n), xm.identity(lat.dim))
        if n > 2:
            assert not xm.mat_eq(sig, xm.identity(lat.dim))


def test_vertical_permutation_orders():
    n, k = 2, 4
    lat = PicardLattice.build(n, k)
    gens = sa.weyl_generators(n, k)
    tau = gens["tau_v"].rows()
    # two k-cycles: order k
    assert xm.mat_eq(xm.mat_pow(tau, k), xm.identity(lat.dim))
    assert not xm.mat_eq(xm.mat_pow(tau, k // 2), xm.identity(lat.dim))
    phi = gens["phi_v"].rows()
    assert xm.mat_eq(xm.mat_mul(phi, phi), xm.identity(lat.dim))


@pytest.mark.parametrize("nk", [(3, 2), (4, 2)])
def test_weyl_factorization_literal_for_k2(nk):
    res = sa.weyl_factorization_check(*nk)
    assert res["literal_identity"]
    assert res["matched_variant"]["tau_limb"] == 0
    assert res["repaired"] is None


@pytest.mark.parametrize("nk", [(2, 4), (2, 6), (3, 4)])
def test_weyl_factorization_repaired_for_k4plus(nk):
    res = sa.weyl_factorization_check(*nk)
    assert not res["literal_identity"]
    rep = res["repaired"]
    assert rep is not None and rep["verified"]
    assert rep["reflection_count"] == nk[1]   # k reflections, not k/2+1
    assert rep["reflection_triples"]


def test_noether_chain_recomposes():
    for (n, k) in DESK:
        triples, residual, mats = sa.noether_chain(n, k)
        lat = PicardLattice.build(n, k)
        M = sa.pushforward_matrix(n, k)
        acc = mats[-1]
        for R in reversed(mats[:-1]):
            acc = xm.mat_mul(R, acc)
        assert xm.mat_eq(acc, M)
        # each factor is an exact involution isometry
        Q = lat.q_matrix()
        for R in mats[:-1]:
            assert xm.mat_eq(xm.mat_mul(R, R), xm.identity(lat.dim))
            assert xm.mat_eq(xm.mat_mul(xm.transpose(R), xm.mat_mul(Q, R)), Q)


def test_quadratic_reflection_root():
    lat = PicardLattice.build(2, 4)
    R = quadratic_reflection(lat, [(0, 2), (1, 3), (1, 7)])
    assert xm.mat_eq(xm.mat_mul(R, R), xm.identity(lat.dim))


# -- T-space Coxeter picture -----------------------------------------------------

def test_coxeter_factorization():
    for (n, k) in DESK:
        res = sa.coxeter_factorization_check(n, k)
        assert res["identity"], (n, k)
        assert res["order"] == "left-to-right"
        assert res["cartan_ok"]
        assert res["rho_last_column_ok"]
        assert res["involutions_ok"]
        assert res["char_poly_ok"]


def test_coxeter_n2_trace():
    data = sa.t_reflections(2, 4)
    comp = xm.mat_mul(data["taus"][0], data["rhos"][1])
    assert comp[0][0] + comp[1][1] == 4


# -- the reversing symmetry --------------------------------------------------------

def test_rho_pushforward_properties():
    for (n, k) in DESK:
        res = sa.reversibility_check(n, k)
        assert res["involution"]
        assert res["isometry"]
        assert res["conjugates_to_inverse"]
        if n == 2:
            assert res["dihedral"]


def test_rho_swaps_limbs():
    n, k = 4, 2
    lat = PicardLattice.build(n, k)
    R = sa.rho_pushforward(n, k)
    for s in range(n):
        for j in range(1, 2 * k + 2):
            img = xm.mat_vec(R, lat.basis_vector(s, j))
            assert img == lat.basis_vector(n - 1 - s, j)


def test_rho_fixes_invariant_line_class():
    for (n, k) in [(2, 4), (3, 2)]:
        lat = PicardLattice.build(n, k)
        R = sa.rho_pushforward(n, k)
        assert xm.mat_vec(R, lat.strict["sigma0"]) == lat.strict["sigma0"]
        # swaps the two contracted lines
        assert xm.mat_vec(R, lat.strict[("L", 0)]) == lat.strict[("L", n - 1)]
