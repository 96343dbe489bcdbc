import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import I2, SX, SY, SZ, random_instance, random_unitary
from uncertainty_lab.errors import DegenerateError, NumericalError, PreconditionError
from uncertainty_lab.explorer import complex_normal, forbidden_region_mask, make_rng
from uncertainty_lab.hilbert import kron_all
from uncertainty_lab.moments import MomentSet, moments_from_state, normalized_correlations
from uncertainty_lab.relations import (
    SQRT3_HALF,
    RhoSigmaPoint,
    cauchy_pair,
    forbidden_region_check,
    gci_triple,
    gur_n,
    gur_normalized,
    gur_raw,
    gur_weakened,
    heisenberg_pair,
    moment_matrix,
    orthogonal_special,
    rho_sigma_point,
    schroedinger_pair,
)
from test_hilbert import det3_cofactor

UP = np.array([1, 0], dtype=complex)
E = np.eye(3, dtype=complex)


@pytest.fixture
def pauli_up():
    return moments_from_state([SX, SY, SZ], UP)


def product_moments():
    """Three spins, each observable acting on its own factor of a product state."""
    a, b, c = (np.array([math.cos(t), math.sin(t)]) for t in (0.3, 0.7, 1.1))
    psi = np.kron(np.kron(a, b), c)
    obs = [kron_all([SX, I2, I2]), kron_all([I2, SX, I2]), kron_all([I2, I2, SX])]
    return moments_from_state(obs, psi)


def instance_with_gram(G, dim, scales=(1.0, 1.0, 1.0), U=None):
    """Observables whose centered vectors have Gram matrix diag(s) G diag(s).

    psi = e_0 and A_i = e_0 a_i^H + a_i e_0^H with a_i orthogonal to e_0.
    """
    L = np.linalg.cholesky(G + 1e-300 * np.eye(3))
    a = np.zeros((3, dim), dtype=complex)
    a[:, 1:4] = L.conj() * np.asarray(scales)[:, None]
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1
    obs = [np.outer(psi, ai.conj()) + np.outer(ai, psi.conj()) for ai in a]
    if U is not None:
        obs = [U @ A @ U.conj().T for A in obs]
        psi = U @ psi
    return psi, obs


class TestPairRelations:
    def test_heisenberg_pauli(self, pauli_up):
        r = heisenberg_pair(pauli_up, 0, 1)
        assert r.lhs == pytest.approx(1) and r.rhs == pytest.approx(1)
        assert r.saturated and r.satisfied

    def test_heisenberg_commuting(self, rng):
        psi, _ = random_instance(rng, 3)
        m = moments_from_state([np.diag([1.0, 2, 3]), np.diag([3.0, -1, 0])], psi)
        r = heisenberg_pair(m, 0, 1)
        assert r.rhs == pytest.approx(0, abs=1e-14) and r.satisfied

    def test_same_index_rejected(self, pauli_up):
        with pytest.raises(PreconditionError):
            heisenberg_pair(pauli_up, 1, 1)
        with pytest.raises(IndexError):
            schroedinger_pair(pauli_up, 0, 3)

    def test_schroedinger_pauli(self, pauli_up):
        r = schroedinger_pair(pauli_up, 0, 1)
        assert r.lhs == pytest.approx(1) and r.rhs == pytest.approx(1) and r.saturated

    def test_schroedinger_stronger_for_commuting_correlated(self):
        psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        m = moments_from_state([kron_all([SZ, I2]), kron_all([I2, SZ])], psi)
        s = schroedinger_pair(m, 0, 1)
        h = heisenberg_pair(m, 0, 1)
        assert h.rhs == 0
        assert s.rhs == pytest.approx(1) and s.details["r_squared"] == pytest.approx(1)
        assert s.details["at_least_as_restrictive"]

    def test_eigenstate_saturates(self):
        m = moments_from_state([SZ, SX], UP)
        r = schroedinger_pair(m, 0, 1)
        assert r.lhs == 0 and r.rhs == 0 and r.saturated

    def test_ordering(self, rng):
        for _ in range(50):
            psi, obs = random_instance(rng, int(rng.integers(2, 9)))
            m = moments_from_state(obs, psi)
            for i, j in itertools.permutations(range(3), 2):
                s, h = schroedinger_pair(m, i, j), heisenberg_pair(m, i, j)
                assert s.rhs >= h.rhs and s.margin <= h.margin and s.satisfied


class TestCauchyPair:
    def test_orthogonal(self):
        r = cauchy_pair(E, 0, 1)
        assert r.margin == 1

    def test_parallel(self):
        v = np.array([1, 2j, 3])
        assert cauchy_pair([v, (2 - 1j) * v], 0, 1).saturated

    def test_random(self, rng):
        for _ in range(100):
            vs = complex_normal(rng, (2, 5))
            assert cauchy_pair(vs, 0, 1).margin >= -1e-12


class TestGciTriple:
    def test_orthonormal(self):
        r = gci_triple(E)
        assert r.margin == pytest.approx(1) and r.satisfied and not r.saturated

    def test_dependent(self):
        r = gci_triple([E[0], E[1], (E[0] + E[1]) / math.sqrt(2)])
        assert r.margin == pytest.approx(0, abs=1e-15)
        assert r.saturated and r.details["linearly_dependent"]

    def test_random_and_cofactor_oracle(self, rng):
        for _ in range(200):
            vs = complex_normal(rng, (3, int(rng.integers(3, 7))))
            r = gci_triple(vs)
            assert r.satisfied
            oracle = det3_cofactor(np.array([[np.vdot(a, b) for b in vs] for a in vs])).real
            assert r.margin == pytest.approx(oracle, rel=1e-10, abs=1e-12)

    def test_wrong_count(self):
        with pytest.raises(PreconditionError):
            gci_triple(E[:2])

    def test_printed_ordering_differs_from_determinant(self, rng):
        # The cyclic product (a1,a2)(a2,a3)(a3,a1) is what the determinant needs;
        # the non-cyclic (a1,a2)(a1,a3)(a3,a1) does not reproduce it in general.
        vs = complex_normal(rng, (3, 4))
        G = np.array([[np.vdot(a, b) for b in vs] for a in vs])
        d = G.diagonal().real
        noncyclic = (
            d.prod() + 2 * (G[0, 1] * G[0, 2] * G[2, 0]).real
            - abs(G[0, 1]) ** 2 * d[2] - abs(G[1, 2]) ** 2 * d[0] - abs(G[2, 0]) ** 2 * d[1]
        )
        assert gci_triple(vs).margin == pytest.approx(np.linalg.det(G).real, rel=1e-10)
        assert abs(noncyclic - np.linalg.det(G).real) > 1e-6


class TestGurRaw:
    def test_product_state(self):
        m = product_moments()
        r = gur_raw(m)
        np.testing.assert_allclose(m.corr - np.diag(m.sigma2), 0, atol=1e-15)
        assert r.margin == pytest.approx(np.prod(m.sigma2), rel=1e-12)

    def test_pauli_degenerate_saturated(self, pauli_up):
        r = gur_raw(pauli_up)
        assert r.margin == pytest.approx(0, abs=1e-15)
        assert r.saturated and r.degenerate

    def test_needs_three(self):
        with pytest.raises(PreconditionError):
            gur_raw(moments_from_state([SX, SY], UP))

    @settings(max_examples=100, deadline=None)
    @given(dim=st.integers(2, 8), seed=st.integers(0, 2**32))
    def test_random_nonnegative(self, dim, seed):
        psi, obs = random_instance(make_rng(seed), dim)
        m = moments_from_state(obs, psi)
        r = gur_raw(m)
        assert r.margin >= -1e-9 * max(1.0, float(np.prod(m.sigma2)))
        assert r.margin == pytest.approx(np.linalg.det(moment_matrix(m)).real, rel=1e-8, abs=1e-12)


class TestGurNormalized:
    def test_zero_rho(self):
        assert gur_normalized(RhoSigmaPoint(0, 0, 0, 0.3)).margin == 1

    def test_half_boundary(self):
        r = gur_normalized(RhoSigmaPoint(0.5, 0.5, 0.5, -1.0))
        assert r.margin == 0 and r.saturated

    def test_forbidden_point(self):
        r = gur_normalized(RhoSigmaPoint(0.9, 0.3, 0.9, 1.0))
        assert r.margin == pytest.approx(-0.224, abs=1e-12)
        assert not r.satisfied

    @pytest.mark.parametrize("bad", [(1.2, 0, 0, 0), (0, -0.1, 0, 0), (0, 0, 0, 1.5)])
    def test_out_of_range(self, bad):
        with pytest.raises(PreconditionError):
            RhoSigmaPoint(*bad)

    def test_degenerate_refused(self, pauli_up):
        with pytest.raises(DegenerateError):
            gur_normalized(pauli_up)

    def test_equals_raw_over_product(self, rng):
        for _ in range(200):
            psi, obs = random_instance(rng, int(rng.integers(2, 9)))
            m = moments_from_state(obs, psi)
            raw = gur_raw(m).margin / np.prod(m.sigma2)
            assert abs(gur_normalized(m).margin - raw) <= 1e-10

    def test_universality(self, rng):
        """Different dimensions, scales and frames with one normalized point give one margin."""
        target = np.array([[1, 0.6 * np.exp(0.4j), 0.3], [0, 1, 0.5 * np.exp(-1.2j)], [0, 0, 1]])
        G = np.triu(target, 1)
        G = G + G.conj().T + np.eye(3)
        margins = []
        for dim, scales in ((4, (1, 1, 1)), (6, (0.2, 5.0, 3.0)), (8, (7.0, 0.01, 1.0))):
            U = random_unitary(rng, dim)
            psi, obs = instance_with_gram(G, dim, scales, U)
            margins.append(gur_normalized(moments_from_state(obs, psi)).margin)
        expected = gur_normalized(RhoSigmaPoint(0.6, 0.5, 0.3, math.cos(0.4 - 1.2))).margin
        np.testing.assert_allclose(margins, expected, atol=1e-12)

    def test_rho_sigma_point_triple(self, rng):
        psi, obs = random_instance(rng, 5, n=4)
        nc = normalized_correlations(moments_from_state(obs, psi))
        p = rho_sigma_point(nc, (1, 2, 3))
        assert p.rho12 == pytest.approx(nc.rho[1, 2])
        assert p.cos_sigma == pytest.approx(math.cos(nc.phi[1, 2] + nc.phi[2, 3] + nc.phi[3, 1]))


class TestWeakened:
    def test_values(self):
        assert gur_weakened(0.9, 0.3, 0.9).margin == pytest.approx(-0.224, abs=1e-12)
        assert gur_weakened(0, 0, 0).margin == 1
        r = gur_weakened(1, 1, 1)
        assert r.margin == 0 and r.saturated

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            gur_weakened(0.5, 1.1, 0)

    @settings(max_examples=200, deadline=None)
    @given(
        r=st.tuples(*[st.floats(0, 1)] * 3),
        c=st.floats(-1, 1),
    )
    def test_monotone_weakening(self, r, c):
        w = gur_weakened(*r).margin
        assert w == pytest.approx(gur_normalized(RhoSigmaPoint(*r, 1.0)).margin, abs=1e-15)
        assert w >= gur_normalized(RhoSigmaPoint(*r, c)).margin - 1e-15


class TestForbiddenRegion:
    def test_examples(self):
        assert forbidden_region_check(0.9, 0.3, 0.9)
        assert not forbidden_region_check(0.5, 0.5, 0.5)
        assert forbidden_region_check(0.3, 0.9, 0.9)
        assert forbidden_region_check(0.9, 0.9, 0.3)

    def test_boundaries_as_printed(self):
        assert not forbidden_region_check(SQRT3_HALF, 0.3, 0.9)
        assert forbidden_region_check(1.0, 0.3, 1.0)
        assert not forbidden_region_check(0.9, 0.5, 0.9)
        assert forbidden_region_check(0.9, 0.0, 0.9)

    def test_region_implies_weakened_violation(self):
        hi = np.linspace(SQRT3_HALF, 1.0, 41)[1:]
        lo = np.linspace(0.0, 0.5, 41)[:-1]
        for a, b, c in itertools.product(hi, hi, lo):
            for p in ((a, c, b), (c, a, b), (a, b, c)):
                assert forbidden_region_check(*p)
                assert gur_weakened(*p).margin < 0

    def test_mask_agrees_with_scalar(self, rng):
        pts = rng.uniform(0, 1, (2000, 3))
        pts[:500, [0, 2]] = rng.uniform(0.85, 1, (500, 2))
        pts[:500, 1] = rng.uniform(0, 0.6, 500)
        mask = forbidden_region_mask(pts[:, 0], pts[:, 1], pts[:, 2])
        assert mask.sum() > 100
        assert [forbidden_region_check(*p) for p in pts] == mask.tolist()

    @settings(max_examples=200, deadline=None)
    @given(r=st.tuples(*[st.floats(0, 1)] * 3))
    def test_permutation_symmetry_of_margin(self, r):
        m = gur_weakened(*r).margin
        for p in itertools.permutations(r):
            assert gur_weakened(*p).margin == pytest.approx(m, abs=1e-15)


class TestOrthogonalSpecial:
    def test_values(self):
        assert orthogonal_special(1, 0).margin == 0 and orthogonal_special(1, 0).saturated
        r = orthogonal_special(0.8, 0.8)
        assert r.margin == pytest.approx(-0.28) and not r.satisfied
        assert orthogonal_special(0.5, 0.5).margin == pytest.approx(0.5)

    def test_matches_normalized_at_zero_rho23(self, rng):
        for a, b, c in rng.uniform(-1, 1, (50, 3)):
            a, b = abs(a), abs(b)
            assert orthogonal_special(a, b).margin == pytest.approx(gur_normalized(RhoSigmaPoint(a, 0, b, c)).margin)

    def test_orthogonal_vectors(self, rng):
        """Vectors a2 ⟂ a3: the Gram minor reduces to the two-probability bound."""
        for _ in range(50):
            v = complex_normal(rng, (3, 4))
            v[2] -= np.vdot(v[1], v[2]) / np.vdot(v[1], v[1]) * v[1]
            G = v.conj() @ v.T
            n = np.sqrt(G.diagonal().real)
            r12, r31 = abs(G[0, 1]) / (n[0] * n[1]), abs(G[2, 0]) / (n[2] * n[0])
            margin = orthogonal_special(min(r12, 1), min(r31, 1)).margin
            assert margin == pytest.approx(gci_triple(v).margin / np.prod(n ** 2), abs=1e-10)
            assert margin >= -1e-12


class TestGurN:
    def test_two_observables(self):
        rep, verdict = gur_n(moments_from_state([SX, SY], UP))
        assert rep.margin == pytest.approx(0, abs=1e-15)
        assert verdict.is_psd and verdict.min_eigenvalue == pytest.approx(0, abs=1e-15)

    def test_two_matches_schroedinger(self, rng):
        psi, obs = random_instance(rng, 5, n=2)
        m = moments_from_state(obs, psi)
        assert gur_n(m)[0].margin == pytest.approx(schroedinger_pair(m, 0, 1).margin, rel=1e-10)

    def test_product_state_diagonal(self):
        m = product_moments()
        rep, verdict = gur_n(m)
        assert rep.margin == pytest.approx(np.prod(m.sigma2), rel=1e-12)
        assert verdict.is_psd

    def test_random_four(self, rng):
        for _ in range(50):
            psi, obs = random_instance(rng, int(rng.integers(2, 9)), n=4)
            rep, verdict = gur_n(moments_from_state(obs, psi))
            assert verdict.is_psd and rep.satisfied

    def test_three_matches_raw(self, rng):
        psi, obs = random_instance(rng, 6)
        m = moments_from_state(obs, psi)
        assert gur_n(m)[0].margin == pytest.approx(gur_raw(m).margin, rel=1e-9)

    def test_non_hermitian_moment_matrix(self):
        m = MomentSet(sigma2=np.ones(2), corr=np.array([[1, 0.5], [0, 1]], dtype=complex), means=np.zeros(2), source="pure-state")
        with pytest.raises(NumericalError):
            gur_n(m)


def test_report_flags_consistent():
    for margin in (-1e-3, -1e-10, 0.0, 1e-10, 0.5):
        r = gur_weakened(0, 0, 0)
        from dataclasses import replace

        r = replace(r, margin=margin)
        assert r.satisfied == (margin >= -r.tol)
        assert r.saturated == (abs(margin) <= r.saturation_tol)
