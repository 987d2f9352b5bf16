import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sin_cos_integral, sin_pi, sin_product_integral
from fracspec.eigen import BoundarySpec, dirichlet_eigs, eigenpairs, robin_eigs
from fracspec.errors import QuadratureFailure
from fracspec.quadrature import (Integrand, bilinear_a, bilinear_a_beta, energy_matrix,
                                 gram_matrix, inner_product, integrate, l2_norm, project)

SQRT2 = math.sqrt(2)


def robin_sin_pi_overlap(pair):
    """Closed-form ``(sin(pi x), psi)`` for a Robin pair."""
    s = pair.sqrt_lam
    return pair.amplitude * (sin_product_integral(math.pi, s)
                             + (s / pair.boundary.beta) * sin_cos_integral(math.pi, s))


class TestInnerProduct:
    def test_sin_squared(self):
        assert inner_product(sin_pi, sin_pi) == pytest.approx(0.5, abs=1e-14)

    def test_orthogonal_sines(self):
        p1, p2 = dirichlet_eigs(2)
        assert abs(inner_product(p1, p2)) < 1e-14

    def test_near_dirichlet(self):
        phi = dirichlet_eigs(1)[0]
        psi = robin_eigs(1e4, 1)[0]
        v = inner_product(phi, psi)
        assert abs(v - 1.0) < 1e-4
        assert v == pytest.approx(SQRT2 * robin_sin_pi_overlap(psi), abs=1e-13)

    def test_constant_callable(self):
        assert inner_product(lambda x: 2.0, lambda x: 3.0) == pytest.approx(6.0)

    def test_refinement_budget(self):
        f = Integrand(lambda x: np.sign(x - 1 / 3), 0.0)
        with pytest.raises(QuadratureFailure):
            integrate(lambda x: f(x) * 1.0)

    @settings(max_examples=30, deadline=None)
    @given(a=st.floats(0.5, 40.0), b=st.floats(0.5, 40.0))
    def test_symmetry_and_closed_form(self, a, b):
        f = Integrand(lambda x: np.sin(a * x), a)
        g = Integrand(lambda x: np.sin(b * x), b)
        fg, gf = inner_product(f, g), inner_product(g, f)
        assert fg == gf
        assert fg == pytest.approx(sin_product_integral(a, b), abs=1e-12)


class TestBilinear:
    def test_dirichlet_energy(self):
        p1, p2 = dirichlet_eigs(2)
        assert bilinear_a(p1, p1) == pytest.approx(math.pi**2, rel=1e-13)
        assert abs(bilinear_a(p1, p2)) < 1e-12
        assert bilinear_a_beta(p1, p1, 123.0) == pytest.approx(math.pi**2, rel=1e-13)

    def test_robin_energy(self):
        p1, p2 = robin_eigs(100.0, 2)
        assert bilinear_a_beta(p1, p1, 100.0) == pytest.approx(9.486473204354914, abs=1e-6)
        assert abs(bilinear_a_beta(p1, p2, 100.0)) < 1e-6
        boundary = 100.0 * (p1(0.0) ** 2 + p1(1.0) ** 2)
        assert bilinear_a(p1, p1) == pytest.approx(p1.lam - boundary, rel=1e-12)

    def test_symmetry(self):
        p, q = robin_eigs(30.0, 5)[1:3]
        assert bilinear_a(p, q) == bilinear_a(q, p)
        assert bilinear_a_beta(p, q, 30.0) == bilinear_a_beta(q, p, 30.0)


class TestProject:
    def test_dirichlet_sin(self):
        c = project(sin_pi, dirichlet_eigs(3))
        assert c == pytest.approx([1 / SQRT2, 0.0, 0.0], abs=1e-12)

    def test_dirichlet_mode_two(self):
        c = project(lambda x: SQRT2 * np.sin(2 * np.pi * x), dirichlet_eigs(3))
        assert c == pytest.approx([0.0, 1.0, 0.0], abs=1e-12)

    def test_robin_near_dirichlet(self):
        (psi,) = robin_eigs(1e4, 1)
        (c,) = project(sin_pi, [psi])
        assert 0.7070 < c < 0.7072
        assert c == pytest.approx(robin_sin_pi_overlap(psi), abs=1e-13)

    def test_mixed_basis_rejected(self):
        with pytest.raises(ValueError):
            project(sin_pi, dirichlet_eigs(1) + robin_eigs(5.0, 1))
        with pytest.raises(ValueError):
            project(sin_pi, [])

    @pytest.mark.parametrize("beta", [1e2, 1e3, 1e4])
    def test_parseval(self, beta):
        defects = []
        for n in (10, 25, 50):
            c = np.array(project(sin_pi, robin_eigs(beta, n)))
            defects.append(0.5 - np.sum(c**2))
        assert all(d >= -1e-12 for d in defects)
        assert defects[0] >= defects[1] >= defects[2]
        assert defects[2] <= 1e-6

    @pytest.mark.parametrize("beta", [1e2, 1e4])
    def test_against_closed_form(self, beta):
        basis = robin_eigs(beta, 12)
        c = project(sin_pi, basis)
        assert c == pytest.approx([robin_sin_pi_overlap(p) for p in basis], abs=1e-12)


@pytest.mark.parametrize("bc", [BoundarySpec.dirichlet()] + [BoundarySpec.robin(b)
                                                             for b in (1e2, 1e4, 1e6)])
def test_orthonormality(bc):
    basis = eigenpairs(bc, 10)
    assert np.abs(gram_matrix(basis) - np.eye(10)).max() <= 1e-8
    lam = np.array([p.lam for p in basis])
    energy = energy_matrix(basis, None if bc.is_dirichlet else bc.beta)
    assert np.all(np.abs(energy - np.diag(lam)) <= 1e-6 * lam[:, None])


def test_l2_norm():
    assert l2_norm(sin_pi) == pytest.approx(1 / SQRT2, rel=1e-14)
