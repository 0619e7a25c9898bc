import math

import numpy as np
import pytest

from liecomm.geom import (
    CommutatorError,
    MeshError,
    beta,
    beta_check,
    clutching_function,
    cocycle_check,
    cocycle_s4,
    commutator_distance,
    degree_to_s2,
    gamma,
    null_homotopy_h,
    qconj,
    qmul,
    quaternion_matrix,
    rep_project_su2,
    sphere2_to_prism,
    triangulate_prism_boundary,
)


class TestQuaternions:
    def test_matrix_convention_is_multiplicative(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            p, q = rng.standard_normal(4), rng.standard_normal(4)
            p /= np.linalg.norm(p)
            q /= np.linalg.norm(q)
            lhs = quaternion_matrix(qmul(p, q))
            rhs = quaternion_matrix(p) @ quaternion_matrix(q)
            assert np.allclose(lhs, rhs)

    def test_conjugate_inverse(self):
        rng = np.random.default_rng(8)
        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        assert np.allclose(qmul(q, qconj(q)), [1, 0, 0, 0])


class TestGammaAndH:
    def test_gamma_values(self):
        assert np.allclose(gamma(0.0), [1, 0, 0, 0])
        assert np.allclose(gamma(0.5), [-1, 0, 0, 0])
        assert np.allclose(gamma(0.25), [0, 1, 0, 0])

    def test_h_boundary_conditions(self):
        ss = np.linspace(0, 1, 37)
        assert np.allclose(null_homotopy_h(ss, 0.0), gamma(ss), atol=1e-14)
        assert np.allclose(null_homotopy_h(0.37, 1.0), [1, 0, 0, 0], atol=1e-14)
        for u in np.linspace(0, 1, 11):
            assert np.allclose(null_homotopy_h(0.0, u), [1, 0, 0, 0], atol=1e-14)
            assert np.allclose(null_homotopy_h(1.0, u), [1, 0, 0, 0], atol=1e-14)

    def test_h_closed_form_value(self):
        val = null_homotopy_h(0.25, 0.5)
        assert np.allclose(val, [0.75, 0.5, math.sqrt(3) / 4, 0.0], atol=1e-14)
        assert abs(np.linalg.norm(val) - 1.0) < 1e-14

    def test_h_stays_in_d_zero_subsphere(self):
        ss, uu = np.meshgrid(np.linspace(0, 1, 30), np.linspace(0, 1, 30))
        vals = null_homotopy_h(ss.ravel(), uu.ravel())
        assert np.abs(vals[:, 3]).max() == 0.0
        assert np.abs(np.linalg.norm(vals, axis=1) - 1).max() < 1e-14
        assert vals[:, 2].min() >= 0.0  # the c >= 0 half-sphere


class TestBeta:
    def test_bottom_face(self):
        first, second = beta([[0.2, 0.7, 0.0]])
        assert np.allclose(first[0], gamma(0.2))
        assert np.allclose(second[0], gamma(0.7))

    def test_top_face(self):
        first, second = beta([[0.2, 0.7, 1.0]])
        assert np.allclose(first[0], [1, 0, 0, 0])
        assert np.allclose(second[0], [1, 0, 0, 0])

    def test_wall_s0(self):
        first, second = beta([[0.0, 0.4, 0.3]])
        assert np.allclose(first[0], [1, 0, 0, 0])
        assert np.allclose(second[0], null_homotopy_h(0.4, 0.3))

    def test_commutativity_everywhere(self):
        pts, _ = triangulate_prism_boundary(17)
        first, second = beta(pts)
        assert commutator_distance(first, second).max() < 1e-12

    def test_off_boundary_rejected(self):
        with pytest.raises(ValueError):
            beta([[0.2, 0.7, 0.5]])


class TestProjection:
    def test_identity_pair(self):
        out = rep_project_su2([[1, 0, 0, 0]], [[1, 0, 0, 0]])
        assert np.allclose(out[0], [0, 0, 1])

    def test_vertex_pair(self):
        out = rep_project_su2([[-1, 0, 0, 0]], [[1, 0, 0, 0]])
        assert np.allclose(out[0], [0, 0, -1])

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(5)
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        p = np.concatenate([[math.cos(0.8)], math.sin(0.8) * axis])
        q = np.concatenate([[math.cos(1.7)], math.sin(1.7) * axis])
        g = rng.standard_normal(4)
        g /= np.linalg.norm(g)
        base = rep_project_su2([p], [q])
        moved = rep_project_su2([qmul(qmul(g, p), qconj(g))], [qmul(qmul(g, q), qconj(g))], tol=1e-6)
        assert np.abs(base - moved).max() < 1e-9

    def test_noncommuting_rejected(self):
        with pytest.raises(CommutatorError):
            rep_project_su2([[0, 1, 0, 0]], [[0, 0, 1, 0]])


class TestDegree:
    def test_constant_map(self):
        pts, tris = triangulate_prism_boundary(8)
        values = np.tile([0.0, 0.0, 1.0], (len(pts), 1))
        degree, residue = degree_to_s2(values, tris)
        assert degree == 0 and residue < 1e-12

    def test_radial_projection_has_degree_one(self):
        pts, tris = triangulate_prism_boundary(16)
        centered = pts - np.array([1 / 3, 2 / 3, 0.5])
        values = centered / np.linalg.norm(centered, axis=1)[:, None]
        degree, residue = degree_to_s2(values, tris)
        assert degree == 1 and residue < 1e-9

    def test_projected_generator(self):
        pts, tris = triangulate_prism_boundary(40)
        first, second = beta(pts)
        degree, residue = degree_to_s2(rep_project_su2(first, second), tris)
        assert degree in (1, -1)
        assert residue < 1e-3

    def test_coarse_mesh_rejected(self):
        pts, tris = triangulate_prism_boundary(2)
        first, second = beta(pts)
        with pytest.raises(MeshError):
            degree_to_s2(rep_project_su2(first, second), tris)


class TestCocycle:
    def test_triple_overlap_values(self):
        theta = np.linspace(0, 2 * np.pi, 50, endpoint=False)
        omega = np.stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=-1)
        x = np.zeros((50, 5))
        x[:, 1:4] = omega
        first, second = beta(sphere2_to_prism(omega))
        assert np.allclose(cocycle_s4(x, 1, 2), first)
        assert np.allclose(cocycle_s4(x, 2, 3), second)
        r13 = cocycle_s4(x, 1, 3)
        assert np.abs(r13 - qmul(first, second)).max() < 1e-12

    def test_inverse_orientation(self):
        x = np.zeros((1, 5))
        x[0, 1] = 1.0
        forward = cocycle_s4(x, 1, 2)
        backward = cocycle_s4(x, 2, 1)
        assert np.allclose(qmul(forward, backward), [[1, 0, 0, 0]])

    def test_outside_overlap_rejected(self):
        x = np.zeros((1, 5))
        x[0, 0] = 1.0  # deep inside C2/C3 but not C1
        with pytest.raises(ValueError):
            cocycle_s4(x, 1, 2)

    def test_clutching_symmetry(self):
        rng = np.random.default_rng(3)
        equator = rng.standard_normal((200, 4))
        equator /= np.linalg.norm(equator, axis=1)[:, None]
        pts = np.zeros((200, 5))
        pts[:, 1:] = equator
        mirrored = pts.copy()
        mirrored[:, 4] = -mirrored[:, 4]
        assert np.abs(clutching_function(pts) - clutching_function(mirrored)).max() < 1e-12


class TestReports:
    def test_beta_report_small(self):
        report = beta_check(grid=24)
        assert report["seam_residual"] < 1e-12
        assert report["max_commutator"] < 1e-12
        assert report["degree"] in (1, -1)
        assert report["degree"] == report["degree_refined"]

    def test_cocycle_report_small(self):
        report = cocycle_check(samples=600)
        assert report["cocycle_residual"] < 1e-12
        assert report["pairwise_commutator"] < 1e-12
        assert report["clutching_residual"] < 1e-12
        assert report["min_extension_denominator"] > 0.1
        assert report["conjugation_residual"] < 1e-9
