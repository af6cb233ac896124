"""Smoke tests for the python bindings: array marshalling, one end-to-end
decomposition, and a couple of pinned fixture values."""

import math

import numpy as np
import pytest

import projprod as pp


def tube(values):
    return np.asarray(values, dtype=float).reshape(1, 1, -1)


def test_star_m_worked_tube():
    a = tube([2, 4, 6, 8])
    b = tube([1, -1, 1, 0])
    h4 = pp.Transform("haar", 4, 4).q
    ab = pp.star_m(a, b, h4.T)
    np.testing.assert_allclose(ab.ravel(), [2, 4, 3, 8], atol=1e-12)


def test_star_q_worked_tube():
    a = tube([2, 4, 6, 8])
    b = tube([1, -1, 1, 0])
    t = pp.Transform("haar", 4, 2)
    ab = pp.star_q(a, b, t)
    np.testing.assert_allclose(ab.ravel(), [3, 3, 3, 0], atol=1e-12)

    ident = pp.star_q_identity(1, t)
    ia = pp.star_q(ident, a, t)
    np.testing.assert_allclose(ia.ravel(), [3, 3, 6, 0], atol=1e-12)


def test_array_round_trip_layout():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((4, 3, 5))
    # C-order in, identical values out: marshalling must not transpose.
    t = pp.Transform("identity", 5, 5)
    ia = pp.star_q(pp.star_q_identity(4, t), a, t)
    np.testing.assert_allclose(ia, a, atol=1e-12)


def test_tsvdq_error_identity():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((6, 5, 7))
    t = pp.Transform("dct", 7, 4)
    f = pp.tsvdq(a, t, 3)
    total, ey, proj = pp.tsvdq_error(a, f)
    assert total**2 == pytest.approx(ey**2 + proj**2, rel=1e-10)
    recon = pp.tsvdq_reconstruct(f)
    direct = np.linalg.norm(a - recon)
    assert total == pytest.approx(direct, rel=1e-10)
    assert proj == pytest.approx(pp.projection_error(a, t), rel=1e-10)

    # Factor shapes: stacks are (n, k, p); s is (k, p).
    assert f.u.shape == (6, 3, 4)
    assert f.v.shape == (5, 3, 4)
    assert f.s.shape == (3, 4)
    assert f.k == 3
    assert np.all(np.diff(f.s, axis=0) <= 1e-14)


def test_counterexample_fixture():
    a = np.zeros((2, 2, 2))
    a[:, :, 0] = np.eye(2)
    a[:, :, 1] = np.diag([1.0, -1.0])

    t = pp.Transform("haar", 2, 1)
    f = pp.tsvdq(a, t, 1)
    total, ey, proj = pp.tsvdq_error(a, f)
    assert total**2 == pytest.approx(2.0, abs=1e-12)
    assert ey == pytest.approx(0.0, abs=1e-12)
    assert proj**2 == pytest.approx(2.0, abs=1e-12)

    assert pp.star_q_rank(a, t) == 1
    assert pp.star_q_rank(a, pp.Transform("identity", 2, 2)) == 2

    assert pp.matrix_svd_error(a, 1) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_tsvdq2_and_hosvd():
    a = pp.gen_spectral_cube(10, 9, 12, signatures=3, seed=4)
    t = pp.Transform("data", 12, 3, data=a)

    f2 = pp.tsvdq2(a, t, 1.0)
    assert f2.implicit_rank == sum(f2.multirank)
    total, ey, _ = pp.tsvdq2_error(a, f2)
    assert ey <= 1e-10 * pp.frobenius_norm(a)
    assert total == pytest.approx(pp.projection_error(a, t), abs=1e-10)

    h = pp.hosvd(a, 10, 9, 12)
    np.testing.assert_allclose(pp.hosvd_reconstruct(h), a, atol=1e-9)
    assert h.core.shape == (10, 9, 12)
    assert h.u1.shape == (10, 10)


def test_exceptions_translate():
    a = np.zeros((2, 2, 2))
    with pytest.raises(ValueError):
        pp.Transform("identity", 4, 9)
    with pytest.raises(ValueError):
        pp.tsvdq(np.ones((2, 2, 2)), pp.Transform("identity", 2, 1), 7)
    with pytest.raises(ValueError):
        pp.relative_error(a, a)  # zero reference


def test_pt3_file_round_trip(tmp_path):
    rng = np.random.default_rng(11)
    a = rng.standard_normal((3, 4, 5))
    path = str(tmp_path / "t.pt3")
    pp.write_pt3(path, a)
    b = pp.read_pt3(path)
    assert b.shape == (3, 4, 5)
    np.testing.assert_array_equal(a, b)


def test_exact_rank_generator_recovery():
    t = pp.Transform("random", 8, 3, seed=2)
    a = pp.gen_exact_rank(6, 5, 8, rank=2, seed=9, transform=t)
    f = pp.tsvdq(a, t, 2)
    assert pp.relative_error(a, pp.tsvdq_reconstruct(f)) <= 1e-9
    assert pp.star_q_rank(a, t) <= 2
