import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from coronaqec import (
    NumericalError,
    PreconditionError,
    complete,
    cycle,
    disjoint_union,
    eigen_sym,
    empty,
    main_eigenvalues,
    make_family,
    path,
    spectral_data,
)

from conftest import corpus_graphs


def sym_matrices(max_n=12):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
    ).map(lambda m: (m + m.T) / 2)


class TestEigenSym:
    def test_identity(self):
        w, _ = eigen_sym(np.eye(3))
        assert np.allclose(w, [1, 1, 1])

    def test_k3(self):
        w, _ = eigen_sym(complete(3).adjacency())
        assert np.allclose(w, [2, -1, -1], atol=1e-12)

    def test_p3(self):
        w, _ = eigen_sym(path(3).adjacency())
        assert np.allclose(w, [math.sqrt(2), 0, -math.sqrt(2)], atol=1e-12)

    def test_rejects_nonsymmetric(self):
        with pytest.raises(PreconditionError):
            eigen_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_nonconvergence_maps_to_numerical_error(self):
        with pytest.raises(NumericalError):
            eigen_sym(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    @settings(max_examples=100)
    @given(sym_matrices())
    def test_residual_contract(self, m):
        w, v = eigen_sym(m)
        assert (np.diff(w) <= 0).all()
        tol = 1e-9 * (1 + np.linalg.norm(m, 2))
        assert np.linalg.norm(m @ v - v * w, axis=0).max() <= tol
        assert np.allclose(v.T @ v, np.eye(len(w)), atol=1e-9)


class TestSpectralData:
    def test_empty_graph(self):
        sd = spectral_data(empty(4).adjacency())
        assert sd.eigs == (0.0,) and sd.mults == (4,)
        assert sd.proj_one_sq == pytest.approx((4.0,))

    def test_k3(self):
        sd = spectral_data(complete(3).adjacency())
        assert sd.eigs == pytest.approx((2.0, -1.0))
        assert sd.mults == (1, 2)
        assert sd.proj_one_sq == pytest.approx((3.0, 0.0), abs=1e-12)

    def test_two_triangles(self):
        sd = spectral_data(make_family("disjoint-union-of-completes", [2, 3]).adjacency())
        assert sd.eigs == pytest.approx((2.0, -1.0))
        assert sd.proj_one_sq == pytest.approx((6.0, 0.0), abs=1e-12)
        assert main_eigenvalues(sd).values == pytest.approx((2.0,))

    @settings(max_examples=100)
    @given(sym_matrices())
    def test_reconstruction_and_mass(self, m):
        sd = spectral_data(m)
        recon = sum(a * sd.projector(i) for i, a in enumerate(sd.eigs))
        # merged clusters span at most (mult - 1) * group_tol
        assert np.linalg.norm(recon - m) <= 1e-8 + sd.n * sd.group_tol * max(1.0, np.abs(sd.eigs).max())
        assert sum(sd.mults) == sd.n
        assert sum(sd.proj_one_sq) == pytest.approx(sd.n, abs=1e-9)
        assert min(sd.proj_one_sq) >= 0
        assert all(a > b for a, b in zip(sd.eigs, sd.eigs[1:]))

    def test_grouping_is_chain_based(self):
        m = np.diag([1.0, 1.0 + 6e-8, 1.0 + 1.2e-7, 3.0])
        sd = spectral_data(m, group_tol=1e-7)
        assert sd.mults == (1, 3)


class TestMainEigenvalues:
    def test_c4(self):
        me = main_eigenvalues(spectral_data(cycle(4).adjacency()))
        assert me.values == pytest.approx((2.0,))
        assert me.k == 1 and not me.contains_minus_two

    def test_empty(self):
        me = main_eigenvalues(spectral_data(empty(5).adjacency()))
        assert me.values == pytest.approx((0.0,)) and me.k == 1

    @pytest.mark.parametrize("p1,q1,p2,q2", [(1, 1, 1, 2), (2, 2, 1, 3), (1, 2, 3, 4)])
    def test_two_cluster_sizes(self, p1, q1, p2, q2):
        h = disjoint_union(*([complete(q1)] * p1 + [complete(q2)] * p2))
        me = main_eigenvalues(spectral_data(h.adjacency()))
        assert me.values == pytest.approx((q2 - 1.0, q1 - 1.0), abs=1e-10)
        assert me.k == 2

    def test_only_minus_two(self):
        n = 4
        me = main_eigenvalues(spectral_data(-(2.0 / n) * np.ones((n, n))))
        assert me.contains_minus_two and me.k == 0
        assert me.minus_two_weight == pytest.approx(n)

    def test_minus_two_main(self):
        # -2 is a main eigenvalue of diag(-2, 1)
        me = main_eigenvalues(spectral_data(np.diag([-2.0, 1.0])))
        assert me.contains_minus_two and me.k == 1
        assert me.without_minus_two() == [(pytest.approx(1.0), pytest.approx(1.0))]

    def test_near_minus_two_flagged(self):
        me = main_eigenvalues(spectral_data(np.diag([-2.0 + 1e-6, 1.0])))
        assert me.near_minus_two and not me.contains_minus_two

    @pytest.mark.parametrize("h", corpus_graphs(), ids=lambda g: g.label)
    def test_corpus(self, h):
        sd = spectral_data(h.adjacency())
        me = main_eigenvalues(sd)
        assert me.values and me.k >= 1
        assert me.values[0] == sd.max_eig
        kappa = h.regular_degree()
        if kappa is not None:
            assert me.values == pytest.approx((float(kappa),), abs=1e-10)
        else:
            assert len(me.values) >= 2
