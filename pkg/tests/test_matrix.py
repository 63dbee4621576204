# Copyright 2026 (C) The opentropy developers
#
# This file is part of opentropy.
#
# opentropy is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# opentropy is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with opentropy.  If not, see <http://www.gnu.org/licenses/>.

import json

import numpy
from numpy.testing import assert_allclose
import pytest
from hypothesis import given, settings, strategies as st

from opentropy import matrix
from opentropy.errors import (DimensionMismatch, DomainViolation,
                              InputException, NotHermitian,
                              NotStrictlyPositive, ParameterOutOfRange)
from opentropy.functions import IDENTITY, LOG, make_power
from opentropy.instances import GeneratorConfig, random_hpd, random_unitary

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=8)


def _hpd(seed, dim, eig_range=(0.1, 2.0)):
    rng = numpy.random.default_rng(seed)
    return random_hpd(GeneratorConfig(dim=dim, eig_range=eig_range), rng), rng


def _close(X, Y, rel=1e-10):
    scale = max(1.0, matrix.frobenius_norm(X), matrix.frobenius_norm(Y))
    assert numpy.linalg.norm(X.array - Y.array) <= rel * scale


class TestHermitianMatrix:

    def test_real_symmetric_is_promoted(self):
        H = matrix.HermitianMatrix([[1.0, 2.0], [2.0, 3.0]])
        assert H.dim == 2
        assert H.array.dtype == complex
        assert_allclose(H.re, [[1.0, 2.0], [2.0, 3.0]])
        assert_allclose(H.im, 0.0)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            matrix.HermitianMatrix([[1.0, 2.0, 3.0]])
        with pytest.raises(DimensionMismatch):
            matrix.HermitianMatrix(numpy.zeros((0, 0)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            matrix.HermitianMatrix([[1.0, 2.0], [0.0, 1.0]])
        with pytest.raises(NotHermitian):
            matrix.HermitianMatrix([[1.0, 1j], [1j, 1.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(NotHermitian):
            matrix.HermitianMatrix([[numpy.nan]])

    def test_symmetrises_drift(self):
        H = matrix.HermitianMatrix([[1.0, 1.0 + 1e-13], [1.0, 1.0]])
        assert numpy.array_equal(H.array, H.array.conj().T)

    def test_immutable(self):
        H = matrix.identity(2)
        with pytest.raises(ValueError):
            H.array[0, 0] = 5.0

    def test_json_layout(self):
        H = matrix.HermitianMatrix([[2.0, 1j], [-1j, 3.0]])
        obj = H.to_json()
        assert obj["dim"] == 2
        assert obj["im"] == [[0.0, 1.0], [-1.0, 0.0]]
        assert matrix.HermitianMatrix.from_json(obj).allclose(H, atol=0.0)

    def test_json_im_optional(self):
        H = matrix.HermitianMatrix.from_json({"dim": 1, "re": [[4.0]]})
        assert_allclose(H.array, [[4.0]])

    def test_json_malformed(self):
        with pytest.raises(InputException):
            matrix.HermitianMatrix.from_json({"re": [[1.0]]})
        with pytest.raises(InputException):
            matrix.HermitianMatrix.from_json({"dim": 2, "re": [[1.0]]})
        for dim in (0, -2):
            with pytest.raises(InputException):
                matrix.HermitianMatrix.from_json({"dim": dim, "re": [],
                                                  "im": []})
        with pytest.raises(NotHermitian):
            matrix.HermitianMatrix.from_json({"dim": 2,
                                              "re": [[1, 2], [3, 4]]})

    def test_files(self, tmp_path):
        path = str(tmp_path / "h.json")
        H = matrix.HermitianMatrix([[2.0, 0.5j], [-0.5j, 1.0]])
        matrix.dump_matrix(H, path)
        assert matrix.load_matrix(path).allclose(H, atol=0.0)
        assert json.loads(matrix.dump_matrix(H)) == H.to_json()

    def test_missing_and_broken_files(self, tmp_path):
        with pytest.raises(InputException):
            matrix.load_matrix(str(tmp_path / "missing.json"))
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        with pytest.raises(InputException):
            matrix.load_matrix(str(broken))

    def test_arithmetic(self):
        X = matrix.diagonal([1.0, 2.0])
        Y = matrix.diagonal([3.0, 5.0])
        assert_allclose((X + Y).array, numpy.diag([4.0, 7.0]))
        assert_allclose((Y - X).array, numpy.diag([2.0, 3.0]))
        assert_allclose((2 * X).array, numpy.diag([2.0, 4.0]))
        assert_allclose((-X).array, numpy.diag([-1.0, -2.0]))
        assert matrix.trace(Y) == 8.0
        with pytest.raises(DimensionMismatch):
            matrix.add(X, matrix.identity(3))


class TestToleranceConfig:

    def test_defaults(self):
        tol = matrix.DEFAULT_TOLERANCES
        assert (tol.tol_eig, tol.tol_order, tol.eig_floor) == \
            (1e-10, 1e-8, 1e-8)

    def test_invalid(self):
        with pytest.raises(ParameterOutOfRange):
            matrix.ToleranceConfig(tol_eig=0.0)
        with pytest.raises(ParameterOutOfRange):
            matrix.ToleranceConfig(tol_eig=1e-6, tol_order=1e-8)
        with pytest.raises(ParameterOutOfRange):
            matrix.ToleranceConfig(eigensolver="magic")


class TestSpectralCalculus:

    @settings(max_examples=40, deadline=None)
    @given(seeds, dims)
    def test_reconstruction(self, seed, dim):
        H, _ = _hpd(seed, dim)
        spectrum = matrix.spectral_decompose(H)
        scale = max(1.0, matrix.frobenius_norm(H))
        assert spectrum.reconstruction_error(H) <= 1e-10 * scale
        assert spectrum.orthogonality_error() <= 1e-10 * max(1, dim)
        assert (numpy.diff(spectrum.eigenvalues) >= 0).all()

    @settings(max_examples=40, deadline=None)
    @given(seeds, dims)
    def test_spectral_mapping(self, seed, dim):
        H, _ = _hpd(seed, dim)
        root = matrix.apply_function(H, make_power(0.5))
        assert_allclose(matrix.eigenvalues(root),
                        numpy.sqrt(matrix.eigenvalues(H)), rtol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seeds, dims)
    def test_unitary_covariance(self, seed, dim):
        H, rng = _hpd(seed, dim)
        u = random_unitary(dim, rng)
        rotated = matrix.HermitianMatrix.wrap(u @ H.array @ u.conj().T)
        lhs = matrix.apply_function(rotated, LOG)
        rhs = matrix.HermitianMatrix.wrap(
            u @ matrix.apply_function(H, LOG).array @ u.conj().T)
        _close(lhs, rhs)

    @settings(max_examples=40, deadline=None)
    @given(seeds, dims, st.floats(min_value=-2.0, max_value=2.0))
    def test_power_law(self, seed, dim, a):
        H, _ = _hpd(seed, dim)
        product = matrix.HermitianMatrix.wrap(
            matrix.matrix_power(H, a).array
            @ matrix.matrix_power(H, 1.0 - a).array)
        _close(product, H)

    def test_power_endpoints(self):
        H = matrix.diagonal([-1.0, 2.0])
        assert matrix.matrix_power(H, 1) is H
        assert matrix.matrix_power(H, 0).allclose(matrix.identity(2),
                                                  atol=0.0)
        assert_allclose(matrix.matrix_power(H, 2).array,
                        numpy.diag([1.0, 4.0]))

    def test_power_needs_positivity(self):
        with pytest.raises(NotStrictlyPositive) as e:
            matrix.matrix_power(matrix.diagonal([-1.0, 2.0]), 0.5)
        assert e.value.eigenvalue == -1.0
        with pytest.raises(NotStrictlyPositive):
            matrix.matrix_power(matrix.diagonal([0.0, 2.0]), -1)

    def test_domain_violation_carries_eigenvalue(self):
        with pytest.raises(DomainViolation) as e:
            matrix.apply_function(matrix.diagonal([-0.5, 2.0]), LOG)
        assert e.value.eigenvalue == -0.5

    def test_log_of_singular_matrix(self):
        with pytest.raises(DomainViolation):
            matrix.apply_function(matrix.diagonal([0.0, 1.0]), LOG)

    def test_unrestricted_domain(self):
        H = matrix.diagonal([-3.0, 1.0])
        assert matrix.apply_function(H, IDENTITY).allclose(H)

    def test_decomposition_is_cached(self):
        H, _ = _hpd(1, 3)
        assert matrix.spectral_decompose(H) is matrix.spectral_decompose(H)

    def test_memo_keeps_the_value(self):
        H, _ = _hpd(2, 3)
        before = H.array.copy()
        jacobi = matrix.ToleranceConfig(eigensolver="jacobi")
        lapack = matrix.spectral_decompose(H)
        other = matrix.spectral_decompose(H, jacobi)
        assert lapack is not other
        assert other is matrix.spectral_decompose(H, jacobi)
        assert_allclose(H.array, before, rtol=0.0, atol=0.0)
        assert not H.array.flags.writeable

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(min_value=1, max_value=6))
    def test_jacobi_agrees_with_lapack(self, seed, dim):
        H, rng = _hpd(seed, dim)
        H = matrix.HermitianMatrix.wrap(H.array - numpy.eye(dim))
        jacobi = matrix.ToleranceConfig(eigensolver="jacobi")
        spectrum = matrix.spectral_decompose(H, jacobi)
        assert_allclose(spectrum.eigenvalues, matrix.eigenvalues(H),
                        atol=1e-10)
        assert spectrum.reconstruction_error(H) <= 1e-10 * max(
            1.0, matrix.frobenius_norm(H))


class TestLoewner:

    def test_reflexive(self):
        H, _ = _hpd(3, 4)
        verdict = matrix.loewner_leq(H, H)
        assert verdict.holds
        assert verdict.slack_min_eig == 0.0

    def test_diagonal_order(self):
        X = matrix.diagonal([1.0, 2.0])
        Y = matrix.diagonal([2.0, 3.0])
        verdict = matrix.loewner_leq(X, Y)
        assert verdict
        assert verdict.slack_min_eig == pytest.approx(1.0)
        assert verdict.tolerance_used == 1e-8
        assert not matrix.loewner_leq(Y, X)

    def test_incomparable(self):
        X = matrix.diagonal([1.0, 0.0])
        Y = matrix.diagonal([0.0, 1.0])
        assert not matrix.loewner_leq(X, Y)
        assert not matrix.loewner_leq(Y, X)

    def test_relative_tolerance(self):
        X = matrix.diagonal([1.0 + 1e-9, 0.0])
        assert matrix.loewner_leq(X, matrix.diagonal([1.0, 0.0]))
        X = matrix.diagonal([1.0 + 1e-6, 0.0])
        assert not matrix.loewner_leq(X, matrix.diagonal([1.0, 0.0]))

    @settings(max_examples=30, deadline=None)
    @given(seeds, dims)
    def test_congruence_preserves_order(self, seed, dim):
        X, rng = _hpd(seed, dim)
        Y = matrix.add(X, random_hpd(GeneratorConfig(dim=dim), rng))
        M = random_hpd(GeneratorConfig(dim=dim), rng)
        assert matrix.loewner_leq(matrix.conjugate(M, X),
                                  matrix.conjugate(M, Y))

    def test_spectral_condition(self):
        assert matrix.spectral_condition([-2.0, 1.0, 4.0]) == 4.0
        assert matrix.spectral_condition([0.0, 1.0]) is None
