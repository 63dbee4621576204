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

from math import log, sqrt

import numpy
import pytest

from opentropy import matrix, suites
from opentropy.entropy import OperatorTuple
from opentropy.errors import (HypothesisUnmet, ParameterOutOfRange,
                              UnknownFunction, UnknownSuite)
from opentropy.instances import (ContractionFamily, DoublyStochasticMatrix,
                                 GeneratorConfig, WeightFunction,
                                 random_doubly_stochastic, random_hpd,
                                 random_positive_map,
                                 random_resolution_of_identity,
                                 random_unitary, random_weight_function,
                                 uniform_resolution)
from opentropy.suites import FAIL, PASS, UNMET, SuiteConfig


def _scalars(values, certify=True):
    return OperatorTuple.from_scalars(values, sums_to_identity=certify)


def _rng(seed=3):
    return numpy.random.default_rng(seed)


def _resolution(dim=3, n=3, seed=3):
    return random_resolution_of_identity(GeneratorConfig(dim=dim, n=n),
                                         _rng(seed))


def _permute(T, order):
    return OperatorTuple([T[j] for j in order],
                         sums_to_identity=T.sums_to_identity)


def _only(reports, label=None):
    if label is None:
        assert len(reports) == 1
        return reports[0]
    matches = [r for r in reports if r.label == label]
    assert len(matches) == 1
    return matches[0]


class TestMakeReport:

    def test_verdicts(self):
        negative = matrix.diagonal([-1.0, 2.0])
        assert suites.make_report("s", "x", negative, True, 1.0).verdict \
            == FAIL
        assert suites.make_report("s", "x", negative, False, 1.0).verdict \
            == UNMET
        tiny = matrix.diagonal([-1e-9, 2.0])
        report = suites.make_report("s", "x", tiny, True, 1.0)
        assert report.verdict == PASS
        assert report.slack_min_eig == -1e-9
        assert report.condition == pytest.approx(2e9)

    def test_scale_widens_tolerance(self):
        slack = matrix.diagonal([-1e-6])
        assert suites.make_report("s", "x", slack, True, 1.0).verdict == FAIL
        assert suites.make_report("s", "x", slack, True, 1e3).verdict == PASS

    def test_equality(self):
        slack = matrix.diagonal([3.0, 4.0])
        report = suites.make_report("s", "x", slack, True, 1.0,
                                    equality=True)
        assert report.slack_min_eig == -5.0
        assert report.condition is None
        assert report.verdict == FAIL

    def test_to_dict_has_no_matrix(self):
        report = suites.make_report("s", "x", matrix.identity(2), True, 1.0)
        stamped = report.stamped(4, "0:s:4", {"p": 0.5})
        obj = stamped.to_dict()
        assert "slack" not in obj
        assert obj["trial_index"] == 4
        assert obj["instance_seed"] == "0:s:4"
        assert obj["parameters"] == {"p": 0.5}


class TestEntropyBounds:

    def test_upper_single_identity(self):
        A = OperatorTuple([matrix.identity(2)], sums_to_identity=True)
        for p in (0.0, 0.5, 1.0):
            report = _only(suites.check_entropy_upper(A, A, p, "pow_0.5"))
            assert report.verdict == PASS
            assert abs(report.slack_min_eig) <= 1e-12

    def test_upper_scalar_equal_tuples(self):
        A = _scalars([0.5, 0.5])
        report = _only(suites.check_entropy_upper(A, A, 0.0, "pow_0.5"))
        assert abs(report.slack_min_eig) <= 1e-12

    def test_upper_random(self):
        A = _resolution(seed=1)
        B = _resolution(seed=2)
        for f in ("pow_0.5", "ratio", "log1p"):
            for t0 in suites.T0_SWEEP:
                report = _only(suites.check_entropy_upper(A, B, 0.5, f, t0))
                assert report.hypothesis_satisfied
                assert report.verdict == PASS

    def test_upper_needs_bounded_function(self):
        A = _resolution(seed=1)
        report = _only(suites.check_entropy_upper(A, A, 0.5, "log"))
        assert not report.hypothesis_satisfied

    def test_upper_rejects_t0(self):
        A = _resolution(seed=1)
        with pytest.raises(ParameterOutOfRange):
            suites.check_entropy_upper(A, A, 0.5, "pow_0.5", t0=0.0)

    def test_lower_equal_tuples(self):
        A = _resolution(dim=2, seed=4)
        report = _only(suites.check_entropy_lower(A, A, 2.5, "pow_0.5"))
        assert report.hypothesis_satisfied
        assert report.verdict == PASS
        assert report.slack_min_eig == pytest.approx(2.0)

    def test_lower_domain_exit(self):
        A = _scalars([0.9, 0.1])
        B = _scalars([0.1, 0.9])
        report = _only(suites.check_entropy_lower(A, B, 2.5, "pow_0.5"))
        assert not report.hypothesis_satisfied
        assert report.verdict == UNMET
        assert report.slack_min_eig is None
        assert "domain exit" in report.detail

    def test_lower_inside_domain(self):
        A = _scalars([0.5, 0.5])
        B = _scalars([0.25, 0.75])
        report = _only(suites.check_entropy_lower(A, B, 2.0, "pow_0.5", 0.1))
        assert report.hypothesis_satisfied
        assert report.verdict == PASS
        # ratios 0.5 and 1.5: R = 1 - 1.25, argument = 1 + 0.1 R
        entropy = 0.5 * 0.25 * sqrt(0.5) + 0.5 * 2.25 * sqrt(1.5)
        expected = entropy + sqrt(0.975) + sqrt(0.1) * 0.25
        assert report.slack_min_eig == pytest.approx(expected)

    def test_lower_random_in_domain(self):
        # A_j = I/3 gives I <= sum B_j A_j^{-1} B_j <= 3I
        A = uniform_resolution(3, 3)
        B = _resolution(seed=5)
        for f in ("pow_0.5", "ratio", "log1p"):
            for t0 in (0.1, 0.25):
                report = _only(suites.check_entropy_lower(A, B, 2.0, f, t0))
                assert report.hypothesis_satisfied
                assert report.verdict == PASS
                assert report.slack_min_eig >= 0.0

    def test_furuta_equal_scalars(self):
        A = _scalars([0.5], certify=False)
        reports = suites.check_furuta_chain(A, A, 0.5)
        assert [r.label for r in reports] == ["upper", "lower"]
        for report in reports:
            assert report.hypothesis_satisfied
            assert abs(report.slack_min_eig) <= 1e-12

    def test_monotone_concave_equal(self):
        A = uniform_resolution(2, 3)
        for report in suites.check_monotone_concave_bounds(A, A, "pow_0.5"):
            assert abs(report.slack_min_eig) <= 1e-12

    def test_monotone_concave_scalars(self):
        A = _scalars([0.5, 0.5])
        B = _scalars([0.25, 0.75])
        reports = suites.check_monotone_concave_bounds(A, B, "log")
        first = log(1.25) - (0.25 * log(0.5) + 0.75 * log(1.5))
        second = -(0.5 * log(0.5) + 0.5 * log(1.5))
        assert _only(reports, "first").slack_min_eig == pytest.approx(first)
        assert _only(reports, "second").slack_min_eig == \
            pytest.approx(second)
        assert second == pytest.approx(0.1438, abs=1e-4)
        assert all(r.verdict == PASS for r in reports)

    def test_monotone_concave_negative_function(self):
        A = _resolution(seed=6)
        B = _resolution(seed=7)
        reports = suites.check_monotone_concave_bounds(A, B, "log")
        assert matrix.min_eigenvalue(
            matrix.apply_function(A[0], suites.LOG)) < 0.0
        for report in reports:
            assert report.hypothesis_satisfied
            assert report.verdict == PASS


class TestEntropyInequalities:

    def test_inverse_sum_log_uniform(self):
        report = _only(suites.check_inverse_sum_log(uniform_resolution(3, 4)))
        assert abs(report.slack_min_eig) <= 1e-9

    def test_inverse_sum_log_scalars(self):
        report = _only(suites.check_inverse_sum_log(_scalars([0.25, 0.75])))
        expected = log(4.0 + 4.0 / 3.0) - log(2.0) + \
            0.5 * (log(0.25) + log(0.75))
        assert report.slack_min_eig == pytest.approx(expected)
        assert report.verdict == PASS

    def test_inverse_sum_log_unmet(self):
        report = _only(suites.check_inverse_sum_log(
            _scalars([0.5, 0.6], certify=False)))
        assert report.verdict == UNMET

    def test_entropy_inequality_scalars(self):
        reports = suites.check_entropy_inequality(_scalars([0.25, 0.75]))
        assert [r.label for r in reports] == ["symmetrised", "plain"]
        for report in reports:
            assert report.slack_min_eig == pytest.approx(0.130812, abs=1e-6)

    def test_entropy_inequality_uniform(self):
        for report in suites.check_entropy_inequality(
                uniform_resolution(2, 5)):
            assert abs(report.slack_min_eig) <= 1e-9

    def test_kl(self):
        same = _only(suites.check_kl_divergence([0.5, 0.5], [0.5, 0.5]))
        assert same.slack_min_eig == 0.0
        report = _only(suites.check_kl_divergence([0.5, 0.5], [0.25, 0.75]))
        assert report.slack_min_eig == pytest.approx(0.1438, abs=1e-4)
        assert report.verdict == PASS
        unmet = _only(suites.check_kl_divergence([0.5, 0.6], [0.5, 0.5]))
        assert unmet.verdict == UNMET
        with pytest.raises(ParameterOutOfRange):
            suites.check_kl_divergence([1.0], [0.5, 0.5])


class TestTwoOperator:

    def test_identity_pair(self):
        I = matrix.identity(2)
        reports = suites.check_two_operator_bounds(I, I, 0.5, "pow_0.5")
        assert [r.label for r in reports] == \
            ["upper", "lower", "mean-below-identity"]
        assert abs(reports[0].slack_min_eig) <= 1e-12
        assert reports[1].slack_min_eig == pytest.approx(2.0)
        assert abs(reports[2].slack_min_eig) <= 1e-12
        assert all(r.verdict == PASS for r in reports)

    def test_gate_failure_is_not_a_failure(self):
        A = matrix.diagonal([2.0])
        B = matrix.diagonal([1.0])
        reports = suites.check_two_operator_bounds(A, B, 0.5, "pow_0.5")
        upper = _only(reports, "upper")
        residual = 1.0 - sqrt(2.0)
        expected = sqrt(2.0 ** -0.5 + residual) - residual - 1.0
        assert upper.slack_min_eig == pytest.approx(expected)
        assert upper.slack_min_eig < 0
        assert upper.verdict == UNMET
        assert all(not r.hypothesis_satisfied for r in reports)


class TestJensen:

    def setup_method(self, method):
        rng = _rng(8)
        cfg = GeneratorConfig(dim=2)
        self.phi = random_positive_map("kraus", 2, 2, 2, rng)
        self.operators = [random_hpd(cfg, rng) for _ in range(3)]
        self.first = random_weight_function(2, 3, rng)
        self.second = random_weight_function(
            2, 3, rng, marginals=(self.first.mu, self.first.lam))

    def test_refinement_chain(self):
        for f in ("pow_0.5", "log", "neg_entropy"):
            reports = suites.check_jensen_refinement(
                self.first, self.phi, self.operators, f)
            assert [r.label for r in reports] == ["left", "right"]
            assert all(r.verdict == PASS for r in reports)

    def test_trivial_weights_close_left_gap(self):
        trivial = WeightFunction.trivial(self.first.mu, self.first.lam)
        left = _only(suites.check_jensen_refinement(
            trivial, self.phi, self.operators, "log"), "left")
        assert abs(left.slack_min_eig) <= 1e-12

    def test_single_operator(self):
        weights = WeightFunction.trivial([1.0], [1.0])
        left = _only(suites.check_jensen_refinement(
            weights, self.phi, self.operators[:1], "log"), "left")
        assert abs(left.slack_min_eig) <= 1e-12

    def test_interpolation(self):
        reports = suites.check_jensen_interpolation(
            self.first, self.second, self.phi, self.operators, "pow_0.5")
        grid = len(suites.T_GRID)
        pairs = grid * (grid - 1) // 2
        assert len(reports) == 2 * grid + 2 * pairs * len(suites.ETA_GRID)
        assert all(r.verdict == PASS for r in reports)

    def test_endpoint_collapse(self):
        refinement = suites.check_jensen_refinement(
            self.first, self.phi, self.operators, "log")
        interpolation = suites.check_jensen_interpolation(
            self.first, self.second, self.phi, self.operators, "log")
        for side in ("left", "right"):
            at_zero = _only(interpolation, side + "@0").slack
            assert numpy.array_equal(at_zero.array,
                                     _only(refinement, side).slack.array)

    def test_constant_segment_is_flat(self):
        reports = suites.check_jensen_interpolation(
            self.first, self.first, self.phi, self.operators, "log")
        for report in reports:
            if report.label.startswith(("concave", "rows-concave")):
                assert abs(report.slack_min_eig) <= 1e-12

    def test_wrong_weight_count(self):
        with pytest.raises(ParameterOutOfRange):
            suites.check_jensen_refinement(self.first, self.phi,
                                           self.operators[:2], "log")


class TestEntropyRefinement:

    def test_uniform_is_sharp(self):
        A = uniform_resolution(2, 3)
        B = random_doubly_stochastic(3, 2, _rng())
        C = random_doubly_stochastic(3, 2, _rng(4))
        for t in (0.0, 0.5, 1.0):
            for report in suites.check_entropy_refinement(A, B, C, t):
                assert abs(report.slack_min_eig) <= 1e-9

    def test_identity_stochastic(self):
        A = _resolution(dim=2, seed=6)
        I = DoublyStochasticMatrix(numpy.eye(3))
        reports = suites.check_entropy_refinement(A, I, I, 0.5)
        assert abs(_only(reports, "lower").slack_min_eig) <= 1e-12
        assert _only(reports, "upper").verdict == PASS

    def test_random(self):
        A = _resolution(seed=7)
        B = random_doubly_stochastic(3, 4, _rng(1))
        C = random_doubly_stochastic(3, 4, _rng(2))
        reports = suites.check_entropy_refinement(A, B, C, 0.3)
        assert all(r.verdict == PASS for r in reports)

    def test_bad_t(self):
        A = _resolution()
        I = DoublyStochasticMatrix(numpy.eye(3))
        with pytest.raises(ParameterOutOfRange):
            suites.check_entropy_refinement(A, I, I, 1.5)


class TestIdentities:

    def test_duality(self):
        rng = _rng(9)
        cfg = GeneratorConfig(dim=3)
        A, B = random_hpd(cfg, rng), random_hpd(cfg, rng)
        for q in (-1.0, 0.0, 0.3, 1.0, 2.0):
            report = _only(suites.check_entropy_duality(A, B, q))
            assert report.verdict == PASS
            assert report.slack_min_eig <= 0.0

    def test_duality_under_unitary_conjugation(self):
        rng = _rng(10)
        cfg = GeneratorConfig(dim=3)
        A, B = random_hpd(cfg, rng), random_hpd(cfg, rng)
        u = random_unitary(3, rng)
        A, B = (matrix.congruence(u, A), matrix.congruence(u, B))
        report = _only(suites.check_entropy_duality(A, B, 0.3))
        assert report.verdict == PASS

    def test_subadditivity_edges(self):
        rng = _rng(11)
        cfg = GeneratorConfig(dim=2, n=3)
        A = OperatorTuple([random_hpd(cfg, rng) for _ in range(3)])
        B = OperatorTuple([random_hpd(cfg, rng) for _ in range(3)])
        for q in (0.0, 1.0):
            report = _only(suites.check_natural_subadditivity(A, B, q))
            assert abs(report.slack_min_eig) <= 1e-10
        single = _only(suites.check_natural_subadditivity(
            OperatorTuple(A[:1]), OperatorTuple(B[:1]), 0.5))
        assert abs(single.slack_min_eig) <= 1e-10
        report = _only(suites.check_natural_subadditivity(A, B, 0.5))
        assert report.verdict == PASS

    def test_contraction_unitary(self):
        rng = _rng(12)
        X = random_hpd(GeneratorConfig(dim=3), rng)
        family = ContractionFamily((random_unitary(3, rng), ))
        report = _only(suites.check_contraction_jensen(family, [X], 1.0,
                                                       "log"))
        assert abs(report.slack_min_eig) <= 1e-9

    def test_contraction_constant_operators(self):
        family = ContractionFamily(tuple(
            numpy.eye(2) * c for c in (0.5, 0.5)))
        X = matrix.scale(matrix.identity(2), 2.0)
        report = _only(suites.check_contraction_jensen(family, [X, X], 2.0,
                                                       "pow_0.5"))
        assert abs(report.slack_min_eig) <= 1e-12

    def test_contraction_gate(self):
        family = ContractionFamily((2.0 * numpy.eye(2), ))
        with pytest.raises(HypothesisUnmet):
            suites.check_contraction_jensen(family, [matrix.identity(2)],
                                            1.0, "log")


class TestInvariants:

    def test_permutation_invariance(self):
        A = _resolution(seed=21)
        B = _resolution(seed=22)
        order = [2, 0, 1]
        before = _only(suites.check_entropy_upper(A, B, 0.5, "ratio"))
        after = _only(suites.check_entropy_upper(_permute(A, order),
                                                 _permute(B, order), 0.5,
                                                 "ratio"))
        assert after.slack.allclose(before.slack, atol=1e-10)

    def test_permutation_invariance_inverse_sum(self):
        A = _resolution(seed=23)
        before = _only(suites.check_inverse_sum_log(A))
        after = _only(suites.check_inverse_sum_log(_permute(A, [1, 2, 0])))
        assert after.slack.allclose(before.slack, atol=1e-10)


class TestRegistry:

    def test_ids(self):
        assert len(suites.SUITE_IDS) == 15
        assert len(set(suites.SUITE_IDS)) == 15
        assert suites.lookup_suite("duality").parameter == "q"
        with pytest.raises(UnknownSuite):
            suites.lookup_suite("nope")

    def test_parameter_cycle(self):
        suite = suites.lookup_suite("entropy-upper")
        params = suite.parameters(SuiteConfig(), 7)
        assert params == {"p": 0.5, "f": "pow_0.5", "t0": 1.0}
        params = suite.parameters(SuiteConfig(sweep=True), 7)
        assert params == {"p": 0.5, "f": "ratio", "t0": 0.1}
        params = suite.parameters(SuiteConfig(p=0.3, f="log1p"), 7)
        assert params == {"p": 0.3, "f": "log1p", "t0": 1.0}

    def test_no_parameter(self):
        suite = suites.lookup_suite("inverse-sum-log")
        assert suite.parameters(SuiteConfig(), 3) == {"t0": 1.0}

    def test_config_validation(self):
        with pytest.raises(ParameterOutOfRange):
            SuiteConfig(t0=0.0)
        with pytest.raises(ParameterOutOfRange):
            SuiteConfig(trials=-1)
        with pytest.raises(UnknownFunction):
            SuiteConfig(f="cosh")

    def test_describe(self):
        described = suites.lookup_suite("entropy-refinement").describe()
        assert described["parameter"] == "t"
        assert described["grid"] == [0.0, 0.5, 1.0]
