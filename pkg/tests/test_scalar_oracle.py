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

"""
1x1 instances of every suite checked against plain scalar arithmetic.
"""

from itertools import combinations
import math

import pytest

from opentropy import suites
from opentropy.suites import SuiteConfig
from opentropy.warnings import WarningCounts


def _neg_entropy(t):
    return -t * math.log(t)


SCALAR = {"pow_0.5": math.sqrt,
          "ratio": lambda t: t / (1.0 + t),
          "log1p": math.log1p,
          "log": math.log,
          "neg_entropy": _neg_entropy}


def _apply(name, t):
    if t < 0 or (t == 0 and name in ("log", "neg_entropy")):
        return None
    return SCALAR[name](t)


def _values(entries):
    return [e.array[0, 0].real for e in entries]


def _shifted(name, means, residual, t0, offset, sign):
    image = _apply(name, means + t0 * residual)
    if image is None:
        return None
    return sign * (image - SCALAR[name](t0) * residual) + offset


def _bounds(a, b, p, name, t0, upper=True, lower=True):
    f = SCALAR[name]
    residual = 1.0 - sum(x ** (1 - p) * y ** p for x, y in zip(a, b))
    entropy = sum(x * (y / x) ** p * f(y / x) for x, y in zip(a, b))
    out = []
    if upper:
        means = sum(x ** -p * y ** (p + 1) for x, y in zip(a, b))
        out.append(("upper", _shifted(name, means, residual, t0, -entropy,
                                      1.0)))
    if lower:
        means = sum(x ** (2 - p) * y ** (p - 1) for x, y in zip(a, b))
        out.append(("lower", _shifted(name, means, residual, t0, entropy,
                                      1.0)))
    return out, residual


def entropy_upper(i, params):
    return _bounds(_values(i["A"]), _values(i["B"]), params["p"],
                   params["f"], params["t0"], lower=False)[0]


def entropy_lower(i, params):
    return _bounds(_values(i["A"]), _values(i["B"]), params["p"],
                   params["f"], params["t0"], upper=False)[0]


def furuta_chain(i, params):
    return _bounds(_values(i["A"]), _values(i["B"]), params["p"], "log",
                   params["t0"])[0]


def monotone_concave(i, params):
    a, b = _values(i["A"]), _values(i["B"])
    f = SCALAR[params["f"]]
    first = f(sum(y * y / x for x, y in zip(a, b))) - \
        sum(y * f(y / x) for x, y in zip(a, b))
    second = f(1.0) - sum(x * f(y / x) for x, y in zip(a, b))
    return [("first", first), ("second", second)]


def inverse_sum_log(i, params):
    a = _values(i["A"])
    n = len(a)
    return [("bound", math.log(sum(1.0 / x for x in a)) - math.log(n)
             + sum(math.log(x) for x in a) / n)]


def entropy_inequality(i, params):
    a = _values(i["A"])
    value = math.log(len(a)) + sum(x * math.log(x) for x in a)
    return [("symmetrised", value), ("plain", value)]


def kl_divergence(i, params):
    return [("divergence", -sum(x * math.log(y / x)
                                for x, y in zip(i["a"], i["b"])))]


def two_operator(i, params):
    a, b = [i["pair"].A.array[0, 0].real], [i["pair"].B.array[0, 0].real]
    out, residual = _bounds(a, b, params["p"], params["f"], params["t0"])
    return out + [("mean-below-identity", residual)]


def _gain(phi):
    return sum(abs(v[0, 0]) ** 2 for v in phi.kraus_operators)


def _rows(omega, lam, images, name):
    return [SCALAR[name](sum(w * l * x for w, l, x in zip(row, lam, images)))
            for row in omega]


def _outer(lam, images, operators, gain, name):
    f = SCALAR[name]
    left = f(sum(l * x for l, x in zip(lam, images)))
    right = sum(l * gain * f(x) for l, x in zip(lam, operators))
    return left, right


def jensen_refinement(i, params):
    weights, name = i["weights"], params["f"]
    gain = _gain(i["phi"])
    operators = _values(i["operators"])
    images = [gain * x for x in operators]
    left, right = _outer(weights.lam, images, operators, gain, name)
    middle = sum(m * r for m, r in zip(
        weights.mu, _rows(weights.omega, weights.lam, images, name)))
    return [("left", left - middle), ("right", middle - right)]


def _interpolation(mu, lam, first, second, phi, operators, name):
    gain = _gain(phi)
    operators = _values(operators)
    images = [gain * x for x in operators]
    left, right = _outer(lam, images, operators, gain, name)

    def rows(t):
        omega = [[(1.0 - t) * u + t * v for u, v in zip(r1, r2)]
                 for r1, r2 in zip(first, second)]
        return _rows(omega, lam, images, name)

    def F(t):
        return sum(m * r for m, r in zip(mu, rows(t)))

    out = []
    for t in suites.T_GRID:
        out.append(("left@%g" % t, left - F(t)))
        out.append(("right@%g" % t, F(t) - right))
    for t1, t2 in combinations(suites.T_GRID, 2):
        for eta in suites.ETA_GRID:
            t = eta * t1 + (1.0 - eta) * t2
            label = "%g,%g,%g" % (t1, t2, eta)
            out.append(("concave@" + label,
                        F(t) - (eta * F(t1) + (1.0 - eta) * F(t2))))
            out.append(("rows-concave@" + label,
                        min(r - (eta * r1 + (1.0 - eta) * r2)
                            for r, r1, r2 in zip(rows(t), rows(t1),
                                                 rows(t2)))))
    return out


def jensen_interpolation(i, params):
    first, second = i["weights"], i["alternative"]
    return _interpolation(first.mu, first.lam, first.omega.tolist(),
                          second.omega.tolist(), i["phi"], i["operators"],
                          params["f"])


def jensen_stochastic(i, params):
    n = i["stochastic"].n
    uniform = [1.0 / n] * n
    return _interpolation(uniform, uniform,
                          (n * i["stochastic"].entries).tolist(),
                          (n * i["alternative"].entries).tolist(), i["phi"],
                          i["operators"], params["f"])


def entropy_refinement(i, params):
    a, t = _values(i["A"]), params["t"]
    w = (1.0 - t) * i["B"].entries + t * i["C"].entries
    mixtures = [sum(wij * x for wij, x in zip(row, a)) for row in w]
    M = sum(_neg_entropy(x) for x in mixtures)
    return [("upper", math.log(len(a)) - M),
            ("lower", M - sum(_neg_entropy(x) for x in a))]


def duality(i, params):
    a, b, q = i["A"].array[0, 0].real, i["B"].array[0, 0].real, params["q"]

    def S(x, y, q):
        return x * (y / x) ** q * math.log(y / x)
    return [("identity", -abs(S(a, b, q) + S(b, a, 1.0 - q)))]


def subadditivity(i, params):
    a, b, q = _values(i["A"]), _values(i["B"]), params["q"]
    return [("subadditive", sum(a) ** (1 - q) * sum(b) ** q
             - sum(x ** (1 - q) * y ** q for x, y in zip(a, b)))]


def contraction_jensen(i, params):
    f, t0 = SCALAR[params["f"]], params["t0"]
    gains = [abs(c[0, 0]) ** 2 for c in i["contractions"].operators]
    x = _values(i["operators"])
    defect = 1.0 - sum(gains)
    return [("jensen", f(sum(g * v for g, v in zip(gains, x)) + t0 * defect)
             - sum(g * f(v) for g, v in zip(gains, x)) - f(t0) * defect)]


ORACLES = {
    "entropy-upper": entropy_upper,
    "entropy-lower": entropy_lower,
    "furuta-chain": furuta_chain,
    "monotone-concave": monotone_concave,
    "inverse-sum-log": inverse_sum_log,
    "entropy-inequality": entropy_inequality,
    "kl-divergence": kl_divergence,
    "two-operator": two_operator,
    "jensen-refinement": jensen_refinement,
    "jensen-interpolation": jensen_interpolation,
    "jensen-stochastic": jensen_stochastic,
    "entropy-refinement": entropy_refinement,
    "duality": duality,
    "subadditivity": subadditivity,
    "contraction-jensen": contraction_jensen,
}


class TestScalarOracle:

    def test_every_suite_has_an_oracle(self):
        assert set(ORACLES) == set(suites.SUITE_IDS)

    @pytest.mark.parametrize("suite_id", suites.SUITE_IDS)
    def test_agrees(self, suite_id):
        suite = suites.lookup_suite(suite_id)
        cfg = SuiteConfig(suite_id, trials=15, dim=1, n=3, m=2, k=3,
                          sweep=True, master_seed=5, eig_range=(0.5, 1.5))
        for trial in range(cfg.trials):
            gen = cfg.generator_config(trial)
            params = suite.parameters(cfg, trial)
            instance = suite.generate(cfg, gen, params, gen.rng(),
                                      WarningCounts())
            reports = suite.evaluate(instance, params, cfg.tolerances)
            expected = ORACLES[suite_id](instance, params)
            assert [r.label for r in reports] == [l for l, _ in expected]
            for report, (label, want) in zip(reports, expected):
                if want is None:
                    assert report.slack_min_eig is None, label
                    continue
                got = report.slack_min_eig
                assert abs(got - want) <= 1e-12 * max(1.0, abs(want)), \
                    (suite_id, trial, label, got, want)
