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
Inequality checks and the suite registry.

Each check evaluates both sides of an operator inequality on one instance
and returns a list of :class:`SlackReport` records; an inequality holds iff
its slack matrix (greater side minus lesser side) is positive semidefinite.
A :class:`Suite` pairs a check with a generator for its instances and a
parameter grid.
"""

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, Optional
import logging

import numpy

from .entropy import (PairSpectrum, check_lengths, entropy_dual,
                      generalized_entropy_term, natural_mean_sum,
                      natural_power_mean)
from .errors import (DomainViolation, HypothesisUnmet, ParameterOutOfRange,
                     UnknownSuite)
from .functions import LOG, NEG_ENTROPY, catalog_lookup
from .instances import (GeneratorConfig, generate_two_operator_pair,
                        random_contractions,
                        random_doubly_stochastic, random_hpd,
                        random_operator_tuple, random_positive_map,
                        random_probability_vector,
                        random_resolution_of_identity, random_weight_function,
                        sinkhorn_doubly_stochastic, two_operator_hypotheses,
                        weights_from_doubly_stochastic)
from .maps import apply_positive_map
from .matrix import (DEFAULT_TOLERANCES, HermitianMatrix, add, apply_function,
                     congruence, conjugate, diagonal, eigenvalues,
                     frobenius_norm, identity, loewner_leq, matrix_power,
                     min_eigenvalue, resolve_tolerances, scale,
                     spectral_condition, subtract, total)

logger = logging.getLogger("opentropy.suites")

PASS = "pass"
FAIL = "fail"
UNMET = "hypothesis_unmet"
ERROR = "error"
VERDICTS = (PASS, FAIL, UNMET, ERROR)

#: t0 values cycled by ``--sweep``.
T0_SWEEP = (0.1, 1.0, 10.0)

#: Mixing parameters and weights of the interpolation concavity grid.
T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
ETA_GRID = (0.25, 0.5)


## Reports ####################################################################


@dataclass(frozen=True)
class SlackReport(object):
    """
    One checked inequality on one instance

    ``slack_min_eig`` is ``None`` when the slack could not be evaluated
    because an f-argument left the domain of f while the hypotheses were
    unmet. For equality checks it is ``-||slack||_F``.
    """
    suite_id: str
    label: str
    hypothesis_satisfied: bool
    slack_min_eig: Optional[float]
    slack_norm: Optional[float]
    scale: float
    verdict: str
    condition: Optional[float] = None
    detail: str = ""
    trial_index: int = 0
    instance_seed: str = ""
    parameters: dict = field(default_factory=dict)
    slack: Optional[HermitianMatrix] = field(default=None, compare=False,
                                             repr=False)

    def to_dict(self):
        return {"suite_id": self.suite_id,
                "label": self.label,
                "trial_index": self.trial_index,
                "hypothesis_satisfied": self.hypothesis_satisfied,
                "slack_min_eig": self.slack_min_eig,
                "slack_norm": self.slack_norm,
                "scale": self.scale,
                "verdict": self.verdict,
                "condition": self.condition,
                "detail": self.detail,
                "instance_seed": self.instance_seed,
                "parameters": self.parameters}

    def stamped(self, trial_index, instance_seed, parameters):
        return replace(self, trial_index=trial_index,
                       instance_seed=instance_seed,
                       parameters=dict(parameters))


def make_report(suite_id, label, slack, hypothesis, size, tol=None,
                equality=False, detail=""):
    """
    Grade `slack`: ``pass`` iff the hypotheses hold and its smallest
    eigenvalue is at least ``-tol_order * max(1, size)``.
    """
    tol = resolve_tolerances(tol)
    norm = frobenius_norm(slack)
    if equality:
        low, condition = -norm, None
    else:
        values = eigenvalues(slack, tol)
        low, condition = float(values[0]), spectral_condition(values)

    if not hypothesis:
        verdict = UNMET
    elif low >= -tol.tol_order * max(1.0, size):
        verdict = PASS
    else:
        verdict = FAIL
        logger.warning("%s/%s failed: slack %r at scale %r (condition %r)",
                       suite_id, label, low, size, condition)
    return SlackReport(suite_id, label, bool(hypothesis), low, norm,
                       float(size), verdict, condition, detail, slack=slack)


def unevaluable_report(suite_id, label, size, violation):
    """The f-argument left dom(f) while the hypotheses were unmet."""
    logger.warning("%s/%s: f-argument left the domain at eigenvalue %r",
                   suite_id, label, violation.eigenvalue)
    return SlackReport(suite_id, label, False, None, None, float(size), UNMET,
                       detail="domain exit at eigenvalue %r"
                       % violation.eigenvalue)


def error_report(suite_id, error):
    return SlackReport(suite_id, "error", False, None, None, 0.0, ERROR,
                       detail="%s: %s" % (type(error).__name__, error))


## Helpers ####################################################################


def _size(*objects):
    """Largest Frobenius norm among the matrices in `objects`."""
    norms = [0.0]
    for obj in objects:
        if isinstance(obj, HermitianMatrix):
            norms.append(frobenius_norm(obj))
        else:
            norms.extend(frobenius_norm(m) for m in obj)
    return max(norms)


def _check_t0(t0):
    if not t0 > 0:
        raise ParameterOutOfRange("t0 must be strictly positive (got %r)."
                                  % t0)


def _bound_hypothesis(f):
    return (f.is_operator_monotone and f.is_operator_concave
            and f.is_nonnegative_on_domain)


def _image(argument, f, hypothesis, tol):
    """
    ``f(argument)``, or ``None`` with the violation when the argument
    leaves dom(f) and the hypotheses are unmet.
    """
    try:
        return apply_function(argument, f, tol), None
    except DomainViolation as e:
        if hypothesis:
            raise
        return None, e


def _pairs(A, B, tol):
    check_lengths(A, B)
    return [PairSpectrum(a, b, tol) for a, b in zip(A, B)]


def _mean_sum(pairs, q):
    return total(pair.mean(q) for pair in pairs)


def _entropy_sum(pairs, q, f):
    return total(pair.entropy(q, f) for pair in pairs)


def _shifted_bound(suite_id, label, f, means, residual, t0, offset,
                   hypothesis, size, tol, sign):
    """
    ``sign * (f[means + t0 R] - f(t0) R) + offset`` with the residual `R`;
    every upper and lower entropy bound has this shape.
    """
    argument = add(means, scale(residual, t0))
    image, violation = _image(argument, f, hypothesis, tol)
    if image is None:
        return unevaluable_report(suite_id, label, size, violation)
    bound = subtract(image, scale(residual, f.at(t0)))
    slack = add(scale(bound, sign), offset)
    return make_report(suite_id, label, slack, hypothesis, size, tol)


## Entropy bounds #############################################################


def check_entropy_upper(A, B, p, f, t0=1.0, tol=None):
    """
    ``f[sum A_j #_{p+1} B_j + t0 R] - f(t0) R >= S_p^f(A | B)`` with
    ``R = I - sum A_j #_p B_j``; holds for resolutions of the identity,
    p in [0, 1] and non-negative operator monotone f.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    _check_t0(t0)
    pairs = _pairs(A, B, tol)
    hypothesis = (A.sums_to_identity and B.sums_to_identity
                  and 0.0 <= p <= 1.0 and _bound_hypothesis(f))
    residual = subtract(identity(A.dim), _mean_sum(pairs, p))
    entropy = _entropy_sum(pairs, p, f)
    return [_shifted_bound("entropy-upper", "upper", f,
                           _mean_sum(pairs, p + 1.0), residual, t0,
                           scale(entropy, -1.0), hypothesis, _size(A, B),
                           tol, 1.0)]


def check_entropy_lower(A, B, p, f, t0=1.0, tol=None):
    """
    ``S_p^f(A | B) >= f(t0) R - f[sum A_j #_{p-1} B_j + t0 R]`` for p in
    [2, 3]

    ``R`` may be indefinite here, so the bracketed argument can leave the
    domain of f; the hypotheses then count as unmet.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    _check_t0(t0)
    pairs = _pairs(A, B, tol)
    residual = subtract(identity(A.dim), _mean_sum(pairs, p))
    lower = _mean_sum(pairs, p - 1.0)
    argument = add(lower, scale(residual, t0))
    in_domain = min_eigenvalue(argument, tol) > f.domain_floor
    hypothesis = (A.sums_to_identity and B.sums_to_identity
                  and 2.0 <= p <= 3.0 and _bound_hypothesis(f) and in_domain)
    entropy = _entropy_sum(pairs, p, f)
    return [_shifted_bound("entropy-lower", "lower", f, lower, residual, t0,
                           entropy, hypothesis, _size(A, B), tol, 1.0)]


def check_furuta_chain(A, B, p, t0=1.0, tol=None):
    """
    Both logarithmic bounds on ``sum S_p(A_j | B_j)`` under the gate
    ``sum A_j #_p B_j <= I``, p in [0, 1].
    """
    tol = resolve_tolerances(tol)
    _check_t0(t0)
    pairs = _pairs(A, B, tol)
    means = _mean_sum(pairs, p)
    gate = loewner_leq(means, identity(A.dim), tol)
    hypothesis = gate.holds and 0.0 <= p <= 1.0
    residual = subtract(identity(A.dim), means)
    entropy = _entropy_sum(pairs, p, LOG)
    size = _size(A, B)
    return [_shifted_bound("furuta-chain", "upper", LOG,
                           _mean_sum(pairs, p + 1.0), residual, t0,
                           scale(entropy, -1.0), hypothesis, size, tol, 1.0),
            _shifted_bound("furuta-chain", "lower", LOG,
                           _mean_sum(pairs, p - 1.0), residual, t0, entropy,
                           hypothesis, size, tol, 1.0)]


def check_monotone_concave_bounds(A, B, f, tol=None):
    """
    ``f(sum B_j A_j^{-1} B_j) >= S_1^f(A | B)`` and ``f(I) >= S_0^f(A | B)``
    for resolutions of the identity

    Both are Jensen's operator inequality for ``sum C_j^* C_j = I``, with
    ``C_j = (A_j^{-1/2} B_j A_j^{-1/2})^{1/2} A_j^{1/2}`` and
    ``C_j = A_j^{1/2}``, so `f` need not be non-negative; negative-valued
    functions such as log count as meeting the hypotheses.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    pairs = _pairs(A, B, tol)
    hypothesis = (A.sums_to_identity and B.sums_to_identity
                  and f.is_operator_monotone and f.is_operator_concave)
    size = _size(A, B)
    quadratic = total(congruence(b.array, matrix_power(a, -1.0, tol))
                      for a, b in zip(A, B))
    first, violation = _image(quadratic, f, hypothesis, tol)
    if first is None:
        reports = [unevaluable_report("monotone-concave", "first", size,
                                      violation)]
    else:
        reports = [make_report("monotone-concave", "first",
                               subtract(first, _entropy_sum(pairs, 1.0, f)),
                               hypothesis, size, tol)]
    unit = scale(identity(A.dim), f.at(1.0))
    reports.append(make_report("monotone-concave", "second",
                               subtract(unit, _entropy_sum(pairs, 0.0, f)),
                               hypothesis, size, tol))
    return reports


def check_inverse_sum_log(A, tol=None):
    """``log(sum A_j^{-1}) >= (log n) I - (1/n) sum log A_j``"""
    tol = resolve_tolerances(tol)
    n = len(A)
    inverse = total(matrix_power(a, -1.0, tol) for a in A)
    logs = total(apply_function(a, LOG, tol) for a in A)
    slack = add(subtract(apply_function(inverse, LOG, tol),
                         scale(identity(A.dim), numpy.log(n))),
                scale(logs, 1.0 / n))
    return [make_report("inverse-sum-log", "bound", slack,
                        A.sums_to_identity, _size(A), tol)]


def check_entropy_inequality(A, tol=None):
    """
    ``-sum A_j log A_j <= (log n) I``, in the symmetrised form
    ``A^{1/2} log(A) A^{1/2}`` and in the plain form.
    """
    tol = resolve_tolerances(tol)
    ceiling = scale(identity(A.dim), numpy.log(len(A)))
    symmetrised = total(conjugate(matrix_power(a, 0.5, tol),
                                  apply_function(a, LOG, tol)) for a in A)
    plain = total(apply_function(a, NEG_ENTROPY, tol) for a in A)
    size = _size(A)
    return [make_report("entropy-inequality", "symmetrised",
                        add(ceiling, symmetrised), A.sums_to_identity, size,
                        tol),
            make_report("entropy-inequality", "plain",
                        subtract(ceiling, plain), A.sums_to_identity, size,
                        tol)]


def check_kl_divergence(a, b, tol=None):
    """``-sum a_j log(b_j / a_j) >= 0`` for probability vectors."""
    a = numpy.asarray(a, dtype=float)
    b = numpy.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ParameterOutOfRange("Probability vectors of different lengths.")
    hypothesis = bool((a > 0).all() and (b > 0).all()
                      and abs(a.sum() - 1.0) <= 1e-12
                      and abs(b.sum() - 1.0) <= 1e-12)
    with numpy.errstate(all="ignore"):
        value = -numpy.sum(a * numpy.log(b / a))
    size = max(numpy.linalg.norm(a), numpy.linalg.norm(b))
    return [make_report("kl-divergence", "divergence", diagonal([value]),
                        hypothesis, size, tol)]


def check_two_operator_bounds(A, B, p, f, t0=1.0, tol=None):
    """
    Both bounds on ``S_p^f(A | B)`` for a single pair with
    ``A #_{p-2} B <= I`` and ``B^2 <= A^2``, p in [0, 1], together with the
    intermediate claim ``A #_p B <= I``.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    _check_t0(t0)
    gates = two_operator_hypotheses(A, B, p, tol)
    hypothesis = all(gates) and 0.0 <= p <= 1.0 and _bound_hypothesis(f)
    pair = PairSpectrum(A, B, tol)
    means = pair.mean(p)
    residual = subtract(identity(A.dim), means)
    entropy = pair.entropy(p, f)
    size = _size(A, B)
    return [_shifted_bound("two-operator", "upper", f, pair.mean(p + 1.0),
                           residual, t0, scale(entropy, -1.0), hypothesis,
                           size, tol, 1.0),
            _shifted_bound("two-operator", "lower", f, pair.mean(p - 1.0),
                           residual, t0, entropy, hypothesis, size, tol, 1.0),
            make_report("two-operator", "mean-below-identity", residual,
                        all(gates) and 0.0 <= p <= 1.0, size, tol)]


## Jensen refinements #########################################################


class _JensenTerms(object):
    """
    The pieces shared by the Jensen refinement checks: ``Phi(A_j)``,
    ``Phi(f(A_j))`` and the two outer terms of the chain.
    """

    def __init__(self, lam, phi, operators, f, tol):
        if len(lam) != len(operators):
            raise ParameterOutOfRange("Need one weight per operator "
                                      "(%d vs %d)."
                                      % (len(lam), len(operators)))
        self.lam = lam
        self.f = f
        self.tol = tol
        self.images = [apply_positive_map(phi, a) for a in operators]
        self.left = apply_function(total(scale(x, l) for l, x in
                                         zip(lam, self.images)), f, tol)
        self.right = total(scale(apply_positive_map(
            phi, apply_function(a, f, tol)), l)
            for l, a in zip(lam, operators))
        self.size = _size(operators)

    def rows(self, weights):
        """``f(sum_j omega_ij lam_j Phi(A_j))`` for every i."""
        return [apply_function(total(scale(x, w * l) for w, l, x in
                                     zip(row, self.lam, self.images)),
                               self.f, self.tol)
                for row in weights.omega]

    @staticmethod
    def average(mu, rows):
        return total(scale(r, m) for m, r in zip(mu, rows))


def check_jensen_refinement(weights, phi, operators, f, tol=None):
    """
    ``f(sum lam_j Phi(A_j)) >= sum_i mu_i f(sum_j omega_ij lam_j Phi(A_j))
    >= sum lam_j Phi(f(A_j))`` for operator concave f.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    terms = _JensenTerms(weights.lam, phi, operators, f, tol)
    middle = terms.average(weights.mu, terms.rows(weights))
    return [make_report("jensen-refinement", "left",
                        subtract(terms.left, middle), f.is_operator_concave,
                        terms.size, tol),
            make_report("jensen-refinement", "right",
                        subtract(middle, terms.right), f.is_operator_concave,
                        terms.size, tol)]


def _block_diagonal(matrices):
    dim = sum(m.dim for m in matrices)
    out = numpy.zeros((dim, dim), dtype=complex)
    at = 0
    for m in matrices:
        out[at:at + m.dim, at:at + m.dim] = m.array
        at += m.dim
    return HermitianMatrix.wrap(out)


def check_jensen_interpolation(first, second, phi, operators, f,
                               t_grid=T_GRID, eta_grid=ETA_GRID, tol=None,
                               suite_id="jensen-interpolation"):
    """
    Along ``omega(t) = (1 - t) first + t second``: the refinement chain at
    every t in `t_grid`, and operator concavity of
    ``F(t) = sum_i mu_i f(sum_j omega_ij(t) lam_j Phi(A_j))`` and of each
    of its rows on every grid triple ``(t1 < t2, eta)``.
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    concave = f.is_operator_concave
    terms = _JensenTerms(first.lam, phi, operators, f, tol)
    rows = {}
    for t in sorted(set(t_grid) | set(eta * t1 + (1.0 - eta) * t2
                                       for t1, t2 in combinations(t_grid, 2)
                                       for eta in eta_grid)):
        rows[t] = terms.rows(first.mix(second, t))

    def F(t):
        return terms.average(first.mu, rows[t])

    reports = []
    for t in t_grid:
        reports.append(make_report(suite_id, "left@%g" % t,
                                   subtract(terms.left, F(t)), concave,
                                   terms.size, tol))
        reports.append(make_report(suite_id, "right@%g" % t,
                                   subtract(F(t), terms.right), concave,
                                   terms.size, tol))
    for t1, t2 in combinations(t_grid, 2):
        for eta in eta_grid:
            t = eta * t1 + (1.0 - eta) * t2
            label = "%g,%g,%g" % (t1, t2, eta)
            chord = add(scale(F(t1), eta), scale(F(t2), 1.0 - eta))
            reports.append(make_report(suite_id, "concave@" + label,
                                       subtract(F(t), chord), concave,
                                       terms.size, tol))
            row_slacks = [subtract(r, add(scale(r1, eta),
                                          scale(r2, 1.0 - eta)))
                          for r, r1, r2 in zip(rows[t], rows[t1], rows[t2])]
            reports.append(make_report(suite_id, "rows-concave@" + label,
                                       _block_diagonal(row_slacks), concave,
                                       terms.size, tol))
    return reports


def check_entropy_refinement(A, B, C, t, tol=None):
    """
    With ``M(t) = sum_i eta(sum_j w_ij A_j)``, ``w = (1 - t) B + t C`` and
    ``eta(x) = -x log x``: ``(log n) I >= M(t) >= -sum A_j log A_j``.

    :raises DomainViolation: if a mixture is not strictly positive
    """
    tol = resolve_tolerances(tol)
    if not 0.0 <= t <= 1.0:
        raise ParameterOutOfRange("t must lie in [0, 1] (got %r)." % t)
    n = len(A)
    if B.n != n or C.n != n:
        raise ParameterOutOfRange("Stochastic matrices must be %d x %d." % (n,
                                                                          n))
    w = (1.0 - t) * B.entries + t * C.entries
    mixtures = [total(scale(a, w_ij) for w_ij, a in zip(row, A)) for row in w]
    for i, mixture in enumerate(mixtures):
        low = eigenvalues(mixture, tol)[0]
        if low < tol.eig_floor:
            raise DomainViolation("Mixture %d has eigenvalue %r below the "
                                  "floor." % (i, low), eigenvalue=float(low))
    M = total(apply_function(x, NEG_ENTROPY, tol) for x in mixtures)
    floor = total(apply_function(a, NEG_ENTROPY, tol) for a in A)
    ceiling = scale(identity(A.dim), numpy.log(n))
    size = _size(A)
    return [make_report("entropy-refinement", "upper", subtract(ceiling, M),
                        A.sums_to_identity, size, tol),
            make_report("entropy-refinement", "lower", subtract(M, floor),
                        A.sums_to_identity, size, tol)]


## Identities and auxiliary inequalities ######################################


def check_entropy_duality(A, B, q, tol=None):
    """``S_q(A | B) = -S_{1-q}(B | A)``, as an equality check."""
    tol = resolve_tolerances(tol)
    slack = subtract(generalized_entropy_term(A, B, q, LOG, tol),
                     entropy_dual(A, B, q, tol))
    size = frobenius_norm(A) + frobenius_norm(B)
    return [make_report("duality", "identity", slack, True, size, tol,
                        equality=True)]


def check_natural_subadditivity(A, B, q, tol=None):
    """``sum A_j #_q B_j <= (sum A_j) #_q (sum B_j)`` for q in [0, 1]."""
    tol = resolve_tolerances(tol)
    check_lengths(A, B)
    slack = subtract(natural_power_mean(A.total(), B.total(), q, tol),
                     natural_mean_sum(A, B, q, tol))
    return [make_report("subadditivity", "subadditive", slack,
                        0.0 <= q <= 1.0, _size(A, B), tol)]


def check_contraction_jensen(contractions, operators, t0, f, tol=None):
    """
    ``f(sum C_j* X_j C_j + t0 D) >= sum C_j* f(X_j) C_j + f(t0) D`` with
    ``D = I - sum C_j* C_j``, for ``sum C_j* C_j <= I`` and operator
    concave f.

    :raises HypothesisUnmet: if the contraction gate fails
    """
    tol = resolve_tolerances(tol)
    f = catalog_lookup(f)
    _check_t0(t0)
    if len(contractions.operators) != len(operators):
        raise ParameterOutOfRange("Need one contraction per operator.")
    defect = contractions.defect()
    if not loewner_leq(contractions.gram(), identity(defect.dim), tol):
        raise HypothesisUnmet("Contractions violate sum C* C <= I.")
    if not t0 > f.domain_floor:
        raise ParameterOutOfRange("t0 lies outside the domain of '%s'."
                                  % f.name)
    inner = total(congruence(c, x)
                  for c, x in zip(contractions.operators, operators))
    argument = add(inner, scale(defect, t0))
    image = apply_function(argument, f, tol)
    outer = total(congruence(c, apply_function(x, f, tol))
                  for c, x in zip(contractions.operators, operators))
    slack = subtract(subtract(image, outer), scale(defect, f.at(t0)))
    return [make_report("contraction-jensen", "jensen", slack,
                        f.is_operator_concave, _size(operators), tol)]


## Registry ###################################################################


@dataclass(frozen=True)
class SuiteConfig(object):
    """
    Everything that determines a suite run.

    ``p`` is the suite's real parameter (p, q or t); ``None`` cycles the
    suite's grid by trial index. ``sweep`` also cycles ``t0`` and ``f``.
    """
    suite_id: str = "entropy-upper"
    trials: int = 100
    dim: int = 3
    n: int = 3
    m: int = 3
    k: int = 4
    p: Optional[float] = None
    t0: float = 1.0
    f: Optional[str] = None
    sweep: bool = False
    master_seed: int = 0
    eig_range: tuple = (0.1, 2.0)
    tolerances: object = DEFAULT_TOLERANCES
    worst: int = 5
    workers: int = 1

    def __post_init__(self):
        _check_t0(self.t0)
        for name in ("dim", "n", "m", "k", "workers"):
            if getattr(self, name) < 1:
                raise ParameterOutOfRange("%s must be at least 1." % name)
        if self.trials < 0 or self.worst < 0:
            raise ParameterOutOfRange("trials and worst must be "
                                      "non-negative.")
        if self.f is not None:
            catalog_lookup(self.f)

    def generator_config(self, trial_index):
        return GeneratorConfig(master_seed=self.master_seed, dim=self.dim,
                               n=self.n, eig_range=tuple(self.eig_range),
                               trial_index=trial_index,
                               suite_id=self.suite_id, tol=self.tolerances)

    def to_dict(self):
        return {"suite_id": self.suite_id, "trials": self.trials,
                "dim": self.dim, "n": self.n, "m": self.m, "k": self.k,
                "p": self.p, "t0": self.t0, "f": self.f, "sweep": self.sweep,
                "master_seed": self.master_seed,
                "eig_range": list(self.eig_range),
                "tol_eig": self.tolerances.tol_eig,
                "tol_order": self.tolerances.tol_order,
                "eig_floor": self.tolerances.eig_floor}


@dataclass(frozen=True)
class Suite(object):
    """
    A registered inequality suite

    ``generate(cfg, gen, params, rng, warnings)`` draws an instance dict;
    ``evaluate(instance, params, tol)`` checks it.
    """
    suite_id: str
    summary: str
    generate: Callable
    evaluate: Callable
    parameter: Optional[str] = None
    grid: tuple = ()
    functions: tuple = ()

    def parameters(self, cfg, trial_index):
        """The ``{p, t0, f}`` used by trial `trial_index` of `cfg`."""
        params = {}
        cycle = trial_index
        if self.parameter is not None:
            if cfg.p is not None:
                params[self.parameter] = float(cfg.p)
            else:
                params[self.parameter] = self.grid[cycle % len(self.grid)]
                cycle //= len(self.grid)
        if self.functions:
            if cfg.f is not None:
                params["f"] = catalog_lookup(cfg.f).name
            elif cfg.sweep:
                params["f"] = self.functions[cycle % len(self.functions)]
                cycle //= len(self.functions)
            else:
                params["f"] = self.functions[0]
        params["t0"] = T0_SWEEP[cycle % len(T0_SWEEP)] if cfg.sweep \
            else cfg.t0
        return params

    def describe(self):
        return {"id": self.suite_id, "summary": self.summary,
                "parameter": self.parameter, "grid": list(self.grid),
                "functions": list(self.functions)}


def _resolution_pair(cfg, gen, params, rng, warnings):
    return {"A": random_resolution_of_identity(gen, rng, warnings=warnings),
            "B": random_resolution_of_identity(gen, rng, warnings=warnings)}


def _resolution(cfg, gen, params, rng, warnings):
    return {"A": random_resolution_of_identity(gen, rng, warnings=warnings)}


def _gated_tuples(cfg, gen, params, rng, warnings):
    # spectra in (0, 1/n] keep sum A_j #_p B_j below the identity
    factor = 1.0 / (gen.n * gen.eig_range[1])
    return {"A": random_operator_tuple(gen, rng, factor),
            "B": random_operator_tuple(gen, rng, factor)}


def _positive_tuples(cfg, gen, params, rng, warnings):
    return {"A": random_operator_tuple(gen, rng),
            "B": random_operator_tuple(gen, rng)}


def _positive_pair(cfg, gen, params, rng, warnings):
    return {"A": random_hpd(gen, rng), "B": random_hpd(gen, rng)}


def _probability_pair(cfg, gen, params, rng, warnings):
    return {"a": random_probability_vector(gen.n, rng),
            "b": random_probability_vector(gen.n, rng)}


def _two_operator(cfg, gen, params, rng, warnings):
    return {"pair": generate_two_operator_pair(gen, params["p"], rng,
                                               warnings=warnings)}


def _jensen_operators(cfg, gen, rng):
    return {"phi": random_positive_map("kraus", gen.dim, gen.dim, cfg.k, rng),
            "operators": [random_hpd(gen, rng) for _ in range(gen.n)]}


def _jensen_single(cfg, gen, params, rng, warnings):
    instance = {"weights": random_weight_function(cfg.m, gen.n, rng)}
    instance.update(_jensen_operators(cfg, gen, rng))
    return instance


def _jensen_pair(cfg, gen, params, rng, warnings):
    first = random_weight_function(cfg.m, gen.n, rng)
    instance = {"weights": first,
                "alternative": random_weight_function(
                    cfg.m, gen.n, rng, marginals=(first.mu, first.lam))}
    instance.update(_jensen_operators(cfg, gen, rng))
    return instance


def _jensen_stochastic(cfg, gen, params, rng, warnings):
    instance = {"stochastic": random_doubly_stochastic(gen.n, cfg.k, rng),
                "alternative": sinkhorn_doubly_stochastic(gen.n, rng)}
    instance.update(_jensen_operators(cfg, gen, rng))
    return instance


def _refinement(cfg, gen, params, rng, warnings):
    return {"A": random_resolution_of_identity(gen, rng, warnings=warnings),
            "B": random_doubly_stochastic(gen.n, cfg.k, rng),
            "C": random_doubly_stochastic(gen.n, cfg.k, rng)}


def _contractions(cfg, gen, params, rng, warnings):
    return {"contractions": random_contractions(gen.n, gen.dim, rng),
            "operators": [random_hpd(gen, rng) for _ in range(gen.n)]}


def _evaluate_stochastic(i, params, tol):
    return check_jensen_interpolation(
        weights_from_doubly_stochastic(i["stochastic"]),
        weights_from_doubly_stochastic(i["alternative"]), i["phi"],
        i["operators"], params["f"], tol=tol, suite_id="jensen-stochastic")


_CONCAVE = ("pow_0.5", "ratio", "log1p", "log", "neg_entropy")
_BOUNDED = ("pow_0.5", "ratio", "log1p")

SUITES = (
    Suite("entropy-upper",
          "Upper bound on the generalized operator Shannon entropy",
          _resolution_pair,
          lambda i, p, tol: check_entropy_upper(i["A"], i["B"], p["p"],
                                                p["f"], p["t0"], tol),
          "p", (0.0, 0.25, 0.5, 0.75, 1.0), _BOUNDED),
    Suite("entropy-lower",
          "Lower bound on the generalized operator Shannon entropy",
          _resolution_pair,
          lambda i, p, tol: check_entropy_lower(i["A"], i["B"], p["p"],
                                                p["f"], p["t0"], tol),
          "p", (2.0, 2.5, 3.0), _BOUNDED),
    Suite("furuta-chain",
          "Logarithmic bounds on the Tsallis-type relative entropy sum",
          _gated_tuples,
          lambda i, p, tol: check_furuta_chain(i["A"], i["B"], p["p"],
                                               p["t0"], tol),
          "p", (0.0, 0.25, 0.5, 0.75, 1.0)),
    Suite("monotone-concave",
          "Bounds for operator monotone and concave functions",
          _resolution_pair,
          lambda i, p, tol: check_monotone_concave_bounds(i["A"], i["B"],
                                                          p["f"], tol),
          functions=("pow_0.5", "ratio")),
    Suite("inverse-sum-log", "Logarithm of the inverse sum", _resolution,
          lambda i, p, tol: check_inverse_sum_log(i["A"], tol)),
    Suite("entropy-inequality", "Operator entropy inequality", _resolution,
          lambda i, p, tol: check_entropy_inequality(i["A"], tol)),
    Suite("kl-divergence", "Non-negativity of the Kullback-Leibler "
          "divergence", _probability_pair,
          lambda i, p, tol: check_kl_divergence(i["a"], i["b"], tol)),
    Suite("two-operator", "Two-operator entropy bounds", _two_operator,
          lambda i, p, tol: check_two_operator_bounds(
              i["pair"].A, i["pair"].B, p["p"], p["f"], p["t0"], tol),
          "p", (0.0, 0.25, 0.5, 0.75, 1.0), _BOUNDED),
    Suite("jensen-refinement", "Refined Jensen inequality for positive "
          "maps", _jensen_single,
          lambda i, p, tol: check_jensen_refinement(
              i["weights"], i["phi"], i["operators"], p["f"], tol),
          functions=_CONCAVE),
    Suite("jensen-interpolation", "Interpolated Jensen refinements along "
          "a segment of weight functions", _jensen_pair,
          lambda i, p, tol: check_jensen_interpolation(
              i["weights"], i["alternative"], i["phi"], i["operators"],
              p["f"], tol=tol),
          functions=_CONCAVE),
    Suite("jensen-stochastic", "Interpolated Jensen refinements between "
          "doubly stochastic matrices", _jensen_stochastic,
          _evaluate_stochastic, functions=_CONCAVE),
    Suite("entropy-refinement", "Refinement of the operator entropy "
          "inequality", _refinement,
          lambda i, p, tol: check_entropy_refinement(i["A"], i["B"], i["C"],
                                                     p["t"], tol),
          "t", (0.0, 0.5, 1.0)),
    Suite("duality", "S_q(A|B) = -S_{1-q}(B|A)", _positive_pair,
          lambda i, p, tol: check_entropy_duality(i["A"], i["B"], p["q"],
                                                  tol),
          "q", (-1.0, 0.0, 0.3, 0.5, 1.0, 2.0)),
    Suite("subadditivity", "Subadditivity of the natural power mean",
          _positive_tuples,
          lambda i, p, tol: check_natural_subadditivity(i["A"], i["B"],
                                                        p["q"], tol),
          "q", (0.0, 0.25, 0.5, 0.75, 1.0)),
    Suite("contraction-jensen", "Jensen operator inequality for "
          "contractions", _contractions,
          lambda i, p, tol: check_contraction_jensen(
              i["contractions"], i["operators"], p["t0"], p["f"], tol),
          functions=_CONCAVE),
)

_REGISTRY = {suite.suite_id: suite for suite in SUITES}
SUITE_IDS = tuple(suite.suite_id for suite in SUITES)


def lookup_suite(suite_id):
    """:raises UnknownSuite:"""
    try:
        return _REGISTRY[suite_id]
    except KeyError:
        raise UnknownSuite("Unknown suite '%s'; choose from %s."
                           % (suite_id, ", ".join(SUITE_IDS)))
