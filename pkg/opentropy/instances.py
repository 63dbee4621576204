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
Seeded random generators for every object the inequality suites consume,
plus the perturbation and JSON encoding used by the adversarial search and
by the ``gen`` command.

Every generator takes an explicit :class:`numpy.random.Generator`; a
:class:`GeneratorConfig` derives that generator from the master seed, the
suite id and the trial index, so any trial can be replayed on its own.
"""

from dataclasses import dataclass, field, replace
from functools import singledispatch
import hashlib
import itertools
import logging

import numpy

from .entropy import OperatorTuple, natural_power_mean
from .errors import (DegenerateInstance, DimensionMismatch, InvalidKind,
                     OpentropyException, ParameterOutOfRange,
                     RejectionBudgetExhausted, SinkhornNonConvergence)
from .maps import (PositiveMapDescriptor, compression_map, depolarizing_map,
                   identity_map, kraus_map)
from .matrix import (DEFAULT_TOLERANCES, HermitianMatrix, add, conjugate,
                     identity, loewner_leq, matrix_power,
                     min_eigenvalue, scale, total, trace)
from .warnings import WarningCounts

logger = logging.getLogger("opentropy.instances")

#: Redraws allowed before a resolution of the identity is declared degenerate.
RESOLUTION_ATTEMPTS = 100

#: Iteration cap of Sinkhorn scaling.
SINKHORN_MAX_ITERATIONS = 10000

#: Relative marginal error at which Sinkhorn scaling stops.
SINKHORN_THRESHOLD = 1e-12

#: Smallest entry of a generated probability vector.
PROBABILITY_FLOOR = 1e-3


def suite_key(suite_id):
    """A stable 64-bit integer derived from `suite_id`."""
    digest = hashlib.sha256(suite_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class GeneratorConfig(object):
    """
    Where a trial's randomness comes from, and the shape of its objects

    The trial's generator is seeded from
    ``(master_seed, suite_key(suite_id), trial_index)``.
    """
    master_seed: int = 0
    dim: int = 3
    n: int = 3
    eig_range: tuple = (0.1, 2.0)
    trial_index: int = 0
    suite_id: str = ""
    tol: object = DEFAULT_TOLERANCES

    def __post_init__(self):
        if not 0 <= self.master_seed < 2 ** 64:
            raise ParameterOutOfRange("Seed must lie in [0, 2^64).")
        if self.dim < 1 or self.n < 1:
            raise ParameterOutOfRange("dim and n must be at least 1.")
        if self.trial_index < 0:
            raise ParameterOutOfRange("Trial index must be non-negative.")
        lo, hi = self.eig_range
        if not self.tol.eig_floor <= lo <= hi:
            raise ParameterOutOfRange(
                "Eigenvalue range (%r, %r) must satisfy eig_floor (%r) <= "
                "lo <= hi." % (lo, hi, self.tol.eig_floor))

    @property
    def seed_sequence(self):
        return numpy.random.SeedSequence(
            [self.master_seed, suite_key(self.suite_id), self.trial_index])

    def rng(self):
        return numpy.random.default_rng(self.seed_sequence)

    @property
    def replay_handle(self):
        """``seed:suite:trial``, enough to regenerate this instance."""
        return "%d:%s:%d" % (self.master_seed, self.suite_id,
                             self.trial_index)


## Matrices ###################################################################


def _gaussian(shape, rng):
    return (rng.standard_normal(shape)
            + 1j * rng.standard_normal(shape)) / numpy.sqrt(2.0)


def random_isometry(rows, cols, rng):
    """
    A Haar-random ``rows x cols`` isometry (``V* V = I``), from the QR
    decomposition of a complex Gaussian matrix with the phases of ``R``
    divided out.
    """
    if cols > rows:
        raise DimensionMismatch("An isometry needs rows >= cols (%d < %d)."
                                % (rows, cols))
    q, r = numpy.linalg.qr(_gaussian((rows, cols), rng))
    d = numpy.diagonal(r)
    return q * (d / numpy.abs(d))


def random_unitary(dim, rng):
    return random_isometry(dim, dim, rng)


def random_hpd(cfg, rng):
    """
    ``U diag(λ) U*`` with ``λ`` uniform on ``cfg.eig_range`` and ``U``
    Haar-random.
    """
    lo, hi = cfg.eig_range
    values = rng.uniform(lo, hi, cfg.dim)
    u = random_unitary(cfg.dim, rng)
    return HermitianMatrix.wrap((u * values) @ u.conj().T)


def random_operator_tuple(cfg, rng, factor=1.0):
    """``cfg.n`` independent :func:`random_hpd` draws, scaled by `factor`."""
    return OperatorTuple([scale(random_hpd(cfg, rng), factor)
                          for _ in range(cfg.n)], tol=cfg.tol)


def normalize_resolution(matrices, tol=None):
    """
    ``S^{-1/2} X_j S^{-1/2}`` with ``S = sum_j X_j``; the results sum to the
    identity.
    """
    matrices = list(matrices)
    root = matrix_power(total(matrices), -0.5, tol)
    return [conjugate(root, x) for x in matrices]


def random_resolution_of_identity(cfg, rng, uniform=False, warnings=None):
    """
    A tuple of ``cfg.n`` strictly positive matrices summing to the identity

    With `uniform` the tuple is ``cfg.n`` copies of one draw, which
    normalises to ``(I/n, ..., I/n)``.

    :raises DegenerateInstance: if every redraw has an entry below the floor
    """
    warnings = WarningCounts() if warnings is None else warnings
    tol = cfg.tol
    for attempt in range(RESOLUTION_ATTEMPTS):
        if uniform:
            draws = [random_hpd(cfg, rng)] * cfg.n
        else:
            draws = [random_hpd(cfg, rng) for _ in range(cfg.n)]
        entries = normalize_resolution(draws, tol)
        if all(min_eigenvalue(e, tol) >= tol.eig_floor for e in entries):
            return OperatorTuple(entries, sums_to_identity=True, tol=tol)
        warnings.regenerated_instances += 1
        logger.debug("Redrawing resolution of the identity (attempt %d)",
                     attempt)
    raise DegenerateInstance("No admissible resolution of the identity in "
                             "%d attempts." % RESOLUTION_ATTEMPTS)


def uniform_resolution(dim, n, tol=None):
    """``(I/n, ..., I/n)``"""
    return OperatorTuple([scale(identity(dim), 1.0 / n)] * n,
                         sums_to_identity=True, tol=tol)


## Doubly stochastic matrices and weight functions ###########################


@dataclass(frozen=True, eq=False)
class DoublyStochasticMatrix(object):
    """Non-negative square matrix whose rows and columns sum to one."""
    entries: numpy.ndarray

    def __post_init__(self):
        b = self.entries
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DimensionMismatch("A doubly stochastic matrix is square.")
        if (b < 0).any():
            raise ParameterOutOfRange("Doubly stochastic entries must be "
                                      "non-negative.")
        error = max(numpy.abs(b.sum(axis=0) - 1.0).max(),
                    numpy.abs(b.sum(axis=1) - 1.0).max())
        if error > 1e-10:
            raise ParameterOutOfRange("Row or column sums are off by %r."
                                      % error)

    @property
    def n(self):
        return self.entries.shape[0]


def random_doubly_stochastic(n, k, rng, exhaustive=False):
    """
    A convex combination of `k` random permutation matrices with Dirichlet
    weights. With `exhaustive`, the uniform combination of all ``n!``
    permutations.
    """
    if n < 1 or k < 1:
        raise ParameterOutOfRange("n and k must be at least 1.")
    if exhaustive:
        perms = list(itertools.permutations(range(n)))
        weights = numpy.full(len(perms), 1.0 / len(perms))
    else:
        perms = [rng.permutation(n) for _ in range(k)]
        weights = rng.dirichlet(numpy.ones(k))
    entries = numpy.zeros((n, n))
    rows = numpy.arange(n)
    for w, perm in zip(weights, perms):
        entries[rows, numpy.asarray(perm)] += w
    return DoublyStochasticMatrix(entries)


def sinkhorn_scale(kernel, row_marginals, col_marginals,
                   threshold=SINKHORN_THRESHOLD,
                   max_iterations=SINKHORN_MAX_ITERATIONS):
    """
    Alternately rescale rows and columns of the positive `kernel` until its
    row sums match `row_marginals` to relative error `threshold` (the column
    sums match exactly after every sweep).

    :raises SinkhornNonConvergence:
    """
    transport = numpy.array(kernel, dtype=float)
    rows = numpy.asarray(row_marginals, dtype=float).reshape(-1, 1)
    cols = numpy.asarray(col_marginals, dtype=float).reshape(1, -1)
    for iteration in range(max_iterations):
        transport *= rows / transport.sum(axis=1, keepdims=True)
        transport *= cols / transport.sum(axis=0, keepdims=True)
        error = numpy.max(numpy.abs(transport.sum(axis=1, keepdims=True)
                                    / rows - 1.0))
        if error <= threshold:
            logger.debug("Sinkhorn converged after %d iterations",
                         iteration + 1)
            return transport
    raise SinkhornNonConvergence("Sinkhorn scaling did not converge in %d "
                                 "iterations (error %r)."
                                 % (max_iterations, error))


def sinkhorn_doubly_stochastic(n, rng):
    """A dense doubly stochastic matrix, Sinkhorn-scaled from a random
    positive kernel."""
    kernel = rng.uniform(0.1, 1.0, (n, n))
    return DoublyStochasticMatrix(sinkhorn_scale(kernel, numpy.ones(n),
                                                 numpy.ones(n)))


def random_probability_vector(m, rng, floor=PROBABILITY_FLOOR):
    """A Dirichlet draw shifted so every entry is at least `floor`."""
    if m < 1 or m * floor >= 1.0:
        raise ParameterOutOfRange("Cannot draw %d probabilities above %r."
                                  % (m, floor))
    return floor + (1.0 - m * floor) * rng.dirichlet(numpy.ones(m))


@dataclass(frozen=True, eq=False)
class WeightFunction(object):
    """
    ``omega: {1..m} x {1..n} -> [0, inf)`` with respect to probability
    vectors ``mu`` (length m) and ``lam`` (length n):
    ``sum_i omega_ij mu_i = 1`` for every j and
    ``sum_j omega_ij lam_j = 1`` for every i.
    """
    mu: numpy.ndarray
    lam: numpy.ndarray
    omega: numpy.ndarray

    def __post_init__(self):
        m, n = len(self.mu), len(self.lam)
        if self.omega.shape != (m, n):
            raise DimensionMismatch("omega has shape %s, expected %s."
                                    % (self.omega.shape, (m, n)))
        for name in ("mu", "lam", "omega"):
            if (getattr(self, name) < 0).any():
                raise ParameterOutOfRange("%s has negative entries." % name)
        errors = (abs(self.mu.sum() - 1.0), abs(self.lam.sum() - 1.0),
                  numpy.abs(self.mu @ self.omega - 1.0).max(),
                  numpy.abs(self.omega @ self.lam - 1.0).max())
        if max(errors) > 1e-10:
            raise ParameterOutOfRange("Weight function marginals are off by "
                                      "%r." % max(errors))

    @property
    def m(self):
        return len(self.mu)

    @property
    def n(self):
        return len(self.lam)

    @classmethod
    def trivial(cls, mu, lam):
        """``omega = 1``"""
        mu = numpy.asarray(mu, dtype=float)
        lam = numpy.asarray(lam, dtype=float)
        return cls(mu, lam, numpy.ones((len(mu), len(lam))))

    def mix(self, other, t):
        """
        ``(1 - t) self + t other``; both must share ``mu`` and ``lam``.
        The endpoints return `self` and `other` unchanged.
        """
        if not (numpy.array_equal(self.mu, other.mu)
                and numpy.array_equal(self.lam, other.lam)):
            raise ParameterOutOfRange("Weight functions over different "
                                      "probability vectors cannot be mixed.")
        if not 0.0 <= t <= 1.0:
            raise ParameterOutOfRange("Mixing parameter must lie in [0, 1].")
        if t == 0.0:
            return self
        if t == 1.0:
            return other
        return WeightFunction(self.mu, self.lam,
                              (1.0 - t) * self.omega + t * other.omega)


def weights_from_doubly_stochastic(B):
    """``omega = n B`` over uniform ``mu = lam = (1/n, ..., 1/n)``."""
    n = B.n
    uniform = numpy.full(n, 1.0 / n)
    return WeightFunction(uniform, uniform.copy(), n * B.entries)


def random_weight_function(m, n, rng, marginals=None):
    """
    A weight function over random probability vectors, or over the given
    ``marginals = (mu, lam)``: a random coupling of ``mu`` and ``lam`` is
    found by Sinkhorn scaling and ``omega = P / (mu lam^T)``.
    """
    if marginals is None:
        mu = random_probability_vector(m, rng)
        lam = random_probability_vector(n, rng)
    else:
        mu, lam = marginals
    kernel = rng.uniform(0.1, 1.0, (len(mu), len(lam)))
    coupling = sinkhorn_scale(kernel, mu, lam)
    return WeightFunction(mu, lam, coupling / numpy.outer(mu, lam))


## Positive maps and contractions #############################################


def random_positive_map(kind, dim_in, dim_out, k, rng):
    """
    :raises InvalidKind: for kinds other than identity, compression, kraus
                         and depolarizing
    """
    if kind == "identity":
        if dim_in != dim_out:
            raise DimensionMismatch("The identity map needs dim_in == "
                                    "dim_out.")
        return identity_map(dim_in)
    elif kind == "compression":
        return compression_map(random_isometry(dim_in, dim_out, rng))
    elif kind == "kraus":
        if k < 1 or k * dim_in < dim_out:
            raise ParameterOutOfRange("%d Kraus operators cannot reach "
                                      "dimension %d." % (k, dim_out))
        stacked = random_isometry(k * dim_in, dim_out, rng)
        return kraus_map(stacked[t * dim_in:(t + 1) * dim_in]
                         for t in range(k))
    elif kind == "depolarizing":
        return depolarizing_map(dim_in, dim_out)
    else:
        raise InvalidKind("Unknown positive map kind '%s'." % kind)


@dataclass(frozen=True, eq=False)
class ContractionFamily(object):
    """Square matrices ``C_j`` with ``sum_j C_j* C_j <= I``."""
    operators: tuple

    @property
    def dim(self):
        return self.operators[0].shape[0]

    def gram(self):
        """``sum_j C_j* C_j``"""
        return HermitianMatrix.wrap(sum(c.conj().T @ c
                                        for c in self.operators))

    def defect(self):
        """``I - sum_j C_j* C_j``"""
        return add(identity(self.dim), scale(self.gram(), -1.0))


def random_contractions(n, dim, rng):
    """`n` complex Gaussian matrices of operator norm at most ``1/sqrt(n)``."""
    operators = []
    for _ in range(n):
        g = _gaussian((dim, dim), rng)
        target = rng.uniform(0.5, 1.0) / numpy.sqrt(n)
        operators.append(g * (target / numpy.linalg.norm(g, 2)))
    return ContractionFamily(tuple(operators))


## Two-operator pairs #########################################################


@dataclass(frozen=True, eq=False)
class AcceptanceStats(object):
    attempts: int

    @property
    def rate(self):
        return 1.0 / self.attempts


@dataclass(frozen=True, eq=False)
class TwoOperatorPair(object):
    A: HermitianMatrix
    B: HermitianMatrix
    p: float
    stats: AcceptanceStats = field(default_factory=lambda: AcceptanceStats(1))


def two_operator_hypotheses(A, B, p, tol=None):
    """
    The two gates of the two-operator bounds, as :class:`OrderVerdict`\\ s:
    ``A #_{p-2} B <= I`` and ``B^2 <= A^2``.
    """
    mean = natural_power_mean(A, B, p - 2.0, tol)
    return (loewner_leq(mean, identity(A.dim), tol),
            loewner_leq(matrix_power(B, 2, tol), matrix_power(A, 2, tol),
                        tol))


def generate_two_operator_pair(cfg, p, rng, max_attempts=1000, warnings=None):
    """
    Draw ``(A, B)`` satisfying both two-operator gates for `p` in [0, 1]

    ``A`` has spectrum in ``(0, kappa^{2-p}]`` and ``B = A^{1/2} K A^{1/2}``
    with the spectrum of K in ``[kappa, 1]``, which makes
    ``A #_{p-2} B <= I`` hold by construction. ``B^2 <= A^2`` is enforced
    by rejection; each rejection shrinks ``K`` towards a multiple of the
    identity.

    :raises RejectionBudgetExhausted:
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange("Two-operator pairs need 0 <= p <= 1 "
                                  "(got %r)." % p)
    warnings = WarningCounts() if warnings is None else warnings
    tol = cfg.tol
    kappa = rng.uniform(0.5, 0.95)
    top = kappa ** (2.0 - p)
    A = random_hpd(replace(cfg, eig_range=(0.2 * top, top)), rng)
    half = matrix_power(A, 0.5, tol)
    raw = random_hpd(replace(cfg, eig_range=(kappa, 1.0)), rng)
    centre = scale(identity(cfg.dim), trace(raw) / cfg.dim)

    shrink = 1.0
    for attempt in range(1, max_attempts + 1):
        K = add(scale(centre, 1.0 - shrink), scale(raw, shrink))
        B = conjugate(half, K)
        warnings.pair_attempts += 1
        if all(two_operator_hypotheses(A, B, p, tol)):
            logger.debug("Two-operator pair accepted after %d attempts",
                         attempt)
            warnings.accepted_pairs += 1
            return TwoOperatorPair(A, B, p, AcceptanceStats(attempt))
        warnings.rejected_pairs += 1
        shrink *= 0.9
    raise RejectionBudgetExhausted("No two-operator pair accepted in %d "
                                   "attempts." % max_attempts)


## Perturbation ###############################################################


def _hermitian_direction(dim, rng):
    g = _gaussian((dim, dim), rng)
    g = (g + g.conj().T) / 2.0
    return g / numpy.linalg.norm(g, 2)


@singledispatch
def perturb(obj, rng, step, tol=None):
    """
    A small random move from `obj` that stays inside its constraint set.
    Objects without free parameters are returned unchanged.
    """
    return obj


@perturb.register(HermitianMatrix)
def _perturb_matrix(obj, rng, step, tol=None):
    # E H E with E = I + step G, ||G|| = 1, stays positive for step < 1
    e = numpy.eye(obj.dim) + min(step, 0.5) * _hermitian_direction(obj.dim,
                                                                    rng)
    return HermitianMatrix.wrap(e @ obj.array @ e)


@perturb.register(OperatorTuple)
def _perturb_tuple(obj, rng, step, tol=None):
    entries = [perturb(e, rng, step, tol) for e in obj]
    if obj.sums_to_identity:
        entries = normalize_resolution(entries, tol)
    try:
        return OperatorTuple(entries, obj.sums_to_identity, tol)
    except OpentropyException as e:
        logger.debug("Perturbed tuple rejected: %s", e)
        return obj


@perturb.register(numpy.ndarray)
def _perturb_probabilities(obj, rng, step, tol=None):
    moved = obj * numpy.exp(step * rng.standard_normal(obj.shape))
    return moved / moved.sum()


def _perturb_coupling(coupling, rows, cols, rng, step):
    moved = coupling * numpy.exp(step * rng.standard_normal(coupling.shape))
    return sinkhorn_scale(moved, rows, cols)


@perturb.register(DoublyStochasticMatrix)
def _perturb_doubly_stochastic(obj, rng, step, tol=None):
    ones = numpy.ones(obj.n)
    try:
        return DoublyStochasticMatrix(_perturb_coupling(obj.entries, ones,
                                                        ones, rng, step))
    except SinkhornNonConvergence:
        return obj


@perturb.register(WeightFunction)
def _perturb_weights(obj, rng, step, tol=None):
    product = numpy.outer(obj.mu, obj.lam)
    try:
        coupling = _perturb_coupling(obj.omega * product, obj.mu, obj.lam,
                                     rng, step)
    except SinkhornNonConvergence:
        return obj
    return WeightFunction(obj.mu, obj.lam, coupling / product)


@perturb.register(ContractionFamily)
def _perturb_contractions(obj, rng, step, tol=None):
    operators = [c @ (numpy.eye(obj.dim) + step * _gaussian(c.shape, rng))
                 for c in obj.operators]
    moved = ContractionFamily(tuple(operators))
    top = numpy.linalg.eigvalsh(moved.gram().array)[-1]
    if top > 1.0:
        moved = ContractionFamily(tuple(c / numpy.sqrt(top)
                                        for c in operators))
    return moved


@perturb.register(TwoOperatorPair)
def _perturb_pair(obj, rng, step, tol=None):
    return TwoOperatorPair(perturb(obj.A, rng, step, tol),
                           perturb(obj.B, rng, step, tol), obj.p, obj.stats)


@perturb.register(dict)
def _perturb_dict(obj, rng, step, tol=None):
    return {key: perturb(value, rng, step, tol)
            for key, value in sorted(obj.items())}


@perturb.register(tuple)
@perturb.register(list)
def _perturb_sequence(obj, rng, step, tol=None):
    return type(obj)(perturb(value, rng, step, tol) for value in obj)


## JSON #######################################################################


def _array_json(a):
    a = numpy.asarray(a)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


@singledispatch
def to_json(obj):
    """Encode a generated object as JSON-compatible data."""
    raise InvalidKind("Cannot encode %s as JSON." % type(obj).__name__)


@to_json.register(HermitianMatrix)
def _matrix_json(obj):
    return dict(obj.to_json(), type="matrix")


@to_json.register(OperatorTuple)
def _tuple_json(obj):
    return {"type": "tuple", "sums_to_identity": obj.sums_to_identity,
            "entries": [e.to_json() for e in obj]}


@to_json.register(DoublyStochasticMatrix)
def _doubly_stochastic_json(obj):
    return {"type": "doubly-stochastic", "entries": obj.entries.tolist()}


@to_json.register(WeightFunction)
def _weights_json(obj):
    return {"type": "weight-function", "mu": obj.mu.tolist(),
            "lambda": obj.lam.tolist(), "omega": obj.omega.tolist()}


@to_json.register(PositiveMapDescriptor)
def _map_json(obj):
    return {"type": "positive-map", "kind": obj.kind, "dim_in": obj.dim_in,
            "dim_out": obj.dim_out,
            "kraus": [_array_json(v) for v in obj.kraus_operators]}


@to_json.register(ContractionFamily)
def _contractions_json(obj):
    return {"type": "contractions",
            "operators": [_array_json(c) for c in obj.operators]}


@to_json.register(TwoOperatorPair)
def _pair_json(obj):
    return {"type": "two-operator-pair", "A": obj.A.to_json(),
            "B": obj.B.to_json(), "p": obj.p,
            "attempts": obj.stats.attempts}


@to_json.register(numpy.ndarray)
def _vector_json(obj):
    return {"type": "vector", "values": obj.tolist()}


@to_json.register(dict)
def _dict_json(obj):
    return {key: to_json(value) for key, value in obj.items()}


@to_json.register(tuple)
@to_json.register(list)
def _sequence_json(obj):
    return [to_json(value) for value in obj]


@to_json.register(str)
@to_json.register(int)
@to_json.register(float)
def _scalar_json(obj):
    return obj
