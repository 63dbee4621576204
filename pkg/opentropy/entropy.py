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
Operator means and entropies of pairs and tuples of positive matrices.

For a pair ``(A, B)`` every functional here is a sandwich
``A^{1/2} g(X) A^{1/2}`` with ``X = A^{-1/2} B A^{-1/2}``; the two
decompositions involved are computed once per pair by :class:`PairSpectrum`.
"""

import logging

import numpy

from .errors import (DimensionMismatch, HypothesisUnmet, LengthMismatch,
                     NotStrictlyPositive, ParameterOutOfRange)
from .functions import LOG
from .matrix import (conjugate, frobenius_norm, identity,
                     require_strictly_positive, resolve_tolerances, scale,
                     spectral_decompose, spectral_values, subtract, total)

logger = logging.getLogger("opentropy.entropy")


class OperatorTuple(object):
    """
    An ordered n-tuple of strictly positive matrices of equal dimension

    With ``sums_to_identity=True`` the tuple certifies that its entries sum
    to the identity within ``n * tol_eig``; construction fails otherwise.
    """

    __slots__ = ("entries", "sums_to_identity")

    def __init__(self, entries, sums_to_identity=False, tol=None):
        tol = resolve_tolerances(tol)
        entries = tuple(entries)
        if not entries:
            raise LengthMismatch("An operator tuple needs at least one entry.")
        dim = entries[0].dim
        for j, entry in enumerate(entries):
            if entry.dim != dim:
                raise DimensionMismatch("Entry %d has dimension %d, not %d."
                                        % (j, entry.dim, dim))
            require_strictly_positive(entry, tol, "Entry %d" % j)

        if sums_to_identity:
            error = frobenius_norm(subtract(total(entries), identity(dim)))
            if error > len(entries) * tol.tol_eig:
                raise HypothesisUnmet("Entries do not sum to the identity "
                                      "(||sum - I||_F = %r)." % error)

        self.entries = entries
        self.sums_to_identity = bool(sums_to_identity)

    @classmethod
    def from_scalars(cls, values, dim=1, sums_to_identity=False, tol=None):
        """The tuple ``(v_1 I, ..., v_n I)``."""
        return cls([scale(identity(dim), v) for v in values],
                   sums_to_identity=sums_to_identity, tol=tol)

    @property
    def n(self):
        return len(self.entries)

    @property
    def dim(self):
        return self.entries[0].dim

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def __repr__(self):
        return "OperatorTuple(n=%d, dim=%d, sums_to_identity=%r)" % (
            self.n, self.dim, self.sums_to_identity)

    def total(self):
        return total(self.entries)


def check_lengths(A, B):
    """:raises LengthMismatch: unless the tuples have the same length"""
    if len(A) != len(B):
        raise LengthMismatch("Tuples have lengths %d and %d."
                             % (len(A), len(B)))


class PairSpectrum(object):
    """
    Spectral data shared by the functionals of an ordered pair ``(A, B)``

    .. attribute:: half

        ``A^{1/2}``

    .. attribute:: inner

        Eigen-decomposition of ``X = A^{-1/2} B A^{-1/2}``.

    `A` must be strictly positive; `B` need only be Hermitian.
    """

    def __init__(self, A, B, tol=None):
        if A.dim != B.dim:
            raise DimensionMismatch("Pair has dimensions %d and %d."
                                    % (A.dim, B.dim))
        self.tol = tol = resolve_tolerances(tol)
        require_strictly_positive(A, tol, "A")
        outer = spectral_decompose(A, tol)
        root = numpy.sqrt(outer.eigenvalues)
        self.half = outer.compose(root)
        inverse_half = outer.compose(1.0 / root)
        self.inner = spectral_decompose(conjugate(inverse_half, B), tol)

    def sandwich(self, values):
        """``A^{1/2} g(X) A^{1/2}`` for `values` holding ``g(spec X)``."""
        return conjugate(self.half, self.inner.compose(values))

    def _powers(self, q):
        values = self.inner.eigenvalues
        q = float(q)
        if q == 0.0:
            return numpy.ones_like(values)
        if not (q.is_integer() and q > 0) and values[0] < self.tol.eig_floor:
            raise NotStrictlyPositive("A^{-1/2} B A^{-1/2} has eigenvalue %r "
                                      "below floor %r." % (values[0],
                                                           self.tol.eig_floor),
                                      eigenvalue=float(values[0]))
        return values ** q

    def mean(self, q):
        """``A #_q B``"""
        return self.sandwich(self._powers(q))

    def entropy(self, q, f):
        """``A^{1/2} X^q f(X) A^{1/2}``"""
        image = spectral_values(f, self.inner.eigenvalues)
        return self.sandwich(self._powers(q) * image)

    def image(self, f):
        """The perspective ``A^{1/2} f(X) A^{1/2}``."""
        return self.sandwich(spectral_values(f, self.inner.eigenvalues))


def natural_power_mean(X, Y, q, tol=None):
    """
    ``X #_q Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^q X^{1/2}`` for any real `q`

    Both operands must be strictly positive. ``q = 0`` returns `X` and
    ``q = 1`` returns `Y` exactly.
    """
    tol = resolve_tolerances(tol)
    require_strictly_positive(X, tol, "X")
    require_strictly_positive(Y, tol, "Y")
    if X.dim != Y.dim:
        raise DimensionMismatch("Pair has dimensions %d and %d."
                                % (X.dim, Y.dim))
    if q == 0:
        return X
    if q == 1:
        return Y
    return PairSpectrum(X, Y, tol).mean(q)


def generalized_entropy_term(A, B, q, f, tol=None):
    """``S_q^f(A | B) = A^{1/2} X^q f(X) A^{1/2}``"""
    tol = resolve_tolerances(tol)
    require_strictly_positive(B, tol, "B")
    return PairSpectrum(A, B, tol).entropy(q, f)


def relative_operator_entropy(A, B, tol=None):
    """``S(A | B) = A^{1/2} log(X) A^{1/2}``"""
    return generalized_entropy_term(A, B, 0.0, LOG, tol)


def furuta_entropy(A, B, p, tol=None):
    """
    ``S_p(A | B) = A^{1/2} X^p log(X) A^{1/2}`` for `p` in [0, 1]

    :raises ParameterOutOfRange:
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange("Furuta entropy needs 0 <= p <= 1 (got %r)."
                                  % p)
    return generalized_entropy_term(A, B, p, LOG, tol)


def generalized_entropy_sum(A, B, q, f, tol=None):
    """``sum_j S_q^f(A_j | B_j)``, summed in ascending index order."""
    check_lengths(A, B)
    return total(generalized_entropy_term(a, b, q, f, tol)
                 for a, b in zip(A, B))


def entropy_dual(A, B, q, tol=None):
    """``-S_{1-q}(B | A)``, which equals ``S_q(A | B)``."""
    return scale(generalized_entropy_term(B, A, 1.0 - q, LOG, tol), -1.0)


def perspective(B, A, f, tol=None):
    """
    ``P_f(B | A) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}``

    `A` strictly positive, `B` Hermitian.
    """
    return PairSpectrum(A, B, tol).image(f)


def f_divergence(B, A, f, tol=None):
    """``sum_j P_f(B_j | A_j)``"""
    check_lengths(A, B)
    return total(perspective(b, a, f, tol) for a, b in zip(A, B))


def natural_mean_sum(A, B, q, tol=None):
    """``sum_j A_j #_q B_j``"""
    check_lengths(A, B)
    return total(natural_power_mean(a, b, q, tol) for a, b in zip(A, B))
