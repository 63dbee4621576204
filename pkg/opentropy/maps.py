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
Unital positive maps between matrix algebras, described by Kraus operators.

A map is ``Phi(A) = sum_k V_k* A V_k`` with ``V_k`` of shape
``(dim_in, dim_out)`` and ``sum_k V_k* V_k = I``. Unital and positive maps
send the identity to the identity and keep spectra inside the convex hull
of the input spectrum.
"""

from dataclasses import dataclass

import numpy

from .errors import DimensionMismatch, InvalidKind, ParameterOutOfRange
from .matrix import (DEFAULT_TOLERANCES, HermitianMatrix, identity, scale,
                     trace)

KINDS = ("identity", "compression", "kraus", "depolarizing")


@dataclass(frozen=True, eq=False)
class PositiveMapDescriptor(object):
    """
    A normalised positive map ``M_{dim_in} -> M_{dim_out}``

    ``kraus_operators`` is empty for the ``identity`` and ``depolarizing``
    kinds, whose action is computed directly.
    """
    kind: str
    kraus_operators: tuple
    dim_in: int
    dim_out: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidKind("Unknown positive map kind '%s'." % self.kind)
        if self.dim_in < 1 or self.dim_out < 1:
            raise DimensionMismatch("Map dimensions must be positive.")
        if self.kind == "identity" and self.dim_in != self.dim_out:
            raise DimensionMismatch("The identity map needs dim_in == "
                                    "dim_out.")
        if self.kind in ("compression", "kraus"):
            self._check_kraus()

    def _check_kraus(self):
        if not self.kraus_operators:
            raise ParameterOutOfRange("A '%s' map needs Kraus operators."
                                      % self.kind)
        acc = numpy.zeros((self.dim_out, self.dim_out), dtype=complex)
        for v in self.kraus_operators:
            if v.shape != (self.dim_in, self.dim_out):
                raise DimensionMismatch("Kraus operator of shape %s, "
                                        "expected %s." % (v.shape,
                                                          (self.dim_in,
                                                           self.dim_out)))
            acc += v.conj().T @ v
        error = numpy.linalg.norm(acc - numpy.eye(self.dim_out))
        if error > DEFAULT_TOLERANCES.tol_eig * max(1, self.dim_out):
            raise ParameterOutOfRange("Kraus operators are not normalised "
                                      "(||sum V*V - I||_F = %r)." % error)


def identity_map(dim):
    return PositiveMapDescriptor("identity", (), dim, dim)


def depolarizing_map(dim_in, dim_out=None):
    """``A -> tr(A) / dim_in * I``"""
    dim_out = dim_in if dim_out is None else dim_out
    return PositiveMapDescriptor("depolarizing", (), dim_in, dim_out)


def compression_map(isometry):
    """``A -> V* A V`` for an isometry `V` (``V* V = I``)."""
    v = numpy.asarray(isometry, dtype=complex)
    if v.ndim != 2:
        raise DimensionMismatch("An isometry must be a 2-d array.")
    return PositiveMapDescriptor("compression", (v, ), v.shape[0], v.shape[1])


def kraus_map(operators):
    operators = tuple(numpy.asarray(v, dtype=complex) for v in operators)
    if not operators:
        raise ParameterOutOfRange("A Kraus map needs at least one operator.")
    dim_in, dim_out = operators[0].shape
    return PositiveMapDescriptor("kraus", operators, dim_in, dim_out)


def apply_positive_map(phi, A):
    """
    ``Phi(A)``

    :raises DimensionMismatch: if `A` is not ``dim_in x dim_in``
    """
    if A.dim != phi.dim_in:
        raise DimensionMismatch("Map expects dimension %d, got %d."
                                % (phi.dim_in, A.dim))
    if phi.kind == "identity":
        return A
    if phi.kind == "depolarizing":
        return scale(identity(phi.dim_out), trace(A) / phi.dim_in)
    acc = numpy.zeros((phi.dim_out, phi.dim_out), dtype=complex)
    for v in phi.kraus_operators:
        acc += v.conj().T @ A.array @ v
    return HermitianMatrix.wrap(acc)
