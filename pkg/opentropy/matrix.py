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
Dense complex Hermitian matrices and their spectral calculus.

Every operator in opentropy is a :class:`HermitianMatrix`. Functions of a
matrix are computed from its eigen-decomposition, ``f(H) = U diag(f(λ)) U*``,
and every composite result is re-symmetrised ``H <- (H + H*) / 2`` before it
is wrapped, so hermiticity never drifts.

The entries of a matrix never change. Its eigen-decomposition is computed
on first use and memoised on the matrix, one entry per eigensolver; the
memo is internal and never changes the value the matrix represents.
"""

from dataclasses import dataclass
import json
import logging

import numpy

from . import jacobi
from .errors import (DimensionMismatch, DomainViolation, InputException,
                     IterationLimit, NotHermitian, NotStrictlyPositive,
                     ParameterOutOfRange)

logger = logging.getLogger("opentropy.matrix")

#: Eigensolvers understood by :func:`spectral_decompose`.
EIGENSOLVERS = ("lapack", "jacobi")

#: Sweep budget of the Jacobi kernel.
JACOBI_MAX_SWEEPS = 60


@dataclass(frozen=True)
class ToleranceConfig(object):
    """
    Numerical tolerances shared by every computation.

    ``tol_eig`` bounds eigensolver and hermiticity error, ``tol_order`` is
    the relative slack allowed by Loewner comparisons, and ``eig_floor`` is
    the smallest eigenvalue a "strictly positive" matrix may have.
    """
    tol_eig: float = 1e-10
    tol_order: float = 1e-8
    eig_floor: float = 1e-8
    eigensolver: str = "lapack"

    def __post_init__(self):
        for name in ("tol_eig", "tol_order", "eig_floor"):
            value = getattr(self, name)
            if not value > 0:
                raise ParameterOutOfRange(
                    "Tolerance '%s' must be strictly positive (was %r)."
                    % (name, value))
        if self.tol_eig > self.tol_order:
            raise ParameterOutOfRange(
                "tol_eig (%r) may not exceed tol_order (%r)."
                % (self.tol_eig, self.tol_order))
        if self.eigensolver not in EIGENSOLVERS:
            raise ParameterOutOfRange(
                "Unknown eigensolver '%s'." % self.eigensolver)


DEFAULT_TOLERANCES = ToleranceConfig()


def resolve_tolerances(tol):
    """Return `tol`, or the library defaults if it is ``None``."""
    return DEFAULT_TOLERANCES if tol is None else tol


def _hermitize(a):
    a = (a + a.conj().T) / 2.0
    a.flags.writeable = False
    return a


class HermitianMatrix(object):
    """
    A dense complex Hermitian matrix

    Real symmetric input is promoted to complex. Input must be Hermitian to
    within ``tol_eig * max(1, ||H||_F)``; it is then symmetrised exactly.

    .. attribute:: array

        The entries, a read-only ``dim x dim`` complex :class:`numpy.ndarray`.

    ``_spectra`` is an internal memo of eigen-decompositions keyed by
    eigensolver name, filled by :func:`spectral_decompose`.
    """

    __slots__ = ("array", "_spectra")

    def __init__(self, entries, tol=None):
        tol = resolve_tolerances(tol)
        a = numpy.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatch(
                "Expected a non-empty square matrix, got shape %s."
                % (a.shape, ))
        if not numpy.all(numpy.isfinite(a)):
            raise NotHermitian("Matrix has non-finite entries.")
        drift = numpy.linalg.norm(a - a.conj().T)
        if drift > tol.tol_eig * max(1.0, numpy.linalg.norm(a)):
            raise NotHermitian("Matrix is not Hermitian (||H - H*||_F = %r)."
                               % drift)
        self.array = _hermitize(a)
        self._spectra = {}

    @classmethod
    def wrap(cls, a):
        """
        Wrap the result of a computation on Hermitian matrices, without
        validation, symmetrising it exactly.
        """
        obj = cls.__new__(cls)
        obj.array = _hermitize(numpy.array(a, dtype=complex))
        obj._spectra = {}
        return obj

    @property
    def dim(self):
        return self.array.shape[0]

    @property
    def re(self):
        return self.array.real

    @property
    def im(self):
        return self.array.imag

    def __repr__(self):
        return "HermitianMatrix(%r)" % (self.array.tolist(), )

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return subtract(self, other)

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return scale(self, 1.0 / c)

    def allclose(self, other, atol=1e-10):
        """Entrywise comparison with absolute tolerance `atol`."""
        _same_dim(self, other)
        return bool(numpy.allclose(self.array, other.array, rtol=0.0,
                                   atol=atol))

    def to_json(self):
        """Return the matrix in the ``{"dim", "re", "im"}`` JSON layout."""
        return {"dim": self.dim,
                "re": self.array.real.tolist(),
                "im": self.array.imag.tolist()}

    @classmethod
    def from_json(cls, obj, tol=None):
        """
        Build a matrix from the ``{"dim", "re", "im"}`` JSON layout

        ``im`` is optional and defaults to zero. Hermiticity is validated.
        """
        try:
            dim = int(obj["dim"])
            re = numpy.array(obj["re"], dtype=float)
            im = numpy.array(obj.get("im", numpy.zeros((dim, dim))),
                             dtype=float)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputException("Malformed matrix JSON: %s." % e)
        if dim < 1:
            raise InputException("Matrix JSON needs dim >= 1 (got %d)." % dim)
        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise InputException(
                "Matrix JSON arrays must be %d x %d (got %s and %s)."
                % (dim, dim, re.shape, im.shape))
        return cls(re + 1j * im, tol=tol)


def identity(dim):
    return HermitianMatrix.wrap(numpy.eye(dim))


def zeros(dim):
    return HermitianMatrix.wrap(numpy.zeros((dim, dim)))


def diagonal(values):
    """Real diagonal matrix with the given diagonal."""
    return HermitianMatrix.wrap(numpy.diag(numpy.asarray(values, dtype=float)))


def _same_dim(*matrices):
    dims = set(m.dim for m in matrices)
    if len(dims) != 1:
        raise DimensionMismatch("Operands have different dimensions %s."
                                % sorted(dims))


## Arithmetic #################################################################


def add(X, Y):
    _same_dim(X, Y)
    return HermitianMatrix.wrap(X.array + Y.array)


def subtract(X, Y):
    _same_dim(X, Y)
    return HermitianMatrix.wrap(X.array - Y.array)


def scale(H, c):
    """Multiply by the real scalar `c`."""
    return HermitianMatrix.wrap(float(c) * H.array)


def total(matrices):
    """Sum `matrices` in ascending index order."""
    matrices = list(matrices)
    if not matrices:
        raise DimensionMismatch("Cannot sum an empty list of matrices.")
    _same_dim(*matrices)
    acc = numpy.zeros_like(matrices[0].array)
    for m in matrices:
        acc = acc + m.array
    return HermitianMatrix.wrap(acc)


def trace(H):
    return float(numpy.trace(H.array).real)


def frobenius_norm(H):
    return float(numpy.linalg.norm(H.array))


def conjugate(M, X):
    """
    The sandwich ``M X M`` of `X` by the Hermitian matrix `M`

    Positive whenever `X` is.
    """
    _same_dim(M, X)
    return HermitianMatrix.wrap(M.array @ X.array @ M.array)


def congruence(C, X):
    """``C* X C`` for an arbitrary square array `C`."""
    C = numpy.asarray(C)
    if C.shape != X.array.shape:
        raise DimensionMismatch("Congruence by a %s array of a %d x %d matrix."
                                % (C.shape, X.dim, X.dim))
    return HermitianMatrix.wrap(C.conj().T @ X.array @ C)


## Spectral calculus ##########################################################


@dataclass(frozen=True, eq=False)
class SpectralDecomposition(object):
    """
    Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
    Hermitian matrix.
    """
    eigenvalues: numpy.ndarray
    eigenvectors: numpy.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def compose(self, values):
        """``U diag(values) U*``"""
        u = self.eigenvectors
        return HermitianMatrix.wrap((u * numpy.asarray(values)) @ u.conj().T)

    def reconstruction_error(self, H):
        return float(numpy.linalg.norm(self.compose(self.eigenvalues).array
                                       - H.array))

    def orthogonality_error(self):
        u = self.eigenvectors
        return float(numpy.linalg.norm(u.conj().T @ u - numpy.eye(self.dim)))


def _jacobi_eigh(a, tol):
    n = a.shape[0]
    work = numpy.array(a, dtype=complex, order="C")
    vectors = numpy.eye(n, dtype=complex)
    threshold = 1e-2 * tol.tol_eig * numpy.linalg.norm(a)
    sweeps = jacobi.cyclic_jacobi(work, vectors, threshold, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise IterationLimit("Jacobi iteration did not converge in %d sweeps."
                             % JACOBI_MAX_SWEEPS)
    logger.debug("Jacobi converged in %d sweeps (dim %d)", sweeps, n)
    values = numpy.diagonal(work).real
    order = numpy.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def spectral_decompose(H, tol=None):
    """
    Eigen-decompose `H`

    :rtype: :class:`SpectralDecomposition` with ascending eigenvalues
    :raises IterationLimit: if the eigensolver does not converge
    """
    tol = resolve_tolerances(tol)
    cached = H._spectra.get(tol.eigensolver)
    if cached is not None:
        return cached

    if tol.eigensolver == "jacobi":
        values, vectors = _jacobi_eigh(H.array, tol)
    else:
        try:
            values, vectors = numpy.linalg.eigh(H.array)
        except numpy.linalg.LinAlgError as e:
            raise IterationLimit("Eigensolver did not converge: %s." % e)

    values.flags.writeable = False
    vectors.flags.writeable = False
    spectrum = SpectralDecomposition(values, vectors)
    H._spectra[tol.eigensolver] = spectrum
    return spectrum


def eigenvalues(H, tol=None):
    """Ascending eigenvalues of `H`."""
    return spectral_decompose(H, tol).eigenvalues


def min_eigenvalue(H, tol=None):
    return float(eigenvalues(H, tol)[0])


def spectral_condition(values):
    """
    ``max |λ| / min |λ|`` over `values`, or ``None`` when the smallest
    magnitude is zero.
    """
    magnitudes = numpy.abs(numpy.asarray(values))
    low = magnitudes.min()
    if low == 0.0:
        return None
    return float(magnitudes.max() / low)


def spectral_values(f, values):
    """
    Evaluate the scalar function `f` on the eigenvalues `values`

    :raises DomainViolation: if an eigenvalue lies below ``f.domain_floor``
                             or ``f`` is not finite there; the offending
                             eigenvalue is attached to the exception.
    """
    values = numpy.asarray(values, dtype=float)
    below = values < f.domain_floor
    if below.any():
        low = float(values[below][0])
        raise DomainViolation("Eigenvalue %r lies below the domain floor %r "
                              "of '%s'." % (low, f.domain_floor, f.name),
                              eigenvalue=low)
    with numpy.errstate(all="ignore"):
        image = numpy.asarray(f.eval(values), dtype=float)
    bad = ~numpy.isfinite(image)
    if bad.any():
        low = float(values[bad][0])
        raise DomainViolation("'%s' is not finite at eigenvalue %r."
                              % (f.name, low), eigenvalue=low)
    return image


def apply_function(H, f, tol=None):
    """
    ``f(H)`` by spectral calculus

    :raises DomainViolation: if the spectrum of `H` leaves the domain of `f`
    """
    spectrum = spectral_decompose(H, tol)
    return spectrum.compose(spectral_values(f, spectrum.eigenvalues))


def require_strictly_positive(H, tol=None, name="matrix"):
    """
    :raises NotStrictlyPositive: if the smallest eigenvalue of `H` is below
                                 ``eig_floor``
    """
    tol = resolve_tolerances(tol)
    low = min_eigenvalue(H, tol)
    if low < tol.eig_floor:
        raise NotStrictlyPositive("%s is not strictly positive (eigenvalue %r "
                                  "below floor %r)." % (name, low,
                                                        tol.eig_floor),
                                  eigenvalue=low)
    return low


def matrix_power(H, q, tol=None):
    """
    ``H^q`` by spectral calculus

    Non-negative integer powers are defined for every Hermitian `H`; any
    other power requires `H` to be strictly positive.

    :raises NotStrictlyPositive:
    """
    q = float(q)
    if q == 0.0:
        return identity(H.dim)
    if q == 1.0:
        return H
    spectrum = spectral_decompose(H, tol)
    if not (q.is_integer() and q > 0):
        require_strictly_positive(H, tol)
    return spectrum.compose(spectrum.eigenvalues ** q)


## Loewner order ##############################################################


@dataclass(frozen=True, eq=False)
class OrderVerdict(object):
    """
    Outcome of the Loewner comparison ``X <= Y``

    ``holds`` iff ``slack_min_eig >= -tolerance_used * max(1, slack_norm)``
    where the slack is ``Y - X``.
    """
    holds: bool
    slack_min_eig: float
    slack_norm: float
    tolerance_used: float
    slack: HermitianMatrix

    def __bool__(self):
        return self.holds


def loewner_leq(X, Y, tol=None):
    """
    Decide ``X <= Y`` in the Loewner order up to a relative tolerance.

    :rtype: :class:`OrderVerdict`
    """
    tol = resolve_tolerances(tol)
    slack = subtract(Y, X)
    low = min_eigenvalue(slack, tol)
    norm = frobenius_norm(slack)
    holds = low >= -tol.tol_order * max(1.0, norm)
    return OrderVerdict(holds, low, norm, tol.tol_order, slack)


## Files ######################################################################


def load_matrix(path, tol=None):
    """
    Read a matrix from the JSON file `path`

    :raises InputException: if the file cannot be read or parsed
    """
    logger.info("Reading matrix %s", path)
    try:
        with open(path) as f:
            obj = json.load(f)
    except (IOError, OSError) as e:
        raise InputException("Could not read '%s': %s." % (path, e))
    except ValueError as e:
        raise InputException("'%s' is not valid JSON: %s." % (path, e))
    return HermitianMatrix.from_json(obj, tol=tol)


def dump_matrix(H, path=None):
    """
    Serialise `H` as JSON; write it to `path` if given, and return the text.

    :raises InputException: if `path` cannot be written
    """
    text = json.dumps(H.to_json(), sort_keys=True)
    if path is not None:
        try:
            with open(path, "w") as f:
                f.write(text + "\n")
        except (IOError, OSError) as e:
            raise InputException("Could not write '%s': %s." % (path, e))
    return text
