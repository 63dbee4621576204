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
Exceptions raised by opentropy.

Every exception carries the exit code the command line returns when it
escapes a command (see :func:`opentropy.harness.handle_exception`).
"""


class OpentropyException(Exception):
    """
    Base opentropy exception.
    """
    exit_code = 4


class UsageException(OpentropyException):
    """
    Raised if arguments or flags are invalid.
    """
    exit_code = 2


class DimensionMismatch(UsageException):
    """
    Raised if two operands do not have the same dimension.
    """


class LengthMismatch(UsageException):
    """
    Raised if two operator tuples do not have the same length.
    """


class ParameterOutOfRange(UsageException):
    """
    Raised if a real parameter lies outside its admissible range.
    """


class UnknownFunction(UsageException):
    """
    Raised if a scalar function is not in the catalog.
    """


class UnknownSuite(UsageException):
    """
    Raised if an inequality suite is not registered.
    """


class InvalidKind(UsageException):
    """
    Raised if a positive map or generated object kind is not known.
    """


class NotHermitian(UsageException):
    """
    Raised if a matrix is not Hermitian within tolerance.
    """


class InputException(OpentropyException):
    """
    Raised if an input file cannot be read or parsed, or an output file
    cannot be written.
    """
    exit_code = 3


class DomainViolation(OpentropyException):
    """
    Raised if a spectrum leaves the domain of a scalar function.

    The offending eigenvalue is available as :attr:`eigenvalue`.
    """

    def __init__(self, message, eigenvalue=None):
        super(DomainViolation, self).__init__(message)
        self.eigenvalue = eigenvalue


class NotStrictlyPositive(DomainViolation):
    """
    Raised if a matrix has an eigenvalue below the strict positivity floor.
    """


class HypothesisUnmet(OpentropyException):
    """
    Raised if a gate that a computation relies on does not hold.
    """


class IterationLimit(OpentropyException):
    """
    Raised if an iterative method exhausts its iteration budget.
    """


class SinkhornNonConvergence(IterationLimit):
    """
    Raised if Sinkhorn scaling does not reach its marginals in time.
    """


class DegenerateInstance(OpentropyException):
    """
    Raised if a generator cannot produce an admissible instance.
    """


class RejectionBudgetExhausted(OpentropyException):
    """
    Raised if a rejection sampler runs out of attempts.
    """
