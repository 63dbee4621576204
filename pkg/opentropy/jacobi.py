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
Cyclic Jacobi eigenvalue iteration for dense complex Hermitian matrices.

An alternative to LAPACK, selected with ``EIGENSOLVER = "jacobi"``. Each
rotation zeroes one off-diagonal pair; sweeps repeat until the off-diagonal
Frobenius norm falls below the threshold.
"""

import numpy


def _rotation(a, p, q):
    g = a[p, q]
    mod = abs(g)
    if mod == 0.0:
        return None
    e = g / mod
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mod)
    t = 1.0 / (abs(theta) + numpy.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / numpy.sqrt(t * t + 1.0)
    s = t * c
    return c, s * e, s * numpy.conj(e)


def off_diagonal_norm(a):
    return float(numpy.linalg.norm(a - numpy.diag(numpy.diagonal(a))))


def cyclic_jacobi(a, v, threshold, max_sweeps):
    """
    Diagonalise the Hermitian array `a` in place, accumulating the rotations
    into the columns of `v`.

    Returns the number of sweeps used, or -1 if `max_sweeps` ran out.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        if off_diagonal_norm(a) <= threshold:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                rotation = _rotation(a, p, q)
                if rotation is None:
                    continue
                c, se, sconj = rotation

                x, y = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * x - sconj * y
                a[:, q] = se * x + c * y

                x, y = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * x - se * y
                a[q, :] = sconj * x + c * y

                x, y = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * x - sconj * y
                v[:, q] = se * x + c * y

                a[p, q] = a[q, p] = 0.0
    return -1
