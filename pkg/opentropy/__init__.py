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
opentropy computes relative operator entropies, natural power means and
perspective functionals of Hermitian matrices, and numerically certifies the
operator inequalities relating them over randomised instances.
"""

__name__ = "opentropy"
__author__ = "The opentropy developers"
__version__ = "0.1.0"
__version_info__ = tuple([int(d) for d in __version__.split(".")])
__licence__ = "GPL v3"
