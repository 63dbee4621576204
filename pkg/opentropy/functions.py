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
Provide the scalar functions that operator functionals are built from,
together with the properties the inequality checks need to know about them.
"""

from dataclasses import dataclass
from typing import Callable
import logging

import numpy

from .errors import UnknownFunction
from .matrix import (add, apply_function, loewner_leq, resolve_tolerances,
                     scale)

logger = logging.getLogger("opentropy.functions")


@dataclass(frozen=True)
class ScalarFunction(object):
    """
    A real function of one variable with its admissible domain

    ``eval`` is vectorised over numpy arrays. The domain is
    ``(domain_floor, inf)``, or all of R when ``domain_floor`` is ``-inf``.
    The three flags record what is known to hold on the domain.
    """
    name: str
    eval: Callable = None
    domain_floor: float = 0.0
    is_operator_monotone: bool = False
    is_operator_concave: bool = False
    is_nonnegative_on_domain: bool = False

    def __call__(self, t):
        return self.eval(t)

    def at(self, t):
        """Evaluate at the real scalar `t`."""
        with numpy.errstate(all="ignore"):
            return float(self.eval(numpy.float64(t)))

    def describe(self):
        return {"name": self.name,
                "domain_floor": self.domain_floor,
                "is_operator_monotone": self.is_operator_monotone,
                "is_operator_concave": self.is_operator_concave,
                "is_nonnegative_on_domain": self.is_nonnegative_on_domain}


## Catalog ####################################################################


def make_power(r):
    """
    Return ``t -> t^r`` for `r` in (0, 1], which is operator monotone,
    operator concave and non-negative on ``[0, inf)``.
    """
    r = float(r)
    if not 0.0 < r <= 1.0:
        raise UnknownFunction("pow_r needs 0 < r <= 1 (got %r)." % r)

    def power(t):
        return numpy.power(t, r)
    return ScalarFunction("pow_%r" % r, power, 0.0, True, True, True)


def _x_over_one_plus_x(t):
    return t / (1.0 + t)


def _neg_entropy(t):
    return -t * numpy.log(t)


def _identity(t):
    return t


LOG = ScalarFunction("log", numpy.log, 0.0, True, True, False)
RATIO = ScalarFunction("ratio", _x_over_one_plus_x, 0.0, True, True, True)
LOG1P = ScalarFunction("log1p", numpy.log1p, 0.0, True, True, True)
NEG_ENTROPY = ScalarFunction("neg_entropy", _neg_entropy, 0.0,
                             False, True, False)
IDENTITY = ScalarFunction("identity", _identity, -numpy.inf, True, True, False)

_FIXED = {f.name: f for f in (LOG, RATIO, LOG1P, NEG_ENTROPY, IDENTITY)}

#: Names listed by the ``catalog`` command, in display order.
CATALOG_NAMES = ("log", "pow_0.5", "ratio", "log1p", "neg_entropy",
                 "identity")


def catalog_lookup(name):
    """
    Return the catalog function called `name`

    Powers are spelled ``pow_<r>``, for instance ``pow_0.5``.

    :raises UnknownFunction:
    """
    if isinstance(name, ScalarFunction):
        return name
    if name in _FIXED:
        return _FIXED[name]
    if name.startswith("pow_"):
        try:
            r = float(name[4:])
        except ValueError:
            raise UnknownFunction("Unknown power '%s'." % name)
        return make_power(r)
    raise UnknownFunction("Unknown scalar function '%s'." % name)


def catalog():
    return [catalog_lookup(name) for name in CATALOG_NAMES]


## Numerical property checks ##################################################


def _sampling_range(f):
    low = f.domain_floor if numpy.isfinite(f.domain_floor) else 0.0
    return (low + 0.05, low + 4.0)


def check_operator_concavity_numeric(f, trials, dim, rng, tol=None,
                                     eig_range=None):
    """
    Sample pairs of positive matrices and test midpoint-style operator
    concavity ``f(sA + (1-s)B) >= s f(A) + (1-s) f(B)`` at random `s`.

    Returns ``False`` on the first counterexample, ``True`` otherwise.
    A ``True`` result is evidence, not proof.
    """
    from .instances import GeneratorConfig, random_hpd

    tol = resolve_tolerances(tol)
    cfg = GeneratorConfig(dim=dim, eig_range=eig_range or _sampling_range(f),
                          tol=tol)
    for trial in range(trials):
        A = random_hpd(cfg, rng)
        B = random_hpd(cfg, rng)
        s = rng.uniform(0.0, 1.0)
        mixed = apply_function(add(scale(A, s), scale(B, 1.0 - s)), f, tol)
        chord = add(scale(apply_function(A, f, tol), s),
                    scale(apply_function(B, f, tol), 1.0 - s))
        verdict = loewner_leq(chord, mixed, tol)
        if not verdict:
            logger.debug("'%s' not operator concave at trial %d "
                         "(slack %r)", f.name, trial, verdict.slack_min_eig)
            return False
    return True


def check_operator_monotonicity_numeric(f, trials, dim, rng, tol=None,
                                        eig_range=None):
    """
    Sample ``A <= B`` (``B = A + P`` with ``P`` positive) and test
    ``f(A) <= f(B)``. Returns ``False`` on the first counterexample.
    """
    from .instances import GeneratorConfig, random_hpd

    tol = resolve_tolerances(tol)
    lo, hi = eig_range or _sampling_range(f)
    cfg = GeneratorConfig(dim=dim, eig_range=(lo, hi), tol=tol)
    bump = GeneratorConfig(dim=dim, eig_range=(tol.eig_floor, hi), tol=tol)
    for trial in range(trials):
        A = random_hpd(cfg, rng)
        B = add(A, random_hpd(bump, rng))
        verdict = loewner_leq(apply_function(A, f, tol),
                              apply_function(B, f, tol), tol)
        if not verdict:
            logger.debug("'%s' not operator monotone at trial %d "
                         "(slack %r)", f.name, trial, verdict.slack_min_eig)
            return False
    return True
