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
Command-line manager for opentropy

"""
import logging
import os

from flask_script import Command, Manager

from . import harness
from .harness import app

manager = Manager(app, with_default_commands=False,
                  description="Numerical checks of operator entropy "
                              "inequalities")


def _tolerance_options(func):
    for flag in ("--tol-order", "--tol-eig", "--eig-floor"):
        func = manager.option(flag, dest=flag[2:].replace("-", "_"),
                              help="override %s" % flag[2:])(func)
    func = manager.option("--eigensolver", dest="eigensolver",
                          choices=("lapack", "jacobi"))(func)
    return func


def _instance_options(func):
    options = (("--dim", "matrix dimension"),
               ("--n", "tuple length"),
               ("--m", "rows of weight functions"),
               ("--k", "permutations or Kraus operators"),
               ("--p", "suite parameter (p, q or t)"),
               ("--t0", "shift t0 > 0"),
               ("--f", "scalar function name"),
               ("--seed", "master seed"),
               ("--eig-min", "smallest generated eigenvalue"),
               ("--eig-max", "largest generated eigenvalue"))
    for flag, text in options:
        func = manager.option(flag, dest=flag[2:].replace("-", "_"),
                              help=text)(func)
    return func


@manager.option("-s", "--suite", dest="suite",
                help="suite id, or 'all' (default)")
@manager.option("--trials", dest="trials")
@manager.option("--sweep", dest="sweep", action="store_true", default=None,
                help="cycle t0 and f as well as the parameter grid")
@manager.option("--workers", dest="workers")
@manager.option("--worst", dest="worst")
@manager.option("--format", dest="format",
                choices=harness.FORMATS)
@manager.option("-o", "--output", dest="output")
@manager.option("--summary", dest="summary")
@_instance_options
@_tolerance_options
def check(**flags):
    """Run inequality suites and write their trial records."""
    return harness.check(flags)


@manager.option("functional", choices=harness.FUNCTIONALS)
@manager.option("--a", dest="a", action="append", help="matrix JSON file")
@manager.option("--b", dest="b", action="append", help="matrix JSON file")
@manager.option("--q", dest="q")
@manager.option("--p", dest="p")
@manager.option("--f", dest="f")
@manager.option("-o", "--output", dest="output")
@_tolerance_options
def compute(**flags):
    """Evaluate an operator functional on matrices read from files."""
    return harness.compute(flags)


@manager.option("--object", dest="object", choices=harness.OBJECTS)
@manager.option("-s", "--suite", dest="suite")
@manager.option("--trial", dest="trial")
@manager.option("--kind", dest="kind", help="positive map kind")
@manager.option("--dim-out", dest="dim_out")
@manager.option("-o", "--output", dest="output")
@_instance_options
@_tolerance_options
def gen(**flags):
    """Generate a reproducible instance as JSON."""
    return harness.gen(flags)


@manager.option("-s", "--suite", dest="suite", required=True)
@manager.option("--budget", dest="budget")
@manager.option("--restarts", dest="restarts")
@manager.option("-o", "--output", dest="output")
@_instance_options
@_tolerance_options
def search(**flags):
    """Search for the instance with the smallest slack."""
    return harness.search(flags)


class Catalog(Command):
    """List scalar functions and suites."""

    def run(self):
        return harness.show_catalog({})


manager.add_command("catalog", Catalog())


def main():
    if 'OPENTROPY_SETTINGS' in os.environ:
        app.config.from_envvar('OPENTROPY_SETTINGS')

    logging.basicConfig(level=app.config.get('LOG_LEVEL', 'WARNING'))

    return manager.run()
