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
Provide the commands of the opentropy command line.

Each command parses its flags into a request with :func:`_extract_parameter`
(validating everything before any work starts), runs it, writes its output
and returns the process exit code.
"""

from functools import wraps
import json
import logging
import os
import sys
import time

from flask import Flask
import strict_rfc3339

from . import __version__
from .csvformatter import format_csv
from .entropy import (OperatorTuple, f_divergence, furuta_entropy,
                      generalized_entropy_sum, natural_power_mean,
                      perspective, relative_operator_entropy)
from .errors import (InputException, InvalidKind, OpentropyException,
                     UsageException)
from .functions import catalog, catalog_lookup
from .instances import (GeneratorConfig, generate_two_operator_pair,
                        random_contractions, random_doubly_stochastic,
                        random_hpd, random_positive_map,
                        random_probability_vector,
                        random_resolution_of_identity, random_weight_function,
                        sinkhorn_doubly_stochastic, to_json)
from .matrix import ToleranceConfig, dump_matrix, load_matrix
from .runner import adversarial_search, run_battery
from .suites import SUITE_IDS, SUITES, SuiteConfig, lookup_suite

logger = logging.getLogger("opentropy.harness")

app = Flask(__name__)
app.config.update(
    TOL_EIG=1e-10,
    TOL_ORDER=1e-8,
    EIG_FLOOR=1e-8,
    EIGENSOLVER="lapack",
    WORKERS=1,
    WORST_TRIALS=5,
    LOG_LEVEL="WARNING",
    EIG_RANGE=(0.1, 2.0),
)

ALL_SUITES = "all"
FORMAT_JSON = "json"
FORMAT_JSONL = "jsonl"
FORMAT_CSV = "csv-summary"
FORMATS = (FORMAT_JSON, FORMAT_JSONL, FORMAT_CSV)

FUNCTIONALS = ("natural-power-mean", "relative-entropy", "furuta",
               "generalized", "perspective", "divergence")
OBJECTS = ("hpd", "resolution", "doubly-stochastic", "sinkhorn-stochastic",
           "weight-function", "positive-map", "two-operator-pair",
           "contractions", "probability-vector")


# Util functions ##############################################################
def _timestamp_to_rfc3339(dt):
    """
    Convert from a UNIX timestamp to a RFC3339 timestamp.
    """
    return strict_rfc3339.timestamp_to_rfc3339_utcoffset(dt)


def _boolean(value):
    if isinstance(value, bool):
        return value
    if str(value).lower() in ("1", "true", "yes"):
        return True
    if str(value).lower() in ("0", "false", "no"):
        return False
    raise ValueError(value)


def _write(path, text):
    """
    Write `text` to `path`, or to standard output if `path` is ``None``.
    """
    if path is None:
        sys.stdout.write(text)
        return
    logger.info("Writing %s", path)
    try:
        with open(path, "w") as f:
            f.write(text)
    except (IOError, OSError) as e:
        raise InputException("Could not write '%s': %s." % (path, e))


def _dumps(obj):
    return json.dumps(obj, sort_keys=True) + "\n"


def handle_exception(error):
    """
    Report `error` on standard error and return its exit code.
    """
    sys.stderr.write(_dumps({"error": {"type": type(error).__name__,
                                       "description": str(error)}}))
    return error.exit_code


def command(run):
    """
    Turn an ``OpentropyException`` escaping `run` into its exit code.
    """
    @wraps(run)
    def wrapper(data):
        data = {key: value for key, value in data.items()
                if value is not None}
        try:
            return run(data)
        except OpentropyException as e:
            return handle_exception(e)
    return wrapper


# Request #####################################################################
def _extract_parameter(data, parameter, cast, default=None, ignore=False,
                       validator=None):
    """
    Extract a flag from the command line and raise an exception if any
    required flag is missing or invalid.
    """
    if parameter not in data:
        if default is None and not ignore:
            raise UsageException("Flag '--%s' not provided." %
                                 parameter.replace("_", "-"))
        return default

    try:
        result = cast(data[parameter])
    except Exception:
        raise UsageException("Unable to parse flag '--%s': %s." %
                             (parameter.replace("_", "-"), data[parameter]))

    if validator is not None and not validator(result):
        raise UsageException("Invalid value for flag '--%s': %s." %
                             (parameter.replace("_", "-"), data[parameter]))

    return result


def parse_tolerances(data):
    """
    Tolerances from the application config, ``OPENTROPY_TOL`` and the
    ``--tol-*`` flags, in increasing order of precedence.
    """
    tol_order = app.config.get("TOL_ORDER", 1e-8)
    if "OPENTROPY_TOL" in os.environ:
        try:
            tol_order = float(os.environ["OPENTROPY_TOL"])
        except ValueError:
            raise UsageException("OPENTROPY_TOL is not a number: %r."
                                 % os.environ["OPENTROPY_TOL"])
    return ToleranceConfig(
        tol_eig=_extract_parameter(data, "tol_eig", float,
                                   app.config.get("TOL_EIG", 1e-10)),
        tol_order=_extract_parameter(data, "tol_order", float, tol_order),
        eig_floor=_extract_parameter(data, "eig_floor", float,
                                     app.config.get("EIG_FLOOR", 1e-8)),
        eigensolver=_extract_parameter(data, "eigensolver", str,
                                       app.config.get("EIGENSOLVER",
                                                      "lapack")))


def _parse_suite_config(data, suite_id):
    lo, hi = app.config.get("EIG_RANGE", (0.1, 2.0))
    positive = lambda x: x >= 1
    return SuiteConfig(
        suite_id=suite_id,
        trials=_extract_parameter(data, "trials", int, 100,
                                  validator=lambda x: x >= 0),
        dim=_extract_parameter(data, "dim", int, 3, validator=positive),
        n=_extract_parameter(data, "n", int, 3, validator=positive),
        m=_extract_parameter(data, "m", int, 3, validator=positive),
        k=_extract_parameter(data, "k", int, 4, validator=positive),
        p=_extract_parameter(data, "p", float, ignore=True),
        t0=_extract_parameter(data, "t0", float, 1.0,
                              validator=lambda x: x > 0),
        f=_extract_parameter(data, "f", str, ignore=True,
                             validator=catalog_lookup),
        sweep=_extract_parameter(data, "sweep", _boolean, False),
        master_seed=_extract_parameter(data, "seed", int, 0,
                                       validator=lambda x: 0 <= x < 2 ** 64),
        eig_range=(_extract_parameter(data, "eig_min", float, lo),
                   _extract_parameter(data, "eig_max", float, hi)),
        tolerances=parse_tolerances(data),
        worst=_extract_parameter(data, "worst", int,
                                 app.config.get("WORST_TRIALS", 5),
                                 validator=lambda x: x >= 0),
        workers=_extract_parameter(data, "workers", int,
                                   app.config.get("WORKERS", 1),
                                   validator=positive))


def _parse_suite_id(data, allow_all=False):
    suite_id = _extract_parameter(data, "suite", str,
                                  ALL_SUITES if allow_all else None)
    if suite_id != ALL_SUITES or not allow_all:
        lookup_suite(suite_id)
    return suite_id


def parse_check_request(data):
    """
    Parse the flags of ``check``.
    """
    req = {"version": __version__}
    req['suite'] = _parse_suite_id(data, allow_all=True)
    req['config'] = _parse_suite_config(data, SUITE_IDS[0]
                                        if req['suite'] == ALL_SUITES
                                        else req['suite'])
    req['format'] = _extract_parameter(data, "format", str, FORMAT_JSONL,
                                       validator=lambda x: x in FORMATS)
    req['output'] = _extract_parameter(data, "output", str, ignore=True)
    req['summary'] = _extract_parameter(data, "summary", str, ignore=True)
    return req


def parse_compute_request(data):
    """
    Parse the flags of ``compute``.
    """
    req = {"version": __version__}
    req['functional'] = _extract_parameter(
        data, "functional", str, validator=lambda x: x in FUNCTIONALS)
    req['tolerances'] = tol = parse_tolerances(data)
    req['a'] = [load_matrix(path, tol)
                for path in _extract_parameter(data, "a", list)]
    req['b'] = [load_matrix(path, tol)
                for path in _extract_parameter(data, "b", list)]

    if req['functional'] in ("natural-power-mean", "generalized"):
        req['q'] = _extract_parameter(data, "q", float)
    elif req['functional'] == "furuta":
        req['p'] = _extract_parameter(data, "p", float,
                                      validator=lambda x: 0 <= x <= 1)
    if req['functional'] in ("generalized", "perspective", "divergence"):
        req['f'] = _extract_parameter(data, "f", catalog_lookup)

    if req['functional'] in ("generalized", "divergence"):
        if len(req['a']) != len(req['b']):
            raise UsageException("'--a' and '--b' must be given equally "
                                 "often.")
    elif len(req['a']) != 1 or len(req['b']) != 1:
        raise UsageException("'%s' takes exactly one '--a' and one '--b'."
                             % req['functional'])

    req['output'] = _extract_parameter(data, "output", str, ignore=True)
    return req


def parse_gen_request(data):
    """
    Parse the flags of ``gen``.
    """
    req = {"version": __version__}
    req['object'] = _extract_parameter(data, "object", str, ignore=True,
                                       validator=lambda x: x in OBJECTS)
    req['suite'] = _extract_parameter(data, "suite", str, ignore=True)
    if (req['object'] is None) == (req['suite'] is None):
        raise UsageException("Give exactly one of '--object' and '--suite'.")
    if req['suite'] is not None:
        lookup_suite(req['suite'])

    req['config'] = _parse_suite_config(data, req['suite'] or
                                        "gen:" + req['object'])
    req['trial'] = _extract_parameter(data, "trial", int, 0,
                                      validator=lambda x: x >= 0)
    req['kind'] = _extract_parameter(data, "kind", str, "kraus")
    req['dim_out'] = _extract_parameter(data, "dim_out", int,
                                        req['config'].dim,
                                        validator=lambda x: x >= 1)
    req['output'] = _extract_parameter(data, "output", str, ignore=True)
    return req


def parse_search_request(data):
    """
    Parse the flags of ``search``.
    """
    req = {"version": __version__}
    req['suite'] = _parse_suite_id(data)
    req['config'] = _parse_suite_config(data, req['suite'])
    req['budget'] = _extract_parameter(data, "budget", int, 1000,
                                       validator=lambda x: x >= 1)
    req['restarts'] = _extract_parameter(data, "restarts", int, ignore=True,
                                         validator=lambda x: x >= 1)
    req['output'] = _extract_parameter(data, "output", str, ignore=True)
    return req


# Response ####################################################################
def _footer(summary):
    return {"footer": {
        "failed": summary["failed"],
        "suites": [{"suite_id": suite["suite_id"],
                    "counts": suite["counts"],
                    "worst_slack_min_eig": suite["worst_slack_min_eig"],
                    "acceptance_rate": suite["acceptance_rate"]}
                   for suite in summary["suites"]]}}


def run_check(req):
    """
    Run the requested suites and write their records and summary.
    Returns 1 if any record failed, else 0.
    """
    config = req['config']
    suite_ids = SUITE_IDS if req['suite'] == ALL_SUITES else (req['suite'],)
    reports = run_battery(config, suite_ids)

    generated = _timestamp_to_rfc3339(time.time())
    summary = {
        "generated": generated,
        "version": req['version'],
        "master_seed": config.master_seed,
        "suites": [report.to_summary() for report in reports],
        "failed": any(report.failed for report in reports),
    }

    if req['format'] == FORMAT_JSONL:
        header = {"header": {"generated": generated,
                             "version": req['version'],
                             "suites": list(suite_ids),
                             "config": config.to_dict()}}
        lines = [_dumps(header)]
        for report in reports:
            lines.extend(_dumps(record.to_dict())
                         for record in report.records)
        lines.append(_dumps(_footer(summary)))
        _write(req['output'], "".join(lines))
        summary_path = req['summary']
        if summary_path is None and req['output'] is not None:
            summary_path = os.path.splitext(req['output'])[0] + \
                ".summary.json"
        if summary_path is not None:
            _write(summary_path, _dumps(summary))
    elif req['format'] == FORMAT_JSON:
        _write(req['output'], _dumps(summary))
    elif req['format'] == FORMAT_CSV:
        csv = format_csv(summary)
        path = req['output']
        if path is not None and os.path.isdir(path):
            path = os.path.join(path, csv['filename'])
        _write(path, csv['data'])

    return 1 if summary['failed'] else 0


def run_compute(req):
    """
    Evaluate one functional on matrices read from files.
    """
    A, B, tol = req['a'], req['b'], req['tolerances']
    functional = req['functional']
    if functional == "natural-power-mean":
        result = natural_power_mean(A[0], B[0], req['q'], tol)
    elif functional == "relative-entropy":
        result = relative_operator_entropy(A[0], B[0], tol)
    elif functional == "furuta":
        result = furuta_entropy(A[0], B[0], req['p'], tol)
    elif functional == "generalized":
        result = generalized_entropy_sum(OperatorTuple(A, tol=tol),
                                         OperatorTuple(B, tol=tol), req['q'],
                                         req['f'], tol)
    elif functional == "perspective":
        result = perspective(B[0], A[0], req['f'], tol)
    elif functional == "divergence":
        result = f_divergence(B, A, req['f'], tol)
    else:
        raise UsageException("Unknown functional '%s'." % functional)

    _write(req['output'], dump_matrix(result) + "\n")
    return 0


def _generate_object(req):
    config = req['config']
    gen = GeneratorConfig(master_seed=config.master_seed, dim=config.dim,
                          n=config.n, eig_range=config.eig_range,
                          trial_index=req['trial'], suite_id=config.suite_id,
                          tol=config.tolerances)
    rng = gen.rng()
    kind = req['object']
    if kind == "hpd":
        return random_hpd(gen, rng)
    elif kind == "resolution":
        return random_resolution_of_identity(gen, rng)
    elif kind == "doubly-stochastic":
        return random_doubly_stochastic(gen.n, config.k, rng)
    elif kind == "sinkhorn-stochastic":
        return sinkhorn_doubly_stochastic(gen.n, rng)
    elif kind == "weight-function":
        return random_weight_function(config.m, gen.n, rng)
    elif kind == "positive-map":
        return random_positive_map(req['kind'], gen.dim, req['dim_out'],
                                   config.k, rng)
    elif kind == "two-operator-pair":
        p = 0.5 if config.p is None else config.p
        return generate_two_operator_pair(gen, p, rng)
    elif kind == "contractions":
        return random_contractions(gen.n, gen.dim, rng)
    elif kind == "probability-vector":
        return random_probability_vector(gen.n, rng)
    raise InvalidKind("Unknown object '%s'." % kind)


def run_gen(req):
    """
    Write a generated object, or the instance of one suite trial, as JSON.
    """
    if req['object'] is not None:
        obj = {"object": req['object'], "seed": req['config'].master_seed,
               "trial": req['trial'], "value": to_json(_generate_object(req))}
    else:
        config = req['config']
        suite = lookup_suite(req['suite'])
        gen = config.generator_config(req['trial'])
        params = suite.parameters(config, req['trial'])
        instance = suite.generate(config, gen, params, gen.rng(), None)
        obj = {"suite_id": suite.suite_id, "trial_index": req['trial'],
               "instance_seed": gen.replay_handle, "parameters": params,
               "instance": to_json(instance)}
    _write(req['output'], _dumps(obj))
    return 0


def run_search(req):
    """
    Run the adversarial search and write its worst instance.
    """
    report = adversarial_search(req['suite'], req['config'], req['budget'],
                                restarts=req['restarts'])
    _write(req['output'], _dumps(report.to_dict()))
    return 1 if report.failed else 0


def run_catalog():
    """
    List the scalar functions and the suites.
    """
    _write(None, _dumps({"functions": [f.describe() for f in catalog()],
                         "suites": [s.describe() for s in SUITES]}))
    return 0


# Commands ####################################################################
@command
def check(data):
    return run_check(parse_check_request(data))


@command
def compute(data):
    return run_compute(parse_compute_request(data))


@command
def gen(data):
    return run_gen(parse_gen_request(data))


@command
def search(data):
    return run_search(parse_search_request(data))


@command
def show_catalog(data):
    return run_catalog()
