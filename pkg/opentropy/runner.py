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
Run suites of trials and search for worst-case instances.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
import logging

import numpy

from .errors import OpentropyException, ParameterOutOfRange
from .instances import perturb, suite_key, to_json
from .suites import (ERROR, FAIL, PASS, SUITE_IDS, UNMET, VERDICTS,
                     error_report, lookup_suite)
from .warnings import WarningCounts

logger = logging.getLogger("opentropy.runner")

#: Stream index keeping the search's moves apart from the trial streams.
SEARCH_STREAM = 2 ** 32

#: Exploration findings kept on a search report.
MAX_FINDINGS = 20


@dataclass
class SuiteReport(object):
    """
    Aggregate of one suite run

    ``worst`` holds, for the `k` trials with the smallest slack, the record
    that attained it (ties broken by trial index).
    """
    suite_id: str
    config: dict
    trials: int
    counts: dict
    worst_slack_min_eig: object
    worst: list
    records: list
    warnings: WarningCounts = field(default_factory=WarningCounts)

    @property
    def failed(self):
        return self.counts[FAIL] > 0

    def to_summary(self):
        return {"suite_id": self.suite_id,
                "config": self.config,
                "trials": self.trials,
                "counts": dict(self.counts),
                "worst_slack_min_eig": self.worst_slack_min_eig,
                "worst": [{"trial_index": r.trial_index,
                           "label": r.label,
                           "slack_min_eig": r.slack_min_eig,
                           "verdict": r.verdict,
                           "instance_seed": r.instance_seed}
                          for r in self.worst],
                "acceptance_rate": self.warnings.acceptance_rate,
                "warnings": self.warnings.to_dict()}


def _run_trial(suite, cfg, trial_index):
    gen = cfg.generator_config(trial_index)
    params = suite.parameters(cfg, trial_index)
    warnings = WarningCounts()
    try:
        instance = suite.generate(cfg, gen, params, gen.rng(), warnings)
        reports = suite.evaluate(instance, params, cfg.tolerances)
    except (OpentropyException, numpy.linalg.LinAlgError) as e:
        logger.warning("Trial %d of %s raised %s: %s", trial_index,
                       suite.suite_id, type(e).__name__, e)
        warnings.trial_errors += 1
        reports = [error_report(suite.suite_id, e)]
    warnings.domain_exits += sum(1 for r in reports
                                 if r.verdict == UNMET
                                 and r.slack_min_eig is None)
    stamped = [r.stamped(trial_index, gen.replay_handle, params)
               for r in reports]
    return stamped, warnings


def _worst(records, k):
    by_trial = {}
    for record in records:
        if record.slack_min_eig is None:
            continue
        best = by_trial.get(record.trial_index)
        if best is None or record.slack_min_eig < best.slack_min_eig:
            by_trial[record.trial_index] = record
    ranked = sorted(by_trial.values(),
                    key=lambda r: (r.slack_min_eig, r.trial_index))
    return ranked[:k]


def run_suite(cfg):
    """
    Run ``cfg.trials`` trials of ``cfg.suite_id``

    Every trial draws from its own seeded stream, so the report does not
    depend on ``cfg.workers``. Trials that raise become ``error`` records.

    :rtype: :class:`SuiteReport`
    """
    suite = lookup_suite(cfg.suite_id)
    logger.info("Running %s: %d trials, dim %d, n %d, seed %d",
                cfg.suite_id, cfg.trials, cfg.dim, cfg.n, cfg.master_seed)

    trial = partial(_run_trial, suite, cfg)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(trial, range(cfg.trials)))
    else:
        outcomes = [trial(i) for i in range(cfg.trials)]

    records = []
    warnings = WarningCounts()
    for reports, trial_warnings in outcomes:
        records.extend(reports)
        warnings.merge(trial_warnings)

    counts = {verdict: 0 for verdict in VERDICTS}
    for record in records:
        counts[record.verdict] += 1

    worst = _worst(records, cfg.worst)
    slacks = [r.slack_min_eig for r in records if r.slack_min_eig is not None]
    report = SuiteReport(cfg.suite_id, cfg.to_dict(), cfg.trials, counts,
                         min(slacks) if slacks else None, worst, records,
                         warnings)

    logger.info("Finished %s: %d pass, %d fail, %d unmet, %d error",
                cfg.suite_id, counts[PASS], counts[FAIL], counts[UNMET],
                counts[ERROR])
    if warnings.any:
        logger.warning("%s warnings: %s", cfg.suite_id, warnings.to_dict())
    return report


def run_battery(cfg, suite_ids=SUITE_IDS):
    """Run every suite in `suite_ids` with `cfg` as the shared base."""
    return [run_suite(replace(cfg, suite_id=suite_id))
            for suite_id in suite_ids]


## Adversarial search #########################################################


@dataclass
class WorstInstanceReport(object):
    """
    The smallest slack found by :func:`adversarial_search`

    ``findings`` lists hypothesis-unmet records with negative slack met
    along the way; they are exploration, not failures.
    """
    suite_id: str
    slack_min_eig: object
    hypothesis_satisfied: bool
    verdict: str
    label: str
    parameters: dict
    instance: dict
    evaluations: int
    restarts: int
    findings: list

    @property
    def failed(self):
        return self.verdict == FAIL

    def to_dict(self):
        return {"suite_id": self.suite_id,
                "slack_min_eig": self.slack_min_eig,
                "hypothesis_satisfied": self.hypothesis_satisfied,
                "verdict": self.verdict,
                "label": self.label,
                "parameters": self.parameters,
                "instance": self.instance,
                "evaluations": self.evaluations,
                "restarts": self.restarts,
                "findings": self.findings}


def _objective(suite, instance, params, tol):
    """The record with the smallest slack, or ``None`` if none exists."""
    try:
        reports = suite.evaluate(instance, params, tol)
    except (OpentropyException, numpy.linalg.LinAlgError) as e:
        logger.debug("Candidate rejected: %s", e)
        return None
    scored = [r for r in reports if r.slack_min_eig is not None]
    if not scored:
        return None
    return min(scored, key=_rank)


def _rank(record):
    return (not record.hypothesis_satisfied, record.slack_min_eig)


def _improves(outcome, current):
    """Strictly smaller slack without leaving the hypotheses."""
    if outcome is None:
        return False
    if current.hypothesis_satisfied and not outcome.hypothesis_satisfied:
        return False
    return outcome.slack_min_eig < current.slack_min_eig


def adversarial_search(suite_id, cfg, budget, restarts=None, step=0.1):
    """
    Random-restart hill climbing that minimises the smallest slack of
    `suite_id` over at most `budget` evaluations

    Each restart starts from a fresh trial instance and proposes
    :func:`~opentropy.instances.perturb` moves, accepting strict
    improvements that keep the hypotheses; the step grows on acceptance
    and shrinks otherwise.
    The result is a deterministic function of `cfg` and `budget`.

    :rtype: :class:`WorstInstanceReport`
    """
    suite = lookup_suite(suite_id)
    cfg = replace(cfg, suite_id=suite_id)
    if budget < 1:
        raise ParameterOutOfRange("Search budget must be positive.")
    restarts = restarts or max(1, budget // 100)
    per_restart = max(1, budget // restarts)
    rng = numpy.random.default_rng(numpy.random.SeedSequence(
        [cfg.master_seed, suite_key(suite_id), SEARCH_STREAM]))
    tol = cfg.tolerances
    logger.info("Searching %s: budget %d over %d restarts", suite_id, budget,
                restarts)

    best = best_instance = best_params = None
    evaluations = 0
    findings = []

    def note(record, params):
        if (record.verdict == UNMET and record.slack_min_eig < 0
                and len(findings) < MAX_FINDINGS):
            findings.append({"label": record.label,
                             "slack_min_eig": record.slack_min_eig,
                             "parameters": dict(params)})

    for restart in range(restarts):
        gen = cfg.generator_config(restart)
        params = suite.parameters(cfg, restart)
        try:
            instance = suite.generate(cfg, gen, params, gen.rng(),
                                      WarningCounts())
        except OpentropyException as e:
            logger.debug("Restart %d could not generate: %s", restart, e)
            evaluations += 1
            continue
        current = _objective(suite, instance, params, tol)
        evaluations += 1
        if current is None:
            continue
        note(current, params)
        size = step

        for move in range(per_restart - 1):
            candidate = perturb(instance, rng, size, tol)
            outcome = _objective(suite, candidate, params, tol)
            evaluations += 1
            if outcome is not None:
                note(outcome, params)
            if _improves(outcome, current):
                instance, current = candidate, outcome
                size = min(size * 1.5, 0.5)
                logger.debug("Restart %d move %d: slack %r", restart, move,
                             outcome.slack_min_eig)
            else:
                size = max(size * 0.7, 1e-4)

        if best is None or _rank(current) < _rank(best):
            best, best_instance, best_params = current, instance, params

    if best is None:
        return WorstInstanceReport(suite_id, None, False, ERROR, "", {}, {},
                                   evaluations, restarts, findings)
    return WorstInstanceReport(suite_id, best.slack_min_eig,
                               best.hypothesis_satisfied, best.verdict,
                               best.label, dict(best_params),
                               to_json(best_instance), evaluations, restarts,
                               findings)
