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
Counters for recoverable anomalies met while generating and checking
instances. A :class:`WarningCounts` is attached to every suite report.
"""


class WarningCounts(object):
    """
    Count recoverable anomalies.

    .. attribute:: regenerated_instances

        Generator draws thrown away because an entry fell below the
        positivity floor.

    .. attribute:: rejected_pairs

        Two-operator candidates rejected by a hypothesis gate.

    .. attribute:: domain_exits

        Trials whose f-argument left the domain of f.

    .. attribute:: trial_errors

        Trials that raised and were recorded with an ``error`` verdict.

    .. attribute:: pair_attempts

        Two-operator candidates drawn, accepted or not.

    .. attribute:: accepted_pairs

        Two-operator candidates that passed both gates.
    """

    fields = ("regenerated_instances", "rejected_pairs", "domain_exits",
              "trial_errors", "pair_attempts", "accepted_pairs")

    #: The fields that count something going wrong.
    anomalies = fields[:4]

    def __init__(self):
        for name in self.fields:
            setattr(self, name, 0)

    @property
    def any(self):
        return any(getattr(self, name) for name in self.anomalies)

    @property
    def acceptance_rate(self):
        """Accepted over drawn two-operator candidates, ``None`` if none."""
        if not self.pair_attempts:
            return None
        return self.accepted_pairs / self.pair_attempts

    def merge(self, other):
        """Add the counts of `other` to this counter."""
        for name in self.fields:
            setattr(self, name, getattr(self, name) + getattr(other, name))
        return self

    def to_dict(self):
        return {name: getattr(self, name) for name in self.fields}
