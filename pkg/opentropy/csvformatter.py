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
Format suite summaries as CSV.
"""

from dateutil.parser import parse

COLUMNS = ("suite_id", "trials", "pass", "fail", "hypothesis_unmet", "error",
           "worst_slack_min_eig", "acceptance_rate")


def format_csv(data):
    """ Format a ``check`` summary as one CSV row per suite """

    _output = ",".join(COLUMNS) + "\n"
    for suite in data["suites"]:
        counts = suite["counts"]
        worst = suite["worst_slack_min_eig"]
        _worst = "" if worst is None else f"{worst:.6e}"
        rate = suite["acceptance_rate"]
        _rate = "" if rate is None else f"{rate:.4f}"
        _output += (f"{suite['suite_id']},{suite['trials']},{counts['pass']},"
                    f"{counts['fail']},{counts['hypothesis_unmet']},"
                    f"{counts['error']},{_worst},{_rate}\n")

    # Generate filename
    _start_datetime = parse(data["generated"])
    _start_datestr = _start_datetime.strftime("%Y%m%d-%H%M%SZ")
    if len(data["suites"]) == 1:
        _label = data["suites"][0]["suite_id"]
    else:
        _label = "battery"

    _filename = f"{_start_datestr}_{_label}_{data['master_seed']}.csv"

    return {
        "filename": _filename,
        "data": _output
    }
