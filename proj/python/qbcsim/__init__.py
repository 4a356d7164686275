# Copyright 2026 The qbcsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the qbcsim quantum bit commitment simulator."""

from qbcsim._core import (
    ConfigError,
    bb84_state,
    delta_family_report,
    helstrom,
    list_experiments,
    optimal_cheat,
    qbc1_adam_cheat_probability,
    qbc1_babe_survival,
    qbc1_run,
    qbc2_gap,
    r_pi,
    run_experiment,
    schmidt_coefficients,
    security_report,
    teleport_distribution,
    teleport_gap,
    trace_norm,
)

__all__ = [
    "ConfigError",
    "bb84_state",
    "delta_family_report",
    "helstrom",
    "list_experiments",
    "optimal_cheat",
    "qbc1_adam_cheat_probability",
    "qbc1_babe_survival",
    "qbc1_run",
    "qbc2_gap",
    "r_pi",
    "run_experiment",
    "schmidt_coefficients",
    "security_report",
    "teleport_distribution",
    "teleport_gap",
    "trace_norm",
]
