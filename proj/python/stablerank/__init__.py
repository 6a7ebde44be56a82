# Copyright 2026 The stablerank Authors
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

"""Exact T-stable ranks, G-stable rank bounds and cap-set bounds."""

from ._stablerank import (
    ResourceLimitError,
    capset_bound,
    dual_trank,
    eg_bound,
    eg_prime_bound,
    full_capset_lp,
    grank,
    ncrk,
    psg_slope,
    reduced_lp,
    spectral_norm,
    theta,
    trank,
    tslice,
)

__all__ = [
    "ResourceLimitError",
    "capset_bound",
    "dual_trank",
    "eg_bound",
    "eg_prime_bound",
    "full_capset_lp",
    "grank",
    "ncrk",
    "psg_slope",
    "reduced_lp",
    "spectral_norm",
    "theta",
    "trank",
    "tslice",
]
