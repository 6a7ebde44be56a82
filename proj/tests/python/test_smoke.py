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

from fractions import Fraction

import numpy as np
import pytest

import stablerank

W_SHAPE = [2, 2, 2]
W_ELEMENTS = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_trank_w_support():
    r = stablerank.trank(W_SHAPE, W_ELEMENTS)
    assert r["value"] == Fraction(3, 2)
    assert r["certificate_ok"]
    assert stablerank.dual_trank(W_SHAPE, W_ELEMENTS)["value"] == Fraction(3, 2)


def test_weights_accept_fractions_and_strings():
    r = stablerank.trank([2, 2], [(0, 0)], alpha=[Fraction(1, 3), "2"])
    assert r["value"] == Fraction(1, 3)
    with pytest.raises(ValueError):
        stablerank.trank([2, 2], [(0, 0)], alpha=["1"])


def test_tslice_and_slope():
    assert stablerank.tslice(W_SHAPE, W_ELEMENTS) == 2
    assert stablerank.tslice(W_SHAPE, []) == 0
    slope = stablerank.psg_slope(W_SHAPE, W_ELEMENTS, [[1, 0], [1, 0], [1, 0]])
    assert slope == Fraction(3, 2)
    with pytest.raises(stablerank.ResourceLimitError):
        stablerank.tslice([30, 30], [(0, 0)])


def test_grank_sandwich():
    entries = {idx: 1 for idx in W_ELEMENTS}
    lower, upper = stablerank.grank(W_SHAPE, entries, budget=20)
    assert upper == Fraction(3, 2)
    assert lower == pytest.approx(1.5, abs=1e-6)


def test_spectral_norm():
    m = np.array([[0, 1, 1, 0], [1, 0, 0, 0]], dtype=complex)
    assert stablerank.spectral_norm(m) == pytest.approx(np.sqrt(2), abs=1e-12)
    rng = np.random.default_rng(0)
    a = rng.normal(size=(7, 5)) + 1j * rng.normal(size=(7, 5))
    assert stablerank.spectral_norm(a) == pytest.approx(
        np.linalg.norm(a, 2), abs=1e-10)


def test_ncrk():
    assert stablerank.ncrk(2, [[[1, 0], [0, 1]]]) == 2
    assert stablerank.ncrk(2, [[[1, 0], [0, 0]]]) == 1
    assert stablerank.ncrk(2, [[[1, 0], [0, 0]]], mode="search", budget=50) == 1


def test_capset():
    assert stablerank.capset_bound(20) == 283466139
    assert stablerank.eg_bound(3) == 30
    assert stablerank.eg_prime_bound(3) == 18
    value, t = stablerank.reduced_lp(1)
    assert value == Fraction(9, 4)
    assert t == [Fraction(1, 2), Fraction(1, 4), 0]
    assert stablerank.full_capset_lp(1) == Fraction(9, 4)
    assert stablerank.theta() < 2.756
