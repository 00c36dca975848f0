from __future__ import annotations

import pytest

from broomcolor.bounds import BoundFunction, c_general, certified_bound, ktt_level_cost
from broomcolor.errors import InputError
from broomcolor.oracle import ramsey_upper


def test_chair_values():
    chair = BoundFunction(2, "chair")
    assert certified_bound(chair, 2) == 30
    assert certified_bound(chair, 1) == 7
    assert certified_bound(chair, 3) == 67
    assert all(chair(w) == int(7.5 * w * w) for w in range(50))


def test_general_recurrence_and_frozen_values():
    for t in (2, 3, 4):
        f = BoundFunction(t, "general")
        c = c_general(t)
        assert f(1) == 1
        for w in range(2, 30):
            assert f(w) >= f(w - 1) + f(1) + c * w * ramsey_upper(t, w)
    assert [c_general(t) for t in (2, 3, 4)] == [7, 12, 20]
    assert [BoundFunction(2, "general")(w) for w in range(1, 5)] == [1, 30, 94, 207]
    assert [BoundFunction(3, "general")(w) for w in range(1, 5)] == [1, 74, 291, 724]


def test_c_satisfies_its_inequality():
    for t in (2, 3, 4):
        c = c_general(t)
        for w in range(2, 200):
            R = ramsey_upper(t, w)
            assert t * t * w * R + 4 * R + ramsey_upper(t, w + 1) <= c * w * R


def test_ktt_recurrence():
    g = BoundFunction(3, "ktt")
    assert g(1) == 1
    for w in range(2, 20):
        assert g(w) == g(w - 1) + ktt_level_cost(3, w)
        assert g(w) >= w


def test_superadditive():
    for f in (BoundFunction(2, "general"), BoundFunction(3, "general"), BoundFunction(3, "ktt"), BoundFunction(2, "chair")):
        for a in range(1, 15):
            for b in range(1, 15):
                assert f(a + b) >= f(a) + f(b)


def test_mode_validation():
    for t, mode in ((3, "chair"), (2, "ktt"), (1, "general"), (2, "perfect"), (2, "bogus")):
        with pytest.raises(InputError):
            BoundFunction(t, mode)
    with pytest.raises(InputError):
        certified_bound(BoundFunction(2, "chair"), -1)
    assert BoundFunction(1, "perfect")(5) == 5
