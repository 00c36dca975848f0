"""Binding functions with every Ramsey number replaced by ``ramsey_upper``.

* ``chair``: f(w) = 7.5 w^2, rounded down since colour counts are integers.
* ``general``: f(1) = 1 and f(w) = f(w-1) + f(1) + c(t) * w * R(t, w).
* ``ktt``: g(1) = 1 and g(w) = g(w-1) + D(w) where D collects the per-level
  palette budgets of the biclique-free recursion.
* ``perfect`` (t = 1): f(w) = w.

All recurrences have increasing increments, so each function is convex with
f(0) = 0 and therefore superadditive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from broomcolor.errors import InputError
from broomcolor.oracle import ramsey_upper

MODES = ("general", "chair", "ktt", "perfect")

# c(t) is fitted over this range; past the exact Ramsey table the ratio
# R(t, w+1) / (w R(t, w)) only decreases.
C_HORIZON = 256


@lru_cache(maxsize=None)
def c_general(t: int) -> int:
    """Least integer c with t^2 w R + 4R + R(t, w+1) <= c w R for 2 <= w <= C_HORIZON."""
    best = 1
    for w in range(2, C_HORIZON + 1):
        R = ramsey_upper(t, w)
        need = t * t * w * R + 4 * R + ramsey_upper(t, w + 1)
        best = max(best, -(-need // (w * R)))
    return best


def beta_hat(t: int, w: int) -> int:
    """Z-palette budget for the biclique-free recursion: w R(t, w+1) + w R(t-1, w)."""
    return w * ramsey_upper(t, w + 1) + w * ramsey_upper(t - 1, w)


def ktt_level_cost(t: int, w: int) -> int:
    return (
        w
        + beta_hat(t, w)
        + (t + 2) * t * t * w * ramsey_upper(t - 1, w)
        + (2 * t * t + 4) * ramsey_upper(t, w)
    )


@lru_cache(maxsize=None)
def _general(t: int, w: int) -> int:
    if w <= 1:
        return max(w, 0)
    acc = 1
    c = c_general(t)
    for k in range(2, w + 1):
        acc += 1 + c * k * ramsey_upper(t, k)
    return acc


@lru_cache(maxsize=None)
def _ktt(t: int, w: int) -> int:
    if w <= 1:
        return max(w, 0)
    acc = 1
    for k in range(2, w + 1):
        acc += ktt_level_cost(t, k)
    return acc


@dataclass(frozen=True)
class BoundFunction:
    t: int
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown bound mode {self.mode!r}")
        if self.mode == "chair" and self.t != 2:
            raise InputError("chair mode needs t = 2")
        if self.mode == "ktt" and self.t < 3:
            raise InputError("ktt mode needs t >= 3")
        if self.mode == "general" and self.t < 2:
            raise InputError("general mode needs t >= 2")
        if self.mode == "perfect" and self.t != 1:
            raise InputError("perfect mode needs t = 1")

    def __call__(self, w: int) -> int:
        return certified_bound(self, w)

    @property
    def c(self) -> int | None:
        return c_general(self.t) if self.mode == "general" else None

    def to_json(self) -> dict:
        return {"t": self.t, "mode": self.mode}


def certified_bound(bound: BoundFunction, w: int) -> int:
    if w < 0:
        raise InputError(f"clique number must be >= 0, got {w}")
    if bound.mode == "chair":
        return 15 * w * w // 2
    if bound.mode == "general":
        return _general(bound.t, w)
    if bound.mode == "ktt":
        return _ktt(bound.t, w)
    return w


def bound_for(t: int, mode: str) -> BoundFunction:
    return BoundFunction(t, mode)
