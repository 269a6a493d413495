"""Closed-form lower bounds on the probability that listwise deletion drops every row.

All evaluation happens in log space: ``q**k`` is ``exp(k*log q)`` and
``(1 - x)**n`` is ``exp(n*log1p(-x))``, so ``n = 10**4, k = 10**3`` neither
underflows nor rounds to 1 prematurely. Natural logarithms throughout.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

from listwise.errors import DomainError, InputError


def _check_count(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise InputError(f"{name} must be an integer >= 1, got {value!r}")
    return int(value)


def _check_q_star(q_star: float) -> float:
    q_star = float(q_star)
    if not 0.0 <= q_star < 1.0:
        raise InputError(f"q_star must lie in [0, 1), got {q_star!r}")
    return q_star


@dataclass(frozen=True)
class BoundQuery:
    """The (n, k, q_star) triple; ``k`` doubles as the group count ``g``."""

    n: int
    k: int
    q_star: float

    def __post_init__(self):
        object.__setattr__(self, "n", _check_count("n", self.n))
        object.__setattr__(self, "k", _check_count("k", self.k))
        object.__setattr__(self, "q_star", _check_q_star(self.q_star))


def _log_observed_prob(k: int, q_star: float) -> float:
    # log of q_star**k, the largest chance a single row is fully observed
    return k * math.log(q_star)


def log_p_all_lower_bound(n: int, k: int, q_star: float) -> float:
    """Natural log of ``(1 - q_star**k)**n``; 0.0 when ``q_star == 0``."""
    q = BoundQuery(n, k, q_star)
    if q.q_star == 0.0:
        return 0.0
    x = math.exp(_log_observed_prob(q.k, q.q_star))
    return q.n * math.log1p(-x)


def p_all_lower_bound(n: int, k: int, q_star: float) -> float:
    """Lower bound ``(1 - q_star**k)**n`` on P(no row survives listwise deletion).

    >>> p_all_lower_bound(3, 2, 0.5)
    0.421875
    """
    return math.exp(log_p_all_lower_bound(n, k, q_star))


def p_all_lower_bound_complement(n: int, k: int, q_star: float) -> float:
    """``1 - p_all_lower_bound``, accurate when the bound is close to 1."""
    return -math.expm1(log_p_all_lower_bound(n, k, q_star))


def expected_missing_prop_bound(k: int, q_star: float) -> float:
    """Lower bound ``1 - q_star**k`` on the expected share of rows dropped.

    Does not depend on n; it is the ``n = 1`` case of :func:`p_all_lower_bound`.
    """
    return p_all_lower_bound(1, k, q_star)


def bernoulli_lower(n: int, k: int, q_star: float) -> float:
    """``1 - n*q_star**k``, the Bernoulli-inequality floor under the bound (may be negative)."""
    q = BoundQuery(n, k, q_star)
    if q.q_star == 0.0:
        return 1.0
    return 1.0 - math.exp(math.log(q.n) + _log_observed_prob(q.k, q.q_star))


def max_k_for_target(n: int, q_star: float, target_p_all: float) -> int:
    """Largest k with ``p_all_lower_bound(n, k, q_star) <= target_p_all``.

    Starts from ``floor(log(1 - target**(1/n)) / log(q_star))`` and corrects it
    by direct evaluation, so the bracket ``bound(k) <= target < bound(k+1)``
    holds exactly in floating point. Returns 0 when even ``k = 1`` exceeds the
    target.

    >>> max_k_for_target(10000, 0.75, 0.5)
    33
    """
    n = _check_count("n", n)
    q_star = float(q_star)
    target = float(target_p_all)
    if not 0.0 < q_star < 1.0:
        raise DomainError(f"q_star must lie strictly in (0, 1), got {q_star!r}")
    if not 0.0 < target < 1.0:
        raise DomainError(f"target must lie strictly in (0, 1), got {target!r}")
    # 1 - target**(1/n), computed without cancellation
    gap = -math.expm1(math.log(target) / n)
    k = max(0, math.floor(math.log(gap) / math.log(q_star)))
    while k >= 1 and p_all_lower_bound(n, k, q_star) > target:
        k -= 1
    while p_all_lower_bound(n, k + 1, q_star) <= target:
        k += 1
    return k


@dataclass(frozen=True)
class GrowthFunction:
    """Integer-valued growth rate ``k(n) = max(1, floor(shape(n)))``.

    ``kind`` is one of ``"power_log"`` (``log(n)**c``, c > 1), ``"polynomial"``
    (``n**c``, c > 0), ``"log"`` (``log n``) or ``"constant"``.
    """

    kind: str
    param: float = 0.0

    KINDS = ("power_log", "polynomial", "log", "constant")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InputError(f"unknown growth kind {self.kind!r}; expected one of {self.KINDS}")
        if self.kind == "power_log" and not self.param > 1:
            raise InputError(f"power_log exponent must exceed 1, got {self.param!r}")
        if self.kind == "polynomial" and not self.param > 0:
            raise InputError(f"polynomial exponent must be positive, got {self.param!r}")
        if self.kind == "constant" and not self.param >= 1:
            raise InputError(f"constant growth value must be >= 1, got {self.param!r}")

    @classmethod
    def power_log(cls, c: float) -> GrowthFunction:
        return cls("power_log", float(c))

    @classmethod
    def polynomial(cls, c: float) -> GrowthFunction:
        return cls("polynomial", float(c))

    @classmethod
    def logarithmic(cls) -> GrowthFunction:
        return cls("log")

    @classmethod
    def constant(cls, value: int) -> GrowthFunction:
        return cls("constant", float(value))

    @classmethod
    def parse(cls, text: str) -> GrowthFunction:
        """Parse ``power_log:1.1``, ``polynomial:0.5``, ``log`` or ``constant:5``."""
        kind, _, arg = text.strip().partition(":")
        kind = kind.replace("-", "_")
        try:
            param = float(arg) if arg else 0.0
        except ValueError:
            raise InputError(f"bad growth parameter in {text!r}") from None
        return cls(kind, param)

    def __str__(self) -> str:
        return self.kind if self.kind == "log" else f"{self.kind}:{self.param:g}"

    def shape(self, n: int) -> float:
        """The real-valued rate before flooring; ``n`` may be an arbitrarily large int."""
        if self.kind == "constant":
            return self.param
        log_n = math.log(n)
        if self.kind == "log":
            return log_n
        if self.kind == "power_log":
            return log_n ** self.param
        return math.exp(self.param * log_n)

    def __call__(self, n: int) -> int:
        return growth_eval(self, n)


def growth_eval(f: GrowthFunction, n: int) -> int:
    """Number of variables ``f`` allows at sample size ``n``.

    >>> [growth_eval(GrowthFunction.power_log(1.1), n) for n in (10, 1000, 10**6)]
    [2, 8, 17]
    """
    n = _check_count("n", n)
    return max(1, math.floor(f.shape(n)))


def is_superlog(f: GrowthFunction) -> bool:
    """Whether ``f(n) / log(n)`` diverges, decided from the kind and exponent."""
    if f.kind == "power_log":
        return f.param > 1
    if f.kind == "polynomial":
        return f.param > 0
    return False


def asymptotic_term(n: int, f: GrowthFunction, q_star: float) -> float:
    """``n * q_star**f(n)``, evaluated as ``exp(log n + f(n) log q_star)``.

    Tends to 0 exactly when superlogarithmic growth drives the bound to 1;
    ``1 - asymptotic_term`` is the floor of the sandwich around the bound.
    """
    q_star = float(q_star)
    if not 0.0 < q_star < 1.0:
        raise DomainError(f"q_star must lie strictly in (0, 1), got {q_star!r}")
    k = growth_eval(f, n)
    return math.exp(math.log(n) + k * math.log(q_star))


def sandwich(n: int, f: GrowthFunction, q_star: float) -> tuple[float, float, float]:
    """``(1 - n*q**f(n), (1 - q**f(n))**n, 1)`` along a growth path."""
    k = growth_eval(f, n)
    return 1.0 - asymptotic_term(n, f, q_star), p_all_lower_bound(n, k, q_star), 1.0


def convergence_threshold(f: GrowthFunction, q_star: float, eps: float,
                          ns: Iterable[int]) -> int | None:
    """Smallest n in ``ns`` from which the bound along ``f`` stays >= 1 - eps.

    ``None`` if the last grid point is still below ``1 - eps``.
    """
    threshold = None
    for n in sorted(ns):
        k = growth_eval(f, n)
        if p_all_lower_bound_complement(n, k, q_star) <= eps:
            if threshold is None:
                threshold = n
        else:
            threshold = None
    return threshold
