"""Single rho attempts: Floyd (tortoise and hare) and the Brent variant.

The driving iteration is x -> x*x + c (mod n).  Taken mod an unknown prime
divisor p of n, the sequence enters a cycle after roughly sqrt(p) values (a
birthday-paradox collision), far sooner than the full sequence mod n repeats.
The collision itself is invisible, but it makes gcd(|x_i - x_j|, n)
nontrivial for suitably paired indices: Floyd pairs x_i with x_{2i}, Brent
compares against a saved power-of-two checkpoint.

gcds are the expensive step, so differences are accumulated as a modular
product and a single gcd is taken per batch.  When a whole batch collapses
(its gcd is n), the batch is replayed one step at a time from a checkpoint:
the factor that appeared mid-batch is recovered unless the two sequences
genuinely met, which is the one honest no-factor outcome.

Attempts are deterministic in (n, params).  They may fail to find a factor;
they never report a wrong one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .numeric import gcd

FACTOR = "factor"
NO_FACTOR_CYCLE = "no-factor-cycle"
BUDGET_EXHAUSTED = "budget-exhausted"
CANCELLED = "cancelled"

DEFAULT_GCD_BATCH = 128
_MIN_BUDGET = 100_000


def _ceil_4th_root(n: int) -> int:
    r = math.isqrt(math.isqrt(n))
    while r**4 < n:
        r += 1
    return r


def default_max_iters(n: int, gcd_batch: int = DEFAULT_GCD_BATCH) -> int:
    """Iteration budget for one attempt on n.

    A successful attempt on a semiprime with smallest factor p needs about
    sqrt(p) <= n**(1/4) iterations, so 8 * ceil(n**(1/4)) catches all but the
    unluckiest c; the batch factor keeps the bound meaningful when gcds are
    coarse, and the floor keeps small inputs from starving.
    """
    return max(_MIN_BUDGET, 8 * _ceil_4th_root(n) * gcd_batch)


@dataclass(frozen=True)
class RhoParams:
    """Knobs for one attempt.  c and x0 are residues mod the target n."""

    c: int
    x0: int
    max_iters: int
    gcd_batch: int = DEFAULT_GCD_BATCH

    @classmethod
    def make(
        cls,
        n: int,
        c: int,
        x0: int = 0,
        max_iters: int | None = None,
        gcd_batch: int = DEFAULT_GCD_BATCH,
    ) -> "RhoParams":
        """Build params reduced mod n, with the budget defaulted from n."""
        if max_iters is None:
            max_iters = default_max_iters(n, gcd_batch)
        params = cls(c % n, x0 % n, max_iters, gcd_batch)
        params.validate_for(n)
        return params

    def validate_for(self, n: int) -> None:
        if self.gcd_batch < 1:
            raise ValueError("gcd_batch must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0 <= self.x0 < n:
            raise ValueError(f"x0 must lie in [0, {n})")
        c = self.c % n
        if c == 0 or c == (n - 2) % n:
            raise ValueError("c must not be congruent to 0 or -2 mod n")


@dataclass(frozen=True)
class RhoOutcome:
    """Result of one attempt.

    kind is one of FACTOR, NO_FACTOR_CYCLE, BUDGET_EXHAUSTED, CANCELLED.
    iterations counts advances of the primary sequence, including any
    single-step replay of a collapsed batch.
    """

    kind: str
    iterations: int
    factor: int | None = None

    @property
    def found(self) -> bool:
        return self.kind == FACTOR


def step(x: int, c: int, n: int) -> int:
    """One application of the rho polynomial: x*x + c mod n.

    c = 0 is degenerate (0 is a fixed point and orbits collapse under
    squaring); c = -2 conjugates to a trivial doubling map.  Both are banned
    for attempt params, but step itself computes either on request.
    """
    return (x * x + c) % n


def floyd_cycle_index(f: Callable[[int], int], x0: int) -> int:
    """Smallest i >= 1 with x_i == x_{2i} for the orbit x_{j+1} = f(x_j).

    The tortoise moves one step per round and the hare two, so after i
    rounds they sit at x_i and x_{2i}; equality is guaranteed to occur once
    both are inside the orbit's cycle.  Runs forever if f has no cycle
    reachable from x0 (impossible over a finite domain).
    """
    tortoise = f(x0)
    hare = f(f(x0))
    i = 1
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(f(hare))
        i += 1
    return i


def _check_attempt_args(n: int, params: RhoParams) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"attempt expects an odd n >= 3, got {n}")
    params.validate_for(n)


def rho_attempt(n: int, params: RhoParams, cancel=None) -> RhoOutcome:
    """One Floyd-paired rho attempt on n.

    Each iteration advances the tortoise once and the hare twice, then folds
    |tortoise - hare| into a running product mod n; one gcd is taken per
    gcd_batch iterations.  The cancel signal (anything with is_set()) is
    polled once per batch, so cancellation latency is bounded by the batch
    size plus scheduling delay.
    """
    _check_attempt_args(n, params)
    c = params.c % n
    batch = params.gcd_batch
    budget = params.max_iters
    tort = hare = params.x0
    iters = 0
    while iters < budget:
        if cancel is not None and cancel.is_set():
            return RhoOutcome(CANCELLED, iters)
        span = min(batch, budget - iters)
        tort0, hare0 = tort, hare
        q = 1
        met = False
        steps = 0
        for _ in range(span):
            tort = (tort * tort + c) % n
            hare = (hare * hare + c) % n
            hare = (hare * hare + c) % n
            iters += 1
            steps += 1
            diff = tort - hare
            if diff == 0:
                met = True
                break
            q = q * (diff if diff > 0 else -diff) % n
        d = gcd(q, n)
        if 1 < d < n:
            return RhoOutcome(FACTOR, iters, d)
        if d == n:
            # The whole batch collapsed.  Replay it one gcd per step to
            # recover the factor that first appeared mid-batch.
            tort, hare = tort0, hare0
            for _ in range(steps):
                tort = (tort * tort + c) % n
                hare = (hare * hare + c) % n
                hare = (hare * hare + c) % n
                iters += 1
                d = gcd(abs(tort - hare), n)
                if d == 1:
                    continue
                if d < n:
                    return RhoOutcome(FACTOR, iters, d)
                return RhoOutcome(NO_FACTOR_CYCLE, iters)
            return RhoOutcome(NO_FACTOR_CYCLE, iters)
        if met:
            # Hare caught the tortoise with every gcd trivial: the full
            # sequence mod n cycled and this c is a dud.
            return RhoOutcome(NO_FACTOR_CYCLE, iters)
    return RhoOutcome(BUDGET_EXHAUSTED, iters)


def brent_attempt(n: int, params: RhoParams, cancel=None) -> RhoOutcome:
    """Brent-variant attempt: same contract as rho_attempt.

    The slow pointer teleports to the fast one at power-of-two indices
    instead of walking, saving a third of the polynomial evaluations.
    iterations counts fast-pointer advances.
    """
    _check_attempt_args(n, params)
    c = params.c % n
    batch = params.gcd_batch
    budget = params.max_iters
    y = params.x0
    r = 1
    iters = 0
    while True:
        x = y
        advanced = 0
        while advanced < r:
            if cancel is not None and cancel.is_set():
                return RhoOutcome(CANCELLED, iters)
            span = min(batch, r - advanced, budget - iters)
            if span == 0:
                return RhoOutcome(BUDGET_EXHAUSTED, iters)
            for _ in range(span):
                y = (y * y + c) % n
            iters += span
            advanced += span
        k = 0
        while k < r:
            if cancel is not None and cancel.is_set():
                return RhoOutcome(CANCELLED, iters)
            span = min(batch, r - k, budget - iters)
            if span == 0:
                return RhoOutcome(BUDGET_EXHAUSTED, iters)
            ys = y
            q = 1
            for _ in range(span):
                y = (y * y + c) % n
                diff = x - y
                q = q * (diff if diff > 0 else -diff) % n
            iters += span
            k += span
            d = gcd(q, n)
            if d == 1:
                continue
            if d < n:
                return RhoOutcome(FACTOR, iters, d)
            # Collapsed block: replay from the block's start checkpoint.
            for _ in range(span):
                ys = (ys * ys + c) % n
                iters += 1
                d = gcd(abs(x - ys), n)
                if d == 1:
                    continue
                if d < n:
                    return RhoOutcome(FACTOR, iters, d)
                return RhoOutcome(NO_FACTOR_CYCLE, iters)
            return RhoOutcome(NO_FACTOR_CYCLE, iters)
        r *= 2
