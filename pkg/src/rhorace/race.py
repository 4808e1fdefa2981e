"""First-factor-wins races: the same n attacked with distinct constants.

Different c values give independent pseudo-random orbits, so their collision
times are independent draws; racing k of them and keeping the first factor
collects the minimum.  Workers are OS processes (CPython threads cannot run
big-int arithmetic in parallel); the winner's factor cancels the rest via a
shared event that each attempt polls once per gcd batch.

A race with workers=1 runs inline in the calling process and is byte-for-byte
a direct rho_attempt call, which keeps single-worker runs reproducible.
"""

from __future__ import annotations

import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field

from . import rho
from .rho import RhoOutcome, RhoParams

_FORK = multiprocessing.get_context("fork")

DETECTORS = {"floyd": rho.rho_attempt, "brent": rho.brent_attempt}
DEFAULT_MAX_ROUNDS = 16


class FactorSearchExhausted(Exception):
    """Every worker of every retry round failed to produce a factor."""

    def __init__(self, n: int, rounds: int):
        super().__init__(f"no factor of {n} found after {rounds} round(s)")
        self.n = n
        self.rounds = rounds


@dataclass
class RaceConfig:
    """Knobs for race_factor.  workers=0 means the detected core count.

    c_values / x0_values override the first round's constants and start
    values (mainly for tests and experiments); retry rounds always draw
    fresh constants from the seeded generator, excluding every c used so
    far.  max_iters=None sizes the budget from n at attempt time.
    """

    workers: int = 0
    seed: int = 0
    c_values: list[int] | None = None
    randomize_c: bool = False
    max_iters: int | None = None
    gcd_batch: int = rho.DEFAULT_GCD_BATCH
    detector: str = "floyd"
    max_rounds: int = DEFAULT_MAX_ROUNDS
    x0_values: list[int] | None = None

    def resolved_workers(self) -> int:
        if self.workers < 0:
            raise ValueError("workers must be >= 0")
        return self.workers if self.workers else (os.cpu_count() or 1)


@dataclass
class RaceOutcome:
    """The winning factor plus per-worker accounting for the final round."""

    factor: int
    winner: int
    per_worker_iterations: list[int]
    wall_time_s: float
    rounds: int = 1
    worker_outcomes: list[RhoOutcome] = field(default_factory=list)


def assign_c(workers: int, seed: int, n: int, randomize: bool = False) -> list[int]:
    """Distinct polynomial constants for the workers, as residues mod n.

    The default rule walks 1, 2, 3, ... skipping the banned residues 0 and
    n-2 (degenerate polynomials); randomize=True draws distinct residues
    from a generator seeded with `seed` instead.  There are exactly n-2
    usable residues, so more workers than that is an error.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if n < 3:
        raise ValueError("n must be >= 3")
    if workers > n - 2:
        raise ValueError(f"only {n - 2} usable constants exist mod {n}")
    banned = {0, (n - 2) % n}
    if randomize:
        rng = random.Random(seed)
        return _draw_distinct_c(rng, n, workers, set())
    out: list[int] = []
    c = 1
    while len(out) < workers:
        if c not in banned:
            out.append(c)
        c += 1
    return out


class _ConstantsExhausted(Exception):
    """No unused residues left to draw; the race gives up early."""


def _draw_distinct_c(rng: random.Random, n: int, count: int, used: set[int]) -> list[int]:
    banned = {0, (n - 2) % n}
    out: list[int] = []
    taken = banned | used
    if count > n - len(taken):
        raise _ConstantsExhausted
    while len(out) < count:
        c = rng.randrange(1, n)
        if c in taken:
            continue
        taken.add(c)
        out.append(c)
    return out


def _worker_main(idx, n, params, detector, cancel, queue):
    attempt = DETECTORS[detector]
    try:
        out = attempt(n, params, cancel)
        queue.put((idx, out.kind, out.iterations, out.factor, None))
    except Exception as exc:  # report instead of hanging the coordinator
        queue.put((idx, "error", 0, None, repr(exc)))


def _run_round(n, params_list, detector):
    """Run one round across processes.

    Returns (outcomes by worker index, index of the first worker whose
    factor reached the queue, or None).  The first factor message sets the
    cancel event; everyone is joined before returning, so no worker
    computation survives this call.
    """
    cancel = _FORK.Event()
    queue = _FORK.SimpleQueue()
    procs = [
        _FORK.Process(
            target=_worker_main,
            args=(i, n, params, detector, cancel, queue),
            daemon=True,
        )
        for i, params in enumerate(params_list)
    ]
    for p in procs:
        p.start()
    results: dict[int, RhoOutcome] = {}
    errors: list[tuple[int, str]] = []
    winner = None
    while len(results) < len(procs):
        idx, kind, iters, factor, err = queue.get()
        if err is not None:
            errors.append((idx, err))
            results[idx] = RhoOutcome(kind, iters)
            continue
        results[idx] = RhoOutcome(kind, iters, factor)
        if kind == rho.FACTOR and winner is None:
            winner = idx
            cancel.set()
    for p in procs:
        p.join()
    queue.close()
    if errors:
        raise RuntimeError(f"race worker(s) failed: {errors}")
    return [results[i] for i in range(len(procs))], winner


def race_factor(n: int, config: RaceConfig | None = None) -> RaceOutcome:
    """Find one nontrivial factor of n by racing workers, first factor wins.

    n must be an odd composite; the pipeline guarantees on top of that that
    n has no prime factor under the pre-pass limit, but the race itself only
    checks what it can cheaply.  Rounds retry with fresh constants until a
    factor appears or config.max_rounds rounds have failed, which raises
    FactorSearchExhausted.
    """
    config = config or RaceConfig()
    if n < 3 or n % 2 == 0:
        raise ValueError(f"race expects an odd n >= 3, got {n}")
    workers = config.resolved_workers()
    if config.detector not in DETECTORS:
        raise ValueError(f"unknown detector {config.detector!r}")
    if config.max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    attempt = DETECTORS[config.detector]
    rng = random.Random(config.seed)
    used: set[int] = set()
    start = time.perf_counter()
    for round_no in range(config.max_rounds):
        if round_no == 0 and config.c_values is not None:
            if len(config.c_values) != workers:
                raise ValueError("c_values must list one constant per worker")
            cs = [c % n for c in config.c_values]
        elif round_no == 0 and not config.randomize_c:
            cs = assign_c(workers, config.seed, n)
        else:
            try:
                cs = _draw_distinct_c(rng, n, workers, used)
            except _ConstantsExhausted:
                raise FactorSearchExhausted(n, round_no) from None
        used.update(cs)
        if round_no == 0 and config.x0_values is not None:
            if len(config.x0_values) != workers:
                raise ValueError("x0_values must list one start per worker")
            x0s = [x % n for x in config.x0_values]
        else:
            x0s = [rng.randrange(n) for _ in range(workers)]
        params_list = [
            RhoParams.make(n, c, x0, config.max_iters, config.gcd_batch)
            for c, x0 in zip(cs, x0s)
        ]
        if workers == 1:
            outcome = attempt(n, params_list[0], None)
            outcomes = [outcome]
            winner = 0 if outcome.found else None
        else:
            outcomes, winner = _run_round(n, params_list, config.detector)
        if winner is not None:
            return RaceOutcome(
                factor=outcomes[winner].factor,
                winner=winner,
                per_worker_iterations=[o.iterations for o in outcomes],
                wall_time_s=time.perf_counter() - start,
                rounds=round_no + 1,
                worker_outcomes=outcomes,
            )
    raise FactorSearchExhausted(n, config.max_rounds)
