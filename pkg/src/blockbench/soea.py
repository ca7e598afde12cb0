"""Single-objective evolutionary algorithms.

Six elitist maximizers over fixed-length bit strings, all counting one
evaluation per objective call and stopping at the first of target hit
or budget exhaustion (the generation in flight is finished, and the
hitting evaluation index is recorded separately):

* run_ea: (1+lambda) EA, flip count ~ positive binomial(n, p).
* run_fga: (1+1) scheme with power-law flip counts on [1, n/2].
* run_two_rate: (1+lambda) EA whose rate r self-adjusts; half the
  offspring mutate at r/(2n), half at 2r/n.
* run_var_ea: (1+lambda) EA with normally distributed flip counts whose
  variance shrinks geometrically while the rate keeps hitting the same
  value.
* run_oll_ga: (1+(lambda,lambda)) GA; mutation phase shares one flip
  count, crossover phase pulls mutant bits back into the parent with
  bias 1/lambda, lambda self-adjusts by a fifth-rule-style update.
* run_mu_ga: (mu+1) GA with optional crossover and optional diversity
  preservation (the farthest pair is protected from removal).

Solvers work on raw backing integers internally and wrap the best
solution in a BitString only in the returned RunResult.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bitstring import BitString
from .problems import InstanceSpec, compile_instance, known_optimum
from .rng import RandomSource

__all__ = [
    "SOConfig",
    "RunResult",
    "run_ea",
    "run_fga",
    "run_two_rate",
    "run_var_ea",
    "run_oll_ga",
    "run_mu_ga",
    "run_single",
    "SINGLE_RUNNERS",
    "max_distance_pair",
    "removal_index",
]

VARIANTS = ("ea", "fga", "two_rate", "var_ea", "oll_ga", "mu_ga")


@dataclass
class SOConfig:
    """Algorithm selection plus every tunable the suite exposes."""

    variant: str = "ea"
    lam: int = 10            # offspring per generation (also initial lambda of oll_ga)
    p: float | None = None   # per-bit mutation rate; None means 1/n
    beta: float = 1.5        # power-law exponent (fga)
    f_var: float = 0.98      # variance damping factor (var_ea)
    f_oll: float = 1.5       # lambda adaptation factor (oll_ga)
    mu: int = 8              # parent population size (mu_ga)
    p_c: float = 0.5         # crossover probability (mu_ga)
    diversity: bool = False  # protect the farthest pair (mu_ga)

    def check(self, n: int) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.lam < 1:
            raise ValueError("lam must be >= 1")
        if self.p is not None and not 0.0 < self.p <= 1.0:
            raise ValueError("p must be in (0, 1]")
        if self.variant == "fga" and n < 2:
            raise ValueError("fga needs n >= 2 (flip counts live on [1, n/2])")
        if self.variant == "fga" and self.beta <= 1.0:
            raise ValueError("beta must be > 1")
        if self.variant == "two_rate" and self.lam % 2 != 0:
            raise ValueError("two_rate needs an even lam")
        if self.variant == "mu_ga":
            if self.mu < 2:
                raise ValueError("mu must be >= 2")
            if not 0.0 <= self.p_c <= 1.0:
                raise ValueError("p_c must be in [0, 1]")


@dataclass
class RunResult:
    """Outcome of one run.

    trajectory holds one row per strict improvement of the best-so-far,
    as (evaluation index, best f, block values of the best); the first
    row is the initial sample, so the best-so-far step function can be
    reconstructed at any evaluation index.
    """

    evaluations_used: int
    best_f: float
    best_x: BitString
    hit_target: bool
    hit_index: int | None
    trajectory: list = field(repr=False)


class _Recorder:
    """Per-run bookkeeping: counts evaluations, tracks the incumbent."""

    __slots__ = ("evals", "budget", "target", "best_f", "best_v", "traj",
                 "hit_index", "last_improve")

    def __init__(self, budget: int, target: float | None):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        self.evals = 0
        self.budget = budget
        self.target = target
        self.best_f = None
        self.best_v = 0
        self.traj: list = []
        self.hit_index: int | None = None
        self.last_improve = 0

    def note(self, f, V, v) -> None:
        self.evals += 1
        if self.best_f is None or f > self.best_f:
            self.best_f = f
            self.best_v = v
            self.traj.append((self.evals, float(f), V))
            self.last_improve = self.evals
        if self.hit_index is None and self.target is not None and f >= self.target:
            self.hit_index = self.evals

    @property
    def done(self) -> bool:
        return self.evals >= self.budget or self.hit_index is not None

    def result(self, n: int) -> RunResult:
        return RunResult(
            evaluations_used=self.evals,
            best_f=float(self.best_f),
            best_x=BitString(n, self.best_v),
            hit_target=self.target is not None and self.best_f >= self.target,
            hit_index=self.hit_index,
            trajectory=self.traj,
        )


def _one_plus_lambda(comp, lam, sample_ell, budget, target, rng) -> RunResult:
    """Elitist loop shared by run_ea and run_fga: lambda offspring per
    generation, next parent drawn uniformly from the argmax of
    {parent} + offspring."""
    n = comp.n
    fv = comp.fv
    pm = rng.positions_mask
    rec = _Recorder(budget, target)
    x = rng.getrandbits(n)
    fx, Vx = fv(x)
    rec.note(fx, Vx, x)
    while not rec.done:
        best = fx
        cand = [x]
        for _ in range(lam):
            if rec.evals >= budget:
                break
            y = x ^ pm(n, sample_ell())
            fy, Vy = fv(y)
            rec.note(fy, Vy, y)
            if fy > best:
                best = fy
                cand = [y]
            elif fy == best:
                cand.append(y)
        x = cand[rng.index_below(len(cand))]
        fx = best
    return rec.result(n)


def run_ea(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
           trace=None) -> RunResult:
    """(1+lambda) EA with a fixed mutation rate."""
    cfg.check(problem.n)
    comp = compile_instance(problem)
    n = comp.n
    p = cfg.p if cfg.p is not None else 1.0 / n
    bp = rng.binomial_positive
    return _one_plus_lambda(comp, cfg.lam, lambda: bp(n, p), budget, target, rng)


def run_fga(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
            trace=None) -> RunResult:
    """(1+1) EA with heavy-tailed flip counts on [1, n/2]."""
    cfg.check(problem.n)
    comp = compile_instance(problem)
    half = comp.n // 2
    beta = cfg.beta
    pl = rng.power_law
    # follows the (1+1) scheme regardless of cfg.lam
    return _one_plus_lambda(comp, 1, lambda: pl(half, beta), budget, target, rng)


def run_two_rate(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
                 trace=None) -> RunResult:
    """(1+lambda) EA with a self-adjusting rate split across two halves."""
    cfg.check(problem.n)
    comp = compile_instance(problem)
    n = comp.n
    fv = comp.fv
    pm = rng.positions_mask
    bp = rng.binomial_positive
    lam = cfg.lam
    half = lam // 2
    r_hi = max(2.0, n / 4)
    rec = _Recorder(budget, target)
    x = rng.getrandbits(n)
    fx, Vx = fv(x)
    rec.note(fx, Vx, x)
    r = 2.0
    while not rec.done:
        best = None
        winners = []  # (candidate, came from low-rate half)
        for i in range(lam):
            if rec.evals >= budget:
                break
            low = i < half
            rate = r / (2 * n) if low else min(1.0, 2 * r / n)
            y = x ^ pm(n, bp(n, rate))
            fy, Vy = fv(y)
            rec.note(fy, Vy, y)
            if best is None or fy > best:
                best = fy
                winners = [(y, low)]
            elif fy == best:
                winners.append((y, low))
        if best is None:
            break
        wy, wlow = winners[rng.index_below(len(winners))]
        if best >= fx:
            x, fx = wy, best
        s = 0.75 if wlow else 0.25
        if rng.random() <= s:
            r = max(r / 2, 2.0)
        else:
            r = min(2 * r, r_hi)
        if trace is not None:
            trace.append({"r": r})
    return rec.result(n)


def run_var_ea(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
               trace=None) -> RunResult:
    """(1+lambda) EA with gaussian flip counts and shrinking variance.

    The variance F^c * r * (1 - r/n) collapses while the winning flip
    count keeps confirming the current rate r; any deviation, or n
    evaluations without strict improvement, resets the counter c.
    """
    cfg.check(problem.n)
    comp = compile_instance(problem)
    n = comp.n
    fv = comp.fv
    pm = rng.positions_mask
    lam = cfg.lam
    fdamp = cfg.f_var
    rec = _Recorder(budget, target)
    x = rng.getrandbits(n)
    fx, Vx = fv(x)
    rec.note(fx, Vx, x)
    r = 2.0
    c = 0
    last_reset = 0
    while not rec.done:
        var = (fdamp ** c) * r * (1.0 - r / n)
        best = None
        best_l = None
        besty = x
        for _ in range(lam):
            if rec.evals >= budget:
                break
            l = rng.positive_normal_int(r, var, n)
            y = x ^ pm(n, l)
            fy, Vy = fv(y)
            rec.note(fy, Vy, y)
            if best is None or fy > best:  # winner = first among maxima
                best = fy
                best_l = l
                besty = y
        if best is None:
            break
        c = c + 1 if best_l == r else 0
        r = float(best_l)
        if best >= fx:
            x, fx = besty, best
        if rec.evals - max(rec.last_improve, last_reset) >= n:
            c = 0
            last_reset = rec.evals
        if trace is not None:
            trace.append({"r": r, "c": c})
    return rec.result(n)


def run_oll_ga(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
               trace=None) -> RunResult:
    """(1+(lambda,lambda)) GA with self-adjusting real-valued lambda."""
    cfg.check(problem.n)
    comp = compile_instance(problem)
    n = comp.n
    fv = comp.fv
    pm = rng.positions_mask
    bp = rng.binomial_positive
    fstep = cfg.f_oll
    gain = fstep ** 0.25
    rec = _Recorder(budget, target)
    x = rng.getrandbits(n)
    fx, Vx = fv(x)
    rec.note(fx, Vx, x)
    lam = float(min(cfg.lam, n))
    while not rec.done:
        k = math.ceil(lam)
        ell = bp(n, min(1.0, lam / n))
        best_m = None
        mutants = []
        for _ in range(k):
            if rec.evals >= budget:
                break
            y = x ^ pm(n, ell)
            fy, Vy = fv(y)
            rec.note(fy, Vy, y)
            if best_m is None or fy > best_m:
                best_m = fy
                mutants = [y]
            elif fy == best_m:
                mutants.append(y)
        if not mutants:
            break
        xstar = mutants[rng.index_below(len(mutants))]
        bias = 1.0 / lam
        best_c = None
        crossed = []
        for _ in range(k):
            if rec.evals >= budget:
                break
            mask = pm(n, bp(n, bias))
            y = (x & ~mask) | (xstar & mask)
            fy, Vy = fv(y)
            rec.note(fy, Vy, y)
            if best_c is None or fy > best_c:
                best_c = fy
                crossed = [y]
            elif fy == best_c:
                crossed.append(y)
        if not crossed:
            break
        ystar = crossed[rng.index_below(len(crossed))]
        if best_c > fx:
            x, fx = ystar, best_c
            lam = max(lam / fstep, 1.0)
        elif best_c == fx:
            x, fx = ystar, best_c
            lam = min(lam * gain, float(n))
        else:
            lam = min(lam * gain, float(n))
        if trace is not None:
            trace.append({"lam": lam})
    return rec.result(n)


# -- (mu+1) GA ------------------------------------------------------------


def max_distance_pair(xs: list[int], rng: RandomSource) -> tuple[int, int]:
    """Indices of a maximum-Hamming-distance pair; ties broken uniformly.

    Operates on raw backing integers.
    """
    best = -1
    pairs: list[tuple[int, int]] = []
    for i in range(len(xs)):
        xi = xs[i]
        for j in range(i + 1, len(xs)):
            d = (xi ^ xs[j]).bit_count()
            if d > best:
                best = d
                pairs = [(i, j)]
            elif d == best:
                pairs.append((i, j))
    return pairs[rng.index_below(len(pairs))]


def removal_index(fs: list[float], protected: frozenset[int] | set[int], rng: RandomSource) -> int:
    """Uniform choice among the worst-fitness members outside protected."""
    worst = None
    cand: list[int] = []
    for i, f in enumerate(fs):
        if i in protected:
            continue
        if worst is None or f < worst:
            worst = f
            cand = [i]
        elif f == worst:
            cand.append(i)
    return cand[rng.index_below(len(cand))]


def run_mu_ga(cfg: SOConfig, problem: InstanceSpec, budget: int, target, rng: RandomSource,
              trace=None) -> RunResult:
    """(mu+1) GA: uniform parent choice, optional uniform crossover,
    per-bit mutation at 1/n, remove one worst (diversity variant first
    protects one farthest pair, ties uniform)."""
    cfg.check(problem.n)
    comp = compile_instance(problem)
    n = comp.n
    fv = comp.fv
    pm = rng.positions_mask
    g = rng.getrandbits
    mu = cfg.mu
    p_c = cfg.p_c
    pbit = 1.0 / n
    rec = _Recorder(budget, target)
    xs: list[int] = []
    fs: list[float] = []
    for _ in range(mu):
        if rec.evals >= budget:
            break
        v = g(n)
        f, V = fv(v)
        rec.note(f, V, v)
        xs.append(v)
        fs.append(f)
    while not rec.done and len(xs) >= 2:
        i = rng.index_below(len(xs))
        base = xs[i]
        if rng.random() < p_c:
            j = rng.index_below(len(xs) - 1)
            if j >= i:
                j += 1
            mask = g(n)
            base = (base & ~mask) | (xs[j] & mask)
        flips = rng.binomial(n, pbit)
        y = base ^ pm(n, flips) if flips else base
        fy, Vy = fv(y)
        rec.note(fy, Vy, y)
        xs.append(y)
        fs.append(fy)
        if cfg.diversity:
            protected = frozenset(max_distance_pair(xs, rng))
        else:
            protected = frozenset()
        ridx = removal_index(fs, protected, rng)
        del xs[ridx]
        del fs[ridx]
    return rec.result(n)


SINGLE_RUNNERS = {
    "ea": run_ea,
    "fga": run_fga,
    "two_rate": run_two_rate,
    "var_ea": run_var_ea,
    "oll_ga": run_oll_ga,
    "mu_ga": run_mu_ga,
}


def run_single(cfg: SOConfig, problem: InstanceSpec, budget: int, rng: RandomSource,
               target: float | None = None, trace=None) -> RunResult:
    """Dispatch on cfg.variant; target defaults to the known optimum."""
    if cfg.variant not in SINGLE_RUNNERS:
        raise ValueError(f"unknown variant {cfg.variant!r}; "
                         f"choose from {sorted(SINGLE_RUNNERS)}")
    if target is None:
        target = known_optimum(problem)
    return SINGLE_RUNNERS[cfg.variant](cfg, problem, budget, target, rng, trace=trace)
