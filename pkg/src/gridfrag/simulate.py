"""Seeded Monte Carlo of disaster-induced failures and disconnection damage.

Each trial kills buses independently with probability p0 and scores damage
as the number of buses outside the largest surviving component (secondary
failures need no separate propagation loop; the component metric embodies
them).  Substreams are counter-based: trial t at grid index g draws from
Philox(key=seed, counter=[0, 0, g, t]), so reports are bit-identical no
matter how trials are scheduled or parallelized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.random import Generator, Philox

from .graphs import Grid, largest_component_size

DEFAULT_TRIALS = 200

_SEED_MASK = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class TrialOutcome:
    survivors_initial: int
    largest_component: int
    damage: int
    fragmented: bool


@dataclass(frozen=True)
class SimulationReport:
    p0_grid: tuple[float, ...]
    mean_damage: tuple[float, ...]
    std_damage: tuple[float, ...]
    stderr: tuple[float, ...]
    frag_fraction: tuple[float, ...]
    trials: int
    seed: int
    log_base: str = "e"


def fragmentation_cutoff(node_count: int, log_base: str = "e") -> float:
    """Largest-component size below which the grid counts as fragmented."""
    if log_base == "e":
        return 2.0 * math.log(node_count)
    if log_base == "2":
        return 2.0 * math.log2(node_count)
    raise ValueError(f"log_base must be 'e' or '2', got {log_base!r}")


def substream(seed: int, grid_index: int, trial_index: int) -> Generator:
    """Independent deterministic stream for (seed, grid point, trial)."""
    return Generator(Philox(key=seed & _SEED_MASK,
                            counter=[0, 0, grid_index, trial_index]))


def run_trial(grid: Grid, p0: float, stream: Generator,
              log_base: str = "e") -> TrialOutcome:
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0,1], got {p0}")
    alive = stream.random(grid.node_count) >= p0
    survivors = int(alive.sum())
    largest = largest_component_size(grid, alive)
    return TrialOutcome(
        survivors_initial=survivors,
        largest_component=largest,
        damage=grid.node_count - largest,
        fragmented=largest < fragmentation_cutoff(grid.node_count, log_base))


def point_statistics(grid: Grid, p0: float, grid_index: int, trials: int,
                     seed: int, log_base: str = "e") -> tuple[float, float, float, float]:
    """(mean damage, std, stderr, fragmentation fraction) over one grid point."""
    damages = np.empty(trials, dtype=np.float64)
    fragmented = 0
    for t in range(trials):
        outcome = run_trial(grid, p0, substream(seed, grid_index, t), log_base)
        damages[t] = outcome.damage
        fragmented += outcome.fragmented
    mean = float(damages.mean())
    std = float(damages.std())  # population std: a single trial reports 0
    return mean, std, std / math.sqrt(trials), fragmented / trials


def monte_carlo(grid: Grid, p0_grid: Sequence[float], trials: int, seed: int,
                log_base: str = "e") -> SimulationReport:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    pts = [float(p) for p in p0_grid]
    stats = [point_statistics(grid, p0, g, trials, seed, log_base)
             for g, p0 in enumerate(pts)]
    return SimulationReport(
        p0_grid=tuple(pts),
        mean_damage=tuple(s[0] for s in stats),
        std_damage=tuple(s[1] for s in stats),
        stderr=tuple(s[2] for s in stats),
        frag_fraction=tuple(s[3] for s in stats),
        trials=trials,
        seed=seed,
        log_base=log_base)


def empirical_fragmentation_point(report: SimulationReport) -> float | None:
    """Smallest grid p0 whose fragmentation fraction reaches one half."""
    for p0, frac in zip(report.p0_grid, report.frag_fraction):
        if frac >= 0.5:
            return p0
    return None


def report_to_csv(report: SimulationReport) -> str:
    lines = ["p0,mean_damage,std_damage,stderr,frag_fraction,trials,seed"]
    for i, p0 in enumerate(report.p0_grid):
        lines.append(f"{p0!r},{report.mean_damage[i]!r},{report.std_damage[i]!r},"
                     f"{report.stderr[i]!r},{report.frag_fraction[i]!r},"
                     f"{report.trials},{report.seed}")
    return "\n".join(lines) + "\n"
