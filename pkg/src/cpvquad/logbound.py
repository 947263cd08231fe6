"""Empirical bound checks for composite Gauss quadrature of 1/x on [0, 1].

The integral of 1/x over [0, 1] diverges, yet any open quadrature rule
returns a finite value because its smallest node x00 stays positive.  The
claim exercised here is that the composite m-point Gauss value stays below
a modest multiple of log(1/x00) no matter how the partition of [0, 1] is
chosen, with the multiple dropping below 1.3 once m >= 14.  The sweep
samples many random partitions per (rule size, subinterval count) cell and
records the worst ratio together with the seed that produced it, so any
reported worst case can be reconstructed exactly.

The 1-point rule on the trivial partition is the known boundary case: its
value 2 against log(1/0.5) gives ratio 2/log 2 > 2.  It is reported by
:func:`boundary_case` and excluded from pass/fail sweeps, which start at
m = 2.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from .quadrature import gauss_legendre_rule

__all__ = [
    "Partition",
    "ObservationSample",
    "SweepCell",
    "SweepReport",
    "boundary_case",
    "composite_value",
    "make_sample",
    "random_partition",
    "sweep",
    "write_sweep_csv",
]

_SCHEMES = ("uniform", "geometric", "mixed")

#: Desk-scale caps keeping a full sweep well under a minute.
MAX_SUBINTERVALS = 200
MAX_TRIALS_PER_CELL = 1000


@dataclass(frozen=True)
class Partition:
    """Breakpoints 0 = s0 < s1 < ... < sn = 1 of the unit interval."""

    breakpoints: tuple[float, ...]

    def __post_init__(self):
        s = self.breakpoints
        if len(s) < 2:
            raise ValueError("a partition needs at least two breakpoints")
        if s[0] != 0.0 or s[-1] != 1.0:
            raise ValueError(
                f"partition must span exactly [0, 1], got [{s[0]!r}, {s[-1]!r}]"
            )
        for lo, hi in zip(s, s[1:]):
            if not hi > lo:
                raise ValueError(
                    f"breakpoints must increase strictly, got {lo!r} before {hi!r}"
                )

    @property
    def n(self) -> int:
        return len(self.breakpoints) - 1


@dataclass(frozen=True)
class ObservationSample:
    """One composite evaluation of 1/x with its bounding ratio.

    ``a_value`` is the composite Gauss value, ``x00`` the smallest mapped
    node inside the first subinterval and ``ratio`` their quotient
    a_value / log(1/x00).
    """

    m: int
    n: int
    a_value: float
    x00: float
    ratio: float

    def __post_init__(self):
        if not self.x00 > 0.0:
            raise ValueError(f"x00 must be positive, got {self.x00!r}")
        if not math.isfinite(self.ratio):
            raise ValueError(f"ratio must be finite, got {self.ratio!r}")


def composite_value(partition: Partition, m: int) -> tuple[float, float]:
    """Composite m-point Gauss value of 1/x over the partition, with x00.

    The rule is open, so no node ever touches the breakpoints; in
    particular 1/x is never evaluated at 0.  Returns (a_value, x00).
    """
    rule = gauss_legendre_rule(m)
    nodes = np.asarray(rule.nodes)
    weights = np.asarray(rule.weights)
    s = np.asarray(partition.breakpoints)
    half = 0.5 * (s[1:] - s[:-1])
    mid = 0.5 * (s[1:] + s[:-1])
    x = mid[:, None] + half[:, None] * nodes[None, :]
    a_value = float(np.sum((half[:, None] * weights[None, :]) / x))
    x00 = float(s[1] * 0.5 * (nodes[0] + 1.0))
    return a_value, x00


def make_sample(partition: Partition, m: int) -> ObservationSample:
    a_value, x00 = composite_value(partition, m)
    return ObservationSample(
        m=m,
        n=partition.n,
        a_value=a_value,
        x00=x00,
        ratio=a_value / math.log(1.0 / x00),
    )


def boundary_case() -> ObservationSample:
    """The excluded m=1, n=1 midpoint case with ratio 2/log 2 > 2."""
    return make_sample(Partition((0.0, 1.0)), 1)


def _interior_points(rng: np.random.Generator, n: int, scheme: str) -> np.ndarray:
    if scheme == "uniform":
        return np.sort(rng.uniform(0.0, 1.0, size=n - 1))
    r = rng.uniform(1.1, 10.0)
    ladder = r ** -np.arange(n - 1, 0, -1, dtype=float)
    if scheme == "geometric":
        return ladder
    # mixed: interleave ladder points with uniform draws, then order
    draws = rng.uniform(0.0, 1.0, size=n - 1)
    picks = np.where(np.arange(n - 1) % 2 == 0, ladder, draws)
    return np.sort(picks)


def random_partition(n: int, seed: int, scheme: str) -> Partition:
    """Deterministic random partition of [0, 1] into n subintervals.

    "uniform" sorts uniform draws; "geometric" builds the ladder r^-(n-1),
    ..., r^-1 with a random ratio r in [1.1, 10], stressing tiny first
    subintervals; "mixed" interleaves points of both kinds.  The same
    (n, seed, scheme) always yields the same partition.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 subintervals, got {n!r}")
    if scheme not in _SCHEMES:
        raise ValueError(f"scheme must be one of {_SCHEMES}, got {scheme!r}")
    for attempt in range(64):
        rng = np.random.default_rng((seed, attempt))
        interior = _interior_points(rng, n, scheme)
        points = (0.0, *map(float, interior), 1.0)
        if all(hi > lo for lo, hi in zip(points, points[1:])):
            return Partition(points)
    raise RuntimeError(
        f"could not draw a strictly increasing partition for n={n}, "
        f"seed={seed}, scheme={scheme}"
    )


@dataclass(frozen=True)
class SweepCell:
    """Worst observed ratio for one (rule size, subinterval count) cell.

    ``witness_seed`` and ``witness_scheme`` reconstruct the worst partition
    through :func:`random_partition`.
    """

    m: int
    n: int
    trials: int
    max_ratio: float
    witness_seed: int
    witness_scheme: str


@dataclass(frozen=True)
class SweepReport:
    cells: tuple[SweepCell, ...]
    seed: int
    trials_per_cell: int

    def max_ratio(self, m_min: Optional[int] = None) -> float:
        ratios = [
            cell.max_ratio
            for cell in self.cells
            if m_min is None or cell.m >= m_min
        ]
        if not ratios:
            raise ValueError("no cells in the requested range")
        return max(ratios)


def _trial_seed(seed: int, m: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence((seed, m, n, trial)).generate_state(1)[0])


def sweep(
    m_range: Iterable[int],
    n_range: Iterable[int],
    trials_per_cell: int,
    seed: int,
) -> SweepReport:
    """Worst-ratio sweep over rule sizes and partition sizes.

    Each cell runs `trials_per_cell` partitions cycling through the three
    schemes, with a per-trial seed derived from (seed, m, n, trial), so the
    report is deterministic and every witness is reproducible in isolation.
    """
    ms = sorted(set(int(m) for m in m_range))
    ns = sorted(set(int(n) for n in n_range))
    if not ms or not ns:
        raise ValueError("empty sweep range")
    if ms[0] < 1 or ms[-1] > 100:
        raise ValueError(f"rule sizes must lie in 1..100, got {ms[0]}..{ms[-1]}")
    if ns[0] < 1 or ns[-1] > MAX_SUBINTERVALS:
        raise ValueError(
            f"subinterval counts must lie in 1..{MAX_SUBINTERVALS}, "
            f"got {ns[0]}..{ns[-1]}"
        )
    if not 1 <= trials_per_cell <= MAX_TRIALS_PER_CELL:
        raise ValueError(
            f"trials per cell must lie in 1..{MAX_TRIALS_PER_CELL}, "
            f"got {trials_per_cell!r}"
        )
    cells = []
    for m in ms:
        rule = gauss_legendre_rule(m)
        nodes = np.asarray(rule.nodes)
        weights = np.asarray(rule.weights)
        for n in ns:
            trial_seeds = [
                _trial_seed(seed, m, n, t) for t in range(trials_per_cell)
            ]
            schemes = [_SCHEMES[t % 3] for t in range(trials_per_cell)]
            stack = np.empty((trials_per_cell, n + 1))
            for t, (ts, scheme) in enumerate(zip(trial_seeds, schemes)):
                stack[t] = random_partition(n, ts, scheme).breakpoints
            half = 0.5 * (stack[:, 1:] - stack[:, :-1])
            mid = 0.5 * (stack[:, 1:] + stack[:, :-1])
            x = mid[:, :, None] + half[:, :, None] * nodes[None, None, :]
            a_values = np.sum((half[:, :, None] * weights[None, None, :]) / x, axis=(1, 2))
            x00 = stack[:, 1] * 0.5 * (nodes[0] + 1.0)
            ratios = a_values / np.log(1.0 / x00)
            worst = int(np.argmax(ratios))
            cells.append(
                SweepCell(
                    m=m,
                    n=n,
                    trials=trials_per_cell,
                    max_ratio=float(ratios[worst]),
                    witness_seed=trial_seeds[worst],
                    witness_scheme=schemes[worst],
                )
            )
    return SweepReport(
        cells=tuple(cells), seed=seed, trials_per_cell=trials_per_cell
    )


def write_sweep_csv(report: SweepReport, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("m", "n", "trials", "max_ratio", "witness_seed"))
    for cell in report.cells:
        writer.writerow(
            [
                str(cell.m),
                str(cell.n),
                str(cell.trials),
                repr(cell.max_ratio),
                str(cell.witness_seed),
            ]
        )
