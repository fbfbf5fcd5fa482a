"""
Born-rule quadrature convergence for the Kochen-Specker model: the same
registered states and the same sampled (preparation, measurement) pairs are
checked at each grid size.
"""

import logging
from dataclasses import dataclass, field
from typing import List

from ontoscope.models.ontic import sample_born_pairs, scaled_born_tolerance, verify_born
from ontoscope.utils.sampling import stream_rng
from ontoscope.zoo.kochen_specker import build_ks

logger = logging.getLogger(__name__)

DEFAULT_MAX_RATIO = 0.6


@dataclass
class ConvergencePoint:
    grid_size: int
    max_deviation: float
    mean_deviation: float
    tolerance: float
    checks: int

    def to_dict(self):
        return {
            "grid_size": self.grid_size,
            "max_deviation": self.max_deviation,
            "mean_deviation": self.mean_deviation,
            "tolerance": self.tolerance,
            "checks": self.checks,
        }


@dataclass
class ConvergenceReport:
    points: List[ConvergencePoint] = field(default_factory=list)
    monotone: bool = False
    ratio: float = 0.0
    max_ratio: float = DEFAULT_MAX_RATIO

    @property
    def passed(self):
        return self.monotone and self.ratio <= self.max_ratio

    def to_dict(self):
        return {
            "points": [p.to_dict() for p in self.points],
            "monotone": self.monotone,
            "ratio": self.ratio,
            "max_ratio": self.max_ratio,
            "passed": self.passed,
        }


def born_convergence(grid_sizes, pair_count=50, seed=42, random_state_count=12,
                     max_ratio=DEFAULT_MAX_RATIO):
    report = ConvergenceReport(max_ratio=max_ratio)
    for n in sorted(grid_sizes):
        model = build_ks(n, seed=seed, random_state_count=random_state_count)
        pairs = sample_born_pairs(model, pair_count, stream_rng(seed, "born"))
        born = verify_born(model, pairs, tol=scaled_born_tolerance(n))
        report.points.append(ConvergencePoint(
            grid_size=n,
            max_deviation=born.max_deviation,
            mean_deviation=born.mean_deviation,
            tolerance=born.tolerance,
            checks=born.checks,
        ))
        logger.info("N=%d: max Born deviation %.3e", n, born.max_deviation)
    devs = [p.max_deviation for p in report.points]
    report.monotone = all(b < a for a, b in zip(devs, devs[1:]))
    report.ratio = devs[-1] / devs[0] if devs and devs[0] > 0 else 0.0
    return report
