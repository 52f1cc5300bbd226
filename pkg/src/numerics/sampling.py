"""Seeded sampling of evaluation points inside the convergence domains."""

import cmath
import math
import random
from typing import Optional

from src.models.schemas import EvalConfig
from src.numerics.qfunctions import EvalPoint


class PointSampler:
    """
    Draws points (a, b, c, z, q) from the default distribution.

    a, b, c are uniform in the disk of radius ``param_radius`` with |x| at
    least ``pole_margin`` (0 is a pole of bases like q/a); |q| is uniform in
    [q_radius_min, q_radius_max]; z is uniform in the disk of radius
    ``z_radius``. The same seed always gives the same sequence.
    """

    def __init__(self, cfg: EvalConfig, seed: Optional[int] = None):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed if seed is None else seed)
        self.drawn = 0

    def _disk(self, radius: float, floor: float = 0.0) -> complex:
        while True:
            r = radius * math.sqrt(self.rng.random())
            if r >= floor:
                return cmath.rect(r, self.rng.uniform(-math.pi, math.pi))

    def _annulus(self, low: float, high: float) -> complex:
        return cmath.rect(self.rng.uniform(low, high), self.rng.uniform(-math.pi, math.pi))

    def sample(self) -> EvalPoint:
        cfg = self.cfg
        self.drawn += 1
        a = self._disk(cfg.param_radius, cfg.pole_margin)
        b = self._disk(cfg.param_radius, cfg.pole_margin)
        c = self._disk(cfg.param_radius, cfg.pole_margin)
        z = self._disk(cfg.z_radius, cfg.pole_margin)
        q = self._annulus(cfg.q_radius_min, cfg.q_radius_max)
        return EvalPoint.from_values(a, b, c, z, q)
