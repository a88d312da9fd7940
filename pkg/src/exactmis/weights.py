"""Degree-indexed vertex weights and the measure they induce."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Graph

# Reference vectors carry five decimals, so the linear constraints can be off
# by a few units in the fifth place.
ROUNDING_SLACK = 2e-4


class WeightError(ValueError):
    """Malformed weight vector (wrong length, wrong fixed entries)."""


@dataclass(frozen=True)
class WeightVector:
    """Weights ``w_0..w_theta`` with ``w_0 = w_1 = w_2 = 0`` and ``w_theta = 1``.

    Degrees above ``theta`` extend linearly with slope ``w_theta - w_{theta-1}``.
    """

    theta: int
    w: tuple[float, ...]
    _delta_top: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.theta < 3:
            raise WeightError("theta must be at least 3")
        if len(self.w) != self.theta + 1:
            raise WeightError(f"expected {self.theta + 1} weights, got {len(self.w)}")
        if any(self.w[i] != 0 for i in range(3)):
            raise WeightError("w_0, w_1, w_2 must be 0")
        if self.w[self.theta] != 1:
            raise WeightError("w_theta must be 1")
        object.__setattr__(self, "_delta_top", self.w[self.theta] - self.w[self.theta - 1])

    @classmethod
    def from_values(cls, theta: int, values: Iterable[float]) -> WeightVector:
        """Build from ``w_3..w_{theta-1}``."""
        values = [float(x) for x in values]
        if len(values) != theta - 3:
            raise WeightError(f"theta={theta} needs {theta - 3} free weights, got {len(values)}")
        return cls(theta, (0.0, 0.0, 0.0, *values, 1.0))

    @property
    def free(self) -> tuple[float, ...]:
        return self.w[3 : self.theta]

    def __call__(self, i: int) -> float:
        if i < 0:
            raise WeightError("negative degree")
        if i <= self.theta:
            return self.w[i]
        return 1.0 + (i - self.theta) * self._delta_top

    def delta(self, i: int) -> float:
        """``w_i - w_{i-1}``; ``delta(3) == w_3``."""
        if i < 1:
            raise WeightError("delta needs i >= 1")
        return self(i) - self(i - 1)

    # constraints ------------------------------------------------------

    def violations(self, sigma: float | None = None, tol: float = ROUNDING_SLACK) -> list[str]:
        """Human-readable list of failed constraints (empty when feasible)."""
        t = self.theta
        out = []
        for i in range(2, t):
            if self.delta(i + 1) < -tol:
                out.append(f"delta w_{i + 1} = {self.delta(i + 1):.5f} is negative")
        for i in range(3, t):
            if self.delta(i + 1) > self.delta(i) + tol:
                out.append(f"delta w_{i + 1} > delta w_{i}")
        if 2 * self.delta(t) > self.delta(t - 1) + tol:
            out.append(f"2 delta w_{t} > delta w_{t - 1}")
        coef = TOP_DELTA_BOUND.get(t)
        if coef is not None and coef * self.delta(t) > self.w[3] + tol:
            out.append(f"{coef} delta w_{t} = {coef * self.delta(t):.5f} exceeds w_3 = {self.w[3]:.5f}")
        for i in range(3, t + 1):
            for j in range(i, t + 1):
                if self(i) + self(j) < self(i + j - 2) - tol:
                    out.append(f"w_{i} + w_{j} < w_{i + j - 2}")
        if sigma is not None:
            if sigma < 0:
                out.append("sigma is negative")
            if t == 6 and 2 * self.delta(6) < sigma - tol:
                out.append(f"2 delta w_6 = {2 * self.delta(6):.5f} is below sigma = {sigma:.5f}")
        return out

    def is_feasible(self, sigma: float | None = None, tol: float = ROUNDING_SLACK) -> bool:
        return not self.violations(sigma, tol)


# ``c * delta w_theta <= w_3`` per level
TOP_DELTA_BOUND = {6: 6, 7: 18, 8: 26}

REFERENCE_WEIGHTS: Mapping[int, WeightVector] = {
    6: WeightVector.from_values(6, (0.49969, 0.76163, 0.92401)),
    7: WeightVector.from_values(7, (0.65077, 0.78229, 0.89060, 0.96384)),
    8: WeightVector.from_values(8, (0.65844, 0.78844, 0.88027, 0.95345, 0.98839)),
}
REFERENCE_SIGMA = 0.10647
REFERENCE_BOUNDS = {6: 1.18922, 7: 1.19698, 8: 1.19951}
# reference weights are rounded to 5 decimals, so bounds are checked with this slack
BOUND_SLACK = 1e-4
GENERAL_BOUND = 1.19749

# weights of the degree-5 level solved by an external algorithm, with its factor
LEVEL5_WEIGHTS = WeightVector.from_values(5, (0.50907, 0.82427))
LEVEL5_BOUND = 1.17366


def measure(g: Graph, w: WeightVector) -> float:
    return sum(w(len(nb)) for nb in g.adj.values())
