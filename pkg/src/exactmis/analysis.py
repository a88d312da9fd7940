"""Measure-and-conquer analysis: recurrences, branching factors, weight search.

Measure decreases are stored as linear forms in the free weights
``w_3..w_{theta-1}`` and the shift ``sigma`` so that one catalog serves any
weight vector.  Instantiation is a matrix product; root finding is bisection
on ``f(x) = 1 - sum x**(-d_i)``, which is strictly increasing on ``(1, inf)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .weights import (
    BOUND_SLACK,
    LEVEL5_BOUND,
    LEVEL5_WEIGHTS,
    REFERENCE_BOUNDS,
    REFERENCE_SIGMA,
    REFERENCE_WEIGHTS,
    WeightError,
    WeightVector,
)

LOW = 1.0 + 1e-12
HIGH = 4.0
TOL = 1e-9


class AnalysisError(ValueError):
    """Bad input to an analysis routine (non-positive decrease, bad k-vector)."""


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class Lin:
    """``const + coef . (w_3, .., w_{theta-1}, sigma)``."""

    const: float
    coef: tuple[float, ...]

    def __add__(self, other: Lin) -> Lin:
        return Lin(self.const + other.const, tuple(a + b for a, b in zip(self.coef, other.coef)))

    def __sub__(self, other: Lin) -> Lin:
        return Lin(self.const - other.const, tuple(a - b for a, b in zip(self.coef, other.coef)))

    def __mul__(self, k: float) -> Lin:
        return Lin(self.const * k, tuple(a * k for a in self.coef))

    __rmul__ = __mul__

    def __neg__(self) -> Lin:
        return self * -1

    def evaluate(self, w: WeightVector, sigma: float = 0.0) -> float:
        x = (*w.free, sigma)
        return self.const + sum(a * b for a, b in zip(self.coef, x))


class Symbols:
    """Weight terms for one level ``theta`` as linear forms."""

    def __init__(self, theta: int) -> None:
        self.theta = theta
        self.dim = theta - 2  # free weights plus sigma
        self.zero = Lin(0.0, (0.0,) * self.dim)
        self.one = Lin(1.0, (0.0,) * self.dim)

    def _unit(self, k: int) -> Lin:
        c = [0.0] * self.dim
        c[k] = 1.0
        return Lin(0.0, tuple(c))

    @property
    def sigma(self) -> Lin:
        return self._unit(self.dim - 1)

    def w(self, i: int) -> Lin:
        t = self.theta
        if i <= 2:
            return self.zero
        if i < t:
            return self._unit(i - 3)
        if i == t:
            return self.one
        return self.one + (i - t) * self.d(t)

    def d(self, i: int) -> Lin:
        return self.w(i) - self.w(i - 1)


# ---------------------------------------------------------------------------
# recurrences and factors


@dataclass(frozen=True)
class Recurrence:
    label: str
    decreases: tuple[float, ...]


@dataclass(frozen=True)
class SymbolicRecurrence:
    label: str
    terms: tuple[Lin, ...]

    def instantiate(self, w: WeightVector, sigma: float = 0.0) -> Recurrence:
        return Recurrence(self.label, tuple(t.evaluate(w, sigma) for t in self.terms))


def branching_factor(r: Recurrence | Sequence[float], tol: float = TOL) -> float:
    """Largest root of ``1 - sum x**(-d)`` by bisection."""
    ds = r.decreases if isinstance(r, Recurrence) else tuple(r)
    if not ds:
        raise AnalysisError("empty recurrence")
    if any(not d > 0 for d in ds):
        raise AnalysisError(f"decreases must be positive, got {ds}")
    if tol <= 0:
        raise AnalysisError("tolerance must be positive")

    if len(set(ds)) == 1:
        # l equal decreases d: the root is l ** (1 / d)
        return float(len(ds)) ** (1.0 / ds[0])

    def f(x: float) -> float:
        return 1.0 - sum(x ** -d for d in ds)

    lo, hi = LOW, HIGH
    while f(hi) < 0:
        lo, hi = hi, hi * 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return hi


def factors_array(decreases: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Vectorized ``branching_factor`` over rows of a (R, B) decrease matrix."""
    d = np.asarray(decreases, dtype=float)
    if d.ndim != 2:
        raise AnalysisError("expected a 2-d array of decreases")
    if not np.all(d > 0):
        return np.where(np.all(d > 0, axis=1), _bisect_rows(np.where(d > 0, d, 1.0), tol), np.inf)
    return _bisect_rows(d, tol)


def _bisect_rows(d: np.ndarray, tol: float) -> np.ndarray:
    def f(x: np.ndarray) -> np.ndarray:
        return 1.0 - np.sum(x[:, None] ** -d, axis=1)

    lo = np.full(d.shape[0], LOW)
    hi = np.full(d.shape[0], HIGH)
    while True:
        low_side = f(hi) < 0
        if not low_side.any():
            break
        lo = np.where(low_side, hi, lo)
        hi = np.where(low_side, hi * 2, hi)
    while np.max(hi - lo) > tol:
        mid = (lo + hi) / 2
        neg = f(mid) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    return hi


def corner_recurrences(a: Sequence[float], b: Sequence[float], c: float, d: float, p: int) -> list[Recurrence]:
    """The ``len(a)`` extreme recurrences ``(p*a_i + c, p*b_i + d)``.

    Their largest factor equals the largest over every split
    ``k_1 + .. + k_l = p`` of ``(sum k_i a_i + c, sum k_i b_i + d)``.
    """
    if len(a) != len(b):
        raise AnalysisError("a and b differ in length")
    if not a:
        raise AnalysisError("need at least one corner")
    return [Recurrence(f"corner[{i}]", (p * a[i] + c, p * b[i] + d)) for i in range(len(a))]


def compositions(p: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``p``."""
    for bars in itertools.combinations(range(p + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(p + parts - 1 - prev - 1)
        yield tuple(out)


# ---------------------------------------------------------------------------
# lambda tables


def _check_k(theta: int, k: Sequence[int]) -> dict[int, int]:
    if len(k) != theta - 2 or any(x < 0 for x in k) or sum(k) != theta:
        raise AnalysisError(f"k-vector for theta={theta} needs {theta - 2} non-negative entries summing to {theta}")
    return {i: k[i - 3] for i in range(3, theta + 1)}


def lambda_theta(theta: int, k: Sequence[int]) -> list[Lin]:
    """Lower bound on the outside decrease for an optimal degree-``theta`` vertex.

    ``k`` lists neighbor counts of degree 3..theta.  Returns the alternatives
    whose minimum is the bound; most cases have a single term.
    """
    if theta not in (6, 7, 8):
        raise AnalysisError("theta must be 6, 7 or 8")
    kk = _check_k(theta, k)
    s = Symbols(theta)
    dt = s.d(theta)
    if theta == 6:
        k3, k4, k5, k6 = kk[3], kk[4], kk[5], kk[6]
        if k6 <= 3 and k3 + k4 >= 2:
            return [(12 + k6) * dt, s.w(3) + 6 * dt]
        if k6 <= 3 or (k6 == 4 and k3 + k4 >= 1):
            return [(6 + k5 + 2 * k6) * dt]
        if k6 == 4:
            return [17 * dt]
        if k6 == 5:
            return [(16 + 2 * k4 + 3 * k5) * dt]
        return [22 * dt]
    if theta == 7:
        k7 = kk[7]
        if k7 <= 5:
            return [(14 + k7) * dt]
        if k7 == 6:
            return [(22 - 2 * kk[3] - kk[4]) * dt]
        return [26 * dt]
    k8 = kk[8]
    return [(16 + 2 * k8) * dt] if k8 <= 7 else [36 * dt]


# ---------------------------------------------------------------------------
# catalogs


def _rec(label: str, *terms: Lin) -> SymbolicRecurrence:
    return SymbolicRecurrence(label, tuple(terms))


def _degree_family(s: Symbols) -> list[SymbolicRecurrence]:
    t = s.theta
    out = []
    for k in compositions(t, t - 2):
        excl = s.w(t)
        incl = s.w(t)
        for i, ki in zip(range(3, t + 1), k):
            excl = excl + ki * s.d(i)
            incl = incl + ki * s.w(i)
        alts = lambda_theta(t, k)
        for n, lam in enumerate(alts):
            suffix = "" if len(alts) == 1 else "abcdef"[n]
            out.append(_rec(f"optimal-vertex k={''.join(map(str, k))}{suffix}", excl, incl + lam))
    return out


def _high_degree(s: Symbols, outside: int, shift: Lin) -> list[SymbolicRecurrence]:
    t = s.theta
    d = t + 1
    return [
        _rec(
            f"high-degree i={i}",
            s.w(d) + d * s.d(i) - shift,
            s.w(d) + d * s.w(i) + outside * s.d(t) - shift,
        )
        for i in range(3, d + 1)
    ]


def _catalog6(s: Symbols) -> list[SymbolicRecurrence]:
    w, d, sig = s.w, s.d, s.sigma
    out = _high_degree(s, 12, sig)
    for i in (4, 5, 6):
        out.append(_rec(f"edge c=4 i={i}", 2 * w(6) + 4 * (w(i) - w(i - 2)) + 2 * d(6), 2 * w(6) + 4 * w(i) + 4 * d(6)))
    out.append(_rec("edge c=4 i=3", 2 * w(6) + 8 * w(3) + 2 * d(6), 2 * w(6) + 4 * w(3) + 4 * d(6)))
    for i in (4, 5, 6):
        p = 4 if i == 6 else 0
        for j in range(3, 7):
            if i == 6 and j == 6:
                out.append(_rec(
                    "edge c=3 d'=5 i=6 j=6 shifted",
                    w(6) + w(5) + 3 * (w(6) - w(4)) + 3 * d(6),
                    4 * w(6) + w(5) + 5 * d(6) + sig,
                ))
                continue
            out.append(_rec(
                f"edge c=3 d'=5 i={i} j={j}",
                w(6) + w(5) + 3 * (w(i) - w(i - 2)) + 2 * d(6) + d(j),
                w(6) + w(5) + 3 * w(i) + (3 + p) * d(6) - (w(j + 1) - w(j)),
            ))
    for j in range(3, 7):
        out.append(_rec(
            f"edge c=3 d'=5 i=3 j={j}",
            w(6) + w(5) + 6 * w(3) + 2 * d(6) + d(j),
            w(6) + w(5) + 3 * w(3) + 3 * d(6) - (w(j + 1) - w(j)),
        ))
    for i in (4, 5, 6):
        p = 0 if i == 4 else 3
        for j in range(3, 7):
            if i == 6 and j == 6:
                out.append(_rec(
                    "edge c=3 d'=6 i=6 j=6 shifted",
                    2 * w(6) + 3 * (w(6) - w(4)) + 4 * d(6),
                    5 * w(6) + 2 * d(6) + sig,
                ))
                continue
            out.append(_rec(
                f"edge c=3 d'=6 i={i} j={j}",
                2 * w(6) + 3 * (w(i) - w(i - 2)) + 4 * d(j),
                2 * w(6) + 3 * w(i) + (3 + p) * d(6) - 4 * (w(j + 1) - w(j)),
            ))
    for j in range(3, 7):
        out.append(_rec(
            f"edge c=3 d'=6 i=3 j={j}",
            2 * w(6) + 6 * w(3) + 4 * d(j),
            2 * w(6) + 3 * w(3) + 3 * d(6) - 4 * (w(j + 1) - w(j)),
        ))
    return out + _degree_family(s)


def _catalog7(s: Symbols) -> list[SymbolicRecurrence]:
    w, d = s.w, s.d
    out = _high_degree(s, 14, s.zero)
    for i in (4, 5, 6, 7):
        out.append(_rec(f"edge c=5 i={i}", 2 * w(7) + 5 * (w(i) - w(i - 2)) + 2 * d(7), 2 * w(7) + 5 * w(i) + 4 * d(7)))
    out.append(_rec("edge c=5 i=3", 2 * w(7) + 10 * w(3) + 2 * d(7), 2 * w(7) + 5 * w(3) + 4 * d(7)))
    for i in (4, 5, 6, 7):
        p = 4 if i == 7 else 0
        for j in range(3, 8):
            out.append(_rec(
                f"edge c=4 i={i} j={j}",
                2 * w(7) + 4 * (w(i) - w(i - 2)) + 4 * d(j),
                2 * w(7) + 4 * w(i) + (4 + p) * d(7) - 4 * (w(j + 1) - w(j)),
            ))
    for j in range(3, 8):
        out.append(_rec(
            f"edge c=4 i=3 j={j}",
            2 * w(7) + 8 * w(3) + 4 * d(j),
            2 * w(7) + 4 * w(3) + 4 * d(7) - 4 * (w(j + 1) - w(j)),
        ))
    return out + _degree_family(s)


def _catalog8(s: Symbols) -> list[SymbolicRecurrence]:
    w, d = s.w, s.d
    out = _high_degree(s, 16, s.zero)
    for i in range(3, 8):
        out.append(_rec(f"edge c=6 i={i}", 2 * w(8) + 6 * (w(i) - w(i - 2)) + 2 * d(8), 2 * w(8) + 6 * w(i) + 2 * d(8)))
    for i in range(4, 9):
        p = 5 if i == 8 else 0
        for j in range(3, 9):
            out.append(_rec(
                f"edge c=5 i={i} j={j}",
                2 * w(8) + 5 * (w(i) - w(i - 2)) + 4 * d(j),
                2 * w(8) + 5 * w(i) + (5 + p) * d(8) - 4 * (w(j + 1) - w(j)),
            ))
    for j in range(3, 9):
        out.append(_rec(
            f"edge c=5 i=3 j={j}",
            2 * w(8) + 10 * w(3) + 4 * d(j),
            2 * w(8) + 5 * w(3) + 4 * d(7) - 4 * (w(j + 1) - w(j)),
        ))
    for i in range(4, 9):
        p = {8: 8, 7: 4}.get(i, 0)
        for j in range(3, 9):
            out.append(_rec(
                f"edge c=4 i={i} j={j}",
                2 * w(8) + 4 * (w(i) - w(i - 2)) + 6 * d(j),
                2 * w(8) + 4 * w(i) + (4 + p) * d(8) - 6 * (w(j + 1) - w(j)),
            ))
    for j in range(3, 9):
        out.append(_rec(
            f"edge c=4 i=3 j={j}",
            2 * w(8) + 8 * w(3) + 6 * d(j),
            2 * w(8) + 4 * w(3) + 4 * d(7) - 6 * (w(j + 1) - w(j)),
        ))
    return out + _degree_family(s)


_BUILDERS = {6: _catalog6, 7: _catalog7, 8: _catalog8}


@lru_cache(maxsize=None)
def symbolic_catalog(theta: int) -> tuple[SymbolicRecurrence, ...]:
    if theta not in _BUILDERS:
        raise AnalysisError("theta must be 6, 7 or 8")
    return tuple(_BUILDERS[theta](Symbols(theta)))


@dataclass(frozen=True)
class CompiledCatalog:
    """Catalog as arrays: decreases = const + coef @ (free weights, sigma)."""

    labels: tuple[str, ...]
    const: np.ndarray  # (R, B)
    coef: np.ndarray  # (R, B, dim)

    def decreases(self, x: np.ndarray) -> np.ndarray:
        return self.const + self.coef @ x

    def factors(self, x: np.ndarray, tol: float = TOL) -> np.ndarray:
        return factors_array(self.decreases(x), tol)


@lru_cache(maxsize=None)
def compiled_catalog(theta: int) -> CompiledCatalog:
    recs = symbolic_catalog(theta)
    branches = max(len(r.terms) for r in recs)
    if any(len(r.terms) != branches for r in recs):
        raise AnalysisError("mixed branch counts in one catalog")
    const = np.array([[t.const for t in r.terms] for r in recs])
    coef = np.array([[t.coef for t in r.terms] for r in recs])
    return CompiledCatalog(tuple(r.label for r in recs), const, coef)


def _point(w: WeightVector, sigma: float) -> np.ndarray:
    return np.array([*w.free, sigma], dtype=float)


def catalog(theta: int, w: WeightVector, sigma: float = 0.0) -> list[Recurrence]:
    """Every recurrence of level ``theta`` evaluated at ``w`` and ``sigma``."""
    if w.theta != theta:
        raise WeightError(f"weights are for theta={w.theta}, not {theta}")
    if theta != 6:
        sigma = 0.0
    return [r.instantiate(w, sigma) for r in symbolic_catalog(theta)]


# ---------------------------------------------------------------------------
# cross-level constraints


@dataclass(frozen=True)
class CrossLevelResult:
    degree: int
    lower_weight: float
    weight: float
    value: float
    target: float

    @property
    def ok(self) -> bool:
        return self.value <= self.target


def lower_level(theta: int) -> tuple[float, WeightVector]:
    """Base factor and weights of the level that ``theta`` delegates to."""
    if theta == 6:
        return LEVEL5_BOUND, LEVEL5_WEIGHTS
    if theta in (7, 8):
        return REFERENCE_BOUNDS[theta - 1], REFERENCE_WEIGHTS[theta - 1]
    raise AnalysisError("theta must be 6, 7 or 8")


def cross_level_details(
    theta: int,
    w: WeightVector,
    target: float,
    lower_bound_base: float | None = None,
    lower_weights: WeightVector | None = None,
) -> list[CrossLevelResult]:
    base, low = lower_level(theta)
    if lower_bound_base is not None:
        base = lower_bound_base
    if lower_weights is not None:
        low = lower_weights
    out = []
    for j in range(3, low.theta + 1):
        wj = w(j)
        value = math.inf if wj <= 0 else base ** (low(j) / wj)
        out.append(CrossLevelResult(j, low(j), wj, value, target))
    return out


def cross_level_constraints(
    theta: int,
    w: WeightVector,
    lower_bound_base: float | None = None,
    lower_weights: WeightVector | None = None,
    target: float | None = None,
) -> list[bool]:
    """``base ** (w_lower_j / w_j) <= target`` for each degree of the lower level."""
    tgt = REFERENCE_BOUNDS[theta] + BOUND_SLACK if target is None else target
    return [r.ok for r in cross_level_details(theta, w, tgt, lower_bound_base, lower_weights)]


# ---------------------------------------------------------------------------
# reports


@dataclass
class AnalysisReport:
    theta: int
    weights: WeightVector
    sigma: float
    recurrences: list[Recurrence]
    factors: list[float]
    violations: list[str]
    cross_level: list[CrossLevelResult]
    target: float

    @property
    def max_factor(self) -> float:
        return max(self.factors)

    @property
    def worst_label(self) -> str:
        return self.recurrences[int(np.argmax(self.factors))].label

    @property
    def cross_level_max(self) -> float:
        return max((r.value for r in self.cross_level), default=1.0)

    @property
    def bound(self) -> float:
        """Largest of the catalog factor and the cross-level values."""
        return max(self.max_factor, self.cross_level_max)

    @property
    def ok(self) -> bool:
        return not self.violations and self.max_factor <= self.target and all(r.ok for r in self.cross_level)

    def top(self, n: int = 10) -> list[tuple[str, float]]:
        order = np.argsort(self.factors)[::-1][:n]
        return [(self.recurrences[i].label, self.factors[i]) for i in order]


def analyze(theta: int, w: WeightVector | None = None, sigma: float | None = None, target: float | None = None) -> AnalysisReport:
    """Evaluate the whole catalog, constraint set and cross-level checks."""
    if theta not in _BUILDERS:
        raise AnalysisError("theta must be 6, 7 or 8")
    w = REFERENCE_WEIGHTS[theta] if w is None else w
    if sigma is None:
        sigma = REFERENCE_SIGMA if theta == 6 else 0.0
    tgt = REFERENCE_BOUNDS[theta] + BOUND_SLACK if target is None else target
    recs = catalog(theta, w, sigma)
    comp = compiled_catalog(theta)
    facs = comp.factors(_point(w, sigma if theta == 6 else 0.0)).tolist()
    return AnalysisReport(
        theta=theta,
        weights=w,
        sigma=sigma,
        recurrences=recs,
        factors=facs,
        violations=w.violations(sigma if theta == 6 else None),
        cross_level=cross_level_details(theta, w, tgt),
        target=tgt,
    )


# ---------------------------------------------------------------------------
# weight search

ObjectiveFn = Callable[[np.ndarray], float]
CatalogFn = Callable[[np.ndarray], Sequence[Sequence[float]]]


@dataclass
class OptimizeResult:
    weights: WeightVector
    sigma: float
    max_factor: float
    start_factor: float
    rounds: int = 0
    history: list[float] = field(default_factory=list)


def _golden(f: Callable[[float], float], lo: float, hi: float, iters: int = 40) -> tuple[float, float]:
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def optimize_weights(
    theta: int,
    initial: WeightVector | None = None,
    sigma_mode: str = "free",
    sigma: float | None = None,
    rounds: int = 8,
    span: float = 0.05,
    catalog_fn: CatalogFn | None = None,
    include_cross_level: bool = True,
    restart: bool = True,
) -> OptimizeResult:
    """Coordinate-wise golden-section descent on the largest branching factor.

    ``sigma_mode`` is ``"free"`` (searched, level 6 only), ``"fixed"`` or
    ``"zero"``.  Infeasible points score ``inf`` so the result stays feasible.
    ``catalog_fn`` replaces the level catalog with a custom map from the
    search point to a list of decrease tuples.  With ``restart`` the descent
    is repeated from the reference vector and the better end point is kept.
    """
    if sigma_mode not in ("free", "fixed", "zero"):
        raise AnalysisError("sigma_mode must be free, fixed or zero")
    w0 = REFERENCE_WEIGHTS[theta] if initial is None else initial
    if w0.theta != theta:
        raise WeightError(f"initial weights are for theta={w0.theta}")
    if sigma_mode == "zero" or theta != 6:
        s0 = 0.0
    else:
        s0 = REFERENCE_SIGMA if sigma is None else sigma
    if sigma_mode == "free" and theta == 6 and not w0.is_feasible(s0, tol=1e-12):
        s0 = min(s0, max(0.0, 2 * w0.delta(6)))
    if not w0.is_feasible(s0 if theta == 6 else None):
        raise AnalysisError("initial weights violate the constraints: " + "; ".join(w0.violations(s0)))

    comp = compiled_catalog(theta) if catalog_fn is None else None
    base, low = lower_level(theta)
    n_free = theta - 3
    search_sigma = sigma_mode == "free" and theta == 6

    def score(x: np.ndarray) -> float:
        if comp is not None:
            best = float(np.max(comp.factors(x)))
        else:
            best = float(np.max(factors_array(np.array(catalog_fn(x), dtype=float))))
        if include_cross_level and catalog_fn is None:
            w = WeightVector.from_values(theta, x[:n_free])
            for j in range(3, low.theta + 1):
                best = max(best, base ** (low(j) / w(j)) if w(j) > 0 else math.inf)
        return best

    def feasible(x: np.ndarray) -> bool:
        try:
            w = WeightVector.from_values(theta, x[:n_free])
        except WeightError:
            return False
        return w.is_feasible(float(x[n_free]) if theta == 6 else None, tol=1e-12)

    def objective(x: np.ndarray) -> float:
        return score(x) if feasible(x) else math.inf

    coords = list(range(n_free)) + ([n_free] if search_sigma else [])

    def descend(x: np.ndarray) -> tuple[np.ndarray, float, list[float], int]:
        x = x.copy()
        cur = objective(x)
        history = [cur]
        step = span
        done = 0
        for done in range(1, rounds + 1):
            improved = False
            for k in coords:
                lo = max(0.0, x[k] - step)
                hi = min(1.0, x[k] + step)

                def along(v: float, k: int = k) -> float:
                    y = x.copy()
                    y[k] = v
                    return objective(y)

                v, fv = _golden(along, lo, hi)
                if fv < cur - 1e-12:
                    x[k] = v
                    cur = fv
                    improved = True
            history.append(cur)
            if not improved:
                step /= 2
                if step < 1e-7:
                    break
        return x, cur, history, done

    x0 = np.array([*w0.free, s0], dtype=float)
    start = score(x0)
    # a start that is feasible only up to rounding slack scores inf in the descent
    x, cur, history, done = descend(x0)
    if restart:
        p0 = np.array([*REFERENCE_WEIGHTS[theta].free, REFERENCE_SIGMA if search_sigma else s0], dtype=float)
        if not np.array_equal(p0, x0):
            px, pcur, phist, pdone = descend(p0)
            if pcur < cur:
                x, cur, done = px, pcur, pdone
                history = history + phist
    if cur > start:
        cur = start
        x = x0
    return OptimizeResult(
        weights=WeightVector.from_values(theta, x[:n_free]),
        sigma=float(x[n_free]),
        max_factor=cur,
        start_factor=start,
        rounds=done,
        history=history,
    )
