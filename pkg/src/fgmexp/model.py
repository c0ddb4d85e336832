"""FGM bivariate exponential distribution.

Density, log-likelihood, score, the reciprocal-weight shift that clears
the score equation, and seeded random sampling.  All quantities are
driven by the per-observation weights

    w_i = (2 exp(-x_i) - 1) (2 exp(-y_i) - 1),

which lie in [-1, 1]; their reciprocals c_i = 1/w_i (the shifts) satisfy
|c_i| >= 1, so the poles of the score stay outside the open parameter
interval (-1, 1).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "THETA_MIN",
    "THETA_MAX",
    "Observation",
    "Dataset",
    "CShift",
    "PoleError",
    "DataFormatError",
    "validate_theta",
    "density",
    "log_likelihood",
    "log_likelihood_weights",
    "score",
    "score_weights",
    "c_shift",
    "sample",
    "read_csv",
    "write_csv",
]

THETA_MIN = -1.0
THETA_MAX = 1.0

# Below this magnitude the conditional quantile is evaluated at its
# exact limit to sidestep the degenerate quadratic.
_SMALL_DEPENDENCE = 1e-12


class PoleError(ArithmeticError):
    """Score evaluation hit a pole: some 1 + theta*w_i is exactly zero."""

    def __init__(self, index: int, theta: float):
        self.index = index
        self.theta = theta
        super().__init__(
            f"score undefined at theta={theta!r}: observation {index} "
            f"has 1 + theta*w == 0"
        )


class DataFormatError(ValueError):
    """A dataset file failed to parse; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def validate_theta(theta: float) -> float:
    t = float(theta)
    if not math.isfinite(t) or not (THETA_MIN <= t <= THETA_MAX):
        raise ValueError(f"association parameter must lie in [-1, 1], got {theta!r}")
    return t


@dataclass(frozen=True)
class Observation:
    """One bivariate point (x, y) in the first quadrant."""

    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"coordinates must be finite, got ({self.x!r}, {self.y!r})")
        if x < 0.0 or y < 0.0:
            raise ValueError(f"coordinates must be nonnegative, got ({x}, {y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def weight(self) -> float:
        return (2.0 * math.exp(-self.x) - 1.0) * (2.0 * math.exp(-self.y) - 1.0)


@dataclass(frozen=True)
class Dataset:
    """An ordered sample with derived per-observation weights.

    Weights are recomputed from the observations at construction and the
    array is frozen, so they can never drift out of sync.  Observations
    whose weight is exactly zero (a coordinate at ln 2) contribute
    nothing to the score and are tracked in ``degenerate_indices``.
    """

    observations: tuple[Observation, ...]
    weights: np.ndarray = field(init=False, repr=False, compare=False)
    degenerate_indices: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        obs = tuple(self.observations)
        object.__setattr__(self, "observations", obs)
        x = np.array([o.x for o in obs], dtype=float)
        y = np.array([o.y for o in obs], dtype=float)
        w = (2.0 * np.exp(-x) - 1.0) * (2.0 * np.exp(-y) - 1.0)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(
            self, "degenerate_indices", tuple(int(i) for i in np.flatnonzero(w == 0.0))
        )

    @property
    def n(self) -> int:
        return len(self.observations)

    @classmethod
    def from_arrays(cls, x: Sequence[float], y: Sequence[float]) -> "Dataset":
        if len(x) != len(y):
            raise ValueError("x and y must have equal length")
        return cls(tuple(Observation(float(a), float(b)) for a, b in zip(x, y)))


class CShift(NamedTuple):
    """Reciprocal weights of the non-degenerate observations, in order."""

    values: np.ndarray
    degenerate_indices: tuple[int, ...]


def density(obs: Observation, theta: float) -> float:
    """Joint density exp(-(x+y)) * (1 + theta*w) at one observation.

    Nonnegative for every valid input because |theta|*|w| <= 1.
    """
    t = validate_theta(theta)
    return math.exp(-(obs.x + obs.y)) * (1.0 + t * obs.weight)


def log_likelihood_weights(
    weights: np.ndarray, theta: float, include_constant: bool = False, xy_sum: float = 0.0
) -> float:
    """Log-likelihood from a weight vector; -inf where any term is <= 0."""
    t = validate_theta(theta)
    terms = 1.0 + t * np.asarray(weights, dtype=float)
    if np.any(terms <= 0.0):
        return float("-inf")
    ll = float(np.sum(np.log(terms)))
    if include_constant:
        ll -= xy_sum
    return ll


def log_likelihood(data: Dataset, theta: float, include_constant: bool = False) -> float:
    """Log-likelihood of the sample, sum of log(1 + theta*w_i).

    By default the additive constant -sum(x_i + y_i) is omitted; it does
    not depend on theta, so the maximizer is unaffected.  Pass
    ``include_constant=True`` for the full value.  Returns -inf when some
    term 1 + theta*w_i is nonpositive (a weight of +-1 against the
    matching boundary value of theta).
    """
    xy_sum = 0.0
    if include_constant:
        xy_sum = float(sum(o.x + o.y for o in data.observations))
    return log_likelihood_weights(data.weights, theta, include_constant, xy_sum)


def score_weights(weights: np.ndarray, theta: float) -> float:
    """Score from a weight vector: sum of w_i / (1 + theta*w_i)."""
    t = validate_theta(theta)
    w = np.asarray(weights, dtype=float)
    denom = 1.0 + t * w
    bad = np.flatnonzero(denom == 0.0)
    if bad.size:
        raise PoleError(int(bad[0]), t)
    return float(np.sum(w / denom))


def score(data: Dataset, theta: float) -> float:
    """Derivative of the constant-free log-likelihood at theta.

    Terms with w_i = 0 contribute exactly zero.  Raises
    :class:`PoleError` naming the first offending observation if some
    denominator 1 + theta*w_i vanishes.
    """
    return score_weights(data.weights, theta)


def c_shift(data: Dataset) -> CShift:
    """Reciprocals c_i = 1/w_i of the nonzero weights, order preserved.

    Degenerate observations (w_i = 0) are excluded from the values and
    reported by index; every returned value satisfies |c_i| >= 1.
    """
    w = data.weights
    values = 1.0 / w[w != 0.0]
    values.setflags(write=False)
    return CShift(values, data.degenerate_indices)


def _open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1): both endpoints excluded
    so downstream logarithms stay finite."""
    k = rng.integers(1, 1 << 53, size=size)
    return k * (0.5 ** 53)


def sample(n: int, theta: float, seed: int) -> Dataset:
    """Draw a seeded random sample of size n from the joint distribution.

    Conditional inversion: u gives the first coordinate; the second
    solves the conditional cdf quadratic A*v^2 - (1+A)*v + t = 0 with
    A = theta*(1 - 2u), taking the branch that is continuous in A.  The
    quotient is evaluated in rationalized form, 2t / ((1+A) + sqrt(D)),
    which is the same root without subtractive cancellation; below
    |A| = 1e-12 the exact limit v = t is used.  Marginals are standard
    exponential and results depend only on (n, theta, seed).
    """
    t = validate_theta(theta)
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = _open_uniform(rng, n)
    tdraw = _open_uniform(rng, n)
    a = t * (1.0 - 2.0 * u)
    disc = np.maximum((1.0 + a) ** 2 - 4.0 * a * tdraw, 0.0)
    v_quad = 2.0 * tdraw / ((1.0 + a) + np.sqrt(disc))
    v = np.where(np.abs(a) < _SMALL_DEPENDENCE, tdraw, v_quad)
    x = -np.log1p(-u)
    y = -np.log1p(-v)
    return Dataset.from_arrays(x, y)


def read_csv(path) -> Dataset:
    """Load a dataset from a CSV file with header ``x,y``.

    Any malformed row (wrong arity, non-numeric, negative, or non-finite
    value) aborts with a :class:`DataFormatError` carrying the 1-based
    line number.
    """
    observations = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [cell.strip() for cell in header] != ["x", "y"]:
            raise DataFormatError(1, "expected header 'x,y'")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise DataFormatError(line_no, f"expected 2 fields, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                raise DataFormatError(line_no, f"non-numeric value in {row!r}") from None
            try:
                observations.append(Observation(x, y))
            except ValueError as exc:
                raise DataFormatError(line_no, str(exc)) from None
    return Dataset(tuple(observations))


def write_csv(path, data: Dataset) -> None:
    """Write a dataset as ``x,y`` CSV; float formatting is shortest
    round-trip, so reruns are byte-identical."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for o in data.observations:
            writer.writerow([repr(o.x), repr(o.y)])
