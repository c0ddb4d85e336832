"""Maximum likelihood estimation of the association parameter.

Strict concavity of the log-likelihood on (-1, 1) (every score term is
nonincreasing and at least one is strictly decreasing) means there are
only three outcomes:

* the score changes sign inside the interval: the unique interior root
  is the global maximizer;
* all effective shift values coincide: the likelihood is monotone and
  the maximizer is the boundary matching the sign of the common value;
* otherwise: the maximizer is whichever endpoint carries the larger
  log-likelihood.

Observations with zero weight contribute a constant to the likelihood
and are dropped; a dataset with nothing left has a flat likelihood and
no estimate at all, which is reported as :class:`NoDataError` rather
than an arbitrary value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import mldegree, roots
from .model import Dataset, log_likelihood, log_likelihood_weights, validate_theta

__all__ = ["FitResult", "NoDataError", "fit", "fit_from_weights", "profile_loglik"]

BOUNDARY_OFFSET = 1e-12


class NoDataError(ValueError):
    """Every observation is degenerate; the likelihood does not depend on
    theta and no maximizer exists."""


@dataclass(frozen=True)
class FitResult:
    """Fitted association parameter with diagnostics.

    ``loglik`` is the constant-free log-likelihood at ``theta_hat``.
    ``interior_root`` repeats ``theta_hat`` for an interior fit and is
    None at a boundary.  ``tie_broken`` flags the degenerate case of
    exactly equal endpoint likelihoods, resolved toward +1.
    """

    theta_hat: float
    loglik: float
    at_boundary: bool
    interior_root: float | None
    n_effective: int
    dropped: int
    tie_broken: bool = False

    def to_json_dict(self) -> dict:
        return {
            "theta_hat": self.theta_hat,
            "loglik": self.loglik,
            "at_boundary": self.at_boundary,
            "n_effective": self.n_effective,
            "dropped": self.dropped,
        }


def _boundary_loglik(w: np.ndarray, side: float) -> float:
    """Constant-free log-likelihood at an endpoint, nudged one-sided by
    1e-12 when a weight of exactly -side makes the endpoint a pole."""
    theta = side
    if np.any(1.0 + theta * w == 0.0):
        theta = side - side * BOUNDARY_OFFSET
    return log_likelihood_weights(w, theta)


def fit_from_weights(weights: Sequence[float]) -> FitResult:
    """Fit from a weight vector; see :func:`fit` for the contract."""
    w_all = np.asarray(weights, dtype=float)
    eff = w_all[w_all != 0.0]
    dropped = int(w_all.size - eff.size)
    n_eff = int(eff.size)
    if n_eff == 0:
        raise NoDataError(
            "all observations have zero weight; the likelihood is flat in "
            "theta and no MLE exists"
        )
    c = 1.0 / eff
    prof = mldegree.profile(c, policy="approx")
    if prof.p == 1:
        # monotone likelihood: boundary by the sign of the common value
        theta = 1.0 if prof.groups[0][0] > 0.0 else -1.0
        return FitResult(
            theta_hat=theta,
            loglik=_boundary_loglik(eff, theta),
            at_boundary=True,
            interior_root=None,
            n_effective=n_eff,
            dropped=dropped,
        )
    root = roots.score_root_from_weights(eff)
    if root is not None:
        return FitResult(
            theta_hat=root,
            loglik=log_likelihood_weights(eff, root),
            at_boundary=False,
            interior_root=root,
            n_effective=n_eff,
            dropped=dropped,
        )
    ll_neg = _boundary_loglik(eff, -1.0)
    ll_pos = _boundary_loglik(eff, 1.0)
    tie = ll_neg == ll_pos
    theta = -1.0 if ll_neg > ll_pos else 1.0
    return FitResult(
        theta_hat=theta,
        loglik=ll_neg if theta < 0 else ll_pos,
        at_boundary=True,
        interior_root=None,
        n_effective=n_eff,
        dropped=dropped,
        tie_broken=tie,
    )


def fit(data: Dataset) -> FitResult:
    """Maximum likelihood estimate of the association parameter.

    Degenerate observations are dropped first (their score terms vanish
    identically).  If all remaining shift values are equal (under the
    same equality policy as :func:`fgmexp.mldegree.profile`), the result
    is the boundary matching the sign of the common value.  Otherwise a
    sign change of the score yields the unique interior root; failing
    that, the endpoint with the larger log-likelihood wins, ties broken
    toward +1 and flagged.
    """
    return fit_from_weights(data.weights)


def profile_loglik(data: Dataset, grid: Sequence[float]) -> list[tuple[float, float]]:
    """Pointwise constant-free log-likelihood over a theta grid.

    Grid values must lie in [-1, 1]; where the likelihood is undefined
    the -inf sentinel of :func:`fgmexp.model.log_likelihood` flows
    through.
    """
    out = []
    for t in grid:
        t = validate_theta(t)
        out.append((t, log_likelihood(data, t)))
    return out
