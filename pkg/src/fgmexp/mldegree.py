"""Maximum likelihood degree of the association parameter.

The score equation clears to h(theta)/k(theta) = 0, where k is the
product of the linear factors (theta + c_i) and h = k'.  Zeros of h that
are also zeros of k are artifacts of the cleared denominator, and they
occur exactly when some shift value is repeated: a value repeated n_i
times contributes the common zero -c_i with multiplicity n_i - 1 in h.
Discarding those leaves

    ml_degree = n + l - m - 1

where, among the p distinct shift values, l groups are repeated more
than once and m is the total size of those repeated groups.  The closed
formula is cross-checked against an independent algebraic route,
deg h - deg gcd(h, k), over exact rationals.

When every shift value is equal the cleared score equation collapses and
the count is undefined; that case raises :class:`AllEqualError` and is
owned by the boundary logic in :mod:`fgmexp.mle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import polynomials
from .polynomials import ScalarModeError

__all__ = [
    "APPROX_REL_TOL",
    "AllEqualError",
    "MultiplicityProfile",
    "CommonZeroReport",
    "profile",
    "common_zeros",
    "ml_degree_formula",
    "ml_degree_algebraic",
    "ml_degree_report",
]

# Two float shift values within this relative distance are treated as
# equal (transitively), so the grouping is a partition.
APPROX_REL_TOL = 1e-9


class AllEqualError(ValueError):
    """All shift values coincide: the cleared score equation is invalid.

    The likelihood is then (1 + theta/c)^n, monotone in theta, and the
    maximizer sits at the boundary: +1 for c > 0, -1 for c < 0.
    """

    def __init__(self, value, n: int):
        self.value = value
        self.n = n
        super().__init__(
            f"all {n} shift values equal {value}; no ML-degree is defined and "
            f"the boundary MLE rule applies (theta = {1 if value > 0 else -1})"
        )


@dataclass(frozen=True)
class MultiplicityProfile:
    """Grouping of the shift values by equality.

    ``groups`` holds (representative value, multiplicity) pairs in order
    of first appearance.  Derived counts: ``p`` distinct values, ``l``
    groups of size > 1, and ``m`` the total size of those groups.
    """

    n: int
    groups: tuple[tuple, ...]
    mode: str  # "exact" | "approx"

    @property
    def p(self) -> int:
        return len(self.groups)

    @property
    def l(self) -> int:
        return sum(1 for _, mult in self.groups if mult > 1)

    @property
    def m(self) -> int:
        return sum(mult for _, mult in self.groups if mult > 1)


@dataclass(frozen=True)
class CommonZeroReport:
    """Common zeros of h and k: (-value, multiplicity in h) per repeat.

    Empty exactly when all shift values are distinct.
    """

    zeros: tuple[tuple, ...]


def _infer_policy(values: Sequence) -> str:
    exact = all(isinstance(v, (Fraction, int, np.integer)) for v in values)
    return "exact" if exact else "approx"


def profile(c: Sequence, policy: str | None = None) -> MultiplicityProfile:
    """Group the shift values under the given equality policy.

    Exact policy compares rationals exactly; approximate policy clusters
    floats whose gap is within ``1e-9 * max(1, |value|)``, closed
    transitively so the result is a partition.  With ``policy=None`` the
    scalar types decide.
    """
    values = list(c)
    if len(values) == 0:
        raise ValueError("need at least one shift value")
    if policy is None:
        policy = _infer_policy(values)
    if policy == "exact":
        if _infer_policy(values) != "exact":
            raise ScalarModeError("exact policy requires rational (Fraction/int) values")
        exact_values = [Fraction(v) for v in values]
        if any(v == 0 for v in exact_values):
            raise ValueError("shift values must be nonzero")
        counts: dict[Fraction, int] = {}
        for v in exact_values:
            counts[v] = counts.get(v, 0) + 1
        groups = tuple((v, mult) for v, mult in counts.items())
        return MultiplicityProfile(len(values), groups, "exact")
    if policy != "approx":
        raise ValueError(f"unknown equality policy {policy!r}")
    fl = np.asarray([float(v) for v in values], dtype=float)
    if not np.all(np.isfinite(fl)) or np.any(fl == 0.0):
        raise ValueError("shift values must be finite and nonzero")
    order = np.argsort(fl, kind="stable")
    cluster_of = np.empty(len(fl), dtype=int)
    n_clusters = 0
    prev = None
    for idx in order:
        v = fl[idx]
        if prev is not None:
            gap_tol = APPROX_REL_TOL * max(1.0, abs(prev), abs(v))
            if v - prev > gap_tol:
                n_clusters += 1
        cluster_of[idx] = n_clusters
        prev = v
    # representative = first-appearing member, groups in first-appearance order
    seen: dict[int, int] = {}
    members: dict[int, int] = {}
    for i, cl in enumerate(cluster_of):
        cl = int(cl)
        if cl not in seen:
            seen[cl] = i
            members[cl] = 0
        members[cl] += 1
    ordered = sorted(seen.items(), key=lambda kv: kv[1])
    groups = tuple((float(fl[first]), members[cl]) for cl, first in ordered)
    return MultiplicityProfile(len(values), groups, "approx")


def common_zeros(prof: MultiplicityProfile) -> CommonZeroReport:
    """Common zeros of h and k implied by the profile.

    Each group of size n_i >= 2 contributes (-value, n_i - 1); singleton
    groups contribute nothing.
    """
    return CommonZeroReport(
        tuple((-v, mult - 1) for v, mult in prof.groups if mult >= 2)
    )


def ml_degree_formula(prof: MultiplicityProfile) -> int:
    """Closed-form count of score-equation solutions: n + l - m - 1.

    With no repeats (l = 0) this is n - 1.  The all-equal case (one group
    holding every value, n >= 2) is excluded and raises
    :class:`AllEqualError`; the boundary MLE rule applies there instead.
    """
    if prof.p == 1 and prof.n >= 2:
        raise AllEqualError(prof.groups[0][0], prof.n)
    return prof.n + prof.l - prof.m - 1


def ml_degree_algebraic(c: Sequence) -> int:
    """Independent algebraic route: deg h - deg gcd(h, k) over exact rationals.

    Must agree with :func:`ml_degree_formula` on every input; the pair of
    routes is the correctness oracle for both.
    """
    prof = profile(c, policy="exact")
    if prof.p == 1 and prof.n >= 2:
        raise AllEqualError(prof.groups[0][0], prof.n)
    values = [Fraction(v) for v in c]
    h = polynomials.build_h(values)
    k = polynomials.build_k(values)
    g = polynomials.gcd(h, k)
    return int(h.degree - g.degree)


def _serialize_value(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def ml_degree_report(c: Sequence, policy: str | None = None) -> dict:
    """JSON-ready ML-degree report for a list of shift values.

    Exact mode carries the algebraic cross-check; approximate mode
    carries a caveat, because grouping float values is tolerance
    dependent and generic continuous data has no repeats at all.
    Raises :class:`AllEqualError` for the excluded all-equal case.
    """
    prof = profile(c, policy)
    md = ml_degree_formula(prof)
    cz = common_zeros(prof)
    doc = {
        "n": prof.n,
        "p": prof.p,
        "l": prof.l,
        "m": prof.m,
        "ml_degree": md,
        "common_zeros": [
            {"value": _serialize_value(v), "mult": mult} for v, mult in cz.zeros
        ],
        "mode": prof.mode,
    }
    if prof.mode == "exact":
        alg = ml_degree_algebraic(list(c))
        doc["oracle"] = {
            "formula": md,
            "algebraic": alg,
            "agree": alg == md,
        }
    else:
        doc["caveat"] = (
            "float shift values are grouped with relative tolerance "
            f"{APPROX_REL_TOL:g}; the exact-rational mode is the source of "
            "truth for multiplicity structure"
        )
    return doc
