"""Command-line front end.

Four subcommands, all emitting a single JSON document on stdout:

* ``sample``    -- write a seeded simulated dataset as CSV
* ``fit``       -- maximum likelihood fit of a CSV dataset
* ``mldegree``  -- ML-degree report for explicit rational shifts or a dataset
* ``verify``    -- randomized cross-check campaign over exact rationals

Exit codes: 0 success (including the structured all-equal answer),
1 verification failures, 2 malformed data or bad arguments, 3 statistical
degeneracy (no usable observations).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import mldegree, mle, model, polynomials

__all__ = ["VerificationCampaign", "run_campaign", "main"]


@dataclass
class VerificationCampaign:
    """Outcome of a randomized verification run.

    ``repetition_patterns`` records the forced multiplicity shapes, or
    None when each trial draws its own.  A passing campaign has an empty
    ``failures`` list; skipped trials (the excluded all-equal shape) are
    noted separately and do not fail the campaign.
    """

    trials: int
    n_range: tuple[int, int]
    repetition_patterns: list | None
    seed: int
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    checks_run: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "n_range": list(self.n_range),
            "patterns": self.repetition_patterns,
            "seed": self.seed,
            "checks_run": self.checks_run,
            "skipped": self.skipped,
            "failures": self.failures,
            "passed": self.passed,
        }


def _random_rational(rng: random.Random) -> Fraction:
    # numerators and denominators in [1, 20] with random sign, so the
    # values land both inside and outside the data-realizable |c| >= 1
    num = rng.randint(1, 20)
    den = rng.randint(1, 20)
    sign = rng.choice((1, -1))
    return Fraction(sign * num, den)


def _distinct_rationals(rng: random.Random, count: int) -> list[Fraction]:
    seen: set[Fraction] = set()
    out: list[Fraction] = []
    while len(out) < count:
        v = _random_rational(rng)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _random_pattern(rng: random.Random, n: int) -> tuple[int, ...]:
    """Multiplicities (each >= 2) of the repeated groups; () = all distinct."""
    max_l = min(3, n // 2)
    l = rng.randint(0, max_l)
    if l == 0:
        return ()
    mults = [2] * l
    budget = n - 2 * l
    for i in range(l):
        if budget <= 0:
            break
        extra = rng.randint(0, budget)
        mults[i] += extra
        budget -= extra
    rng.shuffle(mults)
    return tuple(mults)


def _materialize(rng: random.Random, n: int, pattern: tuple[int, ...]) -> list[Fraction]:
    m = sum(pattern)
    singles = n - m
    values = _distinct_rationals(rng, len(pattern) + singles)
    c: list[Fraction] = []
    for mult, v in zip(pattern, values):
        c.extend([v] * mult)
    c.extend(values[len(pattern):])
    rng.shuffle(c)
    return c


def _trial_checks(c: list[Fraction]) -> list[dict]:
    """The three cross-checks on one exact shift multiset."""
    failures = []
    prof = mldegree.profile(c, policy="exact")
    md_formula = mldegree.ml_degree_formula(prof)
    md_algebraic = mldegree.ml_degree_algebraic(c)
    if md_formula != md_algebraic:
        failures.append(
            {
                "check": "ml-degree-formula-vs-algebraic",
                "detail": f"formula {md_formula} != algebraic {md_algebraic}",
            }
        )
    h = polynomials.build_h(c)
    k = polynomials.build_k(c)
    g = polynomials.gcd(h, k)
    has_repeat = any(mult >= 2 for _, mult in prof.groups)
    if (g.degree >= 1) != has_repeat:
        failures.append(
            {
                "check": "common-zero-iff-repeat",
                "detail": f"gcd degree {g.degree} vs repeats {has_repeat}",
            }
        )
    for v, mult in prof.groups:
        if mult >= 2:
            observed = polynomials.root_multiplicity(h, -v)
            if observed != mult - 1:
                failures.append(
                    {
                        "check": "repeated-shift-multiplicity",
                        "detail": f"value {v}: multiplicity {observed} != {mult - 1}",
                    }
                )
    return failures


def run_campaign(
    trials: int, n_max: int, seed: int, patterns: list | None = None
) -> VerificationCampaign:
    """Run the randomized cross-check campaign.

    Each trial draws a size n in [2, n_max], a repetition pattern (forced
    via ``patterns`` or random), and distinct random rationals to fill
    it, then runs the three checks of :func:`_trial_checks`.  The
    all-equal shape is recorded as skipped, since no ML-degree is defined
    there.  Failure records carry the full shift list for reproduction
    and are sorted before emission.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rng = random.Random(seed)
    campaign = VerificationCampaign(trials, (2, n_max), patterns, seed)
    for trial in range(trials):
        n = rng.randint(2, n_max)
        if patterns:
            shape = rng.choice(patterns)
            if shape == "n":
                pattern = (n,)
            else:
                pattern = tuple(shape)
                n = max(n, sum(pattern))
                if len(pattern) == 1 and sum(pattern) == n:
                    n += 1  # keep one singleton so the shape is not all-equal
        else:
            pattern = _random_pattern(rng, n)
        if len(pattern) == 1 and pattern[0] == n:
            value = _random_rational(rng)
            campaign.skipped.append(
                {
                    "trial": trial,
                    "c": [str(value)] * n,
                    "note": "all shift values equal: excluded case, boundary MLE applies",
                }
            )
            continue
        c = _materialize(rng, n, pattern)
        for failure in _trial_checks(c):
            failure["trial"] = trial
            failure["c"] = [str(v) for v in c]
            campaign.failures.append(failure)
        campaign.checks_run += 1
    campaign.failures.sort(key=lambda f: (f["trial"], f["check"]))
    return campaign


# -- subcommands -------------------------------------------------------------


def _emit(doc: dict, pretty: bool) -> None:
    print(json.dumps(doc, indent=2 if pretty else None))


def cmd_sample(args) -> int:
    data = model.sample(args.n, args.theta, args.seed)
    try:
        model.write_csv(args.out, data)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    _emit({"out": args.out, "n": args.n, "theta": args.theta, "seed": args.seed}, args.pretty)
    return 0


def cmd_fit(args) -> int:
    try:
        data = model.read_csv(args.in_path)
    except model.DataFormatError as exc:
        print(f"error: {args.in_path}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read {args.in_path}: {exc}", file=sys.stderr)
        return 2
    try:
        result = mle.fit(data)
    except mle.NoDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(result.to_json_dict(), args.pretty)
    return 0


def cmd_mldegree(args) -> int:
    if args.c is not None:
        try:
            values = [polynomials.parse_rational(tok) for tok in args.c]
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        mode = "exact"
    else:
        try:
            data = model.read_csv(args.in_path)
        except model.DataFormatError as exc:
            print(f"error: {args.in_path}: {exc}", file=sys.stderr)
            return 2
        except OSError as exc:
            print(f"error: cannot read {args.in_path}: {exc}", file=sys.stderr)
            return 2
        shift = model.c_shift(data)
        if shift.values.size == 0:
            print("error: no usable observations (all weights are zero)", file=sys.stderr)
            return 3
        values = list(shift.values)
        mode = "approx"
    try:
        doc = mldegree.ml_degree_report(values)
    except ValueError as exc:
        if isinstance(exc, mldegree.AllEqualError):
            _emit(
                {
                    "mode": mode,
                    "n": exc.n,
                    "all_equal": True,
                    "boundary_mle": 1 if exc.value > 0 else -1,
                    "message": str(exc),
                },
                args.pretty,
            )
            return 0
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if mode == "approx":
        doc["dropped"] = len(shift.degenerate_indices)
    _emit(doc, args.pretty)
    return 0


def cmd_verify(args) -> int:
    patterns = None
    if args.pattern:
        patterns = []
        for tok in args.pattern:
            if tok.strip() == "n":
                patterns.append("n")
                continue
            try:
                shape = tuple(int(part) for part in tok.split(","))
            except ValueError:
                print(f"error: bad pattern {tok!r}", file=sys.stderr)
                return 2
            if any(mult < 2 for mult in shape):
                print(f"error: pattern multiplicities must be >= 2: {tok!r}", file=sys.stderr)
                return 2
            patterns.append(shape)
    campaign = run_campaign(args.trials, args.n_max, args.seed, patterns)
    _emit(campaign.to_json_dict(), args.pretty)
    return 0 if campaign.passed else 1


# -- argument parsing ---------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _theta_arg(text: str) -> float:
    try:
        return model.validate_theta(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgmexp",
        description="FGM bivariate exponential: sampling, fitting, ML-degree.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="write a simulated CSV dataset")
    p.add_argument("--n", type=_positive_int, required=True, help="sample size")
    p.add_argument("--theta", type=_theta_arg, required=True, help="association in [-1, 1]")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fit", parents=[common], help="maximum likelihood fit from CSV")
    p.add_argument("--in", dest="in_path", required=True, help="input CSV path")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("mldegree", parents=[common], help="ML-degree report")
    # let negative rational literals like -9/12 pass as values, not options
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--c", nargs="+", help="explicit shift values as p/q literals (exact)")
    group.add_argument("--in", dest="in_path", help="dataset CSV path (approximate)")
    p.set_defaults(func=cmd_mldegree, c=None, in_path=None)

    p = sub.add_parser("verify", parents=[common], help="randomized cross-check campaign")
    p.add_argument("--trials", type=_positive_int, default=500)
    p.add_argument("--n-max", dest="n_max", type=int, default=10)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument(
        "--pattern",
        action="append",
        help="force repetition shapes, e.g. '2,2' or '3'; 'n' means all equal "
        "(repeatable; default draws a random shape per trial)",
    )
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.n_max < 2:
        parser.error("--n-max must be >= 2")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
