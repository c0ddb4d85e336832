import math
from fractions import Fraction

import numpy as np
import pytest

from fgmexp.model import Dataset, Observation, sample
from fgmexp.polynomials import FLOAT, Poly, ScalarModeError, build_h
from fgmexp.roots import (
    RootSet,
    complex_roots,
    score_root_from_weights,
    score_root_in_open_interval,
)

F = Fraction


def random_c(rng, n, lo=1.0, hi=10.0):
    return rng.uniform(lo, hi, size=n) * rng.choice([-1.0, 1.0], size=n)


class TestComplexRoots:
    def test_linear(self):
        rs = complex_roots(Poly((6.0, 2.0), FLOAT))
        assert rs.roots == (pytest.approx(-3.0),)
        assert rs.multiplicities == (1,)

    def test_worked_quadratic(self):
        rs = complex_roots(build_h([1.0, 1.0, 2.0]))
        assert sorted(z.real for z in rs.roots) == pytest.approx([-5 / 3, -1.0], abs=1e-9)
        assert rs.total_multiplicity == 2

    def test_perfect_square_merges_to_multiplicity_two(self):
        rs = complex_roots(Poly((1.0, 2.0, 1.0), FLOAT))
        assert rs.multiplicities == (2,)
        assert rs.roots[0].real == pytest.approx(-1.0, abs=1e-7)
        assert rs.total_multiplicity == 2

    def test_census_always_matches_degree(self):
        # includes triple shifts, whose clustered double root may be
        # reported split; the multiplicity total is what is guaranteed
        rng = np.random.default_rng(77)
        for _ in range(50):
            n = int(rng.integers(2, 15))
            c = list(random_c(rng, n))
            if n >= 4:
                c[1] = c[2] = c[0]
            rs = complex_roots(build_h([float(v) for v in c]))
            assert rs.total_multiplicity == n - 1

    def test_residuals_are_small_backward_errors(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            n = int(rng.integers(2, 21))
            rs = complex_roots(build_h([float(v) for v in random_c(rng, n)]))
            assert max(rs.residuals) <= 1e-8

    def test_real_shifts_give_real_roots(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            n = int(rng.integers(2, 21))
            c = random_c(rng, n)
            rs = complex_roots(build_h([float(v) for v in c]))
            scale = max(1.0, float(np.max(np.abs(c))))
            assert max(abs(z.imag) for z in rs.roots) <= 1e-7 * scale

    def test_interlaces_doubled_shift(self):
        # a doubled value pins a root of h at the repeated -c; weak
        # interlacing holds up to coefficient rounding
        rng = np.random.default_rng(29)
        for _ in range(50):
            n = int(rng.integers(2, 15))
            c = list(random_c(rng, n))
            if n >= 2:
                c[1] = c[0]
            rs = complex_roots(build_h([float(v) for v in c]))
            xs = sorted(z.real for z, m in zip(rs.roots, rs.multiplicities) for _ in range(m))
            ys = sorted(-v for v in c)
            scale = max(1.0, float(np.max(np.abs(c))))
            for j, xj in enumerate(xs):
                assert ys[j] - 1e-6 * scale <= xj <= ys[j + 1] + 1e-6 * scale

    def test_rejects_rational_polynomial(self):
        with pytest.raises(ScalarModeError):
            complex_roots(Poly((F(1), F(1))))

    def test_rejects_constant(self):
        with pytest.raises(ValueError):
            complex_roots(Poly((3.0,), FLOAT))

    def test_json_shape(self):
        doc = complex_roots(Poly((1.0, 2.0, 1.0), FLOAT)).to_json_dict()
        assert doc["converged"] is True
        assert doc["roots"][0].keys() == {"re", "im", "mult"}
        assert len(doc["residuals"]) == len(doc["roots"])


class TestScoreRoot:
    def test_antisymmetric_weights_give_zero(self):
        assert score_root_from_weights(np.array([0.5, -0.5])) == 0.0

    def test_single_positive_weight_has_no_interior_root(self):
        assert score_root_from_weights(np.array([0.5])) is None

    def test_frozen_three_weight_root(self):
        # score_weights (0.9, -0.3, -0.3): the two equal negatives merge,
        # 0.9/(1+0.9 t) = 0.6/(1-0.3 t)  =>  t = 10/27
        r = score_root_from_weights(np.array([0.9, -0.3, -0.3]))
        assert r == pytest.approx(10 / 27, abs=1e-10)

    def test_grid_scan_oracle(self):
        # locate the sign change on a dense grid, independently of the solver
        w = np.array([0.9, -0.3, -0.3])
        grid = np.linspace(-0.999999, 0.999999, 10**6)
        vals = (w[None, :] / (1.0 + grid[:, None] * w[None, :])).sum(axis=1)
        flips = np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))
        assert len(flips) == 1
        bracket_lo, bracket_hi = grid[flips[0]], grid[flips[0] + 1]
        r = score_root_from_weights(w)
        assert bracket_lo <= r <= bracket_hi

    def test_root_is_local_maximum_with_sign_change(self):
        rng = np.random.default_rng(41)
        found = 0
        for _ in range(100):
            ds = sample(int(rng.integers(3, 40)), float(rng.uniform(-1, 1)), int(rng.integers(0, 2**31)))
            w = ds.weights[ds.weights != 0.0]
            r = score_root_from_weights(w)
            if r is None:
                continue
            found += 1
            ll = lambda t: float(np.sum(np.log(1.0 + t * w)))
            assert ll(r) >= ll(r - 1e-6)
            assert ll(r) >= ll(r + 1e-6)
            s = lambda t: float(np.sum(w / (1.0 + t * w)))
            assert s(r - 1e-8) > 0.0 > s(r + 1e-8)
        assert found > 30

    def test_score_at_root_is_tiny(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            ds = sample(int(rng.integers(3, 50)), 0.4, int(rng.integers(0, 2**31)))
            w = ds.weights[ds.weights != 0.0]
            r = score_root_from_weights(w)
            if r is not None:
                assert abs(float(np.sum(w / (1.0 + r * w)))) <= 1e-10

    def test_weight_of_exactly_one_uses_offset_endpoint(self):
        # weight +1 puts a pole at theta = -1; the search must not raise
        w = np.array([1.0, -0.4, -0.4, -0.4])
        r = score_root_from_weights(w)
        if r is not None:
            assert -1.0 < r < 1.0

    def test_requires_a_nonzero_weight(self):
        with pytest.raises(ValueError):
            score_root_from_weights(np.array([0.0, 0.0]))

    def test_dataset_wrapper_drops_degenerates(self):
        ds = Dataset((Observation(math.log(2.0), 1.0), Observation(0.2, 0.1), Observation(2.5, 3.0)))
        assert ds.degenerate_indices == (0,)
        r = score_root_in_open_interval(ds)
        w = ds.weights[ds.weights != 0.0]
        assert r == score_root_from_weights(w)

    def test_exact_sign_flip_of_root(self):
        rng = np.random.default_rng(47)
        for _ in range(50):
            n = int(rng.integers(2, 60))
            w = rng.uniform(-1, 1, size=n)
            w = w[w != 0.0]
            r = score_root_from_weights(w)
            r_neg = score_root_from_weights(-w)
            if r is None:
                assert r_neg is None
            else:
                assert r_neg == -r
