import math

import numpy as np
import pytest

from besselprob import quad, specfun, vandantzig as vd

# frozen 50-digit values
SIN_1 = 0.84147098480789650665
TWO_I1_AT_1 = 1.1303182079849700544   # 2 I_1(1)
HALF_INV_I1_AT_1 = 0.88470661884029129286   # 1 / (2 I_1(1))


class TestPowerSemicircle:
    def test_constructor_guards(self):
        with pytest.raises(ValueError):
            vd.PowerSemicircle(-0.5)
        with pytest.raises(ValueError):
            vd.PowerSemicircle(-0.5 + 1e-10)
        vd.PowerSemicircle(-0.4999)

    @pytest.mark.parametrize("alpha,at_zero", [
        (0.5, 0.5),                    # uniform on (-1,1)
        (1.0, 2.0 / math.pi),          # semicircle
        (0.0, 1.0 / math.pi),          # arcsine
    ])
    def test_density_values(self, alpha, at_zero):
        m = vd.PowerSemicircle(alpha)
        assert vd.semicircle_density(m, 0.0) == pytest.approx(at_zero, rel=1e-13)
        assert vd.semicircle_density(m, 1.5) == 0.0
        assert vd.semicircle_density(m, -2.0) == 0.0

    @pytest.mark.parametrize("alpha", [-0.4, 0.0, 0.5, 1.0, 2.5])
    def test_density_normalized(self, alpha):
        # integrate the endpoint-stable product form of the same density
        m = vd.PowerSemicircle(alpha)
        c = math.exp(specfun.ln_gamma(alpha + 1.0)
                     - specfun.ln_gamma(alpha + 0.5)) / math.sqrt(math.pi)
        r = quad.tanh_sinh(lambda x, dlo, dhi: c * (dlo * dhi) ** (alpha - 0.5),
                           -1.0, 1.0, tol=1e-11, edges=True)
        assert r.value == pytest.approx(1.0, abs=1e-10)


class TestCharacteristicFunctions:
    def test_uniform_closed_forms(self):
        m = vd.PowerSemicircle(0.5)
        for t in np.linspace(0.025, 50.0, 500):
            assert abs(vd.semicircle_cf(m, t) - math.sin(t) / t) <= 1e-12
            rel = abs(vd.semicircle_cf_imag_axis(m, t) - math.sinh(t) / t) \
                / (math.sinh(t) / t)
            assert rel <= 1e-12

    def test_cf_at_zero_and_evenness(self):
        for alpha in (-0.3, 0.0, 1.0, 2.5):
            m = vd.PowerSemicircle(alpha)
            assert vd.semicircle_cf(m, 0.0) == 1.0
            assert vd.semicircle_cf_imag_axis(m, 0.0) == 1.0
            for t in (0.3, 2.2, 17.0):
                assert vd.semicircle_cf(m, -t) == vd.semicircle_cf(m, t)
                assert vd.semicircle_cf_imag_axis(m, -t) == vd.semicircle_cf_imag_axis(m, t)
                assert vd.semicircle_cf_imag_axis(m, t) >= 1.0

    def test_cf_vanishes_at_first_zero(self):
        m = vd.PowerSemicircle(1.0)
        j11 = specfun.bessel_zeros(1.0, 1).zeros[0]
        assert abs(vd.semicircle_cf(m, j11)) <= 1e-11

    def test_imag_axis_overflow(self):
        m = vd.PowerSemicircle(0.0)
        with pytest.raises(OverflowError):
            vd.semicircle_cf_imag_axis(m, 800.0)

    def test_reciprocal_nonincreasing(self):
        m = vd.PowerSemicircle(1.0)
        ts = np.linspace(0.0, 20.0, 200)
        phi = [1.0 / vd.semicircle_cf_imag_axis(m, t) for t in ts]
        assert all(b <= a + 1e-15 for a, b in zip(phi, phi[1:]))


class TestHadamard:
    def test_uniform_at_one(self):
        m = vd.PowerSemicircle(0.5)
        assert vd.hadamard_cf(m, 1.0, 200, "real") == pytest.approx(SIN_1, abs=1e-8)

    def test_at_zero(self):
        for alpha in (0.0, 1.0):
            m = vd.PowerSemicircle(alpha)
            assert vd.hadamard_cf(m, 0.0, 50, "real") == 1.0
            assert vd.hadamard_cf(m, 0.0, 50, "imag") == 1.0

    def test_imag_axis_alpha_one(self):
        m = vd.PowerSemicircle(1.0)
        assert vd.hadamard_cf(m, 1.0, 200, "imag") \
            == pytest.approx(TWO_I1_AT_1, abs=1e-8)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 3.0])
    def test_matches_closed_forms(self, alpha):
        m = vd.PowerSemicircle(alpha)
        for z in np.linspace(0.25, 10.0, 40):
            ref_r = vd.semicircle_cf(m, z)
            ref_i = vd.semicircle_cf_imag_axis(m, z)
            assert abs(vd.hadamard_cf(m, z, 200, "real") - ref_r) \
                <= 1e-8 * max(1.0, abs(ref_r))
            assert abs(vd.hadamard_cf(m, z, 200, "imag") - ref_i) \
                <= 1e-8 * max(1.0, abs(ref_i))

    def test_axis_validation(self):
        with pytest.raises(ValueError):
            vd.hadamard_cf(vd.PowerSemicircle(1.0), 1.0, 50, "complex")


class TestHittingTime:
    def test_lt_at_zero(self):
        m = vd.HittingTimeModel.build(1.0)
        assert vd.hitting_time_lt(m, 0.0) == 1.0

    def test_uniform_closed_form(self):
        m = vd.HittingTimeModel.build(0.5)
        for lam in np.geomspace(1e-6, 10.0, 120):
            s = math.sqrt(2.0 * lam)
            assert abs(vd.hitting_time_lt(m, lam) - s / math.sinh(s)) <= 1e-12

    def test_alpha_one_value(self):
        # (2 lam)^{1/2} / (2 Gamma(2) I_1(sqrt(2 lam))) at lam = 1/2; a
        # transform value must stay inside (0, 1]
        m = vd.HittingTimeModel.build(1.0)
        assert vd.hitting_time_lt(m, 0.5) == pytest.approx(HALF_INV_I1_AT_1, rel=1e-13)
        assert 0.0 < vd.hitting_time_lt(m, 0.5) <= 1.0

    def test_product_form_matches(self):
        m = vd.HittingTimeModel.build(1.0, truncation=500)
        for lam in np.linspace(0.0, 10.0, 41):
            assert abs(vd.hitting_time_lt_product(m, lam)
                       - vd.hitting_time_lt(m, lam)) <= 1e-8

    def test_mean_by_derivative(self):
        # exact means are 1/(2(alpha+1)); the derivative route must land there
        for alpha in (0.0, 0.5, 1.0, 3.0):
            assert vd.mean_hitting_time(alpha) \
                == pytest.approx(0.5 / (alpha + 1.0), abs=5e-12)

    def test_tail_mean_nonnegative_and_shrinking(self):
        m1 = vd.HittingTimeModel.build(1.0, truncation=64)
        m2 = vd.HittingTimeModel.build(1.0, truncation=256)
        assert m1.tail_mean >= 0.0
        assert m2.tail_mean >= 0.0
        assert m2.tail_mean < m1.tail_mean

    def test_domain(self):
        with pytest.raises(ValueError):
            vd.HittingTimeModel.build(-0.6)
        with pytest.raises(ValueError):
            vd.HittingTimeModel.build(1.0, truncation=10)
        m = vd.HittingTimeModel.build(1.0)
        with pytest.raises(ValueError):
            vd.hitting_time_lt(m, -1.0)


class TestSampling:
    def test_positive_and_reproducible(self):
        m = vd.HittingTimeModel.build(1.0)
        t1 = vd.sample_hitting_time(m, 7, 5000)
        t2 = vd.sample_hitting_time(m, 7, 5000)
        assert np.array_equal(t1, t2)
        assert np.all(t1 > 0.0)
        t3 = vd.sample_hitting_time(m, 8, 5000)
        assert not np.array_equal(t1, t3)

    def test_block_prefix_stability(self):
        # drawing fewer samples reproduces the prefix (substreams per block)
        m = vd.HittingTimeModel.build(0.5)
        big = vd.sample_hitting_time(m, 11, 9000)
        small = vd.sample_hitting_time(m, 11, 4096)
        assert np.array_equal(big[:4096], small)

    def test_mean_against_derivative(self):
        m = vd.HittingTimeModel.build(0.5)
        ts = vd.sample_hitting_time(m, 42, 100_000)
        se = ts.std(ddof=1) / math.sqrt(len(ts))
        assert abs(ts.mean() - 1.0 / 3.0) <= 3.0 * se
        assert abs(ts.mean() - vd.mean_hitting_time(0.5)) <= 3.0 * se

    def test_empirical_laplace_transform(self):
        m = vd.HittingTimeModel.build(1.0)
        ts = vd.sample_hitting_time(m, 13, 100_000)
        for lam in (0.5, 1.0, 2.0):
            emp = np.exp(-lam * ts)
            se = emp.std(ddof=1) / math.sqrt(len(ts))
            assert abs(emp.mean() - vd.hitting_time_lt(m, lam)) <= 3.0 * se

    def test_subordinated_moments(self):
        m = vd.HittingTimeModel.build(1.0)
        ys = vd.sample_subordinated(m, 17, 100_000)
        n = len(ys)
        assert abs(ys.mean()) <= 3.0 * ys.std(ddof=1) / math.sqrt(n)
        # Var Y = E[T]
        want = vd.mean_hitting_time(1.0)
        var = ys.var(ddof=1)
        se_var = math.sqrt(2.0 / (n - 1)) * var   # normal-theory approximation
        assert abs(var - want) <= 4.0 * se_var

    def test_subordination_identity_cf(self):
        # E e^{i t Y} = E e^{-t^2 T / 2}
        m = vd.HittingTimeModel.build(1.0)
        ys = vd.sample_subordinated(m, 19, 100_000)
        t = 1.0
        emp = np.cos(t * ys)
        se = emp.std(ddof=1) / math.sqrt(len(ys))
        assert abs(emp.mean() - vd.hitting_time_lt(m, 0.5 * t * t)) <= 3.0 * se


class TestVerifyPair:
    def test_uniform_identity_tight(self):
        rep = vd.verify_pair(vd.PowerSemicircle(0.5), np.linspace(0.25, 30, 120),
                             mc_count=20_000, seed=5)
        assert rep.max_identity_error <= 1e-10
        assert rep.bochner_min_eigenvalue >= -1e-10
        assert rep.mc_cf_max_z_score <= 4.0

    def test_report_serialization(self):
        rep = vd.verify_pair(vd.PowerSemicircle(1.0), [0.5, 1.0, 2.0],
                             mc_count=10_000, seed=3)
        d = rep.to_dict()
        assert set(d) == {"alpha", "grid", "max_identity_error",
                          "bochner_min_eigenvalue", "mc_cf_max_z_score",
                          "mc_count", "seed"}
        import json
        assert json.loads(rep.to_json()) == json.loads(rep.to_json())

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            vd.verify_pair(vd.PowerSemicircle(1.0), [])
        with pytest.raises(ValueError):
            vd.verify_pair(vd.PowerSemicircle(1.0), [2.0, 1.0])


class TestSelfReciprocal:
    def test_uniform_spot(self):
        m = vd.PowerSemicircle(0.5)
        dev, skipped = vd.self_reciprocal_check(m, [1.0])
        assert dev == 0.0

    @pytest.mark.parametrize("alpha", [0.0, 2.0])
    def test_grid(self, alpha):
        m = vd.PowerSemicircle(alpha)
        dev, skipped = vd.self_reciprocal_check(m, np.linspace(0.05, 10.0, 173))
        assert dev <= 1e-10

    def test_zero_skipping(self):
        m = vd.PowerSemicircle(1.0)
        j11 = specfun.bessel_zeros(1.0, 1).zeros[0]
        dev, skipped = vd.self_reciprocal_check(m, [1.0, j11 + 2e-7, 2.0])
        assert skipped and abs(skipped[0] - j11) < 1e-6


def test_samples_csv(tmp_path):
    path = tmp_path / "draws.csv"
    vd.write_samples_csv(str(path), [1.0, 2.5, 0.125])
    lines = path.read_text().splitlines()
    assert lines[0] == "value"
    assert [float(v) for v in lines[1:]] == [1.0, 2.5, 0.125]
