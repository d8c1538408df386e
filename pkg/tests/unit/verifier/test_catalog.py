"""Unit tests for individual catalog entries on small scenarios."""

import math

import numpy as np
import pytest
from scipy import stats as sps

from conclab.core.config import LawConfig, MonteCarloPlan, ScenarioConfig
from conclab.core.exceptions import (
    DegenerateRegressionError,
    MissingScenarioConstantError,
    ScenarioError,
)
from conclab.verifier.catalog.common import kolmogorov_mean_bound
from conclab.verifier.registry import get_check
from conclab.verifier.scenario import Scenario


def run(bound_id, config, n=100, replications=200, seed=7):
    """Run one entry on a fresh scenario."""
    scenario = Scenario(config, n=n, seed=seed)
    plan = MonteCarloPlan(replications=replications, master_seed=seed, n=n)
    return get_check(bound_id).run(scenario, plan)


class TestLinearEntries:
    """Test the int f dF_n entries against the Gaussian closed forms."""

    def test_lsi_tail_example(self):
        """Test lhs = 2 sf(2) against rhs = 2 e^{-2} at n = 100, h = 0.2."""
        report = run("PROP_5_2_TAIL", ScenarioConfig(function="identity", h=0.2))

        assert report.lhs_estimate == pytest.approx(2 * sps.norm.sf(2.0))
        assert report.lhs_estimate == pytest.approx(0.0455, abs=1e-4)
        assert report.rhs_value == pytest.approx(2 * math.exp(-2.0))
        assert report.lhs_stderr == 0.0
        assert report.metadata["method"] == "exact"
        assert report.passed

    def test_pi_tail(self):
        """Test rhs = 6 e^{-sqrt(n) h / sigma}."""
        report = run("PROP_2_3_TAIL", ScenarioConfig(function="identity", h=0.2))

        assert report.rhs_value == pytest.approx(6 * math.exp(-2.0))
        assert report.passed

    def test_second_moment_equality(self):
        """Test that E D^2 = sigma^2 / n passes for Gaussian identity."""
        report = run("PROP_2_1", ScenarioConfig(function="identity"))

        assert report.lhs_estimate == pytest.approx(0.01)
        assert report.rhs_value == pytest.approx(0.01)
        assert report.passed

    def test_moment(self):
        """Test E|D|^2 <= (2 sigma)^2 / n at p = 2."""
        report = run("PROP_2_3_MOMENT", ScenarioConfig(function="identity", p=2.0))

        assert report.lhs_estimate == pytest.approx(0.01)
        assert report.rhs_value == pytest.approx(0.04)
        assert report.passed

    def test_moment_needs_p_at_least_two(self):
        """Test the exponent floor."""
        with pytest.raises(ScenarioError, match="p >= 2"):
            run("PROP_2_3_MOMENT", ScenarioConfig(p=1.5))

    def test_monte_carlo_tail_with_sine(self):
        """Test the sampled tail with a bounded test function."""
        report = run("PROP_5_2_TAIL", ScenarioConfig(h=0.2))

        assert report.metadata["method"] == "monte_carlo"
        assert report.passed

    def test_missing_tail_level(self):
        """Test that h must be configured."""
        with pytest.raises(MissingScenarioConstantError) as info:
            run("PROP_5_2_TAIL", ScenarioConfig())

        assert info.value.symbol == "h"

    def test_lsi_entry_without_lsi_constant(self):
        """Test that the two-sided exponential has no LSI entry."""
        config = ScenarioConfig(law=LawConfig(law="two_sided_exponential"), h=0.2)

        with pytest.raises(MissingScenarioConstantError):
            run("PROP_5_2_TAIL", config)


class TestPointwiseEntries:
    """Test the window and pointwise entries."""

    def test_empty_window(self):
        """Test that a = b gives 0 <= 0 exactly."""
        report = run("COR_6_2", ScenarioConfig(a=0.0, b=0.0))

        assert report.lhs_estimate == 0.0
        assert report.rhs_value == 0.0
        assert report.metadata["method"] == "exact"
        assert report.passed

    def test_window(self):
        """Test the L1 window bound on [-1, 1]."""
        report = run("COR_6_2", ScenarioConfig(a=-1.0, b=1.0))

        assert report.rhs_value == pytest.approx(4 * (2.0 / 100) ** (1 / 3))
        assert report.passed

    def test_window_needs_ordered_ends(self):
        """Test that a > b is refused."""
        with pytest.raises(ScenarioError, match="a <= b"):
            run("COR_6_2", ScenarioConfig(a=1.0, b=0.0))

    def test_window_needs_ends(self):
        """Test that a missing end names the symbol."""
        with pytest.raises(MissingScenarioConstantError) as info:
            run("COR_6_2", ScenarioConfig(b=1.0))

        assert info.value.symbol == "a"

    @pytest.mark.parametrize("r", [1.0, 2.0, 3.0])
    def test_point_tail_is_exact(self, r):
        """Test the binomial oracle at x = 0."""
        report = run("PROP_6_3_TAIL", ScenarioConfig(x=0.0, r=r))

        assert report.metadata["method"] == "exact"
        assert report.rhs_value == pytest.approx(2 * math.exp(-2 * r**3 / 27))
        assert report.passed

    def test_hensley(self):
        """Test 1/sqrt(12) <= M sigma = 1/sqrt(2 pi)."""
        report = run("HENSLEY", ScenarioConfig())

        assert report.lhs_estimate == pytest.approx(1 / math.sqrt(12))
        assert report.rhs_value == pytest.approx(1 / math.sqrt(2 * math.pi))
        assert report.passed

    def test_hensley_refuses_shifts(self):
        """Test that shifted products are refused."""
        with pytest.raises(ScenarioError, match="unshifted"):
            run("HENSLEY", ScenarioConfig(shifts="staircase"), n=10)


class TestOtherEntries:
    """Test scenario-kind checks and the calibration entries."""

    def test_synthetic_rate(self):
        """Test that the calibration entry recovers -2/3."""
        config = ScenarioConfig(n_sweep=[32, 64, 128, 256])

        report = run("SYNTHETIC_RATE", config, n=32)

        assert report.lhs_estimate == pytest.approx(-2 / 3, abs=1e-9)
        assert report.passed

    def test_matrix_entry_refuses_product(self):
        """Test that Wigner entries refuse product scenarios."""
        with pytest.raises(ScenarioError, match="does not apply"):
            run("HOFFMAN_WIELANDT", ScenarioConfig())

    def test_second_example_needs_comonotone(self):
        """Test that EX_2 refuses independent coordinates."""
        config = ScenarioConfig(n_sweep=[8, 16, 32])

        with pytest.raises(ScenarioError, match="comonotone"):
            run("EX_2", config, n=8)

    def test_coordinate_tail_is_restamped(self):
        """Test that wrapped entries carry the run's n and seed."""
        report = run("COORD_TAIL", ScenarioConfig(h=0.5), n=40, seed=3)

        assert report.n == 40
        assert report.seed == 3
        assert report.passed


def gaussian_beta(n):
    """beta = (M sigma)^(2/3) / n^(1/3) for standard Gaussian coordinates."""
    return (1.0 / math.sqrt(2.0 * math.pi)) ** (2.0 / 3.0) / n ** (1.0 / 3.0)


def central_binomial_deviation(n):
    """E|B/n - 1/2| for B ~ Bin(n, 1/2), n even."""
    return math.comb(n, n // 2) / 2.0 ** (n + 1)


class TestLsiLinearEntries:
    """Test the LSI moment, entropy and Laplace-transform entries."""

    def test_lsi_moment(self):
        """Test E|D|^2 <= (sigma sqrt 2)^2 / n at p = 2."""
        report = run("PROP_5_2_MOMENT", ScenarioConfig(function="identity", p=2.0))

        assert report.lhs_estimate == pytest.approx(0.01)
        assert report.rhs_value == pytest.approx(0.02)
        assert report.metadata["method"] == "exact"
        assert report.passed

    def test_lsi_moment_is_tighter_than_pi_moment(self):
        """Test that sqrt(p) replaces p in the constant."""
        config = ScenarioConfig(function="identity", p=4.0)

        lsi = run("PROP_5_2_MOMENT", config)
        pi = run("PROP_2_3_MOMENT", config)

        assert lsi.lhs_estimate == pi.lhs_estimate
        assert lsi.rhs_value == pytest.approx(pi.rhs_value / 16.0)

    def test_entropy(self):
        """Test Ent[(mean X)^2] = 0.01 (2 - gamma - log 2) against 2 / n."""
        config = ScenarioConfig(function="identity")

        report = run("PROP_5_1_ENT", config, replications=400)

        assert report.rhs_value == pytest.approx(0.02)
        assert 0.004 < report.lhs_estimate < 0.011
        assert report.metadata["method"] == "monte_carlo"
        assert report.passed

    def test_entropy_with_sine(self):
        """Test that the bounded test function also satisfies the bound."""
        report = run("PROP_5_1_ENT", ScenarioConfig())

        assert report.rhs_value < 0.02
        assert report.passed

    @pytest.mark.parametrize("bound_id", ["PROP_5_4_MGF", "PROP_5_4_MGF_LOWER"])
    def test_hopf_lax_gap_of_identity(self, bound_id):
        """Test that t int [P_s f - f] dF = t s / 2 = t^2 / 2n matches log E e^{tD}."""
        report = run(bound_id, ScenarioConfig(function="identity", t=1.0))

        assert report.lhs_estimate == pytest.approx(0.005)
        assert report.rhs_value == pytest.approx(0.005, rel=1e-4)
        assert report.metadata["s"] == pytest.approx(0.01)
        assert report.tolerance == pytest.approx(8e-3)
        assert report.passed

    def test_mgf_by_sampling(self):
        """Test the sampled Laplace transform with the sine function."""
        report = run("PROP_5_4_MGF", ScenarioConfig(t=2.0))

        assert report.metadata["method"] == "monte_carlo"
        assert report.rhs_value > 0.0
        assert report.passed

    def test_mgf_needs_t(self):
        """Test that t must be configured."""
        with pytest.raises(MissingScenarioConstantError) as info:
            run("PROP_5_4_MGF", ScenarioConfig(function="identity"))

        assert info.value.symbol == "t"


class TestPointLawEntries:
    """Test the entries computed from the exact law of F_n(x)."""

    def test_point_mgf(self):
        """Test the binomial Laplace transform at x = 0 against t (F(h) - F(0))."""
        report = run("PROP_6_1_MGF", ScenarioConfig(x=0.0, t=1.0))
        h = math.sqrt(2.0 / 100)

        expected = 100 * math.log((1 + math.exp(0.01)) / 2) - 0.5
        assert report.lhs_estimate == pytest.approx(expected, rel=1e-6)
        assert report.rhs_value == pytest.approx(sps.norm.cdf(h) - 0.5)
        assert report.metadata["h"] == pytest.approx(h)
        assert report.metadata["method"] == "exact"
        assert report.passed

    def test_point_mgf_sides_agree_at_the_median(self):
        """Test that both sides coincide for a symmetric law at x = 0."""
        config = ScenarioConfig(x=0.0, t=3.0)

        upper = run("PROP_6_1_MGF", config)
        lower = run("PROP_6_1_MGF_LOWER", config)

        assert lower.lhs_estimate == pytest.approx(upper.lhs_estimate)
        assert lower.rhs_value == pytest.approx(upper.rhs_value)
        assert lower.passed

    def test_point_mgf_lower_off_center(self):
        """Test the lower side at x = 1."""
        report = run("PROP_6_1_MGF_LOWER", ScenarioConfig(x=1.0, t=1.0))
        h = math.sqrt(2.0 / 100)

        expected = sps.norm.cdf(1.0) - sps.norm.cdf(1.0 - h)
        assert report.rhs_value == pytest.approx(expected)
        assert report.passed

    def test_point_abs(self):
        """Test E|F_n(0) - 1/2| from the central binomial coefficient."""
        report = run("PROP_6_1_ABS", ScenarioConfig(x=0.0, t=1.0))
        h = math.sqrt(2.0 / 100)

        assert report.lhs_estimate == pytest.approx(central_binomial_deviation(100))
        assert report.rhs_value == pytest.approx(
            sps.norm.cdf(h) - sps.norm.cdf(-h) + math.log(2.0)
        )
        assert report.lhs_stderr == 0.0
        assert report.passed

    def test_point_mean_rate(self):
        """Test that E|F_n(0) - 1/2| decays like n^(-1/2), faster than beta."""
        config = ScenarioConfig(x=0.0, n_sweep=[64, 128, 256, 512])

        report = run("PROP_6_3_MEAN", config, n=64)

        assert report.kind == "rate"
        assert report.n == 512
        assert report.lhs_estimate == pytest.approx(-0.5, abs=0.01)
        assert report.rhs_value == pytest.approx(-1.0 / 3.0, abs=1e-9)
        assert report.metadata["estimates"][0] == pytest.approx(
            central_binomial_deviation(64)
        )
        assert report.passed

    def test_point_mean_rate_needs_sweep(self):
        """Test that a rate entry refuses an empty sweep."""
        with pytest.raises(ScenarioError, match="n-sweep"):
            run("PROP_6_3_MEAN", ScenarioConfig(x=0.0))


class TestReferenceEntries:
    """Test the entries measured against a reference law G."""

    @pytest.fixture
    def shifted_reference(self):
        """Standard Gaussian coordinates with G = N(0.1, 1)."""
        return ScenarioConfig(
            reference=LawConfig(law="gaussian", params={"mean": 0.1}), x=0.0, r=1.0
        )

    def test_reference_tail(self, shifted_reference):
        """Test the exact tail shifted by ||F - G|| = Phi(0.05) - Phi(-0.05)."""
        report = run("PROP_6_4", shifted_reference)

        distance = sps.norm.cdf(0.05) - sps.norm.cdf(-0.05)
        assert report.metadata["distance"] == pytest.approx(distance, abs=1e-5)
        assert report.metadata["beta"] == pytest.approx(gaussian_beta(100))
        assert report.metadata["pool_stderr"] == 0.0
        assert report.metadata["method"] == "exact"
        assert report.rhs_value == pytest.approx(2 * math.exp(-2 / 27))
        assert report.lhs_estimate < 0.05
        assert report.passed

    def test_reference_tail_needs_reference(self):
        """Test that a product scenario without G names the missing symbol."""
        with pytest.raises(MissingScenarioConstantError) as info:
            run("PROP_6_4", ScenarioConfig(x=0.0, r=1.0))

        assert info.value.symbol == "reference"

    def test_reference_kolmogorov(self, shifted_reference):
        """Test E||F_n - G|| <= 5 beta log^(1/3)(1 + 1/beta) + ||F - G||."""
        report = run("THM_7_1", shifted_reference)

        beta = gaussian_beta(100)
        expected = kolmogorov_mean_bound(beta) + report.metadata["distance"]
        assert report.rhs_value == pytest.approx(expected)
        assert report.lhs_estimate > report.metadata["distance"]
        assert report.metadata["method"] == "monte_carlo"
        assert report.passed


class TestDistanceEntries:
    """Test the W1 and Kolmogorov entries on a Gaussian product."""

    def test_explicit_w1(self):
        """Test the explicit right side with A = 0 at n = 100."""
        report = run("THM_1_1_EXPLICIT", ScenarioConfig())

        growth = (math.log(100) * 10) ** (1 / 3)
        assert report.rhs_value == pytest.approx(0.1 * (1 + 6 * growth + 1.2))
        assert report.metadata["A"] == 0.0
        assert 0.0 < report.lhs_estimate < 0.2
        assert report.passed

    def test_explicit_w1_spread_of_shifted_product(self):
        """Test that staircase shifts enter through A = n - 1."""
        report = run("THM_1_1_EXPLICIT", ScenarioConfig(shifts="staircase"), n=10)

        assert report.metadata["A"] == pytest.approx(9.0)

    def test_sandwich(self):
        """Test S/2 <= E W1(F_n, F) <= 2S with S from the order statistics."""
        report = run("EQ_1_4_SANDWICH", ScenarioConfig())

        total = report.metadata["fluctuation"]
        assert report.lower_value == pytest.approx(0.5 * total)
        assert report.rhs_value == pytest.approx(2.0 * total)
        assert report.lower_value < report.lhs_estimate < report.rhs_value
        assert report.passed

    def test_interval_mean(self):
        """Test E|int_a^b (F_n - F)| <= (sigma / sqrt n) sqrt(F(b) - F(a))."""
        report = run("COR_2_4", ScenarioConfig(a=-1.0, b=1.0))

        mass = sps.norm.cdf(1.0) - sps.norm.cdf(-1.0)
        assert report.metadata["mass"] == pytest.approx(mass)
        assert report.rhs_value == pytest.approx(0.1 * math.sqrt(mass))
        assert report.passed

    def test_interval_mean_needs_window(self):
        """Test that COR_2_4 names a missing end."""
        with pytest.raises(MissingScenarioConstantError) as info:
            run("COR_2_4", ScenarioConfig(a=-1.0))

        assert info.value.symbol == "b"

    def test_interval_l1(self):
        """Test E int_a^b |F_n - F| <= e [1 + 3 ((b - a) / e)^(1/3)], e = 0.1."""
        report = run("COR_3_2", ScenarioConfig(a=-1.0, b=1.0))

        assert report.rhs_value == pytest.approx(0.1 * (1 + 3 * 20 ** (1 / 3)))
        assert report.lhs_estimate < report.rhs_value
        assert report.passed

    def test_w1_deviation_is_reported_only(self):
        """Test the calibrated constant and that the entry is not asserted."""
        report = run("PROP_4_2", ScenarioConfig(h=0.2))

        constant = report.metadata["C"]
        shape = (math.log(100) / 100) ** (1 / 3)
        assert not report.asserted
        assert constant > 0.0
        assert report.metadata["threshold"] == pytest.approx(constant * shape + 0.2)
        assert report.rhs_value == pytest.approx(constant * math.exp(-2.0))

    @pytest.mark.parametrize("r", [0.1, 0.2])
    def test_kolmogorov_tail(self, r):
        """Test P{||F_n - F|| >= r} <= (4/r) exp(-(2/27)(r/beta)^3)."""
        report = run("THM_1_2_TAIL", ScenarioConfig(r=r))

        beta = gaussian_beta(100)
        assert report.metadata["beta"] == pytest.approx(beta)
        assert report.rhs_value == pytest.approx(
            4.0 / r * math.exp(-2.0 / 27.0 * (r / beta) ** 3)
        )
        assert 0.0 <= report.lhs_estimate <= 1.0
        assert report.passed

    def test_kolmogorov_mean(self):
        """Test E||F_n - F|| <= 5 beta log^(1/3)(1 + 1/beta)."""
        report = run("THM_1_2_MEAN", ScenarioConfig())

        assert report.rhs_value == pytest.approx(
            kolmogorov_mean_bound(gaussian_beta(100))
        )
        assert 0.0 < report.lhs_estimate < 0.2
        assert report.passed


class TestProductRateEntries:
    """Test the n-sweep regressions on a Gaussian product."""

    SWEEP = [50, 100, 200, 400]

    def test_w1_rate(self):
        """Test that E W1 decays faster than ((log n) / n)^(1/3)."""
        config = ScenarioConfig(n_sweep=self.SWEEP)

        report = run("THM_1_1_RATE", config, n=50, replications=100)

        logs = np.log(self.SWEEP)
        target = np.polyfit(logs, np.log(report.metadata["shapes"]), 1)[0]
        assert report.rhs_value == pytest.approx(target)
        assert report.metadata["n_sweep"] == self.SWEEP
        assert report.lhs_estimate < report.rhs_value
        assert report.passed

    def test_kolmogorov_decay_is_exploratory(self):
        """Test the fitted exponent of E||F_n - F|| against -1/2."""
        config = ScenarioConfig(n_sweep=self.SWEEP)

        report = run("KOLM_DECAY_PROBE", config, n=50, replications=100)

        assert report.kind == "exploratory"
        assert not report.asserted
        assert report.rhs_value == -0.5
        assert report.lhs_estimate == pytest.approx(-0.5, abs=0.1)

    def test_kolmogorov_decay_needs_three_sizes(self):
        """Test that two sweep points cannot be regressed."""
        config = ScenarioConfig(n_sweep=[50, 100])

        with pytest.raises(DegenerateRegressionError):
            run("KOLM_DECAY_PROBE", config, n=50, replications=20)


class TestWignerRateEntries:
    """Test the spectral rate entries on small Gaussian Wigner matrices.

    The sweep is too short for the verdict to be stable, so these tests check
    what the regression is fed rather than whether it passes.
    """

    @staticmethod
    def wigner(**values):
        """Gaussian Wigner scenario with a small pool."""
        return ScenarioConfig(
            kind="wigner",
            n_sweep=[16, 32, 64],
            pool_replications=20,
            pool_max_replications=40,
            **values,
        )

    def test_spectral_kolmogorov(self):
        """Test that E||F_n - G|| against the semicircle shrinks with n."""
        report = run("THM_1_3_KOLM", self.wigner(), n=16, replications=30)

        estimates = report.metadata["estimates"]
        assert report.kind == "rate"
        assert report.asserted
        assert report.metadata["n_sweep"] == [16, 32, 64]
        assert estimates[0] > estimates[-1] > 0.0
        assert report.rhs_value < 0.0

    def test_spectral_w1(self):
        """Test that the shape sigma / n^(2/3) fixes the target at -2/3."""
        report = run("THM_1_3_W1", self.wigner(), n=16, replications=30)

        estimates = report.metadata["estimates"]
        assert report.rhs_value == pytest.approx(-2.0 / 3.0, abs=1e-9)
        assert estimates[0] > estimates[-1] > 0.0

    def test_spectral_kolmogorov_refuses_product(self):
        """Test that the spectral entry needs a Wigner scenario."""
        with pytest.raises(ScenarioError, match="does not apply"):
            run("THM_1_3_KOLM", ScenarioConfig(n_sweep=[16, 32, 64]), n=16)

    @pytest.mark.parametrize("x,region", [(0.0, "bulk"), (2.0, "edge")])
    def test_spectral_point_region(self, x, region):
        """Test that x = 2 is recognized as the spectral edge."""
        report = run("THM_8_2_POINT", self.wigner(x=x), n=16, replications=60)

        assert report.metadata["x"] == x
        assert report.metadata["region"] == region
        assert report.rhs_value < 0.0
        assert all(v >= 0.0 for v in report.metadata["estimates"])

    def test_spectral_point_edge_shape(self):
        """Test that the density term vanishes at the edge."""
        bulk = run("THM_8_2_POINT", self.wigner(x=0.0), n=16, replications=60)
        edge = run("THM_8_2_POINT", self.wigner(x=2.0), n=16, replications=60)

        for inside, outside in zip(bulk.metadata["shapes"], edge.metadata["shapes"]):
            assert inside > outside


class TestStructuralWignerEntries:
    """Test the deterministic matrix inequalities on sampled pairs."""

    def test_hoffman_wielandt(self):
        """Test that the worst eigenvalue-to-entry ratio stays below one."""
        config = ScenarioConfig(kind="wigner")

        report = run("HOFFMAN_WIELANDT", config, n=16, replications=20)

        assert report.metadata["pairs"] == 20
        assert report.rhs_value == 1.0
        assert 0.0 < report.lhs_estimate <= 1.0 + report.tolerance
        assert report.passed

    def test_spectral_lipschitz(self):
        """Test the spectral map ratio against sqrt(2 / n)."""
        config = ScenarioConfig(kind="wigner")

        report = run("SPECTRAL_LIPSCHITZ", config, n=16, replications=20)

        assert report.rhs_value == pytest.approx(math.sqrt(2.0 / 16))
        assert report.metadata["trials"] == 20
        assert report.passed


class TestIntervalCount:
    """Test the eigenvalue or point count in an interval."""

    def test_count_on_matching_reference(self):
        """Test the count tail when G is the coordinate law itself."""
        config = ScenarioConfig(
            reference=LawConfig(law="gaussian"), interval=(-1.0, 1.0), delta=0.1
        )

        report = run("COR_6_5_COUNT", config)

        mass = sps.norm.cdf(1.0) - sps.norm.cdf(-1.0)
        beta = gaussian_beta(100)
        assert report.metadata["expected_count"] == pytest.approx(100 * mass)
        assert report.rhs_value == pytest.approx(
            4.0 * math.exp(-((0.2 / beta) ** 3) / 112.0)
        )
        assert report.asserted
        assert report.passed

    def test_short_interval_is_not_asserted(self):
        """Test that |I| < 4 ||F - G|| / delta keeps the report unasserted."""
        config = ScenarioConfig(
            reference=LawConfig(law="gaussian", params={"mean": 0.1}),
            interval=(-0.5, 0.5),
            delta=0.1,
        )

        report = run("COR_6_5_COUNT", config)

        assert report.metadata["distance"] > 1.0 * 0.1 / 4.0
        assert not report.asserted

    def test_count_needs_nonempty_interval(self):
        """Test that a degenerate interval is refused."""
        config = ScenarioConfig(
            reference=LawConfig(law="gaussian"), interval=(1.0, 1.0), delta=0.1
        )

        with pytest.raises(ScenarioError, match="nonempty interval"):
            run("COR_6_5_COUNT", config)


class TestCoordinateEntries:
    """Test the entries delegating to coordinate-level checks."""

    def test_exp_moment(self):
        """Test the PI exponential and L^p moment bounds on the Gaussian."""
        report = run("EXP_MOMENT", ScenarioConfig(), n=30, seed=5)

        assert report.bound_id == "EXP_MOMENT"
        assert report.n == 30
        assert report.seed == 5
        assert report.rhs_value == 1.0
        assert report.passed

    def test_pi_on_product_function(self):
        """Test Var g <= sigma^2 E|grad g|^2 for g the mean of sin(X_i)."""
        report = run("PI_FUNCTION", ScenarioConfig(), n=20)

        assert report.bound_id == "PI_FUNCTION"
        assert report.n == 20
        assert report.metadata["method"] == "monte_carlo"
        assert report.passed

    def test_infimum_convolution_lsi(self):
        """Test the infimum-convolution form of LSI on the Gaussian coordinate."""
        report = run("INFCONV_LSI", ScenarioConfig(), n=10, seed=3)

        assert report.bound_id == "INFCONV_LSI"
        assert report.seed == 3
        assert report.passed

    def test_infimum_convolution_lsi_needs_lsi_constant(self):
        """Test that a law without LSI is refused."""
        config = ScenarioConfig(law=LawConfig(law="two_sided_exponential"))

        with pytest.raises(MissingScenarioConstantError):
            run("INFCONV_LSI", config, n=10)


class TestStaircaseExample:
    """Test the staircase example on a short sweep."""

    def test_staircase_decays_like_one_over_n(self):
        """Test a fitted slope near -1 and the reported W1 mean."""
        config = ScenarioConfig(
            law=LawConfig(law="uniform", params={"a": 0.0, "b": 1.0}),
            shifts="staircase",
            n_sweep=[8, 16, 32],
        )

        report = run("EX_1", config, n=8, replications=50)

        assert report.rhs_value == -1.0
        assert report.lhs_estimate < -0.9
        assert report.metadata["w1_mean"] > 0.0
        assert report.passed

    def test_staircase_needs_shifts(self):
        """Test that EX_1 refuses an unshifted product."""
        with pytest.raises(ScenarioError, match="staircase"):
            run("EX_1", ScenarioConfig(n_sweep=[8, 16, 32]), n=8)
