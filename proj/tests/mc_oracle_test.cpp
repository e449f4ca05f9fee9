// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0

#include "tailvar/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracle_utils.hpp"

namespace tailvar {
namespace {

SimulationSpec erlang_spec(std::uint64_t paths, std::uint64_t seed) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 500;
    spec.severity = Exponential{0.002};
    spec.n_paths = paths;
    spec.seed = seed;
    return spec;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

TEST(SimulateLosses, SeedDeterminism) {
    const auto spec = erlang_spec(2000, 42);
    const auto a = simulate_losses(spec);
    const auto b = simulate_losses(spec);
    ASSERT_EQ(a, b);
    auto other = spec;
    other.seed = 43;
    EXPECT_NE(simulate_losses(other), a);
}

TEST(SimulateLosses, WorkerCountInvariance) {
    const auto spec = erlang_spec(5000, 7);
    const auto serial = simulate_losses(spec, 1);
    const auto threaded = simulate_losses(spec, 4);
    const auto threaded7 = simulate_losses(spec, 7);
    ASSERT_EQ(serial, threaded);
    ASSERT_EQ(serial, threaded7);
}

TEST(SimulateLosses, PathLossIsThePerPathFunction) {
    const auto spec = erlang_spec(100, 99);
    const auto losses = simulate_losses(spec);
    for (std::uint64_t i = 0; i < spec.n_paths; i += 13)
        ASSERT_EQ(losses[i], path_loss(spec, i));
}

TEST(SimulateLosses, ExponentialBaselineMean) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 1;
    spec.severity = Exponential{2.0};
    spec.n_paths = 100000;
    spec.seed = 1;
    const auto losses = simulate_losses(spec, 4);
    // E = 1/2, SE = (1/2)/sqrt(n)
    EXPECT_NEAR(mean_of(losses), 0.5, 3.0 * 0.5 / std::sqrt(1e5));
}

TEST(SimulateLosses, TruncatedSupportBound) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 20;
    spec.severity = TruncatedExponential{1.0, 3.0};
    spec.n_paths = 5000;
    spec.seed = 5;
    const auto losses = simulate_losses(spec, 2);
    for (double loss : losses) ASSERT_LT(loss, 20 * 3.0);
}

TEST(PathRng, TruncatedDrawsFollowTheInverseCdf) {
    PathRng draws(123, 0);
    PathRng uniforms(123, 0);
    const double lambda = 0.7;
    const double l = 4.0;
    for (int i = 0; i < 1000; ++i) {
        const double s = draws.next_truncated_exponential(lambda, l);
        const double u = uniforms.next_unit();
        const double expected = -std::log1p(-u * (1.0 - std::exp(-lambda * l))) / lambda;
        ASSERT_DOUBLE_EQ(s, expected);
        ASSERT_LT(s, l);
        ASSERT_GE(s, 0.0);
    }
}

TEST(SimulateLosses, CompoundWaldMean) {
    SimulationSpec spec;
    spec.mode = SimulationMode::compound;
    spec.mean_events = 500.0;
    spec.severity = GammaSeverity{{1.0, 1.0 / 500.0}};
    spec.n_paths = 20000;
    spec.seed = 11;
    const auto losses = simulate_losses(spec, 4);
    // E[L] = E[N] alpha/beta = 250000; per-path sd = sqrt(E[N] * 2 mu^2)
    const double se = std::sqrt(500.0 * 2.0 * 500.0 * 500.0 / 20000.0);
    EXPECT_NEAR(mean_of(losses), 250000.0, 3.0 * se);
}

TEST(SimulateLosses, GammaSeverityMoments) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 1;
    spec.severity = GammaSeverity{{3.0, 2.0}};
    spec.n_paths = 200000;
    spec.seed = 17;
    const auto losses = simulate_losses(spec, 4);
    const double m = mean_of(losses);
    EXPECT_NEAR(m, 1.5, 3.0 * std::sqrt(3.0 / 4.0 / 2e5));
    double var = 0.0;
    for (double x : losses) var += (x - m) * (x - m);
    var /= static_cast<double>(losses.size() - 1);
    EXPECT_NEAR(var, 0.75, 0.02);
}

TEST(SimulateLosses, PartialDefaultProbabilityScalesTheMean) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 50;
    spec.severity = Exponential{1.0};
    spec.default_prob = 0.5;
    spec.n_paths = 50000;
    spec.seed = 23;
    const auto losses = simulate_losses(spec, 4);
    // E = N p mu = 25; var = N p (2 - p) mu^2
    const double se = std::sqrt(50.0 * 0.5 * 1.5 / 5e4);
    EXPECT_NEAR(mean_of(losses), 25.0, 3.0 * se);
}

TEST(SimulationSpec, Validation) {
    SimulationSpec spec;
    spec.n_paths = 0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec.n_paths = 10;
    spec.default_prob = 0.0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec.default_prob = 1.5;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec.default_prob = 1.0;
    spec.n_obligors = 0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec.n_obligors = 5;
    spec.mode = SimulationMode::compound;
    spec.mean_events = 0.0;
    EXPECT_THROW(spec.validate(), std::domain_error);
}

TEST(EmpiricalQuantile, NearestRankOnIntegers) {
    std::vector<double> samples(100000);
    std::iota(samples.begin(), samples.end(), 1.0);  // 1..100000
    const auto est = empirical_quantile(samples, 0.995);
    EXPECT_DOUBLE_EQ(est.point, 99500.0);  // ceil(n kappa)-th order statistic
    EXPECT_LE(est.ci_low, est.point);
    EXPECT_GE(est.ci_high, est.point);
    EXPECT_GT(est.ci_low, 99000.0);
    EXPECT_LT(est.ci_high, 99900.0);
}

TEST(EmpiricalQuantile, RejectsThinTails) {
    std::vector<double> samples(1100, 1.0);
    EXPECT_THROW(empirical_quantile(samples, 0.995), std::invalid_argument);
    EXPECT_NO_THROW(empirical_quantile(samples, 0.9));
}

TEST(EmpiricalQuantile, ExponentialQuantileWithinCi) {
    SimulationSpec spec;
    spec.mode = SimulationMode::single_loss;
    spec.n_obligors = 1;
    spec.severity = Exponential{1.0};
    spec.n_paths = 200000;
    spec.seed = 31;
    const auto est = empirical_quantile(simulate_losses(spec, 4), 0.995, spec.seed);
    const double exact = 5.2983173665480363;  // -ln(0.005)
    EXPECT_NEAR(est.point, exact, 0.12);
    EXPECT_LE(est.ci_low, exact);
    EXPECT_GE(est.ci_high, exact);
    EXPECT_EQ(est.n_paths, 200000u);
    EXPECT_EQ(est.seed, 31u);
}

TEST(EmpiricalQuantile, ErlangPortfolioBracketsOracle) {
    const auto losses = simulate_losses(erlang_spec(200000, 20260810), 4);
    const auto est = empirical_quantile(losses, 0.995);
    const double oracle = 279737.0165807979;  // inverse_regularized_p(500, 0.995) / 0.002
    EXPECT_LE(est.ci_low, oracle);
    EXPECT_GE(est.ci_high, oracle);
    EXPECT_NEAR(est.point / oracle, 1.0, 5e-3);
}

}  // namespace
}  // namespace tailvar
