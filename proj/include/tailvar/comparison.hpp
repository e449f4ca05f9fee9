// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// Single-loss vs aggregate-loss quantile comparisons across sweeps of
// portfolio size, severity mean and gross exposure.

#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "tailvar/loss_models.hpp"
#include "tailvar/text_format.hpp"

namespace tailvar {

/// Sweep definition shared by the exponential and truncated comparisons.
///
/// The severity Gamma on the aggregate side has shape alpha_unit and rate
/// beta = alpha_unit / mu, so its mean matches the single-loss severity
/// mean mu = 1/lambda'. alpha_unit = 1 makes the severities exponential.
/// shape_equals_mean instead sets alpha_unit = mu per row (beta = 1),
/// which concentrates the aggregate proxy much more strongly.
struct SweepSpec {
    std::vector<int> n_values;
    std::vector<double> mu_values;
    std::vector<double> l_values;  // truncated sweeps only
    double kappa = 0.995;
    double alpha_unit = 1.0;
    bool shape_equals_mean = false;
    bool en_plus_sqrt = false;  // E[N] = N + sqrt(N) instead of N in the shift

    void validate() const {
        detail::check_confidence(kappa);
        if (n_values.empty() || mu_values.empty())
            detail::throw_domain("sweep needs nonempty N and mu lists");
        for (int n : n_values)
            if (n < 1) detail::throw_domain("sweep N values must be >= 1");
        for (double m : mu_values)
            if (!(m > 0.0)) detail::throw_domain("sweep mu values must be positive");
        for (double l : l_values)
            if (!(l > 0.0)) detail::throw_domain("sweep L values must be positive");
        if (!shape_equals_mean && !(alpha_unit > 0.0))
            detail::throw_domain("alpha_unit must be positive");
    }

    double shape_for(double mu) const { return shape_equals_mean ? mu : alpha_unit; }

    double mean_events(int n) const {
        const double nd = static_cast<double>(n);
        return en_plus_sqrt ? nd + std::sqrt(nd) : nd;
    }
};

struct ComparisonRow {
    int n_obligors;
    double mu;
    std::optional<double> gross_exposure;
    double kappa;
    double kappa_effective;  // kappa (exponential) or kappa' (truncated)
    double u;                // shifted confidence of the aggregate side
    double q_single;
    double q_aggregate;
    double diff_abs;  // q_single - q_aggregate
    double diff_rel;  // diff_abs / q_single
    bool warn;        // some evaluation left the model's fitted region
};

/// Aggregate-side shape: alpha' = (N + sqrt(N)) * alpha, the Poisson mean
/// inflated by one standard deviation before scaling the severity shape.
inline double alpha_prime(int n_obligors, double alpha_unit) {
    if (n_obligors < 1) detail::throw_domain("alpha_prime requires N >= 1");
    if (!(alpha_unit > 0.0)) detail::throw_domain("alpha_prime requires alpha > 0");
    const double n = static_cast<double>(n_obligors);
    return (n + std::sqrt(n)) * alpha_unit;
}

namespace detail {

struct AggregateSide {
    double u;
    double q;
    bool warn;
};

inline AggregateSide aggregate_quantile(int n, double mu, const SweepSpec& spec,
                                        const CorrectionModel& model) {
    const double shape = spec.shape_for(mu);
    const double ap = alpha_prime(n, shape);
    const GammaParams agg{ap, shape / mu};
    const double u = shifted_confidence(spec.kappa, PoissonFrequency{spec.mean_events(n)});
    return {u, gamma_quantile_approx(u, agg, model), !model.in_range(u, ap)};
}

}  // namespace detail

/// Exponential-severity sweep: for each (N, mu), the Erlang quantile at
/// kappa against the aggregate quantile at the shifted level u.
inline std::vector<ComparisonRow> compare_exponential(const SweepSpec& spec,
                                                      const CorrectionModel& model) {
    spec.validate();
    std::vector<ComparisonRow> rows;
    rows.reserve(spec.n_values.size() * spec.mu_values.size());
    for (int n : spec.n_values) {
        for (double mu : spec.mu_values) {
            const auto conv = ConvolutionLoss::exponential(n, 1.0 / mu);
            const double q_single = erlang_quantile(spec.kappa, conv, model);
            const auto agg = detail::aggregate_quantile(n, mu, spec, model);
            const bool warn =
                agg.warn || !model.in_range(spec.kappa, static_cast<double>(n));
            const double d = q_single - agg.q;
            rows.push_back({n, mu, std::nullopt, spec.kappa, spec.kappa, agg.u, q_single,
                            agg.q, d, d / q_single, warn});
        }
    }
    return rows;
}

/// Truncated-severity sweep: lambda' solved from the mean-matching
/// condition, single-loss quantile taken at kappa' = (1-e^{-lambda'L})^N kappa.
inline std::vector<ComparisonRow> compare_truncated(const SweepSpec& spec,
                                                    const CorrectionModel& model) {
    spec.validate();
    if (spec.l_values.empty())
        detail::throw_domain("truncated sweep needs gross exposure values");
    std::vector<ComparisonRow> rows;
    rows.reserve(spec.n_values.size() * spec.mu_values.size() * spec.l_values.size());
    for (int n : spec.n_values) {
        for (double mu : spec.mu_values) {
            for (double l : spec.l_values) {
                const double lambda = solve_lambda_from_mean(mu, l);
                const auto conv = ConvolutionLoss::truncated(n, lambda, l);
                const double kp = kappa_prime(spec.kappa, conv);
                const double q_single = trunc_quantile(spec.kappa, conv, model);
                const auto agg = detail::aggregate_quantile(n, mu, spec, model);
                const bool warn = agg.warn || !model.in_range(kp, static_cast<double>(n));
                const double d = q_single - agg.q;
                rows.push_back({n, mu, l, spec.kappa, kp, agg.u, q_single, agg.q, d,
                                d / q_single, warn});
            }
        }
    }
    return rows;
}

struct KappaCurvePoint {
    double c;
    int n_obligors;
    double kappa_prime;
};

/// kappa' as a function of the gross-exposure multiple C = lambda' L and N:
/// kappa' = (1 - e^{-C})^N * kappa. N = 0 is the empty product, kappa itself.
inline std::vector<KappaCurvePoint> kappa_prime_curve(std::span<const double> c_values,
                                                      std::span<const int> n_values,
                                                      double kappa) {
    detail::check_confidence(kappa);
    std::vector<KappaCurvePoint> out;
    out.reserve(c_values.size() * n_values.size());
    for (double c : c_values) {
        if (!(c > 0.0)) detail::throw_domain("kappa curve requires C > 0");
        for (int n : n_values) {
            if (n < 0) detail::throw_domain("kappa curve requires N >= 0");
            const double kp = std::exp(n * std::log1p(-std::exp(-c))) * kappa;
            out.push_back({c, n, kp});
        }
    }
    return out;
}

inline constexpr const char* kComparisonCsvHeader =
    "N,mu,L,kappa,kappa_eff,u,q_single,q_aggregate,diff_abs,diff_rel,warn";

inline void write_csv(std::ostream& os, std::span<const ComparisonRow> rows) {
    os << kComparisonCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.n_obligors << ',' << format_number(r.mu) << ',';
        if (r.gross_exposure) os << format_number(*r.gross_exposure);
        os << ',' << format_number(r.kappa) << ',' << format_number(r.kappa_effective)
           << ',' << format_number(r.u) << ',' << format_number(r.q_single) << ','
           << format_number(r.q_aggregate) << ',' << format_number(r.diff_abs) << ','
           << format_number(r.diff_rel) << ',' << (r.warn ? 1 : 0) << '\n';
    }
}

inline void write_csv(std::ostream& os, std::span<const KappaCurvePoint> points) {
    os << "C,N,kappa_prime\n";
    for (const auto& p : points)
        os << format_number(p.c) << ',' << p.n_obligors << ','
           << format_number(p.kappa_prime) << '\n';
}

}  // namespace tailvar
