// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form approximation of the Gamma quantile at high confidence
// levels. The CDF tail is replaced by its tangent at an evaluation point
// x_bar = mean + shift, where the shift is steered by a calibrated
// correction factor p(u, alpha); inverting the tangent gives the quantile.

#pragma once

#include <cmath>

#include "tailvar/correction_model.hpp"
#include "tailvar/special_functions.hpp"

namespace tailvar {

/// Shape/rate pair of a Gamma distribution.
struct GammaParams {
    double alpha;  // shape, > 0
    double beta;   // rate, > 0

    double mean() const { return alpha / beta; }
};

/// Tangent line to the Gamma CDF at x_bar: F(x) ~ slope * x + y_intercept.
struct TailLinearization {
    double x_bar;
    double slope;
    double y_intercept;
};

namespace detail {

inline void check_params(const GammaParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw_domain("GammaParams requires alpha > 0 and beta > 0");
}

inline void check_confidence(double u) {
    if (!(u > 0.0 && u < 1.0)) throw_domain("confidence level must lie in (0,1)");
}

}  // namespace detail

/// Correction factor p = a(u) * log(b(u) * alpha). Outside the model's
/// fitted (u, alpha) region this is an extrapolation; use
/// model.in_range(u, alpha) to detect that case.
inline double correction_factor(double u, double alpha, const CorrectionModel& model) {
    detail::check_confidence(u);
    if (!(alpha > 0.0)) detail::throw_domain("correction_factor requires alpha > 0");
    return model.a_of(u) * std::log(model.b_of(u) * alpha);
}

/// Quantile approximation with an explicitly supplied correction factor,
/// bypassing the polynomial model. This is the objective the calibration
/// sweep maximizes over p.
///
/// x_bar = mu * (1 + P(alpha, alpha) / (p * (1 + e^-alpha alpha^alpha / Gamma(alpha))))
/// q     = x_bar + x_bar * e^t * t^-alpha * Gamma(alpha) * (u - P(alpha, t)),  t = beta * x_bar
///
/// All Gamma-scale factors combine in log space; the bracket
/// u*Gamma - gamma(alpha, t) is formed as Gamma * (u - P) so two nearly
/// equal large terms never cancel.
inline double gamma_quantile_with_p(double u, const GammaParams& params, double p) {
    detail::check_confidence(u);
    detail::check_params(params);
    if (!(p > 0.0)) detail::throw_domain("correction factor must be positive");

    const double a = params.alpha;
    const double lg = ln_gamma(a);
    // e^-a a^a / Gamma(a), the mass-at-the-mean scale of the shift term
    const double r = std::exp(a * std::log(a) - a - lg);
    const double x_bar = params.mean() * (1.0 + regularized_p(a, a) / (p * (1.0 + r)));
    const double t = params.beta * x_bar;
    const double log_factor = t - a * std::log(t) + lg;
    const double deficit = u - regularized_p(a, t);
    if (deficit == 0.0) return x_bar;
    if (log_factor > 700.0) {
        // assemble through logs when e^log_factor alone would overflow
        const double mag = std::exp(log_factor + std::log(std::abs(deficit)));
        return x_bar + x_bar * std::copysign(mag, deficit);
    }
    return x_bar + x_bar * std::exp(log_factor) * deficit;
}

/// Evaluation point x_bar = mean + shift at which the tail tangent is taken.
inline double evaluation_point(double u, const GammaParams& params,
                               const CorrectionModel& model) {
    detail::check_confidence(u);
    detail::check_params(params);
    const double a = params.alpha;
    const double p = correction_factor(u, a, model);
    if (!(p > 0.0)) detail::throw_domain("correction factor must be positive");
    const double r = std::exp(a * std::log(a) - a - ln_gamma(a));
    return params.mean() * (1.0 + regularized_p(a, a) / (p * (1.0 + r)));
}

/// Tangent line to F(x; alpha, beta) at the evaluation point.
inline TailLinearization tail_linearization(double u, const GammaParams& params,
                                            const CorrectionModel& model) {
    const double x_bar = evaluation_point(u, params, model);
    const double a = params.alpha;
    const double t = params.beta * x_bar;
    const double slope =
        params.beta * std::exp(-t + (a - 1.0) * std::log(t) - ln_gamma(a));
    const double y_intercept = regularized_p(a, t) - x_bar * slope;
    return {x_bar, slope, y_intercept};
}

/// Approximate Gamma quantile at confidence u. Algebraically equal to
/// (u - y_intercept) / slope of tail_linearization. Accuracy is validated
/// for u in [0.9, 0.999]; elsewhere the correction model extrapolates.
inline double gamma_quantile_approx(double u, const GammaParams& params,
                                    const CorrectionModel& model) {
    return gamma_quantile_with_p(u, params, correction_factor(u, params.alpha, model));
}

/// Signed relative error of the approximation against the root-finding
/// oracle: (q_approx - q_exact) / q_exact.
inline double relative_error(double u, const GammaParams& params,
                             const CorrectionModel& model) {
    const double q_approx = gamma_quantile_approx(u, params, model);
    const double q_exact = inverse_regularized_p(params.alpha, u) / params.beta;
    return (q_approx - q_exact) / q_exact;
}

}  // namespace tailvar
