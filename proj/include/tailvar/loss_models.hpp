// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form machinery for the two portfolio-loss models: the compound
// Poisson-Gamma aggregate (VaR via a shifted confidence level) and the
// single-loss convolution of (truncated) exponential severities.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <variant>

#include "tailvar/quantile_approx.hpp"

namespace tailvar {

struct PoissonFrequency {
    double mean_events;  // E[N] > 0
};

struct Exponential {
    double lambda;  // rate > 0
};

struct TruncatedExponential {
    double lambda;          // rate > 0
    double gross_exposure;  // L > 0, severities live on (0, L)
};

struct GammaSeverity {
    GammaParams params;
};

using SeveritySpec = std::variant<Exponential, TruncatedExponential, GammaSeverity>;

/// N-fold convolution of i.i.d. exponential-family severities. With
/// heterogeneous rates the convolution collapses onto the smallest rate
/// lambda' = inf{lambda_i}, i.e. the heaviest tail; that is conservative
/// for every quantile computed from it.
struct ConvolutionLoss {
    int n_obligors;
    SeveritySpec severity;
    double lambda_prime;

    static ConvolutionLoss exponential(int n, double lambda) {
        check_counts(n, lambda);
        return {n, Exponential{lambda}, lambda};
    }

    static ConvolutionLoss exponential_rates(std::span<const double> lambdas) {
        const double lp = min_rate(lambdas);
        return {static_cast<int>(lambdas.size()), Exponential{lp}, lp};
    }

    static ConvolutionLoss truncated(int n, double lambda, double gross_exposure) {
        check_counts(n, lambda);
        if (!(gross_exposure > 0.0))
            detail::throw_domain("gross exposure must be positive");
        return {n, TruncatedExponential{lambda, gross_exposure}, lambda};
    }

    static ConvolutionLoss truncated_rates(std::span<const double> lambdas,
                                           double gross_exposure) {
        const double lp = min_rate(lambdas);
        if (!(gross_exposure > 0.0))
            detail::throw_domain("gross exposure must be positive");
        return {static_cast<int>(lambdas.size()), TruncatedExponential{lp, gross_exposure},
                lp};
    }

  private:
    static void check_counts(int n, double lambda) {
        if (n < 1) detail::throw_domain("convolution needs n_obligors >= 1");
        if (!(lambda > 0.0)) detail::throw_domain("severity rate must be positive");
    }
    static double min_rate(std::span<const double> lambdas) {
        if (lambdas.empty()) detail::throw_domain("convolution needs at least one rate");
        double lp = lambdas[0];
        for (double l : lambdas) {
            if (!(l > 0.0)) detail::throw_domain("severity rate must be positive");
            lp = std::min(lp, l);
        }
        return lp;
    }
};

/// Shifted confidence level u = 1 - (1 - kappa) / E[N]: the severity
/// quantile level equivalent to portfolio level kappa under the
/// single-loss approximation of the compound VaR.
inline double shifted_confidence(double kappa, const PoissonFrequency& freq) {
    detail::check_confidence(kappa);
    if (!(freq.mean_events > 0.0)) detail::throw_domain("E[N] must be positive");
    const double u = 1.0 - (1.0 - kappa) / freq.mean_events;
    if (!(u > 0.0))
        detail::throw_domain(
            "shifted confidence u <= 0 (E[N] < 1 - kappa); approximation inapplicable");
    return u;
}

/// VaR of the compound Poisson-Gamma aggregate loss at level kappa,
/// approximated by the severity quantile at the shifted level. Pass
/// use_oracle to invert the Gamma CDF exactly instead, which isolates the
/// quantile-approximation error from the compound approximation.
inline double var_aggregate(double kappa, const PoissonFrequency& freq,
                            const GammaParams& severity, const CorrectionModel& model,
                            bool use_oracle = false) {
    const double u = shifted_confidence(kappa, freq);
    if (use_oracle) return inverse_regularized_p(severity.alpha, u) / severity.beta;
    return gamma_quantile_approx(u, severity, model);
}

namespace detail {

inline const Exponential& as_exponential(const ConvolutionLoss& conv) {
    const auto* sev = std::get_if<Exponential>(&conv.severity);
    if (sev == nullptr) throw_domain("operation requires exponential severities");
    return *sev;
}

inline const TruncatedExponential& as_truncated(const ConvolutionLoss& conv) {
    const auto* sev = std::get_if<TruncatedExponential>(&conv.severity);
    if (sev == nullptr) throw_domain("operation requires truncated exponential severities");
    return *sev;
}

}  // namespace detail

/// Erlang CDF of the N-fold exponential convolution: gamma(N, lambda' x)/(N-1)!,
/// i.e. the Gamma CDF with shape N and rate lambda'.
inline double erlang_cdf(double x, const ConvolutionLoss& conv) {
    detail::as_exponential(conv);
    if (!(x >= 0.0)) detail::throw_domain("loss must be nonnegative");
    return regularized_p(static_cast<double>(conv.n_obligors), conv.lambda_prime * x);
}

/// High-confidence Erlang quantile via the Gamma approximation with
/// alpha = N, beta = lambda'.
inline double erlang_quantile(double kappa, const ConvolutionLoss& conv,
                              const CorrectionModel& model) {
    detail::as_exponential(conv);
    return gamma_quantile_approx(
        kappa, GammaParams{static_cast<double>(conv.n_obligors), conv.lambda_prime}, model);
}

/// Mean of an exponential(lambda) truncated to (0, L):
/// 1/lambda - L / (e^{lambda L} - 1), always below both 1/lambda and L/2.
/// (Algebraically equal to the textbook ratio form with e^{+lambda L}
/// in numerator and denominator, which overflows for large lambda L.)
inline double trunc_exp_mean(double lambda, double gross_exposure) {
    if (!(lambda > 0.0)) detail::throw_domain("rate must be positive");
    if (!(gross_exposure > 0.0)) detail::throw_domain("gross exposure must be positive");
    const double c = lambda * gross_exposure;
    if (c > 745.0) return 1.0 / lambda;  // e^c overflows; truncation mass ~ e^-745
    return 1.0 / lambda - gross_exposure / std::expm1(c);
}

/// Rate lambda' whose truncated-exponential mean on (0, L) equals mu.
/// The mean decreases strictly in lambda from L/2 toward 0, so mu must lie
/// below L/2; solved by bisection to |mean - mu| <= 1e-12 mu.
inline double solve_lambda_from_mean(double mu, double gross_exposure) {
    if (!(mu > 0.0)) detail::throw_domain("target mean must be positive");
    if (!(gross_exposure > 0.0)) detail::throw_domain("gross exposure must be positive");
    if (!(mu < 0.5 * gross_exposure))
        detail::throw_domain(
            "infeasible mean: truncated exponential mean is bounded above by L/2");

    double hi = 1.0 / mu;  // mean(1/mu) < mu since truncation removes tail mass
    double lo = hi;
    int guard = 0;
    do {
        lo /= 2.0;
        if (++guard > 200)
            detail::throw_no_convergence("solve_lambda_from_mean bracket expansion");
    } while (trunc_exp_mean(lo, gross_exposure) <= mu);

    double lambda = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        lambda = 0.5 * (lo + hi);
        const double m = trunc_exp_mean(lambda, gross_exposure);
        if (std::abs(m - mu) <= 1e-12 * mu) return lambda;
        if (m > mu) lo = lambda; else hi = lambda;
    }
    detail::throw_no_convergence("solve_lambda_from_mean bisection");
}

/// CDF form of the N-fold truncated-exponential convolution:
/// (1 - e^{-lambda' L})^{-N} * P(N, lambda' x). This drops the shifted
/// correction terms that activate beyond x = L, so it exceeds 1 for large
/// x; the quantile route compensates through kappa' instead of clamping.
inline double trunc_conv_cdf(double x, const ConvolutionLoss& conv) {
    const auto& sev = detail::as_truncated(conv);
    if (!(x >= 0.0)) detail::throw_domain("loss must be nonnegative");
    const double n = static_cast<double>(conv.n_obligors);
    const double log_norm =
        -n * std::log1p(-std::exp(-conv.lambda_prime * sev.gross_exposure));
    return std::exp(log_norm) * regularized_p(n, conv.lambda_prime * x);
}

/// Confidence level absorbed by the truncation normalization:
/// kappa' = (1 - e^{-lambda' L})^N * kappa < kappa.
inline double kappa_prime(double kappa, const ConvolutionLoss& conv) {
    const auto& sev = detail::as_truncated(conv);
    detail::check_confidence(kappa);
    const double n = static_cast<double>(conv.n_obligors);
    return std::exp(n * std::log1p(-std::exp(-conv.lambda_prime * sev.gross_exposure))) *
           kappa;
}

/// High-confidence quantile of the truncated-exponential convolution:
/// the Gamma approximation evaluated at kappa' with alpha = N,
/// beta = lambda'. Requires C = lambda' L > 9 so that kappa' stays inside
/// the approximation's validated confidence region.
inline double trunc_quantile(double kappa, const ConvolutionLoss& conv,
                             const CorrectionModel& model) {
    const auto& sev = detail::as_truncated(conv);
    const double c = conv.lambda_prime * sev.gross_exposure;
    if (!(c > 9.0))
        detail::throw_domain("validity condition violated: C = lambda' * L = " +
                             std::to_string(c) + " must be greater than 9");
    const double kp = kappa_prime(kappa, conv);
    return gamma_quantile_approx(
        kp, GammaParams{static_cast<double>(conv.n_obligors), conv.lambda_prime}, model);
}

}  // namespace tailvar
