// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo ground truth for the loss models. Every path owns a
// counter-based generator stream derived from (seed, path index), so the
// sample vector is identical for any worker count.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tailvar/loss_models.hpp"

namespace tailvar {

enum class SimulationMode { single_loss, compound };

struct SimulationSpec {
    SimulationMode mode = SimulationMode::single_loss;
    int n_obligors = 1;          // single_loss mode
    double mean_events = 1.0;    // compound mode: Poisson mean
    SeveritySpec severity = Exponential{1.0};
    double default_prob = 1.0;   // Bernoulli default indicator, (0, 1]
    std::uint64_t n_paths = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_paths < 1) detail::throw_domain("simulation needs n_paths >= 1");
        if (!(default_prob > 0.0 && default_prob <= 1.0))
            detail::throw_domain("default probability must lie in (0, 1]");
        if (mode == SimulationMode::single_loss && n_obligors < 1)
            detail::throw_domain("single-loss simulation needs n_obligors >= 1");
        if (mode == SimulationMode::compound && !(mean_events > 0.0))
            detail::throw_domain("compound simulation needs a positive Poisson mean");
    }
};

struct QuantileEstimate {
    double point;
    double ci_low;   // distribution-free 95% bounds from binomial rank counts
    double ci_high;
    std::uint64_t n_paths;
    std::uint64_t seed;
};

/// splitmix64 stream keyed by (seed, path). Distinct paths get decorrelated
/// streams through the golden-gamma increment and finalizer.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path)
        : state_(scramble(seed + path * 0x9E3779B97F4A7C15ULL)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in (0, 1]; safe to feed into log
    double next_unit_positive() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double next_exponential(double lambda) {
        return -std::log(next_unit_positive()) / lambda;
    }

    /// inverse-CDF draw from exponential(lambda) truncated to (0, L);
    /// every draw is strictly below L
    double next_truncated_exponential(double lambda, double gross_exposure) {
        const double mass = -std::expm1(-lambda * gross_exposure);
        return -std::log1p(-next_unit() * mass) / lambda;
    }

    double next_normal() {
        const double r = std::sqrt(-2.0 * std::log(next_unit_positive()));
        return r * std::cos(2.0 * M_PI * next_unit());
    }

    /// Marsaglia-Tsang squeeze for shape >= 1, boosted below 1.
    double next_gamma(double alpha, double beta) {
        if (alpha < 1.0) {
            const double boost = std::pow(next_unit_positive(), 1.0 / alpha);
            return next_gamma(alpha + 1.0, beta) * boost;
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_unit_positive();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / beta;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / beta;
        }
    }

    /// exact Poisson count: exponential arrivals accumulated up to the mean
    std::uint64_t next_poisson(double mean) {
        std::uint64_t k = 0;
        double t = next_exponential(1.0);
        while (t < mean) {
            ++k;
            t += next_exponential(1.0);
        }
        return k;
    }

  private:
    static std::uint64_t scramble(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

namespace detail {

inline double draw_severity(const SeveritySpec& severity, PathRng& rng) {
    return std::visit(
        [&](const auto& sev) -> double {
            using T = std::decay_t<decltype(sev)>;
            if constexpr (std::is_same_v<T, Exponential>)
                return rng.next_exponential(sev.lambda);
            else if constexpr (std::is_same_v<T, TruncatedExponential>)
                return rng.next_truncated_exponential(sev.lambda, sev.gross_exposure);
            else
                return rng.next_gamma(sev.params.alpha, sev.params.beta);
        },
        severity);
}

}  // namespace detail

/// Loss of one path, a pure function of (spec, path index).
inline double path_loss(const SimulationSpec& spec, std::uint64_t path) {
    PathRng rng(spec.seed, path);
    double loss = 0.0;
    if (spec.mode == SimulationMode::single_loss) {
        for (int i = 0; i < spec.n_obligors; ++i) {
            const bool defaulted =
                spec.default_prob >= 1.0 || rng.next_unit() < spec.default_prob;
            // draw the severity regardless so the stream layout does not
            // depend on default outcomes
            const double severity = detail::draw_severity(spec.severity, rng);
            if (defaulted) loss += severity;
        }
    } else {
        const std::uint64_t events = rng.next_poisson(spec.mean_events);
        for (std::uint64_t i = 0; i < events; ++i)
            loss += detail::draw_severity(spec.severity, rng);
    }
    return loss;
}

/// All path losses in path order. Identical output for every n_threads.
inline std::vector<double> simulate_losses(const SimulationSpec& spec,
                                           unsigned n_threads = 1) {
    spec.validate();
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<double> losses(spec.n_paths);
    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) losses[i] = path_loss(spec, i);
    };
    if (n_threads <= 1 || spec.n_paths < 2 * n_threads) {
        run_range(0, spec.n_paths);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (spec.n_paths + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min<std::uint64_t>(spec.n_paths, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return losses;
}

/// Nearest-rank empirical quantile (ceiling convention) with a
/// distribution-free 95% confidence interval from the binomial counts of
/// samples below the quantile. Requires at least 100/(1-kappa) samples.
inline QuantileEstimate empirical_quantile(std::vector<double> samples, double kappa,
                                           std::uint64_t seed = 0) {
    detail::check_confidence(kappa);
    const std::uint64_t n = samples.size();
    if (static_cast<double>(n) < 100.0 / (1.0 - kappa))
        throw std::invalid_argument(
            "tailvar: insufficient samples for the requested confidence level");

    const auto rank_stat = [&](std::uint64_t rank) {  // 1-based rank
        auto nth = samples.begin() + static_cast<std::ptrdiff_t>(rank - 1);
        std::nth_element(samples.begin(), nth, samples.end());
        return *nth;
    };

    const double m = static_cast<double>(n) * kappa;
    const std::uint64_t k =
        std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::ceil(m)));
    const double half_width = 1.959963985 * std::sqrt(m * (1.0 - kappa));
    const std::uint64_t lo_rank = static_cast<std::uint64_t>(
        std::max(1.0, std::floor(m - half_width)));
    const std::uint64_t hi_rank = std::min<std::uint64_t>(
        n, static_cast<std::uint64_t>(std::ceil(m + half_width)));

    QuantileEstimate est;
    est.ci_low = rank_stat(lo_rank);
    est.point = rank_stat(std::max(k, std::uint64_t{1}));
    est.ci_high = rank_stat(hi_rank);
    est.n_paths = n;
    est.seed = seed;
    return est;
}

}  // namespace tailvar
