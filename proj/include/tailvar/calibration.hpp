// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// Re-derivation of the correction-factor model from scratch: for every
// (u, alpha) grid cell find the p maximizing the quantile approximation,
// fit p ~ a log(b alpha) per confidence level, then fit polynomials a(u)
// and b(u) across confidence levels.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "tailvar/correction_model.hpp"
#include "tailvar/quantile_approx.hpp"

namespace tailvar {

struct CalibrationGrid {
    std::vector<double> alphas;  // strictly increasing, within [1, 100] by default
    std::vector<double> us;      // strictly increasing confidences
    double p_min = 0.05;
    double p_max = 1.5;
    double p_step = 0.005;

    static CalibrationGrid defaults() {
        CalibrationGrid g;
        g.alphas.reserve(100);
        for (int a = 1; a <= 100; ++a) g.alphas.push_back(static_cast<double>(a));
        g.us.reserve(100);
        for (int i = 0; i < 100; ++i) g.us.push_back(0.9 + 0.001 * i);
        g.us.back() = 0.999;
        return g;
    }

    void validate() const {
        if (alphas.empty() || us.empty())
            throw std::invalid_argument("tailvar: calibration grids must be nonempty");
        if (!std::is_sorted(alphas.begin(), alphas.end()) ||
            std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end())
            throw std::invalid_argument("tailvar: alpha grid must be strictly increasing");
        if (!std::is_sorted(us.begin(), us.end()) ||
            std::adjacent_find(us.begin(), us.end()) != us.end())
            throw std::invalid_argument("tailvar: u grid must be strictly increasing");
        if (!(p_step > 0.0) || !(p_min > 0.0) || !(p_max > p_min))
            throw std::invalid_argument("tailvar: require 0 < p_min < p_max and p_step > 0");
    }
};

/// Result of one maximization of the quantile over the correction factor.
struct OptimalP {
    double p;
    bool at_boundary;  // maximizer pinned at p_min or p_max
};

/// Per-confidence-level log fit p(alpha) = a * log(b * alpha).
struct LogFit {
    double u;
    double a;
    double b;
    double residual;  // sum of squared residuals of the fit
};

struct CalibrationCell {
    double u;
    double alpha;
    double p_star;
    bool at_boundary;
};

struct CalibrationResult {
    std::vector<CalibrationCell> cells;  // grid order: u-major, then alpha
    std::vector<LogFit> fits;
    CorrectionModel model;
};

namespace detail {

// Golden-section maximization on [lo, hi], assuming unimodality there.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// The p in [grid.p_min, grid.p_max] maximizing the quantile approximation
/// at (u, alpha, beta). Grid scan locates the bracket, golden-section
/// refines to 1e-6 absolute in p; ties break toward smaller p.
inline OptimalP optimal_p(double u, double alpha, double beta, const CalibrationGrid& grid) {
    grid.validate();
    const GammaParams params{alpha, beta};
    const auto q_of = [&](double p) { return gamma_quantile_with_p(u, params, p); };

    double best_p = grid.p_min;
    double best_q = q_of(grid.p_min);
    std::size_t best_idx = 0;
    std::size_t n = 0;
    for (double p = grid.p_min;; p += grid.p_step, ++n) {
        if (p > grid.p_max) break;
        const double q = q_of(p);
        if (q > best_q) {
            best_q = q;
            best_p = p;
            best_idx = n;
        }
    }
    const double lo = std::max(grid.p_min, best_p - grid.p_step);
    const double hi = std::min(grid.p_max, best_p + grid.p_step);
    const double p_star = detail::golden_section_max(q_of, lo, hi, 1e-6);
    const bool at_boundary = (best_idx == 0 && p_star <= grid.p_min + 2e-6) ||
                             (p_star >= grid.p_max - 2e-6);
    return {p_star, at_boundary};
}

/// Least-squares fit of p = a * log(b * alpha): ordinary linear regression
/// of p on log(alpha), slope a and intercept a*log(b). Needs two or more
/// distinct alphas; two points interpolate exactly.
inline LogFit fit_log_model(std::span<const double> alphas, std::span<const double> p_stars) {
    if (alphas.size() != p_stars.size())
        throw std::invalid_argument("tailvar: fit_log_model size mismatch");
    const std::size_t n = alphas.size();
    if (n < 2) throw std::invalid_argument("tailvar: fit_log_model needs >= 2 points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(alphas[i]);
        sx += x;
        sy += p_stars[i];
        sxx += x * x;
        sxy += x * p_stars[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * (n * sxx + sx * sx + 1.0))
        throw std::invalid_argument("tailvar: fit_log_model degenerate design (equal alphas)");
    const double a = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - a * sx) / n;
    if (a == 0.0)
        throw std::runtime_error("tailvar: fit_log_model slope is zero, b undefined");
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = p_stars[i] - (a * std::log(alphas[i]) + intercept);
        rss += r * r;
    }
    return {0.0, a, std::exp(intercept / a), rss};
}

/// Least-squares polynomial fits a(u) (degree 6) and b(u) (degree 7) over
/// the per-u log fits. Monomials on a narrow interval near 1 are severely
/// ill-conditioned, so the solve runs in the shifted/scaled variable
/// s = (u - mid)/half and the coefficients are expanded back to monomials
/// afterwards, which is what the CorrectionModel schema stores.
inline CorrectionModel fit_polynomials(std::span<const LogFit> fits) {
    const std::size_t n = fits.size();
    if (n < 8)
        throw std::invalid_argument(
            "tailvar: fit_polynomials needs >= 8 confidence levels for the degree-7 fit");

    double u_lo = fits[0].u, u_hi = fits[0].u;
    for (const auto& f : fits) {
        u_lo = std::min(u_lo, f.u);
        u_hi = std::max(u_hi, f.u);
    }
    if (!(u_hi > u_lo))
        throw std::invalid_argument("tailvar: fit_polynomials needs distinct u values");
    const double mid = 0.5 * (u_lo + u_hi);
    const double half = 0.5 * (u_hi - u_lo);

    const auto solve = [&](int degree, auto&& value_of) {
        Eigen::MatrixXd design(n, degree + 1);
        Eigen::VectorXd rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = (fits[i].u - mid) / half;
            double pw = 1.0;
            for (int j = 0; j <= degree; ++j) {
                design(static_cast<Eigen::Index>(i), j) = pw;
                pw *= s;
            }
            rhs(static_cast<Eigen::Index>(i)) = value_of(fits[i]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        if (qr.rank() < degree + 1)
            throw std::runtime_error(
                "tailvar: fit_polynomials rank-deficient design; widen or refine the u grid");
        Eigen::VectorXd scaled = qr.solve(rhs);

        // expand sum_k ch_k ((u - mid)/half)^k into monomials in u;
        // long double keeps the binomial cancellation harmless
        std::vector<double> mono(static_cast<std::size_t>(degree) + 1, 0.0);
        std::vector<long double> acc(static_cast<std::size_t>(degree) + 1, 0.0L);
        for (int k = 0; k <= degree; ++k) {
            long double factor = static_cast<long double>(scaled(k));
            for (int i = 0; i < k; ++i) factor /= static_cast<long double>(half);
            // binomial expansion of (u - mid)^k
            long double binom = 1.0L;
            for (int j = k; j >= 0; --j) {
                long double term = factor * binom;
                for (int i = 0; i < k - j; ++i) term *= static_cast<long double>(-mid);
                acc[static_cast<std::size_t>(j)] += term;
                binom = binom * j / static_cast<long double>(k - j + 1);
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i) mono[i] = static_cast<double>(acc[i]);
        return mono;
    };

    const auto c = solve(6, [](const LogFit& f) { return f.a; });
    const auto d = solve(7, [](const LogFit& f) { return f.b; });

    CorrectionModel model;
    std::copy(c.begin(), c.end(), model.c.begin());
    std::copy(d.begin(), d.end(), model.d.begin());
    model.u_range = {u_lo, u_hi};
    return model;
}

/// Full pipeline: grid sweep of optimal p, per-u log fits, polynomial fits.
/// Cells are computed in parallel and gathered in grid order, so the result
/// is identical for any thread count.
inline CalibrationResult calibrate(const CalibrationGrid& grid, unsigned n_threads = 0) {
    grid.validate();
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t n_cells = grid.us.size() * grid.alphas.size();
    std::vector<CalibrationCell> cells(n_cells);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const double u = grid.us[idx / grid.alphas.size()];
            const double alpha = grid.alphas[idx % grid.alphas.size()];
            const OptimalP opt = optimal_p(u, alpha, 1.0, grid);
            cells[idx] = {u, alpha, opt.p, opt.at_boundary};
        }
    };
    if (n_threads <= 1 || n_cells < 2 * n_threads) {
        run_range(0, n_cells);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_cells + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n_cells, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    CalibrationResult result;
    result.cells = std::move(cells);
    result.fits.reserve(grid.us.size());
    std::vector<double> p_row(grid.alphas.size());
    for (std::size_t iu = 0; iu < grid.us.size(); ++iu) {
        for (std::size_t ia = 0; ia < grid.alphas.size(); ++ia)
            p_row[ia] = result.cells[iu * grid.alphas.size() + ia].p_star;
        LogFit fit = fit_log_model(grid.alphas, p_row);
        fit.u = grid.us[iu];
        result.fits.push_back(fit);
    }
    result.model = fit_polynomials(result.fits);
    result.model.alpha_range = {grid.alphas.front(), grid.alphas.back()};
    return result;
}

}  // namespace tailvar
