// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tailvar {

/// Correction-factor model p(u, alpha) = a(u) * log(b(u) * alpha), with
/// a(u) and b(u) stored as monomial-basis polynomials of degree 6 and 7.
///
/// The coefficient magnitudes (~1e6 and ~1e11, alternating signs) are an
/// artifact of the monomial representation on the narrow interval
/// [0.9, 0.999]; evaluation in double precision is fine, but coefficients
/// rounded to a few significant figures are useless. Ship full precision.
struct CorrectionModel {
    std::array<double, 7> c{};               // a(u) = sum c_i u^i
    std::array<double, 8> d{};               // b(u) = sum d_i u^i
    std::array<double, 2> alpha_range{1.0, 100.0};
    std::array<double, 2> u_range{0.9, 0.999};

    double a_of(double u) const {
        double r = 0.0;
        for (int i = 6; i >= 0; --i) r = r * u + c[static_cast<std::size_t>(i)];
        return r;
    }

    double b_of(double u) const {
        double r = 0.0;
        for (int i = 7; i >= 0; --i) r = r * u + d[static_cast<std::size_t>(i)];
        return r;
    }

    /// True when (u, alpha) lies inside the model's fitted region. Outside
    /// it the model extrapolates; callers surface this as a warning, not an
    /// error.
    bool in_range(double u, double alpha) const {
        return u >= u_range[0] && u <= u_range[1] && alpha >= alpha_range[0] &&
               alpha <= alpha_range[1];
    }

    /// Degenerate model with constant a(u) = a and b(u) = b. Handy for
    /// pinning a single fitted (a, b) pair, e.g. the u = 0.95 fit.
    static CorrectionModel constant_fit(double a, double b,
                                        std::array<double, 2> u_range = {0.9, 0.999},
                                        std::array<double, 2> alpha_range = {1.0, 100.0}) {
        CorrectionModel m;
        m.c.fill(0.0);
        m.d.fill(0.0);
        m.c[0] = a;
        m.d[0] = b;
        m.u_range = u_range;
        m.alpha_range = alpha_range;
        return m;
    }

    /// The bundled default model, produced by the calibration pipeline over
    /// alpha = 1..100 and 100 confidence levels in [0.9, 0.999] (`tailvar
    /// calibrate` regenerates it). At u = 0.95 it evaluates to
    /// a ~ 0.0823, b ~ 17.2.
    static CorrectionModel bundled();
};

inline void to_json(nlohmann::json& j, const CorrectionModel& m) {
    j = nlohmann::json{{"c", m.c},
                       {"d", m.d},
                       {"alpha_range", m.alpha_range},
                       {"u_range", m.u_range}};
}

inline void from_json(const nlohmann::json& j, CorrectionModel& m) {
    const auto& c = j.at("c");
    const auto& d = j.at("d");
    if (c.size() != m.c.size() || d.size() != m.d.size())
        throw std::invalid_argument(
            "tailvar: correction model JSON requires 7 'c' and 8 'd' coefficients");
    c.get_to(m.c);
    d.get_to(m.d);
    j.at("alpha_range").get_to(m.alpha_range);
    j.at("u_range").get_to(m.u_range);
    if (!(m.u_range[0] < m.u_range[1]) || !(m.alpha_range[0] < m.alpha_range[1]))
        throw std::invalid_argument("tailvar: correction model ranges must be ordered");
}

inline CorrectionModel load_correction_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tailvar: cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    return j.get<CorrectionModel>();
}

inline void save_correction_model(const CorrectionModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("tailvar: cannot write model file: " + path);
    nlohmann::json j = m;
    out << j.dump(2) << '\n';
}

inline CorrectionModel CorrectionModel::bundled() {
    CorrectionModel m;
    m.c = {-485544.04444765637,  3091823.2864256361, -8201767.6465848032,
           11601591.718621746,   -9229311.456337193, 3915068.4370284765,
           -691860.24462617817};
    m.d = {2110883009.6547186,   -15662524298.652246, 49798359798.986343,
           -87948329400.266266,  93179989311.538452,  -59224285985.323967,
           20909087897.557144,   -3163180329.4305224};
    m.alpha_range = {1.0, 100.0};
    m.u_range = {0.9, 0.999};
    return m;
}

}  // namespace tailvar
