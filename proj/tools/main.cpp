// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0
//
// tailvar CLI: report generators and one-off computations for the
// Gamma-quantile VaR machinery. Every command prints deterministic,
// locale-independent output; numbers carry 10 significant digits.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailvar/tailvar.hpp"

namespace {

using tailvar::CorrectionModel;
using tailvar::format_number;

struct CommonOptions {
    std::string model_path;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_format = true) {
    cmd->fallthrough();  // let --config (defined on the parent) follow a subcommand
    cmd->add_option("--model", opts.model_path,
                    "correction model JSON (default: bundled model)");
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    if (with_format)
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
}

CorrectionModel resolve_model(const CommonOptions& opts) {
    if (opts.model_path.empty()) return CorrectionModel::bundled();
    return tailvar::load_correction_model(opts.model_path);
}

class OutputStream {
  public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("tailvar: cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// "a,b,c" with range items "lo..hi" or "lo..hi..step" (default step 100)
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto range_pos = item.find("..");
        if (range_pos == std::string::npos) {
            values.push_back(std::stoi(item));
            continue;
        }
        const int lo = std::stoi(item.substr(0, range_pos));
        std::string rest = item.substr(range_pos + 2);
        int step = 100;
        const auto step_pos = rest.find("..");
        if (step_pos != std::string::npos) {
            step = std::stoi(rest.substr(step_pos + 2));
            rest = rest.substr(0, step_pos);
        }
        const int hi = std::stoi(rest);
        if (step <= 0 || hi < lo)
            throw CLI::ValidationError("--n-list", "bad range: " + item);
        for (int v = lo; v <= hi; v += step) values.push_back(v);
    }
    if (values.empty()) throw CLI::ValidationError("--n-list", "empty list");
    return values;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) values.push_back(std::stod(item));
    return values;
}

// ---------------------------------------------------------------- quantile
struct QuantileArgs {
    double alpha = 1.0;
    double beta = 1.0;
    double u = 0.995;
    CommonOptions common;
};

int run_quantile(const QuantileArgs& args) {
    const auto model = resolve_model(args.common);
    const tailvar::GammaParams params{args.alpha, args.beta};
    const double approx = tailvar::gamma_quantile_approx(args.u, params, model);
    const double oracle = tailvar::inverse_regularized_p(args.alpha, args.u) / args.beta;
    const double rel_err = (approx - oracle) / oracle;
    const bool in_range = model.in_range(args.u, args.alpha);
    OutputStream out(args.common.out_path);
    if (args.common.format == "json") {
        nlohmann::json j{{"alpha", args.alpha},   {"beta", args.beta},
                         {"u", args.u},           {"approx", approx},
                         {"oracle", oracle},      {"rel_err", rel_err},
                         {"rel_err_pct", rel_err * 100.0}, {"in_fitted_region", in_range}};
        out.get() << j.dump(2) << '\n';
    } else {
        out.get() << "alpha,beta,u,approx,oracle,rel_err_pct,warn\n"
                  << format_number(args.alpha) << ',' << format_number(args.beta) << ','
                  << format_number(args.u) << ',' << format_number(approx) << ','
                  << format_number(oracle) << ',' << format_number(rel_err * 100.0) << ','
                  << (in_range ? 0 : 1) << '\n';
    }
    if (!in_range)
        std::cerr << "warning: (u, alpha) outside the model's fitted region; "
                     "the quantile is an extrapolation\n";
    return 0;
}

// ------------------------------------------------------------ report-table1
int run_report_table1(const CommonOptions& common) {
    const auto model = resolve_model(common);
    static constexpr double kUs[] = {0.95, 0.99, 0.995, 0.999};
    static constexpr double kAlphas[] = {1, 5, 10, 50, 100, 500, 1000};
    nlohmann::json rows = nlohmann::json::array();
    OutputStream out(common.out_path);
    if (common.format == "csv") out.get() << "u,alpha,rel_err_pct\n";
    for (double u : kUs) {
        for (double alpha : kAlphas) {
            const double err = tailvar::relative_error(u, {alpha, 1.0}, model) * 100.0;
            if (common.format == "json") {
                rows.push_back({{"u", u}, {"alpha", alpha}, {"rel_err_pct", err}});
            } else {
                out.get() << format_number(u) << ',' << format_number(alpha) << ','
                          << format_number(err) << '\n';
            }
        }
    }
    if (common.format == "json") out.get() << rows.dump(2) << '\n';
    return 0;
}

// ------------------------------------------------------------ report-table2
int run_report_table2(const CommonOptions& common, double kappa) {
    const auto model = resolve_model(common);
    struct Ref {
        const char* kind;
        std::optional<double> l;
        double diff_abs;
        double diff_rel_pct;
    };
    // published comparison values at N = 500, mu = 500, kappa = 0.995
    static const Ref kRefs[] = {{"exp", std::nullopt, 17013.22, 6.09},
                                {"trunc", 6000.0, 15475.54, 5.57},
                                {"trunc", 8000.0, 16985.01, 6.08}};

    OutputStream out(common.out_path);
    nlohmann::json jrows = nlohmann::json::array();
    if (common.format == "csv")
        out.get() << "convention,case,L,kappa_eff,q_single,q_aggregate,diff_abs,"
                     "diff_rel_pct,ref_diff_abs,ref_diff_rel_pct\n";

    for (const bool mean_shape : {false, true}) {
        tailvar::SweepSpec spec;
        spec.n_values = {500};
        spec.mu_values = {500.0};
        spec.kappa = kappa;
        spec.shape_equals_mean = mean_shape;
        const std::string convention = mean_shape ? "shape=mean" : "alpha_unit=1";

        auto emit = [&](const tailvar::ComparisonRow& row, const Ref& ref) {
            if (common.format == "json") {
                nlohmann::json j{{"convention", convention},
                                 {"case", ref.kind},
                                 {"kappa_eff", row.kappa_effective},
                                 {"q_single", row.q_single},
                                 {"q_aggregate", row.q_aggregate},
                                 {"diff_abs", row.diff_abs},
                                 {"diff_rel_pct", row.diff_rel * 100.0},
                                 {"ref_diff_abs", ref.diff_abs},
                                 {"ref_diff_rel_pct", ref.diff_rel_pct}};
                if (ref.l) j["L"] = *ref.l;
                jrows.push_back(std::move(j));
            } else {
                out.get() << convention << ',' << ref.kind << ',';
                if (ref.l) out.get() << format_number(*ref.l);
                out.get() << ',' << format_number(row.kappa_effective) << ','
                          << format_number(row.q_single) << ','
                          << format_number(row.q_aggregate) << ','
                          << format_number(row.diff_abs) << ','
                          << format_number(row.diff_rel * 100.0) << ','
                          << format_number(ref.diff_abs) << ','
                          << format_number(ref.diff_rel_pct) << '\n';
            }
        };

        auto exp_spec = spec;
        const auto exp_rows = tailvar::compare_exponential(exp_spec, model);
        emit(exp_rows.at(0), kRefs[0]);

        auto trunc_spec = spec;
        trunc_spec.l_values = {6000.0, 8000.0};
        const auto trunc_rows = tailvar::compare_truncated(trunc_spec, model);
        emit(trunc_rows.at(0), kRefs[1]);
        emit(trunc_rows.at(1), kRefs[2]);
    }
    if (common.format == "json") out.get() << jrows.dump(2) << '\n';
    return 0;
}

// ------------------------------------------------------------------ compare
struct CompareArgs {
    std::string mode;
    std::string n_list = "500";
    std::string mu_list = "500";
    std::string l_list;
    double kappa = 0.995;
    std::string alpha_unit = "1";
    std::string enmean = "n";
    CommonOptions common;
};

int run_compare(const CompareArgs& args) {
    const auto model = resolve_model(args.common);
    tailvar::SweepSpec spec;
    spec.n_values = parse_int_list(args.n_list);
    spec.mu_values = parse_double_list(args.mu_list);
    if (!args.l_list.empty()) spec.l_values = parse_double_list(args.l_list);
    spec.kappa = args.kappa;
    if (args.alpha_unit == "mean") {
        spec.shape_equals_mean = true;
    } else {
        spec.alpha_unit = std::stod(args.alpha_unit);
    }
    spec.en_plus_sqrt = (args.enmean == "n+sqrt");

    const auto rows = args.mode == "trunc" ? tailvar::compare_truncated(spec, model)
                                           : tailvar::compare_exponential(spec, model);
    OutputStream out(args.common.out_path);
    if (args.common.format == "json") {
        nlohmann::json jrows = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json j{{"N", r.n_obligors},
                             {"mu", r.mu},
                             {"kappa", r.kappa},
                             {"kappa_eff", r.kappa_effective},
                             {"u", r.u},
                             {"q_single", r.q_single},
                             {"q_aggregate", r.q_aggregate},
                             {"diff_abs", r.diff_abs},
                             {"diff_rel", r.diff_rel},
                             {"warn", r.warn}};
            if (r.gross_exposure) j["L"] = *r.gross_exposure;
            jrows.push_back(std::move(j));
        }
        out.get() << jrows.dump(2) << '\n';
    } else {
        tailvar::write_csv(out.get(), rows);
    }
    return 0;
}

// --------------------------------------------------------------- kappa-curve
struct KappaCurveArgs {
    std::string c_list = "9,10,11,12,14,16,20,25";
    std::string n_list = "100,500,1000";
    double kappa = 0.995;
    CommonOptions common;
};

int run_kappa_curve(const KappaCurveArgs& args) {
    const auto cs = parse_double_list(args.c_list);
    const auto ns = parse_int_list(args.n_list);
    const auto points = tailvar::kappa_prime_curve(cs, ns, args.kappa);
    OutputStream out(args.common.out_path);
    if (args.common.format == "json") {
        nlohmann::json jrows = nlohmann::json::array();
        for (const auto& p : points)
            jrows.push_back(
                {{"C", p.c}, {"N", p.n_obligors}, {"kappa_prime", p.kappa_prime}});
        out.get() << jrows.dump(2) << '\n';
    } else {
        tailvar::write_csv(out.get(), points);
    }
    return 0;
}

// ----------------------------------------------------------------- calibrate
struct CalibrateArgs {
    double u_min = 0.9;
    double u_max = 0.999;
    int u_count = 100;
    int alpha_min = 1;
    int alpha_max = 100;
    double p_min = 0.05;
    double p_max = 1.5;
    double p_step = 0.005;
    unsigned threads = 0;
    std::string out_model = "correction_model.json";
    std::string out_diag = "calibration_diagnostics.csv";
};

int run_calibrate(const CalibrateArgs& args) {
    if (args.u_count < 8)
        throw std::invalid_argument(
            "tailvar: calibrate needs at least 8 confidence levels (degree-7 fit)");
    if (args.alpha_max < args.alpha_min)
        throw std::invalid_argument("tailvar: alpha range is empty");
    tailvar::CalibrationGrid grid;
    for (int a = args.alpha_min; a <= args.alpha_max; ++a) grid.alphas.push_back(a);
    for (int i = 0; i < args.u_count; ++i)
        grid.us.push_back(args.u_min +
                          (args.u_max - args.u_min) * i / (args.u_count - 1));
    grid.p_min = args.p_min;
    grid.p_max = args.p_max;
    grid.p_step = args.p_step;

    const auto result = tailvar::calibrate(grid, args.threads);

    tailvar::save_correction_model(result.model, args.out_model);
    std::ofstream diag(args.out_diag);
    if (!diag) throw std::runtime_error("tailvar: cannot write " + args.out_diag);
    diag << "# p_min=" << format_number(args.p_min) << " p_max=" << format_number(args.p_max)
         << " p_step=" << format_number(args.p_step) << '\n';
    diag << "u,alpha,p_star,boundary_flag\n";
    int boundary_hits = 0;
    for (const auto& cell : result.cells) {
        diag << format_number(cell.u) << ',' << format_number(cell.alpha) << ','
             << format_number(cell.p_star) << ',' << (cell.at_boundary ? 1 : 0) << '\n';
        boundary_hits += cell.at_boundary ? 1 : 0;
    }

    std::cout << "calibrated " << result.cells.size() << " cells, " << boundary_hits
              << " boundary hits\n"
              << "a(0.95)=" << format_number(result.model.a_of(0.95))
              << " b(0.95)=" << format_number(result.model.b_of(0.95)) << '\n'
              << "model: " << args.out_model << "\ndiagnostics: " << args.out_diag << '\n';
    return 0;
}

// ---------------------------------------------------------------- mc-validate
struct McValidateArgs {
    std::string mode = "single";
    std::string severity = "exp";
    double lambda = 0.002;
    double gross_exposure = 0.0;
    double alpha = 1.0;
    double beta = 0.002;
    int n_obligors = 500;
    double mean_events = 500.0;
    double default_prob = 1.0;
    double kappa = 0.995;
    std::uint64_t paths = 1000000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double tolerance = -1.0;  // negative: no tolerance requested
    std::string dump_samples;
    CommonOptions common;
};

int run_mc_validate(const McValidateArgs& args) {
    const auto model = resolve_model(args.common);
    tailvar::SimulationSpec spec;
    spec.n_paths = args.paths;
    spec.seed = args.seed;
    spec.default_prob = args.default_prob;

    double closed_oracle = 0.0;
    double closed_approx = 0.0;
    std::optional<double> kp;

    if (args.mode == "compound") {
        if (args.severity != "gamma")
            throw std::invalid_argument(
                "tailvar: compound mode simulates Gamma severities; use --severity gamma");
        spec.mode = tailvar::SimulationMode::compound;
        spec.mean_events = args.mean_events;
        spec.severity = tailvar::GammaSeverity{{args.alpha, args.beta}};
        closed_oracle = tailvar::var_aggregate(args.kappa, {args.mean_events},
                                               {args.alpha, args.beta}, model, true);
        closed_approx = tailvar::var_aggregate(args.kappa, {args.mean_events},
                                               {args.alpha, args.beta}, model, false);
    } else {
        spec.mode = tailvar::SimulationMode::single_loss;
        spec.n_obligors = args.n_obligors;
        const double n = static_cast<double>(args.n_obligors);
        if (args.severity == "exp") {
            spec.severity = tailvar::Exponential{args.lambda};
            const auto conv = tailvar::ConvolutionLoss::exponential(args.n_obligors, args.lambda);
            closed_oracle = tailvar::inverse_regularized_p(n, args.kappa) / args.lambda;
            closed_approx = tailvar::erlang_quantile(args.kappa, conv, model);
        } else if (args.severity == "trunc") {
            if (!(args.gross_exposure > 0.0))
                throw std::invalid_argument(
                    "tailvar: truncated severities need --gross-exposure");
            spec.severity = tailvar::TruncatedExponential{args.lambda, args.gross_exposure};
            const auto conv = tailvar::ConvolutionLoss::truncated(
                args.n_obligors, args.lambda, args.gross_exposure);
            kp = tailvar::kappa_prime(args.kappa, conv);
            closed_oracle = tailvar::inverse_regularized_p(n, *kp) / args.lambda;
            closed_approx = tailvar::trunc_quantile(args.kappa, conv, model);
        } else {
            spec.severity = tailvar::GammaSeverity{{args.alpha, args.beta}};
            // N-fold Gamma convolution is Gamma(N alpha, beta)
            closed_oracle = tailvar::inverse_regularized_p(n * args.alpha, args.kappa) / args.beta;
            closed_approx =
                tailvar::gamma_quantile_approx(args.kappa, {n * args.alpha, args.beta}, model);
        }
    }

    const auto losses = tailvar::simulate_losses(spec, args.threads);
    if (!args.dump_samples.empty()) {
        std::ofstream dump(args.dump_samples);
        if (!dump)
            throw std::runtime_error("tailvar: cannot write " + args.dump_samples);
        for (double loss : losses) dump << format_number(loss) << '\n';
    }
    const auto est = tailvar::empirical_quantile(losses, args.kappa, args.seed);

    const double gap_oracle = (closed_oracle - est.point) / est.point;
    const double gap_approx = (closed_approx - est.point) / est.point;
    const bool oracle_in_ci = closed_oracle >= est.ci_low && closed_oracle <= est.ci_high;
    const bool tolerance_requested = args.tolerance >= 0.0;
    const bool tolerance_met = std::abs(gap_approx) <= args.tolerance;

    OutputStream out(args.common.out_path);
    auto& os = out.get();
    if (args.common.format == "json") {
        nlohmann::json j{{"mode", args.mode},
                         {"severity", args.severity},
                         {"kappa", args.kappa},
                         {"paths", args.paths},
                         {"seed", args.seed},
                         {"empirical", est.point},
                         {"ci_low", est.ci_low},
                         {"ci_high", est.ci_high},
                         {"closed_form_oracle", closed_oracle},
                         {"closed_form_approx", closed_approx},
                         {"rel_gap_oracle", gap_oracle},
                         {"rel_gap_approx", gap_approx},
                         {"oracle_in_ci", oracle_in_ci}};
        if (kp) j["kappa_prime"] = *kp;
        if (tolerance_requested) {
            j["tolerance"] = args.tolerance;
            j["tolerance_met"] = tolerance_met;
        }
        os << j.dump(2) << '\n';
    } else {
        os << "mode=" << args.mode << '\n'
           << "severity=" << args.severity << '\n'
           << "kappa=" << format_number(args.kappa) << '\n';
        if (kp) os << "kappa_prime=" << format_number(*kp) << '\n';
        os << "paths=" << args.paths << '\n'
           << "seed=" << args.seed << '\n'
           << "empirical=" << format_number(est.point) << '\n'
           << "ci_low=" << format_number(est.ci_low) << '\n'
           << "ci_high=" << format_number(est.ci_high) << '\n'
           << "closed_form_oracle=" << format_number(closed_oracle) << '\n'
           << "closed_form_approx=" << format_number(closed_approx) << '\n'
           << "rel_gap_oracle=" << format_number(gap_oracle) << '\n'
           << "rel_gap_approx=" << format_number(gap_approx) << '\n'
           << "oracle_in_ci=" << (oracle_in_ci ? "yes" : "no") << '\n';
        if (tolerance_requested)
            os << "tolerance=" << format_number(args.tolerance) << '\n'
               << "tolerance_met=" << (tolerance_met ? "yes" : "no") << '\n';
    }
    return tolerance_requested && !tolerance_met ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"credit-portfolio VaR via Gamma quantile approximation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override");

    QuantileArgs quantile_args;
    auto* quantile = app.add_subcommand(
        "quantile", "approximate and exact Gamma quantile at one (u, alpha, beta)");
    quantile->add_option("--alpha", quantile_args.alpha, "Gamma shape")->required();
    quantile->add_option("--beta", quantile_args.beta, "Gamma rate (default 1)");
    quantile->add_option("--u", quantile_args.u, "confidence level")->required();
    add_common(quantile, quantile_args.common);

    CommonOptions table1_common;
    auto* table1 = app.add_subcommand(
        "report-table1", "relative-error grid of the quantile approximation (beta = 1)");
    add_common(table1, table1_common);

    CommonOptions table2_common;
    double table2_kappa = 0.995;
    auto* table2 = app.add_subcommand(
        "report-table2",
        "single vs aggregate quantile differences at N = 500, mu = 500, with reference "
        "values, under both severity-shape conventions");
    table2->add_option("--kappa", table2_kappa, "confidence level (default 0.995)");
    add_common(table2, table2_common);

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare",
                                       "sweep single-loss vs aggregate quantile differences");
    compare->add_option("mode", compare_args.mode, "exp | trunc")
        ->required()
        ->check(CLI::IsMember({"exp", "trunc"}));
    compare->add_option("--n-list", compare_args.n_list,
                        "obligor counts, e.g. 500 or 100..2000 or 100..2000..50");
    compare->add_option("--mu-list", compare_args.mu_list, "severity means");
    compare->add_option("--l-list,--L-list", compare_args.l_list,
                        "gross exposures (trunc mode)");
    compare->add_option("--kappa", compare_args.kappa, "confidence level");
    compare->add_option("--alpha-unit", compare_args.alpha_unit,
                        "severity Gamma shape, a number or 'mean' (shape = mu, rate 1)");
    compare->add_option("--enmean", compare_args.enmean, "E[N] convention for the shift")
        ->check(CLI::IsMember({"n", "n+sqrt"}));
    add_common(compare, compare_args.common);

    KappaCurveArgs kappa_curve_args;
    auto* kappa_curve = app.add_subcommand(
        "kappa-curve", "kappa' over a (C, N) grid, C the gross-exposure multiple");
    kappa_curve->add_option("--c-list", kappa_curve_args.c_list, "C values");
    kappa_curve->add_option("--n-list", kappa_curve_args.n_list, "obligor counts");
    kappa_curve->add_option("--kappa", kappa_curve_args.kappa, "confidence level");
    add_common(kappa_curve, kappa_curve_args.common);

    CalibrateArgs calibrate_args;
    auto* calibrate = app.add_subcommand(
        "calibrate", "re-derive the correction model from scratch and write it as JSON");
    calibrate->fallthrough();
    calibrate->add_option("--u-min", calibrate_args.u_min, "lowest confidence (default 0.9)");
    calibrate->add_option("--u-max", calibrate_args.u_max, "highest confidence (default 0.999)");
    calibrate->add_option("--u-count", calibrate_args.u_count,
                          "confidence grid size (default 100, minimum 8)");
    calibrate->add_option("--alpha-min", calibrate_args.alpha_min, "smallest shape (default 1)");
    calibrate->add_option("--alpha-max", calibrate_args.alpha_max, "largest shape (default 100)");
    calibrate->add_option("--p-min", calibrate_args.p_min, "search lower bound (default 0.05)");
    calibrate->add_option("--p-max", calibrate_args.p_max, "search upper bound (default 1.5)");
    calibrate->add_option("--p-step", calibrate_args.p_step, "scan resolution (default 0.005)");
    calibrate->add_option("--threads", calibrate_args.threads,
                          "worker threads (default: hardware)");
    calibrate->add_option("--out-model", calibrate_args.out_model, "model JSON path");
    calibrate->add_option("--out-diag", calibrate_args.out_diag, "diagnostics CSV path");

    McValidateArgs mc_args;
    auto* mc = app.add_subcommand("mc-validate",
                                  "empirical quantile from seeded simulation vs closed forms");
    mc->add_option("--mode", mc_args.mode, "single | compound")
        ->check(CLI::IsMember({"single", "compound"}));
    mc->add_option("--severity", mc_args.severity, "exp | trunc | gamma")
        ->check(CLI::IsMember({"exp", "trunc", "gamma"}));
    mc->add_option("--lambda", mc_args.lambda, "severity rate (exp/trunc)");
    mc->add_option("--gross-exposure,-L", mc_args.gross_exposure, "truncation point");
    mc->add_option("--alpha", mc_args.alpha, "Gamma severity shape");
    mc->add_option("--beta", mc_args.beta, "Gamma severity rate");
    mc->add_option("--n-obligors", mc_args.n_obligors, "portfolio size (single mode)");
    mc->add_option("--mean-events", mc_args.mean_events, "Poisson mean (compound mode)");
    mc->add_option("--default-prob", mc_args.default_prob, "Bernoulli default probability");
    mc->add_option("--kappa", mc_args.kappa, "confidence level");
    mc->add_option("--paths", mc_args.paths, "number of simulated paths");
    mc->add_option("--seed", mc_args.seed, "RNG seed");
    mc->add_option("--threads", mc_args.threads, "worker threads (default: hardware)");
    mc->add_option("--tolerance", mc_args.tolerance,
                   "require |closed-form approx - empirical| / empirical <= this");
    mc->add_option("--dump-samples", mc_args.dump_samples, "write one loss per line");
    add_common(mc, mc_args.common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (quantile->parsed()) return run_quantile(quantile_args);
        if (table1->parsed()) return run_report_table1(table1_common);
        if (table2->parsed()) return run_report_table2(table2_common, table2_kappa);
        if (compare->parsed()) return run_compare(compare_args);
        if (kappa_curve->parsed()) return run_kappa_curve(kappa_curve_args);
        if (calibrate->parsed()) return run_calibrate(calibrate_args);
        if (mc->parsed()) return run_mc_validate(mc_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
