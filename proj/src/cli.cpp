#include "dirichlet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "dirichlet/acceptance.hpp"
#include "dirichlet/compose.hpp"
#include "dirichlet/error.hpp"
#include "dirichlet/growth.hpp"
#include "dirichlet/io.hpp"
#include "dirichlet/kernel.hpp"
#include "dirichlet/recover.hpp"
#include "dirichlet/space.hpp"

namespace dirichlet::cli {

namespace {

using io::Json;

double parse_real(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw Error(ErrorCode::ParseError, "not a number: \"" + text + "\"");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        parts.push_back(item);
    }
    return parts;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_real(part));
    return out;
}

Complex parse_point(const std::string& text) {
    const std::vector<double> parts = parse_real_list(text);
    if (parts.size() == 1) return {parts[0], 0.0};
    if (parts.size() == 2) return {parts[0], parts[1]};
    throw Error(ErrorCode::ParseError, "expected RE,IM but got \"" + text + "\"");
}

Window parse_window(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "expected A:B but got \"" + text + "\"");
    const double a = parse_real(parts[0]);
    const double b = parse_real(parts[1]);
    if (a < 1 || b < a || a != std::floor(a) || b != std::floor(b)) {
        throw Error(ErrorCode::ParseError, "invalid window \"" + text + "\"");
    }
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

int exit_code(ErrorCode code) {
    return code == ErrorCode::BudgetExhausted || code == ErrorCode::TailNotCertifiable ? 3 : 2;
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json window_json(Window w) { return Json::array({w.first, w.last}); }

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    Json warnings = Json::array();

    Json to_json() const {
        return Json{{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"warnings", warnings}};
    }
};

SpaceHandle open_space(const std::string& path, Report& report) {
    const io::SpaceFile file = io::load_space(path);
    Window window = default_window(file.freq.size());
    double threshold = kDefaultConditionThreshold;
    if (file.meta.contains("window")) {
        const Json& w = file.meta.at("window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number_unsigned() || !w[1].is_number_unsigned()) {
            throw Error(ErrorCode::ParseError, "meta.window must be [first, last]");
        }
        window = {w[0].get<std::size_t>(), w[1].get<std::size_t>()};
    }
    if (file.meta.contains("threshold")) {
        if (!file.meta.at("threshold").is_number()) throw Error(ErrorCode::ParseError, "meta.threshold must be a number");
        threshold = file.meta.at("threshold").get<double>();
    }
    SpaceHandle space = make_space(file.freq, file.weights, window, threshold);
    if (space.inconclusive_warning()) {
        report.warnings.push_back("condition (E) is inconclusive at scale on window [" + std::to_string(window.first) +
                                  ", " + std::to_string(window.last) + "]");
    }
    return space;
}

SpaceHandle default_space(Report& report) {
    report.warnings.push_back("no --space given; using lambda_n = n, beta_n = e^{n^2}, N = 64");
    return make_space(arithmetic_frequencies(kDefaultPrefix),
                      weights_from_log_rule(kDefaultPrefix, [](std::size_t n) { return double(n) * double(n); }));
}

Json series_json(const DirichletSeries& f) {
    Json coeffs = Json::array();
    for (std::size_t n = 1; n <= f.max_support(); ++n) coeffs.push_back(io::to_json(f.coefficient(n)));
    return coeffs;
}

Json symbol_json(const SymbolMap& phi) {
    const SymbolClass& cls = phi.symbol_class();
    Json out{{"text", phi.to_string()}, {"kind", std::string(to_string(cls.kind))}};
    if (cls.kind != SymbolKind::NonAffine) {
        out["a"] = io::to_json(cls.a);
        out["b"] = io::to_json(cls.b);
    }
    return out;
}

Json estimate_json(const OrderEstimate& est) {
    return Json{{"value", est.value},
                {"window", window_json(est.window)},
                {"indices", est.indices},
                {"per_n_ratios", est.per_n_ratios}};
}

template <class F>
Json guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
}

Json criterion_json(const acceptance::CriterionResult& r) {
    Json metrics = Json::object();
    for (const auto& [key, value] : r.metrics) metrics[key] = value;
    return Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"metrics", metrics}, {"note", r.note}};
}

Json criteria_json(const std::vector<acceptance::CriterionResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(criterion_json(r));
    return arr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hilbert spaces of entire Dirichlet series and composition operators", "dirichlet_rkhs"};
    app.require_subcommand(1);

    std::string space_path;
    std::string series_path;
    std::string file_path;
    std::string window_text;
    std::string alpha_text = "0.25,0.5,1,2";
    std::string z_text = "0,0";
    std::string w_text = "0,0";
    std::string phi_text;
    std::string schedule_text;
    std::string sigma_grid_text = "-10,-100,-1000";
    double threshold = kDefaultConditionThreshold;
    double tol = kDefaultKernelTolerance;
    double budget_B = kDefaultBudgetB;
    double max_radius = WitnessBudget{}.max_radius;
    std::size_t samples = WitnessBudget{}.samples_per_side;
    double lambda = 0.0;
    double sigma = 0.0;
    int quad_points = RecoveryConfig{}.quad_points;
    bool no_average = false;
    bool json_flag = false;

    auto* space_cmd = app.add_subcommand("space", "space checks and norms")->require_subcommand(1);
    auto* space_check = space_cmd->add_subcommand("check", "finite-scale (E) and (S) verdicts");
    space_check->add_option("--file", file_path, "sequence file {lambdas, weights}")->required();
    space_check->add_option("--window", window_text, "index window A:B");
    space_check->add_option("--threshold", threshold, "ratio threshold");
    space_check->add_option("--alpha-grid", alpha_text, "comma-separated alphas for (S)");
    auto* space_norm = space_cmd->add_subcommand("norm", "norm of a series");
    space_norm->add_option("--space", space_path)->required();
    space_norm->add_option("--series", series_path)->required();

    auto* series_cmd = app.add_subcommand("series", "series evaluation")->require_subcommand(1);
    auto* series_eval = series_cmd->add_subcommand("eval", "evaluate at a point");
    series_eval->add_option("--file", file_path)->required();
    series_eval->add_option("--z", z_text, "RE,IM");

    auto* kernel_cmd = app.add_subcommand("kernel", "reproducing kernel")->require_subcommand(1);
    auto* kernel_eval = kernel_cmd->add_subcommand("eval", "K(z, w) with certified tail");
    kernel_eval->add_option("--space", space_path)->required();
    kernel_eval->add_option("--z", z_text, "RE,IM");
    kernel_eval->add_option("--w", w_text, "RE,IM");
    kernel_eval->add_option("--tol", tol);

    auto* op_cmd = app.add_subcommand("op", "composition operators")->require_subcommand(1);
    auto* op_classify = op_cmd->add_subcommand("classify", "boundedness and norm");
    op_classify->add_option("--space", space_path);
    op_classify->add_option("--phi", phi_text)->required();
    auto* op_apply = op_cmd->add_subcommand("apply", "coefficients of f o phi");
    op_apply->add_option("--space", space_path)->required();
    op_apply->add_option("--series", series_path)->required();
    op_apply->add_option("--phi", phi_text)->required();
    auto* op_certify = op_cmd->add_subcommand("certify", "unboundedness certificate");
    op_certify->add_option("--space", space_path);
    op_certify->add_option("--phi", phi_text)->required();
    op_certify->add_option("--B", budget_B);
    op_certify->add_option("--max-radius", max_radius);
    op_certify->add_option("--samples", samples, "ring samples per side");

    auto* recover_cmd = app.add_subcommand("recover", "coefficient recovery")->require_subcommand(1);
    auto* recover_coeff = recover_cmd->add_subcommand("coeff", "recover the coefficient at one frequency");
    recover_coeff->add_option("--series", series_path)->required();
    recover_coeff->add_option("--lambda", lambda)->required();
    recover_coeff->add_option("--sigma", sigma);
    recover_coeff->add_option("--t-schedule", schedule_text, "comma-separated half-heights");
    recover_coeff->add_option("--quad", quad_points, "quadrature points per unit length");
    recover_coeff->add_flag("--no-average", no_average, "use only the last schedule entry");

    auto* growth_cmd = app.add_subcommand("growth", "growth orders")->require_subcommand(1);
    auto* growth_orders = growth_cmd->add_subcommand("orders", "Ritt and logarithmic orders");
    growth_orders->add_option("--series", series_path)->required();
    growth_orders->add_option("--window", window_text, "index window A:B");
    growth_orders->add_option("--sigma-grid", sigma_grid_text, "comma-separated abscissas");

    auto* demo = app.add_subcommand("demo", "acceptance suite");
    demo->add_flag("--json", json_flag, "machine-readable results");

    Report report;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        const bool unknown = dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr ||
                             dynamic_cast<const CLI::RequiredError*>(&e) != nullptr;
        report.command = args.empty() ? "" : args.front();
        const ErrorCode code = unknown ? ErrorCode::UnknownCommand : ErrorCode::ParseError;
        report.outputs = Json{{"error", std::string(to_string(code))}, {"message", e.what()}};
        out << io::dump(report.to_json());
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*space_check) {
            report.command = "space check";
            const io::SpaceFile file = io::load_space(file_path);
            const Window window = window_text.empty() ? default_window(file.freq.size()) : parse_window(window_text);
            const std::vector<double> alphas = parse_real_list(alpha_text);
            report.inputs = Json{{"file", file_path},
                                 {"window", window_json(window)},
                                 {"threshold", threshold},
                                 {"alpha_grid", alphas}};
            const ConditionVerdict e = check_condition_E(file.freq, file.weights, window, threshold);
            const StrongConditionVerdict s = check_condition_S(file.freq, file.weights, alphas, window, threshold);
            Json per_alpha = Json::array();
            for (const auto& pa : s.per_alpha) per_alpha.push_back(Json{{"alpha", pa.alpha}, {"verdict", io::to_json(pa.verdict)}});
            report.outputs["condition_E"] = io::to_json(e);
            report.outputs["condition_S"] = Json{{"status", std::string(to_string(s.verdict.status))},
                                                 {"best_alpha", s.best_alpha ? Json(*s.best_alpha) : Json()},
                                                 {"per_alpha", per_alpha}};
            report.outputs["L_estimate"] =
                guarded([&] { return Json{{"tail_start", window.first}, {"value", estimate_L(file.freq, window.first)}}; });
            if (e.status == ConditionStatus::Inconclusive) report.warnings.push_back("condition (E) is inconclusive at scale");
            err << "space check: (E) " << to_string(e.status) << ", (S) " << to_string(s.verdict.status) << "\n";
        } else if (*space_norm) {
            report.command = "space norm";
            report.inputs = Json{{"space", space_path}, {"series", series_path}};
            const SpaceHandle space = open_space(space_path, report);
            const DirichletSeries f = io::bind_series(space, io::load_series(series_path));
            const double n = norm(space, f);
            report.outputs = Json{{"norm", n}, {"norm_sq", n * n}};
            err << "space norm: " << format_real(n) << "\n";
        } else if (*series_eval) {
            report.command = "series eval";
            const Complex z = parse_point(z_text);
            report.inputs = Json{{"file", file_path}, {"z", io::to_json(z)}};
            const Complex value = evaluate(io::load_series(file_path), z);
            report.outputs = Json{{"value", io::to_json(value)}};
            err << "series eval: " << format_real(value.real()) << " + " << format_real(value.imag()) << "i\n";
        } else if (*kernel_eval) {
            report.command = "kernel eval";
            const Complex z = parse_point(z_text);
            const Complex w = parse_point(w_text);
            report.inputs = Json{{"space", space_path}, {"z", io::to_json(z)}, {"w", io::to_json(w)}, {"tol", tol}};
            const SpaceHandle space = open_space(space_path, report);
            const KernelValue k = kernel_value(space, z, w, tol);
            report.outputs = Json{{"value", io::to_json(k.value)}, {"tail_bound", k.tail_bound}, {"terms_used", k.terms_used}};
            err << "kernel eval: " << format_real(k.value.real()) << " + " << format_real(k.value.imag()) << "i\n";
        } else if (*op_classify) {
            report.command = "op classify";
            report.inputs = Json{{"space", space_path.empty() ? Json() : Json(space_path)}, {"phi", phi_text}};
            const SymbolMap phi = SymbolMap::parse(phi_text);
            const SpaceHandle space = space_path.empty() ? default_space(report) : open_space(space_path, report);
            const BoundednessVerdict v = classify(space, phi);
            report.outputs = Json{{"decision", std::string(to_string(v.decision))},
                                  {"case_tag", std::string(to_string(v.case_tag))},
                                  {"norm", v.operator_norm ? Json(*v.operator_norm) : Json()},
                                  {"norm_kind", !v.operator_norm             ? Json()
                                                : v.norm_is_rank_one_closed_form ? Json("rank_one_closed_form")
                                                                                 : Json("shift_formula")},
                                  {"lambda_1", space.frequencies()(1)},
                                  {"symbol", symbol_json(phi)}};
            err << "op classify: " << to_string(v.decision) << " (" << to_string(v.case_tag) << ")";
            if (v.operator_norm) err << ", norm " << format_real(*v.operator_norm);
            err << "\n";
        } else if (*op_apply) {
            report.command = "op apply";
            report.inputs = Json{{"space", space_path}, {"series", series_path}, {"phi", phi_text}};
            const SymbolMap phi = SymbolMap::parse(phi_text);
            const SpaceHandle space = open_space(space_path, report);
            const DirichletSeries f = io::bind_series(space, io::load_series(series_path));
            const DirichletSeries g = apply(space, phi, f);
            report.outputs = Json{{"lambdas", std::vector<double>(space.frequencies().values().begin(),
                                                                  space.frequencies().values().begin() +
                                                                      std::ptrdiff_t(g.max_support()))},
                                  {"coeffs", series_json(g)},
                                  {"norm_in", norm(space, f)},
                                  {"norm_out", norm(space, g)}};
            err << "op apply: support up to index " << g.max_support() << "\n";
        } else if (*op_certify) {
            report.command = "op certify";
            report.inputs = Json{{"space", space_path.empty() ? Json() : Json(space_path)},
                                 {"phi", phi_text},
                                 {"B", budget_B},
                                 {"max_radius", max_radius},
                                 {"samples_per_side", samples}};
            const SymbolMap phi = SymbolMap::parse(phi_text);
            const SpaceHandle space = space_path.empty() ? default_space(report) : open_space(space_path, report);
            const Certificate c = certify_unbounded(space, phi, budget_B, WitnessBudget{max_radius, samples});
            Json cert{{"kind", std::string(to_string(c.kind))}, {"budget_B", c.budget_B}};
            if (c.kind == Certificate::Kind::ProbeBlowup) {
                cert["k"] = c.k;
                cert["lambda_k"] = space.frequencies()(c.k);
                cert["norm_value"] = c.norm_value;
            } else {
                cert["w"] = io::to_json(c.w);
                cert["phi_w"] = io::to_json(c.phi_w);
                cert["log_ratio"] = c.log_ratio;
                cert["ratio"] = std::exp(c.log_ratio);
                cert["radius"] = c.radius;
            }
            report.outputs = Json{{"decision", "Unbounded"},
                                  {"certificate", cert},
                                  {"verified", verify_certificate(space, phi, c)}};
            err << "op certify: " << to_string(c.kind) << "\n";
        } else if (*recover_coeff) {
            report.command = "recover coeff";
            RecoveryConfig cfg;
            cfg.sigma = sigma;
            cfg.quad_points = quad_points;
            cfg.average = !no_average;
            if (!schedule_text.empty()) cfg.t_schedule = parse_real_list(schedule_text);
            report.inputs = Json{{"series", series_path},
                                 {"lambda", lambda},
                                 {"sigma", sigma},
                                 {"t_schedule", cfg.t_schedule},
                                 {"quad_points", quad_points},
                                 {"average", cfg.average}};
            const DirichletSeries f = io::load_series(series_path);
            const Evaluator black_box = [&f](Complex z) { return evaluate(f, z); };
            const RecoveryResult res = recover_frequency(black_box, lambda, cfg);
            Json per_t = Json::array();
            for (Complex v : res.per_t) per_t.push_back(io::to_json(v));
            report.outputs = Json{{"value", io::to_json(res.value)},
                                  {"error_estimate", res.error_estimate},
                                  {"error_model", res.model_based ? "coefficient_model" : "schedule_spread"},
                                  {"per_t", per_t}};
            err << "recover coeff: " << format_real(res.value.real()) << " + " << format_real(res.value.imag()) << "i\n";
        } else if (*growth_orders) {
            report.command = "growth orders";
            const DirichletSeries f = io::load_series(series_path);
            const Window window = window_text.empty() ? Window{1, f.size()} : parse_window(window_text);
            const std::vector<double> grid = parse_real_list(sigma_grid_text);
            report.inputs = Json{{"series", series_path}, {"window", window_json(window)}, {"sigma_grid", grid}};
            report.outputs["ritt_order"] = guarded([&] { return estimate_json(ritt_order(f, window)); });
            report.outputs["log_order_coeff"] = guarded([&] { return estimate_json(log_order_coeff(f, window)); });
            report.outputs["log_order_maxterm"] = guarded([&] { return estimate_json(log_order_maxterm(f, grid)); });
            for (const char* key : {"ritt_order", "log_order_coeff", "log_order_maxterm"}) {
                if (report.outputs[key].contains("error")) report.warnings.push_back(std::string(key) + " unavailable");
            }
            err << "growth orders: window [" << window.first << ", " << window.last << "]\n";
        } else if (*demo) {
            report.command = "demo";
            using Clock = std::chrono::steady_clock;
            std::vector<acceptance::CriterionResult> results;
            for (int id = 1; id <= acceptance::kLibraryCriteria; ++id) {
                results.push_back(acceptance::run_criterion(id));
                double total = 0.0;
                for (double s : results.back().part_seconds) total += s;
                err << "criterion " << id << ": " << format_real(total) << " s\n";
            }
            const auto rerun_start = Clock::now();
            const std::string first = io::dump(criteria_json(results));
            const std::string second = io::dump(criteria_json(acceptance::run_library_criteria()));
            err << "criterion 10 (rerun): "
                << format_real(std::chrono::duration<double>(Clock::now() - rerun_start).count()) << " s\n";
            acceptance::CriterionResult determinism{10, "Demo results byte-identical across two runs"};
            determinism.passed = first == second;
            determinism.metrics = {{"bytes", double(first.size())}};
            results.push_back(determinism);

            const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            if (json_flag) {
                report.outputs = Json{{"criteria", criteria_json(results)}, {"all_passed", all}};
                out << io::dump(report.to_json());
            } else {
                for (const auto& r : results) {
                    char line[32];
                    std::snprintf(line, sizeof line, "criterion %2d  %s  ", r.id, r.passed ? "PASS" : "FAIL");
                    out << line << r.title << "\n";
                }
            }
            err << "demo: " << (all ? "all criteria pass" : "some criteria fail") << "\n";
            return all ? 0 : 1;
        }
    } catch (const Error& e) {
        report.outputs = Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        out << io::dump(report.to_json());
        err << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        report.outputs = Json{{"error", "InvalidArgument"}, {"message", e.what()}};
        out << io::dump(report.to_json());
        err << "error: " << e.what() << "\n";
        return 2;
    }
    out << io::dump(report.to_json());
    return 0;
}

}  // namespace dirichlet::cli
