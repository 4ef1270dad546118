#include "dirichlet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dirichlet/error.hpp"

namespace dirichlet::io {

namespace {

const Json& require(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    }
    return doc.at(key);
}

std::vector<double> real_array(const Json& arr, const char* key) {
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("non-numeric entry in \"") + key + "\"");
        out.push_back(v.get<double>());
    }
    return out;
}

Complex complex_entry(const Json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw Error(ErrorCode::ParseError, "coefficients must be numbers or [re, im] pairs");
}

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void emit(const Json& j, std::string& out, int level) {
    const std::string pad(2 * (level + 1), ' ');
    const std::string close_pad(2 * level, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                emit(value, out, level + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool inline_array = std::all_of(j.begin(), j.end(), [](const Json& e) {
                return is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
            });
            if (inline_array) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    emit(j[i], out, level + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                emit(j[i], out, level + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float: out += format_real(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

SpaceFile parse_space(const Json& doc) {
    FrequencySequence freq = make_frequencies(real_array(require(doc, "lambdas"), "lambdas"));
    WeightSequence weights = [&] {
        if (doc.contains("log_weights")) return make_log_weights(real_array(doc.at("log_weights"), "log_weights"));
        const std::vector<double> w = real_array(require(doc, "weights"), "weights");
        return make_weights(w);
    }();
    Json meta = doc.contains("meta") ? doc.at("meta") : Json::object();
    return {std::move(freq), std::move(weights), std::move(meta)};
}

SpaceFile load_space(const std::string& path) { return parse_space(read_json_file(path)); }

DirichletSeries parse_series(const Json& doc) {
    FrequencySequence freq = make_frequencies(real_array(require(doc, "lambdas"), "lambdas"));
    const Json& arr = require(doc, "coeffs");
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, "\"coeffs\" must be an array");
    std::vector<Complex> coeffs;
    for (const auto& v : arr) coeffs.push_back(complex_entry(v));
    return DirichletSeries(std::move(freq), std::move(coeffs));
}

DirichletSeries load_series(const std::string& path) { return parse_series(read_json_file(path)); }

DirichletSeries bind_series(const SpaceHandle& space, const DirichletSeries& f) {
    require_same_frequencies(space.frequencies(), f.frequencies());
    std::vector<ScaledComplex> coeffs(f.coefficients().begin(), f.coefficients().end());
    return DirichletSeries(space.frequencies(), std::move(coeffs));
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ConditionVerdict& v) {
    return Json{{"status", std::string(to_string(v.status))},
                {"window", Json::array({v.window.first, v.window.last})},
                {"points", v.points},
                {"threshold", v.threshold},
                {"min_ratio", v.min_ratio},
                {"max_ratio", v.max_ratio},
                {"end_ratio", v.end_ratio},
                {"slope", v.slope}};
}

std::string dump(const Json& doc) {
    std::string out;
    emit(doc, out, 0);
    out += "\n";
    return out;
}

}  // namespace dirichlet::io
