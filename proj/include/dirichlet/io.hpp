#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dirichlet/frequencies.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/space.hpp"

namespace dirichlet::io {

using Json = nlohmann::ordered_json;

/// Space file: {"lambdas": [..], "weights": [..] | "log_weights": [..], "meta": {..}}.
struct SpaceFile {
    FrequencySequence freq;
    WeightSequence weights;
    Json meta;
};

Json read_json_file(const std::string& path);

SpaceFile parse_space(const Json& doc);
SpaceFile load_space(const std::string& path);

/// Series file: {"lambdas": [..], "coeffs": [[re, im] | re, ..]}.
DirichletSeries parse_series(const Json& doc);
DirichletSeries load_series(const std::string& path);

/// Rebinds a series to the space's frequency sequence; FrequencyMismatch if the values differ.
DirichletSeries bind_series(const SpaceHandle& space, const DirichletSeries& f);

Json to_json(Complex z);
Json to_json(const ConditionVerdict& v);

/**
 * Deterministic serialization: keys in insertion order, two-space indent,
 * reals as %.17g, non-finite reals as null, arrays of scalars on one line.
 */
std::string dump(const Json& doc);

}  // namespace dirichlet::io
