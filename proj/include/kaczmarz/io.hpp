#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kaczmarz/linalg.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

using json = nlohmann::json;

struct SweepSettings {
    std::vector<double> deltas{0.0, 0.05, 0.1, 0.2};
    int trials = 20;
};

/// Problem description read from a JSON config.
struct ProblemConfig {
    Field field = Field::real;
    Index dimension = 0;
    Extension extension = Extension::periodic;
    std::optional<std::vector<Vector>> e;
    std::optional<std::vector<Vector>> phi;
    std::optional<std::vector<Vector>> psi;  ///< defaults to phi
    std::optional<Vector> x;                 ///< drawn from the seed when absent
    std::optional<std::string> algorithm;
    Index steps = 100;
    double tolerance = default_tolerance;            ///< convergence threshold on |x - x_n|
    double diagnostic_tolerance = 1e-8;              ///< defect thresholds in diagnose
    std::optional<Index> section;                    ///< K for finite-section diagnostics
    std::uint64_t seed = 0;
    SweepSettings sweep;
};

/// Throws invalid_argument on schema violations.
ProblemConfig parse_config(const json& doc);
ProblemConfig load_config(const std::filesystem::path& path);

/// Canonical form: every field present, defaults filled in.
json to_json(const ProblemConfig& config);

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string config_hash(const ProblemConfig& config);

/// [[re], ...] for real vectors, [[re, im], ...] for complex ones.
json vector_to_json(const Vector& v);
/// Entries may be numbers, [re] or [re, im].
Vector vector_from_json(const json& doc, Field field, Index dim);
json matrix_to_json(const Matrix& a);

VectorSequence e_sequence(const ProblemConfig& config);
SequencePair config_pair(const ProblemConfig& config);
Vector target_vector(const ProblemConfig& config);

} // namespace kaczmarz
