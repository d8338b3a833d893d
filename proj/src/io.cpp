#include "kaczmarz/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "kaczmarz/random.hpp"

namespace kaczmarz {

namespace {

[[noreturn]] void bad_config(const std::string& what)
{
    throw Error(ErrorKind::invalid_argument, "config: " + what);
}

Field parse_field(const json& doc)
{
    const std::string name = doc.get<std::string>();
    if (name == "real") return Field::real;
    if (name == "complex") return Field::complex;
    bad_config("field must be \"real\" or \"complex\", got \"" + name + "\"");
}

Extension parse_extension(const json& doc)
{
    const std::string name = doc.get<std::string>();
    if (name == "periodic") return Extension::periodic;
    if (name == "explicit") return Extension::explicit_finite;
    bad_config("extension must be \"periodic\" or \"explicit\", got \"" + name + "\"");
}

std::vector<Vector> vector_list(const json& doc, const char* key, Field field, Index dim)
{
    if (!doc.is_array() || doc.empty()) {
        bad_config(std::string(key) + " must be a non-empty list of vectors");
    }
    std::vector<Vector> out;
    for (const json& item : doc) out.push_back(vector_from_json(item, field, dim));
    return out;
}

json list_to_json(const std::vector<Vector>& vectors)
{
    json out = json::array();
    for (const Vector& v : vectors) out.push_back(vector_to_json(v));
    return out;
}

template <typename T>
T get_number(const json& doc, const char* key)
{
    if (!doc.is_number()) bad_config(std::string(key) + " must be a number");
    return doc.get<T>();
}

} // namespace

json vector_to_json(const Vector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.dim(); ++i) {
        if (v.field() == Field::real) {
            out.push_back(json::array({v[i].real()}));
        } else {
            out.push_back(json::array({v[i].real(), v[i].imag()}));
        }
    }
    return out;
}

Vector vector_from_json(const json& doc, Field field, Index dim)
{
    if (!doc.is_array()) bad_config("a vector must be a JSON array");
    if (static_cast<Index>(doc.size()) != dim) {
        bad_config("vector of length " + std::to_string(doc.size()) + " in dimension " +
                   std::to_string(dim));
    }
    CVector values(dim);
    for (Index i = 0; i < dim; ++i) {
        const json& entry = doc[static_cast<std::size_t>(i)];
        double re = 0.0;
        double im = 0.0;
        if (entry.is_number()) {
            re = entry.get<double>();
        } else if (entry.is_array() && (entry.size() == 1 || entry.size() == 2) &&
                   entry[0].is_number() && (entry.size() == 1 || entry[1].is_number())) {
            re = entry[0].get<double>();
            if (entry.size() == 2) im = entry[1].get<double>();
        } else {
            bad_config("vector entries must be numbers, [re] or [re, im]");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) bad_config("non-finite vector entry");
        if (field == Field::real && im != 0.0) {
            bad_config("complex entry in a real-field config");
        }
        values[i] = Scalar(re, im);
    }
    return Vector(field, std::move(values));
}

json matrix_to_json(const Matrix& a)
{
    json out = json::array();
    for (Index r = 0; r < a.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < a.cols(); ++c) {
            if (a.field() == Field::real) {
                row.push_back(json::array({a(r, c).real()}));
            } else {
                row.push_back(json::array({a(r, c).real(), a(r, c).imag()}));
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

ProblemConfig parse_config(const json& doc)
{
    if (!doc.is_object()) bad_config("top level must be an object");
    static const char* const known[] = {"field", "dimension", "extension", "e", "phi", "psi",
                                        "x", "algorithm", "steps", "tolerance",
                                        "diagnostic_tolerance", "section", "seed", "sweep"};
    for (const auto& item : doc.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) bad_config("unknown key \"" + item.key() + "\"");
    }

    ProblemConfig config;
    try {
        if (doc.contains("field")) config.field = parse_field(doc.at("field"));
        if (!doc.contains("dimension")) bad_config("dimension is required");
        const long long dim = get_number<long long>(doc.at("dimension"), "dimension");
        if (dim < 1) bad_config("dimension must be positive");
        config.dimension = static_cast<Index>(dim);
        if (doc.contains("extension")) config.extension = parse_extension(doc.at("extension"));

        const bool has_e = doc.contains("e");
        const bool has_phi = doc.contains("phi");
        if (has_e == has_phi) bad_config("exactly one of \"e\" or \"phi\" must be given");
        if (has_e && doc.contains("psi")) bad_config("\"psi\" goes with \"phi\", not \"e\"");
        if (has_e) config.e = vector_list(doc.at("e"), "e", config.field, config.dimension);
        if (has_phi) {
            config.phi = vector_list(doc.at("phi"), "phi", config.field, config.dimension);
            if (doc.contains("psi")) {
                config.psi = vector_list(doc.at("psi"), "psi", config.field, config.dimension);
                if (config.psi->size() != config.phi->size()) {
                    bad_config("phi and psi must have the same number of vectors");
                }
            }
        }
        if (doc.contains("x")) config.x = vector_from_json(doc.at("x"), config.field, config.dimension);
        if (doc.contains("algorithm")) {
            const std::string name = doc.at("algorithm").get<std::string>();
            if (name != "classic" && name != "dual" && name != "augmented") {
                bad_config("algorithm must be classic, dual or augmented");
            }
            config.algorithm = name;
        }
        if (doc.contains("steps")) {
            const long long steps = get_number<long long>(doc.at("steps"), "steps");
            if (steps < 1) bad_config("steps must be >= 1");
            config.steps = static_cast<Index>(steps);
        }
        if (doc.contains("tolerance")) {
            config.tolerance = get_number<double>(doc.at("tolerance"), "tolerance");
            if (!(config.tolerance > 0.0)) bad_config("tolerance must be positive");
        }
        if (doc.contains("diagnostic_tolerance")) {
            config.diagnostic_tolerance =
                get_number<double>(doc.at("diagnostic_tolerance"), "diagnostic_tolerance");
            if (!(config.diagnostic_tolerance > 0.0)) bad_config("diagnostic_tolerance must be positive");
        }
        if (doc.contains("section")) {
            const long long k = get_number<long long>(doc.at("section"), "section");
            if (k < 1) bad_config("section must be >= 1");
            config.section = static_cast<Index>(k);
        }
        if (doc.contains("seed")) {
            const json& seed = doc.at("seed");
            if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
                bad_config("seed must be a non-negative integer");
            }
            config.seed = seed.get<std::uint64_t>();
        }
        if (doc.contains("sweep")) {
            const json& sweep = doc.at("sweep");
            if (!sweep.is_object()) bad_config("sweep must be an object");
            if (sweep.contains("deltas")) {
                config.sweep.deltas.clear();
                for (const json& d : sweep.at("deltas")) {
                    config.sweep.deltas.push_back(get_number<double>(d, "sweep.deltas"));
                }
            }
            if (sweep.contains("trials")) {
                config.sweep.trials = get_number<int>(sweep.at("trials"), "sweep.trials");
            }
        }
    } catch (const json::exception& err) {
        bad_config(err.what());
    }

    return config;
}

ProblemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw Error(ErrorKind::invalid_argument,
                    "config " + path.string() + " is not valid JSON: " + err.what());
    }
    return parse_config(doc);
}

json to_json(const ProblemConfig& config)
{
    json doc;
    doc["field"] = to_string(config.field);
    doc["dimension"] = config.dimension;
    doc["extension"] = to_string(config.extension);
    if (config.e) doc["e"] = list_to_json(*config.e);
    if (config.phi) doc["phi"] = list_to_json(*config.phi);
    if (config.psi) doc["psi"] = list_to_json(*config.psi);
    if (config.x) doc["x"] = vector_to_json(*config.x);
    if (config.algorithm) doc["algorithm"] = *config.algorithm;
    doc["steps"] = config.steps;
    doc["tolerance"] = config.tolerance;
    doc["diagnostic_tolerance"] = config.diagnostic_tolerance;
    if (config.section) doc["section"] = *config.section;
    doc["seed"] = config.seed;
    doc["sweep"] = {{"deltas", config.sweep.deltas}, {"trials", config.sweep.trials}};
    return doc;
}

std::string config_hash(const ProblemConfig& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : to_json(config).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

VectorSequence e_sequence(const ProblemConfig& config)
{
    if (!config.e) throw Error(ErrorKind::invalid_argument, "config has no \"e\" sequence");
    return VectorSequence(*config.e, config.extension);
}

SequencePair config_pair(const ProblemConfig& config)
{
    if (config.e) return SequencePair::symmetric(e_sequence(config));
    const VectorSequence phi(*config.phi, config.extension);
    if (!config.psi) return SequencePair(phi, phi);
    return SequencePair(phi, VectorSequence(*config.psi, config.extension));
}

Vector target_vector(const ProblemConfig& config)
{
    if (config.x) return *config.x;
    Rng rng(derive_seed(config.seed, 0));
    return random_vector(rng, config.field, config.dimension);
}

} // namespace kaczmarz
