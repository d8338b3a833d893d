#include "kaczmarz/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "kaczmarz/classic.hpp"
#include "kaczmarz/constructors.hpp"
#include "kaczmarz/dual.hpp"
#include "kaczmarz/fixtures.hpp"
#include "kaczmarz/frames.hpp"
#include "kaczmarz/random.hpp"

namespace kaczmarz {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::non_periodic:
    case ErrorKind::hypothesis_violation:
    case ErrorKind::span_deficiency:
        return exit_invalid;
    case ErrorKind::not_hermitian:
    case ErrorKind::not_positive:
    case ErrorKind::singular:
    case ErrorKind::grammian_not_positive:
    case ErrorKind::not_almost_effective:
    case ErrorKind::oracle_disagreement:
    case ErrorKind::numerical_failure:
        return exit_numeric;
    }
    return exit_numeric;
}

Algorithm parse_algorithm(const std::string& name)
{
    if (name == "classic") return Algorithm::classic;
    if (name == "dual") return Algorithm::dual;
    if (name == "augmented") return Algorithm::augmented;
    throw Error(ErrorKind::invalid_argument, "unknown algorithm \"" + name + "\"");
}

const char* to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::classic: return "classic";
    case Algorithm::dual: return "dual";
    case Algorithm::augmented: return "augmented";
    }
    return "classic";
}

Algorithm default_algorithm(const ProblemConfig& config)
{
    if (config.algorithm) return parse_algorithm(*config.algorithm);
    return config.e ? Algorithm::classic : Algorithm::dual;
}

fs::path resolve_out_dir(const std::optional<std::string>& flag)
{
    fs::path dir = ".";
    if (flag) {
        dir = *flag;
    } else if (const char* env = std::getenv("KACZMARZ_OUT_DIR"); env && *env) {
        dir = env;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::invalid_argument, "cannot create output directory " + dir.string());
    return dir;
}

namespace {

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path.string());
    return out;
}

void write_json(const fs::path& path, const json& doc)
{
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
}

json number_or_null(double value)
{
    return std::isfinite(value) ? json(value) : json(nullptr);
}

json validation_json(const ValidationReport& report)
{
    json doc;
    doc["normalization_ok"] = report.normalization.ok;
    doc["normalization_deviation"] = report.normalization.worst_deviation;
    if (report.unit_norms) {
        doc["unit_norms_ok"] = report.unit_norms->ok;
        doc["unit_norm_deviation"] = report.unit_norms->worst_deviation;
    }
    doc["linearly_dense"] = report.linearly_dense;
    doc["warnings"] = report.warnings;
    return doc;
}

json bounds_json(const FrameBounds& b, std::optional<double> tail)
{
    json doc = {{"section", b.section},
                {"lower", b.lower},
                {"upper", b.upper},
                {"parseval", b.parseval}};
    doc["tail"] = tail ? json(*tail) : json(nullptr);
    return doc;
}

json pair_verdict_json(const PairVerdict& v)
{
    return {{"forward_effective", v.forward_effective},
            {"reverse_effective", v.reverse_effective},
            {"symmetric", v.symmetric},
            {"forward_radius", v.forward_radius},
            {"reverse_radius", v.reverse_radius}};
}

json positivity_json(const GrammianPositivity& p)
{
    json doc = {{"positive", p.positive}};
    doc["failing_order"] = p.failing_order ? json(*p.failing_order) : json(nullptr);
    doc["witness"] = p.witness ? vector_to_json(*p.witness) : json(nullptr);
    return doc;
}

json isometry_json(Index size, const PartialIsometry& p)
{
    return {{"section", size},
            {"partial_isometry", p.partial_isometry},
            {"defect", number_or_null(p.defect)}};
}

json error_json(const Error& err)
{
    return {{"ok", false}, {"error", to_string(err.kind())}, {"message", err.what()}};
}

Index require_explicit_length(const SequencePair& pair, Index needed, const char* what)
{
    if (!pair.is_periodic() && needed > pair.length()) {
        throw Error(ErrorKind::invalid_argument,
                    std::string(what) + " needs " + std::to_string(needed) +
                        " terms but the explicit sequence has " + std::to_string(pair.length()));
    }
    return needed;
}

} // namespace

RunArtifact cmd_run(const ProblemConfig& config, Algorithm algorithm, const fs::path& out_dir,
                    std::ostream& log)
{
    const bool wants_e = algorithm != Algorithm::dual;
    if (wants_e != config.e.has_value()) {
        throw Error(ErrorKind::invalid_argument,
                    std::string("algorithm ") + to_string(algorithm) + " needs a config with \"" +
                        (wants_e ? "e" : "phi") + "\"");
    }
    const SequencePair pair = config_pair(config);
    require_explicit_length(pair, config.steps, "run");
    const Vector x = target_vector(config);

    json verdict;
    verdict["command"] = "run";
    verdict["algorithm"] = to_string(algorithm);
    verdict["config_hash"] = config_hash(config);
    verdict["seed"] = config.seed;
    verdict["steps"] = config.steps;
    verdict["tolerance"] = config.tolerance;
    verdict["x"] = vector_to_json(x);

    RunArtifact artifact;
    artifact.trace_csv = out_dir / "trace.csv";
    artifact.verdict_json = out_dir / "verdict.json";

    IterationTrace trace;
    switch (algorithm) {
    case Algorithm::classic: {
        verdict["validation"] = validation_json(validate(pair.analysis(), config.tolerance));
        trace = run_classic(pair.analysis(), x, config.steps, config.tolerance);
        break;
    }
    case Algorithm::dual: {
        verdict["validation"] =
            validation_json(validate(pair, ValidationMode::dual, config.tolerance));
        trace = run_dual(pair, x, config.steps, config.tolerance);
        break;
    }
    case Algorithm::augmented: {
        const VectorSequence& e = pair.analysis();
        verdict["validation"] = validation_json(validate(e, config.tolerance));
        Index k_default = e.is_periodic() ? 20 * e.length() : std::min(e.length(), 20 * e.dim());
        k_default = std::max(k_default, config.steps);
        const Index k = config.section.value_or(k_default);
        if (config.steps > k) {
            throw Error(ErrorKind::invalid_argument, "augmented run: steps exceed the section K");
        }
        require_explicit_length(pair, k, "augmented run");
        const AlmostEffectiveBound bound =
            almost_effective_bound(e, k, config.diagnostic_tolerance);
        const VectorSequence psi =
            synthesis_dual_from_almost_effective(e, k, config.diagnostic_tolerance);
        const AugmentedRun run = run_augmented(e, psi, x, config.steps, config.tolerance);
        verdict["section"] = k;
        verdict["h_lower_bound"] = bound.lower;
        verdict["limit_error_bound"] = bound.limit_bound;
        verdict["almost_effective"] = bound.almost_effective;
        verdict["max_identity_defect"] = run.max_identity_defect;
        verdict["classic_final_error"] = run.classic_trace.final_error;
        artifact.augmented_csv = out_dir / "augmented.csv";
        std::ofstream aug = open_output(*artifact.augmented_csv);
        write_augmented_csv(aug, run);
        trace = run.augmented_trace;
        break;
    }
    }

    if (!std::isfinite(trace.final_error)) {
        throw Error(ErrorKind::numerical_failure, "iteration overflowed");
    }
    verdict["converged"] = trace.converged;
    verdict["final_error"] = trace.final_error;
    {
        std::ofstream csv = open_output(artifact.trace_csv);
        write_trace_csv(csv, trace);
    }
    write_json(artifact.verdict_json, verdict);

    artifact.exit_code = trace.converged ? exit_ok : exit_negative;
    log << to_string(algorithm) << " run: " << config.steps << " steps, final error "
        << std::setprecision(6) << trace.final_error << (trace.converged ? " (converged)\n"
                                                                         : " (not converged)\n");
    return artifact;
}

int cmd_diagnose(const ProblemConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const SequencePair pair = config_pair(config);
    const bool classical = config.e.has_value();
    const bool periodic = pair.is_periodic();
    const Index m = pair.length();
    const Index k = require_explicit_length(
        pair, config.section.value_or(periodic ? 20 * m : m), "diagnose");
    const double tol = config.diagnostic_tolerance;
    OracleOptions options;
    options.seed = config.seed;

    json doc;
    doc["command"] = "diagnose";
    doc["config_hash"] = config_hash(config);
    doc["seed"] = config.seed;
    doc["section"] = k;
    doc["validation"] = validation_json(
        validate(pair, classical ? ValidationMode::classical : ValidationMode::dual, tol));

    std::optional<PairVerdict> verdict;
    if (periodic) {
        verdict = effective_pair_oracle(pair, options);
        doc["pair_verdict"] = pair_verdict_json(*verdict);
        if (classical) {
            const ClassicVerdict cv = periodic_effectiveness_oracle(pair.analysis());
            doc["classic_verdict"] = {{"effective", cv.effective},
                                      {"period_map_radius", cv.period_map_radius},
                                      {"reliable", cv.reliable}};
        }
    } else {
        doc["pair_verdict"] = nullptr;
    }

    const GrammianSection grammian = mixed_grammian(pair, k);
    doc["grammian"] = {
        {"synthesis_analysis", positivity_json(grammian_positive(grammian, tol))},
        {"analysis_synthesis",
         positivity_json(grammian_positive(
             mixed_grammian(pair, k, GrammianOrientation::analysis_synthesis), tol))}};

    doc["v_partial_isometry"] =
        isometry_json(m, partial_isometry_test(triangular_N_V(pair, m), tol));
    doc["v_partial_isometry_section_k"] =
        isometry_json(k, partial_isometry_test(triangular_N_V(pair, k), tol));

    const Index aux_count = periodic ? 2 * k : k;
    const AuxiliaryPair aux = auxiliary_pair(pair, aux_count);
    doc["auxiliary_frame_bounds"] = {
        {"g", bounds_json(frame_bounds(aux.g, k, tol), frame_tail(aux.g, k))},
        {"g_tilde", bounds_json(frame_bounds(aux.g_tilde, k, tol), frame_tail(aux.g_tilde, k))}};
    if (classical) {
        const AlmostEffectiveBound b = almost_effective_bound(pair.analysis(), k, tol);
        doc["almost_effective"] = {{"section", b.section},
                                   {"lower", b.lower},
                                   {"limit_bound", b.limit_bound},
                                   {"almost_effective", b.almost_effective}};
    }

    const Index span_section = periodic ? std::max(m, pair.dim()) : m;
    std::optional<RecoveredOperator> recovered;
    try {
        recovered = recover_T(pair, span_section, tol);
        doc["recovered_operator"] = {{"ok", true},
                                     {"t", matrix_to_json(recovered->t)},
                                     {"hermitian_defect", recovered->hermitian_defect},
                                     {"psd_min_eig", recovered->psd_min_eig},
                                     {"mapping_defect", recovered->mapping_defect}};
    } catch (const Error& err) {
        if (exit_code_for(err.kind()) == exit_numeric &&
            err.kind() != ErrorKind::grammian_not_positive) {
            throw;
        }
        doc["recovered_operator"] = error_json(err);
    }

    doc["equivalence"] = nullptr;
    if (recovered && periodic) {
        try {
            const EquivalenceReport r = equivalence_report(pair, recovered->t, k, tol, options);
            doc["equivalence"] = {
                {"ok", true},
                {"section", r.section},
                {"v_partial_isometry", r.v_partial_isometry.partial_isometry},
                {"v_defect", number_or_null(r.v_partial_isometry.defect)},
                {"canonical_duals", r.canonical_duals},
                {"canonical_dual_defect", number_or_null(r.canonical_dual_defect)},
                {"symmetric_pair", r.symmetric_pair},
                {"t_consistent", r.t_consistent},
                {"t_defect", number_or_null(r.t_defect)}};
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::hypothesis_violation) throw;
            doc["equivalence"] = error_json(err);
        }
    }

    {
        std::ofstream csv = open_output(out_dir / "grammian.csv");
        write_grammian_csv(csv, grammian);
    }
    write_json(out_dir / "diagnose.json", doc);

    const bool negative = verdict && !verdict->forward_effective;
    log << "diagnose: section " << k;
    if (verdict) {
        log << ", forward " << (verdict->forward_effective ? "effective" : "not effective")
            << ", reverse " << (verdict->reverse_effective ? "effective" : "not effective");
    }
    log << '\n';
    return negative ? exit_negative : exit_ok;
}

namespace {

class Checklist {
public:
    explicit Checklist(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, double measured)
    {
        out_ << (ok ? "PASS " : "FAIL ") << name << " (" << std::setprecision(3) << measured
             << ")\n";
        if (!ok) ++failures_;
    }

    int exit_code() const { return failures_ == 0 ? exit_ok : exit_negative; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

constexpr double reproduce_tol = 1e-10;

void reproduce_obs14(Checklist& list)
{
    double worst = 0.0;
    for (Index n = 1; n <= 8; ++n) {
        const SequencePair pair = fixtures::negated_basis_pair(n);
        Rng rng(derive_seed(14, static_cast<std::uint64_t>(n)));
        for (int t = 0; t < 20; ++t) {
            const Vector x = random_vector(rng, Field::real, n);
            const IterationTrace trace = run_dual(pair, x, n);
            worst = std::max(worst, (trace.iterates.back() + x).norm() / (1.0 + x.norm()));
        }
    }
    list.check("one pass reproduces -x, N = 1..8", worst <= reproduce_tol, worst);

    const SequencePair pair = fixtures::negated_basis_pair(3);
    const ValidationReport report = validate(pair, ValidationMode::dual);
    list.check("normalization flagged with deviation 2",
               !report.normalization.ok && std::abs(report.normalization.worst_deviation - 2.0) <= reproduce_tol,
               report.normalization.worst_deviation);
    const PairVerdict verdict = effective_pair_oracle(pair);
    list.check("pair is not effective", !verdict.forward_effective, verdict.forward_radius);
}

void reproduce_obs15(Checklist& list)
{
    const SequencePair pair = fixtures::nonsymmetric_pair();
    const Vector x = Vector::real({3, 4});
    const IterationTrace fwd = run_dual(pair, x, 63);
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double b = 4.0 / std::ldexp(1.0, k);
        const Vector expected[3] = {b * Vector::real({1, 1}), b * Vector::real({-1, 1}),
                                    (b / 2) * Vector::real({1, 1})};
        for (int r = 0; r < 3; ++r) {
            const Vector eps = x - fwd.iterates[static_cast<std::size_t>(3 * k + r)];
            worst = std::max(worst, (eps - expected[r]).norm());
        }
    }
    list.check("forward errors follow the halving formulas, k <= 20", worst <= reproduce_tol, worst);

    const Vector y = Vector::real({0, 4});
    const IterationTrace rev = run_dual(pair.reversed(), y, 90);
    const Vector cycle[3] = {Vector::real({0, 4}), Vector::real({0, 4}), Vector::real({1, 3})};
    worst = 0.0;
    for (std::size_t n = 0; n < 90; ++n) {
        worst = std::max(worst, (y - rev.iterates[n] - cycle[n % 3]).norm());
    }
    list.check("reverse errors cycle (0,4), (0,4), (1,3) for 30 periods", worst <= reproduce_tol,
               worst);

    const PairVerdict verdict = effective_pair_oracle(pair);
    list.check("forward effective", verdict.forward_effective, verdict.forward_radius);
    list.check("reverse not effective, radius 1",
               !verdict.reverse_effective && std::abs(verdict.reverse_radius - 1.0) <= 1e-9,
               verdict.reverse_radius);
}

void reproduce_obs16(Checklist& list)
{
    const SequencePair pair = fixtures::non_positive_grammian_pair();
    double worst = 0.0;
    Rng rng(16);
    for (int t = 0; t < 5; ++t) {
        const Vector x = t == 0 ? Vector::real({3, 4}) : random_vector(rng, Field::real, 2);
        const IterationTrace trace = run_dual(pair, x, 31);
        for (std::size_t n = 3; n <= 30; ++n) {
            worst = std::max(worst, (x - trace.iterates[n]).norm());
        }
    }
    list.check("errors vanish for 3 <= k <= 30", worst <= reproduce_tol, worst);

    const GrammianSection g = mixed_grammian(pair, 3, GrammianOrientation::analysis_synthesis);
    const GrammianPositivity pos = grammian_positive(g);
    double form = 0.0;
    if (pos.witness) {
        const Matrix block = g.entries.block(*pos.failing_order, *pos.failing_order);
        form = inner_product(block * *pos.witness, *pos.witness).real();
    }
    list.check("3x3 Grammian not positive, witness form negative",
               !pos.positive && pos.witness && form < 0.0, form);

    const PartialIsometry v = partial_isometry_test(triangular_N_V(pair, 3));
    list.check("V section is a partial isometry", v.partial_isometry && v.defect <= 1e-12, v.defect);

    bool refused = false;
    try {
        recover_T(pair, 3);
    } catch (const Error& err) {
        refused = err.kind() == ErrorKind::grammian_not_positive;
    }
    list.check("no positive T maps phi to psi", refused, 0.0);

    const PairVerdict verdict = effective_pair_oracle(pair);
    list.check("symmetric effective pair", verdict.symmetric,
               std::max(verdict.forward_radius, verdict.reverse_radius));
}

void reproduce_obs17finite(Checklist& list)
{
    std::vector<SequencePair> pairs{fixtures::biorthogonal_plane_pair()};
    Rng rng(17);
    for (Index dim = 2; dim <= 6; ++dim) {
        const Matrix basis = random_invertible(rng, Field::real, dim, 10.0);
        std::vector<Vector> columns;
        for (Index c = 0; c < dim; ++c) columns.push_back(basis.column(c));
        pairs.push_back(biorthogonal_pair(VectorSequence::finite(columns)));
    }
    double worst = 0.0;
    double worst_g = 0.0;
    for (const SequencePair& pair : pairs) {
        for (int t = 0; t < 5; ++t) {
            const Vector x = random_vector(rng, Field::real, pair.dim());
            const IterationTrace trace = run_dual(pair, x, pair.length());
            worst = std::max(worst, trace.final_error / (1.0 + x.norm()));
        }
        const AuxiliaryPair aux = auxiliary_pair(pair, pair.length());
        for (Index n = 0; n < pair.length(); ++n) {
            worst_g = std::max(worst_g, (aux.g.term_at(n) - pair.analysis().term_at(n)).norm());
        }
    }
    list.check("dual pass over a basis and its dual basis is exact", worst <= reproduce_tol, worst);
    list.check("auxiliary g equals the basis", worst_g <= reproduce_tol, worst_g);
}

} // namespace

int cmd_reproduce(const std::string& example, std::ostream& report)
{
    Checklist list(report);
    if (example == "obs14") {
        reproduce_obs14(list);
    } else if (example == "obs15") {
        reproduce_obs15(list);
    } else if (example == "obs16") {
        reproduce_obs16(list);
    } else if (example == "obs17finite") {
        reproduce_obs17finite(list);
    } else {
        throw Error(ErrorKind::invalid_argument,
                    "unknown example \"" + example + "\" (obs14, obs15, obs16, obs17finite)");
    }
    return list.exit_code();
}

namespace {

struct SweepRow {
    double delta = 0.0;
    int trial = 0;
    double classic_radius = 0.0;
    double pair_radius = 0.0;
};

SweepRow sweep_trial(const VectorSequence& e, double delta, int trial, std::uint64_t seed)
{
    Rng rng(seed);
    const Index dim = e.dim();
    std::vector<Vector> perturbed;
    for (Index n = 0; n < e.length(); ++n) {
        const Vector v = e.term_at(n) + delta * random_unit_vector(rng, e.field(), dim);
        perturbed.push_back((1.0 / v.norm()) * v);
    }
    const VectorSequence near = VectorSequence::periodic(perturbed);

    SweepRow row{delta, trial, periodic_effectiveness_oracle(near).period_map_radius, 0.0};
    // T maps e_n to the perturbed vectors; e is orthonormal so E^{-1} = E*.
    const Matrix t = near.generator_matrix() * e.generator_matrix().adjoint();
    try {
        row.pair_radius = pair_radius(pair_from_effective(e, t));
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::singular) throw;
        row.pair_radius = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

} // namespace

int cmd_sweep(const ProblemConfig& base, const fs::path& out_dir, std::ostream& log,
              unsigned workers)
{
    if (!base.e || base.extension != Extension::periodic) {
        throw Error(ErrorKind::invalid_argument, "sweep needs a periodic \"e\" sequence");
    }
    const VectorSequence e = e_sequence(base);
    if (e.length() != e.dim()) {
        throw Error(ErrorKind::invalid_argument, "sweep needs an orthonormal basis as \"e\"");
    }
    const CMatrix gram = e.generator_matrix().values().adjoint() * e.generator_matrix().values();
    if ((gram - CMatrix::Identity(e.dim(), e.dim())).norm() > 1e-8) {
        throw Error(ErrorKind::invalid_argument, "sweep base \"e\" is not orthonormal");
    }
    const SweepSettings& grid = base.sweep;
    if (grid.deltas.empty() || grid.trials < 1) {
        throw Error(ErrorKind::invalid_argument, "sweep grid needs deltas and trials >= 1");
    }
    for (double d : grid.deltas) {
        if (!std::isfinite(d) || d < 0.0) {
            throw Error(ErrorKind::invalid_argument, "sweep deltas must be finite and >= 0");
        }
    }

    const std::size_t trials = static_cast<std::size_t>(grid.trials);
    const std::size_t total = grid.deltas.size() * trials;
    std::vector<SweepRow> rows(total);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(total);
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t d = i / trials;
            const int trial = static_cast<int>(i % trials);
            const std::uint64_t seed = derive_seed(derive_seed(base.seed, 1000 + d), trial);
            try {
                rows[i] = sweep_trial(e, grid.deltas[d], trial, seed);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    std::ofstream csv = open_output(out_dir / "sweep.csv");
    csv << "delta,trial,classic_radius,pair_radius\n" << std::setprecision(17);
    for (const SweepRow& row : rows) {
        csv << row.delta << ',' << row.trial << ',' << row.classic_radius << ','
            << row.pair_radius << '\n';
    }
    log << "sweep: " << grid.deltas.size() << " deltas x " << trials << " trials\n";
    return exit_ok;
}

} // namespace kaczmarz
