#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "kaczmarz/commands.hpp"
#include "kaczmarz/io.hpp"

using namespace kaczmarz;
namespace fs = std::filesystem;

namespace {

const fs::path config_dir = KACZMARZ_CONFIG_DIR;

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("kaczmarz_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_count(const fs::path& path)
{
    const std::string text = slurp(path);
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& err) {
        return err.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::invalid_argument;
}

json minimal_classic()
{
    return json::parse(R"({"field": "real", "dimension": 2, "e": [[1, 0], [0, 1]], "x": [3, 4]})");
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + KACZMARZ_CLI + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Config, DefaultsFilledIn)
{
    const ProblemConfig c = parse_config(minimal_classic());
    EXPECT_EQ(c.field, Field::real);
    EXPECT_EQ(c.extension, Extension::periodic);
    EXPECT_EQ(c.steps, 100);
    EXPECT_EQ(c.seed, 0u);
    EXPECT_FALSE(c.psi.has_value());
    ASSERT_TRUE(c.x.has_value());
    EXPECT_EQ(default_algorithm(c), Algorithm::classic);
}

TEST(Config, ComplexEntries)
{
    const ProblemConfig c = parse_config(json::parse(
        R"({"field": "complex", "dimension": 2, "phi": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]})"));
    ASSERT_TRUE(c.phi.has_value());
    EXPECT_EQ((*c.phi)[0][1], Scalar(0, 1));
    const SequencePair pair = config_pair(c);
    EXPECT_EQ(pair.synthesis().term_at(0).values(), pair.analysis().term_at(0).values());
    EXPECT_EQ(default_algorithm(c), Algorithm::dual);
}

TEST(Config, SchemaViolations)
{
    const auto rejects = [](const std::function<void(json&)>& edit) {
        json doc = minimal_classic();
        edit(doc);
        return kind_of([&] { parse_config(doc); }) == ErrorKind::invalid_argument;
    };
    EXPECT_TRUE(rejects([](json& d) { d["unknown"] = 1; }));
    EXPECT_TRUE(rejects([](json& d) { d["phi"] = d["e"]; }));
    EXPECT_TRUE(rejects([](json& d) { d.erase("e"); }));
    EXPECT_TRUE(rejects([](json& d) { d["psi"] = d["e"]; }));
    EXPECT_TRUE(rejects([](json& d) { d["e"] = json::parse("[[1, 0, 0]]"); }));
    EXPECT_TRUE(rejects([](json& d) { d["e"] = json::parse("[[[1, 1], [0, 0]]]"); }));
    EXPECT_TRUE(rejects([](json& d) { d["tolerance"] = 0; }));
    EXPECT_TRUE(rejects([](json& d) { d["steps"] = 0; }));
    EXPECT_TRUE(rejects([](json& d) { d["seed"] = -3; }));
    EXPECT_TRUE(rejects([](json& d) { d["seed"] = 1.5; }));
    EXPECT_TRUE(rejects([](json& d) { d["field"] = "quaternion"; }));
    EXPECT_TRUE(rejects([](json& d) { d["x"] = json::parse("[1, 2, 3]"); }));
}

TEST(Config, CanonicalRoundTripAndHash)
{
    const ProblemConfig c = parse_config(minimal_classic());
    const ProblemConfig again = parse_config(to_json(c));
    EXPECT_EQ(to_json(again).dump(), to_json(c).dump());
    const std::string hash = config_hash(c);
    EXPECT_EQ(hash.size(), 16u);
    EXPECT_EQ(hash.find_first_not_of("0123456789abcdef"), std::string::npos);
    EXPECT_EQ(hash, config_hash(again));

    ProblemConfig other = c;
    other.seed = 99;
    EXPECT_NE(config_hash(other), hash);
}

TEST(Config, TargetDrawnFromSeed)
{
    json doc = minimal_classic();
    doc.erase("x");
    doc["seed"] = 5;
    const ProblemConfig c = parse_config(doc);
    EXPECT_EQ(target_vector(c).values(), target_vector(c).values());
    ProblemConfig d = c;
    d.seed = 6;
    EXPECT_NE(target_vector(c).values(), target_vector(d).values());
}

TEST(Config, VectorJson)
{
    const Vector v = Vector::complex({Scalar(1, 2), Scalar(3, 0)});
    EXPECT_EQ(vector_to_json(v).dump(), "[[1.0,2.0],[3.0,0.0]]");
    EXPECT_EQ(vector_from_json(vector_to_json(v), Field::complex, 2).values(), v.values());
    EXPECT_EQ(vector_to_json(Vector::real({1, 2})).dump(), "[[1.0],[2.0]]");
}

TEST(Algorithm, Names)
{
    EXPECT_EQ(parse_algorithm("augmented"), Algorithm::augmented);
    EXPECT_STREQ(to_string(Algorithm::dual), "dual");
    EXPECT_EQ(kind_of([] { parse_algorithm("gauss"); }), ErrorKind::invalid_argument);
}

TEST(ExitCodes, ByErrorKind)
{
    EXPECT_EQ(exit_code_for(ErrorKind::invalid_argument), exit_invalid);
    EXPECT_EQ(exit_code_for(ErrorKind::non_periodic), exit_invalid);
    EXPECT_EQ(exit_code_for(ErrorKind::span_deficiency), exit_invalid);
    EXPECT_EQ(exit_code_for(ErrorKind::singular), exit_numeric);
    EXPECT_EQ(exit_code_for(ErrorKind::not_almost_effective), exit_numeric);
    EXPECT_EQ(exit_code_for(ErrorKind::numerical_failure), exit_numeric);
}

TEST(CmdRun, WritesTraceAndVerdict)
{
    const fs::path dir = scratch("run");
    const ProblemConfig c = load_config(config_dir / "obs15_dual.json");
    std::ostringstream log;
    const RunArtifact art = cmd_run(c, Algorithm::dual, dir, log);
    EXPECT_EQ(art.exit_code, exit_ok);
    EXPECT_EQ(line_count(art.trace_csv), static_cast<int>(c.steps) + 1);
    const json verdict = json::parse(slurp(art.verdict_json));
    EXPECT_EQ(verdict["config_hash"], config_hash(c));
    EXPECT_EQ(verdict["algorithm"], "dual");
    EXPECT_TRUE(verdict["converged"].get<bool>());
    EXPECT_FALSE(art.augmented_csv.has_value());
    fs::remove_all(dir);
}

TEST(CmdRun, NegativeVerdictForReversedOrder)
{
    const fs::path dir = scratch("run_reversed");
    std::ostringstream log;
    const RunArtifact art = cmd_run(load_config(config_dir / "obs15_reversed.json"), Algorithm::dual, dir, log);
    EXPECT_EQ(art.exit_code, exit_negative);
    EXPECT_FALSE(json::parse(slurp(art.verdict_json))["converged"].get<bool>());
    fs::remove_all(dir);
}

TEST(CmdRun, AugmentedWritesExtraCsv)
{
    const fs::path dir = scratch("run_augmented");
    ProblemConfig c = parse_config(minimal_classic());
    c.steps = 10;
    std::ostringstream log;
    const RunArtifact art = cmd_run(c, Algorithm::augmented, dir, log);
    EXPECT_EQ(art.exit_code, exit_ok);
    ASSERT_TRUE(art.augmented_csv.has_value());
    EXPECT_EQ(line_count(*art.augmented_csv), 11);
    const json verdict = json::parse(slurp(art.verdict_json));
    EXPECT_TRUE(verdict.contains("h_lower_bound"));
    fs::remove_all(dir);
}

TEST(CmdRun, ExplicitSequenceTooShort)
{
    json doc = minimal_classic();
    doc["extension"] = "explicit";
    doc["steps"] = 5;
    const fs::path dir = scratch("run_short");
    std::ostringstream log;
    EXPECT_EQ(kind_of([&] { cmd_run(parse_config(doc), Algorithm::classic, dir, log); }),
              ErrorKind::invalid_argument);
    fs::remove_all(dir);
}

TEST(CmdDiagnose, Examples)
{
    const fs::path dir = scratch("diagnose");
    std::ostringstream log;
    EXPECT_EQ(cmd_diagnose(load_config(config_dir / "obs15_dual.json"), dir, log), exit_ok);
    const json report = json::parse(slurp(dir / "diagnose.json"));
    EXPECT_TRUE(report["pair_verdict"]["forward_effective"].get<bool>());
    EXPECT_FALSE(report["pair_verdict"]["reverse_effective"].get<bool>());
    EXPECT_TRUE(fs::exists(dir / "grammian.csv"));

    EXPECT_EQ(cmd_diagnose(load_config(config_dir / "obs15_reversed.json"), dir, log), exit_negative);

    EXPECT_EQ(cmd_diagnose(load_config(config_dir / "obs16_dual.json"), dir, log), exit_ok);
    const json terminating = json::parse(slurp(dir / "diagnose.json"));
    EXPECT_TRUE(terminating["pair_verdict"]["symmetric"].get<bool>());
    EXPECT_FALSE(terminating["recovered_operator"]["ok"].get<bool>());
    fs::remove_all(dir);
}

TEST(CmdReproduce, AllExamplesPass)
{
    for (const char* name : {"obs14", "obs15", "obs16", "obs17finite"}) {
        std::ostringstream report;
        EXPECT_EQ(cmd_reproduce(name, report), exit_ok) << report.str();
        EXPECT_EQ(report.str().find("FAIL"), std::string::npos);
        EXPECT_NE(report.str().find("PASS"), std::string::npos);
    }
    std::ostringstream report;
    EXPECT_EQ(kind_of([&] { cmd_reproduce("obs99", report); }), ErrorKind::invalid_argument);
}

TEST(CmdSweep, RowsAndOrdering)
{
    const fs::path dir = scratch("sweep");
    ProblemConfig c = load_config(config_dir / "sweep_base.json");
    c.sweep.deltas = {0.0, 0.1};
    c.sweep.trials = 3;
    std::ostringstream log;
    EXPECT_EQ(cmd_sweep(c, dir, log, 2), exit_ok);
    std::istringstream in(slurp(dir / "sweep.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "delta,trial,classic_radius,pair_radius");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 6);
    fs::remove_all(dir);
}

TEST(CmdSweep, RejectsBadBase)
{
    const fs::path dir = scratch("sweep_bad");
    std::ostringstream log;
    ProblemConfig c = load_config(config_dir / "obs15_dual.json");
    EXPECT_EQ(kind_of([&] { cmd_sweep(c, dir, log, 1); }), ErrorKind::invalid_argument);
    c = load_config(config_dir / "sweep_base.json");
    c.sweep.deltas = {-0.1};
    EXPECT_EQ(kind_of([&] { cmd_sweep(c, dir, log, 1); }), ErrorKind::invalid_argument);
    fs::remove_all(dir);
}

TEST(OutDir, EnvironmentFallback)
{
    const fs::path dir = fs::temp_directory_path() / "kaczmarz_unit_env" / "nested";
    fs::remove_all(dir.parent_path());
    ::setenv("KACZMARZ_OUT_DIR", dir.c_str(), 1);
    EXPECT_EQ(resolve_out_dir(std::nullopt), dir);
    EXPECT_TRUE(fs::is_directory(dir));
    const fs::path flag = dir / "flag";
    EXPECT_EQ(resolve_out_dir(flag.string()), flag);
    ::unsetenv("KACZMARZ_OUT_DIR");
    EXPECT_EQ(resolve_out_dir(std::nullopt), fs::path("."));
    fs::remove_all(dir.parent_path());
}

TEST(Binary, ExitCodes)
{
    const fs::path dir = scratch("binary");
    const std::string out = " --out \"" + dir.string() + "\"";
    EXPECT_EQ(run_cli("run --config \"" + (config_dir / "obs15_dual.json").string() + "\"" + out), 0);
    EXPECT_EQ(run_cli("run --config \"" + (config_dir / "obs15_reversed.json").string() + "\"" + out), 2);
    EXPECT_EQ(run_cli("reproduce obs16"), 0);

    std::ofstream(dir / "unknown_key.json") << R"({"field": "real", "dimension": 2, "e": [[1, 0]], "bogus": 1})";
    EXPECT_EQ(run_cli("run --config \"" + (dir / "unknown_key.json").string() + "\"" + out), 1);
    EXPECT_EQ(run_cli("run"), 1);
    EXPECT_EQ(run_cli("reproduce nothing"), 1);

    std::ofstream(dir / "flat.json") << R"({"field": "real", "dimension": 2, "e": [[1, 0]], "x": [1, 1], "steps": 5})";
    EXPECT_EQ(run_cli("run --algorithm augmented --config \"" + (dir / "flat.json").string() + "\"" + out), 3);
    fs::remove_all(dir);
}

} // namespace
