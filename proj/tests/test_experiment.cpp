#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccaa/experiment.hpp"

using namespace ccaa;
using namespace ccaa::experiment;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ccaa_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Manifest text minus the wall-clock line (the only timing-dependent output).
std::string manifest_without_timing(const fs::path& path) {
    std::istringstream in(slurp(path));
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("wall_clock_seconds", 0) != 0) out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("registry resolves every published problem id") {
    CHECK(problem_registry().size() == 33 + 5 + 10);
    CHECK(lookup_problem("F1").kind == "benchmark");
    CHECK(lookup_problem("pvd-gauge").kind == "engineering");
    CHECK(lookup_problem("iir-7").kind == "iir");
    CHECK_THROWS_AS(lookup_problem("F34"), std::invalid_argument);
    CHECK_THROWS_AS(lookup_problem(""), std::invalid_argument);
}

TEST_CASE("registry protocols follow the experiment settings") {
    const auto& gtd = lookup_problem("gtd");
    CHECK(gtd.smart_n == 5);
    CHECK(gtd.neighbor_n == 4);
    CHECK(gtd.budget == 200);
    CHECK(gtd.default_runs == 50);

    const auto& iir = lookup_problem("iir-3");
    CHECK(iir.smart_n == 20);
    CHECK(iir.neighbor_n == 5);
    CHECK(iir.iteration_n == 500);
    CHECK(iir.default_runs == 50);

    const auto& f1 = lookup_problem("F1");
    CHECK(f1.smart_n == 12);
    CHECK(f1.neighbor_n == 6);
    CHECK(f1.iteration_n == 500);
    CHECK(f1.default_runs == 30);
}

TEST_CASE("dimension override is rejected for fixed-dimension problems") {
    ExperimentConfig config;
    config.problem_id = "F24";
    config.dimension = 30;
    CHECK_THROWS_AS(resolve(config), std::invalid_argument);

    config.problem_id = "F1";
    CHECK(resolve(config).dimension == 30);
    config.dimension = 500;
    CHECK(resolve(config).dimension == 500);
}

TEST_CASE("experiment writes the full report file set") {
    const auto dir = fresh_dir("report_files");
    ExperimentConfig config;
    config.problem_id = "F26";
    config.runs = 4;
    config.master_seed = 11;
    config.workers = 2;
    const auto report = run_and_write(config, dir);

    REQUIRE(report.summary.has_value());
    CHECK(report.outcomes.size() == 4);
    CHECK(fs::exists(dir / "manifest.txt"));
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "runs.csv"));
    CHECK(fs::exists(dir / "best_positions.csv"));
    for (int i = 0; i < 4; ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "convergence_run%03d.csv", i);
        CHECK(fs::exists(dir / name));
    }

    // Convergence files: header + exactly iteration_n rows, monotone.
    const std::string trace = slurp(dir / "convergence_run000.csv");
    std::istringstream in(trace);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iteration,best_fitness");
    double previous = std::numeric_limits<double>::infinity();
    int rows = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double value = std::stod(line.substr(comma + 1));
        CHECK(value <= previous);
        previous = value;
        ++rows;
    }
    CHECK(rows == report.resolved.config.iteration_n);
}

TEST_CASE("reports are byte-identical across invocations, timing aside") {
    ExperimentConfig config;
    config.problem_id = "F27";
    config.runs = 1;
    config.master_seed = 21;

    const auto dir_a = fresh_dir("repro_a");
    const auto dir_b = fresh_dir("repro_b");
    run_and_write(config, dir_a);
    run_and_write(config, dir_b);

    CHECK(manifest_without_timing(dir_a / "manifest.txt") ==
          manifest_without_timing(dir_b / "manifest.txt"));
    for (const char* name :
         {"summary.csv", "runs.csv", "best_positions.csv", "convergence_run000.csv"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}

TEST_CASE("manifest round-trip reproduces per-run results") {
    const auto dir = fresh_dir("roundtrip");
    ExperimentConfig config;
    config.problem_id = "iir-6";
    config.runs = 3;
    config.iteration_n = 60;
    config.master_seed = 5;
    const auto first = run_and_write(config, dir);

    const auto reloaded = read_manifest(dir / "manifest.txt");
    const auto second = run_experiment(reloaded);

    REQUIRE(second.outcomes.size() == first.outcomes.size());
    for (std::size_t i = 0; i < first.outcomes.size(); ++i) {
        CHECK(second.outcomes[i].seed == first.outcomes[i].seed);
        CHECK(second.outcomes[i].record.best_fitness ==
              first.outcomes[i].record.best_fitness);
    }
}

TEST_CASE("worker count does not change the results") {
    ExperimentConfig config;
    config.problem_id = "F29";
    config.runs = 6;
    config.master_seed = 33;
    config.workers = 1;
    const auto serial = run_experiment(config);
    config.workers = 6;
    const auto parallel = run_experiment(config);
    for (std::size_t i = 0; i < serial.outcomes.size(); ++i)
        CHECK(serial.outcomes[i].record.best_fitness ==
              parallel.outcomes[i].record.best_fitness);
}

TEST_CASE("budgeted problems respect their evaluation cap") {
    ExperimentConfig config;
    config.problem_id = "gtd";
    config.runs = 5;
    config.master_seed = 3;
    const auto report = run_experiment(config);
    for (const auto& outcome : report.outcomes) {
        REQUIRE(outcome.ok);
        CHECK(outcome.record.evaluations_used <= 200);
        CHECK(outcome.reported_design.size() == 4);
        for (double v : outcome.reported_design) CHECK(v == std::floor(v));
    }
}

TEST_CASE("failing objectives are excluded from the summary") {
    // F9's noise keeps results positive; simulate failure with a problem id
    // that cannot resolve instead: resolution itself must throw.
    ExperimentConfig config;
    config.problem_id = "does-not-exist";
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("comparison: a report against itself is all ties") {
    const auto dir = fresh_dir("self_cmp");
    ExperimentConfig config;
    config.problem_id = "F26";
    config.runs = 8;
    config.master_seed = 19;
    run_and_write(config, dir);

    const auto data = load_report_data(dir, "self");
    const auto table = compare_reports({data, data}, 0);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].ranks == std::vector<int>{1, 1});
    CHECK(table.rows[0].verdicts[1] == stats::RankSumVerdict::approx);
    CHECK(table.wilcoxon_net[1] == 0);
}

TEST_CASE("comparison: a dominating reference sweeps the verdicts") {
    ReportData strong{"strong", {}};
    ReportData weak{"weak", {}};
    for (const char* problem : {"P1", "P2", "P3"}) {
        ProblemSample s1{problem, std::vector<double>(12, 0.0)};
        ProblemSample s2{problem, std::vector<double>(12, 1.0)};
        strong.problems.push_back(s1);
        weak.problems.push_back(s2);
    }
    const auto table = compare_reports({strong, weak}, 0);
    CHECK(table.wilcoxon_net[1] == 3);
    CHECK(table.average_ranks[0] == 1.0);
    CHECK(table.overall_ranks == std::vector<int>{1, 2});
    for (const auto& row : table.rows)
        CHECK(row.verdicts[1] == stats::RankSumVerdict::plus);
}

TEST_CASE("comparison rejects mismatched problem sets") {
    ReportData a{"a", {{"P1", {1.0, 2.0}}}};
    ReportData b{"b", {{"P2", {1.0, 2.0}}}};
    CHECK_THROWS_AS(compare_reports({a, b}, 0), std::invalid_argument);
    CHECK_THROWS_AS(compare_reports({a}, 0), std::invalid_argument);
}

TEST_CASE("comparison loads multi-problem report trees") {
    const auto parent = fresh_dir("tree");
    for (const char* id : {"F26", "F27"}) {
        ExperimentConfig config;
        config.problem_id = id;
        config.runs = 5;
        config.master_seed = 4;
        run_and_write(config, parent / id);
    }
    const auto data = load_report_data(parent, "tree");
    REQUIRE(data.problems.size() == 2);
    CHECK(data.problems[0].problem == "F26");
    CHECK(data.problems[1].problem == "F27");
    CHECK(data.problems[0].final_bests.size() == 5);

    const auto table = compare_reports({data, data});
    const auto csv_path = parent / "cmp.csv";
    write_comparison_csv(table, csv_path);
    CHECK(slurp(csv_path).rfind("problem,", 0) == 0);
    CHECK(!format_comparison(table).empty());
}
