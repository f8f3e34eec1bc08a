// Experiment runner for the CCAA optimizer: batch runs with convergence
// logging, report comparison, and the problem registry listing.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccaa/ccaa.hpp"

namespace {

int run_command(const std::string& problem, std::optional<std::size_t> dimension,
                std::optional<int> runs, std::optional<int> smart_n,
                std::optional<int> neighbor_n, std::optional<int> iteration_n,
                std::optional<int> elitism_n, std::optional<std::uint64_t> budget,
                std::uint64_t seed, unsigned workers,
                const std::string& manifest_path, std::string out_dir) {
    ccaa::experiment::ExperimentConfig config;
    if (!manifest_path.empty()) {
        config = ccaa::experiment::read_manifest(manifest_path);
    } else {
        config.problem_id = problem;
        config.master_seed = seed;
    }
    if (dimension) config.dimension = dimension;
    if (runs) config.runs = runs;
    if (smart_n) config.smart_n = smart_n;
    if (neighbor_n) config.neighbor_n = neighbor_n;
    if (iteration_n) config.iteration_n = iteration_n;
    if (elitism_n) config.elitism_n = elitism_n;
    if (budget) config.budget = budget;
    config.workers = workers;

    if (out_dir.empty()) out_dir = "ccaa_out/" + config.problem_id;
    const auto report = ccaa::experiment::run_and_write(config, out_dir);

    std::size_t failed = 0;
    for (const auto& outcome : report.outcomes) {
        if (!outcome.ok) {
            ++failed;
            std::cerr << "warning: run " << outcome.index << " failed: "
                      << outcome.error << "\n";
        }
    }
    std::cout << report.resolved.problem_id << " dim " << report.resolved.dimension
              << ", " << report.resolved.runs << " runs";
    if (failed) std::cout << " (" << failed << " failed)";
    if (report.summary) {
        const auto& s = *report.summary;
        char line[160];
        std::snprintf(line, sizeof line,
                      ": best %.6e  worst %.6e  mean %.6e  median %.6e  std %.6e",
                      s.best, s.worst, s.mean, s.median, s.std_dev);
        std::cout << line;
    }
    std::cout << "\nreport written to " << out_dir << "\n";
    return failed == report.outcomes.size() ? 1 : 0;
}

int compare_command(const std::vector<std::string>& dirs, const std::string& out_csv) {
    std::vector<ccaa::experiment::ReportData> reports;
    reports.reserve(dirs.size());
    for (const auto& dir : dirs)
        reports.push_back(ccaa::experiment::load_report_data(dir));
    const auto table = ccaa::experiment::compare_reports(reports, 0);
    std::cout << ccaa::experiment::format_comparison(table);
    if (!out_csv.empty()) {
        ccaa::experiment::write_comparison_csv(table, out_csv);
        std::cout << "comparison written to " << out_csv << "\n";
    }
    return 0;
}

int list_command() {
    for (const auto& entry : ccaa::experiment::problem_registry()) {
        std::printf("%-10s %-12s dim %-4zu %s", entry.id.c_str(), entry.kind.c_str(),
                    entry.default_dimension, entry.scalable ? "(scalable) " : "");
        std::printf("cells %d, neighbors %d, ", entry.smart_n, entry.neighbor_n);
        if (entry.budget)
            std::printf("budget %llu evals",
                        static_cast<unsigned long long>(*entry.budget));
        else
            std::printf("%d iterations", entry.iteration_n);
        std::printf(", %d runs\n", entry.default_runs);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-state cellular automata optimizer"};
    app.require_subcommand(1);

    std::string problem, out_dir, manifest_path, compare_csv;
    std::optional<std::size_t> dimension;
    std::optional<int> runs, smart_n, neighbor_n, iteration_n, elitism_n;
    std::optional<std::uint64_t> budget;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::vector<std::string> compare_dirs;

    auto* run = app.add_subcommand("run", "run a batch of independent optimizer runs");
    auto* problem_opt = run->add_option("-p,--problem", problem,
                                        "problem id (see list-problems)");
    run->add_option("--from-manifest", manifest_path,
                    "re-run the batch described by a manifest file")
        ->excludes(problem_opt);
    run->add_option("-d,--dim", dimension, "dimension (scalable benchmarks only)");
    run->add_option("-r,--runs", runs, "number of independent runs");
    run->add_option("--smart-n", smart_n, "population size");
    run->add_option("--neighbor-n", neighbor_n, "neighborhood size per cell");
    run->add_option("--iterations", iteration_n, "iteration count");
    run->add_option("--elitism", elitism_n, "cells carried unchanged");
    run->add_option("--budget", budget, "objective evaluation cap per run");
    run->add_option("-s,--seed", seed, "master seed (run i uses a derived seed)");
    run->add_option("-w,--workers", workers, "concurrent runs (0 = hardware)");
    run->add_option("-o,--out", out_dir, "output directory (default ccaa_out/<problem>)");

    auto* compare = app.add_subcommand(
        "compare", "compare reports; the first directory is the reference");
    compare->add_option("dirs", compare_dirs, "report directories")
        ->required()
        ->expected(2, -1);
    compare->add_option("-o,--out", compare_csv, "write the table as CSV");

    app.add_subcommand("list-problems", "list the problem registry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (problem.empty() && manifest_path.empty())
                throw CLI::RequiredError("--problem or --from-manifest");
            return run_command(problem, dimension, runs, smart_n, neighbor_n,
                               iteration_n, elitism_n, budget, seed, workers,
                               manifest_path, out_dir);
        }
        if (compare->parsed()) return compare_command(compare_dirs, compare_csv);
        return list_command();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
