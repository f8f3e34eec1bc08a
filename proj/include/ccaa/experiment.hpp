#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ccaa/benchmarks.hpp"
#include "ccaa/core.hpp"
#include "ccaa/engineering.hpp"
#include "ccaa/iir.hpp"
#include "ccaa/optimizer.hpp"
#include "ccaa/stats.hpp"

namespace ccaa::experiment {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// One resolvable problem id with its experiment protocol defaults.
struct RegistryEntry {
    std::string id;
    std::string kind;  // benchmark | engineering | iir
    bool scalable = false;
    std::size_t default_dimension = 0;
    int smart_n = 12;
    int neighbor_n = 6;
    int iteration_n = 500;
    std::optional<std::uint64_t> budget;
    int default_runs = 30;
    // The RNG feeds per-run problem construction (the identification
    // problems draw a fresh excitation per run); other kinds ignore it.
    std::function<Problem(std::size_t dimension, SplitMix64& rng)> factory;
};

inline const std::vector<RegistryEntry>& problem_registry() {
    static const std::vector<RegistryEntry> registry = [] {
        std::vector<RegistryEntry> entries;
        for (int id = benchmarks::first_id; id <= benchmarks::last_id; ++id) {
            const auto spec = benchmarks::spec_of(id);
            RegistryEntry e;
            e.id = "F" + std::to_string(id);
            e.kind = "benchmark";
            e.scalable = spec.scalable;
            e.default_dimension = spec.dimension;
            e.default_runs = 30;
            e.factory = [id](std::size_t dim, SplitMix64&) {
                return benchmarks::make_problem(id, dim);
            };
            entries.push_back(std::move(e));
        }
        for (const char* id : {"gtd", "pvd", "pvd-gauge", "wbd", "cbd"}) {
            const auto protocol = engineering::protocol_of(id);
            RegistryEntry e;
            e.id = id;
            e.kind = "engineering";
            e.default_dimension = engineering::make_by_id(id).bounds.dimension();
            e.smart_n = protocol.smart_n;
            e.neighbor_n = protocol.neighbor_n;
            e.iteration_n = 1000000;  // the budget is the binding cap
            e.budget = protocol.budget;
            e.default_runs = protocol.runs;
            e.factory = [id = std::string(id)](std::size_t, SplitMix64&) {
                return engineering::make_by_id(id).as_problem();
            };
            entries.push_back(std::move(e));
        }
        for (int example = 1; example <= iir::example_count; ++example) {
            RegistryEntry e;
            e.id = "iir-" + std::to_string(example);
            e.kind = "iir";
            e.smart_n = 20;
            e.neighbor_n = 5;
            e.iteration_n = 500;
            e.default_runs = 50;
            e.factory = [example](std::size_t, SplitMix64& rng) {
                return iir::make_identification_problem(example, rng).as_problem();
            };
            e.default_dimension =
                iir::detail::plant_row(example).free_slots.size();
            entries.push_back(std::move(e));
        }
        return entries;
    }();
    return registry;
}

inline const RegistryEntry& lookup_problem(const std::string& id) {
    for (const auto& entry : problem_registry())
        if (entry.id == id) return entry;
    throw std::invalid_argument("unknown problem id: " + id);
}

/// A batch of independent runs of one problem. Unset fields fall back to the
/// registry protocol for the problem.
struct ExperimentConfig {
    std::string problem_id;
    std::optional<std::size_t> dimension;
    std::optional<int> runs;
    std::optional<int> smart_n;
    std::optional<int> neighbor_n;
    std::optional<int> iteration_n;
    std::optional<int> elitism_n;
    std::optional<std::uint64_t> budget;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency
};

/// Fully resolved batch parameters as executed.
struct ResolvedExperiment {
    std::string problem_id;
    std::size_t dimension = 0;
    int runs = 0;
    CcaaConfig config;
    std::optional<std::uint64_t> budget;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;
};

struct RunOutcome {
    int index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    RunRecord record;
    std::vector<double> reported_design;
};

struct ExperimentReport {
    ResolvedExperiment resolved;
    std::vector<RunOutcome> outcomes;
    std::optional<stats::SampleSummary> summary;  // over successful runs
    double wall_seconds = 0.0;
};

inline ResolvedExperiment resolve(const ExperimentConfig& config) {
    const RegistryEntry& entry = lookup_problem(config.problem_id);
    if (config.dimension && !entry.scalable &&
        *config.dimension != entry.default_dimension)
        throw std::invalid_argument(entry.id + " has fixed dimension " +
                                    std::to_string(entry.default_dimension));

    ResolvedExperiment r;
    r.problem_id = entry.id;
    r.dimension = config.dimension.value_or(entry.default_dimension);
    r.runs = config.runs.value_or(entry.default_runs);
    if (r.runs < 1) throw std::invalid_argument("runs must be >= 1");
    r.config.smart_n = config.smart_n.value_or(entry.smart_n);
    r.config.neighbor_n = config.neighbor_n.value_or(entry.neighbor_n);
    r.config.iteration_n = config.iteration_n.value_or(entry.iteration_n);
    if (config.elitism_n) r.config.elitism_n = *config.elitism_n;
    r.budget = config.budget ? config.budget : entry.budget;
    r.master_seed = config.master_seed;
    r.workers = config.workers;
    r.config.validate();
    return r;
}

/// Per-run seeds are derived from the master seed; stream 1 builds the
/// problem instance, stream 2 drives the optimizer.
inline RunOutcome execute_run(const ResolvedExperiment& resolved, int run_index) {
    const RegistryEntry& entry = lookup_problem(resolved.problem_id);
    RunOutcome outcome;
    outcome.index = run_index;
    outcome.seed = derive_seed(resolved.master_seed,
                               static_cast<std::uint64_t>(run_index));
    try {
        SplitMix64 problem_rng(derive_seed(outcome.seed, 1));
        const Problem problem = entry.factory(resolved.dimension, problem_rng);
        CcaaConfig config = resolved.config;
        config.seed = derive_seed(outcome.seed, 2);
        outcome.record = resolved.budget
                             ? ccaa_run_budgeted(problem, config, *resolved.budget)
                             : ccaa_run(problem, config);
        outcome.reported_design =
            problem.report_design ? problem.report_design(outcome.record.best_position)
                                  : outcome.record.best_position;
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.error = e.what();
    }
    return outcome;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    report.resolved = resolve(config);

    const auto started = std::chrono::steady_clock::now();
    const int runs = report.resolved.runs;
    report.outcomes.resize(static_cast<std::size_t>(runs));

    unsigned workers = report.resolved.workers;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(runs));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < runs; i = next.fetch_add(1))
            report.outcomes[static_cast<std::size_t>(i)] =
                execute_run(report.resolved, i);
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<double> finals;
    for (const auto& outcome : report.outcomes)
        if (outcome.ok) finals.push_back(outcome.record.best_fitness);
    if (!finals.empty()) report.summary = stats::summarize(finals);

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    return report;
}

// ---------------------------------------------------------------------------
// Report files: manifest + summary + per-run records + convergence traces.

namespace detail {

inline void require_stream(const std::ofstream& out, const std::filesystem::path& p) {
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace detail

inline void write_report(const ExperimentReport& report,
                         const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const auto& r = report.resolved;

    {
        const auto path = dir / "manifest.txt";
        std::ofstream out(path);
        detail::require_stream(out, path);
        out << "problem = " << r.problem_id << "\n"
            << "dimension = " << r.dimension << "\n"
            << "runs = " << r.runs << "\n"
            << "smart_n = " << r.config.smart_n << "\n"
            << "neighbor_n = " << r.config.neighbor_n << "\n"
            << "iteration_n = " << r.config.iteration_n << "\n"
            << "elitism_n = " << r.config.elitism_n << "\n"
            << "lower_p = " << format_double(r.config.lower_p) << "\n"
            << "upper_p = " << format_double(r.config.upper_p) << "\n"
            << "dist_M = " << format_double(r.config.dist_M) << "\n"
            << "dist_m = " << format_double(r.config.dist_m) << "\n"
            << "lower_d = " << r.config.lower_d << "\n"
            << "upper_d = " << r.config.upper_d << "\n"
            << "budget = " << (r.budget ? std::to_string(*r.budget) : "none") << "\n"
            << "master_seed = " << r.master_seed << "\n";
        for (const auto& outcome : report.outcomes)
            out << "seed." << outcome.index << " = " << outcome.seed << "\n";
        out << "wall_clock_seconds = " << format_double(report.wall_seconds) << "\n";
    }
    {
        const auto path = dir / "summary.csv";
        std::ofstream out(path);
        detail::require_stream(out, path);
        out << "problem,dimension,runs,failed,best,worst,mean,median,std\n";
        std::size_t failed = 0;
        for (const auto& o : report.outcomes)
            if (!o.ok) ++failed;
        out << r.problem_id << ',' << r.dimension << ',' << r.runs << ',' << failed;
        if (report.summary) {
            const auto& s = *report.summary;
            out << ',' << format_double(s.best) << ',' << format_double(s.worst)
                << ',' << format_double(s.mean) << ',' << format_double(s.median)
                << ',' << format_double(s.std_dev) << "\n";
        } else {
            out << ",,,,,\n";
        }
    }
    {
        const auto path = dir / "runs.csv";
        std::ofstream out(path);
        detail::require_stream(out, path);
        out << "run,seed,status,best_fitness,evaluations\n";
        for (const auto& o : report.outcomes) {
            out << o.index << ',' << o.seed << ',' << (o.ok ? "ok" : "failed") << ',';
            if (o.ok)
                out << format_double(o.record.best_fitness) << ','
                    << o.record.evaluations_used;
            else
                out << ',';
            out << "\n";
        }
    }
    {
        const auto path = dir / "best_positions.csv";
        std::ofstream out(path);
        detail::require_stream(out, path);
        out << "run";
        for (std::size_t d = 0; d < r.dimension; ++d) out << ",x" << d;
        out << "\n";
        for (const auto& o : report.outcomes) {
            if (!o.ok) continue;
            out << o.index;
            for (double v : o.reported_design) out << ',' << format_double(v);
            out << "\n";
        }
    }
    for (const auto& o : report.outcomes) {
        if (!o.ok) continue;
        char name[48];
        std::snprintf(name, sizeof name, "convergence_run%03d.csv", o.index);
        const auto path = dir / name;
        std::ofstream out(path);
        detail::require_stream(out, path);
        out << "iteration,best_fitness\n";
        for (std::size_t t = 0; t < o.record.convergence.size(); ++t)
            out << (t + 1) << ',' << format_double(o.record.convergence[t]) << "\n";
    }
}

inline ExperimentReport run_and_write(const ExperimentConfig& config,
                                      const std::filesystem::path& dir) {
    ExperimentReport report = run_experiment(config);
    write_report(report, dir);
    return report;
}

/// Rebuilds the batch configuration from a manifest; re-running it reproduces
/// the per-run results exactly (seeds are derived, not stored state).
inline ExperimentConfig read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (!kv.count("problem")) throw std::runtime_error("manifest has no problem id");

    ExperimentConfig config;
    config.problem_id = kv.at("problem");
    auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end() || it->second.empty()) return std::nullopt;
        return it->second;
    };
    if (auto v = get("dimension")) config.dimension = std::stoul(*v);
    if (auto v = get("runs")) config.runs = std::stoi(*v);
    if (auto v = get("smart_n")) config.smart_n = std::stoi(*v);
    if (auto v = get("neighbor_n")) config.neighbor_n = std::stoi(*v);
    if (auto v = get("iteration_n")) config.iteration_n = std::stoi(*v);
    if (auto v = get("elitism_n")) config.elitism_n = std::stoi(*v);
    if (auto v = get("budget"); v && *v != "none") config.budget = std::stoull(*v);
    if (auto v = get("master_seed")) config.master_seed = std::stoull(*v);
    return config;
}

// ---------------------------------------------------------------------------
// Cross-report comparison (mean/std, dense ranks, rank-sum verdicts).

struct ProblemSample {
    std::string problem;
    std::vector<double> final_bests;
};

struct ReportData {
    std::string label;
    std::vector<ProblemSample> problems;  // sorted by problem id
};

/// Loads per-run final costs from a report directory, or from every
/// immediate subdirectory that holds a manifest when given a parent.
inline ReportData load_report_data(const std::filesystem::path& dir,
                                   std::string label = {}) {
    namespace fs = std::filesystem;
    ReportData data;
    data.label = label.empty() ? dir.filename().string() : std::move(label);

    auto load_one = [](const fs::path& report_dir) {
        const auto manifest = read_manifest(report_dir / "manifest.txt");
        ProblemSample sample;
        sample.problem = manifest.problem_id;
        std::ifstream in(report_dir / "runs.csv");
        if (!in) throw std::runtime_error("cannot read " + (report_dir / "runs.csv").string());
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string run, seed, status, best;
            std::getline(ss, run, ',');
            std::getline(ss, seed, ',');
            std::getline(ss, status, ',');
            std::getline(ss, best, ',');
            if (status == "ok") sample.final_bests.push_back(std::stod(best));
        }
        return sample;
    };

    if (fs::exists(dir / "manifest.txt")) {
        data.problems.push_back(load_one(dir));
        return data;
    }
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory() && fs::exists(entry.path() / "manifest.txt"))
            data.problems.push_back(load_one(entry.path()));
    if (data.problems.empty())
        throw std::invalid_argument("no experiment reports under " + dir.string());
    std::sort(data.problems.begin(), data.problems.end(),
              [](const ProblemSample& a, const ProblemSample& b) {
                  return a.problem < b.problem;
              });
    return data;
}

struct ComparisonRow {
    std::string problem;
    std::vector<double> means;
    std::vector<double> std_devs;
    std::vector<int> ranks;
    std::vector<stats::RankSumVerdict> verdicts;  // vs the reference report
};

struct ComparisonTable {
    std::vector<std::string> labels;
    std::size_t reference = 0;
    std::vector<ComparisonRow> rows;
    std::vector<double> average_ranks;
    std::vector<int> overall_ranks;
    std::vector<int> wilcoxon_net;  // per report: (#plus - #minus) for the reference
};

/// Compares >= 2 reports over an identical problem set; reports[reference]
/// is the side the rank-sum verdicts speak for.
inline ComparisonTable compare_reports(const std::vector<ReportData>& reports,
                                       std::size_t reference = 0) {
    if (reports.size() < 2)
        throw std::invalid_argument("compare_reports: need at least two reports");
    if (reference >= reports.size())
        throw std::invalid_argument("compare_reports: bad reference index");
    const std::size_t problems = reports.front().problems.size();
    for (const auto& report : reports) {
        if (report.problems.size() != problems)
            throw std::invalid_argument("compare_reports: mismatched problem sets");
        for (std::size_t p = 0; p < problems; ++p)
            if (report.problems[p].problem != reports.front().problems[p].problem)
                throw std::invalid_argument("compare_reports: mismatched problem sets");
    }

    ComparisonTable table;
    table.reference = reference;
    for (const auto& report : reports) table.labels.push_back(report.label);
    table.wilcoxon_net.assign(reports.size(), 0);

    std::vector<std::vector<double>> mean_matrix;
    for (std::size_t p = 0; p < problems; ++p) {
        ComparisonRow row;
        row.problem = reports.front().problems[p].problem;
        for (const auto& report : reports) {
            const auto summary = stats::summarize(report.problems[p].final_bests);
            row.means.push_back(summary.mean);
            row.std_devs.push_back(summary.std_dev);
        }
        for (std::size_t a = 0; a < reports.size(); ++a) {
            if (a == reference) {
                row.verdicts.push_back(stats::RankSumVerdict::approx);
                continue;
            }
            const auto result =
                stats::rank_sum_test(reports[reference].problems[p].final_bests,
                                     reports[a].problems[p].final_bests);
            row.verdicts.push_back(result.verdict);
            if (result.verdict == stats::RankSumVerdict::plus)
                ++table.wilcoxon_net[a];
            else if (result.verdict == stats::RankSumVerdict::minus)
                --table.wilcoxon_net[a];
        }
        mean_matrix.push_back(row.means);
        table.rows.push_back(std::move(row));
    }

    const auto ranking = stats::rank_table(mean_matrix);
    for (std::size_t p = 0; p < problems; ++p)
        table.rows[p].ranks = ranking.ranks[p];
    table.average_ranks = ranking.average_ranks;
    table.overall_ranks = ranking.overall_ranks;
    return table;
}

inline const char* verdict_symbol(stats::RankSumVerdict v) {
    switch (v) {
        case stats::RankSumVerdict::plus: return "+";
        case stats::RankSumVerdict::minus: return "-";
        case stats::RankSumVerdict::approx: return "~";
    }
    return "?";
}

inline void write_comparison_csv(const ComparisonTable& table,
                                 const std::filesystem::path& path) {
    std::ofstream out(path);
    detail::require_stream(out, path);
    out << "problem";
    for (const auto& label : table.labels)
        out << ',' << label << "_mean," << label << "_std," << label << "_rank,"
            << label << "_test";
    out << "\n";
    for (const auto& row : table.rows) {
        out << row.problem;
        for (std::size_t a = 0; a < table.labels.size(); ++a)
            out << ',' << format_double(row.means[a]) << ','
                << format_double(row.std_devs[a]) << ',' << row.ranks[a] << ','
                << verdict_symbol(row.verdicts[a]);
        out << "\n";
    }
    out << "average_rank";
    for (std::size_t a = 0; a < table.labels.size(); ++a)
        out << ",,," << format_double(table.average_ranks[a]) << ',';
    out << "\noverall_rank";
    for (std::size_t a = 0; a < table.labels.size(); ++a)
        out << ",,," << table.overall_ranks[a] << ',';
    out << "\n";
}

inline std::string format_comparison(const ComparisonTable& table) {
    std::ostringstream out;
    out << "reference: " << table.labels[table.reference] << "\n";
    char buf[64];
    out << "problem";
    for (const auto& label : table.labels) {
        std::snprintf(buf, sizeof buf, "  %20s mean/std rank t", label.c_str());
        out << buf;
    }
    out << "\n";
    for (const auto& row : table.rows) {
        std::snprintf(buf, sizeof buf, "%-8s", row.problem.c_str());
        out << buf;
        for (std::size_t a = 0; a < table.labels.size(); ++a) {
            std::snprintf(buf, sizeof buf, "  %12.4e/%9.2e %4d %s", row.means[a],
                          row.std_devs[a], row.ranks[a],
                          verdict_symbol(row.verdicts[a]));
            out << buf;
        }
        out << "\n";
    }
    out << "avg rank";
    for (std::size_t a = 0; a < table.labels.size(); ++a) {
        std::snprintf(buf, sizeof buf, "  %17.2f (net %+d)", table.average_ranks[a],
                      table.wilcoxon_net[a]);
        out << buf;
    }
    out << "\noverall ";
    for (std::size_t a = 0; a < table.labels.size(); ++a) {
        std::snprintf(buf, sizeof buf, "  %17d        ", table.overall_ranks[a]);
        out << buf;
    }
    out << "\n";
    return out.str();
}

}  // namespace ccaa::experiment
