#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ccaa/core.hpp"
#include "ccaa/rules.hpp"

namespace ccaa {

/// Outcome of one optimizer run. convergence[t] is the best cost after
/// iteration t+1 (the initial population counts as iteration 1), so it is
/// monotone non-increasing and ends at best_fitness.
struct RunRecord {
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::vector<double> convergence;
    std::uint64_t evaluations_used = 0;
};

namespace detail {

struct NoObserver {
    void operator()(int /*iteration*/, const Population& /*population*/) const {}
};

template <class Observer>
RunRecord run_loop(const Problem& problem, const CcaaConfig& config,
                   std::optional<std::uint64_t> max_evaluations,
                   Observer&& observe) {
    config.validate();
    problem.validate();
    if (max_evaluations && *max_evaluations < static_cast<std::uint64_t>(config.smart_n))
        throw std::invalid_argument("budget must cover the initial population");

    SplitMix64 rng(config.seed);
    Population pop = random_init_population(config, problem, rng);
    std::uint64_t evaluations = static_cast<std::uint64_t>(config.smart_n);

    const auto smart_n = static_cast<std::size_t>(config.smart_n);
    const auto elite_n = static_cast<std::size_t>(config.elitism_n);
    const auto neighbor_n = static_cast<std::uint64_t>(config.neighbor_n);

    RunRecord record;
    record.convergence.reserve(static_cast<std::size_t>(config.iteration_n));
    record.convergence.push_back(pop.best.fitness);
    observe(1, pop);

    bool budget_exhausted =
        max_evaluations && evaluations + neighbor_n > *max_evaluations;

    for (int iteration = 2; iteration <= config.iteration_n && !budget_exhausted;
         ++iteration) {
        // Elitism: stable sort by cost, ties keep their original order; the
        // first elitism_n cells pass through untouched.
        std::stable_sort(pop.cells.begin(), pop.cells.end(),
                         [](const SmartCell& a, const SmartCell& b) {
                             return a.fitness < b.fitness;
                         });

        int updates = 0;
        for (std::size_t j = elite_n; j < smart_n; ++j) {
            if (max_evaluations && evaluations + neighbor_n > *max_evaluations) {
                budget_exhausted = true;
                break;
            }

            // One partner per cell, uniform over the others.
            std::size_t partner = rng.uniform_index(smart_n - 1);
            if (partner >= j) ++partner;

            std::vector<double> best_candidate;
            double best_candidate_fitness = std::numeric_limits<double>::infinity();
            for (std::uint64_t k = 0; k < neighbor_n; ++k) {
                RuleContext<SplitMix64> ctx{
                    pop.cells[j].position,       pop.cells[j].fitness,
                    pop.cells[partner].position, pop.cells[partner].fitness,
                    pop.best.fitness,            rng};
                std::vector<double> candidate = apply_random_rule(ctx, config);
                clamp_in_place(candidate, problem.bounds);
                const double fitness = problem.evaluate(candidate, rng);
                ++evaluations;
                if (fitness < best_candidate_fitness) {
                    best_candidate_fitness = fitness;
                    best_candidate = std::move(candidate);
                }
            }

            // Take the neighborhood winner when it improves, otherwise with
            // probability 1/2. The draw happens unconditionally so the RNG
            // stream does not depend on the comparison.
            const double accept = rng.uniform01();
            if (accept < 0.5 || pop.cells[j].fitness > best_candidate_fitness) {
                pop.cells[j].position = std::move(best_candidate);
                pop.cells[j].fitness = best_candidate_fitness;
                if (best_candidate_fitness < pop.best.fitness)
                    pop.best = pop.cells[j];
            }
            ++updates;
        }

        if (updates > 0) {
            record.convergence.push_back(pop.best.fitness);
            observe(iteration, pop);
        }
    }

    record.best_position = pop.best.position;
    record.best_fitness = pop.best.fitness;
    record.evaluations_used = evaluations;
    return record;
}

}  // namespace detail

/// Full run: iteration_n iterations of elitist neighborhood search.
inline RunRecord ccaa_run(const Problem& problem, const CcaaConfig& config) {
    return detail::run_loop(problem, config, std::nullopt, detail::NoObserver{});
}

/// Full run with a per-iteration observer (iteration index, population after
/// that iteration). Used for instrumentation; the trajectory is identical to
/// ccaa_run.
template <class Observer>
RunRecord ccaa_run(const Problem& problem, const CcaaConfig& config,
                   Observer&& observe) {
    return detail::run_loop(problem, config, std::nullopt,
                            std::forward<Observer>(observe));
}

/// Run capped at max_evaluations objective calls; stops before any
/// neighborhood that would overflow the budget. iteration_n still applies.
inline RunRecord ccaa_run_budgeted(const Problem& problem, const CcaaConfig& config,
                                   std::uint64_t max_evaluations) {
    return detail::run_loop(problem, config, max_evaluations, detail::NoObserver{});
}

template <class Observer>
RunRecord ccaa_run_budgeted(const Problem& problem, const CcaaConfig& config,
                            std::uint64_t max_evaluations, Observer&& observe) {
    return detail::run_loop(problem, config, max_evaluations,
                            std::forward<Observer>(observe));
}

}  // namespace ccaa
