#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccaa/rng.hpp"

namespace ccaa {

/// Per-dimension box constraints. lower[i] < upper[i] for every i.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    Bounds() = default;
    Bounds(std::vector<double> lo, std::vector<double> hi)
        : lower(std::move(lo)), upper(std::move(hi)) {
        validate();
    }

    /// Uniform box [lo, hi]^dimension.
    static Bounds uniform(std::size_t dimension, double lo, double hi) {
        return Bounds(std::vector<double>(dimension, lo),
                      std::vector<double>(dimension, hi));
    }

    std::size_t dimension() const noexcept { return lower.size(); }

    void validate() const {
        if (lower.empty() || lower.size() != upper.size())
            throw std::invalid_argument("Bounds: lower/upper size mismatch");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] < upper[i]))
                throw std::invalid_argument("Bounds: lower must be < upper");
    }
};

/// A candidate solution with its cached objective value.
struct SmartCell {
    std::vector<double> position;
    double fitness = 0.0;
};

/// The cell collection plus the best-so-far record of the run.
struct Population {
    std::vector<SmartCell> cells;
    SmartCell best;
};

/// Optimizer parameters. Defaults are the tuned values shared by all
/// experiments; smart_n/neighbor_n/iteration_n follow the benchmark protocol.
struct CcaaConfig {
    int smart_n = 12;
    int neighbor_n = 6;
    int iteration_n = 500;
    int elitism_n = 2;
    double lower_p = 1.0;
    double upper_p = 2.0;
    double dist_M = 1.0;
    double dist_m = 0.3;
    int lower_d = 1;
    int upper_d = 4;
    std::uint64_t seed = 1;

    void validate() const {
        if (smart_n < 1 || neighbor_n < 1 || iteration_n < 1)
            throw std::invalid_argument("CcaaConfig: counts must be positive");
        if (elitism_n < 0 || elitism_n >= smart_n)
            throw std::invalid_argument("CcaaConfig: need 0 <= elitism_n < smart_n");
        if (!(lower_p > 0.0) || !(upper_p > 0.0) || !(dist_M > 0.0) || !(dist_m > 0.0))
            throw std::invalid_argument("CcaaConfig: proportions and distances must be > 0");
        if (lower_d < 0 || upper_d < lower_d)
            throw std::invalid_argument("CcaaConfig: need 0 <= lower_d <= upper_d");
    }
};

/// Thrown when an objective produces a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::string what, std::vector<double> position)
        : std::runtime_error(std::move(what)), position_(std::move(position)) {}

    const std::vector<double>& position() const noexcept { return position_; }

private:
    std::vector<double> position_;
};

/// Minimization problem: objective over a bounded box. The RNG handle feeds
/// objectives with a stochastic term; deterministic objectives ignore it.
/// report_design, when set, maps a raw position to the design actually
/// evaluated (integer/gauge snapped) for reporting.
struct Problem {
    std::string name;
    Bounds bounds;
    std::function<double(std::span<const double>, SplitMix64&)> objective;
    std::function<std::vector<double>(std::span<const double>)> report_design;

    std::size_t dimension() const noexcept { return bounds.dimension(); }

    void validate() const {
        bounds.validate();
        if (!objective) throw std::invalid_argument("Problem: objective not set");
    }

    /// Evaluates the objective; non-finite results abort the run.
    double evaluate(std::span<const double> x, SplitMix64& rng) const {
        const double value = objective(x, rng);
        if (!std::isfinite(value)) {
            std::ostringstream oss;
            oss << "objective '" << name << "' returned non-finite value at (";
            for (std::size_t i = 0; i < x.size(); ++i)
                oss << (i ? ", " : "") << x[i];
            oss << ")";
            throw EvaluationError(oss.str(), std::vector<double>(x.begin(), x.end()));
        }
        return value;
    }
};

inline void clamp_in_place(std::vector<double>& x, const Bounds& bounds) {
    if (x.size() != bounds.dimension())
        throw std::invalid_argument("clamp: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::min(bounds.upper[i], std::max(bounds.lower[i], x[i]));
}

/// Coordinate-wise saturation onto the box.
inline std::vector<double> clamp(std::span<const double> x, const Bounds& bounds) {
    std::vector<double> out(x.begin(), x.end());
    clamp_in_place(out, bounds);
    return out;
}

/// smart_n cells drawn uniformly inside the bounds, evaluated, best recorded.
inline Population random_init_population(const CcaaConfig& config,
                                         const Problem& problem,
                                         SplitMix64& rng) {
    config.validate();
    problem.validate();
    const std::size_t dim = problem.dimension();

    Population pop;
    pop.cells.resize(static_cast<std::size_t>(config.smart_n));
    for (auto& cell : pop.cells) {
        cell.position.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
            cell.position[i] = rng.uniform(problem.bounds.lower[i], problem.bounds.upper[i]);
        cell.fitness = problem.evaluate(cell.position, rng);
    }

    pop.best = pop.cells.front();
    for (const auto& cell : pop.cells)
        if (cell.fitness < pop.best.fitness) pop.best = cell;
    return pop;
}

}  // namespace ccaa
