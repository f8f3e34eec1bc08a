#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccaa/core.hpp"

namespace ccaa::iir {

/// Digital filter in the feedback form
///   y(k) = sum_i feedback[i-1] * y(k-i) + sum_j feedforward[j] * u(k-j),
/// i.e. transfer function (sum b_j z^-j) / (1 - sum a_i z^-i). Structural
/// zeros (missing taps) are stored explicitly as 0 coefficients.
struct TransferFunction {
    std::vector<double> feedforward;  // b0..bn
    std::vector<double> feedback;     // a1..am
};

class UnstableSimulation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output magnitude beyond this aborts the simulation as unstable.
inline constexpr double instability_limit = 1e150;

/// Difference-equation simulation with zero initial conditions.
inline std::vector<double> simulate(const TransferFunction& tf,
                                    std::span<const double> u) {
    if (u.empty()) throw std::invalid_argument("simulate: empty input");
    const std::size_t length = u.size();
    std::vector<double> y(length, 0.0);
    for (std::size_t k = 0; k < length; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < tf.feedback.size(); ++i)
            if (k >= i + 1) acc += tf.feedback[i] * y[k - i - 1];
        for (std::size_t j = 0; j < tf.feedforward.size(); ++j)
            if (k >= j) acc += tf.feedforward[j] * u[k - j];
        if (!std::isfinite(acc) || std::abs(acc) > instability_limit)
            throw UnstableSimulation("filter output diverged at sample " +
                                     std::to_string(k));
        y[k] = acc;
    }
    return y;
}

/// One free model coefficient: a feedforward tap b[index] or a feedback tap
/// a[index+1].
struct CoefficientSlot {
    bool is_feedforward;
    std::size_t index;
};

/// System-identification instance: plant, model structure, excitation, and
/// the recorded plant response. Fixed at construction; mse() is pure.
struct IdentificationProblem {
    std::string name;
    TransferFunction plant;
    std::size_t model_feedforward_size = 0;
    std::size_t model_feedback_size = 0;
    std::vector<CoefficientSlot> free_coefficients;
    std::vector<double> input;
    std::vector<double> noise;
    std::vector<double> desired;  // simulate(plant, input) + noise
    Bounds bounds;
    double penalty_mse = 1e10;

    std::size_t parameter_count() const noexcept { return free_coefficients.size(); }

    TransferFunction model_from(std::span<const double> theta) const {
        if (theta.size() != free_coefficients.size())
            throw std::invalid_argument("model_from: wrong parameter count");
        TransferFunction model;
        model.feedforward.assign(model_feedforward_size, 0.0);
        model.feedback.assign(model_feedback_size, 0.0);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const auto& slot = free_coefficients[i];
            (slot.is_feedforward ? model.feedforward : model.feedback)[slot.index] =
                theta[i];
        }
        return model;
    }

    /// The plant's own coefficients in slot order; mse(true_theta()) == 0
    /// when the noise is zero.
    std::vector<double> true_theta() const {
        std::vector<double> theta;
        theta.reserve(free_coefficients.size());
        for (const auto& slot : free_coefficients)
            theta.push_back(
                (slot.is_feedforward ? plant.feedforward : plant.feedback)[slot.index]);
        return theta;
    }

    /// Mean squared output error of the candidate model over the excitation.
    /// Divergent candidates get the finite penalty value.
    double mse(std::span<const double> theta) const {
        const TransferFunction model = model_from(theta);
        std::vector<double> estimate;
        try {
            estimate = simulate(model, input);
        } catch (const UnstableSimulation&) {
            return penalty_mse;
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < desired.size(); ++k) {
            const double e = desired[k] - estimate[k];
            acc += e * e;
        }
        return acc / static_cast<double>(desired.size());
    }

    Problem as_problem() const {
        Problem p;
        p.name = name;
        p.bounds = bounds;
        p.objective = [self = *this](std::span<const double> theta, SplitMix64&) {
            return self.mse(theta);
        };
        return p;
    }
};

inline constexpr int example_count = 10;
inline constexpr std::size_t default_input_length = 100;

namespace detail {

struct PlantRow {
    std::vector<double> feedforward;          // b0..bn, structural zeros explicit
    std::vector<double> feedback;             // a1..am in the 1 - sum a_i z^-i form
    std::vector<CoefficientSlot> free_slots;  // model structure, theta order
};

inline PlantRow plant_row(int example) {
    auto ff = [](std::size_t j) { return CoefficientSlot{true, j}; };
    auto fb = [](std::size_t i) { return CoefficientSlot{false, i}; };
    switch (example) {
        case 1:
            return {{0.05, -0.4}, {1.1314, -0.25}, {ff(0), ff(1), fb(0), fb(1)}};
        case 2:
            return {{-0.2, -0.4, 0.5},
                    {0.6, -0.25, 0.2},
                    {ff(0), ff(1), ff(2), fb(0), fb(1), fb(2)}};
        case 3:
            return {{1.0, -0.9, 0.81, -0.729},
                    {-0.04, -0.2775, 0.2101, -0.14},
                    {ff(0), ff(1), ff(2), ff(3), fb(0), fb(1), fb(2), fb(3)}};
        case 4:
            return {{0.1084, 0.5419, 1.0837, 1.0837, 0.5419, 0.1084},
                    {-0.9853, -0.9738, 0.3854, -0.1112, -0.0113},
                    {ff(0), ff(1), ff(2), ff(3), ff(4), ff(5),
                     fb(0), fb(1), fb(2), fb(3), fb(4)}};
        case 5:
            // Even taps only; odd coefficients are structural zeros.
            return {{1.0, 0.0, -0.4, 0.0, -0.65, 0.0, 0.26},
                    {0.0, 0.77, 0.0, 0.8498, 0.0, -0.6486},
                    {ff(0), ff(2), ff(4), ff(6), fb(1), fb(3), fb(5)}};
        case 6:
            return {{1.0}, {1.4, -0.49}, {ff(0), fb(0), fb(1)}};
        case 7:
            return {{1.0}, {1.2, -0.6}, {ff(0), fb(0), fb(1)}};
        case 8:
            // No direct feedthrough: b0 is a structural zero.
            return {{0.0, 1.25, -0.25}, {0.3, -0.4}, {ff(1), ff(2), fb(0), fb(1)}};
        case 9:
            // 1/(1 - 0.5 z^-1)^3 expanded.
            return {{1.0}, {1.5, -0.75, 0.125}, {ff(0), fb(0), fb(1), fb(2)}};
        case 10:
            return {{-0.3, 0.4, -0.5},
                    {1.2, -0.5, 0.1},
                    {ff(0), ff(1), ff(2), fb(0), fb(1), fb(2)}};
        default:
            throw std::invalid_argument("iir example out of range: " +
                                        std::to_string(example));
    }
}

}  // namespace detail

/// Builds identification problem 1..10. The excitation is a fresh zero-mean
/// unit-variance Gaussian sequence drawn from rng, so each run works against
/// its own input realization. noise_std > 0 adds measurement noise to the
/// recorded plant output.
inline IdentificationProblem make_identification_problem(
    int example, SplitMix64& rng, std::size_t length = default_input_length,
    double noise_std = 0.0) {
    detail::PlantRow row = detail::plant_row(example);

    IdentificationProblem problem;
    problem.name = "iir-" + std::to_string(example);
    problem.plant.feedforward = std::move(row.feedforward);
    problem.plant.feedback = std::move(row.feedback);
    problem.model_feedforward_size = problem.plant.feedforward.size();
    problem.model_feedback_size = problem.plant.feedback.size();
    problem.free_coefficients = std::move(row.free_slots);
    problem.bounds = Bounds::uniform(problem.free_coefficients.size(), -2.0, 2.0);

    problem.input.resize(length);
    for (auto& v : problem.input) v = rng.gaussian();
    problem.noise.assign(length, 0.0);
    if (noise_std > 0.0)
        for (auto& v : problem.noise) v = noise_std * rng.gaussian();

    problem.desired = simulate(problem.plant, problem.input);
    for (std::size_t k = 0; k < length; ++k) problem.desired[k] += problem.noise[k];
    return problem;
}

}  // namespace ccaa::iir
