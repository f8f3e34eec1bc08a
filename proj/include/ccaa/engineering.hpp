#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccaa/core.hpp"

namespace ccaa::engineering {

/// Violations below this slack count as satisfied. Published best designs are
/// printed with limited precision and can overshoot an active constraint by
/// ~1e-7; treating that as infeasible would misprice them.
inline constexpr double feasibility_epsilon = 1e-6;

/// Flat extra-large cost applied once any constraint is violated, plus the
/// same weight on the total violation so the search still sees a slope.
inline constexpr double penalty_weight = 1e10;

/// A penalized constrained design problem. Constraints are feasible iff
/// g(y) <= 0. snap, when set, maps the raw search point onto the admissible
/// lattice before anything is evaluated.
struct ConstrainedProblem {
    std::string name;
    Bounds bounds;
    std::function<double(std::span<const double>)> raw_objective;
    std::vector<std::function<double(std::span<const double>)>> constraints;
    std::function<std::vector<double>(std::span<const double>)> snap;

    std::vector<double> snapped(std::span<const double> y) const {
        return snap ? snap(y) : std::vector<double>(y.begin(), y.end());
    }

    bool is_feasible(std::span<const double> y) const {
        const auto design = snapped(y);
        for (const auto& g : constraints)
            if (g(design) > feasibility_epsilon) return false;
        return true;
    }

    double penalized_cost(std::span<const double> y) const {
        const auto design = snapped(y);
        double cost = raw_objective(design);
        double violation = 0.0;
        for (const auto& g : constraints)
            violation += std::max(0.0, g(design) - feasibility_epsilon);
        if (violation > 0.0) cost += penalty_weight * (1.0 + violation);
        return cost;
    }

    Problem as_problem() const {
        Problem p;
        p.name = name;
        p.bounds = bounds;
        p.objective = [self = *this](std::span<const double> y, SplitMix64&) {
            return self.penalized_cost(y);
        };
        p.report_design = [self = *this](std::span<const double> y) {
            return self.snapped(y);
        };
        return p;
    }
};

/// Round half away from zero to the nearest integer, saturated into [lo, hi].
inline std::vector<double> snap_integer(std::span<const double> y, double lo, double hi) {
    std::vector<double> out(y.begin(), y.end());
    for (auto& v : out) v = std::min(hi, std::max(lo, std::round(v)));
    return out;
}

/// Round onto the commercial-gauge grid (multiples of step).
inline double snap_to_step(double v, double step) {
    return std::round(v / step) * step;
}

// ---------------------------------------------------------------------------
// Gear train: four integer tooth counts, squared transmission-ratio error.

inline double gtd_cost(std::span<const double> y) {
    if (y.size() != 4) throw std::invalid_argument("gtd_cost: need 4 variables");
    const auto t = snap_integer(y, 12.0, 60.0);
    const double d = 1.0 / 6.931 - (t[1] * t[2]) / (t[0] * t[3]);
    return d * d;
}

inline ConstrainedProblem make_gtd() {
    ConstrainedProblem p;
    p.name = "gtd";
    p.bounds = Bounds::uniform(4, 12.0, 60.0);
    p.snap = [](std::span<const double> y) { return snap_integer(y, 12.0, 60.0); };
    p.raw_objective = [](std::span<const double> t) {
        const double d = 1.0 / 6.931 - (t[1] * t[2]) / (t[0] * t[3]);
        return d * d;
    };
    return p;
}

// ---------------------------------------------------------------------------
// Pressure vessel: shell/head thickness, radius, length. The gauge variant
// restricts both thicknesses to multiples of 0.0625 in.

inline std::vector<double> pvd_constraint_values(std::span<const double> y) {
    return {
        -y[0] + 0.0193 * y[2],
        -y[1] + 0.00954 * y[2],
        -std::numbers::pi * y[2] * y[2] * y[3] -
            4.0 / 3.0 * std::numbers::pi * y[2] * y[2] * y[2] + 1296000.0,
        y[3] - 240.0,
    };
}

inline ConstrainedProblem make_pvd(bool gauge_restricted) {
    ConstrainedProblem p;
    p.name = gauge_restricted ? "pvd-gauge" : "pvd";
    p.bounds = Bounds({0.0, 0.0, 10.0, 10.0}, {99.0, 99.0, 200.0, 200.0});
    if (gauge_restricted) {
        p.snap = [](std::span<const double> y) {
            std::vector<double> out(y.begin(), y.end());
            out[0] = snap_to_step(out[0], 0.0625);
            out[1] = snap_to_step(out[1], 0.0625);
            return out;
        };
    }
    p.raw_objective = [](std::span<const double> y) {
        return 0.6224 * y[0] * y[2] * y[3] + 1.7781 * y[1] * y[2] * y[2] +
               3.1661 * y[0] * y[0] * y[3] + 19.84 * y[0] * y[0] * y[2];
    };
    for (std::size_t i = 0; i < 4; ++i)
        p.constraints.push_back([i](std::span<const double> y) {
            return pvd_constraint_values(y)[i];
        });
    return p;
}

inline double pvd_cost(std::span<const double> y, bool gauge_restricted) {
    if (y.size() != 4) throw std::invalid_argument("pvd_cost: need 4 variables");
    return make_pvd(gauge_restricted).penalized_cost(y);
}

// ---------------------------------------------------------------------------
// Welded beam: weld thickness, clamped-bar length, beam height and thickness,
// with stress/deflection/buckling limits.

inline std::vector<double> wbd_constraint_values(std::span<const double> y) {
    constexpr double load = 6000.0;         // lb
    constexpr double beam_length = 14.0;    // in
    constexpr double sigma_max = 30000.0;   // psi
    constexpr double tau_max = 13600.0;     // psi
    constexpr double delta_max = 0.25;      // in
    constexpr double young = 30.0e6;        // psi
    constexpr double shear_mod = 12.0e6;    // psi

    const double y1 = y[0], y2 = y[1], y3 = y[2], y4 = y[3];
    const double moment = load * (beam_length + y2 / 2.0);
    const double half = (y1 + y3) / 2.0;
    const double radius = std::sqrt(y2 * y2 / 4.0 + half * half);
    const double polar = 2.0 * (std::sqrt(2.0) * y1 * y2 *
                                (y2 * y2 / 12.0 + half * half));
    const double tau_p = load / (std::sqrt(2.0) * y1 * y2);
    const double tau_pp = moment * radius / polar;
    const double tau = std::sqrt(tau_p * tau_p +
                                 2.0 * tau_p * tau_pp * y2 / (2.0 * radius) +
                                 tau_pp * tau_pp);
    const double sigma = 6.0 * load * beam_length / (y3 * y3 * y4);
    const double delta =
        4.0 * load * beam_length * beam_length * beam_length / (young * y3 * y3 * y3 * y4);
    const double buckling =
        4.013 * young * std::sqrt(y3 * y3 * std::pow(y4, 6.0) / 36.0) /
        (beam_length * beam_length) *
        (1.0 - y3 / (2.0 * beam_length) * std::sqrt(young / (4.0 * shear_mod)));

    return {
        tau - tau_max,
        sigma - sigma_max,
        delta - delta_max,
        y1 - y4,
        load - buckling,
        0.125 - y1,
        0.10471 * y1 * y1 + 0.04811 * y3 * y4 * (14.0 + y2) - 5.0,
    };
}

inline ConstrainedProblem make_wbd() {
    ConstrainedProblem p;
    p.name = "wbd";
    p.bounds = Bounds({0.1, 0.1, 0.1, 0.1}, {2.0, 10.0, 10.0, 2.0});
    p.raw_objective = [](std::span<const double> y) {
        return 1.10471 * y[0] * y[0] * y[1] + 0.04811 * y[2] * y[3] * (14.0 + y[1]);
    };
    for (std::size_t i = 0; i < 7; ++i)
        p.constraints.push_back([i](std::span<const double> y) {
            return wbd_constraint_values(y)[i];
        });
    return p;
}

inline double wbd_cost(std::span<const double> y) {
    if (y.size() != 4) throw std::invalid_argument("wbd_cost: need 4 variables");
    return make_wbd().penalized_cost(y);
}

// ---------------------------------------------------------------------------
// Cantilever beam: five hollow square sections under a deflection limit.

inline double cbd_constraint_value(std::span<const double> y) {
    return 61.0 / (y[0] * y[0] * y[0]) + 37.0 / (y[1] * y[1] * y[1]) +
           19.0 / (y[2] * y[2] * y[2]) + 7.0 / (y[3] * y[3] * y[3]) +
           1.0 / (y[4] * y[4] * y[4]);
}

inline ConstrainedProblem make_cbd() {
    ConstrainedProblem p;
    p.name = "cbd";
    p.bounds = Bounds::uniform(5, 0.01, 100.0);
    p.raw_objective = [](std::span<const double> y) {
        return 0.0624 * (y[0] + y[1] + y[2] + y[3] + y[4]);
    };
    p.constraints.push_back([](std::span<const double> y) {
        return cbd_constraint_value(y) - 1.0;  // feasible iff g(y) <= 1
    });
    return p;
}

inline double cbd_cost(std::span<const double> y) {
    if (y.size() != 5) throw std::invalid_argument("cbd_cost: need 5 variables");
    return make_cbd().penalized_cost(y);
}

/// Experiment protocol for one design problem: population shape, evaluation
/// budget, and run count.
struct Protocol {
    int smart_n;
    int neighbor_n;
    std::uint64_t budget;
    int runs;
};

inline Protocol protocol_of(const std::string& id) {
    if (id == "gtd") return {5, 4, 200, 50};
    if (id == "pvd" || id == "pvd-gauge") return {6, 10, 15000, 50};
    if (id == "wbd") return {5, 4, 2000, 50};
    if (id == "cbd") return {5, 4, 12000, 50};
    throw std::invalid_argument("unknown engineering problem: " + id);
}

inline ConstrainedProblem make_by_id(const std::string& id) {
    if (id == "gtd") return make_gtd();
    if (id == "pvd") return make_pvd(false);
    if (id == "pvd-gauge") return make_pvd(true);
    if (id == "wbd") return make_wbd();
    if (id == "cbd") return make_cbd();
    throw std::invalid_argument("unknown engineering problem: " + id);
}

}  // namespace ccaa::engineering
