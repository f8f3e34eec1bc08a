#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "ccaa/core.hpp"

namespace ccaa {

/// The ten configured evolution-rule instances the optimizer chooses among.
enum class RuleId {
    approach,              // step toward the neighbor, small proportion
    move_away,             // step away from the neighbor, large proportion
    move_away_if_better,   // step away only when own cost is lower
    change_wide,           // blend neighbor coordinates in, wide span
    change_narrow,         // blend neighbor coordinates in, narrow span
    increment_wide,        // rescale own coordinates, wide span
    increment_narrow,      // rescale own coordinates, narrow span
    majority,              // pull coordinates toward the most repeated value
    minority,              // pull coordinates toward the least repeated value
    rounding,              // snap coordinates to a random decimal precision
};

inline constexpr std::array<RuleId, 10> all_rule_ids = {
    RuleId::approach,       RuleId::move_away,      RuleId::move_away_if_better,
    RuleId::change_wide,    RuleId::change_narrow,  RuleId::increment_wide,
    RuleId::increment_narrow, RuleId::majority,     RuleId::minority,
    RuleId::rounding,
};

/// Everything a rule sees: its own cell, one partner cell, and the best cost
/// found so far. neighbor refers to a population member distinct from self.
template <class Rng>
struct RuleContext {
    std::span<const double> self_position;
    double self_fitness;
    std::span<const double> neighbor_position;
    double neighbor_fitness;
    double best_fitness;
    Rng& rng;
};

enum class AwayCondition { different, self_better };
enum class ModeVariant { majority, minority };

/// Per-coordinate change probability: the companion's share of the pair total,
/// so a relatively better companion drives more change. Degenerate or
/// non-finite totals fall back to 1/2; the result is clamped into [0, 1]
/// because costs may be negative.
inline double change_probability(double self_fitness, double companion_fitness) {
    const double total = self_fitness + companion_fitness;
    if (total == 0.0 || !std::isfinite(total)) return 0.5;
    const double pond = 1.0 - companion_fitness / total;
    if (!std::isfinite(pond)) return 0.5;
    return std::min(1.0, std::max(0.0, pond));
}

/// Round half away from zero to digits decimal places.
inline double round_to_digits(double value, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(value * scale) / scale;
}

namespace detail {

/// Most (or least) repeated coordinate value; ties resolved by the lowest
/// first-occurrence index.
inline double mode_element(std::span<const double> values, ModeVariant variant) {
    struct Entry {
        std::size_t count = 0;
        std::size_t first_index = 0;
    };
    std::map<double, Entry> groups;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(values[i], Entry{0, i});
        ++it->second.count;
    }
    const bool want_max = variant == ModeVariant::majority;
    double elem = values[0];
    Entry best{want_max ? 0 : values.size() + 1, values.size()};
    for (const auto& [value, entry] : groups) {
        const bool better =
            want_max ? (entry.count > best.count ||
                        (entry.count == best.count && entry.first_index < best.first_index))
                     : (entry.count < best.count ||
                        (entry.count == best.count && entry.first_index < best.first_index));
        if (better) {
            best = entry;
            elem = value;
        }
    }
    return elem;
}

}  // namespace detail

/// Moves toward the neighbor by a random fraction of prop when costs differ;
/// otherwise the cell is returned unchanged.
template <class Rng>
std::vector<double> rule_approach(const RuleContext<Rng>& ctx, double prop) {
    std::vector<double> out(ctx.self_position.begin(), ctx.self_position.end());
    if (ctx.self_fitness != ctx.neighbor_fitness) {
        const double r = ctx.rng.uniform01();
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] -= (ctx.self_position[k] - ctx.neighbor_position[k]) * prop * r;
    }
    return out;
}

/// Moves away from the neighbor by a random fraction of prop when the
/// condition holds; otherwise the cell is returned unchanged.
template <class Rng>
std::vector<double> rule_away(const RuleContext<Rng>& ctx, double prop,
                              AwayCondition condition) {
    const bool holds = condition == AwayCondition::different
                           ? ctx.self_fitness != ctx.neighbor_fitness
                           : ctx.self_fitness < ctx.neighbor_fitness;
    std::vector<double> out(ctx.self_position.begin(), ctx.self_position.end());
    if (holds) {
        const double r = ctx.rng.uniform01();
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += (ctx.self_position[k] - ctx.neighbor_position[k]) * prop * r;
    }
    return out;
}

/// Blends the neighbor's coordinates in: one shared step r in
/// [-dist/2, dist/2), applied per coordinate with probability pond.
template <class Rng>
std::vector<double> rule_change(const RuleContext<Rng>& ctx, double dist) {
    std::vector<double> out(ctx.self_position.begin(), ctx.self_position.end());
    const double pond = change_probability(ctx.self_fitness, ctx.neighbor_fitness);
    const double r = ctx.rng.uniform01() * dist - dist / 2.0;
    for (std::size_t k = 0; k < out.size(); ++k)
        if (ctx.rng.uniform01() < pond) out[k] += r * ctx.neighbor_position[k];
    return out;
}

/// Rescales own coordinates by a shared factor (1 + r), r in
/// [-dist/2, dist/2), applied per coordinate with probability pond.
template <class Rng>
std::vector<double> rule_increment(const RuleContext<Rng>& ctx, double dist) {
    std::vector<double> out(ctx.self_position.begin(), ctx.self_position.end());
    const double pond = change_probability(ctx.self_fitness, ctx.best_fitness);
    const double r = ctx.rng.uniform01() * dist - dist / 2.0;
    for (std::size_t k = 0; k < out.size(); ++k)
        if (ctx.rng.uniform01() < pond) out[k] += r * out[k];
    return out;
}

/// Pulls every coordinate toward the most (or least) repeated value by a
/// random fraction of dist. Constant vectors are fixed points.
template <class Rng>
std::vector<double> rule_mode(const RuleContext<Rng>& ctx, double dist,
                              ModeVariant variant) {
    const double elem = detail::mode_element(ctx.self_position, variant);
    const double r = ctx.rng.uniform01();
    std::vector<double> out(ctx.self_position.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = ctx.self_position[k] -
                 (ctx.self_position[k] - elem) * dist * r;
    return out;
}

/// Rounds coordinates to num_d decimals (half away from zero), per coordinate
/// with probability pond.
template <class Rng>
std::vector<double> rule_round(const RuleContext<Rng>& ctx, int num_d) {
    std::vector<double> out(ctx.self_position.begin(), ctx.self_position.end());
    const double pond = change_probability(ctx.self_fitness, ctx.best_fitness);
    for (std::size_t k = 0; k < out.size(); ++k)
        if (ctx.rng.uniform01() < pond) out[k] = round_to_digits(out[k], num_d);
    return out;
}

/// Applies one rule instance with its parameter binding from the config.
template <class Rng>
std::vector<double> apply_rule(RuleId id, const RuleContext<Rng>& ctx,
                               const CcaaConfig& config) {
    switch (id) {
        case RuleId::approach:
            return rule_approach(ctx, config.lower_p);
        case RuleId::move_away:
            return rule_away(ctx, config.upper_p, AwayCondition::different);
        case RuleId::move_away_if_better:
            return rule_away(ctx, config.lower_p, AwayCondition::self_better);
        case RuleId::change_wide:
            return rule_change(ctx, config.dist_M);
        case RuleId::change_narrow:
            return rule_change(ctx, config.dist_m);
        case RuleId::increment_wide:
            return rule_increment(ctx, config.dist_M);
        case RuleId::increment_narrow:
            return rule_increment(ctx, config.dist_m);
        case RuleId::majority:
            return rule_mode(ctx, config.dist_M, ModeVariant::majority);
        case RuleId::minority:
            return rule_mode(ctx, config.dist_m, ModeVariant::minority);
        case RuleId::rounding:
            return rule_round(ctx, ctx.rng.uniform_int(config.lower_d, config.upper_d));
    }
    throw std::invalid_argument("apply_rule: unknown rule id");
}

/// Picks one of the ten rules uniformly at random and applies it. The result
/// is not clamped; the caller repairs bounds.
template <class Rng>
std::vector<double> apply_random_rule(const RuleContext<Rng>& ctx,
                                      const CcaaConfig& config) {
    const auto id = all_rule_ids[ctx.rng.uniform_index(all_rule_ids.size())];
    return apply_rule(id, ctx, config);
}

}  // namespace ccaa
