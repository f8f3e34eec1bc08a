#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace ccaa::stats {

/// Descriptive statistics of one sample. std_dev uses the n-1 denominator
/// (0 for singleton samples); the median averages the middle pair for even n.
struct SampleSummary {
    double best = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    std::size_t n = 0;
};

inline SampleSummary summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SampleSummary s;
    s.n = sorted.size();
    s.best = sorted.front();
    s.worst = sorted.back();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
             static_cast<double>(s.n);
    s.median = s.n % 2 == 1
                   ? sorted[s.n / 2]
                   : 0.5 * (sorted[s.n / 2 - 1] + sorted[s.n / 2]);
    if (s.n > 1) {
        double acc = 0.0;
        for (double v : sorted) acc += (v - s.mean) * (v - s.mean);
        s.std_dev = std::sqrt(acc / static_cast<double>(s.n - 1));
    }
    return s;
}

enum class RankSumVerdict { plus, minus, approx };

/// Wilcoxon rank-sum outcome. statistic is the tie-corrected, continuity-
/// corrected normal z; verdict compares the sample means at the given alpha
/// (plus means the first sample is significantly smaller).
struct RankSumResult {
    double statistic = 0.0;
    double p_value = 1.0;
    RankSumVerdict verdict = RankSumVerdict::approx;
    bool small_sample_warning = false;
};

namespace detail {

/// Midranks of the concatenated sample plus the tie-group sizes.
inline std::pair<std::vector<double>, std::vector<std::size_t>> midranks(
    std::span<const double> combined) {
    const std::size_t n = combined.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return combined[a] < combined[b];
    });

    std::vector<double> ranks(n);
    std::vector<std::size_t> tie_sizes;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && combined[order[j + 1]] == combined[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    return {std::move(ranks), std::move(tie_sizes)};
}

inline double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace detail

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test with midrank ties,
/// tie-corrected variance, and continuity correction.
inline RankSumResult rank_sum_test(std::span<const double> a,
                                   std::span<const double> b,
                                   double alpha = 0.05) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("rank_sum_test: empty sample");

    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());

    std::vector<double> combined(a.begin(), a.end());
    combined.insert(combined.end(), b.begin(), b.end());
    const auto [ranks, tie_sizes] = detail::midranks(combined);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];

    const double total = n1 + n2;
    const double mean = n1 * (total + 1.0) / 2.0;
    double tie_term = 0.0;
    for (std::size_t t : tie_sizes) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double variance =
        n1 * n2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));

    RankSumResult result;
    result.small_sample_warning = a.size() < 5 || b.size() < 5;

    const double deviation = rank_sum_a - mean;
    if (variance > 0.0 && std::abs(deviation) > 0.5) {
        const double corrected = deviation - (deviation > 0.0 ? 0.5 : -0.5);
        result.statistic = corrected / std::sqrt(variance);
        result.p_value = detail::normal_two_sided_p(result.statistic);
    }

    if (result.p_value < alpha) {
        const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n1;
        const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n2;
        result.verdict =
            mean_a < mean_b ? RankSumVerdict::plus : RankSumVerdict::minus;
    }
    return result;
}

/// Per-problem dense ranks over algorithm means (tied means share a rank and
/// the next distinct mean gets rank+1), average ranks, and the overall
/// ordering of those averages.
struct RankTable {
    std::vector<std::vector<int>> ranks;  // [problem][algorithm]
    std::vector<double> average_ranks;    // [algorithm]
    std::vector<int> overall_ranks;       // [algorithm]
};

namespace detail {

inline std::vector<int> dense_ranks(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
        ranks[i] = static_cast<int>(it - sorted.begin()) + 1;
    }
    return ranks;
}

}  // namespace detail

inline RankTable rank_table(const std::vector<std::vector<double>>& means) {
    if (means.empty()) throw std::invalid_argument("rank_table: no problems");
    const std::size_t algorithms = means.front().size();
    if (algorithms == 0) throw std::invalid_argument("rank_table: no algorithms");
    for (const auto& row : means)
        if (row.size() != algorithms)
            throw std::invalid_argument("rank_table: ragged mean matrix");

    RankTable table;
    table.ranks.reserve(means.size());
    std::vector<double> totals(algorithms, 0.0);
    for (const auto& row : means) {
        auto ranks = detail::dense_ranks(row);
        for (std::size_t a = 0; a < algorithms; ++a)
            totals[a] += static_cast<double>(ranks[a]);
        table.ranks.push_back(std::move(ranks));
    }

    table.average_ranks.resize(algorithms);
    for (std::size_t a = 0; a < algorithms; ++a)
        table.average_ranks[a] = totals[a] / static_cast<double>(means.size());
    table.overall_ranks = detail::dense_ranks(table.average_ranks);
    return table;
}

}  // namespace ccaa::stats
