#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "ccaa/core.hpp"

namespace ccaa::benchmarks {

/// Static description of one test function: id (1..33), default dimension,
/// uniform range, and the known minimum value.
struct BenchmarkSpec {
    int id = 0;
    std::size_t dimension = 0;
    double lower = 0.0;
    double upper = 0.0;
    double f_min = 0.0;
    bool scalable = false;
    bool f_min_scales_with_dimension = false;  // true only for F11

    double f_min_at(std::size_t dim) const {
        return f_min_scales_with_dimension ? f_min * static_cast<double>(dim) : f_min;
    }
};

inline constexpr int first_id = 1;
inline constexpr int last_id = 33;
inline constexpr int first_fixed_id = 24;

namespace detail {

inline constexpr double pi = std::numbers::pi;

// Fixed-dimension constant sets (standard published values).

inline constexpr std::array<std::array<double, 25>, 2> foxholes_a = {{
    {-32, -16, 0, 16, 32, -32, -16, 0, 16, 32, -32, -16, 0, 16, 32,
     -32, -16, 0, 16, 32, -32, -16, 0, 16, 32},
    {-32, -32, -32, -32, -32, -16, -16, -16, -16, -16, 0, 0, 0, 0, 0,
     16, 16, 16, 16, 16, 32, 32, 32, 32, 32},
}};

inline constexpr std::array<double, 11> kowalik_a = {
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
    0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
inline constexpr std::array<double, 11> kowalik_b_inv = {
    0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};

inline constexpr std::array<std::array<double, 3>, 4> hartmann3_a = {{
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
}};
inline constexpr std::array<double, 4> hartmann_c = {1.0, 1.2, 3.0, 3.2};
inline constexpr std::array<std::array<double, 3>, 4> hartmann3_p = {{
    {0.3689, 0.1170, 0.2673},
    {0.4699, 0.4387, 0.7470},
    {0.1091, 0.8732, 0.5547},
    {0.03815, 0.5743, 0.8828},
}};

inline constexpr std::array<std::array<double, 6>, 4> hartmann6_a = {{
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
}};
inline constexpr std::array<std::array<double, 6>, 4> hartmann6_p = {{
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
}};

inline constexpr std::array<std::array<double, 4>, 10> shekel_a = {{
    {4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8}, {6, 6, 6, 6}, {3, 7, 3, 7},
    {2, 9, 2, 9}, {5, 5, 3, 3}, {8, 1, 8, 1}, {6, 2, 6, 2}, {7, 3.6, 7, 3.6},
}};
inline constexpr std::array<double, 10> shekel_c = {
    0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

/// Boundary penalty term shared by F15/F16: zero inside [-a, a], quartic-style
/// growth outside.
inline double u_penalty(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

inline double sum_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double hartmann(std::span<const double> x,
                       std::span<const std::array<double, 3>> a,
                       std::span<const std::array<double, 3>> p) {
    double f = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double e = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
            e += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
        f -= hartmann_c[i] * std::exp(-e);
    }
    return f;
}

inline double hartmann6(std::span<const double> x) {
    double f = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double e = 0.0;
        for (std::size_t j = 0; j < 6; ++j)
            e += hartmann6_a[i][j] * (x[j] - hartmann6_p[i][j]) * (x[j] - hartmann6_p[i][j]);
        f -= hartmann_c[i] * std::exp(-e);
    }
    return f;
}

inline double shekel(std::span<const double> x, std::size_t m) {
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double d = shekel_c[i];
        for (std::size_t j = 0; j < 4; ++j)
            d += (x[j] - shekel_a[i][j]) * (x[j] - shekel_a[i][j]);
        f -= 1.0 / d;
    }
    return f;
}

}  // namespace detail

inline BenchmarkSpec spec_of(int id, std::optional<std::size_t> dimension = {}) {
    struct Row {
        double lower, upper, f_min;
        std::size_t dim;        // 0 marks a scalable function (default 30)
        bool f_min_scales = false;
    };
    static constexpr std::array<Row, 33> rows = {{
        /* F1  */ {-100, 100, 0, 0},
        /* F2  */ {-10, 10, 0, 0},
        /* F3  */ {-10, 10, 0, 0},
        /* F4  */ {-100, 100, 0, 0},
        /* F5  */ {-100, 100, 0, 0},
        /* F6  */ {-30, 30, 0, 0},
        /* F7  */ {-100, 100, 0, 0},
        /* F8  */ {-1.28, 1.28, 0, 0},
        /* F9  */ {-1.28, 1.28, 0, 0},
        /* F10 */ {-1, 1, 0, 0},
        /* F11 */ {-500, 500, -418.9829, 0, true},
        /* F12 */ {-5.12, 5.12, 0, 0},
        /* F13 */ {-32, 32, 0, 0},
        /* F14 */ {-600, 600, 0, 0},
        /* F15 */ {-50, 50, 0, 0},
        /* F16 */ {-50, 50, 0, 0},
        /* F17 */ {-10, 10, 0, 0},
        /* F18 */ {-1, 1, 0, 0},
        /* F19 */ {-1.28, 1.28, 0, 0},
        /* F20 */ {-100, 100, 0, 0},
        /* F21 */ {-100, 100, -1, 0},
        /* F22 */ {-100, 100, 0, 0},
        /* F23 */ {-100, 100, 0, 0},
        /* F24 */ {-65, 65, 1, 2},
        /* F25 */ {-5, 5, 0.00030, 4},
        /* F26 */ {-5, 5, -1.0316, 2},
        /* F27 */ {-5, 5, 0.398, 2},
        /* F28 */ {-2, 2, 3, 2},
        /* F29 */ {0, 1, -3.86, 3},
        /* F30 */ {0, 1, -3.32, 6},
        /* F31 */ {0, 10, -10.1532, 4},
        /* F32 */ {0, 10, -10.4028, 4},
        /* F33 */ {0, 10, -10.5363, 4},
    }};

    if (id < first_id || id > last_id)
        throw std::invalid_argument("benchmark id out of range: F" + std::to_string(id));
    const Row& row = rows[static_cast<std::size_t>(id - 1)];
    const bool scalable = row.dim == 0;
    if (!scalable && dimension && *dimension != row.dim)
        throw std::invalid_argument("F" + std::to_string(id) +
                                    " has fixed dimension " + std::to_string(row.dim));
    BenchmarkSpec spec;
    spec.id = id;
    spec.dimension = scalable ? dimension.value_or(30) : row.dim;
    spec.lower = row.lower;
    spec.upper = row.upper;
    spec.f_min = row.f_min;
    spec.scalable = scalable;
    spec.f_min_scales_with_dimension = row.f_min_scales;
    if (spec.dimension == 0)
        throw std::invalid_argument("dimension must be positive");
    return spec;
}

/// Evaluates F<id> at x. The RNG feeds F9's additive noise term (exactly one
/// draw per call); every other function ignores it.
inline double evaluate(int id, std::span<const double> x, SplitMix64& rng) {
    using namespace detail;
    const std::size_t n = x.size();
    {
        const BenchmarkSpec spec = spec_of(id, std::nullopt);
        if (!spec.scalable && n != spec.dimension)
            throw std::invalid_argument("F" + std::to_string(id) + ": dimension mismatch");
        if (n == 0) throw std::invalid_argument("empty input");
    }

    switch (id) {
        case 1:
            return sum_sq(x);
        case 2: {
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i) f += static_cast<double>(i + 1) * x[i] * x[i];
            return f;
        }
        case 3: {
            double s = 0.0, p = 1.0;
            for (double v : x) {
                s += std::abs(v);
                p *= std::abs(v);
            }
            return s + p;
        }
        case 4: {
            double f = 0.0, acc = 0.0;
            for (double v : x) {
                acc += v;
                f += acc * acc;
            }
            return f;
        }
        case 5: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        }
        case 6: {
            double f = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double a = x[i + 1] - x[i] * x[i];
                const double b = x[i] - 1.0;
                f += 100.0 * a * a + b * b;
            }
            return f;
        }
        case 7: {
            double f = 0.0;
            for (double v : x) f += (v + 0.5) * (v + 0.5);
            return f;
        }
        case 8: {
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double q = x[i] * x[i];
                f += static_cast<double>(i + 1) * q * q;
            }
            return f;
        }
        case 9: {
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double q = x[i] * x[i];
                f += static_cast<double>(i + 1) * q * q;
            }
            return f + rng.uniform01();
        }
        case 10: {
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                f += std::pow(std::abs(x[i]), static_cast<double>(i + 2));
            return f;
        }
        case 11: {
            double f = 0.0;
            for (double v : x) f -= v * std::sin(std::sqrt(std::abs(v)));
            return f;
        }
        case 12: {
            double f = 0.0;
            for (double v : x) f += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
            return f;
        }
        case 13: {
            double sq = 0.0, c = 0.0;
            for (double v : x) {
                sq += v * v;
                c += std::cos(2.0 * pi * v);
            }
            const double inv_n = 1.0 / static_cast<double>(n);
            return -20.0 * std::exp(-0.2 * std::sqrt(inv_n * sq)) -
                   std::exp(inv_n * c) + 20.0 + std::numbers::e;
        }
        case 14: {
            double sq = 0.0, p = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                sq += x[i] * x[i];
                p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
            }
            return sq / 4000.0 - p + 1.0;
        }
        case 15: {
            auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
            const double s1 = std::sin(pi * y(0));
            double f = 10.0 * s1 * s1;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double d = y(i) - 1.0;
                const double s = std::sin(pi * y(i + 1));
                f += d * d * (1.0 + 10.0 * s * s);
            }
            const double dn = y(n - 1) - 1.0;
            f += dn * dn;
            f *= pi / static_cast<double>(n);
            for (double v : x) f += u_penalty(v, 10.0, 100.0, 4.0);
            return f;
        }
        case 16: {
            const double s1 = std::sin(3.0 * pi * x[0]);
            double f = s1 * s1;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double d = x[i] - 1.0;
                const double s = std::sin(3.0 * pi * x[i + 1]);
                f += d * d * (1.0 + s * s);
            }
            const double dn = x[n - 1] - 1.0;
            const double sn = std::sin(2.0 * pi * x[n - 1]);
            f += dn * dn * (1.0 + sn * sn);
            f *= 0.1;
            for (double v : x) f += u_penalty(v, 5.0, 100.0, 4.0);
            return f;
        }
        case 17: {
            double f = 0.0;
            for (double v : x) f += std::abs(v * std::sin(v) + 0.1 * v);
            return f;
        }
        case 18: {
            double c = 0.0, sq = 0.0;
            for (double v : x) {
                c += std::cos(5.0 * pi * v);
                sq += v * v;
            }
            return 0.1 * static_cast<double>(n) - (0.1 * c - sq);
        }
        case 19: {
            double f = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double base = x[i] * x[i] + 2.0 * x[i + 1] * x[i + 1];
                const double arg = x[i] * x[i] + x[i + 1] * x[i + 1];
                const double s = 1.0 + std::sin(50.0 * std::pow(arg, 0.1));
                f += std::pow(base, 0.25) * s * s;
            }
            return f;
        }
        case 20: {
            double f = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
                f += std::pow(1.0e6, e) * x[i] * x[i];
            }
            return f;
        }
        case 21: {
            double p = 1.0, d = 0.0;
            for (double v : x) {
                p *= std::cos(v);
                d += (v - pi) * (v - pi);
            }
            const double sign = n % 2 == 0 ? -1.0 : 1.0;  // (-1)^(n+1)
            return sign * p * std::exp(-d);
        }
        case 22: {
            const double r = std::sqrt(sum_sq(x));
            return 1.0 - std::cos(2.0 * pi * r) + 0.1 * r;
        }
        case 23: {
            const double sq = sum_sq(x);
            const double s = std::sin(std::sqrt(sq));
            return 0.5 + (s * s - 0.5) / (1.0 + 0.001 * sq * sq);
        }
        case 24: {
            double inv = 1.0 / 500.0;
            for (std::size_t j = 0; j < 25; ++j) {
                double d = static_cast<double>(j + 1);
                for (std::size_t i = 0; i < 2; ++i)
                    d += std::pow(x[i] - foxholes_a[i][j], 6.0);
                inv += 1.0 / d;
            }
            return 1.0 / inv;
        }
        case 25: {
            double f = 0.0;
            for (std::size_t i = 0; i < 11; ++i) {
                const double b = 1.0 / kowalik_b_inv[i];
                const double num = x[0] * (b * b + b * x[1]);
                const double den = b * b + b * x[2] + x[3];
                const double d = kowalik_a[i] - num / den;
                f += d * d;
            }
            return f;
        }
        case 26: {
            const double x1 = x[0], x2 = x[1];
            const double q = x1 * x1;
            return 4.0 * q - 2.1 * q * q + q * q * q / 3.0 + x1 * x2 -
                   4.0 * x2 * x2 + 4.0 * x2 * x2 * x2 * x2;
        }
        case 27: {
            const double x1 = x[0], x2 = x[1];
            const double t = x2 - 5.1 / (4.0 * pi * pi) * x1 * x1 + 5.0 / pi * x1 - 6.0;
            return t * t + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x1) + 10.0;
        }
        case 28: {
            const double x1 = x[0], x2 = x[1];
            const double a = x1 + x2 + 1.0;
            const double t1 = 1.0 + a * a * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 -
                                             14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
            const double b = 2.0 * x1 - 3.0 * x2;
            const double t2 = 30.0 + b * b * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 +
                                              48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
            return t1 * t2;
        }
        case 29:
            return hartmann(x, hartmann3_a, hartmann3_p);
        case 30:
            return hartmann6(x);
        case 31:
            return shekel(x, 5);
        case 32:
            return shekel(x, 7);
        case 33:
            return shekel(x, 10);
        default:
            throw std::invalid_argument("benchmark id out of range");
    }
}

/// Problem wrapper for the optimizer and the experiment runner.
inline Problem make_problem(int id, std::optional<std::size_t> dimension = {}) {
    const BenchmarkSpec spec = spec_of(id, dimension);
    Problem problem;
    problem.name = "F" + std::to_string(id);
    problem.bounds = Bounds::uniform(spec.dimension, spec.lower, spec.upper);
    problem.objective = [id](std::span<const double> x, SplitMix64& rng) {
        return evaluate(id, x, rng);
    };
    return problem;
}

}  // namespace ccaa::benchmarks
