#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ccaa/benchmarks.hpp"

using namespace ccaa;
using namespace ccaa::benchmarks;

namespace {

double eval(int id, const std::vector<double>& x) {
    SplitMix64 rng(0);
    return evaluate(id, x, rng);
}

std::vector<double> fill(std::size_t n, double v) { return std::vector<double>(n, v); }

}  // namespace

TEST_CASE("registry rows match the published table") {
    const auto f2 = spec_of(2);
    CHECK(f2.lower == -10.0);
    CHECK(f2.upper == 10.0);
    CHECK(f2.f_min == 0.0);
    CHECK(f2.scalable);
    CHECK(f2.dimension == 30);

    const auto f30 = spec_of(30);
    CHECK(f30.dimension == 6);
    CHECK(f30.lower == 0.0);
    CHECK(f30.upper == 1.0);
    CHECK(f30.f_min == -3.32);

    const auto f11 = spec_of(11, 500);
    CHECK(f11.dimension == 500);
    CHECK(f11.f_min_at(500) == Catch::Approx(-418.9829 * 500));

    CHECK_THROWS_AS(spec_of(24, 30), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(0), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(34), std::invalid_argument);
}

TEST_CASE("scalable functions hit their minima at the known minimizers") {
    const std::size_t n = 30;
    // Origin minimizers.
    for (int id : {1, 2, 3, 4, 5, 8, 10, 12, 13, 14, 17, 18, 19, 20, 22, 23})
        CHECK_THAT(eval(id, fill(n, 0.0)), Catch::Matchers::WithinAbs(0.0, 1e-9));
    // Shifted/scaled minimizers.
    CHECK_THAT(eval(6, fill(n, 1.0)), Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval(7, fill(n, -0.5)), Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval(15, fill(n, -1.0)), Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval(16, fill(n, 1.0)), Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval(11, fill(n, 420.9687)),
               Catch::Matchers::WithinAbs(-418.9829 * 30, 1e-2));
    CHECK_THAT(eval(21, fill(n, std::numbers::pi)),
               Catch::Matchers::WithinAbs(-1.0, 1e-12));
}

TEST_CASE("selected point values") {
    CHECK(eval(1, fill(30, 0.0)) == 0.0);
    CHECK(eval(6, fill(30, 1.0)) == 0.0);
    CHECK_THAT(eval(13, fill(30, 0.0)), Catch::Matchers::WithinAbs(0.0, 1e-12));
    // One off-minimum value computed by hand: F2 at (1, 2) is 1*1 + 2*4.
    CHECK(eval(2, {1.0, 2.0}) == 9.0);
    // F5 is the max-coordinate norm.
    CHECK(eval(5, {3.0, -7.0, 2.0}) == 7.0);
}

TEST_CASE("fixed-dimension functions reproduce the published minima") {
    struct Row {
        int id;
        std::vector<double> minimizer;
        double f_min;
        double tol;
    };
    const std::vector<Row> rows = {
        {24, {-32.0, -32.0}, 1.0, 5e-3},
        {25, {0.1928, 0.1908, 0.1231, 0.1358}, 0.00030, 1e-5},
        {26, {0.08984201, -0.7126564}, -1.0316, 5e-5},
        {27, {std::numbers::pi, 2.275}, 0.398, 5e-4},
        {28, {0.0, -1.0}, 3.0, 1e-9},
        {29, {0.114614, 0.555649, 0.852547}, -3.86, 5e-3},
        {30, {0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573}, -3.32, 5e-3},
        {31, {4.00004, 4.00013, 4.00004, 4.00013}, -10.1532, 2e-4},
        {32, {4.00057, 4.00069, 3.99949, 3.99961}, -10.4028, 2e-4},
        {33, {4.00075, 4.00059, 3.99966, 3.99951}, -10.5363, 2e-4},
    };
    for (const auto& row : rows) {
        INFO("F" << row.id);
        CHECK_THAT(eval(row.id, row.minimizer),
                   Catch::Matchers::WithinAbs(row.f_min, row.tol));
        const auto spec = spec_of(row.id);
        CHECK(spec.dimension == row.minimizer.size());
        for (double v : row.minimizer) {
            CHECK(v >= spec.lower);
            CHECK(v <= spec.upper);
        }
    }
}

TEST_CASE("noisy function consumes exactly one draw per call") {
    SplitMix64 rng(88);
    SplitMix64 mirror(88);
    const auto x = fill(30, 0.25);

    const double noise = mirror.uniform01();
    const double value = evaluate(9, x, rng);
    CHECK(rng.state() == mirror.state());

    SplitMix64 none(0);
    const double base = evaluate(8, x, none);
    CHECK_THAT(value - base, Catch::Matchers::WithinAbs(noise, 1e-15));
}

TEST_CASE("deterministic functions ignore the RNG handle") {
    const auto x = fill(30, 0.37);
    for (int id = first_id; id <= last_id; ++id) {
        if (id == 9) continue;
        const auto spec = spec_of(id);
        const std::vector<double> point(spec.dimension, 0.37);
        SplitMix64 a(1), b(999);
        CHECK(evaluate(id, point, a) == evaluate(id, point, b));
    }
}

TEST_CASE("all functions stay finite across their boxes") {
    for (int id = first_id; id <= last_id; ++id) {
        const auto spec = spec_of(id);
        SplitMix64 rng(static_cast<std::uint64_t>(id) * 101);
        std::vector<double> x(spec.dimension);
        for (int trial = 0; trial < 10000; ++trial) {
            for (auto& v : x) v = rng.uniform(spec.lower, spec.upper);
            const double value = evaluate(id, x, rng);
            REQUIRE(std::isfinite(value));
        }
    }
}

TEST_CASE("dimension mismatch is rejected") {
    SplitMix64 rng(0);
    CHECK_THROWS_AS(evaluate(24, fill(3, 0.0), rng), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(1, {}, rng), std::invalid_argument);
}

TEST_CASE("problem wrapper carries the right box") {
    const auto problem = make_problem(20, 500);
    CHECK(problem.dimension() == 500);
    CHECK(problem.bounds.lower.front() == -100.0);
    CHECK(problem.bounds.upper.back() == 100.0);
    SplitMix64 rng(1);
    CHECK(problem.evaluate(fill(500, 0.0), rng) == 0.0);
}
