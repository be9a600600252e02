#include "ctaut/drcycles.hpp"
#include "ctaut/exactmath.hpp"
#include "ctaut/integrate.hpp"

#include "doctest.h"

#include <numeric>
#include <set>

using namespace ctaut;

TEST_CASE("genus zero and degenerate weights") {
    CHECK(lambda_dr_ct(0, {2, -1, -1}, 0) == StrataClass::fundamental(0, 3));
    CHECK(vertex_a(0, {3, 1, -4}, 5) == StrataClass::fundamental(0, 3));
    CHECK(lambda_dr_ct(1, {0, 0}, 2).is_zero());
    CHECK(lambda_dr_ct(2, {0, 0, 0}, 6).is_zero());
    // degree 2g exceeds the truncation
    CHECK(lambda_dr_ct(1, {1, -1}, 1).is_zero());
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(lambda_dr_ct(1, {1, 1}, 2), NonZeroSum);
    CHECK_THROWS_AS(vertex_a(1, {2, -1}, 2), UnbalancedVertex);
    CHECK_THROWS_AS(lambda_dr_ct(3, {1, -1}, 6), UnsupportedGenus);
}

TEST_CASE("genus one two-point class") {
    // lambda_1 a^2/2 (psi_1 + psi_2); the separating divisor has zero weight on each side
    for (long a = 1; a <= 4; ++a) {
        auto x = lambda_dr_ct(1, {a, -a}, 2);
        CHECK(x.max_degree() == 2);
        CHECK(x.degree_part(2) == x);
        CHECK(integrate_top(x) == Rational(a * a, 24));
        CHECK(vertex_a(1, {a, -a}, 2) == x);
    }
}

TEST_CASE("pure degree 2g, trees only, scaling by k^{2g}") {
    const std::vector<std::vector<long>> weights{{2, -1, -1}, {3, 1, -4}, {1, -1}, {2, 2, -1, -3}};
    for (int g = 1; g <= 2; ++g)
        for (const auto& b : weights) {
            const int n = static_cast<int>(b.size());
            if (2 * g > 3 * g - 3 + n || (g == 2 && n > 3))
                continue;
            auto x = lambda_dr_ct(g, b, 10);
            CHECK(x.degree_part(2 * g) == x);
            CHECK(!x.is_zero());
            for (long k = 2; k <= 3; ++k) {
                std::vector<long> kb;
                for (long v : b)
                    kb.push_back(k * v);
                CHECK(lambda_dr_ct(g, kb, 10) == x * pow(Rational(k), 2 * g));
            }
            std::vector<long> neg;
            for (long v : b)
                neg.push_back(-v);
            CHECK(lambda_dr_ct(g, neg, 10) == x);
        }
}

TEST_CASE("a zero weight is a pullback") {
    const std::vector<std::vector<long>> weights{{1, -1}, {2, -1, -1}, {3, -3}};
    for (int g = 1; g <= 2; ++g)
        for (const auto& b : weights) {
            const int n = static_cast<int>(b.size());
            if (2 * g > 3 * g - 3 + n + 1)
                continue;
            auto base = lambda_dr_ct(g, b, 10);
            auto more = b;
            more.push_back(0);
            auto x = lambda_dr_ct(g, more, 10);
            INFO("g=" << g << " n=" << n);
            CHECK(vanish_check(x - pull_back_last(base), 0).verdict != Verdict::Nonzero);
        }
}

TEST_CASE("coefficients interpolate to homogeneous polynomials of degree 2g") {
    for (int g = 1; g <= 2; ++g) {
        const std::size_t k = 2;  // free weights; the last is minus their sum
        const auto grid = interpolation_grid(k, 2 * g);
        std::vector<StrataClass> values;
        std::set<std::string> keys;
        for (const auto& pt : grid) {
            std::vector<long> b = pt;
            b.push_back(-std::accumulate(pt.begin(), pt.end(), 0L));
            values.push_back(lambda_dr_ct(g, b, 10));
            for (const auto& [key, t] : values.back().terms())
                keys.insert(key);
        }
        CHECK(!keys.empty());
        for (const auto& key : keys) {
            std::vector<Sample> samples;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                auto it = values[i].terms().find(key);
                samples.push_back({grid[i], it == values[i].terms().end() ? Rational(0)
                                                                          : it->second.coef});
            }
            CHECK_NOTHROW(homogeneous_interpolate(samples, 2 * g, k));
        }
    }
}
