#include "doctest.h"

#include "ctaut/integrate.hpp"

#include <functional>
#include <map>
#include <numeric>

using namespace ctaut;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

Rational dfact(int m) {  // (2m+1)!!
    Rational r(1);
    for (int j = 2 * m + 1; j > 1; j -= 2)
        r *= q(j);
    return r;
}

// Plain DVV recursion on the first exponent >= 1, no string or dilaton shortcuts.
Rational dvv(int g, std::vector<int> k) {
    const int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        return q(0);
    if (std::accumulate(k.begin(), k.end(), 0) != 3 * g - 3 + n)
        return q(0);
    for (int x : k)
        if (x < 0)
            return q(0);
    auto it = std::find_if(k.begin(), k.end(), [](int x) { return x >= 1; });
    if (it == k.end())
        return (g == 0 && n == 3) ? q(1) : q(0);
    if (g == 1 && n == 1)
        return q(1, 24);
    const int kk = *it - 1;
    std::vector<int> s;
    for (auto j = k.begin(); j != k.end(); ++j)
        if (j != it)
            s.push_back(*j);
    Rational sum(0);
    for (std::size_t j = 0; j < s.size(); ++j) {
        auto t = s;
        t[j] = kk + s[j];
        sum += dfact(kk + s[j]) / dfact(s[j] - 1) * dvv(g, t);
    }
    for (int r = 0; r <= kk - 1; ++r) {
        int u = kk - 1 - r;
        Rational w = dfact(r) * dfact(u) / q(2);
        auto t = s;
        t.push_back(r);
        t.push_back(u);
        Rational inner = dvv(g - 1, t);
        for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
            std::vector<int> a{r}, b{u};
            for (std::size_t j = 0; j < s.size(); ++j)
                (mask >> j & 1u ? a : b).push_back(s[j]);
            for (int g1 = 0; g1 <= g; ++g1)
                inner += dvv(g1, a) * dvv(g - g1, b);
        }
        sum += w * inner;
    }
    return sum / dfact(kk + 1);
}

void for_each_exponent(int n, int total, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> k(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            k[i] = left;
            f(k);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            k[i] = x;
            rec(i + 1, left - x);
        }
    };
    if (n > 0)
        rec(0, total);
}

}  // namespace

TEST_CASE("psi integral values") {
    CHECK(psi_integral(0, {0, 0, 0}) == q(1));
    CHECK(psi_integral(1, {1}) == q(1, 24));
    CHECK(psi_integral(2, {4}) == q(1, 1152));
    CHECK(psi_integral(3, {7}) == q(1, 82944));
    CHECK(psi_integral(2, {2, 3}) == q(29, 5760));
    CHECK(psi_integral(2, {2, 2, 2}) == q(7, 240));
    CHECK_THROWS_AS(psi_integral(1, {2}), DimensionMismatch);
    CHECK_THROWS_AS(psi_integral(0, {0, 0}), DimensionMismatch);
}

TEST_CASE("psi integrals agree with an independent recursion") {
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            int dim = 3 * g - 3 + n;
            if (dim < 0 || 2 * g - 2 + n <= 0)
                continue;
            for_each_exponent(n, dim, [&](const std::vector<int>& k) {
                INFO("g=" << g << " n=" << n);
                CHECK(psi_integral(g, k) == dvv(g, k));
            });
        }
}

TEST_CASE("genus-0 closed form") {
    for (int n = 3; n <= 8; ++n)
        for_each_exponent(n, n - 3, [&](const std::vector<int>& k) {
            Rational expected = factorial(n - 3);
            for (int x : k)
                expected /= factorial(x);
            CHECK(psi_integral(0, k) == expected);
        });
}

TEST_CASE("string and dilaton equations") {
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 7; ++n) {
            int dim = 3 * g - 3 + n;  // for the n-point correlator
            if (2 * g - 2 + n <= 0 || dim < 0)
                continue;
            for_each_exponent(n, dim + 1, [&](const std::vector<int>& k) {
                auto with0 = k;
                with0.push_back(0);
                Rational rhs(0);
                for (int j = 0; j < n; ++j)
                    if (k[j] > 0) {
                        auto t = k;
                        t[j] -= 1;
                        rhs += psi_integral(g, t);
                    }
                CHECK(psi_integral(g, with0) == rhs);
            });
            for_each_exponent(n, dim, [&](const std::vector<int>& k) {
                auto with1 = k;
                with1.push_back(1);
                CHECK(psi_integral(g, with1) == q(2 * g - 2 + n) * psi_integral(g, k));
            });
        }
}

TEST_CASE("lambda and kappa integrals") {
    CHECK(lambda_psi_integral(1, {0}) == q(1, 24));
    CHECK(vertex_integral(1, {0}, {}, true) == q(1, 24));
    CHECK(lambda_psi_integral(2, {2}) == q(7, 5760));
    CHECK(vertex_integral(1, {0}, {1}, false) == q(1, 24));
    CHECK(vertex_integral(1, {0, 2}, {}, false) == q(1, 24));
    CHECK(vertex_integral(0, {0, 0, 0, 0}, {1}, false) == q(1));
    CHECK(vertex_integral(0, {0, 0, 0, 0, 0}, {2}, false) == q(1));
    CHECK(vertex_integral(0, {0, 0, 0, 0, 0}, {1, 1}, false) == q(5));
    // lambda_g pulls back along forgetful maps: dilaton for lambda_g psi integrals.
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n)
            for_each_exponent(n, 2 * g - 3 + n, [&](const std::vector<int>& k) {
                auto with1 = k;
                with1.push_back(1);
                CHECK(lambda_psi_integral(g, with1) == q(2 * g - 2 + n) * lambda_psi_integral(g, k));
            });
}

TEST_CASE("kappa reduction agrees with pushforward of psi") {
    // kappa_a kappa_b = pi_*(psi^{a+1} psi^{b+1}) - kappa_{a+b} on two forgotten points.
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            int pts = a + b + 3;
            std::vector<int> zeros(pts, 0);
            auto two = zeros;
            two.push_back(a + 1);
            two.push_back(b + 1);
            auto one = zeros;
            one.push_back(a + b + 1);
            Rational expected = psi_integral(0, two) - psi_integral(0, one);
            CHECK(vertex_integral(0, zeros, {a, b}, false) == expected);
        }
}

TEST_CASE("pairing table agrees with the pairing profile") {
    StrataClass x = psi_geometric(0, 6, {q(1), q(2), q(3), q(0), q(0), q(0)}, 3);
    x += pull_back_last(psi_geometric(0, 5, {q(4), q(1), q(0), q(0), q(2)}, 2)) * q(-3);
    for (int d = 0; d <= 3; ++d) {
        PairingTable table(0, 6, d);
        const auto profile = pairing_profile(x, d);
        REQUIRE(profile.size() == table.size());
        for (int rep = 0; rep < 2; ++rep) {
            const auto values = table.pair(x * q(rep + 1));
            for (std::size_t i = 0; i < profile.size(); ++i) {
                CHECK(table.keys()[i] == profile[i].key);
                CHECK(values[i] == profile[i].value * q(rep + 1));
            }
        }
    }
}
