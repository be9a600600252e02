#include "ctaut/drcycles.hpp"

#include <algorithm>
#include <numeric>

namespace ctaut {

StrataClass dr_divisor(int g, const std::vector<long>& b) {
    const int n = static_cast<int>(b.size());
    StrataClass eta(g, n);
    for (int i = 0; i < n; ++i) {
        DecoratedStratum s = DecoratedStratum::trivial(g, n);
        s.legs[i].psi = 1;
        eta.add(s, Rational(b[i] * b[i], 2));
    }
    for (const auto& t : stable_trees(g, n)) {
        if (t.edges.size() != 1)
            continue;
        long side = 0;
        for (int i = 0; i < n; ++i)
            if (t.legs[i].vertex == 0)
                side += b[i];
        eta.add(t, Rational(-side * side, 2));
    }
    return eta;
}

StrataClass lambda_dr_ct(int g, const std::vector<long>& b, int max_degree) {
    const int n = static_cast<int>(b.size());
    if (std::accumulate(b.begin(), b.end(), 0L) != 0)
        throw NonZeroSum("double ramification weights must sum to zero");
    if (g > max_dr_genus)
        throw UnsupportedGenus("double ramification cycles are only built up to genus 2");
    if (2 * g > max_degree || 2 * g > 3 * g - 3 + n)
        return StrataClass(g, n);
    if (g == 0)
        return StrataClass::fundamental(g, n);
    if (std::all_of(b.begin(), b.end(), [](long x) { return x == 0; }))
        return StrataClass(g, n);
    const StrataClass eta = dr_divisor(g, b);
    StrataClass power = eta;
    for (int k = 2; k <= g; ++k)
        power = multiply(power, eta) * Rational(1, k);
    return times_lambda_top(power);
}

StrataClass vertex_a(int g, const std::vector<long>& values, int max_degree) {
    if (std::accumulate(values.begin(), values.end(), 0L) != 0)
        throw UnbalancedVertex("vertex flow is not balanced");
    return lambda_dr_ct(g, values, max_degree);
}

}  // namespace ctaut
