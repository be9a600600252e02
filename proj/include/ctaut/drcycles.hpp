#pragma once

#include "ctaut/strata.hpp"

#include <stdexcept>
#include <vector>

namespace ctaut {

struct NonZeroSum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnbalancedVertex : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedGenus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

constexpr int max_dr_genus = 2;

// Compact-type divisor sum_i b_i^2/2 psi_i - 1/2 sum_D b_D^2 D, where D runs over
// separating boundary divisors and b_D is the weight on either side.
StrataClass dr_divisor(int g, const std::vector<long>& b);

// lambda_g DR_g(b) = lambda_g eta^g / g!, pure degree 2g. Empty above max_degree.
StrataClass lambda_dr_ct(int g, const std::vector<long>& b, int max_degree);

// A(v): lambda_dr_ct of balanced half-edge values, negative half-edge last.
StrataClass vertex_a(int g, const std::vector<long>& values, int max_degree);

}  // namespace ctaut
