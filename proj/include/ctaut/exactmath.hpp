#pragma once

#include "ctaut/multipoly.hpp"
#include "ctaut/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace ctaut {

// B_m(q), where t e^{tx}/(e^t - 1) = sum_m B_m(x) t^m / m!.
Rational bernoulli_value(unsigned m, const Rational& q);
Rational bernoulli_number(unsigned m);

// Falling factorial s (s-1) ... (s-t+1); empty product is 1.
Rational pochhammer(const Rational& s, unsigned t);

struct InconsistentSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using IntPoint = std::vector<long>;
using Sample = std::pair<IntPoint, Rational>;

// Unique homogeneous degree-k polynomial in n variables through the samples.
// Throws InconsistentSamples when no such polynomial exists, InsufficientSamples
// when the samples do not pin it down.
MultiPoly homogeneous_interpolate(const std::vector<Sample>& samples, int k, std::size_t n);

// The same for many value vectors on one set of points: the elimination is done once.
class HomogeneousInterpolator {
public:
    HomogeneousInterpolator(const std::vector<IntPoint>& points, int k, std::size_t n);
    MultiPoly solve(const std::vector<Rational>& values) const;

private:
    int k_;
    std::size_t n_;
    std::vector<Exponent> monomials_;
    std::vector<std::vector<Rational>> solve_rows_;  // coefficient i = row i . values
    std::vector<std::vector<Rational>> check_rows_;  // must annihilate the values
};

// Deterministic grid of positive integer tuples that is unisolvent for homogeneous
// polynomials of degree <= k in n variables: the points (1, 1+t_2, ..., 1+t_n) with
// t_i >= 0 and sum t_i <= k, followed by doubled copies of the first few points so
// that homogeneity itself is exercised.
std::vector<IntPoint> interpolation_grid(std::size_t n, int k);

}  // namespace ctaut
