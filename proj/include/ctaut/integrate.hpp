#pragma once

#include "ctaut/rational.hpp"
#include "ctaut/strata.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctaut {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// <tau_{k_1} ... tau_{k_n}>_g. Throws DimensionMismatch unless sum k_i = 3g-3+n.
Rational psi_integral(int g, std::vector<int> k);

// Integral of lambda_g prod psi_i^{k_i} over M_{g,n}, g >= 1.
Rational lambda_psi_integral(int g, std::vector<int> k);

// Integral over M_{g,n} of prod psi_i^{psi_i} prod kappa_{b} (times lambda_g if flagged).
// Returns 0 when the degree is not the dimension.
Rational vertex_integral(int g, std::vector<int> psi, std::vector<int> kappa, bool lambda);

Rational integrate_stratum(const DecoratedStratum& s);

// Requires every term to be of top degree.
Rational integrate_class(const StrataClass& x);

// Integral of the top-degree part.
Rational integrate_top(const StrataClass& x);

struct Pairing {
    std::string key;
    DecoratedStratum y;
    Rational value;
};

// Pairings of the degree-d part of x with every psi-monomial boundary stratum of
// complementary degree.
std::vector<Pairing> pairing_profile(const StrataClass& x, int d);

// pairing_profile for many classes on one space: the pairing row of every stratum is
// computed once and reused.
class PairingTable {
public:
    PairingTable(int g, int n, int d);
    std::size_t size() const { return keys_.size(); }
    const std::vector<std::string>& keys() const { return keys_; }
    // Pairings of the degree-d part of x, in the order of keys().
    std::vector<Rational> pair(const StrataClass& x);

private:
    int g_, n_, d_;
    std::vector<std::string> keys_;
    std::vector<DecoratedStratum> strata_;
    std::map<std::string, std::vector<std::pair<std::size_t, Rational>>> rows_;  // sparse
};

enum class Verdict { Certified, Consistent, Nonzero };
const char* verdict_name(Verdict v);

struct VanishResult {
    Verdict verdict = Verdict::Certified;
    std::size_t pairings = 0;
    int witness_degree = -1;
    std::string witness;  // key of the pairing stratum
    Rational value;
};

// Checks all pairings of (x)_d for d >= d_min. Certified only in genus 0, where the
// pairing is perfect; Consistent in higher genus.
VanishResult vanish_check(const StrataClass& x, int d_min);

}  // namespace ctaut
