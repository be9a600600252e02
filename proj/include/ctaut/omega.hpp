#pragma once

#include "ctaut/rational.hpp"
#include "ctaut/strata.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace ctaut {

struct ModularConstraintViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonpositiveFlow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameters of Omega^{[x]}_{g,n}(r, s; a_1, ..., a_n).
struct OmegaParams {
    long r = 1;
    long s = 0;
    std::vector<long> a;
    Rational x{1};
};

// Tree part of the graph sum for Omega, truncated at max_degree. Only meaningful after
// multiplication by lambda_g (or on compact type).
StrataClass omega_ct(const OmegaParams& p, int g, int max_degree);

// lambda_g times omega_ct, built term by term; max_degree bounds the total degree.
StrataClass lambda_omega_ct(const OmegaParams& p, int g, int max_degree);

// lambda_0..lambda_g on M_{g,n}. lambda[g] is the exact top class (vertex flags); the
// others are tree truncations of Mumford's expansion, valid when multiplied by lambda_g.
struct MumfordExpansion {
    int g = 0, n = 0;
    std::vector<StrataClass> lambda;
    // sum_i (-1)^i lambda_i a^i
    StrataClass hodge_dual(const Rational& a) const;
};
MumfordExpansion mumford_lambda(int g, int n, int max_degree);

// a^{1-g} lambda_g Omega^{[a]}_{g,|H|}(a, 0; -a(h_1), ..., -a(h_k), 0, ..., 0), with
// k = values.size() positive half-edges and `negatives` trailing zero fields.
StrataClass vertex_omega(int g, const std::vector<long>& values, int negatives, long a,
                         int max_degree);

// Streams the (unsimplified) terms of vertex_omega; strata may repeat.
using TermSink = std::function<void(const DecoratedStratum&, const Rational&)>;
void vertex_omega_terms(int g, const std::vector<long>& values, int negatives, long a,
                        int max_degree, const TermSink& sink);

// prod_i 1/(1 - a(h_i) psi_i) over positive half-edges, truncated.
StrataClass vertex_psi(int g, const std::vector<long>& values, int negatives, int max_degree);

}  // namespace ctaut
