#pragma once

#include "ctaut/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctaut {

struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedOperand : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A stable tree over M_{g,N} decorated by psi powers on half-edges, kappa classes on
// vertices, and optionally the top lambda class lambda_{g(v)} of each vertex.
//
// The lambda flag exists because lambda_g restricted to a tree stratum is the product
// of the vertex classes lambda_{g(v)}; it is never set on genus-0 vertices.
struct DecoratedStratum {
    struct Vertex {
        int genus = 0;
        std::vector<int> kappa;  // sorted, entries >= 1
        bool lambda = false;
    };
    struct HalfEdge {
        int vertex = 0;
        int psi = 0;
    };
    struct Edge {
        HalfEdge a, b;
    };

    int g = 0;
    int n = 0;  // number of legs N
    std::vector<Vertex> vertices;
    std::vector<HalfEdge> legs;  // leg i
    std::vector<Edge> edges;

    static DecoratedStratum trivial(int g, int n);

    int dimension() const { return 3 * g - 3 + n; }
    int degree() const;
    int valence(int v) const;
    int vertex_dimension(int v) const;
    int vertex_degree(int v) const;  // psi at its half-edges + kappa + lambda
    bool has_kappa() const;
    bool has_lambda() const;
    bool is_psi_monomial_stratum() const { return !has_kappa() && !has_lambda(); }

    // Throws std::invalid_argument unless this is a stable tree with consistent genus.
    void validate() const;
};

// Canonical key (leg-fixing isomorphism invariant) and the stratum relabeled to match.
std::pair<std::string, DecoratedStratum> canonical_form(const DecoratedStratum& s);

// Number of automorphisms of the decorated graph fixing every leg.
long automorphism_count(const DecoratedStratum& s);

// Formal Q-linear combination of decorated strata on a fixed M_{g,N}.
class StrataClass {
public:
    struct Term {
        DecoratedStratum stratum;
        Rational coef;
    };

    StrataClass() = default;
    StrataClass(int g, int n) : g_(g), n_(n) {}
    static StrataClass fundamental(int g, int n, const Rational& c = Rational(1));
    static StrataClass of(const DecoratedStratum& s, const Rational& c = Rational(1));

    int genus() const { return g_; }
    int num_points() const { return n_; }
    const std::map<std::string, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const DecoratedStratum& s, const Rational& c);
    // Adds a term whose stratum is already canonical under `key`.
    void add_canonical(const std::string& key, const DecoratedStratum& s, const Rational& c);

    StrataClass degree_part(int d) const;
    StrataClass truncated(int max_degree) const;
    int max_degree() const;  // -1 for zero

    StrataClass& operator+=(const StrataClass& o);
    StrataClass& operator-=(const StrataClass& o);
    StrataClass& operator*=(const Rational& c);
    friend StrataClass operator+(StrataClass a, const StrataClass& b) { return a += b; }
    friend StrataClass operator-(StrataClass a, const StrataClass& b) { return a -= b; }
    friend StrataClass operator*(StrataClass a, const Rational& c) { return a *= c; }
    friend bool operator==(const StrataClass& a, const StrataClass& b);

    std::string str() const;

private:
    void check_space(const StrataClass& o) const;

    int g_ = 0, n_ = 0;
    std::map<std::string, Term> terms_;
};

// Gluing data: vertex spaces M_{g(v), |points|}; points[j] >= 0 is a global leg,
// points[j] < 0 is one end of edge -(points[j]) - 1. Each edge occurs exactly twice.
struct GraftSkeleton {
    struct Vertex {
        int genus = 0;
        std::vector<int> points;
    };
    int g = 0, n = 0;
    std::vector<Vertex> vertices;
};

// Boundary pushforward of the tensor product of vertex classes.
StrataClass graft(const GraftSkeleton& skeleton, const std::vector<StrataClass>& vertex_classes);

// Product with lambda_g.
StrataClass times_lambda_top(const StrataClass& x);

// X times a psi-monomial boundary stratum (no kappa, no lambda), via excess intersection.
// Requires at least one leg.
StrataClass multiply_stratum(const StrataClass& x, const DecoratedStratum& y);
StrataClass multiply(const StrataClass& x, const StrataClass& y);

// Pushforward along the map forgetting the last leg.
StrataClass forget_last(const StrataClass& x);

// Pullback along the map forgetting a new last leg n+1.
StrataClass pull_back_last(const StrataClass& x);

// Classes pulled back from the vertex space of the leg: multiplication by
// prod 1/(1 - c_i psi_i) on the trivial stratum (truncated at max_degree).
StrataClass psi_geometric(int g, int n, const std::vector<Rational>& c, int max_degree);

// All stable trees on M_{g,N} (undecorated), deterministic order.
std::vector<DecoratedStratum> stable_trees(int g, int n);

// Psi-monomial boundary strata of degree d: every stable tree with every distribution of
// psi exponents over its half-edges within the vertex dimension bounds.
std::vector<DecoratedStratum> psi_monomial_strata(int g, int n, int d);

}  // namespace ctaut
