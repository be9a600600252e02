#pragma once

#include "ctaut/exactmath.hpp"
#include "ctaut/integrate.hpp"
#include "ctaut/multipoly.hpp"
#include "ctaut/strata.hpp"
#include "ctaut/treecomb.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctaut {

struct InexactDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { Omega, LvlOmega, Psi, LvlPsi, A1, A0 };
const char* family_name(Family f);
Family parse_family(const std::string& s);

struct ClassRequest {
    Family family = Family::Omega;
    int g = 0, n = 0, m = 2;
    std::vector<long> a;
    int max_degree = -1;  // negative: dimension of the target space
};

// Marked points of M_{g, n+m}.
int target_points(const ClassRequest& r);

// Sum over stable rooted trees of (-1)^{|E|} prod a(e) times the grafted vertex classes.
StrataClass omega_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree);
StrataClass psi_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree);

// Sum over degree-labeled trees of C_lvl(T,p) prod a(e) times the degree-p(v) parts.
StrataClass lvl_omega_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree);
StrataClass lvl_psi_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree);

// Sum over SRT(g,n,1) of prod a(e) prod chi(v)/Dchi(v) times the grafted lambda DR classes.
StrataClass a1_class(int g, int n, const std::vector<long>& a, int max_degree);

// pi_* A^1 / (a_1 + ... + a_n) at a point with nonzero sum.
StrataClass a0_class(int g, int n, const std::vector<long>& a, int max_degree);

StrataClass assemble(const ClassRequest& r);

// Pushforward forgetting the last point, applied tree by tree so that the full class is
// never held in memory. max_degree refers to the pushed class.
StrataClass pushforward_class(const ClassRequest& r);

// Graft per-vertex classes along a stable rooted tree; vertex classes live on
// M_{g(v), |H(v)|} with points in the tree's marked-point order.
StrataClass graft_tree(const StableRootedTree& t, const std::vector<StrataClass>& vertex_classes);

// Coefficient of prod a_i^{d_i} in lvlPsi^m_{g,n}, as a Pochhammer-weighted graph sum.
StrataClass b_coefficient(int g, const std::vector<int>& d, int m);

// Classes whose coefficients are polynomials in a_1..a_n.
struct PolyClass {
    struct Term {
        DecoratedStratum stratum;
        MultiPoly coef;
    };
    int g = 0, n_points = 0;
    std::size_t n_vars = 0;
    std::map<std::string, Term> terms;

    StrataClass evaluate(const std::vector<long>& a) const;
    // Coefficient class of the monomial prod a_i^{e_i}.
    StrataClass coefficient(const Exponent& e) const;
    bool is_zero() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
};

// Interpolates each stratum coefficient of `f` as a homogeneous polynomial of degree
// (stratum degree + degree_shift) from samples on the deterministic grid.
// Throws InconsistentSamples when some coefficient is not of that form.
PolyClass interpolate_class(const std::function<StrataClass(const std::vector<long>&)>& f,
                            int g, int n_points, std::size_t n_vars, int max_degree,
                            int degree_shift = 0);

PolyClass interpolate_request(const ClassRequest& r);

// Class-level polynomials: pairings of the degree-d part against every psi-monomial
// boundary stratum of complementary degree, each interpolated as a homogeneous polynomial
// of degree d. Representatives built from Omega classes in genus >= 1 have coefficients
// that are only Laurent in the vertex flows; their pairings are polynomial.
struct PairingPoly {
    int g = 0, n_points = 0;
    std::size_t n_vars = 0;
    std::map<int, std::map<std::string, MultiPoly>> by_degree;  // degree -> stratum key -> poly
    std::map<int, std::size_t> pairings;  // degree -> number of pairing strata, zero or not
    std::size_t size() const;
};
// Degrees below min_degree are skipped.
PairingPoly interpolate_pairings(const std::function<StrataClass(const std::vector<long>&)>& f,
                                 int g, int n_points, std::size_t n_vars, int max_degree,
                                 int min_degree = 0);
PairingPoly interpolate_request_pairings(const ClassRequest& r, int min_degree = 0);

// A^0 as a polynomial class: interpolated pi_* A^1 divided exactly by a_1 + ... + a_n.
PolyClass a0_polynomial(int g, int n, int max_degree);

// Equality: identical canonical expansions, or else a vanishing difference by pairing.
struct Equality {
    bool canonical = false;
    Verdict verdict = Verdict::Nonzero;
    bool holds() const { return canonical || verdict != Verdict::Nonzero; }
};
Equality compare_classes(const StrataClass& x, const StrataClass& y);

// Relations on M_{g,1+m}, multiplied by lambda_g where they involve Hodge classes.
// ASOmega / ASPsi: m = 0 selects the line with the DR cycle, m = 1 the two-point line,
// m >= 2 the line with m extra points. AS2 and ASDR ignore m.
enum class Relation { AS2, ASm, ASDR, ASOmega, ASPsi };
const char* relation_name(Relation r);
StrataClass as_relation_residual(Relation kind, int g, int m, int r);

// gamma1 on M_{g1,2}, gamma2 on M_{g2,1+m}: glue the second leg of gamma1 to the first
// leg of gamma2. Legs of the result: gamma1's first, then gamma2's remaining ones.
StrataClass concatenate(const StrataClass& gamma1, const StrataClass& gamma2);

// x * psi_leg^k
StrataClass times_psi_power(const StrataClass& x, int leg, int k);

}  // namespace ctaut
