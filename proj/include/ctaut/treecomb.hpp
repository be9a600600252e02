#pragma once

#include "ctaut/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctaut {

struct UnstableSignature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A positive half-edge at a vertex: either a regular leg or the edge to a child.
struct PositiveHalfEdge {
    enum class Kind { Leg, Child } kind;
    int index;  // regular leg 0..n-1, or child vertex id
    friend bool operator==(const PositiveHalfEdge&, const PositiveHalfEdge&) = default;
};

// Stable rooted tree with n regular legs and m frozen legs on the root.
//
// Vertex 0 is the root; every other vertex is joined to its parent by one edge,
// which we identify with the child vertex. Half-edges of v are ordered as
// marked points of M_{g(v),|H(v)|}: positive half-edges sorted by their smallest
// descendant regular leg (leg-free child edges last), then the negative ones
// (the frozen legs at the root, or the parent edge elsewhere).
class StableRootedTree {
public:
    struct Vertex {
        int genus = 0;
        int parent = -1;
        std::vector<int> children;
        std::vector<int> legs;  // regular legs, 0-based
    };

    StableRootedTree(int g, int n, int m, std::vector<Vertex> vertices);

    int genus() const { return g_; }
    int num_regular() const { return n_; }
    int num_frozen() const { return m_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return vertices_.size() - 1; }
    const Vertex& vertex(int v) const { return vertices_.at(v); }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    int valence(int v) const;                    // |H(v)|
    int chi(int v) const;                        // 2g(v) - 2 + |H(v)|
    int dimension(int v) const;                  // 3g(v) - 3 + |H(v)|
    int num_positive(int v) const;               // |H_+(v)|
    int num_negative(int v) const;               // |H_-(v)|
    const std::vector<PositiveHalfEdge>& positive_order(int v) const { return order_.at(v); }

    const std::vector<int>& descendant_legs(int v) const { return dl_.at(v); }  // DL(v)
    std::vector<int> descendant_vertices(int v) const;                          // DV(v), includes v
    bool is_descendant(int w, int v) const;                                     // w in DV(v)
    int descendant_chi(int v) const;                                            // D chi(v)
    std::vector<int> positive_descendants(const PositiveHalfEdge& h) const;     // DH(h), child ids

    // Smallest descendant leg of a positive half-edge, or n + child id when leg-free.
    int sort_key(const PositiveHalfEdge& h) const;

    bool has_symmetric_siblings() const;  // identical leg-free sibling subtrees exist
    const std::string& canonical() const { return canonical_; }

private:
    std::string subtree_string(int v) const;

    int g_, n_, m_;
    std::vector<Vertex> vertices_;
    std::vector<std::vector<int>> dl_;
    std::vector<std::vector<PositiveHalfEdge>> order_;
    std::string canonical_;
};

// All isomorphism classes of stable rooted trees, sorted by (edges, canonical form).
std::vector<StableRootedTree> enumerate_srt(int g, int n, int m);

struct DegreeLabeledTree {
    const StableRootedTree* tree;
    std::vector<int> p;  // degree label per vertex
    int total_degree() const;  // |E| + sum p(v)
};

// Degree labelings 0 <= p(v) <= 3g(v)-3+|H(v)|, optionally also p(v) >= g(v).
std::vector<DegreeLabeledTree> enumerate_dlsrt(const std::vector<StableRootedTree>& trees,
                                               bool require_p_at_least_genus);

using LevelFunction = std::vector<int>;

// Admissible level functions, listed explicitly.
std::vector<LevelFunction> admissible_level_functions(const StableRootedTree& t,
                                                      const std::vector<int>& p);

// Signed count of admissible level functions, sum (-1)^{max level}. Computed by a
// memoized level-by-level recursion; does not materialize the level functions.
long c_lvl(const StableRootedTree& t, const std::vector<int>& p);

// Cut inequality for a set of vertices forming levels 0..i (bitmask over vertex ids).
bool cut_inequality_holds(const StableRootedTree& t, const std::vector<int>& p,
                          std::uint64_t prefix);

enum class FlowConvention { Positive, Balanced };

// Values a(h), a(e), a(v) for given leg values.
struct FlowAssignment {
    FlowConvention convention;
    std::vector<Rational> vertex;                    // a(v)
    std::vector<Rational> edge;                      // a(e) indexed by child vertex (root entry 0)
    std::vector<std::vector<Rational>> half_edges;   // per vertex, in marked-point order
    Rational frozen;                                 // value on frozen legs: -sum a_i (balanced) or 0
};

FlowAssignment flow_assignment(const StableRootedTree& t, const std::vector<Rational>& a,
                               FlowConvention convention);

}  // namespace ctaut
