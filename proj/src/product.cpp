#include "ctaut/strata.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

// Products of tree strata by generic (A, B)-structures.
//
// Both trees are rooted at the vertex carrying leg 1, so every edge has an inner side
// (away from leg 1) described by its leg set and genus. A tree whose edges are the
// union of the edges of A and B, shared edges identified, is then the same thing as a
// forest order on those edges whose restrictions to A and B recover their own orders.

namespace ctaut {

namespace {

using Mask = std::uint32_t;

struct RootedView {
    std::vector<int> parent;       // parent vertex, -1 at the root
    std::vector<int> parent_psi;   // psi at the parent-side half-edge of the edge to the parent
    std::vector<int> child_psi;    // psi at the child-side half-edge
    std::vector<Mask> legs_below;  // legs in the subtree of v
    std::vector<int> genus_below;
    std::vector<int> order;        // preorder
    int root = 0;
};

RootedView root_at_first_leg(const DecoratedStratum& s) {
    const int nv = static_cast<int>(s.vertices.size());
    RootedView r;
    r.root = s.legs[0].vertex;
    r.parent.assign(nv, -1);
    r.parent_psi.assign(nv, 0);
    r.child_psi.assign(nv, 0);
    r.legs_below.assign(nv, 0);
    r.genus_below.assign(nv, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, other)
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        adj[s.edges[e].a.vertex].push_back({static_cast<int>(e), s.edges[e].b.vertex});
        adj[s.edges[e].b.vertex].push_back({static_cast<int>(e), s.edges[e].a.vertex});
    }
    std::vector<bool> seen(nv, false);
    r.order.push_back(r.root);
    seen[r.root] = true;
    for (std::size_t i = 0; i < r.order.size(); ++i) {
        int v = r.order[i];
        for (auto [e, w] : adj[v]) {
            if (seen[w])
                continue;
            seen[w] = true;
            r.parent[w] = v;
            const auto& ed = s.edges[e];
            bool a_is_parent = ed.a.vertex == v;
            r.parent_psi[w] = a_is_parent ? ed.a.psi : ed.b.psi;
            r.child_psi[w] = a_is_parent ? ed.b.psi : ed.a.psi;
            r.order.push_back(w);
        }
    }
    for (int i = 0; i < s.n; ++i)
        r.legs_below[s.legs[i].vertex] |= Mask{1} << i;
    for (int v = 0; v < nv; ++v)
        r.genus_below[v] = s.vertices[v].genus;
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        int v = *it;
        if (r.parent[v] >= 0) {
            r.legs_below[r.parent[v]] |= r.legs_below[v];
            r.genus_below[r.parent[v]] += r.genus_below[v];
        }
    }
    return r;
}

bool is_ancestor(const RootedView& r, int up, int down) {
    for (int w = r.parent[down]; w >= 0; w = r.parent[w])
        if (w == up)
            return true;
    return false;
}

struct UnionEdge {
    int a = -1;  // child vertex in A, or -1
    int b = -1;  // child vertex in B, or -1
    Mask legs = 0;
    int genus = 0;
};

bool subset(Mask x, Mask y) { return (x & ~y) == 0; }

class ProductBuilder {
public:
    ProductBuilder(const DecoratedStratum& a, const DecoratedStratum& b, const Rational& coef,
                   StrataClass& out)
        : A_(a), B_(b), ra_(root_at_first_leg(a)), rb_(root_at_first_leg(b)), coef_(coef),
          out_(out) {}

    void run() {
        std::vector<int> a_free, b_free;
        std::vector<UnionEdge> fixed;
        std::vector<bool> b_used(B_.vertices.size(), false);
        for (int c : ra_.order) {
            if (c == ra_.root)
                continue;
            UnionEdge u{c, -1, ra_.legs_below[c], ra_.genus_below[c]};
            if (u.legs == 0) {
                a_free.push_back(c);
                continue;
            }
            for (int d : rb_.order)
                if (d != rb_.root && rb_.legs_below[d] == u.legs && rb_.genus_below[d] == u.genus) {
                    u.b = d;
                    b_used[d] = true;
                }
            fixed.push_back(u);
        }
        for (int d : rb_.order) {
            if (d == rb_.root || b_used[d])
                continue;
            if (rb_.legs_below[d] == 0)
                b_free.push_back(d);
            else
                fixed.push_back({-1, d, rb_.legs_below[d], rb_.genus_below[d]});
        }
        // Legged splits must be pairwise compatible.
        for (std::size_t i = 0; i < fixed.size(); ++i)
            for (std::size_t j = i + 1; j < fixed.size(); ++j) {
                Mask x = fixed[i].legs, y = fixed[j].legs;
                if ((x & y) == 0)
                    continue;
                if (x == y) {
                    if (fixed[i].genus == fixed[j].genus)
                        return;
                    continue;
                }
                if (subset(x, y)) {
                    if (fixed[i].genus > fixed[j].genus)
                        return;
                } else if (subset(y, x)) {
                    if (fixed[j].genus > fixed[i].genus)
                        return;
                } else {
                    return;
                }
            }
        fixed_ = std::move(fixed);
        match_free(a_free, b_free, 0, std::vector<bool>(b_free.size(), false), {});
    }

private:
    // Partial matchings between leg-free edges of equal genus.
    void match_free(const std::vector<int>& a_free, const std::vector<int>& b_free, std::size_t i,
                    std::vector<bool> b_taken, std::vector<UnionEdge> chosen) {
        if (i == a_free.size()) {
            for (std::size_t j = 0; j < b_free.size(); ++j)
                if (!b_taken[j])
                    chosen.push_back({-1, b_free[j], 0, rb_.genus_below[b_free[j]]});
            edges_ = fixed_;
            free_begin_ = edges_.size();
            edges_.insert(edges_.end(), chosen.begin(), chosen.end());
            assign_parents();
            return;
        }
        const int c = a_free[i];
        const int h = ra_.genus_below[c];
        auto with = chosen;
        with.push_back({c, -1, 0, h});
        match_free(a_free, b_free, i + 1, b_taken, with);
        for (std::size_t j = 0; j < b_free.size(); ++j) {
            if (b_taken[j] || rb_.genus_below[b_free[j]] != h)
                continue;
            b_taken[j] = true;
            auto w = chosen;
            w.push_back({c, b_free[j], 0, h});
            match_free(a_free, b_free, i + 1, b_taken, w);
            b_taken[j] = false;
        }
    }

    void assign_parents() {
        const std::size_t ne = edges_.size();
        parent_.assign(ne, -1);
        // Legged edges: the smallest strictly larger legged split.
        for (std::size_t i = 0; i < free_begin_; ++i) {
            int best = -1;
            for (std::size_t j = 0; j < free_begin_; ++j) {
                if (i == j || !contains(j, i))
                    continue;
                if (best < 0 || contains(static_cast<std::size_t>(best), j))
                    best = static_cast<int>(j);
            }
            parent_[i] = best;
        }
        choose_free_parent(free_begin_);
    }

    // Whether the inner side of edge j strictly contains that of edge i (legged j).
    bool contains(std::size_t j, std::size_t i) const {
        const auto& x = edges_[i];
        const auto& y = edges_[j];
        if (!subset(x.legs, y.legs))
            return false;
        if (x.legs == y.legs)
            return x.genus < y.genus;
        return x.genus <= y.genus;
    }

    void choose_free_parent(std::size_t i) {
        if (i == edges_.size()) {
            build();
            return;
        }
        const int h = edges_[i].genus;
        parent_[i] = -1;
        choose_free_parent(i + 1);
        for (std::size_t j = 0; j < edges_.size(); ++j) {
            if (j == i)
                continue;
            const auto& y = edges_[j];
            bool ok = y.legs != 0 ? y.genus >= h : y.genus > h;
            if (!ok)
                continue;
            parent_[i] = static_cast<int>(j);
            choose_free_parent(i + 1);
        }
        parent_[i] = -1;
    }

    bool gamma_ancestor(int up, int down) const {
        for (int w = parent_[down]; w >= 0; w = parent_[w])
            if (w == up)
                return true;
        return false;
    }

    void build() {
        const int ne = static_cast<int>(edges_.size());
        const int n = A_.n;
        // Gamma vertices: 0 is the root, 1 + i is the inner end of union edge i.
        std::vector<Mask> own_legs(ne + 1);
        std::vector<int> genus(ne + 1);
        std::vector<int> degree(ne + 1, 0);
        const Mask all = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
        own_legs[0] = all;
        genus[0] = A_.g;
        for (int i = 0; i < ne; ++i) {
            own_legs[1 + i] = edges_[i].legs;
            genus[1 + i] = edges_[i].genus;
        }
        for (int i = 0; i < ne; ++i) {
            int p = parent_[i] + 1;
            if (!subset(edges_[i].legs, own_legs[p]))
                return;
            own_legs[p] &= ~edges_[i].legs;
            genus[p] -= edges_[i].genus;
            degree[p] += 1;
            degree[1 + i] += 1;
        }
        for (int v = 0; v <= ne; ++v) {
            if (genus[v] < 0)
                return;
            int val = degree[v] + __builtin_popcount(own_legs[v]);
            if (2 * genus[v] - 2 + val <= 0)
                return;
        }
        // Ancestor relations must restrict to those of A and B.
        for (int i = 0; i < ne; ++i)
            for (int j = 0; j < ne; ++j) {
                if (i == j)
                    continue;
                bool g_anc = gamma_ancestor(i, j);
                if (edges_[i].a >= 0 && edges_[j].a >= 0 &&
                    g_anc != is_ancestor(ra_, edges_[i].a, edges_[j].a))
                    return;
                if (edges_[i].b >= 0 && edges_[j].b >= 0 &&
                    g_anc != is_ancestor(rb_, edges_[i].b, edges_[j].b))
                    return;
            }

        // Image vertices in A and B.
        std::vector<int> to_a(ne + 1), to_b(ne + 1);
        to_a[0] = ra_.root;
        to_b[0] = rb_.root;
        for (int i = 0; i < ne; ++i) {
            int w = i;
            while (w >= 0 && edges_[w].a < 0)
                w = parent_[w];
            to_a[1 + i] = w < 0 ? ra_.root : edges_[w].a;
            w = i;
            while (w >= 0 && edges_[w].b < 0)
                w = parent_[w];
            to_b[1 + i] = w < 0 ? rb_.root : edges_[w].b;
        }

        DecoratedStratum s;
        s.g = A_.g;
        s.n = n;
        s.vertices.resize(ne + 1);
        for (int v = 0; v <= ne; ++v)
            s.vertices[v].genus = genus[v];
        s.legs.resize(n);
        for (int l = 0; l < n; ++l) {
            int v = 0;
            for (int w = 0; w <= ne; ++w)
                if (own_legs[w] >> l & 1u)
                    v = w;
            s.legs[l] = {v, A_.legs[l].psi + B_.legs[l].psi};
        }
        std::vector<int> shared;
        for (int i = 0; i < ne; ++i) {
            DecoratedStratum::Edge e{{parent_[i] + 1, 0}, {1 + i, 0}};
            if (edges_[i].a >= 0) {
                e.a.psi += ra_.parent_psi[edges_[i].a];
                e.b.psi += ra_.child_psi[edges_[i].a];
            }
            if (edges_[i].b >= 0) {
                e.a.psi += rb_.parent_psi[edges_[i].b];
                e.b.psi += rb_.child_psi[edges_[i].b];
            }
            if (edges_[i].a >= 0 && edges_[i].b >= 0)
                shared.push_back(i);
            s.edges.push_back(e);
        }
        // Lambda flags pull back to every preimage vertex of positive genus.
        for (int v = 0; v <= ne; ++v)
            if (A_.vertices[to_a[v]].lambda && genus[v] > 0)
                s.vertices[v].lambda = true;

        // Kappa classes at a vertex of A spread over its preimage vertices.
        std::vector<std::pair<int, int>> kappas;  // (A vertex, index)
        for (std::size_t a = 0; a < A_.vertices.size(); ++a)
            for (int k : A_.vertices[a].kappa)
                kappas.push_back({static_cast<int>(a), k});
        distribute_kappa(s, to_a, kappas, 0, shared, 0, coef_);
    }

    void distribute_kappa(DecoratedStratum& s, const std::vector<int>& to_a,
                          const std::vector<std::pair<int, int>>& kappas, std::size_t i,
                          const std::vector<int>& shared, std::size_t j, const Rational& c) {
        if (i < kappas.size()) {
            for (std::size_t v = 0; v < s.vertices.size(); ++v) {
                if (to_a[v] != kappas[i].first)
                    continue;
                auto& kv = s.vertices[v].kappa;
                kv.push_back(kappas[i].second);
                distribute_kappa(s, to_a, kappas, i + 1, shared, j, c);
                kv.pop_back();
            }
            return;
        }
        if (j < shared.size()) {
            auto& e = s.edges[shared[j]];
            e.a.psi += 1;
            distribute_kappa(s, to_a, kappas, i, shared, j + 1, -c);
            e.a.psi -= 1;
            e.b.psi += 1;
            distribute_kappa(s, to_a, kappas, i, shared, j + 1, -c);
            e.b.psi -= 1;
            return;
        }
        for (std::size_t v = 0; v < s.vertices.size(); ++v)
            if (s.vertex_degree(static_cast<int>(v)) > s.vertex_dimension(static_cast<int>(v)))
                return;
        DecoratedStratum t = s;
        for (auto& v : t.vertices)
            std::sort(v.kappa.begin(), v.kappa.end());
        out_.add(t, c);
    }

    const DecoratedStratum& A_;
    const DecoratedStratum& B_;
    RootedView ra_, rb_;
    Rational coef_;
    StrataClass& out_;
    std::vector<UnionEdge> fixed_, edges_;
    std::size_t free_begin_ = 0;
    std::vector<int> parent_;
};

}  // namespace

StrataClass multiply_stratum(const StrataClass& x, const DecoratedStratum& y) {
    if (!y.is_psi_monomial_stratum())
        throw UnsupportedOperand("second factor must be a psi-monomial boundary stratum");
    if (x.genus() != y.g || x.num_points() != y.n)
        throw ArityMismatch("factors live on different moduli spaces");
    if (y.n == 0)
        throw UnsupportedOperand("products need at least one marked point");
    if (y.n > 31)
        throw UnsupportedOperand("too many marked points");
    StrataClass out(y.g, y.n);
    const int dim = y.dimension();
    const int dy = y.degree();
    for (const auto& [k, t] : x.terms()) {
        if (t.stratum.degree() + dy > dim)
            continue;
        ProductBuilder(t.stratum, y, t.coef, out).run();
    }
    return out;
}

StrataClass multiply(const StrataClass& x, const StrataClass& y) {
    StrataClass out(y.genus(), y.num_points());
    for (const auto& [k, t] : y.terms())
        out += multiply_stratum(x, t.stratum) * t.coef;
    return out;
}

}  // namespace ctaut
