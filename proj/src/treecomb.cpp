#include "ctaut/treecomb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

namespace ctaut {

StableRootedTree::StableRootedTree(int g, int n, int m, std::vector<Vertex> vertices)
    : g_(g), n_(n), m_(m), vertices_(std::move(vertices)) {
    const int nv = static_cast<int>(vertices_.size());
    if (nv == 0 || vertices_[0].parent != -1)
        throw std::invalid_argument("vertex 0 must be the root");
    int genus_sum = 0;
    std::vector<int> leg_seen(n_, 0);
    for (int v = 0; v < nv; ++v) {
        genus_sum += vertices_[v].genus;
        for (int l : vertices_[v].legs) {
            if (l < 0 || l >= n_ || leg_seen[l]++)
                throw std::invalid_argument("regular legs must be a permutation of 0..n-1");
        }
        for (int c : vertices_[v].children)
            if (c <= 0 || c >= nv || vertices_[c].parent != v)
                throw std::invalid_argument("inconsistent parent/child links");
        if (v > 0) {
            int p = vertices_[v].parent;
            if (p < 0 || p >= nv)
                throw std::invalid_argument("bad parent");
            const auto& ch = vertices_[p].children;
            if (std::find(ch.begin(), ch.end(), v) == ch.end())
                throw std::invalid_argument("child not listed at parent");
        }
    }
    if (genus_sum != g_)
        throw std::invalid_argument("vertex genera do not sum to g");
    if (std::find(leg_seen.begin(), leg_seen.end(), 0) != leg_seen.end())
        throw std::invalid_argument("missing regular leg");

    // Descendant legs, children before parents (reverse DFS preorder).
    std::vector<int> preorder;
    std::function<void(int)> dfs = [&](int v) {
        preorder.push_back(v);
        for (int c : vertices_[v].children)
            dfs(c);
    };
    dfs(0);
    if (static_cast<int>(preorder.size()) != nv)
        throw std::invalid_argument("tree is not connected");
    dl_.assign(nv, {});
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        int v = *it;
        auto& d = dl_[v];
        d = vertices_[v].legs;
        for (int c : vertices_[v].children)
            d.insert(d.end(), dl_[c].begin(), dl_[c].end());
        std::sort(d.begin(), d.end());
    }
    for (int v = 0; v < nv; ++v)
        if (chi(v) <= 0)
            throw std::invalid_argument("unstable vertex");

    order_.assign(nv, {});
    for (int v = 0; v < nv; ++v) {
        auto& o = order_[v];
        for (int l : vertices_[v].legs)
            o.push_back({PositiveHalfEdge::Kind::Leg, l});
        for (int c : vertices_[v].children)
            o.push_back({PositiveHalfEdge::Kind::Child, c});
        std::sort(o.begin(), o.end(), [&](const PositiveHalfEdge& a, const PositiveHalfEdge& b) {
            return sort_key(a) < sort_key(b);
        });
    }
    canonical_ = subtree_string(0);
    if (m_ > 0)
        canonical_ += "*" + std::to_string(m_);
}

int StableRootedTree::valence(int v) const {
    const auto& x = vertices_.at(v);
    return static_cast<int>(x.legs.size() + x.children.size()) + num_negative(v);
}

int StableRootedTree::num_positive(int v) const {
    const auto& x = vertices_.at(v);
    return static_cast<int>(x.legs.size() + x.children.size());
}

int StableRootedTree::num_negative(int v) const { return v == 0 ? m_ : 1; }

int StableRootedTree::chi(int v) const { return 2 * vertices_.at(v).genus - 2 + valence(v); }

int StableRootedTree::dimension(int v) const { return 3 * vertices_.at(v).genus - 3 + valence(v); }

std::vector<int> StableRootedTree::descendant_vertices(int v) const {
    std::vector<int> out{v};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int c : vertices_[out[i]].children)
            out.push_back(c);
    return out;
}

bool StableRootedTree::is_descendant(int w, int v) const {
    while (w != -1) {
        if (w == v)
            return true;
        w = vertices_[w].parent;
    }
    return false;
}

int StableRootedTree::descendant_chi(int v) const {
    int s = 0;
    for (int w : descendant_vertices(v))
        s += chi(w);
    return s;
}

std::vector<int> StableRootedTree::positive_descendants(const PositiveHalfEdge& h) const {
    std::vector<int> out;
    if (h.kind == PositiveHalfEdge::Kind::Leg)
        return out;
    for (int w : descendant_vertices(h.index))
        for (int c : vertices_[w].children)
            out.push_back(c);
    return out;
}

int StableRootedTree::sort_key(const PositiveHalfEdge& h) const {
    if (h.kind == PositiveHalfEdge::Kind::Leg)
        return h.index;
    const auto& d = dl_.at(h.index);
    return d.empty() ? n_ + h.index : d.front();
}

std::string StableRootedTree::subtree_string(int v) const {
    std::ostringstream os;
    os << "g" << vertices_[v].genus << "[";
    auto legs = vertices_[v].legs;
    std::sort(legs.begin(), legs.end());
    for (std::size_t i = 0; i < legs.size(); ++i)
        os << (i ? "," : "") << legs[i] + 1;
    os << "]";
    std::vector<std::string> kids;
    for (int c : vertices_[v].children)
        kids.push_back(subtree_string(c));
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids)
        os << "(" << k << ")";
    return os.str();
}

bool StableRootedTree::has_symmetric_siblings() const {
    for (const auto& v : vertices_) {
        std::vector<std::string> free_kids;
        for (int c : v.children)
            if (dl_[c].empty())
                free_kids.push_back(subtree_string(c));
        std::sort(free_kids.begin(), free_kids.end());
        if (std::adjacent_find(free_kids.begin(), free_kids.end()) != free_kids.end())
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Node {
    int genus;
    std::vector<int> legs;
    std::vector<std::shared_ptr<const Node>> children;
    std::string key;
};
using NodePtr = std::shared_ptr<const Node>;

std::string node_key(const Node& n) {
    std::ostringstream os;
    os << "g" << n.genus << "[";
    for (std::size_t i = 0; i < n.legs.size(); ++i)
        os << (i ? "," : "") << n.legs[i];
    os << "]";
    std::vector<std::string> k;
    for (const auto& c : n.children)
        k.push_back(c->key);
    std::sort(k.begin(), k.end());
    for (const auto& s : k)
        os << "(" << s << ")";
    return os.str();
}

// Set partitions of a leg list into nonempty blocks.
void set_partitions(const std::vector<int>& items, std::size_t i,
                    std::vector<std::vector<int>>& cur,
                    std::vector<std::vector<std::vector<int>>>& out) {
    if (i == items.size()) {
        out.push_back(cur);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(items[i]);
        set_partitions(items, i + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({items[i]});
    set_partitions(items, i + 1, cur, out);
    cur.pop_back();
}

class Enumerator {
public:
    // Subtrees hanging below an edge, with the given descendant legs and total genus.
    const std::vector<NodePtr>& subtrees(const std::vector<int>& legs, int genus) {
        std::ostringstream k;
        for (int l : legs)
            k << l << ",";
        k << "|" << genus;
        auto it = memo_.find(k.str());
        if (it != memo_.end())
            return it->second;
        auto result = build(legs, genus, /*negatives=*/1);
        return memo_.emplace(k.str(), std::move(result)).first->second;
    }

    // Vertices with `negatives` non-positive half-edges carrying legs and genus below.
    std::vector<NodePtr> build(const std::vector<int>& legs, int genus, int negatives) {
        std::vector<NodePtr> out;
        const std::size_t nl = legs.size();
        for (std::uint32_t mask = 0; mask < (1u << nl); ++mask) {
            std::vector<int> own, rest;
            for (std::size_t i = 0; i < nl; ++i)
                (mask >> i & 1u ? own : rest).push_back(legs[i]);
            std::vector<std::vector<std::vector<int>>> parts;
            std::vector<std::vector<int>> cur;
            set_partitions(rest, 0, cur, parts);
            for (int g0 = 0; g0 <= genus; ++g0)
                for (const auto& part : parts)
                    distribute(own, g0, genus - g0, part, negatives, out);
        }
        return out;
    }

private:
    // Assign genera to the leg-carrying blocks, then add a multiset of leg-free children.
    void distribute(const std::vector<int>& own, int g0, int budget,
                    const std::vector<std::vector<int>>& blocks, int negatives,
                    std::vector<NodePtr>& out) {
        std::vector<int> block_genus(blocks.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == blocks.size()) {
                choose_children(own, g0, block_genus, blocks, left, negatives, out);
                return;
            }
            for (int h = 0; h <= left; ++h) {
                block_genus[i] = h;
                rec(i + 1, left - h);
            }
        };
        rec(0, budget);
    }

    void choose_children(const std::vector<int>& own, int g0, const std::vector<int>& block_genus,
                         const std::vector<std::vector<int>>& blocks, int free_genus,
                         int negatives, std::vector<NodePtr>& out) {
        const int fixed_valence = static_cast<int>(own.size() + blocks.size()) + negatives;
        if (2 * g0 - 2 + fixed_valence + free_genus <= 0)
            return;
        // Options for each leg-carrying block.
        std::vector<const std::vector<NodePtr>*> options;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            options.push_back(&subtrees(blocks[i], block_genus[i]));
            if (options.back()->empty())
                return;
        }
        // Leg-free children: multisets of leg-free subtrees with genera summing to free_genus.
        std::vector<NodePtr> free_kinds;
        // A lone leg-free child carrying all the free genus is only allowed when the
        // vertex stays stable with it; this also stops the recursion on itself.
        const int max_h = 2 * g0 - 2 + fixed_valence + 1 > 0 ? free_genus : free_genus - 1;
        for (int h = 1; h <= max_h; ++h)
            for (const auto& s : subtrees({}, h))
                free_kinds.push_back(s);
        std::vector<std::vector<NodePtr>> free_sets;
        std::vector<NodePtr> cur;
        std::function<void(std::size_t, int)> pick = [&](std::size_t start, int left) {
            if (left == 0) {
                free_sets.push_back(cur);
                return;
            }
            for (std::size_t j = start; j < free_kinds.size(); ++j) {
                int h = total_genus(*free_kinds[j]);
                if (h > left)
                    continue;
                cur.push_back(free_kinds[j]);
                pick(j, left - h);
                cur.pop_back();
            }
        };
        pick(0, free_genus);

        for (const auto& fs : free_sets) {
            const int valence =
                static_cast<int>(own.size() + blocks.size() + fs.size()) + negatives;
            if (2 * g0 - 2 + valence <= 0)
                continue;
            std::vector<NodePtr> chosen(blocks.size());
            std::function<void(std::size_t)> prod = [&](std::size_t i) {
                if (i == blocks.size()) {
                    auto node = std::make_shared<Node>();
                    node->genus = g0;
                    node->legs = own;
                    node->children = chosen;
                    node->children.insert(node->children.end(), fs.begin(), fs.end());
                    node->key = node_key(*node);
                    out.push_back(node);
                    return;
                }
                for (const auto& o : *options[i]) {
                    chosen[i] = o;
                    prod(i + 1);
                }
            };
            prod(0);
        }
    }

    static int total_genus(const Node& n) {
        int s = n.genus;
        for (const auto& c : n.children)
            s += total_genus(*c);
        return s;
    }

    std::unordered_map<std::string, std::vector<NodePtr>> memo_;
};

void flatten(const Node& node, int parent, std::vector<StableRootedTree::Vertex>& out) {
    int id = static_cast<int>(out.size());
    out.push_back({node.genus, parent, {}, node.legs});
    if (parent >= 0)
        out[parent].children.push_back(id);
    for (const auto& c : node.children)
        flatten(*c, id, out);
}

}  // namespace

std::vector<StableRootedTree> enumerate_srt(int g, int n, int m) {
    if (g < 0 || n < 0 || m < 0 || 2 * g - 2 + n + m <= 0)
        throw UnstableSignature("2g-2+n+m must be positive");
    std::vector<int> legs(n);
    for (int i = 0; i < n; ++i)
        legs[i] = i;
    Enumerator en;
    std::vector<StableRootedTree> trees;
    for (const auto& root : en.build(legs, g, m)) {
        std::vector<StableRootedTree::Vertex> vs;
        flatten(*root, -1, vs);
        trees.emplace_back(g, n, m, std::move(vs));
    }
    std::sort(trees.begin(), trees.end(), [](const auto& a, const auto& b) {
        if (a.num_edges() != b.num_edges())
            return a.num_edges() < b.num_edges();
        return a.canonical() < b.canonical();
    });
    return trees;
}

int DegreeLabeledTree::total_degree() const {
    int s = static_cast<int>(tree->num_edges());
    for (int x : p)
        s += x;
    return s;
}

std::vector<DegreeLabeledTree> enumerate_dlsrt(const std::vector<StableRootedTree>& trees,
                                               bool require_p_at_least_genus) {
    std::vector<DegreeLabeledTree> out;
    for (const auto& t : trees) {
        const int nv = static_cast<int>(t.num_vertices());
        std::vector<int> p(nv, 0);
        std::function<void(int)> rec = [&](int v) {
            if (v == nv) {
                out.push_back({&t, p});
                return;
            }
            int lo = require_p_at_least_genus ? t.vertex(v).genus : 0;
            for (int x = lo; x <= t.dimension(v); ++x) {
                p[v] = x;
                rec(v + 1);
            }
        };
        rec(0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Level functions

bool cut_inequality_holds(const StableRootedTree& t, const std::vector<int>& p,
                          std::uint64_t prefix) {
    int count = 0, degree = 0, genus2 = 0;
    for (std::size_t v = 0; v < t.num_vertices(); ++v)
        if (prefix >> v & 1u) {
            ++count;
            degree += p[v];
            genus2 += 2 * t.vertex(static_cast<int>(v)).genus;
        }
    return count - 1 + degree <= t.num_frozen() - 2 + genus2;
}

namespace {

// Vertices not yet placed whose parent is placed.
std::uint64_t available(const StableRootedTree& t, std::uint64_t placed) {
    std::uint64_t av = 0;
    for (std::size_t v = 1; v < t.num_vertices(); ++v)
        if (!(placed >> v & 1u) && (placed >> t.vertex(static_cast<int>(v)).parent & 1u))
            av |= std::uint64_t{1} << v;
    return av;
}

}  // namespace

std::vector<LevelFunction> admissible_level_functions(const StableRootedTree& t,
                                                      const std::vector<int>& p) {
    const std::size_t nv = t.num_vertices();
    if (nv > 63)
        throw std::invalid_argument("tree too large");
    const std::uint64_t all = (nv == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << nv) - 1);
    std::vector<LevelFunction> out;
    LevelFunction ell(nv, 0);
    std::function<void(std::uint64_t, int)> rec = [&](std::uint64_t placed, int level) {
        if (placed == all) {
            out.push_back(ell);
            return;
        }
        if (!cut_inequality_holds(t, p, placed))
            return;
        const std::uint64_t av = available(t, placed);
        for (std::uint64_t s = av; s; s = (s - 1) & av) {
            for (std::size_t v = 0; v < nv; ++v)
                if (s >> v & 1u)
                    ell[v] = level + 1;
            rec(placed | s, level + 1);
        }
    };
    rec(1, 0);
    return out;
}

long c_lvl(const StableRootedTree& t, const std::vector<int>& p) {
    const std::size_t nv = t.num_vertices();
    if (nv > 63)
        throw std::invalid_argument("tree too large");
    const std::uint64_t all = (std::uint64_t{1} << nv) - 1;
    std::unordered_map<std::uint64_t, long> memo;
    // Signed count of completions, each further level contributing a factor -1.
    std::function<long(std::uint64_t)> count = [&](std::uint64_t placed) -> long {
        if (placed == all)
            return 1;
        auto it = memo.find(placed);
        if (it != memo.end())
            return it->second;
        long total = 0;
        if (cut_inequality_holds(t, p, placed)) {
            const std::uint64_t av = available(t, placed);
            for (std::uint64_t s = av; s; s = (s - 1) & av)
                total -= count(placed | s);
        }
        memo.emplace(placed, total);
        return total;
    };
    return count(1);
}

// ---------------------------------------------------------------------------

FlowAssignment flow_assignment(const StableRootedTree& t, const std::vector<Rational>& a,
                               FlowConvention convention) {
    if (static_cast<int>(a.size()) != t.num_regular())
        throw std::invalid_argument("flow needs one value per regular leg");
    if (convention == FlowConvention::Balanced && t.num_frozen() > 1)
        throw std::invalid_argument("balanced flow needs at most one frozen leg");
    const int nv = static_cast<int>(t.num_vertices());
    FlowAssignment f{convention, std::vector<Rational>(nv), std::vector<Rational>(nv), {}, {}};
    Rational total(0);
    for (const auto& x : a)
        total += x;
    for (int v = 0; v < nv; ++v) {
        Rational s(0);
        for (int l : t.descendant_legs(v))
            s += a[l];
        f.vertex[v] = s;
        if (v > 0)
            f.edge[v] = s;
    }
    f.frozen = convention == FlowConvention::Balanced ? -total : Rational(0);
    f.half_edges.resize(nv);
    for (int v = 0; v < nv; ++v) {
        auto& h = f.half_edges[v];
        for (const auto& pe : t.positive_order(v))
            h.push_back(pe.kind == PositiveHalfEdge::Kind::Leg ? a[pe.index] : f.vertex[pe.index]);
        const Rational neg = convention == FlowConvention::Balanced ? -f.vertex[v] : Rational(0);
        for (int k = 0; k < t.num_negative(v); ++k)
            h.push_back(neg);
    }
    return f;
}

}  // namespace ctaut
