#include "ctaut/strata.hpp"

#include "ctaut/treecomb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace ctaut {

DecoratedStratum DecoratedStratum::trivial(int g, int n) {
    DecoratedStratum s;
    s.g = g;
    s.n = n;
    s.vertices.push_back({g, {}, false});
    s.legs.assign(n, {0, 0});
    return s;
}

int DecoratedStratum::degree() const {
    int d = static_cast<int>(edges.size());
    for (const auto& l : legs)
        d += l.psi;
    for (const auto& e : edges)
        d += e.a.psi + e.b.psi;
    for (const auto& v : vertices) {
        d += std::accumulate(v.kappa.begin(), v.kappa.end(), 0);
        if (v.lambda)
            d += v.genus;
    }
    return d;
}

int DecoratedStratum::valence(int v) const {
    int c = 0;
    for (const auto& l : legs)
        c += l.vertex == v;
    for (const auto& e : edges)
        c += (e.a.vertex == v) + (e.b.vertex == v);
    return c;
}

int DecoratedStratum::vertex_dimension(int v) const {
    return 3 * vertices.at(v).genus - 3 + valence(v);
}

int DecoratedStratum::vertex_degree(int v) const {
    int d = 0;
    for (const auto& l : legs)
        if (l.vertex == v)
            d += l.psi;
    for (const auto& e : edges) {
        if (e.a.vertex == v)
            d += e.a.psi;
        if (e.b.vertex == v)
            d += e.b.psi;
    }
    const auto& x = vertices.at(v);
    d += std::accumulate(x.kappa.begin(), x.kappa.end(), 0);
    if (x.lambda)
        d += x.genus;
    return d;
}

bool DecoratedStratum::has_kappa() const {
    return std::any_of(vertices.begin(), vertices.end(),
                       [](const Vertex& v) { return !v.kappa.empty(); });
}

bool DecoratedStratum::has_lambda() const {
    return std::any_of(vertices.begin(), vertices.end(),
                       [](const Vertex& v) { return v.lambda; });
}

void DecoratedStratum::validate() const {
    const int nv = static_cast<int>(vertices.size());
    if (nv == 0 || static_cast<int>(legs.size()) != n)
        throw std::invalid_argument("malformed stratum");
    if (static_cast<int>(edges.size()) != nv - 1)
        throw std::invalid_argument("stratum graph is not a tree");
    int genus_sum = 0;
    for (const auto& v : vertices) {
        genus_sum += v.genus;
        if (v.lambda && v.genus == 0)
            throw std::invalid_argument("lambda flag on a genus-0 vertex");
    }
    if (genus_sum != g)
        throw std::invalid_argument("vertex genera do not sum to g");
    std::vector<int> root(nv);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    for (const auto& e : edges) {
        if (e.a.vertex < 0 || e.a.vertex >= nv || e.b.vertex < 0 || e.b.vertex >= nv)
            throw std::invalid_argument("edge endpoint out of range");
        int x = find(e.a.vertex), y = find(e.b.vertex);
        if (x == y)
            throw std::invalid_argument("stratum graph has a cycle");
        root[x] = y;
    }
    for (int v = 0; v < nv; ++v)
        if (2 * vertices[v].genus - 2 + valence(v) <= 0)
            throw std::invalid_argument("unstable vertex in stratum");
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

struct Adjacent {
    int other;
    int own_psi;
    int other_psi;
};

struct Canonizer {
    const DecoratedStratum& s;
    std::vector<std::vector<Adjacent>> adj;
    std::vector<std::vector<std::pair<int, int>>> legs_at;  // (leg, psi)

    explicit Canonizer(const DecoratedStratum& st) : s(st) {
        adj.resize(s.vertices.size());
        legs_at.resize(s.vertices.size());
        for (const auto& e : s.edges) {
            adj[e.a.vertex].push_back({e.b.vertex, e.a.psi, e.b.psi});
            adj[e.b.vertex].push_back({e.a.vertex, e.b.psi, e.a.psi});
        }
        for (int i = 0; i < s.n; ++i)
            legs_at[s.legs[i].vertex].push_back({i, s.legs[i].psi});
    }

    // Children tokens sorted; token = "(" own_psi "," child_psi ":" child ")".
    std::string encode(int v, int parent, std::vector<std::pair<std::string, int>>* kids_out) {
        std::ostringstream os;
        const auto& x = s.vertices[v];
        os << "g" << x.genus;
        if (!x.kappa.empty()) {
            auto kappa = x.kappa;
            std::sort(kappa.begin(), kappa.end());
            os << "k";
            for (std::size_t i = 0; i < kappa.size(); ++i)
                os << (i ? "," : "") << kappa[i];
        }
        if (x.lambda)
            os << "L";
        os << "[";
        bool first = true;
        for (const auto& [leg, psi] : legs_at[v]) {
            os << (first ? "" : ",") << leg + 1;
            if (psi)
                os << "^" << psi;
            first = false;
        }
        os << "]";
        std::vector<std::pair<std::string, int>> kids;
        for (const auto& a : adj[v]) {
            if (a.other == parent)
                continue;
            std::ostringstream t;
            t << "(" << a.own_psi << "," << a.other_psi << ":" << encode(a.other, v, nullptr) << ")";
            kids.emplace_back(t.str(), a.other);
        }
        std::sort(kids.begin(), kids.end());
        for (const auto& k : kids)
            os << k.first;
        if (kids_out)
            *kids_out = std::move(kids);
        return os.str();
    }

    // Automorphisms of the subtree below v fixing v.
    long stabiliser(int v, int parent) {
        long count = 1;
        std::vector<std::pair<std::string, int>> kids;
        encode(v, parent, &kids);
        for (std::size_t i = 0; i < kids.size();) {
            std::size_t j = i;
            while (j < kids.size() && kids[j].first == kids[i].first)
                ++j;
            for (std::size_t k = 2; k <= j - i; ++k)
                count *= static_cast<long>(k);
            for (std::size_t k = i; k < j; ++k)
                count *= stabiliser(kids[k].second, v);
            i = j;
        }
        return count;
    }
};

}  // namespace

std::pair<std::string, DecoratedStratum> canonical_form(const DecoratedStratum& s) {
    Canonizer c(s);
    const int nv = static_cast<int>(s.vertices.size());
    int best_root = s.n > 0 ? s.legs[0].vertex : 0;
    std::string best = c.encode(best_root, -1, nullptr);
    if (s.n == 0)
        for (int v = 1; v < nv; ++v) {
            std::string e = c.encode(v, -1, nullptr);
            if (e < best) {
                best = std::move(e);
                best_root = v;
            }
        }

    DecoratedStratum out;
    out.g = s.g;
    out.n = s.n;
    out.legs.resize(s.n);
    std::vector<int> new_id(nv, -1);
    std::function<void(int, int)> visit = [&](int v, int parent) {
        new_id[v] = static_cast<int>(out.vertices.size());
        auto vx = s.vertices[v];
        std::sort(vx.kappa.begin(), vx.kappa.end());
        out.vertices.push_back(vx);
        std::vector<std::pair<std::string, int>> kids;
        c.encode(v, parent, &kids);
        for (const auto& [token, child] : kids) {
            int own = 0, other = 0;
            for (const auto& a : c.adj[v])
                if (a.other == child) {
                    own = a.own_psi;
                    other = a.other_psi;
                }
            int me = new_id[v];
            visit(child, v);
            out.edges.push_back({{me, own}, {new_id[child], other}});
        }
    };
    visit(best_root, -1);
    for (int i = 0; i < s.n; ++i)
        out.legs[i] = {new_id[s.legs[i].vertex], s.legs[i].psi};
    std::sort(out.edges.begin(), out.edges.end(), [](const auto& x, const auto& y) {
        return x.b.vertex < y.b.vertex;
    });
    return {std::move(best), std::move(out)};
}

long automorphism_count(const DecoratedStratum& s) {
    Canonizer c(s);
    const int nv = static_cast<int>(s.vertices.size());
    const int root = s.n > 0 ? s.legs[0].vertex : 0;
    long orbit = 1;
    if (s.n == 0) {
        const std::string ref = c.encode(root, -1, nullptr);
        orbit = 0;
        for (int v = 0; v < nv; ++v)
            orbit += c.encode(v, -1, nullptr) == ref;
    }
    return orbit * c.stabiliser(root, -1);
}

// ---------------------------------------------------------------------------
// StrataClass

StrataClass StrataClass::fundamental(int g, int n, const Rational& c) {
    StrataClass x(g, n);
    x.add(DecoratedStratum::trivial(g, n), c);
    return x;
}

StrataClass StrataClass::of(const DecoratedStratum& s, const Rational& c) {
    StrataClass x(s.g, s.n);
    x.add(s, c);
    return x;
}

void StrataClass::add(const DecoratedStratum& s, const Rational& c) {
    if (c.is_zero())
        return;
    if (s.g != g_ || s.n != n_)
        throw ArityMismatch("stratum lives on a different moduli space");
    // decorations above the vertex dimension vanish
    for (int v = 0; v < static_cast<int>(s.vertices.size()); ++v)
        if (s.vertex_degree(v) > s.vertex_dimension(v))
            return;
    auto [key, canon] = canonical_form(s);
    add_canonical(key, canon, c);
}

void StrataClass::add_canonical(const std::string& key, const DecoratedStratum& s,
                                const Rational& c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, Term{s, c});
        return;
    }
    it->second.coef += c;
    if (it->second.coef.is_zero())
        terms_.erase(it);
}

StrataClass StrataClass::degree_part(int d) const {
    StrataClass out(g_, n_);
    for (const auto& [k, t] : terms_)
        if (t.stratum.degree() == d)
            out.terms_.emplace(k, t);
    return out;
}

StrataClass StrataClass::truncated(int max_degree) const {
    StrataClass out(g_, n_);
    for (const auto& [k, t] : terms_)
        if (t.stratum.degree() <= max_degree)
            out.terms_.emplace(k, t);
    return out;
}

int StrataClass::max_degree() const {
    int d = -1;
    for (const auto& [k, t] : terms_)
        d = std::max(d, t.stratum.degree());
    return d;
}

void StrataClass::check_space(const StrataClass& o) const {
    if (g_ != o.g_ || n_ != o.n_)
        throw ArityMismatch("classes live on different moduli spaces");
}

StrataClass& StrataClass::operator+=(const StrataClass& o) {
    check_space(o);
    for (const auto& [k, t] : o.terms_)
        add_canonical(k, t.stratum, t.coef);
    return *this;
}

StrataClass& StrataClass::operator-=(const StrataClass& o) {
    check_space(o);
    for (const auto& [k, t] : o.terms_)
        add_canonical(k, t.stratum, -t.coef);
    return *this;
}

StrataClass& StrataClass::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, t] : terms_)
        t.coef *= c;
    return *this;
}

bool operator==(const StrataClass& a, const StrataClass& b) {
    if (a.g_ != b.g_ || a.n_ != b.n_ || a.terms_.size() != b.terms_.size())
        return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
        if (i->first != j->first || i->second.coef != j->second.coef)
            return false;
    return true;
}

std::string StrataClass::str() const {
    if (terms_.empty())
        return "0";
    // Sorted by degree, then key.
    std::vector<std::pair<int, const std::string*>> order;
    for (const auto& [k, t] : terms_)
        order.emplace_back(t.stratum.degree(), &k);
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : *x.second < *y.second;
    });
    std::ostringstream os;
    for (const auto& [d, k] : order)
        os << terms_.at(*k).coef << " * " << *k << "\n";
    return os.str();
}

}  // namespace ctaut
