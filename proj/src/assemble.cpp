#include "ctaut/assemble.hpp"

#include "ctaut/drcycles.hpp"
#include "ctaut/omega.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace ctaut {

const char* family_name(Family f) {
    switch (f) {
        case Family::Omega:
            return "Omega";
        case Family::LvlOmega:
            return "lvlOmega";
        case Family::Psi:
            return "Psi";
        case Family::LvlPsi:
            return "lvlPsi";
        case Family::A1:
            return "A1";
        case Family::A0:
            return "A0";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Omega, Family::LvlOmega, Family::Psi, Family::LvlPsi, Family::A1,
                     Family::A0})
        if (s == family_name(f))
            return f;
    throw std::invalid_argument("unknown family: " + s);
}

int target_points(const ClassRequest& r) {
    switch (r.family) {
        case Family::A1:
            return r.n + 1;
        case Family::A0:
            return r.n;
        default:
            return r.n + r.m;
    }
}

StrataClass graft_tree(const StableRootedTree& t, const std::vector<StrataClass>& vertex_classes) {
    GraftSkeleton sk;
    sk.g = t.genus();
    sk.n = t.num_regular() + t.num_frozen();
    for (std::size_t v = 0; v < t.num_vertices(); ++v) {
        GraftSkeleton::Vertex sv;
        sv.genus = t.vertex(static_cast<int>(v)).genus;
        for (const auto& h : t.positive_order(static_cast<int>(v)))
            sv.points.push_back(h.kind == PositiveHalfEdge::Kind::Leg ? h.index : -h.index);
        if (v == 0)
            for (int j = 0; j < t.num_frozen(); ++j)
                sv.points.push_back(t.num_regular() + j);
        else
            sv.points.push_back(-static_cast<int>(v));
        sk.vertices.push_back(std::move(sv));
    }
    return graft(sk, vertex_classes);
}

namespace {

long to_long(const Rational& x) { return x.to_long(); }

struct VertexData {
    int genus;
    std::vector<long> positive;  // a(h) over positive half-edges
    int negatives;
    long a;
};

std::vector<VertexData> vertex_data(const StableRootedTree& t, const FlowAssignment& f) {
    std::vector<VertexData> out;
    for (std::size_t v = 0; v < t.num_vertices(); ++v) {
        const int iv = static_cast<int>(v);
        VertexData d{t.vertex(iv).genus, {}, t.num_negative(iv), to_long(f.vertex[v])};
        for (int j = 0; j < t.num_positive(iv); ++j)
            d.positive.push_back(to_long(f.half_edges[v][j]));
        out.push_back(std::move(d));
    }
    return out;
}

// Caches vertex classes across calls; keys are (family, genus, values, negatives, a, degree).
using VertexKey = std::tuple<int, int, std::vector<long>, int, long, int>;
std::mutex vertex_mutex;
std::map<VertexKey, StrataClass> vertex_cache;
constexpr std::size_t cache_limit = 20000;  // larger classes are rebuilt on demand

StrataClass vertex_class(bool omega, const VertexData& d, int max_degree) {
    const int valence = static_cast<int>(d.positive.size()) + d.negatives;
    max_degree = std::min(max_degree, 3 * d.genus - 3 + valence);
    VertexKey key{omega ? 1 : 0, d.genus, d.positive, d.negatives, d.a, max_degree};
    {
        std::lock_guard lock(vertex_mutex);
        auto it = vertex_cache.find(key);
        if (it != vertex_cache.end())
            return it->second;
    }
    StrataClass out(d.genus, valence);
    if (!omega) {
        out = vertex_psi(d.genus, d.positive, d.negatives, max_degree);
    } else if (d.a > 0) {
        out = vertex_omega(d.genus, d.positive, d.negatives, d.a, max_degree);
    } else if (d.genus == 0) {
        // a^g lambda_g Lambda_g^{[a]} at a = 0
        out = StrataClass::fundamental(0, valence);
    }
    if (out.size() <= cache_limit) {
        std::lock_guard lock(vertex_mutex);
        vertex_cache.emplace(std::move(key), out);
    }
    return out;
}

std::vector<Rational> rationals(const std::vector<long>& a) {
    return {a.begin(), a.end()};
}

Rational edge_product(const StableRootedTree& t, const FlowAssignment& f) {
    Rational p(1);
    for (std::size_t c = 1; c < t.num_vertices(); ++c)
        p *= f.edge[c];
    return p;
}

void check_arity(int n, const std::vector<long>& a) {
    if (static_cast<int>(a.size()) != n)
        throw ArityMismatch("one value per regular leg expected");
}

int default_degree(int g, int points, int max_degree) {
    const int dim = 3 * g - 3 + points;
    return max_degree < 0 ? dim : std::min(max_degree, dim);
}

using TreeMap = std::function<StrataClass(const StrataClass&)>;

StrataClass mapped(const TreeMap& f, const StrataClass& x) { return f ? f(x) : x; }

// Omega class of a single-vertex tree fed term by term through `post`, so that the
// vertex class on the full space is never stored. weight(d) scales the degree-d part.
StrataClass streamed_root(const VertexData& d, int max_degree, const TreeMap& post,
                          const std::function<Rational(int)>& weight) {
    const int points = static_cast<int>(d.positive.size()) + d.negatives;
    StrataClass out(d.genus, points - 1);
    std::map<int, Rational> weights;
    StrataClass batch(d.genus, points);
    auto flush = [&] {
        out += post(batch);
        batch = StrataClass(d.genus, points);
    };
    vertex_omega_terms(d.genus, d.positive, d.negatives, d.a, max_degree,
                       [&](const DecoratedStratum& s, const Rational& c) {
                           const int deg = s.degree();
                           auto it = weights.find(deg);
                           if (it == weights.end())
                               it = weights.emplace(deg, weight(deg)).first;
                           batch.add(s, c * it->second);
                           if (batch.size() >= 50000)
                               flush();
                       });
    flush();
    return out;
}

StrataClass tree_sum(bool omega, int g, int n, int m, const std::vector<long>& a, int max_degree,
                     const TreeMap& post = {}) {
    check_arity(n, a);
    if (2 * g - 2 + n + m <= 0)
        throw UnstableSignature("2g - 2 + n + m must be positive");
    max_degree = default_degree(g, n + m, max_degree);
    StrataClass out(g, n + m - (post ? 1 : 0));
    const auto ra = rationals(a);
    for (const auto& t : enumerate_srt(g, n, m)) {
        const int e = static_cast<int>(t.num_edges());
        if (e > max_degree)
            continue;
        const auto f = flow_assignment(t, ra, FlowConvention::Positive);
        const Rational prod = edge_product(t, f);
        if (prod.is_zero())
            continue;
        const auto data = vertex_data(t, f);
        if (e == 0 && omega && post && data[0].a > 0) {
            out += streamed_root(data[0], max_degree, post, [](int) { return Rational(1); });
            continue;
        }
        std::vector<StrataClass> classes;
        for (const auto& d : data)
            classes.push_back(vertex_class(omega, d, max_degree - e));
        // a single vertex carries the points in their global order
        StrataClass term = e == 0 ? std::move(classes[0]) : graft_tree(t, classes);
        classes.clear();
        term *= e % 2 ? -prod : prod;
        out += mapped(post, term);
    }
    return out;
}

StrataClass level_sum(bool omega, int g, int n, int m, const std::vector<long>& a,
                      int max_degree, const TreeMap& post = {}) {
    check_arity(n, a);
    if (2 * g - 2 + n + m <= 0)
        throw UnstableSignature("2g - 2 + n + m must be positive");
    max_degree = default_degree(g, n + m, max_degree);
    StrataClass out(g, n + m - (post ? 1 : 0));
    const auto ra = rationals(a);
    const auto trees = enumerate_srt(g, n, m);
    std::vector<StableRootedTree> one;
    for (const auto& t : trees) {
        const int e = static_cast<int>(t.num_edges());
        if (e > max_degree)
            continue;
        const auto f = flow_assignment(t, ra, FlowConvention::Positive);
        const Rational prod = edge_product(t, f);
        if (prod.is_zero())
            continue;
        const auto data = vertex_data(t, f);
        if (e == 0 && omega && post && data[0].a > 0) {
            out += streamed_root(data[0], max_degree, post,
                                 [&](int p) { return Rational(c_lvl(t, {p})); });
            continue;
        }
        std::vector<StrataClass> full;
        for (const auto& d : data)
            full.push_back(vertex_class(omega, d, max_degree - e));
        one.assign(1, t);
        StrataClass tree_part(g, n + m);
        for (const auto& dl : enumerate_dlsrt(one, omega)) {
            if (dl.total_degree() > max_degree)
                continue;
            const long c = c_lvl(t, dl.p);
            if (c == 0)
                continue;
            std::vector<StrataClass> parts;
            bool zero = false;
            for (std::size_t v = 0; v < full.size() && !zero; ++v) {
                parts.push_back(full[v].degree_part(dl.p[v]));
                zero = parts.back().is_zero();
            }
            if (!zero)
                tree_part += graft_tree(t, parts) * (prod * Rational(c));
        }
        out += mapped(post, tree_part);
    }
    return out;
}

}  // namespace

namespace {

void check_frozen(int m) {
    if (m < 1)
        throw std::invalid_argument("plain tree sums need at least one frozen leg");
}

}  // namespace

StrataClass omega_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree) {
    check_frozen(m);
    return tree_sum(true, g, n, m, a, max_degree);
}

StrataClass psi_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree) {
    check_frozen(m);
    return tree_sum(false, g, n, m, a, max_degree);
}

StrataClass lvl_omega_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree) {
    return level_sum(true, g, n, m, a, max_degree);
}

StrataClass lvl_psi_m_class(int g, int n, int m, const std::vector<long>& a, int max_degree) {
    return level_sum(false, g, n, m, a, max_degree);
}

namespace {

StrataClass a1_sum(int g, int n, const std::vector<long>& a, int max_degree, const TreeMap& post) {
    check_arity(n, a);
    if (2 * g - 1 + n <= 0)
        throw UnstableSignature("2g - 1 + n must be positive");
    max_degree = default_degree(g, n + 1, max_degree);
    StrataClass out(g, n + 1 - (post ? 1 : 0));
    const auto ra = rationals(a);
    for (const auto& t : enumerate_srt(g, n, 1)) {
        const int e = static_cast<int>(t.num_edges());
        if (2 * g + e > max_degree)
            continue;
        const auto f = flow_assignment(t, ra, FlowConvention::Balanced);
        Rational coef = edge_product(t, f);
        if (coef.is_zero())
            continue;
        std::vector<StrataClass> classes;
        for (std::size_t v = 0; v < t.num_vertices(); ++v) {
            const int iv = static_cast<int>(v);
            coef *= Rational(t.chi(iv), t.descendant_chi(iv));
            std::vector<long> values;
            for (const auto& x : f.half_edges[v])
                values.push_back(to_long(x));
            classes.push_back(vertex_a(t.vertex(iv).genus, values, max_degree - e));
        }
        out += mapped(post, graft_tree(t, classes) * coef);
    }
    return out;
}

}  // namespace

StrataClass a1_class(int g, int n, const std::vector<long>& a, int max_degree) {
    return a1_sum(g, n, a, max_degree, {});
}

StrataClass a0_class(int g, int n, const std::vector<long>& a, int max_degree) {
    check_arity(n, a);
    const long s = std::accumulate(a.begin(), a.end(), 0L);
    if (s == 0)
        throw std::domain_error("A^0 at a point needs a nonzero sum of the a_i");
    max_degree = default_degree(g, n, max_degree);
    return a1_sum(g, n, a, max_degree + 1, forget_last) * Rational(1, s);
}

StrataClass assemble(const ClassRequest& r) {
    if ((r.family == Family::Omega || r.family == Family::Psi) && r.m < 2)
        throw std::invalid_argument("plain Omega and Psi families need m >= 2");
    switch (r.family) {
        case Family::Omega:
            return omega_m_class(r.g, r.n, r.m, r.a, r.max_degree);
        case Family::LvlOmega:
            return lvl_omega_m_class(r.g, r.n, r.m, r.a, r.max_degree);
        case Family::Psi:
            return psi_m_class(r.g, r.n, r.m, r.a, r.max_degree);
        case Family::LvlPsi:
            return lvl_psi_m_class(r.g, r.n, r.m, r.a, r.max_degree);
        case Family::A1:
            return a1_class(r.g, r.n, r.a, r.max_degree);
        case Family::A0:
            return a0_class(r.g, r.n, r.a, r.max_degree);
    }
    throw std::invalid_argument("unknown family");
}

StrataClass pushforward_class(const ClassRequest& r) {
    const int deg = r.max_degree < 0 ? -1 : r.max_degree + 1;
    const TreeMap post = forget_last;
    switch (r.family) {
        case Family::Omega:
            return tree_sum(true, r.g, r.n, r.m, r.a, deg, post);
        case Family::LvlOmega:
            return level_sum(true, r.g, r.n, r.m, r.a, deg, post);
        case Family::Psi:
            return tree_sum(false, r.g, r.n, r.m, r.a, deg, post);
        case Family::LvlPsi:
            return level_sum(false, r.g, r.n, r.m, r.a, deg, post);
        case Family::A1:
            return a1_sum(r.g, r.n, r.a, deg, post);
        case Family::A0:
            return forget_last(a0_class(r.g, r.n, r.a, deg));
    }
    throw std::invalid_argument("unknown family");
}

namespace {

// Positive half-edges h' strictly below h: all positive half-edges at vertices of DV(c)
// when h is the edge to child c, none when h is a leg.
std::vector<PositiveHalfEdge> below(const StableRootedTree& t, const PositiveHalfEdge& h) {
    std::vector<PositiveHalfEdge> out;
    if (h.kind == PositiveHalfEdge::Kind::Leg)
        return out;
    for (int w : t.descendant_vertices(h.index))
        for (const auto& x : t.positive_order(w))
            out.push_back(x);
    return out;
}

StrataClass psi_monomial(int g, int points, const std::vector<int>& exponents) {
    auto s = DecoratedStratum::trivial(g, points);
    for (std::size_t i = 0; i < exponents.size(); ++i)
        s.legs[i].psi = exponents[i];
    if (s.vertex_degree(0) > s.vertex_dimension(0))
        return StrataClass(g, points);
    return StrataClass::of(s);
}

// Compositions of `total` into `parts` nonnegative entries.
void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void()>& emit) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        emit();
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(total - k, parts, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

StrataClass b_coefficient(int g, const std::vector<int>& d, int m) {
    const int n = static_cast<int>(d.size());
    StrataClass out(g, n + m);
    const int total = std::accumulate(d.begin(), d.end(), 0);
    Rational denom(1);
    for (int x : d)
        denom *= factorial(static_cast<unsigned>(x + 1));
    const auto trees = enumerate_srt(g, n, m);
    for (const auto& dl : enumerate_dlsrt(trees, false)) {
        if (dl.total_degree() != total)
            continue;
        const StableRootedTree& t = *dl.tree;
        const long c = c_lvl(t, dl.p);
        if (c == 0)
            continue;
        const int nv = static_cast<int>(t.num_vertices());
        // q per vertex, indexed like positive_order(v)
        std::vector<std::vector<int>> q(nv);
        std::function<void(int)> over_vertices = [&](int v) {
            if (v == nv) {
                auto q_of = [&](const PositiveHalfEdge& h) {
                    const int owner = h.kind == PositiveHalfEdge::Kind::Leg
                                          ? -1
                                          : t.vertex(h.index).parent;
                    int w = owner;
                    if (w < 0)
                        for (int u = 0; u < nv && w < 0; ++u)
                            for (int l : t.vertex(u).legs)
                                if (l == h.index)
                                    w = u;
                    const auto& order = t.positive_order(w);
                    const auto pos = std::find(order.begin(), order.end(), h) - order.begin();
                    return q[w][pos];
                };
                Rational weight(c);
                for (int u = 0; u < nv && !weight.is_zero(); ++u) {
                    const auto& order = t.positive_order(u);
                    for (std::size_t j = 0; j < order.size(); ++j) {
                        const auto& h = order[j];
                        long s = 0;
                        if (h.kind == PositiveHalfEdge::Kind::Leg)
                            s = d[h.index] + 1;
                        else
                            for (int l : t.descendant_legs(h.index))
                                s += d[l] + 1;
                        for (const auto& x : below(t, h))
                            s -= q_of(x) + 1;
                        weight *= pochhammer(Rational(s), static_cast<unsigned>(q[u][j] + 1));
                    }
                }
                if (weight.is_zero())
                    return;
                std::vector<StrataClass> parts;
                for (int u = 0; u < nv; ++u) {
                    auto e = q[u];
                    e.resize(t.valence(u), 0);
                    parts.push_back(psi_monomial(t.vertex(u).genus, t.valence(u), e));
                    if (parts.back().is_zero())
                        return;
                }
                out += graft_tree(t, parts) * (weight / denom);
                return;
            }
            const int k = t.num_positive(v);
            if (k == 0) {
                if (dl.p[v] == 0) {
                    q[v].clear();
                    over_vertices(v + 1);
                }
                return;
            }
            std::vector<int> cur;
            compositions(dl.p[v], k, cur, [&] {
                q[v] = cur;
                over_vertices(v + 1);
            });
        };
        over_vertices(0);
    }
    return out;
}

StrataClass PolyClass::evaluate(const std::vector<long>& a) const {
    if (a.size() != n_vars)
        throw ArityMismatch("one value per variable expected");
    StrataClass out(g, n_points);
    for (const auto& [key, t] : terms)
        out.add_canonical(key, t.stratum, t.coef.evaluate(std::span<const long>(a)));
    return out;
}

StrataClass PolyClass::coefficient(const Exponent& e) const {
    StrataClass out(g, n_points);
    for (const auto& [key, t] : terms)
        out.add_canonical(key, t.stratum, t.coef.coefficient(e));
    return out;
}

PolyClass interpolate_class(const std::function<StrataClass(const std::vector<long>&)>& f, int g,
                            int n_points, std::size_t n_vars, int max_degree, int degree_shift) {
    const int top = std::max(0, max_degree + degree_shift);
    const auto grid = interpolation_grid(n_vars, top);
    std::vector<StrataClass> values;
    std::map<std::string, DecoratedStratum> strata;
    for (const auto& pt : grid) {
        values.push_back(f(pt));
        for (const auto& [key, t] : values.back().terms())
            strata.emplace(key, t.stratum);
    }
    PolyClass out;
    out.g = g;
    out.n_points = n_points;
    out.n_vars = n_vars;
    std::map<int, HomogeneousInterpolator> solvers;
    for (const auto& [key, s] : strata) {
        std::vector<Rational> samples;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto it = values[i].terms().find(key);
            samples.push_back(it == values[i].terms().end() ? Rational(0) : it->second.coef);
        }
        const int d = s.degree() + degree_shift;
        auto solver = solvers.find(d);
        if (solver == solvers.end())
            solver = solvers.emplace(d, HomogeneousInterpolator(grid, d, n_vars)).first;
        MultiPoly p = solver->second.solve(samples);
        if (!p.is_zero())
            out.terms.emplace(key, PolyClass::Term{s, std::move(p)});
    }
    return out;
}

PolyClass interpolate_request(const ClassRequest& r) {
    const int points = target_points(r);
    const int deg = default_degree(r.g, points, r.max_degree);
    if (r.family == Family::A0)
        return a0_polynomial(r.g, r.n, deg);
    ClassRequest q = r;
    q.max_degree = deg;
    return interpolate_class(
        [&](const std::vector<long>& a) {
            q.a = a;
            return assemble(q);
        },
        r.g, points, static_cast<std::size_t>(r.n), deg);
}

std::size_t PairingPoly::size() const {
    std::size_t k = 0;
    for (const auto& [d, polys] : by_degree)
        k += polys.size();
    return k;
}

PairingPoly interpolate_pairings(const std::function<StrataClass(const std::vector<long>&)>& f,
                                 int g, int n_points, std::size_t n_vars, int max_degree,
                                 int min_degree) {
    const auto grid = interpolation_grid(n_vars, std::max(0, max_degree));
    std::map<int, PairingTable> tables;
    for (int d = std::max(0, min_degree); d <= max_degree; ++d)
        tables.emplace(d, PairingTable(g, n_points, d));
    std::map<int, std::map<std::string, std::vector<Rational>>> samples;
    for (const auto& pt : grid) {
        const StrataClass x = f(pt);
        for (auto& [d, table] : tables) {
            const auto values = table.pair(x);
            for (std::size_t i = 0; i < values.size(); ++i)
                samples[d][table.keys()[i]].push_back(values[i]);
        }
    }
    PairingPoly out;
    out.g = g;
    out.n_points = n_points;
    out.n_vars = n_vars;
    for (const auto& [d, by_key] : samples) {
        out.pairings[d] = by_key.size();
        const HomogeneousInterpolator solver(grid, d, n_vars);
        for (const auto& [key, values] : by_key) {
            if (values.size() != grid.size())
                throw std::logic_error("pairing strata differ between sample points");
            MultiPoly p = solver.solve(values);
            if (!p.is_zero())
                out.by_degree[d].emplace(key, std::move(p));
        }
    }
    return out;
}

PairingPoly interpolate_request_pairings(const ClassRequest& r, int min_degree) {
    const int points = target_points(r);
    const int deg = default_degree(r.g, points, r.max_degree);
    ClassRequest q = r;
    q.max_degree = deg;
    return interpolate_pairings(
        [&](const std::vector<long>& a) {
            q.a = a;
            return assemble(q);
        },
        r.g, points, static_cast<std::size_t>(r.n), deg, min_degree);
}

PolyClass a0_polynomial(int g, int n, int max_degree) {
    max_degree = default_degree(g, n, max_degree);
    PolyClass pushed = interpolate_class(
        [&](const std::vector<long>& a) { return forget_last(a1_class(g, n, a, max_degree + 1)); },
        g, n, static_cast<std::size_t>(n), max_degree, 1);
    MultiPoly sum(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        sum += MultiPoly::variable(n, i);
    for (auto& [key, t] : pushed.terms) {
        try {
            t.coef = t.coef.divide_exact(sum);
        } catch (const std::domain_error&) {
            throw InexactDivision("pushforward coefficient of " + key +
                                  " is not divisible by a_1 + ... + a_n");
        }
    }
    return pushed;
}

Equality compare_classes(const StrataClass& x, const StrataClass& y) {
    Equality e;
    const StrataClass diff = x - y;
    e.canonical = diff.is_zero();
    e.verdict = e.canonical ? Verdict::Certified : vanish_check(diff, 0).verdict;
    return e;
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::AS2:
            return "AS2";
        case Relation::ASm:
            return "ASm";
        case Relation::ASDR:
            return "ASDR";
        case Relation::ASOmega:
            return "ASOmega";
        case Relation::ASPsi:
            return "ASPsi";
    }
    return "?";
}

StrataClass times_psi_power(const StrataClass& x, int leg, int k) {
    StrataClass out(x.genus(), x.num_points());
    for (const auto& [key, t] : x.terms()) {
        auto s = t.stratum;
        s.legs.at(leg).psi += k;
        out.add(s, t.coef);
    }
    return out;
}

StrataClass concatenate(const StrataClass& gamma1, const StrataClass& gamma2) {
    if (gamma1.num_points() != 2)
        throw ArityMismatch("first operand must live on M_{g,2}");
    GraftSkeleton sk;
    sk.g = gamma1.genus() + gamma2.genus();
    sk.n = gamma2.num_points();
    sk.vertices.push_back({gamma1.genus(), {0, -1}});
    GraftSkeleton::Vertex second{gamma2.genus(), {-1}};
    for (int i = 1; i < gamma2.num_points(); ++i)
        second.points.push_back(i);
    sk.vertices.push_back(std::move(second));
    return graft(sk, {gamma1, gamma2});
}

namespace {

enum class Side { Hodge, Omega, Psi };

// Degree-d part of lambda_g Lambda_g / (1 - psi_leg), of lambda_g Omega(1,0; -1 at leg),
// or of 1 / (1 - psi_leg) on M_{g,points}.
StrataClass side_class(Side kind, int g, int points, int leg, int d) {
    StrataClass out(g, points);
    if (d < 0 || d > 3 * g - 3 + points)
        return out;
    if (kind == Side::Psi)
        return times_psi_power(StrataClass::fundamental(g, points), leg, d);
    if (kind == Side::Omega) {
        OmegaParams p{1, 0, std::vector<long>(points, 0), Rational(1)};
        p.a[leg] = -1;
        return lambda_omega_ct(p, g, d).degree_part(d);
    }
    if (g == 0)
        return times_psi_power(StrataClass::fundamental(0, points), leg, d);
    const auto hodge = mumford_lambda(g, points, d - g);
    // lambda_g^2 = 0, so the sum stops below i = g
    for (int i = 0; i < g && i <= d - g; ++i) {
        const StrataClass term = times_psi_power(times_lambda_top(hodge.lambda[i]), leg, d - g - i);
        out += term.degree_part(d) * Rational(i % 2 ? -1 : 1);
    }
    return out;
}

Side side_of(Relation kind) {
    return kind == Relation::ASOmega ? Side::Omega
                                     : (kind == Relation::ASPsi ? Side::Psi : Side::Hodge);
}

// The side classes of Omega and Psi relations carry the full degree; the Hodge ones are
// indexed by the degree of Lambda / (1 - psi) and shifted by the genus of lambda_g.
int side_degree(Side kind, int g, int a) { return kind == Side::Hodge ? g + a : a; }

int sign(long k) { return k % 2 == 0 ? 1 : -1; }

// (-1)^{g1 + a1} for the Lambda / (1 - psi) index a1; with a1 counting the full degree
// g1 + a1 this is (-1)^{a1}.
int sum_sign(Side kind, int g1, int a1) { return kind == Side::Hodge ? sign(g1 + a1) : sign(a1); }

StrataClass two_point(Side kind, int g, int r) {
    const int d = 2 * g + r;
    StrataClass out = side_class(kind, g, 2, 1, d) * Rational(sign(r)) -
                      side_class(kind, g, 2, 0, d);
    const int total = kind == Side::Hodge ? g - 1 + r : 2 * g - 1 + r;
    for (int g1 = 1; g1 < g; ++g1) {
        const int g2 = g - g1;
        for (int a1 = 0; a1 <= total; ++a1) {
            const StrataClass left = side_class(kind, g1, 2, 1, side_degree(kind, g1, a1));
            const StrataClass right =
                side_class(kind, g2, 2, 0, side_degree(kind, g2, total - a1));
            if (left.is_zero() || right.is_zero())
                continue;
            out += concatenate(left, right) * Rational(sum_sign(kind, g1, a1));
        }
    }
    return out;
}

StrataClass many_point(Side kind, int g, int m, int r) {
    if (m < 2)
        throw std::invalid_argument("the relation with extra points needs m >= 2");
    const int d = 2 * g + m - 1 + r;
    StrataClass out = side_class(kind, g, 1 + m, 0, d) * Rational(-1);
    const int total = kind == Side::Hodge ? g + m - 2 + r : 2 * g + m - 2 + r;
    for (int g1 = 1; g1 <= g; ++g1) {
        const int g2 = g - g1;
        for (int a1 = 0; a1 <= total; ++a1) {
            const StrataClass left = side_class(kind, g1, 2, 1, side_degree(kind, g1, a1));
            const StrataClass right =
                side_class(kind, g2, 1 + m, 0, side_degree(kind, g2, total - a1));
            if (left.is_zero() || right.is_zero())
                continue;
            out += concatenate(left, right) * Rational(sum_sign(kind, g1, a1));
        }
    }
    return out;
}

StrataClass lambda_dr_psi(int g, int r) {
    const int dim = 3 * g - 1;
    return times_psi_power(lambda_dr_ct(g, {1, -1}, dim), 0, r);
}

StrataClass with_dr(Side kind, int g, int r) {
    const int d = 2 * g + r;
    StrataClass out = lambda_dr_psi(g, r) * Rational(-sign(r)) + side_class(kind, g, 2, 1, d);
    for (int g1 = 1; g1 < g; ++g1) {
        const int g2 = g - g1;
        const int total = kind == Side::Hodge ? g1 + r - 1 : 2 * g1 + r - 1;
        for (int a1 = 0; a1 <= total; ++a1) {
            const int a2 = total - a1;
            const StrataClass left = side_class(kind, g1, 2, 1, side_degree(kind, g1, a1));
            const StrataClass right = lambda_dr_psi(g2, a2);
            if (left.is_zero() || right.is_zero())
                continue;
            out += concatenate(left, right) * Rational(-sign(a2));
        }
    }
    return out;
}

}  // namespace

StrataClass as_relation_residual(Relation kind, int g, int m, int r) {
    if (g < 1 || r < 0)
        throw std::invalid_argument("relations need g >= 1 and r >= 0");
    const Side side = side_of(kind);
    switch (kind) {
        case Relation::AS2:
            return two_point(side, g, r);
        case Relation::ASm:
            return many_point(side, g, m, r);
        case Relation::ASDR:
            return with_dr(side, g, r);
        case Relation::ASOmega:
        case Relation::ASPsi:
            if (m == 0)
                return with_dr(side, g, r);
            if (m == 1)
                return two_point(side, g, r);
            return many_point(side, g, m, r);
    }
    throw std::invalid_argument("unknown relation");
}

}  // namespace ctaut
