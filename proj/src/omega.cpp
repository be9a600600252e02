#include "ctaut/omega.hpp"

#include "ctaut/exactmath.hpp"

#include <algorithm>
#include <functional>

namespace ctaut {

namespace {

long mod(long x, long r) { return ((x % r) + r) % r; }

// (-1)^{m-1} x^m B_{m+1}(q) / (m (m+1)) for m = 1..d (index 0 unused).
std::vector<Rational> chern_series(const Rational& q, const Rational& x, int d) {
    std::vector<Rational> c(d + 1);
    for (int m = 1; m <= d; ++m) {
        Rational v = pow(x, static_cast<unsigned>(m)) * bernoulli_value(m + 1, q) /
                     Rational(static_cast<long>(m) * (m + 1));
        c[m] = (m % 2) ? v : -v;
    }
    return c;
}

// exp of a univariate series without constant term.
std::vector<Rational> exp_series(const std::vector<Rational>& g, int d) {
    std::vector<Rational> e(d + 1);
    e[0] = Rational(1);
    for (int k = 1; k <= d; ++k) {
        Rational s(0);
        for (int j = 1; j <= k && j < static_cast<int>(g.size()); ++j)
            s += Rational(j) * g[j] * e[k - j];
        e[k] = s / Rational(k);
    }
    return e;
}

// Homogeneous bivariate pieces: h[d][i] is the coefficient of u^i v^{d-i}.
using Bivariate = std::vector<std::vector<Rational>>;

Bivariate bivariate_zero(int d) {
    Bivariate b(d + 1);
    for (int k = 0; k <= d; ++k)
        b[k].assign(k + 1, Rational(0));
    return b;
}

// (1 - exp(sum_m c_m [u^m - (-v)^m])) / (u + v), up to total degree d.
Bivariate edge_kernel(const std::vector<Rational>& c, int d) {
    const int top = d + 1;
    Bivariate g = bivariate_zero(top);
    for (int m = 1; m <= top && m < static_cast<int>(c.size()); ++m) {
        g[m][m] += c[m];
        // -(-v)^m = (-1)^{m+1} v^m
        g[m][0] += (m % 2) ? c[m] : -c[m];
    }
    Bivariate e = bivariate_zero(top);
    e[0][0] = Rational(1);
    for (int k = 1; k <= top; ++k) {
        for (int j = 1; j <= k; ++j) {
            const auto& gj = g[j];
            const auto& ek = e[k - j];
            for (int i1 = 0; i1 <= j; ++i1) {
                if (gj[i1].is_zero())
                    continue;
                for (int i2 = 0; i2 <= k - j; ++i2)
                    e[k][i1 + i2] += Rational(j) * gj[i1] * ek[i2];
            }
        }
        for (auto& x : e[k])
            x /= Rational(k);
    }
    // F = 1 - E has no constant term; divide by (u + v).
    Bivariate q = bivariate_zero(d);
    for (int k = 1; k <= top; ++k) {
        std::vector<Rational> f(k + 1);
        for (int i = 0; i <= k; ++i)
            f[i] = -e[k][i];
        // f_{i} (coefficient of u^i v^{k-i}) = q_{i-1} + q_{i}, q of degree k-1
        auto& qk = q[k - 1];
        for (int i = 0; i <= k - 1; ++i)
            qk[i] = f[i] - (i > 0 ? qk[i - 1] : Rational(0));
        if (f[k] != qk[k - 1])
            throw std::logic_error("edge kernel numerator is not divisible by psi + psi'");
    }
    return q;
}

struct Factor {
    // Each option: decoration change applied to the stratum, with coefficient and degree.
    struct Option {
        int degree;
        Rational coef;
        std::vector<int> kappa;  // for vertex factors
        int i = 0, j = 0;        // psi exponents for leg (i) or edge ends (i, j)
    };
    enum Kind { Vertex, Leg, Edge } kind;
    int index;
    std::vector<Option> options;
};

void kappa_options(const std::vector<Rational>& alpha, int d, Factor& f) {
    std::vector<int> cur;
    std::function<void(int, int, Rational)> rec = [&](int start, int left, Rational coef) {
        f.options.push_back({d - left, coef, cur});
        for (int m = start; m <= left; ++m) {
            if (alpha[m].is_zero())
                continue;
            // count multiplicity of m to apply 1/c! incrementally
            int c = static_cast<int>(std::count(cur.begin(), cur.end(), m)) + 1;
            cur.push_back(m);
            rec(m, left - m, coef * alpha[m] / Rational(c));
            cur.pop_back();
        }
    };
    rec(1, d, Rational(1));
}

}  // namespace

namespace {

// Tree sum for Omega; with `lambda` every term is multiplied by lambda_g, i.e. each
// positive-genus vertex carries its top lambda flag, and max_degree bounds the total.
void omega_tree_terms(const OmegaParams& p, int g, int max_degree, bool lambda,
                      const TermSink& sink) {
    const int n = static_cast<int>(p.a.size());
    if (p.r <= 0)
        throw std::invalid_argument("r must be positive");
    long total = 0;
    for (long x : p.a)
        total += x;
    if (mod(total - (2L * g - 2 + n) * p.s, p.r) != 0)
        throw ModularConstraintViolated("sum of primary fields violates the modular constraint");

    const int dim = 3 * g - 3 + n;
    max_degree = std::min(max_degree, dim);
    if (max_degree < 0)
        return;
    const Rational r(p.r);
    const Rational prefactor = pow(r, 2 * g - 1);
    const auto alpha_raw = chern_series(Rational(p.s, p.r), p.x, max_degree);
    std::vector<Rational> alpha(alpha_raw.size());
    for (std::size_t m = 0; m < alpha.size(); ++m)
        alpha[m] = -alpha_raw[m];
    std::vector<std::vector<Rational>> leg_series;
    for (long ai : p.a)
        leg_series.push_back(exp_series(chern_series(Rational(ai, p.r), p.x, max_degree), max_degree));

    for (const auto& tree : stable_trees(g, n)) {
        const int ne = static_cast<int>(tree.edges.size());
        const int budget = max_degree - ne - (lambda ? g : 0);
        if (budget < 0)
            continue;
        const int nv = static_cast<int>(tree.vertices.size());

        // Weights: root at vertex 0; the child end of each edge gets
        // s * sum chi(D) - sum_{legs in D} a_i mod r over the subtree D below it.
        std::vector<std::vector<std::pair<int, int>>> adj(nv);
        for (int e = 0; e < ne; ++e) {
            adj[tree.edges[e].a.vertex].push_back({e, tree.edges[e].b.vertex});
            adj[tree.edges[e].b.vertex].push_back({e, tree.edges[e].a.vertex});
        }
        std::vector<int> parent(nv, -1), parent_edge(nv, -1), order{0};
        std::vector<bool> seen(nv, false);
        seen[0] = true;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (auto [e, w] : adj[order[i]])
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = order[i];
                    parent_edge[w] = e;
                    order.push_back(w);
                }
        std::vector<long> chi_below(nv), a_below(nv, 0);
        for (int v = 0; v < nv; ++v)
            chi_below[v] = 2L * tree.vertices[v].genus - 2 + tree.valence(v);
        for (int i = 0; i < n; ++i)
            a_below[tree.legs[i].vertex] += p.a[i];
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (parent[*it] >= 0) {
                chi_below[parent[*it]] += chi_below[*it];
                a_below[parent[*it]] += a_below[*it];
            }
        std::vector<long> weight_a(ne);  // weight at end `a` of each edge
        for (int v = 1; v < nv; ++v) {
            const int e = parent_edge[v];
            const long w_child = mod(p.s * chi_below[v] - a_below[v], p.r);
            const long w_parent = mod(-w_child, p.r);
            weight_a[e] = tree.edges[e].a.vertex == v ? w_child : w_parent;
        }

        std::vector<Factor> factors;
        for (int v = 0; v < nv; ++v) {
            Factor f{Factor::Vertex, v, {}};
            kappa_options(alpha, std::min(budget, tree.vertex_dimension(v)), f);
            factors.push_back(std::move(f));
        }
        for (int i = 0; i < n; ++i) {
            Factor f{Factor::Leg, i, {}};
            for (int k = 0; k <= budget; ++k)
                if (!leg_series[i][k].is_zero())
                    f.options.push_back({k, leg_series[i][k], {}, k, 0});
            factors.push_back(std::move(f));
        }
        for (int e = 0; e < ne; ++e) {
            Factor f{Factor::Edge, e, {}};
            auto kernel = edge_kernel(chern_series(Rational(weight_a[e], p.r), p.x, budget + 1), budget);
            for (int k = 0; k <= budget; ++k)
                for (int i = 0; i <= k; ++i)
                    if (!kernel[k][i].is_zero())
                        f.options.push_back({k, kernel[k][i], {}, i, k - i});
            factors.push_back(std::move(f));
        }

        DecoratedStratum cur = tree;
        std::vector<int> room(nv);
        for (int v = 0; v < nv; ++v) {
            room[v] = tree.vertex_dimension(v);
            if (lambda && cur.vertices[v].genus > 0) {
                cur.vertices[v].lambda = true;
                room[v] -= cur.vertices[v].genus;
            }
        }
        std::function<void(std::size_t, int, const Rational&)> rec =
            [&](std::size_t fi, int left, const Rational& coef) {
                if (fi == factors.size()) {
                    sink(cur, coef * prefactor);
                    return;
                }
                const Factor& f = factors[fi];
                for (const auto& o : f.options) {
                    if (o.degree > left)
                        continue;
                    if (f.kind == Factor::Vertex) {
                        if (o.degree > room[f.index])
                            continue;
                        cur.vertices[f.index].kappa = o.kappa;
                        room[f.index] -= o.degree;
                        rec(fi + 1, left - o.degree, coef * o.coef);
                        room[f.index] += o.degree;
                        cur.vertices[f.index].kappa.clear();
                    } else if (f.kind == Factor::Leg) {
                        const int v = cur.legs[f.index].vertex;
                        if (o.i > room[v])
                            continue;
                        cur.legs[f.index].psi = o.i;
                        room[v] -= o.i;
                        rec(fi + 1, left - o.degree, coef * o.coef);
                        room[v] += o.i;
                        cur.legs[f.index].psi = 0;
                    } else {
                        auto& ed = cur.edges[f.index];
                        if (o.i > room[ed.a.vertex] || o.j > room[ed.b.vertex])
                            continue;
                        ed.a.psi = o.i;
                        ed.b.psi = o.j;
                        room[ed.a.vertex] -= o.i;
                        room[ed.b.vertex] -= o.j;
                        rec(fi + 1, left - o.degree, coef * o.coef);
                        room[ed.a.vertex] += o.i;
                        room[ed.b.vertex] += o.j;
                        ed.a.psi = ed.b.psi = 0;
                    }
                }
            };
        rec(0, budget, Rational(1) / Rational(automorphism_count(tree)));
    }
}

StrataClass omega_tree_sum(const OmegaParams& p, int g, int max_degree, bool lambda) {
    StrataClass out(g, static_cast<int>(p.a.size()));
    omega_tree_terms(p, g, max_degree, lambda,
                     [&](const DecoratedStratum& s, const Rational& c) { out.add(s, c); });
    return out;
}

OmegaParams vertex_params(const std::vector<long>& values, int negatives, long a) {
    if (a <= 0)
        throw NonpositiveFlow("vertex flow must be positive");
    OmegaParams p;
    p.r = a;
    p.s = 0;
    p.x = Rational(a);
    for (long v : values)
        p.a.push_back(-v);
    p.a.resize(values.size() + negatives, 0);
    return p;
}

}  // namespace

StrataClass omega_ct(const OmegaParams& p, int g, int max_degree) {
    return omega_tree_sum(p, g, max_degree, false);
}

StrataClass lambda_omega_ct(const OmegaParams& p, int g, int max_degree) {
    return omega_tree_sum(p, g, max_degree, true);
}

StrataClass MumfordExpansion::hodge_dual(const Rational& a) const {
    StrataClass out(g, n);
    for (int i = 0; i <= g && i < static_cast<int>(lambda.size()); ++i) {
        Rational c = pow(a, static_cast<unsigned>(i));
        out += lambda[i] * (i % 2 ? -c : c);
    }
    return out;
}

MumfordExpansion mumford_lambda(int g, int n, int max_degree) {
    MumfordExpansion m;
    m.g = g;
    m.n = n;
    m.lambda.push_back(StrataClass::fundamental(g, n));
    if (g == 0)
        return m;
    OmegaParams p{1, 1, std::vector<long>(n, 1), Rational(1)};
    // Omega(1,1;1,...,1) is the total Chern class of the dual Hodge bundle.
    const StrataClass hodge = omega_ct(p, g, std::min(max_degree, g - 1));
    for (int i = 1; i < g; ++i)
        m.lambda.push_back(hodge.degree_part(i) * Rational(i % 2 ? -1 : 1));
    if (g <= max_degree) {
        auto top = DecoratedStratum::trivial(g, n);
        top.vertices[0].lambda = true;
        m.lambda.push_back(StrataClass::of(top));
    } else {
        m.lambda.push_back(StrataClass(g, n));
    }
    return m;
}

void vertex_omega_terms(int g, const std::vector<long>& values, int negatives, long a,
                        int max_degree, const TermSink& sink) {
    const Rational scale = pow(Rational(a), 1 - g);
    omega_tree_terms(vertex_params(values, negatives, a), g, max_degree, true,
                     [&](const DecoratedStratum& s, const Rational& c) { sink(s, c * scale); });
}

StrataClass vertex_omega(int g, const std::vector<long>& values, int negatives, long a,
                         int max_degree) {
    const OmegaParams p = vertex_params(values, negatives, a);
    StrataClass out = lambda_omega_ct(p, g, max_degree);
    out *= pow(Rational(a), 1 - g);
    return out;
}

StrataClass vertex_psi(int g, const std::vector<long>& values, int negatives, int max_degree) {
    std::vector<Rational> c;
    for (long v : values)
        c.emplace_back(v);
    c.resize(values.size() + negatives, Rational(0));
    return psi_geometric(g, static_cast<int>(c.size()), c, max_degree);
}

}  // namespace ctaut
