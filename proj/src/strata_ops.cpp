#include "ctaut/strata.hpp"

#include "ctaut/multipoly.hpp"
#include "ctaut/treecomb.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ctaut {

StrataClass graft(const GraftSkeleton& skeleton, const std::vector<StrataClass>& vertex_classes) {
    const std::size_t nv = skeleton.vertices.size();
    if (vertex_classes.size() != nv)
        throw ArityMismatch("one class per skeleton vertex expected");
    int num_edges = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        const auto& sv = skeleton.vertices[v];
        const auto& cv = vertex_classes[v];
        if (cv.genus() != sv.genus || cv.num_points() != static_cast<int>(sv.points.size()))
            throw ArityMismatch("vertex class lives on the wrong moduli space");
        for (int p : sv.points)
            if (p < 0)
                num_edges = std::max(num_edges, -p);
    }

    StrataClass out(skeleton.g, skeleton.n);
    std::vector<const StrataClass::Term*> chosen(nv);
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t v, const Rational& c) {
        if (v == nv) {
            DecoratedStratum s;
            s.g = skeleton.g;
            s.n = skeleton.n;
            s.legs.assign(skeleton.n, {-1, 0});
            std::vector<std::vector<DecoratedStratum::HalfEdge>> ends(num_edges);
            for (std::size_t w = 0; w < nv; ++w) {
                const auto& st = chosen[w]->stratum;
                const int offset = static_cast<int>(s.vertices.size());
                s.vertices.insert(s.vertices.end(), st.vertices.begin(), st.vertices.end());
                for (const auto& e : st.edges)
                    s.edges.push_back({{e.a.vertex + offset, e.a.psi}, {e.b.vertex + offset, e.b.psi}});
                const auto& pts = skeleton.vertices[w].points;
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    DecoratedStratum::HalfEdge h{st.legs[j].vertex + offset, st.legs[j].psi};
                    if (pts[j] >= 0)
                        s.legs.at(pts[j]) = h;
                    else
                        ends[-pts[j] - 1].push_back(h);
                }
            }
            for (const auto& e : ends) {
                if (e.size() != 2)
                    throw ArityMismatch("skeleton edge must have two ends");
                s.edges.push_back({e[0], e[1]});
            }
            out.add(s, c);
            return;
        }
        for (const auto& [k, t] : vertex_classes[v].terms()) {
            chosen[v] = &t;
            rec(v + 1, c * t.coef);
        }
    };
    rec(0, Rational(1));
    return out;
}

StrataClass times_lambda_top(const StrataClass& x) {
    StrataClass out(x.genus(), x.num_points());
    for (const auto& [k, t] : x.terms()) {
        DecoratedStratum s = t.stratum;
        bool zero = false;
        for (auto& v : s.vertices) {
            if (v.genus == 0)
                continue;
            if (v.lambda)
                zero = true;
            v.lambda = true;
        }
        if (!zero)
            out.add(s, t.coef);
    }
    return out;
}

namespace {

// Removes leg `last` and renumbers; the vertex and edge lists are kept.
DecoratedStratum drop_last_leg(const DecoratedStratum& s) {
    DecoratedStratum r = s;
    r.legs.pop_back();
    r.n -= 1;
    return r;
}

void forget_term(const DecoratedStratum& s, const Rational& coef, StrataClass& out) {
    const int last = s.n - 1;
    const int v = s.legs[last].vertex;
    const int p = s.legs[last].psi;
    const int gv = s.vertices[v].genus;
    const int nv = s.valence(v);

    if (2 * gv - 2 + nv - 1 > 0) {
        const DecoratedStratum base = drop_last_leg(s);
        const auto& kappa = s.vertices[v].kappa;
        const std::size_t r = kappa.size();
        for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
            int q = p;
            std::vector<int> rest;
            for (std::size_t j = 0; j < r; ++j)
                (mask >> j & 1u) ? (void)(q += kappa[j]) : rest.push_back(kappa[j]);
            if (q >= 1) {
                DecoratedStratum t = base;
                Rational c = coef;
                if (q - 1 >= 1)
                    rest.push_back(q - 1);
                else
                    c *= Rational(2 * gv - 2 + nv - 1);
                std::sort(rest.begin(), rest.end());
                t.vertices[v].kappa = rest;
                out.add(t, c);
                continue;
            }
            // No psi at the forgotten leg: lower one psi exponent at the vertex by one.
            for (int i = 0; i < base.n; ++i)
                if (base.legs[i].vertex == v && base.legs[i].psi > 0) {
                    DecoratedStratum t = base;
                    t.legs[i].psi -= 1;
                    out.add(t, coef);
                }
            for (std::size_t e = 0; e < base.edges.size(); ++e) {
                const auto& ed = base.edges[e];
                if (ed.a.vertex == v && ed.a.psi > 0) {
                    DecoratedStratum t = base;
                    t.edges[e].a.psi -= 1;
                    out.add(t, coef);
                }
                if (ed.b.vertex == v && ed.b.psi > 0) {
                    DecoratedStratum t = base;
                    t.edges[e].b.psi -= 1;
                    out.add(t, coef);
                }
            }
        }
        return;
    }

    // The vertex becomes unstable (genus 0, three half-edges) and is contracted.
    if (s.vertex_degree(v) > 0)
        return;
    std::vector<int> vertex_legs, vertex_edges;
    for (int i = 0; i < last; ++i)
        if (s.legs[i].vertex == v)
            vertex_legs.push_back(i);
    for (std::size_t e = 0; e < s.edges.size(); ++e)
        if (s.edges[e].a.vertex == v || s.edges[e].b.vertex == v)
            vertex_edges.push_back(static_cast<int>(e));
    if (vertex_edges.empty())
        throw UnstableSignature("forgetting the last point of M_{0,3}");

    auto far_end = [&](int e) {
        const auto& ed = s.edges[e];
        return ed.a.vertex == v ? ed.b : ed.a;
    };
    DecoratedStratum t = drop_last_leg(s);
    std::vector<DecoratedStratum::Edge> edges;
    for (std::size_t e = 0; e < s.edges.size(); ++e)
        if (std::find(vertex_edges.begin(), vertex_edges.end(), static_cast<int>(e)) ==
            vertex_edges.end())
            edges.push_back(s.edges[e]);
    if (vertex_edges.size() == 2)
        edges.push_back({far_end(vertex_edges[0]), far_end(vertex_edges[1])});
    else
        t.legs[vertex_legs.at(0)] = far_end(vertex_edges[0]);
    t.edges = edges;
    // Remove vertex v and shift ids.
    t.vertices.erase(t.vertices.begin() + v);
    auto shift = [&](DecoratedStratum::HalfEdge& h) {
        if (h.vertex > v)
            --h.vertex;
    };
    for (auto& l : t.legs)
        shift(l);
    for (auto& e : t.edges) {
        shift(e.a);
        shift(e.b);
    }
    out.add(t, coef);
}

}  // namespace

StrataClass forget_last(const StrataClass& x) {
    if (x.num_points() == 0)
        throw ArityMismatch("no point to forget");
    StrataClass out(x.genus(), x.num_points() - 1);
    for (const auto& [k, t] : x.terms())
        forget_term(t.stratum, t.coef, out);
    return out;
}

namespace {

void pull_back_term(const DecoratedStratum& s, const Rational& coef, StrataClass& out) {
    const int nv = static_cast<int>(s.vertices.size());
    const int leg = s.n;
    for (int v = 0; v < nv; ++v) {
        DecoratedStratum base = s;
        base.n += 1;
        base.legs.push_back({v, 0});
        base.vertices[v].kappa.clear();
        // kappa_a -> kappa_a - psi_{n+1}^a at the vertex carrying the new leg
        const auto& kappa = s.vertices[v].kappa;
        const std::size_t r = kappa.size();
        for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
            DecoratedStratum t = base;
            int sign = 1;
            for (std::size_t j = 0; j < r; ++j) {
                if (mask >> j & 1u) {
                    t.legs[leg].psi += kappa[j];
                    sign = -sign;
                } else {
                    t.vertices[v].kappa.push_back(kappa[j]);
                }
            }
            out.add(t, coef * Rational(sign));
        }
        // psi_h^k -> psi_h^k - (bubble carrying h and n+1) psi_node^{k-1}
        auto add_bubble = [&](int kind, int index) {
            DecoratedStratum t = s;
            t.n += 1;
            const int b = static_cast<int>(t.vertices.size());
            t.vertices.push_back({0, {}, false});
            DecoratedStratum::HalfEdge* h =
                kind == 0 ? &t.legs[index] : kind == 1 ? &t.edges[index].a : &t.edges[index].b;
            const int k = h->psi;
            const DecoratedStratum::HalfEdge node{h->vertex, k - 1};
            *h = {b, 0};
            t.legs.push_back({b, 0});
            t.edges.push_back({node, {b, 0}});
            out.add(t, -coef);
        };
        for (int i = 0; i < s.n; ++i)
            if (s.legs[i].vertex == v && s.legs[i].psi > 0)
                add_bubble(0, i);
        for (std::size_t e = 0; e < s.edges.size(); ++e) {
            if (s.edges[e].a.vertex == v && s.edges[e].a.psi > 0)
                add_bubble(1, static_cast<int>(e));
            if (s.edges[e].b.vertex == v && s.edges[e].b.psi > 0)
                add_bubble(2, static_cast<int>(e));
        }
    }
}

}  // namespace

StrataClass pull_back_last(const StrataClass& x) {
    StrataClass out(x.genus(), x.num_points() + 1);
    for (const auto& [k, t] : x.terms())
        pull_back_term(t.stratum, t.coef, out);
    return out;
}

StrataClass psi_geometric(int g, int n, const std::vector<Rational>& c, int max_degree) {
    if (static_cast<int>(c.size()) != n)
        throw ArityMismatch("one coefficient per leg expected");
    StrataClass out(g, n);
    const int top = std::min(max_degree, 3 * g - 3 + n);
    for (int d = 0; d <= top; ++d)
        for (const auto& e : homogeneous_exponents(static_cast<std::size_t>(n), d)) {
            DecoratedStratum s = DecoratedStratum::trivial(g, n);
            Rational coef(1);
            for (int i = 0; i < n; ++i) {
                s.legs[i].psi = e[i];
                if (e[i])
                    coef *= pow(c[i], static_cast<unsigned>(e[i]));
            }
            out.add(s, coef);
        }
    return out;
}

std::vector<DecoratedStratum> stable_trees(int g, int n) {
    const bool rooted_at_leg = n >= 1;
    auto trees = rooted_at_leg ? enumerate_srt(g, n - 1, 1) : enumerate_srt(g, 0, 0);
    std::vector<DecoratedStratum> out;
    std::set<std::string> seen;
    for (const auto& t : trees) {
        DecoratedStratum s;
        s.g = g;
        s.n = n;
        s.legs.assign(n, {0, 0});
        for (std::size_t v = 0; v < t.num_vertices(); ++v) {
            const auto& x = t.vertex(static_cast<int>(v));
            s.vertices.push_back({x.genus, {}, false});
            for (int l : x.legs)
                s.legs[l] = {static_cast<int>(v), 0};
            if (v > 0)
                s.edges.push_back({{x.parent, 0}, {static_cast<int>(v), 0}});
        }
        auto [key, canon] = canonical_form(s);
        if (seen.insert(key).second)
            out.push_back(canon);
    }
    return out;
}

std::vector<DecoratedStratum> psi_monomial_strata(int g, int n, int d) {
    std::vector<DecoratedStratum> out;
    std::set<std::string> seen;
    if (d < 0 || d > 3 * g - 3 + n)
        return out;
    for (const auto& tree : stable_trees(g, n)) {
        const int e = static_cast<int>(tree.edges.size());
        if (e > d)
            continue;
        // Half-edge slots: legs then edge ends (a, b).
        struct Slot {
            int vertex;
            int kind;  // 0 leg, 1 edge end a, 2 edge end b
            int index;
        };
        std::vector<Slot> slots;
        for (int i = 0; i < n; ++i)
            slots.push_back({tree.legs[i].vertex, 0, i});
        for (int j = 0; j < e; ++j) {
            slots.push_back({tree.edges[j].a.vertex, 1, j});
            slots.push_back({tree.edges[j].b.vertex, 2, j});
        }
        std::vector<int> room(tree.vertices.size());
        for (std::size_t v = 0; v < room.size(); ++v)
            room[v] = tree.vertex_dimension(static_cast<int>(v));
        DecoratedStratum cur = tree;
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == slots.size()) {
                if (left != 0)
                    return;
                auto [key, canon] = canonical_form(cur);
                if (seen.insert(key).second)
                    out.push_back(canon);
                return;
            }
            const Slot& sl = slots[i];
            for (int k = 0; k <= std::min(left, room[sl.vertex]); ++k) {
                int& target = sl.kind == 0   ? cur.legs[sl.index].psi
                              : sl.kind == 1 ? cur.edges[sl.index].a.psi
                                             : cur.edges[sl.index].b.psi;
                target = k;
                room[sl.vertex] -= k;
                rec(i + 1, left - k);
                room[sl.vertex] += k;
                target = 0;
            }
        };
        rec(0, d - e);
    }
    return out;
}

}  // namespace ctaut
