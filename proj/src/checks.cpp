#include "ctaut/checks.hpp"

#include "ctaut/assemble.hpp"
#include "ctaut/drcycles.hpp"
#include "ctaut/exactmath.hpp"
#include "ctaut/omega.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ctaut {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

long total(const std::vector<long>& a) { return std::accumulate(a.begin(), a.end(), 0L); }

// a_i = i + 2: distinct, positive, no accidental cancellations in small sums
std::vector<long> sample_point(int n) {
    std::vector<long> a(n);
    for (int i = 0; i < n; ++i)
        a[i] = i + 2;
    return a;
}

std::string label_of(const std::string& head, const Params& p) {
    std::string s = head;
    for (const auto& [k, v] : p)
        s += " " + k + "=" + v;
    return s;
}

bool matches(const Selection& sel, std::optional<int> g, std::optional<int> n, std::optional<int> m,
             std::optional<int> r = {}) {
    auto ok = [](const std::optional<int>& want, const std::optional<int>& have) {
        return !want || !have || *want == *have;
    };
    return ok(sel.g, g) && ok(sel.n, n) && ok(sel.m, m) && ok(sel.r, r);
}

Params gnm(int g, int n, int m) {
    return {{"g", std::to_string(g)}, {"n", std::to_string(n)}, {"m", std::to_string(m)}};
}

void add_task(std::vector<CheckTask>& out, const std::string& head, const Params& p,
              std::function<CheckItem()> run) {
    const std::string label = label_of(head, p);
    out.push_back({label, [label, p, run = std::move(run)] {
                       CheckItem it = run();
                       it.label = label;
                       it.params = p;
                       return it;
                   }});
}

CheckItem equality_item(const StrataClass& x, const StrataClass& y) {
    CheckItem it;
    const Equality e = compare_classes(x, y);
    it.canonical = e.canonical;
    it.verdict = e.canonical ? Verdict::Certified : e.verdict;
    it.hashes = {class_hash(x), class_hash(y)};
    if (!e.canonical)
        it.note = "decided by pairing";
    return it;
}

CheckItem vanish_item(const StrataClass& x, int d_min) {
    CheckItem it;
    const VanishResult v = vanish_check(x, d_min);
    it.verdict = v.verdict;
    it.canonical = x.truncated(d_min - 1) == x;
    it.hashes = {class_hash(x)};
    it.note = std::to_string(v.pairings) + " pairings";
    if (v.verdict == Verdict::Nonzero)
        it.note += "; degree " + std::to_string(v.witness_degree) + " against " + v.witness +
                   " gives " + v.value.str();
    return it;
}

// Vanishing in degrees >= d_min of a class polynomial in the flows, decided on the
// pairing polynomials. Degree d_min - 1, when sampled, is reported but not judged.
CheckItem pairing_poly_item(const PairingPoly& p, int d_min) {
    CheckItem it;
    bool zero = true;
    for (const auto& [d, count] : p.pairings) {
        if (d < d_min - 1)
            continue;
        DegreeSummary s;
        s.pairings = count;
        auto found = p.by_degree.find(d);
        if (found != p.by_degree.end())
            s.nonzero = found->second.size();
        it.degrees[d] = s;
        if (d < d_min)
            continue;
        if (s.nonzero > 0) {
            zero = false;
            if (it.note.empty())
                it.note = "degree " + std::to_string(d) + " against " + found->second.begin()->first +
                          " gives " + found->second.begin()->second.str();
        }
    }
    if (!zero)
        it.verdict = Verdict::Nonzero;
    else
        it.verdict = p.g == 0 ? Verdict::Certified : Verdict::Consistent;
    if (zero && it.degrees.count(d_min - 1) && it.degrees.at(d_min - 1).nonzero > 0)
        it.note = "degree " + std::to_string(d_min - 1) + " survives, so the bound is sharp";
    it.canonical = false;
    return it;
}

CheckItem flag_item(bool ok, const std::string& note = {}) {
    CheckItem it;
    it.verdict = ok ? Verdict::Certified : Verdict::Nonzero;
    it.canonical = ok;
    it.note = note;
    return it;
}

// ---------------------------------------------------------------------------
// genus-0 vanishing

void genus0_vanishing(const Selection& sel, std::vector<CheckTask>& out) {
    for (int n = 0; n <= 5; ++n)
        for (int m = 2; n + m <= 7; ++m) {
            if (n + m < 3 || !matches(sel, 0, n, m))
                continue;
            add_task(out, "Omega", gnm(0, n, m), [n, m] {
                return pairing_poly_item(
                    interpolate_request_pairings({Family::Omega, 0, n, m, {}, -1}, m - 2), m - 1);
            });
        }
}

// ---------------------------------------------------------------------------
// genus-0 A classes

PairingPoly difference_pairings(int g, int n, int m, int min_degree) {
    const int points = m == 1 ? n + 1 : n;
    const int dim = 3 * g - 3 + points;
    return interpolate_pairings(
        [=](const std::vector<long>& a) {
            const StrataClass lvl = lvl_omega_m_class(g, n, m, a, -1);
            return lvl - (m == 1 ? a1_class(g, n, a, -1) : a0_class(g, n, a, -1));
        },
        g, points, static_cast<std::size_t>(n), dim, min_degree);
}

void genus0_a_classes(const Selection& sel, std::vector<CheckTask>& out) {
    for (int m = 1; m >= 0; --m)
        for (int n = 3 - m; n <= 5; ++n) {
            if (!matches(sel, 0, n, m))
                continue;
            add_task(out, m == 1 ? "lvlOmega-A1" : "lvlOmega-A0", gnm(0, n, m), [n, m] {
                CheckItem it = pairing_poly_item(difference_pairings(0, n, m, 0), 0);
                const auto a = sample_point(n);
                const StrataClass x = lvl_omega_m_class(0, n, m, a, -1);
                const StrataClass y = m == 1 ? a1_class(0, n, a, -1) : a0_class(0, n, a, -1);
                it.canonical = x == y;
                it.hashes = {class_hash(x), class_hash(y)};
                it.note = it.canonical ? "canonical at the sample point"
                                       : "equal as classes; expansions differ at the sample point";
                return it;
            });
        }
}

// ---------------------------------------------------------------------------
// pushforward

void pushforward(const Selection& sel, std::vector<CheckTask>& out) {
    struct Range {
        int g, n_max, m_max;
    };
    std::vector<Range> ranges{{0, 3, 4}, {1, 3, 4}, {2, 2, 3}};
    for (const auto& [g, n_max, m_max] : ranges)
        for (int n = 0; n <= n_max; ++n)
            for (int m = 1; m <= 4; ++m) {
                if (m > m_max && !(g == 2 && (n == 1 || sel.long_mode)))
                    continue;
                if (2 * g - 3 + n + m <= 0 || !matches(sel, g, n, m))
                    continue;
                const auto a = sample_point(n);
                if (m >= 2)
                    for (Family f : {Family::Omega, Family::LvlOmega})
                        add_task(out, family_name(f), gnm(g, n, m), [=] {
                            const StrataClass lhs = pushforward_class({f, g, n, m, a, -1});
                            StrataClass rhs(g, n + m - 1);
                            if (m > 2)
                                rhs = assemble({f, g, n, m - 1, a, -1}) * Rational(total(a));
                            return equality_item(lhs, rhs);
                        });
                else if (n >= 1 && 2 * g - 2 + n > 0)
                    add_task(out, "lvlOmega-A1", gnm(g, n, m), [=] {
                        const StrataClass lhs = pushforward_class({Family::LvlOmega, g, n, 1, a, -1}) -
                                                pushforward_class({Family::A1, g, n, 1, a, -1});
                        const StrataClass rhs =
                            (lvl_omega_m_class(g, n, 0, a, -1) - a0_class(g, n, a, -1)) *
                            Rational(total(a));
                        return equality_item(lhs, rhs);
                    });
            }
}

// ---------------------------------------------------------------------------
// vanishing experiments

void vanishing_experiment(const Selection& sel, std::vector<CheckTask>& out) {
    for (int g = 1; g <= 2; ++g) {
        if (g == 2 && !sel.long_mode)
            continue;
        // Omega^2_{g,2} in degrees above 2g, lvlOmega^1_{g,2} - A^1_{g,2} above 2g - 1
        if (matches(sel, g, 2, 2))
            add_task(out, "Omega", gnm(g, 2, 2), [g] {
                return pairing_poly_item(
                    interpolate_request_pairings({Family::Omega, g, 2, 2, {}, -1}, 2 * g), 2 * g + 1);
            });
        if (matches(sel, g, 2, 1))
            add_task(out, "lvlOmega-A1", gnm(g, 2, 1),
                     [g] { return pairing_poly_item(difference_pairings(g, 2, 1, 2 * g - 1), 2 * g); });
    }
}

// ---------------------------------------------------------------------------
// Omega properties

StrataClass times_linear_psi(const StrataClass& x, int i, const Rational& c) {
    StrataClass out = x;
    for (const auto& [k, t] : x.terms()) {
        DecoratedStratum s = t.stratum;
        s.legs[i].psi += 1;
        out.add(s, t.coef * c);
    }
    return out;
}

std::vector<long> constrained_fields(std::mt19937& rng, int g, int n, long r, long s) {
    std::uniform_int_distribution<long> d(-2 * r, 2 * r);
    std::vector<long> a(n);
    for (auto& x : a)
        x = d(rng);
    const long want = (2L * g - 2 + n) * s;
    a.back() += ((want - total(a)) % r + r) % r;
    return a;
}

// Shift in a_i by r, shift of s by r, and a_i = 0 versus a_i = r, on random inputs.
CheckItem shift_identities(int g) {
    std::mt19937 rng(static_cast<unsigned>(101 + g));
    std::size_t checked = 0, failed = 0;
    for (int n = 1; n <= 4; ++n) {
        if (2 * g - 2 + n <= 0)
            continue;
        const int dim = 3 * g - 3 + n;
        const int deg = g == 2 && n >= 3 ? 3 : dim;
        for (int trial = 0; trial < 4; ++trial) {
            const long r = std::uniform_int_distribution<long>(1, 12)(rng);
            const long s = std::uniform_int_distribution<long>(-3, 3)(rng);
            const Rational x(std::uniform_int_distribution<long>(1, 4)(rng), 2);
            const auto a = constrained_fields(rng, g, n, r, s);
            const int i = static_cast<int>(rng() % static_cast<unsigned>(n));

            const OmegaParams p{r, s, a, x};
            OmegaParams shifted = p;
            shifted.a[i] += r;
            failed += omega_ct(shifted, g, deg) !=
                      times_linear_psi(omega_ct(p, g, deg), i, x * Rational(a[i], r)).truncated(deg);

            auto a0 = constrained_fields(rng, g, n, r, 0);
            failed += omega_ct({r, 0, a0, x}, g, deg) != omega_ct({r, r, a0, x}, g, deg);
            checked += 2;

            a0[i] = 0;
            a0[(i + 1) % n] += ((-total(a0)) % r + r) % r;
            if (a0[i] != 0)
                continue;
            auto ar = a0;
            ar[i] = r;
            failed += omega_ct({r, 0, a0, x}, g, deg) != omega_ct({r, 0, ar, x}, g, deg);
            ++checked;
        }
    }
    return flag_item(failed == 0, std::to_string(checked) + " identities, " +
                                      std::to_string(failed) + " failed");
}

// r = s = x = sum a, fields s - a_i: the normalised class is 1 in genus 0.
CheckItem genus0_normalised(int n) {
    std::mt19937 rng(static_cast<unsigned>(200 + n));
    CheckItem it;
    it.verdict = Verdict::Certified;
    it.canonical = true;
    for (int t = 0; t < 3; ++t) {
        std::vector<long> a(n);
        for (auto& x : a)
            x = std::uniform_int_distribution<long>(1, 5)(rng);
        const long s = total(a);
        OmegaParams p{s, 0, {}, Rational(s)};
        for (long x : a)
            p.a.push_back(s - x);
        const StrataClass om = omega_ct(p, 0, n - 3) * Rational(s);
        if (om.degree_part(0) != StrataClass::fundamental(0, n)) {
            it.verdict = Verdict::Nonzero;
            it.note = "degree 0 part is not 1";
            return it;
        }
        const VanishResult v = vanish_check(om - om.degree_part(0), 1);
        if (v.verdict != Verdict::Certified)
            it.verdict = v.verdict;
        it.canonical = it.canonical && om.size() == 1;
    }
    return it;
}

// a^g lambda_g Lambda_g^{[a]}
StrataClass lambda_closed_form(int g, int n, long a, int max_degree) {
    StrataClass x = mumford_lambda(g, n, max_degree).hodge_dual(Rational(a));
    if (g > 0)
        x = times_lambda_top(x);
    return x.truncated(max_degree) * pow(Rational(a), g);
}

// Trailing zero fields: vertex class equals the pullback times prod 1/(1 - a_i psi_i).
CheckItem pullback_property(int g, int n, int m) {
    std::vector<long> vals(n);
    for (int i = 0; i < n; ++i)
        vals[i] = 1 + (3 * i + g) % 4;
    const long a = total(vals);
    const int points = n + m;
    const int dim = 3 * g - 3 + points;
    const StrataClass lhs = vertex_omega(g, vals, m, a, dim);

    OmegaParams p{a, 0, {}, Rational(a)};
    for (long x : vals)
        p.a.push_back(a - x);
    StrataClass pulled = omega_ct(p, g, dim - g);
    for (int j = 0; j < m; ++j)
        pulled = pull_back_last(pulled);
    if (g > 0)
        pulled = times_lambda_top(pulled);
    std::vector<Rational> c(points, Rational(0));
    for (int i = 0; i < n; ++i)
        c[i] = Rational(vals[i]);
    const StrataClass rhs =
        multiply(pulled, psi_geometric(g, points, c, dim)).truncated(dim) * pow(Rational(a), 1 - g);
    return equality_item(lhs, rhs);
}

// Omega(a, 0; b) with b_i >= 0 vanishes in degrees k >= g + sum b / a.
CheckItem rr_bound(int g, long a, const std::vector<long>& b) {
    const int n = static_cast<int>(b.size());
    const long bound = total(b) / a;
    const int dim = 3 * g - 3 + n;
    const StrataClass om = omega_ct({a, 0, b, Rational(1)}, g, dim);
    CheckItem it;
    it.verdict = Verdict::Certified;
    it.canonical = true;
    std::size_t pairings = 0;
    for (int k = g + static_cast<int>(bound); k + g <= dim; ++k) {
        StrataClass part = om.degree_part(k);
        if (g > 0)
            part = times_lambda_top(part);
        const VanishResult v = vanish_check(part, 0);
        pairings += v.pairings;
        it.canonical = it.canonical && part.is_zero();
        if (v.verdict == Verdict::Nonzero) {
            it.verdict = Verdict::Nonzero;
            it.note = "degree " + std::to_string(k) + " survives";
            return it;
        }
        if (v.verdict == Verdict::Consistent)
            it.verdict = Verdict::Consistent;
    }
    it.note = std::to_string(pairings) + " pairings";
    if (pairings == 0)
        it.note += "; no degree at or above the bound";
    return it;
}

void omega_properties(const Selection& sel, std::vector<CheckTask>& out) {
    for (int g = 0; g <= 2; ++g)
        if (matches(sel, g, {}, {}))
            add_task(out, "shift", {{"g", std::to_string(g)}}, [g] { return shift_identities(g); });
    for (int n = 3; n <= 7; ++n)
        if (matches(sel, 0, n, {}))
            add_task(out, "genus0-normalised", {{"g", "0"}, {"n", std::to_string(n)}},
                     [n] { return genus0_normalised(n); });
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n)
            for (int m = 1; m <= 3; ++m) {
                if (2 * g - 2 + n <= 0 || 3 * g - 3 + n + m > 5 || !matches(sel, g, n, m))
                    continue;
                add_task(out, "pullback", gnm(g, n, m), [=] { return pullback_property(g, n, m); });
            }
    struct Case {
        int g;
        long a;
        std::vector<long> b;
    };
    const std::vector<Case> cases{{0, 4, {1, 1, 1, 1, 0}},    {0, 3, {3, 2, 1, 0, 0}}, {0, 3, {2, 2, 1, 1, 0, 0}},
                                  {0, 2, {1, 1, 1, 1, 0, 0}}, {1, 2, {1, 1, 0, 0}},    {1, 3, {2, 1, 0, 0}},
                                  {1, 1, {2, 0, 0, 0}},       {1, 2, {2, 0, 0}},       {2, 2, {1, 1, 0}},
                                  {2, 1, {1, 0}},             {2, 3, {2, 1, 0}}};
    for (const auto& c : cases) {
        const int n = static_cast<int>(c.b.size());
        if (!matches(sel, c.g, n, {}))
            continue;
        std::string fields;
        for (long x : c.b)
            fields += (fields.empty() ? "" : ",") + std::to_string(x);
        add_task(out, "rr-bound",
                 {{"g", std::to_string(c.g)}, {"n", std::to_string(n)}, {"r", std::to_string(c.a)},
                  {"fields", fields}},
                 [c] { return rr_bound(c.g, c.a, c.b); });
    }
}

// ---------------------------------------------------------------------------
// reductions of the vertex class with at most one incoming flow

void hodge_reductions(const Selection& sel, std::vector<CheckTask>& out) {
    for (int g = 1; g <= 2; ++g)
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n >= 0; --n) {
                if (2 * g - 2 + n + m <= 0 || !matches(sel, g, n, m))
                    continue;
                for (long a : {1L, 2L, 3L}) {
                    Params p = gnm(g, n, m);
                    p.emplace_back("a", std::to_string(a));
                    add_task(out, n == 1 ? "one-flow" : "no-flow", p, [=] {
                        const int points = n + m;
                        const int dim = 3 * g - 3 + points;
                        const std::vector<long> vals = n == 1 ? std::vector<long>{a} : std::vector<long>{};
                        const StrataClass lhs = vertex_omega(g, vals, m, a, dim);
                        StrataClass rhs = lambda_closed_form(g, points, a, dim);
                        if (n == 1) {
                            std::vector<Rational> c(points, Rational(0));
                            c[0] = Rational(a);
                            rhs = multiply(rhs, psi_geometric(g, points, c, dim)).truncated(dim);
                        }
                        return equality_item(lhs, rhs);
                    });
                }
            }
}

// ---------------------------------------------------------------------------
// relations

void relations(const Selection& sel, std::vector<CheckTask>& out) {
    for (int g = 1; g <= 2; ++g)
        for (int r = 0; r <= 2; ++r) {
            auto add = [&](Relation kind, std::optional<int> m) {
                if (!matches(sel, g, {}, m, r))
                    return;
                Params p{{"g", std::to_string(g)}};
                if (m)
                    p.emplace_back("m", std::to_string(*m));
                p.emplace_back("r", std::to_string(r));
                const int mm = m.value_or(0);
                add_task(out, relation_name(kind), p,
                         [=] { return vanish_item(as_relation_residual(kind, g, mm, r), 0); });
            };
            add(Relation::AS2, std::nullopt);
            for (int m = 2; m <= 3; ++m)
                add(Relation::ASm, m);
            add(Relation::ASDR, std::nullopt);
            for (int m = 0; m <= 3; ++m) {
                add(Relation::ASOmega, m);
                add(Relation::ASPsi, m);
            }
        }
}

// ---------------------------------------------------------------------------
// combinatorics

CheckItem c_lvl_signature(int g, int n, int m) {
    std::size_t checked = 0, failed = 0;
    const auto trees = enumerate_srt(g, n, m);
    for (const auto& dl : enumerate_dlsrt(trees, false)) {
        if (dl.tree->num_vertices() > 6)
            continue;
        ++checked;
        failed += c_lvl(*dl.tree, dl.p) != brute_force_c_lvl(*dl.tree, dl.p);
    }
    return flag_item(failed == 0 && checked > 0, std::to_string(checked) + " labeled trees, " +
                                                     std::to_string(failed) + " mismatches");
}

CheckItem b_generating_function(int g, int n, int m) {
    const int dim = 3 * g - 3 + n + m;
    const int top = std::min(dim, 5);
    const PolyClass p = interpolate_class(
        [&](const std::vector<long>& a) { return lvl_psi_m_class(g, n, m, a, top); }, g, n + m,
        static_cast<std::size_t>(n), top);
    std::size_t checked = 0, failed = 0, nonzero = 0;
    CheckItem it;
    it.verdict = Verdict::Certified;
    it.canonical = true;
    for (int s = 0; s <= top; ++s)
        for (const auto& e : homogeneous_exponents(static_cast<std::size_t>(n), s)) {
            ++checked;
            const StrataClass b = b_coefficient(g, e, m);
            nonzero += !b.is_zero();
            const StrataClass c = p.coefficient(e);
            if (b == c)
                continue;
            it.canonical = false;
            const Verdict v = compare_classes(b, c).verdict;
            if (v == Verdict::Nonzero)
                ++failed;
            else if (v == Verdict::Consistent && it.verdict == Verdict::Certified)
                it.verdict = Verdict::Consistent;
        }
    if (failed > 0)
        it.verdict = Verdict::Nonzero;
    it.note = std::to_string(checked) + " monomials (" + std::to_string(nonzero) + " nonzero), " +
              std::to_string(failed) + " mismatches";
    return it;
}

void combinatorics(const Selection& sel, std::vector<CheckTask>& out) {
    const int sigs[][3] = {{0, 5, 2}, {0, 4, 3}, {0, 6, 1}, {0, 7, 0}, {1, 3, 2},
                           {1, 2, 1}, {1, 4, 0}, {2, 2, 2}, {2, 3, 1}, {3, 1, 1}};
    for (const auto& s : sigs)
        if (matches(sel, s[0], s[1], s[2]))
            add_task(out, "c-lvl", gnm(s[0], s[1], s[2]),
                     [g = s[0], n = s[1], m = s[2]] { return c_lvl_signature(g, n, m); });
    for (int g = 0; g <= 1; ++g)
        for (int n = 1; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) {
                if (2 * g - 2 + n + m <= 0 || !matches(sel, g, n, m))
                    continue;
                add_task(out, "b-coefficients", gnm(g, n, m),
                         [=] { return b_generating_function(g, n, m); });
            }
}

// ---------------------------------------------------------------------------
// oracles

void for_each_exponent(int n, int sum, const std::function<void(const std::vector<int>&)>& f) {
    if (n == 0) {
        if (sum == 0)
            f({});
        return;
    }
    for (const auto& e : homogeneous_exponents(static_cast<std::size_t>(n), sum))
        f(e);
}

void oracles(const Selection& sel, std::vector<CheckTask>& out) {
    if (matches(sel, 1, 1, {}))
        add_task(out, "one-point", gnm(1, 1, 0), [] {
            const Rational q(1, 24);
            DecoratedStratum psi = DecoratedStratum::trivial(1, 1);
            psi.legs[0].psi = 1;
            DecoratedStratum lam = DecoratedStratum::trivial(1, 1);
            lam.vertices[0].lambda = true;
            const StrataClass lambda1 = mumford_lambda(1, 1, 1).lambda[1];
            const bool ok = integrate_top(StrataClass::of(psi)) == q &&
                            integrate_top(StrataClass::of(lam)) == q && integrate_top(lambda1) == q &&
                            psi_integral(1, {1}) == q;
            return flag_item(ok);
        });
    for (int g = 0; g <= 3; ++g)
        if (matches(sel, g, {}, {}))
            add_task(out, "string-dilaton", {{"g", std::to_string(g)}}, [g] {
                std::size_t checked = 0, failed = 0;
                for (int n = 1; n + 1 <= 8; ++n) {
                    const int dim = 3 * g - 3 + n;
                    if (2 * g - 2 + n <= 0 || dim < 0)
                        continue;
                    for_each_exponent(n, dim + 1, [&](const std::vector<int>& k) {
                        auto with0 = k;
                        with0.push_back(0);
                        Rational rhs(0);
                        for (int j = 0; j < n; ++j)
                            if (k[j] > 0) {
                                auto t = k;
                                t[j] -= 1;
                                rhs += psi_integral(g, t);
                            }
                        ++checked;
                        failed += psi_integral(g, with0) != rhs;
                    });
                    for_each_exponent(n, dim, [&](const std::vector<int>& k) {
                        auto with1 = k;
                        with1.push_back(1);
                        ++checked;
                        failed += psi_integral(g, with1) != Rational(2 * g - 2 + n) * psi_integral(g, k);
                        if (n <= 4)
                            failed += psi_integral(g, k) != dvv_integral(g, k);
                    });
                }
                return flag_item(failed == 0, std::to_string(checked) + " identities, " +
                                                  std::to_string(failed) + " failed");
            });
    if (matches(sel, 0, {}, {}))
        add_task(out, "genus0-closed-form", {{"g", "0"}}, [] {
            std::size_t checked = 0, failed = 0;
            for (int n = 3; n <= 8; ++n)
                for_each_exponent(n, n - 3, [&](const std::vector<int>& k) {
                    Rational expected = factorial(static_cast<unsigned>(n - 3));
                    for (int x : k)
                        expected /= factorial(static_cast<unsigned>(x));
                    ++checked;
                    failed += psi_integral(0, k) != expected;
                });
            return flag_item(failed == 0, std::to_string(checked) + " integrals, " +
                                              std::to_string(failed) + " failed");
        });
}

// ---------------------------------------------------------------------------
// homogeneity

CheckItem interpolation_item(Family f, int g, int n, int m) {
    CheckItem it;
    it.verdict = Verdict::Consistent;
    try {
        if (f == Family::Omega || f == Family::LvlOmega) {
            const PairingPoly p = interpolate_request_pairings({f, g, n, m, {}, -1});
            std::size_t count = 0;
            for (const auto& [d, c] : p.pairings)
                count += c;
            it.note = std::to_string(count) + " pairing polynomials";
        } else if (f == Family::A0) {
            it.note = std::to_string(a0_polynomial(g, n, -1).size()) + " strata";
        } else {
            it.note = std::to_string(interpolate_request({f, g, n, m, {}, -1}).size()) + " strata";
        }
    } catch (const InconsistentSamples& e) {
        it.verdict = Verdict::Nonzero;
        it.note = e.what();
    } catch (const InexactDivision& e) {
        it.verdict = Verdict::Nonzero;
        it.note = e.what();
    }
    return it;
}

void homogeneity(const Selection& sel, std::vector<CheckTask>& out) {
    for (int g = 0; g <= 1; ++g)
        for (int n = 1; n <= (g == 0 ? 4 : 3); ++n)
            for (int m = 0; m <= 3; ++m) {
                const int dim = 3 * g - 3 + n + m;
                if (2 * g - 2 + n + m <= 0 || dim > 4 || !matches(sel, g, n, m))
                    continue;
                for (Family f : {Family::Omega, Family::LvlOmega, Family::Psi, Family::LvlPsi}) {
                    if ((f == Family::Omega || f == Family::Psi) && m < 2)
                        continue;
                    add_task(out, family_name(f), gnm(g, n, m),
                             [=] { return interpolation_item(f, g, n, m); });
                }
                if (m == 1 && 2 * g - 1 + n > 0)
                    add_task(out, family_name(Family::A1), gnm(g, n, 1),
                             [=] { return interpolation_item(Family::A1, g, n, 1); });
                if (m == 0 && 2 * g - 2 + n > 0)
                    add_task(out, family_name(Family::A0), gnm(g, n, 0),
                             [=] { return interpolation_item(Family::A0, g, n, 0); });
            }
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> catalog{
        {"genus0-vanishing", "Omega^m_{0,n} vanishes above degree m-2", true},
        {"genus0-a-classes", "lvlOmega^1_{0,n} = A^1_{0,n} and lvlOmega^0_{0,n} = A^0_{0,n}", true},
        {"pushforward", "forgetting the last frozen leg", false},
        {"vanishing-experiment", "Omega^2_{g,2} above degree 2g, lvlOmega^1_{g,2} - A^1_{g,2} above 2g-1", false},
        {"omega-properties", "shifts, genus-0 normalisation, pullback, Riemann-Roch bound", false},
        {"hodge-reductions", "vertex classes with one or no incoming flow", false},
        {"relations", "lambda-multiplied relation residuals", false},
        {"combinatorics", "C_lvl by brute force, B coefficients against lvlPsi", false},
        {"oracles", "psi and lambda integrals", true},
        {"homogeneity", "homogeneous polynomial interpolation of assembled classes", false},
    };
    return catalog;
}

const CheckInfo& check_info(const std::string& id) {
    for (const auto& c : check_catalog())
        if (c.id == id)
            return c;
    throw std::invalid_argument("unknown check '" + id + "'");
}

std::vector<CheckTask> check_tasks(const std::string& id, const Selection& sel) {
    check_info(id);
    std::vector<CheckTask> out;
    if (id == "genus0-vanishing")
        genus0_vanishing(sel, out);
    else if (id == "genus0-a-classes")
        genus0_a_classes(sel, out);
    else if (id == "pushforward")
        pushforward(sel, out);
    else if (id == "vanishing-experiment")
        vanishing_experiment(sel, out);
    else if (id == "omega-properties")
        omega_properties(sel, out);
    else if (id == "hodge-reductions")
        hodge_reductions(sel, out);
    else if (id == "relations")
        relations(sel, out);
    else if (id == "combinatorics")
        combinatorics(sel, out);
    else if (id == "oracles")
        oracles(sel, out);
    else
        homogeneity(sel, out);
    return out;
}

bool item_passes(const CheckInfo& info, const CheckItem& item) {
    if (item.verdict == Verdict::Nonzero)
        return false;
    return !info.needs_certified || item.verdict == Verdict::Certified;
}

std::string class_hash(const StrataClass& x) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : x.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

long brute_force_c_lvl(const StableRootedTree& t, const std::vector<int>& p) {
    const int nv = static_cast<int>(t.num_vertices());
    std::vector<int> ell(nv, 0);
    long signed_count = 0;
    while (true) {
        bool ok = ell[0] == 0;
        for (int v = 1; v < nv && ok; ++v)
            ok = ell[v] > ell[t.vertex(v).parent];
        const int top = *std::max_element(ell.begin(), ell.end());
        for (int i = 0; i <= top && ok; ++i)
            ok = std::find(ell.begin(), ell.end(), i) != ell.end();
        for (int i = 0; i < top && ok; ++i) {
            int count = 0, deg = 0, twice_genus = 0;
            for (int v = 0; v < nv; ++v)
                if (ell[v] <= i) {
                    ++count;
                    deg += p[v];
                    twice_genus += 2 * t.vertex(v).genus;
                }
            ok = count - 1 + deg <= t.num_frozen() - 2 + twice_genus;
        }
        if (ok)
            signed_count += top % 2 ? -1 : 1;
        int pos = 0;
        while (pos < nv && ++ell[pos] == nv)
            ell[pos++] = 0;
        if (pos == nv)
            break;
    }
    return signed_count;
}

namespace {

Rational odd_double_factorial(int m) {  // (2m+1)!!
    Rational r(1);
    for (int j = 2 * m + 1; j > 1; j -= 2)
        r *= Rational(j);
    return r;
}

}  // namespace

Rational dvv_integral(int g, const std::vector<int>& k) {
    const int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        return Rational(0);
    if (std::accumulate(k.begin(), k.end(), 0) != 3 * g - 3 + n)
        return Rational(0);
    if (std::any_of(k.begin(), k.end(), [](int x) { return x < 0; }))
        return Rational(0);
    auto it = std::find_if(k.begin(), k.end(), [](int x) { return x >= 1; });
    if (it == k.end())
        return Rational(g == 0 && n == 3 ? 1 : 0);
    if (g == 1 && n == 1)
        return Rational(1, 24);
    const int kk = *it - 1;
    std::vector<int> rest;
    for (auto j = k.begin(); j != k.end(); ++j)
        if (j != it)
            rest.push_back(*j);
    Rational sum(0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        auto t = rest;
        t[j] = kk + rest[j];
        sum += odd_double_factorial(kk + rest[j]) / odd_double_factorial(rest[j] - 1) * dvv_integral(g, t);
    }
    for (int r = 0; r <= kk - 1; ++r) {
        const int u = kk - 1 - r;
        const Rational w = odd_double_factorial(r) * odd_double_factorial(u) / Rational(2);
        auto t = rest;
        t.push_back(r);
        t.push_back(u);
        Rational inner = dvv_integral(g - 1, t);
        for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
            std::vector<int> a{r}, b{u};
            for (std::size_t j = 0; j < rest.size(); ++j)
                (mask >> j & 1u ? a : b).push_back(rest[j]);
            for (int g1 = 0; g1 <= g; ++g1)
                inner += dvv_integral(g1, a) * dvv_integral(g - g1, b);
        }
        sum += w * inner;
    }
    return sum / odd_double_factorial(kk + 1);
}

}  // namespace ctaut
