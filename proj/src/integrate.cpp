#include "ctaut/integrate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ctaut {

namespace {

std::mutex psi_mutex;
std::map<std::pair<int, std::vector<int>>, Rational> psi_memo;

// (2m+1)!! for m >= -1
Rational odd_double_factorial(int m) {
    Rational r(1);
    for (int j = 2 * m + 1; j > 1; j -= 2)
        r *= Rational(j);
    return r;
}

Rational psi_rec(int g, std::vector<int> k);

Rational psi_checked(int g, std::vector<int> k) {
    const int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        return Rational(0);
    for (int x : k)
        if (x < 0)
            return Rational(0);
    if (std::accumulate(k.begin(), k.end(), 0) != 3 * g - 3 + n)
        return Rational(0);
    std::sort(k.begin(), k.end());
    return psi_rec(g, std::move(k));
}

Rational psi_rec(int g, std::vector<int> k) {
    const int n = static_cast<int>(k.size());
    if (g == 0 && n == 3)
        return Rational(1);
    if (g == 1 && n == 1)
        return Rational(1, 24);
    auto key = std::make_pair(g, k);
    {
        std::lock_guard lock(psi_mutex);
        auto it = psi_memo.find(key);
        if (it != psi_memo.end())
            return it->second;
    }
    Rational result(0);
    if (k.front() == 0) {
        // string equation
        std::vector<int> rest(k.begin() + 1, k.end());
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (rest[j] > 0) {
                auto t = rest;
                t[j] -= 1;
                result += psi_checked(g, t);
            }
    } else if (k.front() == 1) {
        // dilaton equation
        std::vector<int> rest(k.begin() + 1, k.end());
        result = Rational(2 * g - 2 + n - 1) * psi_checked(g, rest);
    } else {
        // Virasoro / DVV recursion on the largest exponent.
        const int top = k.back() - 1;  // k+1 = k.back()
        std::vector<int> s(k.begin(), k.end() - 1);
        Rational sum(0);
        for (std::size_t j = 0; j < s.size(); ++j) {
            auto t = s;
            const int d = t[j];
            t[j] = top + d;
            sum += odd_double_factorial(top + d) / odd_double_factorial(d - 1) * psi_checked(g, t);
        }
        Rational half(1, 2);
        for (int r = 0; r <= top - 1; ++r) {
            const int q = top - 1 - r;
            Rational w = odd_double_factorial(r) * odd_double_factorial(q) * half;
            auto t = s;
            t.push_back(r);
            t.push_back(q);
            Rational inner = psi_checked(g - 1, t);
            const std::size_t m = s.size();
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{r}, right{q};
                for (std::size_t j = 0; j < m; ++j)
                    (mask >> j & 1u ? left : right).push_back(s[j]);
                for (int g1 = 0; g1 <= g; ++g1) {
                    Rational a = psi_checked(g1, left);
                    if (a.is_zero())
                        continue;
                    inner += a * psi_checked(g - g1, right);
                }
            }
            sum += w * inner;
        }
        result = sum / odd_double_factorial(top + 1);
    }
    std::lock_guard lock(psi_mutex);
    psi_memo.emplace(std::move(key), result);
    return result;
}

// Coefficients of (t/2)/sin(t/2) in powers of t^2.
Rational lambda_top_coefficient(int g) {
    static std::mutex m;
    static std::vector<Rational> b{Rational(1)};
    std::lock_guard lock(m);
    while (static_cast<int>(b.size()) <= g) {
        const int j = static_cast<int>(b.size());
        // sin(x)/x with x = t/2 has t^{2i} coefficient (-1)^i / (4^i (2i+1)!)
        Rational s(0);
        for (int i = 1; i <= j; ++i) {
            Rational c = Rational(i % 2 ? -1 : 1) / (pow(Rational(4), static_cast<unsigned>(i)) *
                                                     factorial(static_cast<unsigned>(2 * i + 1)));
            s += c * b[j - i];
        }
        b.push_back(-s);
    }
    return b[g];
}

}  // namespace

Rational psi_integral(int g, std::vector<int> k) {
    const int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        throw DimensionMismatch("unstable signature");
    for (int x : k)
        if (x < 0)
            throw DimensionMismatch("negative psi exponent");
    if (std::accumulate(k.begin(), k.end(), 0) != 3 * g - 3 + n)
        throw DimensionMismatch("psi exponents do not sum to the dimension");
    return psi_checked(g, std::move(k));
}

Rational lambda_psi_integral(int g, std::vector<int> k) {
    const int n = static_cast<int>(k.size());
    if (g < 1 || 2 * g - 2 + n <= 0)
        throw DimensionMismatch("lambda_g integral needs g >= 1 and a stable signature");
    const int total = std::accumulate(k.begin(), k.end(), 0);
    if (total != 2 * g - 3 + n)
        throw DimensionMismatch("degree does not match the dimension");
    Rational multinomial = factorial(static_cast<unsigned>(total));
    for (int x : k) {
        if (x < 0)
            throw DimensionMismatch("negative psi exponent");
        multinomial /= factorial(static_cast<unsigned>(x));
    }
    return multinomial * lambda_top_coefficient(g);
}

Rational vertex_integral(int g, std::vector<int> psi, std::vector<int> kappa, bool lambda) {
    const int n = static_cast<int>(psi.size());
    if (2 * g - 2 + n <= 0)
        throw DimensionMismatch("unstable vertex");
    int deg = std::accumulate(psi.begin(), psi.end(), 0) +
              std::accumulate(kappa.begin(), kappa.end(), 0) + (lambda ? g : 0);
    if (deg != 3 * g - 3 + n)
        return Rational(0);
    if (lambda && g == 0)
        lambda = false;
    if (kappa.empty()) {
        if (lambda)
            return lambda_psi_integral(g, std::move(psi));
        return psi_integral(g, std::move(psi));
    }
    // kappa_{b} kappa_{B'} = pi_*(psi_{n+1}^{b+1} prod_{a in B'} (kappa_a - psi_{n+1}^a))
    std::sort(kappa.begin(), kappa.end());
    const int b = kappa.front();
    std::vector<int> rest(kappa.begin() + 1, kappa.end());
    Rational sum(0);
    const std::size_t r = rest.size();
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        int e = b + 1;
        std::vector<int> keep;
        int sign = 1;
        for (std::size_t j = 0; j < r; ++j) {
            if (mask >> j & 1u) {
                e += rest[j];
                sign = -sign;
            } else {
                keep.push_back(rest[j]);
            }
        }
        auto p = psi;
        p.push_back(e);
        sum += Rational(sign) * vertex_integral(g, std::move(p), std::move(keep), lambda);
    }
    return sum;
}

Rational integrate_stratum(const DecoratedStratum& s) {
    const int nv = static_cast<int>(s.vertices.size());
    std::vector<std::vector<int>> psi(nv);
    for (const auto& l : s.legs)
        psi[l.vertex].push_back(l.psi);
    for (const auto& e : s.edges) {
        psi[e.a.vertex].push_back(e.a.psi);
        psi[e.b.vertex].push_back(e.b.psi);
    }
    Rational r(1);
    for (int v = 0; v < nv && !r.is_zero(); ++v) {
        const auto& x = s.vertices[v];
        r *= vertex_integral(x.genus, psi[v], x.kappa, x.lambda);
    }
    return r;
}

Rational integrate_class(const StrataClass& x) {
    const int dim = 3 * x.genus() - 3 + x.num_points();
    Rational total(0);
    for (const auto& [k, t] : x.terms()) {
        if (t.stratum.degree() != dim)
            throw DimensionMismatch("class is not of top degree");
        total += t.coef * integrate_stratum(t.stratum);
    }
    return total;
}

Rational integrate_top(const StrataClass& x) {
    const int dim = 3 * x.genus() - 3 + x.num_points();
    return integrate_class(x.degree_part(dim));
}

std::vector<Pairing> pairing_profile(const StrataClass& x, int d) {
    const int dim = 3 * x.genus() - 3 + x.num_points();
    std::vector<Pairing> out;
    if (d < 0 || d > dim)
        return out;
    const StrataClass xd = x.degree_part(d);
    for (const auto& y : psi_monomial_strata(x.genus(), x.num_points(), dim - d)) {
        Rational v(0);
        if (!xd.is_zero())
            v = integrate_class(multiply_stratum(xd, y));
        out.push_back({canonical_form(y).first, y, v});
    }
    return out;
}

PairingTable::PairingTable(int g, int n, int d) : g_(g), n_(n), d_(d) {
    const int dim = 3 * g - 3 + n;
    if (d < 0 || d > dim)
        return;
    for (auto& y : psi_monomial_strata(g, n, dim - d)) {
        keys_.push_back(canonical_form(y).first);
        strata_.push_back(std::move(y));
    }
}

std::vector<Rational> PairingTable::pair(const StrataClass& x) {
    if (x.genus() != g_ || x.num_points() != n_)
        throw ArityMismatch("pairing table is for another space");
    std::vector<Rational> out(keys_.size(), Rational(0));
    for (const auto& [key, t] : x.terms()) {
        if (t.stratum.degree() != d_)
            continue;
        auto row = rows_.find(key);
        if (row == rows_.end()) {
            std::vector<std::pair<std::size_t, Rational>> r;
            const StrataClass unit = StrataClass::of(t.stratum);
            for (std::size_t i = 0; i < strata_.size(); ++i) {
                Rational v = integrate_class(multiply_stratum(unit, strata_[i]));
                if (!v.is_zero())
                    r.emplace_back(i, std::move(v));
            }
            row = rows_.emplace(key, std::move(r)).first;
        }
        for (const auto& [i, v] : row->second)
            out[i] += t.coef * v;
    }
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified:
            return "Certified";
        case Verdict::Consistent:
            return "Consistent";
        case Verdict::Nonzero:
            return "Nonzero";
    }
    return "?";
}

VanishResult vanish_check(const StrataClass& x, int d_min) {
    VanishResult r;
    r.verdict = x.genus() == 0 ? Verdict::Certified : Verdict::Consistent;
    const int dim = 3 * x.genus() - 3 + x.num_points();
    for (int d = std::max(d_min, 0); d <= dim; ++d) {
        for (const auto& p : pairing_profile(x, d)) {
            ++r.pairings;
            if (!p.value.is_zero() && r.verdict != Verdict::Nonzero) {
                r.verdict = Verdict::Nonzero;
                r.witness_degree = d;
                r.witness = p.key;
                r.value = p.value;
            }
        }
    }
    return r;
}

}  // namespace ctaut
