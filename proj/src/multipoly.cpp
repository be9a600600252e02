#include "ctaut/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ctaut {

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
    MultiPoly p(arity);
    p.add_term(Exponent(arity, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
    Exponent e(arity, 0);
    e.at(index) = 1;
    MultiPoly p(arity);
    p.add_term(e, Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != arity_)
        throw std::invalid_argument("exponent arity mismatch");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int MultiPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

bool MultiPoly::is_homogeneous(int k) const {
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) != k)
            return false;
    return true;
}

MultiPoly MultiPoly::homogeneous_part(int k) const {
    MultiPoly p(arity_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == k)
            p.terms_.emplace(e, c);
    return p;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
    if (point.size() != arity_)
        throw std::invalid_argument("evaluation point arity mismatch");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < arity_; ++i)
            if (e[i] != 0)
                t *= pow(point[i], static_cast<unsigned>(e[i]));
        sum += t;
    }
    return sum;
}

Rational MultiPoly::evaluate(std::span<const long> point) const {
    std::vector<Rational> q(point.begin(), point.end());
    return evaluate(std::span<const Rational>(q));
}

void MultiPoly::check_arity(const MultiPoly& o) const {
    if (arity_ != o.arity_)
        throw std::invalid_argument("polynomial arity mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly r(a.arity_);
    Exponent e(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

// Multivariate division with respect to the lexicographic order of std::map (largest key last).
MultiPoly MultiPoly::divide_exact(const MultiPoly& divisor) const {
    check_arity(divisor);
    if (divisor.is_zero())
        throw std::domain_error("division by the zero polynomial");
    const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
    MultiPoly rem = *this;
    MultiPoly quot(arity_);
    while (!rem.is_zero()) {
        const auto& [re, rc] = *rem.terms_.rbegin();
        Exponent qe(arity_);
        for (std::size_t i = 0; i < arity_; ++i) {
            qe[i] = re[i] - lead_e[i];
            if (qe[i] < 0)
                throw std::domain_error("inexact polynomial division");
        }
        MultiPoly step = MultiPoly::monomial(qe, rc / lead_c);
        quot += step;
        rem -= step * divisor;
    }
    return quot;
}

std::string MultiPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first)
            os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0)
            os << "-";
        first = false;
        Rational ac = c.sign() < 0 ? -c : c;
        bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        if (constant || ac != Rational(1))
            os << ac.str();
        bool need_star = !constant && ac != Rational(1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            os << (need_star ? "*" : "") << "a" << (i + 1);
            if (e[i] > 1)
                os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

static void exponents_rec(std::size_t n, int k, std::size_t pos, Exponent& cur,
                          std::vector<Exponent>& out) {
    if (pos + 1 == n) {
        cur[pos] = k;
        out.push_back(cur);
        return;
    }
    for (int v = k; v >= 0; --v) {
        cur[pos] = v;
        exponents_rec(n, k - v, pos + 1, cur, out);
    }
}

std::vector<Exponent> homogeneous_exponents(std::size_t n, int k) {
    std::vector<Exponent> out;
    if (k < 0)
        return out;
    if (n == 0) {
        if (k == 0)
            out.emplace_back();
        return out;
    }
    Exponent cur(n, 0);
    exponents_rec(n, k, 0, cur, out);
    return out;
}

}  // namespace ctaut
