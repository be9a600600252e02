#include "ctaut/exactmath.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace ctaut {

namespace {

std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_numbers{Rational(1)};

// Coefficients of B_m(x) in increasing powers of x, memoized per m.
std::vector<std::vector<Rational>> bernoulli_polys;

void extend_numbers(unsigned m) {
    // sum_{k=0}^{j} C(j+1, k) B_k = 0 for j >= 1
    while (bernoulli_numbers.size() <= m) {
        unsigned j = static_cast<unsigned>(bernoulli_numbers.size());
        Rational s(0);
        for (unsigned k = 0; k < j; ++k)
            s += binomial(j + 1, k) * bernoulli_numbers[k];
        bernoulli_numbers.push_back(-s / Rational(static_cast<long>(j) + 1));
    }
}

const std::vector<Rational>& poly_coefficients(unsigned m) {
    extend_numbers(m);
    while (bernoulli_polys.size() <= m) {
        unsigned j = static_cast<unsigned>(bernoulli_polys.size());
        std::vector<Rational> c(j + 1);
        // B_j(x) = sum_k C(j,k) B_k x^{j-k}
        for (unsigned k = 0; k <= j; ++k)
            c[j - k] = binomial(j, k) * bernoulli_numbers[k];
        bernoulli_polys.push_back(std::move(c));
    }
    return bernoulli_polys[m];
}

}  // namespace

Rational bernoulli_number(unsigned m) {
    std::lock_guard lock(bernoulli_mutex);
    extend_numbers(m);
    return bernoulli_numbers[m];
}

Rational bernoulli_value(unsigned m, const Rational& q) {
    std::vector<Rational> c;
    {
        std::lock_guard lock(bernoulli_mutex);
        c = poly_coefficients(m);
    }
    Rational v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * q + *it;
    return v;
}

Rational pochhammer(const Rational& s, unsigned t) {
    Rational p(1);
    for (unsigned i = 0; i < t; ++i)
        p *= s - Rational(static_cast<long>(i));
    return p;
}

HomogeneousInterpolator::HomogeneousInterpolator(const std::vector<IntPoint>& points, int k,
                                                 std::size_t n)
    : k_(k), n_(n) {
    const std::size_t np = points.size();
    if (k < 0) {
        for (std::size_t i = 0; i < np; ++i) {
            std::vector<Rational> e(np, Rational(0));
            e[i] = Rational(1);
            check_rows_.push_back(std::move(e));
        }
        return;
    }
    monomials_ = homogeneous_exponents(n, k);
    const std::size_t cols = monomials_.size();

    // [A | I], one row per point; row reduction of A records the operations in I.
    std::vector<std::vector<Rational>> rows;
    rows.reserve(np);
    for (std::size_t p = 0; p < np; ++p) {
        if (points[p].size() != n)
            throw std::invalid_argument("sample arity mismatch");
        std::vector<Rational> row(cols + np, Rational(0));
        for (std::size_t j = 0; j < cols; ++j) {
            Rational m(1);
            for (std::size_t i = 0; i < n; ++i)
                if (monomials_[j][i] != 0)
                    m *= pow(Rational(points[p][i]), static_cast<unsigned>(monomials_[j][i]));
            row[j] = m;
        }
        row[cols + p] = Rational(1);
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < np; ++c) {
        std::size_t p = r;
        while (p < np && rows[p][c].is_zero())
            ++p;
        if (p == np)
            continue;
        std::swap(rows[p], rows[r]);
        const Rational inv = Rational(1) / rows[r][c];
        for (std::size_t j = c; j < rows[r].size(); ++j)
            rows[r][j] *= inv;
        for (std::size_t i = 0; i < np; ++i) {
            if (i == r || rows[i][c].is_zero())
                continue;
            const Rational f = rows[i][c];
            for (std::size_t j = c; j < rows[i].size(); ++j)
                rows[i][j] -= f * rows[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    if (pivot_cols.size() != cols)
        throw InsufficientSamples("interpolation system is underdetermined");
    // pivots are the columns in order, so row i solves for monomial i
    for (std::size_t i = 0; i < np; ++i) {
        std::vector<Rational> w(rows[i].begin() + static_cast<std::ptrdiff_t>(cols), rows[i].end());
        (i < r ? solve_rows_ : check_rows_).push_back(std::move(w));
    }
}

MultiPoly HomogeneousInterpolator::solve(const std::vector<Rational>& values) const {
    MultiPoly result(n_);
    if (std::all_of(values.begin(), values.end(), [](const Rational& v) { return v.is_zero(); }))
        return result;
    auto dot = [&](const std::vector<Rational>& w) {
        Rational s(0);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!w[i].is_zero() && !values[i].is_zero())
                s += w[i] * values[i];
        return s;
    };
    for (const auto& w : check_rows_)
        if (!dot(w).is_zero()) {
            std::ostringstream os;
            os << "samples are not values of a homogeneous polynomial of degree " << k_;
            throw InconsistentSamples(os.str());
        }
    for (std::size_t i = 0; i < solve_rows_.size(); ++i)
        result.add_term(monomials_[i], dot(solve_rows_[i]));
    return result;
}

MultiPoly homogeneous_interpolate(const std::vector<Sample>& samples, int k, std::size_t n) {
    std::vector<IntPoint> points;
    std::vector<Rational> values;
    for (const auto& [p, v] : samples) {
        points.push_back(p);
        values.push_back(v);
    }
    return HomogeneousInterpolator(points, k, n).solve(values);
}

std::vector<IntPoint> interpolation_grid(std::size_t n, int k) {
    std::vector<IntPoint> grid;
    if (n == 0) {
        grid.emplace_back();
        return grid;
    }
    int kk = std::max(k, 0);
    for (int d = 0; d <= kk; ++d)
        for (const auto& t : homogeneous_exponents(n - 1, d)) {
            IntPoint p(n, 1);
            for (std::size_t i = 1; i < n; ++i)
                p[i] = 1 + t[i - 1];
            grid.push_back(std::move(p));
        }
    const std::size_t base = grid.size();
    const std::size_t extra = std::min<std::size_t>(base, 3);
    for (std::size_t i = 0; i < extra; ++i) {
        IntPoint p = grid[base - 1 - i];
        for (auto& x : p)
            x *= 2;
        grid.push_back(std::move(p));
    }
    return grid;
}

}  // namespace ctaut
