#include "ctaut/rational.hpp"

#include <limits>
#include <stdexcept>

namespace ctaut {

Rational::Rational(const std::string& text) {
    if (q_.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: " + text);
    if (q_.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q_.canonicalize();
}

long Rational::to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
        throw std::domain_error("rational is not a machine integer: " + str());
    return q_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

Rational pow(const Rational& base, int exponent) {
    if (exponent >= 0)
        return pow(base, static_cast<unsigned>(exponent));
    return Rational(1) / pow(base, static_cast<unsigned>(-exponent));
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

}  // namespace ctaut
