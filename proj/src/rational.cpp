#include "jetframe/rational.hpp"

#include <stdexcept>

namespace jetframe {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    try {
        Integer num(std::string(text.substr(0, slash)), 10);
        Integer den(1);
        if (slash != std::string_view::npos) den = Integer(std::string(text.substr(slash + 1)), 10);
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + std::string(text));
    }
}

Rational factorial(unsigned k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return Rational(r);
}

long falling_factorial(long x, unsigned k) {
    long r = 1;
    for (unsigned i = 0; i < k; ++i) r *= (x - static_cast<long>(i));
    return r;
}

Rational binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

}  // namespace jetframe
