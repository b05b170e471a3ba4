#include "gathering/rational.hpp"

#include <stdexcept>

namespace gathering {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    const auto bad = [&] {
        return std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (num.empty() || den.empty()) throw bad();
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) throw bad();
    if (sgn(d) == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(n);
    q /= Rational(d);
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_floor(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(f);
}

}  // namespace gathering
