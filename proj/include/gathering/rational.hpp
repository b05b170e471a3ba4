#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gathering {

// Exact arbitrary-precision rational. All arithmetic in this project runs on
// these; there is no floating point anywhere.
using Rational = mpq_class;

// num/den with den > 0, reduced to lowest terms.
Rational make_rational(long num, long den);

// Accepts "num/den" or a bare integer "num". Throws std::invalid_argument on
// anything else (including den = 0).
Rational parse_rational(std::string_view text);

// Always "num/den", lowest terms, den > 0 ("0/1" for zero). GMP's own
// formatter drops the denominator for integers, which would break the
// serialization contract.
std::string rational_str(const Rational& q);

// Largest integer <= q, as a Rational.
Rational rational_floor(const Rational& q);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

}  // namespace gathering
