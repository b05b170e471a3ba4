#pragma once

#include "gathering/rational.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace gathering {

// Deterministic RNG used everywhere randomness is needed. mt19937_64's raw
// output sequence is pinned by the C++ standard, and the bounded draw below
// avoids std::uniform_int_distribution, whose mapping is implementation
// defined -- identical seeds must yield identical runs on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("rng: zero bound");
        std::uint64_t x, r;
        do {
            x = gen_();
            r = x % bound;
        } while (x - r > std::uint64_t(0) - bound);
        return r;
    }

    // Bernoulli draw with exact rational probability p in [0, 1].
    bool coin(const Rational& p) {
        if (sgn(p) < 0 || p > 1) throw std::invalid_argument("rng: probability outside [0, 1]");
        if (!p.get_den().fits_ulong_p() || !p.get_num().fits_ulong_p())
            throw std::invalid_argument("rng: probability terms exceed 64 bits");
        const std::uint64_t den = p.get_den().get_ui();
        const std::uint64_t num = p.get_num().get_ui();
        if (num == den) return true;
        return below(den) < num;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace gathering
