#pragma once

// Brute-force reference implementations for cross-checking the library: the
// same questions answered by direct enumeration, on independent code paths.

#include "gathering/configuration.hpp"
#include "gathering/geometry.hpp"
#include "gathering/impossibility.hpp"
#include "gathering/rational.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using namespace gathering;

// A nonidentity rotation preserving S, if one exists. Any such rotation must
// map the first occupied point onto an occupied point, so trying those
// candidates is exhaustive.
inline std::optional<Angle> symmetry_rotation(const Configuration& S) {
    if (S.empty()) return std::nullopt;
    const Angle& first = S.points().begin()->first;
    for (const auto& [p, c] : S.points()) {
        const Angle r = cw(first, p);
        if (r.is_zero()) continue;
        if (S.rotated(r) == S) return r;
    }
    return std::nullopt;
}

inline bool symmetric(const Configuration& S) { return symmetry_rotation(S).has_value(); }

inline int fold(const Configuration& S) {
    const Angle& first = S.points().begin()->first;
    int k = 0;
    for (const auto& [p, c] : S.points())
        if (S.rotated(cw(first, p)) == S) ++k;
    return k;
}

// Clockwise gap walk around the expanded (sorted, coincident-repeated) point
// list, starting at index `start`. Matches per-occurrence angle sequences for
// every configuration with at least two distinct points.
inline std::vector<Rational> walk_sequence(const std::vector<Angle>& expanded,
                                           std::size_t start) {
    const std::size_t n = expanded.size();
    std::vector<Rational> w;
    w.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Angle& a = expanded[(start + j) % n];
        const Angle& b = expanded[(start + j + 1) % n];
        w.push_back(cw(a, b).turns());
    }
    return w;
}

inline int lex_cmp(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

// Position whose walk sequence is the strict lexicographic minimum.
inline Angle head_brute(const Configuration& S) {
    const std::vector<Angle> pts = S.expanded();
    if (pts.empty()) throw std::runtime_error("oracle: empty configuration");
    if (S.distinct_count() == 1) return pts.front();
    std::size_t best = 0;
    bool unique = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const int c = lex_cmp(walk_sequence(pts, i), walk_sequence(pts, best));
        if (c < 0) {
            best = i;
            unique = true;
        } else if (c == 0) {
            unique = false;
        }
    }
    if (!unique) throw std::runtime_error("oracle: no unique head");
    return pts[best];
}

// Arithmetic characterization of compatibility for the regular n-gon: the
// semicircle condition holds exactly for n = 2 mod 4, distances are the
// multiples of 1/n, and the closest pair sits at 1/n.
inline bool compatible_arith(int n, const Angle& theta) {
    if (n % 4 != 2) return false;
    const Rational t = theta.turns();
    for (int a = 0; a <= n; ++a)
        if (make_rational(a, n) == t) return false;
    return make_rational(1, n) < t;
}

// Every grid point that avoids all obstacle sets, by full enumeration.
inline std::set<GridPoint> derand_solutions(const DerandGrid& grid, const ObstacleSets& X) {
    std::vector<std::set<GridPoint>> obstacles;
    for (const auto& Xi : X) obstacles.emplace_back(Xi.begin(), Xi.end());

    std::set<GridPoint> out;
    const std::size_t n = grid.Y.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        GridPoint p;
        p.reserve(n);
        for (std::size_t i = 0; i < n; ++i) p.push_back(grid.Y[i][idx[i]]);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (obstacles[i].count(p)) ok = false;
        if (ok) out.insert(p);

        std::size_t axis = 0;
        while (axis < n && ++idx[axis] == grid.Y[axis].size()) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == n) break;
    }
    return out;
}

}  // namespace oracle
