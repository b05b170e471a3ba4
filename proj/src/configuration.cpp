#include "gathering/configuration.hpp"

#include "gathering/rng.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace gathering {

namespace {

// Expanded points and the circular gap vector between consecutive ones.
// Rotating the gap vector to start at expanded index i yields exactly the
// angle sequence of the i-th (point, occurrence) pair. Only valid when at
// least two distinct points exist; the all-coincident case is special-cased
// by its callers.
struct Layout {
    std::vector<Angle> pts;
    std::vector<Rational> gaps;
};

Layout layout_of(const Configuration& S) {
    Layout l;
    l.pts = S.expanded();
    const int n = static_cast<int>(l.pts.size());
    l.gaps.reserve(n);
    for (int i = 0; i < n; ++i) l.gaps.push_back(cw(l.pts[i], l.pts[(i + 1) % n]).turns());
    return l;
}

std::strong_ordering rotation_cmp(const std::vector<Rational>& g, int i, int j) {
    const int n = static_cast<int>(g.size());
    for (int k = 0; k < n; ++k) {
        const auto c = compare(g[(i + k) % n], g[(j + k) % n]);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

struct RotationScan {
    int best;       // index of the lexicographically smallest rotation
    int min_count;  // how many rotations attain it (= rotation group order)
};

RotationScan scan_rotations(const std::vector<Rational>& g) {
    const int n = static_cast<int>(g.size());
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (rotation_cmp(g, i, best) == std::strong_ordering::less) best = i;
    int count = 0;
    for (int i = 0; i < n; ++i)
        if (rotation_cmp(g, i, best) == std::strong_ordering::equal) ++count;
    return {best, count};
}

}  // namespace

Configuration Configuration::from_points(const std::vector<Angle>& points) {
    Configuration S;
    for (const Angle& p : points) S.add(p);
    return S;
}

void Configuration::add(const Angle& p, int count) {
    if (count <= 0) throw std::invalid_argument("configuration: count must be positive");
    points_[p] += count;
    n_ += count;
}

bool Configuration::is_set() const {
    return n_ == distinct_count();
}

int Configuration::count(const Angle& p) const {
    const auto it = points_.find(p);
    return it == points_.end() ? 0 : it->second;
}

std::vector<Angle> Configuration::expanded() const {
    std::vector<Angle> out;
    out.reserve(n_);
    for (const auto& [p, c] : points_)
        for (int i = 0; i < c; ++i) out.push_back(p);
    return out;
}

Configuration Configuration::rotated(const Angle& r) const {
    Configuration S;
    for (const auto& [p, c] : points_) S.add(p + r, c);
    return S;
}

AngleSequence angle_sequence(const Configuration& S, const Angle& p, int occurrence) {
    const int c = S.count(p);
    if (c == 0) throw std::invalid_argument("angle sequence: point unoccupied");
    if (occurrence < 1 || occurrence > c)
        throw std::invalid_argument("angle sequence: occurrence out of range");

    const int n = S.n();
    if (S.distinct_count() == 1) {
        // Every robot coincides: by convention the sequence is all zeros with
        // one full turn at the occurrence's own position.
        AngleSequence w(n, Rational(0));
        w[occurrence - 1] = Rational(1);
        return w;
    }

    const Layout l = layout_of(S);
    int start = 0;
    while (!(l.pts[start] == p)) ++start;
    start += occurrence - 1;

    AngleSequence w;
    w.reserve(n);
    for (int k = 0; k < n; ++k) w.push_back(l.gaps[(start + k) % n]);
    return w;
}

AngleSequence truncate_at(const AngleSequence& W, const Configuration& S, const Angle& p,
                          const Angle& q) {
    if (!S.contains(p)) throw std::invalid_argument("truncate: point unoccupied");
    if (static_cast<int>(W.size()) != S.n())
        throw std::invalid_argument("truncate: sequence length does not match configuration");
    if (q == p) throw std::invalid_argument("truncate: truncation point equals start");

    Angle pj = p;
    for (std::size_t j = 0; j < W.size(); ++j) {
        const Rational gap = cw(pj, q).turns();
        if (sgn(gap) > 0 && gap <= W[j]) {
            AngleSequence z(W.begin(), W.begin() + j + 1);
            z[j] = gap;
            return z;
        }
        pj = pj + Angle(W[j]);
    }
    throw std::logic_error("truncate: no cut index found");
}

std::strong_ordering lex_compare(const AngleSequence& a, const AngleSequence& b) {
    static const Rational zero(0);
    const std::size_t m = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < m; ++k) {
        const Rational& av = k < a.size() ? a[k] : zero;
        const Rational& bv = k < b.size() ? b[k] : zero;
        const auto c = compare(av, bv);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

bool is_rotationally_symmetric(const Configuration& S) {
    if (S.empty()) throw std::invalid_argument("symmetry: empty configuration");
    // A single occupied location (any multiplicity) is moved by every
    // nonidentity rotation.
    if (S.distinct_count() == 1) return false;
    return scan_rotations(layout_of(S).gaps).min_count >= 2;
}

int rotational_fold(const Configuration& S) {
    if (S.empty()) throw std::invalid_argument("symmetry: empty configuration");
    if (S.distinct_count() == 1) return 1;
    return scan_rotations(layout_of(S).gaps).min_count;
}

Angle head(const Configuration& S) {
    if (S.empty()) throw std::invalid_argument("head: empty configuration");
    if (S.distinct_count() == 1) return S.points().begin()->first;
    const Layout l = layout_of(S);
    const RotationScan r = scan_rotations(l.gaps);
    if (r.min_count >= 2) throw std::invalid_argument("head undefined on symmetric configuration");
    return l.pts[r.best];
}

bool exactly_two_missing_antipodals(const Configuration& S) {
    if (!S.is_set())
        throw std::invalid_argument("antipodal pairing: multiplicity points not allowed");
    int missing = 0;
    for (const auto& [p, c] : S.points())
        if (!S.contains(antipodal(p))) ++missing;
    return missing == 2;
}

VisibilityGraph::VisibilityGraph(const Configuration& S, const Visibility& vis)
    : n_(S.n()), adj_(static_cast<std::size_t>(S.n()) * S.n(), 0) {
    const std::vector<Angle> pts = S.expanded();
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (vis.sees(pts[i], pts[j]))
                adj_[i * n_ + j] = adj_[j * n_ + i] = 1;
}

bool VisibilityGraph::edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::out_of_range("visibility graph: index out of range");
    return adj_[i * n_ + j] != 0;
}

bool VisibilityGraph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n_; ++w)
            if (!seen[w] && adj_[v * n_ + w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == n_;
}

VisibilityGraph visibility_graph(const Configuration& S, const Angle& theta) {
    return VisibilityGraph(S, Visibility::limited(theta));
}

Configuration random_asymmetric_config(int n, std::uint64_t seed, long denominator_bound) {
    if (n < 1) throw std::invalid_argument("random config: n must be positive");
    if (denominator_bound < 4L * n)
        throw std::invalid_argument("random config: bound too small to fit n distinct angles");

    Rng rng(seed);
    for (;;) {
        std::set<long> numerators;
        while (static_cast<int>(numerators.size()) < n)
            numerators.insert(static_cast<long>(rng.below(denominator_bound)));
        Configuration S;
        for (long k : numerators) S.add(Angle::from(k, denominator_bound));
        if (!is_rotationally_symmetric(S)) return S;
    }
}

}  // namespace gathering
