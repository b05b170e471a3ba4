#pragma once

#include "gathering/geometry.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace gathering {

// Multiset of points on the circle: the positions of a robot swarm at one
// instant, without identities. Points are kept in ascending (= clockwise from
// the reference direction) order with their multiplicities.
class Configuration {
public:
    Configuration() = default;
    static Configuration from_points(const std::vector<Angle>& points);

    void add(const Angle& p, int count = 1);

    int n() const { return n_; }                                  // total robots
    int distinct_count() const { return static_cast<int>(points_.size()); }
    bool empty() const { return n_ == 0; }
    bool is_set() const;                                          // all counts 1
    bool contains(const Angle& p) const { return points_.count(p) != 0; }
    int count(const Angle& p) const;
    const std::map<Angle, int>& points() const { return points_; }

    // All n points in ascending order, coincident ones repeated.
    std::vector<Angle> expanded() const;

    // Every point moved clockwise by r; multiplicities preserved.
    Configuration rotated(const Angle& r) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::map<Angle, int> points_;
    int n_ = 0;
};

// Clockwise gaps between consecutive points of a configuration, starting from
// a chosen point. A full sequence has n entries summing to one turn; gaps are
// exact rationals in [0, 1] (coincident points contribute zeros, and the
// all-coincident convention uses a single full-turn entry). Truncated
// sequences are shorter and sum to less.
using AngleSequence = std::vector<Rational>;

// Sequence of S seen from the given occurrence (1-based) of p. Coincident
// points are ordered by ascending occurrence index, so each of the n
// (point, occurrence) pairs gets a well-defined sequence. If every point of S
// coincides, the sequence is all zeros with a single full turn at the
// occurrence's position.
AngleSequence angle_sequence(const Configuration& S, const Angle& p, int occurrence = 1);

// Prefix of W = angle_sequence(S, p) cut at q: entries up to the unique index
// j with 0 < cw(p_j, q) <= cw(p_j, p_j+1), the last entry replaced by
// cw(p_j, q). q must differ from p.
AngleSequence truncate_at(const AngleSequence& W, const Configuration& S, const Angle& p,
                          const Angle& q);

// Lexicographic comparison; the shorter sequence is zero-padded on the right.
std::strong_ordering lex_compare(const AngleSequence& a, const AngleSequence& b);

// Whether some nonidentity rotation maps S onto itself (multiplicities
// included) -- equivalently, whether two of the n per-occurrence angle
// sequences coincide.
bool is_rotationally_symmetric(const Configuration& S);

// Order of the rotation group of S: the largest k such that rotation by 1/k
// turn preserves S. Asymmetric configurations have fold 1.
int rotational_fold(const Configuration& S);

// The unique point whose angle sequence is lexicographically smallest.
// Throws on rotationally symmetric configurations, where no point is
// distinguished.
Angle head(const Configuration& S);

// True iff exactly two points of S have no antipodal partner in S; such a
// configuration is always rotationally asymmetric. Defined for sets only
// (throws if S carries a multiplicity).
bool exactly_two_missing_antipodals(const Configuration& S);

// Mutual-visibility graph over the expanded points of S (indices follow
// Configuration::expanded()). Symmetric, no self-loops; coincident robots see
// each other at distance zero.
class VisibilityGraph {
public:
    VisibilityGraph(const Configuration& S, const Visibility& vis);

    int size() const { return n_; }
    bool edge(int i, int j) const;
    bool is_connected() const;

private:
    int n_;
    std::vector<char> adj_;
};

VisibilityGraph visibility_graph(const Configuration& S, const Angle& theta);

// n distinct angles k/denominator_bound forming a rotationally asymmetric
// set; rejection-sampled deterministically from the seed. Requires
// denominator_bound >= 4n so the rejection loop has room.
Configuration random_asymmetric_config(int n, std::uint64_t seed, long denominator_bound);

}  // namespace gathering
