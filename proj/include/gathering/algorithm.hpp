#pragma once

#include "gathering/configuration.hpp"
#include "gathering/geometry.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gathering {

// Weak multiplicity detection: a robot can tell whether a point holds one
// robot or more than one, but not the exact count.
enum class Flag { one, many };

struct VisiblePoint {
    Angle offset;  // clockwise from the observer, in (0, 1)
    Flag flag;
};

// What one robot perceives in its Look phase, in its own frame: offsets are
// clockwise arcs from its position. The robot's own point is not listed; its
// multiplicity is reported separately. Offsets ascend strictly and every one
// lies inside the visibility range.
struct Snapshot {
    Visibility vis = Visibility::full();
    Flag own = Flag::one;
    std::vector<VisiblePoint> visible;
};

// Which branch of a decision function fired. r1a..r5 are the gathering
// algorithm's rules; lead/join belong to the full-visibility algorithm;
// move/stay label plug-in algorithms.
enum class Rule { r1a, r1b, r2, r3, r4a, r4b, r4c, r5, lead, join, move, stay };

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& name);

struct Decision {
    Angle offset;  // clockwise move; zero means stay
    Rule rule = Rule::stay;
    // Set when the decision function was fed a situation its contract rules
    // out (symmetric views with no multiplicity, antipodal multiplicity
    // pairs, three or more multiplicity points). The robot stays put.
    bool contract_violation = false;

    bool is_null() const { return offset.is_zero(); }
};

// The derived sets the gathering rules work with, all in observer frame
// (observer at offset 0). Built from a snapshot with no multiplicity points.
struct LocalView {
    Configuration v;               // observer plus visible points
    Configuration g;               // v plus the observer's antipodal point
    std::vector<Angle> v_prime;    // v plus all antipodals, ascending
    Angle delta;                   // smallest positive gap within v_prime
    std::optional<Angle> s;        // nearest clockwise visible point
};

LocalView make_local_view(const Snapshot& snap);

// Head of V if V is asymmetric, else head of G. Throws "leader undefined"
// when both are symmetric.
Angle visible_head(const LocalView& view);

// Head of G if G is asymmetric, else head of V. Throws "leader undefined"
// when both are symmetric.
Angle ghost_head(const LocalView& view);

// The gathering rules, applied to any snapshot. Rule precedence:
//   1a  unique multiplicity point: move onto it
//   1b  two multiplicity points a, b with cw(a,b) > cw(b,a): move to a
//   2   no other robot visible: move clockwise a quarter turn
//   3   observer is the ghost head: move to the nearest clockwise robot s
//   4   observer is the visible head:
//       4a  ghost head antipodal to observer and s's antipodal occupied:
//           move clockwise by cw(r,s) + delta/3
//       4b  the midpoint of the arc to s lies in V': cw(r,s)/2 + delta/7
//       4c  otherwise: cw(r,s)/2
//   5   otherwise stay
Decision listing1_decide(const Snapshot& snap);

// listing1_decide behind the algorithm's design assumption: visibility must
// be exactly a half turn (theta = pi). Throws otherwise.
Decision gathering_decision(const Snapshot& snap);

// Reference algorithm for robots that see the whole circle: the head moves
// clockwise to the next robot; once a multiplicity point exists, the robot
// closest to it in the clockwise direction moves counterclockwise onto it.
// Requires full visibility.
Decision full_visibility_decision(const Snapshot& snap);

using AlgorithmFn = std::function<Decision(const Snapshot&)>;

// Decision functions keyed by name. with_builtins() provides:
//   listing1  the gathering rules above (any visibility range)
//   fullvis   full_visibility_decision
//   stay      never moves
//   midpoint  moves half way toward the nearest clockwise visible robot
class AlgorithmRegistry {
public:
    static AlgorithmRegistry with_builtins();

    void add(const std::string& name, AlgorithmFn fn);
    const AlgorithmFn& find(const std::string& name) const;  // throws on unknown name
    std::vector<std::string> names() const;

private:
    std::map<std::string, AlgorithmFn> fns_;
};

}  // namespace gathering
