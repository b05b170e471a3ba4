#include "gathering/algorithm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gathering {

namespace {

const Angle& half_turn() {
    static const Angle h = Angle::from(1, 2);
    return h;
}

const Rational& rat_half() {
    static const Rational k = make_rational(1, 2);
    return k;
}

Decision stay_with_violation(Rule r) {
    return Decision{Angle(), r, true};
}

// Multiplicity points in observer frame, the observer's own included as
// offset zero.
std::vector<Angle> multiplicity_points(const Snapshot& snap) {
    std::vector<Angle> m;
    if (snap.own == Flag::many) m.push_back(Angle());
    for (const VisiblePoint& p : snap.visible)
        if (p.flag == Flag::many) m.push_back(p.offset);
    return m;
}

}  // namespace

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::r1a: return "1a";
        case Rule::r1b: return "1b";
        case Rule::r2: return "2";
        case Rule::r3: return "3";
        case Rule::r4a: return "4a";
        case Rule::r4b: return "4b";
        case Rule::r4c: return "4c";
        case Rule::r5: return "5";
        case Rule::lead: return "lead";
        case Rule::join: return "join";
        case Rule::move: return "move";
        case Rule::stay: return "stay";
    }
    throw std::logic_error("unreachable rule");
}

Rule rule_from_name(const std::string& name) {
    static const std::map<std::string, Rule> table = {
        {"1a", Rule::r1a}, {"1b", Rule::r1b}, {"2", Rule::r2},       {"3", Rule::r3},
        {"4a", Rule::r4a}, {"4b", Rule::r4b}, {"4c", Rule::r4c},     {"5", Rule::r5},
        {"lead", Rule::lead}, {"join", Rule::join}, {"move", Rule::move}, {"stay", Rule::stay},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown rule name '" + name + "'");
    return it->second;
}

LocalView make_local_view(const Snapshot& snap) {
    LocalView view;
    view.v.add(Angle());
    for (const VisiblePoint& p : snap.visible) view.v.add(p.offset);

    view.g = view.v;
    if (!view.g.contains(half_turn())) view.g.add(half_turn());

    std::set<Angle> vp;
    for (const auto& [p, c] : view.v.points()) {
        vp.insert(p);
        vp.insert(antipodal(p));
    }
    view.v_prime.assign(vp.begin(), vp.end());

    const std::size_t m = view.v_prime.size();
    Angle delta = cw(view.v_prime[m - 1], view.v_prime[0]);
    for (std::size_t i = 0; i + 1 < m; ++i)
        delta = std::min(delta, cw(view.v_prime[i], view.v_prime[i + 1]));
    view.delta = delta;

    if (!snap.visible.empty()) view.s = snap.visible.front().offset;
    return view;
}

Angle visible_head(const LocalView& view) {
    if (!is_rotationally_symmetric(view.v)) return head(view.v);
    if (!is_rotationally_symmetric(view.g)) return head(view.g);
    throw std::invalid_argument("leader undefined");
}

Angle ghost_head(const LocalView& view) {
    if (!is_rotationally_symmetric(view.g)) return head(view.g);
    if (!is_rotationally_symmetric(view.v)) return head(view.v);
    throw std::invalid_argument("leader undefined");
}

Decision listing1_decide(const Snapshot& snap) {
    const std::vector<Angle> mult = multiplicity_points(snap);

    // Rule 1: some multiplicity point is in sight.
    if (!mult.empty()) {
        if (mult.size() == 1) return {mult[0], Rule::r1a};
        if (mult.size() == 2) {
            const Angle ab = cw(mult[0], mult[1]);
            const Angle ba = cw(mult[1], mult[0]);
            if (ab == ba) return stay_with_violation(Rule::r1b);  // antipodal pair
            return {ab > ba ? mult[0] : mult[1], Rule::r1b};
        }
        return stay_with_violation(Rule::r1b);  // three or more multiplicity points
    }

    // Rule 2: alone as far as the eye can see.
    if (snap.visible.empty()) return {Angle::from(1, 4), Rule::r2};

    const LocalView view = make_local_view(snap);
    const Angle observer;  // offset 0
    Angle vh, gh;
    try {
        vh = visible_head(view);
        gh = ghost_head(view);
    } catch (const std::invalid_argument&) {
        return stay_with_violation(Rule::r5);
    }

    // Rule 3: the observer is the ghost head.
    if (gh == observer) return {*view.s, Rule::r3};

    // Rule 4: the observer is the visible head.
    if (vh == observer) {
        const Angle& s = *view.s;
        if (gh == half_turn() && view.v.contains(antipodal(s)))
            return {s + view.delta * make_rational(1, 3), Rule::r4a};
        const Angle mid = s * rat_half();
        const bool mid_occupied =
            std::binary_search(view.v_prime.begin(), view.v_prime.end(), mid);
        if (mid_occupied) return {mid + view.delta * make_rational(1, 7), Rule::r4b};
        return {mid, Rule::r4c};
    }

    // Rule 5: somebody else's turn.
    return {Angle(), Rule::r5};
}

Decision gathering_decision(const Snapshot& snap) {
    if (snap.vis.is_full() || !(snap.vis.theta() == half_turn()))
        throw std::invalid_argument("algorithm requires theta = pi");
    return listing1_decide(snap);
}

Decision full_visibility_decision(const Snapshot& snap) {
    if (!snap.vis.is_full())
        throw std::invalid_argument("algorithm requires full visibility");

    const std::vector<Angle> mult = multiplicity_points(snap);
    if (mult.size() >= 2) return stay_with_violation(Rule::stay);
    if (mult.size() == 1) {
        const Angle& m = mult[0];
        if (m.is_zero()) return {Angle(), Rule::stay};  // already on the pile
        // Join only if no simple robot sits strictly between the multiplicity
        // point and the observer in the clockwise direction.
        for (const VisiblePoint& p : snap.visible)
            if (p.flag == Flag::one && cw(m, p.offset) < cw(m, Angle()))
                return {Angle(), Rule::stay};
        return {m, Rule::join};
    }

    Configuration all;
    all.add(Angle());
    for (const VisiblePoint& p : snap.visible) all.add(p.offset);
    if (is_rotationally_symmetric(all)) return stay_with_violation(Rule::stay);
    if (head(all) == Angle()) return {snap.visible.front().offset, Rule::lead};
    return {Angle(), Rule::stay};
}

AlgorithmRegistry AlgorithmRegistry::with_builtins() {
    AlgorithmRegistry reg;
    reg.add("listing1", listing1_decide);
    reg.add("fullvis", full_visibility_decision);
    reg.add("stay", [](const Snapshot&) { return Decision{Angle(), Rule::stay}; });
    reg.add("midpoint", [](const Snapshot& snap) {
        if (snap.visible.empty()) return Decision{Angle(), Rule::stay};
        return Decision{snap.visible.front().offset * rat_half(), Rule::move};
    });
    return reg;
}

void AlgorithmRegistry::add(const std::string& name, AlgorithmFn fn) {
    fns_[name] = std::move(fn);
}

const AlgorithmFn& AlgorithmRegistry::find(const std::string& name) const {
    const auto it = fns_.find(name);
    if (it == fns_.end()) throw std::invalid_argument("unknown algorithm '" + name + "'");
    return it->second;
}

std::vector<std::string> AlgorithmRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, fn] : fns_) out.push_back(name);
    return out;
}

}  // namespace gathering
