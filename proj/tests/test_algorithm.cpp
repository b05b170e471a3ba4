#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gathering/algorithm.hpp"
#include "gathering/engine.hpp"
#include "gathering/rng.hpp"
#include "oracles.hpp"

#include <set>
#include <stdexcept>

using namespace gathering;

namespace {

Snapshot snap_of(Flag own, std::initializer_list<std::pair<const char*, Flag>> visible,
                 Visibility vis = Visibility::limited(Angle::from(1, 2))) {
    Snapshot s;
    s.vis = vis;
    s.own = own;
    for (const auto& [offset, flag] : visible) s.visible.push_back({Angle::parse(offset), flag});
    return s;
}

Configuration rand_asymmetric_set(Rng& rng, int n, long den = 120) {
    while (true) {
        std::set<long> used;
        Configuration S;
        for (int i = 0; i < n; ++i) {
            long num;
            do {
                num = static_cast<long>(rng.below(static_cast<std::uint64_t>(den)));
            } while (used.count(num));
            used.insert(num);
            S.add(Angle::from(num, den));
        }
        if (!is_rotationally_symmetric(S)) return S;
    }
}

}  // namespace

TEST_CASE("local views") {
    const Snapshot s = snap_of(Flag::one, {{"1/10", Flag::one}, {"11/20", Flag::one}});
    const LocalView view = make_local_view(s);
    CHECK(view.v.n() == 3);
    CHECK(view.v.contains(Angle()));
    CHECK(view.g.n() == 4);
    CHECK(view.g.contains(Angle::from(1, 2)));
    const std::vector<Angle> expected = {Angle(),           Angle::from(1, 20),
                                         Angle::from(1, 10), Angle::from(1, 2),
                                         Angle::from(11, 20), Angle::from(3, 5)};
    CHECK(view.v_prime == expected);
    CHECK(view.delta == Angle::from(1, 20));
    CHECK(view.s.has_value());
    CHECK(*view.s == Angle::from(1, 10));

    const Snapshot alone = snap_of(Flag::one, {});
    const LocalView lonely = make_local_view(alone);
    CHECK(!lonely.s.has_value());
    CHECK(lonely.v.n() == 1);
    CHECK(lonely.g.n() == 2);
}

TEST_CASE("visible and ghost heads") {
    const LocalView a =
        make_local_view(snap_of(Flag::one, {{"1/10", Flag::one}, {"11/20", Flag::one}}));
    CHECK(visible_head(a) == Angle());
    CHECK(ghost_head(a) == Angle::from(1, 2));

    const LocalView b =
        make_local_view(snap_of(Flag::one, {{"1/10", Flag::one}, {"2/5", Flag::one}}));
    CHECK(ghost_head(b) == Angle());
    CHECK(visible_head(b) == Angle());

    const LocalView c = make_local_view(snap_of(
        Flag::one, {{"1/100", Flag::one}, {"51/100", Flag::one}, {"3/4", Flag::one}}));
    CHECK(ghost_head(c) == Angle::from(1, 2));
}

TEST_CASE("gathering rules: multiplicity handling") {
    const Decision own_pile = gathering_decision(snap_of(Flag::many, {{"7/10", Flag::one}}));
    CHECK(own_pile.is_null());
    CHECK(own_pile.rule == Rule::r1a);
    CHECK(!own_pile.contract_violation);

    const Decision other_pile = gathering_decision(snap_of(Flag::one, {{"7/10", Flag::many}}));
    CHECK(other_pile.offset == Angle::from(7, 10));
    CHECK(other_pile.rule == Rule::r1a);

    const Decision two_piles =
        gathering_decision(snap_of(Flag::one, {{"1/5", Flag::many}, {"3/5", Flag::many}}));
    CHECK(two_piles.offset == Angle::from(3, 5));
    CHECK(two_piles.rule == Rule::r1b);
    CHECK(!two_piles.contract_violation);

    const Decision own_and_other = gathering_decision(snap_of(Flag::many, {{"1/3", Flag::many}}));
    CHECK(own_and_other.offset == Angle::from(1, 3));
    CHECK(own_and_other.rule == Rule::r1b);

    const Decision antipodal_piles =
        gathering_decision(snap_of(Flag::one, {{"1/4", Flag::many}, {"3/4", Flag::many}}));
    CHECK(antipodal_piles.is_null());
    CHECK(antipodal_piles.contract_violation);
    CHECK(antipodal_piles.rule == Rule::r1b);

    const Decision three_piles = gathering_decision(snap_of(
        Flag::one, {{"1/5", Flag::many}, {"2/5", Flag::many}, {"3/5", Flag::many}}));
    CHECK(three_piles.is_null());
    CHECK(three_piles.contract_violation);
}

TEST_CASE("gathering rules: movement") {
    const Decision lonely = gathering_decision(snap_of(Flag::one, {}));
    CHECK(lonely.offset == Angle::from(1, 4));
    CHECK(lonely.rule == Rule::r2);

    const Decision leader =
        gathering_decision(snap_of(Flag::one, {{"1/10", Flag::one}, {"2/5", Flag::one}}));
    CHECK(leader.offset == Angle::from(1, 10));
    CHECK(leader.rule == Rule::r3);

    const Decision spur = gathering_decision(snap_of(
        Flag::one, {{"1/100", Flag::one}, {"51/100", Flag::one}, {"3/4", Flag::one}}));
    CHECK(spur.offset == Angle::from(1, 75));
    CHECK(spur.rule == Rule::r4a);

    const Decision nudge =
        gathering_decision(snap_of(Flag::one, {{"1/10", Flag::one}, {"11/20", Flag::one}}));
    CHECK(nudge.offset == Angle::from(2, 35));
    CHECK(nudge.rule == Rule::r4b);

    const Decision halfway =
        gathering_decision(snap_of(Flag::one, {{"1/10", Flag::one}, {"14/25", Flag::one}}));
    CHECK(halfway.offset == Angle::from(1, 20));
    CHECK(halfway.rule == Rule::r4c);

    const Decision bystander = gathering_decision(snap_of(
        Flag::one, {{"26/100", Flag::one}, {"51/100", Flag::one}, {"74/100", Flag::one}}));
    CHECK(bystander.is_null());
    CHECK(bystander.rule == Rule::r5);
    CHECK(!bystander.contract_violation);

    const Decision waiting =
        gathering_decision(snap_of(Flag::one, {{"3/10", Flag::one}, {"9/10", Flag::one}}));
    CHECK(waiting.is_null());
    CHECK(waiting.rule == Rule::r5);
}

TEST_CASE("gathering decision requires a half-turn range") {
    const Snapshot narrow = snap_of(Flag::one, {{"1/10", Flag::one}},
                                    Visibility::limited(Angle::from(1, 4)));
    CHECK_THROWS_AS(gathering_decision(narrow), std::invalid_argument);
    CHECK_THROWS_AS(gathering_decision(snap_of(Flag::one, {}, Visibility::full())),
                    std::invalid_argument);
    // the ungated rule evaluator accepts any range
    CHECK(listing1_decide(narrow).rule == Rule::r3);
}

TEST_CASE("symmetric views raise the violation flag") {
    // a square seen with full visibility: V and G are both symmetric
    const Snapshot square = snap_of(
        Flag::one, {{"1/4", Flag::one}, {"1/2", Flag::one}, {"3/4", Flag::one}},
        Visibility::full());
    const Decision d = listing1_decide(square);
    CHECK(d.is_null());
    CHECK(d.rule == Rule::r5);
    CHECK(d.contract_violation);
}

TEST_CASE("full visibility reference algorithm") {
    const Snapshot head_view = snap_of(
        Flag::one, {{"1/10", Flag::one}, {"2/5", Flag::one}}, Visibility::full());
    const Decision lead = full_visibility_decision(head_view);
    CHECK(lead.offset == Angle::from(1, 10));
    CHECK(lead.rule == Rule::lead);

    const Snapshot other_view = snap_of(
        Flag::one, {{"3/10", Flag::one}, {"9/10", Flag::one}}, Visibility::full());
    CHECK(full_visibility_decision(other_view).is_null());

    const Snapshot join_view = snap_of(Flag::one, {{"9/10", Flag::many}}, Visibility::full());
    const Decision join = full_visibility_decision(join_view);
    CHECK(join.offset == Angle::from(9, 10));
    CHECK(join.rule == Rule::join);

    // a simple robot sits counterclockwise between the observer and the pile
    const Snapshot blocked_view = snap_of(
        Flag::one, {{"9/10", Flag::many}, {"19/20", Flag::one}}, Visibility::full());
    CHECK(full_visibility_decision(blocked_view).is_null());

    const Snapshot at_pile = snap_of(Flag::many, {{"1/2", Flag::one}}, Visibility::full());
    CHECK(full_visibility_decision(at_pile).is_null());

    const Snapshot square = snap_of(
        Flag::one, {{"1/4", Flag::one}, {"1/2", Flag::one}, {"3/4", Flag::one}},
        Visibility::full());
    const Decision stuck = full_visibility_decision(square);
    CHECK(stuck.is_null());
    CHECK(stuck.contract_violation);

    CHECK_THROWS_AS(
        full_visibility_decision(snap_of(Flag::one, {{"1/10", Flag::one}})),
        std::invalid_argument);
}

TEST_CASE("cognizant leaders") {
    // whenever the observer heads G(r), it also heads V(r), so rule 3 is
    // exactly the g(r) = r case
    Rng rng(31);
    const Visibility vis = Visibility::limited(Angle::from(1, 2));
    int cognizant_seen = 0;
    for (int t = 0; t < 300; ++t) {
        const Configuration S = rand_asymmetric_set(rng, 3 + static_cast<int>(rng.below(5)));
        const std::vector<Angle> pts = S.expanded();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Snapshot snap = make_snapshot(pts, i, vis);
            const LocalView view = make_local_view(snap);
            Angle vh, gh;
            try {
                vh = visible_head(view);
                gh = ghost_head(view);
            } catch (const std::invalid_argument&) {
                continue;  // leader undefined in this view
            }
            if (gh == Angle()) {
                CHECK(vh == Angle());
                ++cognizant_seen;
            }
            const Decision d = listing1_decide(snap);
            CHECK((d.rule == Rule::r3) == (gh == Angle()));
        }
    }
    CHECK(cognizant_seen > 0);
}

TEST_CASE("point addition moves the head predictably") {
    Rng rng(32);
    int changed = 0;
    for (int t = 0; t < 300; ++t) {
        const Configuration S = rand_asymmetric_set(rng, 3 + static_cast<int>(rng.below(5)));
        const Angle p = Angle::from(static_cast<long>(rng.below(120)), 120);
        if (S.contains(p)) continue;
        Configuration S2 = S;
        S2.add(p);
        if (is_rotationally_symmetric(S2)) continue;
        const Angle h = head(S);
        const Angle h2 = head(S2);
        if (h == h2) continue;
        ++changed;
        CHECK(cw(h, p).turns() > 2 * cw(h2, p).turns());
    }
    CHECK(changed > 0);
}

TEST_CASE("equal truncations keep a point from heading the set") {
    Rng rng(33);
    int instances = 0;
    while (instances < 100) {
        // plant the pattern: gaps (x1, x2) from a to b, repeated from b to c
        const long x1 = 1 + static_cast<long>(rng.below(20));
        const long x2 = 1 + static_cast<long>(rng.below(20));
        if (2 * (x1 + x2) >= 60) continue;  // keep cw(a, b) = cw(b, c) below a half turn
        Configuration S;
        const Angle a;
        const Angle b = Angle::from(x1 + x2, 120);
        const Angle c = Angle::from(2 * (x1 + x2), 120);
        S.add(a);
        S.add(Angle::from(x1, 120));
        S.add(b);
        S.add(b + Angle::from(x1, 120));
        int extras = 1 + static_cast<int>(rng.below(3));
        bool ok = true;
        for (int e = 0; e < extras; ++e) {
            const long span = 120 - 2 * (x1 + x2);
            const Angle q = c + Angle::from(static_cast<long>(rng.below(
                                                static_cast<std::uint64_t>(span))),
                                            120);
            if (S.contains(q) || q == c) {
                ok = false;
                break;
            }
            S.add(q);
        }
        if (!ok || is_rotationally_symmetric(S)) continue;
        const AngleSequence from_a = truncate_at(angle_sequence(S, a), S, a, b);
        const AngleSequence from_b = truncate_at(angle_sequence(S, b), S, b, c);
        if (lex_compare(from_a, from_b) != std::strong_ordering::equal) continue;
        ++instances;
        CHECK(!(head(S) == b));
    }
}

TEST_CASE("decisions depend only on the snapshot") {
    Rng rng(34);
    const Visibility vis = Visibility::limited(Angle::from(1, 2));
    for (int t = 0; t < 100; ++t) {
        const Configuration S = rand_asymmetric_set(rng, 4);
        const Angle r = Angle::from(static_cast<long>(rng.below(120)), 120);
        const std::vector<Angle> pts = S.expanded();
        const std::vector<Angle> moved = S.rotated(r).expanded();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Snapshot before = make_snapshot(pts, i, vis);
            // rotation permutes robots; find the rotated observer's index
            std::size_t j = 0;
            while (!(moved[j] == pts[i] + r)) ++j;
            const Snapshot after = make_snapshot(moved, j, vis);
            CHECK(before.visible.size() == after.visible.size());
            const Decision d1 = listing1_decide(before);
            const Decision d2 = listing1_decide(after);
            CHECK(d1.offset == d2.offset);
            CHECK(d1.rule == d2.rule);
        }
    }
}

TEST_CASE("algorithm registry") {
    const AlgorithmRegistry reg = AlgorithmRegistry::with_builtins();
    const std::vector<std::string> names = reg.names();
    CHECK(names == std::vector<std::string>{"fullvis", "listing1", "midpoint", "stay"});
    CHECK_THROWS_AS(reg.find("nope"), std::invalid_argument);

    const Snapshot s = snap_of(Flag::one, {{"1/10", Flag::one}, {"2/5", Flag::one}});
    CHECK(reg.find("listing1")(s).offset == Angle::from(1, 10));
    CHECK(reg.find("stay")(s).is_null());
    CHECK(reg.find("midpoint")(s).offset == Angle::from(1, 20));

    AlgorithmRegistry mine = AlgorithmRegistry::with_builtins();
    mine.add("quarter", [](const Snapshot&) {
        return Decision{Angle::from(1, 4), Rule::move, false};
    });
    CHECK(mine.find("quarter")(s).offset == Angle::from(1, 4));
}
