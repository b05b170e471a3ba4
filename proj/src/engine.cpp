#include "gathering/engine.hpp"

#include <algorithm>
#include <sstream>

namespace gathering {

namespace {

const Angle& quarter_turn() {
    static const Angle q = Angle::from(1, 4);
    return q;
}

const Angle& half_turn() {
    static const Angle h = Angle::from(1, 2);
    return h;
}

bool is_rule4(Rule r) {
    return r == Rule::r4a || r == Rule::r4b || r == Rule::r4c;
}

std::string describe_step(int step) {
    std::ostringstream os;
    os << "step " << step << ": ";
    return os.str();
}

}  // namespace

Configuration to_configuration(const Swarm& robots) {
    return Configuration::from_points(robots);
}

bool all_coincident(const Swarm& robots) {
    for (const Angle& p : robots)
        if (!(p == robots.front())) return false;
    return true;
}

Snapshot make_snapshot(const Swarm& robots, std::size_t i, const Visibility& vis) {
    if (i >= robots.size()) throw std::out_of_range("snapshot: robot index out of range");
    Snapshot snap;
    snap.vis = vis;

    std::map<Angle, int> groups;
    for (std::size_t j = 0; j < robots.size(); ++j) {
        if (j == i) continue;
        if (robots[j] == robots[i]) {
            snap.own = Flag::many;
        } else if (vis.sees(robots[i], robots[j])) {
            ++groups[cw(robots[i], robots[j])];
        }
    }
    snap.visible.reserve(groups.size());
    for (const auto& [offset, c] : groups)
        snap.visible.push_back({offset, c >= 2 ? Flag::many : Flag::one});
    return snap;
}

std::vector<Decision> hypothetical_decisions(const Swarm& robots, const AlgorithmFn& alg,
                                             const Visibility& vis) {
    std::vector<Decision> out;
    out.reserve(robots.size());
    for (std::size_t i = 0; i < robots.size(); ++i)
        out.push_back(alg(make_snapshot(robots, i, vis)));
    return out;
}

Swarm step_swarm(const Swarm& robots, const std::set<std::size_t>& activated,
                 const AlgorithmFn& alg, const Visibility& vis, int step_index,
                 TraceRecord* record) {
    for (std::size_t i : activated)
        if (i >= robots.size()) throw std::out_of_range("step: activated index out of range");

    // Look/Compute against the common snapshot source, then move atomically.
    std::vector<std::pair<std::size_t, Decision>> decided;
    decided.reserve(activated.size());
    for (std::size_t i : activated) {
        Decision d = alg(make_snapshot(robots, i, vis));
        if (!vis.reachable(d.offset))
            throw ContractViolation("algorithm returned invisible destination for robot " +
                                        std::to_string(i),
                                    step_index);
        decided.emplace_back(i, d);
    }

    Swarm after = robots;
    for (const auto& [i, d] : decided) after[i] = robots[i] + d.offset;

    if (record) {
        record->step = step_index;
        record->activated.assign(activated.begin(), activated.end());
        record->moves.clear();
        for (const auto& [i, d] : decided)
            record->moves.push_back(
                {i, robots[i], d.rule, d.offset, after[i], d.contract_violation});
        record->robots_after = after;
        record->config_after = to_configuration(after);
    }
    return after;
}

std::pair<Configuration, TraceRecord> step(const Configuration& S,
                                           const std::set<std::size_t>& activated,
                                           const AlgorithmFn& alg, const Visibility& vis) {
    TraceRecord record;
    const Swarm after = step_swarm(S.expanded(), activated, alg, vis, 1, &record);
    return {record.config_after, record};
}

std::vector<std::string> monitor_invariants(const Swarm& before,
                                            const std::vector<Decision>& hypothetical,
                                            const std::set<std::size_t>& activated,
                                            const Swarm& after, const Visibility& vis) {
    if (hypothetical.size() != before.size())
        throw std::invalid_argument("monitor: one decision per robot required");

    std::vector<std::string> out;
    const Configuration Sb = to_configuration(before);
    const Angle leader_pos = head(Sb);  // caller guarantees asymmetry
    std::size_t leader = 0;
    while (!(before[leader] == leader_pos)) ++leader;

    std::vector<std::size_t> able;
    for (std::size_t i = 0; i < hypothetical.size(); ++i)
        if (!hypothetical[i].is_null()) able.push_back(i);

    // (a)
    if (able.size() > 2) {
        std::string who;
        for (std::size_t i : able) who += (who.empty() ? "" : ", ") + std::to_string(i);
        out.push_back("more than two robots able to move (" + who + ")");
    }
    // (b)
    if (hypothetical[leader].is_null()) out.push_back("leader unable to move");
    // (c)
    for (std::size_t i = 0; i < hypothetical.size(); ++i)
        if (hypothetical[i].rule == Rule::r3 && !hypothetical[i].is_null() && i != leader)
            out.push_back("rule 3 fired by non-leader robot " + std::to_string(i));
    // (d)
    for (std::size_t i : able) {
        if (i == leader || !is_rule4(hypothetical[i].rule)) continue;
        const Angle arc = cw(before[i], leader_pos);
        if (!(quarter_turn() < arc && arc <= half_turn()))
            out.push_back("rule 4 by robot " + std::to_string(i) +
                          " outside (1/4, 1/2] clockwise of the leader");
        if (!Sb.contains(antipodal(before[i])))
            out.push_back("rule 4 by robot " + std::to_string(i) + " without an antipodal robot");
    }
    // (e)
    bool movers_all_4bc = true;
    for (std::size_t i : activated) {
        if (hypothetical[i].is_null()) continue;
        const Rule r = hypothetical[i].rule;
        if (r != Rule::r4b && r != Rule::r4c) movers_all_4bc = false;
    }
    if (movers_all_4bc) {
        const Configuration Sa = to_configuration(after);
        if (!Sa.is_set())
            out.push_back("rule 4b/4c movers created a multiplicity");
        else if (is_rotationally_symmetric(Sa))
            out.push_back("rule 4b/4c movers created a symmetric configuration");
    }
    // (f)
    for (std::size_t i : activated) {
        if (hypothetical[i].rule != Rule::r3 || hypothetical[i].is_null()) continue;
        const Angle dest = before[i] + hypothetical[i].offset;
        for (std::size_t j : able)
            if (j != i && activated.count(j) == 0 && dest == before[j])
                out.push_back("rule 3 mover " + std::to_string(i) +
                              " lands on inactive mover " + std::to_string(j));
    }
    // (g)
    for (std::size_t i : activated) {
        if (!is_rule4(hypothetical[i].rule) || hypothetical[i].is_null()) continue;
        const LocalView view = make_local_view(make_snapshot(before, i, vis));
        if (std::binary_search(view.v_prime.begin(), view.v_prime.end(), hypothetical[i].offset))
            out.push_back("rule 4 destination of robot " + std::to_string(i) + " occupied in V'");
        if (!(hypothetical[i].offset.turns() < half_turn().turns()))
            out.push_back("rule 4 move of robot " + std::to_string(i) + " spans half a turn or more");
    }
    return out;
}

SchedulerSpec SchedulerSpec::full() {
    return {};
}

SchedulerSpec SchedulerSpec::round_robin() {
    SchedulerSpec s;
    s.kind = Kind::round_robin;
    return s;
}

SchedulerSpec SchedulerSpec::random(const Rational& p, int force_after) {
    if (sgn(p) <= 0 || p > 1)
        throw std::invalid_argument("scheduler: activation probability must be in (0, 1]");
    SchedulerSpec s;
    s.kind = Kind::random;
    s.p = p;
    s.force_after = force_after;
    return s;
}

SchedulerSpec SchedulerSpec::scripted(std::vector<std::vector<std::size_t>> sets) {
    if (sets.empty()) throw std::invalid_argument("scheduler: empty script");
    SchedulerSpec s;
    s.kind = Kind::script;
    s.script = std::move(sets);
    return s;
}

SchedulerSpec SchedulerSpec::parse(const std::string& text) {
    if (text == "full") return full();
    if (text == "rr" || text == "round_robin") return round_robin();
    if (text.rfind("random:", 0) == 0) {
        std::string rest = text.substr(7);
        int force_after = 0;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            force_after = std::stoi(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        return random(parse_rational(rest), force_after);
    }
    if (text.rfind("script:", 0) == 0) {
        std::vector<std::vector<std::size_t>> sets;
        std::stringstream body(text.substr(7));
        std::string group;
        while (std::getline(body, group, ';')) {
            std::vector<std::size_t> set;
            std::stringstream gs(group);
            std::string idx;
            while (std::getline(gs, idx, ','))
                if (!idx.empty()) set.push_back(std::stoul(idx));
            sets.push_back(std::move(set));
        }
        return scripted(std::move(sets));
    }
    throw std::invalid_argument("scheduler: cannot parse '" + text + "'");
}

std::string SchedulerSpec::str() const {
    switch (kind) {
        case Kind::full:
            return "full";
        case Kind::round_robin:
            return "round_robin";
        case Kind::random: {
            std::string s = "random:" + rational_str(p);
            if (force_after > 0) s += ":" + std::to_string(force_after);
            return s;
        }
        case Kind::script: {
            std::string s = "script:";
            for (std::size_t g = 0; g < script.size(); ++g) {
                if (g) s += ";";
                for (std::size_t k = 0; k < script[g].size(); ++k) {
                    if (k) s += ",";
                    s += std::to_string(script[g][k]);
                }
            }
            return s;
        }
    }
    throw std::logic_error("unreachable scheduler kind");
}

Scheduler::Scheduler(const SchedulerSpec& spec, int n, std::uint64_t seed)
    : spec_(spec), n_(n), rng_(seed) {
    if (n <= 0) throw std::invalid_argument("scheduler: no robots");
    if (spec_.kind == SchedulerSpec::Kind::script) {
        std::set<std::size_t> covered;
        for (const auto& set : spec_.script)
            for (std::size_t i : set) {
                if (i >= static_cast<std::size_t>(n))
                    throw std::invalid_argument("scheduler: script index out of range");
                covered.insert(i);
            }
        if (static_cast<int>(covered.size()) != n)
            throw std::invalid_argument("scheduler: script must activate every robot each cycle");
    }
    if (spec_.kind == SchedulerSpec::Kind::random) {
        force_window_ = spec_.force_after > 0 ? spec_.force_after : 4 * n;
        idle_.assign(n, 0);
    }
}

std::set<std::size_t> Scheduler::next() {
    std::set<std::size_t> out;
    switch (spec_.kind) {
        case SchedulerSpec::Kind::full:
            for (int i = 0; i < n_; ++i) out.insert(i);
            break;
        case SchedulerSpec::Kind::round_robin:
            out.insert(static_cast<std::size_t>(round_ % n_));
            break;
        case SchedulerSpec::Kind::random:
            for (int i = 0; i < n_; ++i)
                if (rng_.coin(spec_.p)) out.insert(i);
            // Fairness: nobody may ever sleep through force_window_
            // consecutive steps.
            for (int i = 0; i < n_; ++i)
                if (idle_[i] + 1 >= force_window_) out.insert(i);
            for (int i = 0; i < n_; ++i) idle_[i] = out.count(i) ? 0 : idle_[i] + 1;
            break;
        case SchedulerSpec::Kind::script: {
            const auto& set = spec_.script[round_ % spec_.script.size()];
            out.insert(set.begin(), set.end());
            break;
        }
    }
    ++round_;
    return out;
}

RunResult run(const Configuration& S0, const SchedulerSpec& scheduler, const AlgorithmFn& alg,
              const Visibility& vis, std::uint64_t seed, const RunOptions& options) {
    if (S0.empty()) throw std::invalid_argument("run: empty initial configuration");

    RunResult result;
    Swarm state = S0.expanded();
    Scheduler sched(scheduler, S0.n(), seed);

    const auto gathered_and_stable = [&](const Swarm& s) -> std::optional<Angle> {
        if (!all_coincident(s)) return std::nullopt;
        for (const Decision& d : hypothetical_decisions(s, alg, vis))
            if (!d.is_null()) return std::nullopt;
        return s.front();
    };

    if (auto point = gathered_and_stable(state)) {
        result.outcome = RunResult::Outcome::gathered;
        result.gather_point = point;
        result.steps = 0;
        result.final_config = to_configuration(state);
        return result;
    }

    for (int k = 1; k <= options.step_cap; ++k) {
        const std::set<std::size_t> activated = sched.next();

        bool monitored = false;
        std::vector<Decision> hyp;
        if (options.monitor) {
            const Configuration Sb = to_configuration(state);
            if (Sb.is_set() && !is_rotationally_symmetric(Sb)) {
                hyp = hypothetical_decisions(state, alg, vis);
                monitored = true;
            }
        }

        TraceRecord record;
        Swarm after;
        try {
            after = step_swarm(state, activated, alg, vis, k, &record);
        } catch (const ContractViolation& violation) {
            result.outcome = RunResult::Outcome::contract_violation;
            result.violation = violation.what();
            result.violation_step = k;
            result.steps = k;
            result.final_config = to_configuration(state);
            return result;
        }

        if (monitored)
            for (std::string& v : monitor_invariants(state, hyp, activated, after, vis))
                result.monitor_violations.push_back(describe_step(k) + v);

        for (const TraceRecord::Move& m : record.moves) ++result.rule_counts[m.rule];
        if (options.on_record) options.on_record(record);
        state = std::move(after);

        if (auto point = gathered_and_stable(state)) {
            result.outcome = RunResult::Outcome::gathered;
            result.gather_point = point;
            result.steps = k;
            result.final_config = to_configuration(state);
            return result;
        }
    }

    result.outcome = RunResult::Outcome::step_cap_exceeded;
    result.steps = options.step_cap;
    result.final_config = to_configuration(state);
    return result;
}

}  // namespace gathering
