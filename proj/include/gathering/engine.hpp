#pragma once

#include "gathering/algorithm.hpp"
#include "gathering/configuration.hpp"
#include "gathering/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gathering {

// Robot positions keyed by identity. The engine tracks identities so
// schedulers and traces can name robots; configurations are the anonymous
// multiset view of this vector.
using Swarm = std::vector<Angle>;

Configuration to_configuration(const Swarm& robots);
bool all_coincident(const Swarm& robots);

// What robot i perceives: everything within its visibility range, offsets in
// its own frame, multiplicities flagged weakly.
Snapshot make_snapshot(const Swarm& robots, std::size_t i, const Visibility& vis);

// The decision every robot would make if activated now. Pure; the swarm is
// not touched.
std::vector<Decision> hypothetical_decisions(const Swarm& robots, const AlgorithmFn& alg,
                                             const Visibility& vis);

struct TraceRecord {
    struct Move {
        std::size_t robot;
        Angle from;
        Rule rule;
        Angle offset;
        Angle to;
        bool contract_violation;
    };

    int step = 0;
    std::vector<std::size_t> activated;
    std::vector<Move> moves;     // one entry per activated robot
    Swarm robots_after;          // identity view; fully determines the step
    Configuration config_after;  // canonical multiset view
};

// Thrown when an algorithm hands the engine a destination outside the
// observer's visibility arc.
class ContractViolation : public std::runtime_error {
public:
    ContractViolation(const std::string& what, int step)
        : std::runtime_error(what), step(step) {}
    int step;
};

// One semi-synchronous step: every activated robot takes its snapshot of the
// same swarm, decides, and all moves land simultaneously. Inactive robots
// sleep through it.
Swarm step_swarm(const Swarm& robots, const std::set<std::size_t>& activated,
                 const AlgorithmFn& alg, const Visibility& vis, int step_index = 0,
                 TraceRecord* record = nullptr);

// Identity-free wrapper: robots are indexed in the configuration's canonical
// expanded order.
std::pair<Configuration, TraceRecord> step(const Configuration& S,
                                           const std::set<std::size_t>& activated,
                                           const AlgorithmFn& alg, const Visibility& vis);

// Per-step sanity checks mirroring the movement guarantees the gathering
// rules are supposed to enforce on asymmetric, multiplicity-free
// configurations:
//   (a) at most two robots are able to move
//   (b) the leader (head of the configuration) is able to move
//   (c) rule 3 fires only for the leader, and for at most one robot
//   (d) a non-leader moving by rule 4 sits in (1/4, 1/2] clockwise of the
//       leader and has an antipodal robot
//   (e) if every activated mover fired 4b/4c, the successor stays asymmetric
//       and multiplicity-free
//   (f) a rule-3 mover never lands on the other able mover while that robot
//       is inactive
//   (g) rule-4 destinations avoid V'(r) and move less than half a turn
// `hypothetical` must hold every robot's decision against `before`.
std::vector<std::string> monitor_invariants(const Swarm& before,
                                            const std::vector<Decision>& hypothetical,
                                            const std::set<std::size_t>& activated,
                                            const Swarm& after, const Visibility& vis);

struct SchedulerSpec {
    enum class Kind { full, round_robin, random, script };

    Kind kind = Kind::full;
    Rational p;                                   // random: activation probability
    int force_after = 0;                          // random: fairness window; 0 means 4n
    std::vector<std::vector<std::size_t>> script; // script: activation sets, cycled

    static SchedulerSpec full();
    static SchedulerSpec round_robin();
    static SchedulerSpec random(const Rational& p, int force_after = 0);
    static SchedulerSpec scripted(std::vector<std::vector<std::size_t>> sets);

    // "full" | "rr" | "round_robin" | "random:p[:F]" | "script:0,1;2;..."
    static SchedulerSpec parse(const std::string& text);
    std::string str() const;
};

// Stateful activation-set source. Deterministic in (spec, n, seed). The
// random kind force-includes any robot that would otherwise sit idle for
// force_after consecutive steps, so every fair-execution guarantee holds on
// every seed.
class Scheduler {
public:
    Scheduler(const SchedulerSpec& spec, int n, std::uint64_t seed);
    std::set<std::size_t> next();

private:
    SchedulerSpec spec_;
    int n_;
    Rng rng_;
    std::uint64_t round_ = 0;
    std::vector<int> idle_;
    int force_window_ = 0;
};

struct RunOptions {
    int step_cap = 10000;
    bool monitor = false;
    std::function<void(const TraceRecord&)> on_record;  // optional trace sink
};

struct RunResult {
    enum class Outcome { gathered, step_cap_exceeded, contract_violation };

    Outcome outcome = Outcome::step_cap_exceeded;
    std::optional<Angle> gather_point;  // set when gathered
    int steps = 0;                      // gathering step, or steps executed
    std::string violation;              // set on contract_violation
    int violation_step = -1;
    Configuration final_config;
    std::map<Rule, int> rule_counts;            // fired by activated robots
    std::vector<std::string> monitor_violations;
};

// Drives step_swarm under the scheduler until the swarm is gathered and
// stable (all robots coincident and every hypothetical decision null), the
// step cap runs out, or the algorithm breaks its movement contract. All
// randomness stems from `seed`.
RunResult run(const Configuration& S0, const SchedulerSpec& scheduler, const AlgorithmFn& alg,
              const Visibility& vis, std::uint64_t seed, const RunOptions& options = {});

}  // namespace gathering
