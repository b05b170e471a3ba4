#include "gathering/impossibility.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace gathering {

namespace {

std::vector<Angle> regular_points(int n) {
    std::vector<Angle> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(Angle::from(i, n));
    return pts;
}

void validate_theta(const Angle& theta) {
    if (theta.is_zero() || theta.turns() > make_rational(1, 4))
        throw std::invalid_argument("theta must be in (0, 1/4]");
}

bool antipodally_closed(const Configuration& S) {
    for (const auto& [p, c] : S.points())
        if (S.count(antipodal(p)) != c) return false;
    return true;
}

std::size_t index_of(const Swarm& robots, const Angle& p) {
    for (std::size_t i = 0; i < robots.size(); ++i)
        if (robots[i] == p) return i;
    throw std::logic_error("point not in swarm");
}

}  // namespace

bool is_compatible(int n, const Angle& theta) {
    validate_theta(theta);
    if (n < 1) throw std::invalid_argument("n must be positive");
    const std::vector<Angle> pts = regular_points(n);

    for (int i = 0; i < n; ++i) {
        const OpenArc D = OpenArc::semicircle(pts[static_cast<std::size_t>(i)]);
        int inside = 0;
        for (int j = 0; j < n; ++j)
            if (D.contains(pts[static_cast<std::size_t>(j)])) ++inside;
        if (2 * inside != n) return false;
    }

    bool some_pair_sees = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Angle d =
                angular_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
            if (d == theta) return false;
            if (d < theta) some_pair_sees = true;
        }
    }
    return some_pair_sees;
}

int find_compatible(const Angle& theta, int n_min) {
    validate_theta(theta);
    int n = std::max(n_min, 2);
    n += ((2 - n) % 4 + 4) % 4;  // smallest value >= n congruent to 2 mod 4
    for (; n <= 100000; n += 4)
        if (is_compatible(n, theta)) return n;
    throw std::runtime_error("find_compatible: no compatible size found");
}

Rational epsilon(const Angle& theta, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    Rational best;
    bool have = false;
    for (int a = 0; a <= n; ++a) {
        const Rational d = abs(theta.turns() - make_rational(a, n));
        if (!have || d < best) {
            best = d;
            have = true;
        }
    }
    if (sgn(best) == 0)
        throw std::invalid_argument("epsilon undefined: theta is a multiple of 1/n");
    return best / 2;
}

Angle Perturbation::regular(int i) const { return Angle::from(i, n); }

Configuration Perturbation::config() const { return Configuration::from_points(points); }

Perturbation perturb(int n, const Rational& eps, const std::vector<Rational>& gamma) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("perturb: coefficient count does not match n");
    if (sgn(eps) <= 0 || eps >= make_rational(1, static_cast<long>(n)))
        throw std::invalid_argument("perturb: eps must be in (0, 1/n)");
    for (const Rational& g : gamma)
        if (sgn(g) < 0 || g > 1)
            throw std::invalid_argument("perturb: coefficients must lie in [0, 1]");

    Perturbation P;
    P.n = n;
    P.eps = eps;
    P.gamma = gamma;
    P.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        P.points.push_back(Angle(make_rational(i, n) + gamma[static_cast<std::size_t>(i)] * eps));
    return P;
}

bool isomorphism_check(const Perturbation& P, const Angle& theta) {
    for (int i = 0; i < P.n; ++i) {
        for (int j = i + 1; j < P.n; ++j) {
            const bool regular_edge =
                in_theta_neighborhood(P.regular(i), P.regular(j), theta);
            const bool perturbed_edge = in_theta_neighborhood(
                P.points[static_cast<std::size_t>(i)], P.points[static_cast<std::size_t>(j)], theta);
            if (regular_edge != perturbed_edge) return false;
        }
    }
    return true;
}

bool semicircle_content_preserved(const Perturbation& P) {
    for (int i = 0; i < P.n; ++i) {
        const OpenArc regular_D = OpenArc::semicircle(P.regular(i));
        const OpenArc perturbed_D = OpenArc::semicircle(P.points[static_cast<std::size_t>(i)]);
        int regular_content = 0;
        for (int j = 0; j < P.n; ++j) {
            const bool in_regular = regular_D.contains(P.regular(j));
            if (in_regular) ++regular_content;
            const Angle& pj = P.points[static_cast<std::size_t>(j)];
            if (regular_D.contains(pj) != in_regular) return false;
            if (perturbed_D.contains(pj) != in_regular) return false;
        }
        if (2 * regular_content != P.n) return false;
    }
    return true;
}

Configuration d_combination(const Configuration& S1, const Configuration& S2,
                            const Angle& center) {
    const OpenArc D = OpenArc::semicircle(center);
    std::set<Angle> out;
    for (const auto& [p, c] : S1.points())
        if (D.contains(p)) out.insert(p);
    for (const auto& [p, c] : S2.points())
        if (D.contains(p)) out.insert(antipodal(p));
    Configuration R;
    for (const Angle& p : out) R.add(p);
    return R;
}

bool Certificate::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

std::string Certificate::variant_name() const {
    switch (variant) {
        case Variant::frozen: return "frozen";
        case Variant::lemma1: return "lemma1";
        case Variant::lemma2: return "lemma2";
    }
    throw std::logic_error("unknown certificate variant");
}

Certificate::Variant Certificate::variant_from_name(const std::string& name) {
    if (name == "frozen") return Variant::frozen;
    if (name == "lemma1") return Variant::lemma1;
    if (name == "lemma2") return Variant::lemma2;
    throw std::invalid_argument("unknown certificate variant: " + name);
}

namespace {

// Derivation stops as soon as an applicability condition fails: the
// remaining payload would be meaningless. Builders turn this into
// invalid_argument; verification reports the collected checks as they stand.
struct DeriveAbort {
    std::vector<CheckResult> checks;
    std::string check;
};

class CheckList {
public:
    void add(const std::string& name, bool passed) { checks_.push_back({name, passed}); }

    void require(const std::string& name, bool passed) {
        checks_.push_back({name, passed});
        if (!passed) throw DeriveAbort{checks_, name};
    }

    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    std::vector<CheckResult> checks_;
};

bool distinct_entries(const std::vector<Rational>& xs) {
    std::set<Rational> seen(xs.begin(), xs.end());
    return seen.size() == xs.size();
}

Certificate derive_frozen(const AlgorithmFn& alg, const std::string& algorithm_name,
                          const Angle& theta, int n, const std::vector<Rational>& gamma) {
    validate_theta(theta);
    Certificate c;
    c.variant = Certificate::Variant::frozen;
    c.algorithm = algorithm_name;
    c.theta = theta;
    c.n = n;
    c.eps = epsilon(theta, n);
    c.gamma = gamma;

    const Perturbation P = perturb(n, c.eps, gamma);
    c.perturbed = P.config();
    const Visibility vis = Visibility::limited(theta);

    CheckList L;
    L.add("coefficients_distinct", distinct_entries(gamma));
    L.add("perturbed_asymmetric", !is_rotationally_symmetric(c.perturbed));
    L.add("visibility_connected", VisibilityGraph(c.perturbed, vis).is_connected());
    L.add("isomorphism_preserved", isomorphism_check(P, theta));
    bool all_null = true;
    for (std::size_t i = 0; i < P.points.size(); ++i)
        if (!alg(make_snapshot(P.points, i, vis)).is_null()) all_null = false;
    L.add("all_decisions_null", all_null);

    c.checks = L.take();
    return c;
}

Certificate derive_lemma1(const AlgorithmFn& alg, const std::string& algorithm_name,
                          const Angle& theta, int n, const std::vector<Rational>& gamma,
                          int mover_index) {
    validate_theta(theta);
    if (mover_index < 0 || mover_index >= n)
        throw std::invalid_argument("mover index out of range");

    Certificate c;
    c.variant = Certificate::Variant::lemma1;
    c.algorithm = algorithm_name;
    c.theta = theta;
    c.n = n;
    c.eps = epsilon(theta, n);
    c.gamma = gamma;
    c.mover_index = mover_index;

    const Perturbation P = perturb(n, c.eps, gamma);
    const Configuration S1 = P.config();
    c.perturbed = S1;
    const Visibility vis = Visibility::limited(theta);
    const Angle p_prime = P.points[static_cast<std::size_t>(mover_index)];
    c.mover = p_prime;

    CheckList L;
    L.add("coefficients_distinct", distinct_entries(gamma));
    L.add("perturbed_asymmetric", !is_rotationally_symmetric(S1));
    L.add("visibility_connected", VisibilityGraph(S1, vis).is_connected());
    L.add("isomorphism_preserved", isomorphism_check(P, theta));
    L.add("semicircle_content_preserved", semicircle_content_preserved(P));

    const Decision d = alg(make_snapshot(P.points, static_cast<std::size_t>(mover_index), vis));
    L.require("mover_decision_nonnull", !d.is_null());
    L.require("mover_destination_reachable", vis.reachable(d.offset));
    const Angle q = p_prime + d.offset;
    c.target = q;
    L.require("target_unoccupied", !S1.contains(q));

    // S2 is S1 after the lone move; combining both halves around the mover
    // doubles the post-move semicircle into an antipodally closed whole.
    Configuration S2;
    for (const auto& [p, cnt] : S1.points())
        if (!(p == p_prime)) S2.add(p, cnt);
    S2.add(q);

    const Configuration Q = d_combination(S1, S2, p_prime);
    c.combined = Q;
    L.add("combined_point_count", Q.n() == n);
    L.add("combined_two_unpaired_antipodals", Q.is_set() && exactly_two_missing_antipodals(Q));
    L.add("combined_asymmetric", !is_rotationally_symmetric(Q));
    L.add("combined_connected", VisibilityGraph(Q, vis).is_connected());
    L.require("mover_in_combined", Q.contains(p_prime));

    const Swarm before = Q.expanded();
    const std::size_t idx = index_of(before, p_prime);
    bool repeats = false;
    Configuration R;
    try {
        const Swarm after = step_swarm(before, {idx}, alg, vis);
        repeats = after[idx] == q;
        R = to_configuration(after);
    } catch (const ContractViolation&) {
        repeats = false;
    }
    L.require("mover_repeats_decision", repeats);
    c.successor = R;
    c.rotation_witness = Angle::from(1, 2);

    L.add("successor_antipodally_closed", antipodally_closed(R));
    L.add("successor_symmetric", is_rotationally_symmetric(R));
    L.add("successor_half_turn_invariant", R.rotated(c.rotation_witness) == R);

    c.checks = L.take();
    return c;
}

Certificate derive_lemma2(const AlgorithmFn& alg, const std::string& algorithm_name,
                          const Angle& theta, int n, const std::vector<Rational>& gamma1,
                          const std::vector<Rational>& gamma2, int mover_index) {
    validate_theta(theta);
    if (mover_index < 0 || mover_index >= n)
        throw std::invalid_argument("mover index out of range");
    if (static_cast<int>(gamma1.size()) != n || static_cast<int>(gamma2.size()) != n)
        throw std::invalid_argument("perturb: coefficient count does not match n");
    for (int j = 0; j < n; ++j) {
        const bool differs =
            gamma1[static_cast<std::size_t>(j)] != gamma2[static_cast<std::size_t>(j)];
        if (differs != (j == mover_index))
            throw std::invalid_argument(
                "lemma 2 requires gamma vectors differing exactly at the mover index");
    }

    Certificate c;
    c.variant = Certificate::Variant::lemma2;
    c.algorithm = algorithm_name;
    c.theta = theta;
    c.n = n;
    c.eps = epsilon(theta, n);
    c.gamma = gamma1;
    c.gamma2 = gamma2;
    c.mover_index = mover_index;

    const Perturbation P1 = perturb(n, c.eps, gamma1);
    const Perturbation P2 = perturb(n, c.eps, gamma2);
    const Configuration S1 = P1.config();
    const Configuration S2 = P2.config();
    c.perturbed = S1;
    const Visibility vis = Visibility::limited(theta);
    const Angle p_prime = P1.points[static_cast<std::size_t>(mover_index)];
    const Angle p_second = P2.points[static_cast<std::size_t>(mover_index)];
    c.mover = p_prime;

    CheckList L;
    L.add("coefficients_distinct", distinct_entries(gamma1) && distinct_entries(gamma2));
    L.add("perturbed_asymmetric",
          !is_rotationally_symmetric(S1) && !is_rotationally_symmetric(S2));
    L.add("visibility_connected", VisibilityGraph(S1, vis).is_connected() &&
                                      VisibilityGraph(S2, vis).is_connected());
    L.add("isomorphism_preserved", isomorphism_check(P1, theta) && isomorphism_check(P2, theta));
    L.add("semicircle_content_preserved",
          semicircle_content_preserved(P1) && semicircle_content_preserved(P2));

    const Decision d1 = alg(make_snapshot(P1.points, static_cast<std::size_t>(mover_index), vis));
    const Decision d2 = alg(make_snapshot(P2.points, static_cast<std::size_t>(mover_index), vis));
    L.require("first_decision_nonnull", !d1.is_null());
    L.require("second_decision_nonnull", !d2.is_null());
    L.require("destinations_reachable", vis.reachable(d1.offset) && vis.reachable(d2.offset));
    const Angle q = p_prime + d1.offset;
    c.target = q;
    L.require("targets_coincide", p_second + d2.offset == q);
    L.require("target_occupied", S1.contains(q));

    // Both bundle members move onto the same occupied point, so combining
    // them around the unperturbed site doubles q and its antipode at once.
    const Angle center = P1.regular(mover_index);
    const Configuration Q = d_combination(S1, S2, center);
    c.combined = Q;
    const Angle p_third = antipodal(p_second);
    c.mover2 = p_third;
    L.add("combined_point_count", Q.n() == n);
    L.add("combined_two_unpaired_antipodals", Q.is_set() && exactly_two_missing_antipodals(Q));
    L.add("combined_asymmetric", !is_rotationally_symmetric(Q));
    L.add("combined_connected", VisibilityGraph(Q, vis).is_connected());
    L.require("mover_in_combined", Q.contains(p_prime));
    L.require("partner_antipode_in_combined", Q.contains(p_third));

    const Swarm before = Q.expanded();
    const std::size_t idx1 = index_of(before, p_prime);
    const std::size_t idx2 = index_of(before, p_third);
    bool repeats = false;
    Configuration R;
    try {
        const Swarm after = step_swarm(before, {idx1, idx2}, alg, vis);
        repeats = after[idx1] == q && after[idx2] == antipodal(q);
        R = to_configuration(after);
    } catch (const ContractViolation&) {
        repeats = false;
    }
    L.require("movers_repeat_decisions", repeats);
    c.successor = R;
    c.rotation_witness = Angle::from(1, 2);

    L.add("successor_multiplicity_pair", R.count(q) >= 2 && R.count(antipodal(q)) >= 2);
    L.add("successor_antipodally_closed", antipodally_closed(R));
    L.add("successor_symmetric", is_rotationally_symmetric(R));
    L.add("successor_half_turn_invariant", R.rotated(c.rotation_witness) == R);

    c.checks = L.take();
    return c;
}

Certificate finish_build(const char* what, Certificate c) {
    for (const CheckResult& chk : c.checks)
        if (!chk.passed)
            throw std::runtime_error(std::string(what) + " certificate failed check: " + chk.name);
    return c;
}

}  // namespace

Certificate build_frozen_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma) {
    return finish_build("frozen", derive_frozen(alg, algorithm_name, theta, n, gamma));
}

Certificate build_lemma1_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma, int mover_index) {
    try {
        return finish_build("lemma 1",
                            derive_lemma1(alg, algorithm_name, theta, n, gamma, mover_index));
    } catch (const DeriveAbort& abort) {
        throw std::invalid_argument("lemma 1 inapplicable: " + abort.check);
    }
}

Certificate build_lemma2_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma1,
                                     const std::vector<Rational>& gamma2, int mover_index) {
    try {
        return finish_build(
            "lemma 2", derive_lemma2(alg, algorithm_name, theta, n, gamma1, gamma2, mover_index));
    } catch (const DeriveAbort& abort) {
        throw std::invalid_argument("lemma 2 inapplicable: " + abort.check);
    }
}

std::vector<CheckResult> verify_certificate(const Certificate& cert, const AlgorithmFn& alg) {
    Certificate derived;
    try {
        switch (cert.variant) {
            case Certificate::Variant::frozen:
                derived = derive_frozen(alg, cert.algorithm, cert.theta, cert.n, cert.gamma);
                break;
            case Certificate::Variant::lemma1:
                derived = derive_lemma1(alg, cert.algorithm, cert.theta, cert.n, cert.gamma,
                                        cert.mover_index);
                break;
            case Certificate::Variant::lemma2:
                derived = derive_lemma2(alg, cert.algorithm, cert.theta, cert.n, cert.gamma,
                                        cert.gamma2, cert.mover_index);
                break;
        }
    } catch (const DeriveAbort& abort) {
        return abort.checks;
    }

    std::vector<CheckResult> checks = derived.checks;
    checks.push_back({"recorded_eps_matches", cert.eps == derived.eps});
    checks.push_back({"recorded_perturbed_matches", cert.perturbed == derived.perturbed});
    if (cert.variant != Certificate::Variant::frozen) {
        checks.push_back({"recorded_mover_matches", cert.mover == derived.mover});
        checks.push_back({"recorded_target_matches", cert.target == derived.target});
        checks.push_back({"recorded_combined_matches", cert.combined == derived.combined});
        checks.push_back({"recorded_successor_matches", cert.successor == derived.successor});
        checks.push_back(
            {"recorded_witness_matches", cert.rotation_witness == derived.rotation_witness});
    }
    if (cert.variant == Certificate::Variant::lemma2)
        checks.push_back({"recorded_mover2_matches", cert.mover2 == derived.mover2});
    return checks;
}

Certificate forge(const AlgorithmFn& alg, const std::string& algorithm_name, const Angle& theta,
                  int n, std::uint64_t seed, const ForgeOptions& options) {
    if (!is_compatible(n, theta))
        throw std::invalid_argument("forge requires a compatible (theta, n) pair");
    if (options.coeff_denominator < 4L * n)
        throw std::invalid_argument("forge: coefficient denominator too small");
    if (options.max_samples < 1) throw std::invalid_argument("forge: max_samples must be positive");

    const Rational eps = epsilon(theta, n);
    const Visibility vis = Visibility::limited(theta);
    const std::uint64_t coeff_values = static_cast<std::uint64_t>(options.coeff_denominator) + 1;
    Rng rng(seed);

    for (int sample = 1; sample <= options.max_samples; ++sample) {
        std::set<std::uint64_t> used;
        std::vector<Rational> gamma;
        gamma.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::uint64_t k;
            do {
                k = rng.below(coeff_values);
            } while (used.count(k));
            used.insert(k);
            gamma.push_back(
                make_rational(static_cast<long>(k), options.coeff_denominator));
        }

        const Perturbation P = perturb(n, eps, gamma);
        const Configuration S1 = P.config();
        std::vector<Decision> decisions;
        decisions.reserve(static_cast<std::size_t>(n));
        bool anyone_moves = false;
        for (int i = 0; i < n; ++i) {
            decisions.push_back(alg(make_snapshot(P.points, static_cast<std::size_t>(i), vis)));
            if (!decisions.back().is_null()) anyone_moves = true;
        }

        if (!anyone_moves) {
            Certificate c = build_frozen_certificate(alg, algorithm_name, theta, n, gamma);
            c.sample = sample;
            return c;
        }

        for (int i = 0; i < n; ++i) {
            const Decision& d = decisions[static_cast<std::size_t>(i)];
            if (d.is_null() || !vis.reachable(d.offset)) continue;
            const Angle q = P.points[static_cast<std::size_t>(i)] + d.offset;
            if (!S1.contains(q)) {
                Certificate c = build_lemma1_certificate(alg, algorithm_name, theta, n, gamma, i);
                c.sample = sample;
                return c;
            }
        }

        // Every reachable move lands on an occupied point. Resampling one
        // robot's coefficient can only steer it among the n-1 fixed targets,
        // so two same-target draws show up within n+1 moving candidates.
        for (int i = 0; i < n; ++i) {
            const Decision& d = decisions[static_cast<std::size_t>(i)];
            if (d.is_null() || !vis.reachable(d.offset)) continue;

            std::map<Angle, std::vector<Rational>> targets;
            targets.emplace(P.points[static_cast<std::size_t>(i)] + d.offset, gamma);
            std::set<std::uint64_t> used_i = used;
            const int draw_budget = 16 * (n + 1);
            for (int draw = 0; draw < draw_budget && static_cast<int>(targets.size()) <= n + 1;
                 ++draw) {
                if (used_i.size() >= coeff_values) break;
                std::uint64_t k;
                do {
                    k = rng.below(coeff_values);
                } while (used_i.count(k));
                used_i.insert(k);

                std::vector<Rational> candidate = gamma;
                candidate[static_cast<std::size_t>(i)] =
                    make_rational(static_cast<long>(k), options.coeff_denominator);
                const Perturbation Pc = perturb(n, eps, candidate);
                const Decision dc =
                    alg(make_snapshot(Pc.points, static_cast<std::size_t>(i), vis));
                if (dc.is_null() || !vis.reachable(dc.offset)) continue;
                const Angle qc = Pc.points[static_cast<std::size_t>(i)] + dc.offset;
                if (!Pc.config().contains(qc)) {
                    Certificate c =
                        build_lemma1_certificate(alg, algorithm_name, theta, n, candidate, i);
                    c.sample = sample;
                    return c;
                }
                const auto hit = targets.find(qc);
                if (hit != targets.end()) {
                    Certificate c = build_lemma2_certificate(alg, algorithm_name, theta, n,
                                                             hit->second, candidate, i);
                    c.sample = sample;
                    return c;
                }
                targets.emplace(qc, candidate);
            }
        }
    }
    throw ForgeExhausted("no certificate found within sample budget");
}

DerandGrid derand_grid(int m, int n) {
    if (m < 2) throw std::invalid_argument("derandomize: m must be at least 2");
    if (n < 1) throw std::invalid_argument("derandomize: n must be positive");

    DerandGrid grid;
    grid.m = m;
    grid.n = n;
    grid.s_n = 0;
    for (int i = 1; i <= n; ++i) {
        mpz_class a;
        mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(m), 1UL << (i - 1));
        grid.a.push_back(a);
        grid.s_n += a;
    }
    if (grid.s_n > 1000000)
        throw std::invalid_argument("derandomize: grid too large to enumerate");

    mpz_class lo = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> ys;
        for (mpz_class j = lo + 1; j <= lo + grid.a[static_cast<std::size_t>(i)]; ++j) {
            Rational y(j, grid.s_n);
            y.canonicalize();
            ys.push_back(y);
        }
        grid.Y.push_back(std::move(ys));
        lo += grid.a[static_cast<std::size_t>(i)];
    }
    return grid;
}

GridPoint derandomize(int m, int n, const ObstacleSets& X) {
    const DerandGrid grid = derand_grid(m, n);
    if (static_cast<int>(X.size()) != n)
        throw std::invalid_argument("derandomize: expected one obstacle set per dimension");
    for (const auto& Xi : X) {
        for (const GridPoint& p : Xi) {
            if (static_cast<int>(p.size()) != n)
                throw std::invalid_argument("derandomize: obstacle dimension mismatch");
            for (const Rational& x : p)
                if (sgn(x) < 0 || x > 1)
                    throw std::invalid_argument("derandomize: obstacle outside the unit cube");
        }
    }
    for (int i = 0; i < n; ++i) {
        std::map<GridPoint, int> lines;
        for (const GridPoint& p : X[static_cast<std::size_t>(i)]) {
            GridPoint key = p;
            key.erase(key.begin() + i);
            if (++lines[key] >= m) throw std::invalid_argument("line bound exceeded");
        }
    }

    std::vector<std::set<GridPoint>> obstacles;
    obstacles.reserve(static_cast<std::size_t>(n));
    for (const auto& Xi : X) obstacles.emplace_back(Xi.begin(), Xi.end());

    const auto with_suffix = [](const GridPoint& prefix, const Rational& y,
                                const GridPoint& suffix) {
        GridPoint p = prefix;
        p.push_back(y);
        p.insert(p.end(), suffix.begin(), suffix.end());
        return p;
    };

    // find(i, suffix) returns (y_1 .. y_i) with (y_1 .. y_i, suffix) outside
    // X_1 .. X_i. Axis i draws its candidates until one prefix value repeats
    // m times; at most m-1 of those m full points can be obstacles.
    std::function<GridPoint(int, const GridPoint&)> find = [&](int i,
                                                               const GridPoint& suffix) {
        if (i == 1) {
            for (const Rational& y : grid.Y[0]) {
                if (!obstacles[0].count(with_suffix({}, y, suffix))) return GridPoint{y};
            }
            throw std::logic_error("derandomize: first axis exhausted");
        }
        std::map<GridPoint, std::vector<Rational>> groups;
        for (const Rational& y : grid.Y[static_cast<std::size_t>(i - 1)]) {
            GridPoint deeper = suffix;
            deeper.insert(deeper.begin(), y);
            const GridPoint z = find(i - 1, deeper);
            std::vector<Rational>& bucket = groups[z];
            bucket.push_back(y);
            if (static_cast<int>(bucket.size()) >= m) {
                for (const Rational& yy : bucket) {
                    if (!obstacles[static_cast<std::size_t>(i - 1)].count(
                            with_suffix(z, yy, suffix)))
                        return with_suffix(z, yy, {});
                }
                throw std::logic_error("derandomize: line bound violated mid-search");
            }
        }
        throw std::logic_error("derandomize: pigeonhole failed");
    };

    return find(n, {});
}

}  // namespace gathering
