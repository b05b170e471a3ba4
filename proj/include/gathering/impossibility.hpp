#pragma once

#include "gathering/algorithm.hpp"
#include "gathering/configuration.hpp"
#include "gathering/engine.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gathering {

// Whether the regular n-gon configuration meets the three requirements that
// make (theta, n) a candidate for the impossibility constructions:
//   1. every open semicircle centered at one of its points holds exactly
//      half of the points,
//   2. no two points sit at angular distance exactly theta,
//   3. some two distinct points see each other (distance < theta).
// All three are evaluated geometrically on the regular set, with exact
// arithmetic. Requires 0 < theta <= 1/4.
bool is_compatible(int n, const Angle& theta);

// Smallest compatible n >= n_min. Only sizes of the form 4k+2 can qualify,
// so the search walks that sequence.
int find_compatible(const Angle& theta, int n_min);

// Half the distance from theta to the nearest multiple of 1/n: the largest
// safe perturbation radius. Positive (throws if theta is an exact multiple
// of 1/n) and never more than 1/(4n).
Rational epsilon(const Angle& theta, int n);

// A regular n-set with point i nudged clockwise by gamma[i] * eps, keeping
// the index correspondence. gamma entries lie in [0, 1]; 0 < eps < 1/n keeps
// the points distinct and inside disjoint arcs.
struct Perturbation {
    int n = 0;
    Rational eps;
    std::vector<Rational> gamma;
    std::vector<Angle> points;  // points[i] = i/n + gamma[i] * eps

    Angle regular(int i) const;
    Configuration config() const;
};

Perturbation perturb(int n, const Rational& eps, const std::vector<Rational>& gamma);

// The index correspondence i -> points[i] is a visibility-graph isomorphism:
// robots i and j see each other in the perturbed set exactly when they do in
// the regular set. Holds whenever eps <= epsilon(theta, n); an oversized eps
// may break it.
bool isomorphism_check(const Perturbation& P, const Angle& theta);

// Open semicircles keep their content under perturbation: for every index i,
// the semicircles centered at the regular point i and at its perturbed copy
// both contain the perturbed copies of exactly the points the regular
// semicircle contains, and that is exactly half of them.
bool semicircle_content_preserved(const Perturbation& P);

// Points of S1 in the open semicircle D around `center`, together with the
// antipodes of the points of S2 in D. Returned as a set.
Configuration d_combination(const Configuration& S1, const Configuration& S2,
                            const Angle& center);

struct CheckResult {
    std::string name;
    bool passed;
};

// Evidence that a decision function cannot gather: either it froze on an
// asymmetric connected configuration (frozen), or activating one robot of a
// combined configuration produces rotational symmetry (lemma1: the move
// targets an empty point) or a symmetric pair of multiplicities (lemma2: two
// same-bundle perturbations move onto one occupied point). Every
// verification check is recorded by name; builders throw if any fails.
struct Certificate {
    enum class Variant { frozen, lemma1, lemma2 };

    Variant variant = Variant::frozen;
    std::string algorithm;
    Angle theta;
    int n = 0;
    Rational eps;
    int sample = 0;  // 1-based forge sample that produced it, 0 if built directly

    std::vector<Rational> gamma;
    std::vector<Rational> gamma2;  // lemma2: the bundle partner
    int mover_index = -1;          // lemma1/lemma2

    Configuration perturbed;  // the sampled configuration S'
    Angle mover;              // lemma1/lemma2: p', the activated perturbed copy
    Angle mover2;             // lemma2: p''', the antipode of the partner copy
    Angle target;             // q
    Configuration combined;   // Q, the D-combination the step runs on
    Configuration successor;  // R, after the SSYNC step
    Angle rotation_witness;   // 1/2 turn

    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::string variant_name() const;
    static Variant variant_from_name(const std::string& name);
};

Certificate build_frozen_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma);

Certificate build_lemma1_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma, int mover_index);

Certificate build_lemma2_certificate(const AlgorithmFn& alg, const std::string& algorithm_name,
                                     const Angle& theta, int n,
                                     const std::vector<Rational>& gamma1,
                                     const std::vector<Rational>& gamma2, int mover_index);

// Re-derives every check of `cert` from its inputs (variant, theta, n,
// coefficients, mover index) and also confirms the recorded payload matches
// the recomputation. Returns the full check list; passes iff all pass.
std::vector<CheckResult> verify_certificate(const Certificate& cert, const AlgorithmFn& alg);

struct ForgeOptions {
    int max_samples = 100;
    long coeff_denominator = 10000;  // gamma entries are k / coeff_denominator
};

// Thrown by forge when the sample budget runs out without a certificate.
class ForgeExhausted : public std::runtime_error {
public:
    explicit ForgeExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Samples perturbations of the regular n-set until one yields a certificate:
// frozen if nobody moves, lemma1 on a move to an empty point, lemma2 after a
// bundle search finds two coefficient choices steering the same robot onto
// the same occupied point. Deterministic in `seed`; throws when the sample
// budget runs out. Requires is_compatible(n, theta).
Certificate forge(const AlgorithmFn& alg, const std::string& algorithm_name, const Angle& theta,
                  int n, std::uint64_t seed, const ForgeOptions& options = {});

// --- derandomized obstacle avoidance on the unit hypercube ---

using GridPoint = std::vector<Rational>;              // one point of [0,1]^n
using ObstacleSets = std::vector<std::vector<GridPoint>>;  // X_1 .. X_n

struct DerandGrid {
    int m = 0, n = 0;
    std::vector<mpz_class> a;                // a_i = m^(2^(i-1))
    mpz_class s_n;                           // sum of the a_i
    std::vector<std::vector<Rational>> Y;    // Y_i = { j/s_n : s_(i-1) < j <= s_i }
};

DerandGrid derand_grid(int m, int n);

// Constructs a point of Y_1 x ... x Y_n avoiding every obstacle set, by the
// pigeonhole recursion over the grid. Requires every axis-i-parallel line to
// meet X_i in fewer than m points ("line bound exceeded" otherwise); under
// that bound a solution always exists. All coordinates come out distinct.
GridPoint derandomize(int m, int n, const ObstacleSets& X);

}  // namespace gathering
