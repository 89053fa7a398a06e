#pragma once

#include <optional>
#include <vector>

#include "diolab/cf.hpp"
#include "diolab/partition.hpp"

namespace diolab {

// Nested chains of partition arcs that stay on one side of a fixed orbit
// point, certified level by level, plus the descent that refutes a lower
// bound on q * ||q alpha - x|| for a concrete target x.

enum class GammaRule {
    bitlog,  // gamma_k = 1 / ceil(log2(a_k + 2))
    constant // fixed rational, independent of k
};

struct OnesidedParams {
    Rat eps;
    GammaRule rule = GammaRule::bitlog;
    Rat gamma_const = Rat(1, 4);
};

// Width parameter used at level k.
Rat gamma_value(Alpha& al, long k, const OnesidedParams& p);

// q_{k-1} / q_k, exact.
Rat delta_ratio(Alpha& al, long k);

// Enclosure of sqrt(eps), a point interval when eps is a rational square.
RatInterval sqrt_eps(const Rat& eps);

// gamma_k + 2 delta_k < 1 - 2 sqrt(eps), certified strictly. A false return
// means the strict inequality provably fails or is too tight to separate.
bool level_hypothesis(Alpha& al, long k, const OnesidedParams& p);

// Exclusive rational bounds on admissible start indices at level k. When
// sqrt(eps) is irrational the window is shrunk to the certified core.
struct AdmissibleWindow {
    Rat lo, hi;
    bool contains(const Int& n) const { return Rat(n) > lo && Rat(n) < hi; }
};
AdmissibleWindow admissible_window(Alpha& al, long k, const OnesidedParams& p);

// One chain step from n1 at level k to n2 = n1 + q_{k-1} + b q_k at level
// k+1. Every inequality is reported with its certified slack.
struct PairCheck {
    long k = 0;
    Int n1, n2, b;
    RatInterval far_gap;  // D_{k-1} - (b+1) D_k, distance across the far edge
    RatInterval near_gap; // b D_k, distance across the near edge
    Rat far_need, near_need;
    bool far_ok = false, near_ok = false;
    bool interior_ok = false; // index families between the edges stay heavy
    Rat eps_k;                // two-level contraction factor
    bool shrink_ok = false;   // both endpoints of the child arc inside the
                              // eps_k / (n1 + q_{k-1}) ball
    bool pass = false;
};

PairCheck check_onesided_pair(Alpha& al, long k, const Int& n1, const Int& n2,
                              const OnesidedParams& p);

// Builds the depth-step chain starting at level K: picks the smallest
// admissible n at level K and the smallest admissible continuation at each
// later level. Throws precondition_error when the hypothesis fails or a
// window closes.
struct ChainReport {
    long K = 0, depth = 0;
    std::vector<PairCheck> steps;
    std::vector<bool> hypothesis; // levels K .. K+depth
    bool all_pass = false;
};
ChainReport build_onesided_chain(Alpha& al, long K, long depth,
                                 const OnesidedParams& p);

// Witness search by partition descent. Starting from the first level K with
// delta_{K+1} + delta_{K+1}^2 < delta, repeatedly locates x one level deeper;
// a step either certifies n_k ||n_k alpha - x|| < eps - delta (a witness once
// n_k > q_K) or certifies the complementary lower bound, in which case the
// exact ratio n_k / q_k must drop by more than eps - 2 delta - 1/4. If the
// descent exhausts max_steps the positive-index scan below eps - delta over
// (q_K, scan_limit] is tried instead.
struct DescentStep {
    long k = 0;
    Int n;
    bool hit = false; // ball test certified below eps - delta
    Rat ratio;        // n / q_k
};

struct DescentResult {
    bool refuted = false;
    Int witness;
    long steps = 0;
    bool via_scan = false;
    std::vector<DescentStep> log;
};

DescentResult emptiness_descent(Alpha& al, const Rat& x, const Rat& eps,
                                const Rat& delta, long max_steps = 40,
                                const Int& scan_limit = Int(200000));

// First level K such that delta_{K+1} + delta_{K+1}^2 < delta. Levels the
// descent visits re-verify the same bound, so a monotonicity assumption at
// selection time cannot silently corrupt a certificate.
long descent_start_level(Alpha& al, const Rat& delta);

} // namespace diolab
