#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "diolab/survivor.hpp"

namespace diolab {

// Cantor-type nested covers with exact rational endpoints, plus the dimension
// bounds computable from their per-generation statistics.

struct IntervalCover {
    long generation = 0;                        // 1-based
    std::vector<std::pair<Rat, Rat>> intervals; // sorted, pairwise disjoint
    Int m;                  // minimum child count over the parents
    Rat gap;                // minimum gap between consecutive intervals; 1 if fewer than two
    Rat len_max;            // longest interval
    bool truncated = false; // deeper generations hit the interval cap
};

// Generation g keeps every [(j+delta)/n_g, (j+1-delta)/n_g] lying inside a
// generation g-1 interval; generation 1 subdivides [0,1]. Requires
// n_{k+1} (1 - 2 delta) >= 4 n_k along the prefix actually used.
std::vector<IntervalCover> erdos_taylor_cover(const std::vector<Int>& n_seq,
                                              const Rat& delta, long depth,
                                              const Config& cfg = Config::from_env());

// ln(m_1 ... m_{g-1}) / -ln(m_g gap_g) at generation g (0 = deepest), clipped
// to [0,1]. Uses only the stored stats. Needs three generations and all m >= 2.
RatInterval mass_dist_lower_bound(const std::vector<IntervalCover>& covers,
                                  long g = 0, unsigned prec = 96);

// Sparse level schedule k_0 < k_1 < ... with 12 q_{k_i} < eps q_{k_{i+1}},
// plus the observed and a-priori bounds on consecutive level gaps.
struct SparseTimes {
    std::vector<long> levels;
    long max_gap = 0;   // observed max k_{i+1} - k_i
    long gap_bound = 0; // a-priori bound from q_{k+2} >= 2 q_k
};
SparseTimes sparse_times(Alpha& al, const Rat& eps, long K, long depth);

// Increasing index map with q_{phi(i)} >= R q_{phi(i-1)} and
// q_{phi(i-1)+1} >= q_{phi(i)} / R, built backward from the last fast growth
// step within the first kmax levels. Both inequalities re-verified exactly.
std::vector<long> phi_subsequence(Alpha& al, const Rat& R, long kmax);

// Survivor-set cover along the sparse schedule: per-generation counts, the
// upper dimension bound when q_{k_i} <= M^i holds, and generation s-costs.
struct SurvivorCoverReport {
    SurvivorPlan plan;
    std::vector<Int> counts; // per generation 0..depth
    Int M;                   // as used (input, or suggested when 0 was passed)
    bool growth_ok = false;  // q_{k_i} <= M^i for i = 1..depth
    bool counts_ok = false;  // counts within q_{k_i} (1 - eps/32)^i
    std::optional<RatInterval> upper; // 1 + ln(1 - eps/32) / ln M

    // count_gen * (2/q_{k_gen})^s, an upper bound for the generation s-cost.
    RatInterval s_cost(const Rat& s, long gen, unsigned prec = 96) const;
};
SurvivorCoverReport survivor_cover(Alpha& al, const Rat& eps, long K, long depth,
                                   const Int& M = Int(0));

// Least-squares fit of ln N(eps) against -ln eps; N counts grid boxes
// [i eps, (i+1) eps) meeting the set.
struct BoxCountEstimate {
    double slope = 0;
    double intercept = 0;
    double residual_rms = 0;
    std::vector<std::pair<Rat, Int>> counts; // (scale, boxes), largest scale first
};
BoxCountEstimate box_dimension_estimate(const std::vector<std::pair<Rat, Rat>>& intervals,
                                        const std::vector<Rat>& scales);
BoxCountEstimate box_dimension_estimate(const std::vector<Rat>& points,
                                        const std::vector<Rat>& scales);

} // namespace diolab
