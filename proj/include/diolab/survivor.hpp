#pragma once

#include <cstdint>
#include <vector>

#include "diolab/cf.hpp"

namespace diolab {

// Nested survivor covers along a sparse level sequence k_0 < k_1 < ... with
// 12 q_{k_i} < eps q_{k_{i+1}}. Generation i lives on the level-k_i partition
// indices [1, q_{k_i}]; an index survives when its own value avoids the
// removal window [q_{k_{i-1}}, (eps/2) q_{k_i}) and its ancestor at the
// previous sparse level survived.
struct SurvivorPlan {
    Rat eps;
    long K = 0;
    long depth = 0;
    std::vector<long> levels; // k_0 .. k_depth
    std::vector<Int> q;       // q at those levels
    std::vector<Int> rem_lo;  // removal window per gen, inclusive; gen 0 empty
    std::vector<Int> rem_hi;  // exclusive integer bound
};

SurvivorPlan survivor_plan(Alpha& al, long K, const Rat& eps, long depth);

class SurvivorAnalysis {
public:
    SurvivorAnalysis(Alpha& al, SurvivorPlan plan);

    const SurvivorPlan& plan() const { return plan_; }

    // Generations up to this one carry explicit per-index tables; deeper
    // generations are counted through shifted offset windows only.
    int materialized_through() const { return g_mat_; }

    Int count(int gen);
    // Survivors with index in [lo, hi); tau filters by interval type, 0 = any.
    Int count_window(int gen, const Int& lo, const Int& hi, int tau);

    bool is_alive(int gen, const Int& m) const;
    std::vector<Int> survivors(int gen) const;

    // Offset decomposition of the step k_{gen-1} -> k_gen: descendants of a
    // root n are exactly n + base_shift + off over the branches whose root
    // type matches n.
    struct Branch {
        long off;
        int t;      // type at the deeper level
        int root_t; // type at the shallower level
    };
    const std::vector<Branch>& branches(int gen) const { return branches_[gen]; }
    long base_shift(int gen) const { return base_shift_[gen]; }

    // Per-generation exact count against q_{k_i} (1 - eps/32)^i.
    bool counts_within_bound();

    // Smallest M with q_{k_i} <= M^i for every generation i >= 1.
    Int suggest_M() const;

private:
    long cnt(int g, long lo, long hi, int tau);
    void build_offsets(int gen);
    void materialize();

    Alpha& al_;
    SurvivorPlan plan_;
    int g_mat_;
    std::vector<long> q_, thresh_, rem_lo_, rem_hi_;
    std::vector<std::vector<uint8_t>> alive_;
    std::vector<std::vector<uint32_t>> prefix_;
    std::vector<std::vector<Branch>> branches_; // per gen, step k_{i-1} -> k_i
    std::vector<long> base_shift_;         // sum of q_{lvl-1} over the step
};

bool covers_growth_hypothesis(const SurvivorPlan& plan, const Int& M);

// 1 + ln(1 - eps/32) / ln M, certified enclosure.
RatInterval survivor_dimension_bound(const Rat& eps, const Int& M, long prec = 64);

} // namespace diolab
