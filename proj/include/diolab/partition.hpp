#pragma once

#include <vector>

#include "diolab/cf.hpp"

namespace diolab {

// Level-k circle partition: the q_k arcs cut by the points frac(m alpha) for
// 1 <= m <= q_k. Arc I_n runs between n alpha and partner(n) alpha, where
// partner(n) is n + q_{k-1} reduced mod q_k into [1, q_k]. Arc lengths take
// two values: D_{k-1} for type 1 and D_{k-1} + D_k for type 2, with type 2
// exactly on the final index segment n > q_k - q_{k-1} (q_{k-1} many).

int interval_type(Alpha& al, long k, const Int& n);
Int partner_index(Alpha& al, long k, const Int& n);
RatInterval interval_length(Alpha& al, long k, int type, long depth);
RatInterval interval_length(Alpha& al, long k, int type);

struct PartitionInterval {
    Int n;
    Int partner;
    int type;
};

std::vector<PartitionInterval> partition_level(Alpha& al, long k);

// Children of I_n^(k) in the level-(k+1) partition are I_m^(k+1) for
// m = n + q_{k-1} + c q_k with c_lo <= c <= a_{k+1} - 1; c_lo is -1 for a
// type-2 parent and 0 otherwise. The child at c = a_{k+1} - 1 is type 2 and
// occupies the parent's owner-side end; all others are type 1.
struct ChildRange {
    long c_lo;
    Int c_hi;
};

ChildRange children(Alpha& al, long k, const Int& n);

// Level-k index of the parent of the level-(k+1) interval I_m.
Int parent_index(Alpha& al, long k, const Int& m);

// Owner endpoint n alpha sits on the right end of its arc at even k and on
// the left end at odd k, reading positions counterclockwise.
bool owner_on_right(long k);

// Offset of x from the owner endpoint of I_n^(k), measured into the arc.
// Escalates internally until the wrap resolves.
RatInterval owner_offset(Alpha& al, long k, const Int& n, const Rat& x);

// One refinement step: the level-(k+1) arc inside I_n^(k) containing x.
Int locate_step(Alpha& al, long k, const Int& n, const Rat& x);

// Index of the level-k arc whose interior contains x. x must not lie on an
// orbit point; unresolvable coincidence surfaces as precondition_error.
Int locate(Alpha& al, long k, const Rat& x);

// Exact count of m with q_k < m <= Q and frac(m alpha) inside I_n^(k).
Int count_orbit_hits(Alpha& al, long k, const Int& n, const Int& Q);

} // namespace diolab
