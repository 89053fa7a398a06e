#pragma once

#include <optional>

#include "diolab/cf.hpp"

namespace diolab {

enum class ScanMode { positive, two_sided };

// Window scan of q |q alpha - x|-to-nearest-integer over integer q. positive
// covers q in [q_lo, q_hi]; two_sided also folds in the mirrored values
// q ||q alpha + x||, which represent negative q of the same magnitude.
struct ScanReport {
    ScanMode mode = ScanMode::positive;
    Int q_lo, q_hi;
    Rat min_lo, min_hi; // enclosure of the window minimum
    Int argmin;         // q attaining min_hi; negative value = mirrored side
    bool has_threshold = false;
    Rat threshold;
    bool below_threshold = false; // certified: window minimum < threshold
};

ScanReport liminf_scan(Alpha& al, const Rat& x, const Int& q_lo, const Int& q_hi,
                       ScanMode mode,
                       const std::optional<Rat>& threshold = std::nullopt);

// First q in the window whose value is certified below the threshold.
// Negative return = mirrored side (two_sided only).
std::optional<Int> scan_witness(Alpha& al, const Rat& x, const Int& q_lo,
                                const Int& q_hi, ScanMode mode,
                                const Rat& threshold);

// Outcome of a finite membership probe for the eps-avoidance set at level K.
// certified_out carries a witness q in [q_K, Q] with q ||q alpha - x|| < eps.
// Otherwise the point survives every scale up to Q; that is evidence, not a
// membership proof, so the scanned bound is reported alongside.
struct BadMembership {
    bool certified_out = false;
    std::optional<Int> witness;
    Int scale;
};

BadMembership bad_membership(Alpha& al, const Rat& x, const Rat& eps, long K,
                             const Int& Q);

} // namespace diolab
