#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diolab/cf.hpp"
#include "diolab/singular.hpp"

namespace diolab {

// Linear-form distances for a small real matrix: best-approximation vectors,
// dyadic Dirichlet solvability, half-integer grid targets, and transference
// lower-bound certificates. Desk scale throughout: n + m <= 5.

struct MatrixSpec {
    long n = 0, m = 0;                                // rows, columns
    std::vector<std::vector<RealNumberSpec>> entries; // n rows of m specs
    // Caller-declared: the entries together with 1 admit no integer relation.
    // Cannot be verified, only falsified (see rank_suspect_error).
    bool rank_assumption = true;

    static MatrixSpec from_json_text(const std::string& text, const Config& cfg);
};

class MatrixForms {
public:
    explicit MatrixForms(const MatrixSpec& spec,
                         const Config& cfg = Config::from_env());

    long n() const { return n_; }
    long m() const { return m_; }
    const MatrixSpec& spec() const { return spec_; }

    // Enclosure of max_j ||sum_i y_i a_ij||, width <= budget. Throws
    // rank_suspect_error when the value pins to 0 below width 1e-30.
    RatInterval form_dist(const std::vector<Int>& y, const Rat& budget);

    // Enclosure of max_i ||sum_j a_ij q_j - x_i||, width <= budget.
    RatInterval target_dist(const std::vector<Int>& q, const std::vector<Rat>& x,
                            const Rat& budget);

    // Single evaluations at a fixed expansion depth, no width goal.
    RatInterval form_at_depth(const std::vector<Int>& y, long depth);
    RatInterval target_at_depth(const std::vector<Int>& q,
                                const std::vector<Rat>& x, long depth);

    // Per-entry value enclosure at the given depth.
    RatInterval entry_enclosure(long i, long j, long depth);

    // Depth at which every entry resolves values at the given integer scale.
    long base_depth(const Int& scale) const;
    long depth_cap() const { return depth_cap_; }

    const Config& config() const { return cfg_; }

private:
    MatrixSpec spec_;
    Config cfg_;
    long n_ = 0, m_ = 0;
    std::vector<std::unique_ptr<Alpha>> al_; // row-major n x m; Alpha is pinned
    long depth_cap_ = 0;

    Alpha& at(long i, long j) { return *al_[i * m_ + j]; }
};

struct BestApprox {
    std::vector<Int> y;
    Int Y;         // sup norm of y
    RatInterval M; // form distance, separated from its neighbours
};

struct BestApproxSeq {
    long n = 0, m = 0;
    std::vector<BestApprox> items;
    bool rank_assumption = true;
    bool doubling_ok = false; // Y_{i+3^{m+n}} >= 2 Y_{i+1} wherever defined
};

// Inductive minimal-form chain over sup-norm shells up to Y_max. Within a
// shell candidates are ordered lexicographically and only vectors whose first
// nonzero coordinate is positive are tested; exact ties keep the earlier
// candidate. Certifies along the way that every skipped y has form distance
// >= the current minimum.
BestApproxSeq best_approx_sequence(MatrixForms& A, const Int& y_max);

// For each ell <= N decides exhaustively whether some integer vector x with
// 0 < |x| <= 2^ell reaches max_i ||(Ax)_i|| <= c 2^{-ell m / n}. Lattices
// larger than the materialization budget truncate the report to the computed
// prefix. The block field of the report stays empty: there is no single
// expansion to attribute scales to.
DensityReport matrix_dirichlet_density(MatrixForms& A, const Rat& c, long N);

struct GridSet {
    std::vector<std::vector<Rat>> centers; // |y_h|^n points in [0,1)^n
    Rat radius; // rational lower bound of (1 - 2 delta) / (2 |y|_2)
    long h = 0; // dominant coordinate, smallest index of max |y_i|
    Int y_h_abs;
};

// Half-integer target grid for the vector y: every center w satisfies
// ||y . w|| = 1/2 exactly (verified), centers are pairwise >= 1/|y_h| apart,
// and every point of the radius-ball around a center keeps ||y . x|| > delta.
// Sup norm picks nothing here: the radius uses the Euclidean norm of y.
GridSet grid_set(const std::vector<Int>& y, const Rat& delta,
                 const Config& cfg = Config::from_env());

// Certified check that all centers are pairwise at least bound apart in the
// Euclidean metric, via the lattice structure of the grid rather than an
// all-pairs scan.
bool grid_separated(const GridSet& gs, const Rat& bound);

// Largest 1-based k with Y_k^n <= (2m/delta)^m |q|^m, which then also has
// Y_{k+1} above that bound. Throws budget_error when the sequence is too
// short to bracket.
long transference_index(const BestApproxSeq& bas, const Rat& delta,
                        const Int& q_sup);

struct TransferenceCertificate {
    long k = 0;      // selected index into the best-approximation chain
    Rat lower_bound; // certified rational bound for |q|^{m/n} ||Aq - x||
    RatInterval slack;
    // M(y_k) <= Y_{k+1}^{-n/m}: certified true / certified false, or
    // unresolved at the available depth.
    std::optional<bool> decay_ok;
    bool rank_assumption = true;
};

// Certifies |q|^{m/n} ||Aq - x|| >= delta / (2n (2m/delta)^{m/n}) for a
// rational target x with ||y_k . x|| >= delta, using only exact rational
// power comparisons.
TransferenceCertificate transference_certificate(MatrixForms& A,
                                                 const BestApproxSeq& bas,
                                                 const Rat& delta,
                                                 const std::vector<Int>& q,
                                                 const std::vector<Rat>& x);

// Limit constant of the certificate as delta -> 1/2: (4n)^{-1} (4m)^{-m/n}.
// A point interval whenever the root is rational.
RatInterval transference_constant(long n, long m, unsigned prec = 96);

} // namespace diolab
