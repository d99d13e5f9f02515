#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringsolve/reductions.hpp"
#include "ringsolve/structure.hpp"
#include "ringsolve/system.hpp"

namespace ringsolve {

using DenseMatrix = std::vector<std::vector<Elem>>;

// Chain ring with the factorization r = pi^t * u precomputed per element.
class ChainContext {
public:
    explicit ChainContext(RingPtr ring);

    const RingPtr& ring() const noexcept { return ring_; }
    const ChainData& data() const noexcept { return data_; }
    // n for 0.
    unsigned valuation(Elem r) const { return val_[r.id]; }
    Elem unit_part(Elem r) const { return unit_[r.id]; }
    Elem pi_power(unsigned t) const { return pows_.at(t); }
    // pi^(n-1); 1 for a field.
    Elem socle() const { return pows_[data_.n - 1]; }
    bool divides(Elem a, Elem b) const { return val_[a.id] <= val_[b.id]; }
    // Some q with a*q = b; requires divides(a, b).
    Elem quotient(Elem b, Elem a) const;

private:
    RingPtr ring_;
    ChainData data_;
    std::vector<unsigned> val_;
    std::vector<Elem> unit_;
    std::vector<Elem> pows_;
};

// S*A*T = reduced where the first `rank` rows are upper triangular with
// diag[0] | diag[1] | ... and diag[i] dividing every entry of row i; the
// remaining rows are zero. T is a column permutation: column t of `reduced`
// is column perm[t] of A.
struct HermiteResult {
    DenseMatrix reduced;
    DenseMatrix S;
    std::vector<std::uint32_t> perm;
    std::vector<Elem> diag;
    std::size_t rank = 0;
};

// Throws Error(PreconditionViolation) for a ring that is not a chain ring.
HermiteResult hermite_normal_form(const RingPtr& ring, const DenseMatrix& A);
HermiteResult hermite_normal_form(const ChainContext& ctx, const DenseMatrix& A);

enum class Verdict { Solvable, Unsolvable };

// x*(A|b) = (0,...,0,pi^(n-1)) on one reduced chain system.
struct Witness {
    std::size_t component = 0;
    std::string label;
    RingPtr chain_ring;
    std::uint64_t digest = 0;
    std::vector<Elem> coeffs; // one per row of the chain system
};

struct Certificate {
    Verdict verdict = Verdict::Solvable;
    std::vector<Elem> assignment; // Solvable: one value per source column
    std::optional<Witness> witness;
};

bool eval_system(const LinSystem& s, const Certificate& cert);
// True iff x*(A|b) = (0,...,0,pi^(n-1)) for pi from chain_data.
bool check_witness(const ChainContext& ctx, const LinSystem& chain_system, std::span<const Elem> x);

Certificate solve_chain(const LinSystem& s);
Certificate solve_chain(const ChainContext& ctx, const LinSystem& s);

// One reduced system over a chain ring, as produced by a pipeline.
struct ChainComponent {
    std::string label;
    LinSystem system;
};

// Commutative pipeline with per-ring structure cached: local decomposition,
// canonical orders, cyclic frames and chain contexts.
class CommutativeSolver {
public:
    explicit CommutativeSolver(RingPtr ring);

    const RingPtr& ring() const noexcept { return ring_; }
    std::vector<ChainComponent> reduce(const LinSystem& s) const;
    Certificate solve(const LinSystem& s) const;
    bool verify(const LinSystem& s, const Certificate& cert) const;

private:
    struct Summand {
        LocalSummand local;
        RingOrder order;
        CyclicFrame frame;
        ChainContext chain;
    };

    std::vector<ReductionOutput> reductions(const LinSystem& s) const;
    void check_shape(const LinSystem& s) const;

    RingPtr ring_;
    std::vector<Summand> summands_;
};

Certificate solve_commutative(const LinSystem& s);
Certificate solve_group(const GroupSystem& s);
Certificate solve_twosided(const TwoSidedSystem& s);
// Unknowns are integers modulo the group exponent.
Certificate solve_numerical(const NumericalSystem& s);

// Solvable: replays eval_system. Unsolvable: replays the deterministic
// reduction, matches the component digest and checks the witness identity.
// Throws Error(InvalidCertificate) for a malformed certificate.
bool verify_certificate(const LinSystem& s, const Certificate& cert);
bool verify_certificate(const GroupSystem& s, const Certificate& cert);
bool verify_certificate(const TwoSidedSystem& s, const Certificate& cert);
bool verify_certificate(const NumericalSystem& s, const Certificate& cert);

// The reduced chain systems each pipeline solves, in certificate order.
std::vector<ChainComponent> chain_components(const GroupSystem& s);
std::vector<ChainComponent> chain_components(const TwoSidedSystem& s);
std::vector<ChainComponent> chain_components(const NumericalSystem& s);

} // namespace ringsolve
