#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ringsolve/ring.hpp"

namespace ringsolve {

// All functions here require a commutative ring and throw
// Error(Unsupported) otherwise.

// True iff the only idempotents are 0 and 1.
bool is_local(const FiniteRing& ring);

// Primitive idempotents: pairwise orthogonal, summing to 1, each e*R local.
// Ascending table order; {1} for a local ring.
std::vector<Elem> base(const FiniteRing& ring);

struct LocalSummand {
    Elem idempotent;
    RingPtr ring;              // e*R with identity e
    std::vector<Elem> embed;   // summand id -> parent element
    std::vector<Elem> project; // parent id -> summand element (e*r)
};

std::vector<LocalSummand> decompose_local(const RingPtr& ring);

struct LocalData {
    std::vector<Elem> maximal_ideal; // ascending
    std::uint64_t q = 0;             // residue field size
    RingPtr residue_field;           // R/m; elements named by their least representative
    std::vector<Elem> projection;    // R id -> residue field element

    bool in_ideal(Elem x) const { return projection[x.id].id == residue_field->zero().id; }
};

// Throws Error(PreconditionViolation) when the ring is not local.
LocalData local_data(const FiniteRing& ring);

// m = pi*R, pi^n = 0 != pi^(n-1). Fields report pi = 0, n = 1.
struct ChainData {
    Elem pi;
    unsigned n = 1;
    std::uint64_t q = 0;
};

std::optional<ChainData> chain_data(const FiniteRing& ring);

// Lexicographically first generating tuple of m of minimal length, searched
// over nonzero elements of m in table order.
std::vector<Elem> minimal_generators_maximal_ideal(const FiniteRing& ring);

// {r : r^q = r}, ascending table order.
std::vector<Elem> teichmuller_set(const FiniteRing& ring);

// Total order of a local ring from a primitive residue alpha and generators
// pi_1..pi_k of m. Each element is written uniquely as
// sum over monomials pi^i of a_i * pi^i with a_i in the Teichmueller set,
// choosing the least admissible coefficient at each monomial in turn;
// elements compare lexicographically by their coefficient tuples.
class RingOrder {
public:
    const RingPtr& ring() const noexcept { return ring_; }
    Elem alpha() const noexcept { return alpha_; }
    const std::vector<Elem>& generators() const noexcept { return pis_; }
    // Teichmueller set in order: 0, then lifts of alpha^0, alpha^1, ...
    const std::vector<Elem>& gamma() const noexcept { return gamma_; }
    // Exponent tuples with nonzero monomial value, lexicographic.
    const std::vector<std::vector<unsigned>>& exponents() const noexcept { return exponents_; }
    const std::vector<Elem>& monomials() const noexcept { return monomials_; }

    // Coefficients as positions in gamma(), one per monomial.
    std::span<const std::uint32_t> representation(Elem x) const;
    Elem evaluate(std::span<const std::uint32_t> coeffs) const;

    std::uint32_t rank(Elem x) const { return rank_[x.id]; }
    bool less(Elem a, Elem b) const { return rank_[a.id] < rank_[b.id]; }
    // Elements in ascending order.
    const std::vector<Elem>& sorted() const noexcept { return sorted_; }

private:
    friend RingOrder canonical_order(const RingPtr&, Elem, std::vector<Elem>);

    RingPtr ring_;
    Elem alpha_;
    std::vector<Elem> pis_, gamma_, monomials_, sorted_;
    std::vector<std::vector<unsigned>> exponents_;
    std::vector<std::uint32_t> repr_; // size * monomial count
    std::vector<std::uint32_t> rank_;
};

// Throws Error(InvalidParameter) when alpha does not project to a generator
// of the residue field's unit group or pis do not generate m.
RingOrder canonical_order(const RingPtr& ring, Elem alpha, std::vector<Elem> pis);

struct OrderParams {
    Elem alpha;
    std::vector<Elem> pis;
};

// First element projecting to a primitive residue; minimal generators of m.
OrderParams canonical_params(const FiniteRing& ring);

struct GaloisParams {
    std::uint64_t p = 0;
    unsigned n = 0;
    unsigned r = 0;

    bool operator==(const GaloisParams&) const = default;
};

std::optional<GaloisParams> is_galois_ring(const FiniteRing& ring);

// R ~= Z/p^n[X]/(f) with iota(a) the unique h of degree < r with h(beta) = a.
struct GaloisRep {
    GaloisParams params;
    std::uint64_t modulus = 0; // p^n
    ModPoly g;                 // monic irreducible over F_p, g(alpha) in m
    ModPoly f;                 // monic over Z/p^n, f = g mod p
    Elem alpha;
    Elem beta;                             // f(beta) = 0
    std::vector<std::vector<std::uint64_t>> iota; // R id -> r coefficients
    std::vector<Elem> eval_table;          // index of coefficient tuple -> R element

    // h(beta) for a coefficient vector of length r (lowest degree first).
    Elem evaluate(std::span<const std::uint64_t> coeffs) const;
};

// Throws Error(PreconditionViolation) when the ring is not a Galois ring.
GaloisRep galois_representation(const RingPtr& ring);

} // namespace ringsolve
