#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ringsolve/error.hpp"
#include "ringsolve/poly.hpp"

namespace ringsolve {

// An element handle: an index into the owning structure's element table.
// Elements of different rings are not interchangeable; callers keep the
// owning ring alongside.
struct Elem {
    std::uint32_t id = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class FiniteRing;
class AbelianGroup;
using RingPtr = std::shared_ptr<const FiniteRing>;
using GroupPtr = std::shared_ptr<const AbelianGroup>;

// Largest accepted element table. 4096 unless RINGSOLVE_MAX_ELEMS is set;
// never above 65536 since tables are stored as 16-bit cells.
std::size_t element_cap();

namespace rep {
struct ZMod {
    std::uint64_t m;
};
// Z/p^n[X]/(f) with f monic, coefficients lowest degree first.
struct PolyQuotient {
    std::uint64_t p;
    unsigned n;
    ModPoly f;
};
struct Product {
    std::vector<RingPtr> factors;
};
// G x Z/d with (g1,m1)*(g2,m2) = (m2*g1 + m1*g2, m1*m2).
struct Phi {
    GroupPtr group;
    std::uint64_t exponent;
};
// The ideal e*R of an idempotent e, a ring with identity e.
struct Summand {
    RingPtr parent;
    Elem idempotent;
    std::vector<Elem> members; // parent elements, ascending
};
struct Table {};
} // namespace rep

using RingRep = std::variant<rep::ZMod, rep::PolyQuotient, rep::Product, rep::Phi, rep::Summand, rep::Table>;

class FiniteRing {
public:
    using Cell = std::uint16_t;

    struct Parts {
        RingRep rep;
        std::string spec;
        std::vector<std::string> names;
        std::vector<Cell> add; // size*size, row-major
        std::vector<Cell> mul;
        bool commutative = true;
    };

    // Trusted assembly: tables are assumed to satisfy the ring axioms.
    // Locates 0 and 1, derives negation, inverses and the characteristic.
    static RingPtr assemble(Parts parts);

    std::size_t size() const noexcept { return n_; }
    Elem zero() const noexcept { return zero_; }
    Elem one() const noexcept { return one_; }
    std::uint64_t characteristic() const noexcept { return characteristic_; }
    bool commutative() const noexcept { return commutative_; }
    const RingRep& rep() const noexcept { return rep_; }
    const std::string& spec() const noexcept { return spec_; }

    Elem add(Elem a, Elem b) const noexcept { return Elem{add_[a.id * n_ + b.id]}; }
    Elem mul(Elem a, Elem b) const noexcept { return Elem{mul_[a.id * n_ + b.id]}; }
    Elem neg(Elem a) const noexcept { return Elem{neg_[a.id]}; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    // k*1 and k*a as additive multiples; k may be negative.
    Elem from_int(std::int64_t k) const noexcept { return times(k, one_); }
    Elem times(std::int64_t k, Elem a) const noexcept;
    std::uint64_t additive_order(Elem a) const noexcept;

    bool is_unit(Elem a) const noexcept { return inv_[a.id] != kNoInverse; }
    // Two-sided inverse.
    std::optional<Elem> inverse(Elem a) const noexcept;

    const std::string& name(Elem a) const { return names_.at(a.id); }
    // Accepts canonical names; ZMod rings also accept any decimal integer.
    std::optional<Elem> find(std::string_view name) const;
    Elem element(std::uint32_t id) const;
    std::vector<Elem> elements() const;

    std::span<const Cell> add_table() const noexcept { return add_; }
    std::span<const Cell> mul_table() const noexcept { return mul_; }

private:
    static constexpr std::uint32_t kNoInverse = 0xffffffffu;

    FiniteRing() = default;

    std::size_t n_ = 0;
    std::vector<Cell> add_, mul_, neg_;
    std::vector<std::uint32_t> inv_;
    Elem zero_, one_;
    std::uint64_t characteristic_ = 0;
    bool commutative_ = true;
    RingRep rep_;
    std::string spec_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

namespace grep {
struct Cyclic {
    std::uint64_t order;
};
struct Product {
    std::vector<GroupPtr> factors;
};
struct Additive {
    RingPtr ring;
};
struct Table {};
} // namespace grep

using GroupRep = std::variant<grep::Cyclic, grep::Product, grep::Additive, grep::Table>;

class AbelianGroup {
public:
    using Cell = FiniteRing::Cell;

    struct Parts {
        GroupRep rep;
        std::string spec;
        std::vector<std::string> names;
        std::vector<Cell> add;
    };

    static GroupPtr assemble(Parts parts);

    std::size_t size() const noexcept { return n_; }
    Elem zero() const noexcept { return zero_; }
    const GroupRep& rep() const noexcept { return rep_; }
    const std::string& spec() const noexcept { return spec_; }

    Elem add(Elem a, Elem b) const noexcept { return Elem{add_[a.id * n_ + b.id]}; }
    Elem neg(Elem a) const noexcept { return Elem{neg_[a.id]}; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem times(std::int64_t k, Elem a) const noexcept;
    std::uint64_t order(Elem a) const noexcept;
    // Least common multiple of all element orders.
    std::uint64_t exponent() const noexcept { return exponent_; }

    const std::string& name(Elem a) const { return names_.at(a.id); }
    std::optional<Elem> find(std::string_view name) const;
    Elem element(std::uint32_t id) const;
    std::vector<Elem> elements() const;
    std::span<const Cell> add_table() const noexcept { return add_; }

private:
    AbelianGroup() = default;

    std::size_t n_ = 0;
    std::vector<Cell> add_, neg_;
    Elem zero_;
    std::uint64_t exponent_ = 1;
    GroupRep rep_;
    std::string spec_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

// Ring constructors. All throw Error(InvalidParameter) on bad parameters and
// Error(SizeError) when the element count exceeds element_cap().
RingPtr build_zmod(std::uint64_t m);
RingPtr build_poly_quotient(std::uint64_t p, unsigned n, const ModPoly& f);
// GR(q, r) with q = p^n: Z/q[X]/(f) for the first monic irreducible f of
// degree r over F_p (in coefficient order), lifted coefficientwise.
RingPtr build_galois_ring(std::uint64_t q, unsigned r);
RingPtr build_product(const std::vector<RingPtr>& rings);
// Validates the tables exhaustively; throws Error(NotARing) naming the first
// failing axiom.
RingPtr build_table_ring(const std::vector<std::vector<std::uint32_t>>& add,
                         const std::vector<std::vector<std::uint32_t>>& mul, bool commutative,
                         std::string spec = "table");
// e*R for an idempotent e of a commutative ring.
RingPtr build_summand(const RingPtr& parent, Elem e);

GroupPtr build_cyclic_group(std::uint64_t order);
GroupPtr build_group_product(const std::vector<GroupPtr>& groups);
GroupPtr build_table_group(const std::vector<std::vector<std::uint32_t>>& add, std::string spec = "table");
GroupPtr additive_group(const RingPtr& ring);

std::vector<Elem> units(const FiniteRing& ring);
std::vector<Elem> idempotents(const FiniteRing& ring);
// Least n with x^n = 0, or nullopt when x is not nilpotent.
std::optional<unsigned> nilpotency(const FiniteRing& ring, Elem x);
std::uint64_t characteristic(const FiniteRing& ring);

struct CyclicFactor {
    Elem generator;
    std::uint64_t order;
};

// G = <g_1> + ... + <g_k> with order(g_1) | ... | order(g_k). Every element
// has a unique coordinate tuple (c_1..c_k), 0 <= c_i < order(g_i).
class CyclicDecomposition {
public:
    CyclicDecomposition() = default;
    CyclicDecomposition(const AbelianGroup& group, std::vector<CyclicFactor> factors);

    const std::vector<CyclicFactor>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::span<const std::uint64_t> coords(Elem g) const;
    Elem compose(std::span<const std::uint64_t> coords) const;

private:
    std::vector<CyclicFactor> factors_;
    std::vector<std::uint64_t> coords_; // size * rank
    std::vector<std::uint64_t> strides_;
    std::vector<Elem> by_coords_;
};

// Invariant-factor decomposition. Ties between elements of maximal order are
// broken by `preference` (a permutation of the elements); table order when
// empty.
CyclicDecomposition group_decompose_cyclic(const AbelianGroup& group, std::span<const Elem> preference = {});

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime(std::uint64_t n);
// (p, k) with n = p^k, or nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);
// Ascending prime-power factors of n.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

} // namespace ringsolve

template <>
struct std::hash<ringsolve::Elem> {
    std::size_t operator()(ringsolve::Elem e) const noexcept { return std::hash<std::uint32_t>{}(e.id); }
};
