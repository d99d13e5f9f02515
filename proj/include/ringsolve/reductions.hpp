#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ringsolve/structure.hpp"
#include "ringsolve/system.hpp"

namespace ringsolve {

using TargetSystem = std::variant<LinSystem, GroupSystem, NumericalSystem>;
using SolutionMap = std::function<std::vector<Elem>(std::span<const Elem>)>;

// Target is solvable iff the source is (complement_chain: iff it is not).
struct ReductionOutput {
    TargetSystem target;
    SolutionMap backward; // target solution -> source solution; empty when absent
    SolutionMap forward;  // source solution -> target solution; empty when absent
    std::vector<std::string> trace;

    const LinSystem& lin() const { return std::get<LinSystem>(target); }
};

// Additive decomposition of a commutative ring into cyclic summands
// <g_1> + ... + <g_k> with multiplication constants g_i*g_j = sum_y c[i][j][y] g_y.
struct CyclicFrame {
    RingPtr ring;
    RingPtr target; // Z/m, m = characteristic
    CyclicDecomposition dec;
    std::vector<std::uint64_t> c; // index (i*k + j)*k + y
    std::vector<std::uint64_t> multiplier; // m / order(g_y)

    std::size_t rank() const noexcept { return dec.rank(); }
    std::uint64_t constant(std::size_t i, std::size_t j, std::size_t y) const {
        return c[(i * rank() + j) * rank() + y];
    }
};

// `order` lists the ring's elements ascending; empty means table order.
// Generators are picked greedily along this order.
CyclicFrame make_cyclic_frame(const RingPtr& ring, std::span<const Elem> order = {});

// Each variable x_j becomes x_{j,1..k} with x_j = sum_i x_{j,i} g_i; each
// row splits into one congruence per component y, lifted into Z/m by the
// multiplier m/order(g_y).
ReductionOutput ring_to_cyclic(const LinSystem& s, const CyclicFrame& frame);
ReductionOutput ring_to_cyclic(const LinSystem& s, const RingOrder& order);

// G x Z/d, d = exponent, with (g1,m1)*(g2,m2) = (m2*g1 + m1*g2, m1*m2).
// Elements are named "(g;k)" and indexed g*d + k.
RingPtr build_phi_ring(const GroupPtr& group);

ReductionOutput group_to_ring(const GroupSystem& s);

// Variables used on both sides are first split into a left copy and a right
// copy tied by x - x' = 0. Each x_j then becomes integer unknowns x_j^s,
// s in R, with r*x_j -> sum_s (r s) x_j^s and x_j*r -> sum_s (s r) x_j^s.
ReductionOutput twosided_to_numerical(const TwoSidedSystem& s);

// Entrywise e*r over the summand e*R; e must be a primitive idempotent.
LinSystem project_to_local(const LinSystem& s, Elem e);
LinSystem project_to_local(const LinSystem& s, const LocalSummand& summand);

// Equi-solvable system over Z/m with 0/1 coefficients and all-ones RHS.
ReductionOutput normal_form(const LinSystem& s);
bool is_normal_form(const LinSystem& s);

// Over Z/p^k: ((A|b)^T, (0,...,0,p^(k-1))^T). Solvable iff the source is not.
ReductionOutput complement_chain(const LinSystem& s);

// Disjoint union; ids are prefixed "1." and "2.".
LinSystem and_compose(const LinSystem& s1, const LinSystem& s2);
// Over Z/p^k: complement(and(complement s1, complement s2)).
LinSystem or_compose(const LinSystem& s1, const LinSystem& s2);

// Disjunction gadget over Z/m, m = product of the component moduli p_i^n_i
// (distinct primes). Components must be in normal form. Experimental: the
// construction is not known to realize a disjunction.
LinSystem or_compose_general(const std::vector<LinSystem>& components);

// Outer Boolean system over Z/p whose entry (a,b) is the solvability of
// inner[a][b]; every inner system must be in normal form over Z/p.
struct NestedQuery {
    std::vector<std::string> outer_rows, outer_cols;
    std::vector<std::vector<LinSystem>> inner; // [row][col]
};

LinSystem collapse_nested(const NestedQuery& q);

} // namespace ringsolve
