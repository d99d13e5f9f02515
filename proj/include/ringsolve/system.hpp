#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringsolve/ring.hpp"

namespace ringsolve {

struct Term {
    std::uint32_t col;
    Elem coeff;

    bool operator==(const Term&) const = default;
};

// A x = b over a ring. Rows store nonzero coefficients in ascending column
// order; absent entries are 0. Row and column ids are opaque labels.
struct LinSystem {
    RingPtr ring;
    std::vector<std::string> rows, cols;
    std::vector<std::vector<Term>> A;
    std::vector<Elem> b;

    LinSystem() = default;
    explicit LinSystem(RingPtr r) : ring(std::move(r)) {}

    std::size_t num_rows() const noexcept { return rows.size(); }
    std::size_t num_cols() const noexcept { return cols.size(); }

    std::uint32_t add_col(std::string id);
    // Merges repeated columns and drops zero coefficients.
    void add_row(std::string id, std::vector<Term> terms, Elem rhs);
    Elem coeff(std::size_t row, std::uint32_t col) const;
};

// Coefficients are 0/1: each row lists the columns with coefficient 1.
struct GroupSystem {
    GroupPtr group;
    std::vector<std::string> rows, cols;
    std::vector<std::vector<std::uint32_t>> A;
    std::vector<Elem> b;

    GroupSystem() = default;
    explicit GroupSystem(GroupPtr g) : group(std::move(g)) {}

    std::size_t num_rows() const noexcept { return rows.size(); }
    std::size_t num_cols() const noexcept { return cols.size(); }

    std::uint32_t add_col(std::string id);
    // A column listed twice gets coefficient 2, which is rejected.
    void add_row(std::string id, std::vector<std::uint32_t> cols_with_one, Elem rhs);
};

// Row i reads sum_j left(i,j)*x_j + sum_j x_j*right(i,j) = b_i.
struct TwoSidedSystem {
    RingPtr ring;
    std::vector<std::string> rows, cols;
    std::vector<std::vector<Term>> left, right;
    std::vector<Elem> b;

    TwoSidedSystem() = default;
    explicit TwoSidedSystem(RingPtr r) : ring(std::move(r)) {}

    std::size_t num_rows() const noexcept { return rows.size(); }
    std::size_t num_cols() const noexcept { return cols.size(); }

    std::uint32_t add_col(std::string id);
    void add_row(std::string id, std::vector<Term> left_terms, std::vector<Term> right_terms, Elem rhs);
};

// sum_j k_j * g_ij = b_i with group-element coefficients g_ij and integer
// unknowns k_j taken modulo the group exponent d. Values are elements of
// `scalars` = Z/d.
struct NumericalSystem {
    GroupPtr group;
    RingPtr scalars;
    std::vector<std::string> rows, cols;
    std::vector<std::vector<Term>> A; // coefficients are group elements
    std::vector<Elem> b;

    std::size_t num_rows() const noexcept { return rows.size(); }
    std::size_t num_cols() const noexcept { return cols.size(); }

    std::uint32_t add_col(std::string id);
    void add_row(std::string id, std::vector<Term> terms, Elem rhs);
};

// Each throws Error(InvalidArgument) unless the assignment has one value per
// column.
bool eval_system(const LinSystem& s, std::span<const Elem> x);
bool eval_system(const GroupSystem& s, std::span<const Elem> x);
bool eval_system(const TwoSidedSystem& s, std::span<const Elem> x);
bool eval_system(const NumericalSystem& s, std::span<const Elem> x);

// Rings with identical specs, tables and names.
bool same_ring(const FiniteRing& a, const FiniteRing& b);

// FNV-1a over a canonical text rendering.
std::uint64_t digest(const LinSystem& s);

} // namespace ringsolve
