#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ringsolve/ring.hpp"
#include "ringsolve/structure.hpp"

namespace ringsolve {

using BigNat = mpz_class;

// Entries indexed by (row id, column id); ids are kept in the given order.
struct Matrix {
    RingPtr ring;
    std::vector<std::string> rows, cols;
    std::vector<std::vector<Elem>> entries; // [row][col]

    Matrix() = default;
    Matrix(RingPtr r, std::vector<std::string> row_ids, std::vector<std::string> col_ids);
    // Square matrix with ids "1".."n".
    static Matrix square(RingPtr r, std::vector<std::vector<Elem>> entries);
    static Matrix identity(RingPtr r, std::vector<std::string> ids);

    std::size_t num_rows() const noexcept { return rows.size(); }
    std::size_t num_cols() const noexcept { return cols.size(); }
    bool is_square() const noexcept { return rows == cols; }
    Elem& at(std::size_t i, std::size_t j) { return entries[i][j]; }
    Elem at(std::size_t i, std::size_t j) const { return entries[i][j]; }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && entries == o.entries; }
};

// B's rows are matched to A's columns by id. Throws Error(InvalidArgument) on
// different rings or index sets.
Matrix mat_mul(const Matrix& A, const Matrix& B);
// Same product, summing each entry as sum_r r * #{k : A(i,k)B(k,j) = r}.
Matrix mat_mul_counting(const Matrix& A, const Matrix& B);
Matrix mat_add(const Matrix& A, const Matrix& B);
// Square-and-multiply over the bits of e; A^0 = E.
Matrix mat_pow(const Matrix& A, const BigNat& e);

// |m|^(n^2) * prod_{i<n} (q^n - q^i). Throws Error(PreconditionViolation)
// for a non-local ring.
BigNat gl_order_local(const FiniteRing& ring, unsigned n);
// Product over the local summands; commutative rings only.
BigNat gl_order(const RingPtr& ring, unsigned n);

// A^(|GL|) = E per local summand; the inverse is A^(|GL|-1) recombined.
bool is_invertible(const Matrix& A);
std::optional<Matrix> inverse(const Matrix& A);

// Coefficients c_0..c_n of det(X*E - A), c_n = 1.
struct CharPoly {
    RingPtr ring;
    std::vector<Elem> coeffs;
};

// Galois rings only (else Error(PreconditionViolation)): Newton's identities
// over Q[X]/(F) for the integer lift of the entries, reduced mod p^n. A final
// coefficient with a denominator other than 1 raises Error(InternalError).
CharPoly charpoly_galois(const Matrix& A);
// Same, with the representation of A.ring precomputed.
CharPoly charpoly_galois(const GaloisRep& rep, const Matrix& A);
// Componentwise over the local summands, each of which must be a Galois ring
// (else Error(Unsupported)).
CharPoly charpoly(const Matrix& A);
// (-1)^n * chi_A(0), componentwise.
Elem determinant(const Matrix& A);

} // namespace ringsolve
