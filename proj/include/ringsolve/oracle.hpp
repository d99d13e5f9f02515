#pragma once

// Naive reference procedures. Nothing here calls into the structure, solver
// or reduction code; only ring arithmetic and the system data model are
// shared.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ringsolve/ring.hpp"
#include "ringsolve/system.hpp"

namespace ringsolve::oracle {

// Enumeration budget for brute_force_solve and enumerate_gl.
inline constexpr std::uint64_t kSearchCap = 10'000'000;
inline constexpr std::size_t kCofactorCap = 6;

struct OracleReport {
    bool solvable = false;
    std::vector<Elem> solution; // first solution in enumeration order
    std::uint64_t checked = 0;  // assignments tried
};

// Odometer over all assignments, first column most significant. Throws
// Error(CapacityError) when |R|^|J| exceeds kSearchCap.
OracleReport brute_force_solve(const LinSystem& s);
OracleReport brute_force_solve(const GroupSystem& s);
OracleReport brute_force_solve(const TwoSidedSystem& s);
// Unknowns range over 0..d-1, d = |scalars|.
OracleReport brute_force_solve(const NumericalSystem& s);

// Exact verdict for a system over Z/m of any size: integer column echelon
// form of the lattice spanned by the columns of A and m*Z^rows. `checked`
// counts pivot steps. Throws Error(Unsupported) for other rings.
OracleReport lattice_solve(const LinSystem& s);

// Closure of the image {A*x}: the sumset of the per-column images, one
// column at a time. Exact for any number of unknowns; throws
// Error(CapacityError) when |R|^rows exceeds kSearchCap. `checked` counts
// reached images.
OracleReport image_solve(const LinSystem& s);
OracleReport image_solve(const GroupSystem& s);
OracleReport image_solve(const TwoSidedSystem& s);
OracleReport image_solve(const NumericalSystem& s);

// Brute force when the assignment space fits, then image closure, then (for
// Z/m only) the lattice oracle.
OracleReport decide(const LinSystem& s);
OracleReport decide(const GroupSystem& s);
OracleReport decide(const TwoSidedSystem& s);
OracleReport decide(const NumericalSystem& s);

using ElemMatrix = std::vector<std::vector<Elem>>;

// Laplace expansion along the first row. Square, commutative ring, at most
// kCofactorCap rows; larger inputs throw Error(CapacityError).
Elem det_cofactor(const FiniteRing& ring, const ElemMatrix& A);
// det(X*E - A) with polynomial entries; coefficients c_0..c_n, c_n = 1.
std::vector<Elem> charpoly_cofactor(const FiniteRing& ring, const ElemMatrix& A);

// Number of n x n matrices B for which some C has B*C = E. For a finite ring
// that is the size of GL_n. Throws Error(CapacityError) past kSearchCap.
mpz_class enumerate_gl(const FiniteRing& ring, unsigned n);

struct AxiomReport {
    bool ok = true;
    std::string axiom; // first violated axiom when !ok
};

using Table = std::vector<std::vector<std::uint32_t>>;

AxiomReport check_ring_axioms(const Table& add, const Table& mul, bool commutative);
AxiomReport check_ring_axioms(const FiniteRing& ring);
AxiomReport check_group_axioms(const Table& add);
AxiomReport check_group_axioms(const AbelianGroup& group);

} // namespace ringsolve::oracle
