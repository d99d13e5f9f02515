#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ringsolve/linsys.hpp"
#include "ringsolve/matalg.hpp"
#include "ringsolve/reductions.hpp"

namespace ringsolve {

// Ring grammar, factors joined by " x " into a product:
//   Z/<m>                     integers modulo m
//   Z/<p^n>[X]/(<poly>)       polynomial quotient, poly monic in X
//   GR(<p^n>,<r>)             Galois ring
//   phi(<group>)              the ring built from a group by build_phi_ring
//   proj(<ring>;<element>)    the summand e*R of a primitive idempotent
//   table:<path>              JSON object {"add": [[..]], "mul": [[..]], "commutative": bool}
//   (<ring>)                  grouping
// Relative table paths resolve against `base`. Throws ParseError with the
// byte offset of the failure; construction errors propagate unchanged.
RingPtr parse_ring_spec(std::string_view text, const std::filesystem::path& base = {});

// Same shape; Z/<n> is the cyclic group, table:<path> holds {"add": [[..]]}
// and any other factor is the additive group of a ring.
GroupPtr parse_group_spec(std::string_view text, const std::filesystem::path& base = {});

using AnySystem = std::variant<LinSystem, GroupSystem, TwoSidedSystem, NumericalSystem>;

// Line format; blank lines and text after '%' are ignored.
//   ring <spec> | twosided <spec> | group <spec> | numerical <group spec>
//   vars <id> <id> ...
//   eq [<row id>:] <term> + <term> ... = <element>
// Terms are c*x, x*c (right coefficient, two-sided only) or x. An empty left
// side is written as the zero element. A ring header over a non-commutative
// ring yields a two-sided system. Ids that would be ambiguous are written in
// double quotes. Rows without an id are numbered "1", "2", ...
AnySystem parse_system(std::string_view text, const std::filesystem::path& base = {});
std::string write_system(const AnySystem& s);

const std::vector<std::string>& system_cols(const AnySystem& s);
std::string system_domain(const AnySystem& s);

// ring <spec> / rows <ids> / cols <ids> / row <id>: <one element per column>.
Matrix parse_matrix(std::string_view text, const std::filesystem::path& base = {});
std::string write_matrix(const Matrix& m);

enum class Format { Text, Json };

// Text:
//   verdict solvable
//   value <var> = <element>          one per variable, column order
// or
//   verdict unsolvable
//   component <index>
//   label <component label>
//   ring <chain ring spec>
//   digest <decimal>
//   witness <element> ...            names in the chain ring
// Json mirrors the same fields.
std::string write_certificate(const AnySystem& s, const Certificate& cert, Format format);
// Accepts either format. Witness names resolve in the system's chain
// components; an out-of-range component throws Error(InvalidCertificate).
Certificate parse_certificate(std::string_view text, const AnySystem& s);

// outer rows <ids> / outer cols <ids> / inner <row> <col> <system path>
// Inner paths resolve against `base`.
NestedQuery parse_nested(std::string_view text, const std::filesystem::path& base = {});

std::string read_file(const std::filesystem::path& path);

} // namespace ringsolve
