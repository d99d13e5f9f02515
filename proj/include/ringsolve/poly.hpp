#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ringsolve {

// Dense univariate polynomial, lowest degree first. The coefficient type is
// either a residue (std::uint64_t, reduced by the caller's modulus), an
// arbitrary-precision integer/rational, or a ring element.
template <class C>
struct Poly {
    std::vector<C> coeffs;

    Poly() = default;
    explicit Poly(std::vector<C> c) : coeffs(std::move(c)) {}

    // -1 for the zero polynomial; assumes normalized input.
    long degree() const noexcept { return static_cast<long>(coeffs.size()) - 1; }

    // Drop trailing coefficients equal to `zero`.
    void normalize(const C& zero) {
        while (!coeffs.empty() && coeffs.back() == zero)
            coeffs.pop_back();
    }

    bool operator==(const Poly&) const = default;
};

using ModPoly = Poly<std::uint64_t>;

// a*b reduced by the monic polynomial f, coefficients mod `modulus`.
ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t modulus);

// "X^2+3*X+1"; the zero polynomial prints as "0".
std::string format_poly(const ModPoly& p, char var = 'X');

} // namespace ringsolve
