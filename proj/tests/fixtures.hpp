#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ringsolve/ring.hpp"
#include "ringsolve/system.hpp"

namespace fixtures {

using ringsolve::RingPtr;

// F_2[x,y]/(x^2,y^2); element bits (xy, y, x, 1) from most to least significant.
inline RingPtr f2xy() {
    std::vector<std::vector<std::uint32_t>> add(16, std::vector<std::uint32_t>(16)), mul = add;
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = 0; b < 16; ++b) {
            add[a][b] = a ^ b;
            auto bit = [](std::uint32_t v, int i) { return (v >> i) & 1u; };
            const std::uint32_t c1 = bit(a, 0) & bit(b, 0);
            const std::uint32_t cx = (bit(a, 0) & bit(b, 1)) ^ (bit(a, 1) & bit(b, 0));
            const std::uint32_t cy = (bit(a, 0) & bit(b, 2)) ^ (bit(a, 2) & bit(b, 0));
            const std::uint32_t cxy = (bit(a, 0) & bit(b, 3)) ^ (bit(a, 3) & bit(b, 0)) ^ (bit(a, 1) & bit(b, 2)) ^
                                      (bit(a, 2) & bit(b, 1));
            mul[a][b] = c1 | (cx << 1) | (cy << 2) | (cxy << 3);
        }
    return ringsolve::build_table_ring(add, mul, true, "F2[x,y]/(x^2,y^2)");
}

inline RingPtr f4() { return ringsolve::build_poly_quotient(2, 1, ringsolve::ModPoly({1, 1, 1})); }

inline RingPtr gr42() { return ringsolve::build_galois_ring(4, 2); }

// Commutative fixture rings used across suites.
inline std::vector<RingPtr> commutative_rings() {
    using namespace ringsolve;
    return {build_zmod(2), build_zmod(3), build_zmod(4), build_zmod(6), build_zmod(8),
            build_zmod(9), build_zmod(12), f4(), gr42(), f2xy()};
}

inline std::vector<RingPtr> local_rings() {
    using namespace ringsolve;
    return {build_zmod(2), build_zmod(3), build_zmod(4), build_zmod(5), build_zmod(8), build_zmod(9),
            build_zmod(16), f4(), gr42(), f2xy(), build_poly_quotient(2, 1, ModPoly({0, 0, 1}))};
}

// Upper-triangular 2x2 matrices over F_2, element bits (a,b,d) of [[a,b],[0,d]].
inline RingPtr upper_triangular_f2() {
    std::vector<std::vector<std::uint32_t>> add(8, std::vector<std::uint32_t>(8)), mul = add;
    for (std::uint32_t x = 0; x < 8; ++x)
        for (std::uint32_t y = 0; y < 8; ++y) {
            const unsigned a1 = x >> 2, b1 = (x >> 1) & 1, d1 = x & 1;
            const unsigned a2 = y >> 2, b2 = (y >> 1) & 1, d2 = y & 1;
            add[x][y] = x ^ y;
            mul[x][y] = ((a1 & a2) << 2) | (((a1 & b2) ^ (b1 & d2)) << 1) | (d1 & d2);
        }
    return ringsolve::build_table_ring(add, mul, false, "UT2(F2)");
}

inline ringsolve::Elem random_elem(const ringsolve::FiniteRing& R, std::mt19937_64& rng) {
    return ringsolve::Elem{static_cast<std::uint32_t>(rng() % R.size())};
}

// Dense random system; each coefficient is zero with probability ~1/3.
inline ringsolve::LinSystem random_system(const RingPtr& R, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    ringsolve::LinSystem s(R);
    for (std::size_t j = 0; j < cols; ++j)
        s.add_col("x" + std::to_string(j));
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<ringsolve::Term> terms;
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() % 3 != 0)
                terms.push_back({static_cast<std::uint32_t>(j), random_elem(*R, rng)});
        s.add_row("r" + std::to_string(i), std::move(terms), random_elem(*R, rng));
    }
    return s;
}

// Calls f on every rows x cols system over R (coefficients and right-hand
// sides ranging over all of R).
template <class F>
void for_each_system(const RingPtr& R, std::size_t rows, std::size_t cols, F&& f) {
    const std::size_t cells = rows * (cols + 1);
    std::vector<std::uint32_t> v(cells, 0);
    while (true) {
        ringsolve::LinSystem s(R);
        for (std::size_t j = 0; j < cols; ++j)
            s.add_col("x" + std::to_string(j));
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<ringsolve::Term> terms;
            for (std::size_t j = 0; j < cols; ++j)
                terms.push_back({static_cast<std::uint32_t>(j), ringsolve::Elem{v[i * (cols + 1) + j]}});
            s.add_row("r" + std::to_string(i), std::move(terms), ringsolve::Elem{v[i * (cols + 1) + cols]});
        }
        f(s);
        std::size_t k = cells;
        while (k > 0) {
            --k;
            if (++v[k] < R->size())
                break;
            v[k] = 0;
            if (k == 0)
                return;
        }
        if (cells == 0)
            return;
    }
}

} // namespace fixtures
