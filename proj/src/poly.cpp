#include "ringsolve/poly.hpp"

#include <sstream>

namespace ringsolve {

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t modulus) {
    const std::size_t r = f.coeffs.size() - 1;
    if (a.coeffs.empty() || b.coeffs.empty())
        return ModPoly{};
    std::vector<std::uint64_t> prod(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % modulus;
    // X^r = -(f_0 + ... + f_{r-1} X^{r-1})
    for (std::size_t d = prod.size(); d-- > r;) {
        const std::uint64_t c = prod[d];
        if (c == 0)
            continue;
        prod[d] = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const std::uint64_t t = (c * f.coeffs[i]) % modulus;
            prod[d - r + i] = (prod[d - r + i] + modulus - t) % modulus;
        }
    }
    ModPoly out(std::move(prod));
    if (out.coeffs.size() > r)
        out.coeffs.resize(r);
    out.normalize(0);
    return out;
}

std::string format_poly(const ModPoly& p, char var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t d = p.coeffs.size(); d-- > 0;) {
        const std::uint64_t c = p.coeffs[d];
        if (c == 0)
            continue;
        if (!first)
            os << '+';
        first = false;
        if (d == 0) {
            os << c;
            continue;
        }
        if (c != 1)
            os << c << '*';
        os << var;
        if (d > 1)
            os << '^' << d;
    }
    if (first)
        os << '0';
    return os.str();
}

} // namespace ringsolve
