#include "ringsolve/ring.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace ringsolve {

namespace {

constexpr std::size_t kHardCap = 65536;

void check_size(std::size_t n, const std::string& what) {
    if (n > element_cap())
        fail(ErrorKind::SizeError, what + " has " + std::to_string(n) + " elements, cap is " +
                                       std::to_string(element_cap()));
}

// Multiplies with overflow detection against the element cap.
std::size_t checked_product(std::size_t a, std::size_t b, const std::string& what) {
    if (a != 0 && b > kHardCap * kHardCap / a)
        fail(ErrorKind::SizeError, what + " is too large");
    return a * b;
}

std::string trim(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t')
            out.push_back(c);
    return out;
}

std::string join_specs(const std::vector<std::string>& specs) {
    std::string out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i)
            out += " x ";
        if (specs[i].find(" x ") != std::string::npos)
            out += "(" + specs[i] + ")";
        else
            out += specs[i];
    }
    return out;
}

std::string join_names(const std::vector<std::string>& parts, char open = '(', char close = ')') {
    std::string out(1, open);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ',';
        out += parts[i];
    }
    out += close;
    return out;
}

} // namespace

std::size_t element_cap() {
    if (const char* env = std::getenv("RINGSOLVE_MAX_ELEMS")) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), v);
        if (ec == std::errc() && v > 0)
            return std::min(v, kHardCap);
    }
    return 4096;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        if (k)
            out.emplace_back(d, k);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
    auto f = factorize(n);
    if (f.size() != 1)
        return std::nullopt;
    return f.front();
}

// ---------------------------------------------------------------------------
// FiniteRing

RingPtr FiniteRing::assemble(Parts parts) {
    auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
    FiniteRing& r = *ring;
    r.n_ = parts.names.size();
    const std::size_t n = r.n_;
    if (n == 0 || parts.add.size() != n * n || parts.mul.size() != n * n)
        fail(ErrorKind::InternalError, "ring tables have inconsistent sizes");
    r.add_ = std::move(parts.add);
    r.mul_ = std::move(parts.mul);
    r.rep_ = std::move(parts.rep);
    r.spec_ = std::move(parts.spec);
    r.names_ = std::move(parts.names);
    r.commutative_ = parts.commutative;

    auto row_is_identity = [n](const std::vector<Cell>& t, std::size_t e) {
        for (std::size_t x = 0; x < n; ++x)
            if (t[e * n + x] != x || t[x * n + e] != x)
                return false;
        return true;
    };
    std::optional<std::size_t> zero, one;
    for (std::size_t e = 0; e < n && (!zero || !one); ++e) {
        if (!zero && row_is_identity(r.add_, e))
            zero = e;
        if (!one && row_is_identity(r.mul_, e))
            one = e;
    }
    if (!zero || !one)
        fail(ErrorKind::InternalError, "ring tables lack an identity");
    r.zero_ = Elem{static_cast<std::uint32_t>(*zero)};
    r.one_ = Elem{static_cast<std::uint32_t>(*one)};

    r.neg_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (r.add_[a * n + b] == *zero) {
                r.neg_[a] = static_cast<Cell>(b);
                break;
            }
    r.inv_.assign(n, kNoInverse);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (r.mul_[a * n + b] == *one && r.mul_[b * n + a] == *one) {
                r.inv_[a] = static_cast<std::uint32_t>(b);
                break;
            }
    r.characteristic_ = r.additive_order(r.one_);
    for (std::size_t i = 0; i < n; ++i)
        r.by_name_.emplace(r.names_[i], static_cast<std::uint32_t>(i));
    return ring;
}

Elem FiniteRing::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = one_;
    Elem base = a;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem FiniteRing::times(std::int64_t k, Elem a) const noexcept {
    const std::uint64_t ord = additive_order(a);
    std::int64_t r = k % static_cast<std::int64_t>(ord);
    if (r < 0)
        r += static_cast<std::int64_t>(ord);
    Elem acc = zero_;
    Elem base = a;
    auto e = static_cast<std::uint64_t>(r);
    while (e) {
        if (e & 1)
            acc = add(acc, base);
        base = add(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint64_t FiniteRing::additive_order(Elem a) const noexcept {
    std::uint64_t k = 1;
    Elem x = a;
    while (x != zero_) {
        x = add(x, a);
        ++k;
    }
    return k;
}

std::optional<Elem> FiniteRing::inverse(Elem a) const noexcept {
    if (inv_[a.id] == kNoInverse)
        return std::nullopt;
    return Elem{inv_[a.id]};
}

std::optional<Elem> FiniteRing::find(std::string_view name) const {
    const std::string key = trim(name);
    if (auto it = by_name_.find(key); it != by_name_.end())
        return Elem{it->second};
    if (const auto* zm = std::get_if<rep::ZMod>(&rep_)) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
        if (ec == std::errc() && ptr == key.data() + key.size() && !key.empty()) {
            const auto m = static_cast<long long>(zm->m);
            return Elem{static_cast<std::uint32_t>(((v % m) + m) % m)};
        }
    }
    return std::nullopt;
}

Elem FiniteRing::element(std::uint32_t id) const {
    if (id >= n_)
        fail(ErrorKind::InvalidArgument, "element index " + std::to_string(id) + " out of range");
    return Elem{id};
}

std::vector<Elem> FiniteRing::elements() const {
    std::vector<Elem> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

// ---------------------------------------------------------------------------
// AbelianGroup

GroupPtr AbelianGroup::assemble(Parts parts) {
    auto group = std::shared_ptr<AbelianGroup>(new AbelianGroup());
    AbelianGroup& g = *group;
    g.n_ = parts.names.size();
    const std::size_t n = g.n_;
    if (n == 0 || parts.add.size() != n * n)
        fail(ErrorKind::InternalError, "group table has inconsistent size");
    g.add_ = std::move(parts.add);
    g.rep_ = std::move(parts.rep);
    g.spec_ = std::move(parts.spec);
    g.names_ = std::move(parts.names);
    std::optional<std::size_t> zero;
    for (std::size_t e = 0; e < n && !zero; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = g.add_[e * n + x] == x;
        if (ok)
            zero = e;
    }
    if (!zero)
        fail(ErrorKind::InternalError, "group table lacks an identity");
    g.zero_ = Elem{static_cast<std::uint32_t>(*zero)};
    g.neg_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.add_[a * n + b] == *zero) {
                g.neg_[a] = static_cast<Cell>(b);
                break;
            }
    g.exponent_ = 1;
    for (std::size_t a = 0; a < n; ++a)
        g.exponent_ = std::lcm(g.exponent_, g.order(Elem{static_cast<std::uint32_t>(a)}));
    for (std::size_t i = 0; i < n; ++i)
        g.by_name_.emplace(g.names_[i], static_cast<std::uint32_t>(i));
    return group;
}

Elem AbelianGroup::times(std::int64_t k, Elem a) const noexcept {
    const std::uint64_t ord = order(a);
    std::int64_t r = k % static_cast<std::int64_t>(ord);
    if (r < 0)
        r += static_cast<std::int64_t>(ord);
    Elem acc = zero_;
    Elem base = a;
    auto e = static_cast<std::uint64_t>(r);
    while (e) {
        if (e & 1)
            acc = add(acc, base);
        base = add(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint64_t AbelianGroup::order(Elem a) const noexcept {
    std::uint64_t k = 1;
    Elem x = a;
    while (x != zero_) {
        x = add(x, a);
        ++k;
    }
    return k;
}

std::optional<Elem> AbelianGroup::find(std::string_view name) const {
    const std::string key = trim(name);
    if (auto it = by_name_.find(key); it != by_name_.end())
        return Elem{it->second};
    // Cyclic groups and additive groups of Z/m accept any integer.
    std::optional<std::uint64_t> modulus;
    if (const auto* c = std::get_if<grep::Cyclic>(&rep_))
        modulus = c->order;
    else if (const auto* a = std::get_if<grep::Additive>(&rep_))
        if (const auto* zm = std::get_if<rep::ZMod>(&a->ring->rep()))
            modulus = zm->m;
    if (modulus) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
        if (ec == std::errc() && ptr == key.data() + key.size() && !key.empty()) {
            const auto m = static_cast<long long>(*modulus);
            return Elem{static_cast<std::uint32_t>(((v % m) + m) % m)};
        }
    }
    return std::nullopt;
}

Elem AbelianGroup::element(std::uint32_t id) const {
    if (id >= n_)
        fail(ErrorKind::InvalidArgument, "element index " + std::to_string(id) + " out of range");
    return Elem{id};
}

std::vector<Elem> AbelianGroup::elements() const {
    std::vector<Elem> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

// ---------------------------------------------------------------------------
// Ring constructors

RingPtr build_zmod(std::uint64_t m) {
    if (m < 2)
        fail(ErrorKind::InvalidParameter, "Z/m requires m >= 2, got " + std::to_string(m));
    check_size(m, "Z/" + std::to_string(m));
    FiniteRing::Parts parts;
    parts.rep = rep::ZMod{m};
    parts.spec = "Z/" + std::to_string(m);
    parts.names.resize(m);
    parts.add.resize(m * m);
    parts.mul.resize(m * m);
    for (std::uint64_t i = 0; i < m; ++i) {
        parts.names[i] = std::to_string(i);
        for (std::uint64_t j = 0; j < m; ++j) {
            parts.add[i * m + j] = static_cast<FiniteRing::Cell>((i + j) % m);
            parts.mul[i * m + j] = static_cast<FiniteRing::Cell>((i * j) % m);
        }
    }
    return FiniteRing::assemble(std::move(parts));
}

namespace {

RingPtr poly_quotient_impl(std::uint64_t p, unsigned n, const ModPoly& f, std::string spec) {
    if (!is_prime(p))
        fail(ErrorKind::InvalidParameter, std::to_string(p) + " is not prime");
    if (n < 1)
        fail(ErrorKind::InvalidParameter, "exponent n must be >= 1");
    ModPoly fn = f;
    fn.normalize(0);
    if (fn.degree() < 1)
        fail(ErrorKind::InvalidParameter, "modulus polynomial must have degree >= 1");
    if (fn.coeffs.back() != 1)
        fail(ErrorKind::InvalidParameter, "modulus polynomial is not monic");
    std::uint64_t modulus = 1;
    for (unsigned i = 0; i < n; ++i)
        modulus = checked_product(modulus, p, "coefficient ring");
    for (auto& c : fn.coeffs)
        c %= modulus;
    const auto r = static_cast<std::size_t>(fn.degree());
    std::size_t size = 1;
    for (std::size_t i = 0; i < r; ++i)
        size = checked_product(size, modulus, "polynomial quotient ring");
    check_size(size, "polynomial quotient ring");
    if (spec.empty())
        spec = "Z/" + std::to_string(modulus) + "[X]/(" + format_poly(fn) + ")";

    // Index = sum c_i * M^(r-1-i): lexicographic in (c_0, ..., c_{r-1}).
    std::vector<std::uint64_t> weight(r);
    for (std::size_t i = r; i-- > 0;)
        weight[i] = (i + 1 == r) ? 1 : weight[i + 1] * modulus;
    std::vector<std::uint64_t> digits(size * r);
    for (std::size_t e = 0; e < size; ++e)
        for (std::size_t i = 0; i < r; ++i)
            digits[e * r + i] = (e / weight[i]) % modulus;
    auto index_of = [&](const ModPoly& q) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < q.coeffs.size() && i < r; ++i)
            idx += q.coeffs[i] * weight[i];
        return idx;
    };
    auto poly_of = [&](std::size_t e) {
        ModPoly q(std::vector<std::uint64_t>(digits.begin() + e * r, digits.begin() + (e + 1) * r));
        q.normalize(0);
        return q;
    };

    FiniteRing::Parts parts;
    parts.rep = rep::PolyQuotient{p, n, fn};
    parts.spec = std::move(spec);
    parts.names.resize(size);
    parts.add.resize(size * size);
    parts.mul.resize(size * size);
    for (std::size_t e = 0; e < size; ++e) {
        std::vector<std::string> cs(r);
        for (std::size_t i = 0; i < r; ++i)
            cs[i] = std::to_string(digits[e * r + i]);
        parts.names[e] = join_names(cs, '[', ']');
    }
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < r; ++i)
                idx += ((digits[a * r + i] + digits[b * r + i]) % modulus) * weight[i];
            parts.add[a * size + b] = static_cast<FiniteRing::Cell>(idx);
        }
    // Row a of the multiplication table by walking b in index order: each
    // odometer step adds X^j * a for every digit j it touches (a wrap from
    // M-1 to 0 is also +1 modulo M).
    for (std::size_t a = 0; a < size; ++a) {
        const ModPoly pa = poly_of(a);
        std::vector<std::size_t> shifted(r);
        for (std::size_t j = 0; j < r; ++j) {
            ModPoly xj(std::vector<std::uint64_t>(j + 1, 0));
            xj.coeffs[j] = 1;
            shifted[j] = index_of(mulmod(pa, xj, fn, modulus));
        }
        std::size_t prod = 0;
        std::vector<std::uint64_t> dig(r, 0);
        for (std::size_t b = 0; b < size; ++b) {
            parts.mul[a * size + b] = static_cast<FiniteRing::Cell>(prod);
            for (std::size_t j = r; j-- > 0;) {
                prod = parts.add[prod * size + shifted[j]];
                if (++dig[j] < modulus)
                    break;
                dig[j] = 0;
            }
        }
    }
    return FiniteRing::assemble(std::move(parts));
}

bool is_irreducible_mod_p(const ModPoly& g, std::uint64_t p) {
    const long deg = g.degree();
    if (deg <= 1)
        return deg == 1;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (long d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (long i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::vector<std::uint64_t> h(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t v = t;
            for (long i = 0; i < d; ++i) {
                h[static_cast<std::size_t>(i)] = v % p;
                v /= p;
            }
            h[static_cast<std::size_t>(d)] = 1;
            // remainder of g by monic h
            std::vector<std::uint64_t> rem = g.coeffs;
            for (std::size_t k = rem.size(); k-- > static_cast<std::size_t>(d);) {
                const std::uint64_t c = rem[k] % p;
                if (!c)
                    continue;
                for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
                    auto& slot = rem[k - static_cast<std::size_t>(d) + i];
                    slot = (slot + p * p - (c * h[i]) % p) % p;
                }
            }
            bool zero = true;
            for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
                zero = zero && rem[i] % p == 0;
            if (zero)
                return false;
        }
    }
    return true;
}

} // namespace

RingPtr build_poly_quotient(std::uint64_t p, unsigned n, const ModPoly& f) {
    return poly_quotient_impl(p, n, f, "");
}

RingPtr build_galois_ring(std::uint64_t q, unsigned r) {
    auto pp = prime_power(q);
    if (!pp || q < 2)
        fail(ErrorKind::InvalidParameter, "GR(q,r) requires a prime power q, got " + std::to_string(q));
    if (r < 1)
        fail(ErrorKind::InvalidParameter, "GR(q,r) requires r >= 1");
    const auto [p, n] = *pp;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < r; ++i)
        count = checked_product(count, p, "Galois ring");
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<std::uint64_t> g(r + 1, 0);
        std::uint64_t v = t;
        for (unsigned i = 0; i < r; ++i) {
            g[i] = v % p;
            v /= p;
        }
        g[r] = 1;
        ModPoly gp(g);
        if (is_irreducible_mod_p(gp, p))
            return poly_quotient_impl(p, n, gp, "GR(" + std::to_string(q) + "," + std::to_string(r) + ")");
    }
    fail(ErrorKind::InternalError, "no irreducible polynomial found");
}

RingPtr build_product(const std::vector<RingPtr>& rings) {
    if (rings.empty())
        fail(ErrorKind::InvalidParameter, "product of an empty list of rings");
    const bool comm = rings.front()->commutative();
    std::size_t size = 1;
    std::vector<std::string> specs;
    for (const auto& r : rings) {
        if (r->commutative() != comm)
            fail(ErrorKind::InvalidParameter, "product factors disagree on commutativity");
        size = checked_product(size, r->size(), "product ring");
        specs.push_back(r->spec());
    }
    check_size(size, "product ring");
    const std::size_t k = rings.size();
    std::vector<std::size_t> weight(k);
    for (std::size_t i = k; i-- > 0;)
        weight[i] = (i + 1 == k) ? 1 : weight[i + 1] * rings[i + 1]->size();
    std::vector<std::uint32_t> comp(size * k);
    for (std::size_t e = 0; e < size; ++e)
        for (std::size_t i = 0; i < k; ++i)
            comp[e * k + i] = static_cast<std::uint32_t>((e / weight[i]) % rings[i]->size());

    FiniteRing::Parts parts;
    parts.rep = rep::Product{rings};
    parts.spec = join_specs(specs);
    parts.commutative = comm;
    parts.names.resize(size);
    parts.add.resize(size * size);
    parts.mul.resize(size * size);
    for (std::size_t e = 0; e < size; ++e) {
        std::vector<std::string> names(k);
        for (std::size_t i = 0; i < k; ++i)
            names[i] = rings[i]->name(Elem{comp[e * k + i]});
        parts.names[e] = join_names(names);
    }
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            std::size_t s = 0, m = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const Elem x{comp[a * k + i]}, y{comp[b * k + i]};
                s += rings[i]->add(x, y).id * weight[i];
                m += rings[i]->mul(x, y).id * weight[i];
            }
            parts.add[a * size + b] = static_cast<FiniteRing::Cell>(s);
            parts.mul[a * size + b] = static_cast<FiniteRing::Cell>(m);
        }
    return FiniteRing::assemble(std::move(parts));
}

namespace {

// Exhaustive ring-axiom check over raw tables; returns the failing axiom.
std::optional<std::string> table_ring_violation(const std::vector<std::vector<std::uint32_t>>& add,
                                                const std::vector<std::vector<std::uint32_t>>& mul,
                                                bool commutative) {
    const std::size_t n = add.size();
    if (n == 0 || mul.size() != n)
        return "shape";
    for (std::size_t i = 0; i < n; ++i) {
        if (add[i].size() != n || mul[i].size() != n)
            return "shape";
        for (std::size_t j = 0; j < n; ++j)
            if (add[i][j] >= n || mul[i][j] >= n)
                return "closure";
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (add[add[a][b]][c] != add[a][add[b][c]])
                    return "additive-associativity";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (add[a][b] != add[b][a])
                return "additive-commutativity";
    std::optional<std::size_t> zero;
    for (std::size_t e = 0; e < n && !zero; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = add[e][x] == x;
        if (ok)
            zero = e;
    }
    if (!zero)
        return "additive-identity";
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            found = add[a][b] == *zero;
        if (!found)
            return "additive-inverse";
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                    return "multiplicative-associativity";
    std::optional<std::size_t> one;
    for (std::size_t e = 0; e < n && !one; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = mul[e][x] == x && mul[x][e] == x;
        if (ok)
            one = e;
    }
    if (!one)
        return "multiplicative-identity";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]])
                    return "distributivity";
                if (mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]])
                    return "distributivity";
            }
    if (commutative)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (mul[a][b] != mul[b][a])
                    return "commutativity";
    return std::nullopt;
}

std::vector<FiniteRing::Cell> flatten(const std::vector<std::vector<std::uint32_t>>& t) {
    std::vector<FiniteRing::Cell> out;
    out.reserve(t.size() * t.size());
    for (const auto& row : t)
        for (auto v : row)
            out.push_back(static_cast<FiniteRing::Cell>(v));
    return out;
}

} // namespace

RingPtr build_table_ring(const std::vector<std::vector<std::uint32_t>>& add,
                         const std::vector<std::vector<std::uint32_t>>& mul, bool commutative, std::string spec) {
    check_size(add.size(), "table ring");
    if (auto bad = table_ring_violation(add, mul, commutative))
        fail(ErrorKind::NotARing, "table violates " + *bad);
    FiniteRing::Parts parts;
    parts.rep = rep::Table{};
    parts.spec = std::move(spec);
    parts.commutative = commutative;
    parts.names.resize(add.size());
    for (std::size_t i = 0; i < add.size(); ++i)
        parts.names[i] = std::to_string(i);
    parts.add = flatten(add);
    parts.mul = flatten(mul);
    return FiniteRing::assemble(std::move(parts));
}

RingPtr build_summand(const RingPtr& parent, Elem e) {
    const FiniteRing& R = *parent;
    if (!R.commutative())
        fail(ErrorKind::Unsupported, "summand rings require a commutative ring");
    if (R.mul(e, e) != e)
        fail(ErrorKind::InvalidParameter, R.name(e) + " is not idempotent");
    std::vector<Elem> members;
    for (Elem r : R.elements())
        members.push_back(R.mul(e, r));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const std::size_t n = members.size();
    std::vector<std::int64_t> local(R.size(), -1);
    for (std::size_t i = 0; i < n; ++i)
        local[members[i].id] = static_cast<std::int64_t>(i);

    FiniteRing::Parts parts;
    parts.spec = "proj(" + R.spec() + ";" + R.name(e) + ")";
    parts.names.resize(n);
    parts.add.resize(n * n);
    parts.mul.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        parts.names[i] = R.name(members[i]);
        for (std::size_t j = 0; j < n; ++j) {
            parts.add[i * n + j] = static_cast<FiniteRing::Cell>(local[R.add(members[i], members[j]).id]);
            parts.mul[i * n + j] = static_cast<FiniteRing::Cell>(local[R.mul(members[i], members[j]).id]);
        }
    }
    parts.rep = rep::Summand{parent, e, std::move(members)};
    return FiniteRing::assemble(std::move(parts));
}

// ---------------------------------------------------------------------------
// Groups

GroupPtr build_cyclic_group(std::uint64_t order) {
    if (order < 1)
        fail(ErrorKind::InvalidParameter, "cyclic group order must be >= 1");
    check_size(order, "Z/" + std::to_string(order));
    AbelianGroup::Parts parts;
    parts.rep = grep::Cyclic{order};
    parts.spec = "Z/" + std::to_string(order);
    parts.names.resize(order);
    parts.add.resize(order * order);
    for (std::uint64_t i = 0; i < order; ++i) {
        parts.names[i] = std::to_string(i);
        for (std::uint64_t j = 0; j < order; ++j)
            parts.add[i * order + j] = static_cast<AbelianGroup::Cell>((i + j) % order);
    }
    return AbelianGroup::assemble(std::move(parts));
}

GroupPtr build_group_product(const std::vector<GroupPtr>& groups) {
    if (groups.empty())
        fail(ErrorKind::InvalidParameter, "product of an empty list of groups");
    std::size_t size = 1;
    std::vector<std::string> specs;
    for (const auto& g : groups) {
        size = checked_product(size, g->size(), "product group");
        specs.push_back(g->spec());
    }
    check_size(size, "product group");
    const std::size_t k = groups.size();
    std::vector<std::size_t> weight(k);
    for (std::size_t i = k; i-- > 0;)
        weight[i] = (i + 1 == k) ? 1 : weight[i + 1] * groups[i + 1]->size();
    auto comp = [&](std::size_t e, std::size_t i) {
        return Elem{static_cast<std::uint32_t>((e / weight[i]) % groups[i]->size())};
    };
    AbelianGroup::Parts parts;
    parts.rep = grep::Product{groups};
    parts.spec = join_specs(specs);
    parts.names.resize(size);
    parts.add.resize(size * size);
    for (std::size_t e = 0; e < size; ++e) {
        std::vector<std::string> names(k);
        for (std::size_t i = 0; i < k; ++i)
            names[i] = groups[i]->name(comp(e, i));
        parts.names[e] = join_names(names);
    }
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            std::size_t s = 0;
            for (std::size_t i = 0; i < k; ++i)
                s += groups[i]->add(comp(a, i), comp(b, i)).id * weight[i];
            parts.add[a * size + b] = static_cast<AbelianGroup::Cell>(s);
        }
    return AbelianGroup::assemble(std::move(parts));
}

GroupPtr build_table_group(const std::vector<std::vector<std::uint32_t>>& add, std::string spec) {
    const std::size_t n = add.size();
    check_size(n, "table group");
    auto bad = [](const std::string& axiom) { fail(ErrorKind::InvalidParameter, "group table violates " + axiom); };
    if (n == 0)
        bad("shape");
    for (const auto& row : add) {
        if (row.size() != n)
            bad("shape");
        for (auto v : row)
            if (v >= n)
                bad("closure");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (add[a][b] != add[b][a])
                bad("commutativity");
            for (std::size_t c = 0; c < n; ++c)
                if (add[add[a][b]][c] != add[a][add[b][c]])
                    bad("associativity");
        }
    std::optional<std::size_t> zero;
    for (std::size_t e = 0; e < n && !zero; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = add[e][x] == x;
        if (ok)
            zero = e;
    }
    if (!zero)
        bad("identity");
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            found = add[a][b] == *zero;
        if (!found)
            bad("inverse");
    }
    AbelianGroup::Parts parts;
    parts.rep = grep::Table{};
    parts.spec = std::move(spec);
    parts.names.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        parts.names[i] = std::to_string(i);
    parts.add = flatten(add);
    return AbelianGroup::assemble(std::move(parts));
}

GroupPtr additive_group(const RingPtr& ring) {
    AbelianGroup::Parts parts;
    parts.rep = grep::Additive{ring};
    parts.spec = ring->spec();
    parts.names.resize(ring->size());
    for (Elem e : ring->elements())
        parts.names[e.id] = ring->name(e);
    auto t = ring->add_table();
    parts.add.assign(t.begin(), t.end());
    return AbelianGroup::assemble(std::move(parts));
}

// ---------------------------------------------------------------------------
// Element-level queries

std::vector<Elem> units(const FiniteRing& ring) {
    std::vector<Elem> out;
    for (Elem e : ring.elements())
        if (ring.is_unit(e))
            out.push_back(e);
    return out;
}

std::vector<Elem> idempotents(const FiniteRing& ring) {
    std::vector<Elem> out;
    for (Elem e : ring.elements())
        if (ring.mul(e, e) == e)
            out.push_back(e);
    return out;
}

std::optional<unsigned> nilpotency(const FiniteRing& ring, Elem x) {
    Elem power = x;
    for (unsigned k = 1; k <= ring.size(); ++k) {
        if (power == ring.zero())
            return k;
        power = ring.mul(power, x);
    }
    return std::nullopt;
}

std::uint64_t characteristic(const FiniteRing& ring) { return ring.characteristic(); }

// ---------------------------------------------------------------------------
// Cyclic decomposition

namespace {

struct RawGroup {
    std::size_t n;
    std::vector<std::uint32_t> add;
    std::uint32_t zero;

    std::uint32_t sum(std::uint32_t a, std::uint32_t b) const { return add[a * n + b]; }
    std::uint64_t order(std::uint32_t a) const {
        std::uint64_t k = 1;
        for (std::uint32_t x = a; x != zero; x = sum(x, a))
            ++k;
        return k;
    }
};

// Returns (generator, order) pairs with ascending divisibility. A cyclic
// subgroup of maximal order is a direct summand, so the quotient's
// generators lift to elements of the same order inside their cosets.
std::vector<std::pair<std::uint32_t, std::uint64_t>> decompose_raw(const RawGroup& g,
                                                                   const std::vector<std::uint32_t>& pref) {
    if (g.n == 1)
        return {};
    std::vector<std::uint64_t> ord(g.n);
    for (std::uint32_t a = 0; a < g.n; ++a)
        ord[a] = g.order(a);
    std::uint32_t best = pref.front();
    for (std::uint32_t a : pref)
        if (ord[a] > ord[best])
            best = a;
    const std::uint64_t d = ord[best];

    std::vector<std::uint32_t> sub;
    for (std::uint32_t x = g.zero;;) {
        sub.push_back(x);
        x = g.sum(x, best);
        if (x == g.zero)
            break;
    }
    // Cosets numbered in preference order of their first member.
    std::vector<std::int64_t> coset(g.n, -1);
    std::vector<std::uint32_t> rep;
    for (std::uint32_t a : pref) {
        if (coset[a] >= 0)
            continue;
        const auto id = static_cast<std::int64_t>(rep.size());
        rep.push_back(a);
        for (std::uint32_t h : sub)
            coset[g.sum(a, h)] = id;
    }
    RawGroup q{rep.size(), std::vector<std::uint32_t>(rep.size() * rep.size()),
               static_cast<std::uint32_t>(coset[g.zero])};
    for (std::size_t i = 0; i < rep.size(); ++i)
        for (std::size_t j = 0; j < rep.size(); ++j)
            q.add[i * q.n + j] = static_cast<std::uint32_t>(coset[g.sum(rep[i], rep[j])]);
    std::vector<std::uint32_t> qpref(q.n);
    std::iota(qpref.begin(), qpref.end(), 0u);

    auto out = decompose_raw(q, qpref);
    for (auto& [gen, o] : out) {
        bool lifted = false;
        for (std::uint32_t a : pref)
            if (coset[a] == static_cast<std::int64_t>(gen) && ord[a] == o) {
                gen = a;
                lifted = true;
                break;
            }
        if (!lifted)
            fail(ErrorKind::InternalError, "cyclic decomposition failed to lift a generator");
    }
    out.emplace_back(best, d);
    return out;
}

} // namespace

CyclicDecomposition::CyclicDecomposition(const AbelianGroup& group, std::vector<CyclicFactor> factors)
    : factors_(std::move(factors)) {
    const std::size_t k = factors_.size();
    std::size_t total = 1;
    strides_.assign(k, 1);
    for (std::size_t i = k; i-- > 0;) {
        strides_[i] = total;
        total *= factors_[i].order;
    }
    if (total != group.size())
        fail(ErrorKind::InternalError, "cyclic factors do not multiply to the group order");
    coords_.assign(group.size() * k, 0);
    by_coords_.assign(total, group.zero());
    std::vector<bool> seen(group.size(), false);
    std::vector<std::uint64_t> c(k, 0);
    for (std::size_t t = 0; t < total; ++t) {
        Elem x = group.zero();
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = (t / strides_[i]) % factors_[i].order;
            x = group.add(x, group.times(static_cast<std::int64_t>(c[i]), factors_[i].generator));
        }
        if (seen[x.id])
            fail(ErrorKind::InternalError, "cyclic factors do not form a direct sum");
        seen[x.id] = true;
        by_coords_[t] = x;
        std::copy(c.begin(), c.end(), coords_.begin() + static_cast<std::ptrdiff_t>(x.id * k));
    }
}

std::span<const std::uint64_t> CyclicDecomposition::coords(Elem g) const {
    const std::size_t k = factors_.size();
    return {coords_.data() + g.id * k, k};
}

Elem CyclicDecomposition::compose(std::span<const std::uint64_t> c) const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        t += (c[i] % factors_[i].order) * strides_[i];
    return by_coords_[t];
}

CyclicDecomposition group_decompose_cyclic(const AbelianGroup& group, std::span<const Elem> preference) {
    RawGroup raw{group.size(), {}, group.zero().id};
    auto t = group.add_table();
    raw.add.assign(t.begin(), t.end());
    std::vector<std::uint32_t> pref;
    if (preference.empty()) {
        pref.resize(group.size());
        std::iota(pref.begin(), pref.end(), 0u);
    } else {
        if (preference.size() != group.size())
            fail(ErrorKind::InvalidArgument, "preference order must list every element once");
        for (Elem e : preference)
            pref.push_back(e.id);
    }
    std::vector<CyclicFactor> factors;
    for (auto [g, o] : decompose_raw(raw, pref))
        factors.push_back({Elem{g}, o});
    return CyclicDecomposition(group, std::move(factors));
}

} // namespace ringsolve
