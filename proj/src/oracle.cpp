#include "ringsolve/oracle.hpp"

#include <functional>
#include <tuple>
#include <unordered_map>

namespace ringsolve::oracle {

namespace {

// base^exp, or nullopt once it passes cap.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base)
            return std::nullopt;
        v *= base;
    }
    if (v > cap)
        return std::nullopt;
    return v;
}

OracleReport enumerate(std::size_t vars, std::size_t domain, const std::function<bool(const std::vector<Elem>&)>& ok) {
    if (!bounded_power(domain, vars, kSearchCap))
        fail(ErrorKind::CapacityError, "search space " + std::to_string(domain) + "^" + std::to_string(vars) +
                                           " exceeds " + std::to_string(kSearchCap));
    OracleReport r;
    std::vector<Elem> x(vars, Elem{0});
    while (true) {
        ++r.checked;
        if (ok(x)) {
            r.solvable = true;
            r.solution = x;
            return r;
        }
        std::size_t k = vars;
        while (k > 0) {
            --k;
            if (++x[k].id < domain)
                break;
            x[k].id = 0;
            if (k == 0)
                return r;
        }
        if (vars == 0)
            return r;
    }
}

std::uint64_t zmod_modulus(const FiniteRing& ring) {
    const auto* z = std::get_if<rep::ZMod>(&ring.rep());
    if (!z)
        fail(ErrorKind::Unsupported, "lattice oracle needs Z/m, got " + ring.spec());
    return z->m;
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> egcd(std::int64_t a, std::int64_t b) {
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        a = std::exchange(b, a - q * b);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (a < 0)
        return {-a, -s0, -t0};
    return {a, s0, t0};
}

struct Generator {
    std::vector<std::int64_t> v; // image in Z/m^rows
    std::vector<std::int64_t> c; // column combination producing v
};

} // namespace

OracleReport brute_force_solve(const LinSystem& s) {
    const FiniteRing& R = *s.ring;
    return enumerate(s.num_cols(), R.size(), [&](const std::vector<Elem>& x) {
        for (std::size_t i = 0; i < s.num_rows(); ++i) {
            Elem acc = R.zero();
            for (const Term& t : s.A[i])
                acc = R.add(acc, R.mul(t.coeff, x[t.col]));
            if (acc != s.b[i])
                return false;
        }
        return true;
    });
}

OracleReport brute_force_solve(const GroupSystem& s) {
    const AbelianGroup& G = *s.group;
    return enumerate(s.num_cols(), G.size(), [&](const std::vector<Elem>& x) {
        for (std::size_t i = 0; i < s.num_rows(); ++i) {
            Elem acc = G.zero();
            for (auto c : s.A[i])
                acc = G.add(acc, x[c]);
            if (acc != s.b[i])
                return false;
        }
        return true;
    });
}

OracleReport brute_force_solve(const TwoSidedSystem& s) {
    const FiniteRing& R = *s.ring;
    return enumerate(s.num_cols(), R.size(), [&](const std::vector<Elem>& x) {
        for (std::size_t i = 0; i < s.num_rows(); ++i) {
            Elem acc = R.zero();
            for (const Term& t : s.left[i])
                acc = R.add(acc, R.mul(t.coeff, x[t.col]));
            for (const Term& t : s.right[i])
                acc = R.add(acc, R.mul(x[t.col], t.coeff));
            if (acc != s.b[i])
                return false;
        }
        return true;
    });
}

OracleReport brute_force_solve(const NumericalSystem& s) {
    const AbelianGroup& G = *s.group;
    return enumerate(s.num_cols(), s.scalars->size(), [&](const std::vector<Elem>& x) {
        for (std::size_t i = 0; i < s.num_rows(); ++i) {
            Elem acc = G.zero();
            for (const Term& t : s.A[i])
                acc = G.add(acc, G.times(static_cast<std::int64_t>(x[t.col].id), t.coeff));
            if (acc != s.b[i])
                return false;
        }
        return true;
    });
}

OracleReport lattice_solve(const LinSystem& s) {
    const std::int64_t m = static_cast<std::int64_t>(zmod_modulus(*s.ring));
    const std::size_t rows = s.num_rows(), cols = s.num_cols();
    auto mod = [m](std::int64_t a) { return ((a % m) + m) % m; };

    std::vector<Generator> gens(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        gens[j].v.assign(rows, 0);
        gens[j].c.assign(cols, 0);
        gens[j].c[j] = 1;
    }
    for (std::size_t i = 0; i < rows; ++i)
        for (const Term& t : s.A[i])
            gens[t.col].v[i] = t.coeff.id;

    // u <- s*u + t*w, w <- (b/g)*u - (a/g)*w, applied to both v and c.
    auto combine = [&](Generator& u, Generator& w, std::size_t row) {
        const std::int64_t a = u.v[row], b = w.v[row];
        const auto [g, x, y] = egcd(a, b);
        const std::int64_t p = b / g, q = a / g;
        for (std::size_t k = 0; k < rows; ++k) {
            const std::int64_t uk = u.v[k], wk = w.v[k];
            u.v[k] = mod(mod(x) * uk + mod(y) * wk);
            w.v[k] = mod(mod(p) * uk - mod(q) * wk);
        }
        for (std::size_t k = 0; k < cols; ++k) {
            const std::int64_t uk = u.c[k], wk = w.c[k];
            u.c[k] = mod(mod(x) * uk + mod(y) * wk);
            w.c[k] = mod(mod(p) * uk - mod(q) * wk);
        }
    };

    OracleReport r;
    std::vector<std::int64_t> residual(rows), x(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        residual[i] = s.b[i].id;

    for (std::size_t i = 0; i < rows; ++i) {
        std::size_t pivot = gens.size();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (gens[k].v[i] == 0)
                continue;
            ++r.checked;
            if (pivot == gens.size())
                pivot = k;
            else
                combine(gens[pivot], gens[k], i);
        }
        if (pivot == gens.size()) {
            if (residual[i] != 0)
                return r;
            continue;
        }
        // Fold in m*e_i: the pivot becomes s*P with entry g = gcd(h, m) and
        // (m/g)*P stays behind with a zero in this row.
        Generator P = std::move(gens[pivot]);
        const auto [g, sc, unused] = egcd(P.v[i], m);
        (void)unused;
        Generator rest = P;
        for (auto& e : rest.v)
            e = mod(e * (m / g));
        for (auto& e : rest.c)
            e = mod(e * (m / g));
        gens[pivot] = std::move(rest);
        for (auto& e : P.v)
            e = mod(e * mod(sc));
        for (auto& e : P.c)
            e = mod(e * mod(sc));
        P.v[i] = g;
        if (residual[i] % g != 0)
            return r;
        const std::int64_t k = residual[i] / g;
        for (std::size_t row = 0; row < rows; ++row)
            residual[row] = mod(residual[row] - k * P.v[row]);
        for (std::size_t col = 0; col < cols; ++col)
            x[col] = mod(x[col] + k * P.c[col]);
    }

    r.solvable = true;
    for (auto v : x)
        r.solution.push_back(Elem{static_cast<std::uint32_t>(v)});
    const FiniteRing& R = *s.ring;
    for (std::size_t i = 0; i < rows; ++i) {
        Elem acc = R.zero();
        for (const Term& t : s.A[i])
            acc = R.add(acc, R.mul(t.coeff, r.solution[t.col]));
        if (acc != s.b[i])
            fail(ErrorKind::InternalError, "lattice oracle produced a non-solution");
    }
    return r;
}

namespace {

// Image vectors are coded in base `width` (the target structure's size),
// row 0 least significant.
struct ImageSpace {
    std::size_t rows, width;
    std::function<std::uint32_t(std::uint32_t, std::uint32_t)> add;

    std::uint64_t plus(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, scale = 1;
        for (std::size_t i = 0; i < rows; ++i) {
            const auto s = add(static_cast<std::uint32_t>(a % width), static_cast<std::uint32_t>(b % width));
            out += s * scale;
            scale *= width;
            a /= width;
            b /= width;
        }
        return out;
    }
};

// column_image(j, v) = code of the contribution of x_j = v.
OracleReport image_closure(const ImageSpace& space, std::size_t cols, std::size_t domain, std::uint64_t zero_code,
                           const std::function<std::uint64_t(std::size_t, std::uint32_t)>& column_image,
                           std::uint64_t target) {
    if (!bounded_power(space.width, space.rows, kSearchCap))
        fail(ErrorKind::CapacityError, "image space " + std::to_string(space.width) + "^" + std::to_string(space.rows) +
                                           " exceeds " + std::to_string(kSearchCap));
    // layers[j][code] = (value of x_j, code before column j)
    std::vector<std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint64_t>>> layers(cols);
    std::vector<std::uint64_t> reached{zero_code};
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<std::uint64_t> images;
        std::unordered_map<std::uint64_t, std::uint32_t> seen;
        for (std::uint32_t v = 0; v < domain; ++v)
            if (auto code = column_image(j, v); seen.emplace(code, v).second)
                images.push_back(code);
        std::vector<std::uint64_t> next;
        for (auto prev : reached)
            for (auto img : images) {
                const auto code = space.plus(prev, img);
                if (layers[j].emplace(code, std::pair{seen[img], prev}).second)
                    next.push_back(code);
            }
        reached = std::move(next);
    }
    OracleReport r;
    r.checked = reached.size();
    if (cols == 0) {
        r.solvable = target == zero_code;
        return r;
    }
    if (!layers[cols - 1].count(target))
        return r;
    r.solvable = true;
    r.solution.assign(cols, Elem{0});
    std::uint64_t code = target;
    for (std::size_t j = cols; j-- > 0;) {
        const auto [v, prev] = layers[j].at(code);
        r.solution[j] = Elem{v};
        code = prev;
    }
    return r;
}

std::uint64_t encode(const std::vector<Elem>& v, std::size_t width) {
    std::uint64_t code = 0;
    for (std::size_t i = v.size(); i-- > 0;)
        code = code * width + v[i].id;
    return code;
}

template <class System>
bool assignment_fits(const System& s, std::size_t domain) {
    return bounded_power(domain, s.num_cols(), kSearchCap).has_value();
}

template <class System>
bool image_fits(const System& s, std::size_t width) {
    return bounded_power(width, s.num_rows(), kSearchCap).has_value();
}

} // namespace

OracleReport image_solve(const LinSystem& s) {
    const FiniteRing& R = *s.ring;
    const ImageSpace space{s.num_rows(), R.size(), [&R](std::uint32_t a, std::uint32_t b) {
                               return R.add(Elem{a}, Elem{b}).id;
                           }};
    std::vector<std::vector<Term>> by_col(s.num_cols());
    for (std::size_t i = 0; i < s.num_rows(); ++i)
        for (const Term& t : s.A[i])
            by_col[t.col].push_back({static_cast<std::uint32_t>(i), t.coeff});
    const std::vector<Elem> zeros(s.num_rows(), R.zero());
    return image_closure(
        space, s.num_cols(), R.size(), encode(zeros, R.size()),
        [&](std::size_t j, std::uint32_t v) {
            auto img = zeros;
            for (const Term& t : by_col[j])
                img[t.col] = R.mul(t.coeff, Elem{v});
            return encode(img, R.size());
        },
        encode(s.b, R.size()));
}

OracleReport image_solve(const GroupSystem& s) {
    const AbelianGroup& G = *s.group;
    const ImageSpace space{s.num_rows(), G.size(), [&G](std::uint32_t a, std::uint32_t b) {
                               return G.add(Elem{a}, Elem{b}).id;
                           }};
    std::vector<std::vector<std::uint32_t>> by_col(s.num_cols());
    for (std::size_t i = 0; i < s.num_rows(); ++i)
        for (auto c : s.A[i])
            by_col[c].push_back(static_cast<std::uint32_t>(i));
    const std::vector<Elem> zeros(s.num_rows(), G.zero());
    return image_closure(
        space, s.num_cols(), G.size(), encode(zeros, G.size()),
        [&](std::size_t j, std::uint32_t v) {
            auto img = zeros;
            for (auto i : by_col[j])
                img[i] = Elem{v};
            return encode(img, G.size());
        },
        encode(s.b, G.size()));
}

OracleReport image_solve(const TwoSidedSystem& s) {
    const FiniteRing& R = *s.ring;
    const ImageSpace space{s.num_rows(), R.size(), [&R](std::uint32_t a, std::uint32_t b) {
                               return R.add(Elem{a}, Elem{b}).id;
                           }};
    const std::vector<Elem> zeros(s.num_rows(), R.zero());
    return image_closure(
        space, s.num_cols(), R.size(), encode(zeros, R.size()),
        [&](std::size_t j, std::uint32_t v) {
            auto img = zeros;
            for (std::size_t i = 0; i < s.num_rows(); ++i) {
                for (const Term& t : s.left[i])
                    if (t.col == j)
                        img[i] = R.add(img[i], R.mul(t.coeff, Elem{v}));
                for (const Term& t : s.right[i])
                    if (t.col == j)
                        img[i] = R.add(img[i], R.mul(Elem{v}, t.coeff));
            }
            return encode(img, R.size());
        },
        encode(s.b, R.size()));
}

OracleReport image_solve(const NumericalSystem& s) {
    const AbelianGroup& G = *s.group;
    const ImageSpace space{s.num_rows(), G.size(), [&G](std::uint32_t a, std::uint32_t b) {
                               return G.add(Elem{a}, Elem{b}).id;
                           }};
    std::vector<std::vector<Term>> by_col(s.num_cols());
    for (std::size_t i = 0; i < s.num_rows(); ++i)
        for (const Term& t : s.A[i])
            by_col[t.col].push_back({static_cast<std::uint32_t>(i), t.coeff});
    const std::vector<Elem> zeros(s.num_rows(), G.zero());
    return image_closure(
        space, s.num_cols(), s.scalars->size(), encode(zeros, G.size()),
        [&](std::size_t j, std::uint32_t v) {
            auto img = zeros;
            for (const Term& t : by_col[j])
                img[t.col] = G.times(static_cast<std::int64_t>(v), t.coeff);
            return encode(img, G.size());
        },
        encode(s.b, G.size()));
}

OracleReport decide(const LinSystem& s) {
    if (assignment_fits(s, s.ring->size()))
        return brute_force_solve(s);
    if (image_fits(s, s.ring->size()))
        return image_solve(s);
    return lattice_solve(s);
}

OracleReport decide(const GroupSystem& s) {
    if (assignment_fits(s, s.group->size()))
        return brute_force_solve(s);
    return image_solve(s);
}

OracleReport decide(const TwoSidedSystem& s) {
    if (assignment_fits(s, s.ring->size()))
        return brute_force_solve(s);
    return image_solve(s);
}

OracleReport decide(const NumericalSystem& s) {
    if (assignment_fits(s, s.scalars->size()))
        return brute_force_solve(s);
    return image_solve(s);
}

namespace {

void require_square(const FiniteRing& ring, const ElemMatrix& A) {
    if (!ring.commutative())
        fail(ErrorKind::PreconditionViolation, "cofactor expansion needs a commutative ring");
    for (const auto& row : A)
        if (row.size() != A.size())
            fail(ErrorKind::InvalidArgument, "matrix is not square");
    if (A.size() > kCofactorCap)
        fail(ErrorKind::CapacityError, "cofactor expansion limited to " + std::to_string(kCofactorCap) + " rows");
}

using Poly = std::vector<Elem>;

Poly poly_mul(const FiniteRing& R, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, R.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = R.add(c[i + j], R.mul(a[i], b[j]));
    return c;
}

Poly poly_add(const FiniteRing& R, Poly a, const Poly& b, bool negate) {
    if (a.size() < b.size())
        a.resize(b.size(), R.zero());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = negate ? R.sub(a[i], b[i]) : R.add(a[i], b[i]);
    return a;
}

template <class T, class Mul, class Add>
T laplace(const std::vector<std::vector<T>>& M, const T& one, const Mul& mul, const Add& add) {
    const std::size_t n = M.size();
    if (n == 0)
        return one;
    T acc{};
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<T>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<T> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(M[i][k]);
            minor.push_back(std::move(row));
        }
        T term = mul(M[0][j], laplace(minor, one, mul, add));
        if (first) {
            acc = j % 2 ? add(T{}, term, true) : term;
            first = false;
        } else {
            acc = add(acc, term, j % 2 == 1);
        }
    }
    return acc;
}

} // namespace

Elem det_cofactor(const FiniteRing& ring, const ElemMatrix& A) {
    require_square(ring, A);
    // Elements wrapped as constant polynomials keep one expansion routine.
    std::vector<std::vector<Poly>> M;
    for (const auto& row : A) {
        std::vector<Poly> r;
        for (Elem e : row)
            r.push_back({e});
        M.push_back(std::move(r));
    }
    const Poly d = laplace<Poly>(
        M, Poly{ring.one()}, [&](const Poly& a, const Poly& b) { return poly_mul(ring, a, b); },
        [&](const Poly& a, const Poly& b, bool neg) { return poly_add(ring, a, b, neg); });
    return d.empty() ? ring.zero() : d[0];
}

std::vector<Elem> charpoly_cofactor(const FiniteRing& ring, const ElemMatrix& A) {
    require_square(ring, A);
    const std::size_t n = A.size();
    std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = i == j ? Poly{ring.neg(A[i][j]), ring.one()} : Poly{ring.neg(A[i][j])};
    Poly c = laplace<Poly>(
        M, Poly{ring.one()}, [&](const Poly& a, const Poly& b) { return poly_mul(ring, a, b); },
        [&](const Poly& a, const Poly& b, bool neg) { return poly_add(ring, a, b, neg); });
    c.resize(n + 1, ring.zero());
    return c;
}

mpz_class enumerate_gl(const FiniteRing& ring, unsigned n) {
    const std::size_t q = ring.size();
    if (!bounded_power(q, static_cast<std::size_t>(n) * n, kSearchCap))
        fail(ErrorKind::CapacityError, "GL enumeration space exceeds " + std::to_string(kSearchCap));
    const std::size_t vectors = *bounded_power(q, n, kSearchCap);
    // Unit vectors e_j encoded with the first coordinate most significant.
    std::vector<std::size_t> unit_code(n);
    for (unsigned j = 0; j < n; ++j) {
        std::size_t code = 0;
        for (unsigned k = 0; k < n; ++k)
            code = code * q + (k == j ? ring.one().id : ring.zero().id);
        unit_code[j] = code;
    }
    mpz_class count = 0;
    std::vector<Elem> B(static_cast<std::size_t>(n) * n, Elem{0});
    std::vector<char> hit(vectors);
    std::vector<Elem> v(n), image(n);
    while (true) {
        std::fill(hit.begin(), hit.end(), 0);
        for (std::size_t code = 0; code < vectors; ++code) {
            std::size_t c = code;
            for (unsigned k = n; k-- > 0;) {
                v[k] = Elem{static_cast<std::uint32_t>(c % q)};
                c /= q;
            }
            std::size_t out = 0;
            for (unsigned i = 0; i < n; ++i) {
                Elem acc = ring.zero();
                for (unsigned k = 0; k < n; ++k)
                    acc = ring.add(acc, ring.mul(B[i * n + k], v[k]));
                out = out * q + acc.id;
            }
            hit[out] = 1;
        }
        bool all = true;
        for (auto code : unit_code)
            all = all && hit[code];
        if (all)
            ++count;
        std::size_t k = B.size();
        while (k > 0) {
            --k;
            if (++B[k].id < q)
                break;
            B[k].id = 0;
            if (k == 0)
                return count;
        }
        if (B.empty())
            return count;
    }
}

namespace {

bool square_table(const Table& t, std::size_t n) {
    if (t.size() != n)
        return false;
    for (const auto& row : t) {
        if (row.size() != n)
            return false;
        for (auto v : row)
            if (v >= n)
                return false;
    }
    return true;
}

AxiomReport violated(std::string axiom) { return {false, std::move(axiom)}; }

std::optional<std::uint32_t> identity_of(const Table& t) {
    const std::size_t n = t.size();
    for (std::uint32_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::uint32_t a = 0; a < n && ok; ++a)
            ok = t[e][a] == a && t[a][e] == a;
        if (ok)
            return e;
    }
    return std::nullopt;
}

AxiomReport abelian_group_axioms(const Table& add, const std::string& prefix) {
    const std::size_t n = add.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (add[add[a][b]][c] != add[a][add[b][c]])
                    return violated(prefix + "associativity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (add[a][b] != add[b][a])
                return violated(prefix + "commutativity");
    const auto zero = identity_of(add);
    if (!zero)
        return violated(prefix + "identity");
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            found = add[a][b] == *zero;
        if (!found)
            return violated(prefix + "inverse");
    }
    return {};
}

Table to_table(std::span<const FiniteRing::Cell> cells, std::size_t n) {
    Table t(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = cells[i * n + j];
    return t;
}

} // namespace

AxiomReport check_ring_axioms(const Table& add, const Table& mul, bool commutative) {
    const std::size_t n = add.size();
    if (n == 0 || !square_table(add, n) || !square_table(mul, n))
        return violated("closure");
    if (auto r = abelian_group_axioms(add, "additive-"); !r.ok)
        return r;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                    return violated("multiplicative-associativity");
    if (!identity_of(mul))
        return violated("multiplicative-identity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] || mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]])
                    return violated("distributivity");
    if (commutative)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (mul[a][b] != mul[b][a])
                    return violated("commutativity");
    return {};
}

AxiomReport check_ring_axioms(const FiniteRing& ring) {
    return check_ring_axioms(to_table(ring.add_table(), ring.size()), to_table(ring.mul_table(), ring.size()),
                             ring.commutative());
}

AxiomReport check_group_axioms(const Table& add) {
    if (add.empty() || !square_table(add, add.size()))
        return violated("closure");
    return abelian_group_axioms(add, "");
}

AxiomReport check_group_axioms(const AbelianGroup& group) {
    return check_group_axioms(to_table(group.add_table(), group.size()));
}

} // namespace ringsolve::oracle
