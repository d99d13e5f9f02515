#include "ringsolve/matalg.hpp"

#include <algorithm>
#include <map>

#include "ringsolve/structure.hpp"
#include "ringsolve/system.hpp"

namespace ringsolve {

Matrix::Matrix(RingPtr r, std::vector<std::string> row_ids, std::vector<std::string> col_ids)
    : ring(std::move(r)), rows(std::move(row_ids)), cols(std::move(col_ids)),
      entries(rows.size(), std::vector<Elem>(cols.size(), ring->zero())) {}

Matrix Matrix::square(RingPtr r, std::vector<std::vector<Elem>> entries) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].size() != entries.size())
            fail(ErrorKind::InvalidArgument, "matrix is not square");
        ids.push_back(std::to_string(i + 1));
    }
    Matrix m(std::move(r), ids, ids);
    m.entries = std::move(entries);
    return m;
}

Matrix Matrix::identity(RingPtr r, std::vector<std::string> ids) {
    Matrix m(std::move(r), ids, ids);
    for (std::size_t i = 0; i < ids.size(); ++i)
        m.entries[i][i] = m.ring->one();
    return m;
}

namespace {

// Position in B.rows of each of A's column ids.
std::vector<std::size_t> align(const Matrix& A, const Matrix& B) {
    if (!same_ring(*A.ring, *B.ring))
        fail(ErrorKind::InvalidArgument, "matrices over different rings");
    std::vector<std::size_t> pos(A.num_cols());
    if (A.cols == B.rows) {
        for (std::size_t k = 0; k < pos.size(); ++k)
            pos[k] = k;
        return pos;
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < B.num_rows(); ++k)
        index.emplace(B.rows[k], k);
    if (index.size() != B.num_rows() || B.num_rows() != A.num_cols())
        fail(ErrorKind::InvalidArgument, "inner index sets differ");
    for (std::size_t k = 0; k < pos.size(); ++k) {
        auto it = index.find(A.cols[k]);
        if (it == index.end())
            fail(ErrorKind::InvalidArgument, "inner index sets differ at " + A.cols[k]);
        pos[k] = it->second;
    }
    return pos;
}

void require_square(const Matrix& A) {
    if (!A.is_square())
        fail(ErrorKind::InvalidArgument, "matrix is not square");
}

void require_commutative(const FiniteRing& R) {
    if (!R.commutative())
        fail(ErrorKind::PreconditionViolation, R.spec() + " is not commutative");
}

Matrix project(const Matrix& A, const LocalSummand& s) {
    Matrix out(s.ring, A.rows, A.cols);
    for (std::size_t i = 0; i < A.num_rows(); ++i)
        for (std::size_t j = 0; j < A.num_cols(); ++j)
            out.entries[i][j] = s.project[A.entries[i][j].id];
    return out;
}

} // namespace

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    const auto pos = align(A, B);
    const FiniteRing& R = *A.ring;
    Matrix C(A.ring, A.rows, B.cols);
    for (std::size_t i = 0; i < A.num_rows(); ++i)
        for (std::size_t j = 0; j < B.num_cols(); ++j) {
            Elem acc = R.zero();
            for (std::size_t k = 0; k < A.num_cols(); ++k)
                acc = R.add(acc, R.mul(A.entries[i][k], B.entries[pos[k]][j]));
            C.entries[i][j] = acc;
        }
    return C;
}

Matrix mat_mul_counting(const Matrix& A, const Matrix& B) {
    const auto pos = align(A, B);
    const FiniteRing& R = *A.ring;
    Matrix C(A.ring, A.rows, B.cols);
    std::vector<std::uint64_t> count(R.size());
    for (std::size_t i = 0; i < A.num_rows(); ++i)
        for (std::size_t j = 0; j < B.num_cols(); ++j) {
            std::fill(count.begin(), count.end(), 0);
            for (std::size_t k = 0; k < A.num_cols(); ++k)
                ++count[R.mul(A.entries[i][k], B.entries[pos[k]][j]).id];
            Elem acc = R.zero();
            for (std::uint32_t r = 0; r < R.size(); ++r)
                if (count[r])
                    acc = R.add(acc, R.times(static_cast<std::int64_t>(count[r]), Elem{r}));
            C.entries[i][j] = acc;
        }
    return C;
}

Matrix mat_add(const Matrix& A, const Matrix& B) {
    if (!same_ring(*A.ring, *B.ring) || A.rows != B.rows || A.cols != B.cols)
        fail(ErrorKind::InvalidArgument, "matrix sum needs equal index sets over one ring");
    Matrix C = A;
    for (std::size_t i = 0; i < A.num_rows(); ++i)
        for (std::size_t j = 0; j < A.num_cols(); ++j)
            C.entries[i][j] = A.ring->add(A.entries[i][j], B.entries[i][j]);
    return C;
}

Matrix mat_pow(const Matrix& A, const BigNat& e) {
    require_square(A);
    if (e < 0)
        fail(ErrorKind::InvalidArgument, "negative exponent");
    Matrix result = Matrix::identity(A.ring, A.rows);
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
        result = mat_mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), bit))
            result = mat_mul(result, A);
    }
    return result;
}

BigNat gl_order_local(const FiniteRing& ring, unsigned n) {
    if (!ring.commutative() || !is_local(ring))
        fail(ErrorKind::PreconditionViolation, ring.spec() + " is not a local ring");
    const LocalData ld = local_data(ring);
    const BigNat q = ld.q;
    const BigNat ideal = static_cast<unsigned long>(ring.size() / ld.q);
    BigNat out;
    mpz_pow_ui(out.get_mpz_t(), ideal.get_mpz_t(), static_cast<unsigned long>(n) * n);
    BigNat qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    for (unsigned i = 0; i < n; ++i) {
        BigNat qi;
        mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), i);
        out *= qn - qi;
    }
    return out;
}

BigNat gl_order(const RingPtr& ring, unsigned n) {
    require_commutative(*ring);
    BigNat out = 1;
    for (const auto& s : decompose_local(ring))
        out *= gl_order_local(*s.ring, n);
    return out;
}

std::optional<Matrix> inverse(const Matrix& A) {
    require_square(A);
    require_commutative(*A.ring);
    const FiniteRing& R = *A.ring;
    const auto n = static_cast<unsigned>(A.num_rows());
    Matrix inv(A.ring, A.rows, A.cols);
    for (const auto& s : decompose_local(A.ring)) {
        const Matrix Ae = project(A, s);
        const Matrix Pe = mat_pow(Ae, gl_order_local(*s.ring, n) - 1);
        if (!(mat_mul(Pe, Ae) == Matrix::identity(s.ring, A.rows)))
            return std::nullopt;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                inv.entries[i][j] = R.add(inv.entries[i][j], s.embed[Pe.entries[i][j].id]);
    }
    return inv;
}

bool is_invertible(const Matrix& A) { return inverse(A).has_value(); }

namespace {

// Elements of Q[X]/(F), coefficients lowest degree first, length r.
using QElem = std::vector<mpq_class>;
using ZElem = std::vector<mpz_class>;

template <class T>
std::vector<T> reduce_product(const std::vector<T>& a, const std::vector<T>& b, const std::vector<mpz_class>& F) {
    const std::size_t r = F.size() - 1;
    std::vector<T> t(2 * r - 1);
    for (std::size_t i = 0; i < r; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < r; ++j)
            t[i + j] += a[i] * b[j];
    }
    // X^r = -(F_0 + ... + F_{r-1} X^{r-1}) since F is monic.
    for (std::size_t d = t.size(); d-- > r;) {
        const T c = t[d];
        if (c == 0)
            continue;
        t[d] = 0;
        for (std::size_t i = 0; i < r; ++i)
            t[d - r + i] -= c * F[i];
    }
    t.resize(r);
    return t;
}

} // namespace

CharPoly charpoly_galois(const Matrix& A) { return charpoly_galois(galois_representation(A.ring), A); }

CharPoly charpoly_galois(const GaloisRep& rep, const Matrix& A) {
    require_square(A);
    const std::size_t n = A.num_rows(), r = rep.params.r;
    std::vector<mpz_class> F;
    for (auto c : rep.f.coeffs)
        F.push_back(static_cast<unsigned long>(c));

    std::vector<std::vector<ZElem>> L(n, std::vector<ZElem>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (auto c : rep.iota[A.entries[i][j].id])
                L[i][j].push_back(static_cast<unsigned long>(c));

    // Power sums s_k = trace(L^k) in Z[X]/(F).
    std::vector<ZElem> s(n + 1, ZElem(r));
    auto P = L;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            auto next = std::vector<std::vector<ZElem>>(n, std::vector<ZElem>(n, ZElem(r)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t m = 0; m < n; ++m) {
                        const auto prod = reduce_product(P[i][m], L[m][j], F);
                        for (std::size_t t = 0; t < r; ++t)
                            next[i][j][t] += prod[t];
                    }
            P = std::move(next);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < r; ++t)
                s[k][t] += P[i][i][t];
    }

    // k * c_{n-k} = -(s_k + sum_{j<k} c_{n-j} s_{k-j})
    std::vector<QElem> c(n + 1, QElem(r));
    c[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        QElem acc(r);
        for (std::size_t t = 0; t < r; ++t)
            acc[t] = s[k][t];
        for (std::size_t j = 1; j < k; ++j) {
            QElem sk(r);
            for (std::size_t t = 0; t < r; ++t)
                sk[t] = s[k - j][t];
            const auto prod = reduce_product(c[n - j], sk, F);
            for (std::size_t t = 0; t < r; ++t)
                acc[t] += prod[t];
        }
        for (std::size_t t = 0; t < r; ++t) {
            acc[t] = -acc[t] / static_cast<long>(k);
            acc[t].canonicalize();
        }
        c[n - k] = std::move(acc);
    }

    CharPoly out;
    out.ring = A.ring;
    const mpz_class modulus = static_cast<unsigned long>(rep.modulus);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::uint64_t> coeffs(r);
        for (std::size_t t = 0; t < r; ++t) {
            if (c[k][t].get_den() != 1)
                fail(ErrorKind::InternalError, "characteristic polynomial coefficient " + std::to_string(k) +
                                                   " has denominator " + c[k][t].get_den().get_str());
            mpz_class v;
            mpz_fdiv_r(v.get_mpz_t(), c[k][t].get_num_mpz_t(), modulus.get_mpz_t());
            coeffs[t] = v.get_ui();
        }
        out.coeffs.push_back(rep.evaluate(coeffs));
    }
    return out;
}

CharPoly charpoly(const Matrix& A) {
    require_square(A);
    require_commutative(*A.ring);
    const FiniteRing& R = *A.ring;
    CharPoly out;
    out.ring = A.ring;
    out.coeffs.assign(A.num_rows() + 1, R.zero());
    for (const auto& s : decompose_local(A.ring)) {
        if (!is_galois_ring(*s.ring))
            fail(ErrorKind::Unsupported, "local summand " + R.name(s.idempotent) + " of " + R.spec() +
                                             " is not a Galois ring");
        const CharPoly part = charpoly_galois(project(A, s));
        for (std::size_t k = 0; k < out.coeffs.size(); ++k)
            out.coeffs[k] = R.add(out.coeffs[k], s.embed[part.coeffs[k].id]);
    }
    return out;
}

Elem determinant(const Matrix& A) {
    const CharPoly chi = charpoly(A);
    const Elem c0 = chi.coeffs[0];
    return A.num_rows() % 2 ? A.ring->neg(c0) : c0;
}

} // namespace ringsolve
