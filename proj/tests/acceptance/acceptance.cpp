// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ringsolve/linsys.hpp"
#include "ringsolve/matalg.hpp"
#include "ringsolve/oracle.hpp"
#include "ringsolve/reductions.hpp"
#include "ringsolve/structure.hpp"

using namespace ringsolve;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    // Records the first failure message only.
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

using Dense = std::vector<std::vector<Elem>>;

Dense multiply(const FiniteRing& R, const Dense& X, const Dense& Y) {
    const std::size_t inner = Y.size(), cols = Y.empty() ? 0 : Y[0].size();
    Dense Z(X.size(), std::vector<Elem>(cols, R.zero()));
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < inner; ++k)
                Z[i][j] = R.add(Z[i][j], R.mul(X[i][k], Y[k][j]));
    return Z;
}

Dense identity(const FiniteRing& R, std::size_t n) {
    Dense E(n, std::vector<Elem>(n, R.zero()));
    for (std::size_t i = 0; i < n; ++i)
        E[i][i] = R.one();
    return E;
}

Dense random_dense(const FiniteRing& R, std::size_t m, std::size_t n, std::mt19937_64& rng) {
    Dense A(m, std::vector<Elem>(n));
    for (auto& row : A)
        for (auto& x : row)
            x = fixtures::random_elem(R, rng);
    return A;
}

// Calls f on every n x n matrix over R, first entry least significant.
void for_each_matrix(const FiniteRing& R, std::size_t n, const std::function<void(const Dense&)>& f) {
    Dense A(n, std::vector<Elem>(n, Elem{0}));
    while (true) {
        f(A);
        std::size_t k = 0;
        for (; k < n * n; ++k) {
            Elem& e = A[k / n][k % n];
            if (++e.id < R.size())
                break;
            e.id = 0;
        }
        if (k == n * n)
            return;
    }
}

// Some B with A*B = E, column by column over all of R^n.
bool has_right_inverse(const FiniteRing& R, const Dense& A) {
    const std::size_t n = A.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= R.size();
    for (std::size_t j = 0; j < n; ++j) {
        bool found = false;
        std::vector<Elem> b(n);
        for (std::size_t code = 0; code < total && !found; ++code) {
            std::size_t c = code;
            for (auto& x : b) {
                x = Elem{static_cast<std::uint32_t>(c % R.size())};
                c /= R.size();
            }
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                Elem acc = R.zero();
                for (std::size_t k = 0; k < n; ++k)
                    acc = R.add(acc, R.mul(A[i][k], b[k]));
                ok = acc == (i == j ? R.one() : R.zero());
            }
            found = ok;
        }
        if (!found)
            return false;
    }
    return true;
}

// a | b by search.
bool divides(const FiniteRing& R, Elem a, Elem b) {
    for (Elem q : R.elements())
        if (R.mul(a, q) == b)
            return true;
    return false;
}

Elem power(const FiniteRing& R, Elem x, unsigned k) {
    Elem acc = R.one();
    while (k-- > 0)
        acc = R.mul(acc, x);
    return acc;
}

// x*(A|b) == (0,...,0,socle), computed from the rows directly.
bool is_witness(const LinSystem& s, std::span<const Elem> x, Elem socle) {
    const FiniteRing& R = *s.ring;
    for (std::uint32_t j = 0; j <= s.num_cols(); ++j) {
        Elem acc = R.zero();
        for (std::size_t i = 0; i < s.num_rows(); ++i)
            acc = R.add(acc, R.mul(x[i], j < s.num_cols() ? s.coeff(i, j) : s.b[i]));
        if (acc != (j < s.num_cols() ? R.zero() : socle))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 1 instances, shared with criterion 6.

constexpr int kRandomPerRing = 1000;

void for_each_pipeline_instance(const std::function<void(const RingPtr&, const LinSystem&)>& f) {
    std::mt19937_64 rng(20241);
    for (const auto& R : fixtures::commutative_rings()) {
        if (R->size() <= 6) {
            for (std::size_t rows = 1; rows <= 2; ++rows)
                for (std::size_t cols = 1; cols <= 2; ++cols)
                    fixtures::for_each_system(R, rows, cols, [&](const LinSystem& s) { f(R, s); });
        } else {
            for (int trial = 0; trial < kRandomPerRing; ++trial)
                f(R, fixtures::random_system(R, 1 + rng() % 3, 1 + rng() % 3, rng));
        }
    }
}

Outcome pipeline_vs_oracle() {
    Outcome out;
    std::map<std::string, std::unique_ptr<CommutativeSolver>> solvers;
    std::map<std::string, std::size_t> count;
    std::size_t mismatches = 0, total = 0;
    for_each_pipeline_instance([&](const RingPtr& R, const LinSystem& s) {
        auto& solver = solvers[R->spec()];
        if (!solver)
            solver = std::make_unique<CommutativeSolver>(R);
        const bool mine = solver->solve(s).verdict == Verdict::Solvable;
        const bool ref = oracle::brute_force_solve(s).solvable;
        mismatches += mine != ref;
        ++count[R->spec()];
        ++total;
    });
    for (const auto& R : fixtures::commutative_rings())
        out.expect(R->size() <= 6 || count[R->spec()] >= kRandomPerRing, R->spec() + " has too few instances");
    out.expect(mismatches == 0, std::to_string(mismatches) + " verdict mismatches");
    out.detail << total << " systems over " << count.size() << " rings, " << mismatches << " mismatches";
    return out;
}

Outcome witness_duality() {
    Outcome out;
    std::size_t unsolvable = 0, solvable_searched = 0;
    std::map<std::string, std::unique_ptr<ChainContext>> contexts;
    std::map<std::string, Elem> socles;
    for_each_pipeline_instance([&](const RingPtr& R, const LinSystem& s) {
        const auto cd = chain_data(*R);
        if (!cd)
            return;
        auto& ctx = contexts[R->spec()];
        if (!ctx) {
            ctx = std::make_unique<ChainContext>(R);
            socles[R->spec()] = power(*R, cd->pi, cd->n - 1);
        }
        const Elem socle = socles[R->spec()];
        const Certificate cert = solve_chain(*ctx, s);
        if (cert.verdict == Verdict::Unsolvable) {
            ++unsolvable;
            out.expect(cert.witness.has_value() && is_witness(s, cert.witness->coeffs, socle),
                       "bad witness over " + R->spec());
            out.expect(verify_certificate(s, solve_commutative(s)), "pipeline certificate rejected over " + R->spec());
            return;
        }
        out.expect(eval_system(s, cert.assignment), "bad assignment over " + R->spec());
        if (s.num_rows() > 2)
            return;
        ++solvable_searched;
        std::vector<Elem> x(s.num_rows());
        bool any = false;
        for (Elem a : R->elements())
            for (Elem b : R->elements()) {
                x[0] = a;
                if (x.size() == 2)
                    x[1] = b;
                any = any || is_witness(s, x, socle);
                if (x.size() == 1)
                    break;
            }
        out.expect(!any, "solvable system over " + R->spec() + " admits a witness");
    });
    out.expect(unsolvable > 0 && solvable_searched > 0, "empty instance classes");
    out.detail << unsolvable << " unsolvable witnesses checked, " << solvable_searched
               << " solvable systems searched exhaustively";
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 2.

bool solvable(const LinSystem& s) { return oracle::decide(s).solvable; }

LinSystem random_normal(const RingPtr& Zp, std::mt19937_64& rng) {
    LinSystem s(Zp);
    const std::size_t cols = 1 + rng() % 2, rows = 1 + rng() % 3;
    for (std::size_t j = 0; j < cols; ++j)
        s.add_col("y" + std::to_string(j));
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<Term> terms;
        for (std::uint32_t j = 0; j < cols; ++j)
            if (rng() % 2)
                terms.push_back({j, Zp->one()});
        s.add_row("e" + std::to_string(i), std::move(terms), Zp->one());
    }
    return s;
}

GroupSystem random_group_system(const GroupPtr& G, std::mt19937_64& rng) {
    GroupSystem s(G);
    const std::size_t cols = 1 + rng() % 3, rows = 1 + rng() % 2;
    for (std::size_t j = 0; j < cols; ++j)
        s.add_col("x" + std::to_string(j));
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::uint32_t> row;
        for (std::uint32_t j = 0; j < cols; ++j)
            if (rng() % 2)
                row.push_back(j);
        s.add_row("r" + std::to_string(i), row, Elem{static_cast<std::uint32_t>(rng() % G->size())});
    }
    return s;
}

TwoSidedSystem random_twosided(const RingPtr& R, std::mt19937_64& rng) {
    TwoSidedSystem s(R);
    const std::size_t cols = 1 + rng() % 2, rows = 1 + rng() % 2;
    for (std::size_t j = 0; j < cols; ++j)
        s.add_col("x" + std::to_string(j));
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<Term> l, r;
        for (std::uint32_t j = 0; j < cols; ++j) {
            if (rng() % 2)
                l.push_back({j, fixtures::random_elem(*R, rng)});
            if (rng() % 2)
                r.push_back({j, fixtures::random_elem(*R, rng)});
        }
        s.add_row("r" + std::to_string(i), l, r, fixtures::random_elem(*R, rng));
    }
    return s;
}

Outcome reduction_equisolvability() {
    Outcome out;
    std::mt19937_64 rng(777);
    std::map<std::string, std::size_t> instances, mismatches;
    auto record = [&](const std::string& name, bool agree) {
        ++instances[name];
        mismatches[name] += !agree;
    };

    for (const auto& R : fixtures::commutative_rings()) {
        const auto frame = make_cyclic_frame(R);
        for (int trial = 0; trial < 25; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 2, 1 + rng() % 3, rng);
            record("ring_to_cyclic", oracle::brute_force_solve(s).solvable == solvable(ring_to_cyclic(s, frame).lin()));
        }
    }
    for (const auto& G : {build_cyclic_group(2), build_cyclic_group(4), build_cyclic_group(6),
                          build_group_product({build_cyclic_group(2), build_cyclic_group(2)})})
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = random_group_system(G, rng);
            record("group_to_ring", oracle::brute_force_solve(s).solvable == solvable(group_to_ring(s).lin()));
        }
    for (const auto& R : {fixtures::upper_triangular_f2(), build_zmod(4), build_zmod(6)})
        for (int trial = 0; trial < 80; ++trial) {
            const auto s = random_twosided(R, rng);
            const auto red = twosided_to_numerical(s);
            const auto& num = std::get<NumericalSystem>(red.target);
            record("twosided_to_numerical", oracle::brute_force_solve(s).solvable == oracle::decide(num).solvable);
        }
    for (const auto& R : {build_zmod(6), build_zmod(12), build_product({fixtures::f4(), build_zmod(3)})}) {
        const auto summands = decompose_local(R);
        for (int trial = 0; trial < 80; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 2, 1 + rng() % 2, rng);
            bool all = true;
            for (const auto& sm : summands)
                all = all && solvable(project_to_local(s, sm.idempotent));
            record("project_to_local", all == oracle::brute_force_solve(s).solvable);
        }
    }
    for (const auto& R : {build_zmod(2), build_zmod(3), build_zmod(4), build_zmod(6), fixtures::f4()})
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 2, 1 + rng() % 2, rng);
            const auto red = normal_form(s);
            const auto& t = red.lin();
            record("normal_form", is_normal_form(t) && oracle::brute_force_solve(s).solvable == solvable(t));
        }
    for (const auto& R : {build_zmod(2), build_zmod(3), build_zmod(4), build_zmod(8), build_zmod(9)})
        for (int trial = 0; trial < 50; ++trial) {
            const auto s1 = fixtures::random_system(R, 1 + rng() % 3, 1 + rng() % 3, rng);
            const auto s2 = fixtures::random_system(R, 1 + rng() % 3, 1 + rng() % 3, rng);
            const bool v1 = oracle::brute_force_solve(s1).solvable, v2 = oracle::brute_force_solve(s2).solvable;
            record("complement_chain", solvable(complement_chain(s1).lin()) == !v1);
            record("and_compose", solvable(and_compose(s1, s2)) == (v1 && v2));
            record("or_compose", solvable(or_compose(s1, s2)) == (v1 || v2));
        }
    for (const auto& Zp : {build_zmod(2), build_zmod(3)})
        for (int trial = 0; trial < 100; ++trial) {
            NestedQuery q;
            const std::size_t rows = 1 + rng() % 2, cols = 1 + rng() % 2;
            for (std::size_t a = 0; a < rows; ++a)
                q.outer_rows.push_back("a" + std::to_string(a));
            for (std::size_t b = 0; b < cols; ++b)
                q.outer_cols.push_back("b" + std::to_string(b));
            LinSystem boolean(Zp);
            for (const auto& c : q.outer_cols)
                boolean.add_col(c);
            q.inner.resize(rows);
            for (std::size_t a = 0; a < rows; ++a) {
                std::vector<Term> terms;
                for (std::uint32_t b = 0; b < cols; ++b) {
                    q.inner[a].push_back(random_normal(Zp, rng));
                    if (oracle::brute_force_solve(q.inner[a].back()).solvable)
                        terms.push_back({b, Zp->one()});
                }
                boolean.add_row(q.outer_rows[a], std::move(terms), Zp->one());
            }
            record("collapse_nested", oracle::brute_force_solve(boolean).solvable == solvable(collapse_nested(q)));
        }

    for (const auto& [name, n] : instances) {
        out.expect(n >= 200, name + " ran only " + std::to_string(n) + " instances");
        out.expect(mismatches[name] == 0, name + " has " + std::to_string(mismatches[name]) + " mismatches");
        out.detail << name << " " << n << "/" << mismatches[name] << " ";
    }
    out.expect(instances.size() == 9, "missing reductions");
    out.detail << "(instances/mismatches)";
    return out;
}

// ---------------------------------------------------------------------------

Outcome gl_cardinality() {
    Outcome out;
    struct Case {
        RingPtr ring;
        unsigned n;
        unsigned long listed;
    };
    for (const auto& c : {Case{build_zmod(2), 2, 6}, Case{build_zmod(2), 3, 168}, Case{build_zmod(4), 2, 96},
                          Case{build_zmod(9), 2, 3888}}) {
        const BigNat mine = gl_order_local(*c.ring, c.n), ref = oracle::enumerate_gl(*c.ring, c.n);
        out.expect(mine == ref, "GL_" + std::to_string(c.n) + "(" + c.ring->spec() + ")");
        out.expect(ref == c.listed, "enumeration disagrees with the listed value for " + c.ring->spec());
        out.detail << "GL_" << c.n << "(" << c.ring->spec() << ")=" << mine.get_str() << " ";
    }
    return out;
}

Outcome inverse_check() {
    Outcome out;
    std::size_t invertible = 0, singular = 0;
    auto check = [&](const RingPtr& R, const Dense& A) {
        const auto inv = inverse(Matrix::square(R, A));
        const bool brute = has_right_inverse(*R, A);
        out.expect(inv.has_value() == brute, "invertibility disagrees over " + R->spec());
        if (inv) {
            const Dense E = identity(*R, A.size());
            out.expect(multiply(*R, A, inv->entries) == E && multiply(*R, inv->entries, A) == E,
                       "inverse fails over " + R->spec());
        }
        (inv ? invertible : singular)++;
    };
    const auto Z4 = build_zmod(4);
    std::size_t z4_invertible = 0;
    for_each_matrix(*Z4, 2, [&](const Dense& A) {
        z4_invertible += has_right_inverse(*Z4, A);
        check(Z4, A);
    });
    out.expect(z4_invertible == 96, "Z/4 has " + std::to_string(z4_invertible) + " invertible 2x2 matrices");
    std::mt19937_64 rng(404);
    for (const auto& R : {build_zmod(6), fixtures::gr42()})
        for (int trial = 0; trial < 200; ++trial)
            check(R, random_dense(*R, 2, 2, rng));
    out.detail << z4_invertible << " invertible over Z/4; " << invertible << " invertible and " << singular
               << " singular in total";
    return out;
}

Outcome charpoly_check() {
    Outcome out;
    std::size_t count = 0;
    std::mt19937_64 rng(55);
    for (const auto& R : {fixtures::f4(), build_zmod(9), fixtures::gr42()}) {
        const auto rep = galois_representation(R);
        auto check = [&](const Dense& A) {
            ++count;
            CharPoly chi;
            try {
                chi = charpoly_galois(rep, Matrix::square(R, A));
            } catch (const Error& e) {
                out.expect(false, std::string("charpoly_galois threw over ") + R->spec() + ": " + e.what());
                return;
            }
            out.expect(chi.coeffs == oracle::charpoly_cofactor(*R, A), "cofactor mismatch over " + R->spec());
            // Horner: chi(A) = (...(c_n A + c_{n-1})A + ...) + c_0.
            Dense acc(A.size(), std::vector<Elem>(A.size(), R->zero()));
            for (std::size_t k = chi.coeffs.size(); k-- > 0;) {
                acc = multiply(*R, acc, A);
                for (std::size_t i = 0; i < A.size(); ++i)
                    acc[i][i] = R->add(acc[i][i], chi.coeffs[k]);
            }
            out.expect(acc == Dense(A.size(), std::vector<Elem>(A.size(), R->zero())),
                       "Cayley-Hamilton fails over " + R->spec());
        };
        for_each_matrix(*R, 2, check);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 3 + trial % 2;
            check(random_dense(*R, n, n, rng));
        }
    }
    out.detail << count << " matrices, denominators all 1";
    return out;
}

Outcome hermite_check() {
    Outcome out;
    std::mt19937_64 rng(90);
    std::size_t count = 0;
    for (const auto& R : {build_zmod(8), build_zmod(9), fixtures::gr42()}) {
        ChainContext ctx(R);
        for (int trial = 0; trial < 500; ++trial, ++count) {
            const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
            Dense A = random_dense(*R, m, n, rng);
            for (auto& row : A)
                for (auto& x : row)
                    if (rng() % 4 == 0)
                        x = R->zero();
            const auto h = hermite_normal_form(ctx, A);
            std::set<std::uint32_t> perm(h.perm.begin(), h.perm.end());
            out.expect(h.perm.size() == n && perm.size() == n && *perm.rbegin() == n - 1,
                       "T is not a permutation");
            if (!out.ok)
                break;
            Dense T(n, std::vector<Elem>(n, R->zero()));
            for (std::size_t t = 0; t < n; ++t)
                T[h.perm[t]][t] = R->one();
            out.expect(multiply(*R, multiply(*R, h.S, A), T) == h.reduced, "S*A*T differs over " + R->spec());
            out.expect(R->is_unit(oracle::det_cofactor(*R, h.S)), "S not invertible over " + R->spec());
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i >= h.rank || j < i)
                        out.expect(h.reduced[i][j] == R->zero(), "nonzero below the diagonal");
                    else
                        out.expect(divides(*R, h.reduced[i][i], h.reduced[i][j]), "row divisibility fails");
                }
            for (std::size_t i = 0; i + 1 < h.rank; ++i)
                out.expect(divides(*R, h.reduced[i][i], h.reduced[i + 1][i + 1]), "diagonal chain fails");
        }
    }
    out.detail << count << " matrices";
    return out;
}

// ---------------------------------------------------------------------------

Outcome disjunction_gadget() {
    Outcome out;
    std::mt19937_64 rng(606);
    const auto Z2 = build_zmod(2), Z3 = build_zmod(3);
    // Pools of normal-form systems per modulus and verdict.
    auto pool = [&](const RingPtr& Zp, bool want) {
        std::vector<LinSystem> v;
        while (v.size() < 100) {
            auto s = random_normal(Zp, rng);
            if (oracle::brute_force_solve(s).solvable == want)
                v.push_back(std::move(s));
        }
        return v;
    };
    std::size_t agree = 0, total = 0;
    for (bool v2 : {false, true})
        for (bool v3 : {false, true}) {
            const auto p2 = pool(Z2, v2), p3 = pool(Z3, v3);
            std::size_t yes = 0;
            for (std::size_t k = 0; k < 100; ++k)
                yes += solvable(or_compose_general({p2[k], p3[k]}));
            const bool constant = yes == 0 || yes == 100;
            out.expect(constant, "verdict varies within combination (" + std::to_string(v2) + "," +
                                     std::to_string(v3) + ")");
            agree += (v2 || v3) ? yes : 100 - yes;
            total += 100;
            out.detail << "(" << (v2 ? "S" : "U") << "," << (v3 ? "S" : "U") << ")->" << yes << "/100 solvable; ";
        }
    out.detail << "agreement with OR " << agree << "/" << total;
    return out;
}

Outcome canonical_order_check() {
    Outcome out;
    std::size_t pairs = 0;
    for (const auto& R : fixtures::local_rings()) {
        if (R->size() > 16)
            continue;
        const std::size_t k = minimal_generators_maximal_ideal(*R).size();
        std::vector<Elem> ideal;
        for (Elem x : R->elements())
            if (!R->is_unit(x))
                ideal.push_back(x);
        std::size_t valid = 0;
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            std::vector<Elem> pis;
            for (auto i : idx)
                pis.push_back(ideal[i]);
            for (Elem alpha : R->elements()) {
                std::optional<RingOrder> ord;
                try {
                    ord.emplace(canonical_order(R, alpha, pis));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::InvalidParameter)
                        out.expect(false, std::string("unexpected error: ") + e.what());
                    continue;
                }
                ++valid;
                const auto elems = R->elements();
                std::set<std::vector<std::uint32_t>> reps;
                for (Elem x : elems) {
                    const auto r = ord->representation(x);
                    reps.emplace(r.begin(), r.end());
                    for (auto c : r)
                        out.expect(c < ord->gamma().size(), "coefficient outside the Teichmueller set");
                    out.expect(ord->evaluate(r) == x, "representation does not evaluate back");
                    out.expect(!ord->less(x, x), "order is reflexive");
                }
                out.expect(reps.size() == R->size(), "representation is not injective over " + R->spec());
                for (Elem a : elems)
                    for (Elem b : elems) {
                        if (a != b)
                            out.expect(ord->less(a, b) != ord->less(b, a), "order is not total");
                        if (ord->less(a, b))
                            for (Elem c : elems)
                                if (ord->less(b, c))
                                    out.expect(ord->less(a, c), "order is not transitive");
                    }
            }
            std::size_t p = 0;
            for (; p < k; ++p) {
                if (++idx[p] < ideal.size())
                    break;
                idx[p] = 0;
            }
            if (p == k)
                break;
        }
        out.expect(valid > 0, "no valid parameters for " + R->spec());
        pairs += valid;
    }
    out.detail << pairs << " valid (alpha, pi) pairs";
    return out;
}

struct Criterion {
    int id;
    std::string name;
    double limit_s; // 0: none
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "pipeline-vs-oracle", 120, pipeline_vs_oracle},
        {2, "reduction equi-solvability", 120, reduction_equisolvability},
        {3, "GL cardinality", 30, gl_cardinality},
        {4, "inverse", 60, inverse_check},
        {5, "characteristic polynomial", 60, charpoly_check},
        {6, "chain-ring witness duality", 0, witness_duality},
        {7, "Hermite normal form", 30, hermite_check},
        {8, "disjunction gadget adjudication", 0, disjunction_gadget},
        {9, "canonical order", 30, canonical_order_check},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s)
            o.expect(false, "time limit exceeded");
        all = all && o.ok;
        std::printf("%s [%d] %s: %s (%.2f s%s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.str().c_str(), secs,
                    c.limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s").c_str() : "");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
