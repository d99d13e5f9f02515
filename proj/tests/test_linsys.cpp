#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "ringsolve/linsys.hpp"
#include "ringsolve/oracle.hpp"

using namespace ringsolve;

namespace {

Elem el(const FiniteRing& R, const std::string& name) { return *R.find(name); }

// Rows of coefficient names followed by the right-hand side name.
LinSystem make_system(const RingPtr& R, const std::vector<std::vector<std::string>>& rows) {
    LinSystem s(R);
    const std::size_t cols = rows.empty() ? 0 : rows[0].size() - 1;
    for (std::size_t j = 0; j < cols; ++j)
        s.add_col("x" + std::to_string(j));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < cols; ++j)
            terms.push_back({static_cast<std::uint32_t>(j), el(*R, rows[i][j])});
        s.add_row("r" + std::to_string(i), std::move(terms), el(*R, rows[i][cols]));
    }
    return s;
}

DenseMatrix dense(const RingPtr& R, const std::vector<std::vector<std::string>>& rows) {
    DenseMatrix A;
    for (const auto& row : rows) {
        std::vector<Elem> r;
        for (const auto& n : row)
            r.push_back(el(*R, n));
        A.push_back(std::move(r));
    }
    return A;
}

DenseMatrix multiply(const FiniteRing& R, const DenseMatrix& X, const DenseMatrix& Y) {
    const std::size_t inner = Y.size(), cols = Y.empty() ? 0 : Y[0].size();
    DenseMatrix Z(X.size(), std::vector<Elem>(cols, R.zero()));
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < inner; ++k)
                Z[i][j] = R.add(Z[i][j], R.mul(X[i][k], Y[k][j]));
    return Z;
}

void check_hermite(const ChainContext& ctx, const DenseMatrix& A, const HermiteResult& h) {
    const FiniteRing& R = *ctx.ring();
    const std::size_t m = A.size(), n = m ? A[0].size() : 0;
    DenseMatrix AT(m, std::vector<Elem>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < n; ++t)
            AT[i][t] = A[i][h.perm[t]];
    CHECK(multiply(R, h.S, AT) == h.reduced);
    CHECK(R.is_unit(oracle::det_cofactor(R, h.S)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i >= h.rank || j < i)
                CHECK(h.reduced[i][j] == R.zero());
            else
                CHECK(ctx.divides(h.diag[i], h.reduced[i][j]));
        }
    for (std::size_t i = 0; i < h.rank; ++i) {
        CHECK(h.diag[i] == h.reduced[i][i]);
        CHECK(h.diag[i] != R.zero());
        if (i + 1 < h.rank)
            CHECK(ctx.divides(h.diag[i], h.diag[i + 1]));
    }
}

// All abelian groups of order at most 16, as products of cyclic groups.
std::vector<GroupPtr> small_groups() {
    std::vector<GroupPtr> out;
    for (std::uint64_t n = 1; n <= 16; ++n)
        out.push_back(build_cyclic_group(n));
    const std::vector<std::vector<std::uint64_t>> products = {{2, 2}, {2, 4}, {2, 2, 2}, {3, 3}, {2, 6},
                                                               {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}};
    for (const auto& orders : products) {
        std::vector<GroupPtr> fs;
        for (auto o : orders)
            fs.push_back(build_cyclic_group(o));
        out.push_back(build_group_product(fs));
    }
    return out;
}

} // namespace

TEST_CASE("eval_system") {
    auto Z4 = build_zmod(4);
    CHECK(eval_system(make_system(Z4, {{"2", "2"}}), std::vector<Elem>{Elem{1}}));
    CHECK_FALSE(eval_system(make_system(Z4, {{"2", "1"}}), std::vector<Elem>{Elem{3}}));
    LinSystem empty_row(Z4);
    empty_row.add_col("x");
    empty_row.add_row("r", {}, Z4->zero());
    for (Elem x : Z4->elements())
        CHECK(eval_system(empty_row, std::vector<Elem>{x}));
    CHECK_THROWS_AS(eval_system(empty_row, std::vector<Elem>{}), Error);
}

TEST_CASE("hermite normal form examples") {
    auto Z8 = build_zmod(8);
    ChainContext c8(Z8);
    const auto A = dense(Z8, {{"2", "4"}, {"4", "2"}});
    const auto h = hermite_normal_form(c8, A);
    CHECK(h.reduced == dense(Z8, {{"2", "4"}, {"0", "2"}}));
    CHECK(h.rank == 2);
    check_hermite(c8, A, h);

    auto Z9 = build_zmod(9);
    const auto I = dense(Z9, {{"1", "0"}, {"0", "1"}});
    const auto hi = hermite_normal_form(Z9, I);
    CHECK(hi.reduced == I);
    CHECK(hi.S == I);
    CHECK(hi.perm == std::vector<std::uint32_t>{0, 1});

    CHECK(hermite_normal_form(Z9, dense(Z9, {{"3"}})).reduced == dense(Z9, {{"3"}}));

    try {
        hermite_normal_form(build_zmod(6), dense(build_zmod(6), {{"1"}}));
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionViolation);
    }
}

TEST_CASE("hermite normal form properties") {
    std::mt19937_64 rng(11);
    for (const auto& R : {build_zmod(8), build_zmod(9), fixtures::gr42(), fixtures::f4(), build_zmod(2)}) {
        ChainContext ctx(R);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
            DenseMatrix A(m, std::vector<Elem>(n));
            for (auto& row : A)
                for (auto& e : row)
                    e = rng() % 3 ? fixtures::random_elem(*R, rng) : R->zero();
            check_hermite(ctx, A, hermite_normal_form(ctx, A));
        }
    }
}

TEST_CASE("solve_chain examples") {
    auto Z4 = build_zmod(4);
    const auto ok = solve_chain(make_system(Z4, {{"2", "2"}}));
    REQUIRE(ok.verdict == Verdict::Solvable);
    CHECK((ok.assignment[0] == Elem{1} || ok.assignment[0] == Elem{3}));

    const auto bad_sys = make_system(Z4, {{"2", "1"}});
    const auto bad = solve_chain(bad_sys);
    REQUIRE(bad.verdict == Verdict::Unsolvable);
    REQUIRE(bad.witness);
    CHECK(bad.witness->coeffs == std::vector<Elem>{Elem{2}});
    CHECK(check_witness(ChainContext(Z4), bad_sys, bad.witness->coeffs));

    auto F2 = build_zmod(2);
    const auto one = solve_chain(make_system(F2, {{"1", "1"}}));
    REQUIRE(one.verdict == Verdict::Solvable);
    CHECK(one.assignment == std::vector<Elem>{Elem{1}});
}

TEST_CASE("solve_commutative examples") {
    auto Z6 = build_zmod(6);
    const auto a = solve_commutative(make_system(Z6, {{"3", "3"}}));
    REQUIRE(a.verdict == Verdict::Solvable);
    CHECK(eval_system(make_system(Z6, {{"3", "3"}}), a.assignment));

    const auto sys = make_system(Z6, {{"2", "1"}});
    const auto b = solve_commutative(sys);
    REQUIRE(b.verdict == Verdict::Unsolvable);
    CHECK(b.witness->label == "e=3");
    CHECK(verify_certificate(sys, b));

    auto F4 = fixtures::f4();
    const auto w = el(*F4, "[0,1]");
    const auto w2 = F4->mul(w, w);
    const auto c = solve_commutative(make_system(F4, {{"[0,1]", "[0,1]"}}));
    REQUIRE(c.verdict == Verdict::Solvable);
    CHECK(c.assignment[0] == F4->one());
    const auto d = solve_commutative(make_system(F4, {{"[0,1]", F4->name(F4->one())}}));
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.assignment[0] == w2);

    CHECK_THROWS_AS(solve_commutative(make_system(fixtures::upper_triangular_f2(), {{"1", "1"}})), Error);
}

TEST_CASE("solve_group examples") {
    // x + x = g with 0/1 coefficients: y is tied to x by x + z = y + z = e.
    auto doubled = [](const GroupPtr& G, Elem g) {
        GroupSystem s(G);
        const auto x = s.add_col("x"), y = s.add_col("y"), z = s.add_col("z");
        s.add_row("sum", {x, y}, g);
        s.add_row("tx", {x, z}, G->zero());
        s.add_row("ty", {y, z}, G->zero());
        return s;
    };
    auto Z3 = build_cyclic_group(3);
    const Elem g3{1};
    const auto a = solve_group(doubled(Z3, g3));
    REQUIRE(a.verdict == Verdict::Solvable);
    CHECK(a.assignment[0] == Z3->times(2, g3));

    auto Z2 = build_cyclic_group(2);
    const auto sys = doubled(Z2, Elem{1});
    const auto b = solve_group(sys);
    REQUIRE(b.verdict == Verdict::Unsolvable);
    CHECK(verify_certificate(sys, b));

    for (const auto& G : small_groups()) {
        GroupSystem s(G);
        s.add_row("r", {s.add_col("x")}, G->zero());
        const auto c = solve_group(s);
        REQUIRE(c.verdict == Verdict::Solvable);
        CHECK(c.assignment[0] == G->zero());
    }
}

TEST_CASE("solve_twosided examples") {
    auto U = fixtures::upper_triangular_f2();
    auto right_eq = [&](Elem r) {
        TwoSidedSystem s(U);
        const auto x = s.add_col("x");
        s.add_row("r", {}, {{x, r}}, U->one());
        return s;
    };
    const Elem unit{7}, nil{2};
    REQUIRE(U->is_unit(unit));
    REQUIRE(nilpotency(*U, nil).has_value());

    const auto su = right_eq(unit);
    const auto a = solve_twosided(su);
    REQUIRE(a.verdict == Verdict::Solvable);
    CHECK(U->mul(a.assignment[0], unit) == U->one());
    CHECK(oracle::brute_force_solve(su).solvable);

    const auto sn = right_eq(nil);
    const auto b = solve_twosided(sn);
    CHECK(b.verdict == Verdict::Unsolvable);
    CHECK_FALSE(oracle::brute_force_solve(sn).solvable);
    CHECK(verify_certificate(sn, b));

    TwoSidedSystem z(U);
    const auto x = z.add_col("x");
    z.add_row("r", {{x, U->zero()}}, {}, U->zero());
    CHECK(solve_twosided(z).verdict == Verdict::Solvable);
}

TEST_CASE("verify_certificate") {
    auto Z4 = build_zmod(4);
    const auto good = make_system(Z4, {{"2", "2"}});
    auto cert = solve_commutative(good);
    CHECK(verify_certificate(good, cert));
    cert.assignment[0] = Z4->add(cert.assignment[0], Z4->one());
    CHECK_FALSE(verify_certificate(good, cert));

    const auto bad = make_system(Z4, {{"2", "1"}});
    auto wit = solve_commutative(bad);
    REQUIRE(wit.verdict == Verdict::Unsolvable);
    CHECK(verify_certificate(bad, wit));
    wit.witness->coeffs[0] = Z4->one();
    CHECK_FALSE(verify_certificate(bad, wit));
    wit.witness->coeffs.push_back(Z4->one());
    CHECK_THROWS_AS(verify_certificate(bad, wit), Error);

    auto tampered = solve_commutative(bad);
    tampered.witness->digest ^= 1;
    CHECK_FALSE(verify_certificate(bad, tampered));

    Certificate missing;
    missing.verdict = Verdict::Unsolvable;
    CHECK_THROWS_AS(verify_certificate(bad, missing), Error);
    Certificate short_solution;
    CHECK_THROWS_AS(verify_certificate(bad, short_solution), Error);
}

TEST_CASE("pipeline agrees with brute force and certificates verify") {
    std::mt19937_64 rng(5);
    for (const auto& R : fixtures::commutative_rings()) {
        CommutativeSolver solver(R);
        for (int trial = 0; trial < 150; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 3, 1 + rng() % 3, rng);
            const auto cert = solver.solve(s);
            const auto ref = oracle::brute_force_solve(s);
            INFO(R->spec());
            CHECK((cert.verdict == Verdict::Solvable) == ref.solvable);
            CHECK(solver.verify(s, cert));
        }
    }
}

TEST_CASE("witness duality on chain rings") {
    std::mt19937_64 rng(8);
    for (const auto& R : {build_zmod(2), build_zmod(4), build_zmod(8), build_zmod(9), fixtures::f4(),
                          fixtures::gr42()}) {
        ChainContext ctx(R);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t rows = 1 + rng() % 2;
            const auto s = fixtures::random_system(R, rows, 1 + rng() % 3, rng);
            const auto cert = solve_chain(ctx, s);
            bool any_witness = false;
            for (Elem a : R->elements())
                for (Elem b : rows == 2 ? R->elements() : std::vector<Elem>{R->zero()}) {
                    std::vector<Elem> x{a};
                    if (rows == 2)
                        x.push_back(b);
                    any_witness = any_witness || check_witness(ctx, s, x);
                }
            if (cert.verdict == Verdict::Solvable) {
                CHECK(eval_system(s, cert.assignment));
                CHECK_FALSE(any_witness);
            } else {
                CHECK(check_witness(ctx, s, cert.witness->coeffs));
                CHECK(any_witness);
            }
        }
    }
}

TEST_CASE("solve_group agrees with brute force on groups up to order 16") {
    for (const auto& G : small_groups()) {
        const std::vector<std::vector<std::vector<std::uint32_t>>> shapes = {
            {{0}}, {{0, 1}}, {{}, {0}}, {{0}, {0}}, {{0, 1}, {1}}, {{0, 1}, {0, 1}}, {{0}, {1}}};
        for (const auto& shape : shapes) {
            const std::size_t rows = shape.size();
            std::uint32_t cols = 0;
            for (const auto& row : shape)
                for (auto c : row)
                    cols = std::max(cols, c + 1);
            cols = std::max<std::uint32_t>(cols, 1);
            std::size_t combos = 1;
            for (std::size_t i = 0; i < rows; ++i)
                combos *= G->size();
            for (std::size_t code = 0; code < combos; ++code) {
                GroupSystem s(G);
                for (std::uint32_t j = 0; j < cols; ++j)
                    s.add_col("x" + std::to_string(j));
                std::size_t c = code;
                for (std::size_t i = 0; i < rows; ++i) {
                    s.add_row("r" + std::to_string(i), shape[i], Elem{static_cast<std::uint32_t>(c % G->size())});
                    c /= G->size();
                }
                const auto cert = solve_group(s);
                INFO(G->spec());
                CHECK((cert.verdict == Verdict::Solvable) == oracle::brute_force_solve(s).solvable);
                CHECK(verify_certificate(s, cert));
            }
        }
    }
}

TEST_CASE("solve_twosided agrees with brute force") {
    std::mt19937_64 rng(3);
    for (const auto& R : {fixtures::upper_triangular_f2(), build_zmod(6), fixtures::f4()}) {
        for (int trial = 0; trial < 120; ++trial) {
            TwoSidedSystem s(R);
            const std::size_t cols = 1 + rng() % 2, rows = 1 + rng() % 2;
            for (std::size_t j = 0; j < cols; ++j)
                s.add_col("x" + std::to_string(j));
            for (std::size_t i = 0; i < rows; ++i) {
                std::vector<Term> left, right;
                for (std::uint32_t j = 0; j < cols; ++j) {
                    if (rng() % 2)
                        left.push_back({j, fixtures::random_elem(*R, rng)});
                    if (rng() % 2)
                        right.push_back({j, fixtures::random_elem(*R, rng)});
                }
                s.add_row("r" + std::to_string(i), left, right, fixtures::random_elem(*R, rng));
            }
            const auto cert = solve_twosided(s);
            INFO(R->spec());
            CHECK((cert.verdict == Verdict::Solvable) == oracle::brute_force_solve(s).solvable);
            CHECK(verify_certificate(s, cert));
        }
    }
}
