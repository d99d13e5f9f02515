#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "ringsolve/oracle.hpp"

using namespace ringsolve;
using namespace ringsolve::oracle;

namespace {

LinSystem single(const RingPtr& R, std::uint32_t a, std::uint32_t b) {
    LinSystem s(R);
    s.add_row("r", {{s.add_col("x"), Elem{a}}}, Elem{b});
    return s;
}

Table rows_of(std::span<const FiniteRing::Cell> cells, std::size_t n) {
    Table t(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = cells[i * n + j];
    return t;
}

} // namespace

TEST_CASE("brute force examples") {
    auto Z4 = build_zmod(4);
    const auto a = brute_force_solve(single(Z4, 2, 1));
    CHECK_FALSE(a.solvable);
    CHECK(a.checked == 4);
    const auto b = brute_force_solve(single(Z4, 2, 2));
    CHECK(b.solvable);
    CHECK(b.solution == std::vector<Elem>{Elem{1}});

    LinSystem trivial(Z4);
    trivial.add_row("r", {}, Z4->zero());
    CHECK(brute_force_solve(trivial).solvable);

    LinSystem huge(Z4);
    for (int j = 0; j < 12; ++j)
        huge.add_col("x" + std::to_string(j));
    try {
        brute_force_solve(huge);
        FAIL("expected capacity error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapacityError);
    }
}

TEST_CASE("lattice and image oracles agree with brute force") {
    std::mt19937_64 rng(21);
    for (std::uint64_t m : {2, 3, 4, 6, 8, 9, 12, 16, 30}) {
        auto R = build_zmod(m);
        for (int trial = 0; trial < 120; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 3, 1 + rng() % 3, rng);
            const bool ref = brute_force_solve(s).solvable;
            const auto lat = lattice_solve(s);
            const auto img = image_solve(s);
            INFO(m);
            CHECK(lat.solvable == ref);
            CHECK(img.solvable == ref);
            if (img.solvable)
                CHECK(eval_system(s, img.solution));
        }
    }
    for (const auto& R : fixtures::commutative_rings()) {
        for (int trial = 0; trial < 60; ++trial) {
            const auto s = fixtures::random_system(R, 1 + rng() % 2, 1 + rng() % 3, rng);
            const auto img = image_solve(s);
            CHECK(img.solvable == brute_force_solve(s).solvable);
            if (img.solvable)
                CHECK(eval_system(s, img.solution));
        }
    }
    CHECK_THROWS_AS(lattice_solve(single(fixtures::f4(), 1, 1)), Error);
}

TEST_CASE("image oracle on group, two-sided and numerical systems") {
    std::mt19937_64 rng(4);
    auto G = build_group_product({build_cyclic_group(2), build_cyclic_group(4)});
    for (int trial = 0; trial < 100; ++trial) {
        GroupSystem s(G);
        const std::size_t cols = 1 + rng() % 3;
        for (std::size_t j = 0; j < cols; ++j)
            s.add_col("x" + std::to_string(j));
        for (int i = 0; i < 2; ++i) {
            std::vector<std::uint32_t> row;
            for (std::uint32_t j = 0; j < cols; ++j)
                if (rng() % 2)
                    row.push_back(j);
            s.add_row("r" + std::to_string(i), row, Elem{static_cast<std::uint32_t>(rng() % G->size())});
        }
        const auto img = image_solve(s);
        CHECK(img.solvable == brute_force_solve(s).solvable);
        if (img.solvable)
            CHECK(eval_system(s, img.solution));
    }

    auto U = fixtures::upper_triangular_f2();
    for (int trial = 0; trial < 100; ++trial) {
        TwoSidedSystem s(U);
        const std::size_t cols = 1 + rng() % 2;
        for (std::size_t j = 0; j < cols; ++j)
            s.add_col("x" + std::to_string(j));
        for (int i = 0; i < 2; ++i) {
            std::vector<Term> l, r;
            for (std::uint32_t j = 0; j < cols; ++j) {
                if (rng() % 2)
                    l.push_back({j, fixtures::random_elem(*U, rng)});
                if (rng() % 2)
                    r.push_back({j, fixtures::random_elem(*U, rng)});
            }
            s.add_row("r" + std::to_string(i), l, r, fixtures::random_elem(*U, rng));
        }
        const auto img = image_solve(s);
        CHECK(img.solvable == brute_force_solve(s).solvable);
        if (img.solvable)
            CHECK(eval_system(s, img.solution));
    }

    auto H = build_group_product({build_cyclic_group(2), build_cyclic_group(6)});
    for (int trial = 0; trial < 100; ++trial) {
        NumericalSystem s;
        s.group = H;
        s.scalars = build_zmod(H->exponent());
        for (int j = 0; j < 3; ++j)
            s.add_col("k" + std::to_string(j));
        for (int i = 0; i < 2; ++i) {
            std::vector<Term> terms;
            for (std::uint32_t j = 0; j < 3; ++j)
                terms.push_back({j, Elem{static_cast<std::uint32_t>(rng() % H->size())}});
            s.add_row("r" + std::to_string(i), terms, Elem{static_cast<std::uint32_t>(rng() % H->size())});
        }
        const auto img = image_solve(s);
        CHECK(img.solvable == brute_force_solve(s).solvable);
        if (img.solvable)
            CHECK(eval_system(s, img.solution));
    }
}

TEST_CASE("cofactor determinant and characteristic polynomial") {
    auto Z9 = build_zmod(9);
    CHECK(det_cofactor(*Z9, {{Elem{4}}}) == Elem{4});
    CHECK(det_cofactor(*Z9, {{Elem{0}, Elem{1}}, {Elem{1}, Elem{0}}}) == Elem{8});
    CHECK(det_cofactor(*Z9, {}) == Z9->one());
    auto Z6 = build_zmod(6);
    CHECK(charpoly_cofactor(*Z6, {{Elem{2}, Elem{0}}, {Elem{0}, Elem{3}}}) ==
          std::vector<Elem>{Elem{0}, Elem{1}, Elem{1}});
    CHECK(charpoly_cofactor(*Z9, {{Elem{0}, Elem{1}}, {Elem{1}, Elem{0}}}) ==
          std::vector<Elem>{Elem{8}, Elem{0}, Elem{1}});
    const ElemMatrix big(7, std::vector<Elem>(7, Elem{0}));
    CHECK_THROWS_AS(det_cofactor(*Z9, big), Error);
    CHECK_THROWS_AS(det_cofactor(*fixtures::upper_triangular_f2(), {{Elem{1}}}), Error);
}

TEST_CASE("GL enumeration") {
    CHECK(enumerate_gl(*build_zmod(2), 2) == 6);
    CHECK(enumerate_gl(*build_zmod(4), 2) == 96);
    for (const auto& R : {build_zmod(6), build_zmod(9), fixtures::f4(), fixtures::upper_triangular_f2()})
        CHECK(enumerate_gl(*R, 1) == units(*R).size());
    CHECK_THROWS_AS(enumerate_gl(*build_zmod(16), 3), Error);
}

TEST_CASE("axiom checks") {
    CHECK(check_ring_axioms(*build_zmod(12)).ok);
    CHECK(check_ring_axioms(*fixtures::upper_triangular_f2()).ok);
    CHECK(check_ring_axioms(*fixtures::f2xy()).ok);

    auto Z3 = build_zmod(3);
    Table mul = rows_of(Z3->mul_table(), 3);
    const auto add = rows_of(Z3->add_table(), 3);
    Table mangled = mul;
    mangled[2][2] = 2;
    const auto r = check_ring_axioms(add, mangled, true);
    CHECK_FALSE(r.ok);
    CHECK(r.axiom == "distributivity");

    Table swapped = mul;
    std::swap(swapped[1][2], swapped[2][1]);
    swapped[1][2] = 0;
    CHECK_FALSE(check_ring_axioms(add, swapped, false).ok);

    CHECK(check_group_axioms(*build_cyclic_group(6)).ok);
    Table bad_group = add;
    bad_group[1][1] = 1;
    CHECK_FALSE(check_group_axioms(bad_group).ok);
    CHECK(check_group_axioms(Table{}).axiom == "closure");
}
