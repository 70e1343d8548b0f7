#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mulrep/detforms.hpp"
#include "mulrep/intlinalg.hpp"
#include "testutil.hpp"

using namespace mulrep;
using testutil::rand_long;
using testutil::rand_matrix;

TEST_CASE("instance shape validation") {
    CHECK_NOTHROW(DetFormInstance(parse_matrix("6; 10; 15"), 3));
    CHECK_NOTHROW(DetFormInstance(parse_matrix("1 2; 3 4"), 3));
    CHECK_THROWS_AS(DetFormInstance(parse_matrix("1 2; 3 4"), 2), precondition_error);  // s = n
    CHECK_THROWS_AS(DetFormInstance(parse_matrix("1 2 3"), 3), precondition_error);     // s > r
    CHECK_THROWS_AS(DetFormInstance(parse_matrix("1; 2; 3"), 2), precondition_error);   // r > n
}

TEST_CASE("representable") {
    CHECK(representable(DetFormInstance(parse_matrix("6; 10; 15"), 3)));
    CHECK_FALSE(representable(DetFormInstance(parse_matrix("2; 4"), 2)));
    CHECK(representable(DetFormInstance(parse_matrix("3; 5"), 2)));
    // r + s <= n: always representable, entries do not matter
    CHECK(representable(DetFormInstance(parse_matrix("4"), 2)));
    CHECK(representable(DetFormInstance(parse_matrix("0; 0"), 4)));
    // r + s > n with a shared factor in the critical minors
    CHECK_FALSE(representable(DetFormInstance(parse_matrix("2 4; 6 8"), 3)));
    CHECK(representable(DetFormInstance(parse_matrix("2 4; 6 9"), 3)));
}

TEST_CASE("complete_unimodular on the divisor-column instance") {
    DetFormInstance inst(parse_matrix("6; 10; 15"), 3);
    IntMatrix m = complete_unimodular(inst);
    CHECK(m.rows() == 3);
    CHECK(determinant(m) == 1);
    CHECK(m.at(0, 0) == 6);
    CHECK(m.at(1, 0) == 10);
    CHECK(m.at(2, 0) == 15);
}

TEST_CASE("complete_unimodular rejects blocked instances") {
    CHECK_THROWS_AS(complete_unimodular(DetFormInstance(parse_matrix("2; 4"), 2)),
                    not_completable);
    try {
        complete_unimodular(DetFormInstance(parse_matrix("2; 4"), 2));
    } catch (const not_completable& e) {
        CHECK(e.minor_gcd == 2);
        CHECK(e.order == 1);
    }
}

TEST_CASE("solve_detform hits every target") {
    DetFormInstance inst(parse_matrix("6; 10; 15"), 3);
    for (long b = -10; b <= 10; ++b) {
        DetSolution sol = solve_detform(inst, Int(b));
        CHECK(sol.det == b);
        IntMatrix m = sol.assemble(inst);
        CHECK(determinant(m) == b);
        // the fixed block is untouched
        CHECK(m.at(0, 0) == 6);
        CHECK(m.at(1, 0) == 10);
        CHECK(m.at(2, 0) == 15);
        CHECK_FALSE(sol.x.has_value());  // r = n leaves no rows below the block
    }
}

TEST_CASE("solve_detform with rows below the block") {
    DetFormInstance inst(parse_matrix("3; 5"), 3);  // r = 2, s = 1, n = 3
    DetSolution sol = solve_detform(inst, Int(4));
    CHECK(sol.det == 4);
    REQUIRE(sol.x.has_value());
    CHECK(sol.x->rows() == 1);
    CHECK(sol.x->cols() == 1);
    CHECK(sol.y.rows() == 3);
    CHECK(sol.y.cols() == 2);
    IntMatrix m = sol.assemble(inst);
    CHECK(determinant(m) == 4);
    CHECK(m.at(0, 0) == 3);
    CHECK(m.at(1, 0) == 5);
}

TEST_CASE("completion randomized") {
    testutil::Rng rng(31);
    int completed = 0, blocked = 0;
    while (completed < 120 || blocked < 20) {
        int n = static_cast<int>(rand_long(rng, 2, 5));
        int r = static_cast<int>(rand_long(rng, 1, n));
        int smax = std::min(r, n - 1);
        int s = static_cast<int>(rand_long(rng, 1, smax));
        DetFormInstance inst(rand_matrix(rng, r, s, -9, 9), n);
        if (representable(inst)) {
            IntMatrix m = complete_unimodular(inst);
            CHECK(determinant(m) == 1);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < s; ++j) CHECK(m.at(i, j) == inst.a.at(i, j));
            // one completion serves several targets
            for (long b : {-3L, 2L, 9L}) {
                DetSolution sol = solve_detform(inst, Int(b));
                CHECK(determinant(sol.assemble(inst)) == b);
            }
            ++completed;
        } else {
            CHECK_THROWS_AS(complete_unimodular(inst), not_completable);
            ++blocked;
        }
    }
}

TEST_CASE("detform_bound fixed values") {
    CHECK(detform_bound(DetFormInstance(parse_matrix("6; 10; 15"), 3), Int(1)) ==
          Int("25369470"));
    CHECK(detform_bound(DetFormInstance(parse_matrix("1; 0; 0"), 3), Int(1)) == 108);
    // scales linearly in |b|
    CHECK(detform_bound(DetFormInstance(parse_matrix("6; 10; 15"), 3), Int(-2)) ==
          Int("50738940"));

    CHECK_THROWS_AS(detform_bound(DetFormInstance(parse_matrix("3; 5"), 3), Int(1)),
                    precondition_error);  // r < n
    CHECK_THROWS_AS(detform_bound(DetFormInstance(parse_matrix("2; 4"), 2), Int(1)),
                    precondition_error);  // shared factor
}

TEST_CASE("product coefficient matrix and radius") {
    ProductForm P = ProductForm::make({parse_form("x1+x2+x3"), parse_form("x2-x3")});
    IntMatrix a = product_coefficient_matrix(P);
    CHECK(a == parse_matrix("1 1 1; 0 1 -1"));
    CHECK(product_search_radius(P, Int(6)) == 7);
    CHECK(product_search_radius(P, Int(1)) == 2);
}

TEST_CASE("solve_product_linear fast path") {
    ProductForm P = ProductForm::make({parse_form("x1+x2+x3"), parse_form("x2-x3")});
    SolveReport r = solve_product_linear(P, Int(6), false);
    CHECK(r.method == Method::product);
    CHECK(evaluate(P, r.solution) == 6);
    CHECK(r.bound_value == Int(7));

    // one factor in two variables
    ProductForm Q = ProductForm::make({parse_form("2*x1 + 3*x2")}, 2);
    SolveReport rq = solve_product_linear(Q, Int(5), false);
    CHECK(evaluate(Q, rq.solution) == 5);
}

TEST_CASE("solve_product_linear bounded path") {
    ProductForm P = ProductForm::make({parse_form("x1+x2+x3"), parse_form("x2-x3")});
    SolveReport r = solve_product_linear(P, Int(6), true);
    CHECK(r.solution == Assignment{Int(-7), Int(7), Int(6)});
    CHECK(evaluate(P, r.solution) == 6);
    CHECK(testutil::vec_sup_norm(r.solution) <= 7);
    CHECK(r.within_bound == true);
}

TEST_CASE("solve_product_linear rejections") {
    // as many factors as variables
    ProductForm P = ProductForm::make({parse_form("x1"), parse_form("x2")});
    CHECK_THROWS_AS(solve_product_linear(P, Int(4), false), precondition_error);

    // shared minor factor; Heger separates hopeless from merely out of reach
    ProductForm C = ProductForm::make({parse_form("x1+x2+x3"), parse_form("-1*x1+x2+x3")});
    CHECK_THROWS_AS(solve_product_linear(C, Int(6), false), product_not_coprime);
    try {
        solve_product_linear(C, Int(6), false);
    } catch (const product_not_coprime& e) {
        CHECK(e.minor_gcd == 2);
        CHECK_FALSE(e.heger_ok);  // even target: L1 = 6, L2 = 1 is unsolvable
    }
    try {
        solve_product_linear(C, Int(7), false);
    } catch (const product_not_coprime& e) {
        CHECK(e.minor_gcd == 2);
        CHECK(e.heger_ok);  // odd target: the system itself is consistent
    }
}

TEST_CASE("solve_product_linear randomized") {
    testutil::Rng rng(32);
    int solved = 0;
    while (solved < 150) {
        int n = static_cast<int>(rand_long(rng, 2, 3));
        int m = static_cast<int>(rand_long(rng, 1, n - 1));
        std::vector<MultilinearForm> factors;
        bool bad = false;
        for (int i = 0; i < m && !bad; ++i) {
            FormBuilder builder(n);
            bool any = false;
            for (int v = 1; v <= n; ++v) {
                long c = rand_long(rng, -3, 3);
                if (c != 0) {
                    builder.add({v}, Int(c));
                    any = true;
                }
            }
            if (!any) {
                bad = true;
                break;
            }
            factors.push_back(builder.build());
        }
        if (bad) continue;
        ProductForm P = ProductForm::make(std::move(factors), n);
        IntMatrix a = product_coefficient_matrix(P);
        Int b(testutil::rand_nonzero(rng, -8, 8));
        if (minors_gcd(a, m) != 1) {
            CHECK_THROWS_AS(solve_product_linear(P, b, false), product_not_coprime);
            continue;
        }
        SolveReport fast = solve_product_linear(P, b, false);
        CHECK(evaluate(P, fast.solution) == b);
        SolveReport slow = solve_product_linear(P, b, true);
        CHECK(evaluate(P, slow.solution) == b);
        CHECK(testutil::vec_sup_norm(slow.solution) <= product_search_radius(P, b));
        CHECK(slow.within_bound == true);
        ++solved;
    }
}
