#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mulrep/form.hpp"
#include "testutil.hpp"

using namespace mulrep;

TEST_CASE("parse basic forms") {
    MultilinearForm F = parse_form("6*x1*x2 + 10*x1*x3 + 15*x2*x3");
    CHECK(F.arity() == 3);
    CHECK(F.degree() == 2);
    CHECK(F.monomial_count() == 3);
    CHECK(F.monomials().at(IndexSet({1, 2})) == 6);
    CHECK(F.monomials().at(IndexSet({1, 3})) == 10);
    CHECK(F.monomials().at(IndexSet({2, 3})) == 15);

    MultilinearForm G = parse_form("x1");
    CHECK(G.arity() == 1);
    CHECK(G.degree() == 1);
    CHECK(G.monomials().at(IndexSet({1})) == 1);

    MultilinearForm H = parse_form("-x1*x2 + 3*x3*x4");
    CHECK(H.monomials().at(IndexSet({1, 2})) == -1);
    CHECK(H.monomials().at(IndexSet({3, 4})) == 3);
}

TEST_CASE("parse ignores whitespace and accepts leading sign") {
    CHECK(parse_form("  - 2*x1 + x2 ") == parse_form("-2*x1+x2"));
    CHECK(parse_form("+x1") == parse_form("x1"));
}

TEST_CASE("parse merges duplicate monomials and drops zeros") {
    MultilinearForm F = parse_form("2*x1*x2 + 3*x2*x1");
    CHECK(F.monomial_count() == 1);
    CHECK(F.monomials().at(IndexSet({1, 2})) == 5);

    CHECK_THROWS_AS(parse_form("x1*x2 - x2*x1"), parse_error);  // cancels to nothing
}

TEST_CASE("parse rejections") {
    CHECK_THROWS_AS(parse_form(""), parse_error);
    CHECK_THROWS_AS(parse_form("x0"), parse_error);
    CHECK_THROWS_AS(parse_form("x1*x1"), parse_error);
    CHECK_THROWS_AS(parse_form("2x1"), parse_error);           // missing '*'
    CHECK_THROWS_AS(parse_form("x1 + x2*x3"), parse_error);    // mixed degree
    CHECK_THROWS_AS(parse_form("x1 & x2"), parse_error);
    CHECK_THROWS_AS(parse_form("3"), parse_error);             // constant
    CHECK_THROWS_AS(parse_form("x1*x2", 1), parse_error);      // out of declared range
    CHECK_THROWS_AS(parse_form("x1", 0), parse_error);
}

TEST_CASE("declared arity widens the variable range") {
    MultilinearForm F = parse_form("x1*x2", 4);
    CHECK(F.arity() == 4);
    CHECK(evaluate(F, {Int(2), Int(3), Int(99), Int(-5)}) == 6);
}

TEST_CASE("render round-trips through parse") {
    for (const char* text : {"6*x1*x2 + 10*x1*x3 + 15*x2*x3", "-x1*x2 + 3*x3*x4",
                             "x1 - x2", "-7*x1*x2*x3", "2*x1 + 3*x2 - 5*x4"}) {
        MultilinearForm F = parse_form(text);
        CHECK(parse_form(render(F), F.arity()) == F);
    }
    CHECK(render(parse_form("6*x1*x2+10*x1*x3+15*x2*x3")) ==
          "6*x1*x2 + 10*x1*x3 + 15*x2*x3");
    CHECK(render(parse_form("-x1*x2+x3*x4")) == "-x1*x2 + x3*x4");
}

TEST_CASE("evaluate") {
    MultilinearForm F = parse_form("6*x1*x2 + 10*x1*x3 + 15*x2*x3");
    CHECK(evaluate(F, {Int(4), Int(-1), Int(1)}) == 1);
    CHECK(evaluate(F, {Int(0), Int(0), Int(0)}) == 0);
    CHECK(evaluate(F, {Int(1), Int(1), Int(1)}) == 31);
    CHECK_THROWS_AS(evaluate(F, {Int(1), Int(1)}), precondition_error);
}

TEST_CASE("sup norms") {
    CHECK(sup_norm(parse_form("6*x1*x2 + 10*x1*x3 - 15*x2*x3")) == 15);
    CHECK(sup_norm(parse_form("x1")) == 1);
    CHECK(sup_norm(Assignment{Int(-7), Int(3)}) == 7);
    CHECK(sup_norm(Assignment{}) == 0);
}

TEST_CASE("coprimality profile") {
    auto p = coprimality_profile(parse_form("6*x1*x2 + 10*x1*x3 + 15*x2*x3"));
    CHECK(p.overall_gcd == 1);
    CHECK_FALSE(p.pairwise_coprime);   // gcd(6,10) = 2
    CHECK_FALSE(p.has_coprime_pair);   // every pair shares 2, 3, or 5

    auto q = coprimality_profile(parse_form("2*x1*x2 + 3*x1*x3 + 5*x2*x3"));
    CHECK(q.overall_gcd == 1);
    CHECK(q.pairwise_coprime);
    CHECK(q.has_coprime_pair);

    auto r = coprimality_profile(parse_form("4*x1 + 6*x2"));
    CHECK(r.overall_gcd == 2);
    CHECK_FALSE(r.pairwise_coprime);
    CHECK_FALSE(r.has_coprime_pair);

    // single monomial: no pairs at all
    auto s = coprimality_profile(parse_form("7*x1*x2"));
    CHECK(s.overall_gcd == 7);
    CHECK(s.pairwise_coprime);
    CHECK_FALSE(s.has_coprime_pair);
}

TEST_CASE("nu values and recurrence") {
    CHECK(nu(1) == 2);
    CHECK(nu(2) == 5);
    CHECK(nu(3) == 16);
    CHECK(nu(4) == 65);
    CHECK(nu(10) == Int("9864101"));
    for (int d = 2; d <= 12; ++d) CHECK(nu(d) == 1 + d * nu(d - 1));
    // direct sum definition
    for (int d = 1; d <= 8; ++d) {
        Int sum = 0;
        for (int k = 0; k <= d; ++k) sum += factorial(d) / factorial(k);
        CHECK(nu(d) == sum);
    }
    CHECK_THROWS_AS(nu(0), precondition_error);
}

TEST_CASE("normalize strips universal and absent variables") {
    // x2 appears in every monomial, x4 in none
    MultilinearForm F = parse_form("2*x1*x2 + 3*x2*x3", 4);
    Normalization N = normalize(F);
    CHECK(N.reduced == parse_form("2*x1 + 3*x2"));
    CHECK(N.original_n == 4);
    CHECK(N.kept == std::vector<int>{1, 3});
    CHECK(N.fixed_to_one == std::vector<int>{2});
    CHECK(N.dropped == std::vector<int>{4});

    Assignment a = N.reconstruct({Int(-1), Int(5)});
    CHECK(a == Assignment{Int(-1), Int(1), Int(5), Int(1)});
    CHECK(evaluate(F, a) == evaluate(N.reduced, Assignment{Int(-1), Int(5)}));

    // fully shared variables leave nothing
    CHECK_THROWS_AS(normalize(parse_form("7*x1*x2")), precondition_error);
}

TEST_CASE("normalize reconstruct preserves value on random forms") {
    testutil::Rng rng(20240817);
    for (int iter = 0; iter < 100; ++iter) {
        int n = static_cast<int>(testutil::rand_long(rng, 2, 5));
        int d = static_cast<int>(testutil::rand_long(rng, 1, n));
        FormBuilder builder(n);
        int terms = static_cast<int>(testutil::rand_long(rng, 1, 4));
        for (int t = 0; t < terms; ++t) {
            std::vector<int> pool(n);
            for (int i = 0; i < n; ++i) pool[i] = i + 1;
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(d);
            builder.add(pool, Int(testutil::rand_nonzero(rng, -9, 9)));
        }
        MultilinearForm F = [&]() -> MultilinearForm {
            try {
                return builder.build();
            } catch (const parse_error&) {  // terms merged away
                return parse_form("x1");
            }
        }();
        Normalization N = [&]() -> Normalization {
            try {
                return normalize(F);
            } catch (const precondition_error&) {
                return Normalization{parse_form("x1"), 1, {1}, {}, {}};
            }
        }();
        Assignment reduced;
        for (int i = 0; i < N.reduced.arity(); ++i)
            reduced.push_back(Int(testutil::rand_long(rng, -5, 5)));
        if (N.original_n == F.arity())
            CHECK(evaluate(F, N.reconstruct(reduced)) == evaluate(N.reduced, reduced));
    }
}

TEST_CASE("widen") {
    MultilinearForm F = widen(parse_form("x1*x2"), 5);
    CHECK(F.arity() == 5);
    CHECK(evaluate(F, {Int(3), Int(4), Int(0), Int(0), Int(0)}) == 12);
    CHECK_THROWS_AS(widen(parse_form("x1*x2*x3"), 2), precondition_error);
}

TEST_CASE("product form") {
    ProductForm P = ProductForm::make({parse_form("x1+x2+x3"), parse_form("x2-x3")});
    CHECK(P.n == 3);
    CHECK(P.factors[1].arity() == 3);
    CHECK(evaluate(P, {Int(1), Int(2), Int(3)}) == -6);  // (1+2+3)(2-3)

    ProductForm Q = ProductForm::make({parse_form("x1"), parse_form("x2")}, 4);
    CHECK(Q.n == 4);
    CHECK(evaluate(Q, {Int(3), Int(5), Int(0), Int(0)}) == 15);

    CHECK_THROWS_AS(ProductForm::make({parse_form("x1*x2")}), precondition_error);
    CHECK_THROWS_AS(ProductForm::make({}), precondition_error);
}

TEST_CASE("builder rejects repeated variables") {
    FormBuilder builder;
    CHECK_THROWS_AS(builder.add({2, 1, 2}, Int(3)), parse_error);
}
