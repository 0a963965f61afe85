#include "hbr/linalg.hpp"
#include "hbr/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace hbr;

namespace {

Rational rat(long long p, long long q) { return Rational(BigInt(p), BigInt(q)); }

std::mt19937 seeded_rng(unsigned seed) { return std::mt19937(seed); }

Rational random_small_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

// Independent determinant oracle: cofactor expansion along the first row.
Rational cofactor_det(const RatMat& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rational det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        RatMat minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Rational term = m(0, j) * cofactor_det(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
    CHECK(rat(3, 8) * Rational(0) == Rational(0));
    CHECK(rat(11, 24) / rat(11, 24) == Rational(1));
    CHECK(rat(-4, 8) == rat(-1, 2));
    CHECK(rat(2, -4).to_string() == "-1/2");  // denominator normalized positive
    CHECK(Rational(7).to_string() == "7");
    CHECK_THROWS_AS(rat(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing and round-trip") {
    CHECK(Rational::parse("3/8") == rat(3, 8));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("-6/4") == rat(-3, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1 /2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("2.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);

    auto rng = seeded_rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational r = random_small_rational(rng);
        CHECK(Rational::parse(r.to_string()) == r);
    }
}

TEST_CASE("from_double is exact") {
    CHECK(Rational::from_double(0.5) == rat(1, 2));
    CHECK(Rational::from_double(-0.75) == rat(-3, 4));
    CHECK(Rational::from_double(3.0) == Rational(3));
    // 0.1 is not 1/10 in binary; the conversion must capture the true dyadic.
    Rational tenth = Rational::from_double(0.1);
    CHECK(tenth != rat(1, 10));
    CHECK(tenth.to_double() == 0.1);
    double eta = std::sqrt(8 * std::log(3.0) / 500000.0);
    CHECK(Rational::from_double(eta).to_double() == eta);
}

TEST_CASE("field laws on random small rationals") {
    auto rng = seeded_rng(11);
    for (int i = 0; i < 300; ++i) {
        Rational a = random_small_rational(rng);
        Rational b = random_small_rational(rng);
        Rational c = random_small_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("solve_linear_system identity and 2x2") {
    RatMat id = RatMat::identity(3);
    RatVec b{rat(3, 8), rat(1, 24), rat(7, 12)};
    auto x = solve_linear_system(id, b);
    REQUIRE(x);
    CHECK(*x == b);

    RatMat m(2, 2, {Rational(1), Rational(1), Rational(1), Rational(-1)});
    auto y = solve_linear_system(m, RatVec{Rational(1), Rational(0)});
    REQUIRE(y);
    CHECK((*y)[0] == rat(1, 2));
    CHECK((*y)[1] == rat(1, 2));
}

TEST_CASE("solve_linear_system reports singular matrices") {
    RatMat m(2, 2, {Rational(1), Rational(2), Rational(1), Rational(2)});
    CHECK_FALSE(solve_linear_system(m, RatVec{Rational(1), Rational(1)}));
}

TEST_CASE("determinant basics") {
    CHECK(determinant(RatMat::identity(3)) == Rational(1));
    RatMat z(3, 3);
    z(0, 0) = Rational(5);
    CHECK(determinant(z) == Rational(0));  // two zero rows
    RatMat m(2, 2, {rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7)});
    CHECK(determinant(m) == rat(1, 2) * rat(1, 7) - rat(1, 3) * rat(1, 5));
}

TEST_CASE("determinant and solvability agree with the cofactor oracle") {
    auto rng = seeded_rng(23);
    std::uniform_int_distribution<int> entry(-3, 3);
    int singular_seen = 0;
    for (int rep = 0; rep < 120; ++rep) {
        RatMat m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rational(entry(rng));
        Rational expected = cofactor_det(m);
        CHECK(determinant(m) == expected);
        auto sol = solve_linear_system(m, RatVec{Rational(1), Rational(0), Rational(2)});
        if (expected.is_zero()) {
            ++singular_seen;
            CHECK_FALSE(sol);
        } else {
            REQUIRE(sol);
            CHECK(mat_vec(m, *sol) == RatVec{Rational(1), Rational(0), Rational(2)});
        }
    }
    CHECK(singular_seen > 0);  // the sample actually exercised both branches
}

TEST_CASE("solution satisfies M x = b exactly on random solvable systems") {
    auto rng = seeded_rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        RatMat m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_small_rational(rng);
        RatVec b(4);
        for (auto& v : b) v = random_small_rational(rng);
        auto x = solve_linear_system(m, b);
        if (!x) continue;
        CHECK(mat_vec(m, *x) == b);
    }
}

TEST_CASE("matrix inverse is exact") {
    auto rng = seeded_rng(41);
    for (int rep = 0; rep < 40; ++rep) {
        RatMat m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = random_small_rational(rng);
        auto inv = inverse(m);
        if (!inv) {
            CHECK(determinant(m).is_zero());
            continue;
        }
        RatMat prod(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                Rational acc;
                for (std::size_t k = 0; k < 3; ++k) acc += m(i, k) * (*inv)(k, j);
                prod(i, j) = acc;
            }
        CHECK(prod == RatMat::identity(3));
    }
}
