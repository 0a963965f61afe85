#include "hbr/game.hpp"

#include "test_games.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace hbr;

namespace {

Rational rat(long long p, long long q) { return Rational(BigInt(p), BigInt(q)); }

MixedStrategy x_star() {
    return MixedStrategy::exact({rat(3, 8), rat(1, 24), rat(7, 12)}, PlayerRole::row);
}
MixedStrategy y_star() {
    return MixedStrategy::exact({rat(3, 8), rat(1, 3), rat(7, 24)}, PlayerRole::column);
}

}  // namespace

TEST_CASE("game derived constants") {
    Game g = testgames::interior3();
    CHECK(g.n() == 3);
    CHECK(g.m() == 3);
    CHECK(g.delta() == Rational(5));  // max 3, min -2
    CHECK(g.lcm_den() == 1);
    CHECK(g.a_int()[0][2] == 3);

    RatMat frac(2, 2, {rat(1, 2), rat(1, 3), Rational(0), Rational(1)});
    Game gf{std::move(frac)};
    CHECK(gf.lcm_den() == 6);
    CHECK(gf.a_int()[0][0] == 3);  // 6 * 1/2
    CHECK(gf.a_int()[0][1] == 2);  // 6 * 1/3
    CHECK(gf.delta() == Rational(1));
}

TEST_CASE("game file parsing") {
    std::istringstream in(
        "# payoff of the column player\n"
        "3 3\n"
        "-2 1 3\n"
        "1 2 -2\n"
        "2 0 -1\n");
    Game g = Game::parse(in);
    CHECK(g.payoff() == testgames::interior3().payoff());

    std::istringstream frac("2 2\n1/2 -1/3\n0 1\n");
    Game gf = Game::parse(frac);
    CHECK(gf.at(0, 1) == rat(-1, 3));

    std::istringstream bad("2 2\n1 2 3\n");
    CHECK_THROWS_AS(Game::parse(bad), GameFormatError);
    std::istringstream tiny("1 2\n1 2\n");
    CHECK_THROWS_AS(Game::parse(tiny), GameFormatError);
    std::istringstream junk("2 2\n1 2\nx 4\n");
    CHECK_THROWS_AS(Game::parse(junk), GameFormatError);
}

TEST_CASE("expected payoff") {
    Game g = testgames::interior3();
    auto v = expected_payoff(g, {x_star(), y_star()});
    CHECK(v.is_exact);
    CHECK(v.exact == rat(11, 24));

    // pure profile reads the matrix entry
    auto pure = expected_payoff(g, {MixedStrategy::pure(0, 3, PlayerRole::row),
                                    MixedStrategy::pure(2, 3, PlayerRole::column)});
    CHECK(pure.exact == Rational(3));

    RatMat z(2, 2);
    Game zero{std::move(z)};
    auto zv = expected_payoff(zero, {MixedStrategy::uniform(2, PlayerRole::row),
                                     MixedStrategy::uniform(2, PlayerRole::column)});
    CHECK(zv.exact == Rational(0));

    CHECK_THROWS_AS(expected_payoff(zero, {x_star(), y_star()}), std::invalid_argument);
}

TEST_CASE("exploitabilities and nash distance") {
    Game g = testgames::interior3();
    StrategyProfile ne{x_star(), y_star()};
    CHECK(exploitability_x(g, ne).exact == Rational(0));
    CHECK(exploitability_y(g, ne).exact == Rational(0));
    CHECK(nash_distance(g, ne).exact == Rational(0));

    // x = e_1, y = e_1: row 1 of A is (-2, 1, 3), best deviation 3 vs -2.
    StrategyProfile corner{MixedStrategy::pure(0, 3, PlayerRole::row),
                           MixedStrategy::pure(0, 3, PlayerRole::column)};
    CHECK(exploitability_x(g, corner).exact == Rational(5));

    // x uniform, y = e_2: payoff 1, column 2 minimum is 0.
    StrategyProfile mid{MixedStrategy::uniform(3, PlayerRole::row),
                        MixedStrategy::pure(1, 3, PlayerRole::column)};
    CHECK(exploitability_y(g, mid).exact == Rational(1));

    StrategyProfile uu{MixedStrategy::uniform(3, PlayerRole::row),
                       MixedStrategy::uniform(3, PlayerRole::column)};
    auto nd = nash_distance(g, uu);
    CHECK(nd.exact == rat(2, 3));
    CHECK(nd.exact == exploitability_x(g, uu).exact + exploitability_y(g, uu).exact);
}

TEST_CASE("nash distance on symmetric game matches by symmetry") {
    RatMat a(2, 2, {Rational(0), Rational(1), Rational(-1), Rational(0)});
    Game g{std::move(a)};  // A = -A^T
    StrategyProfile uu{MixedStrategy::uniform(2, PlayerRole::row),
                       MixedStrategy::uniform(2, PlayerRole::column)};
    CHECK(exploitability_x(g, uu).exact == exploitability_y(g, uu).exact);
}

TEST_CASE("eps-NE tests") {
    Game g = testgames::interior3();
    StrategyProfile ne{x_star(), y_star()};
    CHECK(is_eps_ne(g, ne, 0.0));

    StrategyProfile uu{MixedStrategy::uniform(3, PlayerRole::row),
                       MixedStrategy::uniform(3, PlayerRole::column)};
    CHECK_FALSE(is_eps_ne(g, uu, 0.0));
    CHECK(is_eps_ne(g, uu, g.delta().to_double()));  // payoff-range bound

    // Tight threshold: eps = max(e_x, e_y) passes, anything below fails.
    Rational ex = exploitability_x(g, uu).exact;
    Rational ey = exploitability_y(g, uu).exact;
    Rational tight = std::max(ex, ey);
    CHECK(is_eps_ne(g, uu, PayoffValue::from_exact(tight)));
    CHECK_FALSE(is_eps_ne(g, uu, PayoffValue::from_exact(tight - rat(1, 1000000))));
    CHECK_THROWS_AS(is_eps_ne(g, uu, -0.5), std::invalid_argument);
}

TEST_CASE("positive scaling of the payoff matrix scales all metrics") {
    Game g = testgames::interior3();
    Rational lambda = rat(7, 3);
    RatMat scaled(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) scaled(i, j) = g.at(i, j) * lambda;
    Game gs{std::move(scaled)};

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> w(1, 9);
    for (int rep = 0; rep < 25; ++rep) {
        RatVec xv(3), yv(3);
        Rational sx, sy;
        for (int i = 0; i < 3; ++i) {
            xv[i] = Rational(w(rng));
            yv[i] = Rational(w(rng));
            sx += xv[i];
            sy += yv[i];
        }
        for (int i = 0; i < 3; ++i) {
            xv[i] /= sx;
            yv[i] /= sy;
        }
        StrategyProfile p{MixedStrategy::exact(xv, PlayerRole::row),
                          MixedStrategy::exact(yv, PlayerRole::column)};
        CHECK(expected_payoff(gs, p).exact == lambda * expected_payoff(g, p).exact);
        CHECK(exploitability_x(gs, p).exact == lambda * exploitability_x(g, p).exact);
        CHECK(exploitability_y(gs, p).exact == lambda * exploitability_y(g, p).exact);
        CHECK(nash_distance(gs, p).exact == lambda * nash_distance(g, p).exact);
        Rational eps = nash_distance(g, p).exact;
        CHECK(is_eps_ne(g, p, PayoffValue::from_exact(eps)) ==
              is_eps_ne(gs, p, PayoffValue::from_exact(lambda * eps)));
    }
}

TEST_CASE("mixed strategy invariants") {
    CHECK_THROWS_AS(MixedStrategy::exact({rat(1, 2), rat(1, 3)}, PlayerRole::row),
                    std::invalid_argument);
    CHECK_THROWS_AS(MixedStrategy::exact({rat(3, 2), rat(-1, 2)}, PlayerRole::row),
                    std::invalid_argument);
    CHECK_THROWS_AS(MixedStrategy::floating({0.5, 0.5001}, PlayerRole::row),
                    std::invalid_argument);
    auto u = MixedStrategy::uniform(4, PlayerRole::column);
    CHECK(u.full_support());
    CHECK(u.exact_probs()[0] == rat(1, 4));
    CHECK_FALSE(MixedStrategy::pure(1, 3, PlayerRole::row).full_support());
}
