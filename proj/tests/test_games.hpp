#pragma once

#include "hbr/game.hpp"

#include <cmath>
#include <sstream>

// Shared fixtures: the small corpus of 3x3 games used throughout the tests.
namespace testgames {

// Interior rational equilibrium; NE = ((3/8, 1/24, 7/12), (3/8, 1/3, 7/24)),
// value 11/24.
inline hbr::Game interior3() {
    hbr::RatMat a(3, 3);
    long long v[3][3] = {{-2, 1, 3}, {1, 2, -2}, {2, 0, -1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = hbr::Rational(v[i][j]);
    return hbr::Game(std::move(a));
}

// Non-interior: x* = (0, 1/2, 1/2), Y's equilibrium not unique.
inline hbr::Game non_interior3() {
    hbr::RatMat a(3, 3);
    long long v[3][3] = {{-2, 1, 3}, {1, -1, 2}, {0, 2, -1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = hbr::Rational(v[i][j]);
    return hbr::Game(std::move(a));
}

// Mixed interiority: both interior and non-interior NE strategies exist;
// still cycles in the Hedge-myopic system.
inline hbr::Game special_cycle3() {
    hbr::RatMat a(3, 3);
    long long v[3][3] = {{2, -1, 0}, {-1, 1, -2}, {-3, -2, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = hbr::Rational(v[i][j]);
    return hbr::Game(std::move(a));
}

// interior3 with a_12 replaced by sqrt(2): conceptually irrational payoffs,
// represented by the exact dyadic of the double.
inline hbr::Game irrational3() {
    return hbr::Game::from_doubles(
        {{-2.0, std::sqrt(2.0), 3.0}, {1.0, 2.0, -2.0}, {2.0, 0.0, -1.0}});
}

inline hbr::Game matching_pennies() {
    hbr::RatMat a(2, 2);
    a(0, 0) = hbr::Rational(1);
    a(0, 1) = hbr::Rational(-1);
    a(1, 0) = hbr::Rational(-1);
    a(1, 1) = hbr::Rational(1);
    return hbr::Game(std::move(a));
}

}  // namespace testgames
