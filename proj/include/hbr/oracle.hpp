#pragma once

#include "hbr/game.hpp"
#include "hbr/linalg.hpp"
#include "hbr/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hbr {

// Exact Nash equilibrium of a zero-sum matrix game, with the game value and
// interiority flags (full support on each side).
struct EquilibriumProfile {
    MixedStrategy x_star;
    MixedStrategy y_star;
    Rational value;
    bool interior_x = false;
    bool interior_y = false;

    StrategyProfile profile() const { return StrategyProfile{x_star, y_star}; }
};

namespace detail {

// Primal simplex (maximization, Bland's rule) on
//     max c^T v  s.t.  W v <= b,  v >= 0
// with b >= 0, all exact rational. Bland's smallest-index rule on both the
// entering and leaving choice guarantees termination under degeneracy.
class SimplexTableau {
public:
    SimplexTableau(const std::vector<RatVec>& w, const RatVec& b, const RatVec& c)
        : rows_(w.size()), vars_(c.size()) {
        tab_.assign(rows_, RatVec(vars_ + rows_ + 1));
        basis_.resize(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t j = 0; j < vars_; ++j) tab_[r][j] = w[r][j];
            tab_[r][vars_ + r] = Rational(1);
            tab_[r].back() = b[r];
            basis_[r] = vars_ + r;
        }
        cost_.assign(vars_ + rows_ + 1, Rational());
        for (std::size_t j = 0; j < vars_; ++j) cost_[j] = c[j];
    }

    void optimize() {
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < vars_ + rows_; ++j) {
                if (cost_[j].sign() > 0) {
                    enter = j;
                    break;  // Bland: smallest index with positive reduced cost
                }
            }
            if (enter == npos) return;
            std::size_t leave = npos;
            Rational best_ratio;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (tab_[r][enter].sign() <= 0) continue;
                Rational ratio = tab_[r].back() / tab_[r][enter];
                if (leave == npos || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == npos)
                throw std::logic_error("simplex: unbounded (impossible for shifted matrix game)");
            pivot(leave, enter);
        }
    }

    // Value of variable j in the current basic solution.
    Rational value_of(std::size_t j) const {
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] == j) return tab_[r].back();
        return Rational();
    }

    // Dual value of constraint r: negated reduced cost of its slack.
    Rational dual_of(std::size_t r) const { return -cost_[vars_ + r]; }

    Rational objective() const {
        Rational z;
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < vars_) z += tab_[r].back();  // c = 1 on structural vars
        return z;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void pivot(std::size_t leave, std::size_t enter) {
        Rational p = tab_[leave][enter];
        for (auto& v : tab_[leave]) v /= p;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == leave || tab_[r][enter].is_zero()) continue;
            Rational f = tab_[r][enter];
            for (std::size_t j = 0; j < tab_[r].size(); ++j) tab_[r][j] -= f * tab_[leave][j];
        }
        if (!cost_[enter].is_zero()) {
            Rational f = cost_[enter];
            for (std::size_t j = 0; j < cost_.size(); ++j) cost_[j] -= f * tab_[leave][j];
        }
        basis_[leave] = enter;
    }

    std::size_t rows_;
    std::size_t vars_;
    std::vector<RatVec> tab_;
    RatVec cost_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

// Solves the game exactly via the classical LP reduction: shift A so every
// entry is positive, then
//     max 1^T p  s.t.  A'^T p <= 1,  p >= 0
// yields x* = p / (1^T p) for the row player, the duals give y*, and the
// shifted value is 1 / (1^T p). The slack basis is feasible from the start,
// so no phase-1 is needed, and Bland's rule makes the pivot order (hence the
// returned equilibrium, when several exist) deterministic.
inline EquilibriumProfile solve_ne(const Game& g) {
    const std::size_t n = g.n(), m = g.m();
    Rational shift;
    if (g.min_entry() <= Rational(0)) shift = Rational(1) - g.min_entry();

    std::vector<RatVec> w(m, RatVec(n));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) w[j][i] = g.at(i, j) + shift;
    detail::SimplexTableau t(w, RatVec(m, Rational(1)), RatVec(n, Rational(1)));
    t.optimize();

    Rational z = t.objective();
    if (z.sign() <= 0) throw std::logic_error("solve_ne: nonpositive LP value");
    Rational shifted_value = Rational(1) / z;

    RatVec x(n), y(m);
    Rational dual_sum;
    for (std::size_t i = 0; i < n; ++i) x[i] = t.value_of(i) * shifted_value;
    for (std::size_t j = 0; j < m; ++j) {
        Rational q = t.dual_of(j);
        dual_sum += q;
        y[j] = q * shifted_value;
    }
    if (dual_sum != z) throw std::logic_error("solve_ne: strong duality violated");

    EquilibriumProfile eq{MixedStrategy::exact(std::move(x), PlayerRole::row),
                          MixedStrategy::exact(std::move(y), PlayerRole::column),
                          shifted_value - shift, false, false};
    eq.interior_x = eq.x_star.full_support();
    eq.interior_y = eq.y_star.full_support();

    StrategyProfile p = eq.profile();
    if (!exploitability_x(g, p).exact.is_zero() || !exploitability_y(g, p).exact.is_zero())
        throw std::logic_error("solve_ne: returned profile is exploitable");
    if (expected_payoff(g, p).exact != eq.value)
        throw std::logic_error("solve_ne: value mismatch");
    return eq;
}

// A_k: the rows are (a_{1,j}, a_{2,j}, ..., a_{n,j}) for j != k in increasing
// j, plus an all-ones row. A_k x = (v*,...,v*,1) pins the interior NE; the
// same system with a perturbed right-hand side yields the Z_u vertices.
inline RatMat build_ak(const Game& g, std::size_t k) {
    if (g.n() != g.m()) throw std::invalid_argument("build_ak: game must be square");
    const std::size_t n = g.n();
    if (k >= n) throw std::invalid_argument("build_ak: k out of range");
    RatMat ak(n, n);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        for (std::size_t i = 0; i < n; ++i) ak(r, i) = g.at(i, j);
        ++r;
    }
    for (std::size_t i = 0; i < n; ++i) ak(n - 1, i) = Rational(1);
    return ak;
}

struct Assumption2Report {
    std::vector<bool> nonsingular;  // one flag per A_k
    bool all_pass = false;
};

inline Assumption2Report check_assumption2(const Game& g) {
    if (g.n() != g.m()) throw std::invalid_argument("check_assumption2: game must be square");
    Assumption2Report rep;
    rep.all_pass = true;
    for (std::size_t k = 0; k < g.n(); ++k) {
        bool ok = !determinant(build_ak(g, k)).is_zero();
        rep.nonsingular.push_back(ok);
        rep.all_pass = rep.all_pass && ok;
    }
    return rep;
}

// "other" is reserved for games where interiority depends on which of several
// equilibria is inspected; this implementation classifies by the equilibrium
// the deterministic LP returns and never emits it.
enum class GameClass { rational_interior, non_interior, other };

inline GameClass classify_game(const Game& g) {
    EquilibriumProfile eq = solve_ne(g);
    return (eq.interior_x && eq.interior_y) ? GameClass::rational_interior
                                            : GameClass::non_interior;
}

}  // namespace hbr
