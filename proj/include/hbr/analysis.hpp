#pragma once

#include "hbr/dynamics.hpp"
#include "hbr/game.hpp"
#include "hbr/linalg.hpp"
#include "hbr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbr {

// The polyhedron Z_u = { x in the simplex : A^T x <= b 1 } with
// b = v* + eta delta^2 / 8, described by its n vertices. Vertex k solves
// A_k x = c + delta_c, i.e. it equalizes x^T A e_j = b on every facet j != k.
//
// eta enters exactly: the double learning rate is promoted to the dyadic
// rational it actually is, so every vertex is an exact rational point.
struct ZuDescription {
    Rational b;                       // uniform facet right-hand side
    Rational slack;                   // eta * delta^2 / 8
    std::vector<RatVec> vertices;     // vertex k has index k as its off facet
    Rational min_entry;               // eps_d: smallest coordinate over all vertices
    Rational inverse_norm_bound_sq;   // max_k ||A_k^{-1}||_F^2 (spectral upper bound)
};

inline ZuDescription zu_vertices(const Game& g, double eta, const EquilibriumProfile& profile) {
    if (g.n() != g.m()) throw std::invalid_argument("zu_vertices: game must be square");
    if (!profile.interior_x || !profile.interior_y)
        throw std::invalid_argument("zu_vertices: requires an interior equilibrium");
    const std::size_t n = g.n();

    ZuDescription zu;
    zu.slack = Rational::from_double(eta) * g.delta() * g.delta() / Rational(8);
    zu.b = profile.value + zu.slack;

    for (std::size_t k = 0; k < n; ++k) {
        RatMat ak = build_ak(g, k);
        RatVec rhs(n, zu.b);
        rhs[n - 1] = Rational(1);
        auto x = solve_linear_system(ak, rhs);
        if (!x) throw std::runtime_error("zu_vertices: A_" + std::to_string(k + 1) + " is singular");
        for (const auto& xi : *x) {
            if (xi.sign() <= 0)
                throw std::runtime_error(
                    "zu_vertices: vertex " + std::to_string(k + 1) +
                    " is not strictly positive; eta is too large for this game");
        }
        auto inv = inverse(ak);
        Rational fn = frobenius_norm_squared(*inv);
        zu.inverse_norm_bound_sq = std::max(zu.inverse_norm_bound_sq, fn);
        if (zu.vertices.empty() || *std::min_element(x->begin(), x->end()) < zu.min_entry)
            zu.min_entry = *std::min_element(x->begin(), x->end());
        zu.vertices.push_back(std::move(*x));
    }
    return zu;
}

// Membership test for Z_u: max_j x^T A e_j <= v* + eta delta^2 / 8 (closed).
inline bool zu_contains(const Game& g, double eta, const Rational& v_star,
                        const MixedStrategy& x) {
    if (x.size() != g.n()) throw std::invalid_argument("zu_contains: dimension mismatch");
    if (x.is_exact()) {
        Rational b = v_star + Rational::from_double(eta) * g.delta() * g.delta() / Rational(8);
        RatVec pays = vec_mat(x.exact_probs(), g.payoff());
        for (const auto& p : pays)
            if (p > b) return false;
        return true;
    }
    double b = v_star.to_double() + eta * g.delta().to_double() * g.delta().to_double() / 8.0;
    auto pays = detail::pure_payoffs_vs_x(g, x.float_probs());
    for (double p : pays)
        if (p > b) return false;
    return true;
}

// Constants of the Q-sequence bound:
//   M_p = -ln eps_d   bounds Q over Z_u,
//   delta_u = v* - min a_ij,
//   M_Q = max(ln n, M_p + eta delta_u)  bounds the whole Q-sequence.
struct QBoundConstants {
    double m_p = 0.0;
    Rational delta_u;
    double m_q = 0.0;
};

inline QBoundConstants q_bound_constants(const Game& g, double eta,
                                         const EquilibriumProfile& profile) {
    ZuDescription zu = zu_vertices(g, eta, profile);
    QBoundConstants out;
    out.m_p = -std::log(zu.min_entry.to_double());
    out.delta_u = profile.value - g.min_entry();
    out.m_q = std::max(std::log(static_cast<double>(g.n())),
                       out.m_p + eta * out.delta_u.to_double());
    return out;
}

// One row per stage of an exact run: the exact regret vector and the best
// response taken from that state.
struct RegretTrajectoryRow {
    long long t = 0;
    RatVec regrets;
    std::size_t br = 0;  // 0-based
};

// Replays an exact-mode action history and tabulates R_t = (t-1) v* 1 - A c_t
// together with the action taken at each stage. Suitable for re-plotting the
// regret-lattice picture.
inline std::vector<RegretTrajectoryRow> export_regret_trajectory(
    const Game& g, const Rational& v_star, const std::vector<std::size_t>& y_history) {
    std::vector<RegretTrajectoryRow> rows;
    rows.reserve(y_history.size());
    std::vector<BigInt> s(g.n(), BigInt(0));
    for (std::size_t idx = 0; idx < y_history.size(); ++idx) {
        long long t = static_cast<long long>(idx) + 1;
        RegretTrajectoryRow row;
        row.t = t;
        row.regrets = RegretVector::from_state(g, s, t, v_star).r;
        row.br = y_history[idx];
        rows.push_back(std::move(row));
        for (std::size_t i = 0; i < g.n(); ++i) s[i] += g.a_int()[i][y_history[idx]];
    }
    return rows;
}

// CSV schema: t,R_1..R_n,br with exact `p/q` tokens and 1-based actions.
inline void write_regret_trajectory_csv(std::ostream& os,
                                        const std::vector<RegretTrajectoryRow>& rows,
                                        std::size_t n) {
    os << 't';
    for (std::size_t i = 1; i <= n; ++i) os << ",R_" << i;
    os << ",br\n";
    for (const auto& row : rows) {
        os << row.t;
        for (const auto& r : row.regrets) os << ',' << r.to_string();
        os << ',' << (row.br + 1) << '\n';
    }
}

}  // namespace hbr
