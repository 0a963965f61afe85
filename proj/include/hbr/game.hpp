#pragma once

#include "hbr/linalg.hpp"
#include "hbr/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hbr {

struct GameFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-player zero-sum matrix game. A(i, j) is the payoff of the column player
// (player Y) and the loss of the row player (player X) for the action pair
// (i, j).
//
// Alongside the exact matrix, the game carries the derived constants the
// dynamics needs: the payoff range delta, the LCM of all entry denominators,
// the denominator-cleared integer matrix A_int = lcm_den * A, and a double
// cache of A for the float paths.
class Game {
public:
    explicit Game(RatMat payoff) : a_(std::move(payoff)) {
        if (a_.rows() < 2 || a_.cols() < 2)
            throw GameFormatError("game must have at least 2 actions per player");
        Rational lo = a_(0, 0), hi = a_(0, 0);
        BigInt l = 1;
        for (std::size_t i = 0; i < a_.rows(); ++i) {
            for (std::size_t j = 0; j < a_.cols(); ++j) {
                lo = std::min(lo, a_(i, j));
                hi = std::max(hi, a_(i, j));
                l = lcm(l, a_(i, j).den());
            }
        }
        min_entry_ = lo;
        max_entry_ = hi;
        delta_ = hi - lo;
        lcm_den_ = l;
        a_int_.assign(a_.rows(), std::vector<BigInt>(a_.cols()));
        a_dbl_.assign(a_.rows(), std::vector<double>(a_.cols()));
        for (std::size_t i = 0; i < a_.rows(); ++i) {
            for (std::size_t j = 0; j < a_.cols(); ++j) {
                a_int_[i][j] = a_(i, j).num() * (l / a_(i, j).den());
                a_dbl_[i][j] = a_(i, j).to_double();
            }
        }
    }

    // Builds the exact game whose entries are the given doubles (each IEEE
    // double is a dyadic rational). This is how irrational payoffs like
    // sqrt(2) enter: as the exact value of their double approximation.
    static Game from_doubles(const std::vector<std::vector<double>>& entries) {
        if (entries.empty()) throw GameFormatError("empty payoff matrix");
        std::size_t n = entries.size(), m = entries[0].size();
        RatMat a(n, m);
        for (std::size_t i = 0; i < n; ++i) {
            if (entries[i].size() != m) throw GameFormatError("ragged payoff matrix");
            for (std::size_t j = 0; j < m; ++j) a(i, j) = Rational::from_double(entries[i][j]);
        }
        return Game(std::move(a));
    }

    std::size_t n() const { return a_.rows(); }  // row player actions
    std::size_t m() const { return a_.cols(); }  // column player actions

    const RatMat& payoff() const { return a_; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_(i, j); }
    double at_d(std::size_t i, std::size_t j) const { return a_dbl_[i][j]; }

    const Rational& delta() const { return delta_; }
    const Rational& min_entry() const { return min_entry_; }
    const Rational& max_entry() const { return max_entry_; }
    const BigInt& lcm_den() const { return lcm_den_; }
    const std::vector<std::vector<BigInt>>& a_int() const { return a_int_; }

    // Plain text format: first non-comment line `n m`, then n rows of m
    // rational tokens. Lines starting with `#` are comments.
    static Game parse(std::istream& in) {
        std::vector<std::string> tokens;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] == '#') continue;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
        }
        if (tokens.size() < 2) throw GameFormatError("missing dimension header");
        std::size_t n = 0, m = 0;
        try {
            n = std::stoul(tokens[0]);
            m = std::stoul(tokens[1]);
        } catch (const std::exception&) {
            throw GameFormatError("bad dimension header");
        }
        if (tokens.size() != 2 + n * m)
            throw GameFormatError("expected " + std::to_string(n * m) + " payoff entries, got " +
                                  std::to_string(tokens.size() - 2));
        RatMat a(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                try {
                    a(i, j) = Rational::parse(tokens[2 + i * m + j]);
                } catch (const std::invalid_argument& e) {
                    throw GameFormatError(e.what());
                }
            }
        return Game(std::move(a));
    }

private:
    RatMat a_;
    Rational delta_;
    Rational min_entry_;
    Rational max_entry_;
    BigInt lcm_den_ = 1;
    std::vector<std::vector<BigInt>> a_int_;
    std::vector<std::vector<double>> a_dbl_;
};

enum class PlayerRole { row, column };

// Probability vector over one player's actions, in an exact rational flavor
// or a binary-float flavor. The flavor decides which arithmetic downstream
// operations use.
class MixedStrategy {
public:
    static MixedStrategy exact(RatVec probs, PlayerRole role) {
        Rational sum;
        for (const auto& p : probs) {
            if (p.sign() < 0) throw std::invalid_argument("strategy entry < 0");
            sum += p;
        }
        if (sum != Rational(1)) throw std::invalid_argument("exact strategy must sum to 1");
        MixedStrategy s;
        s.exact_ = std::move(probs);
        s.is_exact_ = true;
        s.role_ = role;
        return s;
    }

    static MixedStrategy floating(std::vector<double> probs, PlayerRole role) {
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0)) throw std::invalid_argument("strategy entry < 0 or NaN");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("float strategy must sum to 1 within 1e-12");
        MixedStrategy s;
        s.float_ = std::move(probs);
        s.is_exact_ = false;
        s.role_ = role;
        return s;
    }

    static MixedStrategy uniform(std::size_t k, PlayerRole role) {
        return exact(RatVec(k, Rational(1, BigInt(k))), role);
    }

    static MixedStrategy pure(std::size_t index, std::size_t k, PlayerRole role) {
        RatVec p(k);
        p.at(index) = Rational(1);
        return exact(std::move(p), role);
    }

    bool is_exact() const { return is_exact_; }
    PlayerRole role() const { return role_; }
    std::size_t size() const { return is_exact_ ? exact_.size() : float_.size(); }

    const RatVec& exact_probs() const {
        if (!is_exact_) throw std::logic_error("strategy is not exact");
        return exact_;
    }
    const std::vector<double>& float_probs() const {
        if (is_exact_) throw std::logic_error("strategy is not float");
        return float_;
    }

    std::vector<double> as_doubles() const {
        if (!is_exact_) return float_;
        std::vector<double> out(exact_.size());
        for (std::size_t i = 0; i < exact_.size(); ++i) out[i] = exact_[i].to_double();
        return out;
    }

    bool full_support() const {
        if (is_exact_) {
            for (const auto& p : exact_)
                if (p.sign() <= 0) return false;
            return true;
        }
        for (double p : float_)
            if (!(p > 0.0)) return false;
        return true;
    }

private:
    MixedStrategy() = default;
    RatVec exact_;
    std::vector<double> float_;
    bool is_exact_ = false;
    PlayerRole role_ = PlayerRole::row;
};

struct StrategyProfile {
    MixedStrategy x;  // row player
    MixedStrategy y;  // column player
};

// Value of a payoff evaluation: exact when both inputs were exact.
struct PayoffValue {
    Rational exact;
    double value = 0.0;
    bool is_exact = false;

    static PayoffValue from_exact(Rational r) {
        return PayoffValue{r, r.to_double(), true};
    }
    static PayoffValue from_double(double d) { return PayoffValue{Rational(), d, false}; }
};

namespace detail {

inline void check_profile(const Game& g, const StrategyProfile& p) {
    if (p.x.size() != g.n() || p.y.size() != g.m())
        throw std::invalid_argument("profile dimensions do not match game");
}

// x^T A e_j for every j, in the flavor of x.
inline RatVec pure_payoffs_vs_x_exact(const Game& g, const RatVec& x) {
    return vec_mat(x, g.payoff());
}

inline std::vector<double> pure_payoffs_vs_x(const Game& g, const std::vector<double>& x) {
    std::vector<double> out(g.m(), 0.0);
    for (std::size_t j = 0; j < g.m(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) acc += x[i] * g.at_d(i, j);
        out[j] = acc;
    }
    return out;
}

// e_i^T A y for every i, in the flavor of y.
inline RatVec pure_payoffs_vs_y_exact(const Game& g, const RatVec& y) {
    return mat_vec(g.payoff(), y);
}

inline std::vector<double> pure_payoffs_vs_y(const Game& g, const std::vector<double>& y) {
    std::vector<double> out(g.n(), 0.0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.m(); ++j) acc += g.at_d(i, j) * y[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

// x^T A y, the stage payoff of player Y under the profile.
inline PayoffValue expected_payoff(const Game& g, const StrategyProfile& p) {
    detail::check_profile(g, p);
    if (p.x.is_exact() && p.y.is_exact()) {
        return PayoffValue::from_exact(
            dot(detail::pure_payoffs_vs_x_exact(g, p.x.exact_probs()), p.y.exact_probs()));
    }
    auto x = p.x.as_doubles();
    auto y = p.y.as_doubles();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.m(); ++j) acc += x[i] * g.at_d(i, j) * y[j];
    return PayoffValue::from_double(acc);
}

// e_x: how much player Y gains by best-responding to x instead of playing y.
// Pure deviations suffice by linearity.
inline PayoffValue exploitability_x(const Game& g, const StrategyProfile& p) {
    detail::check_profile(g, p);
    if (p.x.is_exact() && p.y.is_exact()) {
        RatVec pays = detail::pure_payoffs_vs_x_exact(g, p.x.exact_probs());
        Rational best = pays[0];
        for (const auto& v : pays) best = std::max(best, v);
        return PayoffValue::from_exact(best - expected_payoff(g, p).exact);
    }
    auto pays = detail::pure_payoffs_vs_x(g, p.x.as_doubles());
    double best = *std::max_element(pays.begin(), pays.end());
    return PayoffValue::from_double(best - expected_payoff(g, p).value);
}

// e_y: how much player X saves by best-responding to y instead of playing x.
inline PayoffValue exploitability_y(const Game& g, const StrategyProfile& p) {
    detail::check_profile(g, p);
    if (p.x.is_exact() && p.y.is_exact()) {
        RatVec pays = detail::pure_payoffs_vs_y_exact(g, p.y.exact_probs());
        Rational worst = pays[0];
        for (const auto& v : pays) worst = std::min(worst, v);
        return PayoffValue::from_exact(expected_payoff(g, p).exact - worst);
    }
    auto pays = detail::pure_payoffs_vs_y(g, p.y.as_doubles());
    double worst = *std::min_element(pays.begin(), pays.end());
    return PayoffValue::from_double(expected_payoff(g, p).value - worst);
}

// ND = e_x + e_y = max_j x^T A e_j - min_i e_i^T A y. Zero exactly at a NE.
inline PayoffValue nash_distance(const Game& g, const StrategyProfile& p) {
    auto ex = exploitability_x(g, p);
    auto ey = exploitability_y(g, p);
    if (ex.is_exact && ey.is_exact) return PayoffValue::from_exact(ex.exact + ey.exact);
    return PayoffValue::from_double(ex.value + ey.value);
}

inline bool is_eps_ne(const Game& g, const StrategyProfile& p, const PayoffValue& eps) {
    auto ex = exploitability_x(g, p);
    auto ey = exploitability_y(g, p);
    if (ex.is_exact && ey.is_exact && eps.is_exact)
        return ex.exact <= eps.exact && ey.exact <= eps.exact;
    double e = eps.is_exact ? eps.exact.to_double() : eps.value;
    double vx = ex.is_exact ? ex.exact.to_double() : ex.value;
    double vy = ey.is_exact ? ey.exact.to_double() : ey.value;
    return vx <= e && vy <= e;
}

inline bool is_eps_ne(const Game& g, const StrategyProfile& p, double eps) {
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    return is_eps_ne(g, p, PayoffValue::from_double(eps));
}

}  // namespace hbr
