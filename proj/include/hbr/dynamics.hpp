#pragma once

#include "hbr/game.hpp"
#include "hbr/oracle.hpp"
#include "hbr/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hbr {

// Relative score gap below which a best-response comparison in exact mode is
// treated as a potential tie and double-checked in exact arithmetic.
inline constexpr double kTieMargin = 1e-12;

// Hedge stage strategy: softmax of -eta * cumulative loss, max-subtracted for
// stability. The shift invariance of the softmax is what makes the normalized
// state vector a faithful fingerprint of x_t.
inline std::vector<double> hedge_strategy(const std::vector<double>& cum_loss, double eta) {
    if (!(eta > 0)) throw std::invalid_argument("hedge_strategy: eta must be positive");
    if (cum_loss.empty()) throw std::invalid_argument("hedge_strategy: empty loss vector");
    for (double l : cum_loss)
        if (!std::isfinite(l)) throw std::invalid_argument("hedge_strategy: non-finite loss");
    double lo = *std::min_element(cum_loss.begin(), cum_loss.end());
    std::vector<double> w(cum_loss.size());
    double z = 0.0;
    for (std::size_t i = 0; i < cum_loss.size(); ++i) {
        w[i] = std::exp(-eta * (cum_loss[i] - lo));
        z += w[i];
    }
    for (double& v : w) v /= z;
    return w;
}

// One multiplicative update from x_{t-1} and Y's previous action; consistent
// with recomputing hedge_strategy on the updated cumulative loss.
inline MixedStrategy hedge_step(const MixedStrategy& x_prev, std::size_t y_prev, const Game& g,
                                double eta) {
    if (y_prev >= g.m()) throw std::invalid_argument("hedge_step: action out of range");
    auto x = x_prev.as_doubles();
    if (x.size() != g.n()) throw std::invalid_argument("hedge_step: dimension mismatch");
    double lo = g.at_d(0, y_prev);
    for (std::size_t i = 1; i < g.n(); ++i) lo = std::min(lo, g.at_d(i, y_prev));
    double z = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        x[i] *= std::exp(-eta * (g.at_d(i, y_prev) - lo));
        z += x[i];
    }
    for (double& v : x) v /= z;
    return MixedStrategy::floating(std::move(x), PlayerRole::row);
}

// Myopic best response to x: the column maximizing x^T A e_j, ties broken by
// the smallest index. Exact strategies are compared in exact arithmetic;
// float strategies use strict double comparison.
inline std::size_t best_response(const Game& g, const MixedStrategy& x) {
    if (x.size() != g.n()) throw std::invalid_argument("best_response: dimension mismatch");
    if (x.is_exact()) {
        RatVec pays = detail::pure_payoffs_vs_x_exact(g, x.exact_probs());
        std::size_t best = 0;
        for (std::size_t j = 1; j < pays.size(); ++j)
            if (pays[j] > pays[best]) best = j;  // strict: first maximum wins
        return best;
    }
    auto pays = detail::pure_payoffs_vs_x(g, x.float_probs());
    std::size_t best = 0;
    for (std::size_t j = 1; j < pays.size(); ++j)
        if (pays[j] > pays[best]) best = j;
    return best;
}

// Q(x) = -sum_i x*_i ln x_i: cross entropy between x and the interior NE
// strategy. A zero entry in x means the trajectory left the region where Q is
// defined; on rational-interior games that signals a bug, so it is an error
// rather than infinity.
inline double q_value(const MixedStrategy& x, const MixedStrategy& x_star) {
    if (x.size() != x_star.size()) throw std::invalid_argument("q_value: dimension mismatch");
    auto xs = x_star.as_doubles();
    auto xv = x.as_doubles();
    double q = 0.0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
        if (!(xv[i] > 0.0)) throw std::domain_error("q_value: boundary strategy (zero entry)");
        q -= xs[i] * std::log(xv[i]);
    }
    return q;
}

// Per-action regret vector R_{i,t} = sum_{tau<t} (v* - e_i^T A y_tau), exact.
// With rational payoffs every entry lives on the lattice of integer multiples
// of 1 / (lcm_den * den(v*)).
struct RegretVector {
    RatVec r;

    // cum_loss_int is A_int * c (the unnormalized integer state vector).
    static RegretVector from_state(const Game& g, const std::vector<BigInt>& cum_loss_int,
                                   long long t, const Rational& v_star) {
        RegretVector out;
        out.r.resize(cum_loss_int.size());
        Rational base = Rational(BigInt(t - 1)) * v_star;
        for (std::size_t i = 0; i < cum_loss_int.size(); ++i)
            out.r[i] = base - Rational(cum_loss_int[i], g.lcm_den());
        return out;
    }
};

// Q_t recomputed from the regret vector: Q_t = ln sum_i e^{eta R_i}.
// Algebraically equal to q_value(x_t, x*) because sum_i x*_i R_i = 0.
inline double q_from_history(const RegretVector& reg, double eta) {
    if (reg.r.empty()) throw std::invalid_argument("q_from_history: empty regret vector");
    double hi = reg.r[0].to_double();
    std::vector<double> rd(reg.r.size());
    for (std::size_t i = 0; i < reg.r.size(); ++i) {
        rd[i] = reg.r[i].to_double();
        hi = std::max(hi, rd[i]);
    }
    double z = 0.0;
    for (double v : rd) z += std::exp(eta * (v - hi));
    return eta * hi + std::log(z);
}

// D(x) = ln sum_i x_i e^{eta (v* - e_i^T A y_x)} with y_x = BR(x). On a
// trajectory D(x_t) = Q_{t+1} - Q_t.
inline double d_value(const Game& g, const MixedStrategy& x, const Rational& v_star, double eta) {
    std::size_t y = best_response(g, x);
    auto xv = x.as_doubles();
    double vs = v_star.to_double();
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<double> expo(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        expo[i] = eta * (vs - g.at_d(i, y));
        hi = std::max(hi, expo[i]);
    }
    double z = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) z += xv[i] * std::exp(expo[i] - hi);
    return hi + std::log(z);
}

// KL(x* || x) = Q(x) + sum_i x*_i ln x*_i.
inline double kl_divergence(const MixedStrategy& x_star, const MixedStrategy& x) {
    auto xs = x_star.as_doubles();
    double entropy_term = 0.0;
    for (double p : xs) {
        if (!(p > 0.0)) throw std::domain_error("kl_divergence: boundary reference strategy");
        entropy_term += p * std::log(p);
    }
    return q_value(x, x_star) + entropy_term;
}

// Deterministic Hedge-vs-myopic-best-response recurrence.
//
// Exact mode keeps the bookkeeping on the integer lattice: the state vector
// s = A_int * c determines x_t through the softmax, and the best response is
// ranked from s in long-double precision with compensated summation, falling
// back to exact arithmetic when two scores are within kTieMargin relatively.
// Stages where a near-tie could not be resolved exactly are recorded.
//
// Float mode accumulates double losses and compares scores strictly in
// doubles; it is the only option for payoff data that is conceptually
// irrational, and cycle detection is meaningless there.
class HedgeMyopicSim {
public:
    struct Options {
        double eta = 0.0;
        bool exact_mode = true;
        // Scale losses by 1/delta so they span one unit, as the Hedge regret
        // bound assumes. Leaves the state lattice untouched.
        bool normalize_losses = false;
    };

    HedgeMyopicSim(const Game& g, Options opt) : g_(&g), opt_(opt) {
        if (!(opt.eta > 0)) throw std::invalid_argument("HedgeMyopicSim: eta must be positive");
        eta_eff_ = opt.eta;
        if (opt.normalize_losses && g.delta().sign() > 0)
            eta_eff_ /= g.delta().to_double();
        counts_.assign(g.m(), 0);
        if (opt.exact_mode) {
            state_.assign(g.n(), BigInt(0));
            lcm_den_ld_ = g.lcm_den().convert_to<long double>();
            a_ld_.assign(g.n(), std::vector<long double>(g.m()));
            for (std::size_t i = 0; i < g.n(); ++i)
                for (std::size_t j = 0; j < g.m(); ++j)
                    a_ld_[i][j] = boost::multiprecision::cpp_rational(g.at(i, j).num(), g.at(i, j).den())
                                      .convert_to<long double>();
        } else {
            cum_loss_.assign(g.n(), 0.0);
        }
    }

    const Game& game() const { return *g_; }
    long long t() const { return t_; }
    double eta_effective() const { return eta_eff_; }
    bool exact_mode() const { return opt_.exact_mode; }
    const std::vector<long long>& counts() const { return counts_; }
    const std::vector<BigInt>& state_vec() const {
        if (!opt_.exact_mode) throw std::logic_error("state_vec: float mode has no exact state");
        return state_;
    }
    const std::vector<std::size_t>& actions() const { return actions_; }
    const std::vector<long long>& ambiguous_tie_stages() const { return tie_log_; }

    // x_t from the current cumulative state.
    std::vector<double> strategy() const {
        if (opt_.exact_mode) {
            std::vector<long double> loss(g_->n());
            for (std::size_t i = 0; i < g_->n(); ++i)
                loss[i] = state_[i].convert_to<long double>() / lcm_den_ld_;
            long double lo = *std::min_element(loss.begin(), loss.end());
            std::vector<long double> w(g_->n());
            long double z = 0.0L;
            for (std::size_t i = 0; i < g_->n(); ++i) {
                w[i] = std::exp(static_cast<long double>(-eta_eff_) * (loss[i] - lo));
                z += w[i];
            }
            std::vector<double> x(g_->n());
            for (std::size_t i = 0; i < g_->n(); ++i) x[i] = static_cast<double>(w[i] / z);
            return x;
        }
        return hedge_strategy(cum_loss_, eta_eff_);
    }

    // Plays out one stage: chooses y_t, advances counters. Returns y_t.
    std::size_t step() {
        std::size_t y = opt_.exact_mode ? br_from_exact_state() : br_from_float_state();
        actions_.push_back(y);
        counts_[y] += 1;
        if (opt_.exact_mode) {
            for (std::size_t i = 0; i < g_->n(); ++i) state_[i] += g_->a_int()[i][y];
        } else {
            for (std::size_t i = 0; i < g_->n(); ++i) cum_loss_[i] += g_->at_d(i, y);
        }
        t_ += 1;
        return y;
    }

    RegretVector regrets(const Rational& v_star) const {
        if (!opt_.exact_mode) throw std::logic_error("regrets: requires exact mode");
        return RegretVector::from_state(*g_, state_, t_, v_star);
    }

private:
    std::size_t br_from_float_state() const {
        auto x = hedge_strategy(cum_loss_, eta_eff_);
        std::size_t best = 0;
        double bestv = 0.0;
        for (std::size_t j = 0; j < g_->m(); ++j) {
            double v = 0.0;
            for (std::size_t i = 0; i < g_->n(); ++i) v += x[i] * g_->at_d(i, j);
            if (j == 0 || v > bestv) {
                best = j;
                bestv = v;
            }
        }
        return best;
    }

    std::size_t br_from_exact_state() {
        const std::size_t n = g_->n(), m = g_->m();
        std::vector<long double> loss(n);
        for (std::size_t i = 0; i < n; ++i)
            loss[i] = state_[i].convert_to<long double>() / lcm_den_ld_;
        long double lo = *std::min_element(loss.begin(), loss.end());
        std::vector<long double> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = std::exp(static_cast<long double>(-eta_eff_) * (loss[i] - lo));

        // Scores are proportional to x_t^T A e_j; Kahan-compensated sums.
        std::vector<long double> score(m);
        for (std::size_t j = 0; j < m; ++j) {
            long double acc = 0.0L, comp = 0.0L;
            for (std::size_t i = 0; i < n; ++i) {
                long double term = w[i] * a_ld_[i][j] - comp;
                long double next = acc + term;
                comp = (next - acc) - term;
                acc = next;
            }
            score[j] = acc;
        }
        std::size_t best = 0;
        for (std::size_t j = 1; j < m; ++j)
            if (score[j] > score[best]) best = j;

        long double scale = std::max<long double>(1.0L, std::fabs(score[best]));
        for (std::size_t j = 0; j < m; ++j) {
            if (j == best) continue;
            if (std::fabs(score[j] - score[best]) > kTieMargin * scale) continue;
            if (exactly_tied(j, best)) {
                if (j < best) best = j;
            } else {
                tie_log_.push_back(t_);
            }
        }
        return best;
    }

    // Columns j and k produce exactly equal scores iff, grouping rows by equal
    // cumulative loss (equal loss <=> equal Hedge weight), every group's
    // payoff difference sums to zero.
    bool exactly_tied(std::size_t j, std::size_t k) const {
        std::vector<std::size_t> order(g_->n());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return state_[a] < state_[b]; });
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t e = i;
            Rational diff;
            while (e < order.size() && state_[order[e]] == state_[order[i]]) {
                diff += g_->at(order[e], j) - g_->at(order[e], k);
                ++e;
            }
            if (!diff.is_zero()) return false;
            i = e;
        }
        return true;
    }

    const Game* g_;
    Options opt_;
    double eta_eff_ = 0.0;
    long long t_ = 1;
    std::vector<long long> counts_;
    std::vector<std::size_t> actions_;
    std::vector<BigInt> state_;    // exact mode: A_int * c
    std::vector<double> cum_loss_;  // float mode
    std::vector<std::vector<long double>> a_ld_;
    long double lcm_den_ld_ = 1.0L;
    std::vector<long long> tie_log_;
};

// Hedge self-play: both players run Hedge against the opponent's stage mixed
// strategy. Y's losses are the negated payoffs -x^T A e_j.
class HedgeSelfPlaySim {
public:
    HedgeSelfPlaySim(const Game& g, double eta) : g_(&g), eta_(eta) {
        if (!(eta > 0)) throw std::invalid_argument("HedgeSelfPlaySim: eta must be positive");
        loss_x_.assign(g.n(), 0.0);
        loss_y_.assign(g.m(), 0.0);
    }

    long long t() const { return t_; }
    std::vector<double> strategy_x() const { return hedge_strategy(loss_x_, eta_); }
    std::vector<double> strategy_y() const { return hedge_strategy(loss_y_, eta_); }

    void step() {
        auto x = strategy_x();
        auto y = strategy_y();
        for (std::size_t i = 0; i < g_->n(); ++i) {
            double li = 0.0;
            for (std::size_t j = 0; j < g_->m(); ++j) li += g_->at_d(i, j) * y[j];
            loss_x_[i] += li;
        }
        for (std::size_t j = 0; j < g_->m(); ++j) {
            double lj = 0.0;
            for (std::size_t i = 0; i < g_->n(); ++i) lj += x[i] * g_->at_d(i, j);
            loss_y_[j] -= lj;
        }
        t_ += 1;
    }

private:
    const Game* g_;
    double eta_;
    long long t_ = 1;
    std::vector<double> loss_x_;
    std::vector<double> loss_y_;
};

}  // namespace hbr
