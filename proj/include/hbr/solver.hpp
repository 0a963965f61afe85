#pragma once

#include "hbr/cycle.hpp"
#include "hbr/dynamics.hpp"
#include "hbr/game.hpp"
#include "hbr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hbr {

// Theorem-style guarantee for the time-averaged profile, in units where the
// payoffs span one unit (see SolveConfig::normalize_losses).
inline double epsilon_bound(std::size_t n, double horizon) {
    if (n < 2 || !(horizon >= 1)) throw std::invalid_argument("epsilon_bound: need n >= 2, T >= 1");
    return std::sqrt(std::log(static_cast<double>(n)) / (2.0 * horizon));
}

// The game seen by the opposite pairing of update rules: the old row player
// becomes the best responder. Payoff matrix of the new column player is
// -A^T; equilibria transpose and the value negates.
inline Game swap_roles(const Game& g) {
    RatMat b(g.m(), g.n());
    for (std::size_t i = 0; i < g.m(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j) b(i, j) = -g.at(j, i);
    return Game(std::move(b));
}

struct SolveConfig {
    long long horizon = 100000;
    std::optional<double> eta;      // nullopt: sqrt(8 ln n / T)
    bool exact_mode = true;
    bool detect_cycles = true;      // honored in exact mode only
    bool normalize_losses = false;  // run Hedge on losses scaled into [0,1]
    bool record_trend = false;      // ND of the running averages, per stage
    std::size_t memory_cap_bytes = std::size_t(1) << 30;

    double resolve_eta(std::size_t n) const {
        double v = eta ? *eta : std::sqrt(8.0 * std::log(static_cast<double>(n)) /
                                          static_cast<double>(horizon));
        if (!(v > 0)) throw std::invalid_argument("SolveConfig: eta must be positive");
        return v;
    }
};

struct SolveResult {
    enum class Kind { exact_cycle, time_average };

    Kind kind = Kind::time_average;
    MixedStrategy strategy;       // best responder's output (exact flavor)
    MixedStrategy hedge_tas;      // Hedge player's time-averaged strategy
    long long stages_run = 0;     // stages actually simulated
    double eps_guarantee = 0.0;   // sqrt(ln n / 2T) for time-average results
    double nd_achieved = 0.0;     // ND of (hedge_tas, strategy), raw payoff units
    double nd_normalized = 0.0;   // nd_achieved / delta
    std::optional<CycleReport> cycle;
    bool certified = false;            // equal-rows consequence held for the cycle
    bool detection_degraded = false;   // memory cap forced time-averaging
    long long ambiguous_ties = 0;      // stages with unresolved BR near-ties
    std::vector<double> nd_trend;      // filled when record_trend

    SolveResult()
        : strategy(MixedStrategy::uniform(2, PlayerRole::column)),
          hedge_tas(MixedStrategy::uniform(2, PlayerRole::row)) {}
};

namespace detail {

inline double tas_profile_nd(const Game& g, const std::vector<double>& sum_x,
                             const std::vector<long long>& counts, long long stages) {
    std::vector<double> x(sum_x.size()), y(counts.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = sum_x[i] / static_cast<double>(stages);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = static_cast<double>(counts[j]) / static_cast<double>(stages);
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.m(); ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) v += x[i] * g.at_d(i, j);
        hi = std::max(hi, v);
    }
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.n(); ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < g.m(); ++j) v += g.at_d(i, j) * y[j];
        lo = std::min(lo, v);
    }
    return hi - lo;
}

// Exact running sum of float stage strategies; doubles are dyadic rationals,
// so the average is drift free.
struct ExactAverager {
    RatVec sum;
    explicit ExactAverager(std::size_t n) : sum(n) {}
    void add(const std::vector<double>& x) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += Rational::from_double(x[i]);
    }
    std::vector<double> average(long long stages) const {
        std::vector<double> out(sum.size());
        for (std::size_t i = 0; i < sum.size(); ++i)
            out[i] = (sum[i] / Rational(BigInt(stages))).to_double();
        return out;
    }
};

inline MixedStrategy float_strategy_normalized(std::vector<double> v, PlayerRole role) {
    double s = 0.0;
    for (double p : v) s += p;
    for (double& p : v) p /= s;
    return MixedStrategy::floating(std::move(v), role);
}

}  // namespace detail

// Streaming row sink for trajectory traces: t, x_1..x_n, y (1-based), Q_t,
// and the ND of the running time-averaged profile. Q_t needs the oracle NE
// strategy of the row player; rows carry an empty Q when it is unavailable.
struct TraceSink {
    std::ostream* out = nullptr;
    const EquilibriumProfile* oracle = nullptr;
};

// Algorithm: per stage, form the normalized state key, stop with the exact
// period average if the key recurred, otherwise play the Hedge/best-response
// stage and maintain the running time averages.
inline SolveResult run_hbr(const Game& g, const SolveConfig& cfg, TraceSink trace = {}) {
    const std::size_t n = g.n(), m = g.m();
    const double eta = cfg.resolve_eta(n);

    HedgeMyopicSim sim(g, {eta, cfg.exact_mode, cfg.normalize_losses});
    CycleDetector detector(cfg.memory_cap_bytes);
    const bool detecting = cfg.detect_cycles && cfg.exact_mode;

    SolveResult res;
    res.eps_guarantee = epsilon_bound(n, static_cast<double>(cfg.horizon));

    detail::ExactAverager exact_sum(n);
    std::vector<double> float_sum(n, 0.0);
    std::vector<double> x_sum_view(n, 0.0);  // plain double view for trends

    auto finish_time_average = [&](long long stages) {
        res.kind = SolveResult::Kind::time_average;
        res.stages_run = stages;
        RatVec ybar(m);
        for (std::size_t j = 0; j < m; ++j)
            ybar[j] = Rational(BigInt(sim.counts()[j]), BigInt(stages));
        res.strategy = MixedStrategy::exact(std::move(ybar), PlayerRole::column);
        auto xbar = cfg.exact_mode ? exact_sum.average(stages)
                                   : [&] {
                                         std::vector<double> v(n);
                                         for (std::size_t i = 0; i < n; ++i)
                                             v[i] = float_sum[i] / static_cast<double>(stages);
                                         return v;
                                     }();
        res.hedge_tas = detail::float_strategy_normalized(std::move(xbar), PlayerRole::row);
        StrategyProfile prof{res.hedge_tas, res.strategy};
        res.nd_achieved = nash_distance(g, prof).value;
        res.nd_normalized = g.delta().sign() > 0 ? res.nd_achieved / g.delta().to_double() : 0.0;
        res.ambiguous_ties = static_cast<long long>(sim.ambiguous_tie_stages().size());
    };

    for (long long t = 1; t <= cfg.horizon; ++t) {
        if (detecting && !detector.exhausted()) {
            StateKey key = normalize_state(sim.state_vec());
            if (auto t_prime = detector.check_and_insert(key, t)) {
                CycleReport report;
                report.t_prime = *t_prime;
                report.t = t;
                report.action_counts_in_period = window_counts(sim.actions(), *t_prime, t, m);
                res.kind = SolveResult::Kind::exact_cycle;
                res.stages_run = t;
                res.cycle = report;
                res.certified = verify_cycle_consequence(g, report);
                res.strategy = period_average(sim.actions(), *t_prime, t, m);
                long long averaged = t - 1;
                if (averaged > 0) {
                    res.hedge_tas = detail::float_strategy_normalized(
                        cfg.exact_mode ? exact_sum.average(averaged) : float_sum,
                        PlayerRole::row);
                } else {
                    res.hedge_tas = detail::float_strategy_normalized(
                        std::vector<double>(n, 1.0), PlayerRole::row);
                }
                StrategyProfile prof{res.hedge_tas, res.strategy};
                res.nd_achieved = nash_distance(g, prof).value;
                res.nd_normalized =
                    g.delta().sign() > 0 ? res.nd_achieved / g.delta().to_double() : 0.0;
                res.ambiguous_ties = static_cast<long long>(sim.ambiguous_tie_stages().size());
                return res;
            }
            if (detector.exhausted()) res.detection_degraded = true;
        }

        std::vector<double> x = sim.strategy();
        if (cfg.exact_mode)
            exact_sum.add(x);
        else
            for (std::size_t i = 0; i < n; ++i) float_sum[i] += x[i];
        for (std::size_t i = 0; i < n; ++i) x_sum_view[i] += x[i];

        std::size_t y = sim.step();

        if (cfg.record_trend)
            res.nd_trend.push_back(detail::tas_profile_nd(g, x_sum_view, sim.counts(), t));

        if (trace.out) {
            char buf[64];
            std::ostream& os = *trace.out;
            os << t;
            for (double xi : x) {
                std::snprintf(buf, sizeof buf, "%.12g", xi);
                os << ',' << buf;
            }
            os << ',' << (y + 1) << ',';
            if (trace.oracle) {
                double q = q_value(MixedStrategy::floating(x, PlayerRole::row),
                                   trace.oracle->x_star);
                std::snprintf(buf, sizeof buf, "%.12g", q);
                os << buf;
            }
            std::snprintf(buf, sizeof buf, "%.12g",
                          detail::tas_profile_nd(g, x_sum_view, sim.counts(), t));
            os << ',' << buf << '\n';
        }
    }

    finish_time_average(cfg.horizon);
    return res;
}

struct HspResult {
    MixedStrategy tas_x;
    MixedStrategy tas_y;
    std::vector<double> nd_trend;  // ND of the running averages at each stage
    double final_nd = 0.0;

    HspResult()
        : tas_x(MixedStrategy::uniform(2, PlayerRole::row)),
          tas_y(MixedStrategy::uniform(2, PlayerRole::column)) {}
};

inline HspResult run_hsp(const Game& g, long long horizon, std::optional<double> eta = {},
                         bool record_trend = true) {
    if (horizon < 1) throw std::invalid_argument("run_hsp: horizon must be >= 1");
    double e = eta ? *eta
                   : std::sqrt(8.0 * std::log(static_cast<double>(g.n())) /
                               static_cast<double>(horizon));
    HedgeSelfPlaySim sim(g, e);
    std::vector<double> sum_x(g.n(), 0.0), sum_y(g.m(), 0.0);
    HspResult res;
    for (long long t = 1; t <= horizon; ++t) {
        auto x = sim.strategy_x();
        auto y = sim.strategy_y();
        for (std::size_t i = 0; i < g.n(); ++i) sum_x[i] += x[i];
        for (std::size_t j = 0; j < g.m(); ++j) sum_y[j] += y[j];
        sim.step();
        if (record_trend || t == horizon) {
            std::vector<double> ax(g.n()), ay(g.m());
            for (std::size_t i = 0; i < g.n(); ++i) ax[i] = sum_x[i] / static_cast<double>(t);
            for (std::size_t j = 0; j < g.m(); ++j) ay[j] = sum_y[j] / static_cast<double>(t);
            auto prof = StrategyProfile{
                detail::float_strategy_normalized(ax, PlayerRole::row),
                detail::float_strategy_normalized(ay, PlayerRole::column)};
            double nd = nash_distance(g, prof).value;
            if (record_trend) res.nd_trend.push_back(nd);
            if (t == horizon) res.final_nd = nd;
        }
    }
    for (std::size_t i = 0; i < g.n(); ++i) sum_x[i] /= static_cast<double>(horizon);
    for (std::size_t j = 0; j < g.m(); ++j) sum_y[j] /= static_cast<double>(horizon);
    res.tas_x = detail::float_strategy_normalized(std::move(sum_x), PlayerRole::row);
    res.tas_y = detail::float_strategy_normalized(std::move(sum_y), PlayerRole::column);
    return res;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string strategy_tokens(const MixedStrategy& s) {
    std::string out;
    if (s.is_exact()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out += ' ';
            out += s.exact_probs()[i].to_string();
        }
    } else {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out += ' ';
            out += format_double(s.float_probs()[i]);
        }
    }
    return out;
}

}  // namespace detail

// Result file body: kind, strategies, guarantees, optional cycle line. The
// caller writes any config-echo header first. `row_is_best_responder` is set
// after a role swap, where the emitted exact strategy belongs to the original
// row player.
inline void write_result(std::ostream& os, const SolveResult& res, bool row_is_best_responder) {
    os << "kind="
       << (res.kind == SolveResult::Kind::exact_cycle ? "exact-cycle" : "time-average") << '\n';
    const char* br_name = row_is_best_responder ? "strategy_x" : "strategy_y";
    const char* hedge_name = row_is_best_responder ? "strategy_y" : "strategy_x";
    os << br_name << '=' << detail::strategy_tokens(res.strategy) << '\n';
    os << hedge_name << '=' << detail::strategy_tokens(res.hedge_tas) << '\n';
    os << "stages=" << res.stages_run << '\n';
    os << "eps=" << detail::format_double(
              res.kind == SolveResult::Kind::time_average ? res.eps_guarantee : 0.0)
       << '\n';
    os << "nd=" << detail::format_double(res.nd_achieved) << '\n';
    os << "nd_normalized=" << detail::format_double(res.nd_normalized) << '\n';
    if (res.cycle) {
        os << res.cycle->to_text() << '\n';
        os << "certificate=" << (res.certified ? "equal-rows" : "none") << '\n';
    }
    if (res.detection_degraded) os << "detection=degraded\n";
    if (res.ambiguous_ties > 0) os << "ambiguous_ties=" << res.ambiguous_ties << '\n';
}

}  // namespace hbr
