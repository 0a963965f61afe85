#pragma once

#include "hbr/game.hpp"
#include "hbr/oracle.hpp"
#include "hbr/rational.hpp"

#include <boost/functional/hash.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hbr {

// Normalized integer state vector: s = A_int * c with the last component
// subtracted from every entry. Because the softmax is shift invariant and
// A_int is a uniform scaling of A, two stages share a key exactly when they
// share the same x_t.
struct StateKey {
    std::vector<BigInt> v;  // last component always zero

    friend bool operator==(const StateKey& a, const StateKey& b) { return a.v == b.v; }
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::size_t seed = 0;
        for (const auto& c : k.v) boost::hash_combine(seed, c);
        return seed;
    }
};

inline StateKey normalize_state(std::vector<BigInt> s) {
    if (s.empty()) throw std::invalid_argument("normalize_state: empty state");
    BigInt last = s.back();
    for (auto& c : s) c -= last;
    return StateKey{std::move(s)};
}

inline StateKey state_key(const Game& g, const std::vector<long long>& counts) {
    if (counts.size() != g.m()) throw std::invalid_argument("state_key: counts dimension mismatch");
    std::vector<BigInt> s(g.n(), BigInt(0));
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.m(); ++j)
            if (counts[j] != 0) s[i] += g.a_int()[i][j] * counts[j];
    return normalize_state(std::move(s));
}

struct CycleReport {
    long long t_prime = 0;  // first occurrence of the recurring state
    long long t = 0;        // stage at which the recurrence was found
    std::vector<long long> action_counts_in_period;  // Y's actions over [t', t)

    long long period() const { return t - t_prime; }

    std::string to_text() const {
        std::ostringstream os;
        os << "cycle t'=" << t_prime << " t=" << t << " period=" << period();
        return os.str();
    }
};

// Stage index keyed by exact state. Exact mode only; float states have no
// meaningful equality. A byte budget caps the map since keys grow with the
// horizon; when it is hit the detector reports exhaustion and the caller
// falls back to plain time-averaging.
class CycleDetector {
public:
    explicit CycleDetector(std::size_t memory_cap_bytes = default_cap)
        : cap_(memory_cap_bytes) {}

    // Returns the stage that first produced this key, or nullopt after
    // inserting it as new.
    std::optional<long long> check_and_insert(const StateKey& key, long long stage) {
        if (exhausted_) return std::nullopt;
        auto it = seen_.find(key);
        if (it != seen_.end()) return it->second;
        bytes_ += entry_bytes(key);
        if (bytes_ > cap_) {
            exhausted_ = true;
            seen_.clear();
            return std::nullopt;
        }
        seen_.emplace(key, stage);
        return std::nullopt;
    }

    bool exhausted() const { return exhausted_; }
    std::size_t size() const { return seen_.size(); }

private:
    static constexpr std::size_t default_cap = std::size_t(1) << 30;

    static std::size_t entry_bytes(const StateKey& key) {
        std::size_t b = sizeof(StateKey) + 2 * sizeof(void*) + sizeof(long long);
        for (const auto& c : key.v) b += sizeof(BigInt) + c.backend().size() * sizeof(void*);
        return b;
    }

    std::unordered_map<StateKey, long long, StateKeyHash> seen_;
    std::size_t cap_;
    std::size_t bytes_ = 0;
    bool exhausted_ = false;
};

// Exact empirical distribution of Y's actions over the window [t_prime, t).
inline MixedStrategy period_average(const std::vector<std::size_t>& y_history, long long t_prime,
                                    long long t, std::size_t m) {
    if (t <= t_prime) throw std::invalid_argument("period_average: empty window");
    if (t_prime < 1 || static_cast<std::size_t>(t - 1) > y_history.size())
        throw std::invalid_argument("period_average: window outside recorded history");
    std::vector<long long> counts(m, 0);
    for (long long stage = t_prime; stage < t; ++stage) counts.at(y_history[stage - 1]) += 1;
    RatVec probs(m);
    BigInt period(t - t_prime);
    for (std::size_t j = 0; j < m; ++j) probs[j] = Rational(BigInt(counts[j]), period);
    return MixedStrategy::exact(std::move(probs), PlayerRole::column);
}

inline std::vector<long long> window_counts(const std::vector<std::size_t>& y_history,
                                            long long t_prime, long long t, std::size_t m) {
    std::vector<long long> counts(m, 0);
    for (long long stage = t_prime; stage < t; ++stage) counts.at(y_history[stage - 1]) += 1;
    return counts;
}

// Indifference certificate: every row of A * y_bar is exactly equal, i.e. the
// period average is an equalizer. Under Assumptions 1-2 this is the interior
// NE condition. Note that key equality already forces this for genuine
// detected cycles; the check guards synthetic or corrupted reports.
inline bool verify_cycle_consequence(const Game& g, const CycleReport& report) {
    if (report.period() <= 0) return false;
    RatVec ybar(g.m());
    BigInt period(report.period());
    for (std::size_t j = 0; j < g.m(); ++j)
        ybar[j] = Rational(BigInt(report.action_counts_in_period.at(j)), period);
    RatVec rows = mat_vec(g.payoff(), ybar);
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i] != rows[0]) return false;
    return true;
}

// Stronger form: the equalized row value must also equal the oracle game
// value, which certifies the average as an exact NE strategy even when the
// interiority assumptions fail.
inline bool verify_cycle_consequence(const Game& g, const CycleReport& report,
                                     const EquilibriumProfile& oracle) {
    if (!verify_cycle_consequence(g, report)) return false;
    RatVec ybar(g.m());
    BigInt period(report.period());
    for (std::size_t j = 0; j < g.m(); ++j)
        ybar[j] = Rational(BigInt(report.action_counts_in_period.at(j)), period);
    return mat_vec(g.payoff(), ybar)[0] == oracle.value;
}

}  // namespace hbr
