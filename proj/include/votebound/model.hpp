#ifndef VOTEBOUND_MODEL_HPP
#define VOTEBOUND_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "votebound/errors.hpp"
#include "votebound/numeric.hpp"

namespace votebound {

// One person's utility pair with population mass. Utilities live in [0,1];
// u_a is the status-quo utility, u_b the proposal utility.
struct UtilityProfile {
    double u_a = 0.0;
    double u_b = 0.0;
    double weight = 1.0;

    friend bool operator==(const UtilityProfile&, const UtilityProfile&) = default;
};

enum class TiePolicy {
    Strict,            // u_a == u_b is rejected at construction
    StatusQuoTiebreak  // ties are kept and vote for the status quo
};

namespace detail {

inline void validate_profile(const UtilityProfile& p, std::size_t i) {
    if (!(p.u_a >= 0.0 && p.u_a <= 1.0))
        throw UtilityOutOfRange(i, "u_a must lie in [0,1]");
    if (!(p.u_b >= 0.0 && p.u_b <= 1.0))
        throw UtilityOutOfRange(i, "u_b must lie in [0,1]");
    if (!std::isfinite(p.weight) || !(p.weight > 0.0))
        throw UtilityOutOfRange(i, "weight must be positive and finite");
}

}  // namespace detail

class Population;
Population make_population(std::vector<UtilityProfile> profiles, TiePolicy policy);

namespace detail {
Population population_from_normalized(std::vector<UtilityProfile> profiles,
                                      TiePolicy policy);
}

// Finite weighted population; weights are normalized to total mass 1.
class Population {
public:
    const std::vector<UtilityProfile>& profiles() const { return profiles_; }
    std::size_t size() const { return profiles_.size(); }
    TiePolicy tie_policy() const { return policy_; }
    bool has_flagged_ties() const { return flagged_ties_; }

    double total_weight() const {
        detail::Accumulator acc;
        for (const auto& p : profiles_) acc.add(p.weight);
        return acc.value();
    }

    friend bool operator==(const Population&, const Population&) = default;

private:
    Population(std::vector<UtilityProfile> profiles, TiePolicy policy, bool flagged)
        : profiles_(std::move(profiles)), policy_(policy), flagged_ties_(flagged) {}

    friend Population make_population(std::vector<UtilityProfile>, TiePolicy);
    friend Population detail::population_from_normalized(std::vector<UtilityProfile>,
                                                         TiePolicy);

    std::vector<UtilityProfile> profiles_;
    TiePolicy policy_;
    bool flagged_ties_;
};

namespace detail {

// Validates, flags ties per policy
inline std::pair<bool, double> validate_profiles(
    const std::vector<UtilityProfile>& profiles, TiePolicy policy) {
    if (profiles.empty()) throw EmptyPopulation();
    bool flagged = false;
    Accumulator total;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        validate_profile(profiles[i], i);
        if (profiles[i].u_a == profiles[i].u_b) {
            if (policy == TiePolicy::Strict) throw TieInStrictMode(i);
            flagged = true;
        }
        total.add(profiles[i].weight);
    }
    return {flagged, total.value()};
}

// Trusts the weights as already normalized: no rescaling, so callers that
// feed back weights taken from another population reproduce them bit for bit.
inline Population population_from_normalized(std::vector<UtilityProfile> profiles,
                                             TiePolicy policy) {
    const auto [flagged, total] = validate_profiles(profiles, policy);
    (void)total;
    return Population(std::move(profiles), policy, flagged);
}

}  // namespace detail

inline Population make_population(std::vector<UtilityProfile> profiles,
                                  TiePolicy policy = TiePolicy::Strict) {
    const auto [flagged, total] = detail::validate_profiles(profiles, policy);
    for (auto& p : profiles) p.weight /= total;
    return Population(std::move(profiles), policy, flagged);
}

// What the planner can see for one person: status-quo utility and the vote.
struct ObservedRecord {
    double u_a = 0.0;
    bool votes_b = false;
    double weight = 1.0;

    friend bool operator==(const ObservedRecord&, const ObservedRecord&) = default;
};

class ObservedDataset;
ObservedDataset make_observed(std::vector<ObservedRecord> records);
class Population;

class ObservedDataset {
public:
    const std::vector<ObservedRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    friend bool operator==(const ObservedDataset&, const ObservedDataset&) = default;

private:
    explicit ObservedDataset(std::vector<ObservedRecord> records)
        : records_(std::move(records)) {}

    friend ObservedDataset make_observed(std::vector<ObservedRecord>);
    friend ObservedDataset observe(const Population&);

    std::vector<ObservedRecord> records_;
};

namespace detail {

inline void validate_record(const ObservedRecord& r, std::size_t i) {
    if (!(r.u_a >= 0.0 && r.u_a <= 1.0))
        throw UtilityOutOfRange(i, "u_a must lie in [0,1]");
    if (!std::isfinite(r.weight) || !(r.weight > 0.0))
        throw UtilityOutOfRange(i, "weight must be positive and finite");
}

}  // namespace detail

inline ObservedDataset make_observed(std::vector<ObservedRecord> records) {
    if (records.empty()) throw EmptyPopulation();
    detail::Accumulator total;
    for (std::size_t i = 0; i < records.size(); ++i) {
        detail::validate_record(records[i], i);
        total.add(records[i].weight);
    }
    const double t = total.value();
    for (auto& r : records) r.weight /= t;
    return ObservedDataset(std::move(records));
}

// Projects a population onto what a referendum reveals. Votes are sincere:
// B iff u_b > u_a; ties vote A (only present under the tiebreak policy).
// Weights are carried over verbatim — they are already normalized.
inline ObservedDataset observe(const Population& pop) {
    std::vector<ObservedRecord> records;
    records.reserve(pop.size());
    for (const auto& p : pop.profiles())
        records.push_back({p.u_a, p.u_b > p.u_a, p.weight});
    return ObservedDataset(std::move(records));
}

// The four observable aggregates the bound is built from. The conditional
// means use 0 as a sentinel when the conditioning event has no mass;
// downstream formulas multiply them by that zero mass.
struct SummaryStatistics {
    double mean_u_a = 0.0;
    double vote_share_b = 0.0;
    double cond_mean_a_given_b = 0.0;
    double cond_mean_a_given_a = 0.0;

    friend bool operator==(const SummaryStatistics&, const SummaryStatistics&) = default;
};

inline SummaryStatistics summarize(const ObservedDataset& obs) {
    if (obs.size() == 0) throw EmptyPopulation();
    detail::Accumulator total, sum_ua, mass_b, sum_ua_b, mass_a, sum_ua_a;
    for (const auto& r : obs.records()) {
        total.add(r.weight);
        sum_ua.add(r.weight * r.u_a);
        if (r.votes_b) {
            mass_b.add(r.weight);
            sum_ua_b.add(r.weight * r.u_a);
        } else {
            mass_a.add(r.weight);
            sum_ua_a.add(r.weight * r.u_a);
        }
    }
    const double t = total.value();
    const double wb = mass_b.value();
    const double wa = mass_a.value();
    SummaryStatistics s;
    s.mean_u_a = sum_ua.value() / t;
    s.vote_share_b = mass_b.value() / t;
    s.cond_mean_a_given_b = wb > 0.0 ? sum_ua_b.value() / wb : 0.0;
    s.cond_mean_a_given_a = wa > 0.0 ? sum_ua_a.value() / wa : 0.0;
    return s;
}

struct Welfare {
    double mean_u_a = 0.0;
    double mean_u_b = 0.0;
};

// Oracle access to both mean utilities; only available when the full
// population is known (simulation), never from observed data alone.
inline Welfare true_welfare(const Population& pop) {
    detail::Accumulator total, sum_a, sum_b;
    for (const auto& p : pop.profiles()) {
        total.add(p.weight);
        sum_a.add(p.weight * p.u_a);
        sum_b.add(p.weight * p.u_b);
    }
    const double t = total.value();
    return {sum_a.value() / t, sum_b.value() / t};
}

// Compares the sign of the median utility difference (what majority rule
// tracks) with the sign of the mean difference (what utilitarian welfare
// tracks). The median is the lower weighted median: the smallest difference
// whose cumulative mass reaches half the total.
struct ConcordanceReport {
    double median_diff = 0.0;
    double welfare_diff = 0.0;
    bool concordant = false;
    bool sign_tie = false;  // at least one of the two signs is exactly zero
};

inline ConcordanceReport check_concordance(const Population& pop) {
    const Welfare w = true_welfare(pop);

    std::vector<std::pair<double, double>> diffs;  // (u_b - u_a, weight)
    diffs.reserve(pop.size());
    detail::Accumulator total;
    for (const auto& p : pop.profiles()) {
        diffs.emplace_back(p.u_b - p.u_a, p.weight);
        total.add(p.weight);
    }
    std::sort(diffs.begin(), diffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const double half = 0.5 * total.value();
    detail::Accumulator cum;
    double median = diffs.back().first;
    for (const auto& [d, wt] : diffs) {
        cum.add(wt);
        if (cum.value() >= half - 1e-12) {
            median = d;
            break;
        }
    }

    ConcordanceReport rep;
    rep.median_diff = median;
    rep.welfare_diff = w.mean_u_b - w.mean_u_a;
    const int sm = detail::sign_of(rep.median_diff);
    const int sw = detail::sign_of(rep.welfare_diff);
    rep.concordant = (sm == sw);
    rep.sign_tie = (sm == 0 || sw == 0);
    return rep;
}

}  // namespace votebound

#endif  // VOTEBOUND_MODEL_HPP
