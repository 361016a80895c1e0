#ifndef VOTEBOUND_LAB_HPP
#define VOTEBOUND_LAB_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "votebound/bounds.hpp"
#include "votebound/decisions.hpp"
#include "votebound/errors.hpp"
#include "votebound/families.hpp"
#include "votebound/model.hpp"
#include "votebound/numeric.hpp"
#include "votebound/rng.hpp"

namespace votebound {

namespace detail {

inline void require_feasible(const ObservedRecord& r, std::size_t i) {
    if (r.votes_b && r.u_a >= 1.0)
        throw InfeasibleRecord(i, "a proposal voter with u_a == 1 admits no feasible u_b");
    if (!r.votes_b && r.u_a <= 0.0)
        throw InfeasibleRecord(i, "a status-quo voter with u_a == 0 admits no feasible u_b");
}

}  // namespace detail

// Brute-force check that the interval endpoints are attainable: fill in
// latent proposal utilities uniformly over each record's feasible range
// ((u_a, 1] for B voters, [0, u_a) for A voters). Any such population is
// consistent with the data, so its true proposal welfare must land inside
// the computed interval.
inline Population random_feasible_population(const ObservedDataset& obs,
                                             std::uint64_t seed) {
    std::vector<UtilityProfile> profiles;
    profiles.reserve(obs.size());
    const auto& records = obs.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ObservedRecord& r = records[i];
        detail::require_feasible(r, i);
        SplitRng rng(derive_seed(seed, i));
        double u_b;
        if (r.votes_b) {
            do {
                u_b = r.u_a + (1.0 - rng.next_double()) * (1.0 - r.u_a);
            } while (u_b <= r.u_a);
            if (u_b > 1.0) u_b = 1.0;
        } else {
            do {
                u_b = r.u_a * rng.next_double();
            } while (u_b >= r.u_a);
        }
        profiles.push_back({r.u_a, u_b, r.weight});
    }
    return detail::population_from_normalized(std::move(profiles), TiePolicy::Strict);
}

// Constructive witness approaching the interval's lower endpoint: every B
// voter barely clears u_a (offset delta of the remaining headroom), every A
// voter gets 0. Reproduces the dataset exactly under observe().
inline Population infimum_witness_population(const ObservedDataset& obs, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
    std::vector<UtilityProfile> profiles;
    profiles.reserve(obs.size());
    const auto& records = obs.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ObservedRecord& r = records[i];
        detail::require_feasible(r, i);
        double u_b;
        if (r.votes_b) {
            u_b = r.u_a + delta * (1.0 - r.u_a);
            if (u_b <= r.u_a) u_b = std::nextafter(r.u_a, 1.0);
            if (u_b > 1.0) u_b = 1.0;
        } else {
            u_b = 0.0;
        }
        profiles.push_back({r.u_a, u_b, r.weight});
    }
    return detail::population_from_normalized(std::move(profiles), TiePolicy::Strict);
}

// Witness approaching the upper endpoint: every B voter gets 1, every A
// voter sits just below u_a.
inline Population supremum_witness_population(const ObservedDataset& obs, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
    std::vector<UtilityProfile> profiles;
    profiles.reserve(obs.size());
    const auto& records = obs.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ObservedRecord& r = records[i];
        detail::require_feasible(r, i);
        double u_b;
        if (r.votes_b) {
            u_b = 1.0;
        } else {
            u_b = (1.0 - delta) * r.u_a;
            if (u_b >= r.u_a) u_b = std::nextafter(r.u_a, 0.0);
        }
        profiles.push_back({r.u_a, u_b, r.weight});
    }
    return detail::population_from_normalized(std::move(profiles), TiePolicy::Strict);
}

// Welfare of the two witness populations: delta-approximations to the
// infimum and supremum of feasible proposal welfare. As delta -> 0 these
// converge to the interval endpoints, certifying the bound is sharp.
struct FeasibleExtremes {
    double inf_approx = 0.0;
    double sup_approx = 1.0;
    double delta = 0.0;
};

inline FeasibleExtremes feasible_extremes(const ObservedDataset& obs,
                                          double delta = 1e-9) {
    FeasibleExtremes fe;
    fe.inf_approx = true_welfare(infimum_witness_population(obs, delta)).mean_u_b;
    fe.sup_approx = true_welfare(supremum_witness_population(obs, delta)).mean_u_b;
    fe.delta = delta;
    return fe;
}

// Loss of the chosen policy against the better one, under the true
// (simulated) utilities. Zero when the choice was right.
inline double realized_regret(const Population& pop, Policy chosen) {
    const Welfare w = true_welfare(pop);
    const double best = std::max(w.mean_u_a, w.mean_u_b);
    return best - (chosen == Policy::A ? w.mean_u_a : w.mean_u_b);
}

// Map key for per-criterion aggregates; supermajority entries are keyed by
// their threshold so several can coexist.
inline std::string criterion_label(const DecisionEntry& e) {
    if (e.criterion == "supermajority")
        return "supermajority@" + detail::format_double(e.threshold_used);
    return e.criterion;
}

struct DisagreementReport {
    FamilySpec spec;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double majority_vs_utilitarian_disagree_rate = 0.0;
    double mmr_vs_utilitarian_disagree_rate = 0.0;
    double majority_vs_mmr_disagree_rate = 0.0;
    double concordance_rate = 0.0;
    std::map<std::string, double> mean_realized_regret;

    friend bool operator==(const DisagreementReport&, const DisagreementReport&) = default;
};

// Monte Carlo half-width (two standard errors) for a rate estimated from
// `trials` independent draws.
inline double rate_half_width(double rate, std::size_t trials) {
    return 2.0 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

// How often does the referendum outcome track utilitarian welfare? Each
// trial draws a population, decides by every criterion on the observables
// only, and scores the choices against the simulated truth.
inline DisagreementReport monte_carlo_disagreement(
    const FamilySpec& spec, std::size_t trials, std::uint64_t seed,
    const std::optional<PriorSpec>& prior_spec = std::nullopt,
    const std::vector<double>& supermajority_thresholds = {}) {
    validate(spec);
    if (trials < 1) throw Error("trials must be at least 1");

    DisagreementReport rep;
    rep.spec = spec;
    rep.trials = trials;
    rep.seed = seed;

    std::size_t maj_vs_util = 0, mmr_vs_util = 0, maj_vs_mmr = 0, concordant = 0;
    std::map<std::string, detail::Accumulator> regret;

    for (std::size_t t = 0; t < trials; ++t) {
        const Population pop = generate(spec, derive_seed(seed, t));
        const Welfare w = true_welfare(pop);
        const Policy utilitarian = w.mean_u_b > w.mean_u_a ? Policy::B : Policy::A;

        const SummaryStatistics stats = summarize(observe(pop));
        std::optional<Prior> prior;
        if (prior_spec) prior = make_prior(*prior_spec, sharp_bound(stats));
        const DecisionReport decisions = decide_all(stats, prior, supermajority_thresholds);

        const Policy maj = decisions.find("majority")->chosen;
        const Policy mmr = decisions.find("mmr")->chosen;
        maj_vs_util += (maj != utilitarian);
        mmr_vs_util += (mmr != utilitarian);
        maj_vs_mmr += (maj != mmr);
        concordant += check_concordance(pop).concordant ? 1 : 0;

        for (const auto& e : decisions.entries)
            regret[criterion_label(e)].add(realized_regret(pop, e.chosen));
    }

    const double n = static_cast<double>(trials);
    rep.majority_vs_utilitarian_disagree_rate = static_cast<double>(maj_vs_util) / n;
    rep.mmr_vs_utilitarian_disagree_rate = static_cast<double>(mmr_vs_util) / n;
    rep.majority_vs_mmr_disagree_rate = static_cast<double>(maj_vs_mmr) / n;
    rep.concordance_rate = static_cast<double>(concordant) / n;
    for (const auto& [label, acc] : regret)
        rep.mean_realized_regret[label] = acc.value() / n;
    return rep;
}

struct ContainmentSummary {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_violation = 0.0;  // largest excursion outside the closed interval
    double min_margin = std::numeric_limits<double>::infinity();
};

// Stress test of the containment guarantee: for every simulated population,
// both true mean utilities must land inside the closed interval computed
// from the observables alone. A single violation is a correctness bug.
inline ContainmentSummary verify_bound_containment(const FamilySpec& spec,
                                                   std::size_t trials,
                                                   std::uint64_t seed) {
    validate(spec);
    if (trials < 1) throw Error("trials must be at least 1");

    ContainmentSummary out;
    out.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const Population pop = generate(spec, derive_seed(seed, t));
        const Welfare w = true_welfare(pop);
        const WelfareBound b = sharp_bound(summarize(observe(pop)));
        bool violated = false;
        for (const double v : {w.mean_u_b, w.mean_u_a}) {
            const double excess = std::max(b.lower - v, v - b.upper);
            if (excess > 0.0) {
                violated = true;
                out.max_violation = std::max(out.max_violation, excess);
            }
            out.min_margin = std::min(out.min_margin,
                                      std::min(v - b.lower, b.upper - v));
        }
        out.violations += violated ? 1 : 0;
    }
    return out;
}

}  // namespace votebound

#endif  // VOTEBOUND_LAB_HPP
