#ifndef VOTEBOUND_TEST_HELPERS_HPP
#define VOTEBOUND_TEST_HELPERS_HPP

// Test-side reference implementations and data generators. Reference values
// are computed with plain loops and naive summation, independent of the
// library's compensated accumulation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "votebound/votebound.hpp"

namespace testutil {

inline votebound::SummaryStatistics ref_summarize(const votebound::ObservedDataset& obs) {
    double total = 0, sum_ua = 0, wb = 0, sum_b = 0, wa = 0, sum_a = 0;
    for (const auto& r : obs.records()) {
        total += r.weight;
        sum_ua += r.weight * r.u_a;
        if (r.votes_b) {
            wb += r.weight;
            sum_b += r.weight * r.u_a;
        } else {
            wa += r.weight;
            sum_a += r.weight * r.u_a;
        }
    }
    votebound::SummaryStatistics s;
    s.mean_u_a = sum_ua / total;
    s.vote_share_b = wb / total;
    s.cond_mean_a_given_b = wb > 0 ? sum_b / wb : 0.0;
    s.cond_mean_a_given_a = wa > 0 ? sum_a / wa : 0.0;
    return s;
}

inline votebound::Welfare ref_welfare(const votebound::Population& pop) {
    double total = 0, sa = 0, sb = 0;
    for (const auto& p : pop.profiles()) {
        total += p.weight;
        sa += p.weight * p.u_a;
        sb += p.weight * p.u_b;
    }
    return {sa / total, sb / total};
}

// Composite Simpson with fixed panels; panels must be even.
template <class F>
double ref_simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Consistent summary: the mean is composed from the conditionals, so the
// recomposition identity holds to a rounding error. Occasionally lands on
// the exact boundary values 0, 1/2 and 1.
inline votebound::SummaryStatistics random_consistent_stats(votebound::SplitRng& rng) {
    double p = rng.next_double();
    const double edge = rng.next_double();
    if (edge < 0.02) p = 0.0;
    else if (edge < 0.04) p = 1.0;
    else if (edge < 0.06) p = 0.5;
    double cb = rng.next_double();
    double ca = rng.next_double();
    if (p == 0.0) cb = 0.0;
    if (p == 1.0) ca = 0.0;
    votebound::SummaryStatistics s;
    s.vote_share_b = p;
    s.cond_mean_a_given_b = cb;
    s.cond_mean_a_given_a = ca;
    s.mean_u_a = cb * p + ca * (1.0 - p);
    return s;
}

// Stats where the vote share equals mean status-quo welfare bit for bit:
// the exact-tie case for the comparison-based criteria. p is dyadic; the
// conditional means are solved to recompose it.
inline votebound::SummaryStatistics exact_tie_stats(votebound::SplitRng& rng) {
    const double p = static_cast<double>(1 + static_cast<int>(rng.next_double() * 63)) / 64.0;
    const double cb_min = p > 0.5 ? (2.0 * p - 1.0) / p : 0.0;
    const double cb = cb_min + (1.0 - cb_min) * rng.next_double();
    votebound::SummaryStatistics s;
    s.vote_share_b = p;
    s.mean_u_a = p;
    s.cond_mean_a_given_b = cb;
    // rounding in cb_min can push the solved value a few ulps past 1
    s.cond_mean_a_given_a = std::min(1.0, p * (1.0 - cb) / (1.0 - p));
    return s;
}

// Observed dataset with interior status-quo utilities (every record keeps a
// feasible latent proposal utility on both sides).
inline votebound::ObservedDataset random_dataset(votebound::SplitRng& rng,
                                                 std::size_t max_n) {
    const auto n = 1 + static_cast<std::size_t>(rng.next_double() *
                                                static_cast<double>(max_n));
    std::vector<votebound::ObservedRecord> records;
    records.reserve(n);
    const double q = rng.next_double();
    for (std::size_t i = 0; i < n; ++i) {
        votebound::ObservedRecord r;
        r.u_a = 0.01 + 0.98 * rng.next_double();
        r.votes_b = rng.bernoulli(q);
        r.weight = 0.1 + rng.next_double();
        records.push_back(r);
    }
    return votebound::make_observed(std::move(records));
}

// Population with arbitrary utilities and uneven weights, no structure.
inline votebound::Population random_population(votebound::SplitRng& rng,
                                               std::size_t max_n) {
    const auto n = 1 + static_cast<std::size_t>(rng.next_double() *
                                                static_cast<double>(max_n));
    std::vector<votebound::UtilityProfile> profiles;
    profiles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        votebound::UtilityProfile p;
        p.u_a = rng.next_open01();
        p.u_b = rng.next_open01();
        while (p.u_b == p.u_a) p.u_b = rng.next_open01();
        p.weight = 0.1 + rng.next_double();
        profiles.push_back(p);
    }
    return votebound::make_population(std::move(profiles));
}

}  // namespace testutil

#endif  // VOTEBOUND_TEST_HELPERS_HPP
