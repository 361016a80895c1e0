#ifndef VOTEBOUND_BOUNDS_HPP
#define VOTEBOUND_BOUNDS_HPP

#include <cmath>

#include "votebound/errors.hpp"
#include "votebound/model.hpp"

namespace votebound {

// Identified interval for the proposal's mean utility. The true value lies
// strictly inside when endpoints_open is set (the generic case); containment
// checks use the closed interval, which is what the formulas produce.
struct WelfareBound {
    double lower = 0.0;
    double upper = 1.0;
    double midpoint = 0.5;
    bool endpoints_open = true;
    bool trivial = false;  // lower == 0 and upper == 1: the data say nothing

    friend bool operator==(const WelfareBound&, const WelfareBound&) = default;
};

namespace detail {

inline void require_unit_stat(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw UtilityOutOfRange(std::string(name) + " must lie in [0,1]");
}

inline void require_stat_ranges(const SummaryStatistics& s) {
    require_unit_stat(s.mean_u_a, "mean_u_a");
    require_unit_stat(s.vote_share_b, "vote_share_b");
    require_unit_stat(s.cond_mean_a_given_b, "cond_mean_a_given_b");
    require_unit_stat(s.cond_mean_a_given_a, "cond_mean_a_given_a");
}

}  // namespace detail

// Checks that the four aggregates cohere: fields in range and the mean
// recomposes from the conditional means weighted by the vote split.
inline void validate_summary(const SummaryStatistics& s, double tolerance = 1e-6) {
    detail::require_stat_ranges(s);
    const double recomposed = s.cond_mean_a_given_b * s.vote_share_b +
                              s.cond_mean_a_given_a * (1.0 - s.vote_share_b);
    if (std::abs(recomposed - s.mean_u_a) > tolerance)
        throw InconsistentSummary(
            "mean_u_a does not match the vote-weighted conditional means (got " +
            detail::format_double(s.mean_u_a) + ", recomposed " +
            detail::format_double(recomposed) + ")");
}

// The sharp identification interval for the proposal's mean utility given
// only the status-quo utilities and the binary votes. Everyone voting B has
// u_b in (u_a, 1]; everyone voting A has u_b in [0, u_a). Pushing each group
// to its extreme gives the endpoints; nothing tighter is feasible.
inline WelfareBound sharp_bound(const SummaryStatistics& s) {
    detail::require_stat_ranges(s);
    const double p = s.vote_share_b;
    WelfareBound b;
    b.lower = s.cond_mean_a_given_b * p;
    b.upper = p + s.cond_mean_a_given_a * (1.0 - p);
    b.midpoint = 0.5 * (b.lower + b.upper);
    b.endpoints_open = true;
    b.trivial = (b.lower == 0.0 && b.upper == 1.0);
    return b;
}

// Specialization when everyone shares one status-quo utility level:
// the interval is (level * p, p + level * (1 - p)).
inline WelfareBound sharp_bound_constant_a(double u_a_level, double vote_share_b) {
    detail::require_unit_stat(u_a_level, "u_a level");
    detail::require_unit_stat(vote_share_b, "vote_share_b");
    WelfareBound b;
    b.lower = u_a_level * vote_share_b;
    b.upper = vote_share_b + u_a_level * (1.0 - vote_share_b);
    b.midpoint = 0.5 * (b.lower + b.upper);
    b.endpoints_open = true;
    b.trivial = (b.lower == 0.0 && b.upper == 1.0);
    return b;
}

// Center of the identified interval; algebraically half the status-quo mean
// plus half the vote share, so it needs only those two aggregates.
inline double midpoint_welfare(const SummaryStatistics& s) {
    detail::require_unit_stat(s.mean_u_a, "mean_u_a");
    detail::require_unit_stat(s.vote_share_b, "vote_share_b");
    return 0.5 * s.mean_u_a + 0.5 * s.vote_share_b;
}

inline double bound_width(const WelfareBound& b) { return b.upper - b.lower; }

}  // namespace votebound

#endif  // VOTEBOUND_BOUNDS_HPP
