#ifndef VOTEBOUND_DECISIONS_HPP
#define VOTEBOUND_DECISIONS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "votebound/bounds.hpp"
#include "votebound/errors.hpp"
#include "votebound/model.hpp"

namespace votebound {

enum class Policy { A, B };

inline const char* to_string(Policy p) { return p == Policy::A ? "A" : "B"; }

enum class PriorKind {
    MidpointPointMass,  // point mass at the bound midpoint
    PointMass,          // point mass at a given location: {location}
    UniformOnBound,     // uniform over the identified interval
    TruncatedBeta       // beta(alpha, beta) restricted to the interval: {alpha, beta}
};

inline const char* prior_kind_name(PriorKind k) {
    switch (k) {
        case PriorKind::MidpointPointMass: return "midpoint-point-mass";
        case PriorKind::PointMass: return "point-mass";
        case PriorKind::UniformOnBound: return "uniform-on-bound";
        case PriorKind::TruncatedBeta: return "truncated-beta";
    }
    return "unknown";
}

inline PriorKind prior_kind_from_name(const std::string& name) {
    if (name == "midpoint-point-mass") return PriorKind::MidpointPointMass;
    if (name == "point-mass") return PriorKind::PointMass;
    if (name == "uniform-on-bound") return PriorKind::UniformOnBound;
    if (name == "truncated-beta") return PriorKind::TruncatedBeta;
    throw InvalidPriorParameter("unknown prior kind: " + name);
}

struct PriorSpec {
    PriorKind kind = PriorKind::MidpointPointMass;
    std::vector<double> params;
};

// Subjective distribution for the proposal's mean utility. Its support must
// sit inside the identified interval — mass outside is mass on impossible
// values — and only its mean matters for the Bayes choice.
struct Prior {
    PriorKind kind = PriorKind::MidpointPointMass;
    std::vector<double> params;
    double support_lo = 0.0;
    double support_hi = 1.0;
    double mean = 0.5;
};

namespace detail {

// Adaptive Simpson quadrature, classic error estimate with Richardson tail.
template <class F>
double adaptive_simpson_impl(const F& f, double a, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

inline Prior make_prior(const PriorSpec& spec, const WelfareBound& bound) {
    Prior prior;
    prior.kind = spec.kind;
    prior.params = spec.params;
    switch (spec.kind) {
        case PriorKind::MidpointPointMass:
            if (!spec.params.empty())
                throw InvalidPriorParameter("midpoint-point-mass takes no parameters");
            prior.support_lo = prior.support_hi = bound.midpoint;
            prior.mean = bound.midpoint;
            break;
        case PriorKind::PointMass: {
            if (spec.params.size() != 1)
                throw InvalidPriorParameter("point-mass takes one parameter (location)");
            const double loc = spec.params[0];
            if (!std::isfinite(loc) || loc < bound.lower || loc > bound.upper)
                throw PriorOutsideBound("point-mass location " +
                                        detail::format_double(loc) +
                                        " lies outside the identified interval [" +
                                        detail::format_double(bound.lower) + ", " +
                                        detail::format_double(bound.upper) + "]");
            prior.support_lo = prior.support_hi = loc;
            prior.mean = loc;
            break;
        }
        case PriorKind::UniformOnBound:
            if (!spec.params.empty())
                throw InvalidPriorParameter("uniform-on-bound takes no parameters");
            prior.support_lo = bound.lower;
            prior.support_hi = bound.upper;
            prior.mean = bound.midpoint;
            break;
        case PriorKind::TruncatedBeta: {
            if (spec.params.size() != 2)
                throw InvalidPriorParameter("truncated-beta takes two parameters (alpha, beta)");
            const double alpha = spec.params[0];
            const double beta = spec.params[1];
            // Shapes below 1 put an integrable singularity at an endpoint,
            // which Simpson panels cannot honestly resolve; rejected.
            if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 1.0 || beta < 1.0)
                throw InvalidPriorParameter("truncated-beta shapes must be finite and >= 1");
            prior.support_lo = bound.lower;
            prior.support_hi = bound.upper;
            const double lo = bound.lower;
            const double hi = bound.upper;
            if (hi - lo < 1e-12) {
                prior.mean = bound.midpoint;
                break;
            }
            auto density = [alpha, beta](double x) {
                return std::pow(x, alpha - 1.0) * std::pow(1.0 - x, beta - 1.0);
            };
            auto weighted = [&density](double x) { return x * density(x); };
            const double coarse =
                (hi - lo) / 6.0 *
                (density(lo) + 4.0 * density(0.5 * (lo + hi)) + density(hi));
            const double tol = 1e-13 * std::abs(coarse) + 1e-300;
            const double mass = detail::integrate(density, lo, hi, tol);
            const double moment = detail::integrate(weighted, lo, hi, tol);
            if (!(mass > 0.0) || !std::isfinite(mass) || !std::isfinite(moment))
                throw InvalidPriorParameter(
                    "truncated-beta mass vanishes numerically on the interval");
            prior.mean = std::clamp(moment / mass, lo, hi);
            break;
        }
    }
    return prior;
}

struct RegretPair {
    double regret_a = 0.0;  // worst-case loss from keeping the status quo
    double regret_b = 0.0;  // worst-case loss from adopting the proposal
};

// One criterion's verdict. `threshold_used` is the number the deciding score
// was compared against; regrets/prior_mean are filled only where meaningful.
struct DecisionEntry {
    std::string criterion;
    Policy chosen = Policy::A;
    bool tie = false;
    double threshold_used = 0.0;
    std::optional<RegretPair> regrets;
    std::optional<double> prior_mean;
};

struct DecisionReport {
    std::vector<DecisionEntry> entries;

    const DecisionEntry* find(std::string_view criterion) const {
        for (const auto& e : entries)
            if (e.criterion == criterion) return &e;
        return nullptr;
    }
};

namespace detail {

// All criteria reduce to "adopt B iff score > threshold"; exact equality is
// a tie and resolves to the status quo, flagged.
inline DecisionEntry threshold_choice(std::string name, double score, double threshold) {
    DecisionEntry e;
    e.criterion = std::move(name);
    e.threshold_used = threshold;
    if (score > threshold) {
        e.chosen = Policy::B;
    } else {
        e.chosen = Policy::A;
        e.tie = (score == threshold);
    }
    return e;
}

}  // namespace detail

// Worst-case regrets of the two choices over the identified interval.
// Keeping A can forgo up to p*(1 - E[u_a | vote B]) (the proposal could be
// worth 1 to all its voters); adopting B can lose up to
// (1 - p)*E[u_a | vote A] (it could be worth 0 to the rest).
inline RegretPair max_regret(const SummaryStatistics& s) {
    detail::require_stat_ranges(s);
    const double p = s.vote_share_b;
    RegretPair r;
    r.regret_a = p * (1.0 - s.cond_mean_a_given_b);
    r.regret_b = s.cond_mean_a_given_a * (1.0 - p);
    return r;
}

// Bayes choice against the interval midpoint as the subjective mean. The
// midpoint comparison reduces to: adopt B iff the vote share exceeds mean
// status-quo welfare.
inline DecisionEntry midpoint_bayes_decide(const SummaryStatistics& s) {
    detail::require_stat_ranges(s);
    auto e = detail::threshold_choice("midpoint-bayes", s.vote_share_b, s.mean_u_a);
    e.prior_mean = sharp_bound(s).midpoint;
    return e;
}

// Minimizing the larger of the two worst-case regrets picks the same policy
// as the midpoint rule; deciding on the same comparison (vote share vs mean
// status-quo welfare) keeps even exact ties aligned between the two rules.
// The regrets themselves are reported alongside.
inline DecisionEntry minimax_regret_decide(const SummaryStatistics& s) {
    auto e = detail::threshold_choice("mmr", s.vote_share_b, s.mean_u_a);
    e.regrets = max_regret(s);
    return e;
}

// The proposal's worst case (everyone who voted B got barely more than u_a,
// everyone else got 0) never beats mean status-quo welfare, so the
// pessimist keeps A unconditionally.
inline DecisionEntry maximin_decide(const SummaryStatistics& s) {
    const WelfareBound b = sharp_bound(s);
    DecisionEntry e;
    e.criterion = "maximin";
    e.chosen = Policy::A;
    e.tie = (b.lower == s.mean_u_a);
    e.threshold_used = b.lower;
    return e;
}

inline DecisionEntry bayes_decide(const SummaryStatistics& s, const Prior& prior) {
    const WelfareBound b = sharp_bound(s);
    if (prior.support_lo < b.lower || prior.support_hi > b.upper)
        throw PriorOutsideBound("prior support [" +
                                detail::format_double(prior.support_lo) + ", " +
                                detail::format_double(prior.support_hi) +
                                "] is not contained in the identified interval [" +
                                detail::format_double(b.lower) + ", " +
                                detail::format_double(b.upper) + "]");
    auto e = detail::threshold_choice("bayes", prior.mean, s.mean_u_a);
    e.prior_mean = prior.mean;
    return e;
}

inline DecisionEntry majority_decide(const SummaryStatistics& s) {
    detail::require_unit_stat(s.vote_share_b, "vote_share_b");
    return detail::threshold_choice("majority", s.vote_share_b, 0.5);
}

// Strict supermajority: adopt only if the vote share strictly exceeds the
// threshold; threshold must lie in [1/2, 1].
inline DecisionEntry supermajority_decide(const SummaryStatistics& s, double threshold) {
    detail::require_unit_stat(s.vote_share_b, "vote_share_b");
    if (!(threshold >= 0.5 && threshold <= 1.0))
        throw ThresholdOutOfRange("supermajority threshold must lie in [0.5, 1], got " +
                                  detail::format_double(threshold));
    return detail::threshold_choice("supermajority", s.vote_share_b, threshold);
}

// Runs every criterion and cross-checks the structural relationships that
// must hold between them before returning.
inline DecisionReport decide_all(const SummaryStatistics& s,
                                 const std::optional<Prior>& prior = std::nullopt,
                                 const std::vector<double>& supermajority_thresholds = {}) {
    DecisionReport report;
    report.entries.push_back(majority_decide(s));
    for (double t : supermajority_thresholds)
        report.entries.push_back(supermajority_decide(s, t));
    report.entries.push_back(midpoint_bayes_decide(s));
    report.entries.push_back(minimax_regret_decide(s));
    report.entries.push_back(maximin_decide(s));
    if (prior) report.entries.push_back(bayes_decide(s, *prior));

    const DecisionEntry* mb = report.find("midpoint-bayes");
    const DecisionEntry* mmr = report.find("mmr");
    const DecisionEntry* mm = report.find("maximin");
    if (mm->chosen != Policy::A || mb->chosen != mmr->chosen || mb->tie != mmr->tie)
        throw std::logic_error("decision-report cross-criterion invariants violated");
    return report;
}

}  // namespace votebound

#endif  // VOTEBOUND_DECISIONS_HPP
