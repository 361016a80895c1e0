#ifndef VOTEBOUND_FAMILIES_HPP
#define VOTEBOUND_FAMILIES_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "votebound/errors.hpp"
#include "votebound/model.hpp"
#include "votebound/numeric.hpp"
#include "votebound/rng.hpp"

namespace votebound {

enum class FamilyKind {
    IndependentUniform,         // u_a, u_b independent uniform on (0,1)
    BinaryProposal,             // u_a uniform on (0,1); u_b in {0,1} with given success prob
    ConstantStatusQuo,          // u_a fixed at a level; u_b uniform on (0,1)
    DegenerateBinaryStatusQuo,  // u_a in {0,1}; u_b uniform on (0,1)
    TwoBlock                    // two fixed utility blocks with a given mass split
};

// params by kind:
//   independent-uniform          (none)
//   binary-proposal              {success_prob}
//   constant-status-quo          {level}
//   degenerate-binary-status-quo {prob_u_a_one}
//   two-block                    {share_1, u_a_1, u_b_1, u_a_2, u_b_2}
struct FamilySpec {
    FamilyKind kind = FamilyKind::IndependentUniform;
    std::vector<double> params;
    std::size_t population_size = 1;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline const char* family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::IndependentUniform: return "independent-uniform";
        case FamilyKind::BinaryProposal: return "binary-proposal";
        case FamilyKind::ConstantStatusQuo: return "constant-status-quo";
        case FamilyKind::DegenerateBinaryStatusQuo: return "degenerate-binary-status-quo";
        case FamilyKind::TwoBlock: return "two-block";
    }
    return "unknown";
}

inline FamilyKind family_from_name(const std::string& name) {
    if (name == "independent-uniform") return FamilyKind::IndependentUniform;
    if (name == "binary-proposal") return FamilyKind::BinaryProposal;
    if (name == "constant-status-quo") return FamilyKind::ConstantStatusQuo;
    if (name == "degenerate-binary-status-quo") return FamilyKind::DegenerateBinaryStatusQuo;
    if (name == "two-block") return FamilyKind::TwoBlock;
    throw InvalidFamilyParameter("unknown family: " + name);
}

namespace detail {

inline void require_param_count(const FamilySpec& spec, std::size_t n) {
    if (spec.params.size() != n)
        throw InvalidFamilyParameter(std::string(family_name(spec.kind)) + " takes " +
                                     std::to_string(n) + " parameter(s), got " +
                                     std::to_string(spec.params.size()));
}

inline void require_unit_param(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw InvalidFamilyParameter(std::string(what) + " must lie in [0,1]");
}

}  // namespace detail

inline void validate(const FamilySpec& spec) {
    if (spec.population_size < 1)
        throw InvalidFamilyParameter("population size must be at least 1");
    switch (spec.kind) {
        case FamilyKind::IndependentUniform:
            detail::require_param_count(spec, 0);
            break;
        case FamilyKind::BinaryProposal:
            detail::require_param_count(spec, 1);
            detail::require_unit_param(spec.params[0], "success probability");
            break;
        case FamilyKind::ConstantStatusQuo:
            detail::require_param_count(spec, 1);
            detail::require_unit_param(spec.params[0], "status-quo level");
            break;
        case FamilyKind::DegenerateBinaryStatusQuo:
            detail::require_param_count(spec, 1);
            detail::require_unit_param(spec.params[0], "probability of u_a == 1");
            break;
        case FamilyKind::TwoBlock:
            detail::require_param_count(spec, 5);
            detail::require_unit_param(spec.params[0], "block-1 share");
            detail::require_unit_param(spec.params[1], "block-1 u_a");
            detail::require_unit_param(spec.params[2], "block-1 u_b");
            detail::require_unit_param(spec.params[3], "block-2 u_a");
            detail::require_unit_param(spec.params[4], "block-2 u_b");
            if (spec.params[1] == spec.params[2] || spec.params[3] == spec.params[4])
                throw InvalidFamilyParameter("two-block utilities must differ within each block");
            break;
    }
}

// Text form "kind:p1,p2,...:n" (params segment empty when the family has none).
inline std::string to_string(const FamilySpec& spec) {
    std::string out = family_name(spec.kind);
    out += ':';
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (i) out += ',';
        out += detail::format_double(spec.params[i]);
    }
    out += ':';
    out += std::to_string(spec.population_size);
    return out;
}

namespace detail {

inline double parse_family_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw InvalidFamilyParameter("bad numeric parameter: '" + text + "'");
    return v;
}

}  // namespace detail

inline FamilySpec parse_family(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw InvalidFamilyParameter("family spec must look like kind:params:size, got '" +
                                     text + "'");
    FamilySpec spec;
    spec.kind = family_from_name(text.substr(0, c1));

    const std::string params = text.substr(c1 + 1, c2 - c1 - 1);
    if (params.find(':') != std::string::npos)
        throw InvalidFamilyParameter("family spec must contain exactly two ':' separators");
    std::size_t pos = 0;
    while (pos < params.size()) {
        auto comma = params.find(',', pos);
        if (comma == std::string::npos) comma = params.size();
        spec.params.push_back(detail::parse_family_double(params.substr(pos, comma - pos)));
        pos = comma + 1;
    }

    const std::string size_text = text.substr(c2 + 1);
    std::size_t n = 0;
    auto res = std::from_chars(size_text.data(), size_text.data() + size_text.size(), n);
    if (res.ec != std::errc() || res.ptr != size_text.data() + size_text.size() || n < 1)
        throw InvalidFamilyParameter("bad population size: '" + size_text + "'");
    spec.population_size = n;

    validate(spec);
    return spec;
}

// Draws a population of the given family. Entry i uses its own substream of
// `seed`, with a fixed per-entry draw order, so output is reproducible and
// independent of traversal. Continuous draws use the open interval and ties
// u_a == u_b are redrawn, so generated populations satisfy the strict policy.
inline Population generate(const FamilySpec& spec, std::uint64_t seed) {
    validate(spec);
    const std::size_t n = spec.population_size;
    std::vector<UtilityProfile> profiles;
    profiles.reserve(n);

    switch (spec.kind) {
        case FamilyKind::IndependentUniform:
            for (std::size_t i = 0; i < n; ++i) {
                SplitRng rng(derive_seed(seed, i));
                const double a = rng.next_open01();
                double b = rng.next_open01();
                while (b == a) b = rng.next_open01();
                profiles.push_back({a, b, 1.0});
            }
            break;
        case FamilyKind::BinaryProposal: {
            const double q = spec.params[0];
            for (std::size_t i = 0; i < n; ++i) {
                SplitRng rng(derive_seed(seed, i));
                const double a = rng.next_open01();
                const double b = rng.bernoulli(q) ? 1.0 : 0.0;
                profiles.push_back({a, b, 1.0});
            }
            break;
        }
        case FamilyKind::ConstantStatusQuo: {
            const double level = spec.params[0];
            for (std::size_t i = 0; i < n; ++i) {
                SplitRng rng(derive_seed(seed, i));
                double b = rng.next_open01();
                while (b == level) b = rng.next_open01();
                profiles.push_back({level, b, 1.0});
            }
            break;
        }
        case FamilyKind::DegenerateBinaryStatusQuo: {
            const double p1 = spec.params[0];
            for (std::size_t i = 0; i < n; ++i) {
                SplitRng rng(derive_seed(seed, i));
                const double a = rng.bernoulli(p1) ? 1.0 : 0.0;
                const double b = rng.next_open01();
                profiles.push_back({a, b, 1.0});
            }
            break;
        }
        case FamilyKind::TwoBlock: {
            // Deterministic: the block-1 count is the rounded share of n,
            // so every trial replicates the same two-block composition.
            const double share = spec.params[0];
            auto n1 = static_cast<std::size_t>(
                std::llround(share * static_cast<double>(n)));
            if (n1 > n) n1 = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (i < n1)
                    profiles.push_back({spec.params[1], spec.params[2], 1.0});
                else
                    profiles.push_back({spec.params[3], spec.params[4], 1.0});
            }
            break;
        }
    }

    return make_population(std::move(profiles), TiePolicy::Strict);
}

}  // namespace votebound

#endif  // VOTEBOUND_FAMILIES_HPP
