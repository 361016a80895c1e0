#ifndef VOTEBOUND_IO_HPP
#define VOTEBOUND_IO_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "votebound/bounds.hpp"
#include "votebound/decisions.hpp"
#include "votebound/errors.hpp"
#include "votebound/lab.hpp"
#include "votebound/model.hpp"

namespace votebound::io {

using nlohmann::json;

namespace detail {

using votebound::detail::format_double;

// Strips a UTF-8 BOM and a trailing CR so files from other platforms parse.
inline void clean_line(std::string& line, bool first) {
    if (first && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
        line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

inline double parse_double(const std::string& field, std::size_t line_no,
                           const char* what) {
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw ParseError(line_no, std::string("bad ") + what + ": '" + field + "'");
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV: populations ("u_a,u_b[,weight]") and observed data ("u_a,vote[,weight]")
// ---------------------------------------------------------------------------

inline Population read_population_csv(std::istream& in,
                                      TiePolicy policy = TiePolicy::Strict) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty input: expected a header");
    detail::clean_line(line, true);
    const auto header = detail::split_fields(line);
    bool has_weight;
    if (header == std::vector<std::string>{"u_a", "u_b", "weight"})
        has_weight = true;
    else if (header == std::vector<std::string>{"u_a", "u_b"})
        has_weight = false;
    else
        throw ParseError(1, "expected header 'u_a,u_b[,weight]', got '" + line + "'");

    std::vector<UtilityProfile> profiles;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        detail::clean_line(line, false);
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != (has_weight ? 3u : 2u))
            throw ParseError(line_no, "expected " + std::to_string(has_weight ? 3 : 2) +
                                          " fields, got " + std::to_string(fields.size()));
        UtilityProfile p;
        p.u_a = detail::parse_double(fields[0], line_no, "u_a");
        p.u_b = detail::parse_double(fields[1], line_no, "u_b");
        p.weight = has_weight ? detail::parse_double(fields[2], line_no, "weight") : 1.0;
        try {
            votebound::detail::validate_profile(p, profiles.size());
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
        profiles.push_back(p);
    }
    try {
        return make_population(std::move(profiles), policy);
    } catch (const TieInStrictMode& e) {
        throw ParseError(e.index + 2, e.what());
    }
}

inline ObservedDataset read_observed_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty input: expected a header");
    detail::clean_line(line, true);
    const auto header = detail::split_fields(line);
    bool has_weight;
    if (header == std::vector<std::string>{"u_a", "vote", "weight"})
        has_weight = true;
    else if (header == std::vector<std::string>{"u_a", "vote"})
        has_weight = false;
    else
        throw ParseError(1, "expected header 'u_a,vote[,weight]', got '" + line + "'");

    std::vector<ObservedRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        detail::clean_line(line, false);
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != (has_weight ? 3u : 2u))
            throw ParseError(line_no, "expected " + std::to_string(has_weight ? 3 : 2) +
                                          " fields, got " + std::to_string(fields.size()));
        ObservedRecord r;
        r.u_a = detail::parse_double(fields[0], line_no, "u_a");
        if (fields[1] == "A")
            r.votes_b = false;
        else if (fields[1] == "B")
            r.votes_b = true;
        else
            throw ParseError(line_no, "vote must be 'A' or 'B', got '" + fields[1] + "'");
        r.weight = has_weight ? detail::parse_double(fields[2], line_no, "weight") : 1.0;
        try {
            votebound::detail::validate_record(r, records.size());
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
        records.push_back(r);
    }
    return make_observed(std::move(records));
}

inline void write_population_csv(std::ostream& out, const Population& pop) {
    out << "u_a,u_b,weight\n";
    for (const auto& p : pop.profiles())
        out << detail::format_double(p.u_a) << ',' << detail::format_double(p.u_b)
            << ',' << detail::format_double(p.weight) << '\n';
}

inline void write_observed_csv(std::ostream& out, const ObservedDataset& obs) {
    out << "u_a,vote,weight\n";
    for (const auto& r : obs.records())
        out << detail::format_double(r.u_a) << ',' << (r.votes_b ? 'B' : 'A') << ','
            << detail::format_double(r.weight) << '\n';
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json to_json(const SummaryStatistics& s) {
    return json{{"mean_u_a", s.mean_u_a},
                {"vote_share_b", s.vote_share_b},
                {"cond_mean_a_given_b", s.cond_mean_a_given_b},
                {"cond_mean_a_given_a", s.cond_mean_a_given_a}};
}

// Accepts either the full four-field form (cond_* spellings or the short
// aliases cond_b/cond_a) or just {mean_u_a, vote_share_b}, which is read as
// "everyone shares the status-quo level mean_u_a". Four-field input must
// satisfy the recomposition identity to 1e-6.
inline SummaryStatistics summary_from_json(const json& j) {
    if (!j.is_object()) throw Error("summary JSON must be an object");
    auto need_number = [&j](const char* key) {
        if (!j.contains(key) || !j.at(key).is_number())
            throw Error(std::string("summary JSON needs numeric field '") + key + "'");
        return j.at(key).get<double>();
    };
    SummaryStatistics s;
    s.mean_u_a = need_number("mean_u_a");
    s.vote_share_b = need_number("vote_share_b");

    auto pick = [&j](const char* full, const char* alias) -> const json* {
        if (j.contains(full)) return &j.at(full);
        if (j.contains(alias)) return &j.at(alias);
        return nullptr;
    };
    const json* cb = pick("cond_mean_a_given_b", "cond_b");
    const json* ca = pick("cond_mean_a_given_a", "cond_a");
    if ((cb == nullptr) != (ca == nullptr))
        throw Error("summary JSON must give both conditional means or neither");
    if (cb == nullptr) {
        // Constant status-quo reading: both conditional means equal the mean.
        s.cond_mean_a_given_b = s.mean_u_a;
        s.cond_mean_a_given_a = s.mean_u_a;
    } else {
        if (!cb->is_number() || !ca->is_number())
            throw Error("summary JSON conditional means must be numeric");
        s.cond_mean_a_given_b = cb->get<double>();
        s.cond_mean_a_given_a = ca->get<double>();
    }
    validate_summary(s, 1e-6);
    if (s.vote_share_b == 0.0) s.cond_mean_a_given_b = 0.0;
    if (s.vote_share_b == 1.0) s.cond_mean_a_given_a = 0.0;
    return s;
}

inline json to_json(const WelfareBound& b) {
    return json{{"lower", b.lower},
                {"upper", b.upper},
                {"midpoint", b.midpoint},
                {"trivial", b.trivial}};
}

inline json to_json(const DecisionEntry& e) {
    json j{{"criterion", e.criterion},
           {"chosen", to_string(e.chosen)},
           {"tie", e.tie},
           {"threshold_used", e.threshold_used}};
    j["regret_a"] = e.regrets ? json(e.regrets->regret_a) : json(nullptr);
    j["regret_b"] = e.regrets ? json(e.regrets->regret_b) : json(nullptr);
    j["prior_mean"] = e.prior_mean ? json(*e.prior_mean) : json(nullptr);
    return j;
}

inline json to_json(const DecisionReport& r) {
    json arr = json::array();
    for (const auto& e : r.entries) arr.push_back(to_json(e));
    return arr;
}

inline json to_json(const DisagreementReport& r) {
    json rates;
    auto rate = [&r](double v) {
        return json{{"value", v}, {"half_width", rate_half_width(v, r.trials)}};
    };
    rates["majority_vs_utilitarian_disagree"] = rate(r.majority_vs_utilitarian_disagree_rate);
    rates["mmr_vs_utilitarian_disagree"] = rate(r.mmr_vs_utilitarian_disagree_rate);
    rates["majority_vs_mmr_disagree"] = rate(r.majority_vs_mmr_disagree_rate);
    rates["concordance"] = rate(r.concordance_rate);

    json regrets = json::object();
    for (const auto& [label, value] : r.mean_realized_regret) regrets[label] = value;

    return json{{"family", family_name(r.spec.kind)},
                {"params", r.spec.params},
                {"population_size", r.spec.population_size},
                {"trials", r.trials},
                {"seed", r.seed},
                {"rates", rates},
                {"mean_realized_regret", regrets}};
}

inline json to_json(const ContainmentSummary& c) {
    json j{{"trials", c.trials},
           {"violations", c.violations},
           {"max_violation", c.max_violation},
           {"pass", c.violations == 0}};
    j["min_margin"] = std::isfinite(c.min_margin) ? json(c.min_margin) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// CSV renderers for reports
// ---------------------------------------------------------------------------

inline std::string decisions_csv(const DecisionReport& r) {
    std::string out = "criterion,chosen,tie,threshold_used,regret_a,regret_b,prior_mean\n";
    for (const auto& e : r.entries) {
        out += criterion_label(e);
        out += ',';
        out += to_string(e.chosen);
        out += ',';
        out += e.tie ? "true" : "false";
        out += ',';
        out += detail::format_double(e.threshold_used);
        out += ',';
        if (e.regrets) out += detail::format_double(e.regrets->regret_a);
        out += ',';
        if (e.regrets) out += detail::format_double(e.regrets->regret_b);
        out += ',';
        if (e.prior_mean) out += detail::format_double(*e.prior_mean);
        out += '\n';
    }
    return out;
}

// Single-row CSV: configuration, the four rates with their Monte Carlo
// half-widths, then one mean-regret column per criterion. Params are joined
// with ';' so the cell stays a single CSV field.
inline std::string disagreement_csv(const DisagreementReport& r) {
    std::string header = "family,params,population_size,trials,seed";
    std::string row = family_name(r.spec.kind);
    row += ',';
    for (std::size_t i = 0; i < r.spec.params.size(); ++i) {
        if (i) row += ';';
        row += detail::format_double(r.spec.params[i]);
    }
    row += ',' + std::to_string(r.spec.population_size);
    row += ',' + std::to_string(r.trials);
    row += ',' + std::to_string(r.seed);

    const std::pair<const char*, double> rates[] = {
        {"majority_vs_utilitarian_disagree", r.majority_vs_utilitarian_disagree_rate},
        {"mmr_vs_utilitarian_disagree", r.mmr_vs_utilitarian_disagree_rate},
        {"majority_vs_mmr_disagree", r.majority_vs_mmr_disagree_rate},
        {"concordance", r.concordance_rate}};
    for (const auto& [name, value] : rates) {
        header += ',';
        header += name;
        header += ",";
        header += name;
        header += "_half_width";
        row += ',' + detail::format_double(value);
        row += ',' + detail::format_double(rate_half_width(value, r.trials));
    }
    for (const auto& [label, value] : r.mean_realized_regret) {
        header += ",mean_regret_";
        header += label;
        row += ',' + detail::format_double(value);
    }
    return header + '\n' + row + '\n';
}

// ---------------------------------------------------------------------------
// Provenance digest (FNV-1a 64) over raw input bytes or a canonical
// configuration string, reported so runs can be tied back to their inputs.
// ---------------------------------------------------------------------------

inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xF];
        h >>= 4;
    }
    return std::string(buf, 16);
}

}  // namespace votebound::io

#endif  // VOTEBOUND_IO_HPP
