#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "helpers.hpp"
#include "votebound/io.hpp"

using namespace votebound;
using Catch::Approx;
using nlohmann::json;

namespace {

Population pop_from_csv(const std::string& text,
                        TiePolicy policy = TiePolicy::Strict) {
    std::istringstream in(text);
    return io::read_population_csv(in, policy);
}

ObservedDataset obs_from_csv(const std::string& text) {
    std::istringstream in(text);
    return io::read_observed_csv(in);
}

}  // namespace

TEST_CASE("population CSV: header, rows, optional weight column") {
    const auto pop = pop_from_csv("u_a,u_b,weight\n0.5,0.6,3\n0.9,0.1,1\n");
    REQUIRE(pop.size() == 2);
    REQUIRE(pop.profiles()[0].weight == 0.75);
    REQUIRE(pop.profiles()[1].weight == 0.25);

    const auto unweighted = pop_from_csv("u_a,u_b\n0.5,0.6\n0.9,0.1\n");
    REQUIRE(unweighted.profiles()[0].weight == 0.5);
}

TEST_CASE("population CSV: round trip preserves utilities bit for bit") {
    SplitRng rng(103);
    const auto pop = testutil::random_population(rng, 120);
    std::ostringstream out;
    io::write_population_csv(out, pop);
    const auto back = pop_from_csv(out.str());
    REQUIRE(back.size() == pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        REQUIRE(back.profiles()[i].u_a == pop.profiles()[i].u_a);
        REQUIRE(back.profiles()[i].u_b == pop.profiles()[i].u_b);
        REQUIRE(back.profiles()[i].weight ==
                Approx(pop.profiles()[i].weight).margin(1e-15));
    }
}

TEST_CASE("observed CSV: votes, weights, round trip") {
    const auto obs = obs_from_csv("u_a,vote,weight\n0.4,B,0.5\n0.8,A,0.5\n");
    REQUIRE(obs.records()[0].votes_b);
    REQUIRE_FALSE(obs.records()[1].votes_b);

    std::ostringstream out;
    io::write_observed_csv(out, obs);
    REQUIRE(obs_from_csv(out.str()) == obs);

    const auto unweighted = obs_from_csv("u_a,vote\n0.4,B\n0.8,A\n");
    REQUIRE(unweighted.records()[0].weight == 0.5);
}

TEST_CASE("CSV ingestion tolerates CRLF endings, a BOM, and blank lines") {
    const auto pop = pop_from_csv("\xEF\xBB\xBFu_a,u_b\r\n0.5,0.6\r\n\r\n0.9,0.1\r\n");
    REQUIRE(pop.size() == 2);
    const auto obs = obs_from_csv("u_a,vote\r\n0.4,B\r\n");
    REQUIRE(obs.records()[0].votes_b);
}

TEST_CASE("CSV errors carry 1-based line numbers") {
    auto line_of = [](auto&& fn) -> std::size_t {
        try {
            fn();
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };
    REQUIRE(line_of([] { pop_from_csv(""); }) == 1);
    REQUIRE(line_of([] { pop_from_csv("wrong,header\n"); }) == 1);
    REQUIRE(line_of([] { pop_from_csv("u_a,u_b\n0.5,0.6\n0.5\n"); }) == 3);
    REQUIRE(line_of([] { pop_from_csv("u_a,u_b\n0.5,abc\n"); }) == 2);
    REQUIRE(line_of([] { pop_from_csv("u_a,u_b\n0.5,0.6\n1.5,0.6\n"); }) == 3);
    REQUIRE(line_of([] { pop_from_csv("u_a,u_b,weight\n0.5,0.6,0\n"); }) == 2);
    REQUIRE(line_of([] { pop_from_csv("u_a,u_b\n0.5,0.5\n"); }) == 2);  // strict tie
    REQUIRE(line_of([] { obs_from_csv("u_a,vote\n0.5,Q\n"); }) == 2);
    // a header with no rows is an empty dataset, not a parse error
    REQUIRE_THROWS_AS(obs_from_csv("u_a,vote\n"), EmptyPopulation);
}

TEST_CASE("population CSV honors the tie policy") {
    REQUIRE_THROWS_AS(pop_from_csv("u_a,u_b\n0.5,0.5\n"), ParseError);
    const auto pop = pop_from_csv("u_a,u_b\n0.5,0.5\n", TiePolicy::StatusQuoTiebreak);
    REQUIRE(pop.has_flagged_ties());
}

TEST_CASE("empty observed CSV body is rejected as an empty dataset") {
    REQUIRE_THROWS_AS(obs_from_csv("u_a,vote\n"), EmptyPopulation);
}

TEST_CASE("summary JSON: full form, aliases, and the two-field constant form") {
    const auto full = io::summary_from_json(json::parse(
        R"({"mean_u_a":0.6,"vote_share_b":0.5,"cond_mean_a_given_b":0.4,"cond_mean_a_given_a":0.8})"));
    REQUIRE(full.cond_mean_a_given_b == 0.4);
    REQUIRE(full.cond_mean_a_given_a == 0.8);

    const auto aliased = io::summary_from_json(
        json::parse(R"({"mean_u_a":0.7,"vote_share_b":0.6,"cond_b":0.7,"cond_a":0.7})"));
    REQUIRE(aliased.cond_mean_a_given_b == 0.7);

    const auto constant = io::summary_from_json(
        json::parse(R"({"mean_u_a":0.7,"vote_share_b":0.6})"));
    REQUIRE(constant.cond_mean_a_given_b == 0.7);
    REQUIRE(constant.cond_mean_a_given_a == 0.7);
}

TEST_CASE("summary JSON: sentinels are normalized at the vote-share corners") {
    const auto all_a = io::summary_from_json(
        json::parse(R"({"mean_u_a":0.7,"vote_share_b":0.0})"));
    REQUIRE(all_a.cond_mean_a_given_b == 0.0);
    REQUIRE(all_a.cond_mean_a_given_a == 0.7);

    const auto all_b = io::summary_from_json(
        json::parse(R"({"mean_u_a":0.7,"vote_share_b":1.0})"));
    REQUIRE(all_b.cond_mean_a_given_b == 0.7);
    REQUIRE(all_b.cond_mean_a_given_a == 0.0);
}

TEST_CASE("summary JSON: malformed and incoherent inputs are rejected") {
    REQUIRE_THROWS_AS(io::summary_from_json(json::parse(R"({"vote_share_b":0.5})")),
                      Error);
    REQUIRE_THROWS_AS(io::summary_from_json(json::parse(
                          R"({"mean_u_a":0.5,"vote_share_b":0.5,"cond_b":0.4})")),
                      Error);
    REQUIRE_THROWS_AS(io::summary_from_json(json::parse(
                          R"({"mean_u_a":"x","vote_share_b":0.5})")),
                      Error);
    REQUIRE_THROWS_AS(io::summary_from_json(json::parse(
                          R"({"mean_u_a":1.5,"vote_share_b":0.5})")),
                      UtilityOutOfRange);
    // recomposition identity violated by far more than the tolerance
    REQUIRE_THROWS_AS(
        io::summary_from_json(json::parse(
            R"({"mean_u_a":0.9,"vote_share_b":0.5,"cond_b":0.1,"cond_a":0.1})")),
        InconsistentSummary);
}

TEST_CASE("summary and bound JSON emit the documented keys") {
    const auto s = summarize(make_observed({{0.4, true, 0.5}, {0.8, false, 0.5}}));
    const auto js = io::to_json(s);
    REQUIRE(js.size() == 4);
    REQUIRE(js.at("mean_u_a").get<double>() == s.mean_u_a);
    REQUIRE(js.at("vote_share_b").get<double>() == s.vote_share_b);
    REQUIRE(js.at("cond_mean_a_given_b").get<double>() == s.cond_mean_a_given_b);
    REQUIRE(js.at("cond_mean_a_given_a").get<double>() == s.cond_mean_a_given_a);

    const auto jb = io::to_json(sharp_bound(s));
    REQUIRE(jb.size() == 4);
    REQUIRE(jb.at("lower").get<double>() == Approx(0.2).margin(1e-12));
    REQUIRE(jb.at("upper").get<double>() == Approx(0.9).margin(1e-12));
    REQUIRE(jb.at("midpoint").get<double>() == Approx(0.55).margin(1e-12));
    REQUIRE(jb.at("trivial").get<bool>() == false);

    // summaries survive a JSON round trip
    const auto back = io::summary_from_json(js);
    REQUIRE(back == s);
}

TEST_CASE("decision report JSON uses null for inapplicable fields") {
    const auto s = summarize(make_observed({{0.4, true, 0.5}, {0.8, false, 0.5}}));
    const auto report = decide_all(s, std::nullopt, {0.6});
    const auto arr = io::to_json(report);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 5);
    for (const auto& e : arr) {
        REQUIRE(e.contains("criterion"));
        REQUIRE(e.contains("chosen"));
        REQUIRE(e.contains("tie"));
        REQUIRE(e.contains("threshold_used"));
        if (e.at("criterion") == "majority") {
            REQUIRE(e.at("regret_a").is_null());
            REQUIRE(e.at("regret_b").is_null());
            REQUIRE(e.at("prior_mean").is_null());
        }
        if (e.at("criterion") == "mmr") {
            REQUIRE(e.at("regret_a").is_number());
            REQUIRE(e.at("regret_b").is_number());
        }
        if (e.at("criterion") == "midpoint-bayes")
            REQUIRE(e.at("prior_mean").is_number());
    }
}

TEST_CASE("decision report CSV has one row per criterion") {
    const auto s = summarize(make_observed({{0.4, true, 0.5}, {0.8, false, 0.5}}));
    const auto csv = io::decisions_csv(decide_all(s, std::nullopt, {0.6}));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "criterion,chosen,tie,threshold_used,regret_a,regret_b,prior_mean");
    std::size_t rows = 0;
    bool saw_supermajority = false;
    while (std::getline(in, line)) {
        ++rows;
        saw_supermajority = saw_supermajority || line.rfind("supermajority@0.6,", 0) == 0;
    }
    REQUIRE(rows == 5);
    REQUIRE(saw_supermajority);
}

TEST_CASE("disagreement report JSON and CSV carry rates with half-widths") {
    const FamilySpec spec{FamilyKind::TwoBlock, {0.6, 0.5, 0.6, 0.9, 0.0}, 50};
    const auto rep = monte_carlo_disagreement(spec, 25, 4);
    const auto j = io::to_json(rep);
    REQUIRE(j.at("family") == "two-block");
    REQUIRE(j.at("trials") == 25);
    REQUIRE(j.at("seed") == 4);
    REQUIRE(j.at("rates").at("majority_vs_utilitarian_disagree").at("value") == 1.0);
    REQUIRE(j.at("rates").at("majority_vs_utilitarian_disagree").at("half_width") ==
            0.0);
    REQUIRE(j.at("rates").at("concordance").at("value") == 0.0);
    REQUIRE(j.at("mean_realized_regret").contains("mmr"));

    const auto csv = io::disagreement_csv(rep);
    std::istringstream in(csv);
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    REQUIRE_FALSE(std::getline(in, extra));
    REQUIRE(header.rfind("family,params,population_size,trials,seed,", 0) == 0);
    REQUIRE(header.find("majority_vs_utilitarian_disagree_half_width") !=
            std::string::npos);
    REQUIRE(header.find("mean_regret_majority") != std::string::npos);
    REQUIRE(row.rfind("two-block,0.6;0.5;0.6;0.9;0,50,25,4,", 0) == 0);
}

TEST_CASE("containment summary JSON reports pass/fail") {
    const auto out =
        verify_bound_containment({FamilyKind::IndependentUniform, {}, 40}, 30, 2);
    const auto j = io::to_json(out);
    REQUIRE(j.at("trials") == 30);
    REQUIRE(j.at("violations") == 0);
    REQUIRE(j.at("pass") == true);
    REQUIRE(j.at("min_margin").is_number());
}

TEST_CASE("provenance digest implements 64-bit FNV-1a") {
    REQUIRE(io::fnv1a_hex("") == "cbf29ce484222325");
    REQUIRE(io::fnv1a_hex("a") == "af63dc4c8601ec8c");
    REQUIRE(io::fnv1a_hex("hello") == io::fnv1a_hex("hello"));
    REQUIRE(io::fnv1a_hex("hello") != io::fnv1a_hex("hellp"));
}
