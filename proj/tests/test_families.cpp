#include <catch2/catch_amalgamated.hpp>

#include <cstddef>

#include "helpers.hpp"
#include "votebound/families.hpp"

using namespace votebound;
using Catch::Approx;

namespace {

const FamilySpec kSpecs[] = {
    {FamilyKind::IndependentUniform, {}, 64},
    {FamilyKind::BinaryProposal, {0.4}, 64},
    {FamilyKind::ConstantStatusQuo, {0.5}, 64},
    {FamilyKind::DegenerateBinaryStatusQuo, {0.5}, 64},
    {FamilyKind::TwoBlock, {0.6, 0.5, 0.6, 0.9, 0.0}, 64},
};

}  // namespace

TEST_CASE("generate is deterministic in (spec, seed) and sensitive to the seed") {
    for (const auto& spec : kSpecs) {
        const auto a = generate(spec, 123);
        const auto b = generate(spec, 123);
        REQUIRE(a == b);
        if (spec.kind != FamilyKind::TwoBlock) {
            const auto c = generate(spec, 124);
            REQUIRE_FALSE(a == c);
        }
    }
}

TEST_CASE("generated populations are valid under the strict tie policy") {
    for (const auto& spec : kSpecs) {
        const auto pop = generate(spec, 99);
        REQUIRE(pop.size() == spec.population_size);
        REQUIRE(pop.total_weight() == Approx(1.0).margin(1e-12));
        for (const auto& p : pop.profiles()) {
            REQUIRE(p.u_a >= 0.0);
            REQUIRE(p.u_a <= 1.0);
            REQUIRE(p.u_b >= 0.0);
            REQUIRE(p.u_b <= 1.0);
            REQUIRE(p.u_a != p.u_b);
        }
    }
}

TEST_CASE("binary proposal: vote share equals true proposal welfare exactly") {
    // With u_b in {0,1} and u_a interior, voting for the proposal is the same
    // event as u_b == 1, so the share of B votes *is* the proposal's mean
    // utility -- bit for bit, because both sides aggregate identical terms.
    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
        for (const std::size_t n : {1u, 7u, 128u, 1000u}) {
            const FamilySpec spec{FamilyKind::BinaryProposal, {0.35}, n};
            const auto pop = generate(spec, seed);
            const auto s = summarize(observe(pop));
            const auto w = true_welfare(pop);
            REQUIRE(s.vote_share_b == w.mean_u_b);
        }
    }
}

TEST_CASE("binary proposal: u_a interior, u_b on the corners") {
    const auto pop = generate({FamilyKind::BinaryProposal, {0.5}, 200}, 5);
    for (const auto& p : pop.profiles()) {
        REQUIRE(p.u_a > 0.0);
        REQUIRE(p.u_a < 1.0);
        REQUIRE((p.u_b == 0.0 || p.u_b == 1.0));
    }
}

TEST_CASE("constant status quo: every u_a equals the level") {
    const auto pop = generate({FamilyKind::ConstantStatusQuo, {0.37}, 150}, 2);
    for (const auto& p : pop.profiles()) {
        REQUIRE(p.u_a == 0.37);
        REQUIRE(p.u_b > 0.0);
        REQUIRE(p.u_b < 1.0);
    }
}

TEST_CASE("degenerate binary status quo: u_a on the corners, u_b interior") {
    const auto pop = generate({FamilyKind::DegenerateBinaryStatusQuo, {0.5}, 150}, 3);
    bool saw_zero = false, saw_one = false;
    for (const auto& p : pop.profiles()) {
        REQUIRE((p.u_a == 0.0 || p.u_a == 1.0));
        REQUIRE(p.u_b > 0.0);
        REQUIRE(p.u_b < 1.0);
        saw_zero = saw_zero || p.u_a == 0.0;
        saw_one = saw_one || p.u_a == 1.0;
    }
    REQUIRE(saw_zero);
    REQUIRE(saw_one);
}

TEST_CASE("independent uniform: vote split is near one half at scale") {
    const auto pop = generate({FamilyKind::IndependentUniform, {}, 20000}, 7);
    const auto s = summarize(observe(pop));
    // 14 standard errors of slack; failure would indicate a broken generator
    REQUIRE(s.vote_share_b == Approx(0.5).margin(0.05));
    REQUIRE(s.mean_u_a == Approx(0.5).margin(0.05));
}

TEST_CASE("two-block: deterministic composition with rounded block counts") {
    const auto pop = generate({FamilyKind::TwoBlock, {0.6, 0.5, 0.6, 0.9, 0.0}, 10}, 0);
    std::size_t block1 = 0;
    for (const auto& p : pop.profiles()) {
        if (p.u_a == 0.5 && p.u_b == 0.6) ++block1;
        REQUIRE(p.weight == Approx(0.1).margin(1e-15));
    }
    REQUIRE(block1 == 6);

    // half-count rounds away from zero
    const auto odd = generate({FamilyKind::TwoBlock, {0.25, 0.5, 0.6, 0.9, 0.0}, 10}, 0);
    std::size_t block1_odd = 0;
    for (const auto& p : odd.profiles())
        if (p.u_a == 0.5) ++block1_odd;
    REQUIRE(block1_odd == 3);

    // seed does not matter for this family
    REQUIRE(generate({FamilyKind::TwoBlock, {0.6, 0.5, 0.6, 0.9, 0.0}, 10}, 1) == pop);
}

TEST_CASE("family validation rejects bad parameters") {
    REQUIRE_THROWS_AS(validate({FamilyKind::BinaryProposal, {1.2}, 10}),
                      InvalidFamilyParameter);
    REQUIRE_THROWS_AS(validate({FamilyKind::BinaryProposal, {}, 10}),
                      InvalidFamilyParameter);
    REQUIRE_THROWS_AS(validate({FamilyKind::IndependentUniform, {0.5}, 10}),
                      InvalidFamilyParameter);
    REQUIRE_THROWS_AS(validate({FamilyKind::IndependentUniform, {}, 0}),
                      InvalidFamilyParameter);
    REQUIRE_THROWS_AS(validate({FamilyKind::TwoBlock, {0.5, 0.4, 0.4, 0.9, 0.0}, 10}),
                      InvalidFamilyParameter);
    REQUIRE_THROWS_AS(validate({FamilyKind::TwoBlock, {0.5, 0.4, 0.5}, 10}),
                      InvalidFamilyParameter);
}

TEST_CASE("family text form round-trips") {
    const auto spec = parse_family("binary-proposal:0.4:1000");
    REQUIRE(spec.kind == FamilyKind::BinaryProposal);
    REQUIRE(spec.params == std::vector<double>{0.4});
    REQUIRE(spec.population_size == 1000);
    REQUIRE(to_string(spec) == "binary-proposal:0.4:1000");

    const auto uni = parse_family("independent-uniform::10");
    REQUIRE(uni.kind == FamilyKind::IndependentUniform);
    REQUIRE(uni.params.empty());
    REQUIRE(parse_family(to_string(uni)) == uni);

    const auto two = parse_family("two-block:0.6,0.5,0.6,0.9,0:500");
    REQUIRE(two.params == std::vector<double>{0.6, 0.5, 0.6, 0.9, 0.0});
    REQUIRE(parse_family(to_string(two)) == two);
}

TEST_CASE("family text form rejects malformed specs") {
    REQUIRE_THROWS_AS(parse_family("binary-proposal:0.4"), InvalidFamilyParameter);
    REQUIRE_THROWS_AS(parse_family("nope::10"), InvalidFamilyParameter);
    REQUIRE_THROWS_AS(parse_family("binary-proposal:x:10"), InvalidFamilyParameter);
    REQUIRE_THROWS_AS(parse_family("binary-proposal:0.4:zero"), InvalidFamilyParameter);
    REQUIRE_THROWS_AS(parse_family("binary-proposal:0.4:0"), InvalidFamilyParameter);
    REQUIRE_THROWS_AS(parse_family("binary-proposal:0.4:10:extra"),
                      InvalidFamilyParameter);
}
