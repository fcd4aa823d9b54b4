#include <doctest.h>

#include <random>

#include "cbp/classic.hpp"
#include "cbp/instances.hpp"
#include "cbp/oracle.hpp"
#include "testutil.hpp"

using namespace cbp;
using testutil::r;

TEST_CASE("exact_opt basics") {
    CHECK(oracle::exact_opt(testutil::items({"1/2", "1/2", "1/2", "1/2"})) == 2);
    CHECK(oracle::exact_opt(std::vector<Item>{}) == 0);
    CHECK(oracle::exact_opt(testutil::items({"1"})) == 1);
    // awkward sizes the greedy heuristics get wrong
    CHECK(oracle::exact_opt(testutil::items({"0.6", "0.5", "0.4", "0.3", "0.2"})) == 2);
}

TEST_CASE("exact_opt on the generator families") {
    auto thm1 = instances::gen_theorem1(4, r("1/8"));
    CHECK(oracle::exact_opt(thm1.instance.items) == 4);

    // two colours, sizes 1/2+eps and 1/3+eps, six items each: one of each
    // pair per bin is forced
    auto sylvester = instances::gen_sylvester(1, 6, r("1/100"));
    CHECK(sylvester.instance.items.size() == 12);
    CHECK(oracle::exact_opt(sylvester.instance.items, 16) == 6);
}

TEST_CASE("exact_opt refuses beyond the limit") {
    std::vector<Item> many;
    for (int i = 0; i < 17; ++i) many.push_back({i, r("1/2"), 1});
    CHECK_THROWS_AS(oracle::exact_opt(many, 16), PreconditionError);
    CHECK(oracle::exact_opt(many, 17) == 9);
}

TEST_CASE("per_colour_opt cross-checks exact_opt on each colour") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto generated = instances::gen_random(1 + static_cast<int>(rng() % 12),
                                               1 + static_cast<int>(rng() % 3),
                                               instances::SizeLaw::uniform(r("1/32"), r("1")),
                                               rng(), 32);
        auto per_colour = oracle::per_colour_opt(generated.instance);
        for (const auto& [colour, opt] : per_colour)
            CHECK(opt == oracle::exact_opt(generated.instance.of_colour(colour)));
    }
}

TEST_CASE("exact_opt bounds") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        auto generated = instances::gen_random(1 + static_cast<int>(rng() % 12), 2,
                                               instances::SizeLaw::uniform(r("1/64"), r("1")),
                                               rng(), 64);
        const auto& items = generated.instance.items;
        int opt = oracle::exact_opt(items);
        CHECK(opt >= weight_lower_bound(items));
        CHECK(opt <= classic::first_fit_decreasing(items).total_bins());
    }
}

TEST_CASE("exact_opt_beta") {
    SUBCASE("huge beta equals exact_opt") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 15; ++trial) {
            auto generated = instances::gen_random(1 + static_cast<int>(rng() % 9),
                                                   1 + static_cast<int>(rng() % 3),
                                                   instances::SizeLaw::uniform(r("1/16"), r("1")),
                                                   rng(), 32);
            auto result = oracle::exact_opt_beta(generated.instance, Rational(100), 9);
            REQUIRE(result.feasible);
            CHECK(result.bins == oracle::exact_opt(generated.instance.items));
        }
    }
    SUBCASE("beta = 1 can cost bins") {
        // two bigs of 3/4 (own colours) and two smalls of 1/4 (one colour):
        // with colour stretch 1 the smalls share one bin, so 3 bins not 2
        auto inst = testutil::instance({"3/4", "3/4", "1/4", "1/4"}, {1, 2, 3, 3});
        CHECK(oracle::exact_opt(inst.items) == 2);
        auto tight = oracle::exact_opt_beta(inst, Rational(1), 10);
        REQUIRE(tight.feasible);
        CHECK(tight.bins == 3);
    }
    SUBCASE("monochrome instances are unaffected by beta") {
        auto inst = testutil::instance({"0.6", "0.5", "0.4", "0.3"});
        auto result = oracle::exact_opt_beta(inst, Rational(1), 10);
        REQUIRE(result.feasible);
        CHECK(result.bins == oracle::exact_opt(inst.items));
    }
    SUBCASE("monotone nonincreasing in beta") {
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 10; ++trial) {
            auto generated = instances::gen_random(2 + static_cast<int>(rng() % 7),
                                                   1 + static_cast<int>(rng() % 3),
                                                   instances::SizeLaw::uniform(r("1/8"), r("1")),
                                                   rng(), 16);
            auto tight = oracle::exact_opt_beta(generated.instance, Rational(1), 9);
            auto loose = oracle::exact_opt_beta(generated.instance, Rational(2), 9);
            REQUIRE(tight.feasible);
            REQUIRE(loose.feasible);
            CHECK(tight.bins >= loose.bins);
        }
    }
}

TEST_CASE("min_colour_span") {
    auto thm1 = instances::gen_theorem1(2, r("1/8"));
    const auto& items = thm1.instance.items; // 2 x 3/4, 2 x 1/4 (colour 3)
    SUBCASE("two bins force the smalls apart") {
        auto span = oracle::min_colour_span(items, 2, 3);
        REQUIRE(span.has_value());
        CHECK(*span == 2);
    }
    SUBCASE("three bins allow a dedicated small bin") {
        auto span = oracle::min_colour_span(items, 3, 3);
        REQUIRE(span.has_value());
        CHECK(*span == 1);
    }
    SUBCASE("too few bins is infeasible") {
        CHECK(!oracle::min_colour_span(items, 1, 3).has_value());
    }
}

TEST_CASE("oracle solve bundles everything") {
    auto thm1 = instances::gen_theorem1(4, r("1/8"));
    auto result = oracle::solve(thm1.instance, Rational(2));
    CHECK(result.opt_bins == 4);
    CHECK(result.per_colour_opt.at(1) == 1);
    CHECK(result.per_colour_opt.at(5) == 1);
    REQUIRE(result.opt_beta.has_value());
    CHECK(result.opt_beta->second == 5);
    CHECK(result.method == OracleMethod::exhaustive_partition);
    CHECK(result.instance_digest == instance_digest(thm1.instance));
}
