#include <doctest.h>

#include <random>

#include "cbp/aptas.hpp"
#include "cbp/instances.hpp"
#include "cbp/oracle.hpp"
#include "testutil.hpp"

using namespace cbp;
using namespace cbp::aptas;
using testutil::r;

TEST_CASE("split at eps squared") {
    auto inst = testutil::instance({"0.25", "0.2", "0.9"}, {1, 1, 1});
    auto [large, small] = split_small_large(inst, r("1/2"));
    REQUIRE(large.size() == 2); // 0.25 is large: the boundary is inclusive
    CHECK(large[0].size == r("1/4"));
    REQUIRE(small.size() == 1);
    CHECK(small[0].size == r("1/5"));

    auto all_large = split_small_large(testutil::instance({"0.5", "0.25"}), r("1/2"));
    CHECK(all_large.second.empty());
}

TEST_CASE("group_round_down") {
    SUBCASE("eight items of one colour, eps = 1/2: singleton groups") {
        std::vector<Item> items;
        for (int i = 0; i < 8; ++i) items.push_back({i, Rational(8 - i, 16) + r("1/2"), 1});
        auto grouping = group_round_down(items, r("1/2"), 1);
        REQUIRE(grouping.per_colour.size() == 1);
        CHECK(grouping.per_colour[0].groups.size() == 8);
        for (const auto& group : grouping.per_colour[0].groups) CHECK(group.items.size() == 1);
        CHECK(grouping.q_items.size() == 1);
        CHECK(grouping.q_items[0].size == Rational(8, 16) + r("1/2")); // the largest
    }
    SUBCASE("colour with no items contributes nothing") {
        auto grouping = group_round_down(testutil::items({"0.5"}, {2}), r("1/2"), 2);
        CHECK(grouping.per_colour.size() == 1);
        CHECK(grouping.per_colour[0].colour == 2);
    }
    SUBCASE("equal sizes round to themselves") {
        std::vector<Item> items;
        for (int i = 0; i < 6; ++i) items.push_back({i, r("0.4"), 1});
        auto grouping = group_round_down(items, r("1/2"), 1);
        for (const auto& group : grouping.per_colour[0].groups)
            CHECK(group.rounded_size == r("0.4"));
    }
    SUBCASE("group sizes never increase") {
        std::mt19937_64 rng(97);
        for (int trial = 0; trial < 20; ++trial) {
            auto generated = instances::gen_random(1 + static_cast<int>(rng() % 20), 3,
                                                   instances::SizeLaw::uniform(r("1/4"), r("1")),
                                                   rng(), 16);
            auto grouping = group_round_down(generated.instance.items, r("1/2"), 3);
            for (const auto& cg : grouping.per_colour)
                for (std::size_t g = 1; g < cg.groups.size(); ++g) {
                    CHECK(cg.groups[g].items.size() <= cg.groups[g - 1].items.size());
                    CHECK(cg.groups[g].rounded_size <= cg.groups[g - 1].rounded_size);
                }
        }
    }
}

TEST_CASE("enumerate_configurations") {
    SUBCASE("one class, one colour") {
        std::vector<SizeClass> classes{{1, r("0.6"), 1, {}}};
        auto configs = enumerate_configurations(classes, 1, 1000);
        CHECK(configs.size() == 4); // {} and {0.6}, each with labels {} and {1}
    }
    SUBCASE("capacity excludes joint use") {
        std::vector<SizeClass> classes{{1, r("0.6"), 1, {}}, {1, r("0.5"), 1, {}}};
        auto configs = enumerate_configurations(classes, 1, 1000);
        for (const auto& config : configs) CHECK((config.counts[0] == 0 || config.counts[1] == 0));
        CHECK(configs.size() == 6);
    }
    SUBCASE("no classes: label-only configurations") {
        auto configs = enumerate_configurations({}, 2, 1000);
        CHECK(configs.size() == 4);
    }
    SUBCASE("ceiling trips") {
        std::vector<SizeClass> classes{{1, r("0.1"), 9, {}}};
        CHECK_THROWS_AS(enumerate_configurations(classes, 2, 5), BudgetExceededError);
    }
    SUBCASE("restricted label mask") {
        std::vector<SizeClass> classes{{1, r("0.6"), 1, {}}};
        auto configs = enumerate_configurations(classes, 3, 0x1, 1000);
        CHECK(configs.size() == 4); // labels limited to subsets of {colour 1}
    }
}

namespace {

std::vector<SizeClass> classes_of(const Instance& inst, const Rational& eps) {
    auto [large, small] = split_small_large(inst, eps);
    (void)small;
    return build_classes(group_round_down(large, eps, inst.colour_count));
}

} // namespace

TEST_CASE("search_packings") {
    Budgets budgets;
    SUBCASE("identical items per colour: minimum cover matches the oracle") {
        Instance inst;
        inst.colour_count = 2;
        for (int i = 0; i < 3; ++i) inst.items.push_back({i, r("1/2"), 1});
        for (int i = 3; i < 6; ++i) inst.items.push_back({i, r("1/3"), 2});
        auto classes = classes_of(inst, r("1/2"));
        auto configs = enumerate_configurations(classes, 2, 0, budgets.max_configurations);
        auto candidates = search_packings(configs, classes, Rational(100), {100, 100},
                                          static_cast<int>(inst.items.size()), 0, budgets);
        REQUIRE(!candidates.empty());
        int best = inst.items.size();
        for (const auto& candidate : candidates) best = std::min(best, candidate.bins);
        CHECK(best == oracle::exact_opt(inst.items));
    }
    SUBCASE("beta = 1 on a monochrome instance keeps only optimal covers") {
        Instance inst;
        inst.colour_count = 1;
        for (int i = 0; i < 4; ++i) inst.items.push_back({i, r("1/2"), 1});
        auto classes = classes_of(inst, r("1/2"));
        auto configs = enumerate_configurations(classes, 1, 0, budgets.max_configurations);
        const int opt = oracle::exact_opt(inst.items);
        auto candidates =
            search_packings(configs, classes, Rational(1), {opt}, 4, 0, budgets);
        REQUIRE(!candidates.empty());
        for (const auto& candidate : candidates) CHECK(candidate.bins == opt);
    }
    SUBCASE("lower-bound optima can empty the filter") {
        // three 0.6 items of one colour: real opt 3, weight bound 2, so
        // beta = 1 leaves nothing
        Instance inst;
        inst.colour_count = 1;
        for (int i = 0; i < 3; ++i) inst.items.push_back({i, r("0.6"), 1});
        auto classes = classes_of(inst, r("1/2"));
        auto configs = enumerate_configurations(classes, 1, 0, budgets.max_configurations);
        auto candidates = search_packings(configs, classes, Rational(1),
                                          {weight_lower_bound(inst.items)}, 3, 0, budgets);
        CHECK(candidates.empty());
    }
    SUBCASE("node budget trips") {
        Instance inst;
        inst.colour_count = 1;
        for (int i = 0; i < 8; ++i) inst.items.push_back({i, Rational(8 + i, 32), 1});
        auto classes = classes_of(inst, r("1/2"));
        auto configs = enumerate_configurations(classes, 1, 0, budgets.max_configurations);
        Budgets tiny;
        tiny.max_search_nodes = 2;
        CHECK_THROWS_AS(search_packings(configs, classes, Rational(100), {100}, 8, 0, tiny),
                        BudgetExceededError);
    }
}

TEST_CASE("solve_lps") {
    SUBCASE("worked example") {
        LpsProblem problem;
        problem.bins = {{r("0.7"), 0x1}, {r("0.5"), 0x3}}; // labels {red}, {red, blue}
        problem.supplies = {r("0.4"), r("0.3")};
        auto solution = solve_lps(problem);
        CHECK(solution.placed_total == r("0.7")); // everything fits
    }
    SUBCASE("zero supplies give the zero solution") {
        LpsProblem problem;
        problem.bins = {{r("0.2"), 0x3}};
        problem.supplies = {Rational(0), Rational(0)};
        auto solution = solve_lps(problem);
        CHECK(solution.placed_total == Rational(0));
        CHECK(solution.quota[0][0] == Rational(0));
    }
    SUBCASE("capacity binds") {
        LpsProblem problem;
        problem.bins = {{Rational(0), 0x1}};
        problem.supplies = {Rational(2)};
        auto solution = solve_lps(problem);
        CHECK(solution.placed_total == Rational(1));
    }
}

TEST_CASE("lps flow optimum equals the enumerated dual optimum") {
    // max flow must match min over A of sum_{c not in A} s_c +
    // sum_{bins meeting A} cap_i; equality certifies exact optimality
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int bins = 1 + static_cast<int>(rng() % 4);
        const int colours = 1 + static_cast<int>(rng() % 3);
        LpsProblem problem;
        for (int b = 0; b < bins; ++b)
            problem.bins.push_back({Rational(static_cast<std::int64_t>(rng() % 33), 32),
                                    static_cast<std::uint32_t>(rng() % (1u << colours))});
        for (int c = 0; c < colours; ++c)
            problem.supplies.push_back(Rational(static_cast<std::int64_t>(rng() % 33), 16));

        auto solution = solve_lps(problem);

        // primal feasibility of the returned quotas
        Rational total;
        for (int b = 0; b < bins; ++b) {
            Rational bin_sum;
            for (int c = 0; c < colours; ++c) {
                const Rational& q = solution.quota[static_cast<std::size_t>(b)]
                                                  [static_cast<std::size_t>(c)];
                CHECK(q >= Rational(0));
                if (!(problem.bins[static_cast<std::size_t>(b)].colour_label &
                      (std::uint32_t{1} << c)))
                    CHECK(q == Rational(0));
                bin_sum += q;
            }
            CHECK(bin_sum <= max(Rational(0), Rational(1) - problem.bins[static_cast<std::size_t>(b)]
                                                                 .used_size));
            total += bin_sum;
        }
        for (int c = 0; c < colours; ++c) {
            Rational colour_sum;
            for (int b = 0; b < bins; ++b)
                colour_sum += solution.quota[static_cast<std::size_t>(b)]
                                            [static_cast<std::size_t>(c)];
            CHECK(colour_sum <= problem.supplies[static_cast<std::size_t>(c)]);
        }
        CHECK(total == solution.placed_total);

        Rational best_cut;
        bool first = true;
        for (std::uint32_t subset = 0; subset < (1u << colours); ++subset) {
            Rational cut;
            for (int c = 0; c < colours; ++c)
                if (!(subset & (std::uint32_t{1} << c)))
                    cut += problem.supplies[static_cast<std::size_t>(c)];
            for (int b = 0; b < bins; ++b)
                if (problem.bins[static_cast<std::size_t>(b)].colour_label & subset)
                    cut += max(Rational(0),
                               Rational(1) - problem.bins[static_cast<std::size_t>(b)].used_size);
            best_cut = first ? cut : min(best_cut, cut);
            first = false;
        }
        CHECK(solution.placed_total == best_cut);
    }
}

TEST_CASE("place_small_items") {
    SUBCASE("quotas that match the items exactly leave no overflow") {
        std::vector<Bin> bins(1);
        bins[0].id = 0;
        LpsSolution lps;
        lps.quota = {{r("0.4")}};
        auto overflow = place_small_items(bins, lps, {testutil::items({"0.2", "0.2"})});
        CHECK(overflow[0].empty());
        CHECK(bins[0].contents.size() == 2);
    }
    SUBCASE("a quota smaller than two items overflows the second") {
        std::vector<Bin> bins(1);
        bins[0].id = 0;
        LpsSolution lps;
        lps.quota = {{r("0.3")}};
        auto overflow = place_small_items(bins, lps, {testutil::items({"0.2", "0.2"})});
        CHECK(bins[0].contents.size() == 1);
        REQUIRE(overflow[0].size() == 1);
    }
    SUBCASE("a colour with no quota anywhere overflows entirely") {
        std::vector<Bin> bins(2);
        LpsSolution lps;
        lps.quota = {{Rational(0), r("0.5")}, {Rational(0), r("0.5")}};
        auto overflow =
            place_small_items(bins, lps, {testutil::items({"0.1", "0.1"}), {}});
        CHECK(overflow[0].size() == 2);
    }
}

TEST_CASE("pack_groups_ff") {
    SUBCASE("k items of size >= eps^2 need at most k bins") {
        int next_id = 0;
        auto bins = pack_groups_ff({testutil::items({"0.3", "0.4", "0.5"})}, next_id);
        CHECK(bins.size() <= 3);
    }
    SUBCASE("overflow bins fill to at least 1 - eps^2 except the last") {
        std::mt19937_64 rng(103);
        const Rational eps2 = r("1/4");
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<Item>> groups(2);
            int id = 0;
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < 10 + static_cast<int>(rng() % 10); ++i)
                    groups[static_cast<std::size_t>(c)].push_back(
                        {id++, Rational(1 + static_cast<std::int64_t>(rng() % 15), 64), c + 1});
            int next_id = 0;
            auto bins = pack_groups_ff(groups, next_id);
            // first fit: all but the final bin resist every later item, and
            // items here are below eps^2
            for (std::size_t b = 0; b + 1 < bins.size(); ++b)
                CHECK(bins[b].content_size() >= Rational(1) - eps2);
        }
    }
    SUBCASE("empty input gives no bins") {
        int next_id = 0;
        CHECK(pack_groups_ff({}, next_id).empty());
    }
}

TEST_CASE("aptas end to end") {
    Params params{r("1/2"), Rational(2), {}, false};
    SUBCASE("tiny instances stay within 3 bins of opt_beta") {
        std::mt19937_64 rng(107);
        int tested = 0;
        for (int trial = 0; tested < 10 && trial < 50; ++trial) {
            auto generated = instances::gen_random(2 + static_cast<int>(rng() % 5),
                                                   1 + static_cast<int>(rng() % 2),
                                                   instances::SizeLaw::uniform(r("1/16"), r("1")),
                                                   rng(), 32);
            const auto& inst = generated.instance;
            auto opt_beta = oracle::exact_opt_beta(inst, params.beta, 8);
            REQUIRE(opt_beta.feasible);
            std::vector<std::int64_t> opts;
            for (int c = 1; c <= inst.colour_count; ++c) {
                auto colour_items = inst.of_colour(c);
                opts.push_back(colour_items.empty() ? 0 : oracle::exact_opt(colour_items));
            }
            auto packing = aptas::pack(inst, params, opts);
            CHECK(validate_packing(packing, inst).ok());
            CHECK(packing.total_bins() <= opt_beta.bins + 3);
            ++tested;
        }
    }
    SUBCASE("monochrome with huge beta is near optimal") {
        auto inst = testutil::instance({"0.5", "0.4", "0.3", "0.3", "0.5"});
        Params loose{r("1/2"), Rational(50), {}, false};
        auto packing = aptas::pack(inst, loose, {oracle::exact_opt(inst.items)});
        CHECK(validate_packing(packing, inst).ok());
        CHECK(packing.total_bins() <= oracle::exact_opt(inst.items) + 3);
    }
    SUBCASE("no candidate under lower-bound optima raises") {
        auto inst = testutil::instance({"0.6", "0.6", "0.6"});
        Params tight{r("1/2"), Rational(1), {}, false};
        CHECK_THROWS_AS(aptas::pack(inst, tight, {weight_lower_bound(inst.items)}),
                        PreconditionError);
    }
    SUBCASE("budget exhaustion raises") {
        auto inst = testutil::instance({"0.5", "0.4", "0.3", "0.3", "0.5"});
        Params starved{r("1/2"), Rational(2), {}, false};
        starved.budgets.max_search_nodes = 1;
        CHECK_THROWS_AS(aptas::pack(inst, starved, {oracle::exact_opt(inst.items)}),
                        BudgetExceededError);
    }
    SUBCASE("the rescale flag tightens eps") {
        auto inst = testutil::instance({"0.5", "0.4", "0.6"}, {1, 2, 1}, 2);
        Params rescaled{r("1/2"), Rational(2), {}, true};
        std::vector<std::int64_t> opts{1, 1};
        auto packing = aptas::pack(inst, rescaled, opts); // eps becomes 1/4
        CHECK(validate_packing(packing, inst).ok());
    }
}
