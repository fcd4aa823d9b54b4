#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cbp/instances.hpp"
#include "cbp/online.hpp"
#include "testutil.hpp"

using namespace cbp;
using namespace cbp::online;
using testutil::r;

TEST_CASE("online eps discipline") {
    CHECK_THROWS_AS(LevelScheme(r("1/6"), RegionRule::next_fit), PreconditionError);
    CHECK_THROWS_AS(LevelScheme(r("1/3"), RegionRule::next_fit), PreconditionError);
    CHECK_THROWS_AS(LevelScheme(r("3/8"), RegionRule::next_fit), PreconditionError);
    CHECK_THROWS_AS(LevelScheme(r("1"), RegionRule::next_fit), PreconditionError);
    CHECK_THROWS_AS(ThresholdScheme(r("1/6")), PreconditionError);
    CHECK(LevelScheme(r("1/2"), RegionRule::next_fit).level_count() == 1);
    CHECK(LevelScheme(r("1/1024"), RegionRule::next_fit).level_count() == 10);
}

TEST_CASE("mnf region walk") {
    LevelScheme scheme(r("1/8"), RegionRule::next_fit); // j = 3
    SUBCASE("first item of a colour opens a level-1 region when it fits") {
        auto event = scheme.pack({0, r("0.2"), 1});
        CHECK(event.level == 1);
        CHECK(event.region == 0);
        CHECK(!event.isolated);

        // 0.1 no longer fits next to 0.2 in the 1/4 region; a level-2
        // region (capacity 1/2) opens
        auto follow_up = scheme.pack({1, r("0.1"), 1});
        CHECK(follow_up.level == 2);
    }
    SUBCASE("items below eps are rejected") {
        CHECK_THROWS_AS(scheme.pack({0, r("1/16"), 1}), PreconditionError);
        CHECK_THROWS_AS(scheme.pack({0, r("9/8"), 1}), PreconditionError);
    }
}

TEST_CASE("mff revisits lower regions, mnf does not") {
    auto feed = [](LevelScheme& scheme) {
        scheme.pack({0, r("1/8"), 1}); // level 1, region 1/4 holds 1/8
        scheme.pack({1, r("0.2"), 1}); // does not fit -> level 2
        return scheme.pack({2, r("1/8"), 1});
    };
    LevelScheme mff(r("1/8"), RegionRule::first_fit);
    CHECK(feed(mff).level == 1); // lands back in the level-1 region
    LevelScheme mnf(r("1/8"), RegionRule::next_fit);
    CHECK(feed(mnf).level == 2); // only the current region is tried
}

TEST_CASE("level scheme isolation") {
    SUBCASE("a big first item sends the colour straight to isolation") {
        LevelScheme scheme(r("1/8"), RegionRule::next_fit);
        auto event = scheme.pack({0, r("0.9"), 1});
        CHECK(event.isolated);
        CHECK(event.level == 3);
        CHECK(scheme.colour_isolated(1));
    }
    SUBCASE("unit items: one per bin through bounded best fit") {
        LevelScheme scheme(r("1/8"), RegionRule::next_fit);
        for (int i = 0; i < 5; ++i) {
            auto event = scheme.pack({i, r("1"), 1});
            CHECK(event.isolated);
            CHECK(event.bin_id == i);
        }
        auto packing = scheme.snapshot();
        CHECK(packing.total_bins() == 5);
        CHECK(scheme.open_isolated_bins(1) <= 2);
    }
}

TEST_CASE("level scheme structural invariants") {
    std::mt19937_64 rng(79);
    const Rational eps = r("1/8");
    for (int trial = 0; trial < 20; ++trial) {
        LevelScheme scheme(eps, RegionRule::next_fit);
        const int m = 1 + static_cast<int>(rng() % 5);
        const int n = 20 + static_cast<int>(rng() % 40);
        Instance inst;
        inst.colour_count = m;
        for (int i = 0; i < n; ++i) {
            Item item{i, Rational(8 + static_cast<std::int64_t>(rng() % 57), 64),
                      1 + static_cast<int>(rng() % m)};
            inst.items.push_back(item);
            scheme.pack(item);
        }
        auto packing = scheme.snapshot();
        CHECK(validate_packing(packing, inst).ok());

        // each colour holds at most one region per level, hence spans at
        // most j non-isolated bins
        std::map<std::pair<int, int>, std::set<int>> colour_level_bins;
        int partially_claimed = 0;
        for (const auto& bin : packing.bins) {
            if (bin.kind != BinKind::level) continue;
            bool unclaimed = false;
            for (const auto& region : bin.regions) {
                if (!region.colour.has_value()) {
                    unclaimed = true;
                    continue;
                }
                colour_level_bins[{*region.colour, bin.level}].insert(bin.id);
            }
            if (unclaimed) ++partially_claimed;
        }
        for (const auto& [key, bins] : colour_level_bins) CHECK(bins.size() == 1);
        CHECK(partially_claimed <= scheme.level_count());
        CHECK(scheme.open_non_isolated_bins() <= scheme.level_count());
        for (int c = 1; c <= m; ++c) {
            CHECK(scheme.open_isolated_bins(c) <= 2);
            int non_isolated_span = 0;
            for (const auto& bin : packing.bins) {
                if (bin.kind != BinKind::level) continue;
                for (const auto& item : bin.contents)
                    if (item.colour == c) {
                        ++non_isolated_span;
                        break;
                    }
            }
            CHECK(non_isolated_span <= scheme.level_count());
        }

        // the fill lemma, exact
        auto stats = full_level_bin_fill(packing);
        CHECK(stats.total_fill * Rational(3) >= Rational(stats.bins));
    }
}

TEST_CASE("level scheme determinism") {
    std::mt19937_64 rng(83);
    std::vector<Item> stream;
    for (int i = 0; i < 60; ++i)
        stream.push_back({i, Rational(16 + static_cast<std::int64_t>(rng() % 49), 64),
                          1 + static_cast<int>(rng() % 4)});
    LevelScheme a(r("1/16"), RegionRule::first_fit);
    LevelScheme b(r("1/16"), RegionRule::first_fit);
    for (const auto& item : stream) {
        auto ea = a.pack(item);
        auto eb = b.pack(item);
        CHECK(ea.bin_id == eb.bin_id);
        CHECK(ea.level == eb.level);
        CHECK(ea.region == eb.region);
        CHECK(ea.isolated == eb.isolated);
    }
    a.reset();
    CHECK(a.snapshot().total_bins() == 0);
}

TEST_CASE("threshold scheme") {
    SUBCASE("guard reads the weight before adding the item") {
        ThresholdScheme scheme(r("1/4")); // g = 4
        for (int i = 0; i < 4; ++i) {
            auto event = scheme.pack({i, r("0.975"), 1});
            CHECK(!event.isolated);
        }
        CHECK(scheme.colour_weight(1) == r("3.9"));
        auto boundary = scheme.pack({4, r("0.5"), 1}); // 3.9 <= 4: still shared
        CHECK(!boundary.isolated);
        CHECK(scheme.colour_weight(1) == r("4.4"));
        auto next = scheme.pack({5, r("0.5"), 1});
        CHECK(next.isolated);
        CHECK(scheme.colour_isolated(1));
        // isolated packing does not advance w(c)
        CHECK(scheme.colour_weight(1) == r("4.4"));
    }
    SUBCASE("single item") {
        ThresholdScheme scheme(r("1/4"));
        auto event = scheme.pack({0, r("0.6"), 2});
        CHECK(!event.isolated);
        CHECK(scheme.snapshot().total_bins() == 1);
    }
    SUBCASE("items below eps are rejected") {
        ThresholdScheme scheme(r("1/4"));
        CHECK_THROWS_AS(scheme.pack({0, r("1/8"), 1}), PreconditionError);
    }
    SUBCASE("isolated bins per colour stay near 1.7 opt") {
        std::mt19937_64 rng(89);
        const Rational eps = r("1/4");
        for (int trial = 0; trial < 10; ++trial) {
            ThresholdScheme scheme(eps);
            const int m = 1 + static_cast<int>(rng() % 3);
            Instance inst;
            inst.colour_count = m;
            for (int i = 0; i < 50; ++i) {
                Item item{i, Rational(16 + static_cast<std::int64_t>(rng() % 49), 64),
                          1 + static_cast<int>(rng() % m)};
                inst.items.push_back(item);
                scheme.pack(item);
            }
            auto packing = scheme.snapshot();
            CHECK(validate_packing(packing, inst).ok());
            for (int c = 1; c <= m; ++c) {
                int isolated_bins = 0;
                for (const auto& bin : packing.bins)
                    if (bin.kind == BinKind::isolated && !bin.contents.empty() &&
                        bin.contents[0].colour == c)
                        ++isolated_bins;
                // weight lower bound stands in for opt here
                Rational opt(weight_lower_bound(inst.of_colour(c)));
                Rational slack = (Rational(1) / eps) / eps; // g / eps
                CHECK(Rational(isolated_bins) <= Rational(17, 10) * opt + slack);
            }
        }
    }
}

TEST_CASE("online factory") {
    OnlineParams params;
    params.eps = r("1/8");
    for (const char* name : {"nf", "ff", "bf", "bbf", "mnf", "mff", "level17", "threshold"}) {
        auto algorithm = make_online(name, params);
        REQUIRE(algorithm != nullptr);
        CHECK(algorithm->name() == name);
        algorithm->pack({0, r("0.5"), 1});
        CHECK(algorithm->snapshot().total_bins() == 1);
    }
    CHECK_THROWS_AS(make_online("nope", params), PreconditionError);
    CHECK_THROWS_AS(make_online("mnf", OnlineParams{}), PreconditionError);
}

TEST_CASE("classic online adapters match expectations") {
    FirstFitOnline ff;
    ff.pack({0, r("0.6"), 1});
    ff.pack({1, r("0.5"), 1});
    ff.pack({2, r("0.4"), 1});
    CHECK(ff.snapshot().total_bins() == 2);

    NextFitOnline nf;
    nf.pack({0, r("0.6"), 1});
    nf.pack({1, r("0.5"), 1});
    nf.pack({2, r("0.4"), 1});
    CHECK(nf.snapshot().total_bins() == 2);
    CHECK(nf.snapshot().bins[0].contents.size() == 1);

    BoundedBestFitOnline bbf(2, "bbf");
    for (const auto& item : testutil::items({"0.5", "0.6", "0.5", "0.4"})) bbf.pack(item);
    CHECK(bbf.snapshot().total_bins() == 2);
}
