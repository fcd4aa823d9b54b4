#include "cbp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace cbp::oracle {

namespace {

// Common-denominator view: size_i = nums[i] / unit. Sums of up to ~60 items
// stay exact in __int128.
struct NormSizes {
    std::vector<std::int64_t> nums;
    std::int64_t unit = 1;
};

NormSizes normalize(std::span<const Item> items) {
    NormSizes out;
    __int128 l = 1;
    for (const auto& item : items) {
        std::int64_t d = item.size.den();
        std::int64_t g = std::gcd(static_cast<std::int64_t>(l % d), d); // == gcd(l, d)
        l = l / g * static_cast<__int128>(d);
        if (l > std::numeric_limits<std::int64_t>::max())
            throw RationalOverflow("oracle: common denominator exceeds 64 bits");
    }
    out.unit = static_cast<std::int64_t>(l);
    out.nums.reserve(items.size());
    for (const auto& item : items)
        out.nums.push_back(item.size.num() * (out.unit / item.size.den()));
    return out;
}

} // namespace

int exact_opt(std::span<const Item> items, int limit_n) {
    const int n = static_cast<int>(items.size());
    if (n == 0) return 0;
    if (n > limit_n)
        throw PreconditionError("exact_opt: " + std::to_string(n) + " items exceed the limit " +
                                std::to_string(limit_n) + "; use the weight lower bound instead");
    for (const auto& item : items)
        if (item.size > Rational(1) || item.size <= Rational(0))
            throw PreconditionError("exact_opt: item size outside (0,1]");

    NormSizes norm = normalize(items);
    const std::size_t full = std::size_t{1} << n;

    // subset weights, then feasibility
    std::vector<__int128> weight(full, 0);
    std::vector<char> fits(full, 0);
    fits[0] = 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        int low = std::countr_zero(mask);
        weight[mask] = weight[mask ^ (std::size_t{1} << low)] + norm.nums[low];
        fits[mask] = weight[mask] <= norm.unit;
    }

    std::vector<std::uint8_t> dp(full, 255);
    dp[0] = 0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        std::size_t low = mask & (~mask + 1);
        std::uint8_t best = 255;
        // submasks of mask that contain the lowest set bit
        std::size_t rest = mask ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            std::size_t part = sub | low;
            if (fits[part]) {
                std::uint8_t cand = dp[mask ^ part];
                if (cand != 255 && cand + 1 < best) best = static_cast<std::uint8_t>(cand + 1);
            }
            if (sub == 0) break;
        }
        dp[mask] = best;
    }
    return dp[full - 1];
}

std::map<int, int> per_colour_opt(const Instance& instance, int limit_n) {
    std::map<int, int> out;
    for (int c = 1; c <= instance.colour_count; ++c) {
        auto items = instance.of_colour(c);
        if (items.empty()) continue;
        out[c] = exact_opt(items, limit_n);
    }
    return out;
}

namespace {

// Exhaustive item-to-bin assignment in canonical order (a new bin may only
// be the first empty one). Capacity pruning via normalized sizes.
struct PartitionSearch {
    std::span<const Item> items;
    NormSizes norm;
    int max_bins;
    std::vector<__int128> load;
    std::vector<std::uint32_t> bin_colours; // bitmask of colours per bin (colours <= 31)

    // exact_opt_beta state
    std::vector<int> span;      // per colour index c-1
    std::vector<int> span_cap;  // limit per colour, or INT_MAX
    int best = std::numeric_limits<int>::max();

    // min_colour_span state
    int target_colour = 0;
    int best_span = std::numeric_limits<int>::max();

    void run_opt_beta(std::size_t idx, int used_bins) {
        if (used_bins >= best) return;
        if (idx == items.size()) {
            best = used_bins;
            return;
        }
        const Item& item = items[idx];
        const std::int64_t sz = norm.nums[idx];
        const std::uint32_t cbit = std::uint32_t{1} << (item.colour - 1);
        for (int b = 0; b < std::min(used_bins + 1, max_bins); ++b) {
            if (load[b] + sz > norm.unit) continue;
            bool new_span = !(bin_colours[b] & cbit);
            if (new_span && span[item.colour - 1] + 1 > span_cap[item.colour - 1]) continue;
            load[b] += sz;
            std::uint32_t old = bin_colours[b];
            bin_colours[b] |= cbit;
            if (new_span) ++span[item.colour - 1];
            run_opt_beta(idx + 1, std::max(used_bins, b + 1));
            if (new_span) --span[item.colour - 1];
            bin_colours[b] = old;
            load[b] -= sz;
            if (load[b] == 0) break; // later empty bins are symmetric
        }
    }

    void run_min_span(std::size_t idx, int used_bins) {
        if (span[target_colour - 1] >= best_span) return;
        if (idx == items.size()) {
            best_span = span[target_colour - 1];
            return;
        }
        const Item& item = items[idx];
        const std::int64_t sz = norm.nums[idx];
        const std::uint32_t cbit = std::uint32_t{1} << (item.colour - 1);
        for (int b = 0; b < std::min(used_bins + 1, max_bins); ++b) {
            if (load[b] + sz > norm.unit) continue;
            bool new_span = !(bin_colours[b] & cbit);
            load[b] += sz;
            std::uint32_t old = bin_colours[b];
            bin_colours[b] |= cbit;
            if (new_span) ++span[item.colour - 1];
            run_min_span(idx + 1, std::max(used_bins, b + 1));
            if (new_span) --span[item.colour - 1];
            bin_colours[b] = old;
            load[b] -= sz;
            if (load[b] == 0) break;
        }
    }
};

} // namespace

OptBeta exact_opt_beta(const Instance& instance, const Rational& beta, int limit_n) {
    const int n = static_cast<int>(instance.items.size());
    if (n == 0) return {true, 0};
    if (n > limit_n)
        throw PreconditionError("exact_opt_beta: " + std::to_string(n) + " items exceed the limit " +
                                std::to_string(limit_n));
    if (instance.colour_count > 31)
        throw PreconditionError("exact_opt_beta: more than 31 colours unsupported");
    if (beta < Rational(1)) throw PreconditionError("exact_opt_beta: beta must be >= 1");

    auto opt_c = per_colour_opt(instance, std::max(limit_n, 16));

    PartitionSearch search;
    // items sorted by decreasing size prune much earlier
    std::vector<Item> sorted(instance.items.begin(), instance.items.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Item& a, const Item& b) { return a.size > b.size; });
    search.items = sorted;
    search.norm = normalize(search.items);
    // no packing ever needs more bins than items
    search.max_bins = n;
    search.load.assign(static_cast<std::size_t>(search.max_bins), 0);
    search.bin_colours.assign(static_cast<std::size_t>(search.max_bins), 0);
    search.span.assign(static_cast<std::size_t>(instance.colour_count), 0);
    search.span_cap.assign(static_cast<std::size_t>(instance.colour_count),
                           std::numeric_limits<int>::max());
    for (auto& [c, opt] : opt_c)
        search.span_cap[static_cast<std::size_t>(c - 1)] = (beta * Rational(opt)).floor();

    search.run_opt_beta(0, 0);
    if (search.best == std::numeric_limits<int>::max()) return {false, 0};
    return {true, search.best};
}

std::optional<int> min_colour_span(std::span<const Item> items, int max_bins, int colour) {
    if (items.empty()) return 0;
    int colour_max = 0;
    for (const auto& item : items) colour_max = std::max(colour_max, item.colour);
    if (colour < 1 || colour > colour_max)
        throw PreconditionError("min_colour_span: unknown colour");
    if (colour_max > 31) throw PreconditionError("min_colour_span: more than 31 colours");

    PartitionSearch search;
    std::vector<Item> sorted(items.begin(), items.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Item& a, const Item& b) { return a.size > b.size; });
    search.items = sorted;
    search.norm = normalize(search.items);
    search.max_bins = max_bins;
    search.load.assign(static_cast<std::size_t>(max_bins), 0);
    search.bin_colours.assign(static_cast<std::size_t>(max_bins), 0);
    search.span.assign(static_cast<std::size_t>(colour_max), 0);
    search.target_colour = colour;

    search.run_min_span(0, 0);
    if (search.best_span == std::numeric_limits<int>::max()) return std::nullopt;
    return search.best_span;
}

OracleResult solve(const Instance& instance, const std::optional<Rational>& beta, Limits limits) {
    OracleResult result;
    result.opt_bins = exact_opt(instance.items, limits.max_n_dp);
    result.per_colour_opt = per_colour_opt(instance, limits.max_n_dp);
    result.method = OracleMethod::dp_bitmask;
    result.instance_digest = instance_digest(instance);
    if (beta) {
        auto ob = exact_opt_beta(instance, *beta, limits.max_n_exhaustive);
        result.opt_beta = {*beta, ob.feasible ? ob.bins : -1};
        result.method = OracleMethod::exhaustive_partition;
    }
    return result;
}

} // namespace cbp::oracle
