#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cbp/model.hpp"
#include "cbp/offline.hpp"

namespace cbp::aptas {

struct Budgets {
    std::uint64_t max_configurations = 200'000;
    std::uint64_t max_search_nodes = 20'000'000;
    std::uint64_t max_candidates = 200'000;
};

struct Params {
    Rational eps;
    Rational beta;
    Budgets budgets;
    bool rescale_eps_by_m = false; // run with eps/m instead of eps
};

/// (large, small) split at eps^2; items of size exactly eps^2 are large.
std::pair<std::vector<Item>, std::vector<Item>> split_small_large(const Instance& instance,
                                                                  const Rational& eps);

struct ColourGrouping {
    int colour = 0;
    std::vector<offline::RoundedGroup> groups; // rounded down, nonincreasing sizes
};

struct Grouping {
    std::vector<ColourGrouping> per_colour;
    std::vector<Item> q_items; // largest group of every colour, packed separately
};

/// Per colour: sort decreasing, cut into groups of ceil(n_c * eps^3) items
/// (so at most ceil(1/eps^3) groups, sizes nonincreasing), round every group
/// down to its smallest size. The first group of each colour goes to Q.
Grouping group_round_down(std::span<const Item> large_items, const Rational& eps,
                          int colour_count);

/// One rounded size class: `demand` slots of size rounded_size, to be filled
/// by `receivers` (the original items of the next group, all <= the size).
struct SizeClass {
    int colour = 0;
    Rational rounded_size;
    int demand = 0;
    std::vector<Item> receivers;
};

std::vector<SizeClass> build_classes(const Grouping& grouping);

struct LabelledConfiguration {
    std::vector<int> counts;        // per size class
    std::uint32_t colour_label = 0; // colours allowed for small items, bit c-1
    Rational slack;                 // 1 - total class size

    bool empty_content() const;
};

/// Every multiset of classes that fits one bin, crossed with every subset of
/// the labellable colours (bit c-1 of labellable_mask). Labels only permit
/// small items, so callers restrict them to colours that have small supply.
/// Throws BudgetExceededError if the output would exceed `ceiling`.
std::vector<LabelledConfiguration> enumerate_configurations(const std::vector<SizeClass>& classes,
                                                            int colour_count,
                                                            std::uint32_t labellable_mask,
                                                            std::uint64_t ceiling);

/// All 2^m labels per content multiset.
std::vector<LabelledConfiguration> enumerate_configurations(const std::vector<SizeClass>& classes,
                                                            int colour_count,
                                                            std::uint64_t ceiling);

struct Candidate {
    std::vector<std::pair<int, int>> config_mults; // (config index, multiplicity)
    int bins = 0;
};

/// Exact covers of the class demand by configurations, filtered to
/// label-aware colour spans <= beta * opt_c (no additive term). Multiplicity
/// of empty-content configurations is capped by max_empty_bins.
std::vector<Candidate> search_packings(const std::vector<LabelledConfiguration>& configs,
                                       const std::vector<SizeClass>& classes, const Rational& beta,
                                       const std::vector<std::int64_t>& per_colour_opt,
                                       int max_bins, int max_empty_bins, const Budgets& budgets);

struct LpsProblem {
    struct BinSide {
        Rational used_size;
        std::uint32_t colour_label = 0;
    };
    std::vector<BinSide> bins;
    std::vector<Rational> supplies; // per colour, index c-1
};

struct LpsSolution {
    Rational placed_total;
    std::vector<std::vector<Rational>> quota; // [bin][colour-1]
};

/// Maximises the total small mass placed, subject to bin capacities and
/// per-colour supplies. Solved as exact rational max-flow (the program is a
/// transportation problem, so the optima coincide).
LpsSolution solve_lps(const LpsProblem& problem);

/// Greedy fill of colour-c smalls into each bin up to its quota; returns the
/// overflow per colour (index c-1). Bins gain items in place.
std::vector<std::vector<Item>> place_small_items(std::vector<Bin>& bins, const LpsSolution& lps,
                                                 std::vector<std::vector<Item>> smalls_by_colour);

/// First fit over the concatenated per-colour groups into fresh bins with
/// ids from next_id upward. Used for Q and for overflowing smalls.
std::vector<Bin> pack_groups_ff(const std::vector<std::vector<Item>>& per_colour, int& next_id);

/// Full pipeline. per_colour_opt (index c-1) feeds the colour-stretch
/// filters: exact oracle values on small instances, weight lower bounds
/// otherwise. Throws BudgetExceededError when a budget runs out and
/// PreconditionError when no candidate meets the stretch filters.
Packing pack(const Instance& instance, const Params& params,
             const std::vector<std::int64_t>& per_colour_opt);

} // namespace cbp::aptas
