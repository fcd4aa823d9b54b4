#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbp/model.hpp"

namespace cbp::offline {

struct SearchBudget {
    std::uint64_t max_nodes = 20'000'000;
};

struct RoundedGroup {
    enum class Direction { up, down };
    std::vector<Item> items;
    Rational rounded_size;
    Direction direction = Direction::up;
};

/// Rejects eps unless 0 < eps <= 1/2 with 1/eps integral (so the group count
/// 1/eps^2 is an integer as well).
void check_eps(const Rational& eps);

/// Sorts by increasing size and cuts into groups of ceil(n*eps^2) items;
/// each group is rounded up to its largest size.
std::vector<RoundedGroup> group_round_up(std::vector<Item> items, const Rational& eps);

/// Exact minimum-bin packing of a multiset of identical-size classes
/// (bin-completion DFS, weight lower bound, FFD upper bound). Returns per-bin
/// class counts. Throws BudgetExceededError when max_nodes runs out.
std::vector<std::vector<int>> solve_min_bins(const std::vector<Rational>& class_sizes,
                                             const std::vector<int>& demand,
                                             const SearchBudget& budget = {});

/// Grouping-and-rounding scheme on items of size >= eps: round up per group,
/// pack the rounded instance optimally, map the original items back. The
/// input must contain large items only.
Packing vl_large_phase(std::vector<Item> large_items, const Rational& eps,
                       const SearchBudget& budget = {});

/// Full VL pass: large items through vl_large_phase, then small items
/// (< eps) first-fit into the remaining free space and fresh bins.
Packing vl_pack(std::vector<Item> items, const Rational& eps, const SearchBudget& budget = {});

/// Small items grouped by colour; each colour first-fits into the bins that
/// had more than 2*eps free space when its pass started, then into fresh
/// bins. Leaves every bin (except at most one per colour) either holding at
/// least eps weight of the colour or none of it.
Packing pack_small_by_colour(Packing packing, std::span<const Item> small_items,
                             const Rational& eps, int colour_count);

/// (1+eps)-bin-stretch scheme: colour-agnostic VL phase on all large items,
/// then the colour-grouped small pass.
Packing one_plus_eps_pack(const Instance& instance, const Rational& eps,
                          const SearchBudget& budget = {});

/// Low-colour-stretch scheme: per-colour VL packings, concatenated in colour
/// order and replayed through bounded best-fit with k=2.
Packing colour_merge_pack(const Instance& instance, const Rational& eps,
                          const SearchBudget& budget = {});

} // namespace cbp::offline
