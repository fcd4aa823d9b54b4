#pragma once

#include <map>
#include <optional>
#include <span>

#include "cbp/model.hpp"

namespace cbp::oracle {

struct Limits {
    int max_n_dp = 16;         // bitmask DP limit for exact_opt
    int max_n_exhaustive = 10; // partition enumeration limit for opt_beta
};

/// Exact OPT over all packings of the items, by set-partition DP over
/// single-bin subsets. Refuses instances above limit_n instead of
/// approximating.
int exact_opt(std::span<const Item> items, int limit_n = 16);

/// exact_opt restricted to each colour's items.
std::map<int, int> per_colour_opt(const Instance& instance, int limit_n = 16);

struct OptBeta {
    bool feasible = false;
    int bins = 0;
};

/// Smallest bin count over packings where every colour c spans at most
/// beta * OPT(I_c) bins (no additive term, matching the search filter).
/// Exhaustive partition enumeration with pruning.
OptBeta exact_opt_beta(const Instance& instance, const Rational& beta, int limit_n = 10);

/// Minimum span of `colour` over every capacity-feasible packing using at
/// most max_bins bins; nullopt when no such packing exists. Exhaustive.
std::optional<int> min_colour_span(std::span<const Item> items, int max_bins, int colour);

/// Full oracle result for an instance (optionally with an opt_beta value).
OracleResult solve(const Instance& instance, const std::optional<Rational>& beta = std::nullopt,
                   Limits limits = {});

} // namespace cbp::oracle
