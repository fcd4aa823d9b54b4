#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cbp/model.hpp"

namespace cbp::classic {

using BinPredicate = std::function<bool(const Bin&)>;

/// Bounded Best-Fit state machine: at most k bins stay open, closed bins are
/// never reopened. An item goes to the fullest open bin with room (ties to
/// the lowest id). If nothing fits, a bin is opened; when that would exceed
/// k, the fullest open bin is closed first.
struct BoundedState {
    static constexpr int kUnbounded = std::numeric_limits<int>::max();

    explicit BoundedState(int k, std::vector<Bin> initial_open = {});

    /// Packs one item; next_id supplies (and advances) the id for a freshly
    /// opened bin. Returns the id of the bin that received the item.
    int place(const Item& item, int& next_id);

    int open_count() const { return static_cast<int>(open.size()); }

    /// All bins, closed and open, in id order.
    std::vector<Bin> all_bins() const;

    int k;
    std::vector<Bin> open;
    std::vector<Bin> closed;
};

Packing next_fit(std::span<const Item> items);

/// First fit over existing bins that satisfy `eligible` (default: every bin)
/// and have room; opens a new bin otherwise. The predicate hook carries the
/// "bins with more than 2*eps free space" rule used by the small-item pass.
Packing first_fit(std::span<const Item> items, const BinPredicate& eligible = nullptr);

/// Continues first fit on top of an existing packing. New bins get ids from
/// the current maximum upward.
void first_fit_into(Packing& packing, std::span<const Item> items,
                    const BinPredicate& eligible = nullptr);

Packing first_fit_decreasing(std::span<const Item> items);

Packing best_fit(std::span<const Item> items);

/// Bounded Best-Fit over the items in order, optionally starting from
/// pre-opened bins (at most k, counted against the open-bin budget).
Packing bounded_best_fit(std::span<const Item> items, int k,
                         std::vector<Bin> initial_open = {});

} // namespace cbp::classic
