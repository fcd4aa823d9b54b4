#include "cbp/classic.hpp"

#include <algorithm>

namespace cbp::classic {

namespace {

void require_packable(const Item& item) {
    if (item.size > Rational(1))
        throw PreconditionError("item " + std::to_string(item.id) + " has size " +
                                item.size.str() + " > 1");
    if (item.size <= Rational(0))
        throw PreconditionError("item " + std::to_string(item.id) + " has nonpositive size");
}

} // namespace

BoundedState::BoundedState(int k, std::vector<Bin> initial_open) : k(k), open(std::move(initial_open)) {
    if (k < 1) throw PreconditionError("bounded best fit: k must be >= 1");
    if (static_cast<int>(open.size()) > k)
        throw PreconditionError("bounded best fit: more pre-opened bins than k");
    for (auto& bin : open) {
        if (bin.content_size() > Rational(1))
            throw PreconditionError("bounded best fit: pre-opened bin overfull");
        bin.open = true;
    }
}

int BoundedState::place(const Item& item, int& next_id) {
    require_packable(item);
    // fullest open bin with room, lowest id on ties
    int pick = -1;
    for (int i = 0; i < static_cast<int>(open.size()); ++i) {
        if (open[i].free_space() < item.size) continue;
        if (pick == -1 || open[i].content_size() > open[pick].content_size() ||
            (open[i].content_size() == open[pick].content_size() && open[i].id < open[pick].id))
            pick = i;
    }
    if (pick >= 0) {
        open[pick].add(item);
        return open[pick].id;
    }
    if (static_cast<int>(open.size()) == k) {
        int fullest = 0;
        for (int i = 1; i < static_cast<int>(open.size()); ++i)
            if (open[i].content_size() > open[fullest].content_size() ||
                (open[i].content_size() == open[fullest].content_size() &&
                 open[i].id < open[fullest].id))
                fullest = i;
        open[fullest].open = false;
        closed.push_back(std::move(open[fullest]));
        open.erase(open.begin() + fullest);
    }
    Bin bin;
    bin.id = next_id++;
    bin.add(item);
    open.push_back(std::move(bin));
    return open.back().id;
}

std::vector<Bin> BoundedState::all_bins() const {
    std::vector<Bin> bins = closed;
    bins.insert(bins.end(), open.begin(), open.end());
    std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.id < b.id; });
    return bins;
}

Packing next_fit(std::span<const Item> items) {
    Packing packing;
    packing.algorithm = "nf";
    for (const auto& item : items) {
        require_packable(item);
        if (packing.bins.empty() || packing.bins.back().free_space() < item.size) {
            if (!packing.bins.empty()) packing.bins.back().open = false;
            Bin bin;
            bin.id = packing.total_bins();
            packing.bins.push_back(std::move(bin));
        }
        packing.bins.back().add(item);
    }
    return packing;
}

void first_fit_into(Packing& packing, std::span<const Item> items, const BinPredicate& eligible) {
    int next_id = 0;
    for (const auto& bin : packing.bins) next_id = std::max(next_id, bin.id + 1);
    for (const auto& item : items) {
        require_packable(item);
        bool placed = false;
        for (auto& bin : packing.bins) {
            if (eligible && !eligible(bin)) continue;
            if (bin.free_space() < item.size) continue;
            bin.add(item);
            placed = true;
            break;
        }
        if (!placed) {
            Bin bin;
            bin.id = next_id++;
            bin.add(item);
            packing.bins.push_back(std::move(bin));
        }
    }
}

Packing first_fit(std::span<const Item> items, const BinPredicate& eligible) {
    Packing packing;
    packing.algorithm = "ff";
    first_fit_into(packing, items, eligible);
    return packing;
}

Packing first_fit_decreasing(std::span<const Item> items) {
    std::vector<Item> sorted(items.begin(), items.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Item& a, const Item& b) { return a.size > b.size; });
    Packing packing = first_fit(sorted);
    packing.algorithm = "ffd";
    return packing;
}

Packing bounded_best_fit(std::span<const Item> items, int k, std::vector<Bin> initial_open) {
    int next_id = 0;
    for (const auto& bin : initial_open) next_id = std::max(next_id, bin.id + 1);
    BoundedState state(k, std::move(initial_open));
    for (const auto& item : items) state.place(item, next_id);
    Packing packing;
    packing.bins = state.all_bins();
    packing.algorithm = k == BoundedState::kUnbounded ? "bf" : "bbf";
    if (k != BoundedState::kUnbounded) packing.params = "k=" + std::to_string(k);
    return packing;
}

Packing best_fit(std::span<const Item> items) {
    return bounded_best_fit(items, BoundedState::kUnbounded);
}

} // namespace cbp::classic
