#include "cbp/offline.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "cbp/classic.hpp"

namespace cbp::offline {

void check_eps(const Rational& eps) {
    if (eps <= Rational(0) || eps > Rational(1, 2))
        throw PreconditionError("eps must lie in (0, 1/2], got " + eps.str());
    if (!eps.is_unit_fraction())
        throw PreconditionError("eps must be 1/x for an integer x, got " + eps.str());
}

std::vector<RoundedGroup> group_round_up(std::vector<Item> items, const Rational& eps) {
    std::vector<RoundedGroup> groups;
    if (items.empty()) return groups;
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.size != b.size) return a.size < b.size;
        return a.id < b.id;
    });
    const std::int64_t n = static_cast<std::int64_t>(items.size());
    const std::int64_t group_size = std::max<std::int64_t>(1, (Rational(n) * eps * eps).ceil());
    for (std::int64_t start = 0; start < n; start += group_size) {
        RoundedGroup group;
        group.direction = RoundedGroup::Direction::up;
        std::int64_t end = std::min(n, start + group_size);
        group.items.assign(items.begin() + start, items.begin() + end);
        group.rounded_size = group.items.back().size; // largest: sorted increasing
        groups.push_back(std::move(group));
    }
    return groups;
}

namespace {

struct NormClasses {
    std::vector<std::int64_t> weight;
    std::int64_t unit = 1;
};

NormClasses normalize_classes(const std::vector<Rational>& sizes) {
    NormClasses out;
    __int128 l = 1;
    for (const auto& s : sizes) {
        std::int64_t d = s.den();
        std::int64_t g = std::gcd(static_cast<std::int64_t>(l % d), d);
        l = l / g * static_cast<__int128>(d);
        if (l > std::numeric_limits<std::int64_t>::max())
            throw RationalOverflow("solve_min_bins: common denominator exceeds 64 bits");
    }
    out.unit = static_cast<std::int64_t>(l);
    for (const auto& s : sizes) out.weight.push_back(s.num() * (out.unit / s.den()));
    return out;
}

struct MinBinsSolver {
    MinBinsSolver(const NormClasses& norm, std::vector<int> demand, std::uint64_t max_nodes)
        : norm(norm), demand(std::move(demand)), max_nodes(max_nodes) {}

    const NormClasses& norm;
    std::vector<int> demand;
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;

    int best_bins = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> best_solution;
    std::vector<std::vector<int>> current;
    __int128 remaining_weight = 0;

    int weight_lb() const {
        return static_cast<int>((remaining_weight + norm.unit - 1) / norm.unit);
    }

    void tick() {
        if (++nodes > max_nodes)
            throw BudgetExceededError("solve_min_bins: node budget exhausted",
                                      best_bins == std::numeric_limits<int>::max()
                                          ? 0
                                          : static_cast<std::uint64_t>(best_bins));
    }

    bool all_packed() const {
        return std::all_of(demand.begin(), demand.end(), [](int d) { return d == 0; });
    }

    void search(int bins_used) {
        tick();
        if (all_packed()) {
            if (bins_used < best_bins) {
                best_bins = bins_used;
                best_solution = current;
            }
            return;
        }
        if (bins_used + weight_lb() >= best_bins) return;
        int c0 = 0;
        while (demand[static_cast<std::size_t>(c0)] == 0) ++c0;
        std::vector<int> counts(demand.size(), 0);
        extend(c0, c0, norm.unit, counts, bins_used, false);
    }

    // Builds one bin that contains at least one item of class c0, choosing
    // counts class by class; only maximal bins are kept (moving an item into
    // the bin never hurts a minimum-bin solution).
    void extend(int c0, int cls, std::int64_t residual, std::vector<int>& counts, int bins_used,
                bool has_c0) {
        tick();
        if (cls == static_cast<int>(demand.size())) {
            if (!has_c0) return;
            for (std::size_t i = 0; i < demand.size(); ++i)
                if (demand[i] > 0 && norm.weight[i] <= residual) return; // not maximal
            current.push_back(counts);
            search(bins_used + 1);
            current.pop_back();
            return;
        }
        const std::int64_t w = norm.weight[static_cast<std::size_t>(cls)];
        int fit = w > 0 ? static_cast<int>(residual / w) : demand[static_cast<std::size_t>(cls)];
        int max_count = std::min(demand[static_cast<std::size_t>(cls)], fit);
        for (int take = max_count; take >= 0; --take) {
            counts[static_cast<std::size_t>(cls)] = take;
            demand[static_cast<std::size_t>(cls)] -= take;
            remaining_weight -= static_cast<__int128>(take) * w;
            extend(c0, cls + 1, residual - static_cast<std::int64_t>(take) * w, counts, bins_used,
                   has_c0 || (cls == c0 && take > 0));
            remaining_weight += static_cast<__int128>(take) * w;
            demand[static_cast<std::size_t>(cls)] += take;
            if (cls == c0 && take == 1) break; // bin must contain class c0
        }
        counts[static_cast<std::size_t>(cls)] = 0;
    }
};

std::vector<std::vector<int>> ffd_classes(const NormClasses& norm, const std::vector<int>& demand) {
    std::vector<int> order(demand.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return norm.weight[static_cast<std::size_t>(a)] > norm.weight[static_cast<std::size_t>(b)];
    });
    std::vector<std::vector<int>> bins;
    std::vector<std::int64_t> load;
    for (int cls : order) {
        for (int i = 0; i < demand[static_cast<std::size_t>(cls)]; ++i) {
            const std::int64_t w = norm.weight[static_cast<std::size_t>(cls)];
            bool placed = false;
            for (std::size_t b = 0; b < bins.size(); ++b) {
                if (load[b] + w > norm.unit) continue;
                ++bins[b][static_cast<std::size_t>(cls)];
                load[b] += w;
                placed = true;
                break;
            }
            if (!placed) {
                bins.emplace_back(demand.size(), 0);
                ++bins.back()[static_cast<std::size_t>(cls)];
                load.push_back(w);
            }
        }
    }
    return bins;
}

} // namespace

std::vector<std::vector<int>> solve_min_bins(const std::vector<Rational>& class_sizes,
                                             const std::vector<int>& demand,
                                             const SearchBudget& budget) {
    if (class_sizes.size() != demand.size())
        throw PreconditionError("solve_min_bins: class/demand size mismatch");
    for (const auto& s : class_sizes)
        if (s <= Rational(0) || s > Rational(1))
            throw PreconditionError("solve_min_bins: class size outside (0,1]");
    if (std::all_of(demand.begin(), demand.end(), [](int d) { return d == 0; })) return {};

    NormClasses norm = normalize_classes(class_sizes);
    MinBinsSolver solver(norm, demand, budget.max_nodes);
    for (std::size_t i = 0; i < demand.size(); ++i)
        solver.remaining_weight += static_cast<__int128>(demand[i]) * norm.weight[i];

    auto ffd = ffd_classes(norm, demand);
    solver.best_bins = static_cast<int>(ffd.size());
    solver.best_solution = ffd;
    if (solver.best_bins > solver.weight_lb()) solver.search(0);
    return solver.best_solution;
}

Packing vl_large_phase(std::vector<Item> large_items, const Rational& eps,
                       const SearchBudget& budget) {
    check_eps(eps);
    Packing packing;
    packing.algorithm = "vl";
    packing.params = "epsilon=" + eps.str();
    if (large_items.empty()) return packing;
    for (const auto& item : large_items)
        if (item.size < eps)
            throw PreconditionError("vl_large_phase: item " + std::to_string(item.id) +
                                    " smaller than eps");

    auto groups = group_round_up(std::move(large_items), eps);

    // classes keyed by rounded size; originals of merged groups queue up in
    // group order (every original is <= its class size)
    std::map<Rational, std::deque<Item>> class_items;
    for (const auto& group : groups) {
        auto& queue = class_items[group.rounded_size];
        for (const auto& item : group.items) queue.push_back(item);
    }
    std::vector<Rational> sizes;
    std::vector<int> demand;
    for (const auto& [size, queue] : class_items) {
        sizes.push_back(size);
        demand.push_back(static_cast<int>(queue.size()));
    }

    auto bins = solve_min_bins(sizes, demand, budget);
    for (const auto& counts : bins) {
        Bin bin;
        bin.id = packing.total_bins();
        for (std::size_t cls = 0; cls < counts.size(); ++cls) {
            auto& queue = class_items[sizes[cls]];
            for (int i = 0; i < counts[cls]; ++i) {
                bin.add(queue.front());
                queue.pop_front();
            }
        }
        packing.bins.push_back(std::move(bin));
    }
    return packing;
}

Packing vl_pack(std::vector<Item> items, const Rational& eps, const SearchBudget& budget) {
    check_eps(eps);
    std::vector<Item> large, small;
    for (const auto& item : items)
        (item.size >= eps ? large : small).push_back(item);
    Packing packing = vl_large_phase(std::move(large), eps, budget);
    classic::first_fit_into(packing, small);
    return packing;
}

Packing pack_small_by_colour(Packing packing, std::span<const Item> small_items,
                             const Rational& eps, int colour_count) {
    const Rational two_eps = eps + eps;
    for (const auto& item : small_items)
        if (item.size >= eps)
            throw PreconditionError("pack_small_by_colour: item " + std::to_string(item.id) +
                                    " is not small (size " + item.size.str() + " >= eps)");
    int next_id = 0;
    for (const auto& bin : packing.bins) next_id = std::max(next_id, bin.id + 1);

    for (int colour = 1; colour <= colour_count; ++colour) {
        // eligibility is frozen per colour pass; a bin stays a candidate even
        // if its free space later drops below 2*eps
        std::vector<std::size_t> candidates;
        for (std::size_t b = 0; b < packing.bins.size(); ++b)
            if (packing.bins[b].free_space() > two_eps) candidates.push_back(b);

        for (const auto& item : small_items) {
            if (item.colour != colour) continue;
            bool placed = false;
            for (std::size_t b : candidates) {
                if (packing.bins[b].free_space() < item.size) continue;
                packing.bins[b].add(item);
                placed = true;
                break;
            }
            if (!placed) {
                Bin bin;
                bin.id = next_id++;
                bin.add(item);
                packing.bins.push_back(std::move(bin));
                candidates.push_back(packing.bins.size() - 1);
            }
        }
    }
    return packing;
}

Packing one_plus_eps_pack(const Instance& instance, const Rational& eps,
                          const SearchBudget& budget) {
    check_eps(eps);
    std::vector<Item> large, small;
    for (const auto& item : instance.items)
        (item.size >= eps ? large : small).push_back(item);
    Packing packing = vl_large_phase(std::move(large), eps, budget);
    packing = pack_small_by_colour(std::move(packing), small, eps, instance.colour_count);
    packing.algorithm = "vl1eps";
    packing.params = "epsilon=" + eps.str();
    return packing;
}

Packing colour_merge_pack(const Instance& instance, const Rational& eps,
                          const SearchBudget& budget) {
    check_eps(eps);
    std::vector<Item> stream;
    for (int colour = 1; colour <= instance.colour_count; ++colour) {
        auto colour_items = instance.of_colour(colour);
        if (colour_items.empty()) continue;
        Packing per_colour = vl_pack(std::move(colour_items), eps, budget);
        for (const auto& bin : per_colour.bins)
            stream.insert(stream.end(), bin.contents.begin(), bin.contents.end());
    }
    Packing packing = classic::bounded_best_fit(stream, 2);
    packing.algorithm = "off17";
    packing.params = "epsilon=" + eps.str();
    return packing;
}

} // namespace cbp::offline
