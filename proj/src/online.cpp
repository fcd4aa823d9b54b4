#include "cbp/online.hpp"

#include <algorithm>
#include <bit>

#include "cbp/classic.hpp"

namespace cbp::online {

namespace {

int levels_from_eps(const Rational& eps) {
    // eps = 1/2^j, j >= 1
    if (eps.num() != 1 || eps.den() < 2 ||
        !std::has_single_bit(static_cast<std::uint64_t>(eps.den())))
        throw PreconditionError("online schemes need eps = 1/2^j for integer j >= 1, got " +
                                eps.str());
    return std::countr_zero(static_cast<std::uint64_t>(eps.den()));
}

void check_item(const Item& item, const Rational& eps) {
    if (item.size > Rational(1))
        throw PreconditionError("item " + std::to_string(item.id) + " has size > 1");
    if (item.size < eps)
        throw PreconditionError("item " + std::to_string(item.id) + " has size " +
                                item.size.str() + " below the minimum size eps = " + eps.str());
}

} // namespace

LevelScheme::LevelScheme(const Rational& eps, RegionRule rule, std::string name)
    : eps_(eps), levels_(levels_from_eps(eps)), rule_(rule), name_(std::move(name)) {
    if (name_.empty()) name_ = rule == RegionRule::next_fit ? "mnf" : "mff";
    open_level_bin_.assign(static_cast<std::size_t>(levels_) + 1, -1);
}

void LevelScheme::reset() {
    bins_.clear();
    colours_.clear();
    open_level_bin_.assign(static_cast<std::size_t>(levels_) + 1, -1);
    next_id_ = 0;
}

Rational LevelScheme::region_capacity(int level) const {
    return Rational(1, std::int64_t{1} << (levels_ - level));
}

PlacementEvent LevelScheme::place_in_region(const Item& item, const RegionRef& ref) {
    Bin& bin = bins_[ref.bin_index];
    Region& region = bin.regions[ref.region_index];
    region.used += item.size;
    region.item_ids.push_back(item.id);
    region.colour = item.colour;
    bin.add(item);
    return {item.id, bin.id, false, bin.level, static_cast<int>(ref.region_index)};
}

PlacementEvent LevelScheme::place_isolated(const Item& item, ColourState& state) {
    // bounded best-fit with k = 2 over the colour's own bins
    std::size_t pick = bins_.size();
    for (std::size_t idx : state.open_isolated) {
        if (bins_[idx].free_space() < item.size) continue;
        if (pick == bins_.size() || bins_[idx].content_size() > bins_[pick].content_size() ||
            (bins_[idx].content_size() == bins_[pick].content_size() &&
             bins_[idx].id < bins_[pick].id))
            pick = idx;
    }
    if (pick != bins_.size()) {
        bins_[pick].add(item);
        return {item.id, bins_[pick].id, true, 0, -1};
    }
    if (state.open_isolated.size() == 2) {
        auto fullest = state.open_isolated.begin();
        for (auto it = state.open_isolated.begin(); it != state.open_isolated.end(); ++it)
            if (bins_[*it].content_size() > bins_[*fullest].content_size() ||
                (bins_[*it].content_size() == bins_[*fullest].content_size() &&
                 bins_[*it].id < bins_[*fullest].id))
                fullest = it;
        bins_[*fullest].open = false;
        state.open_isolated.erase(fullest);
    }
    Bin bin;
    bin.id = next_id_++;
    bin.kind = BinKind::isolated;
    bin.add(item);
    bins_.push_back(std::move(bin));
    state.open_isolated.push_back(bins_.size() - 1);
    return {item.id, bins_.back().id, true, 0, -1};
}

PlacementEvent LevelScheme::pack(const Item& item) {
    check_item(item, eps_);
    ColourState& state = colours_[item.colour];
    if (state.isolated) return place_isolated(item, state);

    if (rule_ == RegionRule::next_fit) {
        if (state.level >= 1) {
            const RegionRef& ref = state.regions.at(state.level);
            const Region& region = bins_[ref.bin_index].regions[ref.region_index];
            if (region.free() >= item.size) return place_in_region(item, ref);
        }
    } else {
        for (const auto& [level, ref] : state.regions) {
            const Region& region = bins_[ref.bin_index].regions[ref.region_index];
            if (region.free() >= item.size) return place_in_region(item, ref);
        }
    }

    // open a region at the lowest usable level above the colour's current one
    int target = 0;
    for (int level = state.level + 1; level <= levels_; ++level) {
        if (region_capacity(level) >= item.size) {
            target = level;
            break;
        }
    }

    if (target == levels_) {
        // a level-j region is the whole bin; the colour moves to isolated
        // bins and this bin seeds its bounded best-fit state
        state.isolated = true;
        state.level = levels_;
        Bin bin;
        bin.id = next_id_++;
        bin.kind = BinKind::isolated;
        bin.add(item);
        bins_.push_back(std::move(bin));
        state.open_isolated = {bins_.size() - 1};
        return {item.id, bins_.back().id, true, levels_, 0};
    }

    int bin_index = open_level_bin_[static_cast<std::size_t>(target)];
    if (bin_index < 0) {
        Bin bin;
        bin.id = next_id_++;
        bin.kind = BinKind::level;
        bin.level = target;
        const Rational cap = region_capacity(target);
        bin.regions.assign(static_cast<std::size_t>(std::int64_t{1} << (levels_ - target)),
                           Region{cap, std::nullopt, Rational(0), {}});
        bins_.push_back(std::move(bin));
        bin_index = static_cast<int>(bins_.size() - 1);
        open_level_bin_[static_cast<std::size_t>(target)] = bin_index;
    }

    Bin& bin = bins_[static_cast<std::size_t>(bin_index)];
    std::size_t region_index = 0;
    while (region_index < bin.regions.size() && bin.regions[region_index].colour.has_value())
        ++region_index;
    RegionRef ref{static_cast<std::size_t>(bin_index), region_index};
    state.regions[target] = ref;
    state.level = target;
    auto event = place_in_region(item, ref);
    if (region_index + 1 == bin.regions.size())
        open_level_bin_[static_cast<std::size_t>(target)] = -1; // all regions claimed
    return event;
}

Packing LevelScheme::snapshot() const {
    Packing packing;
    packing.bins = bins_;
    packing.algorithm = name_;
    packing.params = "epsilon=" + eps_.str();
    return packing;
}

int LevelScheme::open_non_isolated_bins() const {
    int count = 0;
    for (int level = 1; level <= levels_; ++level)
        if (open_level_bin_[static_cast<std::size_t>(level)] >= 0) ++count;
    return count;
}

int LevelScheme::open_isolated_bins(int colour) const {
    auto it = colours_.find(colour);
    return it == colours_.end() ? 0 : static_cast<int>(it->second.open_isolated.size());
}

bool LevelScheme::colour_isolated(int colour) const {
    auto it = colours_.find(colour);
    return it != colours_.end() && it->second.isolated;
}

ThresholdScheme::ThresholdScheme(const Rational& eps) : eps_(eps) {
    levels_from_eps(eps); // same eps discipline as the level scheme
    threshold_ = Rational(1) / eps;
}

void ThresholdScheme::reset() {
    bins_.clear();
    shared_.clear();
    colours_.clear();
    next_id_ = 0;
}

PlacementEvent ThresholdScheme::pack(const Item& item) {
    check_item(item, eps_);
    ColourState& state = colours_[item.colour];
    // the guard reads w(c) before this item is added
    const bool shared = state.shared_weight <= threshold_;
    auto& pool = shared ? shared_ : state.isolated;
    for (std::size_t idx : pool) {
        if (bins_[idx].free_space() < item.size) continue;
        bins_[idx].add(item);
        if (shared) state.shared_weight += item.size;
        return {item.id, bins_[idx].id, !shared, 0, -1};
    }
    Bin bin;
    bin.id = next_id_++;
    bin.kind = shared ? BinKind::plain : BinKind::isolated;
    bin.add(item);
    bins_.push_back(std::move(bin));
    pool.push_back(bins_.size() - 1);
    if (shared) state.shared_weight += item.size;
    return {item.id, bins_.back().id, !shared, 0, -1};
}

Packing ThresholdScheme::snapshot() const {
    Packing packing;
    packing.bins = bins_;
    packing.algorithm = "threshold";
    packing.params = "epsilon=" + eps_.str();
    return packing;
}

Rational ThresholdScheme::colour_weight(int colour) const {
    auto it = colours_.find(colour);
    return it == colours_.end() ? Rational(0) : it->second.shared_weight;
}

bool ThresholdScheme::colour_isolated(int colour) const {
    auto it = colours_.find(colour);
    return it != colours_.end() && it->second.shared_weight > threshold_;
}

PlacementEvent FirstFitOnline::pack(const Item& item) {
    if (item.size > Rational(1))
        throw PreconditionError("item " + std::to_string(item.id) + " has size > 1");
    for (auto& bin : bins_) {
        if (bin.free_space() < item.size) continue;
        bin.add(item);
        return {item.id, bin.id, false, 0, -1};
    }
    Bin bin;
    bin.id = static_cast<int>(bins_.size());
    bin.add(item);
    bins_.push_back(std::move(bin));
    return {item.id, bins_.back().id, false, 0, -1};
}

Packing FirstFitOnline::snapshot() const { return {bins_, "ff", ""}; }

PlacementEvent NextFitOnline::pack(const Item& item) {
    if (item.size > Rational(1))
        throw PreconditionError("item " + std::to_string(item.id) + " has size > 1");
    if (bins_.empty() || bins_.back().free_space() < item.size) {
        if (!bins_.empty()) bins_.back().open = false;
        Bin bin;
        bin.id = static_cast<int>(bins_.size());
        bins_.push_back(std::move(bin));
    }
    bins_.back().add(item);
    return {item.id, bins_.back().id, false, 0, -1};
}

Packing NextFitOnline::snapshot() const { return {bins_, "nf", ""}; }

BoundedBestFitOnline::BoundedBestFitOnline(int k, std::string name)
    : k_(k), name_(std::move(name)) {
    if (k < 1) throw PreconditionError("bounded best fit: k must be >= 1");
}

void BoundedBestFitOnline::reset() {
    closed_.clear();
    open_.clear();
    next_id_ = 0;
}

PlacementEvent BoundedBestFitOnline::pack(const Item& item) {
    if (item.size > Rational(1))
        throw PreconditionError("item " + std::to_string(item.id) + " has size > 1");
    int pick = -1;
    for (int i = 0; i < static_cast<int>(open_.size()); ++i) {
        if (open_[i].free_space() < item.size) continue;
        if (pick == -1 || open_[i].content_size() > open_[pick].content_size() ||
            (open_[i].content_size() == open_[pick].content_size() && open_[i].id < open_[pick].id))
            pick = i;
    }
    if (pick >= 0) {
        open_[pick].add(item);
        return {item.id, open_[pick].id, false, 0, -1};
    }
    if (static_cast<int>(open_.size()) == k_) {
        int fullest = 0;
        for (int i = 1; i < static_cast<int>(open_.size()); ++i)
            if (open_[i].content_size() > open_[fullest].content_size() ||
                (open_[i].content_size() == open_[fullest].content_size() &&
                 open_[i].id < open_[fullest].id))
                fullest = i;
        open_[fullest].open = false;
        closed_.push_back(std::move(open_[fullest]));
        open_.erase(open_.begin() + fullest);
    }
    Bin bin;
    bin.id = next_id_++;
    bin.add(item);
    open_.push_back(std::move(bin));
    return {item.id, open_.back().id, false, 0, -1};
}

Packing BoundedBestFitOnline::snapshot() const {
    Packing packing;
    packing.bins = closed_;
    packing.bins.insert(packing.bins.end(), open_.begin(), open_.end());
    std::sort(packing.bins.begin(), packing.bins.end(),
              [](const Bin& a, const Bin& b) { return a.id < b.id; });
    packing.algorithm = name_;
    if (name_ == "bbf") packing.params = "k=" + std::to_string(k_);
    return packing;
}

std::unique_ptr<OnlineAlgorithm> make_online(const std::string& name, const OnlineParams& params) {
    auto need_eps = [&]() -> const Rational& {
        if (!params.eps) throw PreconditionError("algorithm '" + name + "' needs --epsilon");
        return *params.eps;
    };
    if (name == "nf") return std::make_unique<NextFitOnline>();
    if (name == "ff") return std::make_unique<FirstFitOnline>();
    if (name == "bf")
        return std::make_unique<BoundedBestFitOnline>(classic::BoundedState::kUnbounded, "bf");
    if (name == "bbf") return std::make_unique<BoundedBestFitOnline>(params.k, "bbf");
    if (name == "mnf") return std::make_unique<LevelScheme>(need_eps(), RegionRule::next_fit, "mnf");
    if (name == "mff")
        return std::make_unique<LevelScheme>(need_eps(), RegionRule::first_fit, "mff");
    if (name == "level17")
        return std::make_unique<LevelScheme>(need_eps(), RegionRule::next_fit, "level17");
    if (name == "threshold") return std::make_unique<ThresholdScheme>(need_eps());
    throw PreconditionError("unknown online algorithm '" + name + "'");
}

LevelFillStats full_level_bin_fill(const Packing& packing) {
    LevelFillStats stats;
    for (const auto& bin : packing.bins) {
        if (bin.kind != BinKind::level) continue;
        bool all_used = std::all_of(bin.regions.begin(), bin.regions.end(),
                                    [](const Region& r) { return !r.used.is_zero(); });
        if (!all_used) continue;
        stats.total_fill += bin.content_size();
        ++stats.bins;
    }
    return stats;
}

} // namespace cbp::online
