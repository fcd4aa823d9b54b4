#include "cbp/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cbp {

std::vector<Item> Instance::of_colour(int colour) const {
    std::vector<Item> out;
    for (const auto& item : items)
        if (item.colour == colour) out.push_back(item);
    return out;
}

Rational Instance::total_size() const {
    Rational sum;
    for (const auto& item : items) sum += item.size;
    return sum;
}

void Instance::check() const {
    std::unordered_set<int> ids;
    for (const auto& item : items) {
        if (item.size <= Rational(0) || item.size > Rational(1))
            throw ValidationError("instance: item " + std::to_string(item.id) + " has size " +
                                  item.size.str() + " outside (0,1]");
        if (item.colour < 1 || item.colour > colour_count)
            throw ValidationError("instance: item " + std::to_string(item.id) + " has colour " +
                                  std::to_string(item.colour) + " outside 1.." +
                                  std::to_string(colour_count));
        if (!ids.insert(item.id).second)
            throw ValidationError("instance: duplicate item id " + std::to_string(item.id));
    }
}

Rational Bin::content_size() const {
    Rational sum;
    for (const auto& item : contents) sum += item.size;
    return sum;
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << issues.size() << " issue(s): ";
    for (std::size_t i = 0; i < issues.size() && i < 5; ++i) {
        if (i) os << "; ";
        os << issues[i].detail;
    }
    if (issues.size() > 5) os << "; ...";
    return os.str();
}

ValidationReport validate_packing(const Packing& packing, const Instance& instance) {
    ValidationReport report;
    auto flag = [&](IssueKind kind, int bin, int item, std::string detail) {
        report.issues.push_back({kind, bin, item, std::move(detail)});
    };

    std::unordered_map<int, const Item*> expected;
    for (const auto& item : instance.items) expected.emplace(item.id, &item);

    std::unordered_map<int, int> seen; // item id -> times packed
    for (const auto& bin : packing.bins) {
        if (bin.content_size() > Rational(1))
            flag(IssueKind::capacity, bin.id, -1,
                 "bin " + std::to_string(bin.id) + " overfull: " + bin.content_size().str());
        for (const auto& item : bin.contents) {
            auto it = expected.find(item.id);
            if (it == expected.end()) {
                flag(IssueKind::foreign_item, bin.id, item.id,
                     "bin " + std::to_string(bin.id) + " holds unknown item " + std::to_string(item.id));
            } else if (!(*it->second == item)) {
                flag(IssueKind::foreign_item, bin.id, item.id,
                     "item " + std::to_string(item.id) + " differs from the instance item");
            }
            if (++seen[item.id] == 2)
                flag(IssueKind::duplicate_item, bin.id, item.id,
                     "item " + std::to_string(item.id) + " packed more than once");
        }

        if (bin.kind == BinKind::level) {
            if (bin.regions.empty()) {
                flag(IssueKind::region_structure, bin.id, -1,
                     "level bin " + std::to_string(bin.id) + " has no regions");
            } else {
                Rational cap_sum;
                std::unordered_map<int, Rational> by_region_item; // item id -> region cap (unused)
                std::unordered_set<int> region_items;
                for (std::size_t r = 0; r < bin.regions.size(); ++r) {
                    const Region& region = bin.regions[r];
                    cap_sum += region.capacity;
                    if (region.capacity != bin.regions[0].capacity)
                        flag(IssueKind::region_structure, bin.id, -1,
                             "bin " + std::to_string(bin.id) + " regions differ in capacity");
                    if (region.used > region.capacity)
                        flag(IssueKind::region_capacity, bin.id, -1,
                             "bin " + std::to_string(bin.id) + " region " + std::to_string(r) +
                                 " overfull");
                    if (!region.used.is_zero() && !region.colour.has_value())
                        flag(IssueKind::region_monochromatic, bin.id, -1,
                             "bin " + std::to_string(bin.id) + " region " + std::to_string(r) +
                                 " used but uncoloured");
                    Rational items_sum;
                    for (int id : region.item_ids) {
                        region_items.insert(id);
                        bool found = false;
                        for (const auto& item : bin.contents) {
                            if (item.id != id) continue;
                            found = true;
                            items_sum += item.size;
                            if (region.colour && item.colour != *region.colour)
                                flag(IssueKind::region_monochromatic, bin.id, id,
                                     "bin " + std::to_string(bin.id) + " region " + std::to_string(r) +
                                         " mixes colours");
                        }
                        if (!found)
                            flag(IssueKind::region_structure, bin.id, id,
                                 "bin " + std::to_string(bin.id) + " region lists item " +
                                     std::to_string(id) + " missing from the bin");
                    }
                    if (items_sum != region.used)
                        flag(IssueKind::region_structure, bin.id, -1,
                             "bin " + std::to_string(bin.id) + " region " + std::to_string(r) +
                                 " used mismatch");
                }
                if (cap_sum != Rational(1))
                    flag(IssueKind::region_structure, bin.id, -1,
                         "bin " + std::to_string(bin.id) + " regions do not cover the bin");
                for (const auto& item : bin.contents)
                    if (!region_items.count(item.id))
                        flag(IssueKind::region_structure, bin.id, item.id,
                             "item " + std::to_string(item.id) + " in level bin " +
                                 std::to_string(bin.id) + " outside any region");
            }
        }
    }

    for (const auto& item : instance.items)
        if (!seen.count(item.id))
            flag(IssueKind::missing_item, -1, item.id,
                 "item " + std::to_string(item.id) + " missing from the packing");
    return report;
}

int bins_spanned(const Packing& packing, int colour, int colour_count) {
    if (colour < 1 || colour > colour_count)
        throw PreconditionError("bins_spanned: colour " + std::to_string(colour) +
                                " outside 1.." + std::to_string(colour_count));
    int count = 0;
    for (const auto& bin : packing.bins)
        for (const auto& item : bin.contents)
            if (item.colour == colour) {
                ++count;
                break;
            }
    return count;
}

std::vector<int> spans_by_colour(const Packing& packing, int colour_count) {
    std::vector<int> spans(static_cast<std::size_t>(colour_count), 0);
    for (const auto& bin : packing.bins) {
        std::set<int> colours;
        for (const auto& item : bin.contents) colours.insert(item.colour);
        for (int c : colours)
            if (c >= 1 && c <= colour_count) ++spans[static_cast<std::size_t>(c - 1)];
    }
    return spans;
}

std::uint64_t instance_digest(const Instance& instance) {
    std::vector<std::string> keys;
    keys.reserve(instance.items.size());
    for (const auto& item : instance.items)
        keys.push_back(item.size.str() + "@" + std::to_string(item.colour));
    std::sort(keys.begin(), keys.end());

    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= '|';
        h *= 1099511628211ULL;
    };
    mix(std::to_string(instance.colour_count));
    for (const auto& k : keys) mix(k);
    return h;
}

std::int64_t weight_lower_bound(std::span<const Item> items) {
    Rational sum;
    for (const auto& item : items) sum += item.size;
    return sum.ceil();
}

StretchReport compute_stretch(const Packing& packing, const Instance& instance,
                              const OracleResult* oracle) {
    if (oracle && oracle->instance_digest != instance_digest(instance))
        throw ValidationError("compute_stretch: oracle computed for a different item multiset");

    StretchReport report;
    report.total_bins = packing.total_bins();
    auto spans = spans_by_colour(packing, instance.colour_count);
    for (int c = 1; c <= instance.colour_count; ++c)
        report.per_colour_span[c] = spans[static_cast<std::size_t>(c - 1)];

    if (oracle) {
        report.opt_bins = oracle->opt_bins;
        report.opt_source = OptSource::exact_oracle;
    } else {
        report.opt_bins = static_cast<int>(weight_lower_bound(instance.items));
        report.opt_source = OptSource::weight_lower_bound;
    }

    report.bin_stretch = report.opt_bins > 0
                             ? Rational(report.total_bins, report.opt_bins)
                             : Rational(1);

    report.colour_stretch = Rational(0);
    bool any_colour = false;
    for (int c = 1; c <= instance.colour_count; ++c) {
        auto colour_items = instance.of_colour(c);
        if (colour_items.empty()) continue;
        std::int64_t opt_c;
        if (oracle) {
            auto it = oracle->per_colour_opt.find(c);
            if (it == oracle->per_colour_opt.end())
                throw ValidationError("compute_stretch: oracle lacks colour " + std::to_string(c));
            opt_c = it->second;
        } else {
            opt_c = weight_lower_bound(colour_items);
        }
        if (opt_c < 1) opt_c = 1;
        Rational ratio(report.per_colour_span[c], opt_c);
        report.colour_stretch = max(report.colour_stretch, ratio);
        any_colour = true;
    }
    if (!any_colour) report.colour_stretch = Rational(1);
    return report;
}

} // namespace cbp
