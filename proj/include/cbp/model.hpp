#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbp/rational.hpp"

namespace cbp {

struct Item {
    int id = 0;
    Rational size;
    int colour = 0; // 1..m

    bool operator==(const Item&) const = default;
};

/// Ordered sequence of coloured items. Order is the online arrival order.
struct Instance {
    std::vector<Item> items;
    int colour_count = 0; // m

    std::vector<Item> of_colour(int colour) const;
    Rational total_size() const;

    /// Throws ValidationError unless sizes are in (0,1], colours in 1..m and
    /// ids unique.
    void check() const;
};

enum class BinKind { plain, level, isolated };

/// Monochromatic slice of a level bin.
struct Region {
    Rational capacity;
    std::optional<int> colour;
    Rational used;
    std::vector<int> item_ids;

    Rational free() const { return capacity - used; }
};

struct Bin {
    int id = 0;
    std::vector<Item> contents;
    BinKind kind = BinKind::plain;
    int level = 0;               // meaningful iff kind == level
    std::vector<Region> regions; // nonempty iff kind == level
    bool open = true;

    Rational content_size() const;
    Rational free_space() const { return Rational(1) - content_size(); }
    void add(const Item& item) { contents.push_back(item); }
};

struct Packing {
    std::vector<Bin> bins;
    std::string algorithm;
    std::string params;

    int total_bins() const { return static_cast<int>(bins.size()); }
};

enum class IssueKind {
    capacity,
    missing_item,
    duplicate_item,
    foreign_item,
    region_structure,
    region_capacity,
    region_monochromatic,
};

struct ValidationIssue {
    IssueKind kind;
    int bin_id = -1;
    int item_id = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/// Reports capacity violations, missing/duplicated/foreign items and broken
/// region structure. Never throws: all problems end up in the report.
ValidationReport validate_packing(const Packing& packing, const Instance& instance);

/// Number of bins containing at least one item of the colour.
/// Throws PreconditionError if the colour is outside 1..colour_count.
int bins_spanned(const Packing& packing, int colour, int colour_count);

/// Span per colour, index c-1 for colours 1..colour_count.
std::vector<int> spans_by_colour(const Packing& packing, int colour_count);

enum class OptSource { exact_oracle, weight_lower_bound };

enum class OracleMethod { dp_bitmask, branch_and_bound, exhaustive_partition };

/// Exact optima for a small instance; produced by the oracle module and
/// consumed by stretch reports and acceptance checks.
struct OracleResult {
    int opt_bins = 0;
    std::map<int, int> per_colour_opt;                 // colours that have items
    std::optional<std::pair<Rational, int>> opt_beta;  // (beta, bins), bins < 0 == infeasible
    OracleMethod method = OracleMethod::dp_bitmask;
    std::uint64_t instance_digest = 0;
};

struct StretchReport {
    int total_bins = 0;
    std::map<int, int> per_colour_span;
    int opt_bins = 0;
    Rational bin_stretch;
    Rational colour_stretch;
    OptSource opt_source = OptSource::weight_lower_bound;
};

/// Order-insensitive digest of the item multiset (and m); key for oracle
/// caching and the oracle/instance consistency check.
std::uint64_t instance_digest(const Instance& instance);

std::int64_t weight_lower_bound(std::span<const Item> items);

/// Bin and colour stretch of a packing, against the oracle when given,
/// otherwise against ceil-of-total-weight lower bounds (flagged as such).
/// Throws ValidationError if the oracle was computed for a different
/// item multiset.
StretchReport compute_stretch(const Packing& packing, const Instance& instance,
                              const OracleResult* oracle = nullptr);

} // namespace cbp
