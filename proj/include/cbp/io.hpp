#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbp/instances.hpp"
#include "cbp/model.hpp"
#include "cbp/online.hpp"

namespace cbp::io {

/// Instance file: {"m": int, "items": [{"size": "p/q" | "0.375", "colour": int}, ...]}.
/// Sizes must be strings and are parsed exactly; item ids are the array
/// positions. Unknown keys (e.g. "metadata") are ignored on read.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& instance);
std::string instance_to_json(const instances::GeneratedInstance& generated);

Instance read_instance(const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// Packing file: bins with their item ids (plus kind/level/regions for level
/// bins). Reading resolves ids against the instance.
std::string packing_to_json(const Packing& packing);
Packing packing_from_json(const std::string& text, const Instance& instance);

std::string oracle_result_to_json(const OracleResult& result);
OracleResult oracle_result_from_json(const std::string& text);

/// One placement event per line: {"item":..,"bin":..} plus "level"/"region"
/// for region placements and "isolated":true for isolated ones.
std::string trace_jsonl(const std::vector<online::PlacementEvent>& events);

struct ReportRow {
    std::string instance;
    std::string algorithm;
    std::string params;
    std::optional<int> total_bins;
    std::optional<int> opt_bins;
    std::string opt_source; // exact_oracle | weight_lower_bound | error:...
    std::optional<Rational> bin_stretch;
    std::optional<Rational> max_colour_stretch;
};

/// CSV with the fixed column set
/// instance,algorithm,params,total_bins,opt_bins,opt_source,bin_stretch,max_colour_stretch.
std::string report_csv(const std::vector<ReportRow>& rows);

/// CSV columns round,bins,max_span,bin_stretch_lb,colour_stretch_lb.
std::string trajectory_csv(const instances::Trajectory& trajectory);

} // namespace cbp::io
